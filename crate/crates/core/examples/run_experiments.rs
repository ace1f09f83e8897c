use cone_bergman::experiment::*;

fn main() {
    let which: Vec<String> = std::env::args().skip(1).collect();
    let ctx = RunContext { seed: 7, tolerance_scale: 1.0 };
    for exp in registry() {
        if !which.is_empty() && !which.iter().any(|w| w == exp.kind()) {
            continue;
        }
        let cfg = ExperimentConfig::for_kind(exp.kind());
        let t0 = std::time::Instant::now();
        match run_experiment(&cfg, &ctx) {
            Ok(rep) => {
                println!("== {} passed={} rows={} ({:.1?})", rep.kind, rep.passed, rep.rows.len(), t0.elapsed());
                for r in rep.rows.iter().filter(|r| !r.pass) {
                    println!("  FAIL {} [{}] {} value={:.6e} thr={:.6e}", r.case, r.property, r.detail, r.value, r.threshold);
                }
            }
            Err(e) => println!("== {} ERROR: {e}", exp.kind()),
        }
    }
}
