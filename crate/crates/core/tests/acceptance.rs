//! Acceptance suite: every release-gating criterion at its pinned tolerance,
//! one pass/fail line per criterion. Experiments run twice with the same
//! seed; the byte-identity of their reports is itself a criterion.

use cone_bergman::cone::{from_spec, ConeSpec};
use cone_bergman::domain::{mixed_norm, uniform_grid, GridFunction, SiegelDomain};
use cone_bergman::experiment::{run_experiment, ExperimentConfig, RunContext};
use cone_bergman::projector::{
    apply_projector, halfplane_projector_constant, project_onto, ProjectorParams,
};
use num_complex::Complex64;
use std::sync::Arc;
use std::time::Instant;

struct Outcome {
    name: &'static str,
    pass: bool,
    note: String,
}

fn run_twice(kind: &str, seed: u64) -> (bool, bool, f64, String) {
    let cfg = ExperimentConfig::for_kind(kind);
    let ctx = RunContext {
        seed,
        tolerance_scale: 1.0,
    };
    let t0 = Instant::now();
    let first = run_experiment(&cfg, &ctx).expect(kind);
    let runtime = t0.elapsed().as_secs_f64();
    let second = run_experiment(&cfg, &ctx).expect(kind);
    let identical = first.to_csv() == second.to_csv();
    let failures: Vec<String> = first
        .rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} [{}] value={:.3e} thr={:.3e}", r.case, r.property, r.value, r.threshold))
        .collect();
    let note = if failures.is_empty() {
        format!("{} rows", first.rows.len())
    } else {
        failures.join(" | ")
    };
    (first.passed, identical, runtime, note)
}

fn reproducing_property() -> (bool, String) {
    // orthogonal projector of A^{2,2}_1 on the half-plane: s' = b + d - 2s = -3
    let dom = SiegelDomain::tube(from_spec(&ConeSpec::Halfline).unwrap());
    let sp = -3.0;
    let mut params =
        ProjectorParams::new(dom.clone(), 2.0, 2.0, vec![1.0].into(), vec![sp].into()).unwrap();
    params.c = Complex64::new(halfplane_projector_constant(sp), 0.0);
    let quad = Arc::new(uniform_grid(&dom, 0.01, 64.0, 64, 30.0, 240, 0.0, 0).unwrap());
    let window = Arc::new(uniform_grid(&dom, 0.25, 4.0, 12, 2.0, 20, 0.0, 0).unwrap());
    let s = params.s.clone();
    let fns: Vec<Box<dyn Fn(Complex64) -> Complex64>> = vec![
        Box::new(|z| (z + Complex64::new(0.0, 1.0)).powi(-3)),
        Box::new(|z| (z + Complex64::new(0.0, 2.0)).powi(-4)),
        Box::new(|z| {
            (Complex64::new(0.0, 1.0) * z).exp() * (z + Complex64::new(0.0, 1.0)).powi(-3)
        }),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (i, f) in fns.iter().enumerate() {
        let fq = GridFunction::sample(quad.clone(), |_, z| f(z[0]));
        let fw = GridFunction::sample(window.clone(), |_, z| f(z[0]));
        let pf = project_onto(&params, &fq, &window).unwrap();
        let diff = pf.add(&fw.scale(Complex64::new(-1.0, 0.0))).unwrap();
        let rel = mixed_norm(&diff, 2.0, 2.0, &s).unwrap() / mixed_norm(&fw, 2.0, 2.0, &s).unwrap();
        notes.push(format!("f{i}: reproduce={rel:.2e}"));
        ok &= rel < 1e-3;
    }
    // idempotence on the first test function
    let fq = GridFunction::sample(quad.clone(), |_, z| fns[0](z[0]));
    let pf_full = apply_projector(&params, &fq).unwrap();
    let pf_win = project_onto(&params, &fq, &window).unwrap();
    let ppf_win = project_onto(&params, &pf_full, &window).unwrap();
    let diff = ppf_win
        .add(&pf_win.scale(Complex64::new(-1.0, 0.0)))
        .unwrap();
    let rel =
        mixed_norm(&diff, 2.0, 2.0, &s).unwrap() / mixed_norm(&pf_win, 2.0, 2.0, &s).unwrap();
    notes.push(format!("idempotence={rel:.2e}"));
    ok &= rel < 2e-3;
    (ok, notes.join("; "))
}

#[test]
fn acceptance() {
    let seed = 7;
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut identical_flags: Vec<(String, bool)> = Vec::new();

    let mut experiment = |name: &'static str, kind: &str, budget: f64| -> Outcome {
        let (passed, identical, runtime, note) = run_twice(kind, seed);
        identical_flags.push((kind.to_string(), identical));
        Outcome {
            name,
            pass: passed && runtime < budget,
            note: format!("{note}; runtime {runtime:.1}s (budget {budget:.0}s)"),
        }
    };

    outcomes.push(experiment(
        "1 half-plane positive-projector threshold",
        "projector-threshold",
        60.0,
    ));
    outcomes.push(experiment(
        "2 cone-operator/projector verdict equivalence",
        "positive-equivalence",
        600.0,
    ));
    outcomes.push(experiment("3 gamma/laplace identity", "gamma-identity", 30.0));
    outcomes.push(experiment(
        "4 branch oscillation and ratio sweeps",
        "section7-properties",
        120.0,
    ));

    let (ok, note) = reproducing_property();
    outcomes.push(Outcome {
        name: "5 reproducing property and idempotence",
        pass: ok,
        note,
    });

    outcomes.push(experiment(
        "6 atomic reconstruction and synthesis growth",
        "atomic-reconstruction",
        600.0,
    ));
    outcomes.push(experiment("7 boundary limits", "boundary-limit", 600.0));
    outcomes.push(experiment("8 pure-norm transference", "transference", 600.0));
    outcomes.push(experiment(
        "9 duality pairing constancy",
        "duality-constancy",
        600.0,
    ));

    let all_identical = identical_flags.iter().all(|(_, id)| *id);
    outcomes.push(Outcome {
        name: "10 determinism of seeded reports",
        pass: all_identical,
        note: identical_flags
            .iter()
            .map(|(k, id)| format!("{k}:{}", if *id { "identical" } else { "DIFFERS" }))
            .collect::<Vec<_>>()
            .join("; "),
    });

    let mut failed = 0;
    for o in &outcomes {
        println!(
            "criterion {:<45} {}  [{}]",
            o.name,
            if o.pass { "PASS" } else { "FAIL" },
            o.note
        );
        if !o.pass {
            failed += 1;
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
