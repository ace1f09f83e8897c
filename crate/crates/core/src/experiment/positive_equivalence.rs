//! Desk-scale equivalence matrix: the truncation verdict of the reduced cone
//! operator on L^q(nu) against the verdict of the positive projector on
//! L^{p,q}_s for p in {1, 2}, across two cones, three outer exponents, and
//! one kernel exponent on each side of the predicted boundary. Decisive
//! verdicts must agree with each other and with the componentwise predicate;
//! inconclusive scans are reported as such.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::cone::{from_spec, ConeSpec};
use crate::domain::SiegelDomain;
use crate::error::Result;
use crate::opnorm::{verdict_from_estimates, Verdict};
use crate::projector::{
    cone_operator, positive_boundedness_predicate, positive_scan_estimates,
    reduced_positive_scan, PositiveScanOptions, ProjectorParams, ReducedScanOptions,
};
use crate::WeightVector;

pub struct PositiveEquivalence;

struct CaseSpec {
    cone: ConeSpec,
    q: f64,
    s: Vec<f64>,
    s_prime: Vec<f64>,
    expect_bounded: bool,
}

fn matrix() -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    // half-plane: conditions reduce to s > 0 and -1 - s - s' > 0
    for &q in &[1.0, 2.0, f64::INFINITY] {
        cases.push(CaseSpec {
            cone: ConeSpec::Halfline,
            q,
            s: vec![1.0],
            s_prime: vec![-2.6],
            expect_bounded: true,
        });
        cases.push(CaseSpec {
            cone: ConeSpec::Halfline,
            q,
            s: vec![1.0],
            s_prime: vec![-1.6],
            expect_bounded: false,
        });
    }
    // Lorentz(3): m = (0,1), m' = (1,0), b + d = (-3/2, -3/2); the kernel
    // exponents straddle the componentwise boundary of the q-dependent
    // conditions with a safety margin
    let lorentz = |q: f64, sp_in: [f64; 2], sp_out: [f64; 2]| {
        [
            CaseSpec {
                cone: ConeSpec::Lorentz { dim: 3 },
                q,
                s: vec![1.0, 1.0],
                s_prime: sp_in.to_vec(),
                expect_bounded: true,
            },
            CaseSpec {
                cone: ConeSpec::Lorentz { dim: 3 },
                q,
                s: vec![1.0, 1.0],
                s_prime: sp_out.to_vec(),
                expect_bounded: false,
            },
        ]
    };
    cases.extend(lorentz(1.0, [-3.4, -2.9], [-2.7, -2.7]));
    cases.extend(lorentz(2.0, [-3.25, -3.25], [-2.4, -2.4]));
    cases.extend(lorentz(f64::INFINITY, [-2.9, -3.5], [-2.9, -2.5]));
    cases
}

fn conflict(a: Verdict, b: Verdict) -> bool {
    matches!(
        (a, b),
        (Verdict::Bounded, Verdict::Unbounded) | (Verdict::Unbounded, Verdict::Bounded)
    )
}

impl Experiment for PositiveEquivalence {
    fn kind(&self) -> &'static str {
        "positive-equivalence"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.seed.unwrap_or(ctx.seed);
        let mut rows = Vec::new();
        for case in matrix() {
            let cone = from_spec(&case.cone)?;
            let dom = SiegelDomain::tube(cone.clone());
            let rank1 = cone.rank() == 1;
            let (t_radii, t_delta) = if rank1 {
                (vec![16.0, 32.0, 64.0], 0.25)
            } else {
                (vec![1.5, 3.0, 6.0], 0.75)
            };
            let s: WeightVector = case.s.clone().into();
            let sp: WeightVector = case.s_prime.clone().into();

            // reduced cone operator on L^q(nu)
            let mut t_est = Vec::with_capacity(t_radii.len());
            for &r in &t_radii {
                let lat = crate::lattice::cone_lattice(&cone, t_delta, r)?;
                let op = cone_operator(&dom, &s, &sp, &lat)?;
                t_est.push(op.opnorm_lq(case.q)?);
            }
            let t_rep = verdict_from_estimates(&t_radii, &t_est);

            // positive projector on L^{p,q}_s for p in {1, 2}
            let params = ProjectorParams::new(dom.clone(), 2.0, case.q, s.clone(), sp.clone())?;
            let p_estimates = if rank1 {
                reduced_positive_scan(
                    &params,
                    &ReducedScanOptions::default(),
                    &t_radii,
                    &[1.0, 2.0],
                )?
            } else {
                let opts = PositiveScanOptions {
                    delta: 0.8,
                    x_extent: 1.5,
                    zeta_extent: 0.0,
                    resolution: 1,
                    max_nodes: 5200,
                };
                positive_scan_estimates(&params, &opts, &[0.8, 1.6, 3.2], &[1.0, 2.0])?
            };
            let p_radii: &[f64] = if rank1 {
                &t_radii
            } else {
                &[0.8, 1.6, 3.2]
            };

            let pred = positive_boundedness_predicate(&params);
            let qname = if case.q.is_infinite() {
                "inf".to_string()
            } else {
                format!("{}", case.q)
            };
            let label = format!(
                "{}-q={}-sp={:?}-{}",
                cone.name(),
                qname,
                case.s_prime,
                if case.expect_bounded { "in" } else { "out" }
            );

            // the predicate must sit on the intended side (rank <= 2 makes it
            // an iff)
            rows.push(CaseRow::new(
                format!("{label}-predicate"),
                "positivity-predicate",
                format!("necessary={} sufficient={:?}", pred.necessary_hold, pred.sufficient_known),
                pred.necessary_hold as u8 as f64,
                case.expect_bounded as u8 as f64,
                pred.necessary_hold == case.expect_bounded,
            ));

            // decisive T verdicts must agree with the predicate
            let t_consistent = match t_rep.verdict {
                Verdict::Bounded => case.expect_bounded,
                Verdict::Unbounded => !case.expect_bounded,
                Verdict::Inconclusive => true,
            };
            rows.push(CaseRow::new(
                format!("{label}-T"),
                "verdict-equivalence",
                format!("verdict={} estimates={:?}", t_rep.verdict, t_rep.norm_estimates),
                t_rep.growth_ratio,
                1.0,
                t_consistent,
            ));

            for (pi, &p) in [1.0, 2.0].iter().enumerate() {
                let p_rep = verdict_from_estimates(p_radii, &p_estimates[pi]);
                let ok = !conflict(t_rep.verdict, p_rep.verdict)
                    && match p_rep.verdict {
                        Verdict::Bounded => case.expect_bounded,
                        Verdict::Unbounded => !case.expect_bounded,
                        Verdict::Inconclusive => true,
                    };
                rows.push(CaseRow::new(
                    format!("{label}-P+-p={p}"),
                    "verdict-equivalence",
                    format!(
                        "T={} P+={} estimates={:?}",
                        t_rep.verdict, p_rep.verdict, p_rep.norm_estimates
                    ),
                    p_rep.growth_ratio,
                    1.0,
                    ok,
                ));
            }
        }
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
