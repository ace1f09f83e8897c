//! Quantitative branch sweeps: the oscillation bound |s| pi for the imaginary
//! part of the power-function logarithm, the two-sided modulus ratio bound
//! 2^{+-|s|/2}, and the scalar polynomial ratio bound for zeros on the
//! negative axis.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::cone::{from_spec, Cone, ConeSpec};
use crate::error::Result;
use crate::kernel::{oscillation_check, poly_ratio, ratio_bound_check};
use crate::WeightVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Section7Properties;

fn random_weight(rng: &mut ChaCha8Rng, rank: usize) -> WeightVector {
    (0..rank)
        .map(|_| rng.gen_range(-2.0..2.0))
        .collect::<Vec<f64>>()
        .into()
}

fn cone_point(cone: &Cone, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let dims = cone.chart().dims;
    let coords: Vec<f64> = (0..dims).map(|_| rng.gen_range(-1.8..1.8)).collect();
    cone.point_from_coords(&coords)
}

impl Experiment for Section7Properties {
    fn kind(&self) -> &'static str {
        "section7-properties"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.require_seed().unwrap_or(ctx.seed);
        let samples = cfg.samples.unwrap_or(10_000);
        let mut rows = Vec::new();
        let cones = [
            from_spec(&ConeSpec::Lorentz { dim: 3 })?,
            from_spec(&ConeSpec::Lorentz { dim: 4 })?,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for cone in &cones {
            // oscillation: a handful of weight draws, sweeping points so the
            // total sample count per cone matches the request
            let s_draws = 8;
            let per_s = samples / s_draws;
            let mut violations = 0usize;
            let mut worst_margin = f64::NEG_INFINITY;
            for _ in 0..s_draws {
                let s = random_weight(&mut rng, cone.rank());
                let bound = cone.abs_weight(&s)? * std::f64::consts::PI;
                let spread = oscillation_check(cone, &s, per_s.max(2), rng.gen())?;
                if spread > bound + 1e-9 {
                    violations += 1;
                }
                worst_margin = worst_margin.max(spread - bound);
            }
            rows.push(CaseRow::new(
                format!("{}-oscillation", cone.name()),
                "oscillation-bound",
                format!("samples={samples} worst_margin={worst_margin:.3e}"),
                violations as f64,
                0.5,
                violations == 0,
            ));

            // modulus ratio bound on random (s, x, y)
            let mut violations = 0usize;
            let mut worst = 0.0_f64;
            for _ in 0..samples {
                let s = random_weight(&mut rng, cone.rank());
                let x = cone_point(cone, &mut rng);
                let y = cone_point(cone, &mut rng);
                let bound = 2.0_f64.powf(cone.abs_weight(&s)? / 2.0);
                let r = ratio_bound_check(cone, &s, &x, &y)?;
                let excess = (r / bound).max(1.0 / (r * bound)) - 1.0;
                if excess > 1e-9 {
                    violations += 1;
                }
                worst = worst.max(excess);
            }
            rows.push(CaseRow::new(
                format!("{}-ratio", cone.name()),
                "ratio-bound",
                format!("samples={samples} worst_excess={worst:.3e}"),
                violations as f64,
                0.5,
                violations == 0,
            ));
        }

        // scalar polynomial bound: degree <= 6, zeros on the negative axis
        let polys = 1000;
        let mut violations = 0usize;
        for _ in 0..polys {
            let deg = rng.gen_range(0..=6usize);
            let zeros: Vec<f64> = (0..deg)
                .map(|_| {
                    if rng.gen_bool(0.15) {
                        0.0
                    } else {
                        -(rng.gen_range(-3.0..3.0) as f64).exp2()
                    }
                })
                .collect();
            let lower = 2.0_f64.powf(-(deg as f64) / 2.0);
            for _ in 0..5 {
                let x = (rng.gen_range(-3.0..3.0) as f64).exp2();
                let r = poly_ratio(&zeros, x)?;
                if !(lower - 1e-12..=1.0 + 1e-12).contains(&r) {
                    violations += 1;
                }
            }
        }
        rows.push(CaseRow::new(
            "polynomial-ratio",
            "polynomial-ratio-bound",
            format!("polys={polys} probes=5"),
            violations as f64,
            0.5,
            violations == 0,
        ));
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
