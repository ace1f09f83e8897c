//! Pure-norm transference between the Siegel half-space and the half-plane:
//! the lift iota(f)(zeta, z) = f(z) scales every tube norm by one constant,
//! and slice restrictions never beat a fixed multiple of the domain norm.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::domain::{uniform_grid, SiegelDomain};
use crate::error::Result;
use crate::kernel::KernelSpec;
use crate::projector::{lift_ratio, restriction_ratio};
use crate::WeightVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub struct Transference;

/// Frozen restriction bound: the lift family peaks at 2/sqrt(pi) and the
/// kernel atoms stay below 2, so 3 leaves a wide safety margin.
const RESTRICTION_BOUND: f64 = 3.0;

impl Experiment for Transference {
    fn kind(&self) -> &'static str {
        "transference"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.seed.unwrap_or(ctx.seed);
        let dom = SiegelDomain::half_space(1);
        let tube = SiegelDomain::tube(dom.cone().clone());
        let s: WeightVector = vec![2.0].into();
        let p = 2.0;
        let grid_d = Arc::new(uniform_grid(&dom, 0.02, 40.0, 56, 30.0, 72, 4.5, 18)?);
        let grid_tube = Arc::new(uniform_grid(&tube, 0.01, 60.0, 80, 40.0, 120, 0.0, 0)?);
        let mut rows = Vec::new();

        // five in-space tube functions (z + i a)^{-k}
        let family = [(1.0, 4.0), (1.5, 4.0), (1.0, 5.0), (2.0, 6.0), (0.7, 4.0)];
        let mut ratios = Vec::new();
        for &(a, k) in &family {
            let f = move |z: &[Complex64]| (z[0] + Complex64::new(0.0, a)).powf(-k);
            ratios.push(lift_ratio(&grid_d, &grid_tube, &f, p, p, &s)?);
        }
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let spread = ratios
            .iter()
            .map(|r| (r - mean).abs() / mean)
            .fold(0.0, f64::max);
        let tol = 0.01 * ctx.tolerance_scale;
        rows.push(CaseRow::new(
            "lift-constancy",
            "transference-constancy",
            format!("ratios={ratios:?}"),
            spread,
            tol,
            spread < tol,
        ));
        // closed form of the constant: with p = 2, n = 1 the layer
        // integration gives C' = sqrt(pi / (2 s))
        let theory = (std::f64::consts::PI / (2.0 * s[0])).sqrt();
        let rel = (mean - theory).abs() / theory;
        rows.push(CaseRow::new(
            "lift-constant-value",
            "transference-constancy",
            format!("mean={mean:.6e} theory={theory:.6e}"),
            rel,
            0.02,
            rel < 0.02,
        ));

        // restriction: slices of lifts and of genuinely zeta-dependent atoms
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = KernelSpec::new(dom.clone(), vec![-4.5].into())?;
        let atom_centers = [
            (Complex64::new(0.6, 0.3), 1.3),
            (Complex64::new(-0.4, 0.8), 2.0),
        ];
        let mut funcs: Vec<Box<dyn Fn(&[Complex64], &[Complex64]) -> Complex64>> = Vec::new();
        for &(a, k) in family.iter().take(3) {
            funcs.push(Box::new(move |_zeta: &[Complex64], z: &[Complex64]| {
                (z[0] + Complex64::new(0.0, a)).powf(-k)
            }));
        }
        for &(zc, h) in &atom_centers {
            let spec = spec.clone();
            funcs.push(Box::new(move |zeta: &[Complex64], z: &[Complex64]| {
                let phi = zc.norm_sqr();
                let z1 = [Complex64::new(0.0, phi + h)];
                let w = spec.kernel_argument(zeta, z, &[zc], &z1);
                spec.domain
                    .cone()
                    .power_function(&spec.s_prime, &w)
                    .unwrap_or_default()
            }));
        }
        let mut worst = 0.0_f64;
        let mut all_ok = true;
        for i in 0..10 {
            let zeta0 = [Complex64::new(
                rng.gen_range(-1.2..1.2),
                rng.gen_range(-1.2..1.2),
            )];
            let f = &funcs[i % funcs.len()];
            let r = restriction_ratio(&grid_d, &grid_tube, f.as_ref(), &zeta0, p, p, &s)?;
            worst = worst.max(r);
            all_ok &= r <= RESTRICTION_BOUND;
        }
        rows.push(CaseRow::new(
            "restriction-bound",
            "restriction-bound",
            "10 seeded slice points".to_string(),
            worst,
            RESTRICTION_BOUND,
            all_ok,
        ));
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
