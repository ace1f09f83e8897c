//! Duality pairing constancy: pairing the extension of u against the
//! extension of the Riesz-multiplied u' reproduces the flat density pairing
//! up to one constant, stable across density pairs.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::boundary::{duality_pairing, extend, SpectralDensity};
use crate::cone::{from_spec, ConeSpec};
use crate::domain::{uniform_grid, SiegelDomain};
use crate::error::Result;
use crate::util::gamma;
use crate::WeightVector;
use num_complex::Complex64;
use std::sync::Arc;

pub struct DualityConstancy;

impl Experiment for DualityConstancy {
    fn kind(&self) -> &'static str {
        "duality-constancy"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.seed.unwrap_or(ctx.seed);
        let cone = from_spec(&ConeSpec::Halfline)?;
        let dom = SiegelDomain::tube(cone.clone());
        let s2: WeightVector = vec![1.2].into();
        let grid = Arc::new(uniform_grid(&dom, 1e-4, 24.0, 130, 26.0, 220, 0.0, 0)?);
        let mk = |c1: f64, w1: f64, c2: f64, w2: f64| {
            SpectralDensity::on_interval(&cone, 1.0, 4.0, 12, move |l| {
                Complex64::new(
                    (-(l - c1) * (l - c1) / (w1 * w1)).exp(),
                    0.4 * (-(l - c2) * (l - c2) / (w2 * w2)).exp(),
                )
            })
        };
        let pairs = [
            ((1.8, 0.6, 2.6, 0.8), (2.2, 0.7, 3.0, 0.5)),
            ((2.0, 0.5, 2.0, 0.9), (3.0, 0.6, 1.6, 0.7)),
            ((1.6, 0.8, 3.2, 0.6), (2.4, 0.5, 2.8, 0.8)),
            ((2.8, 0.7, 1.9, 0.5), (1.9, 0.9, 2.3, 0.6)),
            ((2.3, 0.6, 2.9, 0.7), (2.7, 0.8, 2.1, 0.9)),
        ];
        let mut ratios: Vec<Complex64> = Vec::new();
        for &(a, b) in &pairs {
            let u = mk(a.0, a.1, a.2, a.3)?;
            let up = mk(b.0, b.1, b.2, b.3)?;
            let f = extend(&u, &dom, &grid)?;
            let g = extend(&up.riesz_multiplier(&s2)?, &dom, &grid)?;
            let pairing = duality_pairing(&f, &g, &s2)?;
            let base = u.pairing(&up, &dom.b_vec())?;
            ratios.push(pairing / base);
        }
        let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
        let spread = ratios
            .iter()
            .map(|r| (r - mean).norm() / mean.norm())
            .fold(0.0, f64::max);
        let tol = 1e-3 * ctx.tolerance_scale;
        let mut rows = vec![CaseRow::new(
            "pairing-constancy",
            "duality-constancy",
            format!("ratios={ratios:?}"),
            spread,
            tol,
            spread < tol,
        )];
        // closed-form value of the constant for this normalization
        let theory = 2.0 * std::f64::consts::PI * gamma(s2[0]) / 2.0_f64.powf(s2[0]);
        let rel = (mean - Complex64::new(theory, 0.0)).norm() / theory;
        rows.push(CaseRow::new(
            "pairing-constant-value",
            "duality-constancy",
            format!("mean={mean} theory={theory:.8e}"),
            rel,
            5e-3,
            rel < 5e-3,
        ));
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
