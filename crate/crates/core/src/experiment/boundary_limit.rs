//! Boundary limits of the spectral extension: the Besov-type distance of the
//! level-h slice to the boundary density decreases strictly along a dyadic
//! height sequence, and the extension of the window density matches its
//! closed-form transform.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::boundary::{boundary_limit_check, extend_at, BesovPartition, SpectralDensity};
use crate::cone::{from_spec, ConeSpec};
use crate::domain::SiegelDomain;
use crate::error::Result;
use num_complex::Complex64;

pub struct BoundaryLimit;

impl Experiment for BoundaryLimit {
    fn kind(&self) -> &'static str {
        "boundary-limit"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.seed.unwrap_or(ctx.seed);
        let cone = from_spec(&ConeSpec::Halfline)?;
        let dom = SiegelDomain::tube(cone.clone());
        let pcfg = cfg.partition.clone().unwrap_or_default();
        let delta = pcfg.delta.unwrap_or(0.35);
        let part = BesovPartition::dyadic(&cone, delta, -5, 9)?;
        let bcfg = cfg.besov.clone().unwrap_or_default();
        let (p, q) = (bcfg.p.unwrap_or(2.0), bcfg.q.unwrap_or(2.0));
        let s = bcfg.s.clone().unwrap_or_else(|| vec![-0.5]);
        let ys = cfg.ys.clone().unwrap_or_else(|| vec![0.5, 0.25, 0.125]);
        let mut rows = Vec::new();

        let centers = [(1.8, 1.0), (2.5, 0.7), (3.2, 1.4)];
        for (i, &(c, w)) in centers.iter().enumerate() {
            let u = SpectralDensity::on_interval(&cone, 1.0, 4.0, 12, move |l| {
                Complex64::new((-(l - c) * (l - c) / (w * w)).exp(), 0.0)
            })?;
            let errs = boundary_limit_check(&u, &dom, &part, p, q, &s.clone().into(), &ys)?;
            for (j, pair) in errs.windows(2).enumerate() {
                rows.push(CaseRow::new(
                    format!("density-{i}-step-{j}"),
                    "boundary-limit-decay",
                    format!("errors={errs:?} ys={ys:?}"),
                    pair[1],
                    pair[0],
                    pair[1] < pair[0],
                ));
            }
        }

        // the window density extends to its closed-form transform
        let u = SpectralDensity::on_interval(&cone, 1.0, 2.0, 14, |_| Complex64::new(1.0, 0.0))?;
        let tol = 1e-10 * ctx.tolerance_scale;
        let mut worst = 0.0_f64;
        for i in 0..25 {
            let z = Complex64::new(-3.0 + 0.25 * i as f64, 0.4 + 0.1 * (i % 7) as f64);
            let v = extend_at(&u, &dom, &[z])?;
            let iz = Complex64::new(0.0, 1.0) * z;
            let expected = ((iz * 2.0).exp() - iz.exp()) / iz;
            worst = worst.max((v - expected).norm());
        }
        rows.push(CaseRow::new(
            "window-transform",
            "window-transform",
            "closed-form comparison over 25 probes".to_string(),
            worst,
            tol,
            worst < tol,
        ));
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
