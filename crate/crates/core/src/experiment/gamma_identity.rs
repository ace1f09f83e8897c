//! Gamma/Laplace identity checks: the rank-one cone gamma against the
//! classical gamma function, and constancy of the Laplace-transform product
//! over random interior points of the dual cone.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::cone::gamma::gamma_cone;
use crate::cone::{from_spec, ConeSpec};
use crate::error::Result;
use crate::util::gamma;
use crate::WeightVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct GammaIdentity;

impl Experiment for GammaIdentity {
    fn kind(&self) -> &'static str {
        "gamma-identity"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.seed.unwrap_or(ctx.seed);
        let mut rows = Vec::new();

        // rank one against the classical gamma, 1e-8 relative
        let half = from_spec(&ConeSpec::Halfline)?;
        let tol = 1e-8 * ctx.tolerance_scale;
        let values = [0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];
        for &s in &values {
            let got = gamma_cone(&half, &vec![s].into())?;
            let expected = gamma(s);
            let rel = (got - expected).abs() / expected;
            rows.push(CaseRow::new(
                format!("halfline-s={s}"),
                "gamma-classical",
                format!("expected={expected:.10e}"),
                rel,
                tol,
                rel < tol,
            ));
        }

        // Lorentz(3): the Laplace product is constant in lambda, 1e-3 relative.
        // Interior points and a 1e-4 quadrature stop keep this well inside
        // the runtime budget.
        let cone = from_spec(cfg.cone.as_ref().unwrap_or(&ConeSpec::Lorentz { dim: 3 }))?;
        let s: WeightVector = vec![3.0, 3.0].into();
        let opts = crate::cone::gamma::GammaOptions {
            l0: 6.0,
            levels: 3,
            order: 6,
            max_nodes_per_axis: 250,
            tol: 1e-4,
        };
        let reference = crate::cone::gamma::gamma_cone_with(&cone, &s, &opts)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = 1e-3 * ctx.tolerance_scale;
        let count = cfg.samples.unwrap_or(10);
        for i in 0..count {
            // interior dual point from chart coordinates
            let coords: Vec<f64> = (0..cone.chart().dims)
                .map(|_| rng.gen_range(-0.8..0.8))
                .collect();
            let lambda = cone.point_from_coords(&coords);
            let lt = crate::cone::gamma::laplace_transform_with(&cone, &s, &lambda, &opts)?;
            let v = lt * cone.dual_power_function_real(&s, &lambda)?;
            let rel = (v - reference).abs() / reference;
            rows.push(CaseRow::new(
                format!("laplace-{i}"),
                "laplace-constancy",
                format!("reference={reference:.8e}"),
                rel,
                tol,
                rel < tol,
            ));
        }
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
