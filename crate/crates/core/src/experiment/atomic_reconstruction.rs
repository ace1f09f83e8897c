//! Atomic reconstruction on the half-plane: Riemann-sum reconstruction
//! errors decrease under lattice refinement in the admissible range, and the
//! synthesis operator norm grows under truncation extension outside it.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::atomic::{reconstruct, synthesis_operator_norm};
use crate::cone::{from_spec, ConeSpec};
use crate::domain::{uniform_grid, SiegelDomain};
use crate::error::Result;
use crate::lattice::halfplane_box_lattice;
use crate::projector::{halfplane_projector_constant, ProjectorParams};
use num_complex::Complex64;
use std::sync::Arc;

pub struct AtomicReconstruction;

impl Experiment for AtomicReconstruction {
    fn kind(&self) -> &'static str {
        "atomic-reconstruction"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.seed.unwrap_or(ctx.seed);
        let dom = SiegelDomain::tube(from_spec(&ConeSpec::Halfline)?);
        let mut rows = Vec::new();

        // admissible side: s = 1, s~ = 1.25, p = q = 2
        let s_tilde = 1.25;
        let sp = -1.0 - 2.0 * s_tilde;
        let mut params =
            ProjectorParams::new(dom.clone(), 2.0, 2.0, vec![1.0].into(), vec![sp].into())?;
        params.c = Complex64::new(halfplane_projector_constant(sp), 0.0);
        let window = Arc::new(uniform_grid(&dom, 0.5, 2.0, 10, 2.0, 20, 0.0, 0)?);
        let deltas = cfg.deltas.clone().unwrap_or_else(|| vec![0.4, 0.2, 0.1]);
        let f = |_: &[Complex64], z: &[Complex64]| (z[0] + Complex64::new(0.0, 1.0)).powi(-3);
        let mut errors = Vec::with_capacity(deltas.len());
        for &delta in &deltas {
            let k_min = ((0.03_f64).ln() / (2.0 * delta)).floor() as i64;
            let k_max = ((30.0_f64).ln() / (2.0 * delta)).ceil() as i64;
            let lat = Arc::new(halfplane_box_lattice(&dom, delta, k_min, k_max, 14.0)?);
            let (_, err) = reconstruct(&f, &params, &lat, &window)?;
            errors.push(err);
        }
        for w in errors.windows(2) {
            rows.push(CaseRow::new(
                "reconstruction-monotone",
                "reconstruction-decay",
                format!("errors={errors:?}"),
                w[1],
                w[0],
                w[1] < w[0],
            ));
        }
        let final_tol = 1e-2 * ctx.tolerance_scale;
        rows.push(CaseRow::new(
            "reconstruction-final",
            "reconstruction-decay",
            format!("deltas={deltas:?}"),
            *errors.last().unwrap(),
            final_tol,
            *errors.last().unwrap() < final_tol,
        ));

        // a single atom reconstructs itself at the finest lattice
        let atom_sp = sp;
        let atom = move |_: &[Complex64], z: &[Complex64]| {
            ((z[0] + Complex64::new(0.0, 1.1)) / Complex64::new(0.0, 2.0)).powf(atom_sp)
        };
        let delta = *deltas.last().unwrap();
        let k_min = ((0.03_f64).ln() / (2.0 * delta)).floor() as i64;
        let k_max = ((30.0_f64).ln() / (2.0 * delta)).ceil() as i64;
        let lat = Arc::new(halfplane_box_lattice(&dom, delta, k_min, k_max, 14.0)?);
        let (_, atom_err) = reconstruct(&atom, &params, &lat, &window)?;
        rows.push(CaseRow::new(
            "atom-reconstruction",
            "reconstruction-decay",
            format!("delta={delta}"),
            atom_err,
            final_tol,
            atom_err < final_tol,
        ));

        // inadmissible side (2 s~ < s): the synthesis norm grows by at least
        // x1.5 per truncation-extension step; the admissible norm stays flat
        let scan = |s_tilde: f64| -> Result<Vec<f64>> {
            let sp = -1.0 - 2.0 * s_tilde;
            let pr =
                ProjectorParams::new(dom.clone(), 2.0, 2.0, vec![1.0].into(), vec![sp].into())?;
            let mut out = Vec::new();
            for &t in &[1.5_f64, 3.0, 6.0] {
                let delta = 0.25;
                let k = (t / (2.0 * delta)).ceil() as i64;
                let lat = Arc::new(halfplane_box_lattice(&dom, delta, -k, k, 6.0)?);
                // anisotropic evaluation grid matching the lattice extent so
                // every atom stays resolved at its own scale
                let layers =
                    crate::lattice::log_uniform_halfline_lattice((-t).exp(), t.exp(), (8.0 * t).ceil() as usize)?;
                let grid = Arc::new(crate::domain::make_grid(&dom, &layers, 8.0, 0.0, 2)?);
                out.push(synthesis_operator_norm(&pr, &lat, &grid)?);
            }
            Ok(out)
        };
        let growing = scan(0.05)?;
        for w in growing.windows(2) {
            rows.push(CaseRow::new(
                "synthesis-growth-inadmissible",
                "synthesis-growth",
                format!("norms={growing:?}"),
                w[1] / w[0],
                1.5,
                w[1] / w[0] >= 1.5,
            ));
        }
        let stable = scan(1.25)?;
        for w in stable.windows(2) {
            rows.push(CaseRow::new(
                "synthesis-stable-admissible",
                "synthesis-growth",
                format!("norms={stable:?}"),
                w[1] / w[0],
                1.1,
                w[1] / w[0] < 1.1,
            ));
        }
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
