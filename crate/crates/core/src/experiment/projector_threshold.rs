//! The half-plane positive-projector threshold scan: for s = 1, p = q = 2
//! the positive projector with kernel exponent -1 - 2 s~ saturates for
//! s~ = 0.75 and blows up under truncation doubling for s~ = 0.4, matching
//! the reduced cone operator on both sides.

use super::{CaseRow, Experiment, ExperimentConfig, ExperimentReport, RunContext};
use crate::cone::{from_spec, ConeSpec};
use crate::domain::SiegelDomain;
use crate::error::Result;
use crate::opnorm::{verdict_from_estimates, Verdict};
use crate::projector::{
    estimate_cone_operator_norm, reduced_positive_scan, ProjectorParams, ReducedScanOptions,
};

pub struct ProjectorThreshold;

impl Experiment for ProjectorThreshold {
    fn kind(&self) -> &'static str {
        "projector-threshold"
    }

    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
        let seed = cfg.seed.unwrap_or(ctx.seed);
        let dom = SiegelDomain::tube(from_spec(
            cfg.cone.as_ref().unwrap_or(&ConeSpec::Halfline),
        )?);
        let radii = cfg
            .truncations
            .clone()
            .or_else(|| cfg.grid.as_ref().and_then(|g| g.truncations.clone()))
            .unwrap_or_else(|| vec![16.0, 32.0, 64.0]);
        let mut rows = Vec::new();
        let cases: Vec<(f64, f64, Verdict, f64)> = if cfg.cases.is_empty() {
            // (s, s_tilde, expected verdict, growth threshold)
            vec![
                (1.0, 0.75, Verdict::Bounded, 1.05),
                (1.0, 0.4, Verdict::Unbounded, 1.25),
            ]
        } else {
            cfg.cases
                .iter()
                .map(|c| {
                    let s = c.s.as_ref().map(|v| v[0]).unwrap_or(1.0);
                    let st = c.s_tilde.unwrap_or(0.75);
                    let expect = if 2.0 * st > s {
                        Verdict::Bounded
                    } else {
                        Verdict::Unbounded
                    };
                    let thr = if expect == Verdict::Bounded { 1.05 } else { 1.25 };
                    (s, st, expect, thr)
                })
                .collect()
        };
        for (s, st, expect, growth_thr) in cases {
            let sp = vec![-1.0 - 2.0 * st];
            let params = ProjectorParams::new(
                dom.clone(),
                2.0,
                2.0,
                vec![s].into(),
                sp.clone().into(),
            )?;
            let t_rep =
                estimate_cone_operator_norm(&dom, &params.s, &params.s_prime, 2.0, 0.25, &radii)?;
            let p_est = reduced_positive_scan(
                &params,
                &ReducedScanOptions::default(),
                &radii,
                &[2.0],
            )?;
            let p_rep = verdict_from_estimates(&radii, &p_est[0]);
            let growth_ok = match expect {
                Verdict::Bounded => p_rep.growth_ratio < growth_thr,
                _ => p_rep.growth_ratio >= growth_thr,
            };
            rows.push(CaseRow::new(
                format!("s={s}-st={st}-T"),
                "positive-threshold",
                format!("estimates={:?}", t_rep.norm_estimates),
                t_rep.growth_ratio,
                growth_thr,
                t_rep.verdict == expect,
            ));
            rows.push(CaseRow::new(
                format!("s={s}-st={st}-P+"),
                "positive-threshold",
                format!("verdict={} estimates={:?}", p_rep.verdict, p_rep.norm_estimates),
                p_rep.growth_ratio,
                growth_thr,
                p_rep.verdict == expect && growth_ok,
            ));
        }
        Ok(ExperimentReport::from_rows(self.kind(), seed, rows, 0.0))
    }
}
