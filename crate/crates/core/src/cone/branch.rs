//! Analytic continuation of minor logarithms along the segment from the base
//! point. The cone minors are zero-free polynomials on Omega + iF, and the
//! segment stays in that convex set, so the continued logs are well defined;
//! adaptive bisection keeps each step's argument jump below pi/2.

use super::ConeGeometry;
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_DEPTH: u32 = 48;

fn continue_logs(
    eval: &dyn Fn(&[Complex64]) -> Vec<Complex64>,
    start: &[Complex64],
    end: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n_minors = eval(start).len();
    let mut logs = vec![Complex64::new(0.0, 0.0); n_minors];
    let mut tau = 0.0_f64;
    let mut cur = eval(start);
    // every minor equals 1 at the base point; continuation accumulates
    // principal logs of step ratios
    let mut step = 0.125_f64;
    let mut depth_guard = 0u32;
    while tau < 1.0 {
        let next_tau = (tau + step).min(1.0);
        let p: Vec<Complex64> = start
            .iter()
            .zip(end)
            .map(|(a, b)| a * (1.0 - next_tau) + b * next_tau)
            .collect();
        let next = eval(&p);
        let mut ok = true;
        for (c, n) in cur.iter().zip(&next) {
            if c.norm() == 0.0 || n.norm() == 0.0 {
                return Err(Error::numeric(
                    "minor vanished on the continuation path".to_string(),
                ));
            }
            let ratio = n / c;
            if ratio.arg().abs() >= std::f64::consts::FRAC_PI_2 {
                ok = false;
                break;
            }
        }
        if ok {
            for (l, (c, n)) in logs.iter_mut().zip(cur.iter().zip(&next)) {
                *l += (n / c).ln();
            }
            cur = next;
            tau = next_tau;
            step *= 2.0;
            depth_guard = 0;
        } else {
            step *= 0.5;
            depth_guard += 1;
            if depth_guard > MAX_DEPTH {
                return Err(Error::numeric(
                    "continuation step refinement exhausted".to_string(),
                ));
            }
        }
    }
    Ok(logs)
}

/// Logs of the primal minors at `w`, continued from the base point where all
/// minors equal one.
pub fn continued_minor_logs(geom: &dyn ConeGeometry, w: &[Complex64]) -> Result<Vec<Complex64>> {
    let e: Vec<Complex64> = geom
        .base_point()
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    continue_logs(&|p| geom.minors(p), &e, w)
}

/// Same for the dual minors on Omega' + iF'.
pub fn continued_dual_minor_logs(
    geom: &dyn ConeGeometry,
    lambda: &[Complex64],
) -> Result<Vec<Complex64>> {
    let e: Vec<Complex64> = geom
        .base_point()
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    continue_logs(&|p| geom.dual_minors(p), &e, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{from_spec, ConeSpec};

    #[test]
    fn halfline_branch_reaches_upper_half_plane() {
        let c = from_spec(&ConeSpec::Halfline).unwrap();
        // continue to w = i: log i = i pi/2 on the branch through 1
        let logs = continued_minor_logs(c.geometry(), &[Complex64::new(1e-12, 1.0)]).unwrap();
        assert!((logs[0].im - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
        assert!(logs[0].re.abs() < 1e-6);
    }

    #[test]
    fn exp_of_continued_log_recovers_minors() {
        let c = from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap();
        let w = vec![
            Complex64::new(2.0, -3.0),
            Complex64::new(0.3, 5.0),
            Complex64::new(-0.4, 2.0),
        ];
        let logs = continued_minor_logs(c.geometry(), &w).unwrap();
        let minors = c.geometry().minors(&w);
        for (l, m) in logs.iter().zip(&minors) {
            assert!((l.exp() - m).norm() < 1e-10 * m.norm());
        }
    }
}
