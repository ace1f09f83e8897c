//! Gamma functions of cones and the Laplace-transform identity, computed by
//! tensorized Gauss-Legendre quadrature in logarithmic group coordinates with
//! dyadic truncation expansion.

use super::Cone;
use crate::error::{Error, Result};
use crate::quad::{integrate_expanding, Convergence};
use crate::weight::WeightVector;

/// Tuning knobs for the cone quadratures.
#[derive(Debug, Clone)]
pub struct GammaOptions {
    pub l0: f64,
    pub levels: usize,
    pub order: usize,
    pub max_nodes_per_axis: usize,
    pub tol: f64,
}

impl GammaOptions {
    /// Defaults tuned per rank: 1e-8 relative for rank one, 1e-5 for the
    /// Lorentz families (their charts are 3- and 4-dimensional).
    pub fn for_cone(cone: &Cone) -> Self {
        let dims = cone.chart().dims;
        if dims == 1 {
            GammaOptions {
                l0: 12.0,
                levels: 4,
                order: 10,
                max_nodes_per_axis: 2000,
                tol: 1e-9,
            }
        } else if dims <= 3 {
            GammaOptions {
                l0: 7.0,
                levels: 3,
                order: 8,
                max_nodes_per_axis: 400,
                tol: 1e-6,
            }
        } else {
            GammaOptions {
                l0: 6.0,
                levels: 3,
                order: 6,
                max_nodes_per_axis: 120,
                tol: 1e-5,
            }
        }
    }
}

/// Sharp convergence predicate for the gamma integrand: s must exceed m/2 in
/// every component. (The gamma integral and the local finiteness of the
/// weighted cone measure share this region; the truncation scan below
/// confirms it numerically.)
pub fn gamma_converges(cone: &Cone, s: &WeightVector) -> bool {
    s.succ(&cone.m_vec().scale(0.5))
}

fn laplace_integrand(cone: &Cone, s: &WeightVector, lambda: &[f64]) -> impl Fn(&[f64]) -> f64 {
    let chart = cone.chart();
    let exps = cone.geometry().minor_exponents(s);
    let lambda = lambda.to_vec();
    let scratch = std::cell::RefCell::new(crate::cone::ChartPoint::default());
    move |coords: &[f64]| {
        let mut p = scratch.borrow_mut();
        chart.eval_into(coords, &mut p);
        let dot: f64 = lambda.iter().zip(&p.h).map(|(l, x)| l * x).sum();
        let mut pw = 1.0;
        for (m, c) in p.minors.iter().zip(&exps) {
            pw *= m.powf(*c);
        }
        let v = (-dot).exp() * pw * p.jacobian;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    }
}

/// Gamma_Omega(s) = ∫_Omega e^{-<e', h>} Delta^s(h) d nu(h).
pub fn gamma_cone(cone: &Cone, s: &WeightVector) -> Result<f64> {
    gamma_cone_with(cone, s, &GammaOptions::for_cone(cone))
}

pub fn gamma_cone_with(cone: &Cone, s: &WeightVector, opt: &GammaOptions) -> Result<f64> {
    laplace_transform_with(cone, s, &cone.e_omega_prime(), opt)
}

/// ∫_Omega e^{-<lambda, h>} Delta^s(h) d nu(h) for lambda in the open dual cone.
pub fn laplace_transform(cone: &Cone, s: &WeightVector, lambda: &[f64]) -> Result<f64> {
    laplace_transform_with(cone, s, lambda, &GammaOptions::for_cone(cone))
}

pub fn laplace_transform_with(
    cone: &Cone,
    s: &WeightVector,
    lambda: &[f64],
    opt: &GammaOptions,
) -> Result<f64> {
    if s.len() != cone.rank() {
        return Err(Error::argument("weight vector rank mismatch"));
    }
    if !cone.dual_contains(lambda)? {
        return Err(Error::domain(
            "laplace point not in the open dual cone".to_string(),
        ));
    }
    if !gamma_converges(cone, s) {
        return Err(Error::domain(format!(
            "gamma integral diverges: s = {:?} must strictly exceed m/2 = {:?}",
            s.as_slice(),
            cone.m_vec().scale(0.5).as_slice()
        )));
    }
    let chart = cone.chart();
    let f = laplace_integrand(cone, s, lambda);
    match integrate_expanding(
        chart.dims,
        opt.l0,
        opt.levels,
        opt.order,
        opt.max_nodes_per_axis,
        opt.tol,
        &f,
    ) {
        Convergence::Converged { value, .. } => Ok(value),
        Convergence::Diverging { values } => Err(Error::numeric(format!(
            "gamma quadrature grows under truncation expansion: {values:?}"
        ))),
        Convergence::Slow { values } => {
            // accept the last two levels if they agree to a relaxed tolerance,
            // otherwise report non-convergence with the level history
            let n = values.len();
            let rel = (values[n - 1] - values[n - 2]).abs() / values[n - 1].abs().max(1e-300);
            if rel < opt.tol * 100.0 {
                Ok(values[n - 1])
            } else {
                Err(Error::numeric(format!(
                    "gamma quadrature did not converge to {:e}: levels {values:?}",
                    opt.tol
                )))
            }
        }
    }
}

/// The Laplace-transform identity probe: the product
/// `L(Delta^s nu)(lambda) * Delta_{Omega'}^s(lambda)` is constant in lambda
/// and equals Gamma_Omega(s).
pub fn laplace_transform_check(cone: &Cone, s: &WeightVector, lambda: &[f64]) -> Result<f64> {
    let lt = laplace_transform(cone, s, lambda)?;
    let dual = cone.dual_power_function_real(s, lambda)?;
    Ok(lt * dual)
}

/// Truncation behaviour of the gamma quadrature without any precondition:
/// used by the boundary scans that locate the divergence region numerically.
pub fn gamma_truncation_scan(cone: &Cone, s: &WeightVector, levels: usize) -> Convergence {
    let opt = GammaOptions::for_cone(cone);
    let chart = cone.chart();
    let f = laplace_integrand(cone, s, &cone.e_omega_prime());
    integrate_expanding(
        chart.dims,
        opt.l0,
        levels,
        opt.order,
        opt.max_nodes_per_axis,
        opt.tol,
        &f,
    )
}
