//! Gauss-Legendre quadrature and the truncated tensor integrator used for
//! cone integrals in logarithmic group coordinates.

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on the Legendre recurrence; accuracy is at
/// machine level for the orders used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Rescale a [-1,1] rule to [a, b].
pub fn scaled_rule(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| (mid + half * xi, half * wi))
        .collect()
}

/// Composite rule on [a, b]: unit-width panels, `order` Gauss points each.
/// Resolution near any point is independent of the interval length, which is
/// what the expanding-box integrator needs.
pub fn composite_rule(order: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let panels = (((b - a).ceil()) as usize).max(1);
    let (x, w) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let pa = a + p as f64 * width;
        let half = 0.5 * width;
        let mid = pa + half;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((mid + half * xi, half * wi));
        }
    }
    out
}

/// Neumaier compensated accumulator: deterministic (fixed evaluation order)
/// and accurate for the long tensor sums below.
#[derive(Default, Clone, Copy)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Outcome of the truncation-expansion driver.
#[derive(Debug, Clone, PartialEq)]
pub enum Convergence {
    /// Relative change between the last two levels fell below the tolerance.
    Converged { value: f64, rel_change: f64 },
    /// Values keep growing by a sizable factor per level: the integral diverges.
    Diverging { values: Vec<f64> },
    /// Neither converged nor clearly diverging within the allotted levels.
    Slow { values: Vec<f64> },
}

impl Convergence {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Convergence::Converged { value, .. } => vec![*value],
            Convergence::Diverging { values } | Convergence::Slow { values } => values.clone(),
        }
    }
}

/// Integrate `integrand` over expanding boxes `[-L, L]^dims`, L doubling from
/// `l0`, with a composite Gauss rule of `order` points per unit panel capped
/// at `max_nodes_per_axis` nodes per axis.
///
/// The integrand receives the coordinate point; any jacobian factor must be
/// included by the caller.
pub fn integrate_expanding(
    dims: usize,
    l0: f64,
    levels: usize,
    order: usize,
    max_nodes_per_axis: usize,
    tol: f64,
    integrand: &dyn Fn(&[f64]) -> f64,
) -> Convergence {
    let mut values = Vec::with_capacity(levels);
    let mut l = l0;
    for _ in 0..levels {
        // respect the per-axis cap by lowering the per-panel order rather
        // than giving up the panel structure (local resolution matters more
        // than formal polynomial degree here)
        let panels = (2.0 * l).ceil() as usize;
        let eff_order = (max_nodes_per_axis / panels).clamp(2, order);
        let rule = composite_rule(eff_order, -l, l);
        let value = tensor_sum(dims, &rule, integrand);
        values.push(value);
        if values.len() >= 2 {
            let prev = values[values.len() - 2];
            let cur = values[values.len() - 1];
            let denom = cur.abs().max(1e-300);
            let rel = (cur - prev).abs() / denom;
            if rel < tol {
                return Convergence::Converged {
                    value: cur,
                    rel_change: rel,
                };
            }
            if values.len() >= 3 {
                let prev2 = values[values.len() - 3];
                if cur.abs() > prev.abs() * 1.10 && prev.abs() > prev2.abs() * 1.10 {
                    return Convergence::Diverging { values };
                }
            }
        }
        l *= 2.0;
    }
    Convergence::Slow { values }
}

/// Evaluate the tensor-product quadrature sum over `dims` copies of `rule`.
pub fn tensor_sum(dims: usize, rule: &[(f64, f64)], integrand: &dyn Fn(&[f64]) -> f64) -> f64 {
    let mut point = vec![0.0; dims];
    let mut acc = Accumulator::default();
    tensor_rec(0, dims, rule, integrand, 1.0, &mut point, &mut acc);
    acc.value()
}

fn tensor_rec(
    axis: usize,
    dims: usize,
    rule: &[(f64, f64)],
    integrand: &dyn Fn(&[f64]) -> f64,
    weight: f64,
    point: &mut Vec<f64>,
    acc: &mut Accumulator,
) {
    if axis == dims {
        acc.add(weight * integrand(point));
        return;
    }
    for &(x, w) in rule {
        point[axis] = x;
        tensor_rec(axis + 1, dims, rule, integrand, weight * w, point, acc);
    }
}

/// Strict variant: converged value or a numeric error carrying diagnostics.
pub fn integrate_expanding_strict(
    dims: usize,
    l0: f64,
    levels: usize,
    order: usize,
    max_nodes_per_axis: usize,
    tol: f64,
    integrand: &dyn Fn(&[f64]) -> f64,
) -> Result<f64> {
    match integrate_expanding(
        dims,
        l0,
        levels,
        order,
        max_nodes_per_axis,
        tol,
        integrand,
    ) {
        Convergence::Converged { value, .. } => Ok(value),
        Convergence::Diverging { values } => Err(Error::numeric(format!(
            "integral diverges under truncation expansion: levels {values:?}"
        ))),
        Convergence::Slow { values } => Err(Error::numeric(format!(
            "integral did not converge to tol {tol:e}: levels {values:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        // 5-point rule is exact through degree 9
        let rule = scaled_rule(5, 0.0, 1.0);
        let val: f64 = rule.iter().map(|&(x, w)| w * x.powi(9)).sum();
        assert!((val - 0.1).abs() < 1e-14);
    }

    #[test]
    fn rule_weights_sum_to_length() {
        for n in [1, 2, 7, 32, 64] {
            let (_, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn composite_rule_covers_interval() {
        let rule = composite_rule(6, -3.0, 5.0);
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - 8.0).abs() < 1e-12);
        assert!(rule.iter().all(|&(x, _)| (-3.0..=5.0).contains(&x)));
    }

    #[test]
    fn expanding_integrator_hits_gaussian() {
        // ∫ e^{-x^2} dx = sqrt(pi)
        let res = integrate_expanding_strict(1, 4.0, 4, 12, 2000, 1e-12, &|p| {
            (-p[0] * p[0]).exp()
        })
        .unwrap();
        assert!((res - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn expanding_integrator_detects_divergence() {
        // ∫ e^{0.3 x} dx over growing boxes diverges
        let res = integrate_expanding(1, 4.0, 6, 8, 2000, 1e-10, &|p| (0.3 * p[0]).exp());
        assert!(matches!(res, Convergence::Diverging { .. }));
    }
}
