//! Lorentz (light) cones of rank two.
//!
//! Frame: Delta_1(h) = h_1 + h_m and Delta_2(h) = h_1^2 - h_2^2 - ... - h_m^2,
//! base point e = (1, 0, ..., 0), so Delta^{(s1,s2)} = Delta_1^{s1-s2} Delta_2^{s2}.
//! The dual power function realizes the transposed action and comes out in the
//! trailing minor: Delta_{Omega'}^{(s1,s2)} = (l_1 - l_m)^{s2-s1} Delta_2(l)^{s1}.

use super::{Chart, ConeGeometry};
use crate::weight::WeightVector;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct Lorentz {
    ambient: usize,
}

impl Lorentz {
    pub fn new(ambient: usize) -> Self {
        assert!(ambient >= 3, "Lorentz cone needs ambient dimension >= 3");
        Lorentz { ambient }
    }

    /// Polarized Lorentz form B(x, y) = x_1 y_1 - sum_{j>=2} x_j y_j.
    fn form(x: &[f64], y: &[f64]) -> f64 {
        let mut b = x[0] * y[0];
        for j in 1..x.len() {
            b -= x[j] * y[j];
        }
        b
    }
}

impl ConeGeometry for Lorentz {
    fn name(&self) -> String {
        format!("lorentz({})", self.ambient)
    }

    fn rank(&self) -> usize {
        2
    }

    fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn m_vec(&self) -> WeightVector {
        WeightVector::new(vec![0.0, (self.ambient - 2) as f64])
    }

    fn m_prime_vec(&self) -> WeightVector {
        WeightVector::new(vec![(self.ambient - 2) as f64, 0.0])
    }

    fn base_point(&self) -> Vec<f64> {
        let mut e = vec![0.0; self.ambient];
        e[0] = 1.0;
        e
    }

    fn n_basis(&self) -> Vec<WeightVector> {
        vec![
            WeightVector::new(vec![1.0, 0.0]),
            WeightVector::new(vec![1.0, 1.0]),
        ]
    }

    fn contains_unchecked(&self, h: &[f64]) -> bool {
        if h[0] <= 0.0 {
            return false;
        }
        Self::form(h, h) > 0.0
    }

    fn minor_exponents(&self, s: &WeightVector) -> Vec<f64> {
        vec![s[0] - s[1], s[1]]
    }

    fn minors(&self, w: &[Complex64]) -> Vec<Complex64> {
        let m = self.ambient;
        let d1 = w[0] + w[m - 1];
        let mut d2 = w[0] * w[0];
        for j in 1..m {
            d2 -= w[j] * w[j];
        }
        vec![d1, d2]
    }

    fn dual_minor_exponents(&self, s: &WeightVector) -> Vec<f64> {
        vec![s[1] - s[0], s[0]]
    }

    fn dual_minors(&self, lambda: &[Complex64]) -> Vec<Complex64> {
        let m = self.ambient;
        let d1 = lambda[0] - lambda[m - 1];
        let mut d2 = lambda[0] * lambda[0];
        for j in 1..m {
            d2 -= lambda[j] * lambda[j];
        }
        vec![d1, d2]
    }

    fn relative_eigenvalues(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        // roots of Delta_2(y - t x) = t^2 D(x) - 2 t B(x,y) + D(y)
        let dx = Self::form(x, x);
        let dy = Self::form(y, y);
        let b = Self::form(x, y);
        let disc = (b * b - dx * dy).max(0.0).sqrt();
        vec![(b + disc) / dx, (b - disc) / dx]
    }

    fn chart(&self) -> Chart {
        // Group coordinates (alpha, gamma, b in R^{m-2}):
        //   a = e^alpha, c = e^gamma,
        //   u = a^2, w = a b, v = |b|^2 + c^2,
        //   h = ((u+v)/2, w, (u-v)/2)   [w occupying components 2..m-1]
        // with d nu_Omega = 2 e^{(2-m) gamma} d alpha d gamma d b.
        let m = self.ambient;
        Chart::new(m, move |c, p| {
            let a = c[0].exp();
            let cc = c[1].exp();
            let b = &c[2..];
            let u = a * a;
            let b2: f64 = b.iter().map(|t| t * t).sum();
            let v = b2 + cc * cc;
            p.h.clear();
            p.h.resize(m, 0.0);
            p.h[0] = 0.5 * (u + v);
            for (j, &bj) in b.iter().enumerate() {
                p.h[1 + j] = a * bj;
            }
            p.h[m - 1] = 0.5 * (u - v);
            p.jacobian = 2.0 * ((2.0 - m as f64) * c[1]).exp();
            // exact in group coordinates: Delta_1 = a^2, Delta_2 = a^2 c^2
            p.minors.clear();
            p.minors.push(u);
            p.minors.push(u * cc * cc);
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_lands_in_cone_with_unit_base() {
        let lor = Lorentz::new(3);
        let chart = lor.chart();
        assert_eq!(chart.dims, 2 + 1);
        let p = chart.eval(&[0.0, 0.0, 0.0]);
        // alpha=gamma=0, b=0 gives (1, 0, 0): the base point
        assert!((p.h[0] - 1.0).abs() < 1e-15 && p.h[1].abs() < 1e-15 && p.h[2].abs() < 1e-15);
        for coords in [[0.3, -0.4, 0.8], [-1.0, 0.9, -2.0], [2.0, 2.0, 3.0]] {
            let p = chart.eval(&coords);
            assert!(lor.contains_unchecked(&p.h), "coords {coords:?}");
            assert!(p.jacobian > 0.0);
            // chart minors agree with the ambient-coordinate evaluation
            let w: Vec<Complex64> = p.h.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let amb = lor.minors(&w);
            assert!((amb[0].re - p.minors[0]).abs() < 1e-12 * p.minors[0]);
            assert!((amb[1].re - p.minors[1]).abs() < 1e-9 * p.minors[1].max(1.0));
        }
    }

    #[test]
    fn relative_eigenvalues_of_scaled_base() {
        let lor = Lorentz::new(3);
        let e = [1.0, 0.0, 0.0];
        let y = [4.0, 0.0, 0.0];
        let eig = lor.relative_eigenvalues(&e, &y);
        assert!((eig[0] - 4.0).abs() < 1e-12 && (eig[1] - 4.0).abs() < 1e-12);
    }
}
