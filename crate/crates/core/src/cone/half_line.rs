//! The rank-one cone (0, infinity).

use super::{Chart, ConeGeometry};
use crate::weight::WeightVector;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct HalfLine;

impl ConeGeometry for HalfLine {
    fn name(&self) -> String {
        "halfline".to_string()
    }

    fn rank(&self) -> usize {
        1
    }

    fn ambient_dim(&self) -> usize {
        1
    }

    fn m_vec(&self) -> WeightVector {
        WeightVector::zeros(1)
    }

    fn m_prime_vec(&self) -> WeightVector {
        WeightVector::zeros(1)
    }

    fn base_point(&self) -> Vec<f64> {
        vec![1.0]
    }

    fn n_basis(&self) -> Vec<WeightVector> {
        vec![WeightVector::new(vec![1.0])]
    }

    fn contains_unchecked(&self, h: &[f64]) -> bool {
        h[0] > 0.0
    }

    fn minor_exponents(&self, s: &WeightVector) -> Vec<f64> {
        vec![s[0]]
    }

    fn minors(&self, w: &[Complex64]) -> Vec<Complex64> {
        vec![w[0]]
    }

    fn dual_minor_exponents(&self, s: &WeightVector) -> Vec<f64> {
        vec![s[0]]
    }

    fn dual_minors(&self, lambda: &[Complex64]) -> Vec<Complex64> {
        vec![lambda[0]]
    }

    fn relative_eigenvalues(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        vec![y[0] / x[0]]
    }

    fn minors_all_linear(&self) -> bool {
        true
    }

    fn chart(&self) -> Chart {
        // h = e^u, d nu = du
        Chart::new(1, |c, p| {
            let y = c[0].exp();
            p.h.clear();
            p.h.push(y);
            p.minors.clear();
            p.minors.push(y);
            p.jacobian = 1.0;
        })
    }
}
