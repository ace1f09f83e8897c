//! Product cones: all structure data composes blockwise.

use super::{Chart, Cone, ConeGeometry};
use crate::weight::WeightVector;
use num_complex::Complex64;

#[derive(Debug)]
pub struct ProductCone {
    factors: Vec<Cone>,
    rank: usize,
    ambient: usize,
}

impl ProductCone {
    pub fn new(factors: Vec<Cone>) -> Self {
        let rank = factors.iter().map(|f| f.rank()).sum();
        let ambient = factors.iter().map(|f| f.ambient_dim()).sum();
        ProductCone {
            factors,
            rank,
            ambient,
        }
    }

    fn concat_weights(&self, per_factor: impl Fn(&Cone) -> WeightVector) -> WeightVector {
        let mut out = Vec::with_capacity(self.rank);
        for f in &self.factors {
            out.extend_from_slice(per_factor(f).as_slice());
        }
        WeightVector::new(out)
    }

    fn split_rank<'a>(&self, s: &'a WeightVector) -> Vec<WeightVector> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut off = 0;
        for f in &self.factors {
            let r = f.rank();
            out.push(WeightVector::new(s.as_slice()[off..off + r].to_vec()));
            off += r;
        }
        let _ = s;
        out
    }
}

impl ConeGeometry for ProductCone {
    fn name(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|f| f.name()).collect();
        format!("product({})", names.join(","))
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn m_vec(&self) -> WeightVector {
        self.concat_weights(|f| f.m_vec())
    }

    fn m_prime_vec(&self) -> WeightVector {
        self.concat_weights(|f| f.m_prime_vec())
    }

    fn base_point(&self) -> Vec<f64> {
        let mut e = Vec::with_capacity(self.ambient);
        for f in &self.factors {
            e.extend_from_slice(&f.e_omega());
        }
        e
    }

    fn n_basis(&self) -> Vec<WeightVector> {
        // blockwise: each factor basis vector zero-padded to full rank
        let mut out = Vec::with_capacity(self.rank);
        let mut off = 0;
        for f in &self.factors {
            for b in f.n_basis() {
                let mut v = vec![0.0; self.rank];
                v[off..off + f.rank()].copy_from_slice(b.as_slice());
                out.push(WeightVector::new(v));
            }
            off += f.rank();
        }
        out
    }

    fn contains_unchecked(&self, h: &[f64]) -> bool {
        let mut off = 0;
        for f in &self.factors {
            let d = f.ambient_dim();
            if !f.geometry().contains_unchecked(&h[off..off + d]) {
                return false;
            }
            off += d;
        }
        true
    }

    fn minor_exponents(&self, s: &WeightVector) -> Vec<f64> {
        let mut out = Vec::new();
        for (f, sf) in self.factors.iter().zip(self.split_rank(s)) {
            out.extend(f.geometry().minor_exponents(&sf));
        }
        out
    }

    fn minors(&self, w: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::new();
        let mut off = 0;
        for f in &self.factors {
            let d = f.ambient_dim();
            out.extend(f.geometry().minors(&w[off..off + d]));
            off += d;
        }
        out
    }

    fn dual_minor_exponents(&self, s: &WeightVector) -> Vec<f64> {
        let mut out = Vec::new();
        for (f, sf) in self.factors.iter().zip(self.split_rank(s)) {
            out.extend(f.geometry().dual_minor_exponents(&sf));
        }
        out
    }

    fn dual_minors(&self, lambda: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::new();
        let mut off = 0;
        for f in &self.factors {
            let d = f.ambient_dim();
            out.extend(f.geometry().dual_minors(&lambda[off..off + d]));
            off += d;
        }
        out
    }

    fn relative_eigenvalues(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        let mut off = 0;
        for f in &self.factors {
            let d = f.ambient_dim();
            out.extend(
                f.geometry()
                    .relative_eigenvalues(&x[off..off + d], &y[off..off + d]),
            );
            off += d;
        }
        out
    }

    fn minors_all_linear(&self) -> bool {
        self.factors
            .iter()
            .all(|f| f.geometry().minors_all_linear())
    }

    fn chart(&self) -> Chart {
        let charts: Vec<Chart> = self.factors.iter().map(|f| f.chart()).collect();
        let dims: usize = charts.iter().map(|c| c.dims).sum();
        Chart::new(dims, move |coords, p| {
            p.h.clear();
            p.minors.clear();
            p.jacobian = 1.0;
            let mut off = 0;
            let mut scratch = super::ChartPoint::default();
            for c in &charts {
                c.eval_into(&coords[off..off + c.dims], &mut scratch);
                p.h.extend_from_slice(&scratch.h);
                p.minors.extend_from_slice(&scratch.minors);
                p.jacobian *= scratch.jacobian;
                off += c.dims;
            }
        })
    }
}
