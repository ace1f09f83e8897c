//! Weight vectors in R^r indexing power functions, measures, and Bergman
//! parameters, together with the two partial orders used throughout.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Index, Mul, Neg, Sub};

/// An element of R^r. The length always equals the rank of the cone it is
/// used with; operations panic on length mismatch since that is a programming
/// error, while public entry points validate lengths and return errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<f64>);

impl WeightVector {
    pub fn new(components: Vec<f64>) -> Self {
        WeightVector(components)
    }

    /// Constant vector `c * 1_r`.
    pub fn constant(c: f64, rank: usize) -> Self {
        WeightVector(vec![c; rank])
    }

    pub fn zeros(rank: usize) -> Self {
        Self::constant(0.0, rank)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Componentwise order: s <= s' in every coordinate.
    pub fn le(&self, other: &Self) -> bool {
        self.assert_len(other);
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Strict order: every component strictly smaller.
    pub fn prec(&self, other: &Self) -> bool {
        self.assert_len(other);
        self.0.iter().zip(&other.0).all(|(a, b)| a < b)
    }

    /// The order with `s' - s` in `{0} ∪ (R_+^*)^r`: equality or strict in
    /// every component.
    pub fn prec_eq(&self, other: &Self) -> bool {
        self == other || self.prec(other)
    }

    /// Every component strictly larger.
    pub fn succ(&self, other: &Self) -> bool {
        other.prec(self)
    }

    pub fn succ_eq(&self, other: &Self) -> bool {
        other.prec_eq(self)
    }

    pub fn scale(&self, c: f64) -> Self {
        WeightVector(self.0.iter().map(|a| c * a).collect())
    }

    /// Componentwise maximum.
    pub fn max(&self, other: &Self) -> Self {
        self.assert_len(other);
        WeightVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(*b))
                .collect(),
        )
    }

    fn assert_len(&self, other: &Self) {
        assert_eq!(self.len(), other.len(), "weight vector rank mismatch");
    }
}

impl Index<usize> for WeightVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        self.assert_len(rhs);
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        self.assert_len(rhs);
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &WeightVector {
    type Output = WeightVector;
    fn mul(self, c: f64) -> WeightVector {
        self.scale(c)
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        self.scale(-1.0)
    }
}

impl From<Vec<f64>> for WeightVector {
    fn from(v: Vec<f64>) -> Self {
        WeightVector(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_are_consistent() {
        let a = WeightVector::new(vec![1.0, 2.0]);
        let b = WeightVector::new(vec![2.0, 3.0]);
        let c = WeightVector::new(vec![2.0, 2.0]);
        assert!(a.le(&b) && a.prec(&b) && a.prec_eq(&b));
        assert!(a.le(&c) && !a.prec(&c) && !a.prec_eq(&c));
        assert!(a.prec_eq(&a) && a.le(&a) && !a.prec(&a));
        // prec implies le
        assert!(b.succ(&a) && b.succ_eq(&a));
    }
}
