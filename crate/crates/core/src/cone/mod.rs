//! Homogeneous-cone geometry: membership, generalized power functions,
//! invariant distance, structure vectors, and integration charts for the
//! three supported families (half-line, Lorentz, products).
//!
//! Every family implements [`ConeGeometry`]; a cone is selected at runtime
//! from a [`ConeSpec`] (the JSON form used in experiment configs) via
//! [`from_spec`]. All power functions are expressed through the family's
//! "minors": Delta^s = prod_j Delta_j^{c_j(s)} with c_j linear in s, which
//! makes homogeneity and additivity in s exact by construction.

mod half_line;
mod lorentz;
mod product;

pub mod branch;
pub mod gamma;

pub use half_line::HalfLine;
pub use lorentz::Lorentz;
pub use product::ProductCone;

use crate::error::{Error, Result};
use crate::weight::WeightVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Image of a chart coordinate: the cone point, the minor values at it
/// (computed in group coordinates, which avoids the catastrophic
/// cancellation of evaluating e.g. the Lorentz form near the boundary), and
/// the invariant-measure jacobian.
#[derive(Debug, Clone, Default)]
pub struct ChartPoint {
    pub h: Vec<f64>,
    pub minors: Vec<f64>,
    pub jacobian: f64,
}

/// Coordinate chart identifying the cone with a box in logarithmic group
/// coordinates: `∫_Ω F dν_Ω = ∫ F(point(c)) jacobian(c) dc`.
pub struct Chart {
    pub dims: usize,
    map: Box<dyn Fn(&[f64], &mut ChartPoint) + Send + Sync>,
}

impl Chart {
    pub fn new(dims: usize, map: impl Fn(&[f64], &mut ChartPoint) + Send + Sync + 'static) -> Self {
        Chart {
            dims,
            map: Box::new(map),
        }
    }

    pub fn eval(&self, coords: &[f64]) -> ChartPoint {
        let mut p = ChartPoint::default();
        self.eval_into(coords, &mut p);
        p
    }

    /// Allocation-free evaluation into a scratch point (hot quadrature loops).
    pub fn eval_into(&self, coords: &[f64], p: &mut ChartPoint) {
        debug_assert_eq!(coords.len(), self.dims);
        (self.map)(coords, p)
    }
}

/// One cone family. Implementations are immutable after construction and all
/// methods are pure, so values are freely shared across threads.
pub trait ConeGeometry: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn rank(&self) -> usize;
    fn ambient_dim(&self) -> usize;
    /// Multiplicity vector m.
    fn m_vec(&self) -> WeightVector;
    /// Multiplicity vector m'.
    fn m_prime_vec(&self) -> WeightVector;
    /// Base point e with Delta^s(e) = 1 for every s.
    fn base_point(&self) -> Vec<f64>;
    /// Basis over N of the set of s with polynomial Delta^s.
    fn n_basis(&self) -> Vec<WeightVector>;
    /// Strict membership in the open cone. Length is already validated.
    fn contains_unchecked(&self, h: &[f64]) -> bool;
    /// Exponents c(s) with Delta^s = prod_j Delta_j^{c_j(s)}; linear in s.
    fn minor_exponents(&self, s: &WeightVector) -> Vec<f64>;
    /// The minors Delta_j evaluated on the complexified ambient space.
    fn minors(&self, w: &[Complex64]) -> Vec<Complex64>;
    /// Exponents for the dual power function in the dual minors.
    fn dual_minor_exponents(&self, s: &WeightVector) -> Vec<f64>;
    /// Dual minors: Delta_{Omega'}^s = prod_j DualDelta_j^{c*_j(s)}.
    fn dual_minors(&self, lambda: &[Complex64]) -> Vec<Complex64>;
    /// Eigenvalues of y relative to x (roots of the per-factor characteristic
    /// equation); there are `rank` of them, all positive for interior points.
    fn relative_eigenvalues(&self, x: &[f64], y: &[f64]) -> Vec<f64>;
    /// Integration chart in logarithmic coordinates.
    fn chart(&self) -> Chart;
    /// True when every minor is linear (products of half-lines): principal
    /// logarithms are then the correct branch on Omega + iF.
    fn minors_all_linear(&self) -> bool {
        false
    }
}

/// JSON-facing cone specification.
///
/// `{"kind":"halfline"} | {"kind":"lorentz","dim":3} |
/// {"kind":"product","factors":[...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConeSpec {
    Halfline,
    Lorentz { dim: usize },
    Product { factors: Vec<ConeSpec> },
}

/// Build a cone from its runtime specification.
pub fn from_spec(spec: &ConeSpec) -> Result<Cone> {
    match spec {
        ConeSpec::Halfline => Ok(Cone::new(HalfLine)),
        ConeSpec::Lorentz { dim } => {
            if *dim < 3 {
                return Err(Error::config(format!(
                    "cone.dim: Lorentz ambient dimension must be >= 3, got {dim}"
                )));
            }
            Ok(Cone::new(Lorentz::new(*dim)))
        }
        ConeSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::config("cone.factors: empty product".to_string()));
            }
            let parts = factors.iter().map(from_spec).collect::<Result<Vec<_>>>()?;
            Ok(Cone::new(ProductCone::new(parts)))
        }
    }
}

/// Shared handle to a cone geometry, with the validated public operations.
#[derive(Clone)]
pub struct Cone(Arc<dyn ConeGeometry>);

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone({})", self.0.name())
    }
}

impl Cone {
    pub fn new(geom: impl ConeGeometry + 'static) -> Self {
        Cone(Arc::new(geom))
    }

    pub fn geometry(&self) -> &dyn ConeGeometry {
        self.0.as_ref()
    }

    pub fn name(&self) -> String {
        self.0.name()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient_dim()
    }

    pub fn m_vec(&self) -> WeightVector {
        self.0.m_vec()
    }

    pub fn m_prime_vec(&self) -> WeightVector {
        self.0.m_prime_vec()
    }

    /// Measure exponent d = -(1_r + m/2 + m'/2).
    pub fn d_vec(&self) -> WeightVector {
        let m = self.0.m_vec();
        let mp = self.0.m_prime_vec();
        let one = WeightVector::constant(1.0, self.rank());
        -&(&(&one + &m.scale(0.5)) + &mp.scale(0.5))
    }

    /// b + d for the tube domain over this cone (b = 0).
    pub fn e_omega(&self) -> Vec<f64> {
        self.0.base_point()
    }

    /// Dual base point; the supported realizations are self-dual.
    pub fn e_omega_prime(&self) -> Vec<f64> {
        self.0.base_point()
    }

    pub fn n_basis(&self) -> Vec<WeightVector> {
        self.0.n_basis()
    }

    fn check_dim(&self, h: &[f64]) -> Result<()> {
        if h.len() != self.ambient_dim() {
            return Err(Error::argument(format!(
                "point has length {}, cone ambient dimension is {}",
                h.len(),
                self.ambient_dim()
            )));
        }
        Ok(())
    }

    fn check_rank(&self, s: &WeightVector) -> Result<()> {
        if s.len() != self.rank() {
            return Err(Error::argument(format!(
                "weight vector has length {}, cone rank is {}",
                s.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Membership in the open cone (strict inequalities).
    pub fn contains(&self, h: &[f64]) -> Result<bool> {
        self.check_dim(h)?;
        Ok(self.0.contains_unchecked(h))
    }

    /// Membership in the open dual cone. Self-dual realizations: same test.
    pub fn dual_contains(&self, lambda: &[f64]) -> Result<bool> {
        self.contains(lambda)
    }

    /// Delta^s(h) for a real point of the open cone. Always real positive.
    pub fn power_function_real(&self, s: &WeightVector, h: &[f64]) -> Result<f64> {
        self.check_rank(s)?;
        self.check_dim(h)?;
        if !self.0.contains_unchecked(h) {
            return Err(Error::domain("point not in the open cone".to_string()));
        }
        let w: Vec<Complex64> = h.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let minors = self.0.minors(&w);
        let exps = self.0.minor_exponents(s);
        let mut out = 1.0;
        for (m, c) in minors.iter().zip(&exps) {
            debug_assert!(m.im == 0.0 && m.re > 0.0);
            out *= m.re.powf(*c);
        }
        Ok(out)
    }

    /// Delta^s(w) on Omega + iF, holomorphic branch fixed by the value 1 at
    /// the base point (continuation along the segment from it).
    pub fn power_function(&self, s: &WeightVector, w: &[Complex64]) -> Result<Complex64> {
        self.check_rank(s)?;
        if w.len() != self.ambient_dim() {
            return Err(Error::argument("point length != ambient dimension"));
        }
        let re: Vec<f64> = w.iter().map(|z| z.re).collect();
        if !self.0.contains_unchecked(&re) {
            return Err(Error::domain(
                "real part of the argument not in the open cone".to_string(),
            ));
        }
        if w.iter().all(|z| z.im == 0.0) {
            return Ok(Complex64::new(self.power_function_real(s, &re)?, 0.0));
        }
        let exps = self.0.minor_exponents(s);
        if self.0.minors_all_linear() {
            // linear minors keep positive real part on Omega + iF, so the
            // principal branch is the continued one
            let minors = self.0.minors(w);
            let log_total: Complex64 = minors
                .iter()
                .zip(&exps)
                .map(|(m, c)| m.ln() * Complex64::new(*c, 0.0))
                .sum();
            return Ok(log_total.exp());
        }
        let logs = branch::continued_minor_logs(self.geometry(), w)?;
        let log_total: Complex64 = logs
            .iter()
            .zip(&exps)
            .map(|(l, c)| l * Complex64::new(*c, 0.0))
            .sum();
        Ok(log_total.exp())
    }

    /// Dual power function Delta_{Omega'}^s on Omega' + iF'.
    pub fn dual_power_function(&self, s: &WeightVector, lambda: &[Complex64]) -> Result<Complex64> {
        self.check_rank(s)?;
        if lambda.len() != self.ambient_dim() {
            return Err(Error::argument("point length != ambient dimension"));
        }
        let re: Vec<f64> = lambda.iter().map(|z| z.re).collect();
        if !self.0.contains_unchecked(&re) {
            return Err(Error::domain(
                "real part of the argument not in the open dual cone".to_string(),
            ));
        }
        let exps = self.0.dual_minor_exponents(s);
        if lambda.iter().all(|z| z.im == 0.0) {
            let minors = self.0.dual_minors(lambda);
            let mut out = 1.0;
            for (m, c) in minors.iter().zip(&exps) {
                out *= m.re.powf(*c);
            }
            return Ok(Complex64::new(out, 0.0));
        }
        let logs = branch::continued_dual_minor_logs(self.geometry(), lambda)?;
        let log_total: Complex64 = logs
            .iter()
            .zip(&exps)
            .map(|(l, c)| l * Complex64::new(*c, 0.0))
            .sum();
        Ok(log_total.exp())
    }

    pub fn dual_power_function_real(&self, s: &WeightVector, lambda: &[f64]) -> Result<f64> {
        let w: Vec<Complex64> = lambda.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(self.dual_power_function(s, &w)?.re)
    }

    /// Invariant distance: the 2-norm of the logs of the relative eigenvalues.
    pub fn invariant_distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        if !self.0.contains_unchecked(x) || !self.0.contains_unchecked(y) {
            return Err(Error::domain("distance arguments must lie in the open cone"));
        }
        let eig = self.0.relative_eigenvalues(x, y);
        let sq: f64 = eig.iter().map(|l| l.ln().powi(2)).sum();
        Ok(sq.sqrt())
    }

    /// |s|: expand s in the N-basis and sum |alpha_j| times the homogeneity
    /// degree of the basis power function.
    pub fn abs_weight(&self, s: &WeightVector) -> Result<f64> {
        self.check_rank(s)?;
        let basis = self.0.n_basis();
        let r = self.rank();
        // columns are the basis vectors
        let a: Vec<Vec<f64>> = (0..r)
            .map(|row| (0..r).map(|col| basis[col][row]).collect())
            .collect();
        let alpha = crate::util::solve_dense(&a, s.as_slice());
        Ok(alpha
            .iter()
            .zip(&basis)
            .map(|(al, b)| al.abs() * b.sum())
            .sum())
    }

    /// Scalar automorphic scale of a layer: Delta^{1_r}(h)^{1/r}, homogeneous
    /// of degree one and equal to 1 at the base point.
    pub fn scale(&self, h: &[f64]) -> Result<f64> {
        let one = WeightVector::constant(1.0, self.rank());
        Ok(self
            .power_function_real(&one, h)?
            .powf(1.0 / self.rank() as f64))
    }

    /// A deterministic interior point from group coordinates (used by
    /// samplers; coordinates near 0 give points near the base point).
    pub fn point_from_coords(&self, coords: &[f64]) -> Vec<f64> {
        let chart = self.0.chart();
        assert_eq!(coords.len(), chart.dims);
        chart.eval(coords).h
    }

    pub fn chart(&self) -> Chart {
        self.0.chart()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorentz3() -> Cone {
        from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap()
    }

    #[test]
    fn halfline_membership_and_powers() {
        let c = from_spec(&ConeSpec::Halfline).unwrap();
        assert!(c.contains(&[3.0]).unwrap());
        assert!(!c.contains(&[0.0]).unwrap());
        assert!((c.power_function_real(&vec![2.0].into(), &[3.0]).unwrap() - 9.0).abs() < 1e-12);
        assert!(c.contains(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn lorentz_membership() {
        let c = lorentz3();
        assert!(c.contains(&[1.0, 0.5, 0.5]).unwrap()); // 1 - 0.25 - 0.25 > 0
        assert!(!c.contains(&[1.0, 1.0, 0.0]).unwrap()); // boundary excluded
        assert!(!c.contains(&[-2.0, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn lorentz_power_examples() {
        let c = lorentz3();
        let y = [2.0, 0.0, 0.0];
        let v = c
            .power_function_real(&vec![1.0, 1.0].into(), &y)
            .unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = c
            .power_function_real(&vec![1.0, 0.0].into(), &y)
            .unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        // base point normalization for a spread of s
        for s in [
            vec![0.3, -1.7],
            vec![2.0, 0.0],
            vec![-0.5, 0.5],
        ] {
            let v = c
                .power_function_real(&s.clone().into(), &c.e_omega())
                .unwrap();
            assert!((v - 1.0).abs() < 1e-12, "s={s:?}");
        }
    }

    #[test]
    fn dual_power_examples() {
        let half = from_spec(&ConeSpec::Halfline).unwrap();
        assert!(
            (half
                .dual_power_function_real(&vec![1.0].into(), &[2.0])
                .unwrap()
                - 2.0)
                .abs()
                < 1e-12
        );
        let c = lorentz3();
        let v = c
            .dual_power_function_real(&vec![1.0, 1.0].into(), &[2.0, 0.0, 0.0])
            .unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let prod = from_spec(&ConeSpec::Product {
            factors: vec![ConeSpec::Halfline, ConeSpec::Halfline],
        })
        .unwrap();
        let v = prod
            .dual_power_function_real(&vec![1.0, 2.0].into(), &[2.0, 3.0])
            .unwrap();
        assert!((v - 18.0).abs() < 1e-12);
    }

    #[test]
    fn d_identity() {
        let c = lorentz3();
        let d = c.d_vec();
        assert_eq!(d.as_slice(), &[-1.5, -1.5]);
        let half = from_spec(&ConeSpec::Halfline).unwrap();
        assert_eq!(half.d_vec().as_slice(), &[-1.0]);
        let prod = from_spec(&ConeSpec::Product {
            factors: vec![ConeSpec::Halfline, ConeSpec::Lorentz { dim: 4 }],
        })
        .unwrap();
        assert_eq!(prod.d_vec().as_slice(), &[-1.0, -2.0, -2.0]);
    }

    #[test]
    fn distance_examples() {
        let half = from_spec(&ConeSpec::Halfline).unwrap();
        let d = half
            .invariant_distance(&[1.0], &[std::f64::consts::E.powi(2)])
            .unwrap();
        assert!((d - 2.0).abs() < 1e-12);
        let c = lorentz3();
        assert_eq!(c.invariant_distance(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap(), 0.0);
        let d = c
            .invariant_distance(&[1.0, 0.0, 0.0], &[4.0, 0.0, 0.0])
            .unwrap();
        assert!((d - 2.0_f64.sqrt() * 4.0_f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn abs_weight_examples() {
        let half = from_spec(&ConeSpec::Halfline).unwrap();
        assert!((half.abs_weight(&vec![-2.5].into()).unwrap() - 2.5).abs() < 1e-12);
        let c = lorentz3();
        assert!((c.abs_weight(&vec![1.0, 1.0].into()).unwrap() - 2.0).abs() < 1e-12);
        assert!((c.abs_weight(&vec![1.0, 0.0].into()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spec_roundtrip() {
        let spec: ConeSpec = serde_json::from_str(r#"{"kind":"lorentz","dim":3}"#).unwrap();
        assert_eq!(spec, ConeSpec::Lorentz { dim: 3 });
        let spec: ConeSpec =
            serde_json::from_str(r#"{"kind":"product","factors":[{"kind":"halfline"}]}"#).unwrap();
        assert!(matches!(spec, ConeSpec::Product { .. }));
    }
}
