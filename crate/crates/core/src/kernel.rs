//! Weighted Bergman kernels, controlled logarithm branches of power
//! functions, quantitative oscillation/ratio checkers, and the witness
//! family used to probe integrability boundaries.

use crate::cone::{branch, Cone};
use crate::domain::SiegelDomain;
use crate::error::{Error, Result};
use crate::weight::WeightVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// log Delta^s on Omega + iF, the unique holomorphic branch vanishing at the
/// base point, computed by continuation along the segment from it.
pub fn log_branch(cone: &Cone, s: &WeightVector, w: &[Complex64]) -> Result<Complex64> {
    if s.len() != cone.rank() {
        return Err(Error::argument("weight vector rank mismatch"));
    }
    if w.len() != cone.ambient_dim() {
        return Err(Error::argument("point length != ambient dimension"));
    }
    let re: Vec<f64> = w.iter().map(|z| z.re).collect();
    if !cone.contains(&re)? {
        return Err(Error::domain(
            "real part of the argument not in the open cone",
        ));
    }
    let exps = cone.geometry().minor_exponents(s);
    if cone.geometry().minors_all_linear() {
        let minors = cone.geometry().minors(w);
        return Ok(minors
            .iter()
            .zip(&exps)
            .map(|(m, c)| m.ln() * Complex64::new(*c, 0.0))
            .sum());
    }
    let logs = branch::continued_minor_logs(cone.geometry(), w)?;
    Ok(logs
        .iter()
        .zip(&exps)
        .map(|(l, c)| l * Complex64::new(*c, 0.0))
        .sum())
}

/// |Delta^s(w)| for real s: branch-free product of minor moduli.
pub fn power_modulus(cone: &Cone, s: &WeightVector, w: &[Complex64]) -> Result<f64> {
    let re: Vec<f64> = w.iter().map(|z| z.re).collect();
    if !cone.contains(&re)? {
        return Err(Error::domain(
            "real part of the argument not in the open cone",
        ));
    }
    let minors = cone.geometry().minors(w);
    let exps = cone.geometry().minor_exponents(s);
    let mut out = 1.0;
    for (m, c) in minors.iter().zip(&exps) {
        out *= m.norm().powf(*c);
    }
    Ok(out)
}

/// Kernel parameters: the domain, the exponent s', and the projector
/// normalization constant (calibrated by the projector module; the default 1
/// leaves kernels unnormalized).
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub domain: SiegelDomain,
    pub s_prime: WeightVector,
    pub c_s_prime: Complex64,
}

impl KernelSpec {
    pub fn new(domain: SiegelDomain, s_prime: WeightVector) -> Result<Self> {
        if s_prime.len() != domain.cone().rank() {
            return Err(Error::argument("s' rank mismatch"));
        }
        Ok(KernelSpec {
            domain,
            s_prime,
            c_s_prime: Complex64::new(1.0, 0.0),
        })
    }

    pub fn with_constant(mut self, c: Complex64) -> Self {
        self.c_s_prime = c;
        self
    }

    /// Whether s' admits a projector: s' strictly below b + d - m/2.
    pub fn projector_admissible(&self) -> bool {
        let bound = &self.domain.b_plus_d() - &self.domain.cone().m_vec().scale(0.5);
        self.s_prime.prec(&bound)
    }

    /// Kernel argument (z - conj(z'))/(2i) - Phi(zeta, zeta'); lies in
    /// Omega + iF for points of D.
    pub fn kernel_argument(
        &self,
        zeta: &[Complex64],
        z: &[Complex64],
        zeta2: &[Complex64],
        z2: &[Complex64],
    ) -> Vec<Complex64> {
        let phi = self.domain.phi().eval(zeta, zeta2);
        let two_i = Complex64::new(0.0, 2.0);
        z.iter()
            .zip(z2.iter().zip(&phi))
            .map(|(a, (b, p))| (a - b.conj()) / two_i - p)
            .collect()
    }
}

/// B^{s'}_{(zeta', z')}(zeta, z) = Delta^{s'}((z - conj(z'))/(2i) - Phi(zeta, zeta')).
pub fn bergman_kernel(
    spec: &KernelSpec,
    zeta: &[Complex64],
    z: &[Complex64],
    zeta2: &[Complex64],
    z2: &[Complex64],
) -> Result<Complex64> {
    if !spec.domain.contains(zeta, z)? || !spec.domain.contains(zeta2, z2)? {
        return Err(Error::domain("kernel arguments must lie in the domain"));
    }
    let w = spec.kernel_argument(zeta, z, zeta2, z2);
    let re: Vec<f64> = w.iter().map(|c| c.re).collect();
    debug_assert!(
        spec.domain.cone().contains(&re).unwrap_or(false),
        "kernel argument left Omega + iF"
    );
    spec.domain.cone().power_function(&spec.s_prime, &w)
}

/// The classical upper half-plane kernel constant s (2i)^{2s+1} / pi: the
/// reference value the calibrated constant is reported against.
pub fn halfplane_formula_constant(s_tilde: f64) -> Complex64 {
    let two_i = Complex64::new(0.0, 2.0);
    two_i.powf(2.0 * s_tilde + 1.0) * s_tilde / std::f64::consts::PI
}

/// Draw a point of Omega + iF spread over several scales: the real part from
/// chart coordinates in [-2.5, 2.5]^dims, the imaginary part gaussian with a
/// log-uniform magnitude relative to the real part.
pub fn sample_tube_point(cone: &Cone, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let dims = cone.chart().dims;
    let coords: Vec<f64> = (0..dims).map(|_| rng.gen_range(-2.5..2.5)).collect();
    let h = cone.point_from_coords(&coords);
    let hnorm: f64 = h.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = hnorm * (rng.gen_range(-2.0..3.0) as f64).exp2();
    h.iter()
        .map(|&x| {
            let g: f64 = rng.gen_range(-1.0..1.0);
            Complex64::new(x, g * scale)
        })
        .collect()
}

/// Monte-Carlo sweep of Im log Delta^s over Omega + iF; returns the observed
/// spread (max - min). The branch-oscillation bound says it never exceeds
/// |s| pi.
pub fn oscillation_check(
    cone: &Cone,
    s: &WeightVector,
    sample_count: usize,
    seed: u64,
) -> Result<f64> {
    if sample_count < 2 {
        return Err(Error::argument("need at least two samples"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for _ in 0..sample_count {
        let w = sample_tube_point(cone, &mut rng);
        let im = log_branch(cone, s, &w)?.im;
        lo = lo.min(im);
        hi = hi.max(im);
    }
    Ok(hi - lo)
}

/// |Delta^s(x + iy)| / Delta^s(x + y) for x, y in the cone; bounded between
/// 2^{-|s|/2} and 2^{|s|/2}.
pub fn ratio_bound_check(cone: &Cone, s: &WeightVector, x: &[f64], y: &[f64]) -> Result<f64> {
    if !cone.contains(x)? || !cone.contains(y)? {
        return Err(Error::domain("ratio arguments must lie in the open cone"));
    }
    let w: Vec<Complex64> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| Complex64::new(a, b))
        .collect();
    let num = power_modulus(cone, s, &w)?;
    let sum: Vec<f64> = x.iter().zip(y).map(|(&a, &b)| a + b).collect();
    let den = cone.power_function_real(s, &sum)?;
    Ok(num / den)
}

/// |P(i x)| / P(x) for a monic real polynomial with the given zeros in
/// (-inf, 0] and x > 0; lies in [2^{-k/2}, 1] with k the degree.
pub fn poly_ratio(zeros_neg: &[f64], x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::argument("evaluation point must be positive"));
    }
    if zeros_neg.iter().any(|&r| r > 0.0) {
        return Err(Error::argument("zeros must be nonpositive"));
    }
    let mut ratio = 1.0;
    for &r in zeros_neg {
        ratio *= (x * x + r * r).sqrt() / (x - r);
    }
    Ok(ratio)
}

/// The witness family g^{s1, s2} = B^{s1}_{(0, i e)} (1 + log B^{-s1}_{(0, i e)})^{s2}.
///
/// Needs s1 <= 0 so |B^{s1}| <= 1 and the outer logarithm (principal, since
/// Re(1 + log B^{-s1}) >= 1) vanishes at the base point (0, i e).
pub fn witness_function(
    domain: &SiegelDomain,
    s1: &WeightVector,
    s2: f64,
    zeta: &[Complex64],
    z: &[Complex64],
) -> Result<Complex64> {
    let cone = domain.cone();
    if s1.len() != cone.rank() {
        return Err(Error::argument("s1 rank mismatch"));
    }
    if !s1.le(&WeightVector::zeros(cone.rank())) {
        return Err(Error::argument("s1 must be componentwise nonpositive"));
    }
    if !domain.contains(zeta, z)? {
        return Err(Error::domain("point must lie in the domain"));
    }
    // kernel argument against the base point (0, i e): (e - i z)/2 - Phi(zeta, 0)
    // and Phi(zeta, 0) = 0, so only z enters.
    let e = cone.e_omega();
    let w: Vec<Complex64> = z
        .iter()
        .zip(&e)
        .map(|(zi, &ei)| (Complex64::new(ei, 0.0) - Complex64::new(0.0, 1.0) * zi) / 2.0)
        .collect();
    let log_b_s1 = log_branch(cone, s1, &w)?;
    let log_b_neg = -log_b_s1; // log B^{-s1} = -log B^{s1} by linearity in s
    debug_assert!(log_b_neg.re >= -1e-9);
    let outer = (Complex64::new(1.0, 0.0) + log_b_neg).ln(); // principal: Re >= 1
    Ok((log_b_s1 + outer * s2).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{from_spec, ConeSpec};

    fn halfline() -> Cone {
        from_spec(&ConeSpec::Halfline).unwrap()
    }

    fn lorentz3() -> Cone {
        from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap()
    }

    #[test]
    fn log_branch_at_base_point_is_zero() {
        let c = lorentz3();
        let e: Vec<Complex64> = c.e_omega().iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let v = log_branch(&c, &vec![0.7, -1.3].into(), &e).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn halfline_branch_reaches_i() {
        let c = halfline();
        let v = log_branch(&c, &vec![1.0].into(), &[Complex64::new(1e-14, 1.0)]).unwrap();
        assert!((v.im - std::f64::consts::FRAC_PI_2).abs() < 1e-7);
    }

    #[test]
    fn exp_log_branch_consistent_with_power_function() {
        let c = lorentz3();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let w = sample_tube_point(&c, &mut rng);
            let s: WeightVector = vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)].into();
            let lb = log_branch(&c, &s, &w).unwrap().exp();
            let pf = c.power_function(&s, &w).unwrap();
            assert!((lb - pf).norm() <= 1e-10 * pf.norm().max(1e-30), "{w:?} {s:?}");
        }
    }

    #[test]
    fn log_branch_additivity() {
        let c = lorentz3();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let w = sample_tube_point(&c, &mut rng);
            let s1: WeightVector = vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)].into();
            let s2: WeightVector = vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)].into();
            let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let combo = &s1.scale(a) + &s2.scale(b);
            let lhs = log_branch(&c, &combo, &w).unwrap();
            let rhs = log_branch(&c, &s1, &w).unwrap() * a + log_branch(&c, &s2, &w).unwrap() * b;
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn oscillation_bounds() {
        let c = halfline();
        let spread = oscillation_check(&c, &vec![0.0].into(), 100, 3).unwrap();
        assert_eq!(spread, 0.0);
        let spread = oscillation_check(&c, &vec![1.0].into(), 2000, 3).unwrap();
        assert!(spread <= std::f64::consts::PI + 1e-9, "{spread}");
        let c = lorentz3();
        let spread = oscillation_check(&c, &vec![1.0, 1.0].into(), 2000, 3).unwrap();
        assert!(spread <= 2.0 * std::f64::consts::PI + 1e-9, "{spread}");
        // the bound is near-attained for the half-line
        let spread = oscillation_check(&c, &vec![1.0, 0.0].into(), 2000, 3).unwrap();
        assert!(spread <= std::f64::consts::PI + 1e-9);
    }

    #[test]
    fn ratio_bound_examples() {
        let c = halfline();
        // x = y = 1, s = 1: |1+i|/2 = 2^{-1/2}, the lower bound
        let r = ratio_bound_check(&c, &vec![1.0].into(), &[1.0], &[1.0]).unwrap();
        assert!((r - 2.0_f64.powf(-0.5)).abs() < 1e-12);
        // y -> 0 pushes the ratio to 1
        let r = ratio_bound_check(&c, &vec![1.0].into(), &[1.0], &[1e-6]).unwrap();
        assert!((r - 1.0).abs() < 1e-4);
        // Monte-Carlo sweep on Lorentz(3)
        let c = lorentz3();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..2000 {
            let x = c.point_from_coords(&[
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ]);
            let y = c.point_from_coords(&[
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ]);
            let s: WeightVector = vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)].into();
            let bound = 2.0_f64.powf(c.abs_weight(&s).unwrap() / 2.0);
            let r = ratio_bound_check(&c, &s, &x, &y).unwrap();
            assert!(r <= bound * (1.0 + 1e-9) && r >= (1.0 - 1e-9) / bound, "{r} {bound}");
        }
    }

    #[test]
    fn poly_ratio_bounds() {
        let zeros = [-0.5, -2.0, 0.0];
        for &x in &[0.1, 1.0, 7.3] {
            let r = poly_ratio(&zeros, x).unwrap();
            assert!(r <= 1.0 + 1e-12 && r >= 2.0_f64.powf(-1.5) - 1e-12);
        }
        assert!(poly_ratio(&[1.0], 1.0).is_err());
    }

    #[test]
    fn kernel_diagonal_and_symmetry() {
        let dom = SiegelDomain::tube(lorentz3());
        let spec = KernelSpec::new(dom, vec![-2.0, -2.0].into()).unwrap();
        let e_z: Vec<Complex64> = spec
            .domain
            .cone()
            .e_omega()
            .iter()
            .map(|&x| Complex64::new(0.0, x))
            .collect();
        let v = bergman_kernel(&spec, &[], &e_z, &[], &e_z).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        // hermitian symmetry for real s'
        let z1 = vec![
            Complex64::new(0.4, 2.0),
            Complex64::new(-0.2, 0.3),
            Complex64::new(1.0, 0.1),
        ];
        let z2 = vec![
            Complex64::new(-1.0, 1.5),
            Complex64::new(0.0, -0.2),
            Complex64::new(0.3, 0.4),
        ];
        let a = bergman_kernel(&spec, &[], &z1, &[], &z2).unwrap();
        let b = bergman_kernel(&spec, &[], &z2, &[], &z1).unwrap();
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn halfplane_kernel_matches_classical_form() {
        // for the upper half-plane, B^{s'}_{w}(z) = ((z - conj w)/2i)^{s'}
        let dom = SiegelDomain::tube(halfline());
        let s_tilde = 0.5;
        let sp: WeightVector = vec![-1.0 - 2.0 * s_tilde].into();
        let spec = KernelSpec::new(dom, sp).unwrap();
        let z = [Complex64::new(0.3, 1.2)];
        let w = [Complex64::new(-0.5, 0.7)];
        let v = bergman_kernel(&spec, &[], &z, &[], &w).unwrap();
        let arg = (z[0] - w[0].conj()) / Complex64::new(0.0, 2.0);
        let expected = arg.powf(-2.0);
        assert!((v - expected).norm() < 1e-10 * expected.norm());
        // formula constant at s = 1/2 is -2/pi
        let c = halfplane_formula_constant(0.5);
        assert!((c - Complex64::new(-2.0 / std::f64::consts::PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn witness_examples() {
        let dom = SiegelDomain::tube(halfline());
        let base = [Complex64::new(0.0, 1.0)];
        // value 1 at the base point
        let g = witness_function(&dom, &vec![-1.0].into(), -1.0, &[], &base).unwrap();
        assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // s2 = 0 reduces to B^{s1}
        let z = [Complex64::new(0.7, 2.3)];
        let g = witness_function(&dom, &vec![-1.0].into(), 0.0, &[], &z).unwrap();
        let b = ((Complex64::new(1.0, 0.0) - Complex64::new(0.0, 1.0) * z[0]) / 2.0).powf(-1.0);
        // B^{-1}_{(0,i)}(z) = ((1 - i z)/2)^{-1}... with s1 = -1 the exponent is -1
        assert!((g - b).norm() < 1e-10 * b.norm());
        // decay along z = iy: |g| ~ ((1+y)/2)^{-1} / (1 + log((1+y)/2))
        let s1: WeightVector = vec![-1.0].into();
        for &y in &[50.0, 400.0] {
            let z = [Complex64::new(0.0, y)];
            let g = witness_function(&dom, &s1, -1.0, &[], &z).unwrap();
            let t = (1.0 + y) / 2.0;
            let expected = t.powf(-1.0) / (1.0 + t.ln());
            assert!((g.norm() - expected).abs() < 0.05 * expected, "y={y}");
        }
        // s1 > 0 rejected
        assert!(witness_function(&dom, &vec![0.5].into(), 0.0, &[], &base).is_err());
    }

    #[test]
    fn witness_loglog_slope_matches_decay_exponent() {
        let dom = SiegelDomain::tube(halfline());
        let s1: WeightVector = vec![-1.0].into();
        let ys: Vec<f64> = (0..30).map(|k| 10.0_f64 * 1.5_f64.powi(k)).collect();
        let vals: Vec<f64> = ys
            .iter()
            .map(|&y| {
                let g = witness_function(&dom, &s1, -1.0, &[], &[Complex64::new(0.0, y)])
                    .unwrap()
                    .norm();
                // divide out the known logarithmic factor to isolate the
                // power-law exponent
                g * (1.0 + ((1.0 + y) / 2.0).ln())
            })
            .collect();
        // least-squares slope of the compensated log|g| against log y
        let lx: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
        let ly: Vec<f64> = vals.iter().map(|v| v.ln()).collect();
        let n = lx.len() as f64;
        let mx = lx.iter().sum::<f64>() / n;
        let my = ly.iter().sum::<f64>() / n;
        let slope: f64 = lx
            .iter()
            .zip(&ly)
            .map(|(a, b)| (a - mx) * (b - my))
            .sum::<f64>()
            / lx.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>();
        assert!((slope + 1.0).abs() < 0.05, "slope {slope}");
    }
}
