//! Boundary machinery in the scalar spectral-density regime: the extension
//! operator from densities on the dual cone, dyadic Besov norms, boundary
//! limits, and the weighted duality pairing.

use crate::cone::Cone;
use crate::domain::{Grid, GridFunction, SiegelDomain};
use crate::error::{Error, Result};
use crate::quad::{composite_rule, Accumulator};
use crate::util::bump;
use crate::weight::WeightVector;
use num_complex::Complex64;
use std::sync::Arc;

/// A compactly supported density u on the open dual cone, carried on a
/// quadrature grid (Lebesgue weights).
#[derive(Debug, Clone)]
pub struct SpectralDensity {
    pub cone: Cone,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub values: Vec<Complex64>,
    pub warnings: Vec<String>,
}

impl SpectralDensity {
    /// Rank-one density on the interval [a, b] with a composite Gauss rule.
    pub fn on_interval(
        cone: &Cone,
        a: f64,
        b: f64,
        order: usize,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        if cone.rank() != 1 {
            return Err(Error::argument("interval densities need a rank-one cone"));
        }
        if !(a > 0.0 && b > a) {
            return Err(Error::argument("support must satisfy 0 < a < b"));
        }
        let mut warnings = Vec::new();
        if a < 1e-3 * (b - a) {
            warnings.push(format!(
                "density support reaches within {a} of the dual cone boundary: expect slow decay"
            ));
        }
        let rule = composite_rule(order, a, b);
        let nodes: Vec<Vec<f64>> = rule.iter().map(|&(x, _)| vec![x]).collect();
        let weights: Vec<f64> = rule.iter().map(|&(_, w)| w).collect();
        let values = rule.iter().map(|&(x, _)| f(x)).collect();
        Ok(SpectralDensity {
            cone: cone.clone(),
            nodes,
            weights,
            values,
            warnings,
        })
    }

    pub fn map(&self, f: impl Fn(&[f64], Complex64) -> Complex64) -> Self {
        SpectralDensity {
            values: self
                .nodes
                .iter()
                .zip(&self.values)
                .map(|(l, &v)| f(l, v))
                .collect(),
            ..self.clone()
        }
    }

    /// The dilated density u(factor .) carried on the exactly rescaled grid
    /// (nodes / factor, weights / factor, same values): quadratures commute
    /// with the scaling, so covariance identities hold at machine precision.
    pub fn rescale_argument(&self, factor: f64) -> SpectralDensity {
        SpectralDensity {
            nodes: self
                .nodes
                .iter()
                .map(|n| n.iter().map(|x| x / factor).collect())
                .collect(),
            weights: self.weights.iter().map(|w| w / factor).collect(),
            ..self.clone()
        }
    }

    /// Pointwise difference (same grid).
    pub fn sub(&self, other: &SpectralDensity) -> Result<SpectralDensity> {
        if self.values.len() != other.values.len() {
            return Err(Error::argument("density grid mismatch"));
        }
        Ok(SpectralDensity {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        })
    }

    /// The spectral multiplier of convolution against the Riesz kernel:
    /// values scaled by Delta_{Omega'}^{s''}(lambda).
    pub fn riesz_multiplier(&self, s2: &WeightVector) -> Result<SpectralDensity> {
        let mut out = self.clone();
        for (node, v) in out.nodes.iter().zip(out.values.iter_mut()) {
            *v *= self.cone.dual_power_function_real(s2, node)?;
        }
        Ok(out)
    }

    /// Flat L^2(d lambda)-type pairing weighted by Delta^{-b}.
    pub fn pairing(&self, other: &SpectralDensity, b_vec: &WeightVector) -> Result<Complex64> {
        if self.values.len() != other.values.len() {
            return Err(Error::argument("density grid mismatch"));
        }
        let mut re = Accumulator::default();
        let mut im = Accumulator::default();
        for ((node, w), (a, b)) in self
            .nodes
            .iter()
            .zip(&self.weights)
            .zip(self.values.iter().zip(&other.values))
        {
            let dens = self.cone.dual_power_function_real(&-b_vec, node)?;
            let t = a * b.conj() * dens * w;
            re.add(t.re);
            im.add(t.im);
        }
        Ok(Complex64::new(re.value(), im.value()))
    }

    pub fn write_csv(&self, w: &mut impl std::io::Write) -> Result<()> {
        writeln!(w, "lambda,re,im")?;
        for (node, v) in self.nodes.iter().zip(&self.values) {
            let coords = node
                .iter()
                .map(|x| format!("{x:.17e}"))
                .collect::<Vec<_>>()
                .join(";");
            writeln!(w, "{coords},{:.17e},{:.17e}", v.re, v.im)?;
        }
        Ok(())
    }
}

/// (E u)(zeta, z) = ∫ u(lambda) e^{i<lambda, z>} Delta^{-b}(lambda) d lambda,
/// with the Phi-damping entering through Im z. Normalization fixed to c = 1.
pub fn extend_at(
    density: &SpectralDensity,
    domain: &SiegelDomain,
    z: &[Complex64],
) -> Result<Complex64> {
    let neg_b = -&domain.b_vec();
    let mut re = Accumulator::default();
    let mut im = Accumulator::default();
    for ((node, w), v) in density
        .nodes
        .iter()
        .zip(&density.weights)
        .zip(&density.values)
    {
        let dot: Complex64 = node.iter().zip(z).map(|(&l, zi)| zi * l).sum();
        let dens = domain.cone().dual_power_function_real(&neg_b, node)?;
        let t = v * (Complex64::new(0.0, 1.0) * dot).exp() * dens * w;
        re.add(t.re);
        im.add(t.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Extension sampled over a grid.
pub fn extend(
    density: &SpectralDensity,
    domain: &SiegelDomain,
    grid: &Arc<Grid>,
) -> Result<GridFunction> {
    let mut values = Vec::with_capacity(grid.node_count());
    for lay in &grid.layers {
        for zeta in &lay.zeta_nodes {
            for x in &lay.x_nodes {
                let z = grid.node_z(lay, zeta, x);
                values.push(extend_at(density, domain, &z)?);
            }
        }
    }
    Ok(GridFunction {
        grid: grid.clone(),
        values,
    })
}

/// Max modulus of the 4th-order finite-difference d-bar residual of the
/// extension over probe points (m = 1 tube case).
pub fn cauchy_riemann_residual(
    density: &SpectralDensity,
    domain: &SiegelDomain,
    probes: &[Complex64],
    step: f64,
) -> Result<f64> {
    let mut worst = 0.0_f64;
    let eval = |z: Complex64| extend_at(density, domain, &[z]);
    for &z in probes {
        let fd = |f: [Complex64; 4]| (f[0] * 8.0 - f[1] * 8.0 - f[2] + f[3]) / (12.0 * step);
        let dx = fd([
            eval(z + step)?,
            eval(z - step)?,
            eval(z + 2.0 * step)?,
            eval(z - 2.0 * step)?,
        ]);
        let i = Complex64::new(0.0, 1.0);
        let dy = fd([
            eval(z + i * step)?,
            eval(z - i * step)?,
            eval(z + i * 2.0 * step)?,
            eval(z - i * 2.0 * step)?,
        ]);
        let residual = (dx + i * dy) * 0.5;
        worst = worst.max(residual.norm());
    }
    Ok(worst)
}

/// Dyadic partition data on the dual cone: lattice points lambda_k with the
/// smooth bump profile (1 within delta of the point, 0 beyond 2 delta in the
/// invariant metric of the dual cone).
#[derive(Debug, Clone)]
pub struct BesovPartition {
    pub cone: Cone,
    pub lambda_k: Vec<Vec<f64>>,
    pub delta: f64,
}

impl BesovPartition {
    /// Rank-one geometric partition lambda_k = e^{2 delta k}.
    pub fn dyadic(cone: &Cone, delta: f64, k_min: i64, k_max: i64) -> Result<Self> {
        if cone.rank() != 1 {
            return Err(Error::Unsupported(
                "partitions are implemented in the rank-one spectral regime".to_string(),
            ));
        }
        let lambda_k = (k_min..=k_max)
            .map(|k| vec![(2.0 * delta * k as f64).exp()])
            .collect();
        Ok(BesovPartition {
            cone: cone.clone(),
            lambda_k,
            delta,
        })
    }

    pub fn profile(&self, k: usize, lambda: &[f64]) -> f64 {
        let d = self
            .cone
            .invariant_distance(&self.lambda_k[k], lambda)
            .unwrap_or(f64::INFINITY);
        bump(d / self.delta)
    }

    /// Minimum of the profile sum over probe points: at least 1 wherever the
    /// lattice covers.
    pub fn partition_lower_bound(&self, probes: &[Vec<f64>]) -> f64 {
        probes
            .iter()
            .map(|l| {
                (0..self.lambda_k.len())
                    .map(|k| self.profile(k, l))
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Besov norm of the density: l^q over the partition of
/// Delta^s_{Omega'}(lambda_k) || u * psi_k ||_{L^p}, where the convolution is
/// the spectral multiplier by the k-th profile. For p = 2 the layer norm is
/// evaluated by Plancherel directly on the density; other p go through the
/// spatial side and are available in the rank-one tube regime.
pub fn besov_norm(
    density: &SpectralDensity,
    partition: &BesovPartition,
    domain: &SiegelDomain,
    p: f64,
    q: f64,
    s: &WeightVector,
) -> Result<f64> {
    if density.cone.rank() != 1 {
        return Err(Error::Unsupported(
            "Besov norms are implemented in the rank-one spectral regime".to_string(),
        ));
    }
    if domain.complex_dim_e() > 0 && !(p == 2.0 || p.is_infinite()) {
        return Err(Error::Unsupported(
            "for n > 0 only p in {2, inf} is supported".to_string(),
        ));
    }
    let mut acc = Accumulator::default();
    let mut sup = 0.0_f64;
    for k in 0..partition.lambda_k.len() {
        let weight = density
            .cone
            .dual_power_function_real(s, &partition.lambda_k[k])?;
        let layer = layer_norm(density, partition, k, domain, p)?;
        let term = weight * layer;
        if q.is_infinite() {
            sup = sup.max(term);
        } else {
            acc.add(term.powf(q));
        }
    }
    Ok(if q.is_infinite() {
        sup
    } else {
        acc.value().powf(1.0 / q)
    })
}

fn layer_norm(
    density: &SpectralDensity,
    partition: &BesovPartition,
    k: usize,
    domain: &SiegelDomain,
    p: f64,
) -> Result<f64> {
    let neg_b = -&domain.b_vec();
    if p == 2.0 {
        // Plancherel: (2 pi)^{m/2} (∫ |u phi_k|^2 Delta^{-b} d lambda)^{1/2}
        let mut acc = Accumulator::default();
        for ((node, w), v) in density
            .nodes
            .iter()
            .zip(&density.weights)
            .zip(&density.values)
        {
            let phi = partition.profile(k, node);
            if phi == 0.0 {
                continue;
            }
            let dens = density.cone.dual_power_function_real(&neg_b, node)?;
            acc.add((v * phi).norm_sqr() * dens * w);
        }
        let m = domain.cone().ambient_dim() as f64;
        return Ok((2.0 * std::f64::consts::PI).powf(m / 2.0) * acc.value().sqrt());
    }
    // spatial route (m = 1): v_k(x) = ∫ u phi_k e^{i lambda x} Delta^{-b} d lambda
    let lk = partition.lambda_k[k][0];
    let band = lk * ((2.0 * partition.delta).exp() - (-2.0 * partition.delta).exp());
    let extent = 60.0 / band.max(1e-12);
    let nx = 512;
    let dx = 2.0 * extent / nx as f64;
    let mut vals = Vec::with_capacity(nx);
    for i in 0..nx {
        let x = -extent + (i as f64 + 0.5) * dx;
        let mut re = Accumulator::default();
        let mut im = Accumulator::default();
        for ((node, w), v) in density
            .nodes
            .iter()
            .zip(&density.weights)
            .zip(&density.values)
        {
            let phi = partition.profile(k, node);
            if phi == 0.0 {
                continue;
            }
            let dens = density.cone.dual_power_function_real(&neg_b, node)?;
            let t = v * phi * Complex64::new(0.0, node[0] * x).exp() * dens * w;
            re.add(t.re);
            im.add(t.im);
        }
        vals.push(Complex64::new(re.value(), im.value()));
    }
    if p.is_infinite() {
        Ok(vals.iter().map(|v| v.norm()).fold(0.0, f64::max))
    } else {
        let mut acc = Accumulator::default();
        for v in &vals {
            acc.add(v.norm().powf(p) * dx);
        }
        Ok(acc.value().powf(1.0 / p))
    }
}

/// Besov-type distance of the h = y e slice of the extension to the density
/// itself: the slice has density u(lambda) e^{-y <lambda, e>}, so the
/// distance is the Besov norm of the multiplier difference. Returned per y.
pub fn boundary_limit_check(
    density: &SpectralDensity,
    domain: &SiegelDomain,
    partition: &BesovPartition,
    p: f64,
    q: f64,
    s: &WeightVector,
    ys: &[f64],
) -> Result<Vec<f64>> {
    let e = domain.cone().e_omega();
    let mut out = Vec::with_capacity(ys.len());
    for &y in ys {
        let damped = density.map(|node, v| {
            let dot: f64 = node.iter().zip(&e).map(|(a, b)| a * b).sum();
            v * (-y * dot).exp()
        });
        let diff = damped.sub(density)?;
        out.push(besov_norm(&diff, partition, domain, p, q, s)?);
    }
    Ok(out)
}

/// The weighted duality pairing ∫ f conj(g) Delta^{s'' - b - d}(rho) d nu_D.
pub fn duality_pairing(
    f: &GridFunction,
    g: &GridFunction,
    s2: &WeightVector,
) -> Result<Complex64> {
    let dom = &f.grid.domain;
    let exp = &(s2 - &dom.b_vec()) - &dom.cone().d_vec();
    crate::domain::weighted_pairing(f, g, &exp)
}
