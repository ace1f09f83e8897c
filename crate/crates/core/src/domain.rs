//! Siegel domain data (E, F, Omega, Phi, b), the defect map rho, structured
//! quadrature grids over the domain, and discrete mixed-norm evaluation.

use crate::cone::{Cone, ConeSpec};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::quad::Accumulator;
use crate::weight::WeightVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// F_C-valued hermitian form on E x E, one hermitian matrix per real
/// component of F: Phi(z, w)_c = sum_{a,b} A_c[a][b] z_a conj(w_b).
#[derive(Debug, Clone)]
pub struct HermitianForm {
    n: usize,
    comps: Vec<Vec<Vec<Complex64>>>,
}

impl HermitianForm {
    pub fn new(n: usize, comps: Vec<Vec<Vec<Complex64>>>) -> Result<Self> {
        for a in &comps {
            if a.len() != n || a.iter().any(|row| row.len() != n) {
                return Err(Error::argument("hermitian form matrix size mismatch"));
            }
            for i in 0..n {
                for j in 0..n {
                    if (a[i][j] - a[j][i].conj()).norm() > 1e-12 {
                        return Err(Error::argument("form component is not hermitian"));
                    }
                }
            }
        }
        Ok(HermitianForm { n, comps })
    }

    /// Identity form in the first component only (used by the half-space).
    pub fn identity_first(n: usize, m: usize) -> Self {
        let mut comps = vec![vec![vec![Complex64::new(0.0, 0.0); n]; n]; m];
        for i in 0..n {
            comps[0][i][i] = Complex64::new(1.0, 0.0);
        }
        HermitianForm { n, comps }
    }

    pub fn eval(&self, zeta: &[Complex64], zeta2: &[Complex64]) -> Vec<Complex64> {
        self.comps
            .iter()
            .map(|a| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, za) in zeta.iter().enumerate() {
                    for (j, zb) in zeta2.iter().enumerate() {
                        acc += a[i][j] * za * zb.conj();
                    }
                }
                acc
            })
            .collect()
    }

    /// Phi(zeta) = Phi(zeta, zeta), real by hermitian symmetry.
    pub fn eval_self(&self, zeta: &[Complex64]) -> Vec<f64> {
        self.eval(zeta, zeta).iter().map(|c| c.re).collect()
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }
}

/// Runtime domain specification for configs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DomainSpec {
    /// Tube domain F + i Omega over the given cone (n = 0).
    Tube { cone: ConeSpec },
    /// Siegel upper half-space over the half-line with Phi(z,w) = <z,w>.
    HalfSpace { n: usize },
    /// Type II domain over Lorentz(3) with E = C^2 and the symmetric
    /// matrix-valued form; b = (-1, -1).
    LorentzType2,
}

/// A homogeneous Siegel domain of type II:
/// D = { (zeta, z) : Im z - Phi(zeta) in Omega }.
#[derive(Debug, Clone)]
pub struct SiegelDomain {
    cone: Cone,
    n: usize,
    phi: HermitianForm,
    b_vec: WeightVector,
}

impl SiegelDomain {
    pub fn tube(cone: Cone) -> Self {
        let r = cone.rank();
        let m = cone.ambient_dim();
        SiegelDomain {
            cone,
            n: 0,
            phi: HermitianForm::identity_first(0, m),
            b_vec: WeightVector::zeros(r),
        }
    }

    /// The Siegel upper half-space of complex dimension n + 1.
    pub fn half_space(n: usize) -> Self {
        let cone = Cone::new(crate::cone::HalfLine);
        SiegelDomain {
            cone,
            n,
            phi: HermitianForm::identity_first(n, 1),
            b_vec: WeightVector::new(vec![-(n as f64)]),
        }
    }

    /// Type II domain over the 3-dimensional Lorentz cone, E = C^2.
    pub fn lorentz_type2() -> Self {
        let cone = Cone::new(crate::cone::Lorentz::new(3));
        let z = Complex64::new(0.0, 0.0);
        let half = Complex64::new(0.5, 0.0);
        // h1 = (M11+M22)/2, h2 = M12, h3 = (M11-M22)/2 for the symmetric
        // matrix M_ab = (z_a conj(w_b) + z_b conj(w_a))/2
        let comps = vec![
            vec![vec![half, z], vec![z, half]],
            vec![vec![z, half], vec![half, z]],
            vec![vec![half, z], vec![z, -half]],
        ];
        SiegelDomain {
            cone,
            n: 2,
            phi: HermitianForm { n: 2, comps },
            b_vec: WeightVector::new(vec![-1.0, -1.0]),
        }
    }

    pub fn from_spec(spec: &DomainSpec) -> Result<Self> {
        Ok(match spec {
            DomainSpec::Tube { cone } => SiegelDomain::tube(crate::cone::from_spec(cone)?),
            DomainSpec::HalfSpace { n } => SiegelDomain::half_space(*n),
            DomainSpec::LorentzType2 => SiegelDomain::lorentz_type2(),
        })
    }

    pub fn new(cone: Cone, phi: HermitianForm, b_vec: WeightVector) -> Result<Self> {
        if b_vec.len() != cone.rank() {
            return Err(Error::argument("b vector rank mismatch"));
        }
        let n = phi.complex_dim();
        Ok(SiegelDomain {
            cone,
            n,
            phi,
            b_vec,
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn complex_dim_e(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> &HermitianForm {
        &self.phi
    }

    pub fn b_vec(&self) -> WeightVector {
        self.b_vec.clone()
    }

    pub fn b_plus_d(&self) -> WeightVector {
        &self.b_vec + &self.cone.d_vec()
    }

    fn check_point_dims(&self, zeta: &[Complex64], z: &[Complex64]) -> Result<()> {
        if zeta.len() != self.n || z.len() != self.cone.ambient_dim() {
            return Err(Error::argument(format!(
                "point dims ({}, {}) do not match domain dims ({}, {})",
                zeta.len(),
                z.len(),
                self.n,
                self.cone.ambient_dim()
            )));
        }
        Ok(())
    }

    /// rho(zeta, z) = Im z - Phi(zeta); the point lies in D iff this lies in
    /// the open cone.
    pub fn rho(&self, zeta: &[Complex64], z: &[Complex64]) -> Result<Vec<f64>> {
        self.check_point_dims(zeta, z)?;
        let phi = self.phi.eval_self(zeta);
        Ok(z.iter().zip(&phi).map(|(zi, p)| zi.im - p).collect())
    }

    pub fn contains(&self, zeta: &[Complex64], z: &[Complex64]) -> Result<bool> {
        let r = self.rho(zeta, z)?;
        self.cone.contains(&r)
    }

    /// Density of nu_D with respect to Lebesgue measure: Delta^{b+2d}(rho).
    pub fn weighted_measure_density(&self, zeta: &[Complex64], z: &[Complex64]) -> Result<f64> {
        let r = self.rho(zeta, z)?;
        if !self.cone.contains(&r)? {
            return Err(Error::domain("point lies outside the Siegel domain"));
        }
        let exp = &self.b_vec + &self.cone.d_vec().scale(2.0);
        self.cone.power_function_real(&exp, &r)
    }

    /// Random-sample check of Omega-positivity of Phi: Phi(zeta) must lie in
    /// the closed cone and be nonzero for zeta != 0.
    pub fn phi_positivity_ok(&self, samples: &[Vec<Complex64>]) -> bool {
        samples.iter().all(|zeta| {
            let p = self.phi.eval_self(zeta);
            let norm: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return zeta.iter().all(|c| c.norm() == 0.0);
            }
            // closure test: push slightly inward from the base point
            let e = self.cone.e_omega();
            let probe: Vec<f64> = p
                .iter()
                .zip(&e)
                .map(|(pi, ei)| pi + 1e-9 * norm * ei)
                .collect();
            self.cone.contains(&probe).unwrap_or(false)
        })
    }
}

/// One cone layer of a structured grid: an anisotropic box of nodes whose
/// spacing follows the automorphic scale of the layer.
#[derive(Debug, Clone)]
pub struct GridLayer {
    pub h: Vec<f64>,
    /// nu_Omega mass of the layer cell.
    pub nu_cell: f64,
    /// Lattice layer index this layer came from.
    pub layer_index: usize,
    pub x_nodes: Vec<Vec<f64>>,
    /// Lebesgue volume per x node.
    pub x_weight: f64,
    pub zeta_nodes: Vec<Vec<Complex64>>,
    /// Lebesgue (2n-dim) volume per zeta node; 1 when n = 0.
    pub zeta_weight: f64,
}

impl GridLayer {
    pub fn node_count(&self) -> usize {
        self.zeta_nodes.len() * self.x_nodes.len()
    }
}

/// Structured product grid over the domain: cone-lattice layers times
/// per-layer boxes in x (and zeta when n > 0).
#[derive(Debug, Clone)]
pub struct Grid {
    pub domain: SiegelDomain,
    pub layers: Vec<GridLayer>,
}

impl Grid {
    pub fn node_count(&self) -> usize {
        self.layers.iter().map(|l| l.node_count()).sum()
    }

    /// z-coordinate of a node: x + i(Phi(zeta) + h).
    pub fn node_z(&self, layer: &GridLayer, zeta: &[Complex64], x: &[f64]) -> Vec<Complex64> {
        let phi = self.domain.phi.eval_self(zeta);
        x.iter()
            .zip(phi.iter().zip(&layer.h))
            .map(|(&xi, (&p, &hh))| Complex64::new(xi, p + hh))
            .collect()
    }

    /// nu_D mass attached to each node of a layer.
    pub fn layer_nu_d_weight(&self, layer: &GridLayer) -> f64 {
        let bd = self.domain.b_plus_d();
        let pw = self
            .domain
            .cone
            .power_function_real(&bd, &layer.h)
            .expect("layer point lies in the cone");
        pw * layer.nu_cell * layer.x_weight * layer.zeta_weight
    }
}

/// Build an anisotropic grid from a cone lattice. Per layer with scale
/// sigma = Delta^{1_r}(h)^{1/r}:
///   x spans [-x_extent*sigma, x_extent*sigma]^m with `resolution` cells per
///   scale unit, and zeta spans a box scaled by sqrt(sigma) (dilations act on
///   (zeta, x) as (R^{1/2} zeta, R x)).
pub fn make_grid(
    domain: &SiegelDomain,
    h_lattice: &Lattice,
    x_extent: f64,
    zeta_extent: f64,
    resolution: usize,
) -> Result<Grid> {
    if resolution == 0 {
        return Err(Error::argument("grid resolution must be positive"));
    }
    if x_extent <= 0.0 || (domain.n > 0 && zeta_extent <= 0.0) {
        return Err(Error::argument("grid extents must be positive"));
    }
    if h_lattice.points.is_empty() {
        return Err(Error::argument("empty cone lattice"));
    }
    let m = domain.cone.ambient_dim();
    let mut layers = Vec::with_capacity(h_lattice.points.len());
    for (k, point) in h_lattice.points.iter().enumerate() {
        let h = point.clone();
        let sigma = domain.cone.scale(&h)?;
        let count_per_axis = (2.0 * x_extent).ceil() as usize * resolution;
        let step = 2.0 * x_extent * sigma / count_per_axis as f64;
        let axis: Vec<f64> = (0..count_per_axis)
            .map(|j| -x_extent * sigma + (j as f64 + 0.5) * step)
            .collect();
        let x_nodes = tensor_points(&axis, m);
        let x_weight = step.powi(m as i32);

        let (zeta_nodes, zeta_weight) = if domain.n == 0 {
            (vec![vec![]], 1.0)
        } else {
            let zscale = sigma.sqrt();
            let zcount = (2.0 * zeta_extent).ceil() as usize * resolution;
            let zstep = 2.0 * zeta_extent * zscale / zcount as f64;
            let zaxis: Vec<f64> = (0..zcount)
                .map(|j| -zeta_extent * zscale + (j as f64 + 0.5) * zstep)
                .collect();
            let reim = tensor_points(&zaxis, 2 * domain.n);
            let nodes: Vec<Vec<Complex64>> = reim
                .iter()
                .map(|p| {
                    (0..domain.n)
                        .map(|i| Complex64::new(p[2 * i], p[2 * i + 1]))
                        .collect()
                })
                .collect();
            (nodes, zstep.powi(2 * domain.n as i32))
        };

        layers.push(GridLayer {
            h,
            nu_cell: h_lattice.cell_measures[k],
            layer_index: k,
            x_nodes,
            x_weight,
            zeta_nodes,
            zeta_weight,
        });
    }
    Ok(Grid {
        domain: domain.clone(),
        layers,
    })
}

/// Quadrature grid with log-uniform layers and a fixed absolute box in x
/// (and zeta): the right tool when the sampled functions have an intrinsic
/// horizontal scale, e.g. for reproducing-property checks. Rank-one cones
/// only (the layer axis is the scalar height).
#[allow(clippy::too_many_arguments)]
pub fn uniform_grid(
    domain: &SiegelDomain,
    y_min: f64,
    y_max: f64,
    layer_count: usize,
    x_extent_abs: f64,
    x_count: usize,
    zeta_extent_abs: f64,
    zeta_count: usize,
) -> Result<Grid> {
    if domain.cone.rank() != 1 {
        return Err(Error::Unsupported(
            "uniform grids are implemented for rank-one cones".to_string(),
        ));
    }
    if !(y_min > 0.0 && y_max > y_min && layer_count > 0 && x_count > 0) {
        return Err(Error::argument("invalid uniform grid parameters"));
    }
    let step = (y_max / y_min).ln() / layer_count as f64;
    let xstep = 2.0 * x_extent_abs / x_count as f64;
    let axis: Vec<f64> = (0..x_count)
        .map(|j| -x_extent_abs + (j as f64 + 0.5) * xstep)
        .collect();
    let x_nodes = tensor_points(&axis, 1);
    let (zeta_nodes, zeta_weight) = if domain.n == 0 {
        (vec![vec![]], 1.0)
    } else {
        if zeta_count == 0 || zeta_extent_abs <= 0.0 {
            return Err(Error::argument("invalid zeta grid parameters"));
        }
        let zstep = 2.0 * zeta_extent_abs / zeta_count as f64;
        let zaxis: Vec<f64> = (0..zeta_count)
            .map(|j| -zeta_extent_abs + (j as f64 + 0.5) * zstep)
            .collect();
        let reim = tensor_points(&zaxis, 2 * domain.n);
        let nodes: Vec<Vec<Complex64>> = reim
            .iter()
            .map(|p| {
                (0..domain.n)
                    .map(|i| Complex64::new(p[2 * i], p[2 * i + 1]))
                    .collect()
            })
            .collect();
        (nodes, zstep.powi(2 * domain.n as i32))
    };
    let layers = (0..layer_count)
        .map(|k| GridLayer {
            h: vec![y_min * ((k as f64 + 0.5) * step).exp()],
            nu_cell: step,
            layer_index: k,
            x_nodes: x_nodes.clone(),
            x_weight: xstep,
            zeta_nodes: zeta_nodes.clone(),
            zeta_weight,
        })
        .collect();
    Ok(Grid {
        domain: domain.clone(),
        layers,
    })
}

fn tensor_points(axis: &[f64], dims: usize) -> Vec<Vec<f64>> {
    if dims == 0 {
        return vec![vec![]];
    }
    let mut out: Vec<Vec<f64>> = vec![vec![]];
    for _ in 0..dims {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for p in &out {
            for &a in axis {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Complex-valued samples on a [`Grid`], node-major (layer, zeta, x).
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub grid: Arc<Grid>,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn zeros(grid: Arc<Grid>) -> Self {
        let n = grid.node_count();
        GridFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// Sample a function of (zeta, z) on every node.
    pub fn sample(grid: Arc<Grid>, f: impl Fn(&[Complex64], &[Complex64]) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.node_count());
        for layer in &grid.layers {
            for zeta in &layer.zeta_nodes {
                for x in &layer.x_nodes {
                    let z = grid.node_z(layer, zeta, x);
                    values.push(f(zeta, &z));
                }
            }
        }
        GridFunction { grid, values }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        if self.values.len() != other.values.len() {
            return Err(Error::argument("grid mismatch in addition"));
        }
        Ok(GridFunction {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Iterate (layer_idx, value_idx) ranges per layer.
    pub fn layer_ranges(&self) -> Vec<(usize, std::ops::Range<usize>)> {
        let mut out = Vec::with_capacity(self.grid.layers.len());
        let mut off = 0;
        for (i, layer) in self.grid.layers.iter().enumerate() {
            let n = layer.node_count();
            out.push((i, off..off + n));
            off += n;
        }
        out
    }

    /// CSV dump: one row per node with coordinates and re/im values.
    pub fn write_csv(&self, w: &mut impl std::io::Write) -> Result<()> {
        writeln!(w, "layer,zeta,x,h,re,im")?;
        let mut idx = 0;
        for layer in &self.grid.layers {
            for zeta in &layer.zeta_nodes {
                for x in &layer.x_nodes {
                    let zs = zeta
                        .iter()
                        .map(|c| format!("{:.17e}+{:.17e}i", c.re, c.im))
                        .collect::<Vec<_>>()
                        .join(";");
                    let xs = x
                        .iter()
                        .map(|v| format!("{v:.17e}"))
                        .collect::<Vec<_>>()
                        .join(";");
                    let hs = layer
                        .h
                        .iter()
                        .map(|v| format!("{v:.17e}"))
                        .collect::<Vec<_>>()
                        .join(";");
                    let v = self.values[idx];
                    writeln!(
                        w,
                        "{},{},{},{},{:.17e},{:.17e}",
                        layer.layer_index, zs, xs, hs, v.re, v.im
                    )?;
                    idx += 1;
                }
            }
        }
        Ok(())
    }
}

/// Quadrature of the weighted pairing ∫ f conj(g) Delta^{rho_exp}(rho) d nu_D
/// over a common grid.
pub fn weighted_pairing(
    f: &GridFunction,
    g: &GridFunction,
    rho_exp: &WeightVector,
) -> Result<Complex64> {
    if !std::sync::Arc::ptr_eq(&f.grid, &g.grid) && f.values.len() != g.values.len() {
        return Err(Error::argument("pairing requires a common grid"));
    }
    let cone = f.grid.domain.cone();
    let mut re = Accumulator::default();
    let mut im = Accumulator::default();
    let mut idx = 0;
    for lay in &f.grid.layers {
        let w = cone.power_function_real(rho_exp, &lay.h)? * f.grid.layer_nu_d_weight(lay);
        for _ in 0..lay.node_count() {
            let t = f.values[idx] * g.values[idx].conj() * w;
            re.add(t.re);
            im.add(t.im);
            idx += 1;
        }
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Discrete mixed norm: inner L^p over (zeta, x) per layer with Lebesgue cell
/// weights, outer L^q over layers against nu_Omega cells with the Delta^s
/// weight. Sup conventions at p or q = infinity; 0 < p, q < 1 give the same
/// expressions as quasi-norms.
pub fn mixed_norm(f: &GridFunction, p: f64, q: f64, s: &WeightVector) -> Result<f64> {
    if f.values.is_empty() {
        return Err(Error::argument("mixed norm of an empty grid"));
    }
    if !(p > 0.0) || !(q > 0.0) {
        return Err(Error::argument("exponents must be positive (or infinite)"));
    }
    let cone = f.grid.domain.cone();
    let mut outer = Accumulator::default();
    let mut outer_sup = 0.0_f64;
    let mut idx = 0;
    for layer in &f.grid.layers {
        let cellw = layer.x_weight * layer.zeta_weight;
        let n = layer.node_count();
        let inner = if p.is_infinite() {
            let mut sup = 0.0_f64;
            for v in &f.values[idx..idx + n] {
                sup = sup.max(v.norm());
            }
            sup
        } else {
            let mut acc = Accumulator::default();
            for v in &f.values[idx..idx + n] {
                acc.add(v.norm().powf(p) * cellw);
            }
            acc.value().powf(1.0 / p)
        };
        idx += n;
        let weighted = cone.power_function_real(s, &layer.h)? * inner;
        if q.is_infinite() {
            outer_sup = outer_sup.max(weighted);
        } else {
            outer.add(weighted.powf(q) * layer.nu_cell);
        }
    }
    Ok(if q.is_infinite() {
        outer_sup
    } else {
        outer.value().powf(1.0 / q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{from_spec, ConeSpec};
    use crate::lattice::Lattice;

    fn upper_half_plane() -> SiegelDomain {
        SiegelDomain::tube(from_spec(&ConeSpec::Halfline).unwrap())
    }

    #[test]
    fn rho_examples() {
        let tube = upper_half_plane();
        let z = [Complex64::new(1.0, 2.5)];
        assert_eq!(tube.rho(&[], &z).unwrap(), vec![2.5]);

        let hs = SiegelDomain::half_space(1);
        let zeta = [Complex64::new(1.0, 0.0)];
        let z = [Complex64::new(0.0, 2.0)];
        assert_eq!(hs.rho(&zeta, &z).unwrap(), vec![1.0]);

        let lt = SiegelDomain::tube(from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap());
        let z = [
            Complex64::new(0.3, 2.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.5, 0.0),
        ];
        assert_eq!(lt.rho(&[], &z).unwrap(), vec![2.0, 0.0, 0.0]);
    }

    #[test]
    fn measure_density_examples() {
        let tube = upper_half_plane();
        let z = [Complex64::new(0.7, 2.0)];
        let d = tube.weighted_measure_density(&[], &z).unwrap();
        assert!((d - 0.25).abs() < 1e-12); // y^{-2}

        let hs = SiegelDomain::half_space(1);
        let zeta = [Complex64::new(0.0, 0.0)];
        let z = [Complex64::new(0.0, 2.0)];
        let d = hs.weighted_measure_density(&zeta, &z).unwrap();
        assert!((d - 0.125).abs() < 1e-12); // h^{-3} with b = -1, d = -1

        let lt = SiegelDomain::tube(from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap());
        let z = [
            Complex64::new(0.0, 2.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let d = lt.weighted_measure_density(&[], &z).unwrap();
        assert!((d - 4.0_f64.powi(-3)).abs() < 1e-12); // Delta_2^{-3}

        // outside the domain
        let z = [Complex64::new(0.0, -1.0)];
        assert!(tube.weighted_measure_density(&[], &z).is_err());
    }

    #[test]
    fn type2_phi_is_cone_positive() {
        let d = SiegelDomain::lorentz_type2();
        let samples: Vec<Vec<Complex64>> = (0..50)
            .map(|i| {
                let t = i as f64 * 0.37;
                vec![
                    Complex64::new(t.sin(), (2.0 * t).cos()),
                    Complex64::new((3.0 * t).sin() - 0.4, t.cos() * 0.8),
                ]
            })
            .collect();
        assert!(d.phi_positivity_ok(&samples));
    }

    fn unit_layer_lattice(ys: &[f64], nu: f64) -> Lattice {
        Lattice {
            points: ys.iter().map(|&y| vec![y]).collect(),
            delta: 0.5,
            covering_radius_factor: 2.0,
            cell_measures: vec![nu; ys.len()],
            base_layer: (0..ys.len()).collect(),
            warnings: vec![],
        }
    }

    #[test]
    fn indicator_mixed_norm_matches_closed_form() {
        // f = 1_{[0,1]}(x) 1_{[1,2]}(y) on C_+, p=q=2, s=1:
        // norm^2 = ∫_1^2 y^2 dy/y = 3/2
        let tube = upper_half_plane();
        // fine log-uniform layers covering [1,2]
        let kcount = 400;
        let step = 2.0_f64.ln() / kcount as f64;
        let ys: Vec<f64> = (0..kcount)
            .map(|k| ((k as f64 + 0.5) * step).exp())
            .collect();
        let lat = unit_layer_lattice(&ys, step);
        let grid = Arc::new(make_grid(&tube, &lat, 2.0, 0.0, 24).unwrap());
        let f = GridFunction::sample(grid, |_, z| {
            let x = z[0].re;
            let y = z[0].im;
            if (0.0..1.0).contains(&x) && (1.0..2.0).contains(&y) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let n = mixed_norm(&f, 2.0, 2.0, &vec![1.0].into()).unwrap();
        let expected = (1.5_f64).sqrt();
        assert!((n - expected).abs() / expected < 5e-3, "{n} vs {expected}");
    }

    #[test]
    fn mixed_norm_edge_cases() {
        let tube = upper_half_plane();
        let lat = unit_layer_lattice(&[1.0, 2.0], 0.3);
        let grid = Arc::new(make_grid(&tube, &lat, 1.0, 0.0, 4).unwrap());
        // zero function, scaling, and the sup-sup case
        let f = GridFunction::sample(grid.clone(), |_, z| Complex64::new(z[0].re, -z[0].im));
        let zero = GridFunction::zeros(grid);
        assert_eq!(mixed_norm(&zero, 2.0, 2.0, &vec![1.0].into()).unwrap(), 0.0);
        let n1 = mixed_norm(&f, 1.5, 3.0, &vec![0.7].into()).unwrap();
        let n3 = mixed_norm(&f.scale(Complex64::new(-3.0, 0.0)), 1.5, 3.0, &vec![0.7].into())
            .unwrap();
        assert!((n3 - 3.0 * n1).abs() < 1e-10 * n1);
        // (inf, inf, 0) equals the max modulus exactly
        let sup = mixed_norm(&f, f64::INFINITY, f64::INFINITY, &vec![0.0].into()).unwrap();
        let max = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert_eq!(sup, max);
    }

    #[test]
    fn grid_structure() {
        let tube = upper_half_plane();
        let lat = unit_layer_lattice(&[1.0], 1.0);
        let grid = make_grid(&tube, &lat, 1.0, 0.0, 3).unwrap();
        // n = 0: one trivial zeta node
        assert_eq!(grid.layers[0].zeta_nodes.len(), 1);
        assert_eq!(grid.node_count(), 6); // 2*x_extent*res = 6 x nodes
        assert!(make_grid(&tube, &lat, 1.0, 0.0, 0).is_err());

        let hs = SiegelDomain::half_space(1);
        let grid = make_grid(&hs, &lat, 1.0, 1.0, 2).unwrap();
        let l = &grid.layers[0];
        assert_eq!(grid.node_count(), l.zeta_nodes.len() * l.x_nodes.len());
        assert_eq!(l.zeta_nodes.len(), 16); // (2*1*2)^2 re/im combinations
    }
}
