//! Atomic decomposition machinery: mixed sequence norms, the synthesis
//! operator, the sampling operator, Riemann-sum reconstruction, and the
//! admissible-range predicates.

use crate::domain::{Grid, GridFunction};
use crate::error::Result;
use crate::kernel::KernelSpec;
use crate::lattice::DomainLattice;
use crate::projector::ProjectorParams;
use crate::quad::Accumulator;
use crate::weight::WeightVector;
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

/// Coefficients indexed by the (j, k) slots of a domain lattice.
#[derive(Debug, Clone)]
pub struct CoefficientArray {
    pub lattice: Arc<DomainLattice>,
    pub values: Vec<Complex64>,
}

impl CoefficientArray {
    pub fn zeros(lattice: Arc<DomainLattice>) -> Self {
        let n = lattice.points.len();
        CoefficientArray {
            lattice,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn unit(lattice: Arc<DomainLattice>, slot: usize) -> Self {
        let mut a = Self::zeros(lattice);
        a.values[slot] = Complex64::new(1.0, 0.0);
        a
    }

    pub fn write_csv(&self, w: &mut impl std::io::Write) -> Result<()> {
        writeln!(w, "j,k,re,im")?;
        for (p, v) in self.lattice.points.iter().zip(&self.values) {
            writeln!(w, "{},{},{:.17e},{:.17e}", p.j, p.k, v.re, v.im)?;
        }
        Ok(())
    }
}

/// Mixed sequence norm: inner l^p over the slots j of each layer k, outer
/// l^q over layers, sup conventions at infinity.
pub fn sequence_norm(coeffs: &CoefficientArray, p: f64, q: f64) -> f64 {
    let k_count = coeffs
        .lattice
        .points
        .iter()
        .map(|pt| pt.k)
        .max()
        .map(|k| k + 1)
        .unwrap_or(0);
    let mut inner = vec![Accumulator::default(); k_count];
    let mut inner_sup = vec![0.0_f64; k_count];
    for (pt, v) in coeffs.lattice.points.iter().zip(&coeffs.values) {
        if p.is_infinite() {
            inner_sup[pt.k] = inner_sup[pt.k].max(v.norm());
        } else {
            inner[pt.k].add(v.norm().powf(p));
        }
    }
    let layer_norm = |k: usize| {
        if p.is_infinite() {
            inner_sup[k]
        } else {
            inner[k].value().powf(1.0 / p)
        }
    };
    if q.is_infinite() {
        (0..k_count).map(layer_norm).fold(0.0, f64::max)
    } else {
        let mut acc = Accumulator::default();
        for k in 0..k_count {
            acc.add(layer_norm(k).powf(q));
        }
        acc.value().powf(1.0 / q)
    }
}

/// Normalization exponent (b + d)/p - s - s' attached to each layer.
fn atom_exponent(params: &ProjectorParams) -> WeightVector {
    let bd = params.domain.b_plus_d();
    &(&bd.scale(1.0 / params.p) - &params.s) - &params.s_prime
}

/// Synthesis: sum of normalized kernel atoms with the given coefficients,
/// evaluated on the grid.
pub fn synthesize(
    coeffs: &CoefficientArray,
    params: &ProjectorParams,
    grid: &Arc<Grid>,
) -> Result<GridFunction> {
    let spec = KernelSpec {
        domain: params.domain.clone(),
        s_prime: params.s_prime.clone(),
        c_s_prime: Complex64::new(1.0, 0.0),
    };
    let cone = params.domain.cone();
    let exp = atom_exponent(params);
    let norms: Vec<f64> = coeffs
        .lattice
        .cone_lattice
        .points
        .iter()
        .map(|h| cone.power_function_real(&exp, h))
        .collect::<Result<_>>()?;
    // flatten eval nodes
    let mut nodes: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::with_capacity(grid.node_count());
    for lay in &grid.layers {
        for zt in &lay.zeta_nodes {
            for x in &lay.x_nodes {
                nodes.push((zt.clone(), grid.node_z(lay, zt, x)));
            }
        }
    }
    let values: Vec<Complex64> = nodes
        .par_iter()
        .map(|(zeta, z)| {
            let mut re = Accumulator::default();
            let mut im = Accumulator::default();
            for (pt, c) in coeffs.lattice.points.iter().zip(&coeffs.values) {
                if c.norm() == 0.0 {
                    continue;
                }
                let w = spec.kernel_argument(zeta, z, &pt.zeta, &pt.z);
                let b = spec
                    .domain
                    .cone()
                    .power_function(&spec.s_prime, &w)
                    .expect("kernel argument stays in Omega + iF");
                let term = c * b * norms[pt.k];
                re.add(term.re);
                im.add(term.im);
            }
            Complex64::new(re.value(), im.value())
        })
        .collect();
    Ok(GridFunction {
        grid: grid.clone(),
        values,
    })
}

/// Sampling: lambda_{j,k} = Delta^{(b+d)/p - s - s'}(h_k) f(zeta_{j,k}, z_{j,k}).
pub fn sample(
    f: &dyn Fn(&[Complex64], &[Complex64]) -> Complex64,
    params: &ProjectorParams,
    lattice: &Arc<DomainLattice>,
) -> Result<CoefficientArray> {
    let cone = params.domain.cone();
    let exp = atom_exponent(params);
    let norms: Vec<f64> = lattice
        .cone_lattice
        .points
        .iter()
        .map(|h| cone.power_function_real(&exp, h))
        .collect::<Result<_>>()?;
    let values = lattice
        .points
        .iter()
        .map(|pt| f(&pt.zeta, &pt.z) * norms[pt.k])
        .collect();
    Ok(CoefficientArray {
        lattice: lattice.clone(),
        values,
    })
}

/// Riemann-sum reconstruction of an in-space holomorphic function from its
/// lattice samples through the projector kernel:
///   c_{s'} sum_{j,k} f(w_{j,k}) conj(B^{s'}_{w_{j,k}}) Delta^{-s'}(h_k) cell.
/// Returns the reconstruction and the relative mixed-norm error over the
/// evaluation grid.
pub fn reconstruct(
    f: &dyn Fn(&[Complex64], &[Complex64]) -> Complex64,
    params: &ProjectorParams,
    lattice: &Arc<DomainLattice>,
    grid: &Arc<Grid>,
) -> Result<(GridFunction, f64)> {
    let spec = KernelSpec {
        domain: params.domain.clone(),
        s_prime: params.s_prime.clone(),
        c_s_prime: params.c,
    };
    let cone = params.domain.cone();
    let neg_sp = -&params.s_prime;
    let dens: Vec<f64> = lattice
        .cone_lattice
        .points
        .iter()
        .map(|h| cone.power_function_real(&neg_sp, h))
        .collect::<Result<_>>()?;
    let samples: Vec<Complex64> = lattice
        .points
        .iter()
        .map(|pt| f(&pt.zeta, &pt.z))
        .collect();
    let mut nodes: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::with_capacity(grid.node_count());
    for lay in &grid.layers {
        for zt in &lay.zeta_nodes {
            for x in &lay.x_nodes {
                nodes.push((zt.clone(), grid.node_z(lay, zt, x)));
            }
        }
    }
    let values: Vec<Complex64> = nodes
        .par_iter()
        .map(|(zeta, z)| {
            let mut re = Accumulator::default();
            let mut im = Accumulator::default();
            for (pt, fv) in lattice.points.iter().zip(&samples) {
                let w = spec.kernel_argument(zeta, z, &pt.zeta, &pt.z);
                let b = spec
                    .domain
                    .cone()
                    .power_function(&spec.s_prime, &w)
                    .expect("kernel argument stays in Omega + iF");
                // kernel_argument(out, pt) already evaluates the conjugated
                // kernel conj(B^{s'}_out)(pt) for real s'
                let term = fv * b * dens[pt.k] * pt.cell_nu_d;
                re.add(term.re);
                im.add(term.im);
            }
            Complex64::new(re.value(), im.value()) * params.c
        })
        .collect();
    let recon = GridFunction {
        grid: grid.clone(),
        values,
    };
    let target = GridFunction::sample(grid.clone(), |zeta, z| f(zeta, z));
    let diff = recon.add(&target.scale(Complex64::new(-1.0, 0.0)))?;
    let err = crate::domain::mixed_norm(&diff, params.p, params.q, &params.s)?;
    let base = crate::domain::mixed_norm(&target, params.p, params.q, &params.s)?;
    if base == 0.0 {
        return Ok((recon, 0.0));
    }
    Ok((recon, err / base))
}

/// Operator norm of the synthesis map from flat l^{2,2} coefficients into
/// the L^{2,2}_s grid norm: the exact top singular value of the weighted
/// atom matrix by power iteration (both sides are Hilbert norms).
pub fn synthesis_operator_norm(
    params: &ProjectorParams,
    lattice: &Arc<DomainLattice>,
    grid: &Arc<Grid>,
) -> Result<f64> {
    let spec = KernelSpec {
        domain: params.domain.clone(),
        s_prime: params.s_prime.clone(),
        c_s_prime: Complex64::new(1.0, 0.0),
    };
    let cone = params.domain.cone();
    let exp = atom_exponent(params);
    let atom_w: Vec<f64> = lattice
        .cone_lattice
        .points
        .iter()
        .map(|h| cone.power_function_real(&exp, h))
        .collect::<Result<_>>()?;
    // diagonal weights of the output norm: |f|^2 sums against
    // Delta^{2s}(h) nu_cell w_in per node
    let mut node_w = Vec::with_capacity(grid.node_count());
    let mut nodes = Vec::with_capacity(grid.node_count());
    for lay in &grid.layers {
        let w = cone.power_function_real(&params.s.scale(2.0), &lay.h)?
            * lay.nu_cell
            * lay.x_weight
            * lay.zeta_weight;
        for zt in &lay.zeta_nodes {
            for x in &lay.x_nodes {
                nodes.push((zt.clone(), grid.node_z(lay, zt, x)));
                node_w.push(w.sqrt());
            }
        }
    }
    let n_atoms = lattice.points.len();
    let matrix: Vec<Vec<Complex64>> = nodes
        .par_iter()
        .zip(&node_w)
        .map(|((zeta, z), &sw)| {
            lattice
                .points
                .iter()
                .map(|pt| {
                    let w = spec.kernel_argument(zeta, z, &pt.zeta, &pt.z);
                    let b = spec
                        .domain
                        .cone()
                        .power_function(&spec.s_prime, &w)
                        .expect("kernel argument stays in Omega + iF");
                    b * atom_w[pt.k] * sw
                })
                .collect()
        })
        .collect();
    // power iteration on A* A
    let mut v: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); n_atoms];
    let mut sigma = 0.0_f64;
    for _ in 0..60 {
        let u: Vec<Complex64> = matrix
            .par_iter()
            .map(|row| row.iter().zip(&v).map(|(a, x)| a * x).sum())
            .collect();
        let w: Vec<Complex64> = (0..n_atoms)
            .into_par_iter()
            .map(|j| {
                matrix
                    .iter()
                    .zip(&u)
                    .map(|(row, ui)| row[j].conj() * ui)
                    .sum()
            })
            .collect();
        let norm_w: f64 = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm_w == 0.0 {
            return Ok(0.0);
        }
        let norm_v: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let next = (norm_w / (norm_v * norm_v)).sqrt() * norm_v;
        // sigma^2 ~ ||A* A v|| / ||v||
        let est = (norm_w / norm_v).sqrt();
        v = w.iter().map(|c| c / norm_w).collect();
        if (est - sigma).abs() < 1e-8 * est.max(1e-300) {
            sigma = est;
            break;
        }
        sigma = est;
        let _ = next;
    }
    Ok(sigma)
}

/// Sharp upper half-plane admissibility: 2 s~ > s + (1/p - 1)_+ (and s > 0).
pub fn halfplane_atomic_predicate(p: f64, s: f64, s_tilde: f64) -> bool {
    let excess = (1.0 / p - 1.0).max(0.0);
    s > 0.0 && 2.0 * s_tilde > s + excess
}

/// The general necessary conditions for the synthesis map to be continuous:
///   s > (b+d)/p + m'/(2q'),  s + s' < (b+d)/p - m'/(2q),  s' < b + d - m/2,
/// all componentwise strict.
pub fn atomic_range_predicate(
    domain: &crate::domain::SiegelDomain,
    p: f64,
    q: f64,
    s: &WeightVector,
    s_prime: &WeightVector,
) -> bool {
    let bd = domain.b_plus_d();
    let m = domain.cone().m_vec();
    let mp = domain.cone().m_prime_vec();
    let inv = |e: f64| if e.is_infinite() { 0.0 } else { 1.0 / e };
    let qc = crate::projector::conjugate_exponent(q);
    let c1 = &bd.scale(1.0 / p) + &mp.scale(0.5 * inv(qc));
    let c2 = &bd.scale(1.0 / p) - &mp.scale(0.5 * inv(q));
    let c3 = &bd - &m.scale(0.5);
    s.succ(&c1) && (&*s + s_prime).prec(&c2) && s_prime.prec(&c3)
}
