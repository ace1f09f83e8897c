//! (delta, R)-lattices on the cone and on the domain, built by greedy maximal
//! packing in the invariant metric, with cell measures for quadrature.

use crate::cone::Cone;
use crate::domain::SiegelDomain;
use crate::error::{Error, Result};
use crate::weight::WeightVector;
use num_complex::Complex64;

/// A lattice on the cone: pairwise 2*delta-separated points together with the
/// nu_Omega mass of their nearest-point cells inside the truncation.
///
/// `delta` is the verified packing radius (pairwise distances are at least
/// 2*delta) and `covering_radius_factor` the measured R: every probe point of
/// the truncation lies within R*delta of some lattice point.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub points: Vec<Vec<f64>>,
    pub delta: f64,
    pub covering_radius_factor: f64,
    pub cell_measures: Vec<f64>,
    /// Layer bookkeeping: for cone lattices this is the identity.
    pub base_layer: Vec<usize>,
    pub warnings: Vec<String>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_measure(&self) -> f64 {
        self.cell_measures.iter().sum()
    }

    /// CSV export: coordinates, cell measure, layer index.
    pub fn write_csv(&self, w: &mut impl std::io::Write) -> Result<()> {
        writeln!(w, "k,point,cell_measure")?;
        for (k, (p, c)) in self.points.iter().zip(&self.cell_measures).enumerate() {
            let coords = p
                .iter()
                .map(|v| format!("{v:.17e}"))
                .collect::<Vec<_>>()
                .join(";");
            writeln!(w, "{k},{coords},{c:.17e}")?;
        }
        Ok(())
    }
}

/// Probe grid over the chart box `center + [-radius, radius]^dims`, carrying
/// nu_Omega masses, used both for greedy insertion and for cell assignment.
struct ProbeSet {
    points: Vec<Vec<f64>>,
    masses: Vec<f64>,
}

fn probe_set(cone: &Cone, center: &[f64], radius: f64, step: f64) -> ProbeSet {
    let chart = cone.chart();
    let per_axis = ((2.0 * radius / step).round() as usize).max(1);
    let actual_step = 2.0 * radius / per_axis as f64;
    let axes: Vec<Vec<f64>> = (0..chart.dims)
        .map(|d| {
            (0..=per_axis)
                .map(|i| center[d] - radius + i as f64 * actual_step)
                .collect()
        })
        .collect();
    // endpoint nodes carry half cells; interior full cells
    let cell_1d = |i: usize| {
        if i == 0 || i == per_axis {
            actual_step / 2.0
        } else {
            actual_step
        }
    };
    let mut points = Vec::new();
    let mut masses = Vec::new();
    let mut idx = vec![0usize; chart.dims];
    let mut scratch = crate::cone::ChartPoint::default();
    loop {
        let coords: Vec<f64> = idx.iter().zip(&axes).map(|(&i, ax)| ax[i]).collect();
        chart.eval_into(&coords, &mut scratch);
        let vol: f64 = idx.iter().map(|&i| cell_1d(i)).product();
        points.push(scratch.h.clone());
        masses.push(scratch.jacobian * vol);
        // odometer increment
        let mut d = 0;
        loop {
            if d == chart.dims {
                return ProbeSet { points, masses };
            }
            idx[d] += 1;
            if idx[d] <= per_axis {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Greedy maximal 2*delta-separated subset of the truncated cone.
///
/// Probes are scanned in order of increasing distance from the anchor point
/// (ties broken lexicographically), which makes the construction
/// deterministic and reproducible. Cell measures assign each probe's mass to
/// its nearest lattice point, so they sum to the truncated measure exactly.
pub fn cone_lattice(cone: &Cone, delta: f64, chart_radius: f64) -> Result<Lattice> {
    cone_lattice_at(cone, delta, chart_radius, None)
}

pub fn cone_lattice_at(
    cone: &Cone,
    delta: f64,
    chart_radius: f64,
    chart_center: Option<Vec<f64>>,
) -> Result<Lattice> {
    if delta <= 0.0 || chart_radius <= 0.0 {
        return Err(Error::argument("delta and truncation radius must be positive"));
    }
    let dims = cone.chart().dims;
    let center = chart_center.unwrap_or_else(|| vec![0.0; dims]);
    if center.len() != dims {
        return Err(Error::argument("chart center dimension mismatch"));
    }
    let step = (delta / 4.0).min(0.5);
    let probes = probe_set(cone, &center, chart_radius, step);
    let anchor = cone.point_from_coords(&center);

    // order probes by distance from the anchor, lexicographic tie-break
    let mut order: Vec<usize> = (0..probes.points.len()).collect();
    let dists: Vec<f64> = probes
        .points
        .iter()
        .map(|p| cone.invariant_distance(&anchor, p).unwrap_or(f64::INFINITY))
        .collect();
    order.sort_by(|&a, &b| {
        dists[a]
            .partial_cmp(&dists[b])
            .unwrap()
            .then_with(|| probes.points[a].partial_cmp(&probes.points[b]).unwrap())
    });

    let sep = 2.0 * delta * (1.0 - 1e-12);
    let mut accepted: Vec<usize> = Vec::new();
    for &i in &order {
        let p = &probes.points[i];
        let ok = accepted
            .iter()
            .all(|&j| cone.invariant_distance(&probes.points[j], p).unwrap() >= sep);
        if ok {
            accepted.push(i);
        }
    }

    let mut warnings = Vec::new();
    if accepted.len() <= 1 && 2.0 * delta > chart_radius {
        warnings.push(format!(
            "degenerate lattice ({} point(s)): delta {delta} too large for truncation radius {chart_radius}",
            accepted.len()
        ));
    }
    if accepted.is_empty() {
        warnings.push(format!(
            "empty lattice: delta {delta} too large for truncation radius {chart_radius}"
        ));
        return Ok(Lattice {
            points: vec![],
            delta,
            covering_radius_factor: f64::NAN,
            cell_measures: vec![],
            base_layer: vec![],
            warnings,
        });
    }

    let points: Vec<Vec<f64>> = accepted.iter().map(|&i| probes.points[i].clone()).collect();
    let mut cell_measures = vec![0.0; points.len()];
    let mut max_min_dist = 0.0_f64;
    for (p, &mass) in probes.points.iter().zip(&probes.masses) {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (k, q) in points.iter().enumerate() {
            let d = cone.invariant_distance(q, p).unwrap();
            if d < best_d {
                best_d = d;
                best = k;
            }
        }
        cell_measures[best] += mass;
        max_min_dist = max_min_dist.max(best_d);
    }

    Ok(Lattice {
        base_layer: (0..points.len()).collect(),
        covering_radius_factor: max_min_dist / delta,
        points,
        delta,
        cell_measures,
        warnings,
    })
}

/// One point of a domain lattice, with nu_D cell mass and its (j, k) slot.
#[derive(Debug, Clone)]
pub struct DomainLatticePoint {
    pub zeta: Vec<Complex64>,
    pub z: Vec<Complex64>,
    /// slot within the layer
    pub j: usize,
    /// cone layer
    pub k: usize,
    pub cell_nu_d: f64,
}

/// A lattice on the Siegel domain: per cone layer h_k, a grid of (zeta, x)
/// slots with rho(zeta_{j,k}, z_{j,k}) = h_k exactly.
#[derive(Debug, Clone)]
pub struct DomainLattice {
    pub cone_lattice: Lattice,
    pub points: Vec<DomainLatticePoint>,
    pub delta: f64,
    pub warnings: Vec<String>,
}

impl DomainLattice {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn write_csv(&self, w: &mut impl std::io::Write) -> Result<()> {
        writeln!(w, "j,k,zeta,z,cell_nu_d")?;
        for p in &self.points {
            let zs = p
                .zeta
                .iter()
                .map(|c| format!("{:.17e}+{:.17e}i", c.re, c.im))
                .collect::<Vec<_>>()
                .join(";");
            let z = p
                .z
                .iter()
                .map(|c| format!("{:.17e}+{:.17e}i", c.re, c.im))
                .collect::<Vec<_>>()
                .join(";");
            writeln!(w, "{},{},{},{},{:.17e}", p.j, p.k, zs, z, p.cell_nu_d)?;
        }
        Ok(())
    }
}

/// Quasi-distance on the domain used for lattice separation bookkeeping:
/// the cone distance of the rho parts plus scale-normalized horizontal
/// offsets (dilations act as (R^{1/2} zeta, R x)). Invariant under real
/// translations of x and under common dilations; at bounded scales it is
/// comparable to the invariant metric.
pub fn domain_quasi_distance(
    domain: &SiegelDomain,
    a: (&[Complex64], &[Complex64]),
    b: (&[Complex64], &[Complex64]),
) -> Result<f64> {
    let cone = domain.cone();
    let ra = domain.rho(a.0, a.1)?;
    let rb = domain.rho(b.0, b.1)?;
    let dcone = cone.invariant_distance(&ra, &rb)?;
    let sa = cone.scale(&ra)?;
    let sb = cone.scale(&rb)?;
    let xx: f64 = a
        .1
        .iter()
        .zip(b.1)
        .map(|(p, q)| (p.re - q.re).powi(2))
        .sum::<f64>()
        / (sa * sb);
    let zz: f64 = a
        .0
        .iter()
        .zip(b.0)
        .map(|(p, q)| (p - q).norm_sqr())
        .sum::<f64>()
        / (sa * sb).sqrt();
    Ok((dcone * dcone + xx + zz).sqrt())
}

/// Product construction of a domain lattice over a cone lattice: at each
/// layer h_k, an x-grid with spacing 2*delta*scale(h_k) and (when n > 0) a
/// zeta-grid with spacing 2*delta*sqrt(scale(h_k)), both spanning
/// `x_extent` / `zeta_extent` scale units. rho of every point is h_k exactly.
pub fn domain_lattice(
    domain: &SiegelDomain,
    delta: f64,
    h_chart_radius: f64,
    x_extent: f64,
    zeta_extent: f64,
) -> Result<DomainLattice> {
    let cone = domain.cone().clone();
    let base = cone_lattice(&cone, delta, h_chart_radius)?;
    let n = domain.complex_dim_e();
    let m = cone.ambient_dim();
    let bd = domain.b_plus_d();
    let mut points = Vec::new();
    let mut warnings = base.warnings.clone();
    if base.is_empty() {
        warnings.push("domain lattice built over an empty cone lattice".to_string());
    }
    for (k, h) in base.points.iter().enumerate() {
        let sigma = cone.scale(h)?;
        let spacing = 2.0 * delta * sigma;
        let count = ((2.0 * x_extent * sigma / spacing).round() as usize).max(1);
        let xs = centered_grid(count, spacing);
        let x_nodes = tensor(&xs, m);

        let (zeta_nodes, zeta_cell) = if n == 0 {
            (vec![vec![]], 1.0)
        } else {
            let zspacing = 2.0 * delta * sigma.sqrt();
            let zcount = ((2.0 * zeta_extent * sigma.sqrt() / zspacing).round() as usize).max(1);
            let zs = centered_grid(zcount, zspacing);
            let reim = tensor(&zs, 2 * n);
            let nodes: Vec<Vec<Complex64>> = reim
                .iter()
                .map(|p| {
                    (0..n)
                        .map(|i| Complex64::new(p[2 * i], p[2 * i + 1]))
                        .collect()
                })
                .collect();
            (nodes, zspacing.powi(2 * n as i32))
        };

        // nu_D cell = Delta^{b+d}(h_k) * nu_cell_k * (x cell volume) * (zeta cell volume)
        let x_cell = spacing.powi(m as i32);
        let nu_d_cell =
            cone.power_function_real(&bd, h)? * base.cell_measures[k] * x_cell * zeta_cell;

        let mut j = 0;
        for zeta in &zeta_nodes {
            for x in &x_nodes {
                let phi = domain.phi().eval_self(zeta);
                let z: Vec<Complex64> = x
                    .iter()
                    .zip(phi.iter().zip(h))
                    .map(|(&xi, (&p, &hh))| Complex64::new(xi, p + hh))
                    .collect();
                points.push(DomainLatticePoint {
                    zeta: zeta.clone(),
                    z,
                    j,
                    k,
                    cell_nu_d: nu_d_cell,
                });
                j += 1;
            }
        }
    }
    Ok(DomainLattice {
        cone_lattice: base,
        points,
        delta,
        warnings,
    })
}

/// Dyadic box lattice on the upper half-plane reproducing the classical box
/// family: layers [e^{2 delta k}, e^{2 delta (k+1)}) with points at the box
/// centers, x cells of width (2 delta / ln 2) * (layer lower edge), and exact
/// nu_D cell masses. Only for rank-one tube domains.
pub fn halfplane_box_lattice(
    domain: &SiegelDomain,
    delta: f64,
    k_min: i64,
    k_max: i64,
    x_extent: f64,
) -> Result<DomainLattice> {
    if domain.cone().rank() != 1 || domain.complex_dim_e() != 0 {
        return Err(Error::argument(
            "box lattice is defined for rank-one tube domains only",
        ));
    }
    if delta <= 0.0 {
        return Err(Error::argument("delta must be positive"));
    }
    let ratio = (2.0 * delta).exp();
    let r_box = 2.0 * delta / 2.0_f64.ln();
    let mut points = Vec::new();
    let mut cone_points = Vec::new();
    let mut cone_cells = Vec::new();
    for (k_idx, k) in (k_min..=k_max).enumerate() {
        let y_low = (2.0 * delta * k as f64).exp();
        let y_high = y_low * ratio;
        let y_c = 0.5 * (y_low + y_high);
        cone_points.push(vec![y_c]);
        cone_cells.push(2.0 * delta);
        let w = r_box * y_low;
        let j_count = ((2.0 * x_extent * y_c / w).round() as usize).max(2);
        // exact nu_D mass of one box: w * (1/y_low - 1/y_high)
        let cell = w * (1.0 / y_low - 1.0 / y_high);
        let xs = centered_grid(j_count, w);
        for (j, &x) in xs.iter().enumerate() {
            points.push(DomainLatticePoint {
                zeta: vec![],
                z: vec![Complex64::new(x, y_c)],
                j,
                k: k_idx,
                cell_nu_d: cell,
            });
        }
    }
    // measured separation of the box centers in the quasi-distance
    let mut min_sep = f64::INFINITY;
    let y0: f64 = cone_points[0][0];
    min_sep = min_sep.min(2.0 * delta); // consecutive layers
    min_sep = min_sep.min(r_box * (y0 / ratio.sqrt()) / y0); // same layer, adjacent x
    let base = Lattice {
        base_layer: (0..cone_points.len()).collect(),
        points: cone_points,
        delta: min_sep / 2.0,
        covering_radius_factor: 2.0,
        cell_measures: cone_cells,
        warnings: vec![],
    };
    Ok(DomainLattice {
        cone_lattice: base,
        points,
        delta: min_sep / 2.0,
        warnings: vec![],
    })
}

fn centered_grid(count: usize, spacing: f64) -> Vec<f64> {
    (0..count)
        .map(|j| (j as f64 - (count as f64 - 1.0) / 2.0) * spacing)
        .collect()
}

fn tensor(axis: &[f64], dims: usize) -> Vec<Vec<f64>> {
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

/// Convenience: a log-uniform rank-one lattice (exact cells), the workhorse
/// for half-plane grids.
pub fn log_uniform_halfline_lattice(y_min: f64, y_max: f64, count: usize) -> Result<Lattice> {
    if !(y_min > 0.0 && y_max > y_min && count >= 1) {
        return Err(Error::argument("invalid log-uniform lattice parameters"));
    }
    let step = (y_max / y_min).ln() / count as f64;
    let points: Vec<Vec<f64>> = (0..count)
        .map(|k| vec![y_min * ((k as f64 + 0.5) * step).exp()])
        .collect();
    Ok(Lattice {
        base_layer: (0..count).collect(),
        delta: step / 2.0,
        covering_radius_factor: 1.0,
        cell_measures: vec![step; count],
        points,
        warnings: vec![],
    })
}

/// Mixed sequence norm bookkeeping needs Delta^s at layer points; expose the
/// helper here so grid-side and lattice-side agree.
pub fn layer_power(cone: &Cone, lattice: &Lattice, s: &WeightVector) -> Result<Vec<f64>> {
    lattice
        .points
        .iter()
        .map(|h| cone.power_function_real(s, h))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{from_spec, ConeSpec};

    #[test]
    fn halfline_greedy_matches_hand_packing() {
        let cone = from_spec(&ConeSpec::Halfline).unwrap();
        let lat = cone_lattice(&cone, 0.5, 2.0).unwrap();
        let mut ys: Vec<f64> = lat.points.iter().map(|p| p[0]).collect();
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expected: Vec<f64> = [-2.0_f64, -1.0, 0.0, 1.0, 2.0]
            .iter()
            .map(|u| u.exp())
            .collect();
        assert_eq!(ys.len(), 5, "{ys:?}");
        for (y, e) in ys.iter().zip(&expected) {
            assert!((y - e).abs() < 1e-9 * e, "{ys:?}");
        }
        // geometric progression with ratio e^{2 delta}
        for w in ys.windows(2) {
            assert!((w[1] / w[0] - 1.0_f64.exp()).abs() < 1e-9);
        }
    }

    #[test]
    fn pairwise_separation_and_covering() {
        let cone = from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap();
        let lat = cone_lattice(&cone, 0.4, 1.2).unwrap();
        assert!(!lat.is_empty());
        for i in 0..lat.len() {
            for j in (i + 1)..lat.len() {
                let d = cone
                    .invariant_distance(&lat.points[i], &lat.points[j])
                    .unwrap();
                assert!(d >= 2.0 * 0.4 * (1.0 - 1e-9), "pair ({i},{j}) at {d}");
            }
        }
        // maximality gives covering radius < 2 delta on the probe set
        assert!(lat.covering_radius_factor <= 2.0 + 1e-9);
    }

    #[test]
    fn cell_measures_sum_to_truncated_measure() {
        // over the chart box the truncated measure is the integral of the
        // jacobian: for Lorentz(3), 2 e^{-gamma} over the box, closed form
        let cone = from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap();
        let radius = 1.0;
        let lat = cone_lattice(&cone, 0.3, radius).unwrap();
        let total = lat.total_measure();
        let exact = 2.0 * (2.0 * radius) * (radius.exp() - (-radius).exp()) * (2.0 * radius);
        assert!(
            (total - exact).abs() / exact < 5e-3,
            "cells {total} vs exact {exact}"
        );
    }

    #[test]
    fn empty_lattice_warns() {
        let cone = from_spec(&ConeSpec::Halfline).unwrap();
        let lat = cone_lattice(&cone, 50.0, 1.0).unwrap();
        assert!(lat.len() <= 1);
        assert!(!lat.warnings.is_empty());
    }

    #[test]
    fn box_lattice_reproduces_classical_boxes() {
        let tube = SiegelDomain::tube(from_spec(&ConeSpec::Halfline).unwrap());
        let delta = 2.0_f64.ln() / 2.0;
        let lat = halfplane_box_lattice(&tube, delta, 0, 1, 2.0).unwrap();
        // the k=0 layer is [1,2): its box centers sit at y = 1.5, x = j + 1/2
        let layer0: Vec<&DomainLatticePoint> = lat.points.iter().filter(|p| p.k == 0).collect();
        assert!(layer0.iter().all(|p| (p.z[0].im - 1.5).abs() < 1e-12));
        assert!(layer0
            .iter()
            .any(|p| (p.z[0].re - 0.5).abs() < 1e-12), "box (0,1)x(1,2) center present");
        // exact box mass: 1 * (1 - 1/2) = 1/2
        assert!((layer0[0].cell_nu_d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn domain_lattice_rho_is_exact() {
        let hs = SiegelDomain::half_space(1);
        let lat = domain_lattice(&hs, 0.4, 1.2, 2.0, 1.5).unwrap();
        assert!(!lat.is_empty());
        for p in &lat.points {
            let rho = hs.rho(&p.zeta, &p.z).unwrap();
            let hk = &lat.cone_lattice.points[p.k];
            for (a, b) in rho.iter().zip(hk) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        // zeta spacing scales like sqrt(layer scale)
        let k0: Vec<&DomainLatticePoint> = lat.points.iter().filter(|p| p.k == 0).collect();
        let mut zs: Vec<f64> = k0.iter().map(|p| p.zeta[0].re).collect();
        zs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        zs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        if zs.len() >= 2 {
            let sigma = hs.cone().scale(&lat.cone_lattice.points[0]).unwrap();
            let expected = 2.0 * 0.4 * sigma.sqrt();
            assert!(((zs[1] - zs[0]) - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn tube_domain_lattice_has_no_zeta_axis() {
        let tube = SiegelDomain::tube(from_spec(&ConeSpec::Halfline).unwrap());
        let lat = domain_lattice(&tube, 0.3, 1.0, 2.0, 0.0).unwrap();
        assert!(lat.points.iter().all(|p| p.zeta.is_empty()));
    }
}
