use cone_bergman::cone::{from_spec, ConeSpec};
use cone_bergman::domain::SiegelDomain;
use cone_bergman::lattice::halfplane_box_lattice;
use cone_bergman::projector::halfplane_projector_constant;
use num_complex::Complex64;

fn main() {
    let dom = SiegelDomain::tube(from_spec(&ConeSpec::Halfline).unwrap());
    let delta = 0.1_f64;
    let k_min = ((0.03_f64).ln() / (2.0 * delta)).floor() as i64;
    let k_max = ((30.0_f64).ln() / (2.0 * delta)).ceil() as i64;
    let lat = halfplane_box_lattice(&dom, delta, k_min, k_max, 14.0).unwrap();
    println!("lattice points: {}", lat.points.len());
    let sp = -3.5_f64;
    let c = halfplane_projector_constant(sp);
    println!("c = {c}");
    let f = |z: Complex64| (z + Complex64::new(0.0, 1.0)).powi(-3);
    // directly assemble P f at z0 = 0.3 + 1.2i
    let z0 = Complex64::new(0.3, 1.2);
    let mut acc = Complex64::new(0.0, 0.0);
    for p in &lat.points {
        let w = p.z[0];
        let hk = lat.cone_lattice.points[p.k][0];
        let barg = (z0 - w.conj()) / Complex64::new(0.0, 2.0);
        let b = barg.powf(sp);
        acc += f(w) * b.conj().conj() * hk.powf(-sp) * p.cell_nu_d;
    }
    // careful: projector uses conj(B^{s'}_{z0}(w)) = ((z0 - conj w)/2i)^{s'}
    println!("P f(z0) = {}", acc * c);
    println!("f(z0)   = {}", f(z0));
    // check a couple of lattice cells
    let p0 = &lat.points[0];
    println!("first point z={} k={} cell={}", p0.z[0], p0.k, p0.cell_nu_d);
    let pl = lat.points.last().unwrap();
    println!("last point z={} k={} cell={}", pl.z[0], pl.k, pl.cell_nu_d);
}
