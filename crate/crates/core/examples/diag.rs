use cone_bergman::cone::gamma::{gamma_cone, gamma_truncation_scan};
use cone_bergman::cone::{from_spec, ConeSpec};

fn main() {
    let cone = from_spec(&ConeSpec::Lorentz { dim: 3 }).unwrap();
    for s2 in [0.2_f64, 0.35, 0.45, 0.8] {
        let scan = gamma_truncation_scan(&cone, &vec![3.0, s2].into(), 4);
        println!("s2={s2}: {scan:?}");
    }
    println!("gamma(2,1) chart = {:?}", gamma_cone(&cone, &vec![2.0, 1.0].into()));
    // factorized closed form: 2^{s1+s2-1.5} sqrt(2pi) G(s1) G(s2-0.5)
    let g = 2.0_f64.powf(2.0 + 1.0 - 1.5) * (2.0*std::f64::consts::PI).sqrt() * 1.0 * 1.7724538509055159;
    println!("factorized = {g}");
}
