use cone_bergman::boundary::*;
use cone_bergman::cone::{from_spec, ConeSpec};
use cone_bergman::domain::SiegelDomain;
use num_complex::Complex64;

fn main() {
    let cone = from_spec(&ConeSpec::Halfline).unwrap();
    let dom = SiegelDomain::tube(cone.clone());
    let delta = 2.0_f64.ln() / 2.0;
    let part = BesovPartition::dyadic(&cone, delta, -8, 12).unwrap();
    let profile = |l: f64| Complex64::new((-(l - 2.0) * (l - 2.0) * 1.5).exp(), 0.0);
    let u = SpectralDensity::on_interval(&cone, 0.7, 6.0, 14, profile).unwrap();
    let u2 = SpectralDensity::on_interval(&cone, 0.35, 3.0, 14, |l| profile(2.0 * l)).unwrap();
    let s = vec![0.8].into();
    // per-layer norms for p=1
    for k in 6..14 {
        let w1 = cone.dual_power_function_real(&s, &part.lambda_k[k]).unwrap();
        let n_u = besov_norm(&SpectralDensity { values: u.values.clone(), ..u.clone() }, &BesovPartition { lambda_k: vec![part.lambda_k[k].clone()], ..part.clone() }, &dom, 1.0, 1.0, &s).unwrap();
        let n_u2 = besov_norm(&SpectralDensity { values: u2.values.clone(), ..u2.clone() }, &BesovPartition { lambda_k: vec![part.lambda_k[k].clone()], ..part.clone() }, &dom, 1.0, 1.0, &s).unwrap();
        println!("k={k} lam={:.4}: term(u)={:.6} term(u2)={:.6} w={w1:.4}", part.lambda_k[k][0], n_u, n_u2);
    }
}
