use cone_bergman::cone::{from_spec, ConeSpec};
use cone_bergman::domain::SiegelDomain;
use cone_bergman::projector::*;
use cone_bergman::WeightVector;
use std::time::Instant;

fn main() {
    let dom = SiegelDomain::tube(from_spec(&ConeSpec::Halfline).unwrap());
    let s: WeightVector = vec![1.0].into();
    let radii = [16.0, 32.0, 64.0];
    for st in [0.75, 0.4] {
        let sp: WeightVector = vec![-1.0 - 2.0 * st].into();
        let t0 = Instant::now();
        let rep = estimate_cone_operator_norm(&dom, &s, &sp, 2.0, 0.25, &radii).unwrap();
        println!("T  st={st}: {:?} verdict {:?} growth {:.3} ({:?})", rep.norm_estimates, rep.verdict, rep.growth_ratio, t0.elapsed());
        for p in [1.0, 2.0] {
            let params = ProjectorParams::new(dom.clone(), p, 2.0, s.clone(), sp.clone()).unwrap();
            let t0 = Instant::now();
            let rep = estimate_positive_projector_norm(&params, &PositiveScanOptions::default(), &radii).unwrap();
            println!("P+ st={st} p={p}: {:?} verdict {:?} growth {:.3} ({:?})", rep.norm_estimates, rep.verdict, rep.growth_ratio, t0.elapsed());
        }
    }
}
