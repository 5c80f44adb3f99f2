//! The 3-manifold invariant on lens spaces and a slid diagram.

use kirbylab::evaluator::tau_manifold;
use kirbylab::families::{hn_zd, radford_hn, HnSpec};
use kirbylab::kirby::Kirby;
use kirbylab::links::{handle_slide, hopf_link, unknot};

fn main() {
    let spec = HnSpec::new(3).unwrap();
    let rh = radford_hn(&spec).unwrap();
    let k = Kirby::new(&rh);
    let z = hn_zd(&spec, 3).unwrap();
    for p in -3..=3 {
        println!("L({p},1): {}", tau_manifold(&k, &unknot(p), &z).unwrap());
    }
    let l = hopf_link(0, 0);
    let slid = handle_slide(&l, 0, 1).unwrap();
    println!("hopf(0,0) = {}, slid = {}", tau_manifold(&k, &l, &z).unwrap(), tau_manifold(&k, &slid, &z).unwrap());
}
