//! Colored sums over the characters of Z/5 and the matching Kirby element.

use kirbylab::evaluator::{rt_invariant, tau_manifold};
use kirbylab::families::cyclic_ribbon;
use kirbylab::kirby::Kirby;
use kirbylab::links::unknot;

fn main() {
    let cyc = cyclic_ribbon(5, 1).unwrap();
    let rh = &cyc.ribbon;
    let k = Kirby::new(rh);
    let one = rh.hopf.one();
    let mods = cyc.characters();
    for p in -2..=3 {
        let l = unknot(p);
        let rt = rt_invariant(rh, &mods, &l).unwrap();
        let tau = tau_manifold(&k, &l, &one).unwrap();
        println!("unknot({p}): rt {rt}, tau(1) {tau}");
    }
    let zp = k.z_premodular(&mods).unwrap();
    println!("premodular z = {}", rh.hopf.format_elem(&zp));
}
