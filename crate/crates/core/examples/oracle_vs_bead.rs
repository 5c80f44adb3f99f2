//! The bead algorithm against the tensor-network evaluator.

use kirbylab::evaluator::{oracle_eval, tau_link};
use kirbylab::families::{hn_zd, radford_hn, HnSpec};
use kirbylab::kirby::Kirby;
use kirbylab::links::{chain, hopf_link, trefoil, unknot};

fn main() {
    let spec = HnSpec::new(3).unwrap();
    let rh = radford_hn(&spec).unwrap();
    let z = hn_zd(&spec, 3).unwrap();
    assert!(Kirby::new(&rh).is_kirby(&z).is_normalized());
    for (name, l) in [
        ("unknot(2)", unknot(2)),
        ("hopf(1,-1)", hopf_link(1, -1)),
        ("trefoil(+1)", trefoil(1)),
        ("chain(1,0,-1)", chain(3, &[1, 0, -1])),
    ] {
        let bead = tau_link(&rh, &l, &z).unwrap();
        let oracle = oracle_eval(&rh, &l, &z).unwrap();
        println!("{name}: bead {bead}, oracle {oracle}, equal {}", bead == oracle);
    }
}
