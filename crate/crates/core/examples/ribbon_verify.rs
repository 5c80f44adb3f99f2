//! Axiom checks for H_1 and the cyclic ribbon algebra, plus a rejected twist.

use kirbylab::families::{cyclic_ribbon, radford_hn, HnSpec};
use kirbylab::ribbon::verify_ribbon;

fn main() {
    let hn = radford_hn(&HnSpec::new(1).unwrap()).unwrap();
    let report = hn.hopf.data.verify().unwrap();
    println!("H_1 Hopf axioms: {}", report.all_pass());
    println!("H_1 ribbon axioms: {}", verify_ribbon(&hn.hopf, &hn.r, &hn.theta).all_pass());

    let cyc = cyclic_ribbon(5, 1).unwrap().ribbon;
    println!("cyclic(5) ribbon axioms: {}", verify_ribbon(&cyc.hopf, &cyc.r, &cyc.theta).all_pass());
    let inverted = cyc.theta_pow(-1);
    let bad = verify_ribbon(&cyc.hopf, &cyc.r, &inverted);
    println!("cyclic(5) with inverted twist fails: {:?}", bad.failed());
}
