//! Traces on H_3 built from T-fixed elements of L.

use kirbylab::families::{radford_hn, HnSpec};
use kirbylab::kirby::{is_trace, Kirby};

fn main() {
    let rh = radford_hn(&HnSpec::new(3).unwrap()).unwrap();
    let k = Kirby::new(&rh);
    let fixed = k.t_fixed_basis();
    let traces = k.traces_basis().unwrap();
    println!("dim of T-fixed part of L: {}", fixed.len());
    for (i, t) in traces.iter().enumerate() {
        println!("trace {i}: symmetric and S-invariant {}", is_trace(&rh.hopf, t));
    }
}
