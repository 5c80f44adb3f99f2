//! The subspaces L, Z, N of H_3 and the Kirby elements z_d.

use kirbylab::families::{divisors, gauss_theta, hn_zd, radford_hn, HnSpec};
use kirbylab::kirby::{compute_subspaces, Kirby};

fn main() {
    let spec = HnSpec::new(3).unwrap();
    let rh = radford_hn(&spec).unwrap();
    let s = compute_subspaces(&rh);
    println!("dim L = {}, dim Z = {}, dim N = {}, dim V2 = {}", s.l_basis.len(), s.z_basis.len(), s.n_basis.len(), s.v2_basis.len());
    let k = Kirby::new(&rh);
    for d in divisors(3) {
        let z = hn_zd(&spec, d).unwrap();
        let c = k.is_kirby(&z);
        println!(
            "z_{d}: normalized {}, theta+ = {}, closed form {}",
            c.is_normalized(),
            c.theta_plus,
            gauss_theta(&spec, d, 1).unwrap()
        );
    }
    println!("1 is a Kirby element: {}", k.is_kirby(&rh.hopf.one()).is_kirby());
}
