//! Integrals, cointegrals and distinguished grouplikes of H_n.

use kirbylab::families::{radford_hn, HnSpec};

fn main() {
    for n in [1, 3] {
        let rh = radford_hn(&HnSpec::new(n).expect("odd n")).expect("H_n");
        let h = &rh.hopf;
        println!("H_{n}: dim {}", h.dim());
        println!("  left integral   {}", h.format_elem(h.left_integral()));
        println!("  g               {}", h.format_elem(h.distinguished_grouplike()));
        println!("  special g       {}", h.format_elem(rh.special_grouplike()));
        println!("  unimodular      {}", h.is_unimodular());
    }
}
