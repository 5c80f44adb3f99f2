//! Closed subsets and the necessary Kirby conditions on pointed Z/6 data.

use kirbylab::fusion::{closed_subsets, kirby_necessary, pointed_cyclic_trivial};

fn main() {
    let data = pointed_cyclic_trivial(6);
    let subsets = closed_subsets(&data).unwrap();
    for s in &subsets {
        let alpha = data.subset_sum(s);
        println!("{s:?}: {}", kirby_necessary(&data, &alpha).label());
    }
    let odd = data.subset_sum(&[0, 1]);
    println!("[0, 1]: {}", kirby_necessary(&data, &odd).label());
}
