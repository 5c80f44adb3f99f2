//! Exact arithmetic in Q(ζ_5): a Gauss sum and its square.

use kirbylab::field::Field;

fn main() {
    let f = Field::cyclotomic(5).expect("Q(zeta_5)");
    let zeta = f.generator();
    let mut gauss = f.zero();
    for j in 0..5i64 {
        gauss += &zeta.pow(j * j);
    }
    println!("G = sum zeta^(j^2) = {gauss}");
    println!("G^2 = {}", &gauss * &gauss);
    println!("1/G = {}", gauss.inverse().expect("nonzero"));
    println!("G ~ {:.6}", gauss.approx().0);
}
