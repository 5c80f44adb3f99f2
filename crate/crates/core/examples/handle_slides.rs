//! Handle slides and stabilizations on framed link diagrams.

use kirbylab::links::{handle_slide, hopf_link, stabilize, trefoil};

fn main() {
    let hopf = hopf_link(1, -1);
    println!("hopf(1,-1) linking {:?}", hopf.linking_data().matrix);
    let slid = handle_slide(&hopf, 1, 0).unwrap();
    let ld = slid.linking_data();
    println!("after sliding 1 over 0: {} crossings, linking {:?}, b_minus {}", slid.num_crossings(), ld.matrix, ld.b_minus);
    let st = stabilize(&trefoil(-1), 1);
    println!("trefoil(-1) + unknot(+1): linking {:?}", st.linking_data().matrix);
    println!("{}", serde_json::to_string(&slid.to_json()).unwrap());
}
