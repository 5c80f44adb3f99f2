//! Round-trip a ribbon algebra through the JSON file format.

use kirbylab::families::{radford_hn, HnSpec};
use kirbylab::io::AlgebraFile;

fn main() {
    let rh = radford_hn(&HnSpec::new(1).unwrap()).unwrap();
    let json = AlgebraFile::from_ribbon(&rh).to_json();
    let text = serde_json::to_string_pretty(&json).unwrap();
    println!("{text}");
    let back = AlgebraFile::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    let (h, ribbon) = back.build().unwrap();
    eprintln!("reloaded: dim {}, ribbon {}", h.dim(), ribbon.is_some());
}
