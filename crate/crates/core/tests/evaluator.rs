use std::time::Instant;

use kirbylab::evaluator::{oracle_eval, tau_link, tau_link_at};
use kirbylab::families::{divisors, hn_zd, radford_hn, HnSpec};
use kirbylab::links::{chain, disjoint_union, hopf_link, trefoil, unknot, LinkDiagram, MorseEvent};

fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut v: Vec<(String, LinkDiagram)> = (-2..=2).map(|f| (format!("unknot({f})"), unknot(f))).collect();
    v.push(("hopf(0,0)".into(), hopf_link(0, 0)));
    v.push(("hopf(1,-1)".into(), hopf_link(1, -1)));
    v.push(("hopf(-1,0)".into(), hopf_link(-1, 0)));
    v.push(("trefoil(+)".into(), trefoil(1)));
    v.push(("trefoil(-)".into(), trefoil(-1)));
    v.push(("chain(3)".into(), chain(3, &[])));
    v.push(("unknot(1)+unknot(-1)".into(), disjoint_union(&unknot(1), &unknot(-1))));
    use MorseEvent::*;
    let neg_hopf = LinkDiagram::new(vec![
        Cup(0),
        Cup(2),
        Crossing { pos: 1, sign: -1 },
        Crossing { pos: 1, sign: -1 },
        Cap(0),
        Cap(0),
    ])
    .unwrap();
    v.push(("hopf(-)".into(), neg_hopf));
    v
}

#[test]
fn bead_algorithm_matches_oracle() {
    for n in [1u64, 3] {
        let spec = HnSpec::new(n).unwrap();
        let rh = radford_hn(&spec).unwrap();
        let h = &rh.hopf;
        let mut zs = vec![("S(Lambda)".to_string(), h.antipode(h.left_integral()))];
        for d in divisors(n) {
            zs.push((format!("z_{d}"), hn_zd(&spec, d).unwrap()));
        }
        for (name, l) in corpus() {
            for (zn, z) in &zs {
                let t0 = Instant::now();
                let a = tau_link(&rh, &l, z).unwrap();
                let t1 = t0.elapsed();
                let b = oracle_eval(&rh, &l, z).unwrap();
                eprintln!("n={n} {name} {zn}: bead {t1:?}, oracle {:?}", t0.elapsed() - t1);
                assert_eq!(a, b, "n={n} {name} {zn}");
            }
        }
    }
}

#[test]
fn concentration_point_can_move() {
    let spec = HnSpec::new(3).unwrap();
    let rh = radford_hn(&spec).unwrap();
    let z = hn_zd(&spec, 1).unwrap();
    for (name, l) in corpus() {
        let base = tau_link(&rh, &l, &z).unwrap();
        // every clockwise cup of each component is a valid concentration point
        for c in 0..l.num_components() {
            for inc in l.traversal(c) {
                if let kirbylab::links::Incidence::Extremum { event, cup: true, ccw: false } = *inc {
                    let mut starts = l.first_cups().to_vec();
                    starts[c] = event;
                    assert_eq!(tau_link_at(&rh, &l, &z, Some(&starts)).unwrap(), base, "{name}");
                }
            }
        }
    }
}
