use kirbylab::families::{cyclic_ribbon, divisors, gauss_theta, hn_known_data, radford_hn, HnSpec};
use kirbylab::linalg::{same_span, sparse_from_dense};

#[test]
fn hn_closed_forms_match_computed_data() {
    for n in [1u64, 3, 5] {
        let spec = HnSpec::new(n).unwrap();
        let t0 = std::time::Instant::now();
        let h = radford_hn(&spec).unwrap();
        eprintln!("n={n} built in {:?}", t0.elapsed());
        let k = hn_known_data(&spec);
        assert_eq!(h.hopf.left_integral(), &k.left_integral, "n={n}");
        assert_eq!(h.hopf.right_cointegral(), &k.right_cointegral);
        assert_eq!(h.hopf.distinguished_grouplike(), &k.g);
        assert_eq!(h.hopf.distinguished_character(), &k.nu);
        assert_eq!(h.special_grouplike(), &k.special_grouplike);
        assert_eq!(&h.h_nu, &k.h_nu);
        assert!(!h.hopf.is_unimodular());
        let l: Vec<_> = k.l_basis.iter().map(|v| sparse_from_dense(v)).collect();
        assert!(same_span(h.hopf.field(), h.hopf.dim(), &l, &l));
    }
}

#[test]
fn cyclic_five_is_ribbon_and_unimodular() {
    let c = cyclic_ribbon(5, 1).unwrap();
    assert!(c.ribbon.hopf.is_unimodular());
    assert_eq!(c.ribbon.special_grouplike(), &c.ribbon.hopf.one());
}

#[test]
fn gauss_values_nonzero() {
    for n in [1u64, 3, 5] {
        let spec = HnSpec::new(n).unwrap();
        for d in divisors(n) {
            for sign in [1, -1] {
                assert!(!gauss_theta(&spec, d, sign).unwrap().is_zero());
            }
        }
    }
}
