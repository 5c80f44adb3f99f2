use kirbylab::families::{divisors, hn_known_data, hn_zd, radford_hn, HnSpec};
use kirbylab::kirby::{same_span_elems, same_span_tensors, Kirby};

#[test]
fn hn_subspaces_and_kirby_sets() {
    for n in [1u64, 3, 5] {
        let spec = HnSpec::new(n).unwrap();
        let rh = radford_hn(&spec).unwrap();
        let h = &rh.hopf;
        let t0 = std::time::Instant::now();
        let k = Kirby::new(&rh);
        eprintln!("n={n} subspaces in {:?}", t0.elapsed());
        let known = hn_known_data(&spec);
        assert!(same_span_elems(h, &k.subspaces.l_basis, &known.l_basis));
        assert!(same_span_elems(h, &k.subspaces.z_basis, &known.z_basis));
        assert!(same_span_elems(h, &k.subspaces.n_basis, &known.n_basis));
        assert!(same_span_tensors(h, &k.subspaces.v2_basis, &known.v2_basis));
        assert_eq!(k.subspaces.v2_basis.len() as u64, 5 * n * n);
        for i in 0..h.dim() {
            assert_eq!(k.t_map(&h.basis(i)), known.t_images[i]);
        }
        let t0 = std::time::Instant::now();
        for d in divisors(n) {
            let z = hn_zd(&spec, d).unwrap();
            let c = k.is_kirby(&z);
            assert!(c.is_normalized(), "n={n} d={d} {c:?}");
            assert!(k.condition_b_mirrored(&z));
        }
        let sl = h.antipode(h.left_integral());
        assert!(k.is_kirby(&sl).is_normalized());
        assert!(!k.is_kirby(&h.one()).is_kirby());
        eprintln!("n={n} checks in {:?}", t0.elapsed());
    }
}
