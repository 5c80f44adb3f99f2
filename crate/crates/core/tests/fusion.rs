use kirbylab::field::Field;
use kirbylab::fusion::*;
use proptest::prelude::*;

/// Subgroups of ℤ/N as multiples of each divisor.
fn subgroups(order: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> =
        (1..=order).filter(|d| order.is_multiple_of(*d)).map(|d| (0..order).step_by(d).collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[test]
fn closed_subsets_of_pointed_data_are_subgroups() {
    for order in [1, 2, 5, 6, 12] {
        let d = pointed_cyclic_trivial(order);
        assert_eq!(closed_subsets(&d).unwrap(), subgroups(order), "Z/{order}");
    }
    assert_eq!(closed_subsets(&pointed_cyclic_trivial(6)).unwrap(), vec![vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect()]);
}

#[test]
fn necessary_conditions_accept_exactly_subgroup_sums() {
    let d = pointed_cyclic_trivial(6);
    let f = &d.field;
    let groups = subgroups(6);
    for mask in 1u32..64 {
        let support: Vec<usize> = (0..6).filter(|l| mask & (1 << l) != 0).collect();
        for scale in [1, 2, -3] {
            let alpha: Vec<_> = d.subset_sum(&support).iter().map(|x| x * &f.int(scale)).collect();
            assert_eq!(kirby_necessary(&d, &alpha).passed(), groups.contains(&support), "support {support:?}");
        }
        // unequal coefficients on a support of two or more labels never pass
        if support.len() > 1 {
            let mut alpha = d.subset_sum(&support);
            alpha[support[1]] = f.int(2);
            assert!(!kirby_necessary(&d, &alpha).passed());
        }
    }
    for e in closed_subsets(&d).unwrap() {
        assert_eq!(kirby_necessary(&d, &d.subset_sum(&e)).label(), "necessary conditions passed");
    }
}

#[test]
fn basis_identities_for_every_label() {
    let d = pointed_cyclic_trivial(6);
    let f = &d.field;
    let n = d.len();
    for l in 0..n {
        let e = d.basis(l);
        assert_eq!(s_b(&d, &e), d.basis(d.dual[l]));
        assert_eq!(s_b(&d, &s_b(&d, &e)), e);
        assert_eq!(m_b(&d, &unit_b(&d), &e), e);
        assert_eq!(m_b(&d, &e, &unit_b(&d)), e);
        assert_eq!(eps_b(&d, &e), d.dims[l]);
        for m in 0..n {
            let em = d.basis(m);
            assert_eq!(m_b(&d, &e, &em), d.basis((l + m) % n));
            assert_eq!(eps_b(&d, &m_b(&d, &e, &em)), &d.dims[l] * &d.dims[m]);
            assert_eq!(s_b(&d, &m_b(&d, &e, &em)), m_b(&d, &s_b(&d, &em), &s_b(&d, &e)));
            let expect = if l == m { e.clone() } else { vec![f.zero(); n] };
            assert_eq!(slice_b(&d, &e, m), expect);
        }
    }
}

#[test]
fn gauss_sum_normalization_of_quadratic_data() {
    let k = Field::cyclotomic(5).unwrap();
    let q = k.generator();
    let twists = (0..5i64).map(|j| q.pow(j * j)).collect();
    let d = pointed_cyclic(&k, 5, twists).unwrap();
    let all: Vec<usize> = (0..5).collect();
    let dp = delta_pm(&d, &all).unwrap();
    assert!(dp.nonzero);
    // Σ_j q^{j²} squares to the Legendre symbol (-1|5) · 5 = 5
    assert_eq!(&dp.plus * &dp.plus, k.int(5));
    let v1 = pointed_cyclic_trivial(7);
    let dv = delta_pm(&v1, &(0..7).collect::<Vec<_>>()).unwrap();
    assert_eq!((dv.plus, dv.minus), (v1.field.int(7), v1.field.int(7)));
}

#[test]
fn json_round_trip_and_malformed_input() {
    let d = pointed_cyclic_trivial(6);
    assert_eq!(FusionData::from_json(&d.to_json()).unwrap(), d);
    let mut v = d.to_json();
    v["dual"] = serde_json::json!(["0", "1", "2", "3", "4", "4"]);
    assert!(matches!(FusionData::from_json(&v), Err(FusionError::Malformed(_))));
}

proptest! {
    #[test]
    fn fusion_product_is_associative_and_commutes_with_antipode(
        a in prop::collection::vec(-4i64..5, 6),
        b in prop::collection::vec(-4i64..5, 6),
        c in prop::collection::vec(-4i64..5, 6),
    ) {
        let d = pointed_cyclic_trivial(6);
        let f = &d.field;
        let v = |x: &[i64]| x.iter().map(|&k| f.int(k)).collect::<Vec<_>>();
        let (a, b, c) = (v(&a), v(&b), v(&c));
        prop_assert_eq!(m_b(&d, &m_b(&d, &a, &b), &c), m_b(&d, &a, &m_b(&d, &b, &c)));
        prop_assert_eq!(s_b(&d, &m_b(&d, &a, &b)), m_b(&d, &s_b(&d, &b), &s_b(&d, &a)));
        prop_assert_eq!(eps_b(&d, &m_b(&d, &a, &b)), &eps_b(&d, &a) * &eps_b(&d, &b));
    }
}
