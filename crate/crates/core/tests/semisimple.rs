use kirbylab::evaluator::{colored_eval, delta_pm, rt_invariant, tau_link, tau_manifold, twist_scalar};
use kirbylab::families::{cyclic_ribbon, radford_hn, HnSpec};
use kirbylab::fusion::{self, fusion_from_modules};
use kirbylab::kirby::{is_trace, Kirby};
use kirbylab::linalg::{rank, sparse_from_dense};
use kirbylab::links::{hopf_link, unknot};
use kirbylab::ribbon::RibbonHopf;

#[test]
fn rt_and_tau_agree_on_lens_spaces() {
    let c = cyclic_ribbon(5, 1).unwrap();
    let rh = &c.ribbon;
    let h = &rh.hopf;
    let k = Kirby::new(rh);
    let one = h.one();
    assert!(h.is_unimodular());
    assert!(k.is_kirby(&one).is_normalized());
    let chars = c.characters();
    for p in -2..=3 {
        let l = unknot(p);
        assert_eq!(rt_invariant(rh, &chars, &l).unwrap(), tau_manifold(&k, &l, &one).unwrap(), "unknot({p})");
    }
}

#[test]
fn premodular_sum_is_scalar() {
    let c = cyclic_ribbon(5, 1).unwrap();
    let rh = &c.ribbon;
    let h = &rh.hopf;
    let k = Kirby::new(rh);
    let chars = c.characters();
    let z = k.z_premodular(&chars).unwrap();
    let scalar = z[0].clone();
    assert!(!scalar.is_zero());
    assert_eq!(z, h.scale(&h.one(), &scalar));
    for rho in &chars {
        let zv = k.z_module(rho).unwrap();
        assert!(k.in_l(&zv));
    }
}

#[test]
fn colored_unknots_and_hopf_links() {
    let c = cyclic_ribbon(5, 1).unwrap();
    let rh = &c.ribbon;
    let f = rh.hopf.field();
    let chars = c.characters();
    let q = f.primitive_root(5).unwrap();
    for (a, va) in chars.iter().enumerate() {
        let v = twist_scalar(rh, va).unwrap();
        let d = rh.quantum_dim(va);
        assert_eq!(colored_eval(rh, &unknot(0), std::slice::from_ref(va)).unwrap(), d);
        assert_eq!(colored_eval(rh, &unknot(1), std::slice::from_ref(va)).unwrap(), &v * &d);
        assert_eq!(colored_eval(rh, &unknot(-1), std::slice::from_ref(va)).unwrap(), &v.inverse().unwrap() * &d);
        for (b, vb) in chars.iter().enumerate() {
            // double braiding on V⊗W is θ_{V⊗W} θ_V^{-1} θ_W^{-1} = q^{2ab} on characters
            let expect = q.pow(2 * (a * b) as i64);
            assert_eq!(colored_eval(rh, &hopf_link(0, 0), &[va.clone(), vb.clone()]).unwrap(), expect);
        }
    }
}

#[test]
fn module_fusion_data_matches_evaluator_normalizations() {
    let c = cyclic_ribbon(5, 1).unwrap();
    let chars = c.characters();
    let labels = (0..5).map(|j| format!("chi{j}")).collect();
    let data = fusion_from_modules(&c.ribbon, &chars, labels).unwrap();
    let all: Vec<usize> = (0..5).collect();
    let d = fusion::delta_pm(&data, &all).unwrap();
    assert!(d.nonzero);
    assert_eq!((d.plus, d.minus), delta_pm(&c.ribbon, &chars).unwrap());
}

fn check_traces(rh: &RibbonHopf) {
    let k = Kirby::new(rh);
    let h = &rh.hopf;
    let fixed = k.t_fixed_basis();
    assert!(!fixed.is_empty());
    let forms = k.traces_basis().unwrap();
    assert_eq!(forms.len(), fixed.len());
    for t in &forms {
        assert!(is_trace(h, t));
    }
    let r = rank(h.field(), h.dim(), forms.iter().map(|t| sparse_from_dense(t)));
    assert_eq!(r, fixed.len(), "z -> λ·(zG) is not injective on the T-fixed part");
    for z in &fixed {
        assert_eq!(k.t_map(z), *z);
        assert!(k.in_l(z));
    }
}

#[test]
fn traces_from_t_fixed_elements() {
    for n in [1u64, 3] {
        check_traces(&radford_hn(&HnSpec::new(n).unwrap()).unwrap());
    }
    check_traces(&cyclic_ribbon(5, 1).unwrap().ribbon);
}

#[test]
fn single_z_evaluates_unit_on_empty_link() {
    let c = cyclic_ribbon(5, 1).unwrap();
    let one = c.ribbon.hopf.one();
    assert!(tau_link(&c.ribbon, &kirbylab::links::LinkDiagram::empty(), &one).unwrap().is_one());
}
