//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! `cargo test --test acceptance` (or `cargo test --workspace`, which includes it).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use kirbylab::evaluator::{oracle_eval, rt_invariant, tau_link, tau_manifold, theta_pm};
use kirbylab::families::{cyclic_ribbon, divisors, gauss_theta, hn_known_data, hn_zd, radford_hn, HnSpec};
use kirbylab::field::Fe;
use kirbylab::fusion::{closed_subsets, eps_b, kirby_necessary, m_b, pointed_cyclic_trivial, s_b, slice_b, unit_b};
use kirbylab::hopf::Elem;
use kirbylab::kirby::{same_span_elems, same_span_tensors, Kirby};
use kirbylab::linalg::{rank, sparse_from_dense};
use kirbylab::links::{
    chain, disjoint_union, handle_slide, hopf_link, stabilize, trefoil, unknot, LinkDiagram, MorseEvent,
};
use kirbylab::ribbon::RibbonHopf;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hn(n: u64) -> (HnSpec, RibbonHopf) {
    let spec = HnSpec::new(n).expect("odd n");
    let rh = radford_hn(&spec).expect("H_n is ribbon");
    (spec, rh)
}

/// S(Λ) followed by every z_d.
fn named_zs(spec: &HnSpec, rh: &RibbonHopf) -> Vec<(String, Elem)> {
    let h = &rh.hopf;
    let mut zs = vec![("S(Lambda)".to_string(), h.antipode(h.left_integral()))];
    zs.extend(divisors(spec.n).into_iter().map(|d| (format!("z_{d}"), hn_zd(spec, d).unwrap())));
    zs
}

fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut v: Vec<(String, LinkDiagram)> = (-2..=2).map(|f| (format!("unknot({f})"), unknot(f))).collect();
    v.push(("hopf(0,0)".into(), hopf_link(0, 0)));
    v.push(("hopf(1,-1)".into(), hopf_link(1, -1)));
    v.push(("hopf(-1,0)".into(), hopf_link(-1, 0)));
    v.push(("trefoil(+)".into(), trefoil(1)));
    v.push(("trefoil(-)".into(), trefoil(-1)));
    v.push(("chain(1,0,-1)".into(), chain(3, &[1, 0, -1])));
    v.push(("unknot(1)+unknot(-1)".into(), disjoint_union(&unknot(1), &unknot(-1))));
    use MorseEvent::*;
    let negative_hopf =
        LinkDiagram::new(vec![Cup(0), Cup(2), Crossing { pos: 1, sign: -1 }, Crossing { pos: 1, sign: -1 }, Cap(0), Cap(0)])
            .unwrap();
    v.push(("hopf(-)".into(), negative_hopf));
    v
}

fn structure() -> Outcome {
    for n in [1u64, 3, 5] {
        let (spec, rh) = hn(n);
        let h = &rh.hopf;
        let known = hn_known_data(&spec);
        ensure(h.left_integral() == &known.left_integral, || format!("n={n}: left integral"))?;
        ensure(h.right_cointegral() == &known.right_cointegral, || format!("n={n}: right cointegral"))?;
        ensure(h.distinguished_grouplike() == &known.g, || format!("n={n}: g"))?;
        ensure(h.distinguished_character() == &known.nu, || format!("n={n}: nu"))?;
        ensure(rh.special_grouplike() == &known.special_grouplike, || format!("n={n}: G"))?;
        ensure(rh.h_nu == known.h_nu, || format!("n={n}: h_nu"))?;
        let k = Kirby::new(&rh);
        for i in 0..h.dim() {
            ensure(k.t_map(&h.basis(i)) == known.t_images[i], || format!("n={n}: T on basis {i}"))?;
        }
        let s = &k.subspaces;
        ensure(same_span_elems(h, &s.l_basis, &known.l_basis), || format!("n={n}: L"))?;
        ensure(same_span_elems(h, &s.z_basis, &known.z_basis), || format!("n={n}: Z"))?;
        ensure(same_span_elems(h, &s.n_basis, &known.n_basis), || format!("n={n}: N"))?;
        ensure(same_span_tensors(h, &s.v2_basis, &known.v2_basis), || format!("n={n}: V2"))?;
        ensure(s.v2_basis.len() as u64 == 5 * n * n, || format!("n={n}: dim V2 = {}", s.v2_basis.len()))?;
    }
    Ok("n = 1, 3, 5; integrals, g, nu, G, h_nu, T, L, Z, N, V2 (dim 5n^2)".into())
}

fn kirby_sets() -> Outcome {
    let mut counts = Vec::new();
    for n in [1u64, 3, 5] {
        let (spec, rh) = hn(n);
        let h = &rh.hopf;
        let f = h.field();
        let k = Kirby::new(&rh);
        let ds = divisors(n);
        for &d in &ds {
            let z = hn_zd(&spec, d).unwrap();
            ensure(k.is_kirby(&z).is_normalized(), || format!("n={n}: z_{d} rejected"))?;
            for alpha in [1, 2] {
                for w in &k.subspaces.n_basis {
                    let zw = h.add(&h.scale(&z, &f.int(alpha)), w);
                    ensure(k.is_kirby(&zw).is_normalized(), || format!("n={n}: {alpha} z_{d} + w rejected"))?;
                }
            }
        }
        ensure(!k.is_kirby(&h.one()).is_kirby(), || format!("n={n}: 1 accepted"))?;
        ensure(k.is_kirby(&h.antipode(h.left_integral())).is_normalized(), || format!("n={n}: S(Lambda) rejected"))?;
        // families: z_d modulo scalars and N, told apart by the lens spaces L(p,1)
        let mut rows: Vec<_> = k.subspaces.n_basis.iter().map(|v| sparse_from_dense(v)).collect();
        rows.extend(ds.iter().map(|&d| sparse_from_dense(&hn_zd(&spec, d).unwrap())));
        let independent = rank(f, h.dim(), rows) == k.subspaces.n_basis.len() + ds.len();
        ensure(independent, || format!("n={n}: the z_d are dependent modulo N"))?;
        let mut profiles: Vec<Vec<Fe>> = Vec::new();
        for &d in &ds {
            let z = hn_zd(&spec, d).unwrap();
            let profile = (-3..=3).map(|p| tau_manifold(&k, &unknot(p), &z).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
            if !profiles.contains(&profile) {
                profiles.push(profile);
            }
        }
        ensure(profiles.len() == ds.len(), || format!("n={n}: {} distinct families, D(n) = {}", profiles.len(), ds.len()))?;
        counts.push(format!("D({n})={}", ds.len()));
    }
    Ok(format!("z_d, alpha z_d + w, S(Lambda) accepted, 1 rejected; families {}", counts.join(" ")))
}

fn gauss_normalizations() -> Outcome {
    let mut checked = 0;
    for n in [1u64, 3, 5] {
        let (spec, rh) = hn(n);
        for d in divisors(n) {
            let (plus, minus) = theta_pm(&rh, &hn_zd(&spec, d).unwrap());
            let (gp, gm) = (gauss_theta(&spec, d, 1).unwrap(), gauss_theta(&spec, d, -1).unwrap());
            ensure(plus == gp && minus == gm, || format!("n={n} d={d}: theta = ({plus}, {minus}), Gauss ({gp}, {gm})"))?;
            ensure(!plus.is_zero() && !minus.is_zero(), || format!("n={n} d={d}: zero normalization"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, d) pairs"))
}

fn oracle_equivalence() -> Outcome {
    let diagrams = corpus();
    let mut evals = 0;
    for n in [1u64, 3] {
        let (spec, rh) = hn(n);
        for (name, l) in &diagrams {
            for (zn, z) in named_zs(&spec, &rh) {
                let bead = tau_link(&rh, l, &z).map_err(|e| e.to_string())?;
                let oracle = oracle_eval(&rh, l, &z).map_err(|e| e.to_string())?;
                ensure(bead == oracle, || format!("H_{n} {name} {zn}: bead {bead}, oracle {oracle}"))?;
                evals += 1;
            }
        }
    }
    Ok(format!("{} diagrams over H_1, H_3; {evals} bead/oracle pairs", diagrams.len()))
}

fn kirby_moves() -> Outcome {
    let mut slides = 0;
    let mut stabs = 0;
    for n in [1u64, 3] {
        let (spec, rh) = hn(n);
        let k = Kirby::new(&rh);
        let mut cases: Vec<(&str, LinkDiagram, usize, usize)> = vec![
            ("hopf(0,0) 0/1", hopf_link(0, 0), 0, 1),
            ("hopf(1,-1) 1/0", hopf_link(1, -1), 1, 0),
            ("unknot(1)+unknot(-1) 0/1", disjoint_union(&unknot(1), &unknot(-1)), 0, 1),
            ("unknot(-1)+unknot(2) 1/0", disjoint_union(&unknot(-1), &unknot(2)), 1, 0),
            ("hopf(-1,1) 0/1", hopf_link(-1, 1), 0, 1),
        ];
        if n == 1 {
            cases.push(("trefoil+unknot(1) 1/0", disjoint_union(&trefoil(1), &unknot(1)), 1, 0));
        }
        let pairs: Vec<(&str, LinkDiagram, LinkDiagram)> =
            cases.into_iter().map(|(name, l, i, j)| (name, handle_slide(&l, i, j).unwrap(), l)).collect();
        for (zn, z) in named_zs(&spec, &rh) {
            let tau = |l: &LinkDiagram| tau_manifold(&k, l, &z).map_err(|e| e.to_string());
            for (name, slid, l) in &pairs {
                ensure(tau(slid)? == tau(l)?, || format!("H_{n} {zn}: slide {name}"))?;
                slides += 1;
            }
            for (name, l) in [("unknot(0)", unknot(0)), ("hopf(0,0)", hopf_link(0, 0)), ("trefoil(-)", trefoil(-1))] {
                let base = tau(&l)?;
                for sign in [1, -1] {
                    ensure(tau(&stabilize(&l, sign))? == base, || format!("H_{n} {zn}: stabilize {name} {sign:+}"))?;
                    stabs += 1;
                }
            }
        }
    }
    Ok(format!("{slides} slide and {stabs} stabilization comparisons over H_1, H_3"))
}

fn known_values() -> Outcome {
    let pieces = [unknot(2), hopf_link(0, 0), trefoil(1), chain(3, &[1, 0, -1])];
    for n in [1u64, 3] {
        let (spec, rh) = hn(n);
        let h = &rh.hopf;
        let k = Kirby::new(&rh);
        for (zn, z) in named_zs(&spec, &rh) {
            let tau = |l: &LinkDiagram| tau_manifold(&k, l, &z).map_err(|e| e.to_string());
            ensure(tau(&unknot(1))?.is_one() && tau(&unknot(-1))?.is_one(), || format!("H_{n} {zn}: S^3"))?;
            let lam_z_theta = h.lambda(&h.mul(&z, &rh.theta));
            let expected = &lam_z_theta.inverse().map_err(|e| e.to_string())? * &h.lambda(&z);
            ensure(tau(&unknot(0))? == expected, || format!("H_{n} {zn}: S^1 x S^2"))?;
            for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
                let joint = tau(&disjoint_union(&pieces[a], &pieces[b]))?;
                ensure(joint == &tau(&pieces[a])? * &tau(&pieces[b])?, || format!("H_{n} {zn}: union {a}+{b}"))?;
            }
        }
    }
    Ok("S^3 = 1, S^1 x S^2 = lambda(z theta)^-1 lambda(z), 4 disjoint unions".into())
}

fn semisimple() -> Outcome {
    let c = cyclic_ribbon(5, 1).map_err(|e| e.to_string())?;
    let rh = &c.ribbon;
    let h = &rh.hopf;
    let k = Kirby::new(rh);
    let one = h.one();
    ensure(k.is_kirby(&one).is_normalized(), || "1 is not a normalized Kirby element".into())?;
    let chars = c.characters();
    for p in -2..=3 {
        let l = unknot(p);
        let rt = rt_invariant(rh, &chars, &l).map_err(|e| e.to_string())?;
        let tau = tau_manifold(&k, &l, &one).map_err(|e| e.to_string())?;
        ensure(rt == tau, || format!("unknot({p}): rt {rt}, tau {tau}"))?;
    }
    let z = k.z_premodular(&chars).map_err(|e| e.to_string())?;
    let scalar = h.counit(&z);
    ensure(!scalar.is_zero() && z == h.scale(&one, &scalar), || "sum of dim_q z_V is not a nonzero multiple of 1".into())?;
    Ok(format!("rt = tau(1) on unknot(-2..3); sum dim_q z_V = {scalar} * 1"))
}

fn fusion_calculus() -> Outcome {
    let d = pointed_cyclic_trivial(6);
    let f = &d.field;
    let n = d.len();
    let subgroups: Vec<Vec<usize>> = vec![vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect()];
    let closed = closed_subsets(&d).map_err(|e| e.to_string())?;
    ensure(closed == subgroups, || format!("closed subsets {closed:?}"))?;
    for mask in 1u32..64 {
        let support: Vec<usize> = (0..6).filter(|l| mask & (1 << l) != 0).collect();
        for scale in [1, 2, -3] {
            let alpha: Vec<Fe> = d.subset_sum(&support).iter().map(|x| x * &f.int(scale)).collect();
            let passed = kirby_necessary(&d, &alpha).passed();
            ensure(passed == subgroups.contains(&support), || format!("support {support:?} x {scale}: {passed}"))?;
        }
    }
    for l in 0..n {
        let e = d.basis(l);
        ensure(s_b(&d, &e) == d.basis(d.dual[l]), || format!("S_B on {l}"))?;
        ensure(m_b(&d, &unit_b(&d), &e) == e && m_b(&d, &e, &unit_b(&d)) == e, || format!("unit on {l}"))?;
        ensure(eps_b(&d, &e) == d.dims[l], || format!("eps on {l}"))?;
        for m in 0..n {
            let em = d.basis(m);
            let prod = m_b(&d, &e, &em);
            ensure(prod == d.basis((l + m) % n), || format!("m_B({l},{m})"))?;
            ensure(eps_b(&d, &prod) == &d.dims[l] * &d.dims[m], || format!("eps(m_B({l},{m}))"))?;
            ensure(s_b(&d, &prod) == m_b(&d, &s_b(&d, &em), &s_b(&d, &e)), || format!("S_B(m_B({l},{m}))"))?;
            let slice = if l == m { e.clone() } else { vec![f.zero(); n] };
            ensure(slice_b(&d, &e, m) == slice, || format!("slice({l},{m})"))?;
        }
    }
    Ok("4 subgroups; 63 supports x 3 scalars; basis identities on 6 labels".into())
}

fn check_traces(name: &str, rh: &RibbonHopf) -> Result<usize, String> {
    let h = &rh.hopf;
    let k = Kirby::new(rh);
    let fixed = k.t_fixed_basis();
    let forms = k.traces_basis().map_err(|e| e.to_string())?;
    for (i, t) in forms.iter().enumerate() {
        for x in 0..h.dim() {
            let bx = h.basis(x);
            ensure(h.pair(t, &h.antipode(&bx)) == h.pair(t, &bx), || format!("{name}: t{i}(S e{x})"))?;
            for y in 0..h.dim() {
                let by = h.basis(y);
                ensure(h.pair(t, &h.mul(&bx, &by)) == h.pair(t, &h.mul(&by, &bx)), || format!("{name}: t{i}(e{x} e{y})"))?;
            }
        }
    }
    let r = rank(h.field(), h.dim(), forms.iter().map(|t| sparse_from_dense(t)));
    ensure(!fixed.is_empty() && r == fixed.len(), || format!("{name}: rank {r} on {} fixed elements", fixed.len()))?;
    Ok(forms.len())
}

fn traces() -> Outcome {
    let mut dims = Vec::new();
    for n in [1u64, 3] {
        dims.push(format!("H_{n}: {}", check_traces(&format!("H_{n}"), &hn(n).1)?));
    }
    let c = cyclic_ribbon(5, 1).map_err(|e| e.to_string())?;
    dims.push(format!("cyclic(5): {}", check_traces("cyclic(5)", &c.ribbon)?));
    Ok(format!("symmetric, S-invariant, injective ({})", dims.join(", ")))
}

fn robustness() -> Outcome {
    let diagrams = corpus();
    let mut evals = 0;
    for n in [1u64, 3] {
        let (spec, rh) = hn(n);
        let h = &rh.hopf;
        let f = h.field();
        let k = Kirby::new(&rh);
        for (zn, z) in named_zs(&spec, &rh) {
            for (name, l) in &diagrams {
                let base = tau_manifold(&k, l, &z).map_err(|e| e.to_string())?;
                for scale in [2, 3] {
                    for w in &k.subspaces.n_basis {
                        let shifted = h.add(&h.scale(&z, &f.int(scale)), w);
                        let v = tau_manifold(&k, l, &shifted).map_err(|e| e.to_string())?;
                        ensure(v == base, || format!("H_{n} {name}: {scale} {zn} + w gives {v}, expected {base}"))?;
                        evals += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{evals} rescaled and shifted evaluations over the oracle corpus"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("H_n structure", structure),
        ("Kirby sets for H_n", kirby_sets),
        ("Gauss normalizations", gauss_normalizations),
        ("oracle equivalence", oracle_equivalence),
        ("Kirby-move invariance", kirby_moves),
        ("known manifold values", known_values),
        ("semisimple coincidence", semisimple),
        ("fusion calculus", fusion_calculus),
        ("traces", traces),
        ("invariant robustness", robustness),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed in {:.1}s", 10 - failures, start.elapsed().as_secs_f64());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
