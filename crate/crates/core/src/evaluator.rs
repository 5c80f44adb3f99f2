//! Link and 3-manifold invariants from a ribbon Hopf algebra and a Kirby element.
//!
//! `tau_link` uses the bead algorithm: every crossing puts one tensor leg of R (or of its
//! inverse) on each of its two strands, beads are slid along each component to a single
//! concentration point, and each component is closed off with λ(z G^{d+1} ·), d being its
//! Whitney degree. `oracle_eval` computes the same number independently, as a composite of
//! evaluation, coevaluation and braiding maps on tensor powers of the regular module.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::field::Fe;
use crate::hopf::{Elem, HopfAlgebra};
use crate::kirby::{self, Kirby};
use crate::linalg::{Matrix, SparseVec};
use crate::links::{Incidence, LinkDiagram, MorseEvent};
use crate::ribbon::{Rep, RibbonHopf};

/// Default cap on the diagram width accepted by the tensor-network evaluators.
pub const DEFAULT_WIDTH_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("z is not in L(H)")]
    NotInL,
    #[error("z is not a normalized Kirby element")]
    NotNormalizedKirby,
    #[error("diagram width {width} exceeds cap {cap}")]
    WidthExceeded { width: usize, cap: usize },
    #[error("a normalization sum vanishes")]
    DeltaVanishes,
    #[error("module {0} does not have a scalar twist")]
    NotScalarModule(usize),
    #[error("expected {expected} entries, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("event {0} is not a clockwise cup of the component")]
    BadConcentration(usize),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
}

/// Width cap from `KIRBYLAB_WIDTH_CAP`, or the default.
pub fn width_cap() -> usize {
    std::env::var("KIRBYLAB_WIDTH_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_WIDTH_CAP)
}

/// R = Σ_k e_k ⊗ b_k, grouped by the first tensor factor.
fn grouped_r(rh: &RibbonHopf) -> Vec<(usize, SparseVec)> {
    let mut g: std::collections::BTreeMap<usize, SparseVec> = Default::default();
    for (idx, c) in &rh.r.terms {
        g.entry(idx[0]).or_default().insert(idx[1], c.clone());
    }
    g.into_iter().filter(|(_, v)| !v.is_empty()).collect()
}

fn to_elem(h: &HopfAlgebra, v: &SparseVec) -> Elem {
    let mut e = h.zero();
    for (i, c) in v {
        e[*i] = c.clone();
    }
    e
}

/// Traversal of `comp` rotated so that it ends at the cup `start` (default: the first cup).
fn rotated_traversal(l: &LinkDiagram, comp: usize, start: Option<usize>) -> Result<Vec<Incidence>, EvalError> {
    let tr = l.traversal(comp);
    let Some(s) = start else { return Ok(tr.to_vec()) };
    let pos = tr
        .iter()
        .position(|inc| matches!(inc, Incidence::Extremum { event, cup: true, ccw: false } if *event == s))
        .ok_or(EvalError::BadConcentration(s))?;
    let mut out = tr[pos + 1..].to_vec();
    out.extend_from_slice(&tr[..=pos]);
    Ok(out)
}

fn check_starts(l: &LinkDiagram, starts: Option<&[usize]>) -> Result<(), EvalError> {
    if let Some(s) = starts {
        if s.len() != l.num_components() {
            return Err(EvalError::Arity { expected: l.num_components(), got: s.len() });
        }
    }
    Ok(())
}

/// One bead: which crossing, which leg of R it carries, and the power of S applied to it.
#[derive(Clone, Copy, Debug)]
struct Bead {
    event: usize,
    /// the leg is the second factor b_k (otherwise the first factor e_k, under S if the
    /// crossing uses R^{-1})
    second_leg: bool,
    inverse: bool,
    power: i64,
}

/// Beads of one component in traversal order and its total G exponent.
fn component_beads(trav: &[Incidence]) -> (Vec<Bead>, i64) {
    let n = trav.len();
    let mut g_after = vec![0i64; n + 1];
    for (pos, inc) in trav.iter().enumerate().rev() {
        let c = match *inc {
            Incidence::Extremum { cup: false, ccw: true, .. } => 1,
            Incidence::Extremum { cup: true, ccw: false, .. } if pos + 1 != n => -1,
            _ => 0,
        };
        g_after[pos] = g_after[pos + 1] + c;
    }
    let mut beads = Vec::new();
    for (pos, inc) in trav.iter().enumerate() {
        if let Incidence::Crossing { event, strand_a, over, up } = *inc {
            let a_over = over == strand_a;
            // A over: R, first leg on A. B over: R^{-1} = (S ⊗ id)R, first leg on B.
            let second_leg = if a_over { !strand_a } else { strand_a };
            let power = i64::from(up) - 2 * g_after[pos + 1];
            beads.push(Bead { event, second_leg, inverse: !a_over, power });
        }
    }
    (beads, g_after[0])
}

/// Bead cost of walking `trav` with `open` crossings already pending: Σ r_len^(open count).
fn walk_cost(trav: &[Incidence], open: &mut BTreeSet<usize>, r_len: f64) -> f64 {
    let mut cost = 0.0;
    for inc in trav {
        if let Incidence::Crossing { event, .. } = inc {
            if !open.remove(event) {
                open.insert(*event);
            }
            cost += r_len.powi(open.len() as i32);
        }
    }
    cost
}

/// Component order and rotated traversals for the bead algorithm.
///
/// The value does not depend on the order or on the concentration cups, so when `starts`
/// is absent each component is cut at the clockwise cup that keeps the fewest crossings
/// open, and for up to five components every order is tried.
fn bead_schedule(
    l: &LinkDiagram,
    starts: Option<&[usize]>,
    r_len: usize,
) -> Result<Vec<(usize, Vec<Incidence>)>, EvalError> {
    let n = l.num_components();
    let mut candidates: Vec<Vec<Vec<Incidence>>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut cands = vec![rotated_traversal(l, c, starts.map(|s| s[c]))?];
        if starts.is_none() {
            for inc in l.traversal(c) {
                if let Incidence::Extremum { event, cup: true, ccw: false } = *inc {
                    cands.push(rotated_traversal(l, c, Some(event))?);
                }
            }
        }
        candidates.push(cands);
    }
    let mut orders: Vec<Vec<usize>> = vec![(0..n).collect()];
    if (2..=5).contains(&n) {
        orders = permutations(n);
    }
    let rl = r_len.max(1) as f64;
    let mut best: Option<(f64, Vec<(usize, Vec<Incidence>)>)> = None;
    for order in orders {
        let mut open = BTreeSet::new();
        let mut total = 0.0;
        let mut plan = Vec::with_capacity(n);
        for &c in &order {
            let (pick, cost) = candidates[c]
                .iter()
                .enumerate()
                .map(|(i, t)| (i, walk_cost(t, &mut open.clone(), rl)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("at least one traversal");
            walk_cost(&candidates[c][pick], &mut open, rl);
            total += cost;
            plan.push((c, candidates[c][pick].clone()));
        }
        if best.as_ref().map_or(true, |(b, _)| total < *b) {
            best = Some((total, plan));
        }
    }
    Ok(best.map(|(_, p)| p).unwrap_or_default())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Open crossings as (event, R-term) pairs, sorted by event.
type Key = Vec<(usize, usize)>;

/// Σ_k Π_i λ(z G^{d_i+1} v_i^k) by the bead algorithm, with optional concentration cups.
///
/// Components are multiplied out one at a time. The R-terms chosen at crossings whose
/// other bead lies on a later component are carried in the state key; memory stays
/// bounded by (open crossings) × dim H.
pub fn tau_link_at(rh: &RibbonHopf, l: &LinkDiagram, z: &Elem, starts: Option<&[usize]>) -> Result<Fe, EvalError> {
    let h = &rh.hopf;
    if !kirby::in_l(h, z) {
        return Err(EvalError::NotInL);
    }
    check_starts(l, starts)?;
    let f = h.field();
    let r = grouped_r(rh);
    let degrees = l.whitney_degrees();
    let mut leg_cache: HashMap<(bool, usize, i64), SparseVec> = HashMap::new();
    let mut leg = |b: &Bead, t: usize| -> SparseVec {
        let key = (b.second_leg, t, if b.second_leg { b.power } else { b.power + i64::from(b.inverse) });
        leg_cache
            .entry(key)
            .or_insert_with(|| {
                let base = if b.second_leg { to_elem(h, &r[t].1) } else { h.basis(r[t].0) };
                crate::linalg::sparse_from_dense(&h.antipode_pow(&base, key.2))
            })
            .clone()
    };
    let unit = crate::linalg::sparse_from_dense(&h.one());
    let mut outer: HashMap<Key, Fe> = HashMap::from([(vec![], f.one())]);
    for (c, trav) in bead_schedule(l, starts, r.len())? {
        let (beads, g_total) = component_beads(&trav);
        if g_total != degrees[c] + 1 {
            return Err(EvalError::IdentityViolated(format!(
                "component {c}: G exponent {g_total} but Whitney degree {}",
                degrees[c]
            )));
        }
        let zg = h.mul(z, &rh.g_pow(degrees[c] + 1));
        let phi: Vec<Fe> = (0..h.dim()).map(|i| h.lambda(&h.mul(&zg, &h.basis(i)))).collect();
        let mut states: HashMap<(Key, usize), Fe> = HashMap::new();
        for (k, v) in &outer {
            for (i, u) in &unit {
                states.insert((k.clone(), *i), v * u);
            }
        }
        for b in &beads {
            let legs: Vec<(usize, SparseVec)> = (0..r.len()).map(|t| (t, leg(b, t))).collect();
            let mut next: HashMap<(Key, usize), Fe> = HashMap::new();
            for ((key, basis), coef) in states {
                let open = key.iter().position(|(e, _)| *e == b.event);
                let choices: Vec<(usize, Key)> = match open {
                    Some(p) => {
                        let mut k2 = key.clone();
                        let (_, t) = k2.remove(p);
                        vec![(t, k2)]
                    }
                    None => (0..r.len())
                        .map(|t| {
                            let mut k2 = key.clone();
                            let at = k2.partition_point(|x| x.0 < b.event);
                            k2.insert(at, (b.event, t));
                            (t, k2)
                        })
                        .collect(),
                };
                for (t, k2) in choices {
                    for (j, yc) in &legs[t].1 {
                        let cy = &coef * yc;
                        for (m, pc) in h.basis_product(basis, *j) {
                            let e = next.entry((k2.clone(), *m)).or_insert_with(|| f.zero());
                            *e += &(&cy * pc);
                        }
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            states = next;
        }
        let mut closed: HashMap<Key, Fe> = HashMap::new();
        for ((key, basis), coef) in states {
            if phi[basis].is_zero() {
                continue;
            }
            let e = closed.entry(key).or_insert_with(|| f.zero());
            *e += &(&coef * &phi[basis]);
        }
        closed.retain(|_, v| !v.is_zero());
        outer = closed;
    }
    Ok(outer.remove(&vec![]).unwrap_or_else(|| f.zero()))
}

pub fn tau_link(rh: &RibbonHopf, l: &LinkDiagram, z: &Elem) -> Result<Fe, EvalError> {
    tau_link_at(rh, l, z, None)
}

/// (λ(zθ), λ(zθ^{-1})).
pub fn theta_pm(rh: &RibbonHopf, z: &Elem) -> (Fe, Fe) {
    let h = &rh.hopf;
    (h.lambda(&h.mul(z, &rh.theta)), h.lambda(&h.mul(z, &rh.theta_inv)))
}

/// λ(zθ)^{b₋−n} λ(zθ^{-1})^{−b₋} · tau_link, without checking Kirby membership.
pub fn tau_manifold_unchecked(rh: &RibbonHopf, l: &LinkDiagram, z: &Elem) -> Result<Fe, EvalError> {
    let (tp, tm) = theta_pm(rh, z);
    if tp.is_zero() || tm.is_zero() {
        return Err(EvalError::NotNormalizedKirby);
    }
    let ld = l.linking_data();
    let b = ld.b_minus as i64;
    let n = l.num_components() as i64;
    let link = tau_link(rh, l, z)?;
    Ok(&(&tp.pow(b - n) * &tm.pow(-b)) * &link)
}

/// The 3-manifold invariant; z must be a normalized Kirby element.
pub fn tau_manifold(k: &Kirby, l: &LinkDiagram, z: &Elem) -> Result<Fe, EvalError> {
    if !k.is_kirby(z).is_normalized() {
        return Err(EvalError::NotNormalizedKirby);
    }
    tau_manifold_unchecked(k.rh, l, z)
}

/// Module matrices needed to apply R, R^{-1} and G^{±1} on one module and its dual.
struct ModuleOps {
    dim: usize,
    /// ρ(e_k), ρ(b_k), ρ(S(e_k)), ρ(S(b_k)), ρ(S²(e_k)) indexed by R-term
    first: Vec<Matrix>,
    second: Vec<Matrix>,
    first_s: Vec<Matrix>,
    second_s: Vec<Matrix>,
    first_ss: Vec<Matrix>,
    g: Matrix,
    g_inv: Matrix,
}

impl ModuleOps {
    fn new(rh: &RibbonHopf, rho: &Rep, r: &[(usize, SparseVec)]) -> ModuleOps {
        let h = &rh.hopf;
        let act = |e: &Elem| rho.act(h, e);
        let firsts: Vec<Elem> = r.iter().map(|(k, _)| h.basis(*k)).collect();
        let seconds: Vec<Elem> = r.iter().map(|(_, v)| to_elem(h, v)).collect();
        ModuleOps {
            dim: rho.dim,
            first: firsts.iter().map(|e| act(e)).collect(),
            second: seconds.iter().map(|e| act(e)).collect(),
            first_s: firsts.iter().map(|e| act(&h.antipode(e))).collect(),
            second_s: seconds.iter().map(|e| act(&h.antipode(e))).collect(),
            first_ss: firsts.iter().map(|e| act(&h.antipode_pow(e, 2))).collect(),
            g: act(&rh.g_special),
            g_inv: act(&rh.g_special_inv),
        }
    }
}

/// Image of basis vector `x` of a slot under an element whose action matrix on the module is
/// `m` and whose S-image has matrix `ms`; dual slots use h·f = f∘ρ(S(h)).
fn act_on_slot(m: &Matrix, ms: &Matrix, dual: bool, x: usize) -> Vec<(usize, Fe)> {
    if dual {
        (0..ms.m).filter_map(|j| Some((j, ms.get(x, j).clone())).filter(|(_, c)| !c.is_zero())).collect()
    } else {
        (0..m.n).filter_map(|i| Some((i, m.get(i, x).clone())).filter(|(_, c)| !c.is_zero())).collect()
    }
}

/// Closed-diagram evaluation with each component colored by a module. When `concentration`
/// is given, the designated cup of component c is replaced by (φ_c ⊗ u_c) where φ_c is a
/// form and u_c a vector of the (regular) module.
fn network_eval(
    rh: &RibbonHopf,
    l: &LinkDiagram,
    reps: &[Rep],
    concentration: Option<(&[usize], &[(Vec<Fe>, Vec<Fe>)])>,
    cap: usize,
) -> Result<Fe, EvalError> {
    let h = &rh.hopf;
    let f = h.field();
    if reps.len() != l.num_components() {
        return Err(EvalError::Arity { expected: l.num_components(), got: reps.len() });
    }
    if l.max_width() > cap {
        return Err(EvalError::WidthExceeded { width: l.max_width(), cap });
    }
    let r = grouped_r(rh);
    let ops: Vec<ModuleOps> = reps.iter().map(|rho| ModuleOps::new(rh, rho, &r)).collect();
    let mut state: HashMap<Vec<usize>, Fe> = HashMap::from([(vec![], f.one())]);
    for (e, ev) in l.events().iter().enumerate() {
        let below = l.level(e);
        let above = l.level(e + 1);
        let mut next: HashMap<Vec<usize>, Fe> = HashMap::new();
        let mut add = |k: Vec<usize>, v: Fe| {
            let entry = next.entry(k).or_insert_with(|| f.zero());
            *entry += &v;
        };
        match *ev {
            MorseEvent::Cup(p) => {
                let (comp, left_up) = above[p];
                let op = &ops[comp];
                // pairs (left index, right index, coefficient)
                let mut pairs: Vec<(usize, usize, Fe)> = Vec::new();
                let conc = concentration.and_then(|(cups, vecs)| (cups[comp] == e).then(|| &vecs[comp]));
                if let Some((form, vec)) = conc {
                    for (a, fa) in form.iter().enumerate() {
                        for (b, vb) in vec.iter().enumerate() {
                            if !fa.is_zero() && !vb.is_zero() {
                                pairs.push((a, b, fa * vb));
                            }
                        }
                    }
                } else if left_up {
                    // Σ e^k ⊗ G^{-1} e_k
                    for k in 0..op.dim {
                        for m in 0..op.dim {
                            let c = op.g_inv.get(m, k);
                            if !c.is_zero() {
                                pairs.push((k, m, c.clone()));
                            }
                        }
                    }
                } else {
                    for k in 0..op.dim {
                        pairs.push((k, k, f.one()));
                    }
                }
                for (key, v) in &state {
                    for (a, b, c) in &pairs {
                        let mut k2 = key.clone();
                        k2.splice(p..p, [*a, *b]);
                        add(k2, v * c);
                    }
                }
            }
            MorseEvent::Cap(p) => {
                let (comp, left_up) = below[p];
                let op = &ops[comp];
                for (key, v) in &state {
                    let (a, b) = (key[p], key[p + 1]);
                    let c = if left_up {
                        // f ⊗ m ↦ f(m)
                        if a == b {
                            f.one()
                        } else {
                            continue;
                        }
                    } else {
                        // m ⊗ f ↦ f(G m)
                        op.g.get(b, a).clone()
                    };
                    if c.is_zero() {
                        continue;
                    }
                    let mut k2 = key.clone();
                    k2.drain(p..p + 2);
                    add(k2, v * &c);
                }
            }
            MorseEvent::Crossing { pos: p, .. } => {
                let (ca, a_up) = below[p];
                let (cb, b_up) = below[p + 1];
                let a_over = l.a_over(e).expect("crossing");
                let (oa, ob) = (&ops[ca], &ops[cb]);
                for (key, v) in &state {
                    let (x, y) = (key[p], key[p + 1]);
                    for t in 0..r.len() {
                        // A over: Σ b·y ⊗ a·x. B over: Σ S(a)·y ⊗ b·x.
                        let (ys, xs) = if a_over {
                            (
                                act_on_slot(&ob.second[t], &ob.second_s[t], b_up, y),
                                act_on_slot(&oa.first[t], &oa.first_s[t], a_up, x),
                            )
                        } else {
                            (
                                act_on_slot(&ob.first_s[t], &ob.first_ss[t], b_up, y),
                                act_on_slot(&oa.second[t], &oa.second_s[t], a_up, x),
                            )
                        };
                        for (yi, yc) in &ys {
                            let vy = v * yc;
                            for (xi, xc) in &xs {
                                let mut k2 = key.clone();
                                k2[p] = *yi;
                                k2[p + 1] = *xi;
                                add(k2, &vy * xc);
                            }
                        }
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        state = next;
    }
    Ok(state.remove(&vec![]).unwrap_or_else(|| f.zero()))
}

/// Brute-force evaluation in the regular module, paired with (λ·z ⊗ 1) at each
/// concentration cup. Independent of the bead algorithm.
pub fn oracle_eval_at(
    rh: &RibbonHopf,
    l: &LinkDiagram,
    z: &Elem,
    starts: Option<&[usize]>,
    cap: usize,
) -> Result<Fe, EvalError> {
    check_starts(l, starts)?;
    let h = &rh.hopf;
    let n = l.num_components();
    let cups: Vec<usize> = match starts {
        Some(s) => {
            for (c, &e) in s.iter().enumerate() {
                rotated_traversal(l, c, Some(e))?;
            }
            s.to_vec()
        }
        None => l.first_cups().to_vec(),
    };
    let form: Vec<Fe> = (0..h.dim()).map(|i| h.lambda(&h.mul(z, &h.basis(i)))).collect();
    let vecs: Vec<(Vec<Fe>, Vec<Fe>)> = (0..n).map(|_| (form.clone(), h.one())).collect();
    let reps: Vec<Rep> = (0..n).map(|_| Rep::regular(h)).collect();
    network_eval(rh, l, &reps, Some((&cups, &vecs)), cap)
}

pub fn oracle_eval(rh: &RibbonHopf, l: &LinkDiagram, z: &Elem) -> Result<Fe, EvalError> {
    oracle_eval_at(rh, l, z, None, width_cap())
}

/// Evaluation of the diagram with component i colored by `coloring[i]`.
pub fn colored_eval(rh: &RibbonHopf, l: &LinkDiagram, coloring: &[Rep]) -> Result<Fe, EvalError> {
    network_eval(rh, l, coloring, None, width_cap())
}

/// Scalar by which θ acts on a module, if it acts by a scalar.
pub fn twist_scalar(rh: &RibbonHopf, rho: &Rep) -> Option<Fe> {
    let m = rho.act(&rh.hopf, &rh.theta);
    let f = rh.hopf.field();
    if rho.dim == 0 {
        return None;
    }
    let v = m.get(0, 0).clone();
    (0..rho.dim)
        .all(|i| (0..rho.dim).all(|j| *m.get(i, j) == if i == j { v.clone() } else { f.zero() }))
    .then_some(v)
}

/// (Σ v_V dim_q(V)², Σ v_V^{-1} dim_q(V)²) over the given modules.
pub fn delta_pm(rh: &RibbonHopf, modules: &[Rep]) -> Result<(Fe, Fe), EvalError> {
    let f = rh.hopf.field();
    let mut dp = f.zero();
    let mut dm = f.zero();
    for (i, rho) in modules.iter().enumerate() {
        let v = twist_scalar(rh, rho).ok_or(EvalError::NotScalarModule(i))?;
        let d = rh.quantum_dim(rho);
        let d2 = &d * &d;
        dp += &(&v * &d2);
        dm += &(&v.inverse().map_err(|_| EvalError::NotScalarModule(i))? * &d2);
    }
    Ok((dp, dm))
}

/// Reshetikhin–Turaev-type invariant: Δ₊^{b₋−n} Δ₋^{−b₋} Σ_colorings Π dim_q · colored_eval.
pub fn rt_invariant(rh: &RibbonHopf, modules: &[Rep], l: &LinkDiagram) -> Result<Fe, EvalError> {
    let f = rh.hopf.field();
    let (dp, dm) = delta_pm(rh, modules)?;
    if dp.is_zero() || dm.is_zero() {
        return Err(EvalError::DeltaVanishes);
    }
    let n = l.num_components();
    let total = modules.len().pow(n as u32);
    let dims: Vec<Fe> = modules.iter().map(|m| rh.quantum_dim(m)).collect();
    let terms: Vec<Result<Fe, EvalError>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut coloring = Vec::with_capacity(n);
            let mut weight = f.one();
            for _ in 0..n {
                let m = idx % modules.len();
                idx /= modules.len();
                weight = &weight * &dims[m];
                coloring.push(modules[m].clone());
            }
            Ok(&weight * &colored_eval(rh, l, &coloring)?)
        })
        .collect();
    let mut sum = f.zero();
    for t in terms {
        sum += &t?;
    }
    let b = l.linking_data().b_minus as i64;
    Ok(&(&dp.pow(b - n as i64) * &dm.pow(-b)) * &sum)
}
