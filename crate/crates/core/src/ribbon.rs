//! Quasitriangular and ribbon structure on a [`HopfAlgebra`]: R-matrix, twist, Drinfeld
//! element, special grouplike element, and quantum traces of representations.

use thiserror::Error;

use crate::field::Fe;
use crate::hopf::{AxiomReport, Elem, HopfAlgebra, HopfError, Tensor};
use crate::linalg::{self, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("{0} is not invertible")]
    NotInvertible(&'static str),
    #[error("axiom failed: {0}")]
    AxiomFailed(String),
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
}

/// Check that `r` is invertible and return its inverse in H⊗H.
fn tensor2_inverse(h: &HopfAlgebra, r: &Tensor) -> Option<Tensor> {
    // The candidate (S⊗id)(R) is the inverse for any genuine R-matrix; fall back to a solve.
    let cand = h.tensor_map_slot(r, 0, |i| h.antipode_basis(i).clone());
    let one = Tensor::pure(&[&h.one(), &h.one()]);
    if h.tensor_mul(r, &cand) == one && h.tensor_mul(&cand, r) == one {
        return Some(cand);
    }
    let d = h.dim();
    let n = d * d;
    let f = h.field();
    let mut m = Matrix::zeros(f, n, n);
    for p in 0..d {
        for q in 0..d {
            let col = h.tensor_mul(r, &Tensor::pure(&[&h.basis(p), &h.basis(q)]));
            for (k, c) in &col.terms {
                m.set(k[0] * d + k[1], p * d + q, c.clone());
            }
        }
    }
    let inv = m.inverse(f)?;
    let one_flat = linalg::dense_from_sparse(f, &h.flatten2(&one), n);
    let sol = inv.apply(&one_flat);
    Some(h.unflatten2(&linalg::sparse_from_dense(&sol)))
}

fn embed(r: &Tensor, slots: [usize; 2], arity: usize, unit_idx: &[(usize, Fe)]) -> Tensor {
    // Place the two legs of r in `slots` of an arity-3 tensor, with the unit elsewhere.
    let mut out = Tensor::zero(arity);
    for (idx, c) in &r.terms {
        let free: Vec<usize> = (0..arity).filter(|s| !slots.contains(s)).collect();
        let mut partial: Vec<(Vec<usize>, Fe)> = vec![(vec![usize::MAX; arity], c.clone())];
        for &s in &free {
            let mut next = Vec::new();
            for (i, k) in &partial {
                for (u, uc) in unit_idx {
                    let mut i2 = i.clone();
                    i2[s] = *u;
                    next.push((i2, k * uc));
                }
            }
            partial = next;
        }
        for (mut i, k) in partial {
            i[slots[0]] = idx[0];
            i[slots[1]] = idx[1];
            out.add_term(i, &k);
        }
    }
    out
}

fn unit_terms(h: &HopfAlgebra) -> Vec<(usize, Fe)> {
    h.one().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Verify the quasitriangular axioms for `r`.
pub fn verify_quasitriangular(h: &HopfAlgebra, r: &Tensor) -> Result<AxiomReport, RibbonError> {
    let r_inv = tensor2_inverse(h, r).ok_or(RibbonError::NotInvertible("R"))?;
    let d = h.dim();
    let ut = unit_terms(h);
    let mut checks = Vec::new();

    let flip = [1usize, 0];
    let almost_cocomm = (0..d).all(|i| {
        let dx = h.comult(&h.basis(i));
        h.tensor_mul(r, &dx) == h.tensor_mul(&dx.permute(&flip), r)
    });
    checks.push(("R Delta(x) = sigma Delta(x) R".to_string(), almost_cocomm));

    let r12 = embed(r, [0, 1], 3, &ut);
    let r13 = embed(r, [0, 2], 3, &ut);
    let r23 = embed(r, [1, 2], 3, &ut);
    // (Δ⊗id)R = R13 R23
    let delta_left = {
        let mut t = Tensor::zero(3);
        for (idx, c) in &r.terms {
            for ((p, q), k) in h.comult_basis(idx[0]) {
                t.add_term(vec![*p, *q, idx[1]], &(c * k));
            }
        }
        t
    };
    checks.push(("(Delta x id)(R) = R13 R23".to_string(), delta_left == h.tensor_mul(&r13, &r23)));
    let delta_right = {
        let mut t = Tensor::zero(3);
        for (idx, c) in &r.terms {
            for ((p, q), k) in h.comult_basis(idx[1]) {
                t.add_term(vec![idx[0], *p, *q], &(c * k));
            }
        }
        t
    };
    checks.push(("(id x Delta)(R) = R13 R12".to_string(), delta_right == h.tensor_mul(&r13, &r12)));

    let eps_left = {
        let mut e = h.zero();
        for (idx, c) in &r.terms {
            let k = c * &h.counit_form()[idx[0]];
            e[idx[1]] = &e[idx[1]] + &k;
        }
        e
    };
    let eps_right = {
        let mut e = h.zero();
        for (idx, c) in &r.terms {
            let k = c * &h.counit_form()[idx[1]];
            e[idx[0]] = &e[idx[0]] + &k;
        }
        e
    };
    checks.push(("(eps x id)(R) = (id x eps)(R) = 1".to_string(), eps_left == h.one() && eps_right == h.one()));

    let s_id = h.tensor_map_slot(r, 0, |i| h.antipode_basis(i).clone());
    checks.push(("(S x id)(R) = R^-1".to_string(), s_id == r_inv));

    let ybe = h.tensor_mul(&h.tensor_mul(&r23, &r13), &r12) == h.tensor_mul(&h.tensor_mul(&r12, &r13), &r23);
    checks.push(("R23 R13 R12 = R12 R13 R23".to_string(), ybe));
    Ok(AxiomReport { checks })
}

/// u = Σ S(b_i) a_i for R = Σ a_i ⊗ b_i.
pub fn drinfeld_u(h: &HopfAlgebra, r: &Tensor) -> Elem {
    let mut u = h.zero();
    for (idx, c) in &r.terms {
        let t = h.mul(&h.antipode(&h.basis(idx[1])), &h.basis(idx[0]));
        u = h.add(&u, &h.scale(&t, c));
    }
    u
}

/// u^{-1} = Σ b_i S²(a_i).
pub fn drinfeld_u_inv(h: &HopfAlgebra, r: &Tensor) -> Elem {
    let mut u = h.zero();
    for (idx, c) in &r.terms {
        let t = h.mul(&h.basis(idx[1]), &h.antipode_pow(&h.basis(idx[0]), 2));
        u = h.add(&u, &h.scale(&t, c));
    }
    u
}

/// Verify the ribbon axioms for the twist `theta`.
pub fn verify_ribbon(h: &HopfAlgebra, r: &Tensor, theta: &Elem) -> AxiomReport {
    let d = h.dim();
    let mut checks = Vec::new();
    let central = (0..d).all(|i| {
        let x = h.basis(i);
        h.mul(theta, &x) == h.mul(&x, theta)
    });
    checks.push(("theta central".to_string(), central));
    checks.push(("S(theta) = theta".to_string(), &h.antipode(theta) == theta));
    let r21 = r.permute(&[1, 0]);
    let tt = Tensor::pure(&[theta, theta]);
    let rhs = h.tensor_mul(&h.tensor_mul(&tt, &r21), r);
    checks.push(("Delta(theta) = (theta x theta) R21 R".to_string(), h.comult(theta) == rhs));
    checks.push(("eps(theta) = 1".to_string(), h.counit(theta).is_one()));
    let u = drinfeld_u(h, r);
    let t2 = h.mul(theta, theta);
    let prod = h.mul_all(&[&t2, &u, &h.antipode(&u)]);
    checks.push(("theta^-2 = u S(u)".to_string(), prod == h.one()));
    AxiomReport { checks }
}

/// A verified ribbon Hopf algebra with derived elements.
#[derive(Clone, Debug)]
pub struct RibbonHopf {
    pub hopf: HopfAlgebra,
    pub r: Tensor,
    pub r_inv: Tensor,
    pub theta: Elem,
    pub theta_inv: Elem,
    pub u: Elem,
    pub u_inv: Elem,
    /// Special grouplike G = θu.
    pub g_special: Elem,
    pub g_special_inv: Elem,
    /// h_ν = (id⊗ν)(R).
    pub h_nu: Elem,
}

impl RibbonHopf {
    /// Verify (H, R, θ) and compute u, G and h_ν, checking their defining identities.
    pub fn new(hopf: HopfAlgebra, r: Tensor, theta: Elem) -> Result<RibbonHopf, RibbonError> {
        let qt = verify_quasitriangular(&hopf, &r)?;
        if !qt.all_pass() {
            return Err(RibbonError::AxiomFailed(qt.failed().join(", ")));
        }
        let rb = verify_ribbon(&hopf, &r, &theta);
        if !rb.all_pass() {
            return Err(RibbonError::AxiomFailed(rb.failed().join(", ")));
        }
        let h = &hopf;
        let r_inv = tensor2_inverse(h, &r).ok_or(RibbonError::NotInvertible("R"))?;
        let u = drinfeld_u(h, &r);
        let u_inv = drinfeld_u_inv(h, &r);
        if h.mul(&u, &u_inv) != h.one() || h.mul(&u_inv, &u) != h.one() {
            return Err(RibbonError::ConsistencyFailure("u u^-1 = 1".into()));
        }
        for i in 0..h.dim() {
            let x = h.basis(i);
            if h.antipode_pow(&x, 2) != h.mul_all(&[&u, &x, &u_inv]) {
                return Err(RibbonError::ConsistencyFailure("S^2(x) = u x u^-1".into()));
            }
        }
        let theta_inv = h.inverse(&theta).ok_or(RibbonError::NotInvertible("theta"))?;
        let g_special = h.mul(&theta, &u);
        let g_special_inv = h.mul(&u_inv, &theta_inv);
        let nu = h.distinguished_character().clone();
        let mut h_nu = h.zero();
        for (idx, c) in &r.terms {
            let k = c * &nu[idx[1]];
            h_nu[idx[0]] = &h_nu[idx[0]] + &k;
        }
        let out = RibbonHopf { hopf, r, r_inv, theta, theta_inv, u, u_inv, g_special, g_special_inv, h_nu };
        out.check_special_grouplike()?;
        Ok(out)
    }

    fn check_special_grouplike(&self) -> Result<(), RibbonError> {
        let h = &self.hopf;
        let gg = &self.g_special;
        let gi = &self.g_special_inv;
        let fail = |m: &str| Err(RibbonError::ConsistencyFailure(m.to_string()));
        if !h.is_grouplike(gg) {
            return fail("G grouplike");
        }
        if h.antipode(&self.u) != h.mul_all(&[gi, &self.u, gi]) {
            return fail("S(u) = G^-1 u G^-1");
        }
        for i in 0..h.dim() {
            let x = h.basis(i);
            if h.antipode_pow(&x, 2) != h.mul_all(&[gg, &x, gi]) {
                return fail("S^2(x) = G x G^-1");
            }
            if h.lambda(&h.antipode(&x)) != h.lambda(&h.mul_all(&[gg, gg, &self.h_nu, &x])) {
                return fail("lambda(S(x)) = lambda(G^2 h_nu x)");
            }
        }
        if h.distinguished_grouplike() != &h.mul_all(&[gg, gg, &self.h_nu]) {
            return fail("g = G^2 h_nu");
        }
        if !h.is_grouplike(&self.h_nu) {
            return fail("h_nu grouplike");
        }
        Ok(())
    }

    pub fn special_grouplike(&self) -> &Elem {
        &self.g_special
    }

    /// G^k for any integer k.
    pub fn g_pow(&self, k: i64) -> Elem {
        let base = if k >= 0 { &self.g_special } else { &self.g_special_inv };
        self.hopf.pow(base, k.unsigned_abs())
    }

    /// θ^k for any integer k.
    pub fn theta_pow(&self, k: i64) -> Elem {
        let base = if k >= 0 { &self.theta } else { &self.theta_inv };
        self.hopf.pow(base, k.unsigned_abs())
    }

    pub fn quantum_trace(&self, rho: &Rep, f: &Matrix) -> Fe {
        rho.act(&self.hopf, &self.g_special).mul(f).trace(self.hopf.field())
    }

    pub fn quantum_dim(&self, rho: &Rep) -> Fe {
        rho.act(&self.hopf, &self.g_special).trace(self.hopf.field())
    }
}

/// A finite-dimensional left module given by the matrices of the basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub dim: usize,
    pub mats: Vec<Matrix>,
}

impl Rep {
    /// Check ρ(e_i)ρ(e_j) = ρ(e_i e_j) and ρ(1) = id.
    pub fn new(h: &HopfAlgebra, mats: Vec<Matrix>) -> Result<Rep, RibbonError> {
        if mats.len() != h.dim() {
            return Err(RibbonError::NotARepresentation("wrong number of matrices".into()));
        }
        let dim = mats.first().map(|m| m.n).unwrap_or(0);
        if mats.iter().any(|m| m.n != dim || m.m != dim) {
            return Err(RibbonError::NotARepresentation("matrix sizes differ".into()));
        }
        let rep = Rep { dim, mats };
        let f = h.field();
        if rep.act(h, &h.one()) != Matrix::identity(f, dim) {
            return Err(RibbonError::NotARepresentation("rho(1) != id".into()));
        }
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let prod = linalg::dense_from_sparse(f, h.basis_product(i, j), h.dim());
                if rep.mats[i].mul(&rep.mats[j]) != rep.act(h, &prod) {
                    return Err(RibbonError::NotARepresentation(format!("rho(e{i})rho(e{j}) != rho(e{i}e{j})")));
                }
            }
        }
        Ok(rep)
    }

    pub fn act(&self, h: &HopfAlgebra, x: &Elem) -> Matrix {
        let f = h.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.data.iter_mut().zip(&self.mats[i].data) {
                if !m.is_zero() {
                    *o = &*o + &(c * m);
                }
            }
        }
        out
    }

    /// The regular representation (left multiplication).
    pub fn regular(h: &HopfAlgebra) -> Rep {
        let d = h.dim();
        let f = h.field();
        let mats = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(f, d, d);
                for j in 0..d {
                    for (k, c) in h.basis_product(i, j) {
                        m.set(*k, j, c.clone());
                    }
                }
                m
            })
            .collect();
        Rep { dim: d, mats }
    }

    /// One-dimensional representation from an algebra map H → 𝕜.
    pub fn character(h: &HopfAlgebra, chi: &[Fe]) -> Result<Rep, RibbonError> {
        let mats = chi.iter().map(|c| Matrix { n: 1, m: 1, data: vec![c.clone()] }).collect();
        Rep::new(h, mats)
    }

    pub fn trivial(h: &HopfAlgebra) -> Rep {
        Rep::character(h, h.counit_form()).expect("counit is a character")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::hopf::group_algebra_cyclic;

    #[test]
    fn trivial_r_on_group_algebra() {
        let q = Field::rationals();
        let h = HopfAlgebra::new(group_algebra_cyclic(&q, 3)).unwrap();
        let r = Tensor::pure(&[&h.one(), &h.one()]);
        assert!(verify_quasitriangular(&h, &r).unwrap().all_pass());
        assert_eq!(drinfeld_u(&h, &r), h.one());
        let rh = RibbonHopf::new(h.clone(), r, h.one()).unwrap();
        assert_eq!(rh.quantum_dim(&Rep::trivial(&rh.hopf)), q.one());
        assert_eq!(rh.quantum_dim(&Rep::regular(&rh.hopf)), q.int(3));
    }

    #[test]
    fn bad_representation_rejected() {
        let q = Field::rationals();
        let h = HopfAlgebra::new(group_algebra_cyclic(&q, 3)).unwrap();
        // g ↦ 2 is not a character of ℤ/3 over ℚ
        let chi = vec![q.one(), q.int(2), q.int(4)];
        assert!(matches!(Rep::character(&h, &chi), Err(RibbonError::NotARepresentation(_))));
    }
}
