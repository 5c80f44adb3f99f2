//! Kirby elements of a ribbon Hopf algebra: the subspaces L(H), Z(H), N(H), V_n(H), the map
//! T, the ⋆-product on L(H), exact membership tests for 𝓘(H) and 𝓘(H)^norm, the elements
//! z_V attached to modules, and the parameterization of traces.

use thiserror::Error;

use crate::field::Fe;
use crate::hopf::{Elem, Form, HopfAlgebra, Tensor};
use crate::linalg::{self, Echelon, SparseVec};
use crate::ribbon::{Rep, RibbonError, RibbonHopf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KirbyError {
    #[error("element is not in L(H)")]
    NotInL,
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// Exact bases of the subspaces attached to H.
#[derive(Clone, Debug)]
pub struct KirbySubspaces {
    pub l_basis: Vec<Elem>,
    pub z_basis: Vec<Elem>,
    pub n_basis: Vec<Elem>,
    pub v2_basis: Vec<Tensor>,
}

/// Membership report for a candidate z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirbyCandidate {
    pub z: Elem,
    pub in_l: bool,
    pub condition_a: bool,
    pub condition_b: bool,
    pub theta_plus: Fe,
    pub theta_minus: Fe,
}

impl KirbyCandidate {
    pub fn is_kirby(&self) -> bool {
        self.in_l && self.condition_a && self.condition_b
    }

    pub fn is_normalized(&self) -> bool {
        self.is_kirby() && !self.theta_plus.is_zero() && !self.theta_minus.is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "in_L": self.in_l,
            "cond_a": self.condition_a,
            "cond_b": self.condition_b,
            "theta_plus": self.theta_plus.to_json(),
            "theta_minus": self.theta_minus.to_json(),
            "normalized": self.is_normalized(),
        })
    }
}

fn elems_to_rows(v: &[Elem]) -> Vec<SparseVec> {
    v.iter().map(|e| linalg::sparse_from_dense(e)).collect()
}

/// Kernel of a family of linear maps H^{⊗n} → H^{⊗n}, each given by its action on basis
/// tensors (flat index), intersected over the family.
fn joint_kernel(h: &HopfAlgebra, ncols: usize, maps: Vec<Vec<SparseVec>>) -> Vec<SparseVec> {
    let mut e = Echelon::new(h.field(), ncols);
    for cols in maps {
        // transpose columns into rows
        let mut rows: std::collections::BTreeMap<usize, SparseVec> = Default::default();
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                rows.entry(*i).or_default().insert(j, c.clone());
            }
        }
        for (_, r) in rows {
            e.insert(r);
        }
        if e.rank() == ncols {
            break;
        }
    }
    e.kernel()
}

fn flat_index(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

fn unflat_index(mut k: usize, n: usize, dim: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for s in (0..n).rev() {
        out[s] = k % dim;
        k /= dim;
    }
    out
}

/// Kirby calculus on a fixed ribbon Hopf algebra.
pub struct Kirby<'a> {
    pub rh: &'a RibbonHopf,
    pub subspaces: KirbySubspaces,
}

impl<'a> Kirby<'a> {
    pub fn new(rh: &'a RibbonHopf) -> Kirby<'a> {
        let subspaces = compute_subspaces(rh);
        Kirby { rh, subspaces }
    }

    fn h(&self) -> &HopfAlgebra {
        &self.rh.hopf
    }

    pub fn in_l(&self, z: &Elem) -> bool {
        in_l(self.h(), z)
    }

    pub fn t_map(&self, z: &Elem) -> Elem {
        t_map(self.rh, z)
    }

    /// (λ(zθ), λ(zθ^{-1})).
    pub fn theta_pm(&self, z: &Elem) -> (Fe, Fe) {
        let h = self.h();
        (h.lambda(&h.mul(z, &self.rh.theta)), h.lambda(&h.mul(z, &self.rh.theta_inv)))
    }

    /// λ(T(z)a) = λ(za) for a in the Z-basis.
    pub fn condition_a(&self, z: &Elem) -> bool {
        let h = self.h();
        let tz = self.t_map(z);
        self.subspaces.z_basis.iter().all(|a| h.lambda(&h.mul(&tz, a)) == h.lambda(&h.mul(z, a)))
    }

    /// Σ λ(z x_(1)) λ(z x_(2) y) = Σ λ(z x) λ(z y) over the V₂-basis.
    pub fn condition_b(&self, z: &Elem) -> bool {
        let h = self.h();
        let d = h.dim();
        let zb: Vec<Elem> = (0..d).map(|i| h.mul(z, &h.basis(i))).collect();
        let lz: Vec<Fe> = zb.iter().map(|e| h.lambda(e)).collect();
        self.subspaces.v2_basis.iter().all(|x| {
            let mut lhs = h.field().zero();
            let mut rhs = h.field().zero();
            for (idx, c) in &x.terms {
                let (xi, yi) = (idx[0], idx[1]);
                rhs += &(&(c * &lz[xi]) * &lz[yi]);
                for ((p, q), k) in h.comult_basis(xi) {
                    let left = &lz[*p];
                    if left.is_zero() {
                        continue;
                    }
                    let right = h.lambda(&h.mul(&zb[*q], &h.basis(yi)));
                    lhs += &(&(c * k) * &(left * &right));
                }
            }
            lhs == rhs
        })
    }

    /// Mirrored form of condition (b): Σ λ(z x y_(1)) λ(z y_(2)) = Σ λ(z x) λ(z y).
    pub fn condition_b_mirrored(&self, z: &Elem) -> bool {
        let h = self.h();
        let d = h.dim();
        let zb: Vec<Elem> = (0..d).map(|i| h.mul(z, &h.basis(i))).collect();
        let lz: Vec<Fe> = zb.iter().map(|e| h.lambda(e)).collect();
        self.subspaces.v2_basis.iter().all(|x| {
            let mut lhs = h.field().zero();
            let mut rhs = h.field().zero();
            for (idx, c) in &x.terms {
                let (xi, yi) = (idx[0], idx[1]);
                rhs += &(&(c * &lz[xi]) * &lz[yi]);
                for ((p, q), k) in h.comult_basis(yi) {
                    let right = &lz[*q];
                    if right.is_zero() {
                        continue;
                    }
                    let left = h.lambda(&h.mul(&zb[xi], &h.basis(*p)));
                    lhs += &(&(c * k) * &(&left * right));
                }
            }
            lhs == rhs
        })
    }

    pub fn is_kirby(&self, z: &Elem) -> KirbyCandidate {
        let (tp, tm) = self.theta_pm(z);
        KirbyCandidate {
            z: z.clone(),
            in_l: self.in_l(z),
            condition_a: self.condition_a(z),
            condition_b: self.condition_b(z),
            theta_plus: tp,
            theta_minus: tm,
        }
    }

    /// T(z) = z and λ(z x_(1)) z x_(2) = λ(z x) z for all basis x.
    pub fn sufficient_check(&self, z: &Elem) -> bool {
        let h = self.h();
        if !self.in_l(z) || &self.t_map(z) != z {
            return false;
        }
        (0..h.dim()).all(|i| {
            let mut lhs = h.zero();
            for ((p, q), c) in h.comult_basis(i) {
                let k = c * &h.lambda(&h.mul(z, &h.basis(*p)));
                if !k.is_zero() {
                    lhs = h.add(&lhs, &h.scale(&h.mul(z, &h.basis(*q)), &k));
                }
            }
            lhs == h.scale(z, &h.lambda(&h.mul(z, &h.basis(i))))
        })
    }

    /// x ⋆ z on L(H), computed by four equivalent formulas that must agree.
    pub fn star_product(&self, x: &Elem, z: &Elem) -> Result<Elem, KirbyError> {
        if !self.in_l(x) || !self.in_l(z) {
            return Err(KirbyError::NotInL);
        }
        let h = self.h();
        let lam_pair = |a: &Elem, b: &Elem| h.lambda(&h.mul(a, b));
        let mut f1 = h.zero();
        let mut f2 = h.zero();
        let mut f3 = h.zero();
        let mut f4 = h.zero();
        for (idx, c) in &h.comult(z).terms {
            // λ(x S(z_(2))) z_(1)
            let k = c * &lam_pair(x, &h.antipode(&h.basis(idx[1])));
            f1 = h.add(&f1, &h.scale(&h.basis(idx[0]), &k));
            // λ(z_(1) S^{-1}(x)) z_(2)
            let k = c * &lam_pair(&h.basis(idx[0]), &h.antipode_inv(x));
            f3 = h.add(&f3, &h.scale(&h.basis(idx[1]), &k));
        }
        for (idx, c) in &h.comult(x).terms {
            // λ(z S(x_(2))) x_(1)
            let k = c * &lam_pair(z, &h.antipode(&h.basis(idx[1])));
            f2 = h.add(&f2, &h.scale(&h.basis(idx[0]), &k));
            // λ(x_(1) S^{-1}(z)) x_(2)
            let k = c * &lam_pair(&h.basis(idx[0]), &h.antipode_inv(z));
            f4 = h.add(&f4, &h.scale(&h.basis(idx[1]), &k));
        }
        if f1 != f2 || f1 != f3 || f1 != f4 {
            return Err(KirbyError::IdentityViolated("the four star-product formulas disagree".into()));
        }
        Ok(f1)
    }

    /// z_V with λ(z_V x) = Tr(ρ(G^{-1} x)).
    pub fn z_module(&self, rho: &Rep) -> Result<Elem, KirbyError> {
        z_module(self.rh, rho)
    }

    /// Σ dim_q(V) z_V.
    pub fn z_premodular(&self, reps: &[Rep]) -> Result<Elem, KirbyError> {
        let h = self.h();
        let mut acc = h.zero();
        for rho in reps {
            let zv = self.z_module(rho)?;
            acc = h.add(&acc, &h.scale(&zv, &self.rh.quantum_dim(rho)));
        }
        Ok(acc)
    }

    /// Basis of {z ∈ L(H) | T(z) = z}.
    pub fn t_fixed_basis(&self) -> Vec<Elem> {
        let h = self.h();
        let lb = &self.subspaces.l_basis;
        let f = h.field();
        // Σ c_k (T(l_k) - l_k) = 0
        let cols: Vec<Elem> = lb.iter().map(|l| h.sub(&self.t_map(l), l)).collect();
        let rows: Vec<SparseVec> = (0..h.dim())
            .map(|i| {
                linalg::sparse_from_dense(&cols.iter().map(|c| c[i].clone()).collect::<Vec<_>>())
            })
            .filter(|r| !r.is_empty())
            .collect();
        linalg::kernel(f, lb.len(), rows)
            .into_iter()
            .map(|coef| {
                let mut z = h.zero();
                for (k, c) in coef {
                    z = h.add(&z, &h.scale(&lb[k], &c));
                }
                z
            })
            .collect()
    }

    /// z ↦ λ·(zG).
    pub fn trace_of(&self, z: &Elem) -> Form {
        let h = self.h();
        h.element_to_form(&h.mul(z, &self.rh.g_special))
    }

    /// The traces λ·(zG) for z in the T-fixed part of L(H), each verified to be a trace.
    pub fn traces_basis(&self) -> Result<Vec<Form>, KirbyError> {
        let forms: Vec<Form> = self.t_fixed_basis().iter().map(|z| self.trace_of(z)).collect();
        for t in &forms {
            if !is_trace(self.h(), t) {
                return Err(KirbyError::IdentityViolated("t(xy) = t(yx), t(S(x)) = t(x)".into()));
            }
        }
        Ok(forms)
    }
}

/// t(xy) = t(yx) and t(S(x)) = t(x) on all basis pairs.
pub fn is_trace(h: &HopfAlgebra, t: &Form) -> bool {
    let d = h.dim();
    let f = h.field();
    let val = |v: &SparseVec| {
        let mut acc = f.zero();
        for (i, c) in v {
            acc += &(c * &t[*i]);
        }
        acc
    };
    (0..d).all(|i| (0..d).all(|j| val(h.basis_product(i, j)) == val(h.basis_product(j, i))))
        && (0..d).all(|i| val(h.antipode_basis(i)) == t[i])
}

pub fn in_l(h: &HopfAlgebra, z: &Elem) -> bool {
    (0..h.dim()).all(|i| {
        let x = h.basis(i);
        h.mul(&h.harpoon_nu(&x), z) == h.mul(z, &x)
    })
}

/// T(z) = (S(z) ↼ ν) h_ν.
pub fn t_map(rh: &RibbonHopf, z: &Elem) -> Elem {
    let h = &rh.hopf;
    h.mul(&h.harpoon_nu(&h.antipode(z)), &rh.h_nu)
}

pub fn z_module(rh: &RibbonHopf, rho: &Rep) -> Result<Elem, KirbyError> {
    let h = &rh.hopf;
    let f = h.field();
    let ginv = rho.act(h, &rh.g_special_inv);
    let form: Form = (0..h.dim()).map(|i| ginv.mul(&rho.mats[i]).trace(f)).collect();
    let z = h.form_to_element(&form);
    for i in 0..h.dim() {
        if h.lambda(&h.mul(&z, &h.basis(i))) != form[i] {
            return Err(KirbyError::IdentityViolated("lambda(z_V x) = Tr(G^-1 x)".into()));
        }
    }
    Ok(z)
}

/// ◁-action of a basis element h on a basis tensor of H^{⊗n}:
/// (x_1 ⊗ ... ⊗ x_n) ◁ h = S(h_1) x_1 h_2 ⊗ ... ⊗ S(h_{2n-1}) x_n h_{2n}.
fn right_adjoint_action(h: &HopfAlgebra, hb: usize, x: &[usize]) -> SparseVec {
    let n = x.len();
    let d = h.dim();
    let delta = h.sweedler_power(&h.basis(hb), 2 * n);
    let mut out = SparseVec::new();
    for (idx, c) in &delta.terms {
        let mut acc: Vec<(Vec<usize>, Fe)> = vec![(vec![], c.clone())];
        for k in 0..n {
            let piece = h.mul_all(&[&h.antipode(&h.basis(idx[2 * k])), &h.basis(x[k]), &h.basis(idx[2 * k + 1])]);
            let mut next = Vec::new();
            for (ii, cc) in &acc {
                for (j, v) in piece.iter().enumerate() {
                    if !v.is_zero() {
                        let mut i2 = ii.clone();
                        i2.push(j);
                        next.push((i2, cc * v));
                    }
                }
            }
            acc = next;
        }
        for (ii, cc) in acc {
            let mut single = SparseVec::new();
            single.insert(flat_index(&ii, d), cc);
            linalg::axpy(&mut out, &h.field().one(), &single);
        }
    }
    out
}

/// V_n(H) = {X ∈ H^{⊗n} | X ◁ h = ε(h) X}.
pub fn compute_vn(h: &HopfAlgebra, n: usize) -> Vec<Tensor> {
    let d = h.dim();
    let ncols = d.pow(n as u32);
    let maps: Vec<Vec<SparseVec>> = (0..d)
        .map(|hb| {
            (0..ncols)
                .map(|k| {
                    let x = unflat_index(k, n, d);
                    let mut col = right_adjoint_action(h, hb, &x);
                    let mut id = SparseVec::new();
                    id.insert(k, -&h.counit_form()[hb]);
                    linalg::axpy(&mut col, &h.field().one(), &id);
                    col
                })
                .collect()
        })
        .collect();
    joint_kernel(h, ncols, maps)
        .into_iter()
        .map(|v| {
            let mut t = Tensor::zero(n);
            for (k, c) in v {
                t.add_term(unflat_index(k, n, d), &c);
            }
            t
        })
        .collect()
}

pub fn compute_subspaces(rh: &RibbonHopf) -> KirbySubspaces {
    let h = &rh.hopf;
    let d = h.dim();
    let f = h.field();
    // L(H): (x ↼ ν) z - z x = 0 for all basis x.
    let maps: Vec<Vec<SparseVec>> = (0..d)
        .map(|i| {
            let x = h.basis(i);
            let xn = h.harpoon_nu(&x);
            (0..d)
                .map(|j| {
                    let zj = h.basis(j);
                    linalg::sparse_from_dense(&h.sub(&h.mul(&xn, &zj), &h.mul(&zj, &x)))
                })
                .collect()
        })
        .collect();
    let l_basis: Vec<Elem> =
        joint_kernel(h, d, maps).iter().map(|v| linalg::dense_from_sparse(f, v, d)).collect();
    let z_basis: Vec<Elem> = compute_vn(h, 1)
        .into_iter()
        .map(|t| {
            let mut e = h.zero();
            for (k, c) in t.terms {
                e[k[0]] = c;
            }
            e
        })
        .collect();
    // N(H): z = Σ c_k l_k with λ(z a) = 0 for a in Z.
    let rows: Vec<SparseVec> = z_basis
        .iter()
        .map(|a| {
            linalg::sparse_from_dense(&l_basis.iter().map(|l| h.lambda(&h.mul(l, a))).collect::<Vec<_>>())
        })
        .filter(|r| !r.is_empty())
        .collect();
    let n_basis: Vec<Elem> = linalg::kernel(f, l_basis.len(), rows)
        .into_iter()
        .map(|coef| {
            let mut z = h.zero();
            for (k, c) in coef {
                z = h.add(&z, &h.scale(&l_basis[k], &c));
            }
            z
        })
        .collect();
    let v2_basis = compute_vn(h, 2);
    KirbySubspaces { l_basis, z_basis, n_basis, v2_basis }
}

/// True if the two families of elements span the same subspace of H.
pub fn same_span_elems(h: &HopfAlgebra, a: &[Elem], b: &[Elem]) -> bool {
    linalg::same_span(h.field(), h.dim(), &elems_to_rows(a), &elems_to_rows(b))
}

/// Same, for tensors of arity 2.
pub fn same_span_tensors(h: &HopfAlgebra, a: &[Tensor], b: &[Tensor]) -> bool {
    let fa: Vec<SparseVec> = a.iter().map(|t| h.flatten2(t)).collect();
    let fb: Vec<SparseVec> = b.iter().map(|t| h.flatten2(t)).collect();
    linalg::same_span(h.field(), h.dim() * h.dim(), &fa, &fb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_ribbon, radford_hn, HnSpec};

    #[test]
    fn center_is_v1_for_sweedler() {
        let rh = radford_hn(&HnSpec::new(1).unwrap()).unwrap();
        let h = &rh.hopf;
        let k = Kirby::new(&rh);
        for z in &k.subspaces.z_basis {
            for i in 0..h.dim() {
                assert_eq!(h.mul(z, &h.basis(i)), h.mul(&h.basis(i), z));
            }
        }
        assert_eq!(k.subspaces.z_basis.len(), 1);
    }

    #[test]
    fn unit_is_kirby_exactly_when_unimodular() {
        let c = cyclic_ribbon(3, 1).unwrap();
        let k = Kirby::new(&c.ribbon);
        assert!(k.is_kirby(&c.ribbon.hopf.one()).is_kirby());
        assert!(k.sufficient_check(&c.ribbon.hopf.one()));
        let rh = radford_hn(&HnSpec::new(1).unwrap()).unwrap();
        let k = Kirby::new(&rh);
        assert!(!k.is_kirby(&rh.hopf.one()).in_l);
    }

    #[test]
    fn zero_candidate() {
        let rh = radford_hn(&HnSpec::new(1).unwrap()).unwrap();
        let k = Kirby::new(&rh);
        let c = k.is_kirby(&rh.hopf.zero());
        assert!(c.is_kirby());
        assert!(!c.is_normalized());
    }
}
