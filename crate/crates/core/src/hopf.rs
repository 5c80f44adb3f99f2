//! Finite-dimensional Hopf algebras given by structure constants over an exact field:
//! axiom checks, integrals, distinguished grouplikes and the Radford-type identities that
//! relate them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{Fe, Field};
use crate::linalg::{self, axpy, Echelon, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Hopf axiom failed: {0}")]
    AxiomFailed(String),
    #[error("{0} space is {1}-dimensional, expected 1")]
    KernelNotOneDimensional(&'static str, usize),
    #[error("integrals cannot be jointly normalized: lambda(S(Lambda)) = {0} after lambda(Lambda) = 1")]
    NormalizationFailure(String),
    #[error("{0} is not grouplike")]
    NotGrouplike(&'static str),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
}

/// An element of H as a dense coordinate vector.
pub type Elem = Vec<Fe>;
/// A linear form on H, by its values on the basis.
pub type Form = Vec<Fe>;

/// Named pass/fail checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<(String, bool)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(n, _)| n == name).map(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.checks
                .iter()
                .map(|(n, ok)| serde_json::json!({"check": n, "pass": ok}))
                .collect(),
        )
    }
}

/// Sparse element of H^{⊗n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub arity: usize,
    pub terms: BTreeMap<Vec<usize>, Fe>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Tensor {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: &Fe) {
        debug_assert_eq!(idx.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(e) => {
                *e = &*e + c;
                if e.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: &Fe) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), &(c * k));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pure tensor of basis-coordinate vectors.
    pub fn pure(parts: &[&Elem]) -> Tensor {
        let mut out = Tensor::zero(parts.len());
        let mut acc: Vec<(Vec<usize>, Fe)> = vec![(vec![], parts[0][0].field().one())];
        for p in parts {
            let mut next = Vec::new();
            for (idx, c) in &acc {
                for (j, v) in p.iter().enumerate() {
                    if !v.is_zero() {
                        let mut i2 = idx.clone();
                        i2.push(j);
                        next.push((i2, c * v));
                    }
                }
            }
            acc = next;
        }
        for (i, c) in acc {
            out.add_term(i, &c);
        }
        out
    }

    /// Reorder slots: output slot `k` takes input slot `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (idx, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| idx[p]).collect(), c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(idx, c)| {
                    let mut row: Vec<serde_json::Value> = idx.iter().map(|i| serde_json::json!(i)).collect();
                    row.push(c.to_json());
                    serde_json::Value::Array(row)
                })
                .collect(),
        )
    }
}

/// Raw structure constants of a candidate Hopf algebra.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub field: Field,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `mult[i][j]` = e_i e_j.
    pub mult: Vec<Vec<SparseVec>>,
    pub unit: Elem,
    /// `comult[i]` = Δ(e_i) as pairs of basis indices.
    pub comult: Vec<BTreeMap<(usize, usize), Fe>>,
    pub counit: Vec<Fe>,
    /// `antipode[j]` = S(e_j).
    pub antipode: Vec<SparseVec>,
}

impl HopfData {
    fn check_dims(&self) -> Result<(), HopfError> {
        let d = self.dim;
        let bad = |m: &str| Err(HopfError::DimensionMismatch(m.to_string()));
        if d == 0 {
            return bad("dimension must be positive");
        }
        if self.basis_names.len() != d {
            return bad("basis names");
        }
        if self.mult.len() != d || self.mult.iter().any(|r| r.len() != d) {
            return bad("multiplication table");
        }
        if self.mult.iter().flatten().any(|v| v.keys().any(|&k| k >= d)) {
            return bad("multiplication entries");
        }
        if self.unit.len() != d || self.counit.len() != d {
            return bad("unit or counit");
        }
        if self.comult.len() != d || self.comult.iter().any(|c| c.keys().any(|&(a, b)| a >= d || b >= d)) {
            return bad("comultiplication");
        }
        if self.antipode.len() != d || self.antipode.iter().any(|v| v.keys().any(|&k| k >= d)) {
            return bad("antipode");
        }
        Ok(())
    }

    fn basis_mul(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    fn mul_sparse(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a {
            for (j, y) in b {
                axpy(&mut out, &(x * y), self.basis_mul(*i, *j));
            }
        }
        out
    }

    fn comult_sparse(&self, a: &SparseVec) -> BTreeMap<(usize, usize), Fe> {
        let mut t = Tensor::zero(2);
        for (i, c) in a {
            for ((p, q), k) in &self.comult[*i] {
                t.add_term(vec![*p, *q], &(c * k));
            }
        }
        t.terms.into_iter().map(|(k, v)| ((k[0], k[1]), v)).collect()
    }

    fn counit_sparse(&self, a: &SparseVec) -> Fe {
        let mut acc = self.field.zero();
        for (i, c) in a {
            acc += &(c * &self.counit[*i]);
        }
        acc
    }

    fn antipode_sparse(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a {
            axpy(&mut out, c, &self.antipode[*i]);
        }
        out
    }

    fn unit_sparse(&self) -> SparseVec {
        linalg::sparse_from_dense(&self.unit)
    }

    fn basis_vec(&self, i: usize) -> SparseVec {
        let mut v = SparseVec::new();
        v.insert(i, self.field.one());
        v
    }

    /// Check all Hopf algebra axioms as exact identities on basis elements.
    pub fn verify(&self) -> Result<AxiomReport, HopfError> {
        self.check_dims()?;
        let d = self.dim;
        let mut checks = Vec::new();
        let one = self.unit_sparse();

        let assoc = (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let left = self.mul_sparse(self.basis_mul(i, j), &self.basis_vec(k));
                    let right = self.mul_sparse(&self.basis_vec(i), self.basis_mul(j, k));
                    left == right
                })
            })
        });
        checks.push(("associativity".to_string(), assoc));

        let unital = (0..d).all(|i| {
            let e = self.basis_vec(i);
            self.mul_sparse(&one, &e) == e && self.mul_sparse(&e, &one) == e
        });
        checks.push(("unitality".to_string(), unital));

        let coassoc = (0..d).all(|i| {
            let mut left = Tensor::zero(3);
            let mut right = Tensor::zero(3);
            for ((p, q), c) in &self.comult[i] {
                for ((r, s), k) in &self.comult[*p] {
                    left.add_term(vec![*r, *s, *q], &(c * k));
                }
                for ((r, s), k) in &self.comult[*q] {
                    right.add_term(vec![*p, *r, *s], &(c * k));
                }
            }
            left == right
        });
        checks.push(("coassociativity".to_string(), coassoc));

        let counital = (0..d).all(|i| {
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for ((p, q), c) in &self.comult[i] {
                let mut bp = SparseVec::new();
                bp.insert(*q, &self.counit[*p] * c);
                axpy(&mut left, &self.field.one(), &bp);
                let mut bq = SparseVec::new();
                bq.insert(*p, &self.counit[*q] * c);
                axpy(&mut right, &self.field.one(), &bq);
            }
            let e = self.basis_vec(i);
            left == e && right == e
        });
        checks.push(("counitality".to_string(), counital));

        let delta_mult = (0..d).all(|i| {
            (0..d).all(|j| {
                let left = self.comult_sparse(self.basis_mul(i, j));
                let mut right = Tensor::zero(2);
                for ((p, q), c) in &self.comult[i] {
                    for ((r, s), k) in &self.comult[j] {
                        let ck = c * k;
                        for (a, x) in self.basis_mul(*p, *r) {
                            for (b, y) in self.basis_mul(*q, *s) {
                                right.add_term(vec![*a, *b], &(&ck * &(x * y)));
                            }
                        }
                    }
                }
                let right: BTreeMap<(usize, usize), Fe> =
                    right.terms.into_iter().map(|(k, v)| ((k[0], k[1]), v)).collect();
                left == right
            })
        });
        let delta_unit = {
            let mut t = BTreeMap::new();
            let dd = self.comult_sparse(&one);
            for (i, c) in &one {
                for (j, k) in &one {
                    t.insert((*i, *j), c * k);
                }
            }
            t.retain(|_, v: &mut Fe| !v.is_zero());
            dd == t
        };
        let eps_mult = (0..d).all(|i| {
            (0..d).all(|j| self.counit_sparse(self.basis_mul(i, j)) == &self.counit[i] * &self.counit[j])
        });
        let eps_unit = self.counit_sparse(&one).is_one();
        checks.push(("comultiplication is multiplicative".to_string(), delta_mult && delta_unit));
        checks.push(("counit is multiplicative".to_string(), eps_mult && eps_unit));

        let antipode_ok = (0..d).all(|i| {
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for ((p, q), c) in &self.comult[i] {
                let sp = self.antipode_sparse(&self.basis_vec(*p));
                axpy(&mut left, c, &self.mul_sparse(&sp, &self.basis_vec(*q)));
                let sq = self.antipode_sparse(&self.basis_vec(*q));
                axpy(&mut right, c, &self.mul_sparse(&self.basis_vec(*p), &sq));
            }
            let mut expect = SparseVec::new();
            axpy(&mut expect, &self.counit[i], &one);
            left == expect && right == expect
        });
        checks.push(("antipode".to_string(), antipode_ok));
        Ok(AxiomReport { checks })
    }
}

/// A verified Hopf algebra with its integrals and distinguished grouplikes.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub data: HopfData,
    antipode_inv: Vec<SparseVec>,
    left_integral: Elem,
    right_cointegral: Form,
    g: Elem,
    nu: Form,
    /// `nu_harpoon[j]` = e_j ↼ ν.
    nu_harpoon: Vec<SparseVec>,
}

impl HopfAlgebra {
    /// Verify the axioms and compute the cached integral data.
    pub fn new(data: HopfData) -> Result<HopfAlgebra, HopfError> {
        let report = data.verify()?;
        if !report.all_pass() {
            return Err(HopfError::AxiomFailed(report.failed().join(", ")));
        }
        let field = data.field.clone();
        let d = data.dim;
        // S is invertible for finite-dimensional Hopf algebras.
        let smat = linalg::Matrix {
            n: d,
            m: d,
            data: (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .map(|(i, j)| data.antipode[j].get(&i).cloned().unwrap_or_else(|| field.zero()))
                .collect(),
        };
        let sinv = smat
            .inverse(&field)
            .ok_or_else(|| HopfError::AxiomFailed("antipode is not invertible".into()))?;
        let antipode_inv = (0..d)
            .map(|j| linalg::sparse_from_dense(&(0..d).map(|i| sinv.get(i, j).clone()).collect::<Vec<_>>()))
            .collect();
        let mut h = HopfAlgebra {
            data,
            antipode_inv,
            left_integral: vec![],
            right_cointegral: vec![],
            g: vec![],
            nu: vec![],
            nu_harpoon: vec![],
        };
        h.left_integral = h.compute_left_integral()?;
        h.right_cointegral = h.compute_right_cointegral()?;
        h.compute_grouplikes()?;
        Ok(h)
    }

    pub fn field(&self) -> &Field {
        &self.data.field
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.data.basis_names
    }

    pub fn zero(&self) -> Elem {
        vec![self.field().zero(); self.dim()]
    }

    pub fn one(&self) -> Elem {
        self.data.unit.clone()
    }

    pub fn basis(&self, i: usize) -> Elem {
        let mut v = self.zero();
        v[i] = self.field().one();
        v
    }

    pub fn scalar(&self, k: &Fe) -> Elem {
        self.scale(&self.one(), k)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &Elem, k: &Fe) -> Elem {
        a.iter().map(|x| x * k).collect()
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// e_i e_j.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.data.mult[i][j]
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = SparseVec::new();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &(x * y), &self.data.mult[i][j]);
                }
            }
        }
        linalg::dense_from_sparse(self.field(), &out, self.dim())
    }

    pub fn mul_all(&self, factors: &[&Elem]) -> Elem {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, a: &Elem, k: u64) -> Elem {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn apply_columns(&self, cols: &[SparseVec], a: &Elem) -> Elem {
        let mut out = SparseVec::new();
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                axpy(&mut out, x, &cols[i]);
            }
        }
        linalg::dense_from_sparse(self.field(), &out, self.dim())
    }

    pub fn antipode(&self, a: &Elem) -> Elem {
        self.apply_columns(&self.data.antipode, a)
    }

    pub fn antipode_inv(&self, a: &Elem) -> Elem {
        self.apply_columns(&self.antipode_inv, a)
    }

    /// S^k for any integer k.
    pub fn antipode_pow(&self, a: &Elem, k: i64) -> Elem {
        let mut out = a.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 { self.antipode(&out) } else { self.antipode_inv(&out) };
        }
        out
    }

    pub fn antipode_basis(&self, j: usize) -> &SparseVec {
        &self.data.antipode[j]
    }

    pub fn antipode_inv_basis(&self, j: usize) -> &SparseVec {
        &self.antipode_inv[j]
    }

    pub fn counit(&self, a: &Elem) -> Fe {
        self.pair(&self.data.counit, a)
    }

    pub fn counit_form(&self) -> &Form {
        &self.data.counit
    }

    pub fn pair(&self, f: &Form, a: &Elem) -> Fe {
        let mut acc = self.field().zero();
        for (x, y) in f.iter().zip(a) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
        acc
    }

    pub fn comult(&self, a: &Elem) -> Tensor {
        let mut t = Tensor::zero(2);
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for ((p, q), k) in &self.data.comult[i] {
                t.add_term(vec![*p, *q], &(c * k));
            }
        }
        t
    }

    pub fn comult_basis(&self, i: usize) -> &BTreeMap<(usize, usize), Fe> {
        &self.data.comult[i]
    }

    /// Iterated comultiplication Δ^{(n)}: H → H^{⊗n}, splitting the last slot each time.
    pub fn sweedler_power(&self, a: &Elem, n: usize) -> Tensor {
        assert!(n >= 1);
        let mut t = Tensor::zero(1);
        for (i, c) in a.iter().enumerate() {
            t.add_term(vec![i], c);
        }
        for _ in 1..n {
            let mut next = Tensor::zero(t.arity + 1);
            for (idx, c) in &t.terms {
                let last = *idx.last().unwrap();
                for ((p, q), k) in &self.data.comult[last] {
                    let mut i2 = idx[..idx.len() - 1].to_vec();
                    i2.push(*p);
                    i2.push(*q);
                    next.add_term(i2, &(c * k));
                }
            }
            t = next;
        }
        t
    }

    /// Same as [`Self::sweedler_power`] but splitting the first slot each time.
    pub fn sweedler_power_left(&self, a: &Elem, n: usize) -> Tensor {
        let mut t = Tensor::zero(1);
        for (i, c) in a.iter().enumerate() {
            t.add_term(vec![i], c);
        }
        for _ in 1..n {
            let mut next = Tensor::zero(t.arity + 1);
            for (idx, c) in &t.terms {
                for ((p, q), k) in &self.data.comult[idx[0]] {
                    let mut i2 = vec![*p, *q];
                    i2.extend_from_slice(&idx[1..]);
                    next.add_term(i2, &(c * k));
                }
            }
            t = next;
        }
        t
    }

    /// x ↼ f = f(x_(1)) x_(2).
    pub fn harpoon(&self, x: &Elem, f: &Form) -> Elem {
        let mut out = self.zero();
        for (idx, c) in &self.comult(x).terms {
            let k = c * &f[idx[0]];
            if !k.is_zero() {
                out[idx[1]] = &out[idx[1]] + &k;
            }
        }
        out
    }

    /// f ⇀ x = x_(1) f(x_(2)).
    pub fn left_harpoon(&self, f: &Form, x: &Elem) -> Elem {
        let mut out = self.zero();
        for (idx, c) in &self.comult(x).terms {
            let k = c * &f[idx[1]];
            if !k.is_zero() {
                out[idx[0]] = &out[idx[0]] + &k;
            }
        }
        out
    }

    /// x ↼ ν using the cached matrix.
    pub fn harpoon_nu(&self, x: &Elem) -> Elem {
        self.apply_columns(&self.nu_harpoon, x)
    }

    /// (f·a)(x) = f(a x).
    pub fn form_dot(&self, f: &Form, a: &Elem) -> Form {
        (0..self.dim()).map(|j| self.pair(f, &self.mul(a, &self.basis(j)))).collect()
    }

    pub fn lambda(&self, a: &Elem) -> Fe {
        self.pair(&self.right_cointegral, a)
    }

    pub fn left_integral(&self) -> &Elem {
        &self.left_integral
    }

    pub fn right_cointegral(&self) -> &Form {
        &self.right_cointegral
    }

    pub fn distinguished_grouplike(&self) -> &Elem {
        &self.g
    }

    pub fn distinguished_character(&self) -> &Form {
        &self.nu
    }

    pub fn is_unimodular(&self) -> bool {
        self.nu == self.data.counit
    }

    /// Multiplication in H^{⊗n}, slotwise.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        assert_eq!(a.arity, b.arity);
        let mut out = Tensor::zero(a.arity);
        for (ia, ca) in &a.terms {
            for (ib, cb) in &b.terms {
                let mut acc: Vec<(Vec<usize>, Fe)> = vec![(vec![], ca * cb)];
                for s in 0..a.arity {
                    let prod = &self.data.mult[ia[s]][ib[s]];
                    let mut next = Vec::with_capacity(acc.len() * prod.len());
                    for (idx, c) in &acc {
                        for (k, v) in prod {
                            let mut i2 = idx.clone();
                            i2.push(*k);
                            next.push((i2, c * v));
                        }
                    }
                    acc = next;
                }
                for (i, c) in acc {
                    out.add_term(i, &c);
                }
            }
        }
        out
    }

    /// Apply a linear map to one slot of a tensor.
    pub fn tensor_map_slot(&self, t: &Tensor, slot: usize, f: impl Fn(usize) -> SparseVec) -> Tensor {
        let mut out = Tensor::zero(t.arity);
        let mut cache: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (idx, c) in &t.terms {
            let img = cache.entry(idx[slot]).or_insert_with(|| f(idx[slot]));
            for (k, v) in img.iter() {
                let mut i2 = idx.clone();
                i2[slot] = *k;
                out.add_term(i2, &(c * v));
            }
        }
        out
    }

    /// Multiply the slots of a tensor together in order: m(x_1 ⊗ ... ⊗ x_n).
    pub fn tensor_contract(&self, t: &Tensor) -> Elem {
        let mut out = self.zero();
        for (idx, c) in &t.terms {
            let mut e = self.scale(&self.basis(idx[0]), c);
            for &i in &idx[1..] {
                e = self.mul(&e, &self.basis(i));
            }
            out = self.add(&out, &e);
        }
        out
    }

    pub fn elem_to_tensor1(&self, a: &Elem) -> Tensor {
        let mut t = Tensor::zero(1);
        for (i, c) in a.iter().enumerate() {
            t.add_term(vec![i], c);
        }
        t
    }

    fn compute_left_integral(&self) -> Result<Elem, HopfError> {
        let d = self.dim();
        let f = self.field();
        // Rows of the stacked operators (left multiplication by e_i) - ε(e_i) id.
        let mut rows = Vec::new();
        for i in 0..d {
            for r in 0..d {
                let mut row = SparseVec::new();
                for j in 0..d {
                    let mut c = self.data.mult[i][j].get(&r).cloned().unwrap_or_else(|| f.zero());
                    if r == j {
                        c = &c - &self.data.counit[i];
                    }
                    if !c.is_zero() {
                        row.insert(j, c);
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        let ker = linalg::kernel(f, d, rows);
        if ker.len() != 1 {
            return Err(HopfError::KernelNotOneDimensional("left integral", ker.len()));
        }
        Ok(linalg::dense_from_sparse(f, &ker[0], d))
    }

    fn compute_right_cointegral(&self) -> Result<Form, HopfError> {
        let d = self.dim();
        let f = self.field();
        // λ(x_(1)) x_(2) = λ(x) 1, unknowns λ_p.
        let mut rows = Vec::new();
        for j in 0..d {
            for r in 0..d {
                let mut row = SparseVec::new();
                for ((p, q), c) in &self.data.comult[j] {
                    if *q == r {
                        let e = row.entry(*p).or_insert_with(|| f.zero());
                        *e = &*e + c;
                    }
                }
                if !self.data.unit[r].is_zero() {
                    let e = row.entry(j).or_insert_with(|| f.zero());
                    *e = &*e - &self.data.unit[r];
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        let ker = linalg::kernel(f, d, rows);
        if ker.len() != 1 {
            return Err(HopfError::KernelNotOneDimensional("right integral of the dual", ker.len()));
        }
        let lam = linalg::dense_from_sparse(f, &ker[0], d);
        let at = self.pair(&lam, &self.left_integral);
        if at.is_zero() {
            return Err(HopfError::NormalizationFailure("lambda(Lambda) = 0".into()));
        }
        let inv = at.inverse().unwrap();
        let lam: Form = lam.iter().map(|x| x * &inv).collect();
        let check = self.pair(&lam, &self.antipode(&self.left_integral));
        if !check.is_one() {
            return Err(HopfError::NormalizationFailure(check.to_string()));
        }
        Ok(lam)
    }

    fn compute_grouplikes(&mut self) -> Result<(), HopfError> {
        let d = self.dim();
        // g = Λ_(1) λ(Λ_(2)) since λ(Λ) = 1.
        let g = self.left_harpoon(&self.right_cointegral.clone(), &self.left_integral.clone());
        for j in 0..d {
            let x = self.basis(j);
            let lhs = self.left_harpoon(&self.right_cointegral, &x);
            let rhs = self.scale(&g, &self.lambda(&x));
            if lhs != rhs {
                return Err(HopfError::IdentityViolated("x_(1) lambda(x_(2)) = lambda(x) g".into()));
            }
        }
        if !self.is_grouplike(&g) {
            return Err(HopfError::NotGrouplike("g"));
        }
        let lam = &self.left_integral;
        let p = lam.iter().position(|c| !c.is_zero()).expect("nonzero integral");
        let inv = lam[p].inverse().unwrap();
        let nu: Form = (0..d).map(|j| &self.mul(lam, &self.basis(j))[p] * &inv).collect();
        for j in 0..d {
            let lhs = self.mul(lam, &self.basis(j));
            if lhs != self.scale(lam, &nu[j]) {
                return Err(HopfError::IdentityViolated("Lambda x = nu(x) Lambda".into()));
            }
        }
        let nu_ok = self.pair(&nu, &self.data.unit).is_one()
            && (0..d).all(|i| {
                (0..d).all(|j| {
                    self.pair(&nu, &linalg::dense_from_sparse(self.field(), &self.data.mult[i][j], d))
                        == &nu[i] * &nu[j]
                })
            });
        if !nu_ok {
            return Err(HopfError::NotGrouplike("nu"));
        }
        self.g = g;
        self.nu = nu.clone();
        self.nu_harpoon = (0..d).map(|j| linalg::sparse_from_dense(&self.harpoon(&self.basis(j), &nu))).collect();
        Ok(())
    }

    pub fn is_grouplike(&self, x: &Elem) -> bool {
        let t = self.comult(x);
        t == Tensor::pure(&[x, x]) && self.counit(x).is_one()
    }

    /// Inverse of an element, if it exists.
    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        let d = self.dim();
        let f = self.field();
        // Left multiplication matrix; solve a y = 1.
        let mut m = linalg::Matrix::zeros(f, d, d);
        for j in 0..d {
            let col = self.mul(a, &self.basis(j));
            for i in 0..d {
                m.set(i, j, col[i].clone());
            }
        }
        let inv = m.inverse(f)?;
        Some(inv.apply(&self.data.unit))
    }

    /// Recompute a as λ(a Λ_(1)) S(Λ_(2)); returns an error if the identity fails.
    pub fn radford_expand(&self, a: &Elem) -> Result<Elem, HopfError> {
        let mut out = self.zero();
        for (idx, c) in &self.comult(&self.left_integral).terms {
            let k = c * &self.lambda(&self.mul(a, &self.basis(idx[0])));
            if k.is_zero() {
                continue;
            }
            out = self.add(&out, &self.scale(&self.antipode(&self.basis(idx[1])), &k));
        }
        if &out != a {
            return Err(HopfError::IdentityViolated("a = lambda(a Lambda_(1)) S(Lambda_(2))".into()));
        }
        Ok(out)
    }

    /// a = (f ⊗ S)Δ(Λ), inverse of [`Self::element_to_form`].
    pub fn form_to_element(&self, f: &Form) -> Elem {
        let mut out = self.zero();
        for (idx, c) in &self.comult(&self.left_integral).terms {
            let k = c * &f[idx[0]];
            if !k.is_zero() {
                out = self.add(&out, &self.scale(&self.antipode(&self.basis(idx[1])), &k));
            }
        }
        out
    }

    /// f = λ·a.
    pub fn element_to_form(&self, a: &Elem) -> Form {
        self.form_dot(&self.right_cointegral, a)
    }

    pub fn elem_to_json(&self, a: &Elem) -> serde_json::Value {
        serde_json::Value::Array(a.iter().map(|c| c.to_json()).collect())
    }

    /// Human-readable linear combination of basis names.
    pub fn format_elem(&self, a: &Elem) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let name = &self.data.basis_names[i];
                if c.is_one() {
                    name.clone()
                } else {
                    format!("({c})*{name}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Sparse element of H^{⊗2} in an [`Echelon`]-friendly flat index i*dim + j.
    pub fn flatten2(&self, t: &Tensor) -> SparseVec {
        t.terms.iter().map(|(k, v)| (k[0] * self.dim() + k[1], v.clone())).collect()
    }

    pub fn unflatten2(&self, v: &SparseVec) -> Tensor {
        let mut t = Tensor::zero(2);
        for (k, c) in v {
            t.add_term(vec![k / self.dim(), k % self.dim()], c);
        }
        t
    }

    /// Echelon over H for span computations.
    pub fn echelon(&self) -> Echelon {
        Echelon::new(self.field(), self.dim())
    }
}

/// Group algebra of ℤ/N in the group basis, as raw structure constants.
pub fn group_algebra_cyclic(field: &Field, n: usize) -> HopfData {
    let one = field.one();
    let basis_vec = |i: usize| {
        let mut v = SparseVec::new();
        v.insert(i, one.clone());
        v
    };
    HopfData {
        field: field.clone(),
        dim: n,
        basis_names: (0..n).map(|i| format!("g^{i}")).collect(),
        mult: (0..n).map(|i| (0..n).map(|j| basis_vec((i + j) % n)).collect()).collect(),
        unit: linalg::dense_from_sparse(field, &basis_vec(0), n),
        comult: (0..n).map(|i| [((i, i), one.clone())].into_iter().collect()).collect(),
        counit: vec![one.clone(); n],
        antipode: (0..n).map(|i| basis_vec((n - i) % n)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_algebra_integrals() {
        let q = Field::rationals();
        let h = HopfAlgebra::new(group_algebra_cyclic(&q, 5)).unwrap();
        assert_eq!(h.left_integral(), &vec![q.one(); 5]);
        // λ(Λ) = 1 forces λ = δ_e
        let mut lam = vec![q.zero(); 5];
        lam[0] = q.one();
        assert_eq!(h.right_cointegral(), &lam);
        assert_eq!(h.distinguished_grouplike(), &h.one());
        assert!(h.is_unimodular());
    }

    #[test]
    fn trivial_algebra() {
        let q = Field::rationals();
        let h = HopfAlgebra::new(group_algebra_cyclic(&q, 1)).unwrap();
        assert_eq!(h.left_integral(), &h.one());
        assert_eq!(h.right_cointegral(), &vec![q.one()]);
    }

    #[test]
    fn sweedler_bracketing() {
        let q = Field::rationals();
        let h = HopfAlgebra::new(group_algebra_cyclic(&q, 3)).unwrap();
        let x = h.add(&h.basis(1), &h.scale(&h.basis(2), &q.int(3)));
        for n in 1..=4 {
            assert_eq!(h.sweedler_power(&x, n), h.sweedler_power_left(&x, n));
        }
        assert_eq!(h.sweedler_power(&h.one(), 3), Tensor::pure(&[&h.one(), &h.one(), &h.one()]));
    }

    #[test]
    fn dimension_mismatch_reported() {
        let q = Field::rationals();
        let mut d = group_algebra_cyclic(&q, 3);
        d.counit.pop();
        assert!(matches!(d.verify(), Err(HopfError::DimensionMismatch(_))));
    }
}
