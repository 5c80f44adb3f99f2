//! Exact sparse linear algebra over a [`Field`]: incremental row echelon forms, kernels,
//! span comparison and linear solves.

use std::collections::BTreeMap;

use crate::field::{Fe, Field};

/// Sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Fe>;

pub fn sparse_from_dense(v: &[Fe]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn dense_from_sparse(field: &Field, v: &SparseVec, n: usize) -> Vec<Fe> {
    let mut out = vec![field.zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `acc += k * v`, dropping zeros.
pub fn axpy(acc: &mut SparseVec, k: &Fe, v: &SparseVec) {
    for (i, c) in v {
        let t = k * c;
        match acc.get_mut(i) {
            Some(e) => {
                *e = &*e + &t;
                if e.is_zero() {
                    acc.remove(i);
                }
            }
            None => {
                if !t.is_zero() {
                    acc.insert(*i, t);
                }
            }
        }
    }
}

/// Row echelon form built one row at a time. Each stored row has leading coefficient 1 at
/// its pivot column and is reduced against all pivots inserted before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Echelon {
        Echelon { field: field.clone(), ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `v` against the stored pivots.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, k)| (*c, k.clone()));
            match next {
                None => return v,
                Some((col, k)) => {
                    let row = &self.rows[&col];
                    axpy(&mut v, &(-&k), row);
                    cursor = col + 1;
                }
            }
        }
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&piv, lead)) = v.iter().next() else { return false };
        let inv = lead.inverse().expect("nonzero lead");
        let v: SparseVec = v.into_iter().map(|(i, c)| (i, &c * &inv)).collect();
        self.rows.insert(piv, v);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Fully reduced rows (each pivot column is zero in every other row).
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseVec> {
        let mut out: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&piv, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let hits: Vec<(usize, Fe)> =
                r.iter().filter(|(c, _)| **c != piv && out.contains_key(c)).map(|(c, k)| (*c, k.clone())).collect();
            for (c, k) in hits {
                let other = out[&c].clone();
                axpy(&mut r, &(-&k), &other);
            }
            out.insert(piv, r);
        }
        out
    }

    /// Basis of the solution space of `row · x = 0` for all stored rows: one vector per free
    /// column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let rr = self.reduced_rows();
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !rr.contains_key(c)) {
            let mut v = SparseVec::new();
            v.insert(free, self.field.one());
            for (&piv, row) in &rr {
                if let Some(k) = row.get(&free) {
                    v.insert(piv, -k);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the row space, fully reduced, ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.reduced_rows().into_values().collect()
    }
}

/// Kernel of the linear map whose matrix has the given rows.
pub fn kernel(field: &Field, ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
        if e.rank() == ncols {
            break;
        }
    }
    e.kernel()
}

pub fn rank(field: &Field, ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// True when the two families span the same subspace.
pub fn same_span(field: &Field, ncols: usize, a: &[SparseVec], b: &[SparseVec]) -> bool {
    let mut ea = Echelon::new(field, ncols);
    for v in a {
        ea.insert(v.clone());
    }
    let ra = ea.rank();
    if b.iter().any(|v| !ea.contains(v)) {
        return false;
    }
    rank(field, ncols, b.iter().cloned()) == ra
}

/// Dense square matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub m: usize,
    pub data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(field: &Field, n: usize, m: usize) -> Matrix {
        Matrix { n, m, data: vec![field.zero(); n * m] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut out = Matrix::zeros(field, n, n);
        for i in 0..n {
            out.data[i * n + i] = field.one();
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.data[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.m + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.m, other.n);
        let field = self.data.first().or(other.data.first()).map(|f| f.field().clone());
        let Some(field) = field else { return Matrix { n: self.n, m: other.m, data: vec![] } };
        let mut out = Matrix::zeros(&field, self.n, other.m);
        for i in 0..self.n {
            for k in 0..self.m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.m {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let t = a * b;
                        out.data[i * other.m + j] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.m, v.len());
        (0..self.n)
            .map(|i| {
                let mut acc = v[0].field().zero();
                for j in 0..self.m {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.m {
            for i in 0..self.n {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { n: self.m, m: self.n, data }
    }

    pub fn trace(&self, field: &Field) -> Fe {
        let mut acc = field.zero();
        for i in 0..self.n.min(self.m) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn row_sparse(&self, i: usize) -> SparseVec {
        sparse_from_dense(&self.data[i * self.m..(i + 1) * self.m])
    }

    /// Exact inverse, or `None` if singular.
    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        assert_eq!(self.n, self.m);
        let n = self.n;
        // Row reduce [A | I].
        let mut e = Echelon::new(field, 2 * n);
        for i in 0..n {
            let mut row = self.row_sparse(i);
            row.insert(n + i, field.one());
            e.insert(row);
        }
        let rr = e.reduced_rows();
        if (0..n).any(|c| !rr.contains_key(&c)) {
            return None;
        }
        let mut out = Matrix::zeros(field, n, n);
        for (piv, row) in rr {
            for (c, k) in row {
                if c >= n {
                    out.set(piv, c - n, k);
                }
            }
        }
        Some(out)
    }
}
