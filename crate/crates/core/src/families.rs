//! Worked ribbon Hopf algebras: Radford's family H_n (n odd) with its closed-form data and
//! the elements z_d, and semisimple group algebras of odd cyclic groups.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{Fe, Field, FieldDescriptor, FieldError};
use crate::hopf::{Elem, Form, HopfAlgebra, HopfData, HopfError, Tensor};
use crate::linalg::SparseVec;
use crate::ribbon::{Rep, RibbonError, RibbonHopf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("n must be an odd positive integer, got {0}")]
    EvenOrZero(u64),
    #[error("s must be odd with 1 <= s < 2n, got {0}")]
    BadTwistParameter(u64),
    #[error("characteristic {0} divides 2n = {1}")]
    BadCharacteristic(u64, u64),
    #[error("no primitive root: {0}")]
    NoRoot(#[from] FieldError),
    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// Parameters of H_n with the R-matrix R_{ω,s,β}.
#[derive(Clone, Debug)]
pub struct HnSpec {
    pub n: u64,
    pub s: u64,
    pub beta: BigRationalLike,
    pub field: Field,
}

/// β is kept as a rational so it can be moved into any field of characteristic 0 or p.
pub type BigRationalLike = num_rational::BigRational;

impl HnSpec {
    /// Default parameters: s = 1, β = 1, field ℚ(ζ_{2n}).
    pub fn new(n: u64) -> Result<HnSpec, FamilyError> {
        if n == 0 || n % 2 == 0 {
            return Err(FamilyError::EvenOrZero(n));
        }
        Ok(HnSpec {
            n,
            s: 1,
            beta: BigRationalLike::from_integer(1.into()),
            field: Field::cyclotomic(2 * n)?,
        })
    }

    pub fn with_s(mut self, s: u64) -> HnSpec {
        self.s = s;
        self
    }

    pub fn with_beta(mut self, beta: BigRationalLike) -> HnSpec {
        self.beta = beta;
        self
    }

    pub fn with_field(mut self, field: Field) -> HnSpec {
        self.field = field;
        self
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let n = self.n;
        if n == 0 || n % 2 == 0 {
            return Err(FamilyError::EvenOrZero(n));
        }
        if self.s % 2 == 0 || self.s >= 2 * n {
            return Err(FamilyError::BadTwistParameter(self.s));
        }
        let ch = self.field.characteristic();
        if ch != 0 && (2 * n) % ch == 0 {
            return Err(FamilyError::BadCharacteristic(ch, 2 * n));
        }
        Ok(())
    }

    pub fn omega(&self) -> Result<Fe, FamilyError> {
        Ok(self.field.primitive_root(2 * self.n)?)
    }

    /// Basis index of a^l x^m.
    pub fn idx(&self, l: i64, m: usize) -> usize {
        let two_n = 2 * self.n as i64;
        (l.rem_euclid(two_n) as usize) + (two_n as usize) * m
    }

    pub fn dim(&self) -> usize {
        4 * self.n as usize
    }
}

fn basis_name(l: u64, m: usize) -> String {
    let a = match l {
        0 => String::new(),
        1 => "a".to_string(),
        _ => format!("a^{l}"),
    };
    match (a.is_empty(), m) {
        (true, 0) => "1".to_string(),
        (false, 0) => a,
        (true, _) => "x".to_string(),
        (false, _) => format!("{a}x"),
    }
}

fn single(i: usize, c: Fe) -> SparseVec {
    let mut v = SparseVec::new();
    if !c.is_zero() {
        v.insert(i, c);
    }
    v
}

/// Structure constants of H_n over `spec.field`.
pub fn hn_data(spec: &HnSpec) -> Result<HopfData, FamilyError> {
    spec.validate()?;
    let f = &spec.field;
    let n = spec.n as i64;
    let two_n = 2 * n;
    let dim = spec.dim();
    let sign = |k: i64| if k.rem_euclid(2) == 0 { f.one() } else { f.int(-1) };
    let mut basis_names = vec![String::new(); dim];
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    let mut comult = vec![BTreeMap::new(); dim];
    let mut counit = vec![f.zero(); dim];
    let mut antipode = vec![SparseVec::new(); dim];
    for l in 0..two_n {
        for m in 0..2usize {
            let i = spec.idx(l, m);
            basis_names[i] = basis_name(l as u64, m);
            for l2 in 0..two_n {
                for m2 in 0..2usize {
                    let j = spec.idx(l2, m2);
                    // (a^l x^m)(a^l2 x^m2) = (-1)^{l2 m} a^{l+l2} x^{m+m2}
                    if m + m2 < 2 {
                        let c = if m == 1 { sign(l2) } else { f.one() };
                        mult[i][j] = single(spec.idx(l + l2, m + m2), c);
                    }
                }
            }
            if m == 0 {
                comult[i].insert((i, i), f.one());
                counit[i] = f.one();
                antipode[i] = single(spec.idx(-l, 0), f.one());
            } else {
                // Δ(a^l x) = a^l x ⊗ a^{l+n} + a^l ⊗ a^l x
                comult[i].insert((i, spec.idx(l + n, 0)), f.one());
                comult[i].insert((spec.idx(l, 0), i), f.one());
                // S(a^l x) = (-1)^l a^{n-l} x
                antipode[i] = single(spec.idx(n - l, 1), sign(l));
            }
        }
    }
    let mut unit = vec![f.zero(); dim];
    unit[0] = f.one();
    Ok(HopfData { field: f.clone(), dim, basis_names, mult, unit, comult, counit, antipode })
}

/// R_{ω,s,β} for H_n.
pub fn hn_r_matrix(spec: &HnSpec) -> Result<Tensor, FamilyError> {
    let f = &spec.field;
    let n = spec.n as i64;
    let two_n = 2 * n;
    let s = spec.s as i64;
    let w = spec.omega()?;
    let inv2n = f.frac(1, two_n).map_err(FieldError::from)?;
    let beta = f.try_from_rational(spec.beta.clone())?;
    let mut r = Tensor::zero(2);
    for i in 0..two_n {
        for l in 0..two_n {
            let c = &w.pow(-i * l) * &inv2n;
            r.add_term(vec![spec.idx(i, 0), spec.idx(s * l, 0)], &c);
            r.add_term(vec![spec.idx(i, 1), spec.idx(s * l + n, 1)], &(&c * &beta));
        }
    }
    Ok(r)
}

/// e_l = (1/2n) Σ_i ω^{-il} a^i.
pub fn hn_idempotent(spec: &HnSpec, l: i64) -> Result<Elem, FamilyError> {
    let f = &spec.field;
    let two_n = 2 * spec.n as i64;
    let w = spec.omega()?;
    let inv2n = f.frac(1, two_n)?;
    let mut e = vec![f.zero(); spec.dim()];
    for i in 0..two_n {
        e[spec.idx(i, 0)] = &w.pow(-i * l) * &inv2n;
    }
    Ok(e)
}

/// χ(α) = Σ_l α^{l²} e_l.
fn hn_chi(spec: &HnSpec, alpha: &Fe) -> Result<Elem, FamilyError> {
    let f = &spec.field;
    let two_n = 2 * spec.n as i64;
    let mut out = vec![f.zero(); spec.dim()];
    for l in 0..two_n {
        let e = hn_idempotent(spec, l)?;
        let k = alpha.pow(l * l);
        for (o, x) in out.iter_mut().zip(&e) {
            *o = &*o + &(x * &k);
        }
    }
    Ok(out)
}

/// θ = a^n χ(ω^s).
pub fn hn_twist(spec: &HnSpec) -> Result<Elem, FamilyError> {
    let w = spec.omega()?;
    let chi = hn_chi(spec, &w.pow(spec.s as i64))?;
    // multiply by a^n: shifts a^i to a^{i+n}
    let n = spec.n as i64;
    let mut out = vec![spec.field.zero(); spec.dim()];
    for i in 0..2 * n {
        out[spec.idx(i + n, 0)] = chi[spec.idx(i, 0)].clone();
    }
    Ok(out)
}

/// H_n with R_{ω,s,β} and θ = a^n χ(ω^s), all axioms verified at construction.
pub fn radford_hn(spec: &HnSpec) -> Result<RibbonHopf, FamilyError> {
    let hopf = HopfAlgebra::new(hn_data(spec)?)?;
    let r = hn_r_matrix(spec)?;
    let theta = hn_twist(spec)?;
    Ok(RibbonHopf::new(hopf, r, theta)?)
}

/// Closed-form answers for H_n, for cross-checking computed data.
#[derive(Clone, Debug)]
pub struct HnKnown {
    pub left_integral: Elem,
    pub right_cointegral: Form,
    pub g: Elem,
    pub nu: Form,
    pub special_grouplike: Elem,
    pub h_nu: Elem,
    /// T applied to each basis element, indexed like the basis.
    pub t_images: Vec<Elem>,
    pub l_basis: Vec<Elem>,
    pub z_basis: Vec<Elem>,
    pub n_basis: Vec<Elem>,
    pub v2_basis: Vec<Tensor>,
}

pub fn hn_known_data(spec: &HnSpec) -> HnKnown {
    let f = &spec.field;
    let n = spec.n as i64;
    let two_n = 2 * n;
    let dim = spec.dim();
    let unit = |i: usize| {
        let mut v = vec![f.zero(); dim];
        v[i] = f.one();
        v
    };
    let signed = |i: usize, c: Fe| {
        let mut v = vec![f.zero(); dim];
        v[i] = c;
        v
    };
    let mut left_integral = vec![f.zero(); dim];
    for l in 0..two_n {
        left_integral[spec.idx(l, 1)] = f.one();
    }
    let right_cointegral = unit(spec.idx(n, 1));
    let g = unit(spec.idx(n, 0));
    let mut nu = vec![f.zero(); dim];
    for l in 0..two_n {
        nu[spec.idx(l, 0)] = if l % 2 == 0 { f.one() } else { f.int(-1) };
    }
    let mut t_images = vec![vec![]; dim];
    for k in 0..two_n {
        let sgn = if k % 2 == 0 { f.one() } else { f.int(-1) };
        t_images[spec.idx(k, 0)] = signed(spec.idx(n - k, 0), sgn);
        t_images[spec.idx(k, 1)] = unit(spec.idx(-k, 1));
    }
    let l_basis = (0..two_n).map(|k| unit(spec.idx(k, 1))).collect();
    let z_basis = (0..n).map(|k| unit(spec.idx(2 * k, 0))).collect();
    let n_basis = (0..n).map(|k| unit(spec.idx(2 * k, 1))).collect();
    let mut v2_basis = Vec::new();
    for p in 0..n {
        for q in 0..n {
            v2_basis.push(Tensor::pure(&[&unit(spec.idx(2 * p, 0)), &unit(spec.idx(2 * q, 0))]));
        }
    }
    for k in 0..two_n {
        for l in 0..two_n {
            v2_basis.push(Tensor::pure(&[&unit(spec.idx(k, 1)), &unit(spec.idx(l, 1))]));
        }
    }
    HnKnown {
        left_integral,
        right_cointegral,
        g: g.clone(),
        nu,
        special_grouplike: g.clone(),
        h_nu: g,
        t_images,
        l_basis,
        z_basis,
        n_basis,
        v2_basis,
    }
}

/// z_d = Σ_{k=0}^{n/d-1} a^{2dk+n} x.
pub fn hn_zd(spec: &HnSpec, d: u64) -> Result<Elem, FamilyError> {
    if d == 0 || spec.n % d != 0 {
        return Err(FamilyError::NotADivisor(d, spec.n));
    }
    let f = &spec.field;
    let n = spec.n as i64;
    let d = d as i64;
    let mut z = vec![f.zero(); spec.dim()];
    for k in 0..n / d {
        z[spec.idx(2 * d * k + n, 1)] = f.one();
    }
    Ok(z)
}

/// Positive divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The Gauss-sum value (1/2d) Σ_{k=0}^{2d-1} (ω^{n/d})^{±s(n/d)k² + nk}.
pub fn gauss_theta(spec: &HnSpec, d: u64, sign: i64) -> Result<Fe, FamilyError> {
    if d == 0 || spec.n % d != 0 {
        return Err(FamilyError::NotADivisor(d, spec.n));
    }
    let f = &spec.field;
    let n = spec.n as i64;
    let s = spec.s as i64;
    let di = d as i64;
    let base = spec.omega()?.pow(n / di);
    let mut acc = f.zero();
    for k in 0..2 * di {
        acc += &base.pow(sign.signum() * s * (n / di) * k * k + n * k);
    }
    Ok(&acc * &f.frac(1, 2 * di)?)
}

/// Group algebra of ℤ/N (N odd) with R = Σ q^{ij} e_i⊗e_j and θ = Σ q^{j²} e_j in the
/// idempotent basis, where q = ζ_N^k.
#[derive(Clone, Debug)]
pub struct CyclicRibbon {
    pub ribbon: RibbonHopf,
    pub order: u64,
    /// Exponent k with q = ζ_N^k.
    pub q_exp: u64,
    /// `idempotents[j]` = e_j, on which g acts by ζ_N^j.
    pub idempotents: Vec<Elem>,
}

impl CyclicRibbon {
    /// The one-dimensional modules: g acts by ζ_N^j on the j-th one.
    pub fn characters(&self) -> Vec<Rep> {
        let h = &self.ribbon.hopf;
        let f = h.field();
        let zeta = f.primitive_root(self.order).expect("field has N-th roots");
        (0..self.order as i64)
            .map(|j| {
                let chi: Vec<Fe> = (0..self.order as i64).map(|g| zeta.pow(j * g)).collect();
                Rep::character(h, &chi).expect("character")
            })
            .collect()
    }
}

pub fn cyclic_ribbon(order: u64, q_exp: u64) -> Result<CyclicRibbon, FamilyError> {
    if order == 0 || order % 2 == 0 {
        return Err(FamilyError::EvenOrZero(order));
    }
    let f = if order == 1 { Field::rationals() } else { Field::cyclotomic(order)? };
    cyclic_ribbon_over(&f, order, q_exp)
}

pub fn cyclic_ribbon_over(f: &Field, order: u64, q_exp: u64) -> Result<CyclicRibbon, FamilyError> {
    if order == 0 || order % 2 == 0 {
        return Err(FamilyError::EvenOrZero(order));
    }
    if matches!(f.descriptor(), FieldDescriptor::Prime { p } if order % p == 0) {
        return Err(FamilyError::BadCharacteristic(f.characteristic(), order));
    }
    let n = order as i64;
    let hopf = HopfAlgebra::new(crate::hopf::group_algebra_cyclic(f, order as usize))?;
    let zeta = f.primitive_root(order)?;
    let q = zeta.pow(q_exp as i64);
    let inv_n = f.frac(1, n)?;
    let idempotents: Vec<Elem> =
        (0..n).map(|j| (0..n).map(|g| &zeta.pow(-j * g) * &inv_n).collect()).collect();
    let mut r = Tensor::zero(2);
    for i in 0..n {
        for j in 0..n {
            let pure = Tensor::pure(&[&idempotents[i as usize], &idempotents[j as usize]]);
            r = r.add(&pure.scale(&q.pow(i * j)));
        }
    }
    let mut theta = hopf.zero();
    for j in 0..n {
        theta = hopf.add(&theta, &hopf.scale(&idempotents[j as usize], &q.pow(j * j)));
    }
    let ribbon = RibbonHopf::new(hopf, r, theta)?;
    Ok(CyclicRibbon { ribbon, order, q_exp, idempotents })
}
