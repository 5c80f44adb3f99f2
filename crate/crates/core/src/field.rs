//! Exact scalars: the rationals, cyclotomic fields ℚ(ζ_m) = ℚ[x]/Φ_m, and prime fields.
//!
//! Cyclotomic elements are stored as an integer numerator vector over a common positive
//! denominator; the public coordinate view is a vector of reduced rationals in the power
//! basis of ζ.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive root of order {0} in {1}")]
    NoSuchRoot(u64, String),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// Which field a scalar lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Cyclotomic { order: u64 },
    Prime { p: u64 },
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Cyclotomic { order } => write!(f, "Q(zeta_{order})"),
            FieldDescriptor::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

impl std::str::FromStr for FieldDescriptor {
    type Err = FieldError;

    /// Accepts the display forms ("Q", "Q(zeta_12)", "F_7") and "rationals", "cyclotomic:12",
    /// "prime:7".
    fn from_str(s: &str) -> Result<FieldDescriptor, FieldError> {
        let t = s.trim();
        let bad = || FieldError::InvalidDescriptor(t.to_string());
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
        if t == "Q" || t == "rationals" {
            Ok(FieldDescriptor::Rationals)
        } else if let Some(m) = t.strip_prefix("Q(zeta_").and_then(|r| r.strip_suffix(')')) {
            Ok(FieldDescriptor::Cyclotomic { order: num(m)? })
        } else if let Some(m) = t.strip_prefix("cyclotomic:") {
            Ok(FieldDescriptor::Cyclotomic { order: num(m)? })
        } else if let Some(p) = t.strip_prefix("F_").or_else(|| t.strip_prefix("prime:")) {
            Ok(FieldDescriptor::Prime { p: num(p)? })
        } else {
            Err(bad())
        }
    }
}

/// Shared arithmetic context for one field.
#[derive(Debug)]
pub struct FieldCtx {
    desc: FieldDescriptor,
    degree: usize,
    /// Φ_m coefficients, low degree first, monic.
    modulus: Vec<BigInt>,
    /// `reduce[k]` = x^(degree + k) mod Φ_m, for k < degree - 1.
    reduce: Vec<Vec<BigInt>>,
    /// `reduce` in machine words, present when inline arithmetic applies to this field.
    reduce_small: Option<Vec<Vec<i64>>>,
}

/// A handle to a field; cheap to clone.
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Field {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Integer coefficients of the m-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Field, FieldError> {
        let (degree, modulus) = match &desc {
            FieldDescriptor::Rationals => (1, vec![BigInt::zero(), BigInt::one()]),
            FieldDescriptor::Cyclotomic { order } => {
                if *order == 0 {
                    return Err(FieldError::InvalidDescriptor("cyclotomic order must be >= 1".into()));
                }
                let phi = cyclotomic_polynomial(*order);
                (phi.len() - 1, phi)
            }
            FieldDescriptor::Prime { p } => {
                if !is_prime(*p) {
                    return Err(FieldError::InvalidDescriptor(format!("{p} is not prime")));
                }
                (1, vec![BigInt::zero(), BigInt::one()])
            }
        };
        let mut reduce = Vec::new();
        if degree > 1 {
            // x^degree = -(lower part of Φ)
            let mut cur: Vec<BigInt> = modulus[..degree].iter().map(|c| -c).collect();
            for _ in 0..degree.saturating_sub(1) {
                reduce.push(cur.clone());
                // multiply by x
                let top = cur[degree - 1].clone();
                let mut next = vec![BigInt::zero(); degree];
                for i in 1..degree {
                    next[i] = cur[i - 1].clone();
                }
                for i in 0..degree {
                    next[i] -= &top * &modulus[i];
                }
                cur = next;
            }
        }
        let reduce_small = if matches!(desc, FieldDescriptor::Prime { .. }) || degree > INLINE {
            None
        } else {
            reduce.iter().map(|row| row.iter().map(|c| c.to_i64()).collect::<Option<Vec<_>>>()).collect()
        };
        Ok(Field(Arc::new(FieldCtx { desc, degree, modulus, reduce, reduce_small })))
    }

    pub fn rationals() -> Field {
        Field::new(FieldDescriptor::Rationals).unwrap()
    }

    pub fn cyclotomic(order: u64) -> Result<Field, FieldError> {
        Field::new(FieldDescriptor::Cyclotomic { order })
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(FieldDescriptor::Prime { p })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn characteristic(&self) -> u64 {
        match self.0.desc {
            FieldDescriptor::Prime { p } => p,
            _ => 0,
        }
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::from_parts(self, vec![BigInt::zero(); self.0.degree], BigInt::one())
    }

    pub fn one(&self) -> Fe {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> Fe {
        self.from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn frac(&self, p: i64, q: i64) -> Result<Fe, FieldError> {
        if q == 0 {
            return Err(FieldError::DivisionByZero);
        }
        self.try_from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(&self, r: BigRational) -> Fe {
        self.try_from_rational(r).expect("denominator divisible by the characteristic")
    }

    pub fn try_from_rational(&self, r: BigRational) -> Result<Fe, FieldError> {
        let mut num = vec![BigInt::zero(); self.0.degree];
        if let FieldDescriptor::Prime { p } = self.0.desc {
            let pb = BigInt::from(p);
            let d = r.denom().mod_floor(&pb);
            if d.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            let inv = modinv(&d, &pb);
            num[0] = (r.numer() * inv).mod_floor(&pb);
            return Ok(Fe::from_parts(self, num, BigInt::one()));
        }
        num[0] = r.numer().clone();
        Ok(Fe::from_parts(self, num, r.denom().clone()))
    }

    /// Element from power-basis rational coordinates (reduced mod Φ_m if longer than the degree).
    pub fn from_coords(&self, coords: &[BigRational]) -> Result<Fe, FieldError> {
        let mut acc = self.zero();
        let gen = self.generator();
        let mut pw = self.one();
        for c in coords {
            acc = &acc + &(&pw * &self.try_from_rational(c.clone())?);
            pw = &pw * &gen;
        }
        Ok(acc)
    }

    /// The class of x: ζ_m for cyclotomic fields, 1 otherwise.
    pub fn generator(&self) -> Fe {
        if self.0.degree > 1 {
            let mut num = vec![BigInt::zero(); self.0.degree];
            num[1] = BigInt::one();
            Fe::from_parts(self, num, BigInt::one())
        } else if let FieldDescriptor::Cyclotomic { order } = self.0.desc {
            // degree one: order 1 or 2, ζ = 1 or -1
            if order == 2 {
                self.int(-1)
            } else {
                self.one()
            }
        } else {
            self.one()
        }
    }

    /// A primitive m-th root of unity.
    pub fn primitive_root(&self, m: u64) -> Result<Fe, FieldError> {
        let none = || FieldError::NoSuchRoot(m, self.0.desc.to_string());
        if m == 0 {
            return Err(none());
        }
        match self.0.desc {
            FieldDescriptor::Rationals => match m {
                1 => Ok(self.one()),
                2 => Ok(self.int(-1)),
                _ => Err(none()),
            },
            FieldDescriptor::Cyclotomic { order } => {
                let zeta = self.generator();
                if order % m == 0 {
                    Ok(zeta.pow((order / m) as i64))
                } else if order % 2 == 1 && (2 * order) % m == 0 {
                    // -ζ has order 2·order when order is odd
                    Ok((-&zeta).pow((2 * order / m) as i64))
                } else {
                    Err(none())
                }
            }
            FieldDescriptor::Prime { p } => {
                if (p - 1) % m != 0 {
                    return Err(none());
                }
                for c in 1..p {
                    let e = self.int(c as i64);
                    if has_exact_order(&e, m) {
                        return Ok(e);
                    }
                }
                Err(none())
            }
        }
    }

    /// Parse a scalar: a rational string "p/q" or an array of such strings (power basis).
    pub fn parse_json(&self, v: &serde_json::Value) -> Result<Fe, FieldError> {
        match v {
            serde_json::Value::String(s) => Ok(self.try_from_rational(parse_rational(s)?)?),
            serde_json::Value::Number(n) => {
                let k = n.as_i64().ok_or_else(|| FieldError::Parse(n.to_string()))?;
                Ok(self.int(k))
            }
            serde_json::Value::Array(items) => {
                let coords = items
                    .iter()
                    .map(|it| match it {
                        serde_json::Value::String(s) => parse_rational(s),
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(|k| BigRational::from_integer(BigInt::from(k)))
                            .ok_or_else(|| FieldError::Parse(n.to_string())),
                        other => Err(FieldError::Parse(other.to_string())),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                self.from_coords(&coords)
            }
            other => Err(FieldError::Parse(other.to_string())),
        }
    }
}

fn has_exact_order(e: &Fe, m: u64) -> bool {
    if !e.pow(m as i64).is_one() {
        return false;
    }
    (1..m).filter(|d| m % d == 0).all(|d| !e.pow(d as i64).is_one())
}

fn modinv(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

pub fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let s = s.trim();
    let err = || FieldError::Parse(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Elements of fields up to this degree keep machine-word coordinates while they fit.
const INLINE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Numerators (zero past the degree) and a positive denominator, all fitting in i64.
    Small([i64; INLINE], i64),
    Big(Vec<BigInt>, BigInt),
}

/// An exact field element in canonical form.
///
/// The representation is unique: a value uses `Small` whenever its reduced form fits, so
/// equality and hashing can compare representations directly.
#[derive(Clone)]
pub struct Fe {
    field: Field,
    repr: Repr,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Fe {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(n, _) => n.iter().all(|&c| c == 0),
            Repr::Big(n, _) => n.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small(n, d) => *d == 1 && n[0] == 1 && n[1..].iter().all(|&c| c == 0),
            Repr::Big(n, d) => d.is_one() && n[0].is_one() && n[1..].iter().all(|c| c.is_zero()),
        }
    }

    /// Numerators (length = degree) and denominator as big integers.
    fn parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small(n, d) => {
                (n[..self.field.0.degree].iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*d))
            }
            Repr::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    /// Power-basis coordinates in lowest terms.
    pub fn coords(&self) -> Vec<BigRational> {
        let (num, den) = self.parts();
        num.into_iter().map(|c| BigRational::new(c, den.clone())).collect()
    }

    /// The value as a rational, if it lies in the prime subfield (or ℚ).
    pub fn as_rational(&self) -> Option<BigRational> {
        let (num, den) = self.parts();
        if num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(num[0].clone(), den))
        } else {
            None
        }
    }

    fn prime(&self) -> Option<BigInt> {
        match self.field.0.desc {
            FieldDescriptor::Prime { p } => Some(BigInt::from(p)),
            _ => None,
        }
    }

    /// Canonical element from big numerators and a nonzero denominator.
    fn from_parts(field: &Field, mut num: Vec<BigInt>, mut den: BigInt) -> Fe {
        if let FieldDescriptor::Prime { p } = field.0.desc {
            let p = BigInt::from(p);
            let inv = modinv(&den.mod_floor(&p), &p);
            num[0] = (&num[0] * inv).mod_floor(&p);
            return Fe { field: field.clone(), repr: Repr::Big(num, BigInt::one()) };
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        } else if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if den.is_negative() {
                g = -g;
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = &den / &g;
            }
        }
        if field.0.reduce_small.is_some() {
            if let Some(d) = den.to_i64() {
                let mut small = [0i64; INLINE];
                if num.iter().zip(small.iter_mut()).all(|(c, s)| c.to_i64().map(|v| *s = v).is_some()) {
                    return Fe { field: field.clone(), repr: Repr::Small(small, d) };
                }
            }
        }
        Fe { field: field.clone(), repr: Repr::Big(num, den) }
    }

    /// Canonical element from wide numerators (entries past the degree are zero).
    fn from_wide(field: &Field, mut num: [i128; INLINE], mut den: i128) -> Fe {
        let mut g = den.unsigned_abs();
        for c in &num {
            if g == 1 {
                break;
            }
            if *c != 0 {
                g = gcd_u128(g, c.unsigned_abs());
            }
        }
        if num.iter().all(|&c| c == 0) {
            den = 1;
        } else if g != 1 || den < 0 {
            let g = if den < 0 { -(g as i128) } else { g as i128 };
            for c in num.iter_mut() {
                *c /= g;
            }
            den /= g;
        }
        let mut small = [0i64; INLINE];
        let fits = num.iter().zip(small.iter_mut()).all(|(&c, s)| i64::try_from(c).map(|v| *s = v).is_ok());
        match i64::try_from(den) {
            Ok(d) if fits => Fe { field: field.clone(), repr: Repr::Small(small, d) },
            _ => {
                let deg = field.0.degree;
                Fe::from_parts(field, num[..deg].iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(den))
            }
        }
    }

    pub fn check_same(&self, other: &Fe) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch(
                self.field.descriptor().to_string(),
                other.field.descriptor().to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.check_same(other)?;
        Ok(self * &other.inverse()?)
    }

    fn mul_small(&self, a: &[i64; INLINE], da: i64, b: &[i64; INLINE], db: i64) -> Option<Fe> {
        let deg = self.field.0.degree;
        let reduce = self.field.0.reduce_small.as_ref()?;
        let mut full = [0i128; 2 * INLINE];
        for i in 0..deg {
            if a[i] == 0 {
                continue;
            }
            for j in 0..deg {
                if b[j] != 0 {
                    full[i + j] = full[i + j].checked_add(a[i] as i128 * b[j] as i128)?;
                }
            }
        }
        let mut out = [0i128; INLINE];
        out[..deg].copy_from_slice(&full[..deg]);
        for k in deg..2 * deg - 1 {
            let c = full[k];
            if c == 0 {
                continue;
            }
            for (t, &r) in reduce[k - deg].iter().enumerate() {
                if r != 0 {
                    out[t] = out[t].checked_add(c.checked_mul(r as i128)?)?;
                }
            }
        }
        Some(Fe::from_wide(&self.field, out, da as i128 * db as i128))
    }

    fn mul_raw(&self, other: &Fe) -> Fe {
        if let (Repr::Small(a, da), Repr::Small(b, db)) = (&self.repr, &other.repr) {
            if let Some(r) = self.mul_small(a, *da, b, *db) {
                return r;
            }
        }
        let deg = self.field.0.degree;
        let (sn, sd) = self.parts();
        let (on, od) = other.parts();
        let mut out = vec![BigInt::zero(); deg];
        if deg == 1 {
            out[0] = &sn[0] * &on[0];
        } else {
            let mut full = vec![BigInt::zero(); 2 * deg - 1];
            for (i, a) in sn.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in on.iter().enumerate() {
                    if !b.is_zero() {
                        full[i + j] += a * b;
                    }
                }
            }
            for (k, c) in full.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k < deg {
                    out[k] += c;
                } else {
                    for (t, r) in self.field.0.reduce[k - deg].iter().enumerate() {
                        if !r.is_zero() {
                            out[t] += &c * r;
                        }
                    }
                }
            }
        }
        Fe::from_parts(&self.field, out, sd * od)
    }

    fn add_raw(&self, other: &Fe, sign: bool) -> Fe {
        if let (Repr::Small(a, da), Repr::Small(b, db)) = (&self.repr, &other.repr) {
            let mut out = [0i128; INLINE];
            let (fa, fb, den) = if da == db {
                (1i128, 1i128, *da as i128)
            } else {
                (*db as i128, *da as i128, *da as i128 * *db as i128)
            };
            for k in 0..self.field.0.degree {
                let l = a[k] as i128 * fa;
                let r = b[k] as i128 * fb;
                out[k] = if sign { l + r } else { l - r };
            }
            return Fe::from_wide(&self.field, out, den);
        }
        let (sn, sd) = self.parts();
        let (on, od) = other.parts();
        let num: Vec<BigInt> = sn
            .iter()
            .zip(&on)
            .map(|(a, b)| {
                let (l, r) = if sd == od { (a.clone(), b.clone()) } else { (a * &od, b * &sd) };
                if sign {
                    l + r
                } else {
                    l - r
                }
            })
            .collect();
        let den = if sd == od { sd } else { sd * od };
        Fe::from_parts(&self.field, num, den)
    }

    pub fn inverse(&self) -> Result<Fe, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (num, den) = self.parts();
        if let Some(p) = self.prime() {
            return Ok(Fe::from_parts(&self.field, vec![modinv(&num[0], &p)], BigInt::one()));
        }
        let deg = self.field.0.degree;
        if deg == 1 {
            return Ok(Fe::from_parts(&self.field, vec![den], num[0].clone()));
        }
        // Solve self * y = 1 via the multiplication matrix.
        let mut cols: Vec<Fe> = Vec::with_capacity(deg);
        let gen = self.field.generator();
        let mut pw = self.field.one();
        for _ in 0..deg {
            cols.push(&pw * self);
            pw = &pw * &gen;
        }
        // Gaussian elimination over ℚ on the deg x deg matrix M with M e_j = coords(self x^j).
        let mut m: Vec<Vec<BigRational>> = (0..deg)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coords()[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..deg {
            let piv = (c..deg).find(|&r| !m[r][c].is_zero()).ok_or(FieldError::DivisionByZero)?;
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..deg {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    let pivot_row = m[c].clone();
                    for (v, pv) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *v = &*v - &(&f * pv);
                    }
                }
            }
        }
        let coords: Vec<BigRational> = m.into_iter().map(|row| row[deg].clone()).collect();
        self.field.from_coords(&coords)
    }

    /// Integer power; negative exponents invert (panics on zero base with negative exponent).
    pub fn pow(&self, k: i64) -> Fe {
        let mut base = if k < 0 { self.inverse().expect("zero to a negative power") } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        if self.field.0.degree == 1 {
            serde_json::Value::String(format_rational(&self.coords()[0]))
        } else {
            serde_json::Value::Array(
                self.coords().iter().map(|c| serde_json::Value::String(format_rational(c))).collect(),
            )
        }
    }

    /// Approximate complex value under ζ ↦ e^{2πi/m}; display only.
    pub fn approx(&self) -> (f64, f64) {
        let coords = self.coords();
        let mut order = match self.field.0.desc {
            FieldDescriptor::Cyclotomic { order } => order,
            _ => 1,
        };
        if self.field.0.degree == 1 {
            order = 1;
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in coords.iter().enumerate() {
            let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (order as f64);
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

impl PartialEq for Fe {
    fn eq(&self, other: &Fe) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}
impl Eq for Fe {}

impl std::hash::Hash for Fe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.degree == 1 {
            return write!(f, "{}", format_rational(&self.coords()[0]));
        }
        let mut terms = Vec::new();
        for (k, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format_rational(c);
            terms.push(match k {
                0 => cs,
                1 => format!("({cs})*zeta"),
                _ => format!("({cs})*zeta^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> std::ops::$tr<&'a Fe> for &'a Fe {
            type Output = Fe;
            fn $m(self, rhs: &'a Fe) -> Fe {
                assert!(self.field == rhs.field, "field mismatch");
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl std::ops::$tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, rhs: Fe) -> Fe {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Fe, b: &Fe| a.add_raw(b, true));
binop!(Sub, sub, |a: &Fe, b: &Fe| a.add_raw(b, false));
binop!(Mul, mul, |a: &Fe, b: &Fe| a.mul_raw(b));
binop!(Div, div, |a: &Fe, b: &Fe| a.mul_raw(&b.inverse().expect("division by zero")));

impl std::ops::Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        match &self.repr {
            Repr::Small(n, d) if n.iter().all(|&c| c != i64::MIN) => {
                let mut m = *n;
                m.iter_mut().for_each(|c| *c = -*c);
                Fe { field: self.field.clone(), repr: Repr::Small(m, *d) }
            }
            _ => {
                let (num, den) = self.parts();
                Fe::from_parts(&self.field, num.into_iter().map(|c| -c).collect(), den)
            }
        }
    }
}
impl std::ops::Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

impl std::ops::AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, rhs: &Fe) {
        *self = &*self + rhs;
    }
}
