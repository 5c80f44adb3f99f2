//! Fusion-level Kirby calculus: the e_λ basis of Hom(𝟙, B) for the coend B of a fusion
//! category, necessary conditions on Kirby elements, and subcategory sums.
//!
//! Fusion data can be written by hand, built for pointed ℤ/N, or extracted from the simple
//! modules of a semisimple ribbon Hopf algebra by decomposing tensor products.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::evaluator::twist_scalar;
use crate::field::{Fe, Field, FieldDescriptor, FieldError};
use crate::hopf::{AxiomReport, HopfAlgebra};
use crate::linalg::{self, Matrix, SparseVec};
use crate::ribbon::{Rep, RibbonHopf};

/// Above this many labels, subset enumeration is refused.
pub const SUBSET_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("fusion axiom failed: {0}")]
    AxiomFailed(String),
    #[error("malformed fusion data: {0}")]
    Malformed(String),
    #[error("{0} labels: subset enumeration refused above {SUBSET_LIMIT}")]
    ExponentialGuard(usize),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Labels with duality, quantum dimensions, twists and fusion multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionData {
    pub field: Field,
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub dims: Vec<Fe>,
    pub twists: Vec<Fe>,
    /// (λ, μ, ν) ↦ N^ν_{λμ}, nonzero entries only.
    pub mult: BTreeMap<(usize, usize, usize), u64>,
}

/// Coefficients α_λ in the e_λ basis, indexed like the labels.
pub type FusionVector = Vec<Fe>;

impl FusionData {
    /// Checks shapes, that duality is an involution fixing the unit, and that dims and
    /// twists are invertible. The fusion axioms themselves are left to [`verify_fusion`].
    pub fn new(
        field: &Field,
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        dims: Vec<Fe>,
        twists: Vec<Fe>,
        mult: BTreeMap<(usize, usize, usize), u64>,
    ) -> Result<FusionData, FusionError> {
        let n = labels.len();
        let bad = |m: &str| Err(FusionError::Malformed(m.to_string()));
        if n == 0 || unit >= n {
            return bad("unit label missing");
        }
        if dual.len() != n || dims.len() != n || twists.len() != n {
            return bad("dual, dims and twists must have one entry per label");
        }
        if dual.iter().any(|&d| d >= n) || (0..n).any(|l| dual[dual[l]] != l) || dual[unit] != unit {
            return bad("duality must be an involution fixing the unit");
        }
        if dims.iter().chain(&twists).any(|x| x.is_zero() || x.field() != field) {
            return bad("dims and twists must be nonzero elements of the declared field");
        }
        if mult.keys().any(|&(a, b, c)| a >= n || b >= n || c >= n) {
            return bad("fusion triple out of range");
        }
        let mult = mult.into_iter().filter(|(_, m)| *m > 0).collect();
        Ok(FusionData { field: field.clone(), labels, unit, dual, dims, twists, mult })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// N^ν_{λμ}.
    pub fn n(&self, l: usize, m: usize, nu: usize) -> u64 {
        self.mult.get(&(l, m, nu)).copied().unwrap_or(0)
    }

    pub fn label_index(&self, name: &str) -> Result<usize, FusionError> {
        self.labels.iter().position(|l| l == name).ok_or_else(|| FusionError::UnknownLabel(name.to_string()))
    }

    /// e_λ.
    pub fn basis(&self, l: usize) -> FusionVector {
        let mut v = vec![self.field.zero(); self.len()];
        v[l] = self.field.one();
        v
    }

    /// Σ_{λ∈E} dim_q(λ) e_λ.
    pub fn subset_sum(&self, subset: &[usize]) -> FusionVector {
        let mut v = vec![self.field.zero(); self.len()];
        for &l in subset {
            v[l] = self.dims[l].clone();
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let name = |i: usize| serde_json::Value::String(self.labels[i].clone());
        serde_json::json!({
            "field": self.field.descriptor().to_string(),
            "labels": self.labels,
            "unit": name(self.unit),
            "dual": self.dual.iter().map(|&d| name(d)).collect::<Vec<_>>(),
            "dims": self.dims.iter().map(Fe::to_json).collect::<Vec<_>>(),
            "twists": self.twists.iter().map(Fe::to_json).collect::<Vec<_>>(),
            "N": self.mult.iter().map(|(&(a, b, c), &m)| serde_json::json!([name(a), name(b), name(c), m])).collect::<Vec<_>>(),
        })
    }

    /// Reads the format written by [`FusionData::to_json`]; "field" defaults to ℚ and labels
    /// may be referred to by name or by index.
    pub fn from_json(v: &serde_json::Value) -> Result<FusionData, FusionError> {
        let bad = |m: &str| FusionError::Malformed(m.to_string());
        let field = match v.get("field").and_then(|f| f.as_str()) {
            Some(s) => Field::new(s.parse::<FieldDescriptor>()?)?,
            None => Field::rationals(),
        };
        let labels: Vec<String> = v
            .get("labels")
            .and_then(|l| l.as_array())
            .ok_or_else(|| bad("labels"))?
            .iter()
            .map(|l| match l {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                _ => Err(bad("labels must be strings")),
            })
            .collect::<Result<_, _>>()?;
        let label = |x: &serde_json::Value| -> Result<usize, FusionError> {
            match x {
                serde_json::Value::String(s) => {
                    labels.iter().position(|l| l == s).ok_or_else(|| FusionError::UnknownLabel(s.clone()))
                }
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(|i| i as usize)
                    .filter(|&i| i < labels.len())
                    .ok_or_else(|| FusionError::UnknownLabel(n.to_string())),
                other => Err(FusionError::UnknownLabel(other.to_string())),
            }
        };
        let list = |key: &str| v.get(key).and_then(|l| l.as_array()).ok_or_else(|| bad(key));
        let unit = label(v.get("unit").ok_or_else(|| bad("unit"))?)?;
        let dual = list("dual")?.iter().map(&label).collect::<Result<Vec<_>, _>>()?;
        let scalars = |key: &str| -> Result<Vec<Fe>, FusionError> {
            list(key)?.iter().map(|x| field.parse_json(x).map_err(FusionError::from)).collect()
        };
        let dims = scalars("dims")?;
        let twists = scalars("twists")?;
        let mut mult = BTreeMap::new();
        for t in list("N")? {
            let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(|| bad("N entries are [l, m, nu, mult]"))?;
            let m = t[3].as_u64().ok_or_else(|| bad("multiplicity must be a non-negative integer"))?;
            *mult.entry((label(&t[0])?, label(&t[1])?, label(&t[2])?)).or_insert(0) += m;
        }
        FusionData::new(&field, labels, unit, dual, dims, twists, mult)
    }
}

/// Pointed fusion data of ℤ/N: λ⊗μ = λ+μ, all dims 1, the given twists (labels "0".."N-1").
pub fn pointed_cyclic(field: &Field, order: usize, twists: Vec<Fe>) -> Result<FusionData, FusionError> {
    let labels = (0..order).map(|l| l.to_string()).collect();
    let dual = (0..order).map(|l| (order - l) % order).collect();
    let mut mult = BTreeMap::new();
    for a in 0..order {
        for b in 0..order {
            mult.insert((a, b, (a + b) % order), 1);
        }
    }
    FusionData::new(field, labels, 0, dual, vec![field.one(); order], twists, mult)
}

/// Pointed ℤ/N over ℚ with trivial twists.
pub fn pointed_cyclic_trivial(order: usize) -> FusionData {
    let q = Field::rationals();
    pointed_cyclic(&q, order, vec![q.one(); order]).expect("well-formed pointed data")
}

/// Matrix of ρ(e_i) on A⊗B, through Δ(e_i).
fn tensor_rep(h: &HopfAlgebra, a: &Rep, b: &Rep) -> Rep {
    let f = h.field();
    let dim = a.dim * b.dim;
    let mats = (0..h.dim())
        .map(|i| {
            let mut m = Matrix::zeros(f, dim, dim);
            for (&(j, k), c) in h.comult_basis(i) {
                let (x, y) = (&a.mats[j], &b.mats[k]);
                for r1 in 0..a.dim {
                    for c1 in 0..a.dim {
                        let xv = x.get(r1, c1);
                        if xv.is_zero() {
                            continue;
                        }
                        let cx = c * xv;
                        for r2 in 0..b.dim {
                            for c2 in 0..b.dim {
                                let yv = y.get(r2, c2);
                                if !yv.is_zero() {
                                    let (row, col) = (r1 * b.dim + r2, c1 * b.dim + c2);
                                    let cur = m.get(row, col).clone();
                                    m.set(row, col, &cur + &(&cx * yv));
                                }
                            }
                        }
                    }
                }
            }
            m
        })
        .collect();
    Rep { dim, mats }
}

/// The dual module: h acts by ρ(S(h))ᵀ.
fn dual_rep(h: &HopfAlgebra, a: &Rep) -> Rep {
    let mats = (0..h.dim()).map(|i| a.act(h, &h.antipode(&h.basis(i))).transpose()).collect();
    Rep { dim: a.dim, mats }
}

/// dim Hom_H(A, B), as the solution space of ρ_B(e_i)X = Xρ_A(e_i).
pub fn hom_dim(h: &HopfAlgebra, a: &Rep, b: &Rep) -> usize {
    let f = h.field();
    let var = |r: usize, c: usize| r * a.dim + c;
    let mut rows = Vec::new();
    for i in 0..h.dim() {
        let (ra, rb) = (&a.mats[i], &b.mats[i]);
        for p in 0..b.dim {
            for q in 0..a.dim {
                let mut row = SparseVec::new();
                for k in 0..b.dim {
                    linalg::axpy(&mut row, rb.get(p, k), &SparseVec::from([(var(k, q), f.one())]));
                }
                for k in 0..a.dim {
                    linalg::axpy(&mut row, &-ra.get(k, q), &SparseVec::from([(var(p, k), f.one())]));
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    linalg::kernel(f, a.dim * b.dim, rows).len()
}

/// Fusion data of a complete list of pairwise non-isomorphic simple modules with scalar
/// twists: multiplicities by decomposing every tensor product, duals by matching the dual
/// module, dims as quantum dimensions.
pub fn fusion_from_modules(rh: &RibbonHopf, simples: &[Rep], labels: Vec<String>) -> Result<FusionData, FusionError> {
    let h = &rh.hopf;
    let bad = |m: String| FusionError::Malformed(m);
    if labels.len() != simples.len() {
        return Err(bad("one label per module".into()));
    }
    let find = |m: &Rep, what: &str| -> Result<usize, FusionError> {
        let hits: Vec<usize> = (0..simples.len()).filter(|&j| hom_dim(h, m, &simples[j]) > 0).collect();
        match hits.as_slice() {
            [j] if simples[*j].dim == m.dim => Ok(*j),
            _ => Err(bad(format!("{what} is not one of the given simple modules"))),
        }
    };
    let unit = find(&Rep::trivial(h), "the trivial module")?;
    let dual = simples.iter().map(|s| find(&dual_rep(h, s), "a dual module")).collect::<Result<Vec<_>, _>>()?;
    let dims = simples.iter().map(|s| rh.quantum_dim(s)).collect();
    let twists = simples
        .iter()
        .enumerate()
        .map(|(i, s)| twist_scalar(rh, s).ok_or_else(|| bad(format!("module {i} has no scalar twist"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut mult = BTreeMap::new();
    for (a, sa) in simples.iter().enumerate() {
        for (b, sb) in simples.iter().enumerate() {
            let t = tensor_rep(h, sa, sb);
            let mut total = 0;
            for (c, sc) in simples.iter().enumerate() {
                let m = hom_dim(h, sc, &t) / hom_dim(h, sc, sc);
                if m > 0 {
                    mult.insert((a, b, c), m as u64);
                    total += m * sc.dim;
                }
            }
            if total != t.dim {
                return Err(bad(format!("{} ⊗ {} does not decompose into the given simples", labels[a], labels[b])));
            }
        }
    }
    FusionData::new(h.field(), labels, unit, dual, dims, twists, mult)
}

/// Checks N^𝟙_{λμ} = δ_{λ,μ∨}, associativity of N, and dim_q(λ)dim_q(μ) = Σ_ν N^ν_{λμ} dim_q(ν).
pub fn check_fusion(data: &FusionData) -> AxiomReport {
    let n = data.len();
    let duality = (0..n).all(|l| (0..n).all(|m| data.n(l, m, data.unit) == u64::from(l == data.dual[m])));
    let assoc = (0..n).all(|l| {
        (0..n).all(|m| {
            (0..n).all(|r| {
                (0..n).all(|nu| {
                    let lhs: u64 = (0..n).map(|x| data.n(l, m, x) * data.n(x, r, nu)).sum();
                    let rhs: u64 = (0..n).map(|x| data.n(l, x, nu) * data.n(m, r, x)).sum();
                    lhs == rhs
                })
            })
        })
    });
    let dims = (0..n).all(|l| {
        (0..n).all(|m| {
            let mut s = data.field.zero();
            for nu in 0..n {
                let k = data.n(l, m, nu);
                if k > 0 {
                    s += &(&data.field.int(k as i64) * &data.dims[nu]);
                }
            }
            s == &data.dims[l] * &data.dims[m]
        })
    });
    AxiomReport {
        checks: vec![
            ("N^1 = duality".to_string(), duality),
            ("N associative".to_string(), assoc),
            ("dims multiplicative".to_string(), dims),
        ],
    }
}

/// [`check_fusion`], failing on the first violated axiom.
pub fn verify_fusion(data: &FusionData) -> Result<AxiomReport, FusionError> {
    let rep = check_fusion(data);
    match rep.failed().first() {
        Some(name) => Err(FusionError::AxiomFailed(name.to_string())),
        None => Ok(rep),
    }
}

/// m_B(α⊗β) = Σ α_λ β_μ N^ν_{λμ} e_ν.
pub fn m_b(data: &FusionData, alpha: &[Fe], beta: &[Fe]) -> FusionVector {
    let mut out = vec![data.field.zero(); data.len()];
    for (&(l, m, nu), &k) in &data.mult {
        if alpha[l].is_zero() || beta[m].is_zero() {
            continue;
        }
        out[nu] += &(&(&alpha[l] * &beta[m]) * &data.field.int(k as i64));
    }
    out
}

/// S_B(e_λ) = e_{λ∨}.
pub fn s_b(data: &FusionData, alpha: &[Fe]) -> FusionVector {
    let mut out = vec![data.field.zero(); data.len()];
    for (l, a) in alpha.iter().enumerate() {
        out[data.dual[l]] = a.clone();
    }
    out
}

/// ε_B(e_λ) = dim_q(λ).
pub fn eps_b(data: &FusionData, alpha: &[Fe]) -> Fe {
    let mut s = data.field.zero();
    for (a, d) in alpha.iter().zip(&data.dims) {
        s += &(a * d);
    }
    s
}

/// η_B = e_𝟙.
pub fn unit_b(data: &FusionData) -> FusionVector {
    data.basis(data.unit)
}

/// (id⊗f_μ)Δ_B: keeps the e_μ coefficient only.
pub fn slice_b(data: &FusionData, alpha: &[Fe], mu: usize) -> FusionVector {
    let mut out = vec![data.field.zero(); data.len()];
    out[mu] = alpha[mu].clone();
    out
}

/// Outcome of [`kirby_necessary`]. Passing does not prove membership in the Kirby set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryReport {
    pub checks: AxiomReport,
}

impl NecessaryReport {
    pub fn passed(&self) -> bool {
        self.checks.all_pass()
    }

    pub fn label(&self) -> &'static str {
        if self.passed() {
            "necessary conditions passed"
        } else {
            "necessary conditions failed"
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"result": self.label(), "checks": self.checks.to_json()})
    }
}

/// Necessary conditions for α ∈ Hom(𝟙, B) to be a Kirby element: S_B-fixed,
/// α_λ = α_𝟙 dim_q(λ) on the support, the quadratic relation
/// dim_q(μ) α_μ α_ν = α_μ Σ_λ N^ν_{λμ} α_λ, and m_B(α⊗e_λ) = dim_q(λ)α = m_B(e_λ⊗α) on the support.
pub fn kirby_necessary(data: &FusionData, alpha: &[Fe]) -> NecessaryReport {
    let n = data.len();
    let f = &data.field;
    let support: Vec<usize> = (0..n).filter(|&l| !alpha[l].is_zero()).collect();
    let fixed = s_b(data, alpha) == alpha;
    let prop = support.iter().all(|&l| alpha[l] == &alpha[data.unit] * &data.dims[l]);
    let quadratic = (0..n).all(|m| {
        alpha[m].is_zero()
            || (0..n).all(|nu| {
                let mut s = f.zero();
                for l in 0..n {
                    let k = data.n(l, m, nu);
                    if k > 0 && !alpha[l].is_zero() {
                        s += &(&f.int(k as i64) * &alpha[l]);
                    }
                }
                &data.dims[m] * &alpha[nu] == s
            })
    });
    let absorbs = support.iter().all(|&l| {
        let e = data.basis(l);
        let target: FusionVector = alpha.iter().map(|a| a * &data.dims[l]).collect();
        m_b(data, alpha, &e) == target && m_b(data, &e, alpha) == target
    });
    NecessaryReport {
        checks: AxiomReport {
            checks: vec![
                ("S_B-fixed".to_string(), fixed),
                ("proportional to dims on support".to_string(), prop),
                ("quadratic relation".to_string(), quadratic),
                ("m_B(alpha, e) = dim(e) alpha".to_string(), absorbs),
            ],
        },
    }
}

/// Every E ∋ 𝟙 closed under duals and fusion, ordered by size then lexicographically.
pub fn closed_subsets(data: &FusionData) -> Result<Vec<Vec<usize>>, FusionError> {
    let n = data.len();
    if n > SUBSET_LIMIT {
        return Err(FusionError::ExponentialGuard(n));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask & (1 << data.unit) == 0 {
            continue;
        }
        let inside = |l: usize| mask & (1 << l) != 0;
        let closed = (0..n).filter(|&l| inside(l)).all(|l| inside(data.dual[l]))
            && data.mult.keys().all(|&(a, b, c)| !(inside(a) && inside(b)) || inside(c));
        if closed {
            out.push((0..n).filter(|&l| inside(l)).collect::<Vec<_>>());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Δ± restricted to E, with a flag that both are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPm {
    pub plus: Fe,
    pub minus: Fe,
    pub nonzero: bool,
}

/// Σ_{λ∈E} v_λ^{±1} dim_q(λ)².
pub fn delta_pm(data: &FusionData, subset: &[usize]) -> Result<DeltaPm, FusionError> {
    let mut plus = data.field.zero();
    let mut minus = data.field.zero();
    for &l in subset {
        if l >= data.len() {
            return Err(FusionError::UnknownLabel(l.to_string()));
        }
        let d2 = &data.dims[l] * &data.dims[l];
        plus += &(&data.twists[l] * &d2);
        minus += &(&data.twists[l].inverse()? * &d2);
    }
    let nonzero = !plus.is_zero() && !minus.is_zero();
    Ok(DeltaPm { plus, minus, nonzero })
}
