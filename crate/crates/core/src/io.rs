//! Algebra files: structure constants of a Hopf algebra, optionally with a ribbon structure.
//!
//! ```json
//! {"field": "Q", "dim": 2, "basis": ["1", "g"],
//!  "mult": [[["1","0"], ["0","1"]], [["0","1"], ["1","0"]]],
//!  "unit": ["1", "0"],
//!  "comult": {"1": [["1", "1", "1"]], "g": [["g", "g", "1"]]},
//!  "counit": ["1", "1"],
//!  "antipode": [["1", "0"], ["0", "1"]],
//!  "R": [["1", "1", "1"]], "theta": ["1", "0"]}
//! ```
//!
//! `mult[i][j]` and `antipode[j]` are coordinate vectors of e_i e_j and S(e_j); basis
//! elements may be named or indexed; "unit" defaults to the first basis vector; "R" and
//! "theta" are optional and only needed for ribbon operations.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Fe, Field, FieldDescriptor, FieldError};
use crate::hopf::{Elem, HopfAlgebra, HopfData, HopfError, Tensor};
use crate::linalg::{self, SparseVec};
use crate::ribbon::{RibbonError, RibbonHopf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("algebra file: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// Parsed algebra file, before verification.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub data: HopfData,
    pub r: Option<Tensor>,
    pub theta: Option<Elem>,
}

fn fmt_err(m: impl Into<String>) -> IoError {
    IoError::Format(m.into())
}

fn elem_json(v: &[Fe]) -> Value {
    Value::Array(v.iter().map(Fe::to_json).collect())
}

fn sparse_json(f: &Field, v: &SparseVec, dim: usize) -> Value {
    elem_json(&linalg::dense_from_sparse(f, v, dim))
}

impl AlgebraFile {
    pub fn from_ribbon(rh: &RibbonHopf) -> AlgebraFile {
        AlgebraFile { data: rh.hopf.data.clone(), r: Some(rh.r.clone()), theta: Some(rh.theta.clone()) }
    }

    pub fn to_json(&self) -> Value {
        let d = &self.data;
        let f = &d.field;
        let name = |i: usize| Value::String(d.basis_names[i].clone());
        let mut comult = serde_json::Map::new();
        for (i, terms) in d.comult.iter().enumerate() {
            let rows = terms.iter().map(|(&(a, b), c)| json!([name(a), name(b), c.to_json()])).collect();
            comult.insert(d.basis_names[i].clone(), Value::Array(rows));
        }
        let mut out = json!({
            "field": f.descriptor().to_string(),
            "dim": d.dim,
            "basis": d.basis_names,
            "mult": d.mult.iter().map(|row| row.iter().map(|v| sparse_json(f, v, d.dim)).collect()).collect::<Vec<Vec<Value>>>(),
            "unit": elem_json(&d.unit),
            "comult": Value::Object(comult),
            "counit": elem_json(&d.counit),
            "antipode": d.antipode.iter().map(|v| sparse_json(f, v, d.dim)).collect::<Vec<_>>(),
        });
        if let Some(r) = &self.r {
            out["R"] = Value::Array(r.terms.iter().map(|(k, c)| json!([name(k[0]), name(k[1]), c.to_json()])).collect());
        }
        if let Some(t) = &self.theta {
            out["theta"] = elem_json(t);
        }
        out
    }

    pub fn from_json(v: &Value) -> Result<AlgebraFile, IoError> {
        let field = match v.get("field").and_then(Value::as_str) {
            Some(s) => Field::new(s.parse::<FieldDescriptor>()?)?,
            None => Field::rationals(),
        };
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| fmt_err("missing dim"))? as usize;
        let basis_names: Vec<String> = match v.get("basis") {
            Some(Value::Array(b)) => b
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| fmt_err("basis names must be strings")))
                .collect::<Result<_, _>>()?,
            Some(_) => return Err(fmt_err("basis must be an array")),
            None => (0..dim).map(|i| format!("e{i}")).collect(),
        };
        if basis_names.len() != dim {
            return Err(fmt_err("basis has the wrong length"));
        }
        let index = |x: &Value| -> Result<usize, IoError> {
            match x {
                Value::String(s) => basis_names
                    .iter()
                    .position(|b| b == s)
                    .ok_or_else(|| fmt_err(format!("unknown basis element {s}"))),
                Value::Number(n) => {
                    n.as_u64().map(|i| i as usize).filter(|&i| i < dim).ok_or_else(|| fmt_err(format!("bad index {n}")))
                }
                other => Err(fmt_err(format!("bad basis reference {other}"))),
            }
        };
        let elem = |x: &Value, what: &str| -> Result<Elem, IoError> {
            let a = x.as_array().filter(|a| a.len() == dim).ok_or_else(|| fmt_err(format!("{what}: expected {dim} coordinates")))?;
            a.iter().map(|c| field.parse_json(c).map_err(IoError::from)).collect()
        };
        let get = |k: &str| v.get(k).ok_or_else(|| fmt_err(format!("missing {k}")));
        let mult_rows = get("mult")?.as_array().filter(|r| r.len() == dim).ok_or_else(|| fmt_err("mult must be dim x dim"))?;
        let mut mult = Vec::with_capacity(dim);
        for row in mult_rows {
            let row = row.as_array().filter(|r| r.len() == dim).ok_or_else(|| fmt_err("mult must be dim x dim"))?;
            mult.push(row.iter().map(|e| elem(e, "mult").map(|x| linalg::sparse_from_dense(&x))).collect::<Result<Vec<_>, _>>()?);
        }
        let unit = match v.get("unit") {
            Some(u) => elem(u, "unit")?,
            None => {
                let mut u = vec![field.zero(); dim];
                u[0] = field.one();
                u
            }
        };
        let triples = |x: &Value, what: &str| -> Result<Vec<(usize, usize, Fe)>, IoError> {
            let rows = x.as_array().ok_or_else(|| fmt_err(format!("{what} must be a list of triples")))?;
            rows.iter()
                .map(|t| {
                    let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| fmt_err(format!("{what} entries are [i, j, c]")))?;
                    Ok((index(&t[0])?, index(&t[1])?, field.parse_json(&t[2])?))
                })
                .collect()
        };
        let cm = get("comult")?.as_object().ok_or_else(|| fmt_err("comult must be an object"))?;
        let mut comult = vec![BTreeMap::new(); dim];
        for (k, terms) in cm {
            let i = index(&Value::String(k.clone())).or_else(|_| {
                k.parse::<usize>().ok().filter(|&i| i < dim).ok_or_else(|| fmt_err(format!("unknown basis element {k}")))
            })?;
            for (a, b, c) in triples(terms, "comult")? {
                let e = comult[i].entry((a, b)).or_insert_with(|| field.zero());
                *e += &c;
            }
            comult[i].retain(|_, c: &mut Fe| !c.is_zero());
        }
        let counit = elem(get("counit")?, "counit")?;
        let antipode_rows = get("antipode")?.as_array().filter(|r| r.len() == dim).ok_or_else(|| fmt_err("antipode must have dim rows"))?;
        let antipode = antipode_rows
            .iter()
            .map(|r| elem(r, "antipode").map(|x| linalg::sparse_from_dense(&x)))
            .collect::<Result<Vec<_>, _>>()?;
        let r = match v.get("R") {
            Some(x) => {
                let mut t = Tensor::zero(2);
                for (a, b, c) in triples(x, "R")? {
                    t.add_term(vec![a, b], &c);
                }
                Some(t)
            }
            None => None,
        };
        let theta = v.get("theta").map(|t| elem(t, "theta")).transpose()?;
        let data = HopfData { field, dim, basis_names, mult, unit, comult, counit, antipode };
        Ok(AlgebraFile { data, r, theta })
    }

    /// Verify the Hopf axioms and, when R and θ are present, the ribbon axioms.
    pub fn build(self) -> Result<(HopfAlgebra, Option<RibbonHopf>), IoError> {
        let h = HopfAlgebra::new(self.data)?;
        match (self.r, self.theta) {
            (Some(r), Some(theta)) => {
                let rh = RibbonHopf::new(h.clone(), r, theta)?;
                Ok((h, Some(rh)))
            }
            (None, None) => Ok((h, None)),
            _ => Err(fmt_err("R and theta must be given together")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_ribbon, radford_hn, HnSpec};

    #[test]
    fn ribbon_algebras_round_trip() {
        for rh in [radford_hn(&HnSpec::new(1).unwrap()).unwrap(), cyclic_ribbon(3, 1).unwrap().ribbon] {
            let v = AlgebraFile::from_ribbon(&rh).to_json();
            let text = serde_json::to_string(&v).unwrap();
            let back = AlgebraFile::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.to_json(), v);
            let (_, r2) = back.build().unwrap();
            let r2 = r2.unwrap();
            assert_eq!(r2.theta, rh.theta);
            assert_eq!(r2.g_special, rh.g_special);
        }
    }

    #[test]
    fn doc_example_is_a_ribbon_algebra() {
        let text = r#"{"field": "Q", "dim": 2, "basis": ["1", "g"],
            "mult": [[["1","0"], ["0","1"]], [["0","1"], ["1","0"]]],
            "unit": ["1", "0"],
            "comult": {"1": [["1", "1", "1"]], "g": [["g", "g", "1"]]},
            "counit": ["1", "1"],
            "antipode": [["1", "0"], ["0", "1"]],
            "R": [["1", "1", "1"]], "theta": ["1", "0"]}"#;
        let f = AlgebraFile::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        let (h, rh) = f.build().unwrap();
        assert!(h.is_unimodular());
        assert!(rh.is_some());
    }

    #[test]
    fn broken_antipode_is_rejected() {
        let rh = radford_hn(&HnSpec::new(1).unwrap()).unwrap();
        let mut v = AlgebraFile::from_ribbon(&rh).to_json();
        v["antipode"] = v["mult"][0].clone();
        let err = AlgebraFile::from_json(&v).unwrap().build().unwrap_err();
        assert!(matches!(err, IoError::Hopf(HopfError::AxiomFailed(_))), "{err}");
    }
}
