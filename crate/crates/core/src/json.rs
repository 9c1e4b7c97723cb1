//! JSON encodings for matrices and family specs.
//!
//! Matrices are `{"rows": r, "cols": c, "entries": ["…", …]}` with decimal
//! strings in row-major order; rationals use `"p/q"`.

use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::scalar::Scalar;
use crate::{Int, IntMatrix, Matrix, Rat, RatMatrix};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl<T: Scalar> From<&Matrix<T>> for MatrixJson {
    fn from(m: &Matrix<T>) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(ToString::to_string).collect(),
        }
    }
}

impl MatrixJson {
    fn parse_with<T: Scalar>(&self, f: impl Fn(&str) -> Option<T>) -> Result<Matrix<T>> {
        let entries = self
            .entries
            .iter()
            .map(|s| f(s.trim()).ok_or_else(|| Error::Parse(format!("bad matrix entry `{s}`"))))
            .collect::<Result<Vec<T>>>()?;
        Matrix::new(self.rows, self.cols, entries)
    }

    pub fn to_int(&self) -> Result<IntMatrix> {
        self.parse_with(|s| Int::from_str(s).ok())
    }

    pub fn to_rat(&self) -> Result<RatMatrix> {
        self.parse_with(|s| Rat::from_str(s).ok())
    }
}

pub fn matrix_value<T: Scalar>(m: &Matrix<T>) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("plain data")
}

pub fn matrix_string<T: Scalar>(m: &Matrix<T>) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("plain data")
}

pub fn int_matrix_from_value(v: &Value) -> Result<IntMatrix> {
    let mj: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    mj.to_int()
}

pub fn rat_matrix_from_value(v: &Value) -> Result<RatMatrix> {
    let mj: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    mj.to_rat()
}

pub fn spec_value(spec: &FamilySpec) -> Value {
    let mut v = json!({"kind": spec.kind.code(), "n": spec.n, "r": spec.r});
    if let Some(a) = &spec.a {
        v["A"] = matrix_value(a);
    }
    if let Some(m) = &spec.m {
        v["M"] = matrix_value(m);
    }
    v
}

pub fn spec_from_value(v: &Value) -> Result<FamilySpec> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("spec needs a string `kind`".into()))
        .and_then(FamilyKind::parse)?;
    let dim = |key: &str| {
        v.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("spec needs an integer `{key}`")))
    };
    let n = dim("n")?;
    let r = match (kind, v.get("r")) {
        (FamilyKind::Custom, None) => 0,
        _ => dim("r")?,
    };
    let spec = if kind == FamilyKind::Custom {
        let a = int_matrix_from_value(v.get("A").ok_or_else(|| Error::Parse("custom spec needs `A`".into()))?)?;
        let m = int_matrix_from_value(v.get("M").ok_or_else(|| Error::Parse("custom spec needs `M`".into()))?)?;
        if r != 0 && r != a.rows() {
            return Err(Error::InvalidSpec(format!("r={r} but A is {}x{}", a.rows(), a.cols())));
        }
        FamilySpec::custom(n, a, m)?
    } else {
        FamilySpec::named(kind, n, r)
    };
    spec.validate()?;
    Ok(spec)
}
