//! Lie algebras given by structure constants, read from JSON configs of the form
//! `{"basis": ["x","y","z"], "brackets": {"[x,y]": "z"}, "char": 3, "truncation": 4}`.
//!
//! Bracket values are linear combinations such as `2e`, `-h`, `x + 1/2 y` or `0`.
//! Unlisted brackets vanish; `[b,a]` is filled in by antisymmetry.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseVec;

type Combination = Vec<(usize, BigRational)>;

pub const SUPPORTED_CHARACTERISTICS: [u64; 5] = [0, 2, 3, 5, 7];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub basis: Vec<String>,
    /// `brackets[i][j]` as a sparse rational combination of basis elements.
    pub brackets: Vec<Vec<Vec<(usize, BigRational)>>>,
    pub characteristic: u64,
    pub truncation: usize,
    pub max_degree: usize,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl LieAlgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Whether this is `[b0, b1] = b2` with all other brackets zero.
    pub fn is_heisenberg(&self) -> bool {
        self.dim() == 3
            && (0..3).all(|i| {
                (0..3).all(|j| {
                    let expected = match (i, j) {
                        (0, 1) => vec![(2, rational(1))],
                        (1, 0) => vec![(2, rational(-1))],
                        _ => Vec::new(),
                    };
                    self.brackets[i][j] == expected
                })
            })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| schema("$", format!("invalid JSON: {e}")))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| schema("$", "expected an object"))?;
        for key in obj.keys() {
            if ![
                "name",
                "basis",
                "brackets",
                "char",
                "truncation",
                "max_degree",
            ]
            .contains(&key.as_str())
            {
                return Err(schema(format!("$.{key}"), "unknown field"));
            }
        }
        let basis_v = obj
            .get("basis")
            .ok_or_else(|| schema("$.basis", "missing"))?;
        let basis_a = basis_v
            .as_array()
            .ok_or_else(|| schema("$.basis", "expected an array of names"))?;
        let mut basis = Vec::new();
        for (k, b) in basis_a.iter().enumerate() {
            let name = b
                .as_str()
                .ok_or_else(|| schema(format!("$.basis[{k}]"), "expected a string"))?;
            if !valid_name(name) {
                return Err(schema(
                    format!("$.basis[{k}]"),
                    format!("{name:?} is not an identifier"),
                ));
            }
            if basis.iter().any(|n: &String| n == name) {
                return Err(schema(
                    format!("$.basis[{k}]"),
                    format!("duplicate name {name:?}"),
                ));
            }
            basis.push(name.to_string());
        }
        if basis.is_empty() {
            return Err(schema("$.basis", "must be nonempty"));
        }
        let characteristic = match obj.get("char") {
            None => 0,
            Some(c) => c
                .as_u64()
                .ok_or_else(|| schema("$.char", "expected a nonnegative integer"))?,
        };
        if !SUPPORTED_CHARACTERISTICS.contains(&characteristic) {
            return Err(schema("$.char", format!("characteristic {characteristic} unsupported; use one of {SUPPORTED_CHARACTERISTICS:?}")));
        }
        let uint = |key: &str, default: usize, min: usize| -> Result<usize> {
            match obj.get(key) {
                None => Ok(default),
                Some(x) => {
                    let n = x.as_u64().ok_or_else(|| {
                        schema(format!("$.{key}"), "expected a nonnegative integer")
                    })? as usize;
                    if n < min {
                        return Err(schema(
                            format!("$.{key}"),
                            format!("must be at least {min}"),
                        ));
                    }
                    Ok(n)
                }
            }
        };
        let truncation = uint("truncation", 3, 2)?;
        let max_degree = uint("max_degree", 4, 2)?;
        let name = match obj.get("name") {
            None => "lie".to_string(),
            Some(n) => n
                .as_str()
                .ok_or_else(|| schema("$.name", "expected a string"))?
                .to_string(),
        };
        let dim = basis.len();
        let mut brackets: Vec<Vec<Option<Combination>>> = vec![vec![None; dim]; dim];
        if let Some(b) = obj.get("brackets") {
            let map = b
                .as_object()
                .ok_or_else(|| schema("$.brackets", "expected an object"))?;
            for (key, val) in map {
                let path = format!("$.brackets[\"{key}\"]");
                let (i, j) = parse_pair(key, &basis).map_err(|m| schema(&path, m))?;
                let text = val
                    .as_str()
                    .ok_or_else(|| schema(&path, "expected a string"))?;
                let comb = parse_combination(text, &basis).map_err(|m| schema(&path, m))?;
                if i == j && !comb.is_empty() {
                    return Err(schema(
                        &path,
                        "the bracket of an element with itself must vanish",
                    ));
                }
                let neg: Vec<(usize, BigRational)> =
                    comb.iter().map(|(k, c)| (*k, -c.clone())).collect();
                for (a, b, c) in [(i, j, comb), (j, i, neg)] {
                    match &brackets[a][b] {
                        Some(prev) if *prev != c => {
                            return Err(schema(&path, "inconsistent with the antisymmetric entry"));
                        }
                        _ => brackets[a][b] = Some(c),
                    }
                }
            }
        }
        let brackets = brackets
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap_or_default).collect())
            .collect();
        let spec = LieAlgebraSpec {
            name,
            basis,
            brackets,
            characteristic,
            truncation,
            max_degree,
        };
        spec.check_jacobi_rational()?;
        Ok(spec)
    }

    /// Structure constants reduced into `F`, with the Jacobi identity checked there.
    pub fn structure<F: Field>(&self) -> Result<Vec<Vec<SparseVec<F>>>> {
        if F::characteristic() != self.characteristic {
            return Err(Error::InvalidLie(format!(
                "spec has characteristic {}, field has {}",
                self.characteristic,
                F::characteristic()
            )));
        }
        let mut out = Vec::new();
        for row in &self.brackets {
            let mut r = Vec::new();
            for comb in row {
                let mut entries = Vec::new();
                for (k, c) in comb {
                    let v = F::from_ratio(c.numer(), c.denom()).ok_or_else(|| {
                        Error::InvalidLie(format!(
                            "coefficient {c} has no value in characteristic {}",
                            self.characteristic
                        ))
                    })?;
                    entries.push((*k, v));
                }
                r.push(SparseVec::from_entries(entries));
            }
            out.push(r);
        }
        check_jacobi(&out)?;
        Ok(out)
    }

    fn check_jacobi_rational(&self) -> Result<()> {
        let st: Vec<Vec<SparseVec<BigRational>>> = self
            .brackets
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| SparseVec::from_entries(c.clone()))
                    .collect()
            })
            .collect();
        check_jacobi(&st)
    }

    pub fn heisenberg(characteristic: u64, truncation: usize) -> Self {
        let text = format!(
            r#"{{"name":"heisenberg","basis":["x","y","z"],"brackets":{{"[x,y]":"z"}},"char":{characteristic},"truncation":{truncation}}}"#
        );
        Self::from_json_str(&text).expect("built-in spec")
    }

    pub fn sl2(characteristic: u64, truncation: usize) -> Self {
        let text = format!(
            r#"{{"name":"sl2","basis":["e","f","h"],"brackets":{{"[e,f]":"h","[h,e]":"2e","[h,f]":"-2f"}},"char":{characteristic},"truncation":{truncation}}}"#
        );
        Self::from_json_str(&text).expect("built-in spec")
    }

    pub fn abelian(dim: usize, characteristic: u64, truncation: usize) -> Self {
        let basis: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        let text = format!(
            r#"{{"name":"abelian","basis":{},"char":{characteristic},"truncation":{truncation}}}"#,
            serde_json::to_string(&basis).expect("names")
        );
        Self::from_json_str(&text).expect("built-in spec")
    }
}

/// Lie bracket of two combinations of basis elements.
pub fn lie_bracket<F: Field>(
    st: &[Vec<SparseVec<F>>],
    a: &SparseVec<F>,
    b: &SparseVec<F>,
) -> SparseVec<F> {
    let mut out = SparseVec::zero();
    for (i, x) in a.entries() {
        for (j, y) in b.entries() {
            out = out.add_scaled(&(x.clone() * y.clone()), &st[*i][*j]);
        }
    }
    out
}

fn check_jacobi<F: Field>(st: &[Vec<SparseVec<F>>]) -> Result<()> {
    let n = st.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b, c) = (SparseVec::unit(i), SparseVec::unit(j), SparseVec::unit(k));
                let s = lie_bracket(st, &a, &lie_bracket(st, &b, &c))
                    .add(&lie_bracket(st, &b, &lie_bracket(st, &c, &a)))
                    .add(&lie_bracket(st, &c, &lie_bracket(st, &a, &b)));
                if !s.is_zero() {
                    return Err(Error::InvalidLie(format!(
                        "Jacobi identity fails on basis triple ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_pair(key: &str, basis: &[String]) -> std::result::Result<(usize, usize), String> {
    let inner = key
        .trim()
        .strip_prefix('[')
        .and_then(|k| k.strip_suffix(']'))
        .ok_or_else(|| format!("key {key:?} must look like \"[a,b]\""))?;
    let mut parts = inner.split(',');
    let (a, b) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => (a.trim(), b.trim()),
        _ => return Err(format!("key {key:?} must name exactly two basis elements")),
    };
    let find = |n: &str| {
        basis
            .iter()
            .position(|b| b == n)
            .ok_or_else(|| format!("unknown basis element {n:?}"))
    };
    Ok((find(a)?, find(b)?))
}

/// Parses `2e - h + 1/2 x` into a sparse combination over `basis`.
pub fn parse_combination(
    text: &str,
    basis: &[String],
) -> std::result::Result<Vec<(usize, BigRational)>, String> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    if s.iter().collect::<String>() == "0" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err("empty combination".into());
    }
    let mut pos = 0;
    while pos < s.len() {
        let mut sign = BigRational::one();
        if s[pos] == '+' || s[pos] == '-' {
            if s[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(format!("expected + or - at position {pos}"));
        }
        let start = pos;
        while pos < s.len() && (s[pos].is_ascii_digit() || s[pos] == '/') {
            pos += 1;
        }
        let coeff = if pos > start {
            let lit: String = s[start..pos].iter().collect();
            let r: BigRational = lit
                .parse()
                .map_err(|_| format!("malformed coefficient {lit:?}"))?;
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
            }
            r
        } else {
            BigRational::one()
        };
        let nstart = pos;
        while pos < s.len() && (s[pos].is_ascii_alphanumeric() || s[pos] == '_' || s[pos] == '\'') {
            pos += 1;
        }
        if pos == nstart {
            return Err(format!("expected a basis element at position {nstart}"));
        }
        let name: String = s[nstart..pos].iter().collect();
        let idx = basis
            .iter()
            .position(|b| *b == name)
            .ok_or_else(|| format!("unknown basis element {name:?}"))?;
        let e = acc.entry(idx).or_insert_with(BigRational::zero);
        *e = e.clone() + sign * coeff;
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// Integer as a rational, for callers assembling constants.
pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_parse() {
        let basis = vec!["e".to_string(), "f".to_string(), "h".to_string()];
        assert_eq!(
            parse_combination("2e", &basis).unwrap(),
            vec![(0, rational(2))]
        );
        assert_eq!(
            parse_combination("-2 f + h", &basis).unwrap(),
            vec![(1, rational(-2)), (2, rational(1))]
        );
        assert!(parse_combination("2q", &basis).is_err());
        assert!(parse_combination("", &basis).is_err());
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let bad = r#"{"basis":["a","b","c"],"brackets":{"[a,b]":"a","[b,c]":"b","[a,c]":"c"}}"#;
        assert!(LieAlgebraSpec::from_json_str(bad).is_err());
        let unknown = r#"{"basis":["a"],"brakets":{}}"#;
        match LieAlgebraSpec::from_json_str(unknown) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.brakets"),
            other => panic!("{other:?}"),
        }
    }
}
