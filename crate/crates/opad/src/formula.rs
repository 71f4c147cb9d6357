//! Signed cup-i products and brackets as sums of `E(f)(a) E(g)(b)` terms.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cosim::{ChainElement, CosimplicialAlgebraInstance};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::{enumerate_smooth_lp, LatticePath};
use crate::linalg::{Accumulator, SparseVec};
use crate::paths::{gap_inclusion, window_inclusion};
use crate::simplicial::OrdinalMap;

/// Which argument's factor is written first in a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    FirstArgumentFirst,
    SecondArgumentFirst,
}

/// `coeff · E(f1)(a) E(f2)(b)`, or the factors swapped for the second order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub f1: OrdinalMap,
    pub f2: OrdinalMap,
    pub order: Order,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub p: usize,
    pub q: usize,
    pub out_degree: usize,
    pub terms: Vec<Term>,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Term {
    fn key(&self) -> (Order, Vec<usize>, Vec<usize>) {
        (
            self.order,
            self.f1.values().to_vec(),
            self.f2.values().to_vec(),
        )
    }
}

impl Formula {
    /// Merges equal terms, drops cancelled ones and sorts by `(order, f1, f2)`.
    pub fn canonical(&self) -> Formula {
        let mut merged: Vec<Term> = Vec::new();
        let mut sorted = self.terms.clone();
        sorted.sort_by_key(Term::key);
        for t in sorted {
            match merged.last_mut() {
                Some(last) if last.key() == t.key() => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0);
        Formula {
            p: self.p,
            q: self.q,
            out_degree: self.out_degree,
            terms: merged,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exchanges the roles of the two arguments.
    pub fn swapped(&self) -> Formula {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                f1: t.f2.clone(),
                f2: t.f1.clone(),
                order: match t.order {
                    Order::FirstArgumentFirst => Order::SecondArgumentFirst,
                    Order::SecondArgumentFirst => Order::FirstArgumentFirst,
                },
            })
            .collect();
        Formula {
            p: self.q,
            q: self.p,
            out_degree: self.out_degree,
            terms,
        }
    }

    pub fn scaled(&self, c: i64) -> Formula {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff * c,
                ..t.clone()
            })
            .collect();
        Formula {
            terms,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("formula serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Formula> {
        let f: Formula =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        for (k, t) in f.terms.iter().enumerate() {
            if t.f1.dom() != f.p
                || t.f2.dom() != f.q
                || t.f1.cod() != f.out_degree
                || t.f2.cod() != f.out_degree
            {
                return Err(Error::Parse(format!(
                    "terms[{k}]: map degrees do not match the formula"
                )));
            }
        }
        Ok(f)
    }
}

/// Operators of `E(f)` written outermost first, e.g. `d2 d0` or `d1 s0`.
pub fn operator_string(f: &OrdinalMap) -> String {
    let (faces, degens) = f.generator_word();
    let mut ops: Vec<String> = faces.iter().rev().map(|i| format!("d{i}")).collect();
    ops.extend(degens.iter().rev().map(|j| format!("s{j}")));
    ops.join(" ")
}

fn factor(f: &OrdinalMap, var: &str) -> String {
    let ops = operator_string(f);
    if ops.is_empty() {
        var.to_string()
    } else {
        format!("{ops}({var})")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let s = if t.coeff < 0 { "-" } else { "+" };
                let mag = if t.coeff.abs() == 1 {
                    String::new()
                } else {
                    format!("{} ", t.coeff.abs())
                };
                let (a, b) = (factor(&t.f1, "a"), factor(&t.f2, "b"));
                match t.order {
                    Order::FirstArgumentFirst => format!("{s} {mag}{a} {b}"),
                    Order::SecondArgumentFirst => format!("{s} {mag}{b} {a}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The term of a smooth lattice path: the two projections read back as monotone maps.
pub fn path_term(psi: &LatticePath, coeff: i64) -> Result<Term> {
    let (f1, f2) = psi.project_to_m()?.dual_maps();
    let order = if psi.is_even() {
        Order::FirstArgumentFirst
    } else {
        Order::SecondArgumentFirst
    };
    Ok(Term {
        coeff,
        f1,
        f2,
        order,
    })
}

fn even_sign(p: usize, q: usize) -> i64 {
    sign((p as i64 - 1) * (q as i64 - 1))
}

fn odd_sign(p: usize, q: usize, n: usize) -> i64 {
    sign((n + p * q) as i64)
}

type FormulaKey = (u8, usize, usize, usize);

fn cached(key: FormulaKey, build: impl FnOnce() -> Formula) -> Arc<Formula> {
    static CACHE: OnceLock<Mutex<HashMap<FormulaKey, Arc<Formula>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("cache lock").get(&key) {
        return Arc::clone(f);
    }
    let f = Arc::new(build());
    cache
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert(f)
        .clone()
}

/// `a ∪_i b`, summed over the even smooth lattice paths with `i + 1` corners.
pub fn cup_formula(p: usize, q: usize, i: usize) -> Formula {
    cached((0, p, q, i), || {
        let n = i + 1;
        let split = enumerate_smooth_lp(p, q, n);
        let terms = split
            .even
            .iter()
            .map(|psi| path_term(psi, even_sign(p, q) * psi.sign()).expect("binary path"))
            .collect();
        Formula {
            p,
            q,
            out_degree: (p + q + 1).saturating_sub(n),
            terms,
        }
        .canonical()
    })
    .as_ref()
    .clone()
}

/// `β^{(n-1)}(a, b)`, summed over all smooth lattice paths with `n` corners.
pub fn bracket_formula(p: usize, q: usize, n_minus_1: usize) -> Formula {
    cached((1, p, q, n_minus_1), || {
        let n = n_minus_1 + 1;
        let split = enumerate_smooth_lp(p, q, n);
        let mut terms: Vec<Term> = split
            .even
            .iter()
            .map(|psi| path_term(psi, even_sign(p, q) * psi.sign()).expect("binary path"))
            .collect();
        terms.extend(
            split
                .odd
                .iter()
                .map(|psi| path_term(psi, odd_sign(p, q, n) * psi.sign()).expect("binary path")),
        );
        Formula {
            p,
            q,
            out_degree: (p + q + 1).saturating_sub(n),
            terms,
        }
        .canonical()
    })
    .as_ref()
    .clone()
}

/// The bracket of degree one from insertions:
/// `Σ_i (-1)^{i(q-1)} a ∘_i b + (-1)^{pq} Σ_i (-1)^{i(p-1)} b ∘_i a`.
pub fn gerstenhaber_formula(p: usize, q: usize) -> Result<Formula> {
    if p == 0 || q == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, max: 0 });
    }
    let mut terms = Vec::new();
    for i in 1..=p {
        terms.push(Term {
            coeff: sign((i * (q - 1)) as i64),
            f1: gap_inclusion(q, p, i - 1)?,
            f2: window_inclusion(q, p, i - 1)?,
            order: Order::FirstArgumentFirst,
        });
    }
    for i in 1..=q {
        terms.push(Term {
            coeff: sign((p * q + i * (p - 1)) as i64),
            f1: window_inclusion(p, q, i - 1)?,
            f2: gap_inclusion(p, q, i - 1)?,
            order: Order::SecondArgumentFirst,
        });
    }
    Ok(Formula {
        p,
        q,
        out_degree: p + q - 1,
        terms,
    }
    .canonical())
}

/// A formula bound to an instance, evaluated as a bilinear map.
pub struct CompiledFormula<'a, F> {
    formula: Formula,
    inst: &'a CosimplicialAlgebraInstance<F>,
}

pub fn compile<'a, F: Field>(
    formula: &Formula,
    inst: &'a CosimplicialAlgebraInstance<F>,
) -> Result<CompiledFormula<'a, F>> {
    for d in [formula.p, formula.q, formula.out_degree] {
        inst.check_degree(d)?;
    }
    Ok(CompiledFormula {
        formula: formula.clone(),
        inst,
    })
}

impl<F: Field> CompiledFormula<'_, F> {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    /// Value on `(a, b)` and whether any product was truncated.
    pub fn apply(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> Result<(SparseVec<F>, bool)> {
        let mut acc = Accumulator::new();
        let mut overflow = false;
        let n = self.formula.out_degree;
        for t in &self.formula.terms {
            let x = self.inst.apply_map(&t.f1, a)?;
            let y = self.inst.apply_map(&t.f2, b)?;
            let (v, o) = match t.order {
                Order::FirstArgumentFirst => self.inst.multiply(n, &x, &y),
                Order::SecondArgumentFirst => self.inst.multiply(n, &y, &x),
            };
            overflow |= o;
            acc.add_vec(&F::from_i64(t.coeff), &v);
        }
        Ok((acc.finish(), overflow))
    }

    pub fn apply_chains(
        &self,
        a: &ChainElement<F>,
        b: &ChainElement<F>,
    ) -> Result<ChainElement<F>> {
        if a.degree != self.formula.p || b.degree != self.formula.q {
            return Err(Error::DomainMismatch {
                expected: self.formula.p,
                found: a.degree,
            });
        }
        Ok(ChainElement {
            degree: self.formula.out_degree,
            coords: self.apply(&a.coords, &b.coords)?.0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_brackets_print_as_commutators() {
        assert_eq!(bracket_formula(1, 1, 1).to_string(), "+ a b - b a");
        assert_eq!(cup_formula(2, 2, 2).to_string(), "- a b");
        assert_eq!(cup_formula(1, 1, 1).to_string(), "+ a b");
    }

    #[test]
    fn insertion_bracket_matches_paths() {
        for p in 1..=3 {
            for q in 1..=3 {
                assert_eq!(
                    gerstenhaber_formula(p, q).unwrap(),
                    bracket_formula(p, q, 1),
                    "p={p} q={q}"
                );
            }
        }
    }
}
