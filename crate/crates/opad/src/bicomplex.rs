//! The double complex spanned by binary lattice paths and the cocycle built from
//! normal paths of fixed complexity.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_normal, LatticePath};

/// Integer combination of binary lattice paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BicomplexElement {
    terms: BTreeMap<LatticePath, i64>,
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl BicomplexElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticePath, i64)>) -> Result<Self> {
        let mut out = Self::zero();
        for (psi, c) in terms {
            if psi.arity() != 2 {
                return Err(Error::Arity(psi.arity()));
            }
            out.add(psi, c);
        }
        Ok(out)
    }

    pub fn add(&mut self, psi: LatticePath, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&psi) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&psi);
                }
            }
            None => {
                self.terms.insert(psi, c);
            }
        }
    }

    pub fn add_element(&mut self, other: &BicomplexElement) {
        for (psi, c) in &other.terms {
            self.add(psi.clone(), *c);
        }
    }

    pub fn terms(&self) -> &BTreeMap<LatticePath, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Keeps the terms whose source interval is `<m+1>`.
    pub fn component(&self, m: usize) -> BicomplexElement {
        BicomplexElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.m() == m)
                .map(|(p, c)| (p.clone(), *c))
                .collect(),
        }
    }
}

impl fmt::Display for BicomplexElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c:+} [{p}]"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Adds one stop at the `i`-th object of the source interval.
pub fn delta(psi: &LatticePath, i: usize) -> Result<LatticePath> {
    let stops = psi.stops();
    let v = *stops.get(i).ok_or(Error::IndexOutOfRange {
        index: i,
        bound: stops.len(),
    })?;
    let mut labels = psi.labels().to_vec();
    labels[v] += 1;
    LatticePath::new(psi.extents().to_vec(), psi.word().to_vec(), labels)
}

/// Merges the grid lines `i` and `i+1` of direction `axis` (0 or 1), adding the labels
/// of vertices that become equal. `None` when that direction has extent zero.
pub fn collapse(psi: &LatticePath, axis: usize, i: usize) -> Result<Option<LatticePath>> {
    if psi.arity() != 2 {
        return Err(Error::Arity(psi.arity()));
    }
    if axis > 1 || i > psi.extents()[axis] {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: psi.extents()[axis.min(1)] + 1,
        });
    }
    if psi.extents()[axis] == 0 {
        return Ok(None);
    }
    let mut word = Vec::new();
    let mut labels = vec![psi.labels()[0]];
    let mut coord = 0usize;
    for (&l, &lab) in psi.word().iter().zip(&psi.labels()[1..]) {
        if l as usize == axis + 1 {
            coord += 1;
        }
        if l as usize == axis + 1 && coord == i + 1 {
            *labels.last_mut().expect("nonempty") += lab;
        } else {
            word.push(l);
            labels.push(lab);
        }
    }
    let mut extents = psi.extents().to_vec();
    extents[axis] -= 1;
    LatticePath::new(extents, word, labels).map(Some)
}

/// `D = (-1)^{p+q} [ Σ (-1)^i δ_i - (-1)^q Σ (-1)^i ∂¹_i - Σ (-1)^i ∂²_i ]` on each path,
/// dropping degenerate results.
pub fn diff(x: &BicomplexElement) -> Result<BicomplexElement> {
    let mut out = BicomplexElement::zero();
    for (psi, &c) in &x.terms {
        let (p, q) = (psi.extents()[0], psi.extents()[1]);
        let s = sign(p + q) * c;
        for i in 0..=psi.m() + 1 {
            push(&mut out, delta(psi, i)?, s * sign(i));
        }
        for i in 0..=p {
            if let Some(r) = collapse(psi, 0, i)? {
                push(&mut out, r, -s * sign(q) * sign(i));
            }
        }
        for i in 0..=q {
            if let Some(r) = collapse(psi, 1, i)? {
                push(&mut out, r, -s * sign(i));
            }
        }
    }
    Ok(out)
}

fn push(out: &mut BicomplexElement, psi: LatticePath, c: i64) {
    if !psi.is_degenerate() {
        out.add(psi, c);
    }
}

/// Signed sum of the normal paths with `n_minus_1 + 1` corners and source `<m+1>`.
pub fn lambda(n_minus_1: usize, m: usize) -> BicomplexElement {
    let n = n_minus_1 + 1;
    let mut out = BicomplexElement::zero();
    for p in 0..m + n {
        let q = m + n - 1 - p;
        let split = enumerate_normal(p, q, n);
        let (pi, qi) = (p as i64, q as i64);
        let even = sign((((pi - 1) * (qi - 1)).rem_euclid(2)) as usize);
        let odd = sign(n + p * q);
        for psi in &split.even {
            out.add(psi.clone(), even * psi.sign());
        }
        for psi in &split.odd {
            out.add(psi.clone(), odd * psi.sign());
        }
    }
    out
}

/// The part of `D(λ)` landing on source `<m+1>`; the cocycle condition says it vanishes.
pub fn lambda_defect(n_minus_1: usize, m: usize) -> Result<BicomplexElement> {
    let mut total = diff(&lambda(n_minus_1, m))?;
    if m > 0 {
        total.add_element(&diff(&lambda(n_minus_1, m - 1))?);
    }
    Ok(total.component(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapse_adds_labels() {
        let psi: LatticePath = "1122|1,1,0,1,1".parse().unwrap();
        let r = collapse(&psi, 0, 0).unwrap().unwrap();
        assert_eq!(r.to_string(), "122|2,0,1,1");
        assert!(collapse(&"12|1,0,1".parse().unwrap(), 0, 0)
            .unwrap()
            .is_none());
    }

    #[test]
    fn differential_squares_to_zero() {
        for n in 1..=3 {
            for m in 0..=2 {
                let l = lambda(n - 1, m);
                assert!(diff(&diff(&l).unwrap()).unwrap().is_zero(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn lambda_is_a_cocycle() {
        for n in 1..=4 {
            for m in 0..=4 {
                let d = lambda_defect(n - 1, m).unwrap();
                assert!(d.is_zero(), "n={n} m={m}: {d}");
            }
        }
    }
}
