//! Sparse vectors, column-sparse matrices and incremental echelon forms over a [`Field`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::field::Field;

/// Sparse vector with sorted, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, F::one())],
        }
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut raw: Vec<(usize, F)>) -> Self {
        raw.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == i => last.1 = last.1.clone() + c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (*i, x.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let v = x.1.clone() + c.clone() * y.1.clone();
                    if !v.is_zero() {
                        out.push((x.0, v));
                    }
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    out.push((*x).clone());
                    a.next();
                }
                (Some(_), Some(y)) => {
                    out.push((y.0, c.clone() * y.1.clone()));
                    b.next();
                }
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((y.0, c.clone() * y.1.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-F::one(), other)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<F> {
        let mut v = vec![F::zero(); dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        SparseVec::from_entries(
            self.entries
                .iter()
                .map(|(i, c)| (f(*i), c.clone()))
                .collect(),
        )
    }
}

/// Accumulates scaled vectors into a hash map and produces a [`SparseVec`].
pub struct Accumulator<F> {
    acc: HashMap<usize, F>,
}

impl<F: Field> Default for Accumulator<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Accumulator<F> {
    pub fn new() -> Self {
        Accumulator {
            acc: HashMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, c: F) {
        if c.is_zero() {
            return;
        }
        let e = self.acc.entry(i).or_insert_with(F::zero);
        *e = e.clone() + c;
    }

    pub fn add_vec(&mut self, c: &F, v: &SparseVec<F>) {
        for (i, x) in v.entries() {
            self.add(*i, c.clone() * x.clone());
        }
    }

    pub fn finish(self) -> SparseVec<F> {
        SparseVec::from_entries(self.acc.into_iter().collect())
    }
}

/// Linear map stored by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn from_columns(rows: usize, cols: Vec<SparseVec<F>>) -> Self {
        SparseMatrix { rows, cols }
    }

    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![SparseVec::zero(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new();
        for (j, c) in v.entries() {
            acc.add_vec(c, &self.cols[*j]);
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> SparseMatrix<F> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Basis of the kernel, as coefficient vectors over the columns.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        kernel_of_images(&self.cols)
    }
}

/// Row-echelon basis of a subspace, built incrementally. Each stored vector has leading
/// coefficient one; an optional tag vector records how it was combined from the inputs.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: Vec<SparseVec<F>>,
    tags: Vec<SparseVec<F>>,
    by_lead: HashMap<usize, usize>,
    inserted: usize,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            tags: Vec::new(),
            by_lead: HashMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows, returning the remainder and the combination of
    /// stored tags subtracted along the way.
    pub fn reduce(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut v = v.clone();
        let mut tag = SparseVec::zero();
        let mut kept: Vec<(usize, F)> = Vec::new();
        loop {
            let lead = match v.leading() {
                None => break,
                Some((i, c)) => (i, c.clone()),
            };
            match self.by_lead.get(&lead.0) {
                Some(&r) => {
                    let c = lead.1;
                    v = v.add_scaled(&-c.clone(), &self.rows[r]);
                    tag = tag.add_scaled(&c, &self.tags[r]);
                }
                None => {
                    kept.push(lead.clone());
                    v = SparseVec {
                        entries: v.entries[1..].to_vec(),
                    };
                }
            }
        }
        (SparseVec { entries: kept }, tag)
    }

    /// Inserts `v`; returns `Some(combination)` expressing `v` in earlier inputs if it was
    /// dependent, `None` if it extended the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> Option<SparseVec<F>> {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, tag) = self.reduce(&v);
        // rem + tag·rows = v, and tag·rows is a combination of earlier inputs
        match rem.leading() {
            None => Some(tag),
            Some((lead, c)) => {
                let inv = c.inv();
                let row = rem.scale(&inv);
                let own = SparseVec::unit(id).add_scaled(&-F::one(), &tag).scale(&inv);
                self.by_lead.insert(lead, self.rows.len());
                self.rows.push(row);
                self.tags.push(own);
                None
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coefficients `c` with `Σ c_k input_k = v`, if `v` lies in the span.
    pub fn solve(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (rem, tag) = self.reduce(v);
        rem.is_zero().then_some(tag)
    }
}

/// Kernel of the linear map sending basis vector `j` to `images[j]`.
pub fn kernel_of_images<F: Field>(images: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        if let Some(comb) = e.insert(img.clone()) {
            out.push(SparseVec::unit(j).add_scaled(&-F::one(), &comb));
        }
    }
    out
}

/// Combines `basis` vectors with the coefficients of `coeffs`.
pub fn combine<F: Field>(basis: &[SparseVec<F>], coeffs: &SparseVec<F>) -> SparseVec<F> {
    let mut acc = Accumulator::new();
    for (j, c) in coeffs.entries() {
        acc.add_vec(c, &basis[*j]);
    }
    acc.finish()
}

/// Reduced basis of a span.
pub fn span_basis<F: Field>(vectors: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for v in vectors {
        if e.insert(v.clone()).is_none() {
            out.push(v.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    #[test]
    fn kernel_of_small_matrix() {
        let cols = vec![
            SparseVec::from_entries(vec![(0, q(1)), (1, q(2))]),
            SparseVec::from_entries(vec![(0, q(2)), (1, q(4))]),
            SparseVec::from_entries(vec![(1, q(1))]),
        ];
        let k = kernel_of_images(&cols);
        assert_eq!(k.len(), 1);
        assert!(combine(&cols, &k[0]).is_zero());
    }

    #[test]
    fn solve_recovers_combination() {
        let vs = vec![
            SparseVec::unit(0).add(&SparseVec::unit(1)),
            SparseVec::unit(1),
        ];
        let mut e = Echelon::<Q>::new();
        for v in &vs {
            e.insert(v.clone());
        }
        let target = SparseVec::unit(0)
            .scale(&q(3))
            .add(&SparseVec::unit(1).scale(&q(5)));
        let c = e.solve(&target).unwrap();
        assert_eq!(combine(&vs, &c), target);
    }
}
