//! Truncated enveloping algebras, their co-Hochschild complexes and invariant
//! subcomplexes, and the Schouten bracket on multivectors.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::cosim::{
    permutation_parity, permutations, BasisProduct, CosimplicialAlgebraInstance, InstanceParts,
};
use crate::error::{Error, Result};
use crate::field::{binomial, factorial_inverse, Field};
use crate::lie::{lie_bracket, LieAlgebraSpec};
use crate::linalg::{combine, kernel_of_images, Accumulator, SparseMatrix, SparseVec};

type Exponents = Vec<u32>;

/// PBW model of `U(g)` with monomials of total degree at most `D`.
///
/// In restricted mode every exponent is below `p` and `x^p = 0`, which models `u(g)`
/// with zero `p`-operation.
#[derive(Clone, Debug)]
pub struct TruncatedUea<F> {
    spec: LieAlgebraSpec,
    structure: Vec<Vec<SparseVec<F>>>,
    truncation: usize,
    restricted: bool,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    /// `table[i][j]`: product of monomials with the overflow flag.
    table: Vec<Vec<(SparseVec<F>, bool)>>,
    /// `ad[g][m] = [x_g, m]`, exact.
    ad: Vec<Vec<SparseVec<F>>>,
    coproduct: Vec<Vec<((usize, usize), F)>>,
}

fn degree(e: &[u32]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

/// Exponent vectors of total degree `deg` in `dim` variables, largest first.
fn exponents_of_degree(dim: usize, deg: usize, cap: Option<u32>) -> Vec<Exponents> {
    fn rec(
        dim: usize,
        left: usize,
        cap: Option<u32>,
        cur: &mut Exponents,
        out: &mut Vec<Exponents>,
    ) {
        if cur.len() == dim - 1 {
            if cap.is_none_or(|c| (left as u32) < c) {
                cur.push(left as u32);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in (0..=left).rev() {
            if cap.is_some_and(|c| k as u32 >= c) {
                continue;
            }
            cur.push(k as u32);
            rec(dim, left - k, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, deg, cap, &mut Vec::new(), &mut out);
    out
}

struct Straightener<'a, F> {
    structure: &'a [Vec<SparseVec<F>>],
    dim: usize,
    cap: Option<u32>,
    memo: HashMap<Vec<usize>, Vec<(Exponents, F)>>,
}

impl<F: Field> Straightener<'_, F> {
    /// PBW normal form of a word in the generators.
    fn normal(&mut self, word: &[usize]) -> Vec<(Exponents, F)> {
        if let Some(r) = self.memo.get(word) {
            return r.clone();
        }
        let result = match word.windows(2).position(|w| w[0] > w[1]) {
            None => {
                let mut e = vec![0u32; self.dim];
                for &g in word {
                    e[g] += 1;
                }
                if self.cap.is_some_and(|c| e.iter().any(|&k| k >= c)) {
                    Vec::new()
                } else {
                    vec![(e, F::one())]
                }
            }
            Some(k) => {
                let mut acc: BTreeMap<Exponents, F> = BTreeMap::new();
                let mut swapped = word.to_vec();
                swapped.swap(k, k + 1);
                let mut parts = vec![(F::one(), swapped)];
                for (g, c) in self.structure[word[k]][word[k + 1]].entries() {
                    let mut w = word[..k].to_vec();
                    w.push(*g);
                    w.extend_from_slice(&word[k + 2..]);
                    parts.push((c.clone(), w));
                }
                for (c, w) in parts {
                    for (e, v) in self.normal(&w) {
                        let slot = acc.entry(e).or_insert_with(F::zero);
                        *slot = slot.clone() + c.clone() * v;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            }
        };
        self.memo.insert(word.to_vec(), result.clone());
        result
    }
}

fn word_of(e: &[u32]) -> Vec<usize> {
    e.iter()
        .enumerate()
        .flat_map(|(g, &k)| std::iter::repeat_n(g, k as usize))
        .collect()
}

impl<F: Field> TruncatedUea<F> {
    /// `U(g)` truncated at PBW degree `truncation`.
    pub fn new(spec: &LieAlgebraSpec, truncation: usize) -> Result<Self> {
        Self::build(spec, truncation, false)
    }

    /// The restricted enveloping algebra `u(g)` with zero `p`-operation; requires
    /// `ad(x)^p = 0` for every generator.
    pub fn restricted(spec: &LieAlgebraSpec) -> Result<Self> {
        let p = F::characteristic() as usize;
        if p == 0 {
            return Err(Error::Characteristic(0));
        }
        let st = spec.structure::<F>()?;
        for g in 0..spec.dim() {
            for b in 0..spec.dim() {
                let mut v = SparseVec::unit(b);
                for _ in 0..p {
                    v = lie_bracket(&st, &SparseVec::unit(g), &v);
                }
                if !v.is_zero() {
                    return Err(Error::InvalidLie(format!(
                        "ad({})^{p} does not vanish",
                        spec.basis[g]
                    )));
                }
            }
        }
        Self::build(spec, spec.dim() * (p - 1), true)
    }

    fn build(spec: &LieAlgebraSpec, truncation: usize, restricted: bool) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::DegreeOutOfRange {
                degree: truncation,
                max: 1,
            });
        }
        let structure = spec.structure::<F>()?;
        let dim = spec.dim();
        let cap = restricted.then(|| F::characteristic() as u32);
        let monomials: Vec<Exponents> = (0..=truncation)
            .flat_map(|d| exponents_of_degree(dim, d, cap))
            .collect();
        let index: HashMap<Exponents, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut st = Straightener {
            structure: &structure,
            dim,
            cap,
            memo: HashMap::new(),
        };
        let to_vec = |terms: Vec<(Exponents, F)>| -> (SparseVec<F>, bool) {
            let mut overflow = false;
            let mut entries = Vec::new();
            for (e, c) in terms {
                match index.get(&e) {
                    Some(&i) => entries.push((i, c)),
                    None => overflow = true,
                }
            }
            (SparseVec::from_entries(entries), overflow)
        };
        let mut table = Vec::new();
        for a in &monomials {
            let mut row = Vec::new();
            for b in &monomials {
                let mut w = word_of(a);
                w.extend(word_of(b));
                row.push(to_vec(st.normal(&w)));
            }
            table.push(row);
        }
        let mut ad = Vec::new();
        for g in 0..dim {
            let mut row = Vec::new();
            for m in &monomials {
                let mut left = vec![g];
                left.extend(word_of(m));
                let mut right = word_of(m);
                right.push(g);
                let mut diff: BTreeMap<Exponents, F> = st.normal(&left).into_iter().collect();
                for (e, c) in st.normal(&right) {
                    let old = diff.remove(&e).unwrap_or_else(F::zero);
                    diff.insert(e, old - c);
                }
                let (v, overflow) =
                    to_vec(diff.into_iter().filter(|(_, c)| !c.is_zero()).collect());
                if overflow {
                    return Err(Error::InvalidLie("commutator left the truncation".into()));
                }
                row.push(v);
            }
            ad.push(row);
        }
        let mut coproduct = Vec::new();
        for e in &monomials {
            let mut terms = Vec::new();
            for k in exponents_below(e) {
                let rest: Exponents = e.iter().zip(&k).map(|(a, b)| a - b).collect();
                let mut c = BigInt::one();
                for (a, b) in e.iter().zip(&k) {
                    c *= binomial(*a as u64, *b as u64);
                }
                let c = F::from_bigint(&c);
                if !c.is_zero() {
                    terms.push(((index[&k], index[&rest]), c));
                }
            }
            coproduct.push(terms);
        }
        Ok(TruncatedUea {
            spec: spec.clone(),
            structure,
            truncation,
            restricted,
            monomials,
            index,
            table,
            ad,
            coproduct,
        })
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.spec
    }

    pub fn structure(&self) -> &[Vec<SparseVec<F>>] {
        &self.structure
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn monomial_degree(&self, i: usize) -> usize {
        degree(&self.monomials[i])
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Index of the generator `x_g` as a monomial.
    pub fn generator(&self, g: usize) -> usize {
        let mut e = vec![0; self.spec.dim()];
        e[g] = 1;
        self.index[&e]
    }

    /// Monomial label such as `x^2 z` or `1`.
    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.monomials[i]
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(g, &k)| {
                if k == 1 {
                    self.spec.basis[g].clone()
                } else {
                    format!("{}^{k}", self.spec.basis[g])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &(SparseVec<F>, bool) {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> (SparseVec<F>, bool) {
        let mut acc = Accumulator::new();
        let mut overflow = false;
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                let (v, o) = &self.table[*i][*j];
                overflow |= o;
                acc.add_vec(&(x.clone() * y.clone()), v);
            }
        }
        (acc.finish(), overflow)
    }

    /// `[x_g, a]`.
    pub fn ad(&self, g: usize, a: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new();
        for (i, c) in a.entries() {
            acc.add_vec(c, &self.ad[g][*i]);
        }
        acc.finish()
    }

    /// Coproduct of a monomial as `((left, right), coefficient)` terms.
    pub fn coproduct_terms(&self, i: usize) -> &[((usize, usize), F)] {
        &self.coproduct[i]
    }

    pub fn counit(&self, i: usize) -> F {
        if self.monomial_degree(i) == 0 {
            F::one()
        } else {
            F::zero()
        }
    }

    /// Solutions of `Δ(a) = a ⊗ 1 + 1 ⊗ a`.
    pub fn primitives(&self) -> Vec<SparseVec<F>> {
        let d = self.dim();
        let images: Vec<SparseVec<F>> = (0..d)
            .map(|i| {
                let mut acc = Accumulator::new();
                for ((l, r), c) in &self.coproduct[i] {
                    acc.add(l * d + r, c.clone());
                }
                acc.add(i * d, -F::one());
                acc.add(i, -F::one());
                acc.finish()
            })
            .collect();
        let basis: Vec<SparseVec<F>> = (0..d).map(SparseVec::unit).collect();
        kernel_of_images(&images)
            .iter()
            .map(|k| combine(&basis, k))
            .collect()
    }
}

fn exponents_below(e: &[u32]) -> Vec<Exponents> {
    let mut out = vec![Vec::new()];
    for &k in e {
        out = out
            .into_iter()
            .flat_map(|p: Exponents| (0..=k).map(move |j| [p.clone(), vec![j]].concat()))
            .collect();
    }
    out
}

/// Bases of `H^{⊗n}` truncated at total degree `D`, for `n = 0..=N`.
#[derive(Clone, Debug)]
pub struct TensorBases {
    tuples: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl TensorBases {
    fn new<F: Field>(uea: &TruncatedUea<F>, max_degree: usize) -> Self {
        let mut tuples = vec![vec![Vec::new()]];
        for _ in 1..=max_degree {
            let prev = tuples.last().expect("nonempty");
            let mut next: Vec<(usize, Vec<usize>)> = Vec::new();
            for t in prev {
                let used: usize = t.iter().map(|&m| uea.monomial_degree(m)).sum();
                for m in 0..uea.dim() {
                    if used + uea.monomial_degree(m) <= uea.truncation() {
                        let mut u: Vec<usize> = t.clone();
                        u.push(m);
                        next.push((used + uea.monomial_degree(m), u));
                    }
                }
            }
            next.sort();
            tuples.push(next.into_iter().map(|(_, t)| t).collect());
        }
        let index = tuples
            .iter()
            .map(|ts| {
                ts.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, t)| (t, i))
                    .collect()
            })
            .collect();
        TensorBases { tuples, index }
    }

    pub fn tuples(&self, n: usize) -> &[Vec<usize>] {
        &self.tuples[n]
    }

    pub fn index_of(&self, n: usize, t: &[usize]) -> Option<usize> {
        self.index[n].get(t).copied()
    }
}

struct TensorPowerProduct<F> {
    uea: Arc<TruncatedUea<F>>,
    bases: Arc<TensorBases>,
}

impl<F: Field> BasisProduct<F> for TensorPowerProduct<F> {
    fn mul(&self, n: usize, i: usize, j: usize) -> (SparseVec<F>, bool) {
        let (a, b) = (&self.bases.tuples[n][i], &self.bases.tuples[n][j]);
        let mut partial: Vec<(Vec<usize>, F)> = vec![(Vec::new(), F::one())];
        let mut overflow = false;
        for (x, y) in a.iter().zip(b) {
            let (v, o) = self.uea.mul_basis(*x, *y);
            overflow |= o;
            let mut next = Vec::new();
            for (t, c) in &partial {
                for (m, d) in v.entries() {
                    let mut u = t.clone();
                    u.push(*m);
                    next.push((u, c.clone() * d.clone()));
                }
            }
            partial = next;
        }
        let mut acc = Accumulator::new();
        for (t, c) in partial {
            match self.bases.index_of(n, &t) {
                Some(k) => acc.add(k, c),
                None => overflow = true,
            }
        }
        (acc.finish(), overflow)
    }
}

/// Matrix of a map sending each basis tuple to a combination of tuples in degree `target`.
fn tuple_matrix<F: Field>(
    bases: &TensorBases,
    source: usize,
    target: usize,
    f: impl Fn(&[usize]) -> Vec<(Vec<usize>, F)>,
) -> SparseMatrix<F> {
    let cols = bases.tuples[source]
        .iter()
        .map(|t| {
            let mut acc = Accumulator::new();
            for (u, c) in f(t) {
                let k = bases
                    .index_of(target, &u)
                    .expect("structure maps preserve the total degree");
                acc.add(k, c);
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(bases.tuples[target].len(), cols)
}

/// The co-Hochschild complex `n ↦ H^{⊗n}` of the truncated enveloping algebra, with
/// symmetry by adjacent swaps.
pub fn forgetful_complex<F: Field>(
    uea: &TruncatedUea<F>,
    max_degree: usize,
) -> Result<CosimplicialAlgebraInstance<F>> {
    if max_degree < 2 {
        return Err(Error::DegreeOutOfRange {
            degree: max_degree,
            max: 2,
        });
    }
    let uea = Arc::new(uea.clone());
    let bases = Arc::new(TensorBases::new(&uea, max_degree));
    let unit = uea
        .index_of(&vec![0; uea.spec().dim()])
        .expect("unit monomial");
    let mut cofaces = Vec::new();
    for n in 0..max_degree {
        let mut fs = Vec::new();
        for i in 0..=n + 1 {
            let m = tuple_matrix(&bases, n, n + 1, |t| {
                if i == 0 || i == n + 1 {
                    let mut u = t.to_vec();
                    u.insert(if i == 0 { 0 } else { n }, unit);
                    vec![(u, F::one())]
                } else {
                    uea.coproduct_terms(t[i - 1])
                        .iter()
                        .map(|((l, r), c)| {
                            let mut u = t[..i - 1].to_vec();
                            u.extend([*l, *r]);
                            u.extend_from_slice(&t[i..]);
                            (u, c.clone())
                        })
                        .collect()
                }
            });
            fs.push(m);
        }
        cofaces.push(fs);
    }
    let mut codegeneracies = Vec::new();
    let mut symmetry = Vec::new();
    for n in 0..=max_degree {
        let ss = (0..n)
            .map(|j| {
                tuple_matrix(&bases, n, n - 1, |t| {
                    let c = uea.counit(t[j]);
                    if c.is_zero() {
                        Vec::new()
                    } else {
                        let mut u = t.to_vec();
                        u.remove(j);
                        vec![(u, c)]
                    }
                })
            })
            .collect();
        codegeneracies.push(ss);
        let ts = (1..n)
            .map(|i| {
                tuple_matrix(&bases, n, n, |t| {
                    let mut u = t.to_vec();
                    u.swap(i - 1, i);
                    vec![(u, F::one())]
                })
            })
            .collect();
        symmetry.push(ts);
    }
    let labels = (0..=max_degree)
        .map(|n| {
            bases.tuples[n]
                .iter()
                .map(|t| {
                    if t.is_empty() {
                        "1".into()
                    } else {
                        t.iter()
                            .map(|&m| uea.label(m))
                            .collect::<Vec<_>>()
                            .join(" ⊗ ")
                    }
                })
                .collect()
        })
        .collect();
    let units = (0..=max_degree)
        .map(|n| SparseVec::unit(bases.index_of(n, &vec![unit; n]).expect("unit tuple")))
        .collect();
    let weights = (0..=max_degree)
        .map(|n| {
            bases.tuples[n]
                .iter()
                .map(|t| t.iter().map(|&m| uea.monomial_degree(m)).sum())
                .collect()
        })
        .collect();
    let dims = (0..=max_degree).map(|n| bases.tuples[n].len()).collect();
    let name = format!("{}-forgetful", uea.spec().name);
    let truncation = uea.truncation();
    CosimplicialAlgebraInstance::new(InstanceParts {
        name,
        dims,
        labels,
        product: Arc::new(TensorPowerProduct {
            uea: Arc::clone(&uea),
            bases: Arc::clone(&bases),
        }),
        units,
        cofaces,
        codegeneracies,
        symmetry: Some(symmetry),
        subspaces: None,
        grading: Some((weights, truncation)),
    })
}

/// Basis tuples of the forgetful complex, for reading coordinates.
pub fn tensor_bases<F: Field>(uea: &TruncatedUea<F>, max_degree: usize) -> TensorBases {
    TensorBases::new(uea, max_degree)
}

/// The subcomplex of elements commuting with `Δ^{(n-1)}(x)` for every generator `x`.
pub fn invariant_complex<F: Field>(
    uea: &TruncatedUea<F>,
    max_degree: usize,
) -> Result<CosimplicialAlgebraInstance<F>> {
    let full = forgetful_complex(uea, max_degree)?;
    let bases = TensorBases::new(uea, max_degree);
    let mut subspaces = Vec::new();
    for n in 0..=max_degree {
        let tuples = &bases.tuples[n];
        let stride = tuples.len();
        let images: Vec<SparseVec<F>> = tuples
            .iter()
            .map(|t| {
                let mut acc = Accumulator::new();
                for g in 0..uea.spec().dim() {
                    for k in 0..n {
                        for (m, c) in uea.ad(g, &SparseVec::unit(t[k])).entries() {
                            let mut u = t.clone();
                            u[k] = *m;
                            let idx = bases.index_of(n, &u).expect("ad preserves the truncation");
                            acc.add(g * stride + idx, c.clone());
                        }
                    }
                }
                acc.finish()
            })
            .collect();
        let unit_basis: Vec<SparseVec<F>> = (0..stride).map(SparseVec::unit).collect();
        subspaces.push(
            kernel_of_images(&images)
                .iter()
                .map(|k| combine(&unit_basis, k))
                .collect(),
        );
    }
    full.restricted(&format!("{}-invariant", uea.spec().name), subspaces)
}

/// Element of `Λ*g`: sorted index sets with coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multivector<F> {
    terms: BTreeMap<Vec<usize>, F>,
}

/// Sorts `idx` in place and returns the sign of the sorting permutation, or `None`
/// when an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                negative = !negative;
            } else if idx[j] == idx[j + 1] {
                return None;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(negative)
}

impl<F: Field> Multivector<F> {
    pub fn zero() -> Self {
        Multivector {
            terms: BTreeMap::new(),
        }
    }

    /// `c · x_{i1} ∧ ... ∧ x_{ik}` in any order.
    pub fn wedge_of(indices: &[usize], c: F) -> Self {
        let mut out = Self::zero();
        out.add_wedge(indices, c);
        out
    }

    pub fn add_wedge(&mut self, indices: &[usize], c: F) {
        let mut idx = indices.to_vec();
        let Some(negative) = sort_with_sign(&mut idx) else {
            return;
        };
        let c = if negative { -c } else { c };
        let slot = self.terms.entry(idx.clone()).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_wedge(k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_wedge(k, s.clone() * c.clone());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut ds = self.terms.keys().map(Vec::len);
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    /// Wedge with a linear combination inserted at the front.
    fn wedge_front(front: &SparseVec<F>, rest: &[usize], c: &F) -> Self {
        let mut out = Self::zero();
        for (g, v) in front.entries() {
            let mut idx = vec![*g];
            idx.extend_from_slice(rest);
            out.add_wedge(&idx, c.clone() * v.clone());
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                format!(
                    "{c} {}",
                    k.iter()
                        .map(|&i| names[i].as_str())
                        .collect::<Vec<_>>()
                        .join("∧")
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `{x_1∧...∧x_s, y_1∧...∧y_t} = Σ (-1)^{i+j} [x_i, y_j] ∧ x_1..x̂_i..x_s ∧ y_1..ŷ_j..y_t`.
pub fn schouten<F: Field>(
    a: &Multivector<F>,
    b: &Multivector<F>,
    spec: &LieAlgebraSpec,
) -> Result<Multivector<F>> {
    if F::characteristic() != 0 {
        return Err(Error::Characteristic(F::characteristic()));
    }
    let st = spec.structure::<F>()?;
    let mut out = Multivector::zero();
    for (xs, c) in &a.terms {
        for (ys, d) in &b.terms {
            for (i, &x) in xs.iter().enumerate() {
                for (j, &y) in ys.iter().enumerate() {
                    let mut rest: Vec<usize> = xs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i)
                        .map(|(_, &v)| v)
                        .collect();
                    rest.extend(
                        ys.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &v)| v),
                    );
                    let s = if (i + j) % 2 == 0 {
                        F::one()
                    } else {
                        -F::one()
                    };
                    let coeff = s * c.clone() * d.clone();
                    out = out.add(&Multivector::wedge_front(&st[x][y], &rest, &coeff));
                }
            }
        }
    }
    Ok(out)
}

/// `(1/n!) Σ sgn(σ) x_{σ(1)} ⊗ ... ⊗ x_{σ(n)}` for each wedge, as a cochain of the
/// forgetful complex.
pub fn lambda_embed<F: Field>(
    w: &Multivector<F>,
    uea: &TruncatedUea<F>,
    bases: &TensorBases,
) -> Result<SparseVec<F>> {
    let n = w.degree().unwrap_or(0);
    let scale = factorial_inverse::<F>(n).ok_or(Error::Characteristic(F::characteristic()))?;
    let mut acc = Accumulator::new();
    for (idx, c) in &w.terms {
        for perm in permutations(n) {
            let t: Vec<usize> = perm.iter().map(|&k| uea.generator(idx[k])).collect();
            let k = bases.index_of(n, &t).ok_or(Error::DegreeOutOfRange {
                degree: n,
                max: uea.truncation(),
            })?;
            let s = if permutation_parity(&perm).is_multiple_of(2) {
                c.clone()
            } else {
                -c.clone()
            };
            acc.add(k, s * scale.clone());
        }
    }
    Ok(acc.finish())
}

/// Reads the coefficients of tuples of generators as wedges; a left inverse of
/// [`lambda_embed`].
pub fn alt_project<F: Field>(
    x: &SparseVec<F>,
    n: usize,
    uea: &TruncatedUea<F>,
    bases: &TensorBases,
) -> Result<Multivector<F>> {
    factorial_inverse::<F>(n).ok_or(Error::Characteristic(F::characteristic()))?;
    let gens: HashMap<usize, usize> = (0..uea.spec().dim())
        .map(|g| (uea.generator(g), g))
        .collect();
    let mut out = Multivector::zero();
    for (k, c) in x.entries() {
        let t = &bases.tuples(n)[*k];
        if let Some(idx) = t
            .iter()
            .map(|m| gens.get(m).copied())
            .collect::<Option<Vec<usize>>>()
        {
            out.add_wedge(&idx, c.clone());
        }
    }
    Ok(out)
}

/// `x_1 ⊗ ... ⊗ x_n - ...`: the antisymmetrized tensor without normalization.
pub fn wedge_tensor<F: Field>(
    indices: &[usize],
    uea: &TruncatedUea<F>,
    bases: &TensorBases,
) -> Result<SparseVec<F>> {
    let n = indices.len();
    let mut acc = Accumulator::new();
    for perm in permutations(n) {
        let t: Vec<usize> = perm.iter().map(|&k| uea.generator(indices[k])).collect();
        let k = bases.index_of(n, &t).ok_or(Error::DegreeOutOfRange {
            degree: n,
            max: uea.truncation(),
        })?;
        acc.add(
            k,
            if permutation_parity(&perm).is_multiple_of(2) {
                F::one()
            } else {
                -F::one()
            },
        );
    }
    Ok(acc.finish())
}

/// `(1/p) Σ_{i=1}^{p-1} C(p,i) x^i ⊗ x^{p-i}` for the generator `x_g`, with the
/// division carried out over the integers.
pub fn divided_power_cocycle<F: Field>(
    g: usize,
    uea: &TruncatedUea<F>,
    bases: &TensorBases,
) -> Result<SparseVec<F>> {
    let p = F::characteristic();
    if p == 0 {
        return Err(Error::Characteristic(0));
    }
    let dim = uea.spec().dim();
    let power = |k: u64| {
        let mut e = vec![0u32; dim];
        e[g] = k as u32;
        uea.index_of(&e).ok_or(Error::DegreeOutOfRange {
            degree: k as usize,
            max: uea.truncation(),
        })
    };
    let mut acc = Accumulator::new();
    for i in 1..p {
        let c = binomial(p, i) / BigInt::from(p);
        let t = vec![power(i)?, power(p - i)?];
        let k = bases.index_of(2, &t).ok_or(Error::DegreeOutOfRange {
            degree: p as usize,
            max: uea.truncation(),
        })?;
        acc.add(k, F::from_bigint(&c));
    }
    Ok(acc.finish())
}

/// The element of `E(n)` given by one tensor of monomials, e.g. `[[0,0,1],[0,0,2]]`
/// for `z ⊗ z²`.
pub fn tensor_element<F: Field>(
    uea: &TruncatedUea<F>,
    bases: &TensorBases,
    factors: &[Exponents],
) -> Result<SparseVec<F>> {
    let t = factors
        .iter()
        .map(|e| {
            uea.index_of(e).ok_or(Error::DegreeOutOfRange {
                degree: degree(e),
                max: uea.truncation(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let k = bases
        .index_of(factors.len(), &t)
        .ok_or(Error::DegreeOutOfRange {
            degree: t.len(),
            max: uea.truncation(),
        })?;
    Ok(SparseVec::unit(k))
}

/// Renders a cochain as `c (m ⊗ m') + ...` with monomial labels.
pub fn format_tensor<F: Field>(
    x: &SparseVec<F>,
    n: usize,
    uea: &TruncatedUea<F>,
    bases: &TensorBases,
) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.entries()
        .iter()
        .map(|(k, c)| {
            let t = &bases.tuples(n)[*k];
            let body = if t.is_empty() {
                "1".into()
            } else {
                t.iter()
                    .map(|&m| uea.label(m))
                    .collect::<Vec<_>>()
                    .join(" ⊗ ")
            };
            format!("{c} ({body})")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F3, Q};

    #[test]
    fn heisenberg_straightens_with_the_bracket() {
        let uea = TruncatedUea::<F3>::new(&LieAlgebraSpec::heisenberg(3, 3), 3).unwrap();
        let (x, y, z) = (uea.generator(0), uea.generator(1), uea.generator(2));
        let (yx, o) = uea.mul_basis(y, x);
        assert!(!o);
        let xy = uea.index_of(&[1, 1, 0]).unwrap();
        let expected = SparseVec::from_entries(vec![(xy, F3::new(1)), (z, -F3::new(1))]);
        assert_eq!(*yx, expected);
    }

    #[test]
    fn component_sizes() {
        let uea = TruncatedUea::<Q>::new(&LieAlgebraSpec::heisenberg(0, 4), 4).unwrap();
        let bases = TensorBases::new(&uea, 4);
        let sizes: Vec<usize> = (0..=4).map(|n| bases.tuples(n).len()).collect();
        assert_eq!(sizes, vec![1, 35, 210, 715, 1820]);
    }
}
