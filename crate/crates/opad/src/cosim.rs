//! Finite-dimensional cosimplicial algebras: the normalized cochain complex, cohomology,
//! commutativity checks and the symmetric-group structure.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{factorial_inverse, Field};
use crate::linalg::{combine, kernel_of_images, Accumulator, Echelon, SparseMatrix, SparseVec};
use crate::paths::{back_inclusion, front_inclusion, gap_inclusion, window_inclusion};
use crate::simplicial::OrdinalMap;

/// Multiplication of basis vectors of the component `E(n)`.
pub trait BasisProduct<F>: Send + Sync {
    /// Product of basis vectors `i` and `j`; the flag is set when terms outside the
    /// finite model were dropped.
    fn mul(&self, n: usize, i: usize, j: usize) -> (SparseVec<F>, bool);
}

/// Sparse multiplication table of one algebra.
#[derive(Clone, Debug)]
pub struct FdAlgebra<F> {
    dim: usize,
    labels: Vec<String>,
    table: HashMap<(usize, usize), SparseVec<F>>,
    unit: SparseVec<F>,
}

impl<F: Field> FdAlgebra<F> {
    /// Validates associativity and the unit laws on all basis triples.
    pub fn new(
        dim: usize,
        labels: Vec<String>,
        table: HashMap<(usize, usize), SparseVec<F>>,
        unit: SparseVec<F>,
    ) -> Result<Self> {
        if labels.len() != dim {
            return Err(Error::InvalidInstance(format!(
                "expected {dim} labels, found {}",
                labels.len()
            )));
        }
        let alg = FdAlgebra {
            dim,
            labels,
            table,
            unit,
        };
        for i in 0..dim {
            let e = SparseVec::unit(i);
            if alg.mul(&alg.unit, &e) != e || alg.mul(&e, &alg.unit) != e {
                return Err(Error::InvalidInstance(format!(
                    "unit law fails on basis vector {i}"
                )));
            }
            for j in 0..dim {
                for k in 0..dim {
                    let (a, b, c) = (SparseVec::unit(i), SparseVec::unit(j), SparseVec::unit(k));
                    if alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c)) {
                        return Err(Error::InvalidInstance(format!(
                            "associativity fails on ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec<F> {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec<F> {
        self.table.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                if let Some(v) = self.table.get(&(*i, *j)) {
                    acc.add_vec(&(a.clone() * b.clone()), v);
                }
            }
        }
        acc.finish()
    }
}

/// Products of basis pairs in one degree, with the truncation flag.
pub type ProductTable<F> = HashMap<(usize, usize), (SparseVec<F>, bool)>;

/// Products read from explicit tables, one per degree.
pub struct TableProduct<F> {
    tables: Vec<ProductTable<F>>,
}

impl<F: Field> TableProduct<F> {
    pub fn new(tables: Vec<ProductTable<F>>) -> Self {
        TableProduct { tables }
    }
}

impl<F: Field> BasisProduct<F> for TableProduct<F> {
    fn mul(&self, n: usize, i: usize, j: usize) -> (SparseVec<F>, bool) {
        self.tables
            .get(n)
            .and_then(|t| t.get(&(i, j)))
            .cloned()
            .unwrap_or((SparseVec::zero(), false))
    }
}

/// Cochain of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement<F> {
    pub degree: usize,
    pub coords: SparseVec<F>,
}

/// Everything needed to assemble an instance; `new` checks the shapes.
pub struct InstanceParts<F> {
    pub name: String,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub product: Arc<dyn BasisProduct<F>>,
    pub units: Vec<SparseVec<F>>,
    /// `cofaces[n][i]: E(n) -> E(n+1)` for `n < N`, `i = 0..=n+1`.
    pub cofaces: Vec<Vec<SparseMatrix<F>>>,
    /// `codegeneracies[n][i]: E(n) -> E(n-1)` for `i = 0..n`.
    pub codegeneracies: Vec<Vec<SparseMatrix<F>>>,
    /// `symmetry[n][i-1]` is the transposition `t_i` on `E(n)`.
    pub symmetry: Option<Vec<Vec<SparseMatrix<F>>>>,
    /// Per-degree basis of a subcomplex, in ambient coordinates.
    pub subspaces: Option<Vec<Vec<SparseVec<F>>>>,
    /// Per-degree weight of the ambient basis vectors and the weight budget of the model;
    /// used to skip products known to leave the model.
    pub grading: Option<(Vec<Vec<usize>>, usize)>,
}

#[derive(Clone)]
pub struct CosimplicialAlgebraInstance<F> {
    name: String,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    product: Arc<dyn BasisProduct<F>>,
    units: Vec<SparseVec<F>>,
    cofaces: Vec<Vec<SparseMatrix<F>>>,
    codegeneracies: Vec<Vec<SparseMatrix<F>>>,
    symmetry: Option<Vec<Vec<SparseMatrix<F>>>>,
    subspaces: Option<Vec<Vec<SparseVec<F>>>>,
    grading: Option<(Vec<Vec<usize>>, usize)>,
}

impl<F> fmt::Debug for CosimplicialAlgebraInstance<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CosimplicialAlgebraInstance")
            .field("name", &self.name)
            .field("dims", &self.dims)
            .finish()
    }
}

fn shape_error(path: String, msg: String) -> Error {
    Error::InvalidInstance(format!("{path}: {msg}"))
}

fn sign<F: Field>(e: usize) -> F {
    if e.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

impl<F: Field> CosimplicialAlgebraInstance<F> {
    pub fn new(parts: InstanceParts<F>) -> Result<Self> {
        let big_n = parts
            .dims
            .len()
            .checked_sub(1)
            .ok_or_else(|| shape_error("dims".into(), "empty".into()))?;
        let check = |m: &SparseMatrix<F>, rows: usize, cols: usize, path: String| -> Result<()> {
            if m.rows() != rows || m.ncols() != cols {
                return Err(shape_error(
                    path,
                    format!("expected {rows}x{cols}, found {}x{}", m.rows(), m.ncols()),
                ));
            }
            if m.columns()
                .iter()
                .any(|c| c.max_index().is_some_and(|r| r >= rows))
            {
                return Err(shape_error(path, "row index out of range".into()));
            }
            Ok(())
        };
        if parts.labels.len() != big_n + 1
            || parts
                .labels
                .iter()
                .zip(&parts.dims)
                .any(|(l, d)| l.len() != *d)
        {
            return Err(shape_error(
                "labels".into(),
                "one label per basis vector is required".into(),
            ));
        }
        if parts.units.len() != big_n + 1 {
            return Err(shape_error(
                "units".into(),
                format!("expected {} entries", big_n + 1),
            ));
        }
        if parts.cofaces.len() != big_n {
            return Err(shape_error(
                "cofaces".into(),
                format!("expected {big_n} degrees"),
            ));
        }
        for (n, fs) in parts.cofaces.iter().enumerate() {
            if fs.len() != n + 2 {
                return Err(shape_error(
                    format!("cofaces[{n}]"),
                    format!("expected {} maps", n + 2),
                ));
            }
            for (i, m) in fs.iter().enumerate() {
                check(
                    m,
                    parts.dims[n + 1],
                    parts.dims[n],
                    format!("cofaces[{n}][{i}]"),
                )?;
            }
        }
        if parts.codegeneracies.len() != big_n + 1 {
            return Err(shape_error(
                "codegeneracies".into(),
                format!("expected {} degrees", big_n + 1),
            ));
        }
        for (n, ss) in parts.codegeneracies.iter().enumerate() {
            if ss.len() != n {
                return Err(shape_error(
                    format!("codegeneracies[{n}]"),
                    format!("expected {n} maps"),
                ));
            }
            for (i, m) in ss.iter().enumerate() {
                check(
                    m,
                    parts.dims[n - 1],
                    parts.dims[n],
                    format!("codegeneracies[{n}][{i}]"),
                )?;
            }
        }
        if let Some(sym) = &parts.symmetry {
            if sym.len() != big_n + 1 {
                return Err(shape_error(
                    "symmetry".into(),
                    format!("expected {} degrees", big_n + 1),
                ));
            }
            for (n, ts) in sym.iter().enumerate() {
                if ts.len() != n.saturating_sub(1) {
                    return Err(shape_error(
                        format!("symmetry[{n}]"),
                        format!("expected {} maps", n.saturating_sub(1)),
                    ));
                }
                for (i, m) in ts.iter().enumerate() {
                    check(
                        m,
                        parts.dims[n],
                        parts.dims[n],
                        format!("symmetry[{n}][{i}]"),
                    )?;
                }
            }
        }
        if let Some(sub) = &parts.subspaces {
            if sub.len() != big_n + 1 {
                return Err(shape_error(
                    "subspaces".into(),
                    format!("expected {} degrees", big_n + 1),
                ));
            }
        }
        Ok(CosimplicialAlgebraInstance {
            name: parts.name,
            dims: parts.dims,
            labels: parts.labels,
            product: parts.product,
            units: parts.units,
            cofaces: parts.cofaces,
            codegeneracies: parts.codegeneracies,
            symmetry: parts.symmetry,
            subspaces: parts.subspaces,
            grading: parts.grading,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Dimension of the ambient component `E(n)`.
    pub fn ambient_dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// Dimension of the component, after restriction to the subcomplex if any.
    pub fn dim(&self, n: usize) -> usize {
        match &self.subspaces {
            Some(s) => s[n].len(),
            None => self.dims[n],
        }
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn unit(&self, n: usize) -> &SparseVec<F> {
        &self.units[n]
    }

    pub fn has_symmetry(&self) -> bool {
        self.symmetry.is_some()
    }

    pub fn is_restricted(&self) -> bool {
        self.subspaces.is_some()
    }

    /// The same data with a subcomplex chosen in every degree.
    pub fn restricted(&self, name: &str, subspaces: Vec<Vec<SparseVec<F>>>) -> Result<Self> {
        if subspaces.len() != self.dims.len() {
            return Err(shape_error(
                "subspaces".into(),
                format!("expected {} degrees", self.dims.len()),
            ));
        }
        let mut out = self.clone();
        out.name = name.to_string();
        out.subspaces = Some(subspaces);
        Ok(out)
    }

    pub fn without_symmetry(&self) -> Self {
        let mut out = self.clone();
        out.symmetry = None;
        out
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    /// Basis of the component in ambient coordinates.
    pub fn basis(&self, n: usize) -> Vec<SparseVec<F>> {
        match &self.subspaces {
            Some(s) => s[n].clone(),
            None => (0..self.dims[n]).map(SparseVec::unit).collect(),
        }
    }

    /// Whether `x` lies in the (possibly restricted) component.
    pub fn contains(&self, n: usize, x: &SparseVec<F>) -> bool {
        match &self.subspaces {
            None => x.max_index().is_none_or(|i| i < self.dims[n]),
            Some(s) => {
                let mut e = Echelon::new();
                for b in &s[n] {
                    e.insert(b.clone());
                }
                e.contains(x)
            }
        }
    }

    pub fn coface(&self, n: usize, i: usize) -> Result<&SparseMatrix<F>> {
        if n >= self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: n + 1,
                max: self.max_degree(),
            });
        }
        self.cofaces[n].get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            bound: n + 2,
        })
    }

    pub fn codegeneracy(&self, n: usize, i: usize) -> Result<&SparseMatrix<F>> {
        self.check_degree(n)?;
        self.codegeneracies[n]
            .get(i)
            .ok_or(Error::IndexOutOfRange { index: i, bound: n })
    }

    /// The transposition `t_i` (1-based) on `E(n)`.
    pub fn transposition(&self, n: usize, i: usize) -> Result<&SparseMatrix<F>> {
        self.check_degree(n)?;
        let sym = self.symmetry.as_ref().ok_or(Error::NoSymmetry)?;
        if i == 0 {
            return Err(Error::IndexOutOfRange { index: 0, bound: n });
        }
        sym[n]
            .get(i - 1)
            .ok_or(Error::IndexOutOfRange { index: i, bound: n })
    }

    fn face(&self, n: usize, i: usize, x: &SparseVec<F>) -> SparseVec<F> {
        self.cofaces[n][i].apply(x)
    }

    fn degen(&self, n: usize, i: usize, x: &SparseVec<F>) -> SparseVec<F> {
        self.codegeneracies[n][i].apply(x)
    }

    fn twist(&self, n: usize, i: usize, x: &SparseVec<F>) -> SparseVec<F> {
        self.symmetry.as_ref().expect("symmetry")[n][i - 1].apply(x)
    }

    fn min_weight(&self, n: usize, x: &SparseVec<F>) -> Option<usize> {
        let (w, _) = self.grading.as_ref()?;
        x.entries().iter().map(|(i, _)| w[n][*i]).min()
    }

    /// Whether every term of the product of `x` and `y` leaves the model.
    fn exceeds_budget(&self, n: usize, x: &SparseVec<F>, y: &SparseVec<F>) -> bool {
        match (&self.grading, self.min_weight(n, x), self.min_weight(n, y)) {
            (Some((_, budget)), Some(a), Some(b)) => a + b > *budget,
            _ => false,
        }
    }

    /// Product in `E(n)`; the flag reports truncation.
    pub fn multiply(&self, n: usize, x: &SparseVec<F>, y: &SparseVec<F>) -> (SparseVec<F>, bool) {
        let mut acc = Accumulator::new();
        let mut overflow = false;
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let (v, o) = self.product.mul(n, *i, *j);
                overflow |= o;
                acc.add_vec(&(a.clone() * b.clone()), &v);
            }
        }
        (acc.finish(), overflow)
    }

    /// `E(f)(x)` for a monotone map `f:[n] -> [m]`, through codegeneracies then cofaces.
    pub fn apply_map(&self, f: &OrdinalMap, x: &SparseVec<F>) -> Result<SparseVec<F>> {
        self.check_degree(f.dom())?;
        self.check_degree(f.cod())?;
        let (faces, degens) = f.generator_word();
        let mut n = f.dom();
        let mut v = x.clone();
        for j in degens {
            v = self.degen(n, j, &v);
            n -= 1;
        }
        for i in faces {
            v = self.face(n, i, &v);
            n += 1;
        }
        Ok(v)
    }

    /// `Σ (-1)^i ∂_i x` for `x ∈ E(n)`.
    pub fn coboundary(&self, n: usize, x: &SparseVec<F>) -> Result<SparseVec<F>> {
        if n >= self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: n + 1,
                max: self.max_degree(),
            });
        }
        let mut acc = Accumulator::new();
        for i in 0..=n + 1 {
            acc.add_vec(&sign(i), &self.face(n, i, x));
        }
        Ok(acc.finish())
    }

    pub fn differential(&self, x: &ChainElement<F>) -> Result<ChainElement<F>> {
        Ok(ChainElement {
            degree: x.degree + 1,
            coords: self.coboundary(x.degree, &x.coords)?,
        })
    }

    /// Matrix of the differential on the ambient component.
    pub fn differential_matrix(&self, n: usize) -> Result<SparseMatrix<F>> {
        let cols = (0..self.dims[n])
            .map(|j| self.coboundary(n, &SparseVec::unit(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.dims[n + 1], cols))
    }

    /// Basis of the intersection of the kernels of all codegeneracies.
    pub fn normalized_space(&self, n: usize) -> Result<Vec<SparseVec<F>>> {
        self.check_degree(n)?;
        let basis = self.basis(n);
        if n == 0 {
            return Ok(basis);
        }
        let stride = self.dims[n - 1];
        let images: Vec<SparseVec<F>> = basis
            .iter()
            .map(|b| {
                let mut entries = Vec::new();
                for j in 0..n {
                    entries.extend(
                        self.degen(n, j, b)
                            .entries()
                            .iter()
                            .map(|(r, c)| (j * stride + r, c.clone())),
                    );
                }
                SparseVec::from_entries(entries)
            })
            .collect();
        Ok(kernel_of_images(&images)
            .iter()
            .map(|k| combine(&basis, k))
            .collect())
    }

    /// Cohomology of the normalized complex in degree `n`.
    pub fn cohomology(&self, n: usize) -> Result<Cohomology<F>> {
        if n >= self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: n + 1,
                max: self.max_degree(),
            });
        }
        let normal = self.normalized_space(n)?;
        let images = normal
            .iter()
            .map(|b| self.coboundary(n, b))
            .collect::<Result<Vec<_>>>()?;
        let cocycles: Vec<SparseVec<F>> = kernel_of_images(&images)
            .iter()
            .map(|k| combine(&normal, k))
            .collect();
        let mut ech = Echelon::new();
        let mut boundary_rank = 0;
        if n > 0 {
            for b in self.normalized_space(n - 1)? {
                if ech.insert(self.coboundary(n - 1, &b)?).is_none() {
                    boundary_rank += 1;
                }
            }
        }
        let mut representatives = Vec::new();
        for z in &cocycles {
            if ech.insert(z.clone()).is_none() {
                representatives.push(z.clone());
            }
        }
        Ok(Cohomology {
            degree: n,
            dimension: representatives.len(),
            cocycle_dim: cocycles.len(),
            boundary_rank,
            representatives,
        })
    }

    /// A preimage of `x ∈ E(n)` under the differential from the (possibly restricted)
    /// component `E(n-1)`, if one exists.
    pub fn coboundary_preimage(&self, n: usize, x: &SparseVec<F>) -> Result<Option<SparseVec<F>>> {
        self.check_degree(n)?;
        if n == 0 {
            return Ok(x.is_zero().then(SparseVec::zero));
        }
        let basis = self.basis(n - 1);
        let mut ech = Echelon::new();
        for b in &basis {
            ech.insert(self.coboundary(n - 1, b)?);
        }
        Ok(ech.solve(x).map(|c| combine(&basis, &c)))
    }

    /// Checks `∂² = 0`, the cosimplicial identities, units, the homomorphism property and,
    /// when present, the symmetric-group relations, on basis vectors up to degree `bound`.
    pub fn check_axioms(&self, bound: usize) -> AxiomReport {
        let mut rep = AxiomReport::default();
        let top = bound.min(self.max_degree());
        for n in 0..=top {
            let basis = self.basis(n);
            for x in &basis {
                self.check_cosimplicial(n, x, &mut rep);
                if self.symmetry.is_some() {
                    self.check_symmetric(n, x, &mut rep);
                }
            }
            self.check_units(n, &mut rep);
            self.check_homomorphisms(n, &basis, &mut rep);
        }
        rep
    }

    fn check_cosimplicial(&self, n: usize, x: &SparseVec<F>, rep: &mut AxiomReport) {
        let big_n = self.max_degree();
        if n + 2 <= big_n {
            let dx = self.coboundary(n, x).expect("in range");
            rep.record(
                self.coboundary(n + 1, &dx).expect("in range").is_zero(),
                || format!("d d != 0 in degree {n}"),
            );
            for j in 0..=n + 2 {
                for i in 0..j {
                    let l = self.face(n + 1, j, &self.face(n, i, x));
                    let r = self.face(n + 1, i, &self.face(n, j - 1, x));
                    rep.record(l == r, || {
                        format!("d{j} d{i} = d{i} d{} fails in degree {n}", j - 1)
                    });
                }
            }
        }
        if n >= 2 {
            for j in 0..=n - 2 {
                for i in 0..=j {
                    let l = self.degen(n - 1, j, &self.degen(n, i, x));
                    let r = self.degen(n - 1, i, &self.degen(n, j + 1, x));
                    rep.record(l == r, || {
                        format!("s{j} s{i} = s{i} s{} fails in degree {n}", j + 1)
                    });
                }
            }
        }
        if n < big_n {
            for i in 0..=n + 1 {
                for j in 0..=n {
                    let l = self.degen(n + 1, j, &self.face(n, i, x));
                    let r = if i < j {
                        self.face(n - 1, i, &self.degen(n, j - 1, x))
                    } else if i == j || i == j + 1 {
                        x.clone()
                    } else {
                        self.face(n - 1, i - 1, &self.degen(n, j, x))
                    };
                    rep.record(l == r, || format!("s{j} d{i} identity fails in degree {n}"));
                }
            }
        }
    }

    fn check_symmetric(&self, n: usize, x: &SparseVec<F>, rep: &mut AxiomReport) {
        for i in 1..n {
            rep.record(self.twist(n, i, &self.twist(n, i, x)) == *x, || {
                format!("t{i}^2 != 1 in degree {n}")
            });
            if i + 1 < n {
                let l = self.twist(n, i, &self.twist(n, i + 1, &self.twist(n, i, x)));
                let r = self.twist(n, i + 1, &self.twist(n, i, &self.twist(n, i + 1, x)));
                rep.record(l == r, || {
                    format!("braid relation t{i} t{} fails in degree {n}", i + 1)
                });
            }
            for j in i + 2..n {
                let l = self.twist(n, i, &self.twist(n, j, x));
                let r = self.twist(n, j, &self.twist(n, i, x));
                rep.record(l == r, || {
                    format!("t{i} t{j} = t{j} t{i} fails in degree {n}")
                });
            }
        }
        if n < self.max_degree() {
            let mut v = self.face(n, 0, x);
            for i in 1..=n {
                v = self.twist(n + 1, i, &v);
            }
            rep.record(v == self.face(n, n + 1, x), || {
                format!("t_n..t_1 d0 = d_(n+1) fails in degree {n}")
            });
            for i in 1..=n {
                let d = self.face(n, i, x);
                rep.record(self.twist(n + 1, i, &d) == d, || {
                    format!("t{i} d{i} = d{i} fails in degree {n}")
                });
            }
            for j in 1..n {
                let tx = self.twist(n, j, x);
                for i in 0..=n + 1 {
                    let l = self.face(n, i, &tx);
                    let r = if i > j + 1 {
                        self.twist(n + 1, j, &self.face(n, i, x))
                    } else if i == j + 1 {
                        self.twist(n + 1, i - 1, &self.twist(n + 1, i, &self.face(n, i - 1, x)))
                    } else if i == j {
                        self.twist(n + 1, i + 1, &self.twist(n + 1, i, &self.face(n, i + 1, x)))
                    } else {
                        self.twist(n + 1, j + 1, &self.face(n, i, x))
                    };
                    rep.record(l == r, || format!("d{i} t{j} exchange fails in degree {n}"));
                }
            }
        }
        for j in 1..n {
            let tx = self.twist(n, j, x);
            for k in 0..n {
                let l = self.degen(n, k, &tx);
                let r = if k > j {
                    self.twist(n - 1, j, &self.degen(n, k, x))
                } else if k == j {
                    self.degen(n, k - 1, x)
                } else if k + 1 == j {
                    self.degen(n, k + 1, x)
                } else {
                    self.twist(n - 1, j - 1, &self.degen(n, k, x))
                };
                rep.record(l == r, || format!("s{k} t{j} exchange fails in degree {n}"));
            }
        }
    }

    fn check_units(&self, n: usize, rep: &mut AxiomReport) {
        let u = &self.units[n];
        if n < self.max_degree() {
            for i in 0..=n + 1 {
                rep.record(self.face(n, i, u) == self.units[n + 1], || {
                    format!("d{i} does not preserve the unit in degree {n}")
                });
            }
        }
        for j in 0..n {
            rep.record(self.degen(n, j, u) == self.units[n - 1], || {
                format!("s{j} does not preserve the unit in degree {n}")
            });
        }
        for b in self.basis(n) {
            let (l, o1) = self.multiply(n, u, &b);
            let (r, o2) = self.multiply(n, &b, u);
            if !(o1 || o2) {
                rep.record(l == b && r == b, || format!("unit law fails in degree {n}"));
            }
        }
    }

    fn check_homomorphisms(&self, n: usize, basis: &[SparseVec<F>], rep: &mut AxiomReport) {
        for a in basis {
            for b in basis {
                if self.exceeds_budget(n, a, b) {
                    rep.skipped += 1;
                    continue;
                }
                let (ab, overflow) = self.multiply(n, a, b);
                if overflow {
                    rep.skipped += 1;
                    continue;
                }
                if n < self.max_degree() {
                    for i in 0..=n + 1 {
                        let (r, o) = self.multiply(n + 1, &self.face(n, i, a), &self.face(n, i, b));
                        if !o {
                            rep.record(self.face(n, i, &ab) == r, || {
                                format!("d{i} is not multiplicative in degree {n}")
                            });
                        }
                    }
                }
                for j in 0..n {
                    let (r, o) = self.multiply(n - 1, &self.degen(n, j, a), &self.degen(n, j, b));
                    if !o {
                        rep.record(self.degen(n, j, &ab) == r, || {
                            format!("s{j} is not multiplicative in degree {n}")
                        });
                    }
                }
                if self.symmetry.is_some() {
                    for i in 1..n {
                        let (r, o) = self.multiply(n, &self.twist(n, i, a), &self.twist(n, i, b));
                        if !o {
                            rep.record(self.twist(n, i, &ab) == r, || {
                                format!("t{i} is not multiplicative in degree {n}")
                            });
                        }
                    }
                }
            }
        }
    }

    /// Checks that `E(f)(a) E(g)(b) = E(g)(b) E(f)(a)` on basis vectors for the pairs of
    /// maps of linking number at most `n` (`n = 1` or `2`), up to target degree `bound`.
    pub fn verify_n_commutativity(&self, n: usize, bound: usize) -> CommutativityReport {
        let mut rep = CommutativityReport {
            order: n,
            passed: true,
            checked: 0,
            skipped: 0,
            witness: None,
        };
        let top = bound.min(self.max_degree());
        let mut pairs: Vec<(OrdinalMap, OrdinalMap)> = Vec::new();
        for total in 0..=top {
            for a in 0..=total {
                pairs.push((front_inclusion(a, total - a), back_inclusion(total - a, a)));
            }
        }
        if n >= 2 {
            for out in 0..=top {
                for a in 1..=out {
                    let m = out + 1 - a;
                    for i in 0..a {
                        if let (Ok(f), Ok(g)) = (gap_inclusion(m, a, i), window_inclusion(m, a, i))
                        {
                            pairs.push((f, g));
                        }
                    }
                }
            }
        }
        for (f, g) in pairs {
            let out = f.cod();
            let left = self.basis(f.dom());
            let right = self.basis(g.dom());
            let fa: Vec<SparseVec<F>> = left
                .iter()
                .map(|a| self.apply_map(&f, a).expect("in range"))
                .collect();
            let gb: Vec<SparseVec<F>> = right
                .iter()
                .map(|b| self.apply_map(&g, b).expect("in range"))
                .collect();
            for (ia, x) in fa.iter().enumerate() {
                for (ib, y) in gb.iter().enumerate() {
                    if self.exceeds_budget(out, x, y) {
                        rep.skipped += 1;
                        continue;
                    }
                    let (xy, o1) = self.multiply(out, x, y);
                    let (yx, o2) = self.multiply(out, y, x);
                    rep.checked += 1;
                    if xy != yx {
                        rep.passed = false;
                        rep.witness = Some(CommutativityWitness {
                            first_map: f.values().to_vec(),
                            second_map: g.values().to_vec(),
                            first_basis: ia,
                            second_basis: ib,
                            truncated: o1 || o2,
                        });
                        return rep;
                    }
                }
            }
        }
        rep
    }

    /// `E(σ)(x)` for a permutation in one-line form (0-based), via adjacent transpositions.
    pub fn act(&self, perm: &[usize], x: &SparseVec<F>) -> Result<SparseVec<F>> {
        let n = perm.len();
        self.check_degree(n)?;
        if self.symmetry.is_none() {
            return Err(Error::NoSymmetry);
        }
        let mut v = x.clone();
        for i in transposition_word(perm)? {
            v = self.twist(n, i, &v);
        }
        Ok(v)
    }

    /// Antisymmetrization `(1/n!) Σ sgn(σ) σ(x)`.
    pub fn alt(&self, n: usize, x: &SparseVec<F>) -> Result<SparseVec<F>> {
        let scale = factorial_inverse::<F>(n).ok_or(Error::Characteristic(F::characteristic()))?;
        let mut acc = Accumulator::new();
        for perm in permutations(n) {
            acc.add_vec(&sign(permutation_parity(&perm)), &self.act(&perm, x)?);
        }
        Ok(acc.finish().scale(&scale))
    }

    /// `â_i = t_i ... t_1 ∂_0(a)` for `i = 0..=n`.
    pub fn hat_sequence(&self, n: usize, a: &SparseVec<F>) -> Result<Vec<SparseVec<F>>> {
        self.coface(n, 0)?;
        if self.symmetry.is_none() {
            return Err(Error::NoSymmetry);
        }
        let mut out = vec![self.face(n, 0, a)];
        for i in 1..=n {
            let next = self.twist(n + 1, i, out.last().expect("nonempty"));
            out.push(next);
        }
        Ok(out)
    }

    fn poly_primitive_defect(&self, n: usize, a: &SparseVec<F>) -> Result<SparseVec<F>> {
        let hats = self.hat_sequence(n, a)?;
        let stride = self.dims[n + 1];
        let mut entries = Vec::new();
        for i in 1..=n {
            let d = self.face(n, i, a).sub(&hats[i - 1]).sub(&hats[i]);
            entries.extend(
                d.entries()
                    .iter()
                    .map(|(r, c)| ((i - 1) * stride + r, c.clone())),
            );
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// `∂_i(a) = â_{i-1} + â_i` for `i = 1..=n`.
    pub fn is_poly_primitive(&self, n: usize, a: &SparseVec<F>) -> Result<bool> {
        Ok(self.poly_primitive_defect(n, a)?.is_zero())
    }

    pub fn poly_primitive_basis(&self, n: usize) -> Result<Vec<SparseVec<F>>> {
        let basis = self.basis(n);
        let images = basis
            .iter()
            .map(|b| self.poly_primitive_defect(n, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(kernel_of_images(&images)
            .iter()
            .map(|k| combine(&basis, k))
            .collect())
    }

    /// Antisymmetric poly-primitive elements of `E(n)`.
    pub fn hodge_top(&self, n: usize) -> Result<Vec<SparseVec<F>>> {
        factorial_inverse::<F>(n).ok_or(Error::Characteristic(F::characteristic()))?;
        let basis = self.basis(n);
        let offset = n * self.dims[n + 1];
        let images = basis
            .iter()
            .map(|b| {
                let asym = self.alt(n, b)?.sub(b);
                Ok(self
                    .poly_primitive_defect(n, b)?
                    .add(&asym.map_indices(|i| i + offset)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(kernel_of_images(&images)
            .iter()
            .map(|k| combine(&basis, k))
            .collect())
    }

    /// Compares `(∂_0 - ∂_1 + t_1 ∂_0) Σ_{S_n} sgn(σ) σ` with
    /// `(Σ_{σ ∈ S_{n+1}, σ⁻¹(1) < σ⁻¹(2)} sgn(σ) σ) ∂` on every basis vector of `E(n)`.
    pub fn operator_identity_check(&self, n: usize) -> Result<bool> {
        if self.symmetry.is_none() {
            return Err(Error::NoSymmetry);
        }
        if n + 1 > self.max_degree() || n == 0 {
            return Err(Error::DegreeOutOfRange {
                degree: n + 1,
                max: self.max_degree(),
            });
        }
        let small = permutations(n);
        let big: Vec<Vec<usize>> = permutations(n + 1)
            .into_iter()
            .filter(|p| p.iter().position(|&v| v == 0) < p.iter().position(|&v| v == 1))
            .collect();
        for x in self.basis(n) {
            let mut s = Accumulator::new();
            for p in &small {
                s.add_vec(&sign(permutation_parity(p)), &self.act(p, &x)?);
            }
            let s = s.finish();
            let d0 = self.face(n, 0, &s);
            let lhs = d0.sub(&self.face(n, 1, &s)).add(&self.twist(n + 1, 1, &d0));
            let dx = self.coboundary(n, &x)?;
            let mut rhs = Accumulator::new();
            for p in &big {
                rhs.add_vec(&sign(permutation_parity(p)), &self.act(p, &dx)?);
            }
            if lhs != rhs.finish() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serializable description; products are tabulated on the ambient bases.
    pub fn to_document(&self) -> InstanceDocument {
        let mat = |m: &SparseMatrix<F>| MatrixDocument {
            rows: m.rows(),
            cols: m.columns().iter().map(vec_doc).collect(),
        };
        let products = (0..self.dims.len())
            .map(|n| {
                let mut out = Vec::new();
                for i in 0..self.dims[n] {
                    for j in 0..self.dims[n] {
                        let (v, o) = self.product.mul(n, i, j);
                        if !v.is_zero() || o {
                            out.push(ProductEntry {
                                i,
                                j,
                                value: vec_doc(&v),
                                truncated: o,
                            });
                        }
                    }
                }
                out
            })
            .collect();
        InstanceDocument {
            name: self.name.clone(),
            characteristic: F::characteristic(),
            dims: self.dims.clone(),
            labels: self.labels.clone(),
            units: self.units.iter().map(vec_doc).collect(),
            products,
            cofaces: self
                .cofaces
                .iter()
                .map(|fs| fs.iter().map(mat).collect())
                .collect(),
            codegeneracies: self
                .codegeneracies
                .iter()
                .map(|fs| fs.iter().map(mat).collect())
                .collect(),
            symmetry: self
                .symmetry
                .as_ref()
                .map(|s| s.iter().map(|fs| fs.iter().map(mat).collect()).collect()),
            subspaces: self
                .subspaces
                .as_ref()
                .map(|s| s.iter().map(|b| b.iter().map(vec_doc).collect()).collect()),
        }
    }

    pub fn from_document(doc: &InstanceDocument) -> Result<Self> {
        if doc.characteristic != F::characteristic() {
            return Err(shape_error(
                "char".into(),
                format!(
                    "document has characteristic {}, field has {}",
                    doc.characteristic,
                    F::characteristic()
                ),
            ));
        }
        let vec = |v: &[(usize, String)], path: String| -> Result<SparseVec<F>> {
            v.iter()
                .enumerate()
                .map(|(k, (i, c))| {
                    Ok((
                        *i,
                        parse_scalar::<F>(c).map_err(|e| shape_error(format!("{path}[{k}]"), e))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()
                .map(SparseVec::from_entries)
        };
        let mat = |m: &MatrixDocument, path: String| -> Result<SparseMatrix<F>> {
            let cols = m
                .cols
                .iter()
                .enumerate()
                .map(|(j, c)| vec(c, format!("{path}.cols[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(SparseMatrix::from_columns(m.rows, cols))
        };
        let maps = |ms: &[Vec<MatrixDocument>], path: &str| -> Result<Vec<Vec<SparseMatrix<F>>>> {
            ms.iter()
                .enumerate()
                .map(|(n, fs)| {
                    fs.iter()
                        .enumerate()
                        .map(|(i, m)| mat(m, format!("{path}[{n}][{i}]")))
                        .collect()
                })
                .collect()
        };
        if doc.products.len() != doc.dims.len() {
            return Err(shape_error(
                "products".into(),
                format!("expected {} degrees", doc.dims.len()),
            ));
        }
        let mut tables = Vec::new();
        for (n, entries) in doc.products.iter().enumerate() {
            let mut t = HashMap::new();
            for (k, e) in entries.iter().enumerate() {
                if e.i >= doc.dims[n] || e.j >= doc.dims[n] {
                    return Err(shape_error(
                        format!("products[{n}][{k}]"),
                        "basis index out of range".into(),
                    ));
                }
                t.insert(
                    (e.i, e.j),
                    (
                        vec(&e.value, format!("products[{n}][{k}].value"))?,
                        e.truncated,
                    ),
                );
            }
            tables.push(t);
        }
        let units = doc
            .units
            .iter()
            .enumerate()
            .map(|(n, u)| vec(u, format!("units[{n}]")))
            .collect::<Result<Vec<_>>>()?;
        let subspaces = match &doc.subspaces {
            None => None,
            Some(s) => Some(
                s.iter()
                    .enumerate()
                    .map(|(n, b)| {
                        b.iter()
                            .enumerate()
                            .map(|(k, v)| vec(v, format!("subspaces[{n}][{k}]")))
                            .collect()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let labels = if doc.labels.is_empty() {
            doc.dims
                .iter()
                .map(|&d| (0..d).map(|i| format!("e{i}")).collect())
                .collect()
        } else {
            doc.labels.clone()
        };
        CosimplicialAlgebraInstance::new(InstanceParts {
            name: doc.name.clone(),
            dims: doc.dims.clone(),
            labels,
            product: Arc::new(TableProduct::new(tables)),
            units,
            cofaces: maps(&doc.cofaces, "cofaces")?,
            codegeneracies: maps(&doc.codegeneracies, "codegeneracies")?,
            symmetry: doc
                .symmetry
                .as_ref()
                .map(|s| maps(s, "symmetry"))
                .transpose()?,
            subspaces,
            grading: None,
        })
    }
}

/// The constant cosimplicial object on one algebra: every structure map is the identity.
pub fn constant_instance<F: Field>(
    name: &str,
    alg: &FdAlgebra<F>,
    max_degree: usize,
) -> Result<CosimplicialAlgebraInstance<F>> {
    let d = alg.dim();
    let id = SparseMatrix::identity(d);
    let mut tables = Vec::new();
    let mut t = HashMap::new();
    for i in 0..d {
        for j in 0..d {
            let v = alg.basis_product(i, j);
            if !v.is_zero() {
                t.insert((i, j), (v, false));
            }
        }
    }
    for _ in 0..=max_degree {
        tables.push(t.clone());
    }
    CosimplicialAlgebraInstance::new(InstanceParts {
        name: name.to_string(),
        dims: vec![d; max_degree + 1],
        labels: vec![alg.labels().to_vec(); max_degree + 1],
        product: Arc::new(TableProduct::new(tables)),
        units: vec![alg.unit().clone(); max_degree + 1],
        cofaces: (0..max_degree).map(|n| vec![id.clone(); n + 2]).collect(),
        codegeneracies: (0..=max_degree).map(|n| vec![id.clone(); n]).collect(),
        symmetry: None,
        subspaces: None,
        grading: None,
    })
}

/// Upper triangular 2x2 matrices with basis `e11, e12, e22`.
pub fn upper_triangular<F: Field>() -> FdAlgebra<F> {
    let mut t = HashMap::new();
    t.insert((0, 0), SparseVec::unit(0));
    t.insert((0, 1), SparseVec::unit(1));
    t.insert((1, 2), SparseVec::unit(1));
    t.insert((2, 2), SparseVec::unit(2));
    let unit = SparseVec::unit(0).add(&SparseVec::unit(2));
    FdAlgebra::new(3, vec!["e11".into(), "e12".into(), "e22".into()], t, unit)
        .expect("matrix algebra")
}

#[derive(Clone, Debug)]
pub struct Cohomology<F> {
    pub degree: usize,
    pub dimension: usize,
    pub cocycle_dim: usize,
    pub boundary_rank: usize,
    pub representatives: Vec<SparseVec<F>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityWitness {
    pub first_map: Vec<usize>,
    pub second_map: Vec<usize>,
    pub first_basis: usize,
    pub second_basis: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityReport {
    pub order: usize,
    pub passed: bool,
    pub checked: usize,
    pub skipped: usize,
    pub witness: Option<CommutativityWitness>,
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

pub fn permutation_parity(perm: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Adjacent transpositions `t_i` (1-based) in application order whose composite is `perm`.
pub fn transposition_word(perm: &[usize]) -> Result<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || seen[v] {
            return Err(Error::InvalidMap(format!("{perm:?} is not a permutation")));
        }
        seen[v] = true;
    }
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..n.saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        word.push(i + 1);
    }
    Ok(word)
}

pub fn parse_scalar<F: Field>(s: &str) -> std::result::Result<F, String> {
    let r: BigRational = s
        .trim()
        .parse()
        .map_err(|_| format!("malformed scalar {s:?}"))?;
    F::from_ratio(r.numer(), r.denom()).ok_or_else(|| {
        format!(
            "denominator of {s} vanishes in characteristic {}",
            F::characteristic()
        )
    })
}

fn scalar_string<F: Field>(c: &F) -> String {
    c.to_string()
}

fn vec_doc<F: Field>(v: &SparseVec<F>) -> Vec<(usize, String)> {
    v.entries()
        .iter()
        .map(|(i, c)| (*i, scalar_string(c)))
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, String)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<(usize, String)>,
    #[serde(default)]
    pub truncated: bool,
}

/// Sparse vector as `(index, scalar)` pairs.
pub type TextVector = Vec<(usize, String)>;

/// JSON form of an instance; scalars are decimal strings or fractions `p/q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub name: String,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub labels: Vec<Vec<String>>,
    pub units: Vec<TextVector>,
    pub products: Vec<Vec<ProductEntry>>,
    pub cofaces: Vec<Vec<MatrixDocument>>,
    pub codegeneracies: Vec<Vec<MatrixDocument>>,
    #[serde(default)]
    pub symmetry: Option<Vec<Vec<MatrixDocument>>>,
    #[serde(default)]
    pub subspaces: Option<Vec<Vec<TextVector>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    #[test]
    fn transposition_words_rebuild_permutations() {
        for n in 1..=4 {
            for p in permutations(n) {
                let mut cur: Vec<usize> = (0..n).collect();
                for i in transposition_word(&p).unwrap() {
                    // t_i as a function exchanges the values i-1 and i
                    for v in cur.iter_mut() {
                        if *v == i - 1 {
                            *v = i;
                        } else if *v == i {
                            *v = i - 1;
                        }
                    }
                }
                assert_eq!(cur, p);
            }
        }
    }

    #[test]
    fn constant_instance_is_not_commutative() {
        let inst = constant_instance::<Q>("twisted", &upper_triangular(), 3).unwrap();
        assert!(inst.check_axioms(3).passed());
        let r = inst.verify_n_commutativity(1, 2);
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }
}
