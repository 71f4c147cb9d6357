//! Ordinals `[n]`, intervals `<n>`, monotone maps between them and Joyal duality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nondecreasing map `[dom] -> [cod]` stored by its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl OrdinalMap {
    pub fn new(cod: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMap(
                "an ordinal map needs at least one value".into(),
            ));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!(
                "values {values:?} are not nondecreasing"
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v > cod) {
            return Err(Error::InvalidMap(format!(
                "value {v} exceeds codomain [{cod}]"
            )));
        }
        Ok(Self {
            dom: values.len() - 1,
            cod,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dom: n,
            cod: n,
            values: (0..=n).collect(),
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.dom] == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.values.clone();
        im.dedup();
        im
    }

    /// Every nondecreasing map `[dom] -> [cod]`, in lexicographic order of values.
    pub fn all(dom: usize, cod: usize) -> Vec<OrdinalMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(dom + 1);
        fn rec(cur: &mut Vec<usize>, dom: usize, cod: usize, out: &mut Vec<OrdinalMap>) {
            if cur.len() == dom + 1 {
                out.push(OrdinalMap {
                    dom,
                    cod,
                    values: cur.clone(),
                });
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for v in lo..=cod {
                cur.push(v);
                rec(cur, dom, cod, out);
                cur.pop();
            }
        }
        rec(&mut cur, dom, cod, &mut out);
        out
    }

    /// Returns `(cofaces, codegeneracies)` with `self = d_{i_r}...d_{i_1} s_{j_t}...s_{j_1}`,
    /// both lists in application order.
    pub fn generator_word(&self) -> (Vec<usize>, Vec<usize>) {
        let (epi, mono) = epi_mono_factor(self);
        let mut degs = Vec::new();
        for k in 0..epi.dom {
            if epi.values[k] == epi.values[k + 1] {
                degs.push(k);
            }
        }
        let mut seq = Vec::new();
        for (shift, k) in degs.iter().enumerate() {
            seq.push(k - shift);
        }
        let im = mono.image();
        let faces: Vec<usize> = (0..=mono.cod).filter(|v| !im.contains(v)).collect();
        (faces, seq)
    }
}

impl fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]->[{}]:({})", self.dom, self.cod, vals.join(","))
    }
}

/// An interval map `<dom> -> <cod>` preserving both endpoints, stored by its object map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalMap {
    dom: usize,
    cod: usize,
    obj: Vec<usize>,
}

impl IntervalMap {
    pub fn new(cod: usize, obj: Vec<usize>) -> Result<Self> {
        if obj.len() < 2 {
            return Err(Error::InvalidMap(
                "an interval has at least two objects".into(),
            ));
        }
        if obj.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!(
                "object map {obj:?} is not nondecreasing"
            )));
        }
        if obj[0] != 0 || *obj.last().unwrap() != cod {
            return Err(Error::InvalidMap(format!(
                "object map {obj:?} does not preserve endpoints of <{cod}>"
            )));
        }
        Ok(Self {
            dom: obj.len() - 1,
            cod,
            obj,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dom: n,
            cod: n,
            obj: (0..=n).collect(),
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn obj(&self) -> &[usize] {
        &self.obj
    }

    /// `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &IntervalMap) -> Result<IntervalMap> {
        if other.cod != self.dom {
            return Err(Error::DomainMismatch {
                expected: self.dom,
                found: other.cod,
            });
        }
        Ok(IntervalMap {
            dom: other.dom,
            cod: self.cod,
            obj: other.obj.iter().map(|&o| self.obj[o]).collect(),
        })
    }

    /// Generators `k` of the source sent to a nonidentity arrow.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dom)
            .filter(|&k| self.obj[k] < self.obj[k + 1])
            .collect()
    }
}

pub fn coface(i: usize, n: usize) -> Result<OrdinalMap> {
    if i > n + 1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: n + 1,
        });
    }
    let values = (0..=n).map(|k| if k < i { k } else { k + 1 }).collect();
    Ok(OrdinalMap {
        dom: n,
        cod: n + 1,
        values,
    })
}

pub fn codegeneracy(i: usize, n: usize) -> Result<OrdinalMap> {
    if n == 0 || i + 1 > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: n.saturating_sub(1),
        });
    }
    let values = (0..=n).map(|k| if k <= i { k } else { k - 1 }).collect();
    Ok(OrdinalMap {
        dom: n,
        cod: n - 1,
        values,
    })
}

/// `g ∘ f`.
pub fn compose(g: &OrdinalMap, f: &OrdinalMap) -> Result<OrdinalMap> {
    if f.cod != g.dom {
        return Err(Error::DomainMismatch {
            expected: g.dom,
            found: f.cod,
        });
    }
    Ok(OrdinalMap {
        dom: f.dom,
        cod: g.cod,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

pub fn epi_mono_factor(f: &OrdinalMap) -> (OrdinalMap, OrdinalMap) {
    let im = f.image();
    let r = im.len() - 1;
    let epi_vals = f
        .values
        .iter()
        .map(|v| im.binary_search(v).unwrap())
        .collect();
    (
        OrdinalMap {
            dom: f.dom,
            cod: r,
            values: epi_vals,
        },
        OrdinalMap {
            dom: r,
            cod: f.cod,
            values: im,
        },
    )
}

/// Dual of `f:[m]->[l]` as an interval map `<l+1> -> <m+1>`.
pub fn joyal_dual(f: &OrdinalMap) -> IntervalMap {
    let l = f.cod;
    let obj = (0..=l + 1)
        .map(|i| f.values.iter().filter(|&&v| v < i).count())
        .collect();
    IntervalMap {
        dom: l + 1,
        cod: f.dom + 1,
        obj,
    }
}

/// Inverse of [`joyal_dual`]: `g:<l+1> -> <m+1>` gives `[m] -> [l]`.
pub fn joyal_inverse(g: &IntervalMap) -> Result<OrdinalMap> {
    if g.dom == 0 || g.cod == 0 {
        return Err(Error::InvalidMap(
            "the dual of an interval map needs nonzero extents".into(),
        ));
    }
    let l = g.dom - 1;
    let m = g.cod - 1;
    let values = (0..=m)
        .map(|k| (1..=l).filter(|&i| g.obj[i] <= k).count())
        .collect();
    Ok(OrdinalMap {
        dom: m,
        cod: l,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_word_rebuilds_map() {
        for dom in 0..4 {
            for cod in 0..4 {
                for f in OrdinalMap::all(dom, cod) {
                    let (faces, degs) = f.generator_word();
                    let mut g = OrdinalMap::identity(dom);
                    let mut n = dom;
                    for j in degs {
                        g = compose(&codegeneracy(j, n).unwrap(), &g).unwrap();
                        n -= 1;
                    }
                    for &i in faces.iter() {
                        g = compose(&coface(i, n).unwrap(), &g).unwrap();
                        n += 1;
                    }
                    assert_eq!(g, f);
                }
            }
        }
    }

    #[test]
    fn interval_support_of_dual_is_image() {
        for f in OrdinalMap::all(2, 3) {
            assert_eq!(joyal_dual(&f).support(), f.image());
        }
    }
}
