//! Sketches: reduced words in idempotent variables, their projections, expansions
//! and substitution of shuffle words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sketch {
    word: Vec<u8>,
}

/// Collapses runs of a repeated letter, except runs of `keep`.
pub fn reduce_except(word: &[u8], keep: Option<u8>) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l) && Some(l) != keep {
            continue;
        }
        out.push(l);
    }
    out
}

impl Sketch {
    /// Reduces an arbitrary word over `1..=k` using `s s = s`.
    pub fn from_word(word: &[u8]) -> Result<Self> {
        let k = word.iter().copied().max().unwrap_or(0);
        if word.contains(&0) || (1..=k).any(|v| !word.contains(&v)) {
            return Err(Error::Parse(format!(
                "word {word:?} must use every variable 1..={k}"
            )));
        }
        Ok(Sketch {
            word: reduce_except(word, None),
        })
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn arity(&self) -> usize {
        self.word.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Keeps the variables `i < j` and renames them to 1 and 2.
    pub fn project(&self, i: u8, j: u8) -> Sketch {
        let w: Vec<u8> = self
            .word
            .iter()
            .filter(|&&l| l == i || l == j)
            .map(|&l| if l == i { 1 } else { 2 })
            .collect();
        Sketch {
            word: reduce_except(&w, None),
        }
    }

    pub fn complexity_ij(&self, i: u8, j: u8) -> usize {
        self.project(i, j).length().saturating_sub(1)
    }

    pub fn complexity(&self) -> usize {
        let k = self.arity() as u8;
        let mut best = 0;
        for i in 1..=k {
            for j in i + 1..=k {
                best = best.max(self.complexity_ij(i, j));
            }
        }
        best
    }

    pub fn first_movement(&self) -> Vec<u8> {
        let mut seen = Vec::new();
        for &l in &self.word {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        seen
    }
}

impl fmt::Display for Sketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|l| format!("s{l}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Reduction of a shuffle word by every variable except `i`.
pub fn expansion(word: &[u8], i: u8) -> Vec<u8> {
    reduce_except(word, Some(i))
}

/// Replaces the `j`-th occurrence of `i` in `expanded` by the `j`-th letter of `t`,
/// renumbers and reduces. `t` uses variables `1..=d`; they become `i..i+d-1`, and
/// the variables of `expanded` above `i` shift by `d-1`.
pub fn substitute(expanded: &[u8], i: u8, t: &[u8]) -> Result<Sketch> {
    Sketch::from_word(&substitute_word(expanded, i, t)?)
}

pub fn substitute_word(expanded: &[u8], i: u8, t: &[u8]) -> Result<Vec<u8>> {
    let occ = expanded.iter().filter(|&&l| l == i).count();
    if occ != t.len() {
        return Err(Error::LengthMismatch {
            expected: occ,
            found: t.len(),
        });
    }
    let d = t.iter().copied().max().unwrap_or(0);
    let mut next = t.iter();
    Ok(expanded
        .iter()
        .map(|&l| {
            if l == i {
                i - 1 + next.next().expect("counted")
            } else if l < i {
                l
            } else {
                l + d - 1
            }
        })
        .collect())
}

/// Where a variable of the composite sketch comes from.
enum Origin {
    Outer(u8),
    Inner(u8),
}

fn origin(v: u8, i: u8, d: u8) -> Origin {
    if v < i {
        Origin::Outer(v)
    } else if v < i + d {
        Origin::Inner(v - i + 1)
    } else {
        Origin::Outer(v - d + 1)
    }
}

/// Pairwise complexity `c_ab` of `substitute(expanded, i, t)` computed without forming the
/// composite: pairs inside one factor read off that factor, mixed pairs go through a
/// two-variable substitution.
pub fn complexity_recipe(expanded: &[u8], t: &[u8], i: u8, a: u8, b: u8) -> Result<usize> {
    let occ = expanded.iter().filter(|&&l| l == i).count();
    if occ != t.len() {
        return Err(Error::LengthMismatch {
            expected: occ,
            found: t.len(),
        });
    }
    let d = t.iter().copied().max().unwrap_or(0);
    let pair = |w: &[u8], x: u8, y: u8| -> usize {
        let kept: Vec<u8> = w.iter().copied().filter(|&l| l == x || l == y).collect();
        reduce_except(&kept, None).len().saturating_sub(1)
    };
    match (origin(a, i, d), origin(b, i, d)) {
        (Origin::Inner(x), Origin::Inner(y)) => Ok(pair(t, x, y)),
        (Origin::Outer(x), Origin::Outer(y)) => Ok(pair(expanded, x, y)),
        (Origin::Outer(c), Origin::Inner(j)) | (Origin::Inner(j), Origin::Outer(c)) => {
            // keep only the substituted variable and the outer one, reduce the outer one
            let kept: Vec<u8> = expanded
                .iter()
                .copied()
                .filter(|&l| l == i || l == c)
                .collect();
            let outer = reduce_except(&kept, Some(i));
            // blank every inner letter except the chosen one
            let mut inner = t.iter().map(|&l| l == j);
            let merged: Vec<u8> = outer
                .iter()
                .filter_map(|&l| {
                    if l == i {
                        inner.next().expect("counted").then_some(0)
                    } else {
                        Some(1)
                    }
                })
                .collect();
            Ok(reduce_except(&merged, None).len().saturating_sub(1))
        }
    }
}
