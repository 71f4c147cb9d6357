//! Lattice paths: unit-step paths on a k-dimensional grid with stop multiplicities.
//!
//! Text form: the direction word as digits `1..=9`, a bar, then the comma-separated
//! vertex labels, e.g. `12|1,0,1,1`. Extents are read off the letter counts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{MPath, Shuffling, Side};
use crate::simplicial::IntervalMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    extents: Vec<usize>,
    word: Vec<u8>,
    labels: Vec<usize>,
}

impl LatticePath {
    pub fn new(extents: Vec<usize>, word: Vec<u8>, labels: Vec<usize>) -> Result<Self> {
        let k = extents.len();
        if k == 0 {
            return Err(Error::InvalidPath("arity must be positive".into()));
        }
        let mut counts = vec![0usize; k];
        for &l in &word {
            if l == 0 || l as usize > k {
                return Err(Error::InvalidPath(format!("letter {l} outside 1..={k}")));
            }
            counts[l as usize - 1] += 1;
        }
        for (i, (&c, &n)) in counts.iter().zip(&extents).enumerate() {
            if c != n + 1 {
                return Err(Error::InvalidPath(format!(
                    "letter {} occurs {c} times, expected {}",
                    i + 1,
                    n + 1
                )));
            }
        }
        if labels.len() != word.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: word.len() + 1,
                found: labels.len(),
            });
        }
        if labels[0] == 0 || *labels.last().unwrap() == 0 {
            return Err(Error::InvalidPath(
                "endpoint labels must be positive".into(),
            ));
        }
        Ok(Self {
            extents,
            word,
            labels,
        })
    }

    /// Builds labels from the vertex index of every object of the source interval.
    pub fn from_stops(extents: Vec<usize>, word: Vec<u8>, stops: &[usize]) -> Result<Self> {
        let mut labels = vec![0usize; word.len() + 1];
        for &s in stops {
            if s > word.len() {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    bound: word.len(),
                });
            }
            labels[s] += 1;
        }
        if stops.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPath("stops are not nondecreasing".into()));
        }
        LatticePath::new(extents, word, labels)
    }

    /// The shuffle path with the given word: every vertex is a single stop.
    pub fn shuffle(word: Vec<u8>) -> Result<Self> {
        let k = word.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0usize; k];
        for &l in &word {
            if l == 0 {
                return Err(Error::InvalidPath("letter 0".into()));
            }
            counts[l as usize - 1] += 1;
        }
        if counts.contains(&0) {
            return Err(Error::InvalidPath("every direction must occur".into()));
        }
        let labels = vec![1; word.len() + 1];
        LatticePath::new(counts.iter().map(|c| c - 1).collect(), word, labels)
    }

    pub fn identity(n: usize) -> Self {
        LatticePath::shuffle(vec![1; n + 1]).expect("unary identity")
    }

    pub fn arity(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// `m` of the source interval `<m+1>`.
    pub fn m(&self) -> usize {
        self.labels.iter().sum::<usize>() - 2
    }

    /// Vertex index of each object `0..=m+1`.
    pub fn stops(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .flat_map(|(v, &l)| std::iter::repeat_n(v, l))
            .collect()
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let mut cur = vec![0usize; self.arity()];
        let mut out = vec![cur.clone()];
        for &l in &self.word {
            cur[l as usize - 1] += 1;
            out.push(cur.clone());
        }
        out
    }

    /// Vertices where the direction changes.
    pub fn corners(&self) -> Vec<usize> {
        (1..self.word.len())
            .filter(|&v| self.word[v] != self.word[v - 1])
            .collect()
    }

    pub fn complexity_ij(&self, i: usize, j: usize) -> Result<usize> {
        let k = self.arity();
        if i == 0 || i >= j || j > k {
            return Err(Error::IndexOutOfRange {
                index: j.max(i),
                bound: k,
            });
        }
        Ok(pair_complexity(&self.word, i as u8, j as u8))
    }

    pub fn complexity(&self) -> usize {
        let k = self.arity() as u8;
        let mut best = 0;
        for i in 1..=k {
            for j in i + 1..=k {
                best = best.max(pair_complexity(&self.word, i, j));
            }
        }
        best
    }

    /// Directions in the order of their first move.
    pub fn first_movement(&self) -> Vec<u8> {
        let mut seen = Vec::with_capacity(self.arity());
        for &l in &self.word {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        seen
    }

    pub fn is_shuffle(&self) -> bool {
        self.labels.iter().all(|&l| l == 1)
    }

    /// Binary paths are even when the first move is in direction 1.
    pub fn is_even(&self) -> bool {
        self.word.first() == Some(&1)
    }

    /// Degenerate: some internal vertex that is not a corner has label 0.
    pub fn is_degenerate(&self) -> bool {
        let n = self.word.len();
        (1..n).any(|v| self.labels[v] == 0 && self.word[v] == self.word[v - 1])
    }

    /// Operadic substitution of `omega` into input `i` (1-based).
    pub fn compose(&self, i: usize, omega: &LatticePath) -> Result<LatticePath> {
        let k = self.arity();
        if i == 0 || i > k {
            return Err(Error::IndexOutOfRange { index: i, bound: k });
        }
        if omega.m() != self.extents[i - 1] {
            return Err(Error::ColourMismatch {
                input: self.extents[i - 1],
                output: omega.m(),
            });
        }
        let r = omega.arity() as u8;
        let ii = i as u8;
        let ostops = omega.stops();
        let mut word = Vec::new();
        let mut pos = vec![0usize; self.word.len() + 1];
        let mut c = 0usize;
        for (v, &l) in self.word.iter().enumerate() {
            if l == ii {
                for &x in &omega.word[ostops[c]..ostops[c + 1]] {
                    word.push(ii - 1 + x);
                }
                c += 1;
            } else if l < ii {
                word.push(l);
            } else {
                word.push(l + r - 1);
            }
            pos[v + 1] = word.len();
        }
        let mut extents = self.extents[..i - 1].to_vec();
        extents.extend_from_slice(&omega.extents);
        extents.extend_from_slice(&self.extents[i..]);
        let stops: Vec<usize> = self.stops().iter().map(|&s| pos[s]).collect();
        LatticePath::from_stops(extents, word, &stops)
    }

    /// Forgets the order of moves: one interval map per direction.
    pub fn project(&self) -> Vec<IntervalMap> {
        let verts = self.vertices();
        let stops = self.stops();
        (0..self.arity())
            .map(|d| {
                IntervalMap::new(
                    self.extents[d] + 1,
                    stops.iter().map(|&s| verts[s][d]).collect(),
                )
                .expect("monotone projection")
            })
            .collect()
    }

    pub fn project_to_m(&self) -> Result<MPath> {
        if self.arity() != 2 {
            return Err(Error::Arity(self.arity()));
        }
        let verts = self.vertices();
        let pts = self
            .stops()
            .iter()
            .map(|&s| (verts[s][0], verts[s][1]))
            .collect();
        MPath::new(self.extents[0], self.extents[1], pts)
    }

    /// `self = dagger ∘ pre` with `dagger` a shuffle path.
    pub fn shuffle_factor(&self) -> (IntervalMap, LatticePath) {
        let dagger = LatticePath::shuffle(self.word.clone()).expect("same word");
        let pre = IntervalMap::new(self.word.len(), self.stops()).expect("stops are monotone");
        (pre, dagger)
    }

    /// `mu(step) = offset of its direction + its index among moves in that direction`.
    pub fn shuffle_permutation(&self) -> Vec<usize> {
        let mut offsets = vec![0usize; self.arity()];
        for d in 1..self.arity() {
            offsets[d] = offsets[d - 1] + self.extents[d - 1] + 1;
        }
        let mut seen = vec![0usize; self.arity()];
        self.word
            .iter()
            .map(|&l| {
                let d = l as usize - 1;
                let v = offsets[d] + seen[d];
                seen[d] += 1;
                v
            })
            .collect()
    }

    /// Sign of the shuffle permutation of the underlying word.
    pub fn sign(&self) -> i64 {
        let mut inv = 0usize;
        let mut later = vec![0usize; self.arity() + 1];
        for &l in self.word.iter().rev() {
            inv += later[..l as usize].iter().sum::<usize>();
            later[l as usize] += 1;
        }
        if inv.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Swaps the two directions of a binary path.
    pub fn transpose(&self) -> Result<LatticePath> {
        if self.arity() != 2 {
            return Err(Error::Arity(self.arity()));
        }
        Ok(LatticePath {
            extents: vec![self.extents[1], self.extents[0]],
            word: self.word.iter().map(|&l| 3 - l).collect(),
            labels: self.labels.clone(),
        })
    }
}

pub(crate) fn pair_complexity(word: &[u8], i: u8, j: u8) -> usize {
    let mut runs = 0usize;
    let mut last = 0u8;
    for &l in word {
        if (l == i || l == j) && l != last {
            runs += 1;
            last = l;
        }
    }
    runs.saturating_sub(1)
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: String = self.word.iter().map(|l| char::from(b'0' + l)).collect();
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "{w}|{}", labels.join(","))
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (w, l) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|' in {s:?}")))?;
        let word: Vec<u8> = w
            .trim()
            .chars()
            .map(|c| c.to_digit(10).filter(|&d| d > 0).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad direction word {w:?}")))?;
        let labels: Vec<usize> = l
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad label list {l:?}: {e}")))?;
        let k = word.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0usize; k];
        for &x in &word {
            counts[x as usize - 1] += 1;
        }
        if counts.contains(&0) {
            return Err(Error::Parse(format!("direction word {w:?} skips a letter")));
        }
        LatticePath::new(counts.iter().map(|c| c - 1).collect(), word, labels)
    }
}

/// The lifting of `phi` selected by a shuffling of its supports.
pub fn lift(phi: &MPath, sh: &Shuffling) -> Result<LatticePath> {
    let (a, b) = phi.supports();
    sh.validate(&a, &b)?;
    let mut a_pos = HashMap::new();
    let mut b_pos = HashMap::new();
    for (pos, (side, blk)) in sh.blocks().into_iter().enumerate() {
        for &e in blk {
            match side {
                Side::A => a_pos.insert(e, pos),
                Side::B => b_pos.insert(e, pos),
            };
        }
    }
    let mut word = Vec::new();
    let mut stops = vec![0usize];
    for (j, (dx, dy)) in phi.increments().into_iter().enumerate() {
        let xs = std::iter::repeat_n(1u8, dx);
        let ys = std::iter::repeat_n(2u8, dy);
        let x_first = match (a_pos.get(&j), b_pos.get(&j)) {
            (Some(pa), Some(pb)) => pa < pb,
            _ => true,
        };
        if x_first {
            word.extend(xs.chain(ys));
        } else {
            word.extend(ys.chain(xs));
        }
        stops.push(word.len());
    }
    LatticePath::from_stops(vec![phi.p(), phi.q()], word, &stops)
}

/// Every lattice path projecting onto `phi`: all interleavings inside each generator.
pub fn all_liftings(phi: &MPath) -> Vec<LatticePath> {
    let inc = phi.increments();
    let mut out = Vec::new();
    let mut word = Vec::new();
    let mut stops = vec![0usize];
    fn rec(
        inc: &[(usize, usize)],
        j: usize,
        word: &mut Vec<u8>,
        stops: &mut Vec<usize>,
        phi: &MPath,
        out: &mut Vec<LatticePath>,
    ) {
        if j == inc.len() {
            out.push(
                LatticePath::from_stops(vec![phi.p(), phi.q()], word.clone(), stops)
                    .expect("lifting"),
            );
            return;
        }
        let (dx, dy) = inc[j];
        for seg in interleavings(dx, dy) {
            let len = word.len();
            word.extend_from_slice(&seg);
            stops.push(word.len());
            rec(inc, j + 1, word, stops, phi, out);
            stops.pop();
            word.truncate(len);
        }
    }
    rec(&inc, 0, &mut word, &mut stops, phi, &mut out);
    out
}

/// Words with `a` ones and `b` twos, lexicographic.
pub fn interleavings(a: usize, b: usize) -> Vec<Vec<u8>> {
    let n = a + b;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(a: usize, b: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if a == 0 && b == 0 {
            out.push(cur.clone());
            return;
        }
        if a > 0 {
            cur.push(1);
            rec(a - 1, b, cur, out);
            cur.pop();
        }
        if b > 0 {
            cur.push(2);
            rec(a, b - 1, cur, out);
            cur.pop();
        }
    }
    rec(a, b, &mut cur, &mut out);
    out
}

/// Words with `counts[d]` occurrences of letter `d+1`, lexicographic.
pub fn multiset_words(counts: &[usize]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut left = counts.to_vec();
    let total: usize = counts.iter().sum();
    let mut cur = Vec::with_capacity(total);
    fn rec(left: &mut [usize], total: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for d in 0..left.len() {
            if left[d] > 0 {
                left[d] -= 1;
                cur.push(d as u8 + 1);
                rec(left, total, cur, out);
                cur.pop();
                left[d] += 1;
            }
        }
    }
    rec(&mut left, total, &mut cur, &mut out);
    out
}

/// All lattice paths with the given extents and source `<m+1>`.
pub fn enumerate_all(extents: &[usize], m: usize) -> Vec<LatticePath> {
    let counts: Vec<usize> = extents.iter().map(|n| n + 1).collect();
    let mut out = Vec::new();
    for word in multiset_words(&counts) {
        let nv = word.len() + 1;
        for stops in stop_sequences(nv, m + 2) {
            out.push(
                LatticePath::from_stops(extents.to_vec(), word.clone(), &stops)
                    .expect("valid stops"),
            );
        }
    }
    out
}

/// Nondecreasing sequences of `len` vertex indices in `0..nv` starting at 0 and ending at `nv-1`.
fn stop_sequences(nv: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len < 2 {
        return out;
    }
    let mut cur = vec![0usize];
    fn rec(nv: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len - 1 {
            cur.push(nv - 1);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let lo = *cur.last().unwrap();
        for v in lo..nv {
            cur.push(v);
            rec(nv, len, cur, out);
            cur.pop();
        }
    }
    rec(nv, len, &mut cur, &mut out);
    out
}

/// Normal and smooth binary lattice paths split by parity of the first move.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParitySplit {
    pub even: Vec<LatticePath>,
    pub odd: Vec<LatticePath>,
}

impl ParitySplit {
    pub fn len(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePath> {
        self.even.iter().chain(self.odd.iter())
    }
}

/// The normal path on a binary word: corners labelled 0, every other vertex 1.
pub fn normal_path(word: Vec<u8>) -> Result<LatticePath> {
    let n = word.len();
    let labels = (0..=n)
        .map(|v| {
            if v > 0 && v < n && word[v] != word[v - 1] {
                0
            } else {
                1
            }
        })
        .collect();
    let counts = [
        word.iter().filter(|&&l| l == 1).count(),
        word.iter().filter(|&&l| l == 2).count(),
    ];
    if counts.contains(&0) || word.iter().any(|&l| l != 1 && l != 2) {
        return Err(Error::InvalidPath(
            "binary word must use both directions".into(),
        ));
    }
    LatticePath::new(vec![counts[0] - 1, counts[1] - 1], word, labels)
}

type CacheKey = (bool, usize, usize, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<ParitySplit>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<ParitySplit>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: CacheKey, build: impl FnOnce() -> ParitySplit) -> Arc<ParitySplit> {
    if let Some(v) = cache().lock().expect("cache lock").get(&key) {
        return Arc::clone(v);
    }
    let v = Arc::new(build());
    cache()
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert(v)
        .clone()
}

fn split_binary(p: usize, q: usize, n: usize, smooth_only: bool) -> ParitySplit {
    let mut out = ParitySplit::default();
    for word in interleavings(p + 1, q + 1) {
        let runs = run_lengths(&word);
        if runs.len() != n + 1 {
            continue;
        }
        if smooth_only && runs.len() > 2 && runs[1..runs.len() - 1].iter().any(|&r| r < 2) {
            continue;
        }
        let even = word[0] == 1;
        let path = normal_path(word).expect("binary word");
        if even {
            out.even.push(path);
        } else {
            out.odd.push(path);
        }
    }
    out
}

fn run_lengths(word: &[u8]) -> Vec<usize> {
    let mut runs: Vec<usize> = Vec::new();
    for (v, &l) in word.iter().enumerate() {
        if v > 0 && word[v - 1] == l {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
        }
    }
    runs
}

/// Normal lattice paths with exactly `n` corners on the `(p+1) x (q+1)` grid.
pub fn enumerate_normal(p: usize, q: usize, n: usize) -> Arc<ParitySplit> {
    cached((false, p, q, n), || split_binary(p, q, n, false))
}

/// Normal lattice paths of complexity `n` whose projection is a smooth path.
pub fn enumerate_smooth_lp(p: usize, q: usize, n: usize) -> Arc<ParitySplit> {
    cached((true, p, q, n), || split_binary(p, q, n, true))
}
