//! Binary operations of the paths operad: grid paths with stops, shufflings,
//! linking numbers, and the Delannoy/sharp/smooth classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{epi_mono_factor, joyal_dual, joyal_inverse, IntervalMap, OrdinalMap};

/// A functor `<m+1> -> <p+1> x <q+1>`, stored by the images of the objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MPath {
    m: usize,
    p: usize,
    q: usize,
    points: Vec<(usize, usize)>,
}

/// Unit step kinds of a Delannoy path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Diagonal,
    East,
    North,
}

impl MPath {
    pub fn new(p: usize, q: usize, points: Vec<(usize, usize)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPath(
                "a path needs at least two points".into(),
            ));
        }
        if points[0] != (0, 0) || *points.last().unwrap() != (p + 1, q + 1) {
            return Err(Error::InvalidPath(format!(
                "path must run from (0,0) to ({},{}), got {:?}",
                p + 1,
                q + 1,
                points
            )));
        }
        if points
            .windows(2)
            .any(|w| w[1].0 < w[0].0 || w[1].1 < w[0].1)
        {
            return Err(Error::InvalidPath(format!(
                "coordinates of {points:?} are not nondecreasing"
            )));
        }
        Ok(Self {
            m: points.len() - 2,
            p,
            q,
            points,
        })
    }

    /// Builds a path from a list of unit steps.
    pub fn from_steps(steps: &[Step]) -> Result<Self> {
        let mut pts = vec![(0usize, 0usize)];
        for s in steps {
            let (x, y) = *pts.last().unwrap();
            pts.push(match s {
                Step::East => (x + 1, y),
                Step::North => (x, y + 1),
                Step::Diagonal => (x + 1, y + 1),
            });
        }
        let (px, py) = *pts.last().unwrap();
        if px == 0 || py == 0 {
            return Err(Error::InvalidPath(
                "steps do not reach a positive corner".into(),
            ));
        }
        MPath::new(px - 1, py - 1, pts)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    /// Coordinate increments of each generator `0..=m`.
    pub fn increments(&self) -> Vec<(usize, usize)> {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1))
            .collect()
    }

    /// Unit step kinds; `None` unless the path is Delannoy.
    pub fn steps(&self) -> Option<Vec<Step>> {
        self.increments()
            .into_iter()
            .map(|d| match d {
                (1, 0) => Some(Step::East),
                (0, 1) => Some(Step::North),
                (1, 1) => Some(Step::Diagonal),
                _ => None,
            })
            .collect()
    }

    pub fn projections(&self) -> (IntervalMap, IntervalMap) {
        let xs = self.points.iter().map(|p| p.0).collect();
        let ys = self.points.iter().map(|p| p.1).collect();
        (
            IntervalMap::new(self.p + 1, xs).expect("validated path"),
            IntervalMap::new(self.q + 1, ys).expect("validated path"),
        )
    }

    /// The pair of ordinal maps `[p] -> [m]`, `[q] -> [m]` dual to the projections.
    pub fn dual_maps(&self) -> (OrdinalMap, OrdinalMap) {
        let (a, b) = self.projections();
        (
            joyal_inverse(&a).expect("nonzero extents"),
            joyal_inverse(&b).expect("nonzero extents"),
        )
    }

    /// Generators moving the first (resp. second) coordinate.
    pub fn supports(&self) -> (Vec<usize>, Vec<usize>) {
        let inc = self.increments();
        (
            (0..inc.len()).filter(|&j| inc[j].0 > 0).collect(),
            (0..inc.len()).filter(|&j| inc[j].1 > 0).collect(),
        )
    }

    pub fn transpose(&self) -> MPath {
        MPath {
            m: self.m,
            p: self.q,
            q: self.p,
            points: self.points.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }
}

impl fmt::Display for MPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(steps) = self.steps() {
            let w: String = steps
                .iter()
                .map(|s| match s {
                    Step::East => 'E',
                    Step::North => 'N',
                    Step::Diagonal => 'D',
                })
                .collect();
            return write!(f, "{w}");
        }
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|(x, y)| format!("({x},{y})"))
            .collect();
        write!(f, "{}", pts.join(""))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// An alternating block decomposition of two subsets of `[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shuffling {
    pub a_blocks: Vec<Vec<usize>>,
    pub b_blocks: Vec<Vec<usize>>,
    pub first_side: Side,
}

impl Shuffling {
    pub fn length(&self) -> usize {
        self.a_blocks.len() + self.b_blocks.len() - 1
    }

    /// The blocks in interleaved order, tagged by side.
    pub fn blocks(&self) -> Vec<(Side, &[usize])> {
        let mut out = Vec::new();
        let (first, second, fs, ss) = match self.first_side {
            Side::A => (&self.a_blocks, &self.b_blocks, Side::A, Side::B),
            Side::B => (&self.b_blocks, &self.a_blocks, Side::B, Side::A),
        };
        for k in 0..first.len().max(second.len()) {
            if let Some(b) = first.get(k) {
                out.push((fs, b.as_slice()));
            }
            if let Some(b) = second.get(k) {
                out.push((ss, b.as_slice()));
            }
        }
        out
    }

    /// Checks the defining conditions against the sets `a` and `b`.
    pub fn validate(&self, a: &[usize], b: &[usize]) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidShuffling(msg.into()));
        if self
            .a_blocks
            .iter()
            .chain(&self.b_blocks)
            .any(|blk| blk.is_empty())
        {
            return bad("empty block");
        }
        if self.a_blocks.len().abs_diff(self.b_blocks.len()) > 1 {
            return bad("block counts differ by more than one");
        }
        let flat = |bs: &Vec<Vec<usize>>| {
            let mut v: Vec<usize> = bs.iter().flatten().copied().collect();
            v.sort_unstable();
            v
        };
        let (fa, fb) = (flat(&self.a_blocks), flat(&self.b_blocks));
        if fa != a || fb != b {
            return bad("blocks do not partition the images");
        }
        let blocks = self.blocks();
        if blocks.len() != self.a_blocks.len() + self.b_blocks.len() {
            return bad("sides do not alternate");
        }
        for w in blocks.windows(2) {
            if w[0].0 == w[1].0 {
                return bad("sides do not alternate");
            }
            if w[0].1.iter().max() > w[1].1.iter().min() {
                return bad("interleaving inequality fails");
            }
        }
        for blk in blocks.iter().map(|b| b.1) {
            if blk.windows(2).any(|w| w[0] >= w[1]) {
                return bad("block is not strictly increasing");
            }
        }
        Ok(())
    }
}

/// Letters of the interleaving word for each element of `[m]`.
fn membership(a: &[usize], b: &[usize], m: usize) -> Vec<(bool, bool)> {
    let mut out = vec![(false, false); m + 1];
    for &x in a {
        out[x].0 = true;
    }
    for &y in b {
        out[y].1 = true;
    }
    out
}

/// All shufflings of the images of `tau` and `pi`. Shared elements are visited in increasing
/// order and the A-then-B choice is enumerated first.
pub fn enumerate_shufflings(tau: &OrdinalMap, pi: &OrdinalMap) -> Result<Vec<Shuffling>> {
    if tau.cod() != pi.cod() {
        return Err(Error::DomainMismatch {
            expected: tau.cod(),
            found: pi.cod(),
        });
    }
    Ok(shufflings_of_sets(&tau.image(), &pi.image(), tau.cod()))
}

pub fn shufflings_of_sets(a: &[usize], b: &[usize], m: usize) -> Vec<Shuffling> {
    let mem = membership(a, b, m);
    let shared: Vec<usize> = (0..=m).filter(|&e| mem[e].0 && mem[e].1).collect();
    let mut out = Vec::with_capacity(1 << shared.len());
    for mask in 0..(1u64 << shared.len()) {
        let mut word: Vec<(Side, usize)> = Vec::new();
        let mut k = 0;
        for (e, &(ina, inb)) in mem.iter().enumerate() {
            match (ina, inb) {
                (true, false) => word.push((Side::A, e)),
                (false, true) => word.push((Side::B, e)),
                (true, true) => {
                    let b_first = mask >> (shared.len() - 1 - k) & 1 == 1;
                    k += 1;
                    if b_first {
                        word.push((Side::B, e));
                        word.push((Side::A, e));
                    } else {
                        word.push((Side::A, e));
                        word.push((Side::B, e));
                    }
                }
                (false, false) => {}
            }
        }
        out.push(word_to_shuffling(&word));
    }
    out
}

fn word_to_shuffling(word: &[(Side, usize)]) -> Shuffling {
    let mut a_blocks: Vec<Vec<usize>> = Vec::new();
    let mut b_blocks: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for &(side, e) in word {
        let target = match side {
            Side::A => &mut a_blocks,
            Side::B => &mut b_blocks,
        };
        if last == Some(side) {
            target.last_mut().unwrap().push(e);
        } else {
            target.push(vec![e]);
        }
        last = Some(side);
    }
    let first_side = word.first().map(|w| w.0).unwrap_or(Side::A);
    Shuffling {
        a_blocks,
        b_blocks,
        first_side,
    }
}

/// Minimal shuffling length of two subsets of `[m]` (0 when one of them is empty).
pub fn linking_number_of_sets(a: &[usize], b: &[usize], m: usize) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    const INF: usize = usize::MAX / 2;
    // best[s]: fewest side changes so far for a word ending on side s (0 = A, 1 = B)
    let mut best: Option<[usize; 2]> = None;
    for (ina, inb) in membership(a, b, m) {
        let enter = |to: usize| match best {
            None => 0,
            Some(c) => c[to].min(c[1 - to] + 1),
        };
        best = match (ina, inb) {
            (false, false) => continue,
            (true, false) => Some([enter(0), INF]),
            (false, true) => Some([INF, enter(1)]),
            (true, true) => Some([enter(1) + 1, enter(0) + 1]),
        };
    }
    let c = best.expect("nonempty sets");
    c[0].min(c[1])
}

pub fn linking_number(tau: &OrdinalMap, pi: &OrdinalMap) -> Result<usize> {
    if tau.cod() != pi.cod() {
        return Err(Error::DomainMismatch {
            expected: tau.cod(),
            found: pi.cod(),
        });
    }
    Ok(linking_number_of_sets(&tau.image(), &pi.image(), tau.cod()))
}

pub fn linking_number_path(phi: &MPath) -> usize {
    let (a, b) = phi.supports();
    linking_number_of_sets(&a, &b, phi.m)
}

/// The path whose projections are the duals of `tau` and `pi`.
pub fn mpath_from_maps(tau: &OrdinalMap, pi: &OrdinalMap) -> Result<MPath> {
    if tau.cod() != pi.cod() {
        return Err(Error::DomainMismatch {
            expected: tau.cod(),
            found: pi.cod(),
        });
    }
    let dx = joyal_dual(tau);
    let dy = joyal_dual(pi);
    let points = dx
        .obj()
        .iter()
        .zip(dy.obj())
        .map(|(&x, &y)| (x, y))
        .collect();
    MPath::new(tau.dom(), pi.dom(), points)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    /// Index of the first of the two steps forming the corner.
    pub step: usize,
    pub point: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub surjective: bool,
    pub injective: bool,
    pub delannoy: bool,
    pub sharp: bool,
    pub smooth: bool,
    pub low_corners: Vec<Corner>,
    pub upper_corners: Vec<Corner>,
}

pub fn classify(phi: &MPath) -> Classification {
    let inc = phi.increments();
    let surjective = inc.iter().all(|&(a, b)| a <= 1 && b <= 1);
    let injective = inc.iter().all(|&d| d != (0, 0));
    let delannoy = surjective && injective;
    let mut low_corners = Vec::new();
    let mut upper_corners = Vec::new();
    for i in 0..inc.len().saturating_sub(1) {
        let c = Corner {
            step: i,
            point: phi.points[i + 1],
        };
        match (inc[i], inc[i + 1]) {
            ((1, 0), (0, 1)) => low_corners.push(c),
            ((0, 1), (1, 0)) => upper_corners.push(c),
            _ => {}
        }
    }
    let sharp = delannoy && inc.iter().all(|&d| d != (1, 1));
    let smooth = delannoy && low_corners.is_empty() && upper_corners.is_empty();
    Classification {
        surjective,
        injective,
        delannoy,
        sharp,
        smooth,
        low_corners,
        upper_corners,
    }
}

/// `phi = (post.0 x post.1) ∘ phi'` with `phi'` surjective.
pub fn factor_surjective(phi: &MPath) -> (MPath, (IntervalMap, IntervalMap)) {
    let (tau, pi) = phi.dual_maps();
    let (te, tm) = epi_mono_factor(&tau);
    let (pe, pm) = epi_mono_factor(&pi);
    let inner = mpath_from_maps(&tm, &pm).expect("common codomain");
    (inner, (joyal_dual(&te), joyal_dual(&pe)))
}

/// `phi = phi' ∘ pre` with `phi'` free of constant generators.
pub fn factor_injective(phi: &MPath) -> (IntervalMap, MPath) {
    let mut pts: Vec<(usize, usize)> = Vec::new();
    let mut obj = Vec::with_capacity(phi.points.len());
    for &pt in &phi.points {
        if pts.last() != Some(&pt) {
            pts.push(pt);
        }
        obj.push(pts.len() - 1);
    }
    let inner = MPath::new(phi.p, phi.q, pts).expect("same endpoints");
    let cod = inner.m + 1;
    (IntervalMap::new(cod, obj).expect("monotone"), inner)
}

/// Order of unit moves inside each diagonal step of a Delannoy path, chosen to minimise
/// the number of direction changes (`true` means east first).
fn minimal_diagonal_orders(steps: &[Step]) -> Vec<bool> {
    const INF: usize = usize::MAX / 2;
    // cost[s] = fewest changes with the word ending on side s (0 east, 1 north)
    let n = steps.len();
    let mut cost = vec![[INF, INF]; n + 1];
    let mut choice = vec![[false, false]; n + 1];
    let mut from = vec![[0usize, 0usize]; n + 1];
    for (j, &s) in steps.iter().enumerate() {
        let prev = cost[j];
        let enter = |side: usize| -> (usize, usize) {
            if j == 0 {
                (0, side)
            } else if prev[side] <= prev[1 - side] + 1 {
                (prev[side], side)
            } else {
                (prev[1 - side] + 1, 1 - side)
            }
        };
        match s {
            Step::East => {
                let (c, f) = enter(0);
                cost[j + 1] = [c, INF];
                from[j + 1] = [f, 0];
            }
            Step::North => {
                let (c, f) = enter(1);
                cost[j + 1] = [INF, c];
                from[j + 1] = [0, f];
            }
            Step::Diagonal => {
                let (c_en, f_en) = enter(0);
                let (c_ne, f_ne) = enter(1);
                cost[j + 1] = [c_ne + 1, c_en + 1];
                from[j + 1] = [f_ne, f_en];
                choice[j + 1] = [false, true];
            }
        }
    }
    let mut side = if cost[n][0] <= cost[n][1] { 0 } else { 1 };
    let mut orders = vec![true; n];
    for j in (0..n).rev() {
        if steps[j] == Step::Diagonal {
            orders[j] = choice[j + 1][side];
        }
        side = from[j + 1][side];
    }
    orders
}

/// Splits every diagonal step into two unit steps along a minimal lifting.
pub fn sharpen(phi: &MPath) -> Result<(IntervalMap, MPath)> {
    let steps = phi
        .steps()
        .filter(|_| classify(phi).delannoy)
        .ok_or(Error::NotDelannoy)?;
    let orders = minimal_diagonal_orders(&steps);
    let mut pts = vec![(0usize, 0usize)];
    let mut obj = vec![0usize];
    for (j, s) in steps.iter().enumerate() {
        let (x, y) = *pts.last().unwrap();
        match s {
            Step::East => pts.push((x + 1, y)),
            Step::North => pts.push((x, y + 1)),
            Step::Diagonal => {
                pts.push(if orders[j] { (x + 1, y) } else { (x, y + 1) });
                pts.push((x + 1, y + 1));
            }
        }
        obj.push(pts.len() - 1);
    }
    let sharp = MPath::new(phi.p, phi.q, pts)?;
    let cod = sharp.m + 1;
    Ok((IntervalMap::new(cod, obj)?, sharp))
}

/// Interval map `<n+1> -> <n>` sending generator `k` to an identity.
fn collapse_generator(k: usize, n: usize) -> IntervalMap {
    IntervalMap::new(
        n,
        (0..=n + 1)
            .map(|o| if o <= k { o } else { o - 1 })
            .collect(),
    )
    .expect("collapse")
}

/// Removes corners one at a time, leftmost first, by widening the grid so that the
/// second step of the corner becomes diagonal. Returns the smooth path and the pair of
/// interval maps whose product recovers `phi` after post-composition.
pub fn smooth_factor(phi: &MPath) -> Result<(MPath, (IntervalMap, IntervalMap))> {
    if !classify(phi).delannoy {
        return Err(Error::NotDelannoy);
    }
    let mut cur = phi.clone();
    let mut post_x = IntervalMap::identity(phi.p + 1);
    let mut post_y = IntervalMap::identity(phi.q + 1);
    while let Some((next, px, py)) = remove_first_corner(&cur) {
        post_x = post_x.after(&px).expect("chained collapses");
        post_y = post_y.after(&py).expect("chained collapses");
        cur = next;
    }
    Ok((cur, (post_x, post_y)))
}

/// One iteration of [`smooth_factor`]. `None` when the path has no corner.
pub fn remove_first_corner(phi: &MPath) -> Option<(MPath, IntervalMap, IntervalMap)> {
    let c = classify(phi);
    let first = c
        .low_corners
        .iter()
        .map(|k| (k.step, true))
        .chain(c.upper_corners.iter().map(|k| (k.step, false)))
        .min()?;
    let (i, low) = first;
    let (s, t) = phi.points[i + 1];
    let pts: Vec<(usize, usize)> = phi
        .points
        .iter()
        .enumerate()
        .map(|(j, &(x, y))| {
            if j <= i + 1 {
                (x, y)
            } else if low {
                (x + 1, y)
            } else {
                (x, y + 1)
            }
        })
        .collect();
    let (np, nq) = if low {
        (phi.p + 1, phi.q)
    } else {
        (phi.p, phi.q + 1)
    };
    let next = MPath::new(np, nq, pts).expect("widened path");
    let (px, py) = if low {
        (
            collapse_generator(s, phi.p + 1),
            IntervalMap::identity(phi.q + 1),
        )
    } else {
        (
            IntervalMap::identity(phi.p + 1),
            collapse_generator(t, phi.q + 1),
        )
    };
    Some((next, px, py))
}

/// Replaces the leftmost corner by a single diagonal step on the same grid, repeatedly.
/// This shortens the path instead of widening the grid.
pub fn flatten_corners(phi: &MPath) -> Result<MPath> {
    let c = classify(phi);
    if !c.delannoy {
        return Err(Error::NotDelannoy);
    }
    let mut steps = phi.steps().expect("delannoy");
    loop {
        let pos = steps.windows(2).position(|w| {
            matches!(
                (w[0], w[1]),
                (Step::East, Step::North) | (Step::North, Step::East)
            )
        });
        match pos {
            Some(i) => {
                steps.splice(i..i + 2, [Step::Diagonal]);
            }
            None => return MPath::from_steps(&steps),
        }
    }
}

/// All Delannoy paths `(0,0) -> (p+1,q+1)`, lexicographic on step words with D < E < N.
pub fn enumerate_delannoy(p: usize, q: usize) -> Vec<MPath> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(x: usize, y: usize, tx: usize, ty: usize, cur: &mut Vec<Step>, out: &mut Vec<MPath>) {
        if x == tx && y == ty {
            out.push(MPath::from_steps(cur).expect("valid steps"));
            return;
        }
        for s in [Step::Diagonal, Step::East, Step::North] {
            let (nx, ny) = match s {
                Step::Diagonal => (x + 1, y + 1),
                Step::East => (x + 1, y),
                Step::North => (x, y + 1),
            };
            if nx <= tx && ny <= ty {
                cur.push(s);
                rec(nx, ny, tx, ty, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, 0, p + 1, q + 1, &mut cur, &mut out);
    out
}

/// Smooth paths on the `(p+1) x (q+1)` grid with linking number exactly `n`.
pub fn enumerate_smooth(p: usize, q: usize, n: usize) -> Vec<MPath> {
    enumerate_delannoy(p, q)
        .into_iter()
        .filter(|phi| classify(phi).smooth && linking_number_path(phi) == n)
        .collect()
}

pub fn n_equivalent(phi: &MPath, n: usize) -> bool {
    linking_number_path(phi) <= n
}

/// `[n] -> [n+m]`, `k -> k`.
pub fn front_inclusion(n: usize, m: usize) -> OrdinalMap {
    OrdinalMap::new(n + m, (0..=n).collect()).expect("monotone")
}

/// `[m] -> [n+m]`, `k -> n+k`.
pub fn back_inclusion(m: usize, n: usize) -> OrdinalMap {
    OrdinalMap::new(n + m, (0..=m).map(|k| n + k).collect()).expect("monotone")
}

/// `[n] -> [m+n-1]` missing the values `i+1..=i+m-1`.
pub fn gap_inclusion(m: usize, n: usize, i: usize) -> Result<OrdinalMap> {
    if m == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: n.saturating_sub(1),
        });
    }
    OrdinalMap::new(
        m + n - 1,
        (0..=n)
            .map(|k| if k <= i { k } else { k + m - 1 })
            .collect(),
    )
}

/// `[m] -> [m+n-1]`, `k -> i+k`.
pub fn window_inclusion(m: usize, n: usize, i: usize) -> Result<OrdinalMap> {
    if m == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: n.saturating_sub(1),
        });
    }
    OrdinalMap::new(m + n - 1, (0..=m).map(|k| i + k).collect())
}

/// The smooth path `E^p D N^q`.
pub fn east_first_hook(p: usize, q: usize) -> MPath {
    mpath_from_maps(&front_inclusion(p, q), &back_inclusion(q, p)).expect("common codomain")
}

/// The smooth path `N^q D E^p`.
pub fn north_first_hook(p: usize, q: usize) -> MPath {
    east_first_hook(q, p).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hook_has_expected_steps() {
        let h = east_first_hook(2, 1);
        assert_eq!(h.to_string(), "EEDN");
        assert_eq!(north_first_hook(2, 1).to_string(), "NDEE");
        assert_eq!(linking_number_path(&h), 1);
    }

    #[test]
    fn diagonal_orders_are_minimal() {
        let phi = MPath::from_steps(&[Step::Diagonal, Step::Diagonal]).unwrap();
        let (_, s) = sharpen(&phi).unwrap();
        assert_eq!(linking_number_path(&s), 2);
    }

    #[test]
    fn dp_matches_shuffling_enumeration() {
        for m in 0..4 {
            for tau in OrdinalMap::all(1, m) {
                for pi in OrdinalMap::all(2, m) {
                    let best = enumerate_shufflings(&tau, &pi)
                        .unwrap()
                        .iter()
                        .map(|s| s.length())
                        .min()
                        .unwrap();
                    assert_eq!(best, linking_number(&tau, &pi).unwrap());
                }
            }
        }
    }
}
