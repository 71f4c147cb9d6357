use opad::lattice::{
    all_liftings, enumerate_normal, enumerate_smooth_lp, interleavings, LatticePath,
};
use opad::paths::{
    classify, enumerate_delannoy, enumerate_shufflings, enumerate_smooth, linking_number,
    linking_number_path, mpath_from_maps, MPath,
};
use opad::simplicial::{compose, epi_mono_factor, joyal_dual, joyal_inverse, OrdinalMap};
use opad::sketch::{complexity_recipe, expansion, substitute, Sketch};
use proptest::prelude::*;

/// Delannoy numbers by the three-term recurrence.
fn delannoy_oracle(a: usize, b: usize) -> u64 {
    let mut t = vec![vec![1u64; b + 1]; a + 1];
    for i in 1..=a {
        for j in 1..=b {
            t[i][j] = t[i - 1][j] + t[i][j - 1] + t[i - 1][j - 1];
        }
    }
    t[a][b]
}

/// Fewest side changes over every order of the shared elements, by exhaustion.
fn lk_oracle(a: &[usize], b: &[usize], m: usize) -> usize {
    let shared: Vec<usize> = (0..=m).filter(|e| a.contains(e) && b.contains(e)).collect();
    let mut best = usize::MAX;
    for mask in 0..1u32 << shared.len() {
        let mut sides = Vec::new();
        for e in 0..=m {
            match (a.contains(&e), b.contains(&e)) {
                (true, false) => sides.push(0),
                (false, true) => sides.push(1),
                (true, true) => {
                    let k = shared.iter().position(|&s| s == e).unwrap();
                    if mask >> k & 1 == 1 {
                        sides.extend([1, 0]);
                    } else {
                        sides.extend([0, 1]);
                    }
                }
                (false, false) => {}
            }
        }
        best = best.min(sides.windows(2).filter(|w| w[0] != w[1]).count());
    }
    best
}

fn inversions(word: &[u8]) -> usize {
    let mut n = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                n += 1;
            }
        }
    }
    n
}

fn monotone_map(dom: usize, cod: usize) -> impl Strategy<Value = OrdinalMap> {
    prop::collection::vec(0..=cod, dom + 1).prop_map(move |mut v| {
        v.sort_unstable();
        OrdinalMap::new(cod, v).unwrap()
    })
}

fn map_pair() -> impl Strategy<Value = (OrdinalMap, OrdinalMap)> {
    (0usize..=5, 0usize..=5, 0usize..=5)
        .prop_flat_map(|(p, q, m)| (monotone_map(p, m), monotone_map(q, m)))
}

fn binary_word() -> impl Strategy<Value = Vec<u8>> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(a, b)| Just([vec![1u8; a], vec![2u8; b]].concat()).prop_shuffle())
}

/// A word over `1..=k` using every letter.
fn full_word(k: u8, extra: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1..=k, extra).prop_flat_map(move |tail| {
        let mut w: Vec<u8> = (1..=k).collect();
        w.extend(tail);
        Just(w).prop_shuffle()
    })
}

#[test]
fn delannoy_counts_follow_the_recurrence() {
    for p in 0..=6 {
        for q in 0..=6 {
            let paths = enumerate_delannoy(p, q);
            assert_eq!(
                paths.len() as u64,
                delannoy_oracle(p + 1, q + 1),
                "p={p} q={q}"
            );
            assert!(paths.iter().all(|phi| classify(phi).delannoy));
        }
    }
}

#[test]
fn linking_number_matches_exhaustive_shufflings() {
    for m in 0..=4 {
        for p in 0..=4 {
            for q in 0..=4 {
                for tau in OrdinalMap::all(p, m) {
                    for pi in OrdinalMap::all(q, m) {
                        let lk = linking_number(&tau, &pi).unwrap();
                        assert_eq!(lk, lk_oracle(&tau.image(), &pi.image(), m), "{tau} {pi}");
                        let min = enumerate_shufflings(&tau, &pi)
                            .unwrap()
                            .iter()
                            .map(|s| s.length())
                            .min()
                            .unwrap();
                        assert_eq!(lk, min);
                    }
                }
            }
        }
    }
}

#[test]
fn smooth_paths_of_linking_number_one_come_in_pairs() {
    for p in 1..=5 {
        for q in 1..=5 {
            let eta = enumerate_smooth(p, q, 1);
            assert_eq!(eta.len(), 2, "p={p} q={q}");
            assert_eq!(eta[0].transpose().p(), q);
        }
    }
}

#[test]
fn normal_paths_have_forced_source() {
    for p in 0..=4 {
        for q in 0..=4 {
            for n in 0..=p + q + 1 {
                for psi in enumerate_normal(p, q, n).iter() {
                    assert_eq!(psi.m() + n, p + q + 1, "{psi}");
                    assert_eq!(psi.corners().len(), n);
                }
            }
        }
    }
}

fn is_normal(psi: &LatticePath) -> bool {
    let corners = psi.corners();
    psi.labels()
        .iter()
        .enumerate()
        .all(|(v, &l)| l == usize::from(!corners.contains(&v)))
}

#[test]
fn smooth_lattice_paths_are_the_normal_liftings_of_smooth_paths() {
    for p in 0..=4 {
        for q in 0..=4 {
            for n in 1..=p + q + 1 {
                let mut lifted: Vec<LatticePath> = enumerate_smooth(p, q, n)
                    .iter()
                    .flat_map(|phi| all_liftings(phi).into_iter().filter(is_normal))
                    .collect();
                lifted.sort();
                let mut slp: Vec<LatticePath> =
                    enumerate_smooth_lp(p, q, n).iter().cloned().collect();
                slp.sort();
                assert_eq!(slp, lifted, "p={p} q={q} n={n}");
            }
        }
    }
}

proptest! {
    #[test]
    fn joyal_duality_is_invertible(f in (0usize..=6, 0usize..=6).prop_flat_map(|(m, l)| monotone_map(m, l))) {
        let g = joyal_dual(&f);
        prop_assert_eq!(joyal_inverse(&g).unwrap(), f);
    }

    #[test]
    fn joyal_duality_reverses_composition(
        (f, g) in (0usize..=4, 0usize..=4, 0usize..=4).prop_flat_map(|(a, b, c)| (monotone_map(a, b), monotone_map(b, c)))
    ) {
        let gf = compose(&g, &f).unwrap();
        prop_assert_eq!(joyal_dual(&gf), joyal_dual(&f).after(&joyal_dual(&g)).unwrap());
    }

    #[test]
    fn epi_mono_factorisation_recomposes(f in (0usize..=6, 0usize..=6).prop_flat_map(|(m, l)| monotone_map(m, l))) {
        let (e, m) = epi_mono_factor(&f);
        prop_assert!(e.is_surjective() && m.is_injective());
        prop_assert_eq!(compose(&m, &e).unwrap(), f);
    }

    #[test]
    fn linking_number_is_the_least_lifting_complexity((tau, pi) in map_pair()) {
        let phi = mpath_from_maps(&tau, &pi).unwrap();
        let least = all_liftings(&phi).iter().map(LatticePath::complexity).min().unwrap();
        prop_assert_eq!(linking_number(&tau, &pi).unwrap(), least);
        prop_assert_eq!(linking_number_path(&phi), least);
    }

    #[test]
    fn linking_number_is_symmetric((tau, pi) in map_pair()) {
        prop_assert_eq!(linking_number(&tau, &pi).unwrap(), linking_number(&pi, &tau).unwrap());
    }

    #[test]
    fn dual_maps_round_trip((tau, pi) in map_pair()) {
        let phi = mpath_from_maps(&tau, &pi).unwrap();
        prop_assert_eq!(phi.dual_maps(), (tau, pi));
    }

    #[test]
    fn shuffle_sign_counts_inversions(word in binary_word()) {
        let psi = LatticePath::shuffle(word.clone()).unwrap();
        let expected = if inversions(&word).is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(psi.sign(), expected);
    }

    #[test]
    fn transposing_a_shuffle_path_changes_sign_by_extents(word in binary_word()) {
        let psi = LatticePath::shuffle(word).unwrap();
        let (p, q) = (psi.extents()[0], psi.extents()[1]);
        let expected = if (p + 1) * (q + 1) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(psi.sign() * psi.transpose().unwrap().sign(), expected);
    }

    #[test]
    fn lattice_text_form_round_trips(word in binary_word()) {
        let psi = LatticePath::shuffle(word).unwrap();
        let back: LatticePath = psi.to_string().parse().unwrap();
        prop_assert_eq!(back, psi);
    }

    #[test]
    fn delannoy_paths_are_built_from_their_steps(p in 0usize..=4, q in 0usize..=4, k in 0usize..1000) {
        let paths = enumerate_delannoy(p, q);
        let phi = &paths[k % paths.len()];
        prop_assert_eq!(&MPath::from_steps(&phi.steps().unwrap()).unwrap(), phi);
    }

    #[test]
    fn complexity_recipe_matches_the_composite(
        (outer, i, t) in (2u8..=4, 1usize..=4).prop_flat_map(|(k, extra)| (full_word(k, extra), 1..=k)).prop_flat_map(|(w, i)| {
            let occ = expansion(&w, i).iter().filter(|&&l| l == i).count();
            (Just(w), Just(i), (1u8..=3).prop_flat_map(move |d| {
                if occ < d as usize { full_word(1, occ - 1).boxed() } else { full_word(d, occ - d as usize).boxed() }
            }))
        })
    ) {
        let ex = expansion(&outer, i);
        let composite = substitute(&ex, i, &t).unwrap();
        let k = composite.arity() as u8;
        for a in 1..=k {
            for b in a + 1..=k {
                prop_assert_eq!(complexity_recipe(&ex, &t, i, a, b).unwrap(), composite.complexity_ij(a, b), "a={} b={}", a, b);
            }
        }
    }
}

#[test]
fn shuffle_interleavings_are_complete() {
    for a in 0..=5 {
        for b in 0..=5 {
            let n = interleavings(a, b).len() as u64;
            assert_eq!(n, binomial(a + b, a));
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

#[test]
fn sketch_projection_reduces() {
    let s = Sketch::from_word(&[1, 3, 1, 3, 4, 1, 2, 3, 1, 2]).unwrap();
    assert_eq!(s.project(2, 3).word(), &[2, 1, 2, 1]);
}
