//! Acceptance criteria 1-14. Each criterion prints one line `criterion N: PASS|FAIL ...`.
//! Every check is an exact identity; the only tolerances are the wall-clock limits below.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use opad::bicomplex::lambda_defect;
use opad::cosim::CosimplicialAlgebraInstance;
use opad::field::{Field, F3, Q};
use opad::formula::{bracket_formula, compile, Formula, Order, Term};
use opad::instances::{
    alt_project, forgetful_complex, invariant_complex, lambda_embed, schouten, tensor_bases,
    tensor_element, wedge_tensor, Multivector, TensorBases, TruncatedUea,
};
use opad::lattice::{
    all_liftings, enumerate_normal, enumerate_smooth_lp, interleavings, LatticePath,
};
use opad::lie::LieAlgebraSpec;
use opad::linalg::SparseMatrix;
use opad::paths::{
    enumerate_delannoy, enumerate_shufflings, enumerate_smooth, gap_inclusion, linking_number,
    mpath_from_maps, window_inclusion,
};
use opad::simplicial::{coface, OrdinalMap};
use opad::sketch::{complexity_recipe, expansion, substitute};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FORMULA_LIMIT: Duration = Duration::from_secs(10);
const LK_LIMIT: Duration = Duration::from_secs(60);
const LAMBDA_LIMIT: Duration = Duration::from_secs(60);
const NTE_LIMIT: Duration = Duration::from_secs(120);
const SKETCH_SAMPLES: usize = 1000;
const SKETCH_SEED: u64 = 0x5eed;

static FAILED: AtomicUsize = AtomicUsize::new(0);

struct Verdict {
    criterion: u8,
    lines: Vec<String>,
    passed: bool,
}

impl Verdict {
    fn new(criterion: u8) -> Self {
        Verdict {
            criterion,
            lines: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.lines.push(format!(
            "{} {}",
            if ok { "ok  " } else { "FAIL" },
            what.into()
        ));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("     {}", what.into()));
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.check(
            took <= limit,
            format!("time {:.2}s <= {}s", took.as_secs_f64(), limit.as_secs()),
        );
    }

    fn finish(self, title: &str) {
        for l in &self.lines {
            println!("  {l}");
        }
        println!(
            "criterion {}: {} {title}",
            self.criterion,
            if self.passed { "PASS" } else { "FAIL" }
        );
        if !self.passed {
            FAILED.fetch_add(1, Ordering::Relaxed);
        }
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `∂_i : [n-1] -> [n]`.
fn d(i: usize, n: usize) -> OrdinalMap {
    coface(i, n - 1).unwrap()
}

fn id(n: usize) -> OrdinalMap {
    OrdinalMap::identity(n)
}

fn term(coeff: i64, f1: OrdinalMap, f2: OrdinalMap, order: Order) -> Term {
    Term {
        coeff,
        f1,
        f2,
        order,
    }
}

fn formula(p: usize, q: usize, out: usize, terms: Vec<Term>) -> Formula {
    Formula {
        p,
        q,
        out_degree: out,
        terms,
    }
    .canonical()
}

/// The insertion bracket whose second sum carries `-(-1)^((p-1)(q-1))`.
fn insertion_bracket_as_printed(p: usize, q: usize) -> Formula {
    insertion_bracket(p, q, -sign(((p as i64) - 1) * ((q as i64) - 1)))
}

fn insertion_bracket(p: usize, q: usize, second: i64) -> Formula {
    let mut terms = Vec::new();
    for i in 1..=p {
        terms.push(term(
            sign((i * (q - 1)) as i64),
            gap_inclusion(q, p, i - 1).unwrap(),
            window_inclusion(q, p, i - 1).unwrap(),
            Order::FirstArgumentFirst,
        ));
    }
    for i in 1..=q {
        terms.push(term(
            second * sign((i * (p - 1)) as i64),
            window_inclusion(p, q, i - 1).unwrap(),
            gap_inclusion(p, q, i - 1).unwrap(),
            Order::SecondArgumentFirst,
        ));
    }
    formula(p, q, p + q - 1, terms)
}

fn reflect(f: &Formula) -> Formula {
    let flip = |m: &OrdinalMap| {
        let c = m.cod();
        let mut v: Vec<usize> = m.values().iter().map(|&x| c - x).collect();
        v.reverse();
        OrdinalMap::new(c, v).unwrap()
    };
    let terms = f
        .terms
        .iter()
        .map(|t| term(t.coeff, flip(&t.f1), flip(&t.f2), t.order))
        .collect();
    formula(f.p, f.q, f.out_degree, terms)
}

fn criterion_01_formula_fidelity() {
    use Order::{FirstArgumentFirst as AB, SecondArgumentFirst as BA};
    let start = Instant::now();
    let mut v = Verdict::new(1);

    let c111 = formula(
        1,
        1,
        1,
        vec![term(1, id(1), id(1), AB), term(-1, id(1), id(1), BA)],
    );
    v.check(bracket_formula(1, 1, 1) == c111, "(1,1) order 1: ab - ba");

    let c222 = formula(
        2,
        2,
        2,
        vec![term(1, id(2), id(2), BA), term(-1, id(2), id(2), AB)],
    );
    v.check(bracket_formula(2, 2, 2) == c222, "(2,2) order 2: ba - ab");

    let c232 = formula(
        2,
        3,
        3,
        vec![
            term(1, d(0, 3), id(3), AB),
            term(1, d(2, 3), id(3), AB),
            term(-1, d(1, 3), id(3), BA),
            term(-1, d(3, 3), id(3), BA),
        ],
    );
    let generated = bracket_formula(2, 3, 2);
    v.check(
        generated == c232,
        "(2,3) order 2: (d0 a + d2 a) b - b (d1 a + d3 a)",
    );
    if generated != c232 {
        v.note(format!("generated: {generated}"));
        v.note(format!(
            "matches the printed form after reflecting face indices i -> 3 - i: {}",
            reflect(&generated) == c232
        ));
    }

    let c332 = formula(
        3,
        3,
        4,
        vec![
            term(1, d(2, 4), d(0, 4), AB),
            term(1, d(4, 4), d(0, 4), AB),
            term(1, d(4, 4), d(2, 4), AB),
            term(-1, d(1, 4), d(3, 4), AB),
            term(1, d(0, 4), d(2, 4), BA),
            term(1, d(0, 4), d(4, 4), BA),
            term(1, d(2, 4), d(4, 4), BA),
            term(-1, d(3, 4), d(1, 4), BA),
        ],
    );
    let g332 = bracket_formula(3, 3, 2);
    v.check(
        g332 == c332 && g332.len() == 8,
        format!("(3,3) order 2: eight terms ({} generated)", g332.len()),
    );

    let mut literal = Vec::new();
    let mut corrected = true;
    for p in 1..=4 {
        for q in 1..=4 {
            let path = bracket_formula(p, q, 1);
            if path != insertion_bracket_as_printed(p, q) {
                literal.push(format!("({p},{q})"));
            }
            corrected &= path == insertion_bracket(p, q, sign((p * q) as i64));
        }
    }
    v.check(
        literal.is_empty(),
        "order 1 equals the insertion bracket with second-sum sign -(-1)^((p-1)(q-1)) for p,q <= 4",
    );
    if !literal.is_empty() {
        v.note(format!("differs at {}", literal.join(" ")));
        v.note(format!(
            "with (-1)^(pq) on the second sum all 16 cases agree: {corrected}"
        ));
    }
    v.within(start, FORMULA_LIMIT);
    v.finish("formula fidelity");
}

fn criterion_02_linking_number_oracle() {
    let start = Instant::now();
    let mut v = Verdict::new(2);
    let mut pairs = 0;
    let mut bad = Vec::new();
    for m in 0..=4 {
        for p in 0..=4 {
            for q in 0..=4 {
                for tau in OrdinalMap::all(p, m) {
                    for pi in OrdinalMap::all(q, m) {
                        let lk = linking_number(&tau, &pi).unwrap();
                        let shuffle_min = enumerate_shufflings(&tau, &pi)
                            .unwrap()
                            .iter()
                            .map(|s| s.length())
                            .min()
                            .unwrap();
                        let phi = mpath_from_maps(&tau, &pi).unwrap();
                        let lift_min = all_liftings(&phi)
                            .iter()
                            .map(LatticePath::complexity)
                            .min()
                            .unwrap();
                        pairs += 1;
                        if lk != shuffle_min || lk != lift_min {
                            bad.push(format!("{tau} {pi}"));
                        }
                    }
                }
            }
        }
    }
    v.check(
        bad.is_empty(),
        format!("{pairs} pairs with p,q,m <= 4: shuffling minimum = lifting minimum"),
    );
    for b in bad.iter().take(5) {
        v.note(b.clone());
    }
    v.within(start, LK_LIMIT);
    v.finish("linking-number oracle equivalence");
}

fn criterion_03_shuffling_census() {
    let mut v = Verdict::new(3);
    let n = enumerate_shufflings(&id(2), &id(2)).unwrap().len();
    v.check(n == 8, format!("id_[2] pair has {n} shufflings (8)"));
    for k in 0..=4 {
        let lk = linking_number(&id(k), &id(k)).unwrap();
        v.check(
            lk == k + 1,
            format!("lk(id_[{k}], id_[{k}]) = {lk} ({})", k + 1),
        );
    }
    v.finish("shuffling census");
}

fn delannoy_recurrence(a: usize, b: usize) -> usize {
    let mut t = vec![vec![1usize; b + 1]; a + 1];
    for i in 1..=a {
        for j in 1..=b {
            t[i][j] = t[i - 1][j] + t[i][j - 1] + t[i - 1][j - 1];
        }
    }
    t[a][b]
}

fn criterion_04_delannoy_counts() {
    let mut v = Verdict::new(4);
    let mut bad = Vec::new();
    for p in 0..=6 {
        for q in 0..=6 {
            if enumerate_delannoy(p, q).len() != delannoy_recurrence(p + 1, q + 1) {
                bad.push(format!("({p},{q})"));
            }
        }
    }
    v.check(bad.is_empty(), "counts match the recurrence for p,q <= 6");
    v.check(enumerate_delannoy(0, 0).len() == 3, "3 paths at (0,0)");
    v.check(enumerate_delannoy(1, 1).len() == 13, "13 paths at (1,1)");
    v.finish("Delannoy counts");
}

fn criterion_05_smooth_path_census() {
    let mut v = Verdict::new(5);
    let mut bad = Vec::new();
    for p in 1..=5 {
        for q in 1..=5 {
            if enumerate_smooth(p, q, 1).len() != 2 {
                bad.push(format!("({p},{q})"));
            }
        }
    }
    v.check(
        bad.is_empty(),
        "two smooth paths of lk 1 on every rectangle with 1 <= p,q <= 5",
    );

    let s222 = enumerate_smooth_lp(2, 2, 2);
    v.check(
        s222.len() == 2,
        format!("slp(2,2,2) = {} (2), {} even", s222.len(), s222.even.len()),
    );
    if s222.len() != 2 {
        let s223 = enumerate_smooth_lp(2, 2, 3);
        let s112 = enumerate_smooth_lp(1, 1, 2);
        v.note(format!(
            "the two-path cells: slp(2,2,3) = {} behind ba - ab, slp(1,1,2) = {} behind ab - ba",
            s223.len(),
            s112.len()
        ));
    }

    let s333 = enumerate_smooth_lp(3, 3, 3);
    v.check(
        s333.len() == 8 && s333.even.len() == 4,
        format!(
            "slp(3,3,3) = {} with {} even (8 with 4)",
            s333.len(),
            s333.even.len()
        ),
    );

    let mut cells = 0;
    let mut ok = true;
    for p in 0..=5 {
        for q in 0..=5 {
            for n in 0..=p + q + 1 {
                let nlp = enumerate_normal(p, q, n);
                if !nlp.is_empty() {
                    cells += 1;
                    ok &= nlp.iter().all(|psi| psi.m() + n == p + q + 1);
                }
            }
        }
    }
    v.check(
        ok,
        format!("m = p + q - n + 1 on all {cells} nonempty normal cells with p,q <= 5"),
    );
    v.finish("smooth-path census");
}

fn criterion_06_transpose_sign_rule() {
    let mut v = Verdict::new(6);
    let mut count = 0;
    let mut bad = Vec::new();
    for p in 0..=5 {
        for q in 0..=5 {
            for word in interleavings(p + 1, q + 1) {
                let psi = LatticePath::shuffle(word).unwrap();
                let expected =
                    sign((p as i64 - 1) * (q as i64 - 1)) * psi.transpose().unwrap().sign();
                count += 1;
                if psi.sign() != expected {
                    bad.push(psi.to_string());
                }
            }
        }
    }
    v.check(
        bad.is_empty(),
        format!("sgn(psi) = (-1)^((p-1)(q-1)) sgn(psi^t) on {count} shuffle paths"),
    );
    v.finish("transpose sign rule");
}

/// A word over `1..=k` that uses every letter, with `extra` further random letters.
fn random_full_word(rng: &mut ChaCha8Rng, k: u8, extra: usize) -> Vec<u8> {
    let mut w: Vec<u8> = (1..=k).collect();
    w.extend((0..extra).map(|_| rng.gen_range(1..=k)));
    for i in (1..w.len()).rev() {
        let j = rng.gen_range(0..=i);
        w.swap(i, j);
    }
    w
}

fn criterion_07_sketch_recipe() {
    let mut v = Verdict::new(7);
    let outer = [1, 2, 3, 2, 1, 1, 1, 1];
    let inner = [1, 2, 3, 2, 1];
    let recipe = complexity_recipe(&outer, &inner, 1, 2, 4).unwrap();
    let direct = substitute(&outer, 1, &inner).unwrap().complexity_ij(2, 4);
    v.check(
        recipe == 1 && direct == 1,
        format!("worked example: c_24 = {recipe} by recipe, {direct} directly (1)"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SKETCH_SEED);
    let mut pairs = 0;
    let mut mismatches = 0;
    while pairs < SKETCH_SAMPLES {
        let k = rng.gen_range(1..=4u8);
        let extra = rng.gen_range(0..=5);
        let word = random_full_word(&mut rng, k, extra);
        let i = rng.gen_range(1..=k);
        let ex = expansion(&word, i);
        let occ = ex.iter().filter(|&&l| l == i).count();
        let dcount = rng.gen_range(1..=occ.min(4)) as u8;
        let t = random_full_word(&mut rng, dcount, occ - dcount as usize);
        let composite = substitute(&ex, i, &t).unwrap();
        let arity = composite.arity() as u8;
        for a in 1..=arity {
            for b in a + 1..=arity {
                if complexity_recipe(&ex, &t, i, a, b).unwrap() != composite.complexity_ij(a, b) {
                    mismatches += 1;
                }
            }
        }
        pairs += 1;
    }
    v.check(mismatches == 0, format!("{pairs} random pairs (seed {SKETCH_SEED:#x}): {mismatches} mismatching pair complexities"));
    v.finish("sketch complexity recipe");
}

fn criterion_08_lambda_cocycle() {
    let start = Instant::now();
    let mut v = Verdict::new(8);
    for n_minus_1 in [1, 2] {
        for m in 0..=4 {
            let defect = lambda_defect(n_minus_1, m).unwrap();
            v.check(
                defect.is_zero(),
                format!("(delta + d) lambda^({n_minus_1})_{m} = 0"),
            );
        }
    }
    v.within(start, LAMBDA_LIMIT);
    v.finish("lambda cocycle");
}

struct Model<F> {
    uea: TruncatedUea<F>,
    bases: TensorBases,
    forgetful: CosimplicialAlgebraInstance<F>,
    invariant: CosimplicialAlgebraInstance<F>,
}

fn build<F: Field>(spec: &LieAlgebraSpec, n: usize) -> Model<F> {
    let uea = TruncatedUea::<F>::new(spec, spec.truncation).unwrap();
    let bases = tensor_bases(&uea, n);
    let forgetful = forgetful_complex(&uea, n).unwrap();
    let invariant = invariant_complex(&uea, n).unwrap();
    Model {
        uea,
        bases,
        forgetful,
        invariant,
    }
}

macro_rules! model {
    ($name:ident, $field:ty, $spec:expr, $n:expr) => {
        fn $name() -> &'static Model<$field> {
            static M: OnceLock<Model<$field>> = OnceLock::new();
            M.get_or_init(|| build(&$spec, $n))
        }
    };
}

model!(heisenberg_q3, Q, LieAlgebraSpec::heisenberg(0, 3), 3);
model!(sl2_q3, Q, LieAlgebraSpec::sl2(0, 3), 3);
model!(heisenberg_q3_n4, Q, LieAlgebraSpec::heisenberg(0, 3), 4);
model!(sl2_q3_n4, Q, LieAlgebraSpec::sl2(0, 3), 4);

fn axioms<F: Field>(v: &mut Verdict, label: &str, m: &Model<F>) {
    for inst in [&m.forgetful, &m.invariant] {
        let n = inst.max_degree();
        let squares = (0..n - 1).all(|k| {
            inst.differential_matrix(k + 1)
                .unwrap()
                .compose(&inst.differential_matrix(k).unwrap())
                .is_zero()
        });
        v.check(squares, format!("{label} {}: d^2 = 0", inst.name()));
        let r = inst.check_axioms(n);
        v.check(
            r.passed(),
            format!(
                "{label} {}: {} identities ({} truncated products skipped)",
                inst.name(),
                r.checked,
                r.skipped
            ),
        );
        for f in r.failures.iter().take(3) {
            v.note(f.clone());
        }
    }
    let c1 = m.forgetful.verify_n_commutativity(1, 3);
    v.check(
        c1.passed,
        format!(
            "{label} forgetful: 1-commutative up to degree 3 ({} products)",
            c1.checked
        ),
    );
    let c2 = m.invariant.verify_n_commutativity(2, 3);
    v.check(
        c2.passed,
        format!(
            "{label} invariant: 2-commutative up to degree 3 ({} products)",
            c2.checked
        ),
    );
}

fn criterion_09_instance_axioms() {
    let mut v = Verdict::new(9);
    axioms(&mut v, "heisenberg/Q", heisenberg_q3());
    axioms(&mut v, "sl2/Q", sl2_q3());
    axioms(
        &mut v,
        "heisenberg/F3",
        &build::<F3>(&LieAlgebraSpec::heisenberg(3, 3), 3),
    );
    axioms(
        &mut v,
        "sl2/F3",
        &build::<F3>(&LieAlgebraSpec::sl2(3, 3), 3),
    );
    v.finish("instance axioms at D = 3");
}

fn criterion_10_nontrivial_order_two_bracket() {
    let start = Instant::now();
    let mut v = Verdict::new(10);
    let m = build::<F3>(&LieAlgebraSpec::heisenberg(3, 4), 3);
    let inst = &m.invariant;
    let xz = wedge_tensor(&[0, 2], &m.uea, &m.bases).unwrap();
    let yz = wedge_tensor(&[1, 2], &m.uea, &m.bases).unwrap();
    let (value, truncated) = compile(&bracket_formula(2, 2, 2), inst)
        .unwrap()
        .apply(&xz, &yz)
        .unwrap();
    let target = tensor_element(&m.uea, &m.bases, &[vec![0, 0, 1], vec![0, 0, 2]])
        .unwrap()
        .add(&tensor_element(&m.uea, &m.bases, &[vec![0, 0, 2], vec![0, 0, 1]]).unwrap());
    v.check(!truncated, "no product left the truncation");
    v.check(
        value == target,
        "bracket of x^z and y^z equals z (x) z^2 + z^2 (x) z",
    );
    if value != target {
        let minus = value == target.scale(&F3::from_i64(-1));
        v.note(format!(
            "computed value is {} times it",
            if minus { "-1 = 2" } else { "not a multiple of" }
        ));
    }
    v.check(
        inst.contains(2, &target),
        "z (x) z^2 + z^2 (x) z is an invariant 2-cochain",
    );
    v.check(
        inst.coboundary(2, &target).unwrap().is_zero(),
        "it is a cocycle",
    );
    v.check(
        inst.coboundary_preimage(2, &target).unwrap().is_none(),
        "it is not the coboundary of an invariant 1-cochain",
    );
    v.check(
        inst.coboundary_preimage(2, &value).unwrap().is_none(),
        "the computed value is not a coboundary either",
    );
    v.within(start, NTE_LIMIT);
    v.finish("nonzero order-2 bracket class over F3");
}

fn schouten_pairs(v: &mut Verdict, label: &str, spec: &LieAlgebraSpec, m: &Model<Q>) {
    let d = spec.dim();
    let mut basis: Vec<Multivector<Q>> = (0..d)
        .map(|i| Multivector::wedge_of(&[i], Q::from_i64(1)))
        .collect();
    for i in 0..d {
        for j in i + 1..d {
            basis.push(Multivector::wedge_of(&[i, j], Q::from_i64(1)));
        }
    }
    let mut mismatches = Vec::new();
    let mut total = 0;
    for u in &basis {
        for w in &basis {
            let (p, q) = (u.degree().unwrap(), w.degree().unwrap());
            let a = lambda_embed(u, &m.uea, &m.bases).unwrap();
            let b = lambda_embed(w, &m.uea, &m.bases).unwrap();
            let (x, _) = compile(&bracket_formula(p, q, 1), &m.forgetful)
                .unwrap()
                .apply(&a, &b)
                .unwrap();
            let got = alt_project(&x, p + q - 1, &m.uea, &m.bases).unwrap();
            let want = schouten(u, w, spec).unwrap();
            total += 1;
            if got != want {
                mismatches.push(format!(
                    "[{}, {}]: {} vs {}",
                    u.display(&spec.basis),
                    w.display(&spec.basis),
                    got.display(&spec.basis),
                    want.display(&spec.basis)
                ));
            }
        }
    }
    v.check(
        mismatches.is_empty(),
        format!(
            "{label}: {} of {total} basis pairs agree",
            total - mismatches.len()
        ),
    );
    for mm in mismatches.iter().take(4) {
        v.note(mm.clone());
    }
}

fn criterion_11_schouten_correspondence() {
    let mut v = Verdict::new(11);
    schouten_pairs(&mut v, "sl2", &LieAlgebraSpec::sl2(0, 3), sl2_q3());
    schouten_pairs(
        &mut v,
        "heisenberg",
        &LieAlgebraSpec::heisenberg(0, 3),
        heisenberg_q3(),
    );
    v.finish("Schouten correspondence");
}

fn criterion_12_first_cohomology() {
    let mut v = Verdict::new(12);
    for (label, m) in [("heisenberg", heisenberg_q3()), ("sl2", sl2_q3())] {
        let h = m.forgetful.cohomology(1).unwrap();
        v.check(
            h.dimension == 3,
            format!("{label}: dim H^1 = {} (3)", h.dimension),
        );
    }
    v.finish("first cohomology equals the Lie algebra");
}

fn alt_matrix<F: Field>(inst: &CosimplicialAlgebraInstance<F>, n: usize) -> SparseMatrix<F> {
    let cols = (0..inst.ambient_dim(n))
        .map(|j| inst.alt(n, &opad::linalg::SparseVec::unit(j)).unwrap())
        .collect();
    SparseMatrix::from_columns(inst.ambient_dim(n), cols)
}

fn criterion_13_alternation_kills_the_bracket() {
    let mut v = Verdict::new(13);
    let mut total = 0;
    for (label, m) in [("heisenberg", heisenberg_q3_n4()), ("sl2", sl2_q3_n4())] {
        let full = &m.forgetful;
        let top = full.max_degree();
        let zero = (0..top).all(|n| {
            alt_matrix(full, n + 1)
                .compose(&full.differential_matrix(n).unwrap())
                .is_zero()
        });
        v.check(
            zero,
            format!("{label}: alt o d = 0 as matrices up to E({top})"),
        );
        for n in [2, 3] {
            v.check(
                full.operator_identity_check(n).unwrap(),
                format!("{label}: operator identity for n = {n}"),
            );
        }
        let inv = &m.invariant;
        let mut fixture_total = 0;
        for p in 1..top {
            for q in 1..top {
                let out = p + q - 2;
                if p + q < 3 || out >= top {
                    continue;
                }
                let (pa, pb) = (inv.hodge_top(p).unwrap(), inv.hodge_top(q).unwrap());
                let beta = compile(&bracket_formula(p, q, 2), inv).unwrap();
                let mut ok = true;
                let (mut checked, mut skipped) = (0, 0);
                for a in &pa {
                    for b in &pb {
                        let (x, truncated) = beta.apply(a, b).unwrap();
                        if truncated {
                            skipped += 1;
                            continue;
                        }
                        checked += 1;
                        ok &= inv.alt(out, &x).unwrap().is_zero();
                    }
                }
                fixture_total += checked;
                v.check(
                    ok,
                    format!("{label}: alt of the order-2 bracket vanishes on ({p},{q}), {checked} pairs checked, {skipped} skipped over the degree budget"),
                );
            }
        }
        if fixture_total == 0 {
            v.note(format!(
                "{label}: no antisymmetric poly-primitive invariant cochains in these degrees"
            ));
        }
        total += fixture_total;
    }
    v.check(total > 0, format!("{total} bracket pairs checked in all"));
    v.finish("alternation identities");
}

fn criterion_14_order_two_bracket_is_exact() {
    let mut v = Verdict::new(14);
    let mut witnessed = [false; 2];
    for d in [4, 5] {
        let m = build::<Q>(&LieAlgebraSpec::heisenberg(0, d), 4);
        let inv = &m.invariant;
        for (cell, (p, q)) in [(2, 2), (2, 3)].into_iter().enumerate() {
            let (ha, hb) = (inv.cohomology(p).unwrap(), inv.cohomology(q).unwrap());
            let beta = compile(&bracket_formula(p, q, 2), inv).unwrap();
            let out = p + q - 2;
            let (mut checked, mut exact, mut skipped, mut nonzero) = (0, 0, 0, 0);
            for a in &ha.representatives {
                for b in &hb.representatives {
                    let (x, truncated) = beta.apply(a, b).unwrap();
                    if truncated {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    nonzero += usize::from(!x.is_zero());
                    exact += usize::from(inv.coboundary_preimage(out, &x).unwrap().is_some());
                }
            }
            witnessed[cell] |= nonzero > 0 && exact == checked;
            v.check(
                exact == checked,
                format!("D = {d}, ({p},{q}): {exact} of {checked} brackets are coboundaries, {nonzero} nonzero, {skipped} skipped over the degree budget"),
            );
        }
    }
    v.check(
        witnessed.iter().all(|&w| w),
        "each cell has a nonzero untruncated bracket that is a coboundary",
    );
    v.finish("order-2 bracket vanishes in cohomology");
}

fn main() {
    let criteria: [fn(); 14] = [
        criterion_01_formula_fidelity,
        criterion_02_linking_number_oracle,
        criterion_03_shuffling_census,
        criterion_04_delannoy_counts,
        criterion_05_smooth_path_census,
        criterion_06_transpose_sign_rule,
        criterion_07_sketch_recipe,
        criterion_08_lambda_cocycle,
        criterion_09_instance_axioms,
        criterion_10_nontrivial_order_two_bracket,
        criterion_11_schouten_correspondence,
        criterion_12_first_cohomology,
        criterion_13_alternation_kills_the_bracket,
        criterion_14_order_two_bracket_is_exact,
    ];
    for run in criteria {
        run();
    }
    let failed = FAILED.load(Ordering::Relaxed);
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
