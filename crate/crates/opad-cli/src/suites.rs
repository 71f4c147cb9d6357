//! Verification suites behind `instance verify`.

use anyhow::bail;
use serde_json::json;

use opad::cosim::CosimplicialAlgebraInstance;
use opad::field::{factorial_inverse, Field};
use opad::formula::{bracket_formula, compile};
use opad::instances::{
    alt_project, lambda_embed, schouten, tensor_element, wedge_tensor, Multivector,
};

use crate::config::{Config, UsageError};
use crate::{ComplexKind, Report, Suite};

struct Log {
    lines: Vec<String>,
    checks: Vec<serde_json::Value>,
    passed: bool,
}

impl Log {
    fn new() -> Self {
        Log {
            lines: Vec::new(),
            checks: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: String) {
        self.passed &= ok;
        self.lines.push(format!(
            "{} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        ));
        self.checks
            .push(json!({ "name": name, "passed": ok, "detail": detail }));
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("  {line}"));
    }

    fn finish(self, suite: &str) -> Report {
        let mut text = self.lines.join("\n");
        text.push_str(&format!("\n{}", if self.passed { "PASS" } else { "FAIL" }));
        Report {
            text,
            json: json!({ "suite": suite, "passed": self.passed, "checks": self.checks }),
            passed: self.passed,
        }
    }
}

pub fn run<F: Field>(config: &Config, suite: Suite) -> anyhow::Result<Report> {
    match suite {
        Suite::Commutativity => commutativity::<F>(config),
        Suite::Symmetry => symmetry::<F>(config),
        Suite::Alternation => alternation::<F>(config),
        Suite::Char3Class => char3_class::<F>(config),
        Suite::Schouten => schouten_suite::<F>(config),
    }
}

/// Instances to check: the forgetful and invariant complexes, or the document as given.
fn instances<F: Field>(
    config: &Config,
) -> anyhow::Result<Vec<(usize, CosimplicialAlgebraInstance<F>)>> {
    Ok(match config {
        Config::Lie(_) => vec![
            (1, config.build::<F>(ComplexKind::Forgetful)?.instance),
            (2, config.build::<F>(ComplexKind::Invariant)?.instance),
        ],
        Config::Document(_) => {
            let inst = config.build::<F>(ComplexKind::Forgetful)?.instance;
            vec![(1, inst.clone()), (2, inst)]
        }
    })
}

fn commutativity<F: Field>(config: &Config) -> anyhow::Result<Report> {
    let mut log = Log::new();
    for (order, inst) in instances::<F>(config)? {
        let bound = inst.max_degree().min(3);
        let r = inst.verify_n_commutativity(order, bound);
        let mut detail = format!(
            "{}: checked up to degree {bound} ({} products, {} skipped)",
            inst.name(),
            r.checked,
            r.skipped
        );
        if let Some(w) = &r.witness {
            detail.push_str(&format!(
                "; witness maps {:?} and {:?} on basis vectors {} and {}",
                w.first_map, w.second_map, w.first_basis, w.second_basis
            ));
        }
        log.check(&format!("{order}-commutativity"), r.passed, detail);
    }
    Ok(log.finish("commutativity"))
}

fn symmetry<F: Field>(config: &Config) -> anyhow::Result<Report> {
    let mut log = Log::new();
    let mut seen = Vec::new();
    for (_, inst) in instances::<F>(config)? {
        if seen.contains(&inst.name().to_string()) {
            continue;
        }
        seen.push(inst.name().to_string());
        if !inst.has_symmetry() {
            bail!(UsageError(format!(
                "{} has no symmetric-group action",
                inst.name()
            )));
        }
        let r = inst.check_axioms(inst.max_degree());
        let mut detail = format!(
            "{}: {} identities checked, {} truncated products skipped",
            inst.name(),
            r.checked,
            r.skipped
        );
        if let Some(f) = r.failures.first() {
            detail.push_str(&format!("; first failure: {f}"));
        }
        log.check("axioms", r.passed(), detail);
    }
    Ok(log.finish("symmetry"))
}

fn alternation<F: Field>(config: &Config) -> anyhow::Result<Report> {
    let mut log = Log::new();
    let list = instances::<F>(config)?;
    let (full, invariant) = (&list[0].1, &list[1].1);
    let top = full.max_degree();
    if factorial_inverse::<F>(top).is_none() {
        bail!(UsageError(format!(
            "$.char: the alternation suite needs {top}! to be invertible"
        )));
    }
    for n in 0..top {
        let mut ok = true;
        for x in full.basis(n) {
            ok &= full.alt(n + 1, &full.coboundary(n, &x)?)?.is_zero();
        }
        log.check(
            "alt after differential",
            ok,
            format!("{}: E({n}) -> E({})", full.name(), n + 1),
        );
    }
    for n in [2, 3] {
        if n < top {
            let ok = full.operator_identity_check(n)?;
            log.check("operator identity", ok, format!("{}: n = {n}", full.name()));
        }
    }
    for p in 1..top {
        for q in 1..top {
            let out = (p + q).saturating_sub(2);
            if p + q < 3 || out >= top {
                continue;
            }
            let (pa, pb) = (invariant.hodge_top(p)?, invariant.hodge_top(q)?);
            let compiled = compile(&bracket_formula(p, q, 2), invariant)?;
            let mut ok = true;
            let mut skipped = 0;
            for a in &pa {
                for b in &pb {
                    let (v, truncated) = compiled.apply(a, b)?;
                    if truncated {
                        skipped += 1;
                        continue;
                    }
                    ok &= invariant.alt(out, &v)?.is_zero();
                }
            }
            log.check(
                "top component of the order-2 bracket",
                ok,
                format!(
                    "{}: ({p},{q}) over {}x{} poly-primitive pairs, {skipped} truncated",
                    invariant.name(),
                    pa.len(),
                    pb.len()
                ),
            );
        }
    }
    Ok(log.finish("alternation"))
}

fn check_heisenberg(config: &Config) -> anyhow::Result<()> {
    let spec = config
        .spec()
        .ok_or_else(|| UsageError("the char3-class suite needs a Lie algebra config".into()))?;
    if !spec.is_heisenberg() {
        bail!(UsageError("$.brackets: the char3-class suite needs the Heisenberg algebra with basis [x,y,z] and [x,y] = z".into()));
    }
    if spec.truncation < 4 || spec.max_degree < 3 {
        bail!(UsageError(
            "$.truncation: the char3-class suite needs truncation >= 4 and max_degree >= 3".into()
        ));
    }
    Ok(())
}

fn char3_class<F: Field>(config: &Config) -> anyhow::Result<Report> {
    check_heisenberg(config)?;
    let built = config.build::<F>(ComplexKind::Invariant)?;
    let inst = &built.instance;
    let (uea, bases) = built.uea.as_ref().expect("Lie config");
    let xz = wedge_tensor(&[0, 2], uea, bases)?;
    let yz = wedge_tensor(&[1, 2], uea, bases)?;
    let mut log = Log::new();
    for (name, v) in [("x^z", &xz), ("y^z", &yz)] {
        let ok = inst.contains(2, v) && inst.coboundary(2, v)?.is_zero();
        log.check(
            "invariant cocycle",
            ok,
            format!("{name} = {}", built.describe(v, 2)),
        );
    }
    let (value, truncated) = compile(&bracket_formula(2, 2, 2), inst)?.apply(&xz, &yz)?;
    let target = tensor_element(uea, bases, &[vec![0, 0, 1], vec![0, 0, 2]])?.add(&tensor_element(
        uea,
        bases,
        &[vec![0, 0, 2], vec![0, 0, 1]],
    )?);
    log.note(format!(
        "bracket of order 2 on (x^z, y^z) = {}",
        built.describe(&value, 2)
    ));
    let multiple = value.get(target.entries()[0].0);
    let proportional = !multiple.is_zero() && value == target.scale(&multiple);
    log.check(
        "value",
        proportional && !truncated,
        format!("{multiple} (z (x) z^2 + z^2 (x) z)"),
    );
    let preimage = inst.coboundary_preimage(2, &value)?;
    log.check(
        "nonzero class",
        preimage.is_none() && !value.is_zero(),
        format!(
            "z (x) z^2 + z^2 (x) z is {}a coboundary of invariant 1-cochains",
            if preimage.is_some() { "" } else { "not " }
        ),
    );
    Ok(log.finish("char3-class"))
}

fn schouten_suite<F: Field>(config: &Config) -> anyhow::Result<Report> {
    let spec = config
        .spec()
        .ok_or_else(|| UsageError("the schouten suite needs a Lie algebra config".into()))?;
    if F::characteristic() != 0 {
        bail!(UsageError(
            "$.char: the schouten suite needs characteristic 0".into()
        ));
    }
    let built = config.build::<F>(ComplexKind::Forgetful)?;
    let inst = &built.instance;
    let (uea, bases) = built.uea.as_ref().expect("Lie config");
    let d = spec.dim();
    let mut basis: Vec<Multivector<F>> = (0..d)
        .map(|i| Multivector::wedge_of(&[i], F::one()))
        .collect();
    for i in 0..d {
        for j in i + 1..d {
            basis.push(Multivector::wedge_of(&[i, j], F::one()));
        }
    }
    let mut log = Log::new();
    let mut mismatches = 0;
    let mut checked = 0;
    for u in &basis {
        for v in &basis {
            let (p, q) = (u.degree().unwrap_or(0), v.degree().unwrap_or(0));
            let out = p + q - 1;
            if out > inst.max_degree() {
                continue;
            }
            let a = lambda_embed(u, uea, bases)?;
            let b = lambda_embed(v, uea, bases)?;
            let (w, _) = compile(&bracket_formula(p, q, 1), inst)?.apply(&a, &b)?;
            let got = alt_project(&w, out, uea, bases)?;
            let want = schouten(u, v, spec)?;
            checked += 1;
            if got != want {
                mismatches += 1;
                log.note(format!(
                    "{{{}, {}}}: bracket gives {}, Schouten gives {}",
                    u.display(&spec.basis),
                    v.display(&spec.basis),
                    got.display(&spec.basis),
                    want.display(&spec.basis)
                ));
            }
        }
    }
    log.check(
        "schouten",
        mismatches == 0,
        format!("{} of {checked} basis pairs agree", checked - mismatches),
    );
    Ok(log.finish("schouten"))
}
