mod cache;
mod config;
mod suites;

use std::process::ExitCode;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use opad::field::{Field, F2, F3, F5, F7, Q};
use opad::formula::{bracket_formula, compile, cup_formula, Formula};
use opad::instances::format_tensor;
use opad::lattice::enumerate_normal;
use opad::paths::{enumerate_delannoy, enumerate_smooth, linking_number};
use opad::simplicial::OrdinalMap;

use config::{Built, Config, UsageError};

#[derive(Parser)]
#[command(
    name = "opad",
    version,
    about = "Lattice paths, cup-i products and brackets on cosimplicial algebras"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Paths on the (p+1) x (q+1) grid and linking numbers.
    #[command(subcommand)]
    Paths(PathsCommand),
    /// Lattice paths with stops.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Cup-i products and brackets as operator formulas.
    #[command(subcommand)]
    Formula(FormulaCommand),
    /// Computations on concrete cosimplicial algebras.
    #[command(subcommand)]
    Instance(InstanceCommand),
}

#[derive(Subcommand)]
enum PathsCommand {
    /// Linking number of two monotone maps, e.g. `--tau 0,1,2 --pi 0,1,2`.
    Lk {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
    },
    /// Delannoy paths.
    Delannoy(Grid),
    /// Smooth Delannoy paths of linking number n.
    Smooth {
        #[command(flatten)]
        grid: Grid,
        #[arg(short)]
        n: usize,
    },
}

#[derive(Args)]
struct Grid {
    #[arg(short)]
    p: usize,
    #[arg(short)]
    q: usize,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Normal lattice paths with n corners.
    Normal {
        #[command(flatten)]
        grid: Grid,
        #[arg(short)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum FormulaCommand {
    /// The cup-i product of a in E(p) and b in E(q).
    Cup {
        #[command(flatten)]
        grid: Grid,
        #[arg(short)]
        i: usize,
    },
    /// The bracket of order n of a in E(p) and b in E(q).
    Bracket {
        #[command(flatten)]
        grid: Grid,
        #[arg(short)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    Forgetful,
    Invariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Commutativity,
    Symmetry,
    #[value(alias = "pac")]
    Alternation,
    #[value(alias = "nte")]
    Char3Class,
    Schouten,
}

#[derive(Subcommand)]
enum InstanceCommand {
    /// Dimension and representatives of the normalized cohomology.
    Cohomology {
        #[arg(long)]
        config: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "forgetful")]
        complex: ComplexKind,
    },
    /// The bracket of order n on cohomology representatives.
    Bracket {
        #[arg(long)]
        config: String,
        #[arg(long)]
        deg_a: usize,
        #[arg(long)]
        deg_b: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "invariant")]
        complex: ComplexKind,
    },
    /// Runs a verification suite; exit code 1 when a property fails.
    Verify {
        #[arg(long)]
        config: String,
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

/// What a command printed and whether its property checks held.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub passed: bool,
}

impl Report {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Report {
            text,
            json,
            passed: true,
        }
    }
}

fn parse_map(s: &str) -> Result<Vec<usize>, UsageError> {
    s.split(',')
        .map(|v| {
            v.trim().parse::<usize>().map_err(|_| {
                UsageError(format!(
                    "malformed map literal {s:?}: expected comma-separated values"
                ))
            })
        })
        .collect()
}

fn maps_from_literals(tau: &str, pi: &str) -> anyhow::Result<(OrdinalMap, OrdinalMap)> {
    let (t, p) = (parse_map(tau)?, parse_map(pi)?);
    let cod = t.iter().chain(&p).copied().max().unwrap_or(0);
    let build = |v: Vec<usize>, name: &str| {
        OrdinalMap::new(cod, v).map_err(|e| UsageError(format!("--{name}: {e}")))
    };
    Ok((build(t, "tau")?, build(p, "pi")?))
}

fn listing(kind: &str, p: usize, q: usize, items: Vec<String>) -> Report {
    let count = items.len();
    let mut text = items.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    text.push_str(&format!("count: {count}"));
    Report::ok(
        text,
        json!({ "kind": kind, "p": p, "q": q, "count": count, "paths": items }),
    )
}

fn formula_report(f: &Formula) -> Report {
    Report::ok(f.to_string(), f.to_json())
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Paths(PathsCommand::Lk { tau, pi }) => {
            let (t, p) = maps_from_literals(tau, pi)?;
            let lk = linking_number(&t, &p)?;
            Ok(Report::ok(lk.to_string(), json!({ "lk": lk })))
        }
        Command::Paths(PathsCommand::Delannoy(Grid { p, q })) => {
            cache::cached(&format!("delannoy-{p}-{q}"), || {
                Ok(listing(
                    "delannoy",
                    *p,
                    *q,
                    enumerate_delannoy(*p, *q)
                        .iter()
                        .map(|x| x.to_string())
                        .collect(),
                ))
            })
        }
        Command::Paths(PathsCommand::Smooth {
            grid: Grid { p, q },
            n,
        }) => cache::cached(&format!("smooth-{p}-{q}-{n}"), || {
            Ok(listing(
                "smooth",
                *p,
                *q,
                enumerate_smooth(*p, *q, *n)
                    .iter()
                    .map(|x| x.to_string())
                    .collect(),
            ))
        }),
        Command::Lattice(LatticeCommand::Normal {
            grid: Grid { p, q },
            n,
        }) => cache::cached(&format!("normal-{p}-{q}-{n}"), || {
            let split = enumerate_normal(*p, *q, *n);
            let mut items = Vec::new();
            for (parity, paths) in [("even", &split.even), ("odd", &split.odd)] {
                for psi in paths {
                    items.push(format!("{psi} {parity} {:+}", psi.sign()));
                }
            }
            Ok(listing("normal", *p, *q, items))
        }),
        Command::Formula(FormulaCommand::Cup {
            grid: Grid { p, q },
            i,
        }) => cache::cached(&format!("cup-{p}-{q}-{i}"), || {
            Ok(formula_report(&cup_formula(*p, *q, *i)))
        }),
        Command::Formula(FormulaCommand::Bracket {
            grid: Grid { p, q },
            n,
        }) => cache::cached(&format!("bracket-{p}-{q}-{n}"), || {
            Ok(formula_report(&bracket_formula(*p, *q, *n)))
        }),
        Command::Instance(cmd) => run_instance(cmd),
    }
}

macro_rules! dispatch {
    ($ch:expr, $f:ident($($arg:expr),*)) => {
        match $ch {
            0 => $f::<Q>($($arg),*),
            2 => $f::<F2>($($arg),*),
            3 => $f::<F3>($($arg),*),
            5 => $f::<F5>($($arg),*),
            7 => $f::<F7>($($arg),*),
            other => Err(UsageError(format!("$.char: unsupported characteristic {other}")).into()),
        }
    };
}

fn run_instance(cmd: &InstanceCommand) -> anyhow::Result<Report> {
    let path = match cmd {
        InstanceCommand::Cohomology { config, .. }
        | InstanceCommand::Bracket { config, .. }
        | InstanceCommand::Verify { config, .. } => config,
    };
    let config = Config::load(path)?;
    dispatch!(config.characteristic(), instance_in(&config, cmd))
}

fn instance_in<F: Field>(config: &Config, cmd: &InstanceCommand) -> anyhow::Result<Report> {
    match cmd {
        InstanceCommand::Cohomology {
            degree, complex, ..
        } => {
            let built = config.build::<F>(*complex)?;
            let inst = &built.instance;
            if *degree >= inst.max_degree() {
                bail!(UsageError(format!(
                    "--degree {degree}: cohomology needs degree < {}",
                    inst.max_degree()
                )));
            }
            let h = inst.cohomology(*degree)?;
            let reps: Vec<String> = h
                .representatives
                .iter()
                .map(|r| built.describe(r, *degree))
                .collect();
            let mut text = format!("{}: dim H^{} = {}\n", inst.name(), degree, h.dimension);
            text.push_str(&format!(
                "cocycles {}, boundaries {}",
                h.cocycle_dim, h.boundary_rank
            ));
            for r in &reps {
                text.push_str(&format!("\n  {r}"));
            }
            Ok(Report::ok(
                text,
                json!({ "instance": inst.name(), "degree": degree, "dimension": h.dimension,
                        "cocycle_dim": h.cocycle_dim, "boundary_rank": h.boundary_rank, "representatives": reps }),
            ))
        }
        InstanceCommand::Bracket {
            deg_a,
            deg_b,
            n,
            complex,
            ..
        } => {
            let built = config.build::<F>(*complex)?;
            let inst = &built.instance;
            let formula = bracket_formula(*deg_a, *deg_b, *n);
            let out = formula.out_degree;
            let compiled = compile(&formula, inst)?;
            for d in [deg_a, deg_b] {
                if *d >= inst.max_degree() {
                    bail!(UsageError(format!(
                        "degree {d}: representatives need degree < {}",
                        inst.max_degree()
                    )));
                }
            }
            let ha = inst.cohomology(*deg_a)?;
            let hb = inst.cohomology(*deg_b)?;
            let mut text = format!(
                "{}: bracket of order {n} on H^{deg_a} x H^{deg_b} -> E({out})",
                inst.name()
            );
            let mut rows = Vec::new();
            for (i, a) in ha.representatives.iter().enumerate() {
                for (j, b) in hb.representatives.iter().enumerate() {
                    let (v, truncated) = compiled.apply(a, b)?;
                    let exact = inst.coboundary_preimage(out, &v)?.is_some();
                    let value = built.describe(&v, out);
                    text.push_str(&format!(
                        "\n  [{i},{j}] {value}{}{}",
                        if exact {
                            "  (coboundary)"
                        } else {
                            "  (not a coboundary)"
                        },
                        if truncated { "  [truncated]" } else { "" }
                    ));
                    rows.push(json!({ "a": i, "b": j, "value": value, "coboundary": exact, "truncated": truncated }));
                }
            }
            Ok(Report::ok(
                text,
                json!({ "instance": inst.name(), "order": n, "out_degree": out, "pairs": rows }),
            ))
        }
        InstanceCommand::Verify { suite, .. } => suites::run::<F>(config, *suite),
    }
}

impl<F: Field> Built<F> {
    /// Cochain rendered with tensor labels when the instance comes from a Lie algebra.
    pub fn describe(&self, x: &opad::linalg::SparseVec<F>, n: usize) -> String {
        match &self.uea {
            Some((uea, bases)) => format_tensor(x, n, uea, bases),
            None => {
                if x.is_zero() {
                    return "0".into();
                }
                let labels = self.instance.labels(n);
                x.entries()
                    .iter()
                    .map(|(i, c)| format!("{c} {}", labels[*i]))
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                );
            } else {
                println!("{}", report.text);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
