//! `ghc` — generalized Hermite constant computations from the command line.
//!
//! Subcommands: partition {conjugate|complement}, invariant, minima, check,
//! profile, bounds {duality|mordell|minkowski|berge-martinet|base-change}.
//! Exit codes: 0 success, 2 parse error, 3 not positive definite,
//! 4 certified-mode size limit.

use std::fs::File;
use std::io::BufReader;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hermite_core::bounds::{self, BoundReport};
use hermite_core::catalog;
use hermite_core::enumeration::{self, MinimaResult};
use hermite_core::forms::{self, GramForm, HumbertForm};
use hermite_core::rat::{fmt_f64_12, fmt_rat, parse_rat, to_f64};
use hermite_core::voronoi;
use hermite_core::{Error, Partition};

#[derive(Parser)]
#[command(name = "ghc", version, about = "exact generalized Hermite invariants of quadratic forms")]
struct Cli {
    /// Validate the catalog (minimum, determinant) data and exit.
    #[arg(long, global = true)]
    self_test: bool,

    /// Machine-readable JSON output (schema-stable, byte-identical reruns).
    #[arg(long, global = true)]
    json: bool,

    /// Cap the internal worker pool.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct LatticeSource {
    /// Catalog lattice name (Zn, An, An*, Dn, Dn*, E8).
    #[arg(long, value_name = "NAME", conflicts_with = "gram")]
    lattice: Option<String>,

    /// Gram matrix file: line 1 = n, then n rows of n rationals.
    #[arg(long, value_name = "FILE")]
    gram: Option<String>,
}

impl LatticeSource {
    fn load(&self) -> Result<(String, GramForm), Error> {
        match (&self.lattice, &self.gram) {
            (Some(name), None) => {
                let entry = catalog::lookup(name)?;
                Ok((entry.name, entry.gram))
            }
            (None, Some(path)) => {
                let file = File::open(path)
                    .map_err(|e| Error::Parse(format!("cannot open {path}: {e}")))?;
                Ok((path.clone(), forms::parse_gram(BufReader::new(file))?))
            }
            _ => Err(Error::Parse("exactly one of --lattice or --gram is required".into())),
        }
    }
}

#[derive(Args)]
struct ModeFlags {
    /// Certified enumeration (default): errors beyond the size limits.
    #[arg(long, conflicts_with = "heuristic")]
    certified: bool,

    /// Best-effort bound without a completeness certificate.
    #[arg(long)]
    heuristic: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Partition operations: conjugate and complement.
    Partition {
        #[command(subcommand)]
        op: PartitionOp,
    },
    /// Certified minimum and Hermite invariant γ = m/det^{m/n}.
    Invariant {
        #[command(flatten)]
        source: LatticeSource,
        /// Partition, e.g. "2,1".
        #[arg(long, value_name = "P")]
        partition: String,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Minimum with all witness flags.
    Minima {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long, value_name = "P")]
        partition: String,
        #[command(flatten)]
        mode: ModeFlags,
    },
    /// Voronoï tests: perfection, eutaxy, extremality.
    Check {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long, value_name = "P")]
        partition: String,
        /// Only report perfection.
        #[arg(long)]
        perfect: bool,
        /// Only report eutaxy.
        #[arg(long)]
        eutactic: bool,
        /// Only report extremality.
        #[arg(long)]
        extreme: bool,
    },
    /// Greedy Hermite–Korkine–Zolotareff profile A₁..Aₙ.
    Profile {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// Inequality suite.
    Bounds {
        #[command(subcommand)]
        which: BoundCmd,
    },
}

#[derive(Subcommand)]
enum PartitionOp {
    /// Transpose partition λ*.
    Conjugate { partition: String },
    /// Complement λ̄ with respect to n.
    Complement {
        partition: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// γ_{n,λ} = γ_{n,λ̄}: best catalog invariants for λ and its complement.
    Duality {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "P")]
        partition: String,
    },
    /// γ_{n,λ} ≤ γ_{m,λ}·γ_{n,m}^{|λ|/m} over the catalog.
    Mordell {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_name = "P")]
        partition: String,
    },
    /// γ^{1/(2|λ|)} against the unit-ball volume bound.
    Minkowski {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long, value_name = "P")]
        partition: String,
    },
    /// min(A)·min(A*) ≤ m_κ(A)/det(A), κ the hook (2,1,…,1).
    BergeMartinet {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// |D_k|^m·γ^d/d^d formula evaluator.
    BaseChange {
        /// γ_{nd,λ}(ℚ) as a rational "p/q".
        #[arg(long)]
        gamma: String,
        /// Field degree d.
        #[arg(long)]
        d: u32,
        /// Field discriminant D_k (sign ignored).
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        /// Partition weight m = |λ|.
        #[arg(long)]
        m: u32,
    },
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct InvariantReport {
    lattice: String,
    partition: Partition,
    minimum: String,
    minimum_float: String,
    invariant: String,
    invariant_float: String,
    certified: bool,
    witness_count: usize,
}

#[derive(Serialize)]
struct MinimaReport {
    lattice: String,
    partition: Partition,
    minimum: String,
    certified: bool,
    search_bound: String,
    witnesses: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct CheckReport {
    lattice: String,
    partition: Partition,
    minimum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    perfect: Option<voronoi::PerfectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eutactic: Option<voronoi::EutaxyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extreme: Option<bool>,
}

#[derive(Serialize)]
struct ProfileReport {
    lattice: String,
    profile: Vec<String>,
    profile_float: Vec<String>,
}

#[derive(Serialize)]
struct PartitionReport {
    operation: String,
    input: Partition,
    result: Partition,
}

#[derive(Serialize)]
struct SelfTestEntry {
    name: String,
    min_ok: bool,
    det_ok: bool,
}

#[derive(Serialize)]
struct SelfTestReport {
    entries: Vec<SelfTestEntry>,
    ok: bool,
}

#[derive(Serialize)]
struct BaseChangeReport {
    gamma: String,
    d: u32,
    disc: i64,
    m: u32,
    bound: String,
    bound_float: String,
}

fn witnesses_json(result: &MinimaResult) -> Vec<Vec<Vec<String>>> {
    result
        .witnesses
        .iter()
        .map(|w| {
            let m = w.matrix();
            (0..m.cols())
                .map(|c| (0..m.rows()).map(|r| m.at(r, c).to_string()).collect())
                .collect()
        })
        .collect()
}

fn emit<T: Serialize>(json: bool, report: &T, human: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        println!("{human}");
    }
}

// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(n) = cli.threads {
        hermite_core::configure_threads(n);
    }
    if cli.self_test {
        return self_test(cli.json);
    }
    let Some(command) = cli.command else {
        return Err(Error::Parse("missing subcommand (try --help)".into()));
    };
    match command {
        Command::Partition { op } => match op {
            PartitionOp::Conjugate { partition } => {
                let p = Partition::parse(&partition)?;
                let report = PartitionReport {
                    operation: "conjugate".into(),
                    result: p.conjugate(),
                    input: p,
                };
                emit(cli.json, &report, report.result.to_string());
            }
            PartitionOp::Complement { partition, n } => {
                let p = Partition::parse(&partition)?;
                let report = PartitionReport {
                    operation: format!("complement n={n}"),
                    result: p.complement(n)?,
                    input: p,
                };
                emit(cli.json, &report, report.result.to_string());
            }
        },
        Command::Invariant { source, partition, mode } => {
            let (name, gram) = source.load()?;
            let shape = Partition::parse(&partition)?;
            let form = HumbertForm::rational(gram);
            let result = enumeration::minimum_with_mode(&form, &shape, !mode.heuristic)?;
            let inv = forms::invariant(&form, &shape, result.minimum.clone());
            let report = InvariantReport {
                lattice: name.clone(),
                partition: shape.clone(),
                minimum: fmt_rat(&result.minimum),
                minimum_float: fmt_f64_12(to_f64(&result.minimum)),
                invariant: inv.render(),
                invariant_float: fmt_f64_12(inv.to_f64()),
                certified: result.certified,
                witness_count: result.witnesses.len(),
            };
            let human = format!(
                "lattice {} λ=({})\nminimum  = {}\ninvariant γ = {}  (≈ {})\ncertified: {} ({} witness flags)",
                report.lattice,
                report.partition,
                report.minimum,
                report.invariant,
                report.invariant_float,
                report.certified,
                report.witness_count
            );
            emit(cli.json, &report, human);
        }
        Command::Minima { source, partition, mode } => {
            let (name, gram) = source.load()?;
            let shape = Partition::parse(&partition)?;
            let form = HumbertForm::rational(gram);
            let result = enumeration::minimum_with_mode(&form, &shape, !mode.heuristic)?;
            let report = MinimaReport {
                lattice: name,
                partition: shape.clone(),
                minimum: fmt_rat(&result.minimum),
                certified: result.certified,
                search_bound: fmt_rat(&result.search_bound),
                witnesses: witnesses_json(&result),
            };
            let mut human = format!(
                "lattice {} λ=({}): minimum = {}, certified: {}\nwitness flags (columns):",
                report.lattice, report.partition, report.minimum, report.certified
            );
            for w in &report.witnesses {
                let cols: Vec<String> =
                    w.iter().map(|c| format!("({})", c.join(","))).collect();
                human.push_str(&format!("\n  [{}]", cols.join(" ")));
            }
            emit(cli.json, &report, human);
        }
        Command::Check { source, partition, perfect, eutactic, extreme } => {
            let (name, gram) = source.load()?;
            let shape = Partition::parse(&partition)?;
            let form = HumbertForm::rational(gram);
            let set = voronoi::minimal_set(&form, &shape)?;
            let all = !(perfect || eutactic || extreme);
            let p_rep = (all || perfect || extreme).then(|| voronoi::is_perfect(&form, &set));
            let e_rep = (all || eutactic || extreme).then(|| voronoi::is_eutactic(&form, &set));
            let x_rep = (all || extreme).then(|| {
                p_rep.as_ref().map_or(false, |p| p.perfect)
                    && e_rep.as_ref().map_or(false, |e| e.eutactic)
            });
            let mut human = format!(
                "lattice {} λ=({}): minimum = {}",
                name,
                shape,
                fmt_rat(&set.minimum)
            );
            if let Some(p) = &p_rep {
                human.push_str(&format!(
                    "\nperfect  : {} (rank {}/{})",
                    mark(p.perfect),
                    p.rank,
                    p.required_rank
                ));
            }
            if let Some(e) = &e_rep {
                human.push_str(&format!("\neutactic : {}", mark(e.eutactic)));
                if e.boundary {
                    human.push_str(" (boundary: ε = 0)");
                }
                if let Some(cert) = &e.certificate {
                    human.push_str(&format!("  ρ = [{}]", cert.join(", ")));
                }
            }
            if let Some(x) = x_rep {
                human.push_str(&format!("\nextreme  : {}", mark(x)));
            }
            let report = CheckReport {
                lattice: name,
                partition: shape.clone(),
                minimum: fmt_rat(&set.minimum),
                perfect: p_rep,
                eutactic: e_rep,
                extreme: x_rep,
            };
            emit(cli.json, &report, human);
        }
        Command::Profile { source } => {
            let (name, gram) = source.load()?;
            let profile = enumeration::kz_profile(&gram)?;
            let report = ProfileReport {
                lattice: name,
                profile: profile.iter().map(fmt_rat).collect(),
                profile_float: profile.iter().map(|v| fmt_f64_12(to_f64(v))).collect(),
            };
            let human =
                format!("greedy KZ profile of {}: {}", report.lattice, report.profile.join(", "));
            emit(cli.json, &report, human);
        }
        Command::Bounds { which } => return run_bounds(which, cli.json),
    }
    Ok(())
}

fn mark(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_bounds(cmd: BoundCmd, json: bool) -> Result<(), Error> {
    let entries = catalog::catalog();
    let report: BoundReport = match cmd {
        BoundCmd::Duality { n, partition } => {
            let shape = Partition::parse(&partition)?;
            bounds::check_duality(&entries, &shape, n)?
        }
        BoundCmd::Mordell { n, m, partition } => {
            let shape = Partition::parse(&partition)?;
            if !(shape.height() <= m && m <= n) {
                return Err(Error::Parse(format!(
                    "mordell needs t ≤ m ≤ n, got t={}, m={m}, n={n}",
                    shape.height()
                )));
            }
            let g_n_lambda = bounds::best_catalog_invariant(&entries, &shape, n)?
                .ok_or_else(|| Error::Invalid(format!("no catalog entries of dimension {n}")))?;
            let g_m_lambda = bounds::best_catalog_invariant(&entries, &shape, m)?
                .ok_or_else(|| Error::Invalid(format!("no catalog entries of dimension {m}")))?;
            let column = Partition::new(vec![1; m]).expect("column partition");
            let g_n_m = bounds::best_catalog_invariant(&entries, &column, n)?
                .ok_or_else(|| Error::Invalid(format!("no catalog entries of dimension {n}")))?;
            bounds::check_mordell(&g_n_lambda.1, &g_m_lambda.1, &g_n_m.1, n, m, &shape)
        }
        BoundCmd::Minkowski { source, partition } => {
            let (_, gram) = source.load()?;
            let shape = Partition::parse(&partition)?;
            let n = gram.dim();
            let form = HumbertForm::rational(gram);
            let result = enumeration::minimum(&form, &shape)?;
            let inv = forms::invariant(&form, &shape, result.minimum);
            bounds::check_minkowski(&inv, n, &shape, 1, 0, 1.0)
        }
        BoundCmd::BergeMartinet { source } => {
            let (_, gram) = source.load()?;
            bounds::check_berge_martinet(&gram)?
        }
        BoundCmd::BaseChange { gamma, d, disc, m } => {
            let g = parse_rat(&gamma)?;
            let bound = bounds::base_change_bound(&g, d, disc, m);
            let report = BaseChangeReport {
                gamma: fmt_rat(&g),
                d,
                disc,
                m,
                bound: fmt_rat(&bound),
                bound_float: fmt_f64_12(to_f64(&bound)),
            };
            let human = format!(
                "base-change bound |D|^m·γ^d/d^d = {}  (≈ {})",
                report.bound, report.bound_float
            );
            emit(json, &report, human);
            return Ok(());
        }
    };
    emit(json, &report, report.summary());
    if !report.holds {
        return Err(Error::Invalid(format!("bound does not hold: {}", report.summary())));
    }
    Ok(())
}

fn self_test(json: bool) -> Result<(), Error> {
    let one = Partition::new(vec![1]).unwrap();
    let mut entries = Vec::new();
    let mut ok = true;
    for entry in catalog::catalog() {
        let form = HumbertForm::rational(entry.gram.clone());
        let min = enumeration::minimum(&form, &one)?.minimum;
        let min_ok = min == entry.known_min;
        let det_ok = entry.gram.det() == entry.known_det;
        ok &= min_ok && det_ok;
        entries.push(SelfTestEntry { name: entry.name, min_ok, det_ok });
    }
    let report = SelfTestReport { entries, ok };
    let human = report
        .entries
        .iter()
        .map(|e| {
            format!(
                "{:4} min {} det {}",
                e.name,
                if e.min_ok { "ok" } else { "MISMATCH" },
                if e.det_ok { "ok" } else { "MISMATCH" }
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(json, &report, format!("{human}\nself-test: {}", if report.ok { "ok" } else { "FAILED" }));
    if !report.ok {
        return Err(Error::Invalid("catalog self-test failed".into()));
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NotSymmetric | Error::NotPositiveDefinite => 3,
        Error::CertifiedLimit(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
