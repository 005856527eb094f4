//! `vnlab` — command-line front end for the finite operator-algebra
//! laboratory.
//!
//! Exit codes: 0 success, 1 validation error, 2 cap exceeded, 3 failed
//! consistency check, 64 usage error. Caps can be overridden with the
//! `VNLAB_CAPS` environment variable (`key=value` pairs, comma separated).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use vnlab_core::error::Error as CoreError;
use vnlab_core::harness::{self, AcceptanceConfig};
use vnlab_core::itpfi::{tset_scan, TsetVerdict, ZERO_TOL};
use vnlab_core::mekler::{self, CentralizerPreset, MeklerGroup};
use vnlab_core::schema;
use vnlab_core::staralg::analyze;
use vnlab_core::{Caps, DEFAULT_TOL};

const EXIT_OK: i32 = 0;
const EXIT_INVALID: i32 = 1;
const EXIT_CAP: i32 = 2;
const EXIT_INCONSISTENT: i32 = 3;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "vnlab",
    version,
    about = "Finite-scale laboratory for operator-algebra constructions",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(flatten)]
    run: RunOptions,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunOptions {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Relative tolerance for rank/membership decisions (0 < tol ≤ 1e-3).
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Seed for all randomized sweeps.
    #[arg(long, global = true, default_value_t = 0x766e_1ab0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build the crossed product of an action document; report the block
    /// structure and the Cartan diagnostics.
    Crossed { action: PathBuf },
    /// Compare two actions: orbit equivalence vs Cartan invariants.
    FmCheck { a: PathBuf, b: PathBuf },
    /// Left regular algebra of a table group document.
    Groupvna { group: PathBuf },
    /// ICC certificate for a named oracle (F<k>, Z<d>, SL2Z, SL3Z, SL2Z:A,B).
    Icc {
        oracle: String,
        #[arg(short = 'r', long, default_value_t = 1)]
        r: usize,
        #[arg(short = 'R', long = "big-r", default_value_t = 3)]
        big_r: usize,
        #[arg(long, default_value_t = 10)]
        threshold: usize,
    },
    /// Mekler-construction commands.
    #[command(subcommand)]
    Mekler(MeklerCommand),
    /// ITPFI T-set commands.
    #[command(subcommand)]
    Itpfi(ItpfiCommand),
    /// Run a wired reduction harness: mekler-fingerprint or feldman-moore.
    Reduce {
        harness: String,
        /// Vertex bound for the mekler-fingerprint harness.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Catalog enumeration.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Run the acceptance suite and print one line per criterion.
    Acceptance,
}

#[derive(Subcommand)]
enum MeklerCommand {
    /// Niceness report, group order, and fingerprint of a graph document.
    Graph {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Isomorphism comparison of two graph documents.
    Iso {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Also run the exhaustive GL(n,p) group-isomorphism search.
        #[arg(long)]
        exact: bool,
    },
    /// Character-support centralizer of a named preset
    /// (Z2, A5, A5xZ2, A5xMeklerSemidirect).
    Centralizer { preset: String },
}

#[derive(Subcommand)]
enum ItpfiCommand {
    /// Scan T-set membership over a grid; emits CSV (t, verdict, maxBlockTerm).
    Scan {
        spec: PathBuf,
        /// Comma-separated grid points.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        /// For Powers-type lattices: also scan m·2π/|ln λ| for m = −N..N.
        #[arg(long)]
        lattice_multiples: Option<i32>,
        /// λ used with --lattice-multiples.
        #[arg(long)]
        lambda: Option<f64>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Nice graphs on ≤ max-n vertices, one per isomorphism class.
    Nice {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(EXIT_OK);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(EXIT_USAGE);
                }
            };
        }
    };
    let code = match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                CoreError::CapExceeded(_) => EXIT_CAP,
                _ => EXIT_INVALID,
            }
        }
    };
    std::process::exit(code);
}

fn read_file(path: &Path) -> Result<String, CoreError> {
    std::fs::read_to_string(path)
        .map_err(|e| CoreError::invalid(format!("cannot read {}: {e}", path.display())))
}

fn emit(options: &RunOptions, text: &str) -> Result<(), CoreError> {
    match &options.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CoreError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            // tolerate a closed pipe (e.g. | head)
            let _ = writeln!(stdout, "{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization")
}

fn execute(cli: Cli) -> Result<i32, CoreError> {
    let caps = Caps::from_env()?;
    let options = cli.run;
    if !(options.tol > 0.0 && options.tol <= 1e-3) {
        return Err(CoreError::invalid(format!(
            "tolerance {} outside (0, 1e-3]",
            options.tol
        )));
    }

    match cli.command {
        Command::Crossed { action } => {
            let action = schema::parse_action(&read_file(&action)?)?;
            let report = harness::crossed_action_report(&action, &caps)?;
            emit(&options, &to_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::FmCheck { a, b } => {
            let a = schema::parse_action(&read_file(&a)?)?;
            let b = schema::parse_action(&read_file(&b)?)?;
            let report = vnlab_core::crossed::feldman_moore_check(&a, &b, &caps)?;
            let consistent = report.consistent;
            emit(&options, &to_json(&report))?;
            Ok(if consistent { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        Command::Groupvna { group } => {
            let doc: schema::GroupDoc = serde_json::from_str(&read_file(&group)?)
                .map_err(|e| CoreError::invalid(format!("group document: {e}")))?;
            let group = schema::parse_group(&doc)?;
            let algebra = vnlab_core::groupvna::left_regular_algebra(&group, &caps)?
                .with_tolerance(options.tol);
            #[derive(Serialize)]
            #[serde(rename_all = "camelCase")]
            struct GroupVnaReport {
                order: usize,
                conjugacy_classes: usize,
                algebra: vnlab_core::AlgebraReport,
            }
            let report = GroupVnaReport {
                order: group.order(),
                conjugacy_classes: group.conjugacy_class_count(),
                algebra: analyze(&algebra)?,
            };
            emit(&options, &to_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Icc {
            oracle,
            r,
            big_r,
            threshold,
        } => {
            let named = vnlab_core::groupvna::oracle_by_name(&oracle)?;
            let cert = named.icc(r, big_r, threshold, &caps)?;
            emit(&options, &to_json(&cert))?;
            Ok(EXIT_OK)
        }
        Command::Mekler(cmd) => run_mekler(cmd, &options, &caps),
        Command::Itpfi(cmd) => run_itpfi(cmd, &options),
        Command::Reduce {
            harness: name,
            max_n,
        } => {
            let report = match name.as_str() {
                "mekler-fingerprint" => harness::mekler_fingerprint_reduction(max_n, 3, &caps),
                "feldman-moore" => harness::feldman_moore_reduction(&caps),
                other => {
                    return Err(CoreError::invalid(format!(
                        "unknown harness `{other}` (known: mekler-fingerprint, feldman-moore)"
                    )))
                }
            };
            let holds = report.holds;
            emit(&options, &to_json(&report))?;
            Ok(if holds { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        Command::Catalog(CatalogCommand::Nice { max_n }) => {
            let entries = harness::nice_catalog_entries(max_n);
            #[derive(Serialize)]
            #[serde(rename_all = "camelCase")]
            struct NiceCatalogReport {
                max_n: usize,
                classes: usize,
                entries: Vec<harness::NiceCatalogEntry>,
            }
            let report = NiceCatalogReport {
                max_n,
                classes: entries.len(),
                entries,
            };
            emit(&options, &to_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Acceptance => {
            let config = AcceptanceConfig {
                seed: options.seed,
                caps: caps.clone(),
            };
            let results = harness::run_acceptance(&config);
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(text, "{} [{:.2}s]", r.line(), r.seconds);
            }
            let all_passed = results.iter().all(|r| r.passed);
            let _ = writeln!(
                text,
                "{} of {} criteria passed",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            );
            emit(&options, text.trim_end())?;
            Ok(if all_passed { EXIT_OK } else { EXIT_INCONSISTENT })
        }
    }
}

fn run_mekler(cmd: MeklerCommand, options: &RunOptions, caps: &Caps) -> Result<i32, CoreError> {
    match cmd {
        MeklerCommand::Graph { graph, p } => {
            let g = schema::parse_graph(&read_file(&graph)?)?;
            let group = MeklerGroup::new(g.clone(), p)?;
            #[derive(Serialize)]
            #[serde(rename_all = "camelCase")]
            struct GraphReport {
                vertices: usize,
                edges: Vec<(usize, usize)>,
                nice: mekler::NiceReport,
                order_exponent: usize,
                fingerprint: mekler::GroupFingerprint,
            }
            let report = GraphReport {
                vertices: g.n(),
                edges: g.edges(),
                nice: mekler::nice_report(&g),
                order_exponent: group.order_exponent(),
                fingerprint: mekler::fingerprint(&group, caps)?,
            };
            emit(options, &to_json(&report))?;
            Ok(EXIT_OK)
        }
        MeklerCommand::Iso { g1, g2, p, exact } => {
            let a = schema::parse_graph(&read_file(&g1)?)?;
            let b = schema::parse_graph(&read_file(&g2)?)?;
            let witness = mekler::graph_iso(&a, &b, caps)?;
            let fa = mekler::fingerprint(&MeklerGroup::new(a.clone(), p)?, caps)?;
            let fb = mekler::fingerprint(&MeklerGroup::new(b.clone(), p)?, caps)?;
            #[derive(Serialize)]
            #[serde(rename_all = "camelCase")]
            struct IsoReport {
                graph_iso: bool,
                witness: Option<Vec<usize>>,
                fingerprints_equal: bool,
                exact_iso: Option<bool>,
            }
            let report = IsoReport {
                graph_iso: witness.is_some(),
                witness,
                fingerprints_equal: fa == fb,
                exact_iso: if exact {
                    Some(mekler::exact_iso(&a, &b, p, caps)?)
                } else {
                    None
                },
            };
            // a graph isomorphism must force matching fingerprints
            let consistent = !(report.graph_iso && !report.fingerprints_equal);
            emit(options, &to_json(&report))?;
            Ok(if consistent { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        MeklerCommand::Centralizer { preset } => {
            let preset = CentralizerPreset::parse(&preset)?;
            let report = mekler::char_support_preset(preset, caps)?;
            emit(options, &to_json(&report))?;
            Ok(EXIT_OK)
        }
    }
}

fn run_itpfi(cmd: ItpfiCommand, options: &RunOptions) -> Result<i32, CoreError> {
    match cmd {
        ItpfiCommand::Scan {
            spec,
            mut grid,
            lattice_multiples,
            lambda,
        } => {
            let spec = schema::parse_itpfi_spec(&read_file(&spec)?)?;
            if let Some(n) = lattice_multiples {
                let lambda = lambda
                    .ok_or_else(|| CoreError::invalid("--lattice-multiples needs --lambda"))?;
                if !(lambda > 0.0 && lambda < 1.0) {
                    return Err(CoreError::invalid("λ must lie strictly between 0 and 1"));
                }
                let step = 2.0 * std::f64::consts::PI / lambda.ln().abs();
                grid.extend((-n..=n).map(|m| m as f64 * step));
            }
            if grid.is_empty() {
                return Err(CoreError::invalid(
                    "empty grid: pass --grid or --lattice-multiples",
                ));
            }
            grid.sort_by(|a, b| a.total_cmp(b));
            let rows = tset_scan(&spec, &grid, ZERO_TOL, 100_000);
            let mut csv = String::from("t,verdict,maxBlockTerm\n");
            for row in &rows {
                let verdict = match &row.verdict {
                    TsetVerdict::In => "In".to_string(),
                    TsetVerdict::Out => "Out".to_string(),
                    TsetVerdict::Undecided { partial_sum, terms } => {
                        format!("Undecided(sum={partial_sum:.6e};terms={terms})")
                    }
                };
                let _ = writeln!(csv, "{:.17e},{},{:.17e}", row.t, verdict, row.max_block_term);
            }
            emit(options, csv.trim_end())?;
            Ok(EXIT_OK)
        }
    }
}
