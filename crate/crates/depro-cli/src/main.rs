//! Command-line dependency profiler: detection, enumeration, reduction
//! gadgets, brute-force oracles, and gadget verification.
//!
//! Exit codes: 0 for success (or "found" / "verified"), 1 for "not found"
//! or a failed verification, 2 for usage and input errors.

use std::collections::BTreeMap;
use std::fs;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use depro::formula::Formula;
use depro::harness::{random_gadget_instance, verify_gadget, OracleBounds, VerificationReport};
use depro::hypergraph::Hypergraph;
use depro::reduce::Gadget;
use depro::relation::{AttrSet, Ind, Relation};
use depro::{discovery, oracle, reduce};

#[derive(Parser)]
#[command(name = "depro", version, about = "Profile relational tables for unique column combinations, functional dependencies, and inclusion dependencies; transform instances between problem encodings; verify the transformations by exhaustive enumeration.")]
struct Cli {
    /// Output style: line-delimited JSON objects or human-readable text.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Override the size bound of the exhaustive searches run by this
    /// invocation (vertices, attributes, or Boolean variables, whichever
    /// applies).
    #[arg(long, global = true)]
    oracle_bound: Option<usize>,
    /// Seed for randomized modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate minimal unique column combinations and/or minimal
    /// functional dependencies of a CSV table.
    Profile {
        table: PathBuf,
        /// Emit minimal unique column combinations.
        #[arg(long)]
        uccs: bool,
        /// Emit minimal functional dependencies with every right-hand side.
        #[arg(long)]
        fds: bool,
        /// Emit minimal functional dependencies into this attribute only.
        #[arg(long, value_name = "ATTR")]
        fds_rhs: Option<String>,
        /// Drop solutions larger than this.
        #[arg(long, value_name = "K")]
        max_size: Option<usize>,
    },
    /// Enumerate maximal inclusion dependencies between two CSV tables.
    ProfileInd {
        left: PathBuf,
        right: PathBuf,
        /// Identity column mapping only (requires equal schemas).
        #[arg(long)]
        identity: bool,
        /// Arbitrary injective column mappings.
        #[arg(long)]
        general: bool,
    },
    /// Decide whether a dependency of size exactly K exists.
    /// Exit 0 = found, 1 = not found.
    Detect {
        kind: DetectKind,
        /// One CSV table (ucc, fd) or two (ind, ind-identity).
        inputs: Vec<PathBuf>,
        #[arg(short = 'k', value_name = "K")]
        k: usize,
        /// Fix the right-hand side (fd only).
        #[arg(long, value_name = "ATTR")]
        rhs: Option<String>,
    },
    /// Run a reduction gadget on instance files.
    Reduce {
        /// Gadget name; see `reduce --help` for the registry.
        #[arg(value_parser = parse_gadget)]
        gadget: Gadget,
        /// Input files in the gadget's order.
        inputs: Vec<PathBuf>,
        /// Output files, one per produced artifact; extension picks the
        /// format (.json, or csv/text otherwise).
        #[arg(short, long)]
        output: Vec<PathBuf>,
        /// The fixed right-hand side (fd_fixed_to_fd only).
        #[arg(long, value_name = "ATTR")]
        rhs: Option<String>,
    },
    /// Check a gadget's solution correspondence by exhaustive enumeration.
    /// Exit 0 = verified, 1 = mismatch found.
    Verify {
        #[arg(value_parser = parse_gadget)]
        gadget: Gadget,
        /// Instance files (same shapes as `reduce`); omit with --random.
        inputs: Vec<PathBuf>,
        /// Verify on this many seeded random instances instead of files.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        /// The fixed right-hand side (fd_fixed_to_fd only).
        #[arg(long, value_name = "ATTR")]
        rhs: Option<String>,
    },
    /// Brute-force enumeration (ground truth, bounded instance sizes).
    Oracle {
        kind: OracleKind,
        inputs: Vec<PathBuf>,
        /// Restrict to one right-hand side (fds only).
        #[arg(long, value_name = "ATTR")]
        rhs: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetectKind {
    Ucc,
    Fd,
    Ind,
    IndIdentity,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    /// Minimal transversals of a hypergraph.
    Transversals,
    /// Minimal unique column combinations of a table.
    Uccs,
    /// Minimal functional dependencies of a table.
    Fds,
    /// Maximal identity inclusion dependencies of a table pair.
    IndsIdentity,
    /// Maximal inclusion dependencies of a table pair.
    Inds,
    /// Maximal satisfying assignments of an antimonotone formula.
    Assignments,
}

fn parse_gadget(name: &str) -> std::result::Result<Gadget, String> {
    Gadget::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = Gadget::ALL.iter().map(|g| g.name()).collect();
        format!("unknown gadget '{name}'; known gadgets: {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let bounds = oracle_bounds(cli.oracle_bound);
    match &cli.command {
        Command::Profile {
            table,
            uccs,
            fds,
            fds_rhs,
            max_size,
        } => {
            if !uccs && !fds && fds_rhs.is_none() {
                bail!("nothing to profile: pass --uccs, --fds, or --fds-rhs <attr>");
            }
            let rel = load_relation(table)?;
            let fits = |len: usize| max_size.is_none_or(|k| len <= k);
            if *uccs {
                discovery::visit_minimal_uccs(&rel, &mut |set| {
                    if fits(set.len()) {
                        print_ucc(cli.format, &rel, set);
                    }
                    ControlFlow::Continue(())
                });
            }
            if *fds {
                discovery::visit_minimal_fds(&rel, &mut |fd| {
                    if fits(fd.lhs.len()) {
                        print_fd(cli.format, &rel, &fd.lhs, fd.rhs);
                    }
                    ControlFlow::Continue(())
                });
            }
            if let Some(attr) = fds_rhs {
                let rhs = attr_index(&rel, attr)?;
                discovery::visit_minimal_fds_fixed(&rel, rhs, &mut |fd| {
                    if fits(fd.lhs.len()) {
                        print_fd(cli.format, &rel, &fd.lhs, fd.rhs);
                    }
                    ControlFlow::Continue(())
                })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ProfileInd {
            left,
            right,
            identity,
            general,
        } => {
            if !identity && !general {
                bail!("pass --identity or --general");
            }
            let l = load_relation(left)?;
            let r = load_relation(right)?;
            if *identity {
                for set in discovery::maximal_inds_identity(&l, &r)? {
                    print_ind(cli.format, &l, &r, &Ind::identity(&set));
                }
            }
            if *general {
                for ind in discovery::maximal_inds(&l, &r)? {
                    print_ind(cli.format, &l, &r, &ind);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Detect { kind, inputs, k, rhs } => {
            let found = match kind {
                DetectKind::Ucc => {
                    let rel = load_one(inputs, "detect ucc needs one CSV table")?;
                    discovery::detect_ucc(&rel, *k)
                }
                DetectKind::Fd => {
                    let rel = load_one(inputs, "detect fd needs one CSV table")?;
                    match rhs {
                        Some(attr) => {
                            discovery::detect_fd_fixed(&rel, attr_index(&rel, attr)?, *k)?
                        }
                        None => discovery::detect_fd(&rel, *k),
                    }
                }
                DetectKind::Ind | DetectKind::IndIdentity => {
                    let (l, r) = load_two(inputs, "detect ind needs two CSV tables")?;
                    match kind {
                        DetectKind::IndIdentity => discovery::detect_ind_identity(&l, &r, *k)?,
                        _ => discovery::detect_ind(&l, &r, *k)?,
                    }
                }
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::json!({ "found": found })),
                Format::Text => println!("{}", if found { "found" } else { "not found" }),
            }
            Ok(if found {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Reduce {
            gadget,
            inputs,
            output,
            rhs,
        } => {
            let instance = load_instance(*gadget, inputs, rhs.as_deref())?;
            let result = gadget.apply(&instance)?;
            write_instance(&result, output, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            gadget,
            inputs,
            random,
            rhs,
        } => {
            let mut all_ok = true;
            if let Some(n) = random {
                for i in 0..*n as u64 {
                    let instance = random_gadget_instance(*gadget, cli.seed.wrapping_add(i));
                    let report = verify_gadget(*gadget, &instance, &bounds)?;
                    all_ok &= report.bijection_ok;
                    print_report(cli.format, &report);
                }
            } else {
                let instance = load_instance(*gadget, inputs, rhs.as_deref())?;
                let report = verify_gadget(*gadget, &instance, &bounds)?;
                all_ok = report.bijection_ok;
                print_report(cli.format, &report);
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle { kind, inputs, rhs } => {
            run_oracle(cli.format, &bounds, *kind, inputs, rhs.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn oracle_bounds(overridden: Option<usize>) -> OracleBounds {
    let mut bounds = OracleBounds::default();
    if let Some(b) = overridden {
        bounds.max_vertices = b;
        bounds.max_variables = b;
        bounds.max_attributes = b;
        bounds.max_rows = b;
    }
    bounds
}

// ---------------------------------------------------------------------------
// Instance IO
// ---------------------------------------------------------------------------

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

fn load_relation(path: &Path) -> Result<Relation> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    if is_json(path) {
        Ok(Relation::from_json_str(&text)?)
    } else {
        let load = Relation::from_csv_str(&text)?;
        if load.duplicate_rows > 0 {
            eprintln!(
                "warning: {} duplicate row(s) dropped from {}",
                load.duplicate_rows,
                path.display()
            );
        }
        Ok(load.relation)
    }
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    if is_json(path) {
        Ok(Hypergraph::from_json_str(&text)?)
    } else {
        Ok(Hypergraph::parse_text(&text)?)
    }
}

fn load_hypergraph_list(path: &Path) -> Result<Vec<Hypergraph>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_formula(path: &Path) -> Result<Formula> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    if is_json(path) {
        Ok(Formula::from_json_str(&text)?)
    } else {
        Ok(Formula::parse_text(&text)?)
    }
}

fn load_one(inputs: &[PathBuf], msg: &str) -> Result<Relation> {
    match inputs {
        [one] => load_relation(one),
        _ => bail!("{msg}"),
    }
}

fn load_two(inputs: &[PathBuf], msg: &str) -> Result<(Relation, Relation)> {
    match inputs {
        [a, b] => Ok((load_relation(a)?, load_relation(b)?)),
        _ => bail!("{msg}"),
    }
}

fn attr_index(rel: &Relation, name: &str) -> Result<u32> {
    rel.attr_index(name)
        .ok_or_else(|| anyhow!("unknown attribute '{name}'"))
}

/// Reads the input files for a gadget into a uniform instance.
fn load_instance(
    gadget: Gadget,
    inputs: &[PathBuf],
    rhs: Option<&str>,
) -> Result<reduce::Instance> {
    use reduce::Instance;
    let name = gadget.name();
    match gadget {
        Gadget::HsToUcc => match inputs {
            [h] => Ok(Instance::Hypergraph(load_hypergraph(h)?)),
            _ => bail!("{name} needs one hypergraph file"),
        },
        Gadget::UccToFdFixed | Gadget::FdToCnf | Gadget::DbToHypergraphUnion => match inputs {
            [r] => Ok(Instance::Relation(load_relation(r)?)),
            _ => bail!("{name} needs one table file"),
        },
        Gadget::FdFixedToFd => match inputs {
            [r] => {
                let relation = load_relation(r)?;
                let rhs = rhs.ok_or_else(|| anyhow!("{name} needs --rhs <attr>"))?;
                attr_index(&relation, rhs)?;
                Ok(Instance::RelationWithRhs {
                    relation,
                    rhs: rhs.to_string(),
                })
            }
            _ => bail!("{name} needs one table file and --rhs <attr>"),
        },
        Gadget::HypergraphUnionToDb => match inputs {
            [] => bail!("{name} needs hypergraph files or one JSON list"),
            [one] if is_json(one) => {
                match load_hypergraph_list(one) {
                    Ok(graphs) => Ok(Instance::HypergraphList(graphs)),
                    // A single JSON hypergraph object is also accepted.
                    Err(_) => Ok(Instance::HypergraphList(vec![load_hypergraph(one)?])),
                }
            }
            many => {
                let graphs: Result<Vec<Hypergraph>> =
                    many.iter().map(|p| load_hypergraph(p)).collect();
                Ok(Instance::HypergraphList(graphs?))
            }
        },
        Gadget::IndIdentityToGeneral | Gadget::IndToWa3ns => match inputs {
            [a, b] => Ok(Instance::RelationPair {
                left: load_relation(a)?,
                right: load_relation(b)?,
            }),
            _ => bail!("{name} needs two table files"),
        },
        Gadget::ConjoinDbPairs => match inputs {
            [a, b, c, d] => Ok(Instance::RelationQuad {
                left1: load_relation(a)?,
                right1: load_relation(b)?,
                left2: load_relation(c)?,
                right2: load_relation(d)?,
            }),
            _ => bail!("{name} needs four table files: left1 right1 left2 right2"),
        },
        Gadget::DnfToDbPair | Gadget::Wa3nsToIndIdentity => match inputs {
            [f] => Ok(Instance::Formula(load_formula(f)?)),
            _ => bail!("{name} needs one formula file"),
        },
    }
}

fn write_relation(rel: &Relation, path: &Path) -> Result<()> {
    let text = if is_json(path) {
        rel.to_json_string() + "\n"
    } else {
        rel.to_csv_string()
    };
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_hypergraph(h: &Hypergraph, path: &Path) -> Result<()> {
    let text = if is_json(path) {
        h.to_json_string() + "\n"
    } else {
        h.to_text()
    };
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_formula(phi: &Formula, path: &Path) -> Result<()> {
    let text = if is_json(path) {
        phi.to_json_string() + "\n"
    } else {
        phi.to_text() + "\n"
    };
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn want_outputs(outputs: &[PathBuf], n: usize, what: &str) -> Result<()> {
    if outputs.len() != n {
        bail!(
            "this gadget produces {what}; pass -o exactly {n} time(s), got {}",
            outputs.len()
        );
    }
    Ok(())
}

fn write_instance(result: &reduce::Instance, outputs: &[PathBuf], format: Format) -> Result<()> {
    use reduce::Instance;
    match result {
        Instance::Relation(rel) => {
            want_outputs(outputs, 1, "one table")?;
            write_relation(rel, &outputs[0])
        }
        Instance::RelationWithRhs { relation, rhs } => {
            want_outputs(outputs, 1, "one table (the fixed rhs is printed)")?;
            write_relation(relation, &outputs[0])?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct RhsLine<'a> {
                        kind: &'static str,
                        attr: &'a str,
                    }
                    let line = RhsLine { kind: "rhs", attr: rhs };
                    println!("{}", serde_json::to_string(&line).expect("serializes"));
                }
                Format::Text => println!("rhs: {rhs}"),
            }
            Ok(())
        }
        Instance::RelationPair { left, right } => {
            want_outputs(outputs, 2, "two tables")?;
            write_relation(left, &outputs[0])?;
            write_relation(right, &outputs[1])
        }
        Instance::Hypergraph(h) => {
            want_outputs(outputs, 1, "one hypergraph")?;
            write_hypergraph(h, &outputs[0])
        }
        Instance::HypergraphList(graphs) => {
            want_outputs(outputs, 1, "one JSON hypergraph list")?;
            let text = serde_json::to_string(graphs)? + "\n";
            fs::write(&outputs[0], text)
                .with_context(|| format!("writing {}", outputs[0].display()))
        }
        Instance::Formula(phi) => {
            want_outputs(outputs, 1, "one formula")?;
            write_formula(phi, &outputs[0])
        }
        Instance::RelationQuad { .. } => bail!("gadgets do not produce four tables"),
    }
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct UccLine {
    kind: &'static str,
    columns: Vec<String>,
}

#[derive(Serialize)]
struct FdLine {
    kind: &'static str,
    lhs: Vec<String>,
    rhs: String,
}

#[derive(Serialize)]
struct IndLine {
    kind: &'static str,
    lhs: Vec<String>,
    mapping: BTreeMap<String, String>,
}

fn print_ucc(format: Format, rel: &Relation, set: &AttrSet) {
    match format {
        Format::Json => {
            let line = UccLine {
                kind: "ucc",
                columns: rel.names_of(set),
            };
            println!("{}", serde_json::to_string(&line).expect("serializes"));
        }
        Format::Text => println!("ucc: {}", rel.names_of(set).join(", ")),
    }
}

fn print_fd(format: Format, rel: &Relation, lhs: &AttrSet, rhs: u32) {
    match format {
        Format::Json => {
            let line = FdLine {
                kind: "fd",
                lhs: rel.names_of(lhs),
                rhs: rel.attr_name(rhs).to_string(),
            };
            println!("{}", serde_json::to_string(&line).expect("serializes"));
        }
        Format::Text => println!(
            "fd: {} -> {}",
            rel.names_of(lhs).join(", "),
            rel.attr_name(rhs)
        ),
    }
}

fn print_ind(format: Format, left: &Relation, right: &Relation, ind: &Ind) {
    let mapping: BTreeMap<String, String> = ind
        .pairs()
        .iter()
        .map(|(&a, &b)| {
            (
                left.attr_name(a).to_string(),
                right.attr_name(b).to_string(),
            )
        })
        .collect();
    match format {
        Format::Json => {
            let line = IndLine {
                kind: "ind",
                lhs: left.names_of(&ind.lhs()),
                mapping,
            };
            println!("{}", serde_json::to_string(&line).expect("serializes"));
        }
        Format::Text => {
            let pairs: Vec<String> = mapping.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
            println!("ind: {}", pairs.join(", "));
        }
    }
}

fn print_report(format: Format, report: &VerificationReport) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(report).expect("reports serialize")
        ),
        Format::Text => {
            let status = if report.bijection_ok { "ok" } else { "FAILED" };
            println!(
                "{} {}: {status} ({} source / {} target solutions) digest={}",
                report.gadget,
                &report.instance_digest[..12],
                report.source_count,
                report.target_count,
                report.instance_digest,
            );
            if let Some(mismatch) = &report.mismatch {
                println!("  mismatch: {mismatch:?}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Oracle subcommand
// ---------------------------------------------------------------------------

fn run_oracle(
    format: Format,
    bounds: &OracleBounds,
    kind: OracleKind,
    inputs: &[PathBuf],
    rhs: Option<&str>,
) -> Result<()> {
    match kind {
        OracleKind::Transversals => {
            let h = match inputs {
                [one] => load_hypergraph(one)?,
                _ => bail!("oracle transversals needs one hypergraph file"),
            };
            for t in h.brute_force_minimal_transversals(bounds.max_vertices)? {
                match format {
                    Format::Json => {
                        #[derive(Serialize)]
                        struct TrLine {
                            kind: &'static str,
                            vertices: Vec<String>,
                        }
                        let line = TrLine {
                            kind: "transversal",
                            vertices: h.names_of(&t),
                        };
                        println!("{}", serde_json::to_string(&line).expect("serializes"));
                    }
                    Format::Text => println!("transversal: {}", h.names_of(&t).join(", ")),
                }
            }
        }
        OracleKind::Uccs => {
            let rel = load_one(inputs, "oracle uccs needs one CSV table")?;
            for set in oracle::minimal_uccs(&rel, bounds.max_attributes)? {
                print_ucc(format, &rel, &set);
            }
        }
        OracleKind::Fds => {
            let rel = load_one(inputs, "oracle fds needs one CSV table")?;
            match rhs {
                Some(attr) => {
                    let a = attr_index(&rel, attr)?;
                    for lhs in oracle::minimal_fd_lhs_fixed(&rel, a, bounds.max_attributes)? {
                        print_fd(format, &rel, &lhs, a);
                    }
                }
                None => {
                    for fd in oracle::minimal_fds(&rel, bounds.max_attributes)? {
                        print_fd(format, &rel, &fd.lhs, fd.rhs);
                    }
                }
            }
        }
        OracleKind::IndsIdentity => {
            let (l, r) = load_two(inputs, "oracle inds-identity needs two CSV tables")?;
            for set in oracle::maximal_identity_inds(&l, &r, bounds.max_attributes)? {
                print_ind(format, &l, &r, &Ind::identity(&set));
            }
        }
        OracleKind::Inds => {
            let (l, r) = load_two(inputs, "oracle inds needs two CSV tables")?;
            for ind in oracle::maximal_general_inds(&l, &r, bounds.max_attributes)? {
                print_ind(format, &l, &r, &ind);
            }
        }
        OracleKind::Assignments => {
            let phi = match inputs {
                [one] => load_formula(one)?,
                _ => bail!("oracle assignments needs one formula file"),
            };
            for a in oracle::maximal_satisfying_assignments(&phi, bounds.max_variables)? {
                match format {
                    Format::Json => {
                        #[derive(Serialize)]
                        struct AssignmentLine {
                            kind: &'static str,
                            #[serde(rename = "true")]
                            true_vars: Vec<String>,
                        }
                        let line = AssignmentLine {
                            kind: "assignment",
                            true_vars: phi.names_of(&a),
                        };
                        println!("{}", serde_json::to_string(&line).expect("serializes"));
                    }
                    Format::Text => println!("assignment: {}", phi.names_of(&a).join(", ")),
                }
            }
        }
    }
    Ok(())
}
