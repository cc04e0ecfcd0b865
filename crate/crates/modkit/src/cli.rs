//! The `mdk` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};
use modkit_core::catalog;
use modkit_core::explorer::{self, ExplorerError};
use modkit_core::mdata::{self, ModularDatum};
use modkit_core::verify::{self, VerifyError};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report;
use crate::{cache, datum_file, explore};

#[derive(Debug, Parser)]
#[command(name = "mdk", version, about = "Exact checks on modular data")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Check several data, or search enumeration partitions, on all cores.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the seven admissibility conditions.
    Check {
        /// Catalog names or datum files.
        #[arg(required_unless_present = "all")]
        targets: Vec<String>,
        /// Check every catalog entry.
        #[arg(long, conflicts_with = "targets")]
        all: bool,
    },
    /// Compare the prime supports of D^2 and ord(T).
    Cauchy { target: String },
    /// Print the fusion rules given by the Verlinde formula.
    Fusion { target: String },
    /// Print the n-th Frobenius-Schur indicators.
    Indicators {
        target: String,
        #[arg(long)]
        n: u64,
    },
    /// Check the congruences at every prime q <= qmax coprime to ord(T).
    Congruences {
        target: String,
        #[arg(long, default_value_t = 13)]
        qmax: u64,
    },
    /// Build the normalized modular pair and check its relations.
    NormalizedPair { target: String },
    /// Print the rank bounds on ord(T) and on the solution count.
    Bounds {
        #[arg(long)]
        rank: usize,
    },
    /// Solve D^2 = 1 + d_1^2 + ... in smooth integers, one JSON line each.
    Enumerate {
        #[arg(long)]
        rank: usize,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        max_exp: u32,
        /// Stop after examining this many candidate tuples.
        #[arg(long, default_value_t = 100_000_000)]
        cap: u64,
    },
    /// List the built-in data, or dump one as a datum file.
    Catalog { name: Option<String> },
}

/// Input problems exit with 2, failed verification with 1.
enum Failure {
    Usage(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verify(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<mdata::MdataError> for Failure {
    fn from(e: mdata::MdataError) -> Self {
        Failure::Verify(e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::NotPrime(_) | VerifyError::DividesTOrder { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Verify(e.to_string()),
        }
    }
}

impl From<ExplorerError> for Failure {
    fn from(e: ExplorerError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// A catalog name, or else a path to a datum file.
pub fn resolve(target: &str) -> Result<ModularDatum, String> {
    if let Some(e) = catalog::builtin(target) {
        return Ok(e.datum);
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(format!(
            "{target}: not a catalog entry ({}) or an existing file",
            catalog::builtin_names().join(", ")
        ));
    }
    datum_file::load_datum(path).map_err(|e| format!("{target}: {e}"))
}

fn load(target: &str) -> Result<ModularDatum, Failure> {
    resolve(target).map_err(Failure::Usage)
}

fn emit(out: &mut dyn Write, json: bool, value: Value, text: String) {
    let _ = if json {
        writeln!(out, "{value}")
    } else {
        write!(out, "{text}")
    };
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let cache_dir = cache::cache_dir_from_env();
    if let Some(dir) = &cache_dir {
        match cache::load(dir) {
            Ok(stats) if stats.rejected > 0 => {
                let _ = writeln!(
                    err,
                    "warning: ignored {} invalid cache entries in {}",
                    stats.rejected,
                    dir.display()
                );
            }
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(err, "warning: cannot read cache {}: {e}", dir.display());
            }
        }
    }
    let code = match execute(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    };
    if let Some(dir) = &cache_dir {
        if let Err(e) = cache::save(dir) {
            let _ = writeln!(err, "warning: cannot write cache {}: {e}", dir.display());
        }
    }
    code
}

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Check { targets, all } => {
            let data: Vec<ModularDatum> = if *all {
                catalog::builtin_catalog()
                    .into_iter()
                    .map(|e| e.datum)
                    .collect()
            } else {
                targets.iter().map(|t| load(t)).collect::<Result<_, _>>()?
            };
            let reports: Vec<_> = if cli.parallel {
                data.par_iter().map(verify::check_admissible).collect()
            } else {
                data.iter().map(verify::check_admissible).collect()
            };
            for r in &reports {
                emit(
                    out,
                    json,
                    report::admissibility_json(r),
                    report::admissibility_human(r),
                );
            }
            Ok(verdict(reports.iter().all(|r| r.passed())))
        }
        Command::Cauchy { target } => {
            let md = load(target)?;
            let c = verify::cauchy_check(&md)?;
            emit(
                out,
                json,
                report::cauchy_json(md.name(), &c),
                report::cauchy_human(md.name(), &c),
            );
            Ok(verdict(c.passed))
        }
        Command::Fusion { target } => {
            let md = load(target)?;
            let fr = mdata::verlinde_fusion(&md)?;
            emit(
                out,
                json,
                report::fusion_json(md.name(), &fr),
                report::fusion_human(md.name(), &fr),
            );
            Ok(0)
        }
        Command::Indicators { target, n } => {
            if *n == 0 {
                return Err(Failure::Usage(String::from("--n must be positive")));
            }
            let md = load(target)?;
            let fr = mdata::verlinde_fusion(&md)?;
            let nu = mdata::fs_indicators(&md, &fr, *n)?;
            emit(
                out,
                json,
                report::indicators_json(md.name(), *n, &nu),
                report::indicators_human(md.name(), *n, &nu),
            );
            Ok(0)
        }
        Command::Congruences { target, qmax } => {
            let md = load(target)?;
            let suite = verify::congruence_suite(&md, *qmax)?;
            emit(
                out,
                json,
                report::congruences_json(md.name(), *qmax, &suite),
                report::congruences_human(md.name(), *qmax, &suite),
            );
            Ok(verdict(suite.passed()))
        }
        Command::NormalizedPair { target } => {
            let md = load(target)?;
            let fr = mdata::verlinde_fusion(&md)?;
            let pair = mdata::normalized_pair(&md)?;
            let rel = mdata::pair_relations(&md, &fr, &pair);
            let data = mdata::galois_data_with(&md, &pair)?;
            let violation = mdata::galois_symmetry_violation(&md, &pair, &data)?;
            emit(
                out,
                json,
                report::pair_json(md.name(), &pair, &rel, violation),
                report::pair_human(md.name(), &pair, &rel, violation),
            );
            Ok(verdict(rel.all() && violation.is_none()))
        }
        Command::Bounds { rank } => {
            if *rank == 0 {
                return Err(Failure::Usage(String::from("--rank must be at least 1")));
            }
            bounds(*rank, json, out);
            Ok(0)
        }
        Command::Enumerate {
            rank,
            primes,
            max_exp,
            cap,
        } => {
            let res = explore::enumerate(*rank, primes, *max_exp, *cap, cli.parallel)?;
            for s in &res.solutions {
                let _ = writeln!(out, "{}", explore::json_line(s));
            }
            if res.partial {
                let _ = writeln!(
                    err,
                    "warning: stopped after {} candidates (--cap); the list is partial",
                    res.examined
                );
            }
            Ok(0)
        }
        Command::Catalog { name } => {
            match name {
                None => list_catalog(json, out),
                Some(n) => {
                    let e = catalog::builtin(n).ok_or_else(|| {
                        Failure::Usage(format!(
                            "{n}: not a catalog entry ({})",
                            catalog::builtin_names().join(", ")
                        ))
                    })?;
                    let _ = write!(out, "{}", datum_file::render_datum(&e.datum));
                }
            }
            Ok(0)
        }
    }
}

fn bounds(rank: usize, json: bool, out: &mut dyn Write) {
    let ord = explorer::ord_t_bound(rank);
    let ev = explorer::evertse_bound(rank);
    let ev_json = match &ev {
        Ok(m) => json!({
            "log2": m.log2,
            "decimal_digits": m.decimal_digits,
            "exact": m.exact.as_ref().map(|x| x.to_string()),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let ev_text = match &ev {
        Ok(m) => match &m.exact {
            Some(x) => x.to_string(),
            None => format!(
                "2^({}) (about {} decimal digits)",
                report::decimal15(m.log2),
                report::decimal15(m.decimal_digits.ceil())
            ),
        },
        Err(e) => format!("not evaluated: {e}"),
    };
    emit(
        out,
        json,
        json!({ "rank": rank, "ord_t_bound": ord.to_string(), "evertse_bound": ev_json }),
        format!("rank {rank}\n  ord(T) bound: {ord}\n  solution count bound: {ev_text}\n"),
    );
}

fn list_catalog(json: bool, out: &mut dyn Write) {
    let entries = catalog::builtin_catalog();
    if json {
        let list: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "name": e.datum.name(),
                    "rank": e.datum.rank(),
                    "conductor": e.datum.conductor(),
                    "D2": report::cyc_json(&e.global_dim),
                    "t_order": e.t_order,
                    "invertibles": e.invertibles,
                    "note": e.note,
                })
            })
            .collect();
        let _ = writeln!(out, "{}", Value::Array(list));
        return;
    }
    let _ = writeln!(
        out,
        "{:<14} {:>4} {:>9} {:>6}  D^2",
        "name", "rank", "conductor", "ord(T)"
    );
    for e in &entries {
        let _ = writeln!(
            out,
            "{:<14} {:>4} {:>9} {:>6}  {}",
            e.datum.name(),
            e.datum.rank(),
            e.datum.conductor(),
            e.t_order,
            report::human(&e.global_dim)
        );
    }
}
