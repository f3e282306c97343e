//! The `crossmap` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget or overflow,
//! 4 network.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::arcs::{arcs_classical, arcs_enhanced, Mode};
use crate::bijection::{forward, reverse, witness_forward, witness_reverse};
use crate::counting::{
    distribution_table, verify_eigensequence, verify_identity, CountOptions, Family,
    IdentityReport, SequenceTable, DEFAULT_CAP,
};
use crate::crossing::{count_k_witnesses, find_witness, Kind};
use crate::diagram::{render_overlay, Style};
use crate::error::Error;
use crate::oeis::{self, FetchConfig};
use crate::partition::{enumerate_full, enumerate_partial, PartialPartition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NETWORK: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "crossmap",
    version,
    about = "Set partitions, k-crossings and the subset-partition bijection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Budget {
    /// Largest ground-set size that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Number of enumeration ranges counted in parallel.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    parts: u32,
}

impl Budget {
    fn options(&self) -> CountOptions {
        CountOptions {
            cap: self.cap,
            parts: self.parts as usize,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List partitions of [n] (or of subsets of [n]) in text form.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Include partitions of proper subsets.
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Count partitions of [n] avoiding k-crossings.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// C, E, Bell or partial-E.
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check C_k(n+1) = sum_i binom(n,i) E_k(i) for n = 0..=n-max.
    VerifyIdentity {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Apply the bijection (or its inverse) to one partition.
    Map {
        /// Partition text, e.g. "9:1,4,7,9/2,5/3/6".
        #[arg(long)]
        input: String,
        #[arg(long)]
        reverse: bool,
        /// Also print crossing/nesting witness transport for k = 1..=K.
        #[arg(long)]
        witnesses: Option<usize>,
    },
    /// Draw the overlay of a partition's arcs and its image's arcs as SVG.
    Render {
        #[arg(long)]
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "#000000")]
        pi_color: String,
        #[arg(long, default_value = "#1f5fa8")]
        pihat_color: String,
    },
    /// Compare computed counts with an OEIS sequence.
    OeisCheck {
        #[arg(long)]
        id: String,
        /// Download the b-file instead of using the bundled snapshot.
        #[arg(long)]
        fetch: bool,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[arg(long, default_value = oeis::DEFAULT_BASE_URL)]
        base_url: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check B_{n+1} = sum_i binom(n,i) B_i three ways for n = 0..=n-max.
    BellCheck {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Tabulate a sequence family as CSV or JSON.
    Table {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
        format: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Distribution of maximum crossing/nesting numbers on both sides of the bijection.
    Distribution {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: Budget,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OutOfBudget { .. }
        | Error::Overflow(_)
        | Error::TooLargeN(_)
        | Error::TooLarge(_)
        | Error::TooManyArcs(_) => EXIT_BUDGET,
        Error::Network(_) => EXIT_NETWORK,
        Error::BFileParse { .. } | Error::NoOverlap | Error::Io(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Enumerate { n, partial, limit } => {
            let iter: Box<dyn Iterator<Item = PartialPartition>> = if partial {
                Box::new(enumerate_partial(n)?)
            } else {
                Box::new(enumerate_full(n)?)
            };
            for p in iter.take(limit.unwrap_or(usize::MAX)) {
                writeln!(out, "{p}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Count {
            k,
            n,
            family,
            budget,
        } => {
            let value = family.value(k, n, &budget.options())?;
            writeln!(out, "{value}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::VerifyIdentity {
            k,
            n_max,
            json,
            budget,
            inject_fault,
        } => {
            let opts = CountOptions {
                inject_fault,
                ..budget.options()
            };
            let reports = (0..=n_max)
                .map(|n| verify_identity(k, n, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            emit_reports(out, &reports, json, |r| {
                format!(
                    "k={} n={} C_{}({})={} sum={} terms={:?} direct={}",
                    k,
                    r.n,
                    k,
                    r.n + 1,
                    r.lhs,
                    r.rhs,
                    r.rhs_terms,
                    r.routes[0].value
                )
            })
        }
        Command::BellCheck {
            n_max,
            json,
            budget,
            inject_fault,
        } => {
            let opts = CountOptions {
                inject_fault,
                ..budget.options()
            };
            let reports = (0..=n_max)
                .map(|n| verify_eigensequence(n, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            emit_reports(out, &reports, json, |r| {
                let routes: Vec<String> = r
                    .routes
                    .iter()
                    .map(|x| format!("{}={}", x.name, x.value))
                    .collect();
                format!(
                    "n={} B_{}={} sum={} {}",
                    r.n,
                    r.n + 1,
                    r.lhs,
                    r.rhs,
                    routes.join(" ")
                )
            })
        }
        Command::Map {
            input,
            reverse: rev,
            witnesses,
        } => {
            let p: PartialPartition = input.parse()?;
            let (src, img) = if rev {
                (reverse(&p)?, p)
            } else {
                let q = forward(&p)?;
                (p, q)
            };
            writeln!(out, "{}", if rev { &src } else { &img }).map_err(io)?;
            if let Some(k_max) = witnesses {
                write_transport(out, &src, &img, k_max)?;
            }
            Ok(EXIT_OK)
        }
        Command::Render {
            input,
            out: path,
            pi_color,
            pihat_color,
        } => {
            let p: PartialPartition = input.parse()?;
            let svg = render_overlay(
                &p,
                &Style {
                    source_color: pi_color,
                    image_color: pihat_color,
                },
            )?;
            match path {
                Some(path) => fs::write(&path, svg)?,
                None => out.write_all(svg.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::OeisCheck {
            id,
            fetch,
            terms,
            base_url,
            budget,
        } => {
            let (family, k) = oeis::family_of(&id).ok_or_else(|| Error::UnknownId(id.clone()))?;
            let reference = if fetch {
                let cfg = FetchConfig {
                    base_url,
                    ..FetchConfig::default()
                };
                oeis::fetch_bfile(&id, terms, &cfg)?
            } else {
                oeis::bundled(&id)?
            };
            let first = usize::try_from(reference.offset.max(0)).unwrap_or(0);
            let last = first + terms.min(reference.values.len()).saturating_sub(1);
            let mut table = SequenceTable::default();
            let opts = budget.options();
            for n in first..=last {
                let value = family.value(k.unwrap_or(0), n, &opts)?;
                table.insert(crate::counting::SequenceRow {
                    family,
                    k,
                    n,
                    value,
                });
            }
            let diff = oeis::compare(&table, &reference, family, k)?;
            if diff.is_clean() {
                writeln!(out, "OK ({} terms compared)", diff.compared).map_err(io)?;
                Ok(EXIT_OK)
            } else {
                for m in &diff.mismatches {
                    writeln!(
                        out,
                        "MISMATCH n={} computed={} reference={}",
                        m.n, m.computed, m.reference
                    )
                    .map_err(io)?;
                }
                writeln!(
                    out,
                    "FAIL ({} of {} terms differ)",
                    diff.mismatches.len(),
                    diff.compared
                )
                .map_err(io)?;
                Ok(EXIT_FAIL)
            }
        }
        Command::Table {
            family,
            k,
            n_max,
            format,
            budget,
        } => {
            let t = SequenceTable::compute(family, k, n_max, &budget.options())?;
            let text = if format == "json" {
                t.to_json() + "\n"
            } else {
                t.to_csv()
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Distribution {
            n,
            k_max,
            json,
            budget,
        } => {
            let t = distribution_table(n, k_max, &budget.options())?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&t).expect("table serializes")
                )
                .map_err(io)?;
            } else {
                writeln!(out, "kind,k,partial_enhanced,full_classical").map_err(io)?;
                for r in &t.rows {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        r.kind, r.k, r.partial_enhanced, r.full_classical
                    )
                    .map_err(io)?;
                }
            }
            Ok(if t.columns_match() {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
    }
}

fn emit_reports(
    out: &mut dyn Write,
    reports: &[IdentityReport],
    json: bool,
    line: impl Fn(&IdentityReport) -> String,
) -> CmdResult {
    let all = reports.iter().all(IdentityReport::all_agree);
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(reports).expect("reports serialize")
        )
        .map_err(io)?;
    } else {
        for r in reports {
            let verdict = if r.all_agree() { "OK" } else { "FAIL" };
            writeln!(out, "{} {verdict}", line(r)).map_err(io)?;
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_FAIL })
}

fn write_transport(
    out: &mut dyn Write,
    src: &PartialPartition,
    img: &PartialPartition,
    k_max: usize,
) -> Result<(), Error> {
    let e = arcs_enhanced(src);
    let c = arcs_classical(img);
    writeln!(out, "kind,k,enhanced_source,classical_image").map_err(io)?;
    for kind in [Kind::Crossing, Kind::Nesting] {
        for k in 1..=k_max {
            let a = count_k_witnesses(&e, k, kind, Mode::Enhanced)?;
            let b = count_k_witnesses(&c, k, kind, Mode::Classical)?;
            writeln!(out, "{kind},{k},{a},{b}").map_err(io)?;
        }
    }
    for kind in [Kind::Crossing, Kind::Nesting] {
        for k in 1..=k_max {
            if let Some(w) = find_witness(&e, k, kind, Mode::Enhanced)? {
                let image = witness_forward(&w).expect("enhanced witness");
                debug_assert_eq!(witness_reverse(&image).as_ref(), Some(&w));
                writeln!(
                    out,
                    "{} -> {}",
                    serde_json::to_string(&w).expect("witness serializes"),
                    serde_json::to_string(&image).expect("witness serializes")
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}
