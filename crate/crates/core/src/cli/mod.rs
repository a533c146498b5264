//! Command-line front end. Every subcommand reads Cayley JSON, calls one
//! library routine and prints its result.
//!
//! Exit codes: 0 success, 1 a mathematical negative (law fails, no
//! isomorphism, tables differ, a claim fails), 2 usage or input errors.

mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{diff_tables, gbar_derived, gbar_table3, j_subband, limit_product, standard_g, tower_level};
use crate::decomposition::{
    check_band_decomposition, copy_intersection_audit, extension_block_decomposition, g_copy_partition, BandCheck,
    Partition,
};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::law::{check_variety, VarietySpec};
use crate::morphisms::{canonical_iso, classify_all_bijections, iso_search};
use crate::search::{brute_force_oracle, enumerate_models, ORACLE_MAX_ORDER};

pub use verify::{verify_claims, ClaimResult, Status, VerificationReport, CLAIMS};

/// Largest tower level `build` will materialize (order 4^5 = 1024).
pub const BUILD_MAX_LEVEL: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "agband", version, about = "Anti-rectangular AG-bands: build, check, compare and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Cayley table of a named groupoid
    Build {
        #[command(subcommand)]
        target: BuildTarget,
        #[arg(long, value_enum, global = true)]
        format: Option<Format>,
    },
    /// Check a groupoid against a preset variety or an inline identity
    Check {
        /// Cayley JSON file; stdin when omitted or "-"
        file: Option<PathBuf>,
        #[arg(long)]
        variety: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Find the least isomorphism (or anti-isomorphism) between two groupoids
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        anti: bool,
    },
    /// Classify every self-bijection as ISO, ANTI_ISO or NEITHER
    ClassifyBijections {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Build the isomorphism onto G_n one extension at a time
    CanonicalIso {
        file: Option<PathBuf>,
        /// 0-based element order, e.g. 3,1,2,0; natural order by default
        #[arg(long, value_delimiter = ',')]
        enumeration: Option<Vec<usize>>,
    },
    /// Band decompositions and copies of G
    Decompose {
        #[command(subcommand)]
        target: DecomposeTarget,
    },
    /// Count models of a variety at each order up to --max-order
    Spectrum {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        max_order: usize,
        /// Also count by naive sweep where feasible and compare
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Enumerate the models of a variety at one order
    Models {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        order: usize,
        /// Write each model and a summary.json into this directory
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// List the cells where two tables disagree
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Product of two elements of the countable band, by index
    LimitProduct { i: u64, j: u64 },
    /// Replay every published claim as a pass/fail checklist
    VerifyPaper {
        /// Run a single claim, e.g. corollary-2
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Subcommand, Debug)]
enum BuildTarget {
    /// The order-4 base groupoid
    G,
    /// Level n of the tower, order 4^n
    Gn {
        #[arg(long)]
        n: usize,
    },
    /// The order-16 cancellative AG-band that is not anti-rectangular
    Gbar {
        /// The transcribed table instead of the derived one
        #[arg(long)]
        from_table3: bool,
    },
    /// The proper sub-band <a, x1, ..., xn> of G_{n+1}
    J {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DecomposeTarget {
    /// Check that a partition is a band decomposition and print its quotient
    Blocks {
        file: Option<PathBuf>,
        /// JSON list of blocks of 0-based indices, e.g. '[[0,1],[2,3]]'
        #[arg(long)]
        partition: String,
    },
    /// Partition an anti-rectangular AG-band into disjoint copies of G
    Gcopies { file: Option<PathBuf> },
    /// The four extension blocks of G_n with their quotient
    Extension {
        #[arg(long)]
        n: usize,
    },
    /// How the copies of G inside a groupoid intersect
    Audit { file: Option<PathBuf> },
}

/// Caps the global rayon pool at `AGBAND_THREADS` workers when set.
pub fn init_threads_from_env() -> Result<()> {
    let Ok(raw) = std::env::var("AGBAND_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Argument(format!("AGBAND_THREADS must be a positive integer, got {raw:?}")))?;
    // A pool already installed (by an embedding program) wins.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let mut io = Io { stdin, out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        // The reader went away (e.g. `| head`); nothing left to report to.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            match e {
                Error::Precondition(_) | Error::Closure { .. } | Error::InvariantViolation(_) => 1,
                _ => 2,
            }
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_groupoid(&mut self, path: Option<&Path>) -> Result<FiniteGroupoid> {
        let src = match path {
            Some(p) if p != Path::new("-") => fs::read_to_string(p)
                .map_err(|e| Error::Argument(format!("cannot read {}: {e}", p.display())))?,
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                s
            }
        };
        FiniteGroupoid::from_json(&src)
    }

    fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<()> {
        let text = serde_json::to_string_pretty(value)?;
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    fn groupoid(&mut self, g: &FiniteGroupoid, format: Option<Format>) -> Result<()> {
        match format.unwrap_or(Format::Json) {
            Format::Json => writeln!(self.out, "{}", g.to_json())?,
            Format::Text => write!(self.out, "{}", g.render_text("*"))?,
        }
        Ok(())
    }
}

fn bounded_level(n: usize, max: usize) -> Result<usize> {
    if n > max {
        return Err(Error::Resource(format!("level {n} exceeds the build limit of {max}")));
    }
    Ok(n)
}

fn dispatch(command: Command, io: &mut Io) -> Result<i32> {
    match command {
        Command::Build { target, format } => {
            let g = match target {
                BuildTarget::G => standard_g(),
                BuildTarget::Gn { n } => tower_level(bounded_level(n, BUILD_MAX_LEVEL)?),
                BuildTarget::Gbar { from_table3: false } => gbar_derived(),
                BuildTarget::Gbar { from_table3: true } => gbar_table3(),
                BuildTarget::J { n } => j_subband(bounded_level(n, BUILD_MAX_LEVEL - 1)?)?,
            };
            io.groupoid(&g, format)?;
            Ok(0)
        }
        Command::Check { file, variety, format } => {
            let v = VarietySpec::resolve(&variety)?;
            let g = io.read_groupoid(file.as_deref())?;
            let report = check_variety(&g, &v);
            if format == Some(Format::Json) {
                io.json(&report)?;
            } else {
                for r in &report.results {
                    match &r.counterexample {
                        None => writeln!(io.out, "holds  {}", r.identity)?,
                        Some(env) => {
                            let env: Vec<String> =
                                env.iter().map(|(v, e)| format!("{v}={}", g.label(*e))).collect();
                            writeln!(io.out, "FAILS  {}  at {}", r.identity, env.join(" "))?;
                        }
                    }
                }
            }
            Ok(if report.holds() { 0 } else { 1 })
        }
        Command::Iso { a, b, anti } => {
            let src = io.read_groupoid(Some(&a))?;
            let dst = io.read_groupoid(Some(&b))?;
            match iso_search(&src, &dst, anti) {
                Some(m) => {
                    io.json(&m)?;
                    Ok(0)
                }
                None => {
                    writeln!(io.out, "NOT_FOUND")?;
                    Ok(1)
                }
            }
        }
        Command::ClassifyBijections { file, format } => {
            let g = io.read_groupoid(file.as_deref())?;
            let census = classify_all_bijections(&g)?;
            match format.unwrap_or(Format::Text) {
                Format::Json => io.json(&census)?,
                Format::Text => write!(io.out, "{}", census.render_text())?,
            }
            Ok(0)
        }
        Command::CanonicalIso { file, enumeration } => {
            let k = io.read_groupoid(file.as_deref())?;
            let enumeration = enumeration.unwrap_or_else(|| (0..k.order()).collect());
            io.json(&canonical_iso(&k, &enumeration)?)?;
            Ok(0)
        }
        Command::Decompose { target } => decompose(target, io),
        Command::Spectrum { variety, max_order, oracle, format } => spectrum(&variety, max_order, oracle, format, io),
        Command::Models { variety, order, emit, limit } => {
            let v = VarietySpec::resolve(&variety)?;
            let outcome = enumerate_models(order, &v, limit)?;
            if let Some(dir) = emit {
                fs::create_dir_all(&dir)?;
                for (k, m) in outcome.models.iter().enumerate() {
                    fs::write(dir.join(format!("model-{order}-{k}.json")), m.to_json() + "\n")?;
                }
                let summary = Summary::from(&outcome);
                fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
                io.json(&summary)?;
            } else {
                io.json(&outcome)?;
            }
            Ok(0)
        }
        Command::Diff { a, b, format } => {
            let left = io.read_groupoid(Some(&a))?;
            let right = io.read_groupoid(Some(&b))?;
            let diffs = diff_tables(&left, &right)?;
            if format == Some(Format::Json) {
                io.json(&diffs)?;
            } else {
                for d in &diffs {
                    writeln!(io.out, "row {} col {}: {} vs {}", d.row, d.col, d.left, d.right)?;
                }
                writeln!(io.out, "{} differing cells", diffs.len())?;
            }
            Ok(if diffs.is_empty() { 0 } else { 1 })
        }
        Command::LimitProduct { i, j } => {
            writeln!(io.out, "{}", limit_product(i, j))?;
            Ok(0)
        }
        Command::VerifyPaper { only, format } => {
            let report = verify_claims(only.as_deref())?;
            match format.unwrap_or(Format::Text) {
                Format::Json => io.json(&report)?,
                Format::Text => write!(io.out, "{}", report.render_text())?,
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn decompose(target: DecomposeTarget, io: &mut Io) -> Result<i32> {
    match target {
        DecomposeTarget::Blocks { file, partition } => {
            let g = io.read_groupoid(file.as_deref())?;
            let blocks: Vec<Vec<usize>> = serde_json::from_str(&partition)
                .map_err(|e| Error::Argument(format!("--partition is not a JSON list of lists: {e}")))?;
            match check_band_decomposition(&g, &Partition::new(g.order(), blocks)?)? {
                BandCheck::Band(d) => {
                    io.json(&d)?;
                    Ok(0)
                }
                BandCheck::Mixed(w) => {
                    io.json(&w)?;
                    writeln!(
                        io.err,
                        "not a band decomposition: {}*{} and {}*{} land in different blocks",
                        w.u, w.v, w.u2, w.v2
                    )?;
                    Ok(1)
                }
            }
        }
        DecomposeTarget::Gcopies { file } => {
            let g = io.read_groupoid(file.as_deref())?;
            let p = g_copy_partition(&g)?;
            io.json(&serde_json::json!({ "partition": p }))?;
            Ok(0)
        }
        DecomposeTarget::Extension { n } => {
            io.json(&extension_block_decomposition(bounded_level(n, BUILD_MAX_LEVEL - 1)?)?)?;
            Ok(0)
        }
        DecomposeTarget::Audit { file } => {
            let g = io.read_groupoid(file.as_deref())?;
            let audit = copy_intersection_audit(&g)?;
            io.json(&audit)?;
            Ok(if audit.trichotomy_holds { 0 } else { 1 })
        }
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    order: usize,
    variety: &'a str,
    canonical: bool,
    exhaustive: bool,
    count: usize,
    stats: &'a crate::search::SearchStats,
}

impl<'a> From<&'a crate::search::SearchOutcome> for Summary<'a> {
    fn from(o: &'a crate::search::SearchOutcome) -> Self {
        Summary {
            order: o.order,
            variety: &o.variety,
            canonical: o.canonical,
            exhaustive: o.exhaustive,
            count: o.count,
            stats: &o.stats,
        }
    }
}

#[derive(Serialize)]
struct SpectrumRow<'a> {
    #[serde(flatten)]
    summary: Summary<'a>,
    oracle: Option<usize>,
}

fn spectrum(variety: &str, max_order: usize, oracle: bool, format: Option<Format>, io: &mut Io) -> Result<i32> {
    let v = VarietySpec::resolve(variety)?;
    if max_order == 0 {
        return Err(Error::Argument("--max-order must be at least 1".into()));
    }
    if max_order > crate::groupoid::CANONICAL_MAX_ORDER {
        return Err(Error::Resource(format!(
            "spectrum counts isomorphism classes, which needs --max-order at most {}",
            crate::groupoid::CANONICAL_MAX_ORDER
        )));
    }
    let outcomes = (1..=max_order)
        .map(|k| enumerate_models(k, &v, None))
        .collect::<Result<Vec<_>>>()?;
    let mut mismatch = false;
    let mut rows = Vec::new();
    for o in &outcomes {
        let reachable = o.order < ORACLE_MAX_ORDER || (o.order == ORACLE_MAX_ORDER && v.is_idempotent());
        let naive = if oracle && reachable { Some(brute_force_oracle(o.order, &v)?) } else { None };
        mismatch |= naive.is_some_and(|c| c != o.count);
        rows.push(SpectrumRow { summary: Summary::from(o), oracle: naive });
    }
    match format.unwrap_or(Format::Json) {
        Format::Json => io.json(&rows)?,
        Format::Text => {
            writeln!(io.out, "order  count  oracle  nodes  ms")?;
            for r in &rows {
                let s = &r.summary;
                let naive = r.oracle.map_or("-".to_string(), |c| c.to_string());
                writeln!(
                    io.out,
                    "{:>5}  {:>5}  {:>6}  {:>5}  {:.1}",
                    s.order,
                    s.count,
                    naive,
                    s.stats.nodes,
                    s.stats.wall_time.as_secs_f64() * 1e3
                )?;
            }
        }
    }
    if mismatch {
        writeln!(io.err, "search and naive sweep disagree")?;
        return Ok(1);
    }
    Ok(0)
}
