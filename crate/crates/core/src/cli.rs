//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::corpus::{check_all, load_dir};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::group::{abelianization, count_colorings, wirtinger};
use crate::invariants::report;
use crate::moves::{search_equivalent, Budget, Verdict};
use crate::resolve::{state_rows_tsv, StateSumOptions};
use crate::skein::P_invariant;

#[derive(Parser, Debug)]
#[command(name = "knotoid", version, about = "Knotoid diagrams and their invariants")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse a PD file and describe the diagram.
    Validate { file: PathBuf },
    /// Bracket polynomials, spans, complexity and related data.
    Invariants {
        file: PathBuf,
        /// Also print one row per state.
        #[arg(long)]
        tsv_states: bool,
        #[arg(long)]
        allow_large_statesum: bool,
    },
    /// Bounded Reidemeister search between two diagrams.
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        max_crossings: Option<usize>,
        #[arg(long)]
        max_nodes: Option<usize>,
    },
    /// Close the segment along its shortcut.
    Closure {
        file: PathBuf,
        /// Run the shortcut over the diagram instead of under it.
        #[arg(long)]
        over: bool,
    },
    /// Wirtinger presentation, abelianization and coloring counts.
    Group {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        colorings: u64,
    },
    /// Skein invariant in the annulus algebra.
    Homfly { file: PathBuf },
    /// Check every `*.pd` file of a directory against its expectations.
    Corpus { dir: PathBuf },
}

fn load(path: &Path) -> Result<Diagram> {
    std::fs::read_to_string(path)?.parse()
}

fn emit(out: &mut dyn Write, v: serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
    Ok(())
}

/// Runs the CLI, writing results to `out`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let d = load(file)?;
            if cli.json {
                let mut v = d.to_json();
                v["canonical_code"] = json!(d.canonical_code());
                emit(out, v)?;
            } else {
                writeln!(out, "vertices   {}", d.num_vertices())?;
                writeln!(out, "edges      {}", d.num_edges())?;
                writeln!(out, "faces      {}", d.num_faces())?;
                writeln!(out, "crossings  {}", d.crossing_count())?;
                writeln!(out, "components {}", d.components().len())?;
                let surface = match d.outer_face() {
                    Some(f) => format!("plane (outer face {f})"),
                    None => "sphere".into(),
                };
                writeln!(out, "surface    {surface}")?;
                writeln!(out, "code       {}", d.canonical_code())?;
            }
        }
        Cmd::Invariants { file, tsv_states, allow_large_statesum } => {
            let d = load(file)?;
            let opts = StateSumOptions { allow_large: *allow_large_statesum };
            let r = report(&d, opts)?;
            if cli.json {
                emit(out, serde_json::to_value(&r).expect("json"))?;
            } else {
                let v = serde_json::to_value(&r).expect("json");
                for (k, x) in v.as_object().unwrap() {
                    let s = x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string());
                    writeln!(out, "{k:<22} {s}")?;
                }
            }
            if *tsv_states {
                let a = if d.is_knotoid() { Some(d.shortcut()?) } else { None };
                write!(out, "{}", state_rows_tsv(&d, a.as_ref(), opts)?)?;
            }
        }
        Cmd::Equiv { file1, file2, max_crossings, max_nodes } => {
            let (mut d1, mut d2) = (load(file1)?, load(file2)?);
            let mut note = None;
            if d1.surface().is_plane() != d2.surface().is_plane() {
                d1 = d1.on_sphere();
                d2 = d2.on_sphere();
                note = Some("surfaces differ; compared on the sphere");
            }
            let mut budget = Budget::default_for(&d1, &d2);
            if let Some(k) = max_crossings {
                budget.max_crossings = *k;
            }
            if let Some(n) = max_nodes {
                budget.max_nodes = *n;
            }
            let verdict = search_equivalent(&d1, &d2, budget);
            if cli.json {
                let mut v = serde_json::to_value(&verdict).expect("json");
                v["budget"] = serde_json::to_value(budget).expect("json");
                if let Some(n) = note {
                    v["note"] = json!(n);
                }
                emit(out, v)?;
            } else {
                if let Some(n) = note {
                    writeln!(out, "note: {n}")?;
                }
                match &verdict {
                    Verdict::Equivalent { path } => {
                        writeln!(out, "Equivalent ({} moves)", path.len())?;
                        for m in path {
                            writeln!(out, "  {}", serde_json::to_string(m).expect("json"))?;
                        }
                    }
                    Verdict::Distinct { invariant, left, right } => {
                        writeln!(out, "Distinct: {invariant} differs")?;
                        writeln!(out, "  {left}")?;
                        writeln!(out, "  {right}")?;
                    }
                    Verdict::Inconclusive { explored } => writeln!(out, "Inconclusive after {explored} diagrams")?,
                }
            }
        }
        Cmd::Closure { file, over } => {
            let d = load(file)?;
            let c = if *over { d.closure_over()? } else { d.closure_under()? };
            if cli.json {
                emit(out, json!({ "pd": c.to_pd(), "normalized_bracket": crate::invariants::normalized_bracket(&c)?.to_string() }))?;
            } else {
                write!(out, "{}", c.to_pd())?;
            }
        }
        Cmd::Group { file, colorings } => {
            let d = load(file)?;
            if *colorings < 2 {
                return Err(Error::Syntax { line: 0, msg: "coloring modulus must be at least 2".into() });
            }
            let p = wirtinger(&d)?;
            let ab = abelianization(&p);
            let count = count_colorings(&p, *colorings);
            if cli.json {
                emit(out, json!({ "presentation": p.to_string(), "generators": p.generators, "relators": p.relators.len(), "abelianization": ab.to_string(), "modulus": colorings, "colorings": count.to_string() }))?;
            } else {
                writeln!(out, "presentation   {p}")?;
                writeln!(out, "abelianization {ab}")?;
                writeln!(out, "colorings mod {colorings}: {count}")?;
            }
        }
        Cmd::Homfly { file } => {
            let d = load(file)?;
            let p = P_invariant(&d)?;
            if cli.json {
                emit(out, json!({ "value": p.to_string(), "terms": p }))?;
            } else {
                writeln!(out, "{p}")?;
            }
        }
        Cmd::Corpus { dir } => {
            let entries = match load_dir(dir) {
                Ok(e) => e,
                Err(errs) => {
                    let msg: Vec<String> = errs.iter().map(|(p, e)| format!("{}: {e}", p.display())).collect();
                    return Err(Error::Io(msg.join("\n")));
                }
            };
            let reports = check_all(&entries);
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if cli.json {
                emit(out, json!({ "entries": reports, "failed": failed }))?;
            } else {
                for r in &reports {
                    let pass = r.checks.iter().filter(|c| c.ok).count();
                    writeln!(out, "{:<24} {}/{} {}", r.name, pass, r.checks.len(), if r.passed() { "ok" } else { "FAIL" })?;
                    for c in r.checks.iter().filter(|c| !c.ok) {
                        writeln!(out, "    {}: expected {} got {}", c.key, c.expected, c.actual)?;
                    }
                }
            }
            return Ok(i32::from(failed > 0));
        }
    }
    Ok(0)
}
