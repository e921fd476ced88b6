//! Directories of PD files annotated with `# expect key = value` lines.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::group::{abelianization, count_colorings, wirtinger};
use crate::invariants::{self, genus_bound, normalized_bracket};
use crate::moves::{search_equivalent, Budget, Verdict};
use crate::poly::{LaurentPoly, Var};
use crate::skein::P_invariant;

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub path: PathBuf,
    pub diagram: Diagram,
    pub expect: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

pub fn parse_expectations(src: &str) -> Vec<(String, String)> {
    src.lines()
        .filter_map(|l| l.trim().strip_prefix('#')?.trim().strip_prefix("expect "))
        .filter_map(|rest| {
            let (k, v) = rest.split_once('=')?;
            Some((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Loads every `*.pd` file of a directory, sorted by name. Fails with the
/// list of all files that do not parse.
pub fn load_dir(dir: &Path) -> std::result::Result<Vec<Entry>, Vec<(PathBuf, Error)>> {
    let mut paths: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "pd")).collect(),
        Err(e) => return Err(vec![(dir.to_path_buf(), Error::Io(e.to_string()))]),
    };
    paths.sort();
    let mut entries = vec![];
    let mut errors = vec![];
    for p in paths {
        let name = p.file_stem().unwrap().to_string_lossy().into_owned();
        match std::fs::read_to_string(&p).map_err(|e| Error::Io(e.to_string())).and_then(|s| Ok((s.parse::<Diagram>()?, s))) {
            Ok((diagram, src)) => entries.push(Entry { name, path: p, diagram, expect: parse_expectations(&src) }),
            Err(e) => errors.push((p, e)),
        }
    }
    if errors.is_empty() {
        Ok(entries)
    } else {
        Err(errors)
    }
}

fn span_str(p: &LaurentPoly, v: Var) -> String {
    p.span(v).to_string()
}

/// Computes the value named `key` for a diagram, as a string.
pub fn compute(d: &Diagram, key: &str) -> Result<String> {
    let ext = || invariants::extended_bracket(d);
    Ok(match key {
        "crossings" => d.crossing_count().to_string(),
        "writhe" => d.writhe().to_string(),
        "bracket" => invariants::bracket(d)?.to_string(),
        "normalized_bracket" => normalized_bracket(d)?.to_string(),
        "extended_bracket" => ext()?.to_string(),
        "planar_bracket" => invariants::planar_bracket(d)?.to_string(),
        "spn" => span_str(&invariants::bracket(d)?, Var::A),
        "spn_a" => span_str(&ext()?, Var::A),
        "spn_u" => span_str(&ext()?, Var::U),
        "complexity" => invariants::complexity_of_diagram(d)?.to_string(),
        "genus_bound" => genus_bound(d).to_string(),
        "generators" => wirtinger(d)?.generators.to_string(),
        "relators" => wirtinger(d)?.relators.len().to_string(),
        "abelianization" => abelianization(&wirtinger(d)?).to_string(),
        "closure_under" => normalized_bracket(&d.closure_under()?)?.to_string(),
        "closure_over" => normalized_bracket(&d.closure_over()?)?.to_string(),
        "homfly" => P_invariant(d)?.to_string(),
        "equivalent_to_trivial" => {
            let s = d.on_sphere();
            let t = Diagram::trivial();
            match search_equivalent(&s, &t, Budget::default_for(&s, &t)) {
                Verdict::Equivalent { .. } => "yes".into(),
                Verdict::Distinct { .. } => "no".into(),
                Verdict::Inconclusive { .. } => "unknown".into(),
            }
        }
        k => match k.strip_prefix("colorings_").and_then(|n| n.parse::<u64>().ok()) {
            Some(n) if n >= 2 => count_colorings(&wirtinger(d)?, n).to_string(),
            _ => return Err(Error::Syntax { line: 0, msg: format!("unknown expectation key {k:?}") }),
        },
    })
}

/// Polynomial values compare as polynomials, everything else as text.
fn same(expected: &str, actual: &str) -> bool {
    let strip = |s: &str| s.trim().trim_start_matches('(').trim_end_matches(')').to_string();
    match (strip(expected).parse::<LaurentPoly>(), strip(actual).parse::<LaurentPoly>()) {
        (Ok(a), Ok(b)) if expected.chars().any(|c| c.is_ascii_alphabetic()) || actual.chars().any(|c| c.is_ascii_alphabetic()) => a == b,
        _ => strip(expected) == strip(actual),
    }
}

pub fn check_entry(e: &Entry) -> EntryReport {
    let checks = e
        .expect
        .iter()
        .map(|(key, expected)| {
            let actual = compute(&e.diagram, key).unwrap_or_else(|err| format!("error: {err}"));
            Check { key: key.clone(), expected: expected.clone(), ok: same(expected, &actual), actual }
        })
        .collect();
    EntryReport { name: e.name.clone(), checks }
}

/// Checks all entries in parallel; the result is ordered by name.
pub fn check_all(entries: &[Entry]) -> Vec<EntryReport> {
    entries.par_iter().map(check_entry).collect()
}
