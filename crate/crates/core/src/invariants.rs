//! Bracket polynomials, spans, complexity and the genus bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::Serialize;

use crate::diagram::work::Work;
use crate::diagram::{Diagram, ShortcutPath};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Span, Var, NVARS};
use crate::resolve::{state_table, StateSumOptions, StateSummary};

fn delta_pow(k: u32) -> LaurentPoly {
    LaurentPoly::loop_value().pow(k as i32).unwrap()
}

fn writhe_factor(w: i64) -> LaurentPoly {
    LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, &[(Var::A, (-3 * w) as i32)])
}

fn mono(powers: &[(Var, i32)]) -> [i32; NVARS] {
    let mut e = [0; NVARS];
    for &(v, p) in powers {
        e[v.index()] += p;
    }
    e
}

/// Sums `count · A^σ · u^kdot · δ^p · v^q` (with `p = |s| - 1, q = 0` when `nest` is false).
fn sum_table(table: &BTreeMap<StateSummary, u64>, with_u: bool, nest: bool) -> LaurentPoly {
    let mut by_delta: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    for (s, &count) in table {
        let (p, q) = if nest { (s.p, s.q) } else { (s.components - 1, 0) };
        let u = if with_u { s.kdot } else { 0 };
        let e = mono(&[(Var::A, s.sigma), (Var::U, u), (Var::V, q as i32)]);
        by_delta.entry(p).or_default().add_term(e, BigInt::from(count));
    }
    let mut out = LaurentPoly::zero();
    for (p, poly) in by_delta {
        out += &poly * &delta_pow(p);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Purity {
    Pure,
    KnotLike,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub crossings: usize,
    pub writhe: i64,
    pub bracket: LaurentPoly,
    pub normalized_bracket: LaurentPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended_bracket: Option<LaurentPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planar_bracket: Option<LaurentPoly>,
    pub spn: Span,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spn_a: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spn_u: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complexity_of_diagram: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus_bound: Option<String>,
    pub seifert_components: usize,
    pub alternating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub purity_certificate: Option<Purity>,
}

/// Everything derivable from one state table.
pub struct Brackets {
    pub bracket: LaurentPoly,
    pub normalized: LaurentPoly,
    pub extended: Option<LaurentPoly>,
    pub planar: Option<LaurentPoly>,
}

pub fn brackets_with(d: &Diagram, a: Option<&ShortcutPath>, opts: StateSumOptions) -> Result<Brackets> {
    let table = state_table(d, a, opts)?;
    let w = writhe_factor(d.writhe());
    let bracket = sum_table(&table, false, false);
    let normalized = &w * &bracket;
    let extended = a.map(|a| {
        let ka = d.intersection_with(a) as i32;
        &(&w * &LaurentPoly::monomial(1, &[(Var::U, -ka)])) * &sum_table(&table, true, false)
    });
    let planar = match (a, d.surface().is_plane()) {
        (Some(a), true) => {
            let ka = d.intersection_with(a) as i32;
            Some(&(&w * &LaurentPoly::monomial(1, &[(Var::U, -ka)])) * &sum_table(&table, true, true))
        }
        _ => None,
    };
    Ok(Brackets { bracket, normalized, extended, planar })
}

pub fn brackets(d: &Diagram, opts: StateSumOptions) -> Result<Brackets> {
    let a = if d.is_knotoid() { Some(d.shortcut()?) } else { None };
    brackets_with(d, a.as_ref(), opts)
}

pub fn bracket(d: &Diagram) -> Result<LaurentPoly> {
    Ok(brackets_with(d, None, StateSumOptions::default())?.bracket)
}

pub fn normalized_bracket(d: &Diagram) -> Result<LaurentPoly> {
    Ok(brackets_with(d, None, StateSumOptions::default())?.normalized)
}

/// Two-variable bracket; equals the normalized bracket on link diagrams.
pub fn extended_bracket(d: &Diagram) -> Result<LaurentPoly> {
    let b = brackets(d, StateSumOptions::default())?;
    Ok(b.extended.unwrap_or(b.normalized))
}

pub fn extended_bracket_with(d: &Diagram, a: &ShortcutPath) -> Result<LaurentPoly> {
    Ok(brackets_with(d, Some(a), StateSumOptions::default())?.extended.unwrap())
}

pub fn planar_bracket(d: &Diagram) -> Result<LaurentPoly> {
    if !d.surface().is_plane() {
        return Err(Error::NotPlanar);
    }
    if !d.is_knotoid() {
        return Err(Error::NotAKnotoid);
    }
    Ok(brackets(d, StateSumOptions::default())?.planar.unwrap())
}

/// `(spn, spn_A, spn_u)`.
pub fn spans(d: &Diagram) -> Result<(Span, Span, Span)> {
    let b = brackets(d, StateSumOptions::default())?;
    let ext = b.extended.unwrap_or_else(|| b.normalized.clone());
    Ok((b.bracket.span(Var::A), ext.span(Var::A), ext.span(Var::U)))
}

pub fn complexity_of_diagram(d: &Diagram) -> Result<usize> {
    Ok(d.shortcut()?.len())
}

/// `(cr - |K̂| + 1) / 2`.
pub fn genus_bound(d: &Diagram) -> Ratio<i64> {
    let num = d.crossing_count() as i64 - d.oriented_smoothing() as i64 + 1;
    let g = Ratio::new(num, 2);
    assert!(g.is_integer(), "Seifert bound must be integral");
    g
}

pub fn purity(spn_u: Span, complexity: usize) -> Purity {
    if spn_u.finite().is_some_and(|s| s >= 2) {
        Purity::Pure
    } else if complexity == 0 {
        Purity::KnotLike
    } else {
        Purity::Unknown
    }
}

pub fn report(d: &Diagram, opts: StateSumOptions) -> Result<InvariantReport> {
    let b = brackets(d, opts)?;
    let spn = b.bracket.span(Var::A);
    let knotoid = d.is_knotoid();
    let complexity = if knotoid { Some(d.shortcut()?.len()) } else { None };
    let spn_a = b.extended.as_ref().map(|e| e.span(Var::A));
    let spn_u = b.extended.as_ref().map(|e| e.span(Var::U));
    Ok(InvariantReport {
        crossings: d.crossing_count(),
        writhe: d.writhe(),
        spn,
        spn_a,
        spn_u,
        purity_certificate: match (spn_u, complexity) {
            (Some(s), Some(c)) if d.is_single_segment() => Some(purity(s, c)),
            _ => None,
        },
        complexity_of_diagram: complexity,
        genus_bound: (d.is_single_segment() || d.components().len() == 1).then(|| genus_bound(d).to_string()),
        seifert_components: d.oriented_smoothing(),
        alternating: d.alternating(),
        bracket: b.bracket,
        normalized_bracket: b.normalized,
        extended_bracket: b.extended,
        planar_bracket: b.planar,
    })
}

impl Diagram {
    /// Exchanges over and under at one crossing.
    pub fn switch_crossing(&self, v: u32) -> Diagram {
        self.mirror_at(&[v])
    }

    fn mirror_at(&self, vs: &[u32]) -> Diagram {
        let mut d = self.clone();
        for &v in vs {
            if let crate::diagram::Vertex::Crossing { over_ac, .. } = &mut d.verts[v as usize] {
                *over_ac = !*over_ac;
            }
        }
        d
    }

    /// Oriented smoothing at one crossing; fails if the result is disconnected.
    pub fn smooth_crossing(&self, v: u32) -> Result<Diagram> {
        let mut w = Work::from_diagram(self);
        w.relocate_outer(&[v])?;
        w.dissolve_oriented(v);
        w.build()
    }

    /// `(K₊, K₋, K₀)` at crossing `v`, when the smoothing stays connected.
    pub fn conway_triple(&self, v: u32) -> Option<(Diagram, Diagram, Diagram)> {
        let zero = self.smooth_crossing(v).ok()?;
        let other = self.switch_crossing(v);
        if self.sign(v) > 0 {
            Some((self.clone(), other, zero))
        } else {
            Some((other, self.clone(), zero))
        }
    }
}

/// Checks `−A⁴⟨⟨K₊⟩⟩∘ + A⁻⁴⟨⟨K₋⟩⟩∘ = (A² − A⁻²)⟨⟨K₀⟩⟩∘`. The first two diagrams
/// must differ by switching one positive crossing of `d_plus`; `d_zero` is
/// taken as given.
pub fn skein_check(d_plus: &Diagram, d_minus: &Diagram, d_zero: &Diagram) -> Result<bool> {
    let target = d_minus.canonical_code();
    let site = d_plus.crossings().into_iter().find(|&v| d_plus.sign(v) > 0 && d_plus.switch_crossing(v).canonical_code() == target);
    if site.is_none() {
        return Err(Error::NotAConwayTriple("no positive crossing of the first diagram switches to the second".into()));
    }
    if d_zero.is_knotoid() != d_plus.is_knotoid() {
        return Err(Error::NotAConwayTriple("endpoints differ".into()));
    }
    let (p, m, z) = (extended_bracket(d_plus)?, extended_bracket(d_minus)?, extended_bracket(d_zero)?);
    let lhs = &(&LaurentPoly::monomial(-1, &[(Var::A, 4)]) * &p) + &(&LaurentPoly::monomial(1, &[(Var::A, -4)]) * &m);
    let rhs = &(LaurentPoly::monomial(1, &[(Var::A, 2)]) - LaurentPoly::monomial(1, &[(Var::A, -2)])) * &z;
    Ok(lhs == rhs)
}
