//! Reidemeister moves, endpoint moves and bounded equivalence search.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::work::{port, Work};
use crate::diagram::{edge_of, is_forward, twin, Diagram, Role, VKind, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    OmegaMinus,
    OmegaPlus,
}

impl MoveKind {
    pub const REIDEMEISTER: [MoveKind; 5] = [MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Add, MoveKind::R2Remove, MoveKind::R3];
    pub const REMOVALS: [MoveKind; 3] = [MoveKind::R1Remove, MoveKind::R2Remove, MoveKind::R3];
}

/// A move located on one specific diagram.
///
/// `site` holds edge, vertex, half-edge or face ids depending on `kind`:
/// R1Add `[edge]` with flags bit 0 = curl on the left, bit 1 = slots 0/2 over;
/// R1Remove, OmegaMinus, OmegaPlus `[crossing]`; R2Add `[h1, h2]` with bit 0 =
/// the strand along `h1` goes over; R2Remove and R3 `[face]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub site: Vec<u32>,
    pub flags: u8,
    pub fingerprint: u64,
}

pub fn fingerprint(d: &Diagram) -> u64 {
    let mut h = DefaultHasher::new();
    d.hash(&mut h);
    h.finish()
}

fn is_outer(d: &Diagram, f: u32) -> bool {
    d.outer_face() == Some(f as usize)
}

/// Port of the half-edge `h` in a work graph built from `d`.
fn wport(d: &Diagram, h: u32) -> u32 {
    port(d.origin(h), d.slot(h) as usize)
}

/// Connects a chain of ports `[a0, a1, a2, ...]` pairwise as edges `a0–a1`, `a2–a3`, ...
/// oriented along the chain when `forward`, against it otherwise.
fn wire(w: &mut Work, chain: &[u32], forward: bool) {
    for pair in chain.chunks(2) {
        if forward {
            w.connect(pair[0], pair[1]);
        } else {
            w.connect(pair[1], pair[0]);
        }
    }
}

fn r1_sites(d: &Diagram, out: &mut Vec<MoveInstance>, fp: u64) {
    for v in d.crossings() {
        let he = match &d.vertices()[v as usize] {
            Vertex::Crossing { he, .. } => *he,
            _ => unreachable!(),
        };
        for s in 0..4 {
            let h = he[s];
            if d.origin(twin(h)) == v && d.slot(twin(h)) as usize == (s + 1) % 4 {
                // monogon on the right of h, i.e. left of its twin
                let mono = d.face_of(h);
                if d.faces()[mono as usize].len() == 1 && !is_outer(d, mono) {
                    out.push(MoveInstance { kind: MoveKind::R1Remove, site: vec![v], flags: 0, fingerprint: fp });
                }
            }
        }
    }
}

fn r2_remove_sites(d: &Diagram, out: &mut Vec<MoveInstance>, fp: u64) {
    for (f, b) in d.faces().iter().enumerate() {
        if b.len() != 2 || is_outer(d, f as u32) {
            continue;
        }
        let (ha, hb) = (b[0], b[1]);
        let (x, y) = (d.origin(ha), d.origin(hb));
        if x == y || !matches!(d.vertices()[x as usize], Vertex::Crossing { .. }) || !matches!(d.vertices()[y as usize], Vertex::Crossing { .. }) {
            continue;
        }
        if d.is_over_he(ha) != d.is_over_he(twin(ha)) || d.is_over_he(hb) != d.is_over_he(twin(hb)) {
            continue;
        }
        let m = MoveInstance { kind: MoveKind::R2Remove, site: vec![f as u32], flags: 0, fingerprint: fp };
        if apply_unchecked(d, &m).is_ok() {
            out.push(m);
        }
    }
}

fn r3_sites(d: &Diagram, out: &mut Vec<MoveInstance>, fp: u64) {
    for (f, b) in d.faces().iter().enumerate() {
        if b.len() != 3 || is_outer(d, f as u32) {
            continue;
        }
        let vs: Vec<u32> = b.iter().map(|&h| d.origin(h)).collect();
        if vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2] {
            continue;
        }
        if vs.iter().any(|&v| !matches!(d.vertices()[v as usize], Vertex::Crossing { .. })) {
            continue;
        }
        // some side must be over at both of its crossings
        let top = b.iter().filter(|&&h| d.is_over_he(h) && d.is_over_he(twin(h))).count();
        let bottom = b.iter().filter(|&&h| !d.is_over_he(h) && !d.is_over_he(twin(h))).count();
        if top == 1 && bottom == 1 {
            out.push(MoveInstance { kind: MoveKind::R3, site: vec![f as u32], flags: 0, fingerprint: fp });
        }
    }
}

fn omega_sites(d: &Diagram, out: &mut Vec<MoveInstance>, fp: u64, kinds: &[MoveKind]) {
    let mut seen = vec![];
    for h in [d.leg_he(), d.head_he()].into_iter().flatten() {
        let t = twin(h);
        let v = d.origin(t);
        if !matches!(d.vertices()[v as usize], Vertex::Crossing { .. }) || seen.contains(&v) {
            continue;
        }
        let kind = if d.is_over_he(t) { MoveKind::OmegaPlus } else { MoveKind::OmegaMinus };
        if kinds.contains(&kind) {
            let m = MoveInstance { kind, site: vec![v], flags: 0, fingerprint: fp };
            if apply_unchecked(d, &m).is_ok() {
                seen.push(v);
                out.push(m);
            }
        }
    }
}

pub fn enumerate_moves(d: &Diagram, kinds: &[MoveKind]) -> Vec<MoveInstance> {
    let fp = fingerprint(d);
    let mut out = vec![];
    if d.is_free_loop() {
        return out;
    }
    if kinds.contains(&MoveKind::R1Remove) {
        r1_sites(d, &mut out, fp);
    }
    if kinds.contains(&MoveKind::R2Remove) {
        r2_remove_sites(d, &mut out, fp);
    }
    if kinds.contains(&MoveKind::R3) {
        r3_sites(d, &mut out, fp);
    }
    if kinds.contains(&MoveKind::OmegaMinus) || kinds.contains(&MoveKind::OmegaPlus) {
        omega_sites(d, &mut out, fp, kinds);
    }
    if kinds.contains(&MoveKind::R1Add) {
        for e in 0..d.num_edges() as u32 {
            for flags in 0..4 {
                out.push(MoveInstance { kind: MoveKind::R1Add, site: vec![e], flags, fingerprint: fp });
            }
        }
    }
    if kinds.contains(&MoveKind::R2Add) {
        for (f, b) in d.faces().iter().enumerate() {
            if is_outer(d, f as u32) {
                continue;
            }
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let (h1, h2) = (b[i], b[j]);
                    if h1 == twin(h2) {
                        continue;
                    }
                    for flags in 0..2 {
                        out.push(MoveInstance { kind: MoveKind::R2Add, site: vec![h1, h2], flags, fingerprint: fp });
                    }
                }
            }
        }
    }
    out
}

pub fn apply(d: &Diagram, m: &MoveInstance) -> Result<Diagram> {
    if m.fingerprint != fingerprint(d) {
        return Err(Error::StaleMove);
    }
    apply_unchecked(d, m)
}

fn crossing_he(d: &Diagram, v: u32) -> Result<[u32; 4]> {
    match d.vertices().get(v as usize) {
        Some(Vertex::Crossing { he, .. }) => Ok(*he),
        _ => Err(Error::StaleMove),
    }
}

fn apply_unchecked(d: &Diagram, m: &MoveInstance) -> Result<Diagram> {
    let site = |i: usize| m.site.get(i).copied().ok_or(Error::StaleMove);
    let mut w = Work::from_diagram(d);
    match m.kind {
        MoveKind::R1Add => {
            let e = site(0)?;
            if e as usize >= d.num_edges() {
                return Err(Error::StaleMove);
            }
            let left = m.flags & 1 == 1;
            let x = w.add_vertex(VKind::Crossing { over_ac: m.flags & 2 == 2 });
            let tail = wport(d, 2 * e);
            let head = w.link[tail as usize];
            let p = |s| port(x, s);
            if left {
                // [toP, toQ, loop out, loop in]
                w.connect(tail, p(0));
                w.connect(p(2), p(3));
                w.connect(p(1), head);
            } else {
                // [toP, loop in, loop out, toQ]
                w.connect(tail, p(0));
                w.connect(p(2), p(1));
                w.connect(p(3), head);
            }
        }
        MoveKind::R1Remove | MoveKind::OmegaMinus | MoveKind::OmegaPlus => {
            let v = site(0)?;
            crossing_he(d, v)?;
            w.relocate_outer(&[v])?;
            w.dissolve_straight(v);
        }
        MoveKind::R2Add => {
            let (h1, h2) = (site(0)?, site(1)?);
            if h1 as usize >= 2 * d.num_edges() || h2 as usize >= 2 * d.num_edges() || d.face_of(h1) != d.face_of(h2) || h1 == twin(h2) || h1 == h2 {
                return Err(Error::StaleMove);
            }
            let over1 = m.flags & 1 == 1;
            let x = w.add_vertex(VKind::Crossing { over_ac: over1 });
            let y = w.add_vertex(VKind::Crossing { over_ac: over1 });
            let (p1, q1) = (wport(d, h1), wport(d, twin(h1)));
            let (p2, q2) = (wport(d, h2), wport(d, twin(h2)));
            // X = [toP1, strand 2 from Y, strand 1 to Y, toQ2]; Y = [toQ1, toP2, strand 1 from X, strand 2 to X]
            wire(&mut w, &[p1, port(x, 0), port(x, 2), port(y, 2), port(y, 0), q1], is_forward(h1));
            wire(&mut w, &[p2, port(y, 1), port(y, 3), port(x, 1), port(x, 3), q2], is_forward(h2));
        }
        MoveKind::R2Remove => {
            let f = site(0)? as usize;
            let b = d.faces().get(f).ok_or(Error::StaleMove)?;
            if b.len() != 2 {
                return Err(Error::StaleMove);
            }
            let (x, y) = (d.origin(b[0]), d.origin(b[1]));
            crossing_he(d, x)?;
            crossing_he(d, y)?;
            w.relocate_outer(&[x, y])?;
            w.dissolve_straight(x);
            w.dissolve_straight(y);
        }
        MoveKind::R3 => {
            let f = site(0)? as usize;
            let b = d.faces().get(f).ok_or(Error::StaleMove)?.clone();
            if b.len() != 3 {
                return Err(Error::StaleMove);
            }
            let vs: Vec<u32> = b.iter().map(|&h| d.origin(h)).collect();
            w.relocate_outer(&vs)?;
            r3_rewire(d, &mut w, &b);
        }
    }
    w.build()
}

/// Each side `t` of the triangle lies on a line meeting the triangle at
/// `origin(t)` then `origin(twin t)`. The move reverses that order on every
/// line while each crossing keeps its rotation and over data.
fn r3_rewire(d: &Diagram, w: &mut Work, tri: &[u32]) {
    let opp = |p: u32| port(p / 4, (p as usize % 4 + 2) % 4);
    let mut old_out = vec![];
    let mut new_out = vec![];
    let mut internal = vec![];
    for &t in tri {
        let vb = wport(d, t); // at the first crossing, facing the second
        let wa = wport(d, twin(t)); // at the second crossing, facing the first
        let (va, wb) = (opp(vb), opp(wa));
        old_out.push(va);
        new_out.push(wa);
        old_out.push(wb);
        new_out.push(vb);
        internal.push((wb, va, is_forward(t)));
    }
    let partner: Vec<u32> = old_out.iter().map(|&p| w.link[p as usize]).collect();
    let was_out: Vec<bool> = old_out.iter().map(|&p| w.out[p as usize]).collect();
    let remap = |p: u32| old_out.iter().position(|&q| q == p).map(|i| new_out[i]);
    let mut pending = vec![];
    for i in 0..old_out.len() {
        let x = partner[i];
        let a = new_out[i];
        let b = remap(x).unwrap_or(x);
        pending.push(if was_out[i] { (a, b) } else { (b, a) });
    }
    for &(t, h) in &pending {
        w.connect(t, h);
    }
    for &(wb, va, fwd) in &internal {
        // the line runs va -> ... -> wb originally; now the new inner edge joins wb's crossing to va's
        if fwd {
            w.connect(wb, va);
        } else {
            w.connect(va, wb);
        }
    }
}

/// Pushes an endpoint across a boundary edge `g` of its face (inverse of an endpoint move).
pub fn extend_endpoint(d: &Diagram, role: Role, g: u32, over: bool) -> Result<Diagram> {
    let e_he = match role {
        Role::Leg => d.leg_he(),
        Role::Head => d.head_he(),
    }
    .ok_or(Error::NotAKnotoid)?;
    let f = d.face_of(e_he);
    if d.face_of(g) != f || edge_of(g) == edge_of(e_he) {
        return Err(Error::StaleMove);
    }
    let mut w = Work::from_diagram(d);
    let x = w.add_vertex(VKind::Crossing { over_ac: !over });
    // slots: 0 toward g's head, 1 into the face, 2 toward g's tail, 3 across g
    let (p, q) = (wport(d, g), wport(d, twin(g)));
    wire(&mut w, &[p, port(x, 2), port(x, 0), q], is_forward(g));
    let ep = wport(d, e_he);
    let y = w.link[ep as usize];
    match role {
        Role::Leg => wire(&mut w, &[ep, port(x, 3), port(x, 1), y], true),
        Role::Head => wire(&mut w, &[y, port(x, 1), port(x, 3), ep], true),
    }
    w.build()
}

/// Applies `steps` random diagram-growing operations starting from the trivial diagram.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, max_crossings: usize, steps: usize) -> Diagram {
    let mut d = Diagram::trivial();
    for _ in 0..steps {
        if d.crossing_count() >= max_crossings {
            break;
        }
        let choice = rng.gen_range(0..10);
        let next = if choice < 3 {
            let role = if rng.gen_bool(0.5) { Role::Leg } else { Role::Head };
            let eh = match role {
                Role::Leg => d.leg_he().unwrap(),
                Role::Head => d.head_he().unwrap(),
            };
            let face = &d.faces()[d.face_of(eh) as usize];
            let g = face[rng.gen_range(0..face.len())];
            extend_endpoint(&d, role, g, rng.gen_bool(0.5)).ok()
        } else {
            let kinds: &[MoveKind] = if choice < 6 || d.crossing_count() + 2 > max_crossings { &[MoveKind::R1Add] } else { &[MoveKind::R2Add] };
            let ms = enumerate_moves(&d, kinds);
            if ms.is_empty() {
                None
            } else {
                apply(&d, &ms[rng.gen_range(0..ms.len())]).ok()
            }
        };
        if let Some(n) = next {
            d = n;
        }
    }
    // scramble over/under so the result is not trivially reducible
    let cs = d.crossings();
    for v in cs {
        if rng.gen_bool(0.5) {
            d = d.switch_crossing(v);
        }
    }
    d
}

/// Applies `n` random Reidemeister moves, keeping the crossing count at most `max_crossings`.
pub fn random_moves<R: Rng + ?Sized>(rng: &mut R, d: &Diagram, n: usize, max_crossings: usize) -> (Diagram, Vec<MoveInstance>) {
    let mut cur = d.clone();
    let mut done = vec![];
    for _ in 0..n {
        let mut ms = enumerate_moves(&cur, &MoveKind::REMOVALS);
        if cur.crossing_count() < max_crossings {
            ms.extend(enumerate_moves(&cur, &[MoveKind::R1Add]));
        }
        if cur.crossing_count() + 2 <= max_crossings {
            let adds = enumerate_moves(&cur, &[MoveKind::R2Add]);
            // keep additions from swamping the removals and R3 sites
            for _ in 0..adds.len().min(8) {
                ms.push(adds[rng.gen_range(0..adds.len())].clone());
            }
        }
        if ms.is_empty() {
            break;
        }
        let m = ms[rng.gen_range(0..ms.len())].clone();
        if let Ok(next) = apply(&cur, &m) {
            cur = next;
            done.push(m);
        }
    }
    (cur, done)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_crossings: usize,
    pub max_nodes: usize,
}

impl Budget {
    pub fn default_for(d1: &Diagram, d2: &Diagram) -> Budget {
        Budget { max_crossings: d1.crossing_count().max(d2.crossing_count()) + 2, max_nodes: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Equivalent { path: Vec<MoveInstance> },
    Distinct { invariant: String, left: String, right: String },
    Inconclusive { explored: usize },
}

/// First invariant that separates the two diagrams, as `(name, left, right)`.
pub fn distinguishing_invariant(d1: &Diagram, d2: &Diagram) -> Option<(String, String, String)> {
    use crate::invariants::{extended_bracket, normalized_bracket, planar_bracket};
    let small = d1.crossing_count() <= 16 && d2.crossing_count() <= 16;
    if small {
        if let (Ok(a), Ok(b)) = (normalized_bracket(d1), normalized_bracket(d2)) {
            if a != b {
                return Some(("normalized_bracket".into(), a.to_string(), b.to_string()));
            }
        }
        if let (Ok(a), Ok(b)) = (extended_bracket(d1), extended_bracket(d2)) {
            if a != b {
                return Some(("extended_bracket".into(), a.to_string(), b.to_string()));
            }
        }
        if d1.surface().is_plane() && d2.surface().is_plane() {
            if let (Ok(a), Ok(b)) = (planar_bracket(d1), planar_bracket(d2)) {
                if a != b {
                    return Some(("planar_bracket".into(), a.to_string(), b.to_string()));
                }
            }
        }
    }
    if d1.is_single_segment() && d2.is_single_segment() {
        let (p1, p2) = (crate::group::wirtinger(d1).ok()?, crate::group::wirtinger(d2).ok()?);
        for n in [3u64, 5, 7] {
            let (a, b) = (crate::group::count_colorings(&p1, n), crate::group::count_colorings(&p2, n));
            if a != b {
                return Some((format!("colorings mod {n}"), a.to_string(), b.to_string()));
            }
        }
    }
    None
}

struct Side {
    parent: HashMap<String, Option<(String, MoveInstance)>>,
    diagrams: HashMap<String, Diagram>,
    frontier: VecDeque<String>,
}

impl Side {
    fn new(d: &Diagram) -> Side {
        let c = d.canonical_code();
        Side { parent: HashMap::from([(c.clone(), None)]), diagrams: HashMap::from([(c.clone(), d.clone())]), frontier: VecDeque::from([c]) }
    }

    /// Codes from the root to `code`.
    fn chain(&self, code: &str) -> Vec<String> {
        let mut out = vec![code.to_string()];
        let mut cur = code.to_string();
        while let Some(Some((p, _))) = self.parent.get(&cur) {
            out.push(p.clone());
            cur = p.clone();
        }
        out.reverse();
        out
    }
}

/// Finds a move on `d` leading to a diagram with canonical code `target`.
fn step_to(d: &Diagram, target: &str) -> Option<(MoveInstance, Diagram)> {
    enumerate_moves(d, &MoveKind::REIDEMEISTER).into_iter().find_map(|m| {
        let n = apply(d, &m).ok()?;
        (n.canonical_code() == target).then_some((m, n))
    })
}

/// Bidirectional breadth-first search over canonical codes using Reidemeister moves.
pub fn search_equivalent(d1: &Diagram, d2: &Diagram, budget: Budget) -> Verdict {
    if d1.surface().is_plane() != d2.surface().is_plane() || d1.is_knotoid() != d2.is_knotoid() {
        return Verdict::Distinct { invariant: "surface or endpoints".into(), left: String::new(), right: String::new() };
    }
    if let Some((invariant, left, right)) = distinguishing_invariant(d1, d2) {
        return Verdict::Distinct { invariant, left, right };
    }
    let mut sides = [Side::new(d1), Side::new(d2)];
    let mut explored = 0usize;
    let meet = 'search: loop {
        let c1 = sides[0].frontier.front().cloned();
        if let Some(c) = &c1 {
            if sides[1].parent.contains_key(c) {
                break 'search Some(c.clone());
            }
        }
        let k = match (sides[0].frontier.len(), sides[1].frontier.len()) {
            (0, 0) => break None,
            (0, _) => 1,
            (_, 0) => 0,
            (a, b) => usize::from(a > b),
        };
        let code = sides[k].frontier.pop_front().unwrap();
        if sides[1 - k].parent.contains_key(&code) {
            break Some(code);
        }
        let d = sides[k].diagrams[&code].clone();
        for m in enumerate_moves(&d, &MoveKind::REIDEMEISTER) {
            if m.kind == MoveKind::R1Add && d.crossing_count() >= budget.max_crossings {
                continue;
            }
            if m.kind == MoveKind::R2Add && d.crossing_count() + 2 > budget.max_crossings {
                continue;
            }
            let Ok(n) = apply(&d, &m) else { continue };
            let c = n.canonical_code();
            if sides[k].parent.contains_key(&c) {
                continue;
            }
            explored += 1;
            sides[k].parent.insert(c.clone(), Some((code.clone(), m)));
            sides[k].diagrams.insert(c.clone(), n);
            if sides[1 - k].parent.contains_key(&c) {
                break 'search Some(c);
            }
            sides[k].frontier.push_back(c);
            if explored >= budget.max_nodes {
                break 'search None;
            }
        }
    };
    let Some(meet) = meet else {
        return Verdict::Inconclusive { explored };
    };
    // replayable script: forward along side 0, then back along side 1
    let mut path = vec![];
    let mut cur = d1.clone();
    for code in sides[0].chain(&meet).iter().skip(1) {
        match step_to(&cur, code) {
            Some((m, n)) => {
                path.push(m);
                cur = n;
            }
            None => return Verdict::Inconclusive { explored },
        }
    }
    let back = sides[1].chain(&meet);
    for code in back.iter().rev().skip(1) {
        match step_to(&cur, code) {
            Some((m, n)) => {
                path.push(m);
                cur = n;
            }
            None => return Verdict::Inconclusive { explored },
        }
    }
    Verdict::Equivalent { path }
}

/// Replays a move script, returning every intermediate diagram.
pub fn replay(d: &Diagram, path: &[MoveInstance]) -> Result<Vec<Diagram>> {
    let mut out = vec![d.clone()];
    for m in path {
        let next = apply(out.last().unwrap(), m)?;
        out.push(next);
    }
    Ok(out)
}
