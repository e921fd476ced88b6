//! States and smoothings.
//!
//! At a crossing in state +1 (A-smoothing) each over slot `i` is joined to slot
//! `i - 1`; in state -1 (B-smoothing) to slot `i + 1`. Crossings are indexed in
//! increasing vertex order and state `bits` sets bit `i` for A at crossing `i`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{edge_of, is_forward, twin, Diagram, ShortcutPath, Vertex, NONE};
use crate::error::{Error, Result};

pub const MAX_STATESUM_CROSSINGS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    values: Vec<i8>,
}

impl State {
    pub fn new(values: Vec<i8>) -> State {
        assert!(values.iter().all(|&v| v == 1 || v == -1), "state values are +1 or -1");
        State { values }
    }

    pub fn from_bits(n: usize, bits: u64) -> State {
        State { values: (0..n).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect() }
    }

    pub fn all(n: usize, v: i8) -> State {
        State::new(vec![v; n])
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn bits(&self) -> u64 {
        self.values.iter().enumerate().filter(|(_, &v)| v == 1).fold(0, |b, (i, _)| b | 1 << i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    /// Segment edges from leg to head with direction relative to the original orientation.
    pub segment: Vec<(u32, i8)>,
    pub circles: Vec<Vec<u32>>,
    pub sigma: i32,
    pub component_count: usize,
    pub segment_shortcut: i64,
    pub nesting: Option<(usize, usize)>,
}

/// Aggregation key of a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateSummary {
    pub sigma: i32,
    pub components: u32,
    pub kdot: i32,
    pub p: u32,
    pub q: u32,
}

pub(crate) struct Resolver<'a> {
    d: &'a Diagram,
    cross_idx: Vec<u32>,
    over0: Vec<u8>,
    edge_sign: Vec<i32>,
    plane: bool,
}

struct Scratch {
    comp: Vec<u32>,
    parent: Vec<u32>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[parent[x as usize] as usize];
        parent[x as usize] = p;
        x = p;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (a, b) = (find(parent, a), find(parent, b));
    if a != b {
        parent[a.max(b) as usize] = a.min(b);
    }
}

impl<'a> Resolver<'a> {
    pub fn new(d: &'a Diagram, a: Option<&ShortcutPath>) -> Resolver<'a> {
        let mut cross_idx = vec![NONE; d.num_vertices()];
        let mut over0 = vec![];
        for (i, v) in d.crossings().into_iter().enumerate() {
            cross_idx[v as usize] = i as u32;
            over0.push(if d.is_over_slot(v, 0) { 0 } else { 1 });
        }
        let mut edge_sign = vec![0; d.num_edges()];
        if let Some(a) = a {
            for s in &a.steps {
                edge_sign[s.edge as usize] += s.sign;
            }
        }
        Resolver { d, cross_idx, over0, edge_sign, plane: d.surface().is_plane() }
    }

    pub fn crossings(&self) -> usize {
        self.over0.len()
    }

    fn scratch(&self) -> Scratch {
        Scratch { comp: vec![NONE; self.d.num_edges()], parent: vec![0; self.d.num_faces()] }
    }

    /// Slot joined to `x` at crossing `c` under the state.
    #[inline]
    fn partner(&self, c: usize, x: usize, a_smoothing: bool) -> usize {
        let is_over = (x % 2) as u8 == self.over0[c];
        if is_over == a_smoothing {
            (x + 3) % 4
        } else {
            (x + 1) % 4
        }
    }

    /// Next half-edge of the smoothed curve after travelling along `h`.
    #[inline]
    fn next(&self, h: u32, bits: u64) -> Option<u32> {
        let t = twin(h);
        let v = self.d.origin(t);
        match &self.d.vertices()[v as usize] {
            Vertex::Crossing { he, .. } => {
                let c = self.cross_idx[v as usize] as usize;
                let x = self.d.slot(t) as usize;
                Some(he[self.partner(c, x, bits >> c & 1 == 1)])
            }
            Vertex::Endpoint { .. } => None,
        }
    }

    fn trace(&self, bits: u64, sc: &mut Scratch, detail: Option<&mut Resolution>) -> StateSummary {
        let d = self.d;
        let n = self.crossings();
        let sigma = 2 * (bits.count_ones() as i32) - n as i32;
        if d.is_free_loop() {
            return StateSummary { sigma: 0, components: 1, kdot: 0, p: 0, q: 0 };
        }
        sc.comp.iter_mut().for_each(|c| *c = NONE);
        let mut kdot = 0i32;
        let mut ncomp = 0u32;
        let mut segment = vec![];
        let mut circles: Vec<Vec<u32>> = vec![];
        let want_detail = detail.is_some();
        if let Some(mut h) = d.leg_he() {
            ncomp = 1;
            loop {
                let e = edge_of(h);
                sc.comp[e as usize] = 0;
                let dir = if is_forward(h) { 1 } else { -1 };
                kdot += dir * self.edge_sign[e as usize];
                if want_detail {
                    segment.push((e, dir as i8));
                }
                match self.next(h, bits) {
                    Some(n) => h = n,
                    None => break,
                }
            }
        }
        for e0 in 0..d.num_edges() as u32 {
            if sc.comp[e0 as usize] != NONE {
                continue;
            }
            let id = ncomp;
            ncomp += 1;
            let mut h = 2 * e0;
            let mut edges = vec![];
            while sc.comp[edge_of(h) as usize] == NONE {
                sc.comp[edge_of(h) as usize] = id;
                if want_detail || self.plane {
                    edges.push(edge_of(h));
                }
                h = self.next(h, bits).expect("circles do not meet endpoints");
            }
            circles.push(edges);
        }
        let (p, q) = if self.plane && d.is_knotoid() {
            let mut q = 0;
            for c in 1..ncomp {
                if self.circle_encloses_leg(bits, c, sc) {
                    q += 1;
                }
            }
            (ncomp - 1 - q, q)
        } else {
            (ncomp.saturating_sub(1), 0)
        };
        if let Some(r) = detail {
            r.segment = segment;
            r.circles = circles;
            r.sigma = sigma;
            r.component_count = ncomp as usize;
            r.segment_shortcut = kdot as i64;
            r.nesting = self.plane.then_some((p as usize, q as usize));
        }
        StateSummary { sigma, components: ncomp, kdot, p, q }
    }

    /// Whether circle `c` separates the leg from the outer face. Regions of the
    /// plane minus that circle are unions of original faces: faces are merged
    /// across edges off the circle, through the channel of each smoothing, and
    /// with any corner cut off by an arc that is off the circle.
    fn circle_encloses_leg(&self, bits: u64, c: u32, sc: &mut Scratch) -> bool {
        let d = self.d;
        let parent = &mut sc.parent;
        for (i, x) in parent.iter_mut().enumerate() {
            *x = i as u32;
        }
        for e in 0..d.num_edges() {
            if sc.comp[e] != c {
                union(parent, d.face_of(2 * e as u32), d.face_of(2 * e as u32 + 1));
            }
        }
        for (v, vert) in d.vertices().iter().enumerate() {
            let Vertex::Crossing { he, .. } = vert else { continue };
            let ci = self.cross_idx[v] as usize;
            let a = bits >> ci & 1 == 1;
            // corner k lies between slots k and k+1 and belongs to the face left of he[k]
            let corner = |k: usize| d.face_of(he[k % 4]);
            // arcs hug corners; the other two corners form the channel
            let mut hugged = vec![];
            for x in 0..4 {
                let y = self.partner(ci, x, a);
                if y == (x + 1) % 4 {
                    hugged.push((x, sc.comp[edge_of(he[x]) as usize]));
                }
            }
            let channel: Vec<usize> = (0..4).filter(|k| hugged.iter().all(|(h, _)| h != k)).collect();
            union(parent, corner(channel[0]), corner(channel[1]));
            for (k, comp) in hugged {
                if comp != c {
                    union(parent, corner(k), corner(channel[0]));
                }
            }
        }
        let outer = d.outer_face().expect("plane") as u32;
        let leg = d.leg_face().expect("knotoid");
        find(parent, outer) != find(parent, leg)
    }
}

pub fn resolve(d: &Diagram, s: &State, a: &ShortcutPath) -> Result<Resolution> {
    let r = Resolver::new(d, Some(a));
    if s.values.len() != r.crossings() {
        return Err(Error::PartialState { expected: r.crossings(), got: s.values.len() });
    }
    let mut res = Resolution { segment: vec![], circles: vec![], sigma: 0, component_count: 0, segment_shortcut: 0, nesting: None };
    let mut sc = r.scratch();
    r.trace(s.bits(), &mut sc, Some(&mut res));
    Ok(res)
}

pub fn nesting(d: &Diagram, r: &Resolution) -> Result<(usize, usize)> {
    if !d.surface().is_plane() {
        return Err(Error::NotPlanar);
    }
    r.nesting.ok_or(Error::NotPlanar)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StateSumOptions {
    pub allow_large: bool,
}

fn check_size(n: usize, opts: StateSumOptions) -> Result<()> {
    if n > MAX_STATESUM_CROSSINGS && !opts.allow_large {
        return Err(Error::StateSpaceTooLarge { crossings: n, limit: MAX_STATESUM_CROSSINGS });
    }
    if n >= 64 {
        return Err(Error::StateSpaceTooLarge { crossings: n, limit: 63 });
    }
    Ok(())
}

/// Counts of states by summary over all 2ⁿ states.
pub fn state_table(d: &Diagram, a: Option<&ShortcutPath>, opts: StateSumOptions) -> Result<BTreeMap<StateSummary, u64>> {
    let r = Resolver::new(d, a);
    let n = r.crossings();
    check_size(n, opts)?;
    let total: u64 = 1 << n;
    let merge = |mut x: BTreeMap<StateSummary, u64>, y: BTreeMap<StateSummary, u64>| {
        for (k, v) in y {
            *x.entry(k).or_insert(0) += v;
        }
        x
    };
    let run = |lo: u64, hi: u64| {
        let mut sc = r.scratch();
        let mut m = BTreeMap::new();
        for bits in lo..hi {
            *m.entry(r.trace(bits, &mut sc, None)).or_insert(0) += 1;
        }
        m
    };
    if n < 12 {
        return Ok(run(0, total));
    }
    let chunk = 1u64 << 10;
    Ok((0..total / chunk).into_par_iter().map(|i| run(i * chunk, (i + 1) * chunk)).reduce(BTreeMap::new, merge))
}

/// Per-state rows `(bits, summary)` in binary-counter order.
pub fn state_rows(d: &Diagram, a: Option<&ShortcutPath>, opts: StateSumOptions) -> Result<Vec<(u64, StateSummary)>> {
    let r = Resolver::new(d, a);
    let n = r.crossings();
    check_size(n, opts)?;
    let mut sc = r.scratch();
    Ok((0..1u64 << n).map(|b| (b, r.trace(b, &mut sc, None))).collect())
}

/// `(|s₊|, |s₋|)` for the all-A and all-B states.
pub fn extreme_component_counts(d: &Diagram) -> (usize, usize) {
    let r = Resolver::new(d, None);
    let n = r.crossings();
    let mut sc = r.scratch();
    let all_a = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    (r.trace(all_a, &mut sc, None).components as usize, r.trace(0, &mut sc, None).components as usize)
}

pub fn state_rows_tsv(d: &Diagram, a: Option<&ShortcutPath>, opts: StateSumOptions) -> Result<String> {
    let n = d.crossing_count();
    let mut out = String::from("state\tsigma\tcomponents\tkdot\tp\tq\n");
    for (b, s) in state_rows(d, a, opts)? {
        let bits: String = (0..n).map(|i| if b >> i & 1 == 1 { '+' } else { '-' }).collect();
        out.push_str(&format!("{bits}\t{}\t{}\t{}\t{}\t{}\n", s.sigma, s.components, s.kdot, s.p, s.q));
    }
    Ok(out)
}
