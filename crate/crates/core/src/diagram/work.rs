//! Mutable port graph used to edit diagrams.
//!
//! Vertex `v` owns ports `4v..4v+4` (endpoints only use `4v`). `link[p]` is the
//! other end of the edge at `p`, `out[p]` says whether that edge leaves `p`.
//! The outer face, if any, is the face on the left of the half-edge leaving
//! port `outer`.

use super::{Diagram, Port, SurfaceSpec, VKind, NONE};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Work {
    pub kinds: Vec<Option<VKind>>,
    pub link: Vec<u32>,
    pub out: Vec<bool>,
    pub loops: usize,
    pub outer: Option<u32>,
    pub plane: bool,
}

#[inline]
pub(crate) fn port(v: u32, s: usize) -> u32 {
    4 * v + s as u32
}

#[inline]
pub(crate) fn pv(p: u32) -> u32 {
    p / 4
}

#[inline]
pub(crate) fn ps(p: u32) -> usize {
    (p % 4) as usize
}

impl Work {
    pub fn new(plane: bool) -> Work {
        Work { kinds: vec![], link: vec![], out: vec![], loops: 0, outer: None, plane }
    }

    pub fn from_diagram(d: &Diagram) -> Work {
        let mut w = Work::new(d.surface.is_plane());
        if d.is_free_loop() {
            w.loops = 1;
            return w;
        }
        for v in &d.verts {
            w.add_vertex(v.kind());
        }
        for e in 0..d.num_edges() as u32 {
            let (t, h) = (d.port_of(2 * e), d.port_of(2 * e + 1));
            w.connect(port(t.0, t.1 as usize), port(h.0, h.1 as usize));
        }
        if let Some(h) = d.outer_he() {
            let (v, s) = d.port_of(h);
            w.outer = Some(port(v, s as usize));
        }
        w
    }

    pub fn add_vertex(&mut self, k: VKind) -> u32 {
        let v = self.kinds.len() as u32;
        self.kinds.push(Some(k));
        self.link.extend([NONE; 4]);
        self.out.extend([false; 4]);
        v
    }

    pub fn alive(&self, v: u32) -> bool {
        self.kinds.get(v as usize).is_some_and(|k| k.is_some())
    }

    /// Oriented edge `tail -> head`.
    pub fn connect(&mut self, tail: u32, head: u32) {
        self.link[tail as usize] = head;
        self.link[head as usize] = tail;
        self.out[tail as usize] = true;
        self.out[head as usize] = false;
    }

    /// Splits the edge leaving `tail` by routing it through `a` (in) and `b` (out).
    pub fn subdivide(&mut self, tail: u32, a: u32, b: u32) {
        debug_assert!(self.out[tail as usize]);
        let head = self.link[tail as usize];
        self.connect(tail, a);
        self.connect(b, head);
    }

    pub fn rot_prev(&self, p: u32) -> u32 {
        match self.kinds[pv(p) as usize] {
            Some(VKind::Crossing { .. }) => port(pv(p), (ps(p) + 3) % 4),
            _ => p,
        }
    }

    /// Next half-edge (named by origin port) around the face on the left.
    pub fn face_next(&self, p: u32) -> u32 {
        self.rot_prev(self.link[p as usize])
    }

    /// Moves `outer` to a port of the same face that is not on one of `avoid`.
    pub fn relocate_outer(&mut self, avoid: &[u32]) -> Result<()> {
        let Some(start) = self.outer else { return Ok(()) };
        let mut p = start;
        loop {
            if !avoid.contains(&pv(p)) {
                self.outer = Some(p);
                return Ok(());
            }
            p = self.face_next(p);
            if p == start {
                return Err(Error::StaleMove);
            }
        }
    }

    /// Removes vertex `v`, joining its ports in the given pairs. Strands passing
    /// through several ports of `v` are followed until they leave it; closed
    /// chains become free loops.
    pub fn dissolve(&mut self, v: u32, pairs: &[(usize, usize)]) {
        let mut thr = [usize::MAX; 4];
        for &(a, b) in pairs {
            thr[a] = b;
            thr[b] = a;
        }
        // the face left of an outer port on v is right of its partner's edge and stays there
        let outer_partner = self.outer.filter(|&o| pv(o) == v).map(|o| self.link[o as usize]).filter(|&x| pv(x) != v);
        let deg = self.kinds[v as usize].map(|k| k.degree()).unwrap_or(0);
        let mut visited = [false; 4];
        for s in 0..deg {
            let p = port(v, s);
            let x = self.link[p as usize];
            if visited[s] || pv(x) == v {
                continue;
            }
            visited[s] = true;
            let mut cur = s;
            let end = loop {
                let nxt = thr[cur];
                visited[nxt] = true;
                let y = self.link[port(v, nxt) as usize];
                if pv(y) == v {
                    cur = ps(y);
                    visited[cur] = true;
                } else {
                    break y;
                }
            };
            debug_assert_ne!(self.out[x as usize], self.out[end as usize], "incoherent pass-through");
            if self.out[x as usize] {
                self.connect(x, end);
            } else {
                self.connect(end, x);
            }
            if outer_partner == Some(x) {
                self.outer = Some(end);
            }
        }
        // remaining ports only link among themselves
        let mut s = 0;
        while s < deg {
            if !visited[s] {
                let mut cur = s;
                loop {
                    visited[cur] = true;
                    let y = ps(self.link[port(v, cur) as usize]);
                    visited[y] = true;
                    cur = thr[y];
                    if visited[cur] {
                        break;
                    }
                }
                self.loops += 1;
            }
            s += 1;
        }
        for s in 0..4 {
            self.link[port(v, s) as usize] = NONE;
        }
        self.kinds[v as usize] = None;
    }

    /// Straight-through removal of a crossing.
    pub fn dissolve_straight(&mut self, v: u32) {
        self.dissolve(v, &[(0, 2), (1, 3)]);
    }

    /// Smoothing along the orientation.
    pub fn dissolve_oriented(&mut self, v: u32) {
        let p0 = port(v, 0);
        // in-port at slot 0 pairs with the out-port among slots 1, 3
        let pairs = if self.out[port(v, 1) as usize] != self.out[p0 as usize] {
            [(0, 1), (2, 3)]
        } else {
            [(0, 3), (1, 2)]
        };
        self.dissolve(v, &pairs);
    }

    pub fn live_vertices(&self) -> Vec<u32> {
        (0..self.kinds.len() as u32).filter(|&v| self.alive(v)).collect()
    }

    pub fn build(&self) -> Result<Diagram> {
        let live = self.live_vertices();
        if live.is_empty() {
            return match self.loops {
                1 => Ok(Diagram::unknot_loop(self.plane)),
                _ => Err(Error::DisconnectedSegment),
            };
        }
        if self.loops > 0 {
            return Err(Error::DisconnectedSegment);
        }
        let mut new_id = vec![NONE; self.kinds.len()];
        let mut kinds = Vec::with_capacity(live.len());
        for (i, &v) in live.iter().enumerate() {
            new_id[v as usize] = i as u32;
            kinds.push(self.kinds[v as usize].unwrap());
        }
        let conv = |p: u32| -> Port { (new_id[pv(p) as usize], ps(p) as u8) };
        let mut edges = Vec::new();
        for &v in &live {
            let deg = self.kinds[v as usize].unwrap().degree();
            for s in 0..deg {
                let p = port(v, s);
                if self.link[p as usize] == NONE {
                    return Err(Error::StaleMove);
                }
                if self.out[p as usize] {
                    edges.push((conv(p), conv(self.link[p as usize])));
                }
            }
        }
        let surface = match (self.plane, self.outer) {
            (false, _) => SurfaceSpec::Sphere,
            (true, Some(o)) if self.alive(pv(o)) => SurfaceSpec::PlanePort(conv(o)),
            (true, _) => return Err(Error::StaleMove),
        };
        Diagram::from_parts(&kinds, &edges, surface)
    }

    /// Splits into connected pieces on the sphere; free loops are only counted.
    pub fn build_pieces(&self) -> Result<(Vec<Diagram>, usize)> {
        let live = self.live_vertices();
        let mut piece = vec![NONE; self.kinds.len()];
        let mut groups: Vec<Vec<u32>> = vec![];
        for &v0 in &live {
            if piece[v0 as usize] != NONE {
                continue;
            }
            let id = groups.len() as u32;
            let mut group = vec![v0];
            piece[v0 as usize] = id;
            let mut i = 0;
            while i < group.len() {
                let v = group[i];
                for s in 0..self.kinds[v as usize].unwrap().degree() {
                    let w = pv(self.link[port(v, s) as usize]);
                    if piece[w as usize] == NONE {
                        piece[w as usize] = id;
                        group.push(w);
                    }
                }
                i += 1;
            }
            groups.push(group);
        }
        let mut out = Vec::with_capacity(groups.len());
        for g in 0..groups.len() as u32 {
            let mut sub = self.clone();
            sub.plane = false;
            sub.outer = None;
            sub.loops = 0;
            for &v in &live {
                if piece[v as usize] != g {
                    sub.kinds[v as usize] = None;
                }
            }
            out.push(sub.build()?);
        }
        Ok((out, self.loops))
    }

    /// Appends a copy of another work graph, returning the vertex offset.
    pub fn append(&mut self, other: &Work) -> u32 {
        let off = self.kinds.len() as u32;
        self.kinds.extend(other.kinds.iter().copied());
        self.link.extend(other.link.iter().map(|&l| if l == NONE { NONE } else { l + 4 * off }));
        self.out.extend(other.out.iter().copied());
        self.loops += other.loops;
        off
    }
}
