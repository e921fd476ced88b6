//! Shortcuts (dual paths from the leg's face to the head's face) and the
//! closures obtained by running a shortcut under or over the diagram.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::work::{port, Work};
use super::{Diagram, VKind, NONE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub edge: u32,
    /// +1 when the crossed strand passes the shortcut from right to left.
    pub sign: i32,
    pub from_face: u32,
    pub to_face: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShortcutPath {
    pub start_face: u32,
    pub steps: Vec<Step>,
}

impl ShortcutPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end_face(&self) -> u32 {
        self.steps.last().map_or(self.start_face, |s| s.to_face)
    }
}

impl Diagram {
    fn step(&self, edge: u32, from_face: u32, to_face: u32) -> Step {
        let sign = if self.face_of[2 * edge as usize] == from_face { 1 } else { -1 };
        Step { edge, sign, from_face, to_face }
    }

    /// Dual adjacency: for each face, `(neighbor face, edge)` sorted, one edge per neighbor.
    fn dual(&self) -> Vec<Vec<(u32, u32)>> {
        let mut adj: Vec<Vec<(u32, u32)>> = vec![vec![]; self.faces.len()];
        for e in 0..self.num_edges() as u32 {
            let (f, g) = (self.face_of[2 * e as usize], self.face_of[2 * e as usize + 1]);
            if f != g {
                adj[f as usize].push((g, e));
                adj[g as usize].push((f, e));
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup_by_key(|x| x.0);
        }
        adj
    }

    pub fn leg_face(&self) -> Option<u32> {
        self.leg_he().map(|h| self.face_of[h as usize])
    }

    pub fn head_face(&self) -> Option<u32> {
        self.head_he().map(|h| self.face_of[h as usize])
    }

    /// Shortest dual path from the leg's face to the head's face; ties go to smaller face ids.
    pub fn shortcut(&self) -> Result<ShortcutPath> {
        let (Some(s), Some(t)) = (self.leg_face(), self.head_face()) else {
            return Err(Error::NotAKnotoid);
        };
        let adj = self.dual();
        let mut prev = vec![(NONE, NONE); self.faces.len()];
        let mut seen = vec![false; self.faces.len()];
        seen[s as usize] = true;
        let mut q = VecDeque::from([s]);
        while let Some(f) = q.pop_front() {
            if f == t {
                break;
            }
            for &(g, e) in &adj[f as usize] {
                if !seen[g as usize] {
                    seen[g as usize] = true;
                    prev[g as usize] = (f, e);
                    q.push_back(g);
                }
            }
        }
        let mut steps = vec![];
        let mut f = t;
        while f != s {
            let (p, e) = prev[f as usize];
            steps.push(self.step(e, p, f));
            f = p;
        }
        steps.reverse();
        Ok(ShortcutPath { start_face: s, steps })
    }

    /// A random simple dual path from the leg's face to the head's face.
    pub fn random_shortcut<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ShortcutPath> {
        let (Some(s), Some(t)) = (self.leg_face(), self.head_face()) else {
            return Err(Error::NotAKnotoid);
        };
        let nf = self.faces.len();
        let mut adj: Vec<Vec<(u32, u32)>> = vec![vec![]; nf];
        for e in 0..self.num_edges() as u32 {
            let (f, g) = (self.face_of[2 * e as usize], self.face_of[2 * e as usize + 1]);
            if f != g {
                adj[f as usize].push((g, e));
                adj[g as usize].push((f, e));
            }
        }
        // randomized depth-first search; the stack holds the current simple path
        let mut on_path = vec![false; nf];
        let mut dead = vec![false; nf];
        let mut path: Vec<(u32, u32)> = vec![(s, NONE)];
        let mut options: Vec<Vec<(u32, u32)>> = vec![];
        on_path[s as usize] = true;
        let mut opts = adj[s as usize].clone();
        opts.shuffle(rng);
        options.push(opts);
        while let Some(&(f, _)) = path.last() {
            if f == t {
                break;
            }
            let top = options.last_mut().unwrap();
            match top.pop() {
                Some((g, e)) => {
                    if on_path[g as usize] || dead[g as usize] {
                        continue;
                    }
                    on_path[g as usize] = true;
                    path.push((g, e));
                    let mut opts = adj[g as usize].clone();
                    opts.shuffle(rng);
                    options.push(opts);
                }
                None => {
                    on_path[f as usize] = false;
                    dead[f as usize] = true;
                    path.pop();
                    options.pop();
                }
            }
        }
        let steps = path.windows(2).map(|w| self.step(w[1].1, w[0].0, w[1].0)).collect();
        Ok(ShortcutPath { start_face: s, steps })
    }

    /// Algebraic intersection of all components with the path.
    pub fn intersection_with(&self, path: &ShortcutPath) -> i64 {
        path.steps.iter().map(|s| s.sign as i64).sum()
    }

    pub fn closure_under(&self) -> Result<Diagram> {
        self.closure_along(&self.shortcut()?, false)
    }

    pub fn closure_over(&self) -> Result<Diagram> {
        self.closure_along(&self.shortcut()?, true)
    }

    /// Closes the segment by an arc along `path` from head back to leg, passing
    /// over or under everything it meets. The result lives on the sphere.
    pub fn closure_along(&self, path: &ShortcutPath, over: bool) -> Result<Diagram> {
        let (Some(leg), Some(head)) = (self.leg, self.head) else {
            return Err(Error::NotAKnotoid);
        };
        let mut w = Work::from_diagram(self);
        w.plane = false;
        w.outer = None;
        if self.crossing_count() == 0 && path.is_empty() && self.comps.len() == 1 {
            return Ok(Diagram::unknot_loop(false));
        }
        let mut cs = Vec::with_capacity(path.len());
        for st in &path.steps {
            let e = st.edge;
            // the half-edge of e with the previous face on its left
            let h = if self.face_of[2 * e as usize] == st.from_face { 2 * e } else { 2 * e + 1 };
            // slots: 0 toward h's head, 1 into the previous face, 2 toward h's tail, 3 into the next face
            let c = w.add_vertex(VKind::Crossing { over_ac: !over });
            let t = self.port_of(2 * e);
            let tail = port(t.0, t.1 as usize);
            if h == 2 * e {
                w.subdivide(tail, port(c, 2), port(c, 0));
            } else {
                w.subdivide(tail, port(c, 0), port(c, 2));
            }
            cs.push(c);
        }
        let x = w.link[port(head, 0) as usize];
        let y = w.link[port(leg, 0) as usize];
        for v in [leg, head] {
            w.kinds[v as usize] = None;
            w.link[port(v, 0) as usize] = NONE;
        }
        let mut from = x;
        for &c in cs.iter().rev() {
            w.connect(from, port(c, 3));
            from = port(c, 1);
        }
        w.connect(from, y);
        w.build()
    }
}
