//! Knotoid diagrams as combinatorial planar maps.
//!
//! Edge `e` owns half-edges `2e` and `2e + 1`; `2e` always points along the
//! orientation of its component, so `twin(h) = h ^ 1`. Every vertex lists its
//! half-edges counterclockwise and the face of a half-edge is the one on its
//! left, traced by `next(h) = rot_prev(twin(h))`.

mod canon;
mod ops;
mod pd;
mod shortcut;
pub(crate) mod work;

use serde::Serialize;

use crate::error::{Error, Result};

pub use shortcut::{ShortcutPath, Step};

pub const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Leg,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VKind {
    /// `over_ac`: slots 0 and 2 carry the overpass.
    Crossing { over_ac: bool },
    Endpoint(Role),
}

impl VKind {
    pub fn degree(self) -> usize {
        match self {
            VKind::Crossing { .. } => 4,
            VKind::Endpoint(_) => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    Crossing { he: [u32; 4], over_ac: bool },
    Endpoint { role: Role, he: u32 },
}

impl Vertex {
    pub fn kind(&self) -> VKind {
        match *self {
            Vertex::Crossing { over_ac, .. } => VKind::Crossing { over_ac },
            Vertex::Endpoint { role, .. } => VKind::Endpoint(role),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Surface {
    Sphere,
    Plane { outer_face: usize },
}

impl Surface {
    pub fn is_plane(&self) -> bool {
        matches!(self, Surface::Plane { .. })
    }
}

/// How a caller names the outer face while a diagram is being assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SurfaceSpec {
    Sphere,
    /// Face index in the assembled diagram's own numbering.
    PlaneFace(usize),
    /// The face on the left of the half-edge leaving this port.
    PlanePort(Port),
}

/// `(vertex, slot)`.
pub(crate) type Port = (u32, u8);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub closed: bool,
    /// Edges in traversal order.
    pub edges: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub(crate) verts: Vec<Vertex>,
    pub(crate) origin: Vec<u32>,
    pub(crate) slot: Vec<u8>,
    pub(crate) comp_of: Vec<u32>,
    pub(crate) comps: Vec<Component>,
    pub(crate) face_of: Vec<u32>,
    pub(crate) faces: Vec<Vec<u32>>,
    pub(crate) surface: Surface,
    pub(crate) leg: Option<u32>,
    pub(crate) head: Option<u32>,
}

#[inline]
pub fn twin(h: u32) -> u32 {
    h ^ 1
}

#[inline]
pub fn edge_of(h: u32) -> u32 {
    h >> 1
}

#[inline]
pub fn is_forward(h: u32) -> bool {
    h & 1 == 0
}

impl Diagram {
    /// A single edge from leg to head.
    pub fn trivial() -> Diagram {
        let kinds = vec![VKind::Endpoint(Role::Leg), VKind::Endpoint(Role::Head)];
        Diagram::from_parts(&kinds, &[((0, 0), (1, 0))], SurfaceSpec::Sphere).expect("trivial diagram is valid")
    }

    /// The crossing-free closed loop.
    pub fn unknot_loop(plane: bool) -> Diagram {
        Diagram {
            verts: vec![],
            origin: vec![NONE, NONE],
            slot: vec![0, 0],
            comp_of: vec![0],
            comps: vec![Component { closed: true, edges: vec![0] }],
            face_of: vec![0, 1],
            faces: vec![vec![0], vec![1]],
            surface: if plane { Surface::Plane { outer_face: 1 } } else { Surface::Sphere },
            leg: None,
            head: None,
        }
    }

    pub(crate) fn from_parts(kinds: &[VKind], edges: &[(Port, Port)], surface: SurfaceSpec) -> Result<Diagram> {
        let nv = kinds.len();
        let mut base = Vec::with_capacity(nv + 1);
        let mut total = 0usize;
        for k in kinds {
            base.push(total);
            total += k.degree();
        }
        base.push(total);
        let port_index = |p: Port| -> Result<usize> {
            let (v, s) = p;
            let v = v as usize;
            if v >= nv || (s as usize) >= kinds[v].degree() {
                return Err(Error::Syntax { line: 0, msg: format!("port ({v},{s}) out of range") });
            }
            Ok(base[v] + s as usize)
        };
        let ne = edges.len();
        let mut he_at = vec![NONE; total];
        for (e, &(t, h)) in edges.iter().enumerate() {
            for (k, p) in [t, h].into_iter().enumerate() {
                let i = port_index(p)?;
                if he_at[i] != NONE {
                    return Err(Error::Syntax { line: 0, msg: format!("slot {} of vertex {} used twice", p.1, p.0) });
                }
                he_at[i] = (2 * e + k) as u32;
            }
        }
        if let Some(i) = he_at.iter().position(|&h| h == NONE) {
            let v = base.partition_point(|&b| b <= i) - 1;
            return Err(Error::Syntax { line: 0, msg: format!("vertex {v} has an unused slot") });
        }
        let mut origin = vec![NONE; 2 * ne];
        let mut slot = vec![0u8; 2 * ne];
        let mut verts = Vec::with_capacity(nv);
        let (mut legs, mut heads) = (Vec::new(), Vec::new());
        for (v, k) in kinds.iter().enumerate() {
            let hs = &he_at[base[v]..base[v + 1]];
            for (s, &h) in hs.iter().enumerate() {
                origin[h as usize] = v as u32;
                slot[h as usize] = s as u8;
            }
            verts.push(match *k {
                VKind::Crossing { over_ac } => Vertex::Crossing { he: [hs[0], hs[1], hs[2], hs[3]], over_ac },
                VKind::Endpoint(role) => {
                    match role {
                        Role::Leg => legs.push(v as u32),
                        Role::Head => heads.push(v as u32),
                    }
                    Vertex::Endpoint { role, he: hs[0] }
                }
            });
        }
        if legs.len() != heads.len() || legs.len() > 1 {
            return Err(Error::BadEndpoints { legs: legs.len(), heads: heads.len() });
        }
        let mut d = Diagram {
            verts,
            origin,
            slot,
            comp_of: vec![NONE; ne],
            comps: vec![],
            face_of: vec![],
            faces: vec![],
            surface: Surface::Sphere,
            leg: legs.first().copied(),
            head: heads.first().copied(),
        };
        d.check_orientation()?;
        d.trace_components()?;
        d.check_connected()?;
        d.trace_faces();
        let euler = nv as i64 - ne as i64 + d.faces.len() as i64;
        if euler != 2 {
            return Err(Error::NonPlanar { euler });
        }
        d.surface = match surface {
            SurfaceSpec::Sphere => Surface::Sphere,
            SurfaceSpec::PlaneFace(f) => {
                if f >= d.faces.len() {
                    return Err(Error::Syntax { line: 0, msg: format!("outer face {f} does not exist") });
                }
                Surface::Plane { outer_face: f }
            }
            SurfaceSpec::PlanePort(p) => {
                let h = he_at[port_index(p)?];
                Surface::Plane { outer_face: d.face_of[h as usize] as usize }
            }
        };
        Ok(d)
    }

    fn check_orientation(&self) -> Result<()> {
        for (v, vert) in self.verts.iter().enumerate() {
            match vert {
                Vertex::Crossing { he, .. } => {
                    for i in 0..2 {
                        if is_forward(he[i]) == is_forward(he[i + 2]) {
                            return Err(Error::Orientation(format!("strand through crossing {v} slots {i},{} is not coherent", i + 2)));
                        }
                    }
                }
                Vertex::Endpoint { role, he } => {
                    let ok = match role {
                        Role::Leg => is_forward(*he),
                        Role::Head => !is_forward(*he),
                    };
                    if !ok {
                        return Err(Error::Orientation(format!("endpoint {v} is traversed the wrong way")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Half-edge continuing the strand after arriving along `h`, or `None` at an endpoint.
    pub fn strand_next(&self, h: u32) -> Option<u32> {
        let t = twin(h);
        match &self.verts[self.origin[t as usize] as usize] {
            Vertex::Crossing { he, .. } => Some(he[(self.slot[t as usize] as usize + 2) % 4]),
            Vertex::Endpoint { .. } => None,
        }
    }

    fn trace_components(&mut self) -> Result<()> {
        let ne = self.num_edges();
        let mut comps = Vec::new();
        if let Some(l) = self.leg {
            let mut h = self.vertex_he(l, 0);
            let mut edges = vec![];
            loop {
                let e = edge_of(h);
                if self.comp_of[e as usize] != NONE {
                    return Err(Error::Orientation("segment revisits an edge".into()));
                }
                self.comp_of[e as usize] = 0;
                edges.push(e);
                match self.strand_next(h) {
                    Some(n) => h = n,
                    None => break,
                }
            }
            comps.push(Component { closed: false, edges });
        }
        for e0 in 0..ne as u32 {
            if self.comp_of[e0 as usize] != NONE {
                continue;
            }
            let c = comps.len() as u32;
            let mut edges = vec![];
            let mut h = 2 * e0;
            loop {
                let e = edge_of(h);
                if self.comp_of[e as usize] != NONE {
                    break;
                }
                self.comp_of[e as usize] = c;
                edges.push(e);
                h = self.strand_next(h).ok_or_else(|| Error::Orientation("circle ends at an endpoint".into()))?;
            }
            if edge_of(h) != e0 {
                return Err(Error::Orientation("circle does not close up".into()));
            }
            comps.push(Component { closed: true, edges });
        }
        self.comps = comps;
        Ok(())
    }

    fn check_connected(&self) -> Result<()> {
        let nv = self.verts.len();
        if nv == 0 {
            return Ok(());
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in self.vertex_hes(v as u32) {
                let w = self.origin[twin(h) as usize] as usize;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::DisconnectedSegment)
        }
    }

    fn trace_faces(&mut self) {
        let nh = self.origin.len();
        let mut face_of = vec![NONE; nh];
        let mut faces = Vec::new();
        for h0 in 0..nh as u32 {
            if face_of[h0 as usize] != NONE {
                continue;
            }
            let f = faces.len() as u32;
            let mut boundary = vec![];
            let mut h = h0;
            loop {
                face_of[h as usize] = f;
                boundary.push(h);
                h = self.face_next(h);
                if h == h0 {
                    break;
                }
            }
            faces.push(boundary);
        }
        self.face_of = face_of;
        self.faces = faces;
    }

    pub fn is_free_loop(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    pub fn num_edges(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn components(&self) -> &[Component] {
        &self.comps
    }

    pub fn component_of_edge(&self, e: u32) -> u32 {
        self.comp_of[e as usize]
    }

    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn face_of(&self, h: u32) -> u32 {
        self.face_of[h as usize]
    }

    pub fn origin(&self, h: u32) -> u32 {
        self.origin[h as usize]
    }

    pub fn slot(&self, h: u32) -> u8 {
        self.slot[h as usize]
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn outer_face(&self) -> Option<usize> {
        match self.surface {
            Surface::Plane { outer_face } => Some(outer_face),
            Surface::Sphere => None,
        }
    }

    pub fn leg(&self) -> Option<u32> {
        self.leg
    }

    pub fn head(&self) -> Option<u32> {
        self.head
    }

    pub fn is_knotoid(&self) -> bool {
        self.leg.is_some()
    }

    /// Knotoid diagram without circle components.
    pub fn is_single_segment(&self) -> bool {
        self.leg.is_some() && self.comps.len() == 1
    }

    pub fn vertex_he(&self, v: u32, s: usize) -> u32 {
        match &self.verts[v as usize] {
            Vertex::Crossing { he, .. } => he[s],
            Vertex::Endpoint { he, .. } => *he,
        }
    }

    pub fn vertex_hes(&self, v: u32) -> Vec<u32> {
        match &self.verts[v as usize] {
            Vertex::Crossing { he, .. } => he.to_vec(),
            Vertex::Endpoint { he, .. } => vec![*he],
        }
    }

    /// Half-edge leaving the leg.
    pub fn leg_he(&self) -> Option<u32> {
        self.leg.map(|l| self.vertex_he(l, 0))
    }

    /// Half-edge leaving the head (pointing backwards along the segment).
    pub fn head_he(&self) -> Option<u32> {
        self.head.map(|h| self.vertex_he(h, 0))
    }

    pub fn rot_next(&self, h: u32) -> u32 {
        match &self.verts[self.origin[h as usize] as usize] {
            Vertex::Crossing { he, .. } => he[(self.slot[h as usize] as usize + 1) % 4],
            Vertex::Endpoint { .. } => h,
        }
    }

    pub fn rot_prev(&self, h: u32) -> u32 {
        match &self.verts[self.origin[h as usize] as usize] {
            Vertex::Crossing { he, .. } => he[(self.slot[h as usize] as usize + 3) % 4],
            Vertex::Endpoint { .. } => h,
        }
    }

    /// Next half-edge around the face on the left of `h`.
    pub fn face_next(&self, h: u32) -> u32 {
        if self.is_free_loop() {
            return h;
        }
        self.rot_prev(twin(h))
    }

    /// Crossing vertex ids in increasing order.
    pub fn crossings(&self) -> Vec<u32> {
        (0..self.verts.len() as u32).filter(|&v| matches!(self.verts[v as usize], Vertex::Crossing { .. })).collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.verts.iter().filter(|v| matches!(v, Vertex::Crossing { .. })).count()
    }

    pub fn is_over_slot(&self, v: u32, s: usize) -> bool {
        match &self.verts[v as usize] {
            Vertex::Crossing { over_ac, .. } => (s % 2 == 0) == *over_ac,
            Vertex::Endpoint { .. } => false,
        }
    }

    /// Whether the half-edge leaving its crossing belongs to the overpass.
    pub fn is_over_he(&self, h: u32) -> bool {
        self.is_over_slot(self.origin[h as usize], self.slot[h as usize] as usize)
    }

    /// Sign of a crossing: +1 when the under strand, rotated from the over
    /// strand counterclockwise by a quarter turn, points outwards.
    pub fn sign(&self, v: u32) -> i32 {
        match &self.verts[v as usize] {
            Vertex::Crossing { he, over_ac } => {
                let o = if *over_ac { 0 } else { 1 };
                let over_out = if is_forward(he[o]) { o } else { o + 2 };
                let u = 1 - o;
                let under_out = if is_forward(he[u]) { u } else { u + 2 };
                if under_out == (over_out + 1) % 4 {
                    1
                } else {
                    -1
                }
            }
            Vertex::Endpoint { .. } => 0,
        }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings().iter().map(|&v| self.sign(v) as i64).sum()
    }

    /// Number of components after smoothing every crossing along the orientation.
    pub fn oriented_smoothing(&self) -> usize {
        if self.is_free_loop() {
            return 1;
        }
        let nh = self.origin.len();
        let mut seen = vec![false; nh / 2];
        let next = |h: u32| -> Option<u32> {
            let t = twin(h);
            match &self.verts[self.origin[t as usize] as usize] {
                Vertex::Crossing { he, .. } => {
                    let s = self.slot[t as usize] as usize;
                    let a = he[(s + 1) % 4];
                    Some(if is_forward(a) { a } else { he[(s + 3) % 4] })
                }
                Vertex::Endpoint { .. } => None,
            }
        };
        let mut count = 0;
        if let Some(mut h) = self.leg_he() {
            count += 1;
            loop {
                seen[edge_of(h) as usize] = true;
                match next(h) {
                    Some(n) => h = n,
                    None => break,
                }
            }
        }
        for e in 0..nh / 2 {
            if seen[e] {
                continue;
            }
            count += 1;
            let mut h = 2 * e as u32;
            while !seen[edge_of(h) as usize] {
                seen[edge_of(h) as usize] = true;
                h = next(h).expect("closed oriented smoothing");
            }
        }
        count
    }

    /// Over/under sequence met along each component; alternation is checked cyclically on circles.
    pub fn alternating(&self) -> bool {
        self.comps.iter().all(|c| {
            let seq: Vec<bool> = c
                .edges
                .iter()
                .filter_map(|&e| {
                    let h = 2 * e + 1;
                    match self.verts[self.origin[h as usize] as usize] {
                        Vertex::Crossing { .. } => Some(self.is_over_he(h)),
                        Vertex::Endpoint { .. } => None,
                    }
                })
                .collect();
            let pairs_ok = seq.windows(2).all(|w| w[0] != w[1]);
            if c.closed && seq.len() > 1 {
                pairs_ok && seq[0] != seq[seq.len() - 1]
            } else {
                pairs_ok
            }
        })
    }

    /// Parts suitable for [`Diagram::from_parts`]: vertex kinds and oriented edges.
    pub(crate) fn parts(&self) -> (Vec<VKind>, Vec<(Port, Port)>) {
        let kinds = self.verts.iter().map(|v| v.kind()).collect();
        let edges = (0..self.num_edges() as u32).map(|e| (self.port_of(2 * e), self.port_of(2 * e + 1))).collect();
        (kinds, edges)
    }

    pub(crate) fn port_of(&self, h: u32) -> Port {
        (self.origin[h as usize], self.slot[h as usize])
    }

    /// A half-edge whose left face is the outer face.
    pub(crate) fn outer_he(&self) -> Option<u32> {
        self.outer_face().map(|f| self.faces[f][0])
    }

    pub(crate) fn surface_spec(&self) -> SurfaceSpec {
        match self.outer_he() {
            Some(h) => SurfaceSpec::PlanePort(self.port_of(h)),
            None => SurfaceSpec::Sphere,
        }
    }

    /// Same map, viewed on the sphere.
    pub fn on_sphere(&self) -> Diagram {
        let mut d = self.clone();
        d.surface = Surface::Sphere;
        d
    }

    /// Same map with the given face at infinity.
    pub fn in_plane(&self, outer_face: usize) -> Result<Diagram> {
        if outer_face >= self.faces.len() {
            return Err(Error::Syntax { line: 0, msg: format!("outer face {outer_face} does not exist") });
        }
        let mut d = self.clone();
        d.surface = Surface::Plane { outer_face };
        Ok(d)
    }

    /// A normal diagram has its leg on the outer face.
    pub fn is_normal(&self) -> bool {
        match (self.outer_face(), self.leg_he()) {
            (Some(f), Some(h)) => self.face_of[h as usize] as usize == f,
            (None, _) => true,
            _ => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct VertexView {
            kind: &'static str,
            half_edges: Vec<u32>,
            #[serde(skip_serializing_if = "Option::is_none")]
            over: Option<&'static str>,
            #[serde(skip_serializing_if = "Option::is_none")]
            sign: Option<i32>,
        }
        let verts: Vec<VertexView> = self
            .verts
            .iter()
            .enumerate()
            .map(|(v, x)| match x {
                Vertex::Crossing { he, over_ac } => VertexView {
                    kind: "crossing",
                    half_edges: he.to_vec(),
                    over: Some(if *over_ac { "ac" } else { "bd" }),
                    sign: Some(self.sign(v as u32)),
                },
                Vertex::Endpoint { role, he } => VertexView {
                    kind: match role {
                        Role::Leg => "leg",
                        Role::Head => "head",
                    },
                    half_edges: vec![*he],
                    over: None,
                    sign: None,
                },
            })
            .collect();
        serde_json::json!({
            "vertices": verts,
            "components": self.comps,
            "faces": self.faces,
            "surface": self.surface,
        })
    }
}
