//! Involutions and the product of knotoid diagrams.

use super::work::{port, Work};
use super::{twin, Diagram, Port, Role, SurfaceSpec, VKind};
use crate::error::{Error, Result};

impl Diagram {
    /// Exchanges over- and underpasses.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for v in d.verts.iter_mut() {
            if let super::Vertex::Crossing { over_ac, .. } = v {
                *over_ac = !*over_ac;
            }
        }
        d
    }

    /// Exchanges leg and head and reverses every component.
    pub fn reverse(&self) -> Diagram {
        if self.is_free_loop() {
            return self.clone();
        }
        let (mut kinds, edges) = self.parts();
        for k in kinds.iter_mut() {
            if let VKind::Endpoint(r) = k {
                *r = match r {
                    Role::Leg => Role::Head,
                    Role::Head => Role::Leg,
                };
            }
        }
        let edges: Vec<(Port, Port)> = edges.into_iter().map(|(t, h)| (h, t)).collect();
        Diagram::from_parts(&kinds, &edges, self.surface_spec()).expect("reversal preserves validity")
    }

    /// Reflection of the surface: reverses every cyclic order.
    pub fn symmetry(&self) -> Diagram {
        if self.is_free_loop() {
            return self.clone();
        }
        let (kinds, edges) = self.parts();
        let flip = |(v, s): Port| -> Port { (v, (4 - s) % 4 % kinds[v as usize].degree() as u8) };
        let edges: Vec<(Port, Port)> = edges.into_iter().map(|(t, h)| (flip(t), flip(h))).collect();
        // the old outer face lies to the right of its half-edge after reflecting
        let spec = match self.outer_he() {
            Some(h) => SurfaceSpec::PlanePort(flip(self.port_of(twin(h)))),
            None => SurfaceSpec::Sphere,
        };
        Diagram::from_parts(&kinds, &edges, spec).expect("reflection preserves validity")
    }

    /// Glues the head of `self` to the leg of `other`.
    pub fn product(&self, other: &Diagram) -> Result<Diagram> {
        if !self.is_knotoid() || !other.is_knotoid() {
            return Err(Error::NotAKnotoid);
        }
        if self.surface.is_plane() != other.surface.is_plane() {
            return Err(Error::IncompatibleSurfaces);
        }
        if self.surface.is_plane() && !(self.is_normal() && other.is_normal()) {
            return Err(Error::IncompatibleSurfaces);
        }
        let mut w = Work::from_diagram(self);
        let mut w2 = Work::from_diagram(other);
        w2.outer = None;
        let off = w.append(&w2);
        let head = self.head.unwrap();
        let leg = other.leg.unwrap() + off;
        w.relocate_outer(&[head])?;
        let x = w.link[port(head, 0) as usize];
        let y = w.link[port(leg, 0) as usize];
        for v in [head, leg] {
            w.kinds[v as usize] = None;
            w.link[port(v, 0) as usize] = super::NONE;
        }
        w.connect(x, y);
        w.build()
    }
}


impl Diagram {
    /// Cuts a closed component open at edge `e`, giving a knotoid whose leg and
    /// head share a face.
    pub fn cut_open(&self, e: u32) -> Result<Diagram> {
        if self.is_knotoid() {
            return Err(Error::Orientation("diagram already has endpoints".into()));
        }
        if self.is_free_loop() {
            let t = Diagram::trivial();
            return if self.surface.is_plane() { t.in_plane(0) } else { Ok(t) };
        }
        if e as usize >= self.num_edges() {
            return Err(Error::StaleMove);
        }
        let mut w = Work::from_diagram(self);
        let leg = w.add_vertex(VKind::Endpoint(Role::Leg));
        let head = w.add_vertex(VKind::Endpoint(Role::Head));
        let (tv, ts) = self.port_of(2 * e);
        let tail = port(tv, ts as usize);
        let to = w.link[tail as usize];
        w.connect(tail, port(head, 0));
        w.connect(port(leg, 0), to);
        w.build()
    }
}
