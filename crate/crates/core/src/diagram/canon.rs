use std::fmt::Write as _;

use super::{is_forward, twin, Diagram, Role, Vertex, NONE};

impl Diagram {
    /// Breadth-first relabeling from `root` via twin and rotation; each half-edge
    /// contributes its twin label, its rotation successor label and an attribute word.
    fn code_from(&self, root: u32) -> Vec<u32> {
        let nh = self.origin.len();
        let outer = self.outer_face().map(|f| f as u32);
        let mut label = vec![NONE; nh];
        let mut order = Vec::with_capacity(nh);
        label[root as usize] = 0;
        order.push(root);
        let mut code = Vec::with_capacity(3 * nh);
        let mut i = 0;
        while i < order.len() {
            let h = order[i];
            i += 1;
            let rn = self.rot_next(h);
            for n in [twin(h), rn] {
                if label[n as usize] == NONE {
                    label[n as usize] = order.len() as u32;
                    order.push(n);
                }
            }
            let kind = match &self.verts[self.origin[h as usize] as usize] {
                Vertex::Crossing { .. } => 0,
                Vertex::Endpoint { role: Role::Leg, .. } => 1,
                Vertex::Endpoint { .. } => 2,
            };
            let attr = kind << 3
                | (is_forward(h) as u32) << 2
                | (self.is_over_he(h) as u32) << 1
                | (outer == Some(self.face_of[h as usize])) as u32;
            code.extend([label[twin(h) as usize], label[rn as usize], attr]);
        }
        code
    }

    /// Label-independent code; equal codes mean isomorphic diagrams (as oriented
    /// maps with over/under data, endpoints and outer face). Knotoids are rooted
    /// at the leg, link diagrams take the least code over all roots.
    pub fn canonical_code(&self) -> String {
        if self.is_free_loop() {
            return "O".to_string();
        }
        let code = match self.leg_he() {
            Some(r) => self.code_from(r),
            None => (0..self.origin.len() as u32).map(|r| self.code_from(r)).min().unwrap(),
        };
        let mut s = String::with_capacity(code.len() * 3);
        s.push(if self.outer_face().is_some() { 'P' } else { 'S' });
        for (i, x) in code.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            let _ = write!(s, "{x:x}");
        }
        s
    }
}
