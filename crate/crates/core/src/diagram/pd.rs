//! Extended PD codes.
//!
//! ```text
//! X(a,b,c,d) over=ac     crossing, labels counterclockwise
//! leg(a)  head(b)        endpoints
//! circle(a,b,...)        traversal order of a closed component
//! surface=plane outer=k  face k at infinity (default surface=sphere)
//! unknot                 the crossing-free loop
//! ```
//!
//! Edges are indexed by sorted label (numeric labels first). Faces are numbered
//! by tracing from half-edges in index order, the forward half-edge of each edge
//! first. A circle runs along its first listed edge from that edge's earlier
//! occurrence to its later one, occurrences being ordered by statement and slot;
//! without a `circle` statement the same rule is applied to its lowest edge.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use super::{Diagram, Port, Role, SurfaceSpec, VKind, Vertex};
use crate::error::{Error, Result};

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn call<'a>(stmt: &'a str, name: &str, line: usize) -> Result<Option<(Vec<&'a str>, &'a str)>> {
    let Some(rest) = stmt.strip_prefix(name) else { return Ok(None) };
    let rest = rest.trim_start();
    let Some(rest) = rest.strip_prefix('(') else { return Ok(None) };
    let close = rest.find(')').ok_or_else(|| syntax(line, "missing ')'"))?;
    let args: Vec<&str> = rest[..close].split(',').map(str::trim).collect();
    let args = if args.len() == 1 && args[0].is_empty() { vec![] } else { args };
    if let Some(bad) = args.iter().find(|a| !is_label(a)) {
        return Err(syntax(line, format!("bad edge label {bad:?}")));
    }
    Ok(Some((args, rest[close + 1..].trim())))
}

fn label_rank_key(s: &str) -> (u8, u64, String) {
    match s.parse::<u64>() {
        Ok(n) => (0, n, String::new()),
        Err(_) => (1, 0, s.to_string()),
    }
}

pub fn parse(src: &str) -> Result<Diagram> {
    let mut kinds: Vec<VKind> = vec![];
    let mut labels: Vec<Vec<String>> = vec![];
    let mut circles: Vec<(usize, Vec<String>)> = vec![];
    let mut surface: Option<Option<usize>> = None;
    let mut unknot = false;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let stmt = raw.split('#').next().unwrap().trim();
        if stmt.is_empty() {
            continue;
        }
        if let Some((args, rest)) = call(stmt, "X", line)? {
            if args.len() != 4 {
                return Err(syntax(line, format!("crossing lists {} edges, expected 4", args.len())));
            }
            let over = rest.strip_prefix("over").map(|r| r.trim_start()).and_then(|r| r.strip_prefix('=')).map(str::trim);
            let over_ac = match over {
                Some("ac") => true,
                Some("bd") => false,
                _ => return Err(syntax(line, "crossing needs over=ac or over=bd")),
            };
            kinds.push(VKind::Crossing { over_ac });
            labels.push(args.iter().map(|s| s.to_string()).collect());
        } else if let Some((args, rest)) = call(stmt, "leg", line)?.or(call(stmt, "head", line)?) {
            if args.len() != 1 || !rest.is_empty() {
                return Err(syntax(line, "endpoint takes exactly one edge"));
            }
            let role = if stmt.starts_with("leg") { Role::Leg } else { Role::Head };
            kinds.push(VKind::Endpoint(role));
            labels.push(vec![args[0].to_string()]);
        } else if let Some((args, rest)) = call(stmt, "circle", line)? {
            if args.is_empty() || !rest.is_empty() {
                return Err(syntax(line, "circle needs at least one edge"));
            }
            circles.push((line, args.iter().map(|s| s.to_string()).collect()));
        } else if let Some(rest) = stmt.strip_prefix("surface") {
            let rest = rest.trim_start().strip_prefix('=').ok_or_else(|| syntax(line, "expected surface=..."))?.trim();
            if surface.is_some() {
                return Err(syntax(line, "surface given twice"));
            }
            if rest == "sphere" {
                surface = Some(None);
            } else if let Some(r) = rest.strip_prefix("plane") {
                let r = r.trim();
                let k = r
                    .strip_prefix("outer")
                    .map(|x| x.trim_start())
                    .and_then(|x| x.strip_prefix('='))
                    .and_then(|x| x.trim().parse::<usize>().ok())
                    .ok_or_else(|| syntax(line, "expected outer=<face index>"))?;
                surface = Some(Some(k));
            } else {
                return Err(syntax(line, format!("unknown surface {rest:?}")));
            }
        } else if stmt == "unknot" {
            unknot = true;
        } else {
            return Err(syntax(line, format!("unrecognized statement {stmt:?}")));
        }
    }
    let plane = matches!(surface, Some(Some(_)));
    if unknot {
        if !kinds.is_empty() || !circles.is_empty() {
            return Err(syntax(0, "unknot cannot be combined with other statements"));
        }
        let d = Diagram::unknot_loop(plane);
        if let Some(Some(k)) = surface {
            return d.in_plane(k);
        }
        return Ok(d);
    }

    // occurrences of each label in (statement, slot) order
    let mut occ: HashMap<&str, Vec<Port>> = HashMap::new();
    for (v, ls) in labels.iter().enumerate() {
        for (s, l) in ls.iter().enumerate() {
            occ.entry(l.as_str()).or_default().push((v as u32, s as u8));
        }
    }
    if let Some((l, ps)) = occ.iter().find(|(_, ps)| ps.len() != 2) {
        return Err(syntax(0, format!("edge {l} appears {} times, expected 2", ps.len())));
    }
    let mut names: Vec<&str> = occ.keys().copied().collect();
    names.sort_by_key(|s| label_rank_key(s));
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let label_at = |p: Port| -> &str { labels[p.0 as usize][p.1 as usize].as_str() };
    let ne = names.len();
    let mut oriented: Vec<Option<(Port, Port)>> = vec![None; ne];

    let other = |name: &str, p: Port| -> Port {
        let o = &occ[name];
        if o[0] == p {
            o[1]
        } else {
            o[0]
        }
    };
    let opposite = |p: Port| -> Option<Port> {
        match kinds[p.0 as usize] {
            VKind::Crossing { .. } => Some((p.0, (p.1 + 2) % 4)),
            VKind::Endpoint(_) => None,
        }
    };
    // walks a strand from `tail`, recording orientation; returns the edges visited
    let walk = |start: Port, oriented: &mut Vec<Option<(Port, Port)>>| -> Result<Vec<usize>> {
        let mut seq = vec![];
        let mut tail = start;
        loop {
            let name = label_at(tail);
            let e = index[name];
            if oriented[e].is_some() {
                break;
            }
            let head = other(name, tail);
            oriented[e] = Some((tail, head));
            seq.push(e);
            match opposite(head) {
                Some(t) => tail = t,
                None => break,
            }
        }
        Ok(seq)
    };

    let legs: Vec<usize> = (0..kinds.len()).filter(|&v| kinds[v] == VKind::Endpoint(Role::Leg)).collect();
    let heads = (0..kinds.len()).filter(|&v| kinds[v] == VKind::Endpoint(Role::Head)).count();
    if legs.len() != heads || legs.len() > 1 {
        return Err(Error::BadEndpoints { legs: legs.len(), heads });
    }
    if let Some(&l) = legs.first() {
        walk((l as u32, 0), &mut oriented)?;
    }
    for (line, circle) in &circles {
        let first = circle[0].as_str();
        let Some(ps) = occ.get(first) else {
            return Err(syntax(*line, format!("unknown edge {first}")));
        };
        let e0 = index[first];
        if oriented[e0].is_some() {
            return Err(syntax(*line, format!("edge {first} is already on another component")));
        }
        let seq = walk(ps[0], &mut oriented)?;
        let want: Vec<usize> = circle.iter().map(|n| index.get(n.as_str()).copied().unwrap_or(usize::MAX)).collect();
        if seq != want {
            return Err(syntax(*line, "circle does not list its edges in traversal order"));
        }
    }
    for e in 0..ne {
        if oriented[e].is_none() {
            let p = occ[names[e]][0];
            walk(p, &mut oriented)?;
        }
    }
    let edges: Vec<(Port, Port)> = oriented.into_iter().map(|o| o.expect("every edge oriented")).collect();
    let spec = match surface {
        Some(Some(k)) => SurfaceSpec::PlaneFace(k),
        _ => SurfaceSpec::Sphere,
    };
    Diagram::from_parts(&kinds, &edges, spec)
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Diagram> {
        parse(s)
    }
}

pub fn render(d: &Diagram) -> String {
    let mut out = String::new();
    if d.is_free_loop() {
        out.push_str("unknot\n");
    } else {
        let label = |h: u32| super::edge_of(h) + 1;
        // rotation applied to each crossing's listing
        let mut rot = vec![0usize; d.verts.len()];
        let mut circle_lines = vec![];
        for c in d.comps.iter().filter(|c| c.closed) {
            let key = |e: u32, rot: &[usize]| -> ((u32, usize), (u32, usize)) {
                let t = d.port_of(2 * e);
                let h = d.port_of(2 * e + 1);
                let r = |p: Port| (p.0, (p.1 as usize + 4 - rot[p.0 as usize]) % 4);
                (r(t), r(h))
            };
            let start = match c.edges.iter().position(|&e| {
                let (t, h) = key(e, &rot);
                t < h
            }) {
                Some(i) => i,
                None => {
                    // every port of this circle sits on one crossing
                    let e = c.edges[0];
                    let v = d.origin(2 * e);
                    rot[v as usize] = d.slot(2 * e) as usize;
                    0
                }
            };
            let seq: Vec<String> = c.edges[start..].iter().chain(&c.edges[..start]).map(|e| (e + 1).to_string()).collect();
            circle_lines.push(format!("circle({})", seq.join(",")));
        }
        for (v, vert) in d.verts.iter().enumerate() {
            match vert {
                Vertex::Crossing { he, over_ac } => {
                    let r = rot[v];
                    let ls: Vec<String> = (0..4).map(|i| label(he[(i + r) % 4]).to_string()).collect();
                    let ac = *over_ac == (r % 2 == 0);
                    let _ = writeln!(out, "X({}) over={}", ls.join(","), if ac { "ac" } else { "bd" });
                }
                Vertex::Endpoint { role, he } => {
                    let name = match role {
                        Role::Leg => "leg",
                        Role::Head => "head",
                    };
                    let _ = writeln!(out, "{name}({})", label(*he));
                }
            }
        }
        for l in circle_lines {
            out.push_str(&l);
            out.push('\n');
        }
    }
    if let Some(f) = d.outer_face() {
        let _ = writeln!(out, "surface=plane outer={f}");
    }
    out
}

impl Diagram {
    /// Extended PD code; parsing it back gives an isomorphic diagram.
    pub fn to_pd(&self) -> String {
        render(self)
    }
}
