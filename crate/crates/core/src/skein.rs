//! The skein map of multi-knotoids into the annulus algebra over `Z[q±1, z±1]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use serde::Serialize;

use crate::diagram::work::Work;
use crate::diagram::{edge_of, Diagram, Vertex};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Var};

pub const DEFAULT_BUDGET: usize = 100_000;

/// `(q - q^-1) z^-1`, the value of a split trivial circle.
pub fn z0() -> LaurentPoly {
    let mut p = LaurentPoly::monomial(1, &[(Var::Q, 1), (Var::Z, -1)]);
    p.add_term([0, 0, 0, -1, -1], BigInt::from(-1));
    p
}

fn qz(c: i64, q: i32, z: i32) -> LaurentPoly {
    LaurentPoly::monomial(c, &[(Var::Q, q), (Var::Z, z)])
}

/// Finite sum of monomials `∏ z_r` (nonzero `r`, kept sorted) with coefficients in `q, z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnnulusElement {
    terms: BTreeMap<Vec<i32>, LaurentPoly>,
}

impl AnnulusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(vec![], c);
        out
    }

    /// The generator `z_r`; `z_0` is the scalar `(q - q^-1) z^-1`.
    pub fn generator(r: i32) -> Self {
        if r == 0 {
            Self::scalar(z0())
        } else {
            let mut out = Self::zero();
            out.add_term(vec![r], LaurentPoly::one());
            out
        }
    }

    fn add_term(&mut self, mut mono: Vec<i32>, c: LaurentPoly) {
        mono.sort_unstable();
        let slot = self.terms.entry(mono.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &LaurentPoly)> {
        self.terms.iter()
    }

    /// The coefficient when no generator `z_r` occurs.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => self.terms.get(&vec![]).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), p * c);
        }
        out
    }
}

impl Add for &AnnulusElement {
    type Output = AnnulusElement;
    fn add(self, rhs: &AnnulusElement) -> AnnulusElement {
        let mut out = self.clone();
        for (m, p) in &rhs.terms {
            out.add_term(m.clone(), p.clone());
        }
        out
    }
}

impl Mul for &AnnulusElement {
    type Output = AnnulusElement;
    fn mul(self, rhs: &AnnulusElement) -> AnnulusElement {
        let mut out = AnnulusElement::zero();
        for (m1, p1) in &self.terms {
            for (m2, p2) in &rhs.terms {
                let mono: Vec<i32> = m1.iter().chain(m2).copied().collect();
                out.add_term(mono, p1 * p2);
            }
        }
        out
    }
}

impl fmt::Display for AnnulusElement {
    /// `(2*q^-2 - q^-4) + (q^-1)*z_1*z_-2`; generators are written `z_r`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let gens: Vec<String> = m.iter().map(|r| format!("z_{r}")).collect();
                match (gens.is_empty(), *c == LaurentPoly::one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => gens.join("*"),
                    (false, false) => format!("({c})*{}", gens.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermJson {
    generators: Vec<i32>,
    coefficient: String,
}

impl Serialize for AnnulusElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self.terms.iter().map(|(m, c)| TermJson { generators: m.clone(), coefficient: c.to_string() }).collect();
        v.serialize(s)
    }
}

/// Winding number of each circle component about the segment, by algebraic
/// intersection with the shortcut.
pub fn circle_windings(d: &Diagram) -> Result<Vec<i32>> {
    let comps = d.components();
    let start = usize::from(d.is_knotoid());
    let mut w = vec![0i32; comps.len()];
    if d.is_knotoid() {
        for st in d.shortcut()?.steps {
            let c = d.component_of_edge(st.edge) as usize;
            if c >= start {
                w[c] += st.sign;
            }
        }
    }
    Ok(w[start..].to_vec())
}

/// First crossing, in walking order, whose over strand is wrong for the
/// layered order: earlier components above later ones, each component
/// ascending from its start.
pub fn ascending_violation(d: &Diagram) -> Option<u32> {
    let mut seen = vec![false; d.num_vertices()];
    for c in d.components() {
        for &e in &c.edges {
            let h = 2 * e + 1;
            let v = d.origin(h);
            if !matches!(d.vertices()[v as usize], Vertex::Crossing { .. }) || seen[v as usize] {
                continue;
            }
            seen[v as usize] = true;
            let hes = d.vertex_hes(v);
            let own = d.component_of_edge(e);
            let self_crossing = hes.iter().all(|&x| d.component_of_edge(edge_of(x)) == own);
            let over = d.is_over_he(h);
            if self_crossing == over {
                return Some(v);
            }
        }
    }
    None
}

pub struct SkeinEvaluator {
    memo: HashMap<String, AnnulusElement>,
    nodes: usize,
    budget: usize,
}

impl SkeinEvaluator {
    pub fn new(budget: usize) -> Self {
        SkeinEvaluator { memo: HashMap::new(), nodes: 0, budget }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn eval(&mut self, d: &Diagram) -> Result<AnnulusElement> {
        let d = if d.surface().is_plane() { d.on_sphere() } else { d.clone() };
        if d.is_free_loop() {
            return Ok(AnnulusElement::generator(0));
        }
        let code = d.canonical_code();
        if let Some(v) = self.memo.get(&code) {
            return Ok(v.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::RecursionBudgetExceeded(self.budget));
        }
        let value = match ascending_violation(&d) {
            None => base_value(&d)?,
            Some(v) => {
                let switched = self.eval(&d.switch_crossing(v))?;
                let mut w = Work::from_diagram(&d);
                w.dissolve_oriented(v);
                let (pieces, loops) = w.build_pieces()?;
                let mut smoothed = AnnulusElement::one();
                for _ in 0..loops {
                    smoothed = &smoothed * &AnnulusElement::generator(0);
                }
                for p in &pieces {
                    smoothed = &smoothed * &self.eval(p)?;
                }
                // q K+ - q^-1 K- = z K0
                if d.sign(v) > 0 {
                    &switched.scale(&qz(1, -2, 0)) + &smoothed.scale(&qz(1, -1, 1))
                } else {
                    &switched.scale(&qz(1, 2, 0)) + &smoothed.scale(&qz(-1, 1, 1))
                }
            }
        };
        self.memo.insert(code, value.clone());
        Ok(value)
    }
}

fn base_value(d: &Diagram) -> Result<AnnulusElement> {
    if !d.is_knotoid() {
        let circles = d.components().len();
        return Ok((0..circles).fold(AnnulusElement::one(), |acc, _| &acc * &AnnulusElement::generator(0)));
    }
    let mut out = AnnulusElement::one();
    for r in circle_windings(d)? {
        out = &out * &AnnulusElement::generator(r);
    }
    Ok(out)
}

#[allow(non_snake_case)]
pub fn P_invariant(d: &Diagram) -> Result<AnnulusElement> {
    SkeinEvaluator::new(DEFAULT_BUDGET).eval(d)
}

/// Substitutes `q = -A^4`, `z = A^2 - A^-2` into a scalar value.
pub fn to_bracket_variables(p: &LaurentPoly) -> Result<LaurentPoly> {
    let q = LaurentPoly::monomial(-1, &[(Var::A, 4)]);
    let z = &LaurentPoly::monomial(1, &[(Var::A, 2)]) - &LaurentPoly::monomial(1, &[(Var::A, -2)]);
    p.substitute(Var::Q, &q)?.substitute(Var::Z, &z)
}
