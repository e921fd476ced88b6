//! Wirtinger presentations, abelianization and Fox colorings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{edge_of, Diagram, Vertex};
use crate::error::Result;

/// Relation `x_out = x_over^sign · x_in · x_over^-sign` at one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i32,
}

impl Relator {
    /// The relator as a word equal to the identity.
    pub fn word(&self) -> Vec<(usize, i32)> {
        vec![(self.over, self.sign), (self.under_in, 1), (self.over, -self.sign), (self.under_out, -1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Relator>,
}

impl fmt::Display for Presentation {
    /// `< x0, x1, ... | w1, w2, ... >` with words like `x2 x0 x2^-1 x1^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.word()
                    .iter()
                    .map(|&(g, e)| if e == 1 { format!("x{g}") } else { format!("x{g}^{e}") })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// Generators are the arcs between consecutive undercrossings of every component.
pub fn wirtinger(d: &Diagram) -> Result<Presentation> {
    let mut arc = vec![usize::MAX; d.num_edges()];
    let mut next = 0;
    let passes_under = |h: u32| {
        // h leaves a crossing along the strand; the strand is under there
        matches!(d.vertices()[d.origin(h) as usize], Vertex::Crossing { .. }) && !d.is_over_he(h)
    };
    for c in d.components() {
        let edges = &c.edges;
        if edges.is_empty() {
            continue;
        }
        let start = if c.closed { edges.iter().position(|&e| passes_under(2 * e)).unwrap_or(0) } else { 0 };
        for k in 0..edges.len() {
            let e = edges[(start + k) % edges.len()];
            if k == 0 || passes_under(2 * e) {
                next += 1;
            }
            arc[e as usize] = next - 1;
        }
    }
    let mut relators = vec![];
    for v in d.crossings() {
        let hes = d.vertex_hes(v);
        let (mut over, mut under_in, mut under_out) = (0, 0, 0);
        for &h in &hes {
            let a = arc[edge_of(h) as usize];
            if d.is_over_he(h) {
                over = a;
            } else if h % 2 == 0 {
                under_out = a;
            } else {
                under_in = a;
            }
        }
        relators.push(Relator { over, under_in, under_out, sign: d.sign(v) });
    }
    Ok(Presentation { generators: next, relators })
}

/// Nonzero invariant factors and rank of an integer matrix.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = vec![];
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).filter(|&(i, j)| !m[i][j].is_zero()).min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = false;
        while !clean {
            clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                // divisibility of the rest of the block by the pivot
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                if let Some((i, _)) = bad {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                    clean = false;
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let rows: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); p.generators];
            for (g, e) in r.word() {
                row[g] += e;
            }
            row
        })
        .collect();
    let diag = smith_diagonal(rows, p.generators);
    Abelianization {
        free_rank: p.generators - diag.len(),
        torsion: diag.iter().filter(|d| !d.is_one()).map(|d| d.to_string()).collect(),
    }
}

fn coloring_rows(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); p.generators];
            row[r.over] += 2;
            row[r.under_in] -= 1;
            row[r.under_out] -= 1;
            row
        })
        .collect()
}

/// Number of Fox `n`-colorings, from the Smith form of the coloring matrix.
pub fn count_colorings(p: &Presentation, n: u64) -> u128 {
    assert!(n >= 2, "modulus must be at least 2");
    let diag = smith_diagonal(coloring_rows(p), p.generators);
    let nb = BigInt::from(n);
    let mut count: u128 = (n as u128).pow((p.generators - diag.len()) as u32);
    for d in diag {
        count *= d.gcd(&nb).to_u128().unwrap();
    }
    count
}

/// Brute-force count over all `n^generators` assignments.
pub fn count_colorings_brute(p: &Presentation, n: u64) -> u128 {
    assert!(n >= 2, "modulus must be at least 2");
    let g = p.generators as u32;
    let total = n.checked_pow(g).expect("too many assignments to enumerate");
    (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let mut x = idx;
            let mut c = Vec::with_capacity(g as usize);
            for _ in 0..g {
                c.push((x % n) as i64);
                x /= n;
            }
            let n = n as i64;
            p.relators.iter().all(|r| (2 * c[r.over] - c[r.under_in] - c[r.under_out]).rem_euclid(n) == 0)
        })
        .count() as u128
}
