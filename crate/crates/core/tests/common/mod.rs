#![allow(dead_code)]

use std::collections::HashMap;

use knotoid::diagram::Diagram;
use knotoid::LaurentPoly;
use rand::rngs::StdRng;
use rand::SeedableRng;

pub const PHI: &str = "leg(1)\nhead(5)\nX(1,4,2,3) over=ac\nX(5,2,4,3) over=ac";
pub const UNIFOIL: &str = "leg(1)\nhead(3)\nX(1,3,2,2) over=ac\nsurface=plane outer=1";
pub const B1: &str = "leg(1)\nhead(5)\nX(1,4,2,3) over=ac\nX(5,2,4,3) over=ac\nsurface=plane outer=2";
pub const B2: &str = "leg(1)\nhead(5)\nX(1,4,2,3) over=ac\nX(5,2,4,3) over=bd\nsurface=plane outer=2";
pub const TREFOIL_CUT: &str = "X(5,1,2,6) over=ac\nX(3,2,7,4) over=ac\nX(4,5,6,3) over=ac\nleg(7)\nhead(1)";

pub fn pd(s: &str) -> Diagram {
    s.parse().unwrap()
}

pub fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/reference")
}

/// Crossings of a PD text as (labels, over pair is a/c).
fn pd_crossings(src: &str) -> Vec<([String; 4], bool)> {
    src.lines()
        .filter_map(|l| {
            let l = l.split('#').next().unwrap().trim();
            let rest = l.strip_prefix("X(")?;
            let (args, tail) = rest.split_once(')')?;
            let labels: Vec<String> = args.split(',').map(|s| s.trim().to_string()).collect();
            Some(([labels[0].clone(), labels[1].clone(), labels[2].clone(), labels[3].clone()], tail.contains("over=ac")))
        })
        .collect()
}

fn all_labels(src: &str) -> Vec<String> {
    let mut out = vec![];
    for l in src.lines() {
        let l = l.split('#').next().unwrap().trim();
        if let Some(open) = l.find('(') {
            let close = l.find(')').unwrap();
            out.extend(l[open + 1..close].split(',').map(|s| s.trim().to_string()));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn find(p: &mut HashMap<String, String>, x: &str) -> String {
    let parent = p[x].clone();
    if parent == x {
        return parent;
    }
    let r = find(p, &parent);
    p.insert(x.to_string(), r.clone());
    r
}

/// Kauffman bracket straight from PD labels. With labels a,b,c,d counterclockwise
/// and a/c over, the A-smoothing joins a–d and b–c; with b/d over it joins a–b and c–d.
pub fn bracket_oracle(src: &str) -> LaurentPoly {
    let xs = pd_crossings(src);
    let labels = all_labels(src);
    let delta = poly("-A^2 - A^-2");
    let mut total = LaurentPoly::zero();
    for bits in 0u64..(1 << xs.len()) {
        let mut p: HashMap<String, String> = labels.iter().map(|l| (l.clone(), l.clone())).collect();
        let mut sigma = 0i32;
        for (i, (l, ac)) in xs.iter().enumerate() {
            let a_smooth = bits >> i & 1 == 1;
            sigma += if a_smooth { 1 } else { -1 };
            let pairs = if a_smooth == *ac { [(0, 3), (1, 2)] } else { [(0, 1), (2, 3)] };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut p, &l[x]), find(&mut p, &l[y]));
                p.insert(rx, ry);
            }
        }
        let comps = labels.iter().map(|l| find(&mut p, l)).collect::<std::collections::BTreeSet<_>>().len().max(1);
        let term = &LaurentPoly::monomial(1, &[(knotoid::Var::A, sigma)]) * &delta.pow(comps as i32 - 1).unwrap();
        total += term;
    }
    total
}

/// Fox colorings straight from PD labels: over labels share a color and twice
/// it equals the sum of the two under colors.
pub fn colorings_oracle(src: &str, n: i64) -> u64 {
    let xs = pd_crossings(src);
    let labels = all_labels(src);
    let mut p: HashMap<String, String> = labels.iter().map(|l| (l.clone(), l.clone())).collect();
    for (l, ac) in &xs {
        let (x, y) = if *ac { (0, 2) } else { (1, 3) };
        let (rx, ry) = (find(&mut p, &l[x]), find(&mut p, &l[y]));
        p.insert(rx, ry);
    }
    let roots: Vec<String> = labels.iter().map(|l| find(&mut p, l)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let idx = |p: &mut HashMap<String, String>, l: &str| roots.iter().position(|r| *r == find(p, l)).unwrap();
    let rel: Vec<(usize, usize, usize)> = xs
        .iter()
        .map(|(l, ac)| {
            let (o, u1, u2) = if *ac { (0, 1, 3) } else { (1, 0, 2) };
            (idx(&mut p, &l[o]), idx(&mut p, &l[u1]), idx(&mut p, &l[u2]))
        })
        .collect();
    let k = roots.len() as u32;
    let mut count = 0;
    for code in 0..(n as u64).pow(k) {
        let mut c = vec![0i64; k as usize];
        let mut x = code;
        for slot in c.iter_mut() {
            *slot = (x % n as u64) as i64;
            x /= n as u64;
        }
        if rel.iter().all(|&(o, a, b)| (2 * c[o] - c[a] - c[b]).rem_euclid(n) == 0) {
            count += 1;
        }
    }
    count
}

/// HOMFLYPT of the closure of the 2-braid `σ^n` with `q P+ - q^-1 P- = z P0`
/// and the unknot normalized to 1.
pub fn torus_2n_homfly(n: i32) -> LaurentPoly {
    let delta = poly("q*z^-1 - q^-1*z^-1");
    let (qm2, qm1z, q2, qz) = (poly("q^-2"), poly("q^-1*z"), poly("q^2"), poly("q*z"));
    let mut memo: HashMap<i32, LaurentPoly> = HashMap::from([(0, delta), (1, LaurentPoly::one())]);
    fn go(n: i32, m: &mut HashMap<i32, LaurentPoly>, c: &[LaurentPoly; 4]) -> LaurentPoly {
        if let Some(v) = m.get(&n) {
            return v.clone();
        }
        let v = if n > 1 {
            &(&c[0] * &go(n - 2, m, c)) + &(&c[1] * &go(n - 1, m, c))
        } else {
            &(&c[2] * &go(n + 2, m, c)) - &(&c[3] * &go(n + 1, m, c))
        };
        m.insert(n, v.clone());
        v
    }
    go(n, &mut memo, &[qm2, qm1z, q2, qz])
}

/// A random knotoid diagram from a seed.
pub fn random_diagram(seed: u64, max_crossings: usize) -> Diagram {
    knotoid::moves::random_diagram(&mut rng(seed), max_crossings, 4 * max_crossings)
}

/// A multi-knotoid: a random diagram with one self-crossing of the segment smoothed when possible.
pub fn random_multi(seed: u64, max_crossings: usize) -> Diagram {
    let d = random_diagram(seed, max_crossings);
    for v in d.crossings() {
        if let Ok(s) = d.smooth_crossing(v) {
            if s.components().len() > 1 {
                return s;
            }
        }
    }
    d
}
