//! Exact multivariate Laurent polynomials over the integers.
//!
//! The variable set is closed: `A`, `u`, `v` for the bracket family and `q`, `z`
//! for the annulus skein coefficients. Terms are kept in a `BTreeMap` keyed by
//! the dense exponent vector, so iteration order is canonical and rendering is
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const NVARS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    A,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "v")]
    V,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "z")]
    Z,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::A, Var::U, Var::V, Var::Q, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Var::A => 'A',
            Var::U => 'u',
            Var::V => 'v',
            Var::Q => 'q',
            Var::Z => 'z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        match c {
            'A' => Some(Var::A),
            'u' => Some(Var::U),
            'v' => Some(Var::V),
            'q' => Some(Var::Q),
            'z' => Some(Var::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

pub type Exponents = [i32; NVARS];

/// Span of a polynomial in one variable; the zero polynomial has span −∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Span {
    NegInfinity,
    Finite(i32),
}

impl Span {
    pub fn finite(self) -> Option<i32> {
        match self {
            Span::NegInfinity => None,
            Span::Finite(s) => Some(s),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Span::NegInfinity => write!(f, "-inf"),
            Span::Finite(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for Span {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Span::NegInfinity => s.serialize_str("-inf"),
            Span::Finite(v) => s.serialize_i32(*v),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, &[])
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(1, &[(v, 1)])
    }

    pub fn monomial(coef: impl Into<BigInt>, powers: &[(Var, i32)]) -> Self {
        let mut e = [0; NVARS];
        for &(v, p) in powers {
            e[v.index()] += p;
        }
        Self::from_term(e, coef.into())
    }

    pub fn from_term(e: Exponents, coef: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(e, coef);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, BigInt)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// The loop value −A²−A⁻².
    pub fn loop_value() -> Self {
        Self::monomial(-1, &[(Var::A, 2)]) + Self::monomial(-1, &[(Var::A, -2)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Single term with coefficient ±1.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] != 0)
    }

    /// Inverse of a unit monomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut inv = *e;
        inv.iter_mut().for_each(|x| *x = -*x);
        Some(Self::from_term(inv, c.clone()))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, n: i32) -> Option<Self> {
        if n < 0 {
            return self.unit_inverse()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Some(acc)
    }

    /// Multiply every exponent vector by a monomial shift.
    pub fn shift(&self, by: &Exponents) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = *e;
                for i in 0..NVARS {
                    s[i] += by[i];
                }
                (s, c.clone())
            })
            .collect();
        Self { terms }
    }

    /// `v ↦ v⁻¹`.
    pub fn invert_var(&self, v: Var) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = *e;
                s[v.index()] = -s[v.index()];
                (s, c.clone())
            })
            .collect();
        Self { terms }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, c)| (*e, c * k)).collect();
        Self { terms }
    }

    /// Replace every occurrence of `var` with `value`.
    ///
    /// A non-unit `value` can only be raised to non-negative powers, so it is
    /// an error for `var` to appear with a negative exponent in that case.
    pub fn substitute(&self, var: Var, value: &LaurentPoly) -> Result<Self> {
        let vi = var.index();
        let unit = value.is_unit();
        let mut cache: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[vi];
            if k < 0 && !unit {
                return Err(Error::NegativeExponentSubstitution { var, exponent: k });
            }
            let power = match cache.get(&k) {
                Some(p) => p.clone(),
                None => {
                    let p = value.pow(k).expect("unit checked above");
                    cache.insert(k, p.clone());
                    p
                }
            };
            let mut rest = *e;
            rest[vi] = 0;
            for (pe, pc) in &power.terms {
                let mut s = rest;
                for i in 0..NVARS {
                    s[i] += pe[i];
                }
                out.add_term(s, c * pc);
            }
        }
        Ok(out)
    }

    /// Max minus min exponent of `var` over the stored terms.
    pub fn span(&self, var: Var) -> Span {
        let vi = var.index();
        let mut it = self.terms.keys().map(|e| e[vi]);
        match it.next() {
            None => Span::NegInfinity,
            Some(first) => {
                let (lo, hi) = it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)));
                Span::Finite(hi - lo)
            }
        }
    }

    pub fn min_exponent(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|e| e[var.index()]).min()
    }

    pub fn max_exponent(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|e| e[var.index()]).max()
    }

    /// Coefficient as a machine integer if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next()?;
            if e.iter().all(|&x| x == 0) {
                return c.to_i64();
            }
        }
        None
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, e: &Exponents, c: &BigInt, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mut factors: Vec<String> = Vec::new();
    let constant = e.iter().all(|&x| x == 0);
    if constant || !mag.is_one() {
        factors.push(mag.to_string());
    }
    for v in Var::ALL {
        let k = e[v.index()];
        match k {
            0 => {}
            1 => factors.push(v.symbol().to_string()),
            _ => factors.push(format!("{}^{}", v.symbol(), k)),
        }
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            fmt_term(f, e, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::PolySyntax { input: String::from_utf8_lossy(self.src).into_owned(), msg: format!("{msg} at byte {}", self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn term(&mut self) -> Result<(Exponents, BigInt)> {
        let mut e = [0; NVARS];
        let mut coef = BigInt::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let d = self.digits().unwrap();
                    coef *= d.parse::<BigInt>().map_err(|_| self.err("bad integer"))?;
                }
                Some(b) => {
                    let v = Var::from_symbol(b as char).ok_or_else(|| self.err("expected variable or integer"))?;
                    self.pos += 1;
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let neg = if self.peek() == Some(b'-') {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                        k = d.parse::<i32>().map_err(|_| self.err("exponent out of range"))?;
                        if neg {
                            k = -k;
                        }
                    }
                    e[v.index()] += k;
                }
                None => return Err(self.err("unexpected end of input")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok((e, coef))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TermParser { src: s.as_bytes(), pos: 0 };
        let mut out = LaurentPoly::zero();
        p.skip_ws();
        if p.peek().is_none() {
            return Err(p.err("empty polynomial"));
        }
        let mut sign = 1;
        if p.peek() == Some(b'-') {
            sign = -1;
            p.pos += 1;
        } else if p.peek() == Some(b'+') {
            p.pos += 1;
        }
        loop {
            let (e, c) = p.term()?;
            out.add_term(e, if sign < 0 { -c } else { c });
            p.skip_ws();
            match p.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(p.err("expected '+' or '-'")),
            }
            p.pos += 1;
        }
        Ok(out)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        self.terms.values_mut().for_each(|c| *c = -c.clone());
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..NVARS {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}
