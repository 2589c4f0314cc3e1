//! Multivariate polynomials over a prime field under graded reverse
//! lexicographic order (the only monomial order used in this crate), with
//! multivariate division and S-polynomials, and a parser for human-written
//! polynomial expressions.

use crate::field::PrimeField;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Exponent vector. `Ord` is graded reverse lexicographic: compare total
/// degree first; on ties the monomial whose *last* differing exponent is
/// *smaller* is the larger monomial.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Mono) -> Mono {
        Mono(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Pure power of a single variable (or 1)?
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => {}
                // smaller exponent at the last difference = larger monomial
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPoly {
    field: PrimeField,
    nvars: usize,
    /// Nonzero terms; maximum key is the leading monomial.
    terms: BTreeMap<Mono, u64>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        MultiPoly::constant(field, nvars, 1)
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        let mut t = BTreeMap::new();
        let c = c % field.modulus();
        if c != 0 {
            t.insert(Mono::one(nvars), c);
        }
        MultiPoly { field, nvars, terms: t }
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut t = BTreeMap::new();
        t.insert(Mono::var(nvars, i), 1);
        MultiPoly { field, nvars, terms: t }
    }

    pub fn from_terms(field: PrimeField, nvars: usize, terms: Vec<(Mono, u64)>) -> Self {
        let mut out = MultiPoly::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            out.add_term(&m, c % field.modulus());
        }
        out
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn leading_mono(&self) -> Option<&Mono> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.terms.values().next_back().copied()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Is every term of degree exactly d for a single d (or zero)?
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: &Mono, c: u64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = self.field.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(m);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m, self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn scale(&self, s: u64) -> MultiPoly {
        let s = s % self.field.modulus();
        if s == 0 {
            return MultiPoly::zero(self.field, self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.mul(*c, s);
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: u64) -> MultiPoly {
        let c = c % self.field.modulus();
        if c == 0 {
            return MultiPoly::zero(self.field, self.nvars);
        }
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (mm, &cc) in &self.terms {
            out.terms.insert(mm.mul(m), self.field.mul(cc, c));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (m, &c) in &other.terms {
            for (mm, &cc) in &self.terms {
                out.add_term(&mm.mul(m), self.field.mul(cc, c));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc)),
        }
    }

    /// Full multivariate division: returns the normal form of `self` with
    /// respect to `divisors` (remainder whose terms are divisible by no
    /// leading monomial of the divisors).
    pub fn normal_form(&self, divisors: &[MultiPoly]) -> MultiPoly {
        let mut work = self.clone();
        let mut rem = MultiPoly::zero(self.field, self.nvars);
        'outer: while let Some(lm) = work.leading_mono().cloned() {
            let lc = work.leading_coeff().unwrap();
            for g in divisors {
                if let Some(glm) = g.leading_mono() {
                    if glm.divides(&lm) {
                        let q = glm.quotient_into(&lm);
                        let factor = self.field.mul(lc, self.field.inv(g.leading_coeff().unwrap()));
                        work = work.sub(&g.mul_term(&q, factor));
                        continue 'outer;
                    }
                }
            }
            work.terms.remove(&lm);
            rem.add_term(&lm, lc);
        }
        rem
    }

    /// S-polynomial of two nonzero polynomials.
    pub fn s_poly(&self, other: &MultiPoly) -> MultiPoly {
        let lm1 = self.leading_mono().expect("s_poly of zero");
        let lm2 = other.leading_mono().expect("s_poly of zero");
        let l = lm1.lcm(lm2);
        let a = self.mul_term(
            &lm1.quotient_into(&l),
            self.field.inv(self.leading_coeff().unwrap()),
        );
        let b = other.mul_term(
            &lm2.quotient_into(&l),
            self.field.inv(other.leading_coeff().unwrap()),
        );
        a.sub(&b)
    }

    /// Substitute each variable by a scalar.
    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let f = self.field;
        let mut acc = 0u64;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &e) in m.0.iter().enumerate() {
                t = f.mul(t, f.pow(point[i] % f.modulus(), e as u64));
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let f = self.field;
        let mut out = MultiPoly::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(&m2, f.mul(c, e as u64 % f.modulus()));
        }
        out
    }

    /// Map each variable of `self` to a polynomial in a (possibly different)
    /// ring with `target_nvars` variables.
    pub fn substitute(&self, images: &[MultiPoly], target_nvars: usize) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let f = self.field;
        let mut out = MultiPoly::zero(f, target_nvars);
        for (m, &c) in &self.terms {
            let mut t = MultiPoly::constant(f, target_nvars, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            let part = if vars.is_empty() {
                format!("{c}")
            } else if *c == 1 {
                vars.join("*")
            } else {
                format!("{}*{}", c, vars.join("*"))
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Parse a polynomial expression over the named variables. Accepted syntax:
/// integer coefficients, variable names, `+`, `-` (binary and unary), `*`,
/// `^` with nonnegative integer exponents, and parentheses.
pub fn parse_poly(src: &str, field: PrimeField, vars: &[String]) -> Result<MultiPoly, String> {
    let mut p = PolyParser { src: src.as_bytes(), pos: 0, field, vars };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(format!("unexpected character at offset {} in polynomial '{src}'", p.pos));
    }
    Ok(poly)
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    field: PrimeField,
    vars: &'a [String],
}

impl<'a> PolyParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, String> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            if e > 10_000 {
                return Err(format!("exponent {e} too large"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected ')'".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(MultiPoly::constant(self.field, self.vars.len(), n % self.field.modulus()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(MultiPoly::var(self.field, self.vars.len(), i)),
                    None => Err(format!("unknown variable '{name}'")),
                }
            }
            _ => Err(format!("expected polynomial atom at offset {}", self.pos)),
        }
    }

    fn number(&mut self) -> Result<u64, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected number at offset {}", self.pos));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|e| format!("bad integer: {e}"))
    }
}
