//! Multivariate polynomials over ℚ with dense exponent vectors.
//!
//! A [`Poly`] stores its terms in a `BTreeMap` keyed by the structural
//! (lexicographic) order on exponent vectors; term orders are applied on
//! demand. The Buchberger engine works on [`OrdPoly`], a vector of terms kept
//! sorted under the active [`TermOrder`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};
use crate::exact::{fmt_rat, parse_rat, Int, Rat};

/// Which variables a ring carries; only affects names and mismatch checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// ∂₁,…,∂ₙ, printed `d1`…
    D,
    /// s₁,…,s_h, printed `s1`…
    S,
    /// ∂_{s₁},…, printed `ds1`…
    DualS,
    /// log x₁,…,log xₙ, printed `log(x1)`…
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub kind: VarKind,
    pub nvars: usize,
}

impl Ring {
    pub fn new(kind: VarKind, nvars: usize) -> Self {
        Ring { kind, nvars }
    }

    pub fn var_name(&self, i: usize) -> String {
        match self.kind {
            VarKind::D => format!("d{}", i + 1),
            VarKind::S => format!("s{}", i + 1),
            VarKind::DualS => format!("ds{}", i + 1),
            VarKind::Log => format!("log(x{})", i + 1),
        }
    }

    fn check(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(GkzError::RingMismatch(format!("{:?} vs {:?}", self, other)));
        }
        Ok(())
    }
}

/// Exponent multi-index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn render(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    ring.var_name(i)
                } else {
                    format!("{}^{}", ring.var_name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            // smaller exponent in the last differing variable is larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Weight vector refined by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightOrder {
    weights: Vec<Rat>,
    scaled: Vec<i64>,
}

impl WeightOrder {
    /// Weights must be nonnegative so that the refined order is a well-order.
    pub fn new(weights: Vec<Rat>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(GkzError::InvalidWeight("weights must be nonnegative".into()));
        }
        let l = weights.iter().fold(Int::one(), |acc, w| acc.lcm(w.denom()));
        let scaled = weights
            .iter()
            .map(|w| {
                let v = w.numer() * (&l / w.denom());
                v.to_i64().ok_or_else(|| GkzError::Overflow(v.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightOrder { weights, scaled })
    }

    pub fn from_ints(w: &[i64]) -> Result<Self> {
        Self::new(w.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, m: &Monomial) -> i128 {
        self.scaled.iter().zip(&m.0).map(|(&w, &e)| w as i128 * e as i128).sum()
    }

    /// Exact weight of an integer vector, on the integer-scaled weights.
    pub fn weight_of(&self, v: &[i64]) -> i128 {
        self.scaled.iter().zip(v).map(|(&w, &e)| w as i128 * e as i128).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Weight(WeightOrder),
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => grevlex(a, b),
            TermOrder::Weight(w) => w.weight(a).cmp(&w.weight(b)).then_with(|| grevlex(a, b)),
        }
    }

    pub fn nvars_hint(&self) -> Option<usize> {
        match self {
            TermOrder::Grevlex => None,
            TermOrder::Weight(w) => Some(w.weights.len()),
        }
    }
}

/// Monomial comparison; total, multiplicative, refining the weight.
pub fn compare(a: &Monomial, b: &Monomial, order: &TermOrder) -> Ordering {
    order.compare(a, b)
}

/// Polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: Rat) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.nvars), c);
        p
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars, i), Rat::one())
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.nvars(), ring.nvars);
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars);
            p.add_term(m, c);
        }
        p
    }

    /// `∂^plus − ∂^minus`.
    pub fn binomial(ring: Ring, plus: Monomial, minus: Monomial) -> Self {
        let mut p = Self::monomial(ring, plus, Rat::one());
        p.add_term(minus, -Rat::one());
        p
    }

    /// Linear form `Σ cᵢ xᵢ + c₀`.
    pub fn linear(ring: Ring, coeffs: &[Rat], constant: &Rat) -> Self {
        let mut p = Self::constant(ring, constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(ring.nvars, i), c.clone());
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Same terms, reinterpreted in another ring with the same variable count.
    pub fn with_kind(&self, kind: VarKind) -> Poly {
        Poly { ring: Ring::new(kind, self.ring.nvars), terms: self.terms.clone() }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.ring.nvars))
    }

    /// Homogeneous component of the given total degree.
    pub fn component(&self, deg: u32) -> Poly {
        Poly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop every term of total degree above `deg`.
    pub fn truncate(&self, deg: u32) -> Poly {
        Poly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted in decreasing order.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(Monomial, Rat)> {
        let mut v: Vec<(Monomial, Rat)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        v
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.ring, other.ring, "adding polynomials of different rings");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert_eq!(self.ring, other.ring, "subtracting polynomials of different rings");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.ring, other.ring, "multiplying polynomials of different rings");
        let mut out = Poly::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Product truncated at total degree `deg`.
    pub fn mul_truncated(&self, other: &Poly, deg: u32) -> Poly {
        assert_eq!(self.ring, other.ring);
        let mut out = Poly::zero(self.ring);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > deg {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() <= deg {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.ring);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// ∂/∂xᵢ.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k.0[i] -= 1;
            out.add_term(k, c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Substitute polynomial `images[i]` (all in `target`) for the i-th variable.
    pub fn substitute(&self, images: &[Poly], target: Ring) -> Poly {
        assert_eq!(images.len(), self.ring.nvars);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Make the leading coefficient (under `order`) equal to 1.
    pub fn monic(&self, order: &TermOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Canonical text: terms in decreasing order, signs folded into the joins.
    pub fn render(&self, order: &TermOrder) -> String {
        let terms = self.sorted_terms(order);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&fmt_rat(&a));
            } else if a.is_one() {
                s.push_str(&m.render(&self.ring));
            } else {
                s.push_str(&fmt_rat(&a));
                s.push('*');
                s.push_str(&m.render(&self.ring));
            }
        }
        s
    }

    /// Parses the canonical text form written by [`Poly::render`]; also
    /// accepts arbitrary term order and repeated factors.
    pub fn parse(text: &str, ring: Ring) -> std::result::Result<Poly, String> {
        PolyParser { s: text.as_bytes(), pos: 0, ring }.parse()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&TermOrder::Grevlex))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&TermOrder::Grevlex))
    }
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    ring: Ring,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> String {
        format!("{} at offset {}", msg, self.pos)
    }

    fn parse(mut self) -> std::result::Result<Poly, String> {
        let mut out = Poly::zero(self.ring);
        self.skip_ws();
        let mut sign = Rat::one();
        if self.peek() == Some(b'-') {
            sign = -sign;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, c * &sign);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => sign = Rat::one(),
                Some(b'-') => sign = -Rat::one(),
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self) -> std::result::Result<(Monomial, Rat), String> {
        let mut coeff = Rat::one();
        let mut mono = Monomial::one(self.ring.nvars);
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some(_) => {
                    let (v, e) = self.power()?;
                    mono.0[v] += e;
                }
                None => return Err(self.err("unexpected end of input")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((mono, coeff))
    }

    fn number(&mut self) -> std::result::Result<Rat, String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == b'/') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        parse_rat(text).ok_or_else(|| self.err("bad number"))
    }

    fn power(&mut self) -> std::result::Result<(usize, u32), String> {
        let prefix: &[u8] = match self.ring.kind {
            VarKind::D => b"d",
            VarKind::S => b"s",
            VarKind::DualS => b"ds",
            VarKind::Log => b"log(x",
        };
        if !self.s[self.pos..].starts_with(prefix) {
            return Err(self.err("unknown variable"));
        }
        self.pos += prefix.len();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let idx: usize = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("missing variable index"))?;
        if idx == 0 || idx > self.ring.nvars {
            return Err(self.err("variable index out of range"));
        }
        if self.ring.kind == VarKind::Log {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            e = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("bad exponent"))?;
        }
        Ok((idx - 1, e))
    }
}

/// `Σⱼ cⱼ sⱼ + c₀`, the factors of the perturbed falling factorials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFormPlusConst {
    pub linear: Vec<Rat>,
    pub constant: Rat,
}

impl LinearFormPlusConst {
    pub fn new(linear: Vec<Rat>, constant: Rat) -> Self {
        LinearFormPlusConst { linear, constant }
    }

    pub fn linear_is_zero(&self) -> bool {
        self.linear.iter().all(Zero::is_zero)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.constant.is_zero() && self.linear_is_zero()
    }

    /// `(λ, f)` with `self = λ·f` and the first nonzero linear coefficient
    /// of `f` equal to 1; forms without linear part are scaled to constant 1.
    pub fn canonical(&self) -> (Rat, LinearFormPlusConst) {
        let lead = self.linear.iter().find(|c| !c.is_zero()).cloned().or_else(|| {
            if self.constant.is_zero() {
                None
            } else {
                Some(self.constant.clone())
            }
        });
        match lead {
            None => (Rat::one(), self.clone()),
            Some(l) => {
                let inv = l.recip();
                (
                    l,
                    LinearFormPlusConst {
                        linear: self.linear.iter().map(|c| c * &inv).collect(),
                        constant: &self.constant * &inv,
                    },
                )
            }
        }
    }

    pub fn to_poly(&self, ring: Ring) -> Poly {
        Poly::linear(ring, &self.linear, &self.constant)
    }
}

/// Terms kept sorted in decreasing order under one fixed [`TermOrder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdPoly {
    pub terms: Vec<(Monomial, Rat)>,
}

impl OrdPoly {
    pub fn from_poly(p: &Poly, order: &TermOrder) -> Self {
        OrdPoly { terms: p.sorted_terms(order) }
    }

    pub fn to_poly(&self, ring: Ring) -> Poly {
        Poly::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rat {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.terms[0].1.recip();
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self − c·m·g`, merged in order.
    pub fn sub_scaled(&self, c: &Rat, m: &Monomial, g: &OrdPoly, order: &TermOrder) -> OrdPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Monomial, Rat)> =
            g.terms.iter().map(|(k, x)| (k.mul(m), -(x * c))).collect();
        while i < self.terms.len() && j < shifted.len() {
            match order.compare(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted.into_iter().skip(j));
        OrdPoly { terms: out }
    }

    /// Full reduction modulo `basis`; returns the remainder and, if
    /// requested, the quotient coefficients `(index, multiplier, coefficient)`.
    pub fn reduce(
        &self,
        basis: &[OrdPoly],
        order: &TermOrder,
        mut record: Option<&mut Vec<(usize, Monomial, Rat)>>,
    ) -> OrdPoly {
        let mut p = self.clone();
        let mut rem: Vec<(Monomial, Rat)> = Vec::new();
        while !p.is_zero() {
            let (lm, lc) = (p.terms[0].0.clone(), p.terms[0].1.clone());
            match basis.iter().position(|g| !g.is_zero() && g.lm().divides(&lm)) {
                Some(k) => {
                    let g = &basis[k];
                    let m = lm.div(g.lm());
                    let c = &lc / g.lc();
                    p = p.sub_scaled(&c, &m, g, order);
                    if let Some(r) = record.as_deref_mut() {
                        r.push((k, m, c));
                    }
                }
                None => {
                    rem.push(p.terms.remove(0));
                }
            }
        }
        OrdPoly { terms: rem }
    }
}

/// Multivariate division: `f = Σ qᵢ gᵢ + r`, no term of `r` divisible by any
/// leading monomial of `G`.
pub fn divide(f: &Poly, gens: &[Poly], order: &TermOrder) -> Result<(Vec<Poly>, Poly)> {
    for g in gens {
        f.ring.check(&g.ring)?;
    }
    let ring = f.ring;
    let basis: Vec<OrdPoly> = gens.iter().map(|g| OrdPoly::from_poly(g, order)).collect();
    let mut rec = Vec::new();
    let r = OrdPoly::from_poly(f, order).reduce(&basis, order, Some(&mut rec));
    let mut quotients = vec![Poly::zero(ring); gens.len()];
    for (k, m, c) in rec {
        quotients[k].add_term(m, c);
    }
    Ok((quotients, r.to_poly(ring)))
}
