use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Most variables a packed monomial can carry.
pub const MAX_VARS: usize = 8;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exponent vector packed one byte per variable, variable 0 in the most
/// significant byte, so integer order is lexicographic order with
/// `θ_1 > θ_2 > …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn offset(var: usize) -> u32 {
        debug_assert!(var < MAX_VARS);
        56 - 8 * var as u32
    }

    pub fn var(var: usize, exp: u8) -> Self {
        Monomial((exp as u64) << Self::offset(var))
    }

    pub fn exp(self, var: usize) -> u8 {
        (self.0 >> Self::offset(var)) as u8
    }

    pub fn degree(self) -> u32 {
        self.0.to_le_bytes().iter().map(|&b| b as u32).sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(
            (0..MAX_VARS).all(|v| self.exp(v) as u16 + other.exp(v) as u16 <= 255),
            "exponent overflow"
        );
        Monomial(self.0 + other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|v| self.exp(v) <= other.exp(v))
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0 - self.0)
    }

    pub fn exponents(self, nvars: usize) -> Vec<u8> {
        (0..nvars).map(|v| self.exp(v)).collect()
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        exps.iter()
            .enumerate()
            .fold(Monomial::ONE, |m, (v, &e)| m.mul(Monomial::var(v, e)))
    }
}

/// Sparse polynomial over the rationals, terms sorted by decreasing
/// monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rat)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(rat(c))
    }

    /// The variable with index `var` (θ_{var+1}).
    pub fn var(var: usize) -> Self {
        Poly {
            terms: vec![(Monomial::var(var, 1), Rat::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Rat)>) -> Self {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rat)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u8 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    fn mul_term(&self, m: Monomial, s: &Rat) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(tm, c)| (tm.mul(m), c * s)).collect(),
        }
    }

    /// `self + s · other`, merging the two sorted term lists.
    pub fn add_scaled(&self, other: &Poly, s: &Rat) -> Poly {
        if s.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((*m, c * s));
                }
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((*m, c * s));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = ca + cb * s;
                        if !c.is_zero() {
                            out.push((*m, c));
                        }
                    }
                },
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &Rat::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &-Rat::one())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(*mb), ca * cb));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    ///
    /// Lex division by a single divisor: the remainder is zero iff `d`
    /// divides, so a leading term not divisible by `lt(d)` proves failure.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?.clone();
        if d.terms.len() == 1 {
            if !self.terms.iter().all(|(m, _)| dm.divides(*m)) {
                return None;
            }
            let inv = dc.recip();
            return Some(Poly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (dm.quotient_of(*m), c * &inv))
                    .collect(),
            });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c / &dc;
            rem = rem.add_scaled(&d.mul_term(qm, &Rat::one()), &-qc.clone());
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Evaluates at a point; `point[v]` is the value of variable `v`.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate().take(MAX_VARS) {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes variable `v` by `images[v]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, pows) in cache.iter_mut().enumerate() {
                let e = m.exp(v) as usize;
                if e == 0 {
                    continue;
                }
                while pows.len() <= e {
                    let next = pows.last().unwrap().mul(&pows[1]);
                    pows.push(next);
                }
                t = t.mul(&pows[e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Content-free normalization: the leading coefficient becomes 1.
    /// Returns the factor removed.
    pub fn make_monic(&self) -> (Rat, Poly) {
        match self.leading() {
            None => (Rat::one(), Poly::zero()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = c.recip();
                (c, self.scale(&inv))
            }
        }
    }

    /// Writes the polynomial with `th(k)` variables.
    pub fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for v in 0..MAX_VARS {
                let e = m.exp(v);
                match e {
                    0 => {}
                    1 => factors.push(format!("th({})", v + 1)),
                    _ => factors.push(format!("th({})^{}", v + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f)
    }
}
