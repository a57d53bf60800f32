use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::Coefficient;
use crate::weights::{GenOrder, GeneratorId, Weight};

/// Which generators the letters of a [`ZElement`] stand for.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Basis {
    /// `z_ij`, `t_i`
    #[default]
    Plain,
    /// `ẑ_ij`, `t̊_i`
    Hat,
}

pub type ZWord = Vec<GeneratorId>;

/// Left-coefficient combination of words in the generators of `Z_n`.
///
/// As an element of the free algebra the product is concatenation with
/// coefficients moved left by `shift(·, −weight)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZElement {
    n: usize,
    basis: Basis,
    terms: BTreeMap<ZWord, Coefficient>,
}

pub fn word_weight(n: usize, word: &[GeneratorId]) -> Weight {
    let mut w = vec![0i32; n];
    for g in word {
        w[g.i as usize - 1] += 1;
        w[g.j as usize - 1] -= 1;
    }
    Weight(w)
}

impl ZElement {
    pub fn zero(n: usize) -> Self {
        ZElement {
            n,
            basis: Basis::Plain,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(Coefficient::one(n))
    }

    pub fn scalar(c: Coefficient) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn term(c: Coefficient, word: ZWord) -> Self {
        let mut z = Self::zero(c.n());
        if !c.is_zero() {
            z.terms.insert(word, c);
        }
        z
    }

    /// The generator `z_ij` (`t_i` when `i == j`).
    pub fn gen(n: usize, i: usize, j: usize) -> Self {
        Self::term(Coefficient::one(n), vec![GeneratorId::new(i, j)])
    }

    pub fn word(n: usize, word: &[GeneratorId]) -> Self {
        Self::term(Coefficient::one(n), word.to_vec())
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<ZWord, Coefficient> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[GeneratorId]) -> Coefficient {
        self.terms.get(word).cloned().unwrap_or_else(|| Coefficient::zero(self.n))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The weights of the terms, deduplicated.
    pub fn weights(&self) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self.terms.keys().map(|w| word_weight(self.n, w)).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    pub fn add_term(&mut self, word: ZWord, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &ZElement) {
        assert_eq!(self.n, other.n, "rank mismatch");
        assert!(
            self.basis == other.basis || self.terms.is_empty() || other.terms.is_empty(),
            "basis mismatch"
        );
    }

    pub fn add(&self, other: &ZElement) -> ZElement {
        self.check(other);
        let mut out = self.clone();
        if out.terms.is_empty() {
            out.basis = other.basis;
        }
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZElement) -> ZElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ZElement {
        self.scale(&Coefficient::integer(self.n, -1))
    }

    /// Left multiplication by a coefficient.
    pub fn scale(&self, c: &Coefficient) -> ZElement {
        let mut out = ZElement {
            n: self.n,
            basis: self.basis,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.terms {
            out.terms.insert(w.clone(), c * x);
        }
        out
    }

    /// Right multiplication by a coefficient, `w·φ = shift(φ, −wt w)·w`.
    pub fn times_coeff(&self, c: &Coefficient) -> ZElement {
        let mut out = ZElement {
            n: self.n,
            basis: self.basis,
            terms: BTreeMap::new(),
        };
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * &c.shift(&-&word_weight(self.n, w)));
        }
        out
    }

    /// Free-algebra product.
    pub fn mul(&self, other: &ZElement) -> ZElement {
        self.check(other);
        let basis = if self.terms.is_empty() { other.basis } else { self.basis };
        let mut out = ZElement {
            n: self.n,
            basis,
            terms: BTreeMap::new(),
        };
        for (u, a) in &self.terms {
            let mu = -&word_weight(self.n, u);
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * &b.shift(&mu));
            }
        }
        out
    }

    /// `[a, b] = ab − ba` in the free algebra.
    pub fn commutator(&self, other: &ZElement) -> ZElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Whether every word is weakly increasing in `order`.
    pub fn is_ordered(&self, order: GenOrder) -> bool {
        self.terms.keys().all(|w| order.is_ordered(w))
    }

    /// Substitutes every letter by an element and every coefficient by
    /// `coeff_map`, multiplying out in the free algebra.
    pub fn substitute(
        &self,
        letter_map: impl Fn(GeneratorId) -> ZElement,
        coeff_map: impl Fn(&Coefficient) -> Coefficient,
        basis: Basis,
    ) -> ZElement {
        let mut cache: BTreeMap<GeneratorId, ZElement> = BTreeMap::new();
        let mut out = ZElement::zero(self.n).with_basis(basis);
        for (w, c) in &self.terms {
            let mut acc = ZElement::scalar(coeff_map(c)).with_basis(basis);
            for g in w {
                let img = cache.entry(*g).or_insert_with(|| letter_map(*g).with_basis(basis));
                acc = acc.mul(img);
            }
            out = out.add(&acc);
        }
        out.basis = basis;
        out
    }

    /// Reverses every word and applies `letter_map` letter-wise, for
    /// anti-automorphisms.
    pub fn reverse_map(&self, letter_map: impl Fn(GeneratorId) -> ZElement) -> ZElement {
        let mut out = ZElement::zero(self.n).with_basis(self.basis);
        for (w, c) in &self.terms {
            // ε(φ·x_1⋯x_k) = ε(x_k)⋯ε(x_1)·φ
            let mut acc = ZElement::one(self.n).with_basis(self.basis);
            for g in w.iter().rev() {
                acc = acc.mul(&letter_map(*g).with_basis(self.basis));
            }
            out = out.add(&acc.times_coeff(c));
        }
        out
    }

    /// Re-reads the element in rank `n ≥ self.n()`.
    pub fn extend(&self, n: usize) -> ZElement {
        ZElement {
            n,
            basis: self.basis,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.extend(n))).collect(),
        }
    }

    /// Re-reads the element in rank `n ≤ self.n()`, or `None` when a letter
    /// or coefficient involves an index above `n`.
    pub fn restrict(&self, n: usize) -> Option<ZElement> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            if w.iter().any(|g| g.i as usize > n || g.j as usize > n) {
                return None;
            }
            terms.insert(w.clone(), c.restrict(n)?);
        }
        Some(ZElement {
            n,
            basis: self.basis,
            terms,
        })
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&ZWord, &Coefficient) -> bool) -> ZElement {
        let mut out = self.clone();
        out.terms.retain(|w, c| keep(w, c));
        out
    }

    /// Terms as `(coefficient, word)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (&ZWord, &Coefficient)> {
        self.terms.iter()
    }

    /// Sorts the terms for display: longer words first, then by `order`.
    pub fn display_order(&self, order: GenOrder) -> Vec<(&ZWord, &Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            b.0.len().cmp(&a.0.len()).then_with(|| {
                for (x, y) in a.0.iter().zip(b.0.iter()) {
                    let o = order.cmp(*x, *y);
                    if o != std::cmp::Ordering::Equal {
                        return o;
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        v
    }

    pub(crate) fn letter_text(basis: Basis, g: GeneratorId) -> String {
        match (basis, g.is_cartan()) {
            (Basis::Plain, true) => format!("t[{}]", g.i),
            (Basis::Plain, false) => format!("z[{},{}]", g.i, g.j),
            (Basis::Hat, true) => format!("tring[{}]", g.i),
            (Basis::Hat, false) => format!("zhat[{},{}]", g.i, g.j),
        }
    }
}

impl fmt::Display for ZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.display_order(GenOrder::Standard).into_iter().enumerate() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, rest.to_string()),
                _ => (false, text),
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let letters: Vec<String> = w.iter().map(|g| Self::letter_text(self.basis, *g)).collect();
            if letters.is_empty() {
                write!(f, "{}", paren_if_sum(&body))?;
            } else if body == "1" {
                f.write_str(&letters.join("*"))?;
            } else {
                write!(f, "{}*{}", paren_if_sum(&body), letters.join("*"))?;
            }
        }
        Ok(())
    }
}

fn paren_if_sum(s: &str) -> String {
    if s.contains(" + ") || s.contains(" - ") {
        format!("({s})")
    } else {
        s.to_string()
    }
}
