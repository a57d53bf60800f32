//! The localized enveloping algebra of `gl_n ⊕ gl_n` in the basis
//! `e_ij` (diagonal copy) and `E_ij` (its complement), with PBW
//! straightening and left coefficients in the Cartan ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::Coefficient;
use crate::weights::{GenOrder, GeneratorId, Weight};

/// PBW block of a letter; blocks appear in this order in a PBW word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Species {
    /// `e_ij`, `i > j`
    EMinus,
    /// `E_ij`
    EBig,
    /// `e_ij`, `i < j`
    EPlus,
}

/// A non-Cartan basis element of the Lie algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub species: Species,
    pub i: u8,
    pub j: u8,
}

impl Letter {
    /// `e_ij` for `i ≠ j`.
    pub fn e(i: usize, j: usize) -> Letter {
        assert_ne!(i, j, "e_ii is a Cartan element, not a letter");
        let species = if i > j { Species::EMinus } else { Species::EPlus };
        Letter {
            species,
            i: i as u8,
            j: j as u8,
        }
    }

    /// `E_ij`.
    pub fn big(i: usize, j: usize) -> Letter {
        Letter {
            species: Species::EBig,
            i: i as u8,
            j: j as u8,
        }
    }

    pub fn is_big(self) -> bool {
        self.species == Species::EBig
    }

    pub fn weight(self, n: usize) -> Weight {
        Weight::root(n, self.i as usize, self.j as usize)
    }

    pub fn generator(self) -> GeneratorId {
        GeneratorId { i: self.i, j: self.j }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.species.cmp(&other.species).then_with(|| match self.species {
            Species::EBig => GenOrder::Standard.cmp(self.generator(), other.generator()),
            _ => (self.i, self.j).cmp(&(other.i, other.j)),
        })
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.species {
            Species::EBig => write!(f, "Ebig[{},{}]", self.i, self.j),
            _ => write!(f, "e[{},{}]", self.i, self.j),
        }
    }
}

/// A Lie algebra basis element, including the Cartan `e_kk`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LieBasis {
    Letter(Letter),
    Cartan(u8),
}

impl LieBasis {
    /// `e_ij`, Cartan when `i == j`.
    pub fn small(i: usize, j: usize) -> LieBasis {
        if i == j {
            LieBasis::Cartan(i as u8)
        } else {
            LieBasis::Letter(Letter::e(i, j))
        }
    }

    fn parts(self) -> (bool, u8, u8) {
        match self {
            LieBasis::Letter(l) => (l.is_big(), l.i, l.j),
            LieBasis::Cartan(k) => (false, k, k),
        }
    }
}

/// `[X_ij, Y_kl] = δ_jk W_il − δ_il W_kj`, `W` small iff `X`, `Y` are of
/// the same kind.
pub(crate) fn bracket_terms(a: LieBasis, b: LieBasis) -> Vec<(i64, LieBasis)> {
    let (ba, i, j) = a.parts();
    let (bb, k, l) = b.parts();
    let make = |p: u8, q: u8| {
        if ba == bb {
            LieBasis::small(p as usize, q as usize)
        } else {
            LieBasis::Letter(Letter::big(p as usize, q as usize))
        }
    };
    let mut out = Vec::with_capacity(2);
    if j == k {
        out.push((1, make(i, l)));
    }
    if i == l {
        out.push((-1, make(k, j)));
    }
    // [e_ii, E_ii] style cancellations
    if out.len() == 2 && out[0].1 == out[1].1 {
        out.clear();
    }
    out
}

/// Which ideals straightening works modulo.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reduction {
    /// Exact product.
    None,
    /// Modulo the left ideal generated by raising operators.
    LeftIdeal,
    /// Modulo both the left ideal and the right ideal of lowering operators.
    DoubleCoset,
}

impl Reduction {
    fn drops(self, word: &[Letter]) -> bool {
        let ends_plus = word.last().is_some_and(|l| l.species == Species::EPlus);
        let starts_minus = word.first().is_some_and(|l| l.species == Species::EMinus);
        match self {
            Reduction::None => false,
            Reduction::LeftIdeal => ends_plus,
            Reduction::DoubleCoset => ends_plus || starts_minus,
        }
    }
}

pub type Word = Vec<Letter>;

/// Element of the localized enveloping algebra: PBW words with left
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnvElement {
    n: usize,
    terms: BTreeMap<Word, Coefficient>,
}

pub(crate) fn word_weight(n: usize, word: &[Letter]) -> Weight {
    let mut w = vec![0i32; n];
    for l in word {
        w[l.i as usize - 1] += 1;
        w[l.j as usize - 1] -= 1;
    }
    Weight(w)
}

fn inversions(word: &[Letter]) -> usize {
    let mut count = 0;
    for a in 0..word.len() {
        for b in (a + 1)..word.len() {
            if word[a] > word[b] {
                count += 1;
            }
        }
    }
    count
}

impl EnvElement {
    pub fn zero(n: usize) -> Self {
        EnvElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(Coefficient::one(n))
    }

    pub fn scalar(c: Coefficient) -> Self {
        let mut e = Self::zero(c.n());
        if !c.is_zero() {
            e.terms.insert(Vec::new(), c);
        }
        e
    }

    /// A single letter with coefficient 1.
    pub fn letter(n: usize, l: Letter) -> Self {
        let mut e = Self::zero(n);
        e.terms.insert(vec![l], Coefficient::one(n));
        e
    }

    /// A Lie basis element; Cartan `e_kk` becomes the coefficient `θ_k + k`.
    pub fn lie(n: usize, b: LieBasis) -> Self {
        match b {
            LieBasis::Letter(l) => Self::letter(n, l),
            LieBasis::Cartan(k) => Self::scalar(Coefficient::h(n, k as usize)),
        }
    }

    /// Straightens an arbitrary word with a left coefficient.
    pub fn from_word(c: Coefficient, word: Word, mode: Reduction) -> Self {
        let n = c.n();
        straighten(n, vec![(word, c)], mode)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Coefficient> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Coefficient> {
        self.terms
    }

    pub fn coeff(&self, word: &[Letter]) -> Coefficient {
        self.terms.get(word).cloned().unwrap_or_else(|| Coefficient::zero(self.n))
    }

    /// Longest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, word: Word, c: Coefficient) {
        add_into(&mut self.terms, word, c);
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &EnvElement) -> EnvElement {
        self.add(&other.scale(&Coefficient::integer(self.n, -1)))
    }

    /// Left multiplication by a coefficient.
    pub fn scale(&self, c: &Coefficient) -> EnvElement {
        let mut out = EnvElement::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.terms {
            out.terms.insert(w.clone(), c * x);
        }
        out
    }

    /// Product, straightened and reduced according to `mode`.
    pub fn mul_mod(&self, other: &EnvElement, mode: Reduction) -> EnvElement {
        let n = self.n;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (u, a) in &self.terms {
            let mu = -&word_weight(n, u);
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                raw.push((w, a * &b.shift(&mu)));
            }
        }
        straighten(n, raw, mode)
    }

    /// Drops every term in the left ideal or the right ideal.
    pub fn reduce_to_coset(&self) -> EnvElement {
        let mut out = self.clone();
        out.terms.retain(|w, _| w.iter().all(|l| l.is_big()));
        out
    }

    /// Applies `f` to every letter and `g` to every coefficient, then
    /// straightens.
    pub fn map(&self, f: impl Fn(Letter) -> (i64, Letter), g: impl Fn(&Coefficient) -> Coefficient) -> EnvElement {
        let raw = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut sign = 1;
                let word: Word = w
                    .iter()
                    .map(|&l| {
                        let (s, l2) = f(l);
                        sign *= s;
                        l2
                    })
                    .collect();
                (word, g(c).scale(&crate::coeffring::rat(sign)))
            })
            .collect();
        straighten(self.n, raw, Reduction::None)
    }

    /// Re-reads the element in rank `n ≥ self.n()`.
    pub fn extend(&self, n: usize) -> EnvElement {
        EnvElement {
            n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.extend(n))).collect(),
        }
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for l in w {
                write!(f, "*{l}")?;
            }
        }
        Ok(())
    }
}

fn add_into(map: &mut BTreeMap<Word, Coefficient>, word: Word, c: Coefficient) {
    if c.is_zero() {
        return;
    }
    match map.entry(word) {
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

/// PBW straightening by adjacent transpositions.
///
/// Work items are keyed by `(length, inversions, word)` and processed from
/// the largest key; every rewrite produces strictly smaller keys, so each
/// word is handled once with its fully merged coefficient.
pub(crate) fn straighten(n: usize, raw: Vec<(Word, Coefficient)>, mode: Reduction) -> EnvElement {
    type Key = (usize, usize, Word);
    let mut work: BTreeMap<Key, Coefficient> = BTreeMap::new();
    let push = |work: &mut BTreeMap<Key, Coefficient>, w: Word, c: Coefficient| {
        if c.is_zero() || mode.drops(&w) {
            return;
        }
        let key = (w.len(), inversions(&w), w);
        match work.entry(key) {
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
    };
    for (w, c) in raw {
        push(&mut work, w, c);
    }
    let mut out = EnvElement::zero(n);
    while let Some(((_, inv, w), c)) = work.pop_last() {
        if inv == 0 {
            add_into(&mut out.terms, w, c);
            continue;
        }
        let p = (0..w.len() - 1).find(|&p| w[p] > w[p + 1]).expect("inversion implies a descent");
        let (a, b) = (w[p], w[p + 1]);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        push(&mut work, swapped, c.clone());
        for (k, term) in bracket_terms(LieBasis::Letter(a), LieBasis::Letter(b)) {
            let kc = c.scale(&crate::coeffring::rat(k));
            match term {
                LieBasis::Letter(l) => {
                    let mut nw = Vec::with_capacity(w.len() - 1);
                    nw.extend_from_slice(&w[..p]);
                    nw.push(l);
                    nw.extend_from_slice(&w[p + 2..]);
                    push(&mut work, nw, kc);
                }
                LieBasis::Cartan(m) => {
                    // u·h_m = (h_m − wt(u)_m)·u
                    let shift = word_weight(n, &w[..p]).coords()[m as usize - 1];
                    let h = &Coefficient::h(n, m as usize) - &Coefficient::integer(n, shift as i64);
                    let mut nw = Vec::with_capacity(w.len() - 2);
                    nw.extend_from_slice(&w[..p]);
                    nw.extend_from_slice(&w[p + 2..]);
                    push(&mut work, nw, &kc * &h);
                }
            }
        }
    }
    out
}

/// Lie bracket of two basis elements as an algebra element.
pub fn bracket(n: usize, a: LieBasis, b: LieBasis) -> EnvElement {
    match (a, b) {
        (LieBasis::Cartan(_), LieBasis::Cartan(_)) => EnvElement::zero(n),
        (LieBasis::Cartan(k), LieBasis::Letter(l)) | (LieBasis::Letter(l), LieBasis::Cartan(k)) => {
            let w = l.weight(n).coords()[k as usize - 1] as i64;
            let sign = if matches!(a, LieBasis::Cartan(_)) { 1 } else { -1 };
            EnvElement::letter(n, l).scale(&Coefficient::integer(n, sign * w))
        }
        _ => {
            let mut out = EnvElement::zero(n);
            for (k, t) in bracket_terms(a, b) {
                out = out.add(&EnvElement::lie(n, t).scale(&Coefficient::integer(n, k)));
            }
            out
        }
    }
}

/// Product in the enveloping algebra.
pub fn multiply(a: &EnvElement, b: &EnvElement) -> EnvElement {
    a.mul_mod(b, Reduction::None)
}

pub fn reduce_to_coset(x: &EnvElement) -> EnvElement {
    x.reduce_to_coset()
}

/// `σ_i` as a 0-based permutation of `0..n`.
pub(crate) fn transposition(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i - 1, i);
    p
}

/// `σ́_i(X_kl) = (−1)^{δ_ik+δ_il} X_{σ_i(k)σ_i(l)}`, with `h_k ↦ h_{σ_i(k)}`
/// on coefficients.
pub fn sigma_auto(i: usize, x: &EnvElement) -> EnvElement {
    let n = x.n();
    let perm = transposition(n, i);
    x.map(
        |l| {
            let sign = if (l.i as usize == i) ^ (l.j as usize == i) { -1 } else { 1 };
            let (k2, l2) = (perm[l.i as usize - 1] + 1, perm[l.j as usize - 1] + 1);
            let letter = if l.is_big() { Letter::big(k2, l2) } else { Letter::e(k2, l2) };
            (sign, letter)
        },
        |c| c.weyl_act(&perm, false),
    )
}
