use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::coeffring::Coefficient;
use crate::enveloping::Word;
use crate::error::Result;
use crate::linalg::{express_in_span, SparseVec};
use crate::projector::{Oracle, ProjectorConfig};
use crate::weights::{GenOrder, GeneratorId, Weight};

use super::element::{word_weight, ZElement};

/// `z_I ∗ z_J ↦ rhs` for an unordered pair, `rhs` in ordered ∗-monomials
/// of degree at most 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderingRule {
    pub lhs: (GeneratorId, GeneratorId),
    pub rhs: ZElement,
}

/// A complete set of ordering rules for one generator order.
#[derive(Clone, Debug)]
pub struct RuleSet {
    n: usize,
    order: GenOrder,
    rules: BTreeMap<(GeneratorId, GeneratorId), ZElement>,
}

impl RuleSet {
    /// Assembles a rule set; every left side must be unordered in `order`.
    pub fn from_rules(n: usize, order: GenOrder, rules: impl IntoIterator<Item = OrderingRule>) -> Self {
        let rules = rules
            .into_iter()
            .map(|r| {
                debug_assert_eq!(order.cmp(r.lhs.0, r.lhs.1), Ordering::Greater);
                (r.lhs, r.rhs)
            })
            .collect();
        RuleSet { n, order, rules }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> GenOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, a: GeneratorId, b: GeneratorId) -> Option<&ZElement> {
        self.rules.get(&(a, b))
    }

    pub fn iter(&self) -> impl Iterator<Item = OrderingRule> + '_ {
        self.rules.iter().map(|(&lhs, rhs)| OrderingRule { lhs, rhs: rhs.clone() })
    }

    /// Whether every pair unordered in the rule set's order has a rule.
    pub fn is_complete(&self) -> bool {
        let gens: Vec<_> = GeneratorId::all(self.n).collect();
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.order.cmp(a, b) != Ordering::Greater || self.rules.contains_key(&(a, b)))
        })
    }
}

/// Ordered ∗-monomials of degree ≤ 2 and weight `mu`: the left-module
/// basis the rules are written in.
pub(crate) fn ordered_basis(n: usize, order: GenOrder, mu: &Weight) -> Vec<Vec<GeneratorId>> {
    let gens: Vec<_> = GeneratorId::all(n).collect();
    let mut out = Vec::new();
    for &a in &gens {
        for &b in &gens {
            if order.cmp(a, b) != Ordering::Greater && word_weight(n, &[a, b]) == *mu {
                out.push(vec![a, b]);
            }
        }
    }
    for &a in &gens {
        if a.weight(n) == *mu {
            out.push(vec![a]);
        }
    }
    if mu.is_zero() {
        out.push(Vec::new());
    }
    out
}

/// Ordered ∗-monomials of length at most `max_len` and weight `mu`.
pub fn ordered_words(n: usize, order: GenOrder, mu: &Weight, max_len: usize) -> Vec<Vec<GeneratorId>> {
    let mut gens: Vec<_> = GeneratorId::all(n).collect();
    gens.sort_by(|&a, &b| order.cmp(a, b));
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<GeneratorId>, usize)> = vec![(Vec::new(), 0)];
    while let Some((w, from)) = stack.pop() {
        if word_weight(n, &w) == *mu {
            out.push(w.clone());
        }
        if w.len() < max_len {
            for (k, &g) in gens.iter().enumerate().skip(from) {
                let mut next = w.clone();
                next.push(g);
                stack.push((next, k));
            }
        }
    }
    out.sort();
    out
}

/// `x` expanded in ordered ∗-monomials by the oracle alone: the tilde image
/// of `x` is expressed in the tilde images of the ordered monomials of each
/// weight up to the length of `x`.
pub fn oracle_normal_form(oracle: &Oracle, x: &ZElement, order: GenOrder) -> Result<ZElement> {
    let n = oracle.n();
    let mut by_weight: BTreeMap<Weight, ZElement> = BTreeMap::new();
    for (w, c) in x.iter() {
        let part = by_weight.entry(word_weight(n, w)).or_insert_with(|| ZElement::zero(n));
        part.add_term(w.clone(), c.clone());
    }
    let mut out = ZElement::zero(n);
    for (mu, part) in by_weight {
        let max_len = part.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
        let basis_words = ordered_words(n, order, &mu, max_len);
        let basis: Vec<SparseVec<Word>> = basis_words.iter().map(|w| oracle.eval_word(w).into_terms()).collect();
        let target = oracle.eval(&part).into_terms();
        let sol = express_in_span(n, &basis, &[target])?.remove(0);
        for (w, c) in basis_words.into_iter().zip(sol) {
            out.add_term(w, c);
        }
    }
    Ok(out)
}

/// Unordered pairs `(I, J)`, `I ≻ J`, grouped by weight.
pub(crate) fn unordered_pairs(n: usize, order: GenOrder) -> BTreeMap<Weight, Vec<(GeneratorId, GeneratorId)>> {
    let mut out: BTreeMap<Weight, Vec<_>> = BTreeMap::new();
    for a in GeneratorId::all(n) {
        for b in GeneratorId::all(n) {
            if order.cmp(a, b) == Ordering::Greater {
                out.entry(word_weight(n, &[a, b])).or_default().push((a, b));
            }
        }
    }
    out
}

/// Derives the ordering rules for `order` from the oracle: per weight, each
/// unordered product is expanded in tilde coordinates and expressed in the
/// tilde images of the ordered monomials.
pub fn derive_rules_with(oracle: &Oracle, order: GenOrder) -> Result<RuleSet> {
    let n = oracle.n();
    let mut rules = Vec::new();
    for (mu, pairs) in unordered_pairs(n, order) {
        let basis_words = ordered_basis(n, order, &mu);
        let basis: Vec<SparseVec<Word>> = basis_words
            .iter()
            .map(|w| oracle.eval_word(w).into_terms())
            .collect();
        let targets: Vec<SparseVec<Word>> = pairs
            .iter()
            .map(|&(a, b)| oracle.eval_word(&[a, b]).into_terms())
            .collect();
        let sols = express_in_span(n, &basis, &targets)?;
        for (&lhs, sol) in pairs.iter().zip(sols) {
            let mut rhs = ZElement::zero(n);
            for (w, c) in basis_words.iter().zip(sol) {
                rhs.add_term(w.clone(), c);
            }
            rules.push(OrderingRule { lhs, rhs });
        }
    }
    Ok(RuleSet::from_rules(n, order, rules))
}

/// Ordering rules for the standard order.
pub fn derive_ordering_rules(n: usize, cfg: &ProjectorConfig) -> Result<RuleSet> {
    assert_eq!(cfg.n, n, "projector rank mismatch");
    derive_rules_with(&Oracle::new(cfg.clone())?, GenOrder::Standard)
}

/// The matrix `M` of `z_I ∗ z_J = Σ M_{IJKL} \tilde{p_K p_L}` restricted to
/// degree-2 words, one row per ordered pair of generators.
pub fn product_matrix(oracle: &Oracle) -> BTreeMap<(GeneratorId, GeneratorId), BTreeMap<(GeneratorId, GeneratorId), Coefficient>> {
    let n = oracle.n();
    let mut out = BTreeMap::new();
    for a in GeneratorId::all(n) {
        for b in GeneratorId::all(n) {
            let row = oracle
                .eval_word(&[a, b])
                .into_terms()
                .into_iter()
                .filter(|(w, _)| w.len() == 2)
                .map(|(w, c)| ((w[0].generator(), w[1].generator()), c))
                .collect();
            out.insert((a, b), row);
        }
    }
    out
}
