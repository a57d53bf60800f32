use std::collections::BTreeSet;

use crate::coeffring::Coefficient;
use crate::error::{Error, Result};
use crate::linalg::CoeffMatrix;
use crate::weights::{GeneratorId, Weight};

use super::element::{ZElement, ZWord};
use super::relations::Relation;
use super::rules::{unordered_pairs, OrderingRule, RuleSet};

/// Largest `|ς|` admitted in a denominator factor `θ_ij + ς`.
pub const DENOMINATOR_SHIFT_BOUND: i64 = 2;

/// Outcome of solving one weight block of the relation system for the
/// unordered products.
#[derive(Clone, Debug)]
pub struct WeightBlockReport {
    pub weight: Weight,
    /// Number of relations of this weight.
    pub relations: usize,
    /// The unordered pairs of this weight, one unknown each.
    pub unknowns: Vec<(GeneratorId, GeneratorId)>,
    /// The solved rules, one per unknown.
    pub solution: Vec<OrderingRule>,
    /// Unknowns whose solved right side differs from the given rule.
    pub mismatches: Vec<(GeneratorId, GeneratorId)>,
    /// Denominator factors `θ_ij + ς` of the solution with `|ς|` above
    /// [`DENOMINATOR_SHIFT_BOUND`] (or a non-linear denominator).
    pub bad_denominators: Vec<String>,
}

impl WeightBlockReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn denominators_admissible(&self) -> bool {
        self.bad_denominators.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.agrees() && self.denominators_admissible()
    }
}

/// Solves `𝒜X = −(rest)` for the unordered products of weight `weight`,
/// where each relation of that weight contributes one row, and compares the
/// solution against `rules`.
pub fn verify_weight_block(weight: &Weight, relations: &[Relation], rules: &RuleSet) -> Result<WeightBlockReport> {
    let n = rules.n();
    let unknowns = unordered_pairs(n, rules.order()).remove(weight).unwrap_or_default();
    let bodies: Vec<ZElement> = relations.iter().filter(|r| &r.weight() == weight).map(Relation::plain).collect();
    let label = || format!("{:?}", weight.coords());
    if bodies.len() != unknowns.len() {
        return Err(Error::SingularBlock(format!(
            "{}: {} relations for {} unknowns",
            label(),
            bodies.len(),
            unknowns.len()
        )));
    }
    let unknown_words: Vec<ZWord> = unknowns.iter().map(|&(a, b)| vec![a, b]).collect();
    let others: Vec<ZWord> = bodies
        .iter()
        .flat_map(|b| b.terms().keys().cloned())
        .filter(|w| !unknown_words.contains(w))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let m = unknowns.len();
    let lhs = CoeffMatrix::from_fn(n, m, m, |r, c| bodies[r].coeff(&unknown_words[c]));
    let rhs = CoeffMatrix::from_fn(n, m, others.len(), |r, c| -bodies[r].coeff(&others[c]));
    let x = lhs.solve(&rhs).map_err(|_| Error::SingularBlock(label()))?;

    let mut report = WeightBlockReport {
        weight: weight.clone(),
        relations: bodies.len(),
        unknowns: unknowns.clone(),
        solution: Vec::new(),
        mismatches: Vec::new(),
        bad_denominators: Vec::new(),
    };
    let mut bad = BTreeSet::new();
    for (r, &pair) in unknowns.iter().enumerate() {
        let mut sol = ZElement::zero(n);
        for (c, w) in others.iter().enumerate() {
            let v: &Coefficient = x.get(r, c);
            if !v.denominators_within(|s| s.abs() <= DENOMINATOR_SHIFT_BOUND) {
                bad.insert(v.to_string());
            }
            sol.add_term(w.clone(), v.clone());
        }
        if rules.get(pair.0, pair.1) != Some(&sol) {
            report.mismatches.push(pair);
        }
        report.solution.push(OrderingRule { lhs: pair, rhs: sol });
    }
    report.bad_denominators = bad.into_iter().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::{Oracle, ProjectorConfig};
    use crate::weights::GenOrder;
    use crate::zn::{build_relations, derive_rules_with};

    fn rules(n: usize) -> RuleSet {
        derive_rules_with(&Oracle::new(ProjectorConfig::new(n)).unwrap(), GenOrder::Standard).unwrap()
    }

    #[test]
    fn all_blocks_n2() {
        let n = 2;
        let (rels, rules) = (build_relations(n), rules(n));
        let weights: BTreeSet<Weight> = unordered_pairs(n, GenOrder::Standard).into_keys().collect();
        let mut total = 0;
        for w in &weights {
            let rep = verify_weight_block(w, &rels, &rules).unwrap();
            total += rep.unknowns.len();
            assert!(rep.agrees(), "{:?}: {:?}", w.coords(), rep.mismatches);
            assert!(rep.denominators_admissible(), "{:?}", rep.bad_denominators);
        }
        assert_eq!(total, 6);
        let zero = verify_weight_block(&Weight::zero(n), &rels, &rules).unwrap();
        assert_eq!(zero.unknowns.len(), 2);
    }

    #[test]
    fn selected_blocks_n3() {
        let n = 3;
        let (rels, rules) = (build_relations(n), rules(n));
        for (w, size) in [(Weight::root(n, 1, 3), 4), (Weight::zero(n), 6)] {
            let rep = verify_weight_block(&w, &rels, &rules).unwrap();
            assert_eq!(rep.unknowns.len(), size);
            assert!(rep.agrees(), "{:?}: {:?}", w.coords(), rep.mismatches);
            assert!(rep.denominators_admissible(), "{:?}", rep.bad_denominators);
        }
    }

    #[test]
    fn missing_relations_are_reported() {
        let n = 2;
        let err = verify_weight_block(&Weight::zero(n), &[], &rules(n)).unwrap_err();
        assert!(matches!(err, Error::SingularBlock(_)));
    }
}
