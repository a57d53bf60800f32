//! The letter-wise embedding `Z_n → Z_{n+1}`, the cut of relations from
//! `Z_{n+1}` down to `Z_n`, and the stabilization check for products.

use std::collections::BTreeMap;

use crate::coeffring::Coefficient;
use crate::error::{Error, Result};
use crate::linalg::{express_in_span, SparseVec};
use crate::projector::{Oracle, ProjectorConfig};
use crate::weights::GeneratorId;
use crate::zn::{Relation, ZElement, ZWord};

/// The embedding `ι_n: Z_n → Z_{n+1}`, `z_ij ↦ z_ij`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Embedding {
    source: usize,
}

impl Embedding {
    pub fn new(source: usize) -> Self {
        Embedding { source }
    }

    pub fn source(self) -> usize {
        self.source
    }

    pub fn target(self) -> usize {
        self.source + 1
    }

    pub fn apply(self, x: &ZElement) -> ZElement {
        assert_eq!(x.n(), self.source, "rank mismatch");
        x.extend(self.target())
    }
}

/// `ι_n(x)`; letters are kept and coefficients re-read in the larger ring.
pub fn embed(x: &ZElement) -> ZElement {
    Embedding::new(x.n()).apply(x)
}

/// Whether `g` is `z_{i,m}` with `i < m`, a letter of the last column.
fn is_last_column(g: GeneratorId, m: usize) -> bool {
    g.j as usize == m && (g.i as usize) < m
}

/// Drops every term of a relation over `m = n+1` whose right factor is a
/// last-column letter `z_{i,m}`, and reads the rest in `Z_n`.
///
/// Fails with `NotCuttable(m)` when some term has a last-column letter as a
/// left factor, or when a surviving term still involves the index `m`.
pub fn cut(rel: &Relation) -> Result<Relation> {
    let m = rel.n();
    if rel.body.terms().keys().any(|w| w.len() > 1 && is_last_column(w[0], m)) {
        return Err(Error::NotCuttable(m));
    }
    let kept = rel.body.filter(|w, _| !w.last().is_some_and(|&g| w.len() > 1 && is_last_column(g, m)));
    let body = kept.restrict(m - 1).ok_or(Error::NotCuttable(m))?;
    Ok(Relation {
        family: rel.family,
        indices: rel.indices.clone(),
        line: rel.line,
        body,
    })
}

/// One span coefficient `ξ^{(a)}` of the difference for a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanTerm {
    pub a: usize,
    pub b: usize,
    /// Left coefficient of `z_{n+1,a} ∗ z_{b,n+1}`.
    pub xi: Coefficient,
}

/// Stabilization outcome for one ordered pair of generators.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub left: GeneratorId,
    pub right: GeneratorId,
    /// `ι_n(x ∗_n y) − x ∗_{n+1} y` vanishes.
    pub difference_is_zero: bool,
    pub span: Vec<SpanTerm>,
}

#[derive(Clone, Debug)]
pub struct StabilizationReport {
    pub n: usize,
    pub pairs: Vec<PairReport>,
}

impl StabilizationReport {
    /// Pairs whose product changes under the embedding.
    pub fn nonzero_differences(&self) -> usize {
        self.pairs.iter().filter(|p| !p.difference_is_zero).count()
    }
}

fn tilde_vector(oracle: &Oracle, word: &[GeneratorId]) -> SparseVec<ZWord> {
    let n = oracle.n();
    oracle.eval_tilde(&ZElement::word(n, word)).terms().clone()
}

/// For every pair of generators of `Z_n`, expresses
/// `Δ = ι_n(z_ij ∗_n z_kl) − z_ij ∗_{n+1} z_kl` in the span of
/// `z_{n+1,a} ∗_{n+1} z_{b,n+1}`, `b = i + k − j − l + a`.
pub fn check_stabilization(n: usize, cfg_n: &ProjectorConfig, cfg_n1: &ProjectorConfig) -> Result<StabilizationReport> {
    assert!(cfg_n.n == n && cfg_n1.n == n + 1, "projector ranks must be n and n+1");
    let small = Oracle::new(cfg_n.clone())?;
    let large = Oracle::new(cfg_n1.clone())?;
    let m = n + 1;
    let mut pairs = Vec::new();
    for x in GeneratorId::all(n) {
        for y in GeneratorId::all(n) {
            let embedded = embed(&small.eval_tilde(&ZElement::word(n, &[x, y])));
            let mut delta: SparseVec<ZWord> = embedded.terms().clone();
            for (w, c) in tilde_vector(&large, &[x, y]) {
                let v = delta.get(&w).map_or_else(|| -&c, |d| d - &c);
                if v.is_zero() {
                    delta.remove(&w);
                } else {
                    delta.insert(w, v);
                }
            }
            let offset = x.i as i64 + y.i as i64 - x.j as i64 - y.j as i64;
            let candidates: Vec<(usize, usize)> = (1..=m)
                .filter_map(|a| {
                    let b = a as i64 + offset;
                    (1..=m as i64).contains(&b).then_some((a, b as usize))
                })
                .collect();
            let span = if delta.is_empty() {
                Vec::new()
            } else {
                let basis: Vec<SparseVec<ZWord>> = candidates
                    .iter()
                    .map(|&(a, b)| tilde_vector(&large, &[GeneratorId::new(m, a), GeneratorId::new(b, m)]))
                    .collect();
                let sol = express_in_span(m, &basis, std::slice::from_ref(&delta))
                    .map_err(|_| Error::SpanFailure(format!("{x} {y}")))?
                    .remove(0);
                candidates
                    .iter()
                    .zip(sol)
                    .filter(|(_, xi)| !xi.is_zero())
                    .map(|(&(a, b), xi)| SpanTerm { a, b, xi })
                    .collect()
            };
            pairs.push(PairReport {
                left: x,
                right: y,
                difference_is_zero: delta.is_empty(),
                span,
            });
        }
    }
    Ok(StabilizationReport { n, pairs })
}

/// The tilde words of `x ∗ z_{i,n}` that contain no letter of column `n`;
/// empty when the product lies in the left ideal generated by column `n`.
pub fn column_ideal_violations(oracle: &Oracle, x: &ZElement, i: usize) -> Vec<ZWord> {
    let n = oracle.n();
    let product = x.mul(&ZElement::gen(n, i, n));
    oracle
        .eval_tilde(&product)
        .terms()
        .keys()
        .filter(|w| !w.iter().any(|g| g.j as usize == n))
        .cloned()
        .collect()
}

/// Relations of `Z_{n+1}` grouped by their cut in `Z_n`; relations that
/// cannot be cut are omitted.
pub fn cut_preimages(relations: &[Relation]) -> BTreeMap<String, Vec<Relation>> {
    let mut out: BTreeMap<String, Vec<Relation>> = BTreeMap::new();
    for rel in relations {
        if let Ok(c) = cut(rel) {
            if !c.body.is_zero() {
                out.entry(c.body.to_string()).or_default().push(rel.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{named_coeff, NamedKind};
    use crate::zn::{build_relations, Basis, Family};

    #[test]
    fn embed_examples() {
        let z = embed(&ZElement::gen(2, 1, 2));
        assert_eq!(z, ZElement::gen(3, 1, 2));
        let a = named_coeff(2, NamedKind::A, 1, 2);
        let x = ZElement::term(a, vec![GeneratorId::new(1, 1)]);
        let y = ZElement::term(named_coeff(3, NamedKind::A, 1, 2), vec![GeneratorId::new(1, 1)]);
        assert_eq!(embed(&x), y);
    }

    #[test]
    fn embedding_is_not_multiplicative() {
        let report = check_stabilization(2, &ProjectorConfig::new(2), &ProjectorConfig::new(3)).unwrap();
        assert_eq!(report.pairs.len(), 16);
        assert!(report.nonzero_differences() > 0);
        let pair = |i, j, k, l| {
            report
                .pairs
                .iter()
                .find(|p| p.left == GeneratorId::new(i, j) && p.right == GeneratorId::new(k, l))
                .unwrap()
        };
        let p = pair(1, 2, 2, 1);
        assert!(!p.difference_is_zero);
        assert!(p.span.iter().all(|s| s.a == s.b && s.a <= 2));
        let q = pair(1, 1, 1, 1);
        assert!(q.span.iter().all(|s| s.a == s.b));
        for p in report.pairs.iter().filter(|p| p.difference_is_zero) {
            assert!(p.span.is_empty());
        }
    }

    #[test]
    fn cut_of_type_four_b() {
        let n = 3;
        let rels = build_relations(n);
        let rel = rels
            .iter()
            .find(|r| r.family == Family::T4b && r.indices == [1, 2])
            .unwrap();
        let small = cut(rel).unwrap();
        let target = build_relations(2)
            .into_iter()
            .find(|r| r.family == Family::T4b && r.indices == [1, 2])
            .unwrap();
        assert_eq!(small.body, target.body);
        assert_eq!(small.body.basis(), Basis::Hat);
    }

    #[test]
    fn cut_without_last_column_is_restriction() {
        let n = 2;
        let rel = build_relations(n).remove(0);
        let lifted = Relation {
            body: rel.body.extend(n + 1),
            ..rel.clone()
        };
        assert_eq!(cut(&lifted).unwrap().body, rel.body);
    }

    #[test]
    fn cut_rejects_left_factor() {
        let n = 3;
        let body = ZElement::word(n, &[GeneratorId::new(1, 3), GeneratorId::new(2, 1)]);
        let rel = Relation {
            family: Family::T1,
            indices: vec![1, 2, 3],
            line: 0,
            body,
        };
        assert_eq!(cut(&rel).unwrap_err(), Error::NotCuttable(3));
    }

    #[test]
    fn cut_bijection_two_to_three() {
        let small = build_relations(2);
        let pre = cut_preimages(&build_relations(3));
        for f in Family::ALL {
            for rel in small.iter().filter(|r| r.family == f) {
                let hits = pre.get(&rel.body.to_string()).map_or(0, Vec::len);
                assert_eq!(hits, 1, "{f} {:?}: {}", rel.indices, rel.body);
                // coefficients agree verbatim on the shared terms
                let source = &pre[&rel.body.to_string()][0];
                assert_eq!(cut(source).unwrap().body, rel.body);
            }
        }
    }

    #[test]
    fn left_ideal_of_last_column() {
        for n in 2..=3 {
            let oracle = Oracle::new(ProjectorConfig::new(n)).unwrap();
            let gens: Vec<GeneratorId> = GeneratorId::all(n).collect();
            for i in 1..n {
                for &a in &gens {
                    let x = ZElement::word(n, &[a]);
                    assert!(column_ideal_violations(&oracle, &x, i).is_empty(), "{a} z{i}{n}");
                }
            }
        }
    }
}
