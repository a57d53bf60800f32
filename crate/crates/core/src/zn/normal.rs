use std::collections::BTreeMap;

use crate::coeffring::Coefficient;
use crate::error::{Error, Result};
use crate::weights::{GenOrder, GeneratorId};

use super::element::{word_weight, Basis, ZElement, ZWord};
use super::rules::RuleSet;

/// Where in a word the next unordered adjacent pair is rewritten.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// Environment variable overriding the default step cap.
pub const STEP_CAP_ENV: &str = "REDUCTA_STEP_CAP";
const DEFAULT_STEP_CAP: usize = 5_000_000;

#[derive(Clone, Copy, Debug)]
pub struct NormalOrderOptions {
    pub strategy: Strategy,
    pub step_cap: usize,
}

impl Default for NormalOrderOptions {
    /// Leftmost strategy; step cap from `REDUCTA_STEP_CAP` when set.
    fn default() -> Self {
        let step_cap = std::env::var(STEP_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_STEP_CAP);
        NormalOrderOptions {
            strategy: Strategy::Leftmost,
            step_cap,
        }
    }
}

impl NormalOrderOptions {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

/// Bookkeeping of one normal-ordering run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RewriteStats {
    pub steps: usize,
    /// Same-length outputs whose measure exceeds the input's.
    pub measure_increases: usize,
    /// Same-length outputs with equal measure other than the swapped word.
    pub non_transpositions: usize,
}

/// `𝔡(I_1..I_k) = Σ_m (k − m)·d(I_m)`.
pub fn measure(word: &[GeneratorId]) -> i64 {
    let k = word.len() as i64;
    word.iter()
        .enumerate()
        .map(|(m, g)| (k - 1 - m as i64) * g.height() as i64)
        .sum()
}

fn inversions(order: GenOrder, word: &[GeneratorId]) -> usize {
    let mut c = 0;
    for a in 0..word.len() {
        for b in (a + 1)..word.len() {
            if order.lt(word[b], word[a]) {
                c += 1;
            }
        }
    }
    c
}

type Key = (usize, i64, usize, ZWord);

fn key(order: GenOrder, w: ZWord) -> Key {
    (w.len(), measure(&w), inversions(order, &w), w)
}

fn accumulate(map: &mut BTreeMap<Key, Coefficient>, k: Key, c: Coefficient) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
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

/// Rewrites `x` (a combination of ∗-words in plain letters) to ordered form.
pub fn normal_order(x: &ZElement, rules: &RuleSet) -> Result<ZElement> {
    normal_order_with(x, rules, NormalOrderOptions::default()).map(|(z, _)| z)
}

/// [`normal_order`] with an explicit strategy and step cap, returning the
/// measure bookkeeping alongside the result.
pub fn normal_order_with(x: &ZElement, rules: &RuleSet, opts: NormalOrderOptions) -> Result<(ZElement, RewriteStats)> {
    assert_eq!(x.basis(), Basis::Plain, "normal ordering needs plain letters");
    assert_eq!(x.n(), rules.n(), "rank mismatch");
    let n = x.n();
    let order = rules.order();
    let mut stats = RewriteStats::default();
    let mut pending: BTreeMap<Key, Coefficient> = BTreeMap::new();
    for (w, c) in x.iter() {
        accumulate(&mut pending, key(order, w.clone()), c.clone());
    }
    let mut done = ZElement::zero(n);
    // every output of a rewrite has a strictly smaller key, so each word is
    // taken once with all its contributions merged
    while let Some((k, c)) = pending.pop_last() {
        let (len, m, _, word) = k;
        let positions = (0..len.saturating_sub(1)).filter(|&p| order.lt(word[p + 1], word[p]));
        let pos = match opts.strategy {
            Strategy::Leftmost => positions.min(),
            Strategy::Rightmost => positions.max(),
        };
        let Some(p) = pos else {
            done.add_term(word, c);
            continue;
        };
        stats.steps += 1;
        if stats.steps > opts.step_cap {
            return Err(Error::StepCapExceeded(opts.step_cap));
        }
        let rhs = rules
            .get(word[p], word[p + 1])
            .ok_or_else(|| Error::MissingRule(format!("{} {}", word[p], word[p + 1])))?;
        let mu = -&word_weight(n, &word[..p]);
        let mut swapped = word.clone();
        swapped.swap(p, p + 1);
        for (w, phi) in rhs.iter() {
            let mut out = word[..p].to_vec();
            out.extend_from_slice(w);
            out.extend_from_slice(&word[p + 2..]);
            if out.len() == len {
                let mo = measure(&out);
                if mo > m {
                    stats.measure_increases += 1;
                } else if mo == m && out != swapped {
                    stats.non_transpositions += 1;
                }
            }
            accumulate(&mut pending, key(order, out), &c * &phi.shift(&mu));
        }
    }
    Ok((done, stats))
}

/// The ∗-product of two elements, normal-ordered.
pub fn star(a: &ZElement, b: &ZElement, rules: &RuleSet) -> Result<ZElement> {
    normal_order(&a.mul(b), rules)
}
