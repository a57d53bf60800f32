//! The extremal projector of the diagonal `gl_n` and the multiplication
//! `a ∗ b = a P b` it induces on double-coset representatives.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::coeffring::{rat, Coefficient};
use crate::enveloping::{sigma_auto, word_weight, EnvElement, Letter, Reduction};
use crate::error::{Error, Result};
use crate::weights::{GeneratorId, Weight};
use crate::zn::{Basis, ZElement};

/// A positive root `ε_a − ε_b`, `a < b`.
pub type Root = (usize, usize);

/// Parameters of the factorized projector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorConfig {
    pub n: usize,
    root_order: Vec<Root>,
    k_cap: Option<usize>,
}

impl ProjectorConfig {
    /// Normal order induced by `w_0 = s_1 (s_2 s_1) (s_3 s_2 s_1) ⋯`.
    pub fn new(n: usize) -> Self {
        let word: Vec<usize> = (1..n).flat_map(|k| (1..=k).rev()).collect();
        let mut order = Vec::with_capacity(word.len());
        for (pos, &i) in word.iter().enumerate() {
            // β = s_{i_1} ⋯ s_{i_{pos−1}} (α_{i_pos})
            let (mut a, mut b) = (i, i + 1);
            for &s in word[..pos].iter().rev() {
                let swap = |x: usize| if x == s { s + 1 } else if x == s + 1 { s } else { x };
                a = swap(a);
                b = swap(b);
            }
            order.push((a, b));
        }
        ProjectorConfig {
            n,
            root_order: order,
            k_cap: None,
        }
    }

    /// A custom order; it must list every positive root once and be normal.
    pub fn with_root_order(n: usize, order: Vec<Root>) -> Result<Self> {
        let mut seen = order.clone();
        seen.sort();
        seen.dedup();
        let complete = seen.len() == n * (n - 1) / 2
            && order.len() == seen.len()
            && order.iter().all(|&(a, b)| a < b && b <= n);
        let pos = |r: Root| order.iter().position(|&x| x == r);
        let normal = complete
            && order.iter().all(|&(a, c)| {
                (a + 1..c).all(|b| {
                    let (p, q, r) = (pos((a, b)).unwrap(), pos((a, c)).unwrap(), pos((b, c)).unwrap());
                    (p < q && q < r) || (r < q && q < p)
                })
            });
        if !normal {
            return Err(Error::IndexOutOfRange(format!("{order:?} is not a normal ordering")));
        }
        Ok(ProjectorConfig {
            n,
            root_order: order,
            k_cap: None,
        })
    }

    /// Overrides the per-factor cap.
    pub fn with_k_cap(mut self, cap: usize) -> Self {
        self.k_cap = Some(cap);
        self
    }

    pub fn root_order(&self) -> &[Root] {
        &self.root_order
    }

    /// `ρ(h_{ε_a−ε_b}) = b − a`.
    pub fn rho(&self, root: Root) -> i64 {
        root.1 as i64 - root.0 as i64
    }

    fn cap_for(&self, degree: usize) -> usize {
        self.k_cap.unwrap_or(2 * degree + 2)
    }
}

/// `P·y` modulo the left ideal, factor by factor from the right.
///
/// `P_γ = Σ_k (−1)^k/k! e_{−γ}^k e_γ^k Π_{j=1..k} (h_γ + ρ(h_γ) + j)^{-1}`
/// and `h_γ + ρ(h_γ) = θ_ab` for `γ = ε_a − ε_b`.
pub fn apply_projector(cfg: &ProjectorConfig, y: &EnvElement) -> Result<EnvElement> {
    let n = cfg.n;
    let mut cur = y.clone();
    for &(a, b) in cfg.root_order.iter().rev() {
        let cap = cfg.cap_for(cur.degree());
        let raise = EnvElement::letter(n, Letter::e(a, b));
        let lower = EnvElement::letter(n, Letter::e(b, a));
        let mut acc = cur.clone();
        let mut w = cur.clone();
        let mut phi = Coefficient::one(n);
        let mut k = 0;
        loop {
            w = raise.mul_mod(&w, Reduction::LeftIdeal);
            if w.is_zero() {
                break;
            }
            k += 1;
            if k > cap {
                return Err(Error::TruncationCapExceeded(cap));
            }
            let step = Coefficient::theta_ij(n, a, b, k as i64 + cfg.rho((a, b)) - (b as i64 - a as i64));
            phi = &(&phi / &step) * &Coefficient::from_rat(n, rat(-1) / rat(k as i64));
            let mut t = w.clone();
            for _ in 0..k {
                t = lower.mul_mod(&t, Reduction::LeftIdeal);
            }
            acc = acc.add(&t.scale(&phi));
        }
        cur = acc;
    }
    Ok(cur)
}

/// Reads a word of generators as the coset representative `E_{I_1}⋯E_{I_k}`.
pub fn lift_word(n: usize, word: &[GeneratorId]) -> EnvElement {
    let letters = word.iter().map(|g| Letter::big(g.i as usize, g.j as usize)).collect();
    EnvElement::from_word(Coefficient::one(n), letters, Reduction::DoubleCoset)
}

/// A [`ZElement`] in tilde coordinates as a coset representative.
pub fn lift(x: &ZElement) -> EnvElement {
    let n = x.n();
    let mut out = EnvElement::zero(n);
    for (w, c) in x.iter() {
        out = out.add(&lift_word(n, w).scale(c));
    }
    out
}

/// A coset representative in tilde coordinates.
pub fn to_tilde(x: &EnvElement) -> ZElement {
    let n = x.n();
    let mut out = ZElement::zero(n);
    for (w, c) in x.terms() {
        debug_assert!(w.iter().all(|l| l.is_big()));
        out.add_term(w.iter().map(|l| l.generator()).collect(), c.clone());
    }
    out
}

/// `x ∗ y` for elements given in tilde coordinates.
pub fn oracle_mult(cfg: &ProjectorConfig, x: &ZElement, y: &ZElement) -> Result<ZElement> {
    let py = apply_projector(cfg, &lift(y))?;
    Ok(to_tilde(&lift(x).mul_mod(&py, Reduction::DoubleCoset)))
}

/// Evaluates ∗-words with cached projector images of the generators.
///
/// The cache is filled at construction, so shared references are safe to
/// use from many threads.
#[derive(Debug)]
pub struct Oracle {
    cfg: ProjectorConfig,
    images: HashMap<GeneratorId, EnvElement>,
    words: RwLock<HashMap<Vec<GeneratorId>, EnvElement>>,
}

impl Oracle {
    pub fn new(cfg: ProjectorConfig) -> Result<Self> {
        let n = cfg.n;
        let mut images = HashMap::new();
        for g in GeneratorId::all(n) {
            images.insert(g, apply_projector(&cfg, &lift_word(n, &[g]))?);
        }
        Ok(Oracle {
            cfg,
            images,
            words: RwLock::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.cfg.n
    }

    pub fn config(&self) -> &ProjectorConfig {
        &self.cfg
    }

    /// `x ∗ g` for a coset representative `x`.
    pub fn mul_generator(&self, x: &EnvElement, g: GeneratorId) -> EnvElement {
        x.mul_mod(&self.images[&g], Reduction::DoubleCoset)
    }

    /// `x ∗ y` for coset representatives.
    pub fn mul(&self, x: &EnvElement, y: &EnvElement) -> Result<EnvElement> {
        let py = apply_projector(&self.cfg, y)?;
        Ok(x.mul_mod(&py, Reduction::DoubleCoset))
    }

    /// `z_{I_1} ∗ ⋯ ∗ z_{I_k}` as a coset representative, evaluated left to
    /// right; prefixes of length at most 3 are memoized.
    pub fn eval_word(&self, word: &[GeneratorId]) -> EnvElement {
        let n = self.n();
        if word.is_empty() {
            return EnvElement::one(n);
        }
        if word.len() <= 3 {
            if let Some(hit) = self.words.read().expect("cache lock").get(word) {
                return hit.clone();
            }
        }
        let (init, last) = word.split_at(word.len() - 1);
        let prefix = if init.is_empty() {
            EnvElement::one(n)
        } else {
            self.eval_word(init)
        };
        let out = if init.is_empty() {
            lift_word(n, last)
        } else {
            self.mul_generator(&prefix, last[0])
        };
        if word.len() <= 3 {
            self.words.write().expect("cache lock").insert(word.to_vec(), out.clone());
        }
        out
    }

    /// Reads `x` as a combination of ∗-words and evaluates it.
    pub fn eval(&self, x: &ZElement) -> EnvElement {
        assert_eq!(x.basis(), Basis::Plain, "oracle evaluation needs plain letters");
        let n = self.n();
        let mut out = EnvElement::zero(n);
        for (w, c) in x.iter() {
            out = out.add(&self.eval_word(w).scale(c));
        }
        out
    }

    /// `eval` in tilde coordinates.
    pub fn eval_tilde(&self, x: &ZElement) -> ZElement {
        to_tilde(&self.eval(x))
    }
}

/// The Zhelobenko operator `q_i` on a coset representative, from its
/// defining series
/// `Σ_k (−1)^k/k! ad(e_{α_i})^k(σ́_i x) e_{−α_i}^k Π_{j=1..k}(h_{α_i} − j + 1)^{-1}`,
/// with coefficients moved by the shifted Weyl action.
pub fn zhelobenko_series(i: usize, x: &EnvElement) -> EnvElement {
    let n = x.n();
    let perm = crate::enveloping::transposition(n, i);
    let raise = EnvElement::letter(n, Letter::e(i, i + 1));
    let lower = EnvElement::letter(n, Letter::e(i + 1, i));
    let mut out = EnvElement::zero(n);
    for (w, c) in x.terms() {
        let phi = c.weyl_act(&perm, true);
        let word = EnvElement::from_word(Coefficient::one(n), w.clone(), Reduction::None);
        let mut ad = sigma_auto(i, &word);
        let mu: Weight = word_weight(n, &w.iter().map(|&l| sigma_letter(i, l)).collect::<Vec<_>>());
        let mut k = 0i64;
        let mut scalar = Coefficient::one(n);
        let mut right = Coefficient::one(n);
        let mut lowers = EnvElement::one(n);
        while !ad.is_zero() {
            // term = ad^k(σ́x)·e_{−α}^k·right, right = Π (h_α − j + 1)^{-1}
            let body = ad.mul_mod(&lowers, Reduction::DoubleCoset);
            // the word has weight μ, so a right coefficient φ becomes shift(φ, −μ) on the left
            let left = right.shift(&-&mu);
            out = out.add(&body.scale(&(&(&phi * &scalar) * &left)));
            k += 1;
            ad = raise.mul_mod(&ad, Reduction::None).sub(&ad.mul_mod(&raise, Reduction::None));
            lowers = lower.mul_mod(&lowers, Reduction::None);
            scalar = &scalar * &Coefficient::from_rat(n, rat(-1) / rat(k));
            // h_α − j + 1 = θ_{i,i+1} − j
            right = &right / &Coefficient::theta_ij(n, i, i + 1, -k);
        }
    }
    out
}

fn sigma_letter(i: usize, l: Letter) -> Letter {
    let s = |x: u8| {
        let x = x as usize;
        if x == i {
            i + 1
        } else if x == i + 1 {
            i
        } else {
            x
        }
    };
    let (a, b) = (s(l.i), s(l.j));
    if l.is_big() {
        Letter::big(a, b)
    } else {
        Letter::e(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize, j: usize) -> GeneratorId {
        GeneratorId::new(i, j)
    }

    #[test]
    fn default_root_orders() {
        assert_eq!(ProjectorConfig::new(2).root_order(), &[(1, 2)]);
        assert_eq!(ProjectorConfig::new(3).root_order(), &[(1, 2), (1, 3), (2, 3)]);
        let four = ProjectorConfig::new(4);
        assert_eq!(four.root_order().len(), 6);
        assert!(ProjectorConfig::with_root_order(4, four.root_order().to_vec()).is_ok());
        assert!(ProjectorConfig::with_root_order(3, vec![(1, 3), (1, 2), (2, 3)]).is_err());
        assert!(ProjectorConfig::with_root_order(3, vec![(2, 3), (1, 3), (1, 2)]).is_ok());
    }

    #[test]
    fn projector_examples() {
        let cfg = ProjectorConfig::new(2);
        let e12 = lift_word(2, &[g(1, 2)]);
        assert_eq!(apply_projector(&cfg, &e12).unwrap().reduce_to_coset(), e12);
        assert_eq!(apply_projector(&cfg, &EnvElement::one(2)).unwrap(), EnvElement::one(2));
    }

    #[test]
    fn projector_output_is_killed_by_raising() {
        for n in 2..=3 {
            let cfg = ProjectorConfig::new(n);
            let mut inputs: Vec<Vec<GeneratorId>> = GeneratorId::all(n).map(|x| vec![x]).collect();
            inputs.push(vec![g(2, 1), g(1, 2)]);
            inputs.push(vec![g(n, 1), g(1, 1)]);
            for word in inputs {
                let y = lift_word(n, &word);
                let py = apply_projector(&cfg, &y).unwrap();
                for a in 1..n {
                    let raised = EnvElement::letter(n, Letter::e(a, a + 1)).mul_mod(&py, Reduction::LeftIdeal);
                    assert!(raised.is_zero(), "n={n} {word:?} α_{a}");
                }
            }
        }
    }

    #[test]
    fn degree_one_factors_truncate_early() {
        for n in 2..=4 {
            let cfg = ProjectorConfig::new(n).with_k_cap(2);
            for x in GeneratorId::all(n) {
                assert!(apply_projector(&cfg, &lift_word(n, &[x])).is_ok());
            }
        }
        let tight = ProjectorConfig::new(2).with_k_cap(0);
        let err = apply_projector(&tight, &lift_word(2, &[g(2, 1)])).unwrap_err();
        assert_eq!(err, Error::TruncationCapExceeded(0));
    }

    #[test]
    fn unit_and_cartan_products() {
        let cfg = ProjectorConfig::new(2);
        let one = ZElement::one(2);
        let z12 = ZElement::gen(2, 1, 2);
        assert_eq!(oracle_mult(&cfg, &one, &z12).unwrap(), z12);
        let (t1, t2) = (ZElement::gen(2, 1, 1), ZElement::gen(2, 2, 2));
        assert_eq!(oracle_mult(&cfg, &t1, &t2).unwrap(), oracle_mult(&cfg, &t2, &t1).unwrap());
    }

    #[test]
    fn products_are_independent_of_the_normal_order() {
        let n = 3;
        let a = Oracle::new(ProjectorConfig::new(n)).unwrap();
        let b = Oracle::new(ProjectorConfig::with_root_order(n, vec![(2, 3), (1, 3), (1, 2)]).unwrap()).unwrap();
        for x in GeneratorId::all(n) {
            for y in GeneratorId::all(n) {
                assert_eq!(a.eval_word(&[x, y]), b.eval_word(&[x, y]), "{x} {y}");
            }
        }
    }

    #[test]
    fn coset_well_definedness() {
        let n = 2;
        let cfg = ProjectorConfig::new(n);
        let oracle = Oracle::new(cfg.clone()).unwrap();
        for x in GeneratorId::all(n) {
            for y in GeneratorId::all(n) {
                let base = oracle.mul(&lift_word(n, &[x]), &lift_word(n, &[y])).unwrap();
                let bump = EnvElement::from_word(
                    Coefficient::theta(n, 1),
                    vec![Letter::e(2, 1), Letter::big(x.i as usize, x.j as usize)],
                    Reduction::None,
                );
                let left = oracle.mul(&lift_word(n, &[x]).add(&bump), &lift_word(n, &[y])).unwrap();
                assert_eq!(left, base);
                let plus = EnvElement::from_word(
                    Coefficient::one(n),
                    vec![Letter::big(y.i as usize, y.j as usize), Letter::e(1, 2)],
                    Reduction::None,
                );
                let right = oracle.mul(&lift_word(n, &[x]), &lift_word(n, &[y]).add(&plus)).unwrap();
                assert_eq!(right, base);
            }
        }
    }

    #[test]
    fn star_product_is_associative() {
        for n in 2..=3 {
            let oracle = Oracle::new(ProjectorConfig::new(n)).unwrap();
            let gens: Vec<_> = GeneratorId::all(n).collect();
            let step = if n == 2 { 1 } else { 4 };
            for (k, &a) in gens.iter().enumerate().step_by(step) {
                for &b in &gens {
                    for &c in gens.iter().skip(k % 3).step_by(step) {
                        let left = oracle.eval_word(&[a, b, c]);
                        let bc = oracle.eval_word(&[b, c]);
                        let right = oracle.mul(&lift_word(n, &[a]), &bc).unwrap();
                        assert_eq!(left, right, "{a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_denominators_are_admissible() {
        for n in 2..=3 {
            let oracle = Oracle::new(ProjectorConfig::new(n)).unwrap();
            for x in GeneratorId::all(n) {
                for y in GeneratorId::all(n) {
                    for c in oracle.eval_word(&[x, y]).terms().values() {
                        assert!(c.denominators_within(|l| l >= -1), "{x}{y}: {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn zhelobenko_series_on_a_generator() {
        // q_1(z_12) = −z_21·θ_12/(θ_12 − 2), i.e. −(θ_12 + 2)/θ_12 on the left
        let n = 2;
        let q = zhelobenko_series(1, &lift_word(n, &[g(1, 2)]));
        let expected = lift_word(n, &[g(2, 1)])
            .scale(&(-Coefficient::theta_ij(n, 1, 2, 2) / Coefficient::theta_ij(n, 1, 2, 0)));
        assert_eq!(q, expected);
        assert_eq!(zhelobenko_series(1, &EnvElement::one(n)), EnvElement::one(n));
    }
}
