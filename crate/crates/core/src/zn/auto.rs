use crate::coeffring::{named_coeff, Coefficient, NamedKind};
use crate::enveloping::transposition;
use crate::linalg::CoeffMatrix;
use crate::weights::GeneratorId;

use super::element::{Basis, ZElement};
use super::hat::{to_plain, tring_in_t};

/// Image of a generator under `q_i`, in plain letters.
pub fn q_generator(n: usize, i: usize, g: GeneratorId) -> ZElement {
    use NamedKind::{A, B};
    let (k, l) = (g.i as usize, g.j as usize);
    let z = |a: usize, b: usize, right: Coefficient, sign: i64| {
        ZElement::gen(n, a, b).times_coeff(&right).scale(&Coefficient::integer(n, sign))
    };
    let one = Coefficient::one(n);
    let a = named_coeff(n, A, i, i + 1);
    let inside = |x: usize| x == i || x == i + 1;
    if k == l {
        let th = Coefficient::theta_ij(n, i, i + 1, 0);
        let d = &one / &Coefficient::theta_ij(n, i, i + 1, -1);
        let mut out = ZElement::zero(n);
        if k == i {
            out.add_term(vec![GeneratorId::new(i, i)], -d.clone());
            out.add_term(vec![GeneratorId::new(i + 1, i + 1)], &th * &d);
        } else if k == i + 1 {
            out.add_term(vec![GeneratorId::new(i, i)], &th * &d);
            out.add_term(vec![GeneratorId::new(i + 1, i + 1)], -d.clone());
        } else {
            out = ZElement::gen(n, k, k);
        }
        return out;
    }
    match (k, l) {
        _ if k == i && l == i + 1 => z(i + 1, i, &a * &named_coeff(n, B, i, i + 1), -1),
        _ if k == i + 1 && l == i => z(i, i + 1, one, -1),
        _ if k == i && !inside(l) => z(i + 1, l, a, -1),
        _ if k == i + 1 && !inside(l) => z(i, l, one, 1),
        _ if l == i && !inside(k) => z(k, i + 1, one, -1),
        _ if l == i + 1 && !inside(k) => z(k, i, a, 1),
        _ => ZElement::gen(n, k, l),
    }
}

/// Image of a generator under `q_i^{-1}`, solved from the `q_i` images:
/// `q_i(φ x) = σ_i(φ) q_i(x)` and `σ_i² = 1` on coefficients.
pub fn q_inverse_generator(n: usize, i: usize, g: GeneratorId) -> ZElement {
    let perm = transposition(n, i);
    if g.is_cartan() {
        let m = CoeffMatrix::from_fn(n, n, n, |r, c| {
            q_generator(n, i, GeneratorId::new(r + 1, r + 1)).coeff(&[GeneratorId::new(c + 1, c + 1)])
        });
        let inv = m.inverse().expect("q_i is invertible on the Cartan letters");
        let k = g.i as usize - 1;
        let mut out = ZElement::zero(n);
        for c in 0..n {
            out.add_term(vec![GeneratorId::new(c + 1, c + 1)], inv.get(k, c).weyl_act(&perm, true));
        }
        return out;
    }
    // q_i permutes the non-Cartan letters up to coefficients
    for src in GeneratorId::all(n).filter(|s| !s.is_cartan()) {
        let img = q_generator(n, i, src);
        let (w, c) = img.iter().next().expect("nonzero image");
        if w[0] == g {
            let psi = c.recip().expect("nonzero").weyl_act(&perm, true);
            return ZElement::term(psi, vec![src]);
        }
    }
    unreachable!("q_i is a bijection on letters")
}

fn apply(i: usize, x: &ZElement, inverse: bool) -> ZElement {
    let x = to_plain(x);
    let n = x.n();
    assert!((1..n).contains(&i), "simple root index out of range");
    let perm = transposition(n, i);
    x.substitute(
        |g| {
            if inverse {
                q_inverse_generator(n, i, g)
            } else {
                q_generator(n, i, g)
            }
        },
        |c| c.weyl_act(&perm, true),
        Basis::Plain,
    )
}

/// The Zhelobenko automorphism `q_i`; the result is in plain letters.
pub fn zhelobenko(i: usize, x: &ZElement) -> ZElement {
    apply(i, x, false)
}

pub fn zhelobenko_inverse(i: usize, x: &ZElement) -> ZElement {
    apply(i, x, true)
}

/// `q_{i_1} ∘ ⋯ ∘ q_{i_k}` for the word `[i_1, …, i_k]`.
pub fn zhelobenko_word(word: &[usize], x: &ZElement) -> ZElement {
    word.iter().rev().fold(to_plain(x), |acc, &i| zhelobenko(i, &acc))
}

/// A reduced word `[i_1, …, i_k]` with `σ = s_{i_1} ⋯ s_{i_k}`, for `σ`
/// given by its 1-based images.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    // σ = (σ s_j) s_j with one inversion fewer whenever σ(j) > σ(j+1)
    while let Some(j) = (0..p.len().saturating_sub(1)).find(|&j| p[j] > p[j + 1]) {
        p.swap(j, j + 1);
        word.push(j + 1);
    }
    word.reverse();
    word
}

/// The reduced word `s_1 (s_2 s_1) (s_3 s_2 s_1) ⋯` of `w_0`.
pub fn longest_word(n: usize) -> Vec<usize> {
    (1..n).flat_map(|m| (1..=m).rev()).collect()
}

pub fn zhelobenko_longest(x: &ZElement) -> ZElement {
    zhelobenko_word(&longest_word(x.n()), x)
}

/// The claimed closed form
/// `q_{w_0}(z_ij) = (−1)^{i+j} z_{i'j'} Π_{a<i'} A_{ai'} Π_{b>j'} A_{j'b}`.
pub fn longest_closed_form(n: usize, i: usize, j: usize) -> ZElement {
    let (ip, jp) = (n + 1 - i, n + 1 - j);
    let mut c = Coefficient::one(n);
    for a in 1..ip {
        c = &c * &named_coeff(n, NamedKind::A, a, ip);
    }
    for b in (jp + 1)..=n {
        c = &c * &named_coeff(n, NamedKind::A, jp, b);
    }
    let sign = if (i + j).is_multiple_of(2) { 1 } else { -1 };
    ZElement::gen(n, ip, jp).times_coeff(&c).scale(&Coefficient::integer(n, sign))
}

/// The scalar by which `σ́_i²` acts on a generator: `−1` exactly when one
/// of its indices lies in `{i, i+1}`.
pub fn sigma_square_sign(i: usize, g: GeneratorId) -> i64 {
    let inside = |x: u8| x as usize == i || x as usize == i + 1;
    if inside(g.i) ^ inside(g.j) {
        -1
    } else {
        1
    }
}

/// `(h_{α_i} + 1)^{-1} σ́_i²(z) (h_{α_i} + 1)` for a generator `z`, the
/// right side of the inversion relation.
pub fn inversion_rhs(n: usize, i: usize, g: GeneratorId) -> ZElement {
    let sign = sigma_square_sign(i, g);
    // h_{α_i} + 1 = h_i − h_{i+1} + 1 = θ_{i,i+1}
    let h = Coefficient::theta_ij(n, i, i + 1, 0);
    ZElement::gen(n, g.i as usize, g.j as usize)
        .times_coeff(&h)
        .scale(&(&Coefficient::integer(n, sign) / &h))
}

/// Which involution [`involution`] applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Involution {
    /// The anti-involution `z_ij ↦ z_ji`, `θ_k ↦ θ_k`.
    Epsilon,
    /// The automorphism `z_ij ↦ (−1)^{i+j+1} z_{j'i'}`, `h_k ↦ −h_{k'}`.
    Omega,
}

pub fn involution(x: &ZElement, kind: Involution) -> ZElement {
    let x = to_plain(x);
    let n = x.n();
    match kind {
        Involution::Epsilon => x.reverse_map(|g| ZElement::gen(n, g.j as usize, g.i as usize)),
        Involution::Omega => {
            let perm: Vec<usize> = (0..n).rev().collect();
            let offs = vec![-(n as i64 + 1); n];
            x.substitute(
                |g| {
                    let (i, j) = (g.i as usize, g.j as usize);
                    let sign = if (i + j + 1).is_multiple_of(2) { 1 } else { -1 };
                    ZElement::gen(n, n + 1 - j, n + 1 - i).scale(&Coefficient::integer(n, sign))
                },
                |c| c.substitute_affine(-1, &perm, &offs),
                Basis::Plain,
            )
        }
    }
}

pub fn epsilon(x: &ZElement) -> ZElement {
    involution(x, Involution::Epsilon)
}

pub fn omega(x: &ZElement) -> ZElement {
    involution(x, Involution::Omega)
}

/// `h_1 + ⋯ + h_n`, `t_1 + ⋯ + t_n` and `Σ (h_i − 2i) t_i`.
pub fn central_elements(n: usize) -> Vec<ZElement> {
    let h_sum = (1..=n).fold(Coefficient::zero(n), |a, k| &a + &Coefficient::h(n, k));
    let mut t_sum = ZElement::zero(n);
    let mut quad = ZElement::zero(n);
    for k in 1..=n {
        t_sum.add_term(vec![GeneratorId::new(k, k)], Coefficient::one(n));
        let c = &Coefficient::h(n, k) - &Coefficient::integer(n, 2 * k as i64);
        quad.add_term(vec![GeneratorId::new(k, k)], c);
    }
    vec![ZElement::scalar(h_sum), t_sum, quad]
}

/// `Σ_i t̊_i Π_{a≠i} (θ_ia + 1)/θ_ia`, in plain letters.
pub fn linear_central_in_tring(n: usize) -> ZElement {
    let mut out = ZElement::zero(n);
    for i in 1..=n {
        let mut c = Coefficient::one(n);
        for a in (1..=n).filter(|&a| a != i) {
            c = &c * &(&Coefficient::theta_ij(n, i, a, 1) / &Coefficient::theta_ij(n, i, a, 0));
        }
        out = out.add(&tring_in_t(n, i).scale(&c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zn::hat::change_basis;
    use crate::zn::Direction;

    fn gens(n: usize) -> Vec<ZElement> {
        GeneratorId::all(n).map(|g| ZElement::word(n, &[g])).collect()
    }

    #[test]
    fn examples() {
        let n = 3;
        let a12 = named_coeff(n, NamedKind::A, 1, 2);
        assert_eq!(zhelobenko(1, &ZElement::gen(n, 1, 3)), ZElement::gen(n, 2, 3).times_coeff(&a12).neg());
        let th = Coefficient::theta_ij(n, 1, 2, 0);
        let d = &Coefficient::one(n) / &Coefficient::theta_ij(n, 1, 2, -1);
        let mut t1 = ZElement::term(-d.clone(), vec![GeneratorId::new(1, 1)]);
        t1.add_term(vec![GeneratorId::new(2, 2)], &th * &d);
        assert_eq!(zhelobenko(1, &ZElement::gen(n, 1, 1)), t1);
        let n = 4;
        assert_eq!(zhelobenko(2, &ZElement::gen(n, 1, 4)), ZElement::gen(n, 1, 4));
    }

    #[test]
    fn inverse_is_inverse() {
        for n in 2..=4 {
            for i in 1..n {
                for x in gens(n) {
                    assert_eq!(zhelobenko_inverse(i, &zhelobenko(i, &x)), x);
                    assert_eq!(zhelobenko(i, &zhelobenko_inverse(i, &x)), x);
                }
            }
        }
    }

    #[test]
    fn braid_relations() {
        for n in 3..=4 {
            for i in 1..n - 1 {
                for x in gens(n) {
                    assert_eq!(zhelobenko_word(&[i, i + 1, i], &x), zhelobenko_word(&[i + 1, i, i + 1], &x));
                }
            }
            for x in gens(n) {
                if n == 4 {
                    assert_eq!(zhelobenko_word(&[1, 3], &x), zhelobenko_word(&[3, 1], &x));
                }
            }
        }
    }

    #[test]
    fn inversion_relation() {
        for n in 2..=4 {
            for i in 1..n {
                for g in GeneratorId::all(n) {
                    let x = ZElement::word(n, &[g]);
                    assert_eq!(zhelobenko_word(&[i, i], &x), inversion_rhs(n, i, g), "{i} {g}");
                }
            }
        }
    }

    #[test]
    fn tring_definition() {
        for n in 2..=4 {
            for l in 1..=n {
                let word: Vec<usize> = (1..l).rev().collect();
                let via_q = zhelobenko_word(&word, &ZElement::gen(n, 1, 1));
                assert_eq!(via_q, tring_in_t(n, l), "n={n} l={l}");
            }
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn symmetric_group_on_tring() {
        for n in 2..=4 {
            for sigma in permutations(n) {
                let word = reduced_word(&sigma);
                let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| sigma[a] > sigma[b]);
                assert_eq!(word.len(), inversions.count());
                for l in 1..=n {
                    assert_eq!(zhelobenko_word(&word, &tring_in_t(n, l)), tring_in_t(n, sigma[l - 1]), "{sigma:?} {l}");
                }
            }
        }
    }

    #[test]
    fn involutions() {
        let n = 3;
        let x = ZElement::word(n, &[GeneratorId::new(1, 2), GeneratorId::new(1, 3)]);
        assert_eq!(epsilon(&x), ZElement::word(n, &[GeneratorId::new(3, 1), GeneratorId::new(2, 1)]));
        assert_eq!(omega(&ZElement::gen(n, 1, 2)), ZElement::gen(n, 2, 3));
        let th = ZElement::scalar(Coefficient::theta_ij(n, 1, 2, 0));
        assert_eq!(omega(&th), ZElement::scalar(Coefficient::theta_ij(n, 2, 3, 0)));
        let y = x.scale(&Coefficient::theta(n, 1)).add(&ZElement::gen(n, 2, 2));
        for z in [x, y] {
            assert_eq!(epsilon(&epsilon(&z)), z);
            assert_eq!(omega(&omega(&z)), z);
            assert_eq!(epsilon(&omega(&z)), omega(&epsilon(&z)));
        }
    }

    #[test]
    fn omega_compatibility() {
        for n in 2..=4 {
            for i in 1..n {
                for x in gens(n) {
                    assert_eq!(omega(&zhelobenko(i, &x)), zhelobenko(n - i, &omega(&x)), "n={n} i={i} {x}");
                }
            }
        }
    }

    #[test]
    fn epsilon_compatibility_up_to_sigma_square() {
        // ε q_i = σ́_i² q_i^{-1} ε; the untwisted identity fails on every
        // letter with exactly one index in {i, i+1}
        for n in 2..=4 {
            for i in 1..n {
                for g in GeneratorId::all(n) {
                    let x = ZElement::word(n, &[g]);
                    let lhs = epsilon(&zhelobenko(i, &x));
                    let rhs = zhelobenko_inverse(i, &epsilon(&x));
                    let sign = Coefficient::integer(n, sigma_square_sign(i, g));
                    assert_eq!(lhs, rhs.scale(&sign), "n={n} i={i} {g}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_defining_series() {
        use crate::projector::{lift, zhelobenko_series};
        for n in 2..=4 {
            for i in 1..n {
                for x in gens(n) {
                    let series = zhelobenko_series(i, &lift(&x)).reduce_to_coset();
                    assert_eq!(lift(&zhelobenko(i, &x)), series, "n={n} i={i} {x}");
                }
            }
        }
    }

    #[test]
    fn longest_element() {
        for n in 2..=3 {
            assert_eq!(longest_word(n).len(), n * (n - 1) / 2);
            for l in 1..=n {
                assert_eq!(zhelobenko_longest(&tring_in_t(n, l)), tring_in_t(n, n + 1 - l));
            }
            // the closed form matches on lowering letters; on raising letters
            // the composed map carries A_{j'i'}B_{j'i'} where it has A_{j'i'}²
            for g in GeneratorId::all(n).filter(|g| g.i > g.j) {
                let x = ZElement::word(n, &[g]);
                assert_eq!(zhelobenko_longest(&x), longest_closed_form(n, g.i as usize, g.j as usize));
            }
            for g in GeneratorId::all(n).filter(|g| g.i < g.j) {
                let (i, j) = (g.i as usize, g.j as usize);
                let (ip, jp) = (n + 1 - i, n + 1 - j);
                let fix = &named_coeff(n, NamedKind::B, jp, ip) / &named_coeff(n, NamedKind::A, jp, ip);
                let composed = zhelobenko_longest(&ZElement::word(n, &[g]));
                assert_eq!(composed, longest_closed_form(n, i, j).times_coeff(&fix), "{g}");
            }
        }
        let n = 2;
        assert_eq!(zhelobenko_longest(&ZElement::gen(n, 1, 2)), zhelobenko(1, &ZElement::gen(n, 1, 2)));
    }

    #[test]
    fn relations_closed_under_involutions() {
        use crate::projector::{Oracle, ProjectorConfig};
        use crate::weights::GenOrder;
        use crate::zn::{build_relations, derive_rules_with, normal_order};
        for n in 2..=3 {
            let rules = derive_rules_with(&Oracle::new(ProjectorConfig::new(n)).unwrap(), GenOrder::Standard).unwrap();
            for rel in build_relations(n) {
                for kind in [Involution::Epsilon, Involution::Omega] {
                    let image = involution(&rel.plain(), kind);
                    assert!(normal_order(&image, &rules).unwrap().is_zero(), "{kind:?} {}", rel.body);
                }
            }
        }
    }

    #[test]
    fn longest_element_transports_rules_to_reversed_order() {
        use crate::projector::{Oracle, ProjectorConfig};
        use crate::weights::GenOrder;
        use crate::zn::{derive_rules_with, normal_order};
        for n in 2..=3 {
            let oracle = Oracle::new(ProjectorConfig::new(n)).unwrap();
            let standard = derive_rules_with(&oracle, GenOrder::Standard).unwrap();
            let reversed = derive_rules_with(&oracle, GenOrder::Reversed).unwrap();
            for rule in standard.iter() {
                let (a, b) = rule.lhs;
                let relation = ZElement::word(n, &[a, b]).sub(&rule.rhs);
                let image = zhelobenko_longest(&relation);
                assert!(normal_order(&image, &reversed).unwrap().is_zero(), "{a}{b}");
                if !a.is_cartan() && !b.is_cartan() {
                    let flip = |g: GeneratorId| GeneratorId::new(n + 1 - g.i as usize, n + 1 - g.j as usize);
                    assert!(GenOrder::Reversed.lt(flip(b), flip(a)), "{a}{b}");
                    assert!(!image.coeff(&[flip(a), flip(b)]).is_zero());
                }
            }
        }
    }

    #[test]
    fn central_elements_commute() {
        use crate::projector::{Oracle, ProjectorConfig};
        use crate::weights::GenOrder;
        use crate::zn::{derive_rules_with, normal_order};
        for n in 2..=3 {
            let rules = derive_rules_with(&Oracle::new(ProjectorConfig::new(n)).unwrap(), GenOrder::Standard).unwrap();
            for c in central_elements(n) {
                for x in gens(n) {
                    let comm = c.mul(&x).sub(&x.mul(&c));
                    assert!(normal_order(&comm, &rules).unwrap().is_zero(), "n={n} {c} {x}");
                }
            }
        }
    }

    #[test]
    fn linear_central_element() {
        for n in 2..=4 {
            assert_eq!(linear_central_in_tring(n), central_elements(n)[1]);
        }
        let x = change_basis(&central_elements(3)[1], Direction::ToHatRing);
        assert_eq!(x.basis(), Basis::Hat);
    }
}
