use crate::coeffring::{named_coeff, Coefficient, NamedKind};
use crate::weights::GeneratorId;

use super::element::{Basis, ZElement};

/// Direction of [`change_basis`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// Rewrite `z`, `t` letters as `ẑ`, `t̊` letters.
    ToHatRing,
    /// Rewrite `ẑ`, `t̊` letters as `z`, `t` letters.
    FromHatRing,
}

fn prod(n: usize, it: impl Iterator<Item = Coefficient>) -> Coefficient {
    it.fold(Coefficient::one(n), |a, b| &a * &b)
}

/// `Π_{k<i} A_ki`, the right factor in `ẑ_ij = z_ij Π_{k<i} A_ki`.
pub fn zhat_factor(n: usize, i: usize) -> Coefficient {
    prod(n, (1..i).map(|k| named_coeff(n, NamedKind::A, k, i)))
}

/// `t̊_l = t_l Π_{j<l} A_jl − Σ_{k<l} t_k (θ_kl − 1)^{-1} Π_{j<k} A_jl`.
pub fn tring_in_t(n: usize, l: usize) -> ZElement {
    let a = |j: usize| named_coeff(n, NamedKind::A, j, l);
    let mut out = ZElement::term(prod(n, (1..l).map(a)), vec![GeneratorId::new(l, l)]);
    for k in 1..l {
        let c = &prod(n, (1..k).map(a)) / &Coefficient::theta_ij(n, k, l, -1);
        out.add_term(vec![GeneratorId::new(k, k)], -c);
    }
    out
}

/// `t_l = t̊_l Π_{j<l} A'_jl + Σ_{k<l} t̊_k θ_kl^{-1} Π_{j<l, j≠k} A'_jk`,
/// with hat letters.
pub fn t_in_tring(n: usize, l: usize) -> ZElement {
    let ap = |j: usize, k: usize| named_coeff(n, NamedKind::APrime, j, k);
    let mut out = ZElement::term(prod(n, (1..l).map(|j| ap(j, l))), vec![GeneratorId::new(l, l)]);
    for k in 1..l {
        let c = &prod(n, (1..l).filter(|&j| j != k).map(|j| ap(j, k))) / &Coefficient::theta_ij(n, k, l, 0);
        out.add_term(vec![GeneratorId::new(k, k)], c);
    }
    out.with_basis(Basis::Hat)
}

/// Image of a hat letter in plain letters.
pub fn hat_letter_in_plain(n: usize, g: GeneratorId) -> ZElement {
    if g.is_cartan() {
        tring_in_t(n, g.i as usize)
    } else {
        ZElement::term(Coefficient::one(n), vec![g]).times_coeff(&zhat_factor(n, g.i as usize))
    }
}

/// Image of a plain letter in hat letters.
pub fn plain_letter_in_hat(n: usize, g: GeneratorId) -> ZElement {
    if g.is_cartan() {
        t_in_tring(n, g.i as usize)
    } else {
        ZElement::term(Coefficient::one(n), vec![g])
            .with_basis(Basis::Hat)
            .times_coeff(&zhat_factor(n, g.i as usize).recip().expect("nonzero"))
    }
}

/// Rewrites every letter in the other generating set; the identity when
/// `x` is already in the target basis.
pub fn change_basis(x: &ZElement, direction: Direction) -> ZElement {
    let n = x.n();
    match (direction, x.basis()) {
        (Direction::ToHatRing, Basis::Hat) | (Direction::FromHatRing, Basis::Plain) => x.clone(),
        (Direction::ToHatRing, Basis::Plain) => x.substitute(|g| plain_letter_in_hat(n, g), Clone::clone, Basis::Hat),
        (Direction::FromHatRing, Basis::Hat) => x.substitute(|g| hat_letter_in_plain(n, g), Clone::clone, Basis::Plain),
    }
}

/// `x` in plain letters.
pub fn to_plain(x: &ZElement) -> ZElement {
    change_basis(x, Direction::FromHatRing)
}
