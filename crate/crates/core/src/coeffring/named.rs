use super::coefficient::Coefficient;

/// The recurring rational functions of a single `θ_ij`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NamedKind {
    /// `θ/(θ−1)`
    A,
    /// `(θ−1)/θ`
    APrime,
    /// `(θ−1)/(θ−2)`
    B,
    /// `(θ−2)/(θ−1)`
    BPrime,
    /// `(θ−3)/(θ−2)`
    CPrime,
}

/// The named coefficient of kind `kind` evaluated at `θ_ij` in a ring of
/// size `n`.
pub fn named_coeff(n: usize, kind: NamedKind, i: usize, j: usize) -> Coefficient {
    let (top, bottom) = match kind {
        NamedKind::A => (0, -1),
        NamedKind::APrime => (-1, 0),
        NamedKind::B => (-1, -2),
        NamedKind::BPrime => (-2, -1),
        NamedKind::CPrime => (-3, -2),
    };
    Coefficient::theta_ij(n, i, j, top) / Coefficient::theta_ij(n, i, j, bottom)
}

/// `D_ijkl = 1/θ_ik − 1/θ_jl`.
pub fn d_coeff(n: usize, i: usize, j: usize, k: usize, l: usize) -> Coefficient {
    let one = Coefficient::one(n);
    &one / &Coefficient::theta_ij(n, i, k, 0) - &one / &Coefficient::theta_ij(n, j, l, 0)
}
