//! Exact arithmetic in the localized Cartan ring: rational functions of
//! `θ_1..θ_n` with denominators kept as products of `θ_ij + c`.

mod coefficient;
mod linear;
mod named;
mod poly;

pub use coefficient::{arith, ArithOp, Coefficient};
pub use linear::LinearForm;
pub use named::{d_coeff, named_coeff, NamedKind};
pub use poly::{Monomial, Poly, Rat, MAX_VARS};

pub(crate) use poly::rat;
