//! Compiles and runs the code blocks of every guide chapter as doctests.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod ch01_overview {}

#[doc = include_str!("../../../book/src/coefficients.md")]
pub mod ch02_coefficients {}

#[doc = include_str!("../../../book/src/normal_ordering.md")]
pub mod ch03_normal_ordering {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod ch04_oracle {}

#[doc = include_str!("../../../book/src/automorphisms.md")]
pub mod ch05_automorphisms {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod ch06_verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod ch07_cli {}
