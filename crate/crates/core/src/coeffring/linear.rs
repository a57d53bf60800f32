use std::fmt;

use super::poly::{rat, Poly};

/// `θ_i − θ_j + c` with `i < j` (indices 1-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearForm {
    pub i: u8,
    pub j: u8,
    pub c: i64,
}

impl LinearForm {
    /// Orients `θ_i − θ_j + c`; the returned sign is `-1` when the pair
    /// had to be flipped.
    pub fn oriented(i: u8, j: u8, c: i64) -> (i8, LinearForm) {
        assert_ne!(i, j, "a linear form needs two distinct indices");
        if i < j {
            (1, LinearForm { i, j, c })
        } else {
            (-1, LinearForm { i: j, j: i, c: -c })
        }
    }

    pub fn to_poly(self) -> Poly {
        Poly::var(self.i as usize - 1)
            .sub(&Poly::var(self.j as usize - 1))
            .add(&Poly::integer(self.c))
    }

    /// Value at a point given by 0-based variable values.
    pub fn eval(self, point: &[super::Rat]) -> super::Rat {
        &point[self.i as usize - 1] - &point[self.j as usize - 1] + rat(self.c)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "th({},{})", self.i, self.j)?;
        match self.c {
            0 => Ok(()),
            c if c > 0 => write!(f, "+{c}"),
            c => write!(f, "{c}"),
        }
    }
}
