//! Weights of the diagonal `gl_n`, the height function and the generator
//! orders.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Integer vector in the ε-basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `ε_i − ε_j` (1-based; `i == j` gives zero).
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut w = vec![0; n];
        w[i - 1] += 1;
        w[j - 1] -= 1;
        Weight(w)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn in_root_lattice(&self) -> bool {
        self.0.iter().sum::<i32>() == 0
    }

    /// Coefficients in the simple roots: `l_k` is the k-th left partial sum.
    pub fn simple_root_coords(&self) -> Result<Vec<i32>> {
        if !self.in_root_lattice() {
            return Err(Error::NotInRootLattice(self.to_string()));
        }
        Ok(self
            .0
            .iter()
            .take(self.n().saturating_sub(1))
            .scan(0, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect())
    }

    /// Same weight viewed in a larger rank (trailing zero coordinates).
    pub fn extend(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(n, 0);
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}e{}", k + 1)?;
            } else {
                write!(f, "{sign}{mag}e{}", k + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `d(w) = Σ l_k` for `w = Σ l_k α_k`; `d(ε_i − ε_j) = j − i`.
pub fn height(w: &Weight) -> Result<i32> {
    Ok(w.simple_root_coords()?.iter().sum())
}

/// `a ≤ b` in the order whose positive cone is `Q_+`.
pub fn leq_q(a: &Weight, b: &Weight) -> bool {
    let diff = b - a;
    match diff.simple_root_coords() {
        Ok(ls) => ls.iter().all(|&l| l >= 0),
        Err(_) => false,
    }
}

/// A generator `z_ij`; `i == j` is `t_i`. Indices are 1-based. The derived
/// order is a storage order only; see [`GenOrder`] for the algebraic one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GeneratorId {
    pub i: u8,
    pub j: u8,
}

impl GeneratorId {
    pub fn new(i: usize, j: usize) -> Self {
        GeneratorId {
            i: i as u8,
            j: j as u8,
        }
    }

    pub fn is_cartan(self) -> bool {
        self.i == self.j
    }

    pub fn weight(self, n: usize) -> Weight {
        Weight::root(n, self.i as usize, self.j as usize)
    }

    /// `d(z_ij) = j − i`.
    pub fn height(self) -> i32 {
        self.j as i32 - self.i as i32
    }

    /// All `n²` generators.
    pub fn all(n: usize) -> impl Iterator<Item = GeneratorId> {
        (1..=n).flat_map(move |i| (1..=n).map(move |j| GeneratorId::new(i, j)))
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_cartan() {
            write!(f, "t[{}]", self.i)
        } else {
            write!(f, "z[{},{}]", self.i, self.j)
        }
    }
}

/// Total orders on generators used to define ordered monomials.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum GenOrder {
    /// `E_ij ≺ E_kl` iff `i−j > k−l`, or `i−j = k−l` and `i > k`.
    #[default]
    Standard,
    /// Ties at positive `i−j` broken by `i > k`, at negative by `i < k`,
    /// and `t_1 ≺ … ≺ t_n`.
    Alternate,
    /// The opposite of `Standard`.
    Reversed,
}

impl GenOrder {
    pub fn cmp(self, a: GeneratorId, b: GeneratorId) -> Ordering {
        let da = a.i as i32 - a.j as i32;
        let db = b.i as i32 - b.j as i32;
        match self {
            GenOrder::Standard => db.cmp(&da).then(b.i.cmp(&a.i)),
            GenOrder::Alternate => db.cmp(&da).then_with(|| {
                if da > 0 {
                    b.i.cmp(&a.i)
                } else {
                    a.i.cmp(&b.i)
                }
            }),
            GenOrder::Reversed => GenOrder::Standard.cmp(b, a),
        }
    }

    pub fn lt(self, a: GeneratorId, b: GeneratorId) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    /// Weakly increasing.
    pub fn is_ordered(self, word: &[GeneratorId]) -> bool {
        word.windows(2).all(|w| self.cmp(w[0], w[1]) != Ordering::Greater)
    }
}

/// `a ≺ b` in the standard order.
pub fn gen_order_lt(a: GeneratorId, b: GeneratorId) -> bool {
    GenOrder::Standard.lt(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize, j: usize) -> GeneratorId {
        GeneratorId::new(i, j)
    }

    #[test]
    fn heights() {
        assert_eq!(height(&Weight::root(3, 1, 3)).unwrap(), 2);
        assert_eq!(height(&Weight::zero(3)).unwrap(), 0);
        assert_eq!(height(&Weight::root(3, 3, 1)).unwrap(), -2);
        assert!(height(&Weight(vec![1, 0, 0])).is_err());
    }

    #[test]
    fn cone_order() {
        let a = Weight::root(2, 2, 1);
        let b = Weight::root(2, 1, 2);
        assert!(leq_q(&a, &b));
        assert!(!leq_q(&b, &a));
        assert!(leq_q(&a, &a));
        assert!(!leq_q(&Weight::root(3, 1, 2), &Weight::root(3, 2, 3)));
    }

    #[test]
    fn generator_order_examples() {
        assert!(gen_order_lt(g(3, 1), g(2, 1)));
        assert!(gen_order_lt(g(3, 2), g(2, 1)));
        assert!(gen_order_lt(g(2, 2), g(1, 1)));
        assert!(gen_order_lt(g(2, 1), g(2, 2)));
        assert!(gen_order_lt(g(1, 1), g(1, 2)));
    }

    #[test]
    fn alternate_order_ties() {
        let o = GenOrder::Alternate;
        assert!(o.lt(g(1, 1), g(2, 2)));
        assert!(o.lt(g(3, 2), g(2, 1)));
        assert!(o.lt(g(1, 2), g(2, 3)));
        assert!(o.lt(g(2, 1), g(1, 1)));
    }

    #[test]
    fn orders_are_strict_total() {
        for order in [GenOrder::Standard, GenOrder::Alternate, GenOrder::Reversed] {
            for n in 1..=5 {
                let gens: Vec<_> = GeneratorId::all(n).collect();
                for &a in &gens {
                    assert!(!order.lt(a, a));
                    for &b in &gens {
                        if a != b {
                            assert!(order.lt(a, b) ^ order.lt(b, a));
                        }
                        for &c in &gens {
                            if order.lt(a, b) && order.lt(b, c) {
                                assert!(order.lt(a, c));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn order_refines_weight_order() {
        for n in 2..=5 {
            for a in GeneratorId::all(n) {
                for b in GeneratorId::all(n) {
                    let (wa, wb) = (a.weight(n), b.weight(n));
                    if wa != wb && leq_q(&wa, &wb) {
                        assert!(gen_order_lt(a, b), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn height_is_additive() {
        let n = 4;
        for a in GeneratorId::all(n) {
            for b in GeneratorId::all(n) {
                let s = &a.weight(n) + &b.weight(n);
                assert_eq!(height(&s).unwrap(), a.height() + b.height());
            }
        }
    }
}
