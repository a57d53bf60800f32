use std::fmt;

use crate::coeffring::{d_coeff, named_coeff, Coefficient, NamedKind};
use crate::weights::{GeneratorId, Weight};

use super::element::{word_weight, Basis, ZElement};
use super::hat::to_plain;

/// The six relation families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    T1,
    T2,
    T3a,
    T3b,
    T4a,
    T4b,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::T1, Family::T2, Family::T3a, Family::T3b, Family::T4a, Family::T4b];

    pub fn label(self) -> &'static str {
        match self {
            Family::T1 => "1",
            Family::T2 => "2",
            Family::T3a => "3a",
            Family::T3b => "3b",
            Family::T4a => "4a",
            Family::T4b => "4b",
        }
    }

    pub fn from_label(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.label() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A relation `body = 0`, kept in the letters it is written in (plain for
/// families 1 and 2, hat otherwise).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub family: Family,
    /// The defining index tuple.
    pub indices: Vec<usize>,
    /// Which of the family's displayed lines the instance comes from.
    pub line: usize,
    pub body: ZElement,
}

impl Relation {
    /// The body in plain letters.
    pub fn plain(&self) -> ZElement {
        to_plain(&self.body)
    }

    /// The common weight of the body's terms.
    pub fn weight(&self) -> Weight {
        let n = self.body.n();
        self.body
            .terms()
            .keys()
            .find(|w| !w.is_empty())
            .map(|w| word_weight(n, w))
            .unwrap_or_else(|| Weight::zero(n))
    }

    pub fn n(&self) -> usize {
        self.body.n()
    }
}

struct Ctx {
    n: usize,
}

impl Ctx {
    fn c(&self, kind: NamedKind, i: usize, j: usize) -> Coefficient {
        named_coeff(self.n, kind, i, j)
    }

    /// `1/(θ_ij + c)`
    fn inv(&self, i: usize, j: usize, c: i64) -> Coefficient {
        Coefficient::theta_ij(self.n, i, j, c).recip().expect("nonzero linear form")
    }

    fn th(&self, i: usize, j: usize, c: i64) -> Coefficient {
        Coefficient::theta_ij(self.n, i, j, c)
    }

    fn one(&self) -> Coefficient {
        Coefficient::one(self.n)
    }

    /// Word with the given basis and a right coefficient.
    fn w(&self, basis: Basis, letters: &[(usize, usize)], right: &Coefficient) -> ZElement {
        let word: Vec<_> = letters.iter().map(|&(i, j)| GeneratorId::new(i, j)).collect();
        ZElement::word(self.n, &word).with_basis(basis).times_coeff(right)
    }

    fn z(&self, letters: &[(usize, usize)], right: &Coefficient) -> ZElement {
        self.w(Basis::Plain, letters, right)
    }

    fn h(&self, letters: &[(usize, usize)], right: &Coefficient) -> ZElement {
        self.w(Basis::Hat, letters, right)
    }

    fn others<'a>(&'a self, skip: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
        (1..=self.n).filter(move |a| !skip.contains(a))
    }
}

fn prod(cs: &[Coefficient]) -> Coefficient {
    cs.iter().skip(1).fold(cs[0].clone(), |a, b| &a * b)
}

fn type1(x: &Ctx) -> Vec<Relation> {
    use NamedKind::*;
    let mut out = Vec::new();
    for i in 1..=x.n {
        for j in 1..=x.n {
            for k in (j + 1)..=x.n {
                if i == j || i == k {
                    continue;
                }
                // z_ij z_ik = z_ik z_ij A_kj
                let body = x.z(&[(i, j), (i, k)], &x.one()).sub(&x.z(&[(i, k), (i, j)], &x.c(A, k, j)));
                out.push(Relation { family: Family::T1, indices: vec![i, j, k], line: 0, body });
                // z_ji z_ki = z_ki z_ji A'_kj
                let body = x.z(&[(j, i), (k, i)], &x.one()).sub(&x.z(&[(k, i), (j, i)], &x.c(APrime, k, j)));
                out.push(Relation { family: Family::T1, indices: vec![i, j, k], line: 1, body });
            }
        }
    }
    out
}

fn type2(x: &Ctx) -> Vec<Relation> {
    use NamedKind::*;
    let n = x.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for k in (i + 1)..=n {
            for j in x.others(&[i, k]) {
                for l in x.others(&[i, j, k]) {
                    let d = d_coeff(n, i, j, k, l);
                    let swap_coeff = if j < l {
                        x.one()
                    } else {
                        &x.c(APrime, j, l) * &x.c(APrime, l, j)
                    };
                    let body = x
                        .z(&[(i, j), (k, l)], &x.one())
                        .sub(&x.z(&[(k, l), (i, j)], &swap_coeff))
                        .sub(&x.z(&[(k, j), (i, l)], &d));
                    let line = usize::from(j > l);
                    out.push(Relation { family: Family::T2, indices: vec![i, j, k, l], line, body });
                }
            }
        }
    }
    out
}

/// `E̊_ikl`.
fn e_ring(x: &Ctx, i: usize, k: usize, l: usize) -> ZElement {
    let c1 = &x.th(i, l, 1) / &(&x.th(i, k, 0) * &x.th(i, l, 0));
    let c2 = &x.th(i, l, -1) / &(&x.th(k, l, 0) * &x.th(i, l, 0));
    let mut lin = x.h(&[(i, i), (i, l)], &x.one()).scale(&c1);
    lin = lin.sub(&x.h(&[(k, k), (i, l)], &x.one()).scale(&c1));
    lin = lin.add(&x.h(&[(k, k), (i, l)], &x.one()).scale(&c2));
    lin = lin.sub(&x.h(&[(l, l), (i, l)], &x.one()).scale(&c2));
    let mut out = lin.neg();
    for a in x.others(&[i, k, l]) {
        let c = &x.c(NamedKind::B, a, i) * &x.inv(k, a, 1);
        out = out.add(&x.h(&[(a, l), (i, a)], &c));
    }
    out
}

fn type3a(x: &Ctx) -> Vec<Relation> {
    use NamedKind::*;
    let mut out = Vec::new();
    for i in 1..=x.n {
        for k in x.others(&[i]) {
            for l in x.others(&[i, k]) {
                let (coeff, line) = if i < k && k < l {
                    (x.c(APrime, i, k), 0)
                } else if i < l && l < k {
                    (prod(&[x.c(APrime, i, k), x.c(APrime, l, k), x.c(B, l, k)]), 1)
                } else if k < i && i < l {
                    (x.c(A, k, i), 2)
                } else if k < l && l < i {
                    (prod(&[x.c(A, k, i), x.c(A, l, i), x.c(BPrime, l, i)]), 3)
                } else if l < i && i < k {
                    (
                        prod(&[x.c(APrime, i, k), x.c(APrime, l, k), x.c(B, l, k), x.c(A, l, i), x.c(BPrime, l, i)]),
                        4,
                    )
                } else {
                    (
                        prod(&[x.c(A, k, i), x.c(APrime, l, k), x.c(B, l, k), x.c(A, l, i), x.c(BPrime, l, i)]),
                        5,
                    )
                };
                let body = x
                    .h(&[(i, k), (k, l)], &coeff)
                    .sub(&x.h(&[(k, l), (i, k)], &x.c(B, k, i)))
                    .sub(&e_ring(x, i, k, l));
                out.push(Relation { family: Family::T3a, indices: vec![i, k, l], line, body });
            }
        }
    }
    out
}

fn type3b(x: &Ctx) -> Vec<Relation> {
    use NamedKind::*;
    let mut out = Vec::new();
    for i in 1..=x.n {
        for j in x.others(&[i]) {
            // ẑ_ij t̊_i = t̊_i ẑ_ij C'_ji − t̊_j ẑ_ij/(θ_ij+2) − Σ_a ẑ_aj ẑ_ia/(θ_ia+2)
            let mut rhs = x
                .h(&[(i, i), (i, j)], &x.c(CPrime, j, i))
                .sub(&x.h(&[(j, j), (i, j)], &x.inv(i, j, 2)));
            for a in x.others(&[i, j]) {
                rhs = rhs.sub(&x.h(&[(a, j), (i, a)], &x.inv(i, a, 2)));
            }
            let body = x.h(&[(i, j), (i, i)], &x.one()).sub(&rhs);
            out.push(Relation { family: Family::T3b, indices: vec![i, j, i], line: 0, body });

            // ẑ_ij t̊_j = −t̊_i ẑ_ij C'_ji/(θ_ij−1) + t̊_j ẑ_ij A_ij A'_ji B_ji
            //            + Σ_a ẑ_aj ẑ_ia A_ij A'_ji B_ai/(θ_ja+1)
            let aa = &x.c(A, i, j) * &x.c(APrime, j, i);
            let mut rhs = x
                .h(&[(j, j), (i, j)], &(&aa * &x.c(B, j, i)))
                .sub(&x.h(&[(i, i), (i, j)], &(&x.c(CPrime, j, i) * &x.inv(i, j, -1))));
            for a in x.others(&[i, j]) {
                let c = prod(&[aa.clone(), x.c(B, a, i), x.inv(j, a, 1)]);
                rhs = rhs.add(&x.h(&[(a, j), (i, a)], &c));
            }
            let body = x.h(&[(i, j), (j, j)], &x.one()).sub(&rhs);
            out.push(Relation { family: Family::T3b, indices: vec![i, j, j], line: 1, body });

            for k in x.others(&[i, j]) {
                let ik2 = &x.th(i, k, -1) * &x.th(i, k, 1);
                let jk1 = x.th(j, k, -1);
                let c_i = &(&x.th(i, j, 3) * &x.c(B, j, i)) / &(&ik2 * &jk1);
                let c_j = &(&x.th(i, j, 1) * &x.c(B, j, i)) / &prod(&[x.th(i, k, -1), jk1.clone(), jk1.clone()]);
                let c_k = prod(&[x.c(A, i, k), x.c(A, k, i), x.c(A, j, k), x.c(BPrime, j, k)]);
                let common = &x.th(i, j, 1) / &(&x.th(i, k, -1) * &jk1);
                let mut rhs = x
                    .h(&[(i, i), (i, j)], &c_i)
                    .add(&x.h(&[(j, j), (i, j)], &c_j))
                    .add(&x.h(&[(k, k), (i, j)], &c_k))
                    .sub(&x.h(&[(k, j), (i, k)], &(&common * &x.c(B, k, i))));
                for a in x.others(&[i, j, k]) {
                    let c = prod(&[common.clone(), x.c(B, a, i), x.inv(k, a, 1)]);
                    rhs = rhs.sub(&x.h(&[(a, j), (i, a)], &c));
                }
                let body = x.h(&[(i, j), (k, k)], &x.one()).sub(&rhs);
                out.push(Relation { family: Family::T3b, indices: vec![i, j, k], line: 2, body });
            }
        }
    }
    out
}

fn type4a(x: &Ctx) -> Vec<Relation> {
    let mut out = Vec::new();
    for i in 1..=x.n {
        for j in (i + 1)..=x.n {
            let body = x.h(&[(i, i), (j, j)], &x.one()).sub(&x.h(&[(j, j), (i, i)], &x.one()));
            out.push(Relation { family: Family::T4a, indices: vec![i, j], line: 0, body });
        }
    }
    out
}

fn type4b(x: &Ctx) -> Vec<Relation> {
    let n = x.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let t_diff = x.h(&[(i, i)], &x.one()).sub(&x.h(&[(j, j)], &x.one()));
            let mut rhs = ZElement::scalar(x.th(i, j, 0))
                .with_basis(Basis::Hat)
                .sub(&t_diff.mul(&t_diff).scale(&x.inv(i, j, 0)));
            for a in x.others(&[i, j]) {
                rhs = rhs
                    .add(&x.h(&[(a, i), (i, a)], &x.one()).scale(&x.inv(j, a, 1)))
                    .sub(&x.h(&[(a, j), (j, a)], &x.one()).scale(&x.inv(i, a, 1)));
            }
            let body = x
                .h(&[(i, j), (j, i)], &x.one())
                .sub(&x.h(&[(j, i), (i, j)], &x.one()))
                .sub(&rhs);
            out.push(Relation { family: Family::T4b, indices: vec![i, j], line: 0, body });
        }
    }
    out
}

/// All instances of one family.
pub fn build_family(n: usize, family: Family) -> Vec<Relation> {
    let x = Ctx { n };
    match family {
        Family::T1 => type1(&x),
        Family::T2 => type2(&x),
        Family::T3a => type3a(&x),
        Family::T3b => type3b(&x),
        Family::T4a => type4a(&x),
        Family::T4b => type4b(&x),
    }
}

/// The full relation system for `Z_n`.
pub fn build_relations(n: usize) -> Vec<Relation> {
    Family::ALL.into_iter().flat_map(|f| build_family(n, f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::{Oracle, ProjectorConfig};

    #[test]
    fn counts() {
        let count = |n: usize, f: Family| build_family(n, f).len();
        assert_eq!(build_relations(2).len(), 6);
        assert_eq!(build_relations(3).len(), 36);
        assert_eq!(build_relations(4).len(), 120);
        assert_eq!(count(3, Family::T1), 6);
        assert_eq!(count(4, Family::T2), 12);
        assert_eq!(count(2, Family::T3b), 4);
    }

    #[test]
    fn homogeneous() {
        for r in build_relations(3) {
            let ws = r.plain().weights();
            assert!(ws.len() <= 1, "{:?} {:?}", r.family, r.indices);
        }
    }

    #[test]
    fn type_one_example() {
        let n = 3;
        let r = build_family(n, Family::T1)
            .into_iter()
            .find(|r| r.indices == [1, 2, 3] && r.line == 0)
            .unwrap();
        let g = GeneratorId::new;
        let mut expected = ZElement::word(n, &[g(1, 2), g(1, 3)]);
        expected.add_term(vec![g(1, 3), g(1, 2)], -named_coeff(n, NamedKind::A, 3, 2));
        assert_eq!(r.body, expected);
    }

    #[test]
    fn sound_for_n2_n3() {
        for n in 2..=3 {
            let oracle = Oracle::new(ProjectorConfig::new(n)).unwrap();
            for r in build_relations(n) {
                let v = oracle.eval(&r.plain());
                assert!(v.is_zero(), "{} {:?}: {}", r.family, r.indices, v);
            }
        }
    }

    #[test]
    fn sound_type_two_n4() {
        let oracle = Oracle::new(ProjectorConfig::new(4)).unwrap();
        for r in build_family(4, Family::T2).into_iter().filter(|r| r.indices == [1, 2, 3, 4]) {
            let v = oracle.eval(&r.plain());
            assert!(v.is_zero(), "{} {:?}: {}", r.family, r.indices, v);
        }
    }
}
