//! Exact linear algebra over the coefficient field: Cauchy matrices,
//! elimination with factored denominators, and sparse span membership.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{Coefficient, Poly};
use crate::error::{Error, Result};

/// Largest `|ς|` in a denominator factor `θ_ij + ς` preferred by pivoting.
const ADMISSIBLE_SHIFT: i64 = 2;

/// Dense matrix of coefficients from one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffMatrix {
    n: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Coefficient>,
}

impl CoeffMatrix {
    pub fn zeros(n: usize, rows: usize, cols: usize) -> Self {
        CoeffMatrix {
            n,
            rows,
            cols,
            entries: vec![Coefficient::zero(n); rows * cols],
        }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        let mut a = Self::zeros(n, m, m);
        for k in 0..m {
            a.set(k, k, Coefficient::one(n));
        }
        a
    }

    pub fn from_fn(n: usize, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Coefficient) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        CoeffMatrix { n, rows, cols, entries }
    }

    pub fn ring(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coefficient {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coefficient) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &CoeffMatrix) -> CoeffMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        CoeffMatrix::from_fn(self.n, self.rows, other.cols, |r, c| {
            (0..self.cols).fold(Coefficient::zero(self.n), |acc, k| {
                let a = self.get(r, k);
                if a.is_zero() {
                    acc
                } else {
                    &acc + &(a * other.get(k, c))
                }
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }

    /// Determinant as the signed product of the pivots of [`Self::solve`]'s
    /// elimination.
    pub fn det(&self) -> Coefficient {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let m = self.rows;
        let mut a: Vec<Vec<Coefficient>> = (0..m).map(|r| (0..m).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut det = Coefficient::one(self.n);
        for col in 0..m {
            let Some((p, inv)) = choose_pivot(&a, col) else {
                return Coefficient::zero(self.n);
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let pivot_row: Vec<Coefficient> = a[col].iter().map(|x| x * &inv).collect();
            for row in a.iter_mut().skip(col + 1) {
                eliminate(row, &pivot_row, col);
            }
        }
        det
    }

    /// Solves `self · X = rhs` by Gauss–Jordan elimination over the
    /// coefficient field. Denominators stay factored into linear forms; among
    /// the candidate pivots of a column the one whose reciprocal has only
    /// admissible denominators `θ_ij + ς`, `|ς| ≤ 2`, and the fewest terms is
    /// taken.
    pub fn solve(&self, rhs: &CoeffMatrix) -> Result<CoeffMatrix> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows, "shape mismatch");
        let m = self.rows;
        let k = rhs.cols;
        let mut a: Vec<Vec<Coefficient>> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| self.get(r, c).clone())
                    .chain((0..k).map(|c| rhs.get(r, c).clone()))
                    .collect()
            })
            .collect();
        for col in 0..m {
            let (p, inv) = choose_pivot(&a, col).ok_or(Error::Singular)?;
            a.swap(p, col);
            let pivot_row: Vec<Coefficient> = a[col].iter().map(|x| x * &inv).collect();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col {
                    eliminate(row, &pivot_row, col);
                }
            }
            a[col] = pivot_row;
        }
        Ok(CoeffMatrix::from_fn(self.n, m, k, |r, c| a[r][m + c].clone()))
    }

    pub fn inverse(&self) -> Result<CoeffMatrix> {
        self.solve(&CoeffMatrix::identity(self.n, self.rows))
    }
}

impl fmt::Display for CoeffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}],", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Least common denominator of the given coefficients, returned as the
/// coefficient `D` (a polynomial) with `x·D` polynomial for every `x`.
pub fn common_denominator<'a>(n: usize, xs: impl Iterator<Item = &'a Coefficient>) -> Coefficient {
    let mut forms: BTreeMap<crate::coeffring::LinearForm, u32> = BTreeMap::new();
    let mut generals: Vec<Poly> = Vec::new();
    for x in xs {
        for (lf, m) in x.den_linear() {
            let e = forms.entry(*lf).or_insert(0);
            *e = (*e).max(*m);
        }
        let g = x.den_general();
        if !g.is_one() && !generals.contains(g) {
            generals.push(g.clone());
        }
    }
    let mut p = Poly::one();
    for (lf, m) in forms {
        p = p.mul(&lf.to_poly().pow(m));
    }
    for g in generals {
        p = p.mul(&g);
    }
    Coefficient::from_poly(n, p)
}

/// Pivot preference: admissible denominators first, then fewest terms.
fn pivot_cost(inv: &Coefficient) -> (bool, usize, usize) {
    let admissible = inv.denominators_within(|c| c.abs() <= ADMISSIBLE_SHIFT);
    let den_size: usize = inv.den_linear().iter().map(|(_, m)| *m as usize).sum();
    (!admissible, inv.numerator().len(), den_size + inv.den_general().len())
}

/// Row `p ≥ col` with the preferred pivot in column `col`, and the
/// pivot's reciprocal.
fn choose_pivot(a: &[Vec<Coefficient>], col: usize) -> Option<(usize, Coefficient)> {
    (col..a.len())
        .filter(|&r| !a[r][col].is_zero())
        .map(|r| (r, a[r][col].recip().expect("nonzero pivot")))
        .min_by_key(|(_, inv)| pivot_cost(inv))
}

/// `row −= row[col] · pivot_row`, where `pivot_row[col] = 1`.
fn eliminate(row: &mut [Coefficient], pivot_row: &[Coefficient], col: usize) {
    if row[col].is_zero() {
        return;
    }
    let f = row[col].clone();
    for (x, y) in row.iter_mut().zip(pivot_row).skip(col) {
        if !y.is_zero() {
            *x = &*x - &(&f * y);
        }
    }
}

/// The Cauchy matrix `1/(x_i + y_j)`.
pub fn cauchy_matrix(x: &[Coefficient], y: &[Coefficient]) -> Result<CoeffMatrix> {
    let n = ring_of(x, y);
    let mut a = CoeffMatrix::zeros(n, x.len(), y.len());
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            let s = xi + yj;
            if s.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            a.set(i, j, s.recip()?);
        }
    }
    Ok(a)
}

fn ring_of(x: &[Coefficient], y: &[Coefficient]) -> usize {
    x.first().or(y.first()).map(Coefficient::n).unwrap_or(0)
}

/// `Π_{i<j}(x_i − x_j)(y_i − y_j) / Π_{i,j}(x_i + y_j)`.
pub fn cauchy_det(x: &[Coefficient], y: &[Coefficient]) -> Result<Coefficient> {
    let n = ring_of(x, y);
    let m = x.len();
    assert_eq!(m, y.len(), "Cauchy matrix must be square");
    let mut num = Coefficient::one(n);
    let mut inv_den = Coefficient::one(n);
    for i in 0..m {
        for j in 0..m {
            let s = &x[i] + &y[j];
            if s.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            // reciprocals keep the denominator factored
            inv_den = &inv_den * &s.recip()?;
            if i < j {
                num = &num * &(&(&x[i] - &x[j]) * &(&y[i] - &y[j]));
            }
        }
    }
    Ok(&num * &inv_den)
}

/// `(𝔄^{-1})_ij = (x_j + y_i) Π_{a≠j}(x_a + y_i)/(x_a − x_j) Π_{b≠i}(y_b + x_j)/(y_b − y_i)`.
pub fn cauchy_inverse(x: &[Coefficient], y: &[Coefficient]) -> Result<CoeffMatrix> {
    let n = ring_of(x, y);
    let m = x.len();
    assert_eq!(m, y.len(), "Cauchy matrix must be square");
    for a in 0..m {
        for b in (a + 1)..m {
            if (&x[a] - &x[b]).is_zero() || (&y[a] - &y[b]).is_zero() {
                return Err(Error::DegenerateNodes);
            }
        }
        if y.iter().any(|yb| (&x[a] + yb).is_zero()) {
            return Err(Error::ZeroDenominator);
        }
    }
    let mut inv = CoeffMatrix::zeros(n, m, m);
    for i in 0..m {
        for j in 0..m {
            let mut v = &x[j] + &y[i];
            for a in (0..m).filter(|&a| a != j) {
                v = &v * &(&(&x[a] + &y[i]) / &(&x[a] - &x[j]));
            }
            for b in (0..m).filter(|&b| b != i) {
                v = &v * &(&(&y[b] + &x[j]) / &(&y[b] - &y[i]));
            }
            inv.set(i, j, v);
        }
    }
    Ok(inv)
}

/// Nodes of the ring specialization `x_i = θ_i`, `y_j = −θ_j + 1`.
pub fn ring_cauchy_nodes(n: usize) -> (Vec<Coefficient>, Vec<Coefficient>) {
    let x = (1..=n).map(|i| Coefficient::theta(n, i)).collect();
    let y = (1..=n)
        .map(|j| &Coefficient::one(n) - &Coefficient::theta(n, j))
        .collect();
    (x, y)
}

/// `𝔄̊_ij = 1/(θ_ij + 1)`.
pub fn ring_cauchy(n: usize) -> CoeffMatrix {
    CoeffMatrix::from_fn(n, n, n, |i, j| Coefficient::theta_ij(n, i + 1, j + 1, 1).recip().expect("nonzero"))
}

/// `Π_{i<j} θ_ij² / (θ_ij² − 1)`.
pub fn ring_cauchy_det(n: usize) -> Coefficient {
    let mut d = Coefficient::one(n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            let t = Coefficient::theta_ij(n, i, j, 0);
            let t2 = &t * &t;
            d = &d * &(&t2 / &(&t2 - &Coefficient::one(n)));
        }
    }
    d
}

/// `(𝔄̊^{-1})_ij = −1/(θ_ij − 1) Π_{a≠i}(θ_ia − 1)/θ_ia Π_{b≠j}(θ_jb + 1)/θ_jb`.
pub fn ring_cauchy_inverse(n: usize) -> CoeffMatrix {
    CoeffMatrix::from_fn(n, n, n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        let th = |a: usize, b: usize, c: i64| Coefficient::theta_ij(n, a, b, c);
        let mut v = -(&Coefficient::one(n) / &th(i, j, -1));
        for a in (1..=n).filter(|&a| a != i) {
            v = &v * &(&th(i, a, -1) / &th(i, a, 0));
        }
        for b in (1..=n).filter(|&b| b != j) {
            v = &v * &(&th(j, b, 1) / &th(j, b, 0));
        }
        v
    })
}

/// Both sides of the identity behind `Σ_j (𝔄̊^{-1})_ij 𝔄̊_jk = δ_ik`:
/// `1/(θ_ik+1) Π_{b≠i}(θ_ib+1)/θ_ib − Σ_{j≠i} 1/(θ_ij(θ_jk+1)) Π_{b≠i,j}(θ_jb+1)/θ_jb`
/// and `δ_ik Π_{b≠i} θ_ib/(θ_ib−1)`, for 1-based `i`, `k`.
pub fn ring_residue_identity(n: usize, i: usize, k: usize) -> (Coefficient, Coefficient) {
    let th = |a: usize, b: usize, c: i64| Coefficient::theta_ij(n, a, b, c);
    let one = Coefficient::one(n);
    let mut lhs = &one / &th(i, k, 1);
    for b in (1..=n).filter(|&b| b != i) {
        lhs = &lhs * &(&th(i, b, 1) / &th(i, b, 0));
    }
    for j in (1..=n).filter(|&j| j != i) {
        let mut term = &one / &(&th(i, j, 0) * &th(j, k, 1));
        for b in (1..=n).filter(|&b| b != i && b != j) {
            term = &term * &(&th(j, b, 1) / &th(j, b, 0));
        }
        lhs = &lhs - &term;
    }
    let mut rhs = Coefficient::zero(n);
    if i == k {
        rhs = one;
        for b in (1..=n).filter(|&b| b != i) {
            rhs = &rhs * &(&th(i, b, 0) / &th(i, b, -1));
        }
    }
    (lhs, rhs)
}

/// Sparse vector keyed by basis words.
pub type SparseVec<K> = BTreeMap<K, Coefficient>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Coefficient, x: &SparseVec<K>) {
    for (k, v) in x {
        let t = a * v;
        match y.get_mut(k) {
            Some(e) => {
                let s = &*e + &t;
                if s.is_zero() {
                    y.remove(k);
                } else {
                    *e = s;
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(k.clone(), t);
                }
            }
        }
    }
}

/// Expresses each target as a combination of `basis` vectors by reduced
/// row echelon elimination, preferring constant pivots. Fails with
/// `Singular` when the basis is dependent and `SpanFailure` when a target
/// is outside the span.
pub fn express_in_span<K: Ord + Clone + fmt::Debug>(
    n: usize,
    basis: &[SparseVec<K>],
    targets: &[SparseVec<K>],
) -> Result<Vec<Vec<Coefficient>>> {
    // pivot rows: (pivot key, vector with pivot entry 1, combination of basis)
    let mut pivots: Vec<(K, SparseVec<K>, SparseVec<usize>)> = Vec::new();
    for (idx, b) in basis.iter().enumerate() {
        let mut v = b.clone();
        let mut combo: SparseVec<usize> = BTreeMap::new();
        combo.insert(idx, Coefficient::one(n));
        for (pk, pv, pc) in &pivots {
            if let Some(c) = v.get(pk).cloned() {
                let neg = -&c;
                axpy(&mut v, &neg, pv);
                axpy(&mut combo, &neg, pc);
            }
        }
        let key = v
            .iter()
            .rev()
            .min_by_key(|(_, c)| if c.as_constant().is_some() { 0 } else { 1 + c.numerator().len() })
            .map(|(k, _)| k.clone())
            .ok_or(Error::Singular)?;
        let inv = v[&key].recip()?;
        let v: SparseVec<K> = v.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        let combo: SparseVec<usize> = combo.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        for (_, pv, pc) in pivots.iter_mut() {
            if let Some(c) = pv.get(&key).cloned() {
                let neg = -&c;
                axpy(pv, &neg, &v);
                axpy(pc, &neg, &combo);
            }
        }
        pivots.push((key, v, combo));
    }
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        let mut v = t.clone();
        let mut sol: SparseVec<usize> = BTreeMap::new();
        for (pk, pv, pc) in &pivots {
            if let Some(c) = v.get(pk).cloned() {
                axpy(&mut v, &-&c, pv);
                axpy(&mut sol, &c, pc);
            }
        }
        if !v.is_empty() {
            return Err(Error::SpanFailure(format!("{:?}", v.keys().collect::<Vec<_>>())));
        }
        out.push((0..basis.len()).map(|k| sol.get(&k).cloned().unwrap_or_else(|| Coefficient::zero(n))).collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{rat, Rat};

    fn th(n: usize, i: usize, j: usize, c: i64) -> Coefficient {
        Coefficient::theta_ij(n, i, j, c)
    }

    /// Generic nodes `x_i = θ_i`, `y_j = −θ_{m+j}`.
    fn generic_nodes(m: usize) -> (Vec<Coefficient>, Vec<Coefficient>) {
        let n = 2 * m;
        let x = (1..=m).map(|i| Coefficient::theta(n, i)).collect();
        let y = (1..=m).map(|j| -Coefficient::theta(n, m + j)).collect();
        (x, y)
    }

    #[test]
    fn small_cases() {
        let (x, y) = generic_nodes(1);
        let a = cauchy_matrix(&x, &y).unwrap();
        assert_eq!(a.get(0, 0), &(&Coefficient::one(2) / &th(2, 1, 2, 0)));
        assert_eq!(cauchy_det(&x, &y).unwrap(), *a.get(0, 0));
        assert_eq!(cauchy_inverse(&x, &y).unwrap().get(0, 0), &th(2, 1, 2, 0));
        let sym = cauchy_matrix(&x, &x).unwrap();
        assert_eq!(sym.get(0, 0), sym.get(0, 0));
    }

    #[test]
    fn ring_specialization() {
        let n = 3;
        let (x, y) = ring_cauchy_nodes(n);
        assert_eq!(cauchy_matrix(&x, &y).unwrap(), ring_cauchy(n));
        assert_eq!(ring_cauchy_det(2), {
            let t = th(2, 1, 2, 0);
            &(&t * &t) / &(&(&t * &t) - &Coefficient::one(2))
        });
        assert_eq!(ring_cauchy(n).det(), ring_cauchy_det(n));
        assert!(ring_cauchy(n).mul(&ring_cauchy_inverse(n)).is_identity());
        assert_eq!(cauchy_det(&x, &y).unwrap(), ring_cauchy_det(n));
    }

    #[test]
    fn generic_cauchy_identities() {
        for m in 1..=4 {
            let (x, y) = generic_nodes(m);
            let a = cauchy_matrix(&x, &y).unwrap();
            let inv = cauchy_inverse(&x, &y).unwrap();
            assert!(a.mul(&inv).is_identity(), "m={m}");
            assert!(inv.mul(&a).is_identity(), "m={m}");
            assert_eq!(a.det(), cauchy_det(&x, &y).unwrap());
        }
    }

    #[test]
    fn residue_identity() {
        for n in 1..=4 {
            for i in 1..=n {
                for k in 1..=n {
                    let (lhs, rhs) = ring_residue_identity(n, i, k);
                    assert_eq!(lhs, rhs, "n={n} i={i} k={k}");
                }
            }
        }
    }

    #[test]
    fn ring_identities_up_to_four() {
        for n in 2..=4 {
            assert_eq!(ring_cauchy(n).det(), ring_cauchy_det(n));
            assert!(ring_cauchy(n).mul(&ring_cauchy_inverse(n)).is_identity());
            assert!(ring_cauchy_inverse(n).mul(&ring_cauchy(n)).is_identity());
        }
    }

    #[test]
    fn errors() {
        let n = 2;
        let x = vec![Coefficient::theta(n, 1)];
        let y = vec![-Coefficient::theta(n, 1)];
        assert_eq!(cauchy_matrix(&x, &y), Err(Error::ZeroDenominator));
        let xx = vec![Coefficient::theta(n, 1), Coefficient::theta(n, 1)];
        let yy = vec![Coefficient::theta(n, 2), Coefficient::integer(n, 1)];
        assert_eq!(cauchy_inverse(&xx, &yy), Err(Error::DegenerateNodes));
        let singular = CoeffMatrix::from_fn(n, 2, 2, |_, _| Coefficient::theta(n, 1));
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn solve_matches_closed_form() {
        let n = 2;
        let a = ring_cauchy(n);
        assert_eq!(a.inverse().unwrap(), ring_cauchy_inverse(n));
        let b = CoeffMatrix::from_fn(n, 2, 1, |r, _| Coefficient::theta(n, r + 1));
        let id = CoeffMatrix::identity(n, 2);
        assert_eq!(id.solve(&b).unwrap(), b);
        assert_eq!(a.solve(&b).unwrap(), ring_cauchy_inverse(n).mul(&b));
    }

    #[test]
    fn sparse_span() {
        let n = 2;
        let v = |pairs: &[(u8, Coefficient)]| -> SparseVec<u8> { pairs.iter().cloned().collect() };
        let one = Coefficient::one(n);
        let t = Coefficient::theta(n, 1);
        let basis = vec![v(&[(2, one.clone()), (1, t.clone())]), v(&[(1, one.clone())])];
        let target = v(&[(2, t.clone()), (1, one.clone())]);
        let sol = express_in_span(n, &basis, &[target]).unwrap();
        assert_eq!(sol[0][0], t);
        assert_eq!(sol[0][1], &one - &(&t * &t));
        let outside = v(&[(3, one.clone())]);
        assert!(matches!(express_in_span(n, &basis, &[outside]), Err(Error::SpanFailure(_))));
        let _ = rat(0) + Rat::from_integer(1.into());
    }
}
