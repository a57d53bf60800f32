use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::linear::LinearForm;
use super::poly::{rat, Poly, Rat, MAX_VARS};
use crate::error::{Error, Result};
use crate::weights::Weight;

/// Largest `|c|` tried when splitting `θ_i − θ_j + c` factors off a
/// polynomial.
const SPLIT_RANGE: i64 = 12;

/// Generic point used to reject non-factors before an exact division.
const PROBE: [i64; MAX_VARS] = [17, 41, 73, 109, 157, 211, 277, 349];

/// Element of the localized Cartan ring: a rational function of
/// `θ_1..θ_n` whose denominator is a product of linear forms times a
/// monic general factor.
///
/// Canonical: no linear form in `den` divides `num`, `den` is sorted,
/// `den_general` is monic, zero has empty denominators.
#[derive(Clone, Debug)]
pub struct Coefficient {
    nvars: u8,
    num: Poly,
    den: Vec<(LinearForm, u32)>,
    den_general: Poly,
}

impl Coefficient {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "ring size {n} exceeds {MAX_VARS}");
        Coefficient {
            nvars: n as u8,
            num: Poly::zero(),
            den: Vec::new(),
            den_general: Poly::one(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(n, Poly::one())
    }

    pub fn from_rat(n: usize, r: Rat) -> Self {
        Self::from_poly(n, Poly::constant(r))
    }

    pub fn integer(n: usize, c: i64) -> Self {
        Self::from_rat(n, rat(c))
    }

    pub fn from_poly(n: usize, num: Poly) -> Self {
        let mut c = Self::zero(n);
        c.num = num;
        c
    }

    /// `θ_k` (1-based).
    pub fn theta(n: usize, k: usize) -> Self {
        assert!((1..=n).contains(&k));
        Self::from_poly(n, Poly::var(k - 1))
    }

    /// `θ_ij + c = θ_i − θ_j + c`.
    pub fn theta_ij(n: usize, i: usize, j: usize, c: i64) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j));
        if i == j {
            return Self::integer(n, c);
        }
        let (_, lf) = LinearForm::oriented(i as u8, j as u8, c);
        let sign = if i < j { 1 } else { -1 };
        Self::from_poly(n, lf.to_poly().scale(&rat(sign)))
    }

    /// `h_k = θ_k + k`.
    pub fn h(n: usize, k: usize) -> Self {
        &Self::theta(n, k) + &Self::integer(n, k as i64)
    }

    /// Builds `num / (Π den · den_general)` and canonicalizes.
    pub fn from_parts(n: usize, num: Poly, den: Vec<(LinearForm, u32)>, den_general: Poly) -> Result<Self> {
        if den_general.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut c = Coefficient {
            nvars: n as u8,
            num,
            den: merge_forms(den, Vec::new()),
            den_general,
        };
        c.canonicalize_general();
        let forms = std::mem::take(&mut c.den);
        let (num, den) = cancel(c.num, forms, |_| true);
        c.num = num;
        c.den = den;
        c.fix_zero();
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.nvars as usize
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn den_linear(&self) -> &[(LinearForm, u32)] {
        &self.den
    }

    pub fn den_general(&self) -> &Poly {
        &self.den_general
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_empty() && self.den_general.is_one()
    }

    /// The constant value when the coefficient has no θ-dependence.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() && self.den_general.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The full denominator as a polynomial.
    pub fn den_poly(&self) -> Poly {
        self.den
            .iter()
            .fold(self.den_general.clone(), |acc, (lf, m)| acc.mul(&lf.to_poly().pow(*m)))
    }

    /// Re-reads the coefficient in a ring with `n ≥ self.n()` variables.
    pub fn extend(&self, n: usize) -> Self {
        assert!(n >= self.n() && n <= MAX_VARS);
        let mut c = self.clone();
        c.nvars = n as u8;
        c
    }

    /// Re-reads the coefficient in a ring with `n ≤ self.n()` variables, or
    /// `None` when it involves `θ_k` with `k > n`.
    pub fn restrict(&self, n: usize) -> Option<Self> {
        let uses_high = |p: &Poly| (n..self.n()).any(|v| p.degree_in(v) > 0);
        if uses_high(&self.num) || uses_high(&self.den_general) || self.den.iter().any(|(lf, _)| lf.j as usize > n) {
            return None;
        }
        let mut c = self.clone();
        c.nvars = n as u8;
        Some(c)
    }

    fn fix_zero(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            self.den_general = Poly::one();
        }
    }

    /// Moves linear factors and scalars out of `den_general`, then tries to
    /// cancel it against the numerator.
    fn canonicalize_general(&mut self) {
        if self.den_general.is_one() {
            return;
        }
        if let Some(c) = self.den_general.as_constant() {
            self.num = self.num.scale(&c.recip());
            self.den_general = Poly::one();
            return;
        }
        let (scalar, forms, rest) = split_linear(&self.den_general, self.n());
        self.num = self.num.scale(&scalar.recip());
        self.den = merge_forms(std::mem::take(&mut self.den), forms);
        self.den_general = rest;
        if !self.den_general.is_one() {
            if let Some(q) = self.num.exact_div(&self.den_general) {
                self.num = q;
                self.den_general = Poly::one();
            }
        }
    }

    fn check_ring(&self, other: &Coefficient) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::RingMismatch(self.n(), other.n()))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check_ring(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let n = self.n();
        // Forms at equal multiplicity in both operands are the only ones the
        // sum's numerator can still be divisible by.
        let (lcm, fa, fb, shared) = lcm_forms(&self.den, &other.den);
        if self.den_general == other.den_general {
            let num = self.num.mul(&forms_poly(&fa)).add(&other.num.mul(&forms_poly(&fb)));
            let (num, den) = cancel(num, lcm, |lf| shared.contains(lf));
            let mut c = Coefficient {
                nvars: n as u8,
                num,
                den,
                den_general: self.den_general.clone(),
            };
            if !c.den_general.is_one() {
                if let Some(q) = c.num.exact_div(&c.den_general) {
                    c.num = q;
                    c.den_general = Poly::one();
                }
            }
            c.fix_zero();
            return Ok(c);
        }
        let num = self
            .num
            .mul(&forms_poly(&fa))
            .mul(&other.den_general)
            .add(&other.num.mul(&forms_poly(&fb)).mul(&self.den_general));
        Coefficient::from_parts(n, num, lcm, self.den_general.mul(&other.den_general))
    }

    pub fn checked_mul(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check_ring(other)?;
        let n = self.n();
        if self.is_zero() || other.is_zero() {
            return Ok(Coefficient::zero(n));
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let (na, db) = cancel(self.num.clone(), other.den.clone(), |_| true);
        let (nb, da) = cancel(other.num.clone(), self.den.clone(), |_| true);
        let mut c = Coefficient {
            nvars: n as u8,
            num: na.mul(&nb),
            den: merge_forms(da, db),
            den_general: self.den_general.mul(&other.den_general),
        };
        if !c.den_general.is_one() {
            let g = std::mem::replace(&mut c.den_general, Poly::one());
            let (s, g) = g.make_monic();
            c.num = c.num.scale(&s.recip());
            c.den_general = g;
            if let Some(q) = c.num.exact_div(&c.den_general) {
                c.num = q;
                c.den_general = Poly::one();
            }
        }
        Ok(c)
    }

    pub fn recip(&self) -> Result<Coefficient> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.n();
        let (scalar, forms, rest) = split_linear(&self.num, n);
        let mut num = forms_poly(&self.den).mul(&self.den_general);
        num = num.scale(&scalar.recip());
        let (s, rest) = rest.make_monic();
        num = num.scale(&s.recip());
        Ok(Coefficient {
            nvars: n as u8,
            num,
            den: merge_forms(forms, Vec::new()),
            den_general: rest,
        })
    }

    pub fn checked_div(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check_ring(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Coefficient {
        (0..e).fold(Coefficient::one(self.n()), |acc, _| &acc * self)
    }

    pub fn scale(&self, r: &Rat) -> Coefficient {
        if r.is_zero() {
            return Coefficient::zero(self.n());
        }
        let mut c = self.clone();
        c.num = c.num.scale(r);
        c
    }

    /// Applies `θ_k ↦ sign·θ_{perm[k]} + offs[k]` (0-based `perm`).
    pub fn substitute_affine(&self, sign: i8, perm: &[usize], offs: &[i64]) -> Coefficient {
        let n = self.n();
        debug_assert_eq!(perm.len(), n);
        let images: Vec<Poly> = (0..n)
            .map(|k| Poly::var(perm[k]).scale(&rat(sign as i64)).add(&Poly::integer(offs[k])))
            .collect();
        let mut num = self.num.substitute(&images);
        let mut den = Vec::with_capacity(self.den.len());
        for &(lf, m) in &self.den {
            let (a, b) = (perm[lf.i as usize - 1], perm[lf.j as usize - 1]);
            let d = lf.c + offs[lf.i as usize - 1] - offs[lf.j as usize - 1];
            // sign·(θ_a − θ_b + sign·d)
            let (orient, form) = LinearForm::oriented(a as u8 + 1, b as u8 + 1, sign as i64 * d);
            if (orient as i64 * sign as i64) < 0 && m % 2 == 1 {
                num = num.neg();
            }
            den.push((form, m));
        }
        let mut general = if self.den_general.is_one() {
            Poly::one()
        } else {
            self.den_general.substitute(&images)
        };
        if !general.is_one() {
            let (s, g) = general.make_monic();
            num = num.scale(&s.recip());
            general = g;
        }
        Coefficient {
            nvars: self.nvars,
            num,
            den: merge_forms(den, Vec::new()),
            den_general: general,
        }
    }

    /// `θ_a ↦ θ_a + μ_a`.
    pub fn shift(&self, mu: &Weight) -> Coefficient {
        if mu.is_zero() || self.as_constant().is_some() {
            return self.clone();
        }
        let n = self.n();
        assert!(mu.n() <= n, "weight rank exceeds ring size");
        let perm: Vec<usize> = (0..n).collect();
        let offs: Vec<i64> = (0..n).map(|k| mu.coords().get(k).copied().unwrap_or(0) as i64).collect();
        self.substitute_affine(1, &perm, &offs)
    }

    /// Action of a permutation `σ` (`sigma[k]` is the 0-based image of `k`).
    /// Shifted: `θ_k ↦ θ_{σ(k)}`. Unshifted: `h_k ↦ h_{σ(k)}`, that is
    /// `θ_k ↦ θ_{σ(k)} + σ(k) − k`.
    pub fn weyl_act(&self, sigma: &[usize], shifted: bool) -> Coefficient {
        let n = self.n();
        let offs: Vec<i64> = if shifted {
            vec![0; n]
        } else {
            (0..n).map(|k| sigma[k] as i64 - k as i64).collect()
        };
        self.substitute_affine(1, sigma, &offs)
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        let mut den = self.den_general.eval(point);
        for (lf, m) in &self.den {
            den *= num_traits::pow(lf.eval(point), *m as usize);
        }
        if den.is_zero() {
            return Err(Error::PoleHit);
        }
        Ok(self.num.eval(point) / den)
    }

    /// Writes the canonical text form, e.g. `-2*th(1,2)/((th(1,2)-1)*th(1,3)^2)`.
    pub fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let n = self.n();
        let (scalar, forms, rest) = split_linear(&self.num, n);
        let mut factors: Vec<String> = Vec::new();
        for (lf, m) in &forms {
            factors.push(power_text(&paren_form(lf), *m));
        }
        let rest_const = rest.as_constant();
        let mut num_text = String::new();
        let mut scalar = scalar;
        if let Some(rc) = &rest_const {
            scalar *= rc;
        } else if factors.is_empty() {
            // A bare polynomial is printed expanded with the scalar folded in.
            let p = rest.scale(&scalar);
            scalar = Rat::one();
            num_text = p.to_string();
            if p.len() > 1 && (!self.den.is_empty() || !self.den_general.is_one()) {
                num_text = format!("({num_text})");
            }
        } else {
            factors.push(format!("({rest})"));
        }
        if num_text.is_empty() {
            let neg = scalar.is_negative();
            let abs = scalar.abs();
            if neg {
                num_text.push('-');
            }
            if factors.is_empty() {
                num_text.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    num_text.push_str(&format!("{abs}*"));
                }
                num_text.push_str(&factors.join("*"));
            }
        }
        f.write_str(&num_text)?;
        let mut den: Vec<String> = self.den.iter().map(|(lf, m)| power_text(&paren_form(lf), *m)).collect();
        if !self.den_general.is_one() {
            den.push(format!("({})", self.den_general));
        }
        match den.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", den[0]),
            _ => write!(f, "/({})", den.join("*")),
        }
    }

    /// Whether every denominator factor is `θ_ij + c` with `i < j` and `c`
    /// accepted by `ok`.
    pub fn denominators_within(&self, ok: impl Fn(i64) -> bool) -> bool {
        self.den_general.is_one() && self.den.iter().all(|(lf, _)| ok(lf.c))
    }
}

fn paren_form(lf: &LinearForm) -> String {
    if lf.c == 0 {
        lf.to_string()
    } else {
        format!("({lf})")
    }
}

fn power_text(base: &str, m: u32) -> String {
    if m == 1 {
        base.to_string()
    } else {
        format!("{base}^{m}")
    }
}

fn forms_poly(forms: &[(LinearForm, u32)]) -> Poly {
    forms
        .iter()
        .fold(Poly::one(), |acc, (lf, m)| acc.mul(&lf.to_poly().pow(*m)))
}

/// Sorted union with summed multiplicities.
fn merge_forms(mut a: Vec<(LinearForm, u32)>, b: Vec<(LinearForm, u32)>) -> Vec<(LinearForm, u32)> {
    a.extend(b);
    a.sort_by_key(|(lf, _)| *lf);
    let mut out: Vec<(LinearForm, u32)> = Vec::with_capacity(a.len());
    for (lf, m) in a {
        match out.last_mut() {
            Some((l, lm)) if *l == lf => *lm += m,
            _ => out.push((lf, m)),
        }
    }
    out.retain(|(_, m)| *m > 0);
    out
}

/// Least common multiple of two sorted factor lists, the cofactors
/// `lcm/a`, `lcm/b`, and the forms present in both at equal multiplicity.
#[allow(clippy::type_complexity)]
fn lcm_forms(
    a: &[(LinearForm, u32)],
    b: &[(LinearForm, u32)],
) -> (Vec<(LinearForm, u32)>, Vec<(LinearForm, u32)>, Vec<(LinearForm, u32)>, Vec<LinearForm>) {
    let (mut lcm, mut fa, mut fb, mut shared) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() || ib < b.len() {
        let ord = match (a.get(ia), b.get(ib)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Less => {
                lcm.push(a[ia]);
                fb.push(a[ia]);
                ia += 1;
            }
            std::cmp::Ordering::Greater => {
                lcm.push(b[ib]);
                fa.push(b[ib]);
                ib += 1;
            }
            std::cmp::Ordering::Equal => {
                let (lf, ma) = a[ia];
                let mb = b[ib].1;
                lcm.push((lf, ma.max(mb)));
                if ma > mb {
                    fb.push((lf, ma - mb));
                } else if mb > ma {
                    fa.push((lf, mb - ma));
                } else {
                    shared.push(lf);
                }
                ia += 1;
                ib += 1;
            }
        }
    }
    (lcm, fa, fb, shared)
}

fn probe_point(n: usize) -> Vec<Rat> {
    PROBE.iter().take(n).map(|&v| rat(v)).collect()
}

/// Whether `lf` can divide `p`: evaluates `p` on a point of the hyperplane.
fn may_divide(p: &Poly, lf: &LinearForm, n: usize) -> bool {
    let mut point = probe_point(n);
    point[lf.i as usize - 1] = &point[lf.j as usize - 1] - rat(lf.c);
    p.eval(&point).is_zero()
}

/// Cancels forms (those selected by `test`) against `num`.
fn cancel(
    mut num: Poly,
    forms: Vec<(LinearForm, u32)>,
    test: impl Fn(&LinearForm) -> bool,
) -> (Poly, Vec<(LinearForm, u32)>) {
    if num.is_zero() {
        return (num, Vec::new());
    }
    let n = MAX_VARS;
    let mut out = Vec::with_capacity(forms.len());
    for (lf, mut m) in forms {
        if test(&lf) && num.as_constant().is_none() {
            while m > 0 && may_divide(&num, &lf, n) {
                match num.exact_div(&lf.to_poly()) {
                    Some(q) => {
                        num = q;
                        m -= 1;
                    }
                    None => break,
                }
            }
        }
        if m > 0 {
            out.push((lf, m));
        }
    }
    (num, out)
}

/// Splits `p = scalar · Π forms · rest` with `rest` monic and free of
/// `θ_i − θ_j + c` factors for `|c| ≤ SPLIT_RANGE`.
pub(crate) fn split_linear(p: &Poly, n: usize) -> (Rat, Vec<(LinearForm, u32)>, Poly) {
    let mut rest = p.clone();
    let mut forms = Vec::new();
    if rest.total_degree() > 0 {
        for i in 0..n {
            for j in (i + 1)..n {
                if rest.degree_in(i) == 0 || rest.degree_in(j) == 0 {
                    continue;
                }
                for c in -SPLIT_RANGE..=SPLIT_RANGE {
                    let lf = LinearForm {
                        i: i as u8 + 1,
                        j: j as u8 + 1,
                        c,
                    };
                    let mut m = 0;
                    while rest.degree_in(i) > 0 && may_divide(&rest, &lf, MAX_VARS) {
                        match rest.exact_div(&lf.to_poly()) {
                            Some(q) => {
                                rest = q;
                                m += 1;
                            }
                            None => break,
                        }
                    }
                    if m > 0 {
                        forms.push((lf, m));
                    }
                }
            }
        }
    }
    let (scalar, rest) = rest.make_monic();
    (scalar, forms, rest)
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        if self.den_general.is_one() && other.den_general.is_one() {
            return self.num == other.num && self.den == other.den;
        }
        self.num.mul(&other.den_poly()) == other.num.mul(&self.den_poly())
    }
}

impl Eq for Coefficient {}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f)
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        self.checked_add(rhs).expect("coefficient ring mismatch")
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self.checked_add(&-rhs).expect("coefficient ring mismatch")
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        self.checked_mul(rhs).expect("coefficient ring mismatch")
    }
}

/// Panics on division by zero; use [`Coefficient::checked_div`] otherwise.
impl Div for &Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        self.checked_div(rhs).expect("coefficient division failed")
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        let mut c = self.clone();
        c.num = c.num.neg();
        c
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: &Coefficient) -> Coefficient {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

/// Binary operations accepted by [`arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Field arithmetic with ring and zero-division checks. `Neg` ignores `b`.
pub fn arith(a: &Coefficient, b: &Coefficient, op: ArithOp) -> Result<Coefficient> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_add(&-b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
        ArithOp::Neg => Ok(-a),
    }
}
