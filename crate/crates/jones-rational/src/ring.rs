//! Exact sparse Laurent-polynomial arithmetic.
//!
//! Two concrete rings are provided: [`LaurentU`], polynomials in `u, u^-1`
//! with Gaussian-integer coefficients, and [`LaurentT`], polynomials in
//! `t, t^-1` with integer coefficients. The substitution `t = -u^-2` bridges
//! them ([`LaurentU::to_t`]). All arithmetic is exact: coefficients are
//! 64-bit integers with checked operations, and any overflow aborts loudly
//! rather than wrapping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[cold]
#[inline(never)]
fn overflow() -> ! {
    panic!("exact arithmetic overflow: coefficient exceeds 64 bits");
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).unwrap_or_else(|| overflow())
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).unwrap_or_else(|| overflow())
}

fn checked_neg(a: i64) -> i64 {
    a.checked_neg().unwrap_or_else(|| overflow())
}

/// A Gaussian integer `re + im*i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn real(re: i64) -> Self {
        GaussInt { re, im: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    /// Complex conjugate, `i -> -i`.
    pub fn conj(&self) -> Self {
        GaussInt::new(self.re, checked_neg(self.im))
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(checked_add(self.re, rhs.re), checked_add(self.im, rhs.im))
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        self + (-rhs)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(checked_neg(self.re), checked_neg(self.im))
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        let re = checked_add(
            checked_mul(self.re, rhs.re),
            checked_neg(checked_mul(self.im, rhs.im)),
        );
        let im = checked_add(checked_mul(self.re, rhs.im), checked_mul(self.im, rhs.re));
        GaussInt::new(re, im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im > 0 => write!(f, "({re}+{im}i)"),
            (re, im) => write!(f, "({re}{im}i)"),
        }
    }
}

/// Merge two ascending term lists, adding coefficients and dropping zeros.
fn merge_terms<C, F>(a: &[(i64, C)], b: &[(i64, C)], combine: F) -> Vec<(i64, C)>
where
    C: Copy,
    F: Fn(Option<C>, Option<C>) -> Option<C>,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (exp, l, r) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let t = (a[i].0, Some(a[i].1), None);
            i += 1;
            t
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let t = (b[j].0, None, Some(b[j].1));
            j += 1;
            t
        } else {
            let t = (a[i].0, Some(a[i].1), Some(b[j].1));
            i += 1;
            j += 1;
            t
        };
        if let Some(c) = combine(l, r) {
            out.push((exp, c));
        }
    }
    out
}

/// Sparse Laurent polynomial in `u` over the Gaussian integers.
///
/// Terms are kept sorted by ascending exponent with no zero coefficients,
/// so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentU {
    terms: Vec<(i64, GaussInt)>,
}

impl LaurentU {
    pub fn zero() -> Self {
        LaurentU { terms: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentU::monomial(0, GaussInt::ONE)
    }

    pub fn monomial(exp: i64, coeff: GaussInt) -> Self {
        if coeff.is_zero() {
            LaurentU::zero()
        } else {
            LaurentU {
                terms: vec![(exp, coeff)],
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussInt)>>(iter: I) -> Self {
        let mut terms: Vec<(i64, GaussInt)> = iter.into_iter().collect();
        terms.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i64, GaussInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = last.1 + c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((e, c));
            }
        }
        LaurentU { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, GaussInt)] {
        &self.terms
    }

    /// All coefficients have zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    /// Substitute `u -> u^-1`, keeping `i` fixed.
    pub fn bar_u(&self) -> Self {
        let mut terms: Vec<(i64, GaussInt)> =
            self.terms.iter().map(|&(e, c)| (-e, c)).collect();
        terms.reverse();
        LaurentU { terms }
    }

    /// Substitute `i -> -i`, keeping `u` fixed.
    pub fn conj_i(&self) -> Self {
        LaurentU {
            terms: self.terms.iter().map(|&(e, c)| (e, c.conj())).collect(),
        }
    }

    /// Multiply by the monomial `coeff * u^exp`.
    pub fn mul_monomial(&self, exp: i64, coeff: GaussInt) -> Self {
        if coeff.is_zero() {
            return LaurentU::zero();
        }
        LaurentU {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (checked_add(e, exp), c * coeff))
                .collect(),
        }
    }

    /// Evaluate at `u = 1` (sum of coefficients).
    pub fn eval_at_one(&self) -> GaussInt {
        self.terms
            .iter()
            .fold(GaussInt::ZERO, |acc, &(_, c)| acc + c)
    }

    /// Rewrite in `t = -u^-2`. Requires even exponents and real coefficients.
    pub fn to_t(&self) -> Result<LaurentT> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(e, c) in &self.terms {
            if e % 2 != 0 {
                return Err(Error::OddPower(e));
            }
            if !c.is_real() {
                return Err(Error::NonReal(e));
            }
            // c * u^(-2k) = c * (-1)^k * t^k
            let k = -e / 2;
            let coeff = if k.rem_euclid(2) == 1 {
                checked_neg(c.re)
            } else {
                c.re
            };
            terms.push((k, coeff));
        }
        terms.reverse();
        Ok(LaurentT { terms })
    }
}

impl Add for &LaurentU {
    type Output = LaurentU;
    fn add(self, rhs: &LaurentU) -> LaurentU {
        LaurentU {
            terms: merge_terms(&self.terms, &rhs.terms, |l, r| {
                let s = match (l, r) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                };
                (!s.is_zero()).then_some(s)
            }),
        }
    }
}

impl Sub for &LaurentU {
    type Output = LaurentU;
    fn sub(self, rhs: &LaurentU) -> LaurentU {
        self + &(-rhs)
    }
}

impl Neg for &LaurentU {
    type Output = LaurentU;
    fn neg(self) -> LaurentU {
        LaurentU {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentU {
    type Output = LaurentU;
    fn mul(self, rhs: &LaurentU) -> LaurentU {
        if self.is_zero() || rhs.is_zero() {
            return LaurentU::zero();
        }
        // Accumulate into a dense window spanning the product's exponent range.
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms[self.terms.len() - 1].0 + rhs.terms[rhs.terms.len() - 1].0;
        let mut acc = vec![GaussInt::ZERO; (hi - lo + 1) as usize];
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &rhs.terms {
                let idx = (ea + eb - lo) as usize;
                acc[idx] = acc[idx] + ca * cb;
            }
        }
        LaurentU {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        }
    }
}

impl fmt::Display for LaurentU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, "u", |c| {
            let pure = c.re == 0 || c.im == 0;
            let (sign, body) = match (c.re, c.im) {
                (re, 0) => (re < 0, re.abs().to_string()),
                (0, 1) => (false, "i".to_string()),
                (0, -1) => (true, "i".to_string()),
                (0, im) => (im < 0, format!("{}i", im.abs())),
                _ => (false, c.to_string()),
            };
            (sign && pure, body)
        })
    }
}

/// Sparse Laurent polynomial in `t` over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct LaurentT {
    terms: Vec<(i64, i64)>,
}

impl LaurentT {
    pub fn zero() -> Self {
        LaurentT { terms: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentT::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        if coeff == 0 {
            LaurentT::zero()
        } else {
            LaurentT {
                terms: vec![(exp, coeff)],
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut terms: Vec<(i64, i64)> = iter.into_iter().collect();
        terms.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i64, i64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = checked_add(last.1, c);
                    if last.1 == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            if c != 0 {
                out.push((e, c));
            }
        }
        LaurentT { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|&(e, _)| e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// Substitute `t -> t^-1`.
    pub fn reciprocal(&self) -> Self {
        let mut terms: Vec<(i64, i64)> = self.terms.iter().map(|&(e, c)| (-e, c)).collect();
        terms.reverse();
        LaurentT { terms }
    }

    /// Multiply by the monomial `coeff * t^exp`.
    pub fn mul_monomial(&self, exp: i64, coeff: i64) -> Self {
        if coeff == 0 {
            return LaurentT::zero();
        }
        LaurentT {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (checked_add(e, exp), checked_mul(c, coeff)))
                .collect(),
        }
    }

    /// Exact evaluation at `t0` in `{1, -1}`.
    pub fn eval_int(&self, t0: i64) -> i64 {
        assert!(t0 == 1 || t0 == -1, "eval_int expects t0 = +-1");
        self.terms.iter().fold(0i64, |acc, &(e, c)| {
            let v = if t0 == -1 && e.rem_euclid(2) == 1 {
                checked_neg(c)
            } else {
                c
            };
            checked_add(acc, v)
        })
    }

    /// Exact division; `Err(NotDivisible)` when no exact quotient exists.
    pub fn exact_div(&self, divisor: &LaurentT) -> Result<LaurentT> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Ok(LaurentT::zero());
        }
        // Divide leading terms downward. An exact quotient has every exponent
        // at least min_exp(self) - min_exp(divisor); falling below that bound
        // proves inexactness and also guarantees termination.
        let (dlead_exp, dlead_coeff) = *divisor.terms.last().unwrap();
        let qe_floor = self.min_exp().unwrap() - divisor.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quot: Vec<(i64, i64)> = Vec::new();
        while !rem.is_zero() {
            let (rlead_exp, rlead_coeff) = *rem.terms.last().unwrap();
            if rlead_coeff % dlead_coeff != 0 {
                return Err(Error::NotDivisible);
            }
            let qc = rlead_coeff / dlead_coeff;
            let qe = rlead_exp - dlead_exp;
            if qe < qe_floor {
                return Err(Error::NotDivisible);
            }
            quot.push((qe, qc));
            rem = &rem - &divisor.mul_monomial(qe, qc);
        }
        quot.reverse();
        Ok(LaurentT { terms: quot })
    }

    /// Serialize as `[[exponent, coefficient], ...]` ascending by exponent.
    pub fn to_json_pairs(&self) -> Vec<[i64; 2]> {
        self.terms.iter().map(|&(e, c)| [e, c]).collect()
    }
}

impl Add for &LaurentT {
    type Output = LaurentT;
    fn add(self, rhs: &LaurentT) -> LaurentT {
        LaurentT {
            terms: merge_terms(&self.terms, &rhs.terms, |l, r| {
                let s = match (l, r) {
                    (Some(a), Some(b)) => checked_add(a, b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                };
                (s != 0).then_some(s)
            }),
        }
    }
}

impl Sub for &LaurentT {
    type Output = LaurentT;
    fn sub(self, rhs: &LaurentT) -> LaurentT {
        self + &(-rhs)
    }
}

impl Neg for &LaurentT {
    type Output = LaurentT;
    fn neg(self) -> LaurentT {
        LaurentT {
            terms: self.terms.iter().map(|&(e, c)| (e, checked_neg(c))).collect(),
        }
    }
}

impl Mul for &LaurentT {
    type Output = LaurentT;
    fn mul(self, rhs: &LaurentT) -> LaurentT {
        if self.is_zero() || rhs.is_zero() {
            return LaurentT::zero();
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms[self.terms.len() - 1].0 + rhs.terms[rhs.terms.len() - 1].0;
        let mut acc = vec![0i64; (hi - lo + 1) as usize];
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &rhs.terms {
                let idx = (ea + eb - lo) as usize;
                acc[idx] = checked_add(acc[idx], checked_mul(ca, cb));
            }
        }
        LaurentT {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        }
    }
}

impl fmt::Display for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, "t", |&c| (c < 0, c.abs().to_string()))
    }
}

/// Shared term formatter: ascending exponents, `" + "`/`" - "` separators,
/// unit coefficients elided except on the constant term.
fn fmt_terms<C, F>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(i64, C)],
    var: &str,
    coeff_parts: F,
) -> fmt::Result
where
    F: Fn(&C) -> (bool, String),
{
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (e, c)) in terms.iter().enumerate() {
        let (negative, body) = coeff_parts(c);
        if idx == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let unit = body == "1";
        match (*e, unit) {
            (0, _) => write!(f, "{body}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{body}{var}")?,
            (e, true) => write!(f, "{var}^{e}")?,
            (e, false) => write!(f, "{body}{var}^{e}")?,
        }
    }
    Ok(())
}

/// The q-number `[n] = (u^n - u^-n) / (u - u^-1)`.
pub fn qnumber(n: i64) -> LaurentU {
    use std::cmp::Ordering;
    match n.cmp(&0) {
        Ordering::Equal => LaurentU::zero(),
        Ordering::Greater => LaurentU::from_terms(
            (0..n).map(|j| (n - 1 - 2 * j, GaussInt::ONE)),
        ),
        Ordering::Less => LaurentU::from_terms(
            (0..-n).map(|j| (-n - 1 - 2 * j, GaussInt::new(-1, 0))),
        ),
    }
}

/// A unit `i^ipow * A^apow` tracked symbolically, with `A^2 = i*u`.
///
/// This is the only place the Kauffman variable `A` appears; everything
/// else closes over `u`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct UnitFactor {
    ipow: u8,
    apow: i64,
}

impl UnitFactor {
    pub fn new(ipow: i64, apow: i64) -> Self {
        UnitFactor {
            ipow: ipow.rem_euclid(4) as u8,
            apow,
        }
    }

    pub fn trivial() -> Self {
        UnitFactor { ipow: 0, apow: 0 }
    }

    pub fn ipow(&self) -> i64 {
        self.ipow as i64
    }

    pub fn apow(&self) -> i64 {
        self.apow
    }

    /// Compose two units: i-powers add mod 4, A-powers add over Z.
    pub fn compose(&self, other: &UnitFactor) -> Self {
        UnitFactor::new(
            self.ipow as i64 + other.ipow as i64,
            checked_add(self.apow, other.apow),
        )
    }

    /// Resolve `unit * x` into `A^r * y` with `r` in `{0, 1}`, using
    /// `A^2 = i*u`. Returns `(r == 1, y)`.
    pub fn resolve(&self, x: &LaurentU) -> (bool, LaurentU) {
        let r = self.apow.rem_euclid(2);
        let m = (self.apow - r) / 2;
        let coeff = GaussInt::i_pow(self.ipow as i64 + m);
        (r == 1, x.mul_monomial(m, coeff))
    }
}

impl fmt::Display for UnitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i^{} * A^{}", self.ipow, self.apow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(e: i64) -> LaurentU {
        LaurentU::monomial(e, GaussInt::ONE)
    }

    fn t(e: i64, c: i64) -> LaurentT {
        LaurentT::monomial(e, c)
    }

    #[test]
    fn difference_of_squares() {
        let a = &u(1) + &u(-1);
        let b = &u(1) - &u(-1);
        assert_eq!(&a * &b, &u(2) - &u(-2));
    }

    #[test]
    fn qnumber_product_identity() {
        // [2]*[2] = [1] + [3]
        let two = qnumber(2);
        assert_eq!(&two * &two, &qnumber(1) + &qnumber(3));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = LaurentT::from_terms([(-1, 1), (-3, 1), (-4, -1)]);
        let b = LaurentT::from_terms([(-1, -1), (-3, -1), (-4, 1)]);
        let s = &a + &b;
        assert!(s.is_zero());
        assert!(s.terms().is_empty());
    }

    #[test]
    fn qnumber_values() {
        assert!(qnumber(0).is_zero());
        assert_eq!(qnumber(3), LaurentU::from_terms([
            (2, GaussInt::ONE),
            (0, GaussInt::ONE),
            (-2, GaussInt::ONE),
        ]));
        assert_eq!(qnumber(-2), -&qnumber(2));
        assert_eq!(qnumber(1), LaurentU::one());
    }

    #[test]
    fn bar_u_examples() {
        let a = &u(2) + &LaurentU::monomial(-1, GaussInt::I);
        let expect = &u(-2) + &LaurentU::monomial(1, GaussInt::I);
        assert_eq!(a.bar_u(), expect);
        assert_eq!(a.bar_u().bar_u(), a);
        for n in -6..=6 {
            assert_eq!(qnumber(n).bar_u(), qnumber(n));
        }
    }

    #[test]
    fn conj_i_examples() {
        let iu = LaurentU::monomial(1, GaussInt::I);
        assert_eq!(iu.conj_i(), LaurentU::monomial(1, GaussInt::new(0, -1)));
        let re = LaurentU::monomial(1, GaussInt::real(3));
        assert_eq!(re.conj_i(), re);
        let mixed = &iu + &u(-2);
        assert_eq!(mixed.conj_i().conj_i(), mixed);
    }

    #[test]
    fn u_to_t_substitution() {
        assert_eq!(u(-2).to_t().unwrap(), t(1, -1));
        assert_eq!(u(4).to_t().unwrap(), t(-2, 1));
        assert_eq!(u(3).to_t(), Err(Error::OddPower(3)));
        let im = LaurentU::monomial(2, GaussInt::I);
        assert_eq!(im.to_t(), Err(Error::NonReal(2)));
    }

    #[test]
    fn exact_div_examples() {
        // (t^-2 - 1)^2 / (t + 2 + t^-1) = t^-1 - 2t^-2 + t^-3
        let sq = LaurentT::from_terms([(-2, 1), (0, -1)]);
        let num = &sq * &sq;
        let den = LaurentT::from_terms([(1, 1), (0, 2), (-1, 1)]);
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, LaurentT::from_terms([(-1, 1), (-2, -2), (-3, 1)]));
        assert_eq!(&q * &den, num);

        let a = LaurentT::from_terms([(5, 7), (-3, 2)]);
        assert_eq!(a.exact_div(&LaurentT::one()).unwrap(), a);

        let p = LaurentT::from_terms([(1, 1), (0, -1)]);
        let d = LaurentT::from_terms([(1, 1), (0, 1)]);
        assert_eq!(p.exact_div(&d), Err(Error::NotDivisible));
    }

    #[test]
    fn eval_int_examples() {
        let tref = LaurentT::from_terms([(-4, -1), (-3, 1), (-1, 1)]);
        assert_eq!(tref.eval_int(-1), -3);
        assert_eq!(tref.eval_int(1), 1);
        assert_eq!(LaurentT::zero().eval_int(-1), 0);
    }

    #[test]
    fn display_format() {
        let tref = LaurentT::from_terms([(-4, -1), (-3, 1), (-1, 1)]);
        assert_eq!(tref.to_string(), "-t^-4 + t^-3 + t^-1");
        assert_eq!(LaurentT::zero().to_string(), "0");
        assert_eq!(LaurentT::from_terms([(0, -3), (1, 2)]).to_string(), "-3 + 2t");
        assert_eq!(qnumber(3).to_string(), "u^-2 + 1 + u^2");
        let m = LaurentU::monomial(1, GaussInt::I);
        assert_eq!(m.to_string(), "iu");
        assert_eq!((-&m).to_string(), "-iu");
    }

    #[test]
    fn unit_factor_resolution() {
        // A^-1 * (i*u) = A, i.e. A^1 with coefficient 1
        let unit = UnitFactor::new(0, -1);
        let (odd, y) = unit.resolve(&LaurentU::monomial(1, GaussInt::I));
        assert!(odd);
        assert_eq!(y, LaurentU::one());
        // composition adds ipow mod 4 and apow over Z
        let a = UnitFactor::new(3, 2);
        let b = UnitFactor::new(2, -5);
        assert_eq!(a.compose(&b), UnitFactor::new(1, -3));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let big = LaurentT::monomial(0, i64::MAX);
        let _ = &big + &big;
    }

    #[test]
    fn qnumber_recurrence() {
        // [n+1] + [n-1] = (u + u^-1) [n]
        let shell = &u(1) + &u(-1);
        for n in -50..=50 {
            assert_eq!(
                &qnumber(n + 1) + &qnumber(n - 1),
                &shell * &qnumber(n),
                "recurrence fails at n = {n}"
            );
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_gauss() -> impl Strategy<Value = GaussInt> {
            (-20i64..=20, -20i64..=20).prop_map(|(re, im)| GaussInt::new(re, im))
        }

        fn arb_laurent_u() -> impl Strategy<Value = LaurentU> {
            proptest::collection::vec(((-8i64..=8), arb_gauss()), 0..6)
                .prop_map(LaurentU::from_terms)
        }

        fn arb_laurent_t() -> impl Strategy<Value = LaurentT> {
            proptest::collection::vec(((-8i64..=8), (-20i64..=20)), 0..6)
                .prop_map(LaurentT::from_terms)
        }

        proptest! {
            #[test]
            fn ring_axioms_u(a in arb_laurent_u(), b in arb_laurent_u(), c in arb_laurent_u()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a - &a, LaurentU::zero());
                prop_assert_eq!(&a * &LaurentU::one(), a.clone());
            }

            #[test]
            fn ring_axioms_t(a in arb_laurent_t(), b in arb_laurent_t(), c in arb_laurent_t()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }

            #[test]
            fn involutions_commute(a in arb_laurent_u()) {
                prop_assert_eq!(a.bar_u().bar_u(), a.clone());
                prop_assert_eq!(a.conj_i().conj_i(), a.clone());
                prop_assert_eq!(a.bar_u().conj_i(), a.conj_i().bar_u());
            }

            #[test]
            fn bar_and_conj_are_ring_maps(a in arb_laurent_u(), b in arb_laurent_u()) {
                prop_assert_eq!((&a * &b).bar_u(), &a.bar_u() * &b.bar_u());
                prop_assert_eq!((&a * &b).conj_i(), &a.conj_i() * &b.conj_i());
            }

            #[test]
            fn exact_div_roundtrip(a in arb_laurent_t(), b in arb_laurent_t()) {
                prop_assume!(!b.is_zero());
                let prod = &a * &b;
                prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
            }

            #[test]
            fn u_to_t_is_multiplicative(a in arb_laurent_u(), b in arb_laurent_u()) {
                // restrict to the even-real subring
                let a = LaurentU::from_terms(
                    a.terms().iter().map(|&(e, c)| (2 * e, GaussInt::real(c.re))));
                let b = LaurentU::from_terms(
                    b.terms().iter().map(|&(e, c)| (2 * e, GaussInt::real(c.re))));
                let lhs = (&a * &b).to_t().unwrap();
                let rhs = &a.to_t().unwrap() * &b.to_t().unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
