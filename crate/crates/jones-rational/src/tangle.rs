//! Transfer-matrix calculus for rational tangles: tangle types, writhe
//! vectors, the B-matrix family, and structural recognition of B-products.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{IntSeq, Rat};
use crate::ring::{qnumber, GaussInt, LaurentU, UnitFactor};

/// Boundary pairing of a (2,2)-tangle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TangleType {
    Zero,
    One,
    Infinity,
}

impl TangleType {
    /// Type addition: mod-2 addition extended by `x + oo = oo`.
    pub fn add(self, other: TangleType) -> TangleType {
        use TangleType::*;
        match (self, other) {
            (Infinity, _) | (_, Infinity) => Infinity,
            (One, One) => Zero,
            (Zero, x) | (x, Zero) => x,
        }
    }

    /// Quarter-turn rotation swaps 0 and infinity, fixes 1.
    pub fn rotate(self) -> TangleType {
        use TangleType::*;
        match self {
            Zero => Infinity,
            Infinity => Zero,
            One => One,
        }
    }
}

/// The mod-2 evaluation of a reduced fraction.
pub fn tangle_type_of(r: Rat) -> TangleType {
    type_of_pair(r.num() as i128, r.den() as i128)
}

fn type_of_pair(p: i128, q: i128) -> TangleType {
    if p.rem_euclid(2) == 0 {
        TangleType::Zero
    } else if q.rem_euclid(2) == 0 {
        TangleType::Infinity
    } else {
        TangleType::One
    }
}

/// Writhes of the numerator and denominator closures.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WritheVec {
    pub wn: i64,
    pub wd: i64,
}

impl WritheVec {
    fn swap(self) -> Self {
        WritheVec {
            wn: self.wd,
            wd: self.wn,
        }
    }
}

/// Writhe vector of the rational tangle built from a twist-box sequence.
///
/// Builds the tangle from the innermost entry out; each step rotates and
/// then adds a twist box, branching on the rotated tangle's type. Types of
/// the intermediate tangles come from the running continued fraction.
pub fn writhe_vector(seq: &IntSeq) -> WritheVec {
    let mut w = WritheVec { wn: 0, wd: 0 };
    let (mut p, mut q): (i128, i128) = (1, 0);
    for &n in seq.entries().iter().rev() {
        w = w.swap();
        (p, q) = (-q, p);
        let rotated = type_of_pair(p, q);
        if rotated != TangleType::Infinity {
            w.wn += n;
            w.wd -= n;
        } else {
            if n.rem_euclid(2) == 1 {
                w = w.swap();
            }
            w.wn -= n;
            w.wd -= n;
        }
        p += (n as i128) * q;
    }
    w
}

/// A 2x2 matrix over the Laurent ring in `u`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2U {
    pub a11: LaurentU,
    pub a12: LaurentU,
    pub a21: LaurentU,
    pub a22: LaurentU,
}

impl Mat2U {
    pub fn identity() -> Self {
        Mat2U {
            a11: LaurentU::one(),
            a12: LaurentU::zero(),
            a21: LaurentU::zero(),
            a22: LaurentU::one(),
        }
    }

    pub fn mul(&self, rhs: &Mat2U) -> Mat2U {
        Mat2U {
            a11: &(&self.a11 * &rhs.a11) + &(&self.a12 * &rhs.a21),
            a12: &(&self.a11 * &rhs.a12) + &(&self.a12 * &rhs.a22),
            a21: &(&self.a21 * &rhs.a11) + &(&self.a22 * &rhs.a21),
            a22: &(&self.a21 * &rhs.a12) + &(&self.a22 * &rhs.a22),
        }
    }

    pub fn neg(&self) -> Mat2U {
        Mat2U {
            a11: -&self.a11,
            a12: -&self.a12,
            a21: -&self.a21,
            a22: -&self.a22,
        }
    }

    pub fn det(&self) -> LaurentU {
        &(&self.a11 * &self.a22) - &(&self.a12 * &self.a21)
    }

    pub fn transpose(&self) -> Mat2U {
        Mat2U {
            a11: self.a11.clone(),
            a12: self.a21.clone(),
            a21: self.a12.clone(),
            a22: self.a22.clone(),
        }
    }

    /// Entrywise `i -> -i` followed by transpose (the `*` of the calculus).
    pub fn conj_transpose(&self) -> Mat2U {
        Mat2U {
            a11: self.a11.conj_i(),
            a12: self.a21.conj_i(),
            a21: self.a12.conj_i(),
            a22: self.a22.conj_i(),
        }
    }

    /// Entrywise `u -> u^-1`.
    pub fn bar_u(&self) -> Mat2U {
        Mat2U {
            a11: self.a11.bar_u(),
            a12: self.a12.bar_u(),
            a21: self.a21.bar_u(),
            a22: self.a22.bar_u(),
        }
    }

    /// Row vector times matrix times column vector.
    pub fn sandwich(&self, left: (&LaurentU, &LaurentU), right: (&LaurentU, &LaurentU)) -> LaurentU {
        let top = &(&self.a11 * right.0) + &(&self.a12 * right.1);
        let bot = &(&self.a21 * right.0) + &(&self.a22 * right.1);
        &(left.0 * &top) + &(left.1 * &bot)
    }
}

// Matrices serialize as four polynomial strings for debugging.
impl fmt::Display for Mat2U {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

/// `d = i(u^-1 - u)`, the loop value of the bracket calculus.
pub fn loop_value() -> LaurentU {
    LaurentU::from_terms([(-1, GaussInt::I), (1, GaussInt::new(0, -1))])
}

/// The transfer matrix `B_n = [[ [n], i u^-n ], [ i u^n, 0 ]]`.
pub fn b_matrix(n: i64) -> Mat2U {
    Mat2U {
        a11: qnumber(n),
        a12: LaurentU::monomial(-n, GaussInt::I),
        a21: LaurentU::monomial(n, GaussInt::I),
        a22: LaurentU::zero(),
    }
}

/// The ordered product `B_{n_k} ... B_{n_1}` (leftmost display entry is the
/// leftmost factor); the empty sequence gives the identity.
pub fn b_product(seq: &IntSeq) -> Mat2U {
    let mut acc = Mat2U::identity();
    for &n in seq.entries() {
        acc = acc.mul(&b_matrix(n));
    }
    acc
}

/// Kauffman bracket vector of a twist-box sequence: the column
/// `swap * B_{n_k} ... B_{n_1} * (1,0)^T` together with the symbolic unit
/// prefactor `(i A^-1)^(sum n) (-i)^k`.
pub fn bracket_vector(seq: &IntSeq) -> ((LaurentU, LaurentU), UnitFactor) {
    let m = b_product(seq);
    let sum: i64 = seq.sum();
    let k = seq.len() as i64;
    // (i A^-1)^sum * (-i)^k = i^(sum + 3k) * A^(-sum)
    let unit = UnitFactor::new(sum + 3 * k, -sum);
    ((m.a21, m.a11), unit)
}

/// First-row data `(alpha, beta)` of a matrix in the structural form shared
/// by all B-products: real diagonal, `i`-times-real off-diagonal, with the
/// lower row determined by the upper.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CForm {
    pub alpha: LaurentU,
    pub beta: LaurentU,
}

impl CForm {
    /// Extract `(alpha, beta)` if the matrix has the required entry shape;
    /// structural constraints are checked separately by [`c_form_verify`].
    pub fn read_rows(m: &Mat2U) -> Option<(CForm, LaurentU, LaurentU)> {
        if !m.a11.is_real() || !m.a22.is_real() {
            return None;
        }
        let neg_i = LaurentU::monomial(0, GaussInt::new(0, -1));
        let beta = &neg_i * &m.a12;
        let gamma = &neg_i * &m.a21;
        if !beta.is_real() || !gamma.is_real() {
            return None;
        }
        Some((
            CForm {
                alpha: m.a11.clone(),
                beta,
            },
            gamma,
            m.a22.clone(),
        ))
    }
}

/// Check the structural form of a B-product: the lower row is determined by
/// the upper via
/// `gamma = beta' + (alpha' - alpha)/(u - u^-1)`,
/// `delta = alpha' + (beta - beta')/(u - u^-1)`,
/// and the first row satisfies the unit-determinant relation
/// `alpha alpha' + beta beta' + (alpha' beta - alpha beta')/(u - u^-1) = 1`
/// (primes are `u -> u^-1`). All checks are cross-multiplied, never divided.
pub fn c_form_verify(m: &Mat2U) -> bool {
    let Some((cf, gamma, delta)) = CForm::read_rows(m) else {
        return false;
    };
    let (alpha, beta) = (&cf.alpha, &cf.beta);
    let alpha_bar = alpha.bar_u();
    let beta_bar = beta.bar_u();
    let shell = &LaurentU::monomial(1, GaussInt::ONE) - &LaurentU::monomial(-1, GaussInt::ONE);

    let lhs1 = &(&gamma - &beta_bar) * &shell;
    let rhs1 = &alpha_bar - alpha;
    if lhs1 != rhs1 {
        return false;
    }
    let lhs2 = &(&delta - &alpha_bar) * &shell;
    let rhs2 = beta - &beta_bar;
    if lhs2 != rhs2 {
        return false;
    }
    let quad = &(&(alpha * &alpha_bar) + &(beta * &beta_bar)) - &LaurentU::one();
    let cross = &(&alpha_bar * beta) - &(alpha * &beta_bar);
    (&(&quad * &shell) + &cross).is_zero()
}

/// Recognize a B-product with vanishing upper-left entry as
/// `sign * (-1) * B_0 B_n B_0`, reading `beta = sign * u^n` off the
/// upper-right entry.
pub fn c0_recognize(m: &Mat2U) -> Result<(i64, i64)> {
    if !m.a11.is_zero() {
        return Err(Error::NotC0);
    }
    let terms = m.a12.terms();
    if terms.len() != 1 {
        return Err(Error::NotC0);
    }
    let (n, c) = terms[0];
    let sign = match (c.re, c.im) {
        (0, 1) => 1,
        (0, -1) => -1,
        _ => return Err(Error::NotC0),
    };
    // sign * (-1) * B_0 B_n B_0 = sign * [[0, i u^n], [i u^-n, [n]]]
    let expect = Mat2U {
        a11: LaurentU::zero(),
        a12: LaurentU::monomial(n, GaussInt::new(0, sign)),
        a21: LaurentU::monomial(-n, GaussInt::new(0, sign)),
        a22: qnumber(n).mul_monomial(0, GaussInt::real(sign)),
    };
    if *m != expect {
        return Err(Error::NotC0);
    }
    Ok((sign, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::eval_cf;

    fn seq(v: &[i64]) -> IntSeq {
        IntSeq::from(v.to_vec())
    }

    fn one() -> LaurentU {
        LaurentU::one()
    }

    fn zero() -> LaurentU {
        LaurentU::zero()
    }

    #[test]
    fn tangle_types() {
        assert_eq!(tangle_type_of(Rat::new(3, 2)), TangleType::Infinity);
        assert_eq!(tangle_type_of(Rat::new(1, 1)), TangleType::One);
        assert_eq!(tangle_type_of(Rat::new(2, 1)), TangleType::Zero);
        assert_eq!(tangle_type_of(Rat::INFINITY), TangleType::Infinity);
    }

    #[test]
    fn writhe_of_twist_box() {
        for n in -5..=5 {
            let w = writhe_vector(&seq(&[n]));
            assert_eq!((w.wn, w.wd), (n, -n));
        }
    }

    #[test]
    fn writhe_examples() {
        let w = writhe_vector(&seq(&[2, 2]));
        assert_eq!(w.wn, -4);
        let w = writhe_vector(&seq(&[3, 2]));
        assert_eq!((w.wn, w.wd), (-1, -5));
    }

    #[test]
    fn writhe_even_sequences_sum_rule() {
        // wN = -sum(n) for even entries, even length
        let evens: Vec<i64> = (-6..=6).filter(|n| n % 2 == 0).collect();
        for &a in &evens {
            for &b in &evens {
                for &c in &evens {
                    for &d in &evens {
                        let s = seq(&[a, b, c, d]);
                        assert_eq!(writhe_vector(&s).wn, -(a + b + c + d));
                    }
                }
            }
        }
    }

    #[test]
    fn b_matrix_examples() {
        let b0 = b_matrix(0);
        assert_eq!(b0.a11, zero());
        assert_eq!(b0.a12, LaurentU::monomial(0, GaussInt::I));
        assert_eq!(b0.a21, LaurentU::monomial(0, GaussInt::I));
        assert_eq!(b0.a22, zero());

        let b1 = b_matrix(1);
        assert_eq!(b1.a11, one());
        assert_eq!(b1.a12, LaurentU::monomial(-1, GaussInt::I));
        assert_eq!(b1.a21, LaurentU::monomial(1, GaussInt::I));

        for n in -5..=5 {
            assert_eq!(b_matrix(n).det(), one(), "det B_{n} != 1");
        }
    }

    #[test]
    fn b_product_identity_and_b0b0() {
        assert_eq!(b_product(&IntSeq::empty()), Mat2U::identity());
        assert_eq!(b_product(&seq(&[0, 0])), Mat2U::identity().neg());
    }

    #[test]
    fn b_product_evaluates_continued_fraction_at_u_one() {
        // At u = 1 the product column is (p, iq) for the raw fraction pair.
        for entries in [
            vec![2, 2],
            vec![3, 2],
            vec![-2, 5, 1],
            vec![2, 3, 0, 2, 3, -1, 2, 3],
            vec![5, -3, -6, -4],
        ] {
            let s = seq(&entries);
            let m = b_product(&s);
            let p = m.a11.eval_at_one();
            let q = m.a21.eval_at_one();
            let (rp, rq) = crate::rational::eval_cf_raw(&s);
            assert_eq!((p.re as i128, p.im), (rp, 0));
            assert_eq!((q.im as i128, q.re), (rq, 0));
        }
    }

    #[test]
    fn bracket_vector_examples() {
        // T_1: total bracket (A, A^-1) after unit resolution
        let ((f, g), unit) = bracket_vector(&seq(&[1]));
        let (odd_f, f) = unit.resolve(&f);
        let (odd_g, g) = unit.resolve(&g);
        assert!(odd_f && odd_g);
        assert_eq!(f, one()); // A * 1 = A
        let a_inv = LaurentU::monomial(-1, GaussInt::new(0, -1)); // A * (-i u^-1) = A^-1
        assert_eq!(g, a_inv);

        // T_infinity: vector (0, 1), trivial unit
        let ((f, g), unit) = bracket_vector(&IntSeq::empty());
        assert_eq!((f, g), (zero(), one()));
        assert_eq!(unit, UnitFactor::trivial());

        // T_0: vector (1, 0) after unit resolution
        let ((f, g), unit) = bracket_vector(&seq(&[0]));
        let (odd_f, f) = unit.resolve(&f);
        let (odd_g, g) = unit.resolve(&g);
        assert!(!odd_f && !odd_g);
        assert_eq!((f, g), (one(), zero()));
    }

    #[test]
    fn conj_transpose_negates_index() {
        // B_n^* = -B_{-n}
        for n in -8..=8 {
            assert_eq!(b_matrix(n).conj_transpose(), b_matrix(-n).neg());
        }
    }

    #[test]
    fn b0_conjugation_adds_indices() {
        // B_n B_0 B_m = -B_{n+m}
        for n in -8..=8 {
            for m in -8..=8 {
                let prod = b_matrix(n).mul(&b_matrix(0)).mul(&b_matrix(m));
                assert_eq!(prod, b_matrix(n + m).neg());
            }
        }
    }

    #[test]
    fn rank_one_decomposition() {
        // i d B_n = u^n (1,-d)^T (1,0) - u^-n (1,0)^T (1,d)
        let d = loop_value();
        let i = LaurentU::monomial(0, GaussInt::I);
        let id = &i * &d;
        for n in -8..=8 {
            let b = b_matrix(n);
            let lhs = Mat2U {
                a11: &id * &b.a11,
                a12: &id * &b.a12,
                a21: &id * &b.a21,
                a22: &id * &b.a22,
            };
            let un = LaurentU::monomial(n, GaussInt::ONE);
            let uneg = LaurentU::monomial(-n, GaussInt::ONE);
            let rhs = Mat2U {
                a11: &un - &uneg,
                a12: -&(&uneg * &d),
                a21: -&(&un * &d),
                a22: zero(),
            };
            assert_eq!(lhs, rhs, "decomposition fails at n = {n}");
        }
    }

    #[test]
    fn c_form_examples() {
        assert!(c_form_verify(&Mat2U::identity()));
        for n in -5..=5 {
            assert!(c_form_verify(&b_matrix(n)));
        }
        let bad = Mat2U {
            a11: one(),
            a12: zero(),
            a21: zero(),
            a22: &one() + &one(),
        };
        assert!(!c_form_verify(&bad));
    }

    #[test]
    fn c_form_holds_on_random_products() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let len = (next() % 7) as usize;
            let entries: Vec<i64> = (0..len).map(|_| (next() % 11) as i64 - 5).collect();
            assert!(c_form_verify(&b_product(&seq(&entries))), "fails on {entries:?}");
        }
    }

    #[test]
    fn c0_examples() {
        let m = b_matrix(0).mul(&b_matrix(3)).mul(&b_matrix(0)).neg();
        assert_eq!(c0_recognize(&m), Ok((1, 3)));
        assert_eq!(c0_recognize(&b_matrix(0)), Ok((1, 0)));
        assert_eq!(c0_recognize(&b_matrix(2)), Err(Error::NotC0));
        // alpha = 0 but beta not a unit monomial
        let junk = Mat2U {
            a11: zero(),
            a12: LaurentU::from_terms([(0, GaussInt::I), (2, GaussInt::I)]),
            a21: zero(),
            a22: zero(),
        };
        assert_eq!(c0_recognize(&junk), Err(Error::NotC0));
    }

    #[test]
    fn c0_roundtrip() {
        for sign in [1i64, -1] {
            for n in -6..=6 {
                let mut m = b_matrix(0).mul(&b_matrix(n)).mul(&b_matrix(0));
                if sign == 1 {
                    m = m.neg();
                }
                assert_eq!(c0_recognize(&m), Ok((sign, n)));
            }
        }
    }

    #[test]
    fn writhe_type_tracking_matches_eval_cf_prefixes() {
        // the running fraction agrees with eval_cf on each suffix
        let s = seq(&[5, -3, 0, 2, 1]);
        for cut in 0..=s.len() {
            let suffix = seq(&s[s.len() - cut..]);
            let _ = eval_cf(&suffix); // must not fault
        }
        let _ = writhe_vector(&s);
    }
}
