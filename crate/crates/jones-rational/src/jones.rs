//! Jones polynomials of rational knots by three independent routes:
//! the general transfer-matrix formula, its even-sequence simplification,
//! and a subset-sum formula over halved twist counts. All outputs live in
//! the normalized `t`-variable; `u`-valued intermediates never escape.

use crate::error::{Error, Result};
use crate::rational::{even_cf, eval_cf, make_q_even, IntSeq};
use crate::ring::{GaussInt, LaurentT, LaurentU};
use crate::tangle::{b_product, loop_value, writhe_vector};
use crate::ring::qnumber;

/// Halved entries `(m_2k, ..., m_1)` of an even-entry, even-length sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MSeq {
    entries: Vec<i64>,
}

impl MSeq {
    /// Wrap halved entries; the length must be even.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() % 2 != 0 {
            return Err(Error::BadParity);
        }
        Ok(MSeq { entries })
    }

    /// Halve an even-entry, even-length sequence.
    pub fn from_even_seq(seq: &IntSeq) -> Result<Self> {
        if seq.len() % 2 != 0 || seq.iter().any(|n| n % 2 != 0) {
            return Err(Error::BadParity);
        }
        Ok(MSeq {
            entries: seq.iter().map(|n| n / 2).collect(),
        })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// The twist-box sequence `(2 m_2k, ..., 2 m_1)`.
    pub fn to_seq(&self) -> IntSeq {
        self.entries.iter().map(|m| 2 * m).collect()
    }
}

/// An admissible subset of positions `1..=2k`: minimal element odd, maximal
/// element even, with `p_count` one more than its parity changes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetT {
    positions: Vec<usize>,
    p_count: usize,
}

impl SubsetT {
    /// Validate and build from ascending positions.
    pub fn new(positions: Vec<usize>) -> Option<Self> {
        if positions.is_empty()
            || positions.windows(2).any(|w| w[0] >= w[1])
            || positions[0] % 2 == 0
            || positions[positions.len() - 1] % 2 == 1
        {
            return None;
        }
        let changes = positions
            .windows(2)
            .filter(|w| w[0] % 2 != w[1] % 2)
            .count();
        let p_count = changes + 1;
        debug_assert_eq!(p_count % 2, 0);
        Some(SubsetT { positions, p_count })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn p_count(&self) -> usize {
        self.p_count
    }
}

/// Enumerate all admissible subsets of `1..=n` (test oracle scale).
pub fn admissible_subsets(n: usize) -> Vec<SubsetT> {
    assert!(n < 24, "oracle enumeration is exponential");
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let positions: Vec<usize> = (1..=n).filter(|r| mask >> (r - 1) & 1 == 1).collect();
        if let Some(t) = SubsetT::new(positions) {
            out.push(t);
        }
    }
    out
}

fn t_shell_one() -> LaurentT {
    // t + 1 + t^-1
    LaurentT::from_terms([(1, 1), (0, 1), (-1, 1)])
}

fn t_shell_two() -> LaurentT {
    // t + 2 + t^-1
    LaurentT::from_terms([(1, 1), (0, 2), (-1, 1)])
}

/// The subset-sum formula for `K = R(2 m_2k, ..., 2 m_1)^N`:
///
/// `V = 1 - (t+1+t^-1) * sum_T (t+2+t^-1)^(-p(T)/2) * prod_{r in T} (t^(-2 m_r) - 1)`
///
/// summed over subsets with odd minimum and even maximum. Subsets are walked
/// window-wise from each odd start, extending right and emitting a term at
/// every even end; factors that vanish prune the walk. Summands are grouped
/// by `p(T)` and divided exactly once per group.
pub fn jones_subsets(m: &MSeq) -> Result<LaurentT> {
    let n2k = m.entries.len();
    let k = n2k / 2;
    // factor at position r (1-indexed from the innermost entry)
    let factor = |r: usize| -> LaurentT {
        let mr = m.entries[n2k - r];
        LaurentT::from_terms([(-2 * mr, 1), (0, -1)])
    };
    let factors: Vec<LaurentT> = (1..=n2k).map(factor).collect();

    let mut buckets: Vec<LaurentT> = vec![LaurentT::zero(); k + 1];
    // stack of (next position to consider, parity of last chosen, runs, product)
    fn walk(
        factors: &[LaurentT],
        buckets: &mut [LaurentT],
        next: usize,
        last_parity: usize,
        runs: usize,
        prod: &LaurentT,
    ) {
        if next > factors.len() {
            return;
        }
        for r in next..=factors.len() {
            let f = &factors[r - 1];
            if f.is_zero() {
                continue;
            }
            let runs_here = runs + usize::from(r % 2 != last_parity);
            let prod_here = prod * f;
            if r % 2 == 0 {
                let idx = runs_here / 2;
                buckets[idx] = &buckets[idx] + &prod_here;
            }
            walk(factors, buckets, r + 1, r % 2, runs_here, &prod_here);
        }
    }
    for o in (1..=n2k).step_by(2) {
        let f = &factors[o - 1];
        if f.is_zero() {
            continue;
        }
        walk(&factors, &mut buckets, o + 1, 1, 1, f);
    }

    let shell2 = t_shell_two();
    let mut denom = LaurentT::one();
    let mut total = LaurentT::zero();
    for bucket in buckets.iter().skip(1) {
        denom = &denom * &shell2;
        if !bucket.is_zero() {
            total = &total + &bucket.exact_div(&denom)?;
        }
    }
    Ok(&LaurentT::one() - &(&t_shell_one() * &total))
}

/// The general formula: sign and `u`-power normalisation of the bracket
/// scalar `(1, d) B_{n_k} ... B_{n_1} (1, 0)^T` by the numerator-closure
/// writhe. Both normalisation exponents are asserted integral.
pub fn jones_general(seq: &IntSeq) -> Result<LaurentT> {
    let r = eval_cf(seq);
    if r.num().rem_euclid(2) == 0 {
        return Err(Error::NotAKnot(r.num(), r.den()));
    }
    let w = writhe_vector(seq).wn;
    let sum: i64 = seq.sum();
    let k = seq.len() as i64;

    let sign_num = w + sum - 2 * k;
    if sign_num.rem_euclid(4) != 0 {
        return Err(Error::IntegralityViolation);
    }
    let sign = if (sign_num / 4).rem_euclid(2) == 1 { -1 } else { 1 };
    let u_num = 3 * w + sum;
    if u_num.rem_euclid(2) != 0 {
        return Err(Error::IntegralityViolation);
    }
    let u_exp = -u_num / 2;

    let m = b_product(seq);
    let d = loop_value();
    let scalar = &m.a11 + &(&d * &m.a21);
    let normalized = scalar.mul_monomial(u_exp, GaussInt::real(sign));
    normalized.to_t().map_err(|_| Error::IntegralityViolation)
}

/// The even-sequence formula `(-1)^(k/2) u^(sum n) (1, d) B ... (1, 0)^T`.
pub fn jones_even(seq: &IntSeq) -> Result<LaurentT> {
    if seq.len() % 2 != 0 || seq.iter().any(|n| n % 2 != 0) {
        return Err(Error::BadParity);
    }
    let k = seq.len() as i64;
    let sign = if (k / 2).rem_euclid(2) == 1 { -1 } else { 1 };
    let m = b_product(seq);
    let d = loop_value();
    let scalar = &m.a11 + &(&d * &m.a21);
    let normalized = scalar.mul_monomial(seq.sum(), GaussInt::real(sign));
    normalized.to_t().map_err(|_| Error::IntegralityViolation)
}

/// Jones polynomial of the knot `K_{p/q}`: pick the even representative of
/// `q` mod `p`, expand as an even continued fraction, and evaluate. The
/// result only depends on the Schubert class.
pub fn jones_knot(p: i64, q: i64) -> Result<LaurentT> {
    if p <= 0 || p % 2 == 0 || gcd(p, q) != 1 {
        return Err(Error::NotAKnot(p, q));
    }
    let r = make_q_even(p, q);
    let seq = even_cf(r)?;
    jones_even(&seq)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Knot determinant `|V(-1)|`; equals `p` for `K_{p/q}`.
pub fn det_of(p: i64, q: i64) -> Result<i64> {
    Ok(jones_knot(p, q)?.eval_int(-1).abs())
}

/// Exponent span of a nonzero polynomial; the crossing number for rational
/// knots.
pub fn jones_span(v: &LaurentT) -> i64 {
    assert!(!v.is_zero(), "span of the zero polynomial");
    v.max_exp().unwrap() - v.min_exp().unwrap()
}

/// Find `(s, n)` with `v2 = s * t^n * v1`, if any. For two knot Jones
/// polynomials a hit forces `s = +1, n = 0`.
pub fn equal_up_to_unit(v1: &LaurentT, v2: &LaurentT) -> Option<(i64, i64)> {
    match (v1.is_zero(), v2.is_zero()) {
        (true, true) => return Some((1, 0)),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    let n = v2.min_exp().unwrap() - v1.min_exp().unwrap();
    if v2.max_exp().unwrap() - v1.max_exp().unwrap() != n {
        return None;
    }
    for s in [1i64, -1] {
        if *v2 == v1.mul_monomial(n, s) {
            return Some((s, n));
        }
    }
    None
}

/// Witness `a(t)` for the product identity
/// `V(t) V(t^-1) = (2 + t + t^-1) - (1 + t + t^-1) a(t) a(t^-1)`,
/// read off the upper-left entry of the even-sequence B-product. A bounded
/// unit search (`+- t^j`, `j <= 8`) backstops the direct candidate.
pub fn product_identity_witness(p: i64, q: i64) -> Result<LaurentT> {
    let v = jones_knot(p, q)?;
    let seq = even_cf(make_q_even(p, q))?;
    let alpha = b_product(&seq).a11;
    let candidate = alpha.to_t().map_err(|_| Error::NoWitness)?;

    let lhs = &v * &v.reciprocal();
    let two_shell = LaurentT::from_terms([(1, 1), (0, 2), (-1, 1)]);
    let one_shell = t_shell_one();
    let verifies = |a: &LaurentT| -> bool {
        let rhs = &two_shell - &(&one_shell * &(a * &a.reciprocal()));
        lhs == rhs
    };
    if verifies(&candidate) {
        return Ok(candidate);
    }
    for j in 0..=8 {
        for s in [1i64, -1] {
            for e in [j, -j] {
                let adjusted = candidate.mul_monomial(e, s);
                if verifies(&adjusted) {
                    return Ok(adjusted);
                }
            }
        }
    }
    Err(Error::NoWitness)
}

/// Independent expansion of the B-product column `B_{n_k} ... B_{n_1} (1,0)^T`
/// as signed monomial sums over alternating-parity subsets.
pub fn subset_expansion(seq: &IntSeq) -> (LaurentU, LaurentU) {
    let k = seq.len();
    assert!(k < 24, "subset expansion is exponential");
    let n_at = |r: usize| seq.entries()[k - r]; // 1-indexed from innermost

    let sum_over = |universe: usize, extra_exp: i64| -> LaurentU {
        let mut total = LaurentU::zero();
        for mask in 0u32..(1 << universe) {
            let chosen: Vec<usize> =
                (1..=universe).filter(|r| mask >> (r - 1) & 1 == 1).collect();
            // |S| matches the universe parity; parities alternate from odd
            if chosen.len() % 2 != universe % 2 {
                continue;
            }
            if !chosen.is_empty() {
                if chosen[0] % 2 == 0 {
                    continue;
                }
                if chosen.windows(2).any(|w| w[0] % 2 == w[1] % 2) {
                    continue;
                }
            }
            let complement: Vec<usize> =
                (1..=universe).filter(|r| mask >> (r - 1) & 1 == 0).collect();
            debug_assert_eq!(complement.len() % 2, 0);
            let mut exp = extra_exp;
            for pair in complement.chunks(2) {
                exp += n_at(pair[0]) - n_at(pair[1]);
            }
            let mut term = LaurentU::monomial(
                exp,
                GaussInt::i_pow(k as i64 - chosen.len() as i64),
            );
            for &r in &chosen {
                term = &term * &qnumber(n_at(r));
            }
            total = &total + &term;
        }
        total
    };

    let upper = sum_over(k, 0);
    let lower = if k == 0 {
        LaurentU::zero()
    } else {
        sum_over(k - 1, n_at(k))
    };
    (upper, lower)
}
