//! Rational numbers with a point at infinity, continued fractions, and
//! Schubert canonical forms of two-bridge knots.
//!
//! Sequences follow display order throughout: `(n_k, ..., n_1)` stores the
//! outermost entry first, and the value is
//! `n_k - 1/(n_{k-1} - 1/(... - 1/n_1))`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Modular inverse of `a` modulo `m > 0`; requires `gcd(a, m) = 1`.
pub fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "mod_inverse: arguments are not coprime");
    s0.rem_euclid(m)
}

/// A reduced rational with a point at infinity, `1/0`.
///
/// Canonical form: `gcd(|p|, |q|) = 1`, `q >= 0`, and `p > 0` when `q = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rat {
    p: i64,
    q: i64,
}

impl Rat {
    pub const INFINITY: Rat = Rat { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Self {
        assert!(p != 0 || q != 0, "0/0 is not a projective rational");
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Rat { p, q }
    }

    pub fn num(&self) -> i64 {
        self.p
    }

    pub fn den(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (ps, qs) = s
            .split_once('/')
            .ok_or_else(|| format!("expected p/q, got {s:?}"))?;
        let p: i64 = ps.trim().parse().map_err(|_| format!("bad numerator {ps:?}"))?;
        let q: i64 = qs.trim().parse().map_err(|_| format!("bad denominator {qs:?}"))?;
        if p == 0 && q == 0 {
            return Err("0/0 is not a rational".into());
        }
        Ok(Rat::new(p, q))
    }
}

/// A finite integer sequence in display order (`n_k` first, `n_1` last).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct IntSeq {
    entries: Vec<i64>,
}

impl IntSeq {
    pub fn new(entries: Vec<i64>) -> Self {
        IntSeq { entries }
    }

    pub fn empty() -> Self {
        IntSeq::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }
}

impl std::ops::Deref for IntSeq {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.entries
    }
}

impl From<Vec<i64>> for IntSeq {
    fn from(entries: Vec<i64>) -> Self {
        IntSeq { entries }
    }
}

impl<const N: usize> From<[i64; N]> for IntSeq {
    fn from(entries: [i64; N]) -> Self {
        IntSeq {
            entries: entries.to_vec(),
        }
    }
}

impl FromIterator<i64> for IntSeq {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        IntSeq {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for IntSeq {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IntSeq::empty());
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| format!("bad integer {part:?} in sequence"))
            })
            .collect::<std::result::Result<Vec<i64>, _>>()
            .map(IntSeq::from)
    }
}

/// Evaluate a continued fraction projectively; the empty sequence is infinity
/// and intermediate zeros never fault.
pub fn eval_cf(seq: &IntSeq) -> Rat {
    let (p, q) = eval_cf_raw(seq);
    let p = i64::try_from(p).unwrap_or_else(|_| overflow_cf());
    let q = i64::try_from(q).unwrap_or_else(|_| overflow_cf());
    Rat::new(p, q)
}

#[cold]
fn overflow_cf() -> ! {
    panic!("continued fraction value exceeds 64 bits")
}

/// The unnormalised `(p, q)` pair from folding `x -> n - 1/x` starting at
/// infinity, innermost entry first.
pub fn eval_cf_raw(seq: &IntSeq) -> (i128, i128) {
    let (mut p, mut q): (i128, i128) = (1, 0);
    for &n in seq.entries().iter().rev() {
        (p, q) = ((n as i128) * p - q, p);
    }
    (p, q)
}

/// Expand `p/q` (p odd, q even) as the unique even continued fraction of
/// even length whose entries after the first are nonzero.
pub fn even_cf(r: Rat) -> Result<IntSeq> {
    if r.num().rem_euclid(2) == 0 || r.den().rem_euclid(2) == 1 {
        return Err(Error::BadParity);
    }
    let mut out = Vec::new();
    let (mut p, mut q) = (r.num(), r.den());
    while q != 0 {
        // r = p/q with p odd, q even: take the nearest even integer 2m.
        let two_m = nearest_even(p, q);
        out.push(two_m);
        // s = 1/(2m - r) = q / (2m q - p): even numerator, odd denominator.
        let (sp, sq) = (q, two_m * q - p);
        let two_n = nearest_even(sp, sq);
        debug_assert_ne!(two_n, 0, "|s| > 1 forces a nonzero nearest even");
        out.push(two_n);
        // x = 1/(2n - s) = sq / (2n sq - sp); zero numerator ends the walk.
        let rem = two_n * sq - sp;
        debug_assert!(rem.abs() < q.abs(), "denominators must shrink");
        (p, q) = (sq, rem);
    }
    Ok(IntSeq::from(out))
}

/// Nearest even integer to `p/q`; exact ties are impossible for the parities
/// this module feeds in (a tie would make `p/q` an odd integer).
fn nearest_even(p: i64, q: i64) -> i64 {
    let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
    let a = p.div_euclid(2 * q);
    let rem = p - 2 * q * a;
    assert_ne!(rem, q, "nearest-even tie: input was an odd integer");
    if rem < q {
        2 * a
    } else {
        2 * a + 2
    }
}

/// Replace `q` by the even representative `q` or `q - p` of its class mod `p`.
pub fn make_q_even(p: i64, q: i64) -> Rat {
    assert!(p.rem_euclid(2) == 1, "make_q_even needs odd p");
    assert_eq!(gcd(p, q), 1, "make_q_even needs a reduced fraction");
    let q_even = if q.rem_euclid(2) == 0 { q } else { q - p };
    Rat::new(p, q_even)
}

/// A two-bridge knot class in Schubert normal form: determinant `p` together
/// with the orbit of `q` under inversion mod `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct KnotClass {
    p: i64,
    q_min: i64,
    q_max: i64,
    amphicheiral: bool,
}

impl KnotClass {
    pub fn det(&self) -> i64 {
        self.p
    }

    /// The orbit `{q, q^-1 mod p}` in ascending order (equal when fixed).
    pub fn qset(&self) -> (i64, i64) {
        (self.q_min, self.q_max)
    }

    /// The canonical representative fraction `p / q_min`.
    pub fn fraction(&self) -> Rat {
        if self.p == 1 {
            Rat::INFINITY
        } else {
            Rat::new(self.p, self.q_min)
        }
    }

    pub fn is_amphicheiral(&self) -> bool {
        self.amphicheiral
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q_min == self.q_max {
            write!(f, "{}/{{{}}}", self.p, self.q_min)
        } else {
            write!(f, "{}/{{{},{}}}", self.p, self.q_min, self.q_max)
        }
    }
}

/// Canonicalize `K_{p/q}` under Schubert equivalence
/// (`q ~ q + p` and `q ~ q^-1 mod p`).
pub fn schubert_canonical(p: i64, q: i64) -> Result<KnotClass> {
    if p.rem_euclid(2) == 0 {
        return Err(Error::NotAKnot(p, q));
    }
    // -p/q and p/-q are the same fraction
    let (p, q) = if p < 0 { (-p, -q) } else { (p, q) };
    if gcd(p, q) != 1 {
        return Err(Error::NotAKnot(p, q));
    }
    if p == 1 {
        return Ok(KnotClass {
            p: 1,
            q_min: 0,
            q_max: 0,
            amphicheiral: true,
        });
    }
    let qr = q.rem_euclid(p);
    let qi = mod_inverse(qr, p);
    let (q_min, q_max) = (qr.min(qi), qr.max(qi));
    let amphicheiral = p - qr == qr || p - qr == qi;
    Ok(KnotClass {
        p,
        q_min,
        q_max,
        amphicheiral,
    })
}

/// The mirror image class, `K_{p/q} -> K_{p/-q}`.
pub fn mirror_class(k: &KnotClass) -> KnotClass {
    if k.p == 1 {
        return *k;
    }
    schubert_canonical(k.p, k.p - k.q_min).expect("mirror of a valid class is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> IntSeq {
        IntSeq::from(v.to_vec())
    }

    #[test]
    fn eval_cf_examples() {
        assert_eq!(eval_cf(&seq(&[2, 2])), Rat::new(3, 2));
        assert_eq!(eval_cf(&seq(&[2, 3, 0, 2, 3, -1, 2, 3])), Rat::new(245, 137));
        assert_eq!(eval_cf(&seq(&[2, 3, -1, 2, 3, 0, 2, 3])), Rat::new(245, 142));
        assert_eq!(eval_cf(&IntSeq::empty()), Rat::INFINITY);
        // intermediate zeros are projective, not faults
        assert_eq!(eval_cf(&seq(&[5, 0, 3])), Rat::new(8, 1));
    }

    #[test]
    fn even_cf_examples() {
        assert_eq!(even_cf(Rat::new(3, 2)).unwrap(), seq(&[2, 2]));
        assert_eq!(even_cf(Rat::new(5, 2)).unwrap(), seq(&[2, -2]));
        assert_eq!(even_cf(Rat::new(1, 2)).unwrap(), seq(&[0, -2]));
        assert_eq!(even_cf(Rat::INFINITY).unwrap(), IntSeq::empty());
        assert_eq!(even_cf(Rat::new(2, 1)), Err(Error::BadParity));
        assert_eq!(even_cf(Rat::new(3, 1)), Err(Error::BadParity));
    }

    #[test]
    fn even_cf_shape() {
        // even length, even entries, nonzero after the first
        for p in (-99i64..=99).step_by(2) {
            for q in (-100i64..=100).step_by(2) {
                if q == 0 || gcd(p, q) != 1 {
                    continue;
                }
                let r = Rat::new(p, q);
                let s = even_cf(r).unwrap();
                assert_eq!(s.len() % 2, 0);
                assert!(s.iter().all(|n| n % 2 == 0));
                assert!(s.iter().skip(1).all(|&n| n != 0));
                assert_eq!(eval_cf(&s), r, "round trip failed for {r}");
            }
        }
    }

    #[test]
    fn make_q_even_examples() {
        assert_eq!(make_q_even(3, 1), Rat::new(3, -2));
        assert_eq!(make_q_even(49, 22), Rat::new(49, 22));
        assert_eq!(make_q_even(5, 3), Rat::new(5, -2));
    }

    #[test]
    fn schubert_examples() {
        let k = schubert_canonical(7, 10).unwrap();
        assert_eq!(k.qset(), (3, 5));
        assert_eq!(
            schubert_canonical(495, 302).unwrap(),
            schubert_canonical(495, 218).unwrap()
        );
        assert_ne!(
            schubert_canonical(49, 22).unwrap(),
            schubert_canonical(49, 36).unwrap()
        );
        assert_eq!(schubert_canonical(4, 1), Err(Error::NotAKnot(4, 1)));
    }

    #[test]
    fn schubert_invariances() {
        for p in (3i64..200).step_by(2) {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let k = schubert_canonical(p, q).unwrap();
                assert_eq!(k, schubert_canonical(p, q + p).unwrap());
                assert_eq!(k, schubert_canonical(p, mod_inverse(q, p)).unwrap());
            }
        }
    }

    #[test]
    fn mirror_examples() {
        let fig8 = schubert_canonical(5, 2).unwrap();
        assert_eq!(mirror_class(&fig8), fig8);
        assert!(fig8.is_amphicheiral());

        let tref = schubert_canonical(3, 1).unwrap();
        let anti = mirror_class(&tref);
        assert_eq!(anti.qset(), (2, 2));
        assert_ne!(tref, anti);
        assert_eq!(mirror_class(&anti), tref);
        assert!(!tref.is_amphicheiral());
    }

    #[test]
    fn amphicheiral_flag_matches_mirror_fixed_point() {
        for p in (3i64..150).step_by(2) {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let k = schubert_canonical(p, q).unwrap();
                assert_eq!(k.is_amphicheiral(), mirror_class(&k) == k);
            }
        }
    }

    #[test]
    fn unknot_class() {
        let k = schubert_canonical(1, 0).unwrap();
        assert!(k.is_unknot());
        assert!(k.is_amphicheiral());
        assert_eq!(mirror_class(&k), k);
    }

    #[test]
    fn uniqueness_by_enumeration() {
        // Every admissible sequence within the bound hits a distinct rational,
        // and even_cf reproduces exactly that sequence.
        use std::collections::HashMap;
        let entries: Vec<i64> = (-8..=8).filter(|n| n % 2 == 0).collect();
        let mut seen: HashMap<Rat, IntSeq> = HashMap::new();
        let mut stack: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..3 {
            let mut next = Vec::new();
            for prefix in &stack {
                for &a in &entries {
                    for &b in &entries {
                        if b == 0 {
                            continue;
                        }
                        // extending on the right keeps "nonzero after first"
                        let mut s = prefix.clone();
                        if !s.is_empty() && a == 0 {
                            continue;
                        }
                        s.push(a);
                        s.push(b);
                        next.push(s);
                    }
                }
            }
            for s in &next {
                let is = IntSeq::from(s.clone());
                let r = eval_cf(&is);
                if r.num().abs() >= 40 {
                    continue;
                }
                if let Some(prev) = seen.insert(r, is.clone()) {
                    panic!("two admissible sequences for {r}: {prev} and {is}");
                }
                assert_eq!(even_cf(r).unwrap(), is, "even_cf disagrees for {r}");
            }
            stack = next;
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("49/22".parse::<Rat>().unwrap(), Rat::new(49, 22));
        assert_eq!("495/-218".parse::<Rat>().unwrap(), Rat::new(495, -218));
        assert_eq!(Rat::new(495, -218).to_string(), "-495/218");
        assert_eq!("2,3,-1".parse::<IntSeq>().unwrap(), seq(&[2, 3, -1]));
        assert_eq!(seq(&[2, 3, -1]).to_string(), "2,3,-1");
        assert_eq!("".parse::<IntSeq>().unwrap(), IntSeq::empty());
    }
}
