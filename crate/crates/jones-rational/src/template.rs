//! Sequence moves that provably preserve the Jones polynomial of the
//! numerator closure: block reversal over a repeated base (Template I),
//! base-to-star substitution across twist-separated blocks (Template II),
//! and block reversal over pivot-equivalent bases (the pivoting-pairs move).
//!
//! Moves are total on sequences; whether a closure is a knot is checked by
//! the caller before any Jones evaluation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::IntSeq;
use crate::tangle::b_product;

/// `n* = -reverse(n)`.
pub fn seq_star(n: &IntSeq) -> IntSeq {
    n.iter().rev().map(|&x| -x).collect()
}

/// Block flag for Template I and the pivoting-pairs move: identity or star.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum StarFlag {
    #[serde(rename = "1")]
    Plain,
    #[serde(rename = "*")]
    Star,
}

impl StarFlag {
    pub fn apply(self, n: &IntSeq) -> IntSeq {
        match self {
            StarFlag::Plain => n.clone(),
            StarFlag::Star => seq_star(n),
        }
    }
}

impl fmt::Display for StarFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarFlag::Plain => write!(f, "1"),
            StarFlag::Star => write!(f, "*"),
        }
    }
}

impl FromStr for StarFlag {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "1" => Ok(StarFlag::Plain),
            "*" => Ok(StarFlag::Star),
            other => Err(format!("expected 1 or *, got {other:?}")),
        }
    }
}

/// Block flag for Template II: keep or reverse the base sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ArrowFlag {
    #[serde(rename = ">")]
    Right,
    #[serde(rename = "<")]
    Left,
}

impl ArrowFlag {
    pub fn apply(self, n: &IntSeq) -> IntSeq {
        match self {
            ArrowFlag::Right => n.clone(),
            ArrowFlag::Left => n.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for ArrowFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowFlag::Right => write!(f, ">"),
            ArrowFlag::Left => write!(f, "<"),
        }
    }
}

impl FromStr for ArrowFlag {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            ">" => Ok(ArrowFlag::Right),
            "<" => Ok(ArrowFlag::Left),
            other => Err(format!("expected > or <, got {other:?}")),
        }
    }
}

fn interleave(blocks: &[IntSeq], seps: &[i64]) -> IntSeq {
    debug_assert_eq!(blocks.len(), seps.len() + 1);
    let mut out: Vec<i64> = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            out.push(seps[i - 1]);
        }
        out.extend_from_slice(block);
    }
    IntSeq::from(out)
}

/// Template I: starred copies of one base joined by twists, against the full
/// block reversal. Knot-ness of either closure is not guaranteed.
pub fn template_one(n: &IntSeq, ds: &[i64], eps: &[StarFlag]) -> (IntSeq, IntSeq) {
    assert_eq!(eps.len(), ds.len() + 1, "need one flag per block");
    let blocks: Vec<IntSeq> = eps.iter().map(|e| e.apply(n)).collect();
    let a = interleave(&blocks, ds);
    let rev_blocks: Vec<IntSeq> = blocks.into_iter().rev().collect();
    let rev_ds: Vec<i64> = ds.iter().rev().copied().collect();
    let b = interleave(&rev_blocks, &rev_ds);
    (a, b)
}

/// Template II: blocks `(n with eps_j, m_j, -(n with phis_j))` joined by the
/// `d_j`, against the same assembly built from `n*`. Star applies before the
/// arrows.
pub fn template_two(
    n: &IntSeq,
    ms: &[i64],
    ds: &[i64],
    eps: &[ArrowFlag],
    phis: &[ArrowFlag],
) -> (IntSeq, IntSeq) {
    assert_eq!(ms.len(), ds.len() + 1, "need one m per block");
    assert_eq!(eps.len(), ms.len(), "need one eps arrow per block");
    assert_eq!(phis.len(), ms.len(), "need one phi arrow per block");
    let assemble = |base: &IntSeq| -> IntSeq {
        let blocks: Vec<IntSeq> = ms
            .iter()
            .zip(eps.iter().zip(phis))
            .map(|(&m, (e, phi))| {
                let mut block: Vec<i64> = e.apply(base).entries().to_vec();
                block.push(m);
                block.extend(phi.apply(base).iter().map(|&x| -x));
                IntSeq::from(block)
            })
            .collect();
        interleave(&blocks, ds)
    };
    (assemble(n), assemble(&seq_star(n)))
}

/// Pivot condition on two twist-box sequences: with `alpha` the upper-left
/// entry of each B-product and primes `u -> u^-1`, tests
/// `alpha_1' alpha_2 = alpha_1 alpha_2'`. A vanishing `alpha` pivots with
/// everything.
pub fn pivot_check(n1: &IntSeq, n2: &IntSeq) -> bool {
    let a1 = b_product(n1).a11;
    let a2 = b_product(n2).a11;
    &a1.bar_u() * &a2 == &a1 * &a2.bar_u()
}

/// A guaranteed pivot partner: `n ++ (m) ++ n`.
pub fn pivot_generate(n: &IntSeq, m: i64) -> IntSeq {
    let mut out: Vec<i64> = n.entries().to_vec();
    out.push(m);
    out.extend_from_slice(n.entries());
    IntSeq::from(out)
}

/// The pivoting-pairs move: pairwise pivot-equivalent bases joined by twists,
/// against the full block reversal.
pub fn template_pivot(
    seqs: &[IntSeq],
    ds: &[i64],
    eps: &[StarFlag],
) -> Result<(IntSeq, IntSeq)> {
    assert_eq!(seqs.len(), ds.len() + 1, "need one base per block");
    assert_eq!(eps.len(), seqs.len(), "need one flag per block");
    for i in 0..seqs.len() {
        for j in i + 1..seqs.len() {
            if !pivot_check(&seqs[i], &seqs[j]) {
                return Err(Error::NotPivotEquivalent);
            }
        }
    }
    let blocks: Vec<IntSeq> = seqs
        .iter()
        .zip(eps)
        .map(|(n, e)| e.apply(n))
        .collect();
    let a = interleave(&blocks, ds);
    let rev_blocks: Vec<IntSeq> = blocks.into_iter().rev().collect();
    let rev_ds: Vec<i64> = ds.iter().rev().copied().collect();
    Ok((a, interleave(&rev_blocks, &rev_ds)))
}

/// A fully-parameterized template application, suitable for serializing
/// search witnesses.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "template")]
pub enum TemplateInstance {
    #[serde(rename = "I")]
    One {
        base: IntSeq,
        ds: Vec<i64>,
        eps: Vec<StarFlag>,
    },
    #[serde(rename = "II")]
    Two {
        base: IntSeq,
        ms: Vec<i64>,
        ds: Vec<i64>,
        eps: Vec<ArrowFlag>,
        phis: Vec<ArrowFlag>,
    },
    #[serde(rename = "Pivot")]
    Pivot {
        bases: Vec<IntSeq>,
        ds: Vec<i64>,
        eps: Vec<StarFlag>,
    },
}

impl TemplateInstance {
    pub fn generate(&self) -> Result<(IntSeq, IntSeq)> {
        match self {
            TemplateInstance::One { base, ds, eps } => Ok(template_one(base, ds, eps)),
            TemplateInstance::Two {
                base,
                ms,
                ds,
                eps,
                phis,
            } => Ok(template_two(base, ms, ds, eps, phis)),
            TemplateInstance::Pivot { bases, ds, eps } => template_pivot(bases, ds, eps),
        }
    }
}

impl fmt::Display for TemplateInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn flags<T: fmt::Display>(fs: &[T]) -> String {
            fs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
        fn ints(v: &[i64]) -> String {
            let s = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            if s.is_empty() { "-".into() } else { s }
        }
        match self {
            TemplateInstance::One { base, ds, eps } => {
                write!(f, "Template I: base=({base}) ds=({}) eps=({})", ints(ds), flags(eps))
            }
            TemplateInstance::Two { base, ms, ds, eps, phis } => write!(
                f,
                "Template II: base=({base}) ms=({}) ds=({}) eps=({}) phis=({})",
                ints(ms),
                ints(ds),
                flags(eps),
                flags(phis)
            ),
            TemplateInstance::Pivot { bases, ds, eps } => {
                let bs: Vec<String> = bases.iter().map(|b| format!("({b})")).collect();
                write!(f, "Pivot: bases={} ds=({}) eps=({})", bs.join(";"), ints(ds), flags(eps))
            }
        }
    }
}
