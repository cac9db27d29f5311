use thiserror::Error;

/// Errors raised by the library.
///
/// Domain errors report a violated precondition on caller-supplied data.
/// Internal errors signal a broken invariant and always mean a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Substitution t = -u^-2 hit an odd power of u.
    #[error("odd power of u (u^{0}) cannot be rewritten in t")]
    OddPower(i64),
    /// Substitution t = -u^-2 hit a coefficient with nonzero imaginary part.
    #[error("coefficient of u^{0} has a nonzero imaginary part")]
    NonReal(i64),
    /// Exact polynomial division has a nonzero remainder.
    #[error("polynomials do not divide exactly")]
    NotDivisible,
    /// A continued-fraction operation needed an odd numerator and an even
    /// denominator (or an all-even sequence of even length).
    #[error("bad parity: expected odd numerator and even denominator")]
    BadParity,
    /// The numerator closure is a two-component link, not a knot.
    #[error("not a knot: fraction {0}/{1} has even numerator")]
    NotAKnot(i64, i64),
    /// Matrix is not of the form +-B0*Bn*B0.
    #[error("matrix is not a signed B0*Bn*B0 product")]
    NotC0,
    /// Sequences handed to the pivoting-pairs move fail the pivot condition.
    #[error("sequences are not pairwise pivot-equivalent")]
    NotPivotEquivalent,
    /// Normalisation exponents came out non-integral; this is a bug.
    #[error("internal: non-integral normalisation exponent")]
    IntegralityViolation,
    /// No unit adjustment satisfies the product identity; this is a bug.
    #[error("internal: no witness satisfies the product identity")]
    NoWitness,
}

impl Error {
    /// True for errors that can only arise from a broken internal invariant.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::IntegralityViolation | Error::NotDivisible | Error::NoWitness
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
