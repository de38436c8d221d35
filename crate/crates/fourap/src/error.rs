//! Crate-wide error type for precondition and construction failures.
//!
//! These are caller errors: a value that violates a documented invariant or a
//! map applied outside its domain. They are distinct from
//! [`Refutation`](crate::descent::Refutation), which records a *mathematically
//! meaningful* "no" — the first condition of the proof chain that an input
//! failed.

use crate::arith::{Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that requires a nonnegative or positive argument got `value`.
    OutOfDomain { op: &'static str, value: Int },
    /// Rational construction with a zero denominator.
    ZeroDenominator,
    /// Two values that must be coprime share a factor.
    NotCoprime { a: Int, b: Int },
    /// A value that must be odd is even (or vice versa).
    BadParity { what: &'static str, value: Int },
    /// `value` has a square factor where a squarefree integer is required.
    NotSquarefree { value: Int },
    /// The claimed sides do not satisfy the Pythagorean identity.
    NotPythagorean { even: Int, odd: Int, hyp: Int },
    /// The sides share a common factor, so the triple is not primitive.
    NotPrimitive { even: Int, odd: Int, hyp: Int },
    /// The even leg of a nondegenerate primitive triple must be divisible by 4.
    EvenLegNotMultipleOfFour { even: Int },
    /// The degenerate triple (0, 1, 1) was passed where a true triangle is needed.
    DegenerateTriple,
    /// Three claimed square roots do not form a progression with the claimed difference.
    BadSquareProgression { detail: &'static str },
    /// A stated identity precondition does not hold for the given arguments.
    IdentityPrecondition { op: &'static str, detail: String },
    /// The point does not satisfy the curve equation. `lhs` is the residual.
    OffCurve {
        curve: &'static str,
        x: Rational,
        y: Rational,
        residual: Rational,
    },
    /// A birational map evaluated where it is undefined.
    MapUndefined { reason: &'static str },
    /// The two factorizations passed to the split do not describe the same integer.
    InconsistentFactorization { detail: &'static str },
    /// A search or enumeration bound beyond what fits the scan machinery.
    BoundTooLarge { op: &'static str },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::OutOfDomain { op, value } => {
                write!(f, "{op}: argument {value} is outside the domain")
            }
            Error::ZeroDenominator => write!(f, "rational with zero denominator"),
            Error::NotCoprime { a, b } => write!(f, "{a} and {b} are not coprime"),
            Error::BadParity { what, value } => write!(f, "{what} has wrong parity: {value}"),
            Error::NotSquarefree { value } => write!(f, "{value} is not squarefree"),
            Error::NotPythagorean { even, odd, hyp } => {
                write!(f, "{even}^2 + {odd}^2 != {hyp}^2")
            }
            Error::NotPrimitive { even, odd, hyp } => {
                write!(f, "({even}, {odd}, {hyp}) is not primitive")
            }
            Error::EvenLegNotMultipleOfFour { even } => {
                write!(f, "even leg {even} is not divisible by 4")
            }
            Error::DegenerateTriple => write!(f, "degenerate triple (0, 1, 1)"),
            Error::BadSquareProgression { detail } => {
                write!(f, "not a valid square progression: {detail}")
            }
            Error::IdentityPrecondition { op, detail } => {
                write!(f, "{op}: precondition violated: {detail}")
            }
            Error::OffCurve {
                curve,
                x,
                y,
                residual,
            } => write!(
                f,
                "({x}, {y}) is not on {curve}: equation residual is {residual}, not 0"
            ),
            Error::MapUndefined { reason } => write!(f, "map undefined: {reason}"),
            Error::InconsistentFactorization { detail } => {
                write!(f, "inconsistent factorizations: {detail}")
            }
            Error::BoundTooLarge { op } => write!(f, "{op}: bound exceeds supported scan range"),
        }
    }
}

impl std::error::Error for Error {}
