//! # fourap
//!
//! Exact-arithmetic toolkit around squares in arithmetic progression:
//!
//! - [`arith`] — arbitrary-precision integers and rationals, integer square
//!   roots, perfect-square tests, squarefree splits.
//! - [`pythagoras`] — primitive Pythagorean triples in the
//!   `(4uv, |4u^2-v^2|, 4u^2+v^2)` parametrization.
//! - [`congruent`] — the correspondence between rational right triangles and
//!   three rational squares in arithmetic progression, with checkable
//!   congruent-number certificates.
//! - [`descent`] — the four-squares pipeline: window normalization, the
//!   forward chain to a coprime pair (A, D) with `16A^2+D^2` and `4A^2+D^2`
//!   both square, the reverse reconstruction, and the descent step that maps
//!   any certified pair to a strictly smaller one (the degenerate pair
//!   (0, 1) being the unique fixpoint). Four distinct rational squares in
//!   arithmetic progression do not exist, so on real inputs the pipeline
//!   ends in a replayable [`descent::Refutation`].
//! - [`curves`] — the quartic model `Y^2 - (X^2-5)Y + 4 = 0`, the elliptic
//!   curve `y^2 = x(x+1)(x+4)` (24A1), the maps between them, the group law,
//!   torsion enumeration, and exact height-bounded point search.
//! - [`search`] — independent brute-force oracles that re-verify the
//!   nonexistence statements on bounded grids.
//! - [`document`] — versioned JSON certificate documents with
//!   arbitrary-precision integers as decimal strings, plus the `check`
//!   re-validation.
//! - [`cli`] — the `fourap` command-line front end.
//!
//! Run the examples for guided tours, e.g.
//! `cargo run -p fourap --example four_squares_descent`.

// Refutations and certificates carry their recorded operands by value.
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod arith;
pub mod cli;
pub mod congruent;
pub mod curves;
pub mod descent;
pub mod document;
pub mod error;
pub mod pythagoras;
pub mod search;

pub use arith::{Int, Rational};
pub use congruent::{CertifyOutcome, CongruentCertificate, ThreeSquareAP};
pub use descent::{AdPair, DescentWitness, FourApCandidate, Refutation, SplitWitness};
pub use error::Error;
pub use pythagoras::{ParamPair, PrimitiveTriple};
