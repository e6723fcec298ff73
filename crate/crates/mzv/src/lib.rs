//! Exact-arithmetic multiple zeta values.
//!
//! This crate implements the algebra of motivic multiple zeta values and an
//! exact-numerical decomposition algorithm on top of it:
//!
//! * words over `{0,1}` and regularized iterated-integral symbols, normalized
//!   to canonical generators `zeta(n1,...,nr)` ([`words`]);
//! * the comodule `U = Q<f3,f5,...> ⊗ Q[f2]` with shuffle product and
//!   deconcatenation coproduct ([`falg`]);
//! * the Goncharov coaction and its infinitesimal slices `D_r` ([`coaction`]);
//! * arbitrary-precision evaluation of the underlying real periods
//!   ([`numeric`]);
//! * the weight-by-weight bootstrap that builds the map `phi: H -> U` over a
//!   chosen basis and decomposes arbitrary zeta values into exact rational
//!   polynomials in that basis ([`decomp`]).
//!
//! Everywhere the *increasing-index* convention is used:
//! `zeta(n1,...,nr) = sum_{0 < k1 < ... < kr} k1^{-n1} ... kr^{-nr}`,
//! convergent iff `nr >= 2`. Weight is `n1 + ... + nr`, depth is `r`.
//!
//! Only two kinds of data ever enter a decomposition: exact rational
//! arithmetic, and high-precision real evaluations which are immediately
//! rationalized by continued fractions and certified. Everything else is
//! symbolic.

pub mod coaction;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod falg;
pub mod lincomb;
pub mod linalg;
pub mod numeric;
pub mod parse;
pub mod words;

mod par;

pub use error::{Error, Result};
pub use exact::{BigReal, Rational};
pub use lincomb::LinComb;
pub use words::{ISymbol, ZetaIndex};
pub use falg::{FPoly, FWord};
pub use numeric::{Evaluator, PrecisionPolicy};
pub use decomp::{Basis, BasisKind, Decomposition, PhiTable};
