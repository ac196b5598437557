//! Computational companion to the square-sieve bound for elliptic-curve pairs
//! whose Frobenius fields coincide.
//!
//! The crate is split along the objects that appear in the argument:
//!
//! * [`arith`]: primes, Jacobi symbols, squarefree parts, `li(x)`.
//! * [`elliptic`]: integral short-Weierstrass curves and their traces `a_p`.
//! * [`frobenius`]: Frobenius fields and the prime-counting functions built on them.
//! * [`gl2count`]: determinant/trace class counts in `GL2(Z/q1q2Z)`.
//! * [`charsum`]: the quadratic character sums that feed the main term.
//! * [`sieve`]: both square-sieve estimators and the choices of `z`.
//!
//! Curves are short Weierstrass models `y^2 = x^3 + Ax + B`. The bad-prime set
//! is taken to be the primes dividing `6*disc`, a superset of the primes
//! dividing the conductor, so counts may omit finitely many more primes than a
//! conductor-exact count would. Every counter reports which primes it skipped.
//!
//! Formula-based class frequencies (`#C/#H`) describe the prime distribution
//! only when the mod `q1q2` Galois representations are surjective, which for
//! non-CM curves is guaranteed only for `q1q2` coprime to some unknown
//! curve-dependent constant.

pub mod arith;
pub mod charsum;
pub mod elliptic;
mod error;
pub mod frobenius;
pub mod gl2count;
pub mod sieve;

pub use arith::{
    is_perfect_square, jacobi, log_integral, primes_in, squarefree_decompose, PrimeTable,
    SquarefreeDecomposition,
};
pub use elliptic::{CurveQ, TraceMethod, TraceRecord};
pub use error::{Error, Result};
pub use frobenius::{FrobeniusFieldTag, MatchRecord};
pub use gl2count::GL2CountResult;
pub use sieve::{Multiset, SievePrimeSet, SieveReport};
