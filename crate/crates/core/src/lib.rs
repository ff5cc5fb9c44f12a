//! High-precision evaluation of the l-generalized Fibonacci zeta function
//! `Z_l(s) = sum_{n>=1} F_n^(-s)`, where `F_n = F_{n-1} + ... + F_{n-l}`.
//!
//! * [`recurrence`] generates the integer sequence exactly.
//! * [`roots`] finds the roots of `x^l - x^(l-1) - ... - 1` at any precision.
//! * [`zeta_direct`] sums the defining series on `Re(s) > 0` with a rigorous tail bound.
//! * [`continuation`] evaluates the meromorphic continuation anywhere off the poles.
//! * [`poles`] enumerates the candidate pole lattice and residues.
//! * [`special_values`] computes the values at negative integers and recovers them as exact rationals.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod continuation;
pub mod error;
pub mod numerics;
pub mod poles;
pub mod recurrence;
pub mod roots;
pub mod special_values;
pub mod zeta_direct;

pub use continuation::{zeta_continued, ContinuationOptions};
pub use error::{Error, PoleTuple, Result};
pub use numerics::{BoundKind, ErrorBound, HPComplex, HPReal, Rational, DEFAULT_PRECISION};
pub use poles::{enumerate_poles, PoleGroup, Window};
pub use recurrence::{fib_sequence, FibSequence};
pub use roots::{all_roots, RootSet};
pub use special_values::{zeta_negative, RationalValue};
pub use zeta_direct::{zeta_direct, EvalResult, Method};

/// Evaluation strategy for [`evaluate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Direct,
    Continuation,
    /// Direct summation when `Re(s) >= 1/2`, continuation otherwise.
    Auto,
}

/// Evaluates `Z_l(s)` with the requested method.
pub fn evaluate(
    roots: &RootSet,
    s: &HPComplex,
    tol: &HPReal,
    method: MethodChoice,
    options: &ContinuationOptions,
) -> Result<EvalResult> {
    let use_direct = match method {
        MethodChoice::Direct => true,
        MethodChoice::Continuation => false,
        MethodChoice::Auto => *s.re() >= HPReal::one(s.precision()).mul_pow2(-1),
    };
    if use_direct {
        zeta_direct(roots, s, tol)
    } else {
        zeta_continued(roots, s, tol, options)
    }
}
