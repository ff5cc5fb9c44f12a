//! Precision-parameterized real and complex arithmetic, generalized binomial
//! coefficients and continued-fraction rational reconstruction.
//!
//! Everything here is deterministic: for a fixed precision, repeated evaluation
//! returns bit-identical values.

mod complex;
mod context;
mod rational;
mod real;

pub use complex::HPComplex;
pub use context::Context;
pub use rational::{default_max_denominator, rational_reconstruct, reconstruction_threshold_bits, Rational};
pub use real::{HPReal, MIN_PRECISION};

use astro_float::RoundingMode;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Rigorous,
    Heuristic,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Rigorous => "rigorous",
            BoundKind::Heuristic => "heuristic",
        }
    }
}

/// Absolute error estimate attached to a computed value.
#[derive(Clone, Debug)]
pub struct ErrorBound {
    pub magnitude: HPReal,
    pub kind: BoundKind,
}

impl ErrorBound {
    pub fn new(magnitude: HPReal, kind: BoundKind) -> Self {
        debug_assert!(magnitude.is_finite() && !magnitude.is_negative());
        ErrorBound { magnitude, kind }
    }
}

/// `binom(-s, k) = prod_{j<k} (-s - j) / (j + 1)`; `k = 0` gives 1.
pub fn generalized_binomial(s: &HPComplex, k: u64) -> HPComplex {
    let p = s.precision();
    let neg_s = -s;
    let mut acc = HPComplex::one(p);
    for j in 0..k {
        let factor = &neg_s - &HPComplex::from_i64(j as i64, p);
        acc = &(&acc * &factor) / &HPComplex::from_i64(j as i64 + 1, p);
        if acc.is_zero() {
            break;
        }
    }
    acc
}
