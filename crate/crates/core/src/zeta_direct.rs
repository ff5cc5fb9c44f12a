//! Direct summation of `sum F_n^(-s)` on the right half plane.
//!
//! Terms obey `|F_n^(-s)| <= alpha^((2 - n) sigma)`, so the tail after `N`
//! terms is at most `alpha^((1 - N) sigma) / (1 - alpha^(-sigma))`.

use crate::error::{domain, precision_fault, Result};
use crate::numerics::{BoundKind, Context, ErrorBound, HPComplex, HPReal};
use crate::recurrence::fib_sequence;
use crate::roots::RootSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Continuation,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Continuation => "continuation",
        }
    }
}

/// A computed zeta value.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub s: HPComplex,
    pub value: HPComplex,
    pub bound: ErrorBound,
    pub method: Method,
    pub terms_used: usize,
    /// Observed ratio of the last two outer-term bounds (continuation only).
    pub decay_ratio: Option<f64>,
}

/// Smallest real part accepted by the direct method (`2^-20`).
pub fn sigma_min(prec: usize) -> HPReal {
    HPReal::pow2(-20, prec)
}

/// Geometric tail bound after summing `n = 1..=terms`.
pub fn tail_bound(log_alpha: &HPReal, sigma: &HPReal, terms: usize, ctx: &Context) -> HPReal {
    let p = sigma.precision();
    let one = HPReal::one(p);
    let decay = (-(sigma * log_alpha)).exp(ctx);
    let lead = (HPReal::from_i64(1 - terms as i64, p) * sigma * log_alpha).exp(ctx);
    lead / (one - decay)
}

/// `sum_{n=1}^{N} exp(-s log F_n)` with `N` the first index whose tail bound
/// drops below `tol`. The returned bound adds a rounding allowance to the tail.
pub fn zeta_direct(roots: &RootSet, s: &HPComplex, tol: &HPReal) -> Result<EvalResult> {
    let p = roots.precision();
    let s = s.with_precision(p);
    let sigma = s.re().clone();
    if sigma <= sigma_min(p) {
        return Err(domain("direct summation needs Re(s) > 2^-20"));
    }
    if !tol.is_positive() {
        return Err(domain("tolerance must be positive"));
    }
    let ctx = Context::new();
    let log_alpha = roots.log_alpha();

    // Estimate N from the f64 view of the bound, then confirm in full precision.
    let sig = sigma.to_f64();
    let la = log_alpha.to_f64();
    let ln_tol = tol.log2_abs() * core::f64::consts::LN_2;
    let ln_denominator = libm::log(-libm::expm1(-sig * la));
    let estimate = 1.0 - (ln_tol + ln_denominator) / (sig * la);
    if !estimate.is_finite() || estimate > 1.0e7 {
        return Err(domain("tolerance too small for direct summation at this Re(s)"));
    }
    let mut terms = (libm::ceil(estimate) as usize).max(1);
    while terms > 1 && tail_bound(log_alpha, &sigma, terms - 1, &ctx) < *tol {
        terms -= 1;
    }
    while tail_bound(log_alpha, &sigma, terms, &ctx) >= *tol {
        terms += 1;
    }
    let tail = tail_bound(log_alpha, &sigma, terms, &ctx);

    let seq = fib_sequence(roots.ell(), terms as i64)?;
    let real_s = s.is_real();
    let mut sum = HPComplex::zero(p);
    let mut abs_sum = HPReal::zero(p);
    for n in 1..=terms as i64 {
        let f = seq.get(n).expect("generated");
        let log_f = HPReal::from_biguint(f, p).ln(&ctx);
        let term = if real_s {
            HPComplex::from_real((-(s.re() * &log_f)).exp(&ctx))
        } else {
            (-s.scale(&log_f)).exp(&ctx)
        };
        abs_sum = &abs_sum + &term.abs();
        sum = &sum + &term;
    }
    if !sum.is_finite() {
        return Err(precision_fault("direct sum overflowed"));
    }
    // Each term carries a few ulps of relative error; the running sum one more per step.
    let rounding = &abs_sum * HPReal::from_u64(4 * terms as u64 + 8, p) * HPReal::pow2(-(p as i64), p);
    Ok(EvalResult {
        s,
        value: sum,
        bound: ErrorBound::new(tail + rounding, BoundKind::Rigorous),
        method: Method::Direct,
        terms_used: terms,
        decay_ratio: None,
    })
}
