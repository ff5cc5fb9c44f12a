//! Meromorphic continuation of `Z_l(s)` to the whole plane.
//!
//! Writing `F_n = A alpha^n (1 + sum_{i>=2} (B_i / A) (alpha_i / alpha)^n)` with
//! `B_i = c_i' / alpha_i` and expanding `(1 + x)^(-s)` binomially gives
//!
//! ```text
//! Z_l(s) = A^(-s) sum_k binom(-s, k) A^(-k)
//!          sum_{k_2+..+k_l=k} multinom(k; k_2..k_l) prod_i B_i^(k_i) h(s)
//! h(s)   = 1 / (alpha^(s+k) alpha_2^(-k_2) .. alpha_l^(-k_l) - 1).
//! ```
//!
//! Terms with small `k` sum the inner composition series explicitly. Once
//! `q = rho^k alpha^(-(sigma+k)) <= 1/2` (with `rho = max |alpha_i|`) the same
//! inner sum is evaluated in the rearranged form
//! `sum_{n>=1} alpha^(-n(s+k)) P_n^k`, `P_n = sum_{i>=2} B_i alpha_i^n`, whose
//! cost does not grow with the number of compositions.

mod compositions;

pub use compositions::{compositions, multinomial, Composition, Compositions};

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{domain, precision_fault, Error, PoleTuple, Result};
use crate::numerics::{generalized_binomial, BoundKind, Context, ErrorBound, HPComplex, HPReal};
use crate::roots::RootSet;
use crate::zeta_direct::{EvalResult, Method};

/// Default cap on the number of outer terms.
pub const DEFAULT_K_MAX: usize = 16384;

/// Largest composition count a single term may enumerate.
pub const MAX_COMPOSITIONS: u64 = 4_000_000;

const INNER_TERMS_MAX: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct ContinuationOptions {
    pub k_max: usize,
    /// Pole exclusion radius; `None` means `2^(-precision/4)`.
    pub exclusion_radius: Option<HPReal>,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            k_max: DEFAULT_K_MAX,
            exclusion_radius: None,
        }
    }
}

impl ContinuationOptions {
    pub fn with_k_max(k_max: usize) -> Self {
        ContinuationOptions {
            k_max,
            ..Default::default()
        }
    }
}

pub fn default_exclusion_radius(prec: usize) -> HPReal {
    HPReal::pow2(-(prec as i64) / 4, prec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermRoute {
    Compositions,
    PowerSums,
}

/// One outer term `binom(-s, k) A^(-k) sum_{compositions} ...`.
#[derive(Clone, Debug)]
pub struct TermBreakdown {
    pub k: u32,
    pub binomial_factor: HPComplex,
    /// The inner sum over compositions.
    pub composition_sum: HPComplex,
    pub term_value: HPComplex,
    /// Bound on `|term_value|`, including `inner_truncation`.
    pub magnitude_bound: HPReal,
    /// Bound on the neglected inner tail (zero for the composition route).
    pub inner_truncation: HPReal,
    pub route: TermRoute,
}

struct Series<'a> {
    roots: &'a RootSet,
    ctx: Context,
    p: usize,
    s: HPComplex,
    sigma: f64,
    log_alpha: HPReal,
    log2_alpha: f64,
    log2_rho: f64,
    inv_a: HPReal,
    alpha_inv: HPReal,
    alpha_s: HPComplex,
    alpha_neg_s: HPComplex,
    alpha_neg_sigma: HPReal,
    b: Vec<HPComplex>,
    b_abs: Vec<HPReal>,
    b_abs_sum: HPReal,
    inv_roots: Vec<HPComplex>,
    logs: Vec<HPComplex>,
    rho: HPReal,
    two_pi: HPReal,
    exclusion: HPReal,
    // Power-sum caches, index n - 1.
    p_sums: Vec<HPComplex>,
    root_pows: Vec<HPComplex>,
    s_pows: Vec<HPComplex>,
    sigma_pows: Vec<HPReal>,
}

impl<'a> Series<'a> {
    fn new(roots: &'a RootSet, s: &HPComplex, exclusion: Option<&HPReal>) -> Self {
        let p = roots.precision();
        let ctx = Context::new();
        let s = s.with_precision(p);
        let log_alpha = roots.log_alpha().clone();
        let alpha_s = s.scale(&log_alpha).exp(&ctx);
        let alpha_neg_s = (-s.scale(&log_alpha)).exp(&ctx);
        let alpha_neg_sigma = (-(s.re() * &log_alpha)).exp(&ctx);
        let b: Vec<HPComplex> = roots.scaled_coefficients()[1..].to_vec();
        let b_abs: Vec<HPReal> = b.iter().map(HPComplex::abs).collect();
        let b_abs_sum = b_abs.iter().fold(HPReal::zero(p), |acc, x| acc + x);
        let rho = roots.max_other_modulus();
        let two_pi = HPReal::pi(p, &ctx).mul_pow2(1);
        Series {
            roots,
            p,
            sigma: s.re().to_f64(),
            log2_alpha: roots.alpha().log2_abs(),
            log2_rho: rho.log2_abs(),
            inv_a: roots.dominant_scaled().recip(),
            alpha_inv: roots.alpha().recip(),
            alpha_s,
            alpha_neg_s,
            alpha_neg_sigma,
            b,
            b_abs,
            b_abs_sum,
            inv_roots: roots.others().iter().map(HPComplex::recip).collect(),
            logs: roots.logs()[1..].to_vec(),
            rho,
            two_pi,
            exclusion: exclusion.cloned().unwrap_or_else(|| default_exclusion_radius(p)),
            p_sums: Vec::new(),
            root_pows: roots.others().to_vec(),
            s_pows: Vec::new(),
            sigma_pows: Vec::new(),
            log_alpha,
            ctx,
            s,
        }
    }

    fn zero_term(&self, k: u32, binom: &HPComplex) -> TermBreakdown {
        TermBreakdown {
            k,
            binomial_factor: binom.clone(),
            composition_sum: HPComplex::zero(self.p),
            term_value: HPComplex::zero(self.p),
            magnitude_bound: HPReal::zero(self.p),
            inner_truncation: HPReal::zero(self.p),
            route: TermRoute::Compositions,
        }
    }

    fn power_route_applies(&self, k: u32) -> bool {
        let k = k as f64;
        self.sigma + k > 0.0 && k * self.log2_rho - (self.sigma + k) * self.log2_alpha <= -1.0
    }

    fn term(&mut self, k: u32, binom: &HPComplex, inner_budget: &HPReal) -> Result<TermBreakdown> {
        if binom.is_zero() {
            return Ok(self.zero_term(k, binom));
        }
        if self.power_route_applies(k) {
            self.term_power_sums(k, binom, inner_budget)
        } else {
            self.term_compositions(k, binom)
        }
    }

    /// `|binom| A^(-k)`.
    fn outer_scale(&self, k: u32, binom: &HPComplex) -> (HPComplex, HPReal) {
        let a_pow = self.inv_a.powi(k as i64);
        (binom.scale(&a_pow), binom.abs() * a_pow)
    }

    fn pole_check(&self, k: u32, parts: &[u32]) -> Result<()> {
        let p = self.p;
        let mut w = (&self.s + &HPComplex::from_i64(k as i64, p)).scale(&self.log_alpha);
        for (part, log) in parts.iter().zip(&self.logs) {
            if *part > 0 {
                w = &w - &log.scale(&HPReal::from_u64(*part as u64, p));
            }
        }
        let n_star = (w.im() / &self.two_pi)
            .round_half_up()
            .and_then(|n| n.to_i64())
            .ok_or_else(|| precision_fault("pole lattice index out of range"))?;
        let offset = HPComplex::new(w.re().clone(), w.im() - &(&self.two_pi * HPReal::from_i64(n_star, p)));
        if offset.abs() / &self.log_alpha < self.exclusion {
            return Err(Error::PoleProximity(PoleTuple {
                k,
                parts: parts.to_vec(),
                branch_n: n_star,
            }));
        }
        Ok(())
    }

    fn term_compositions(&mut self, k: u32, binom: &HPComplex) -> Result<TermBreakdown> {
        let p = self.p;
        let parts_count = self.b.len();
        if composition_count(k, parts_count) > MAX_COMPOSITIONS {
            return Err(domain("too many compositions; Re(s) is too far left for this order"));
        }
        let kk = k as usize;
        let table = |base: &HPComplex| -> Vec<HPComplex> {
            let mut row = Vec::with_capacity(kk + 1);
            row.push(HPComplex::one(p));
            for j in 0..kk {
                let next = &row[j] * base;
                row.push(next);
            }
            row
        };
        let b_pows: Vec<Vec<HPComplex>> = self.b.iter().map(table).collect();
        let inv_pows: Vec<Vec<HPComplex>> = self.inv_roots.iter().map(table).collect();
        let b_abs_pows: Vec<Vec<HPReal>> = self
            .b_abs
            .iter()
            .map(|x| (0..=k as i64).map(|j| x.powi(j)).collect())
            .collect();
        let alpha_sk = self.alpha_s.scale(&self.roots.alpha().powi(k as i64));
        let one = HPComplex::one(p);

        let mut sum = HPComplex::zero(p);
        let mut abs_sum = HPReal::zero(p);
        for comp in compositions(k, parts_count) {
            let parts = comp.parts();
            self.pole_check(k, parts)?;
            let multinom = HPReal::from_biguint(&comp.multinomial(), p);
            let mut weight = HPComplex::from_real(multinom.clone());
            let mut weight_abs = multinom;
            let mut x = alpha_sk.clone();
            for (i, &part) in parts.iter().enumerate() {
                if part > 0 {
                    let j = part as usize;
                    weight = &weight * &b_pows[i][j];
                    weight_abs = &weight_abs * &b_abs_pows[i][j];
                    x = &x * &inv_pows[i][j];
                }
            }
            let h = (&x - &one).recip();
            abs_sum = &abs_sum + &(&weight_abs * &h.abs());
            sum = &sum + &(&weight * &h);
        }
        let (scale, scale_abs) = self.outer_scale(k, binom);
        Ok(TermBreakdown {
            k,
            binomial_factor: binom.clone(),
            term_value: &scale * &sum,
            composition_sum: sum,
            magnitude_bound: scale_abs * abs_sum,
            inner_truncation: HPReal::zero(p),
            route: TermRoute::Compositions,
        })
    }

    fn extend_caches(&mut self, n: usize) {
        while self.p_sums.len() < n {
            let next = self
                .b
                .iter()
                .zip(&self.root_pows)
                .fold(HPComplex::zero(self.p), |acc, (b, z)| &acc + &(b * z));
            self.p_sums.push(next);
            for (pow, z) in self.root_pows.iter_mut().zip(self.roots.others()) {
                *pow = &*pow * z;
            }
            let s_next = match self.s_pows.last() {
                Some(prev) => prev * &self.alpha_neg_s,
                None => self.alpha_neg_s.clone(),
            };
            self.s_pows.push(s_next);
            let sig_next = match self.sigma_pows.last() {
                Some(prev) => prev * &self.alpha_neg_sigma,
                None => self.alpha_neg_sigma.clone(),
            };
            self.sigma_pows.push(sig_next);
        }
    }

    /// Requires `q = rho^k alpha^(-(sigma+k)) < 1`; keeps enough `n` that the
    /// neglected part of the term is below `inner_budget`.
    fn term_power_sums(&mut self, k: u32, binom: &HPComplex, inner_budget: &HPReal) -> Result<TermBreakdown> {
        let p = self.p;
        let one = HPReal::one(p);
        let kf = HPReal::from_u64(k as u64, p);
        let q = self.rho.powi(k as i64) * (-((self.s.re() + &kf) * &self.log_alpha)).exp(&self.ctx);
        if self.s.re() + &kf <= HPReal::zero(p) || q >= one {
            return Err(domain("power-sum route needs rho^k alpha^-(sigma+k) < 1"));
        }
        let (scale, scale_abs) = self.outer_scale(k, binom);
        let lead = &scale_abs * &self.b_abs_sum.powi(k as i64) / (&one - &q);
        let tail_after = |n: usize| &lead * &q.powi(n as i64 + 1);

        let lq = q.log2_abs();
        let want = (inner_budget.log2_abs() - lead.log2_abs()) / lq - 1.0;
        let mut n_terms = if want.is_finite() { libm::ceil(want).max(1.0) as usize } else { 1 };
        n_terms = n_terms.min(INNER_TERMS_MAX);
        while tail_after(n_terms) > *inner_budget {
            n_terms += 1;
            if n_terms > INNER_TERMS_MAX {
                return Err(precision_fault("inner power sum did not reach its budget"));
            }
        }
        self.extend_caches(n_terms);

        let alpha_neg_k = self.alpha_inv.powi(k as i64);
        let mut alpha_pow = HPReal::one(p);
        let mut sum = HPComplex::zero(p);
        let mut abs_sum = HPReal::zero(p);
        for n in 0..n_terms {
            alpha_pow = &alpha_pow * &alpha_neg_k;
            let pk = self.p_sums[n].powi(k as i64);
            let a = self.s_pows[n].scale(&alpha_pow);
            sum = &sum + &(&a * &pk);
            abs_sum = &abs_sum + &(&(&self.sigma_pows[n] * &alpha_pow) * &self.p_sums[n].abs().powi(k as i64));
        }
        let truncation = tail_after(n_terms);
        Ok(TermBreakdown {
            k,
            binomial_factor: binom.clone(),
            term_value: &scale * &sum,
            composition_sum: sum,
            magnitude_bound: scale_abs * abs_sum + &truncation,
            inner_truncation: truncation,
            route: TermRoute::PowerSums,
        })
    }
}

/// `C(k + parts - 1, parts - 1)`, saturating.
pub fn composition_count(k: u32, parts_count: usize) -> u64 {
    let r = parts_count as u64 - 1;
    let mut acc: u64 = 1;
    for j in 0..r {
        acc = match acc.checked_mul(k as u64 + j + 1) {
            Some(v) => v / (j + 1),
            None => return u64::MAX,
        };
    }
    acc
}

/// The `k`-th outer term by explicit enumeration of compositions.
pub fn continuation_term(roots: &RootSet, s: &HPComplex, k: u32) -> Result<TermBreakdown> {
    let mut series = Series::new(roots, s, None);
    let binom = generalized_binomial(&series.s, k as u64);
    if binom.is_zero() {
        return Ok(series.zero_term(k, &binom));
    }
    series.term_compositions(k, &binom)
}

/// The `k`-th outer term by the rearranged power sums, with the neglected
/// inner tail below `inner_budget`.
pub fn continuation_term_power_sums(
    roots: &RootSet,
    s: &HPComplex,
    k: u32,
    inner_budget: &HPReal,
) -> Result<TermBreakdown> {
    let mut series = Series::new(roots, s, None);
    let binom = generalized_binomial(&series.s, k as u64);
    series.term_power_sums(k, &binom, &inner_budget.with_precision(series.p))
}

/// Evaluates `Z_l(s)` from the continuation series.
///
/// Summation stops once three consecutive outer terms are below `tol/8` and the
/// geometric extrapolation of the remaining terms is below `tol/2`. The
/// reported bound is that extrapolation plus inner truncation and a rounding
/// allowance; it is heuristic.
pub fn zeta_continued(roots: &RootSet, s: &HPComplex, tol: &HPReal, options: &ContinuationOptions) -> Result<EvalResult> {
    if !tol.is_positive() {
        return Err(domain("tolerance must be positive"));
    }
    let mut series = Series::new(roots, s, options.exclusion_radius.as_ref());
    let p = series.p;
    let s = series.s.clone();
    let tol = tol.with_precision(p);
    let log_a = roots.dominant_scaled().ln(&series.ctx);
    let prefactor = (-s.scale(&log_a)).exp(&series.ctx);
    let prefactor_abs = prefactor.abs();
    let target = tol.mul_pow2(-3);
    let half_tol = tol.mul_pow2(-1);
    let budget_base = &tol.mul_pow2(-10) / &prefactor_abs.max(&HPReal::pow2(-(p as i64), p));

    let mut binom = HPComplex::one(p);
    let mut sum = HPComplex::zero(p);
    let mut abs_total = HPReal::zero(p);
    let mut inner_total = HPReal::zero(p);
    let mut previous: Option<HPReal> = None;
    let mut below = 0usize;
    let mut last_scaled = HPReal::zero(p);
    for k in 0..=options.k_max {
        if k > 0 {
            let factor = &(-&s) - &HPComplex::from_i64(k as i64 - 1, p);
            binom = &(&binom * &factor) / &HPComplex::from_i64(k as i64, p);
        }
        let kk = k as u64 + 1;
        let budget = &budget_base / &HPReal::from_u64(kk * kk, p);
        let term = series.term(k as u32, &binom, &budget)?;
        sum = &sum + &term.term_value;
        abs_total = &abs_total + &term.magnitude_bound;
        inner_total = &inner_total + &term.inner_truncation;

        let scaled = &prefactor_abs * &term.magnitude_bound;
        below = if scaled < target { below + 1 } else { 0 };
        let ratio = previous
            .as_ref()
            .filter(|prev| prev.is_positive())
            .map(|prev| &term.magnitude_bound / prev);
        previous = Some(term.magnitude_bound.clone());
        last_scaled = scaled.clone();
        if below < 3 {
            continue;
        }
        let tail = if scaled.is_zero() {
            Some(HPReal::zero(p))
        } else {
            match &ratio {
                Some(r) if *r < HPReal::one(p) => Some(&scaled * r / (HPReal::one(p) - r)),
                _ => None,
            }
        };
        let Some(tail) = tail.filter(|t| *t < half_tol) else {
            continue;
        };
        let value = &prefactor * &sum;
        if !value.is_finite() {
            return Err(precision_fault("continuation sum overflowed"));
        }
        let terms = k + 1;
        let rounding = &(&prefactor_abs * &abs_total)
            * &HPReal::from_u64(16 * terms as u64 + 64, p)
            * HPReal::pow2(-(p as i64), p);
        let magnitude = tail + &prefactor_abs * &inner_total + rounding;
        return Ok(EvalResult {
            s,
            value,
            bound: ErrorBound::new(magnitude, BoundKind::Heuristic),
            method: Method::Continuation,
            terms_used: terms,
            decay_ratio: ratio.map(|r| r.to_f64()),
        });
    }
    Err(Error::Truncation {
        k_max: options.k_max,
        last_bound: last_scaled.to_f64(),
    })
}

/// `A^(-s) / (alpha^s - 1)`, the `k = 0` contribution, computed without the series machinery.
pub fn leading_contribution(roots: &RootSet, s: &HPComplex) -> HPComplex {
    let p = roots.precision();
    let ctx = Context::new();
    let s = s.with_precision(p);
    let a_neg_s = (-s.scale(&roots.dominant_scaled().ln(&ctx))).exp(&ctx);
    let alpha_s = s.scale(&roots.alpha().ln(&ctx)).exp(&ctx);
    &a_neg_s / &(&alpha_s - &HPComplex::one(p))
}
