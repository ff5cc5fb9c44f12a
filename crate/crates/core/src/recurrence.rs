//! Exact generation of l-generalized Fibonacci numbers and checks of the
//! integer-side identities against the root data.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::{HPComplex, HPReal};
use crate::roots::{dominant_root, RootSet};

/// `F_n` for `n = 2 - l ..= n_max`, stored densely from the first index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibSequence {
    ell: u32,
    values: Vec<BigUint>,
}

impl FibSequence {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `2 - l`.
    pub fn start_index(&self) -> i64 {
        2 - self.ell as i64
    }

    pub fn n_max(&self) -> i64 {
        self.start_index() + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&BigUint> {
        let off = n - self.start_index();
        if off < 0 {
            return None;
        }
        self.values.get(off as usize)
    }

    /// `(n, F_n)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        let start = self.start_index();
        self.values.iter().enumerate().map(move |(i, v)| (start + i as i64, v))
    }
}

pub fn fib_sequence(ell: u32, n_max: i64) -> Result<FibSequence> {
    if ell < 2 {
        return Err(Error::InvalidOrder(ell));
    }
    if n_max < 1 {
        return Err(domain("n_max must be at least 1"));
    }
    let l = ell as usize;
    let len = (n_max - (2 - ell as i64) + 1) as usize;
    let mut values: Vec<BigUint> = Vec::with_capacity(len);
    values.resize(l - 1, BigUint::zero());
    values.push(BigUint::one());
    // Running window sum of the last `l` values.
    let mut window = BigUint::one();
    while values.len() < len {
        let next = window.clone();
        window += &next;
        if values.len() >= l {
            window -= &values[values.len() - l];
        }
        values.push(next);
    }
    Ok(FibSequence { ell, values })
}

/// `sum_i c_i' alpha_i^(n-1)`.
pub fn binet_value(roots: &RootSet, n: i64) -> HPComplex {
    let p = roots.precision();
    (0..roots.ell() as usize).fold(HPComplex::zero(p), |acc, i| {
        &acc + &(&roots.binet_coefficients()[i] * &roots.root(i).powi(n - 1))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RndFailure {
    pub n: i64,
    pub exact: BigUint,
    pub rounded: BigInt,
    /// Whether `|F_n - c_1' alpha^(n-1)| < 1/2` held.
    pub within_half: bool,
}

#[derive(Clone, Debug)]
pub struct RndReport {
    pub ell: u32,
    pub checked: usize,
    /// Precision the comparison actually ran at.
    pub working_precision: usize,
    pub failures: Vec<RndFailure>,
}

/// Checks that the dominant Binet term rounds to `F_n` and lies within 1/2 of
/// it for every `n` in `2 - l ..= n_max`.
///
/// Runs at `max(roots precision, bits(F_n_max) + 64)` so the fractional part
/// of `c_1' alpha^(n-1)` is resolved; `alpha` is recomputed when the root set
/// is too coarse.
pub fn rnd_check(roots: &RootSet, n_max: i64) -> Result<RndReport> {
    let ell = roots.ell();
    let seq = fib_sequence(ell, n_max.max(1))?;
    let top_bits = seq.get(n_max.max(1)).map(|v| v.bits() as usize).unwrap_or(0);
    let wp = roots.precision().max(top_bits + 64);
    let alpha = if wp > roots.precision() {
        dominant_root(ell, wp)?
    } else {
        roots.alpha().clone()
    };
    let one = HPReal::one(wp);
    let two = HPReal::from_i64(2, wp);
    let c1 = (&alpha - &one) / (&two + HPReal::from_i64(ell as i64 + 1, wp) * (&alpha - &two));
    let half = one.mul_pow2(-1);

    let start = seq.start_index();
    let mut power = alpha.powi(start - 1);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (n, exact) in seq.iter().take_while(|(n, _)| *n <= n_max) {
        let approx = &c1 * &power;
        let rounded = approx.round_half_up().expect("finite");
        let exact_real = HPReal::from_biguint(exact, wp);
        let within_half = (&exact_real - &approx).abs() < half;
        if rounded != BigInt::from(exact.clone()) || !within_half {
            failures.push(RndFailure {
                n,
                exact: exact.clone(),
                rounded,
                within_half,
            });
        }
        checked += 1;
        power = &power * &alpha;
    }
    Ok(RndReport {
        ell,
        checked,
        working_precision: wp,
        failures,
    })
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub ell: u32,
    pub checked: usize,
    /// Indices where `alpha^(n-2) <= F_n <= alpha^(n-1)` failed.
    pub failures: Vec<i64>,
}

/// Checks `alpha^(n-2) <= F_n <= alpha^(n-1)` for `1 <= n <= n_max`.
pub fn bounds_check(roots: &RootSet, n_max: i64) -> Result<BoundsReport> {
    let seq = fib_sequence(roots.ell(), n_max)?;
    let p = roots.precision();
    let alpha = roots.alpha();
    let mut lower = alpha.recip();
    let mut upper = HPReal::one(p);
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let f = HPReal::from_biguint(seq.get(n).expect("in range"), p);
        if !(lower <= f && f <= upper) {
            failures.push(n);
        }
        lower = upper.clone();
        upper = &upper * alpha;
    }
    Ok(BoundsReport {
        ell: roots.ell(),
        checked: n_max as usize,
        failures,
    })
}

/// Indices violating `F_n = 2^(n-2)` for `2 <= n <= l + 1` or
/// `F_n < 2^(n-2)` for `n >= l + 2`.
pub fn power_of_two_window_check(seq: &FibSequence) -> Vec<i64> {
    let l = seq.ell() as i64;
    seq.iter()
        .filter(|(n, _)| *n >= 2)
        .filter(|(n, v)| {
            let pow = BigUint::one() << ((n - 2) as usize);
            if *n <= l + 1 {
                **v != pow
            } else {
                **v >= pow
            }
        })
        .map(|(n, _)| n)
        .collect()
}
