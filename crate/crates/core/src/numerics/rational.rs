use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::real::HPReal;

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: BigInt,
    denom: BigInt,
}

impl Rational {
    /// Normalizes sign and common factors. Panics on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let g = numer.gcd(&denom);
        let (mut n, mut d) = if g.is_zero() { (numer, denom) } else { (numer / &g, denom / &g) };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        if n.is_zero() {
            d = BigInt::one();
        }
        Rational { numer: n, denom: d }
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational { numer: n, denom: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn to_real(&self, prec: usize) -> HPReal {
        HPReal::from_ratio(&self.numer, &self.denom, prec)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// Acceptance exponent `floor(2/3 * precision)`: a convergent must satisfy
/// `|x - p/q| < 2^-threshold`.
pub fn reconstruction_threshold_bits(prec: usize) -> usize {
    2 * prec / 3
}

/// Default denominator cap `2^(precision/3)`.
pub fn default_max_denominator(prec: usize) -> BigUint {
    BigUint::one() << (prec / 3)
}

/// Smallest-denominator continued-fraction convergent of `x` with
/// `q <= max_denominator` that lies within `2^-(2/3 * precision)` of `x`.
///
/// The expansion runs on the exact binary value of `x`, so no rounding enters.
pub fn rational_reconstruct(x: &HPReal, max_denominator: &BigUint) -> Option<Rational> {
    let (m, e) = x.to_exact()?;
    // x = num / den exactly.
    let (num, den) = if e >= 0 {
        (m << (e as usize), BigInt::one())
    } else {
        (m, BigInt::one() << ((-e) as usize))
    };
    let threshold = reconstruction_threshold_bits(x.precision());
    let max_q = BigInt::from(max_denominator.clone());

    let accepts = |p: &BigInt, q: &BigInt| -> bool {
        // |num/den - p/q| < 2^-t  <=>  |num*q - p*den| * 2^t < q*den
        let diff = (&num * q - p * &den).abs();
        (diff << threshold) < q * &den
    };

    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (num.div_floor(&den), BigInt::one());
    let (mut a, mut b) = (den.clone(), num.mod_floor(&den));
    loop {
        if q_cur > max_q {
            return None;
        }
        if accepts(&p_cur, &q_cur) {
            return Some(Rational::new(p_cur, q_cur));
        }
        if b.is_zero() {
            return None;
        }
        let (t, r) = a.div_mod_floor(&b);
        let p_next = &t * &p_cur + &p_prev;
        let q_next = &t * &q_cur + &q_prev;
        p_prev = core::mem::replace(&mut p_cur, p_next);
        q_prev = core::mem::replace(&mut q_cur, q_next);
        a = core::mem::replace(&mut b, r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn normalizes() {
        let r = Rational::new(big(6), big(-4));
        assert_eq!((r.numer().clone(), r.denom().clone()), (big(-3), big(2)));
        assert_eq!(Rational::new(big(0), big(-7)).denom(), &big(1));
    }

    #[test]
    fn reconstructs_one_half() {
        let x = HPReal::from_f64(0.5, 128);
        let r = rational_reconstruct(&x, &BigUint::from(1_000_000u32)).unwrap();
        assert_eq!(r, Rational::new(big(1), big(2)));
    }

    #[test]
    fn reconstructs_355_over_113() {
        let x = HPReal::from_ratio(&big(355), &big(113), 256);
        let r = rational_reconstruct(&x, &BigUint::from(10_000u32)).unwrap();
        assert_eq!(r, Rational::new(big(355), big(113)));
    }

    #[test]
    fn sqrt2_has_no_small_rational() {
        // Oracle: enumerate every convergent of sqrt(2) with q <= 10^6 from the
        // recurrence p' = p + 2q, q' = p + q and confirm none is within 2^-85.
        let x = HPReal::from_i64(2, 128).sqrt();
        let threshold = HPReal::pow2(-(reconstruction_threshold_bits(128) as i64), 256);
        let (mut p, mut q) = (1i64, 1i64);
        let mut convergents = Vec::new();
        while q <= 1_000_000 {
            convergents.push((p, q));
            let (np, nq) = (p + 2 * q, p + q);
            p = np;
            q = nq;
        }
        for (p, q) in convergents {
            let err = (x.with_precision(256) - HPReal::from_ratio(&big(p), &big(q), 256)).abs();
            assert!(err > threshold, "{p}/{q} unexpectedly close");
        }
        assert!(rational_reconstruct(&x, &BigUint::from(1_000_000u32)).is_none());
    }

    #[test]
    fn zero_and_integers() {
        let r = rational_reconstruct(&HPReal::zero(128), &default_max_denominator(128)).unwrap();
        assert_eq!(r, Rational::from_integer(big(0)));
        let r = rational_reconstruct(&HPReal::from_i64(-17, 128), &default_max_denominator(128)).unwrap();
        assert_eq!(r, Rational::from_integer(big(-17)));
    }

    proptest! {
        #[test]
        fn exact_rationals_come_back(p in -1_000_000i64..1_000_000, q in 1i64..1_000_000) {
            let want = Rational::new(big(p), big(q));
            let x = want.to_real(192);
            let got = rational_reconstruct(&x, &default_max_denominator(192));
            prop_assert_eq!(got, Some(want));
        }
    }
}
