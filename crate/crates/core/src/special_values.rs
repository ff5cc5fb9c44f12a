//! Values at negative integers. At `s = -m` the outer binomial series is finite:
//!
//! ```text
//! Z_l(-m) = sum_{k=0}^{m} C(m, k) A^(m-k) sum_{k_2+..+k_l=k} multinom prod B_i^(k_i)
//!           / (alpha^(-(m-k)) alpha_2^(-k_2) .. alpha_l^(-k_l) - 1)
//! ```
//!
//! and the result is rational. It is recovered by continued fractions at two
//! precisions.

use num_bigint::BigUint;

use crate::continuation::compositions;
use crate::error::{domain, Error, Result};
use crate::numerics::{default_max_denominator, rational_reconstruct, HPComplex, HPReal, Rational};
use crate::poles::{enumerate_poles, grouping_tolerance, Window};
use crate::roots::{all_roots, RootSet};

#[derive(Clone, Debug)]
pub struct RationalValue {
    pub ell: u32,
    pub m: u32,
    /// Value at the lower precision.
    pub numeric: HPComplex,
    pub rational: Option<Rational>,
    pub precisions_checked: (usize, usize),
    pub certified: bool,
}

/// `(has_candidate, genuine)` for lattice points within grouping tolerance of `-m`.
fn candidates_at(roots: &RootSet, m: u32) -> Result<(bool, bool)> {
    let p = roots.precision();
    let center = -(m as f64);
    let window = Window::from_f64((center - 0.5, center + 0.5), (-0.5, 0.5), p)?;
    let target = HPComplex::from_i64(-(m as i64), p);
    let tol = grouping_tolerance(p);
    let mut any = false;
    let mut genuine = false;
    for g in enumerate_poles(roots, &window)? {
        if (&g.location - &target).abs() < tol {
            any = true;
            genuine |= g.genuine;
        }
    }
    Ok((any, genuine))
}

/// Whether `-m` is a genuine pole.
pub fn is_negative_integer_pole(roots: &RootSet, m: u32) -> Result<bool> {
    if m == 0 {
        return Err(domain("m must be positive"));
    }
    Ok(candidates_at(roots, m)?.1)
}

/// The finite double sum at `s = -m` using the roots as given.
pub fn negative_integer_value(roots: &RootSet, m: u32) -> Result<HPComplex> {
    if m == 0 {
        return Err(domain("m must be positive"));
    }
    match candidates_at(roots, m)? {
        (_, true) => return Err(Error::Pole { m }),
        (true, false) => return Err(domain("a lattice point with vanishing residue sits at -m")),
        _ => {}
    }
    let p = roots.precision();
    let a = roots.dominant_scaled();
    let alpha_inv = roots.alpha().recip();
    let b = &roots.scaled_coefficients()[1..];
    let inv: alloc::vec::Vec<HPComplex> = roots.others().iter().map(HPComplex::recip).collect();
    let one = HPComplex::one(p);
    let mut total = HPComplex::zero(p);
    let mut choose = BigUint::from(1u32);
    for k in 0..=m {
        if k > 0 {
            choose = choose * (m - k + 1) / k;
        }
        let outer = HPReal::from_biguint(&choose, p) * a.powi((m - k) as i64);
        let base = HPComplex::from_real(alpha_inv.powi((m - k) as i64));
        let mut inner = HPComplex::zero(p);
        for comp in compositions(k, b.len()) {
            let mut weight = HPComplex::from_real(HPReal::from_biguint(&comp.multinomial(), p));
            let mut den = base.clone();
            for (i, &part) in comp.parts().iter().enumerate() {
                if part > 0 {
                    weight = &weight * &b[i].powi(part as i64);
                    den = &den * &inv[i].powi(part as i64);
                }
            }
            inner = &inner + &(&weight / &(&den - &one));
        }
        total = &total + &inner.scale(&outer);
    }
    Ok(total)
}

fn reconstruct(value: &HPComplex) -> Option<Rational> {
    let p = value.precision();
    if value.im().abs() >= HPReal::pow2(-(p as i64) / 2, p) {
        return None;
    }
    rational_reconstruct(value.re(), &default_max_denominator(p))
}

/// `Z_l(-m)` at `precision_bits` and `precision_bits + 64`, certified when both
/// reconstruct to the same rational.
pub fn zeta_negative(ell: u32, m: u32, precision_bits: usize) -> Result<RationalValue> {
    let low = all_roots(ell, precision_bits)?;
    let numeric = negative_integer_value(&low, m)?;
    let high = all_roots(ell, precision_bits + 64)?;
    let numeric_high = negative_integer_value(&high, m)?;
    let r_low = reconstruct(&numeric);
    let r_high = reconstruct(&numeric_high);
    let certified = r_low.is_some() && r_low == r_high;
    Ok(RationalValue {
        ell,
        m,
        numeric,
        rational: r_low,
        precisions_checked: (low.precision(), high.precision()),
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ratio(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fibonacci_minus_one() {
        let v = zeta_negative(2, 1, 192).unwrap();
        assert!(v.certified);
        assert_eq!(v.rational, Some(ratio(-1, 1)));
    }

    #[test]
    fn poles_are_reported() {
        let rs = all_roots(3, 192).unwrap();
        assert!(is_negative_integer_pole(&rs, 3).unwrap());
        assert!(!is_negative_integer_pole(&rs, 1).unwrap());
        assert!(matches!(zeta_negative(3, 3, 192), Err(Error::Pole { m: 3 })));
        let rs2 = all_roots(2, 192).unwrap();
        assert!(!is_negative_integer_pole(&rs2, 1).unwrap());
        assert!(is_negative_integer_pole(&rs2, 4).unwrap());
    }
}
