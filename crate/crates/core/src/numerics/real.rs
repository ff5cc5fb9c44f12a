use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::context::Context;
use super::RM;
use crate::error::{domain, Result};

/// Smallest working precision accepted anywhere in the crate.
pub const MIN_PRECISION: usize = 64;

/// Arbitrary-precision binary floating point real carrying its working precision.
///
/// Binary operations round to the larger of the two operand precisions
/// (round-to-nearest-even).
#[derive(Clone, Debug)]
pub struct HPReal {
    v: BigFloat,
    prec: usize,
}

fn clamp_prec(p: usize) -> usize {
    p.max(MIN_PRECISION)
}

impl HPReal {
    fn wrap(v: BigFloat, prec: usize) -> Self {
        HPReal { v, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_u64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_u64(1, prec)
    }

    pub fn from_u64(x: u64, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        Self::wrap(BigFloat::from_u64(x, prec), prec)
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        Self::wrap(BigFloat::from_i64(x, prec), prec)
    }

    /// Exact conversion of a binary64 value (every f64 fits in 64 bits of mantissa).
    pub fn from_f64(x: f64, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        Self::wrap(BigFloat::from_f64(x, prec), prec)
    }

    pub fn from_biguint(x: &BigUint, prec: usize) -> Self {
        Self::from_bigint(&BigInt::from(x.clone()), prec)
    }

    /// Nearest representable value to the integer `x` at `prec` bits.
    pub fn from_bigint(x: &BigInt, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        if x.is_zero() {
            return Self::zero(prec);
        }
        let (sign, words) = x.to_u64_digits();
        let sign = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let e = (64 * words.len()) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(prec, RM).expect("mantissa allocation");
        Self::wrap(v, prec)
    }

    /// `num / den` rounded at `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: usize) -> Self {
        let guard = clamp_prec(prec) + 64;
        let q = Self::from_bigint(num, guard) / Self::from_bigint(den, guard);
        q.with_precision(prec)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        let mut v = BigFloat::from_u64(1, prec);
        v.set_exponent((e + 1) as i32);
        Self::wrap(v, prec)
    }

    pub fn pi(prec: usize, ctx: &Context) -> Self {
        let prec = clamp_prec(prec);
        Self::wrap(ctx.with(|cc| cc.pi(prec, RM)), prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Rounds (or widens) to `prec` bits.
    pub fn with_precision(&self, prec: usize) -> Self {
        let prec = clamp_prec(prec);
        let mut v = self.v.clone();
        if !v.is_nan() && !v.is_inf() {
            v.set_precision(prec, RM).expect("mantissa allocation");
        }
        Self::wrap(v, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.v.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.prec, RM), self.prec)
    }

    /// Integer power by repeated squaring; negative exponents invert the result.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.v.powi(n.unsigned_abs() as usize, self.prec, RM);
        let r = Self::wrap(p, self.prec);
        if n < 0 {
            r.recip()
        } else {
            r
        }
    }

    pub fn ln(&self, ctx: &Context) -> Self {
        Self::wrap(ctx.with(|cc| self.v.ln(self.prec, RM, cc)), self.prec)
    }

    pub fn exp(&self, ctx: &Context) -> Self {
        Self::wrap(ctx.with(|cc| self.v.exp(self.prec, RM, cc)), self.prec)
    }

    pub fn sin(&self, ctx: &Context) -> Self {
        Self::wrap(ctx.with(|cc| self.v.sin(self.prec, RM, cc)), self.prec)
    }

    pub fn cos(&self, ctx: &Context) -> Self {
        Self::wrap(ctx.with(|cc| self.v.cos(self.prec, RM, cc)), self.prec)
    }

    pub fn atan(&self, ctx: &Context) -> Self {
        Self::wrap(ctx.with(|cc| self.v.atan(self.prec, RM, cc)), self.prec)
    }

    /// Four-quadrant arctangent of `y / x` with range `(-pi, pi]`.
    pub fn atan2(y: &HPReal, x: &HPReal, ctx: &Context) -> HPReal {
        let prec = y.prec.max(x.prec);
        let pi = HPReal::pi(prec, ctx);
        if x.is_zero() {
            return if y.is_zero() {
                HPReal::zero(prec)
            } else if y.is_negative() {
                -(pi.mul_pow2(-1))
            } else {
                pi.mul_pow2(-1)
            };
        }
        if y.is_zero() {
            return if x.is_negative() { pi } else { HPReal::zero(prec) };
        }
        // Reduce to |ratio| <= 1 for the series.
        if y.abs() <= x.abs() {
            let base = (y / x).atan(ctx);
            if x.is_positive() {
                base
            } else if y.is_positive() {
                base + pi
            } else {
                base - pi
            }
        } else {
            let base = (x / y).atan(ctx);
            let half_pi = pi.mul_pow2(-1);
            if y.is_positive() {
                half_pi - base
            } else {
                -half_pi - base
            }
        }
    }

    /// Multiplies by `2^e` exactly.
    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut v = self.v.clone();
        let cur = v.exponent().expect("finite value") as i64;
        v.set_exponent((cur + e) as i32);
        Self::wrap(v, self.prec)
    }

    pub fn max(&self, other: &HPReal) -> HPReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &HPReal) -> HPReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Exact decomposition `value = mantissa * 2^exponent`; `None` for NaN or infinity.
    pub fn to_exact(&self) -> Option<(BigInt, i64)> {
        if self.is_zero() {
            return Some((BigInt::zero(), 0));
        }
        let (words, _bits, sign, e, _) = self.v.as_raw_parts()?;
        let mag = BigUint::new(
            words
                .iter()
                .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
                .collect::<Vec<u32>>(),
        );
        let shift = e as i64 - 64 * words.len() as i64;
        let mut m = BigInt::from(mag);
        if sign == Sign::Neg {
            m = -m;
        }
        // Strip trailing zero bits so the representation is canonical.
        let tz = m.trailing_zeros().unwrap_or(0);
        Some((m >> tz, shift + tz as i64))
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> Option<BigInt> {
        let (m, e) = self.to_exact()?;
        Some(if e >= 0 {
            m << (e as usize)
        } else {
            m.div_floor(&(BigInt::one() << ((-e) as usize)))
        })
    }

    /// `floor(self + 1/2)`.
    pub fn round_half_up(&self) -> Option<BigInt> {
        let (m, e) = self.to_exact()?;
        if e >= 0 {
            return Some(m << (e as usize));
        }
        let sh = (-e) as usize;
        let half = BigInt::one() << (sh - 1);
        Some((m + half).div_floor(&(BigInt::one() << sh)))
    }

    /// Approximate `log2 |self|` (`-inf` for zero).
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        match self.v.as_raw_parts() {
            Some((words, _, _, e, _)) => {
                let top = *words.last().expect("normalized mantissa") as f64;
                libm::log2(top) - 64.0 + e as f64
            }
            None => f64::INFINITY,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        match self.v.as_raw_parts() {
            Some((words, _, sign, e, _)) => {
                let top = *words.last().expect("normalized mantissa") as f64;
                let r = libm::ldexp(top, e - 64);
                if sign == Sign::Neg {
                    -r
                } else {
                    r
                }
            }
            None if self.v.is_nan() => f64::NAN,
            None if self.v.is_inf_neg() => f64::NEG_INFINITY,
            None => f64::INFINITY,
        }
    }

    /// Decimal digits that faithfully represent this precision.
    pub fn decimal_digits(&self) -> usize {
        (self.prec as f64 * core::f64::consts::LOG10_2) as usize + 2
    }

    /// Shortest-form decimal rendering with at most `sig` significant digits
    /// (round half to even on the exact binary value).
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        let Some((m, e2)) = self.to_exact() else {
            return String::from("NaN");
        };
        if m.is_zero() {
            return String::from("0");
        }
        let negative = m.is_negative();
        let m = m.abs();
        let bits = m.bits() as i64;
        let mut e10 = libm::floor((bits - 1 + e2) as f64 * core::f64::consts::LOG10_2) as i64 - 1;
        let limit = BigInt::from(10u32).pow(sig as u32);
        let digits = loop {
            let t = sig as i64 - 1 - e10;
            let mut num = m.clone();
            let mut den = BigInt::one();
            if t >= 0 {
                num *= BigInt::from(10u32).pow(t as u32);
            } else {
                den *= BigInt::from(10u32).pow((-t) as u32);
            }
            if e2 >= 0 {
                num <<= e2 as usize;
            } else {
                den <<= (-e2) as usize;
            }
            let n = round_half_even(&num, &den);
            if n >= limit {
                e10 += 1;
                continue;
            }
            break n;
        };
        let mut ds = digits.to_str_radix(10);
        // Rounding may produce fewer digits only when e10 was underestimated by more than one.
        while ds.len() < sig {
            ds.insert(0, '0');
        }
        let lead_zeros = ds.len() - ds.trim_start_matches('0').len();
        let e10 = e10 - lead_zeros as i64;
        let ds = ds.trim_start_matches('0').trim_end_matches('0');
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        if (-7..21).contains(&e10) {
            if e10 >= 0 {
                let int_len = e10 as usize + 1;
                if ds.len() <= int_len {
                    out.push_str(ds);
                    for _ in ds.len()..int_len {
                        out.push('0');
                    }
                } else {
                    out.push_str(&ds[..int_len]);
                    out.push('.');
                    out.push_str(&ds[int_len..]);
                }
            } else {
                out.push_str("0.");
                for _ in 0..(-e10 - 1) {
                    out.push('0');
                }
                out.push_str(ds);
            }
        } else {
            out.push_str(&ds[..1]);
            if ds.len() > 1 {
                out.push('.');
                out.push_str(&ds[1..]);
            }
            out.push('e');
            out.push_str(&alloc::format!("{e10}"));
        }
        out
    }

    /// Parses `[+-]digits[.digits][e[+-]digits]`, rounding to `prec` bits.
    pub fn from_decimal_str(s: &str, prec: usize) -> Result<HPReal> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        let ok_digits = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty()) || !ok_digits(int_part) || !ok_digits(frac_part) {
            return Err(domain("malformed decimal number"));
        }
        let mut exp10: i64 = match exp {
            Some(e) => e.parse::<i64>().map_err(|_| domain("malformed exponent"))?,
            None => 0,
        };
        exp10 -= frac_part.len() as i64;
        let mut digits = String::from(int_part);
        digits.push_str(frac_part);
        let mut n = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| domain("malformed decimal number"))?;
        if neg {
            n = -n;
        }
        if exp10.unsigned_abs() > 100_000 {
            return Err(domain("decimal exponent out of range"));
        }
        Ok(if exp10 >= 0 {
            Self::from_bigint(&(n * BigInt::from(10u32).pow(exp10 as u32)), prec)
        } else {
            Self::from_ratio(&n, &BigInt::from(10u32).pow((-exp10) as u32), prec)
        })
    }
}

fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice = &r * 2u32;
    match twice.cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1u32,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1u32
            }
        }
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.decimal_digits());
        f.write_str(&self.to_decimal(sig))
    }
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&HPReal> for &HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &HPReal) -> HPReal {
                let p = self.prec.max(rhs.prec);
                HPReal::wrap(self.v.$inner(&rhs.v, p, RM), p)
            }
        }
        impl $tr<HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &HPReal) -> HPReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<HPReal> for &HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal::wrap(self.v.clone().neg(), self.prec)
    }
}

impl Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        -&self
    }
}
