use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::context::Context;
use super::real::HPReal;

/// Complex number with [`HPReal`] parts of equal precision.
#[derive(Clone, Debug, PartialEq)]
pub struct HPComplex {
    re: HPReal,
    im: HPReal,
}

impl HPComplex {
    pub fn new(re: HPReal, im: HPReal) -> Self {
        let p = re.precision().max(im.precision());
        HPComplex {
            re: re.with_precision(p),
            im: im.with_precision(p),
        }
    }

    pub fn from_real(re: HPReal) -> Self {
        let im = HPReal::zero(re.precision());
        HPComplex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_real(HPReal::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Self::from_real(HPReal::one(prec))
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        Self::from_real(HPReal::from_i64(x, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        HPComplex::new(HPReal::from_f64(re, prec), HPReal::from_f64(im, prec))
    }

    pub fn re(&self) -> &HPReal {
        &self.re
    }

    pub fn im(&self) -> &HPReal {
        &self.im
    }

    pub fn precision(&self) -> usize {
        self.re.precision()
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        HPComplex {
            re: self.re.with_precision(prec),
            im: self.im.with_precision(prec),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        HPComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> HPReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> HPReal {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self, ctx: &Context) -> HPReal {
        HPReal::atan2(&self.im, &self.re, ctx)
    }

    pub fn scale(&self, r: &HPReal) -> Self {
        HPComplex {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn recip(&self) -> Self {
        if self.im.is_zero() {
            return HPComplex::from_real(self.re.recip()).with_precision(self.precision());
        }
        let d = self.norm_sqr();
        HPComplex {
            re: &self.re / &d,
            im: -(&self.im / &d),
        }
    }

    pub fn exp(&self, ctx: &Context) -> Self {
        let m = self.re.exp(ctx);
        if self.im.is_zero() {
            return HPComplex::from_real(m);
        }
        HPComplex {
            re: &m * self.im.cos(ctx),
            im: &m * self.im.sin(ctx),
        }
    }

    /// Principal logarithm, imaginary part in `(-pi, pi]`.
    pub fn ln(&self, ctx: &Context) -> Self {
        HPComplex {
            re: self.abs().ln(ctx),
            im: self.arg(ctx),
        }
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, n: i64) -> Self {
        if self.im.is_zero() {
            return HPComplex::from_real(self.re.powi(n));
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = HPComplex::one(self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `re+imi` with `sig` significant digits per part.
    pub fn to_decimal(&self, sig: usize) -> String {
        let mut s = self.re.to_decimal(sig);
        let im = self.im.to_decimal(sig);
        if !im.starts_with('-') {
            s.push('+');
        }
        s.push_str(&im);
        s.push('i');
        s
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.re.decimal_digits());
        f.write_str(&self.to_decimal(sig))
    }
}

impl From<HPReal> for HPComplex {
    fn from(r: HPReal) -> Self {
        HPComplex::from_real(r)
    }
}

fn add(a: &HPComplex, b: &HPComplex) -> HPComplex {
    HPComplex {
        re: &a.re + &b.re,
        im: &a.im + &b.im,
    }
}

fn sub(a: &HPComplex, b: &HPComplex) -> HPComplex {
    HPComplex {
        re: &a.re - &b.re,
        im: &a.im - &b.im,
    }
}

fn mul(a: &HPComplex, b: &HPComplex) -> HPComplex {
    if a.im.is_zero() && b.im.is_zero() {
        let re = &a.re * &b.re;
        let im = HPReal::zero(re.precision());
        return HPComplex { re, im };
    }
    HPComplex {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

fn div(a: &HPComplex, b: &HPComplex) -> HPComplex {
    if b.im.is_zero() {
        return HPComplex {
            re: &a.re / &b.re,
            im: &a.im / &b.re,
        };
    }
    let d = b.norm_sqr();
    HPComplex {
        re: (&a.re * &b.re + &a.im * &b.im) / &d,
        im: (&a.im * &b.re - &a.re * &b.im) / &d,
    }
}

macro_rules! complex_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&HPComplex> for &HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: &HPComplex) -> HPComplex {
                $f(self, rhs)
            }
        }
        impl $tr<HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: HPComplex) -> HPComplex {
                $f(&self, &rhs)
            }
        }
        impl $tr<&HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: &HPComplex) -> HPComplex {
                $f(&self, rhs)
            }
        }
        impl $tr<HPComplex> for &HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: HPComplex) -> HPComplex {
                $f(self, &rhs)
            }
        }
    };
}

complex_binop!(Add, add, add);
complex_binop!(Sub, sub, sub);
complex_binop!(Mul, mul, mul);
complex_binop!(Div, div, div);

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &HPComplex, b: &HPComplex, bits: i64) -> bool {
        (a - b).abs() < HPReal::pow2(-bits, a.precision())
    }

    #[test]
    fn field_operations() {
        let p = 192;
        let a = HPComplex::from_f64(1.5, -2.0, p);
        let b = HPComplex::from_f64(-0.25, 3.0, p);
        let q = &a / &b;
        assert!(close(&(&q * &b), &a, 180));
        assert!(close(&(&a * &a.recip()), &HPComplex::one(p), 180));
        assert_eq!((&a + &b) - &b, a);
    }

    #[test]
    fn powi_matches_repeated_products() {
        let p = 192;
        let z = HPComplex::from_f64(0.3, 0.7, p);
        let mut direct = HPComplex::one(p);
        for _ in 0..13 {
            direct = &direct * &z;
        }
        assert!(close(&z.powi(13), &direct, 180));
        assert!(close(&(&z.powi(-5) * &z.powi(5)), &HPComplex::one(p), 180));
    }

    #[test]
    fn exp_ln_round_trip_and_branch() {
        let ctx = Context::new();
        let p = 192;
        let z = HPComplex::from_f64(-0.4, -2.9, p);
        assert!(close(&z.exp(&ctx).ln(&ctx), &z, 180));
        let neg = HPComplex::from_f64(-2.0, 0.0, p);
        assert_eq!(neg.ln(&ctx).im(), &HPReal::pi(p, &ctx));
    }
}
