#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use fibzeta::{HPComplex, HPReal, Rational};

/// `F_1 ..= F_count` by the plain recurrence, independent of the library.
pub fn fib_terms(ell: usize, count: usize) -> Vec<BigUint> {
    let mut window: Vec<BigUint> = vec![BigUint::zero(); ell - 1];
    window.push(BigUint::one());
    let mut out = vec![BigUint::one()];
    while out.len() < count {
        let next: BigUint = window.iter().sum();
        window.remove(0);
        window.push(next.clone());
        out.push(next);
    }
    out
}

/// Shortest linear recurrence `g_n = c_1 g_{n-1} + ... + c_d g_{n-d}` (Berlekamp-Massey).
pub fn berlekamp_massey(g: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last = BigRational::one();
    for n in 0..g.len() {
        let mut d = g[n].clone();
        for i in 1..=len {
            d += &c[i] * &g[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &d / &last;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &coef * bi;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = prev;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, BigRational::zero());
    c[1..].iter().map(|x| -x).collect()
}

pub enum Regularized {
    Value(BigRational),
    Pole,
}

/// Regularized `sum_{n>=1} F_n^m`: the rational generating function evaluated at 1.
pub fn regularized_power_sum(ell: usize, m: u32) -> Regularized {
    // Number of monomials in the Binet expansion of F_n^m bounds the recurrence order.
    let degree = (1..ell as u64).fold(1u64, |acc, j| acc * (m as u64 + j) / j) as usize;
    let count = 2 * degree + 8;
    let g: Vec<BigRational> = fib_terms(ell, count)
        .into_iter()
        .map(|f| BigRational::from_integer(BigInt::from(f.pow(m))))
        .collect();
    let c = berlekamp_massey(&g);
    let d = c.len();
    // Q(x) = 1 - sum c_i x^i, S(x) = sum_{n>=1} g_n x^n, P = S Q mod x^(d+1).
    let mut q = vec![BigRational::one()];
    q.extend(c.iter().map(|x| -x));
    let mut p_at_one = BigRational::zero();
    for j in 1..=d {
        for (i, qi) in q.iter().enumerate().take(j) {
            p_at_one += qi * &g[j - i - 1];
        }
    }
    let q_at_one: BigRational = q.iter().cloned().sum();
    if q_at_one.is_zero() {
        Regularized::Pole
    } else {
        Regularized::Value(p_at_one / q_at_one)
    }
}

pub fn to_library_rational(r: &BigRational) -> Rational {
    Rational::new(r.numer().clone(), r.denom().clone())
}

/// Exact `sum_{n<=head} F_n^-s` as a rational plus an f64 tail up to `total` terms.
pub fn fibonacci_partial_sum(s: u32, head: usize, total: usize) -> f64 {
    let terms = fib_terms(2, head);
    let forward = terms
        .iter()
        .fold(BigRational::zero(), |acc, f| acc + BigRational::new(BigInt::one(), BigInt::from(f.pow(s))));
    let backward = terms
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, f| acc + BigRational::new(BigInt::one(), BigInt::from(f.pow(s))));
    assert_eq!(forward, backward);
    let mut tail = 0.0f64;
    let (mut a, mut b) = (terms[head - 2].to_f64().unwrap(), terms[head - 1].to_f64().unwrap());
    for _ in head..total {
        let next = a + b;
        a = b;
        b = next;
        tail += b.powi(-(s as i32));
    }
    rational_to_f64(&forward) + tail
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let scale = BigInt::from(10u32).pow(30);
    let scaled = (r.numer() * &scale) / r.denom();
    scaled.to_f64().unwrap() / 1e30
}

pub fn hp(x: &str, prec: usize) -> HPReal {
    HPReal::from_decimal_str(x, prec).unwrap()
}

pub fn dist(a: &HPComplex, b: &HPComplex) -> HPReal {
    (a - b).abs()
}

pub fn rel_err(a: &HPComplex, b: &HPComplex) -> f64 {
    (dist(a, b) / b.abs()).to_f64()
}

pub fn abs_f64(x: &BigRational) -> f64 {
    rational_to_f64(&x.abs())
}
