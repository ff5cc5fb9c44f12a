mod common;

use common::{regularized_power_sum, to_library_rational, Regularized};
use fibzeta::special_values::{is_negative_integer_pole, negative_integer_value};
use fibzeta::{all_roots, zeta_continued, zeta_negative, ContinuationOptions, Error, HPComplex, HPReal, Rational};
use num_bigint::BigInt;

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

type Pin = (u32, u32, Option<(i64, i64)>);

#[test]
fn matches_generating_function_oracle() {
    let cases: &[(usize, u32)] = &[(2, 6), (3, 6), (4, 5), (5, 4)];
    for &(ell, m_max) in cases {
        let rs = all_roots(ell as u32, 256).unwrap();
        for m in 1..=m_max {
            match regularized_power_sum(ell, m) {
                Regularized::Pole => {
                    assert!(is_negative_integer_pole(&rs, m).unwrap(), "ell={ell} m={m}");
                    assert!(matches!(zeta_negative(ell as u32, m, 256), Err(Error::Pole { .. })));
                }
                Regularized::Value(exact) => {
                    let v = zeta_negative(ell as u32, m, 256).unwrap();
                    assert!(v.certified, "ell={ell} m={m}");
                    assert_eq!(v.rational, Some(to_library_rational(&exact)), "ell={ell} m={m}");
                }
            }
        }
    }
}

#[test]
fn pinned_values() {
    let pinned: &[Pin] = &[
        (2, 1, Some((-1, 1))),
        (2, 2, Some((0, 1))),
        (2, 3, Some((1, 2))),
        (2, 4, None),
        (2, 5, Some((-7, 22))),
        (3, 1, Some((-1, 2))),
        (3, 2, Some((1, 4))),
        (3, 3, None),
        (3, 4, Some((1, 16))),
        (3, 5, Some((3, 44))),
        (3, 6, None),
        (4, 1, Some((-1, 3))),
        (4, 2, Some((1, 3))),
        (4, 3, Some((-5, 18))),
        (4, 4, Some((149, 822))),
        (4, 5, Some((239851, 1249842))),
        (5, 1, Some((-1, 4))),
        (5, 2, Some((3, 8))),
        (5, 3, Some((-5, 236))),
        (5, 4, Some((1199, 22448))),
        (5, 5, None),
    ];
    for &(ell, m, expected) in pinned {
        match (zeta_negative(ell, m, 192), expected) {
            (Ok(v), Some((n, d))) => {
                assert!(v.certified);
                assert_eq!(v.rational, Some(ratio(n, d)), "ell={ell} m={m}");
            }
            (Err(Error::Pole { m: got }), None) => assert_eq!(got, m),
            (other, _) => panic!("ell={ell} m={m}: {other:?}"),
        }
    }
    let wide = zeta_negative(5, 6, 320).unwrap();
    assert!(wide.certified);
    let expected = Rational::new(
        "6584417173687209049067".parse().unwrap(),
        "64898617852927309685952".parse().unwrap(),
    );
    assert_eq!(wide.rational, Some(expected));
}

#[test]
fn stable_across_precisions_and_real() {
    for ell in 2..=5u32 {
        for m in 1..=6u32 {
            let low = zeta_negative(ell, m, 192);
            let high = zeta_negative(ell, m, 320);
            match (low, high) {
                (Ok(a), Ok(b)) => {
                    assert!(b.certified, "ell={ell} m={m}");
                    if a.certified {
                        assert_eq!(a.rational, b.rational);
                    } else {
                        // Denominator 64898617852927309685952 exceeds the 2^64 cap at 192 bits.
                        assert_eq!((ell, m), (5, 6));
                    }
                    assert!(a.numeric.im().abs() < HPReal::pow2(-96, 192));
                    assert!(b.numeric.im().abs() < HPReal::pow2(-160, 320));
                    assert_eq!(a.precisions_checked, (192, 256));
                }
                (Err(Error::Pole { .. }), Err(Error::Pole { .. })) => {}
                (a, b) => panic!("ell={ell} m={m}: {a:?} / {b:?}"),
            }
        }
    }
}

#[test]
fn fibonacci_minus_one_at_512_bits() {
    let v = zeta_negative(2, 1, 512).unwrap();
    assert!(v.certified);
    assert_eq!(v.rational, Some(ratio(-1, 1)));
    assert!((v.numeric.re() + HPReal::one(512)).abs() < HPReal::pow2(-400, 512));
    let t = zeta_negative(3, 1, 256).unwrap();
    assert!(t.numeric.im().abs() < HPReal::pow2(-128, 256));
}

#[test]
fn pole_membership() {
    let rs2 = all_roots(2, 192).unwrap();
    assert!(!is_negative_integer_pole(&rs2, 1).unwrap());
    assert!(is_negative_integer_pole(&rs2, 4).unwrap());
    assert!(is_negative_integer_pole(&rs2, 8).unwrap());
    let rs3 = all_roots(3, 192).unwrap();
    assert!(is_negative_integer_pole(&rs3, 3).unwrap());
    assert!(!is_negative_integer_pole(&rs3, 2).unwrap());
    assert!(is_negative_integer_pole(&rs2, 0).is_err());
}

#[test]
fn unchanged_under_relabelling_of_roots() {
    let p = 192;
    for ell in [3u32, 4, 5] {
        let rs = all_roots(ell, p).unwrap();
        let n = rs.others().len();
        let perm: Vec<usize> = (0..n).rev().collect();
        let shuffled = rs.with_others_permuted(&perm);
        for m in [1u32, 2, 4] {
            let (Ok(a), Ok(b)) = (negative_integer_value(&rs, m), negative_integer_value(&shuffled, m)) else {
                continue;
            };
            assert!((&a - &b).abs() < HPReal::pow2(-96, p), "ell={ell} m={m}");
        }
    }
}

#[test]
fn continuation_approaches_special_values() {
    let p = 256;
    let tol = HPReal::from_decimal_str("1e-30", p).unwrap();
    let options = ContinuationOptions::default();
    for (ell, m) in [(2u32, 1u32), (3, 2), (4, 3)] {
        let rs = all_roots(ell, p).unwrap();
        let exact = negative_integer_value(&rs, m).unwrap();
        let near = |d: f64| {
            let s = HPComplex::from_f64(-(m as f64) + d, 0.0, p);
            zeta_continued(&rs, &s, &tol, &options).unwrap().value
        };
        // Linear extrapolation to d = 0 from d = 1e-4 and 1e-6.
        let (v4, v6) = (near(1e-4), near(1e-6));
        let extrapolated = &v6 + &(&(&v6 - &v4) * &HPComplex::from_f64(1.0 / 99.0, 0.0, p));
        let scale = exact.abs().max(&HPReal::one(p));
        assert!(((&extrapolated - &exact).abs() / scale).to_f64() < 1e-6, "ell={ell} m={m}");
        let at = zeta_continued(&rs, &HPComplex::from_i64(-(m as i64), p), &tol, &options).unwrap();
        assert!((&at.value - &exact).abs() < HPReal::pow2(-90, p));
    }
}
