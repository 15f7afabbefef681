//! Properties shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};

use purecubic::eisenstein::{cubic_char, EisensteinInt, SymbolValue};
use purecubic::localfield::{self, Base};
use purecubic::orders::{fields, IdealHNF, OrderData};
use purecubic::symbols::{places_dividing, symbol_at, PlaceOfK};

pub const SEED: u64 = 0x5eed;

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

pub fn eis(r: i64) -> impl Strategy<Value = EisensteinInt> {
    (-r..=r, -r..=r).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0).prop_map(|(a, b)| EisensteinInt::new(a, b))
}

fn places(zs: &[&EisensteinInt]) -> Vec<PlaceOfK> {
    let prod = zs.iter().fold(EisensteinInt::one(), |acc, z| &acc * z);
    let mut v = places_dividing(&prod).unwrap();
    v.push(PlaceOfK::lambda());
    v
}

fn sym(a: &EisensteinInt, b: &EisensteinInt, v: &PlaceOfK) -> SymbolValue {
    symbol_at(a, b, v).unwrap()
}

pub fn bilinear(a: &EisensteinInt, b: &EisensteinInt, c: &EisensteinInt) -> Result<(), TestCaseError> {
    let ab = a * b;
    for v in places(&[a, b, c]) {
        prop_assert_eq!(sym(&ab, c, &v), sym(a, c, &v) + sym(b, c, &v), "left, v = {:?}", v);
        prop_assert_eq!(sym(c, &ab, &v), sym(c, a, &v) + sym(c, b, &v), "right, v = {:?}", v);
    }
    Ok(())
}

pub fn antisymmetric(a: &EisensteinInt, b: &EisensteinInt) -> Result<(), TestCaseError> {
    for v in places(&[a, b]) {
        prop_assert_eq!(sym(a, b, &v), -sym(b, a, &v));
    }
    Ok(())
}

pub fn steinberg(a: &EisensteinInt) -> Result<(), TestCaseError> {
    let b = &EisensteinInt::one() - a;
    prop_assume!(!b.is_zero());
    for v in places(&[a, &b]) {
        prop_assert!(sym(a, &b, &v).is_trivial(), "v = {:?}", v);
    }
    Ok(())
}

pub fn cube_trivial(a: &EisensteinInt, c: &EisensteinInt) -> Result<(), TestCaseError> {
    let c3 = c.pow(3);
    for v in places(&[a, c]) {
        prop_assert!(sym(a, &c3, &v).is_trivial());
        prop_assert!(sym(&c3, a, &v).is_trivial());
    }
    Ok(())
}

pub fn pure_order() -> OrderData {
    fields::pure_cubic(61).unwrap()
}

fn elt(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn norm_multiplicative_in(o: &OrderData, x: &[i64], y: &[i64], a: &EisensteinInt, b: &EisensteinInt) -> Result<(), TestCaseError> {
    prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
    let (x, y) = (elt(x), elt(y));
    prop_assert_eq!(o.norm(&o.mul(&x, &y)), o.norm(&x) * o.norm(&y));
    Ok(())
}

pub fn hnf_canonical(o: &OrderData, x: &[i64], y: &[i64], k: i64) -> Result<(), TestCaseError> {
    let (x, y) = (elt(x), elt(y));
    prop_assume!(!o.norm(&x).is_zero() && !o.norm(&y).is_zero());
    let xk: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b * k).collect();
    let i = IdealHNF::from_generators(o, &[x.clone(), y.clone()]);
    prop_assert_eq!(&i, &IdealHNF::from_generators(o, &[y.clone(), xk.clone()]));
    prop_assert_eq!(&i, &IdealHNF::from_generators(o, &[xk, x.clone(), y]));
    prop_assert_eq!(IdealHNF::principal(o, &x), IdealHNF::from_generators(o, &[x]));
    Ok(())
}

/// Cube roots are cube roots, of cubes at lambda and of p-adic units.
pub fn hensel(c: &EisensteinInt, u: i64, p: u64) -> Result<(), TestCaseError> {
    prop_assume!(!c.divisible_by_lambda());
    let n = localfield::DEFAULT_PRECISION;
    let x = localfield::embed_eisenstein(&c.pow(3), &Base::Lambda, n, None).unwrap();
    let roots = localfield::cube_roots(&x).unwrap();
    prop_assert_eq!(roots.len(), 3);
    for r in &roots {
        prop_assert!(r.pow(3).congruent(&x));
    }
    let (alpha, _) = purecubic::eisenstein::split_prime(p).unwrap();
    prop_assume!(u.rem_euclid(p as i64) != 0);
    let y = localfield::embed_eisenstein(&EisensteinInt::from_int(u), &Base::PAdic { p }, n, Some(&alpha)).unwrap();
    for r in localfield::cube_roots(&y).unwrap() {
        prop_assert!(r.pow(3).congruent(&y));
    }
    Ok(())
}

/// Primes of Z[w] with norm below `bound`, one per place.
pub fn small_primes(bound: i64) -> Vec<EisensteinInt> {
    let mut out: Vec<EisensteinInt> = Vec::new();
    for a in -20..=20 {
        for b in -20..=20 {
            let z = EisensteinInt::new(a, b);
            if z.is_zero() || z.norm() >= BigInt::from(bound) || z.norm() == BigInt::from(3) {
                continue;
            }
            if let Ok(v) = PlaceOfK::of(&z) {
                if !out.contains(&v.generator) {
                    out.push(v.generator);
                }
            }
        }
    }
    out.sort_by_key(|z| z.norm());
    out
}

/// `chi_pi(x) = 1` exactly when x is a cube modulo pi, by exhaustion.
pub fn cubic_character_exhaustive(pi: &EisensteinInt, x: &EisensteinInt) -> Result<(), TestCaseError> {
    prop_assume!(!pi.divides(x));
    let n: i64 = pi.norm().try_into().unwrap();
    let q = if n % 3 == 1 { n } else { (n as f64).sqrt().round() as i64 };
    let reps: Vec<EisensteinInt> = if n % 3 == 1 {
        (1..q).map(EisensteinInt::from_int).collect()
    } else {
        (0..q).flat_map(|a| (0..q).map(move |b| EisensteinInt::new(a, b))).filter(|z| !z.is_zero()).collect()
    };
    let is_cube = reps.iter().any(|y| pi.divides(&(&y.pow(3) - x)));
    prop_assert_eq!(cubic_char(x, pi).unwrap().is_trivial(), is_cube, "pi = {}, x = {}", pi, x);
    Ok(())
}

/// Lifted period roots are roots modulo the working precision.
pub fn period_roots(p: u64, n: u32) -> Result<(), TestCaseError> {
    let f = purecubic::cyclotomic::period_polynomial(p).unwrap();
    let m = BigInt::from(3).pow(n);
    if let localfield::PeriodRoots::Split(rs) = localfield::lift_period_roots(p, n).unwrap() {
        for r in &rs {
            prop_assert!((f.eval(r) % &m).is_zero(), "p = {}, r = {}", p, r);
        }
        // the roots sum to the trace of the periods, -1
        prop_assert!(((&rs[0] + &rs[1] + &rs[2] + BigInt::from(1)) % &m).is_zero());
    }
    Ok(())
}
