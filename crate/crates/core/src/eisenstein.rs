//! Exact arithmetic in the Eisenstein integers Z[w], w^2 + w + 1 = 0.
//!
//! Elements are stored as `a + b w`. Besides ring arithmetic this module
//! provides the Euclidean algorithm, the splitting `p = alpha * conj(alpha)`
//! of primes `p = 1 mod 3`, factorization into primary primes, and the cubic
//! residue character.
//!
//! Normal forms:
//! * an element coprime to 3 is *primary* when `a = 1 mod 3` and `b = 0 mod 3`;
//!   every such element has exactly one primary associate;
//! * the prime above 3 is always represented by `lambda = 1 - w`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The primitive cube root of unity w (used as zeta_3 throughout).
    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    /// The prime above 3, `1 - w`.
    pub fn lambda() -> Self {
        Self::new(1, -1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a^2 - ab + b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugation, `a + b w^2`.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -&self.b)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// The six units, in the order w^0, -w^2, w, -1, w^2, -w (powers of -w^2).
    pub fn units() -> [Self; 6] {
        [
            Self::new(1, 0),
            Self::new(1, 1),
            Self::new(0, 1),
            Self::new(-1, 0),
            Self::new(-1, -1),
            Self::new(0, -1),
        ]
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact quotient, if `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let t = self * &other.conj();
        if arith::is_zero_mod(&t.a, &n) && arith::is_zero_mod(&t.b, &n) {
            Some(Self::new(t.a / &n, t.b / &n))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Euclidean division with `norm(r) < norm(d)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let n = d.norm();
        assert!(!n.is_zero(), "division by zero in Z[w]");
        let t = self * &d.conj();
        let q = Self::new(arith::div_round(&t.a, &n), arith::div_round(&t.b, &n));
        let r = self - &(&q * d);
        (q, r)
    }

    /// Canonical generator of the ideal generated by `self` and `other`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut x, mut y) = (self.clone(), other.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            debug_assert!(r.norm() < y.norm());
            x = y;
            y = r;
        }
        x.canonical_associate()
    }

    /// `lambda | self`, i.e. `a + b = 0 mod 3`.
    pub fn divisible_by_lambda(&self) -> bool {
        (&self.a + &self.b).mod_floor(&BigInt::from(3)).is_zero()
    }

    pub fn is_primary(&self) -> bool {
        let three = BigInt::from(3);
        self.a.mod_floor(&three).is_one() && self.b.mod_floor(&three).is_zero()
    }

    /// The unique primary associate of an element coprime to 3.
    pub fn primary_associate(&self) -> Option<Self> {
        if self.is_zero() || self.divisible_by_lambda() {
            return None;
        }
        Self::units()
            .iter()
            .map(|u| u * self)
            .find(|x| x.is_primary())
    }

    /// `lambda^k * primary`, the normal form used for gcds and factors.
    pub fn canonical_associate(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lambda = Self::lambda();
        let mut k = 0;
        let mut x = self.clone();
        while x.divisible_by_lambda() {
            x = x.div_exact(&lambda).expect("lambda divides");
            k += 1;
        }
        if x.is_unit() {
            return lambda.pow(k);
        }
        &lambda.pow(k) * &x.primary_associate().expect("coprime to lambda")
    }

    /// Coordinates reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        Self::new(self.a.mod_floor(m), self.b.mod_floor(m))
    }

    /// Multiplication modulo the rational integer `m`.
    pub fn mul_mod(&self, other: &Self, m: &BigInt) -> Self {
        (self * other).reduce_mod(m)
    }

    pub fn pow_mod(&self, e: &BigInt, m: &BigInt) -> Self {
        let mut acc = Self::one().reduce_mod(m);
        let mut base = self.reduce_mod(m);
        let mut e = e.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e /= &two;
        }
        acc
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}w", self.a, -&self.b)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, o: &EisensteinInt) -> EisensteinInt {
        let bd = &self.b * &o.b;
        EisensteinInt::new(
            &self.a * &o.a - &bd,
            &self.a * &o.b + &self.b * &o.a - bd,
        )
    }
}

impl Add for EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, o: EisensteinInt) -> EisensteinInt {
        &self + &o
    }
}

impl Sub for EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, o: EisensteinInt) -> EisensteinInt {
        &self - &o
    }
}

impl Mul for EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, o: EisensteinInt) -> EisensteinInt {
        &self * &o
    }
}

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt::new(-self.a, -self.b)
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt::new(-&self.a, -&self.b)
    }
}

/// A value of a cubic symbol, stored as the exponent `e` of `w^e`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymbolValue(u8);

impl SymbolValue {
    pub const TRIVIAL: SymbolValue = SymbolValue(0);

    pub fn new(e: i64) -> Self {
        SymbolValue(e.rem_euclid(3) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_trivial(self) -> bool {
        self.0 == 0
    }

    pub fn times(self, k: i64) -> Self {
        Self::new(self.0 as i64 * k.rem_euclid(3))
    }
}

impl Add for SymbolValue {
    type Output = SymbolValue;
    fn add(self, o: SymbolValue) -> SymbolValue {
        SymbolValue((self.0 + o.0) % 3)
    }
}

impl Sub for SymbolValue {
    type Output = SymbolValue;
    fn sub(self, o: SymbolValue) -> SymbolValue {
        SymbolValue((self.0 + 3 - o.0) % 3)
    }
}

impl Neg for SymbolValue {
    type Output = SymbolValue;
    fn neg(self) -> SymbolValue {
        SymbolValue((3 - self.0) % 3)
    }
}

impl std::iter::Sum for SymbolValue {
    fn sum<I: Iterator<Item = SymbolValue>>(iter: I) -> SymbolValue {
        iter.fold(SymbolValue::TRIVIAL, |a, b| a + b)
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{}", self.0)
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidPrime { value: p.to_string(), reason: "not prime" });
    }
    Ok(())
}

/// A nontrivial cube root of unity modulo a prime `p = 1 mod 3`.
pub(crate) fn cube_root_of_unity_mod(p: u64) -> u64 {
    (2..p)
        .map(|x| arith::pow_mod(x, (p - 1) / 3, p))
        .find(|&r| r != 1)
        .expect("p = 1 mod 3 has non-cubes")
}

/// Split a prime `p = 1 mod 3` as `alpha * conj(alpha)`.
///
/// Both factors are primary; `alpha` is the one with positive `w`-coordinate.
pub fn split_prime(p: u64) -> Result<(EisensteinInt, EisensteinInt)> {
    check_prime(p)?;
    if p % 3 != 1 {
        return Err(Error::InvalidPrime { value: p.to_string(), reason: "not 1 mod 3" });
    }
    // r is a root of x^2 + x + 1 mod p, so r - w lies in exactly one prime above p.
    let r = cube_root_of_unity_mod(p);
    let pi = EisensteinInt::from_int(p).gcd(&EisensteinInt::new(r, -1));
    debug_assert_eq!(pi.norm(), BigInt::from(p));
    let pi = pi.primary_associate().expect("prime above p is coprime to 3");
    let bar = pi.conj();
    if pi.b.is_positive() {
        Ok((pi, bar))
    } else {
        Ok((bar, pi))
    }
}

/// The residue field of a prime of Z[w] away from 3.
#[derive(Clone, Debug)]
pub enum ResidueField {
    /// `Z[w]/pi = F_q` with `w -> omega_image`.
    Split { q: u64, omega_image: u64 },
    /// `Z[w]/q = F_{q^2}` for an inert rational prime `q = 2 mod 3`.
    Inert { q: u64 },
}

impl ResidueField {
    pub fn of(pi: &EisensteinInt) -> Result<Self> {
        let n = pi.norm();
        let bad = || Error::BadModulus(pi.to_string());
        let nv = n.to_u64().ok_or_else(bad)?;
        if nv > 1 && arith::is_prime(nv) && nv % 3 == 1 {
            let q = nv;
            let qb = BigInt::from(q);
            let c = pi.a.mod_floor(&qb).to_i64().unwrap();
            let d = pi.b.mod_floor(&qb).to_i64().unwrap();
            let dinv = arith::inv_mod(d, q as i64).ok_or_else(bad)?;
            let w = ((q as i64 - c) as i128 * dinv as i128).rem_euclid(q as i128) as u64;
            debug_assert_eq!((w * w % q + w + 1) % q, 0);
            return Ok(ResidueField::Split { q, omega_image: w });
        }
        // Inert primes: pi is an associate of a rational prime q = 2 mod 3.
        if let Some(q) = arith::exact_isqrt(nv) {
            if arith::is_prime(q) && q % 3 == 2 {
                let qb = BigInt::from(q);
                let assoc = EisensteinInt::units()
                    .iter()
                    .any(|u| (u * pi) == EisensteinInt::from_int(qb.clone()));
                if assoc {
                    return Ok(ResidueField::Inert { q });
                }
            }
        }
        Err(bad())
    }

    /// Size of the residue field.
    pub fn order(&self) -> u64 {
        match *self {
            ResidueField::Split { q, .. } => q,
            ResidueField::Inert { q } => q * q,
        }
    }

    /// Exponent `e` with `x^((N-1)/3) = w^e` in the residue field.
    pub fn cubic_char(&self, x: &EisensteinInt) -> Result<SymbolValue> {
        match *self {
            ResidueField::Split { q, omega_image } => {
                let qb = BigInt::from(q);
                let xa = x.a.mod_floor(&qb).to_u64().unwrap();
                let xb = x.b.mod_floor(&qb).to_u64().unwrap();
                let v = (xa + arith::mul_mod(xb, omega_image, q)) % q;
                if v == 0 {
                    return Err(Error::NotCoprime(format!("{x} vanishes mod a prime of norm {q}")));
                }
                let t = arith::pow_mod(v, (q - 1) / 3, q);
                if t == 1 {
                    Ok(SymbolValue::new(0))
                } else if t == omega_image {
                    Ok(SymbolValue::new(1))
                } else {
                    debug_assert_eq!(t, arith::mul_mod(omega_image, omega_image, q));
                    Ok(SymbolValue::new(2))
                }
            }
            ResidueField::Inert { q } => {
                let qb = BigInt::from(q);
                let xr = x.reduce_mod(&qb);
                if xr.is_zero() {
                    return Err(Error::NotCoprime(format!("{x} vanishes mod {q}")));
                }
                let t = xr.pow_mod(&BigInt::from((q * q - 1) / 3), &qb);
                let one = EisensteinInt::one();
                let w = EisensteinInt::omega();
                let w2 = EisensteinInt::new(-1, -1).reduce_mod(&qb);
                if t == one {
                    Ok(SymbolValue::new(0))
                } else if t == w {
                    Ok(SymbolValue::new(1))
                } else if t == w2 {
                    Ok(SymbolValue::new(2))
                } else {
                    unreachable!("x^((q^2-1)/3) is a cube root of unity")
                }
            }
        }
    }
}

/// Cubic residue character `chi_pi(a)`: the exponent `e` with
/// `a^((N(pi)-1)/3) = w^e mod pi`.
pub fn cubic_char(a: &EisensteinInt, pi: &EisensteinInt) -> Result<SymbolValue> {
    ResidueField::of(pi)?.cubic_char(a)
}

/// Whether `x^3 = a mod p` is solvable, for `a` coprime to the prime `p`.
pub fn is_cube_mod_p(a: i64, p: u64) -> Result<bool> {
    check_prime(p)?;
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(Error::NotCoprime(format!("{a} and {p}")));
    }
    if p % 3 != 1 {
        // cubing is a bijection on F_p^*
        return Ok(true);
    }
    Ok(arith::pow_mod(r, (p - 1) / 3, p) == 1)
}

/// `unit * prod(prime^e)` with primary primes (and `lambda` for the prime above 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: EisensteinInt,
    pub factors: Vec<(EisensteinInt, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> EisensteinInt {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

/// Largest norm `factor` will attempt by default.
pub const DEFAULT_FACTOR_BUDGET: u64 = u64::MAX;

pub fn factor(z: &EisensteinInt) -> Result<Factorization> {
    factor_with_budget(z, DEFAULT_FACTOR_BUDGET)
}

/// Factor `z` into primes of Z[w], refusing norms above `max_norm`.
pub fn factor_with_budget(z: &EisensteinInt, max_norm: u64) -> Result<Factorization> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = z.norm();
    let too_hard = || Error::FactorizationTooHard(format!("norm of {z}"));
    let nv = n.to_u64().ok_or_else(too_hard)?;
    if nv > max_norm {
        return Err(too_hard());
    }
    let mut rest = z.clone();
    let mut factors = Vec::new();
    let mut strip = |pi: EisensteinInt, rest: &mut EisensteinInt| {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&pi) {
            *rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((pi, e));
        }
    };
    for (q, _) in arith::factor(nv) {
        if q == 3 {
            strip(EisensteinInt::lambda(), &mut rest);
        } else if q % 3 == 1 {
            let (pi, bar) = split_prime(q)?;
            strip(pi, &mut rest);
            strip(bar, &mut rest);
        } else {
            strip(EisensteinInt::from_int(-(q as i64)), &mut rest);
        }
    }
    debug_assert!(rest.is_unit());
    let f = Factorization { unit: rest, factors };
    debug_assert_eq!(&f.expand(), z);
    Ok(f)
}

/// Valuation of `z` at the prime `pi`, and the cofactor `z / pi^v`.
pub fn valuation(z: &EisensteinInt, pi: &EisensteinInt) -> (u32, EisensteinInt) {
    let mut v = 0;
    let mut rest = z.clone();
    while let Some(q) = rest.div_exact(pi) {
        rest = q;
        v += 1;
    }
    (v, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn norms() {
        assert_eq!(e(1, 0).norm(), BigInt::from(1));
        assert_eq!(EisensteinInt::lambda().norm(), BigInt::from(3));
        assert_eq!(e(9, 4).norm(), BigInt::from(61));
        assert_eq!(e(3, 1).norm(), BigInt::from(7));
    }

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let w = EisensteinInt::omega();
        assert_eq!(&(&w * &w) + &w, e(-1, 0));
        assert_eq!(w.pow(3), EisensteinInt::one());
        let l = EisensteinInt::lambda();
        assert_eq!(&l * &l, e(0, -3));
    }

    #[test]
    fn split_prime_examples() {
        let (a, b) = split_prime(61).unwrap();
        assert_eq!(a, e(4, 9));
        assert_eq!(&a * &b, EisensteinInt::from_int(61));
        assert!(a.is_primary() && b.is_primary());
        let (a7, _) = split_prime(7).unwrap();
        assert_eq!(a7.norm(), BigInt::from(7));
        assert!(matches!(split_prime(5), Err(Error::InvalidPrime { .. })));
        assert!(matches!(split_prime(91), Err(Error::InvalidPrime { .. })));
    }

    #[test]
    fn unique_primary_associate() {
        for (a, b) in [(2, 0), (3, 1), (5, 8), (-4, 9)] {
            let x = e(a, b);
            let prim: Vec<_> = EisensteinInt::units()
                .iter()
                .map(|u| u * &x)
                .filter(|y| y.is_primary())
                .collect();
            assert_eq!(prim.len(), 1, "{x}");
        }
    }

    #[test]
    fn factor_examples() {
        let l = EisensteinInt::lambda();
        let f = factor(&(&l * &l)).unwrap();
        assert_eq!(f.factors, vec![(l.clone(), 2)]);
        assert!(f.unit.is_unit());

        let f = factor(&EisensteinInt::from_int(61)).unwrap();
        let (a, b) = split_prime(61).unwrap();
        assert_eq!(f.factors, vec![(a, 1), (b, 1)]);

        let f = factor(&EisensteinInt::from_int(2)).unwrap();
        assert_eq!(f.factors, vec![(e(-2, 0), 1)]);
        assert_eq!(f.unit, e(-1, 0));
        assert!(matches!(factor(&EisensteinInt::zero()), Err(Error::ZeroArgument)));
        assert!(matches!(
            factor_with_budget(&e(1000, 1), 1000),
            Err(Error::FactorizationTooHard(_))
        ));
    }

    #[test]
    fn cubic_char_examples() {
        let (pi, _) = split_prime(61).unwrap();
        assert!(cubic_char(&EisensteinInt::from_int(3), &pi).unwrap().is_trivial());
        assert!(is_cube_mod_p(3, 61).unwrap());
        assert!(!is_cube_mod_p(3, 7).unwrap());
        assert!(is_cube_mod_p(1, 13).unwrap());
        assert!(matches!(is_cube_mod_p(61, 61), Err(Error::NotCoprime(_))));
        assert!(matches!(cubic_char(&pi, &pi), Err(Error::NotCoprime(_))));
        assert!(matches!(
            cubic_char(&e(1, 0), &EisensteinInt::lambda()),
            Err(Error::BadModulus(_))
        ));
        assert!(cubic_char(&e(1, 0), &e(5, 0)).is_ok());
        assert!(matches!(cubic_char(&e(1, 0), &e(7, 0)), Err(Error::BadModulus(_))));
    }

    #[test]
    fn gcd_is_canonical() {
        let (a, b) = split_prime(13).unwrap();
        let x = &a.pow(2) * &b;
        let y = &a * &EisensteinInt::lambda();
        assert_eq!(x.gcd(&y), a);
        assert_eq!(e(6, 0).gcd(&e(0, 9)), EisensteinInt::lambda().pow(2));
    }
}
