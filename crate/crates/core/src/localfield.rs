//! Truncated local arithmetic: the ramified ring Z_3[w] with uniformizer
//! `lambda = 1 - w`, and Z_p for a prime `p`.
//!
//! A [`LocalNumber`] is `pi^valuation * unit` where the unit is known modulo
//! `3^precision` (resp. `p^precision`). For the lambda-adic base the
//! valuation counts powers of lambda, so `v(3) = 2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::eisenstein::{self, EisensteinInt};
use crate::error::{Error, Result};
use crate::fp;
use crate::poly::Poly;

/// Default number of powers of 3 carried by a unit.
pub const DEFAULT_PRECISION: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    /// Z_3[w], uniformizer lambda.
    Lambda,
    /// Z_p.
    PAdic { p: u64 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalNumber {
    pub base: Base,
    /// Unit part: `a + b w` for the lambda-adic base, `b = 0` for Z_p.
    pub unit: EisensteinInt,
    pub valuation: i64,
    pub precision: u32,
}

fn pow3(n: u32) -> BigInt {
    BigInt::from(3u32).pow(n)
}

/// `z / lambda` when lambda divides `z`: `z (2 + w) / 3`.
fn div_lambda(z: &EisensteinInt) -> Option<EisensteinInt> {
    let t = z * &EisensteinInt::new(2, 1);
    let three = BigInt::from(3);
    (t.a.is_multiple_of(&three) && t.b.is_multiple_of(&three))
        .then(|| EisensteinInt::new(&t.a / &three, &t.b / &three))
}

impl LocalNumber {
    pub fn modulus(&self) -> BigInt {
        match self.base {
            Base::Lambda => pow3(self.precision),
            Base::PAdic { p } => BigInt::from(p).pow(self.precision),
        }
    }

    /// Lambda-adic number from a representative known modulo `3^precision`.
    ///
    /// Fails if the representative vanishes at this precision.
    pub fn lambda_from(z: &EisensteinInt, precision: u32) -> Result<Self> {
        let m = pow3(precision);
        let mut u = z.reduce_mod(&m);
        if u.is_zero() {
            return Err(Error::PrecisionExhausted(format!("{z} vanishes mod 3^{precision}")));
        }
        // every division by lambda costs half a power of 3; track it in lambda units
        let mut v = 0i64;
        while u.divisible_by_lambda() {
            u = div_lambda(&u).unwrap();
            v += 1;
        }
        let lost = (v as u32).div_ceil(2);
        let prec = precision - lost;
        Ok(LocalNumber {
            base: Base::Lambda,
            unit: u.reduce_mod(&pow3(prec)),
            valuation: v,
            precision: prec,
        })
    }

    pub fn one(base: Base, precision: u32) -> Self {
        LocalNumber { base, unit: EisensteinInt::one(), valuation: 0, precision }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == 0
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.base, o.base);
        let precision = self.precision.min(o.precision);
        let mut r = LocalNumber {
            base: self.base.clone(),
            unit: EisensteinInt::zero(),
            valuation: self.valuation + o.valuation,
            precision,
        };
        r.unit = self.unit.mul_mod(&o.unit, &r.modulus());
        r
    }

    pub fn inverse(&self) -> Self {
        let m = self.modulus();
        let unit = match self.base {
            Base::Lambda => {
                // u^-1 = conj(u) / N(u), and N(u) is prime to 3
                let n = self.unit.norm().mod_floor(&m);
                let ninv = n.modinv(&m).expect("units have invertible norm");
                self.unit.conj().mul_mod(&EisensteinInt::from_int(ninv), &m)
            }
            Base::PAdic { .. } => {
                let a = self.unit.a.modinv(&m).expect("unit");
                EisensteinInt::from_int(a)
            }
        };
        LocalNumber { unit, valuation: -self.valuation, ..self.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let m = self.modulus();
        LocalNumber {
            unit: self.unit.pow_mod(&BigInt::from(e), &m),
            valuation: self.valuation * e as i64,
            ..self.clone()
        }
    }

    /// Value `pi^v * unit` as a representative (only for `v >= 0`).
    pub fn value(&self) -> EisensteinInt {
        assert!(self.valuation >= 0, "negative valuation has no integral representative");
        match self.base {
            Base::Lambda => &EisensteinInt::lambda().pow(self.valuation as u32) * &self.unit,
            Base::PAdic { p } => {
                let pv = BigInt::from(p).pow(self.valuation as u32);
                EisensteinInt::from_int(&self.unit.a * pv)
            }
        }
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        assert!(precision <= self.precision, "cannot invent precision");
        let mut r = LocalNumber { precision, ..self.clone() };
        r.unit = r.unit.reduce_mod(&r.modulus());
        r
    }

    /// Equality of the represented values at the common precision.
    pub fn congruent(&self, o: &Self) -> bool {
        let prec = self.precision.min(o.precision);
        self.valuation == o.valuation
            && self.with_precision(prec).unit == o.with_precision(prec).unit
    }
}

impl fmt::Debug for LocalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pi, q) = match self.base {
            Base::Lambda => ("lambda".to_string(), 3),
            Base::PAdic { p } => (p.to_string(), p),
        };
        write!(f, "{pi}^{} * ({}) + O({q}^{})", self.valuation, self.unit, self.precision)
    }
}

/// Root of `x^2 + x + 1` in Z_p (`p = 1 mod 3`) modulo `p^n`, chosen so that
/// the prime `alpha` maps into the maximal ideal.
pub fn omega_in_zp(alpha: &EisensteinInt, p: u64, n: u32) -> BigInt {
    let pb = BigInt::from(p);
    let r0 = fp::roots(&fp::from_i64(&[1, 1, 1], p), p)
        .into_iter()
        .find(|&r| (&alpha.a + &alpha.b * BigInt::from(r)).mod_floor(&pb).is_zero())
        .expect("alpha lies above p");
    let f = Poly::from_i64(&[1, 1, 1]);
    hensel_simple(&f, BigInt::from(r0), &pb, n)
}

/// Newton lifting of a simple root of `f` modulo `q` to modulo `q^n`.
fn hensel_simple(f: &Poly, r0: BigInt, q: &BigInt, n: u32) -> BigInt {
    let df = f.derivative();
    let mut r = r0;
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        let m = q.pow(k);
        let inv = df.eval(&r).mod_floor(&m).modinv(&m).expect("simple root");
        r = (&r - f.eval(&r) * inv).mod_floor(&m);
    }
    r.mod_floor(&q.pow(n))
}

/// Image of `z` in the completion. For the p-adic base, `omega` maps to the
/// root of `x^2 + x + 1` that is congruent to `-a/b` for `alpha = a + b w`.
pub fn embed_eisenstein(z: &EisensteinInt, base: &Base, precision: u32, alpha: Option<&EisensteinInt>) -> Result<LocalNumber> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match *base {
        Base::Lambda => {
            let (v, u) = eisenstein::valuation(z, &EisensteinInt::lambda());
            Ok(LocalNumber {
                base: Base::Lambda,
                unit: u.reduce_mod(&pow3(precision)),
                valuation: v as i64,
                precision,
            })
        }
        Base::PAdic { p } => {
            let alpha = alpha.ok_or_else(|| Error::Precondition("p-adic embedding needs the prime alpha".into()))?;
            let (va, _) = eisenstein::valuation(z, alpha);
            let n = precision + va;
            let pb = BigInt::from(p);
            let m = pb.pow(n);
            let r = omega_in_zp(alpha, p, n);
            let mut x = (&z.a + &z.b * &r).mod_floor(&m);
            let mut v = 0;
            while !x.is_zero() && x.is_multiple_of(&pb) {
                x /= &pb;
                v += 1;
            }
            if v != va as i64 {
                return Err(Error::PrecisionExhausted(format!("valuation of {z} at {alpha}")));
            }
            Ok(LocalNumber {
                base: Base::PAdic { p },
                unit: EisensteinInt::from_int(x.mod_floor(&pb.pow(precision))),
                valuation: v,
                precision,
            })
        }
    }
}

/// Units of Z[w]/9 that are cubes, as `(a, b)` pairs.
fn cubes_mod_9() -> &'static std::collections::HashSet<(u8, u8)> {
    use std::sync::OnceLock;
    static CUBES: OnceLock<std::collections::HashSet<(u8, u8)>> = OnceLock::new();
    CUBES.get_or_init(|| {
        let nine = BigInt::from(9);
        let mut s = std::collections::HashSet::new();
        for a in 0..9 {
            for b in 0..9 {
                let x = EisensteinInt::new(a, b);
                if x.divisible_by_lambda() {
                    continue;
                }
                let c = x.pow_mod(&BigInt::from(3), &nine);
                s.insert((c.a.to_u8().unwrap(), c.b.to_u8().unwrap()));
            }
        }
        s
    })
}

/// Whether a lambda-adic unit is a cube. Decided modulo 9, since every unit
/// congruent to 1 mod 9 is a cube.
pub fn is_cube_unit(u: &LocalNumber) -> Result<bool> {
    if u.base != Base::Lambda {
        return Err(Error::Precondition("is_cube_unit expects a lambda-adic number".into()));
    }
    if u.valuation != 0 {
        return Err(Error::NotAUnit(format!("{u:?}")));
    }
    if u.precision < 2 {
        return Err(Error::PrecisionExhausted("cube test needs the unit mod 9".into()));
    }
    let r = u.unit.reduce_mod(&BigInt::from(9));
    Ok(cubes_mod_9().contains(&(r.a.to_u8().unwrap(), r.b.to_u8().unwrap())))
}

/// How the lambda-adic place behaves in the Kummer extension `k_lambda(cbrt c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KummerLocalType {
    /// `c` is a local cube: the place splits.
    Split,
    /// Cube modulo `lambda^3` but not a cube: unramified of degree 3.
    Inert,
    Ramified,
}

pub fn kummer_local_type(c: &LocalNumber) -> Result<KummerLocalType> {
    if c.valuation % 3 != 0 {
        return Ok(KummerLocalType::Ramified);
    }
    let u = LocalNumber { valuation: 0, ..c.clone() };
    if is_cube_unit(&u)? {
        return Ok(KummerLocalType::Split);
    }
    // cube modulo lambda^3, which is 3 lambda up to a unit
    let m = BigInt::from(9);
    let target = u.unit.reduce_mod(&m);
    let near_cube = (0..9).any(|a| {
        (0..9).any(|b| {
            let x = EisensteinInt::new(a, b);
            if x.divisible_by_lambda() {
                return false;
            }
            let d = &x.pow_mod(&BigInt::from(3), &m) - &target;
            let three = BigInt::from(3);
            if !(d.a.is_multiple_of(&three) && d.b.is_multiple_of(&three)) {
                return false;
            }
            EisensteinInt::new(&d.a / &three, &d.b / &three).divisible_by_lambda()
        })
    });
    Ok(if near_cube { KummerLocalType::Inert } else { KummerLocalType::Ramified })
}

/// One cube root of `c`, or `None` if `c` is not a cube.
///
/// Lambda-adic roots are seeded by exhaustion modulo 27 and refined by
/// Newton's iteration; p-adic roots start from roots modulo `p`.
pub fn hensel_cube_root(c: &LocalNumber) -> Result<Option<LocalNumber>> {
    Ok(cube_roots(c)?.into_iter().next())
}

/// All cube roots of `c` in the completion, in canonical order (by unit
/// representative, lexicographically).
pub fn cube_roots(c: &LocalNumber) -> Result<Vec<LocalNumber>> {
    if c.valuation % 3 != 0 {
        return Ok(Vec::new());
    }
    let v = c.valuation / 3;
    let mut roots = match c.base {
        Base::Lambda => lambda_unit_cube_roots(&c.unit, c.precision)?,
        Base::PAdic { p } => padic_unit_cube_roots(&c.unit.a, p, c.precision),
    };
    roots.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    Ok(roots
        .into_iter()
        .map(|u| LocalNumber { base: c.base.clone(), unit: u, valuation: v, precision: c.precision })
        .collect())
}

fn lambda_unit_cube_roots(u: &EisensteinInt, n: u32) -> Result<Vec<EisensteinInt>> {
    if n < 3 {
        return Err(Error::PrecisionExhausted("cube roots need the unit mod 27".into()));
    }
    let m27 = BigInt::from(27);
    let target = u.reduce_mod(&m27);
    let three = BigInt::from(3);
    let seed = (0..27i64)
        .flat_map(|a| (0..27i64).map(move |b| EisensteinInt::new(a, b)))
        .find(|x| !x.divisible_by_lambda() && x.pow_mod(&three, &m27) == target);
    let Some(mut x) = seed else { return Ok(Vec::new()) };
    // Newton: x <- x - (x^3 - u) / (3 x^2). With x^3 = u mod 3^k (k >= 3) the
    // step gains at least k - 2 powers of 3.
    let work = pow3(n + 1);
    let m = pow3(n);
    let cube_ok = |x: &EisensteinInt| (&x.pow_mod(&three, &m) - &u.reduce_mod(&m)).reduce_mod(&m).is_zero();
    for _ in 0..64 {
        if cube_ok(&x) {
            break;
        }
        let err = (&x.pow_mod(&three, &work) - u).reduce_mod(&work);
        let err3 = EisensteinInt::new(&err.a / &three, &err.b / &three);
        let x2 = x.mul_mod(&x, &work);
        let n2 = x2.norm().mod_floor(&work).modinv(&work).expect("unit");
        let x2inv = x2.conj().mul_mod(&EisensteinInt::from_int(n2), &work);
        x = (&x - &err3.mul_mod(&x2inv, &work)).reduce_mod(&work);
    }
    if !cube_ok(&x) {
        return Err(Error::PrecisionExhausted("cube root did not converge".into()));
    }
    let x = x.reduce_mod(&m);
    let w = EisensteinInt::omega();
    let wx = w.mul_mod(&x, &m);
    let w2x = w.mul_mod(&wx, &m);
    Ok(vec![x, wx, w2x])
}

fn padic_unit_cube_roots(u: &BigInt, p: u64, n: u32) -> Vec<EisensteinInt> {
    let pb = BigInt::from(p);
    let u0 = u.mod_floor(&pb).to_u64().unwrap();
    let f0 = fp::trim(vec![(p - u0) % p, 0, 0, 1]);
    let f = Poly::new(vec![-u.clone(), BigInt::zero(), BigInt::zero(), BigInt::one()]);
    if p == 3 {
        // cube roots of 3-adic units are not simple roots mod 3; leave to the caller
        return Vec::new();
    }
    fp::roots(&f0, p)
        .into_iter()
        .map(|r| EisensteinInt::from_int(hensel_simple(&f, BigInt::from(r), &pb, n)))
        .collect()
}

/// Outcome of lifting the period polynomial's roots to Z_3.
#[derive(Clone, Debug)]
pub enum PeriodRoots {
    /// The three roots in Z_3, ascending as residues mod `3^precision`.
    Split([BigInt; 3]),
    /// The period polynomial has no root in Z_3: 3 is inert in M+.
    NotSplit,
}

/// Roots in Z_3 of the period polynomial of `p`, modulo `3^precision`.
pub fn lift_period_roots(p: u64, precision: u32) -> Result<PeriodRoots> {
    let f = crate::cyclotomic::period_polynomial(p)?;
    lift_roots_3adic(&f, precision)
}

/// Roots in Z_3 of a monic separable polynomial.
pub fn lift_roots_3adic(f: &Poly, precision: u32) -> Result<PeriodRoots> {
    let three = BigInt::from(3);
    let df = f.derivative();
    let v3 = |x: &BigInt| -> u32 {
        if x.is_zero() {
            return u32::MAX;
        }
        let mut x = x.clone();
        let mut v = 0;
        while x.is_multiple_of(&three) {
            x /= &three;
            v += 1;
        }
        v
    };
    let mut found: Vec<BigInt> = Vec::new();
    // (candidate, known modulo 3^j)
    let mut stack: Vec<(BigInt, u32)> =
        (0..3).map(BigInt::from).filter(|x| f.eval(x).is_multiple_of(&three)).map(|x| (x, 1)).collect();
    // roots are separated at a higher precision than the caller asked for,
    // since distinct roots may agree modulo 3^precision
    let n = precision + 32;
    let m = pow3(n);
    while let Some((x, j)) = stack.pop() {
        let fv = v3(&f.eval(&x));
        let dv = v3(&df.eval(&x));
        if dv != u32::MAX && fv > 2 * dv && j > dv {
            // Hensel's lemma applies: Newton from x converges to a unique root
            let mut r = x.clone();
            let work = pow3(n + 2 * dv + 2);
            for _ in 0..64 {
                let fr = f.eval(&r).mod_floor(&work);
                if fr.is_zero() || v3(&fr) > n + 2 * dv {
                    break;
                }
                let d = df.eval(&r);
                let dvv = v3(&d);
                let unit = &d / three.pow(dvv);
                let inv = unit.mod_floor(&work).modinv(&work).unwrap();
                let step = (&fr / three.pow(dvv)) * inv;
                r = (&r - step).mod_floor(&work);
            }
            let r = r.mod_floor(&m);
            if !found.contains(&r) {
                found.push(r);
            }
            continue;
        }
        if j > n + 40 {
            return Err(Error::PrecisionExhausted("3-adic root lifting".into()));
        }
        let step = pow3(j);
        for t in 0..3 {
            let y = &x + &step * t;
            if v3(&f.eval(&y)) > j {
                stack.push((y, j + 1));
            }
        }
    }
    let pm = pow3(precision);
    let mut found: Vec<BigInt> = found.iter().map(|r| r.mod_floor(&pm)).collect();
    found.sort();
    match found.len() {
        0 => Ok(PeriodRoots::NotSplit),
        3 => Ok(PeriodRoots::Split([found[0].clone(), found[1].clone(), found[2].clone()])),
        k => Err(Error::InconsistentInputs(format!("cubic has {k} roots in Z_3"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(a: i64, b: i64) -> LocalNumber {
        embed_eisenstein(&EisensteinInt::new(a, b), &Base::Lambda, DEFAULT_PRECISION, None).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(lam(1, -1).valuation, 1);
        assert_eq!(lam(3, 0).valuation, 2);
        assert_eq!(lam(9, 4).valuation, 0);
        let x = lam(3, 0).mul(&lam(1, -1));
        assert_eq!(x.valuation, 3);
    }

    #[test]
    fn padic_omega() {
        let (alpha, _) = eisenstein::split_prime(7).unwrap();
        let w = embed_eisenstein(&EisensteinInt::omega(), &Base::PAdic { p: 7 }, 5, Some(&alpha)).unwrap();
        let m = BigInt::from(7).pow(5);
        let r = &w.unit.a;
        assert!(((r * r + r + BigInt::one()) % &m).is_zero());
        let a = embed_eisenstein(&alpha, &Base::PAdic { p: 7 }, 5, Some(&alpha)).unwrap();
        assert_eq!(a.valuation, 1);
    }

    #[test]
    fn cube_units() {
        assert!(is_cube_unit(&lam(10, 9)).unwrap());
        assert!(is_cube_unit(&lam(-1, 0)).unwrap());
        assert!(!is_cube_unit(&lam(0, 1)).unwrap());
        assert!(is_cube_unit(&lam(8, 0)).unwrap());
    }

    #[test]
    fn cube_roots_of_eight_and_omega() {
        let roots = cube_roots(&lam(8, 0)).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(r.pow(3).congruent(&lam(8, 0)));
        }
        assert!(roots.iter().any(|r| r.unit == EisensteinInt::new(2, 0)));
        assert!(hensel_cube_root(&lam(0, 1)).unwrap().is_none());
    }

    #[test]
    fn p_alpha_is_a_local_cube_for_61() {
        let (alpha, _) = eisenstein::split_prime(61).unwrap();
        let c = embed_eisenstein(&(&EisensteinInt::from_int(61) * &alpha), &Base::Lambda, 6, None).unwrap();
        let r = hensel_cube_root(&c).unwrap().expect("p alpha is a cube at lambda");
        assert!(r.pow(3).congruent(&c));
        assert_eq!(kummer_local_type(&c).unwrap(), KummerLocalType::Split);
    }

    #[test]
    fn period_roots() {
        match lift_period_roots(61, 6).unwrap() {
            PeriodRoots::Split(rs) => {
                let f = crate::cyclotomic::period_polynomial(61).unwrap();
                for r in &rs {
                    assert!((f.eval(r) % pow3(6)).is_zero());
                }
                assert!(rs[0] != rs[1] && rs[1] != rs[2]);
            }
            PeriodRoots::NotSplit => panic!("3 splits in M+ for p = 61"),
        }
        assert!(matches!(lift_period_roots(7, 6).unwrap(), PeriodRoots::NotSplit));
    }
}
