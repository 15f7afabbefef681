//! Cubic Hilbert symbols over k = Q(w).
//!
//! Values are exponents of `w`. The tame symbol at a prime `pi` prime to 3 is
//! `chi_pi((-1)^(v(a)v(b)) b^v(a) / a^v(b))`. This orientation is the one
//! for which `(w, p alpha)_(alpha) = w^((p-1)/3)` with `p = alpha * conj(alpha)`
//! (note `v_alpha(p alpha) = 2`); the opposite one inverts every value.
//! The symbol at `lambda` is defined through the product formula.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::eisenstein::{self, EisensteinInt, ResidueField, SymbolValue};
use crate::error::{Error, Result};
use crate::localfield::{self, Base, LocalNumber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlaceKind {
    Lambda,
    /// One of the two primes above a rational `q = 1 mod 3`.
    Split,
    /// A rational prime `q = 2 mod 3`, inert in k.
    Inert,
}

/// A finite place of k, given by a prime generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaceOfK {
    pub kind: PlaceKind,
    pub generator: EisensteinInt,
}

impl PlaceOfK {
    pub fn lambda() -> Self {
        PlaceOfK { kind: PlaceKind::Lambda, generator: EisensteinInt::lambda() }
    }

    /// The place of a prime element; its kind is read off the norm.
    pub fn of(pi: &EisensteinInt) -> Result<Self> {
        let n = pi.norm().to_u64().ok_or_else(|| Error::BadModulus(pi.to_string()))?;
        let kind = if n == 3 {
            PlaceKind::Lambda
        } else if arith::is_prime(n) && n % 3 == 1 {
            PlaceKind::Split
        } else if arith::exact_isqrt(n).is_some_and(|q| arith::is_prime(q) && q % 3 == 2) {
            ResidueField::of(pi)?;
            PlaceKind::Inert
        } else {
            return Err(Error::BadModulus(pi.to_string()));
        };
        let generator = if kind == PlaceKind::Lambda {
            EisensteinInt::lambda()
        } else {
            pi.canonical_associate()
        };
        Ok(PlaceOfK { kind, generator })
    }

    /// The complex-conjugate place.
    pub fn conj(&self) -> Self {
        PlaceOfK::of(&self.generator.conj()).expect("conjugate of a prime is prime")
    }
}

fn ensure_nonzero(a: &EisensteinInt, b: &EisensteinInt) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(())
}

/// Tame symbol `(a, b)_v` at a place prime to 3.
pub fn tame_symbol(a: &EisensteinInt, b: &EisensteinInt, v: &PlaceOfK) -> Result<SymbolValue> {
    ensure_nonzero(a, b)?;
    if v.kind == PlaceKind::Lambda {
        return Err(Error::Precondition("tame symbol requested at lambda".into()));
    }
    let field = ResidueField::of(&v.generator)?;
    let (va, ua) = eisenstein::valuation(a, &v.generator);
    let (vb, ub) = eisenstein::valuation(b, &v.generator);
    if va == 0 && vb == 0 {
        return Ok(SymbolValue::TRIVIAL);
    }
    // chi(-1) is trivial, so the sign (-1)^(va vb) drops out
    let mut e = SymbolValue::TRIVIAL;
    if va > 0 {
        e = e + field.cubic_char(&ub)?.times(va as i64);
    }
    if vb > 0 {
        e = e - field.cubic_char(&ua)?.times(vb as i64);
    }
    Ok(e)
}

/// The same tame symbol at a split place, computed in Z_p through the
/// embedding attached to `v` instead of in Z[w]/v.
pub fn tame_symbol_padic(a: &EisensteinInt, b: &EisensteinInt, v: &PlaceOfK) -> Result<SymbolValue> {
    ensure_nonzero(a, b)?;
    if v.kind != PlaceKind::Split {
        return Err(Error::Precondition("p-adic route needs a split place".into()));
    }
    let p = v.generator.norm().to_u64().unwrap();
    let base = Base::PAdic { p };
    let la = localfield::embed_eisenstein(a, &base, 1, Some(&v.generator))?;
    let lb = localfield::embed_eisenstein(b, &base, 1, Some(&v.generator))?;
    // unit part of (-1)^(va vb) b^va / a^vb
    let mut x = lb.pow(la.valuation as u32).mul(&la.pow(lb.valuation as u32).inverse());
    if la.valuation * lb.valuation % 2 == 1 {
        x.unit = -x.unit;
    }
    let r = localfield::omega_in_zp(&v.generator, p, 1).to_u64().unwrap();
    let xu = x.unit.a.to_i64().unwrap().rem_euclid(p as i64) as u64;
    let t = arith::pow_mod(xu, (p - 1) / 3, p);
    Ok(if t == 1 {
        SymbolValue::new(0)
    } else if t == r {
        SymbolValue::new(1)
    } else {
        SymbolValue::new(2)
    })
}

/// Places of k other than lambda dividing `z`.
pub fn places_dividing(z: &EisensteinInt) -> Result<Vec<PlaceOfK>> {
    let f = eisenstein::factor(z)?;
    f.factors
        .iter()
        .filter(|(pi, _)| pi.norm() != BigInt::from(3))
        .map(|(pi, _)| PlaceOfK::of(pi))
        .collect()
}

fn tame_places(a: &EisensteinInt, b: &EisensteinInt) -> Result<Vec<PlaceOfK>> {
    let mut places = places_dividing(a)?;
    for v in places_dividing(b)? {
        if !places.contains(&v) {
            places.push(v);
        }
    }
    Ok(places)
}

/// Sum of the tame symbols over all places prime to 3.
pub fn tame_total(a: &EisensteinInt, b: &EisensteinInt) -> Result<SymbolValue> {
    ensure_nonzero(a, b)?;
    tame_places(a, b)?
        .iter()
        .map(|v| tame_symbol(a, b, v))
        .sum()
}

/// The symbol at lambda: minus the sum of all tame symbols.
pub fn wild_symbol(a: &EisensteinInt, b: &EisensteinInt) -> Result<SymbolValue> {
    Ok(-tame_total(a, b)?)
}

/// Symbol at any finite place.
pub fn symbol_at(a: &EisensteinInt, b: &EisensteinInt, v: &PlaceOfK) -> Result<SymbolValue> {
    match v.kind {
        PlaceKind::Lambda => wild_symbol(a, b),
        _ => tame_symbol(a, b, v),
    }
}

/// Maximum search radius (in multiples of 9 per coordinate) for global lifts.
pub const DEFAULT_LIFT_RADIUS: u32 = 4;

/// Global elements congruent to a lambda-adic unit modulo 9, nearest first.
pub fn unit_lifts(u: &LocalNumber, radius: u32) -> Result<Vec<EisensteinInt>> {
    if u.valuation != 0 {
        return Err(Error::NotAUnit(format!("{u:?}")));
    }
    if u.precision < 2 {
        return Err(Error::PrecisionExhausted("lifting needs the unit mod 9".into()));
    }
    let nine = BigInt::from(9);
    let base = u.unit.reduce_mod(&nine);
    let centered = |x: &BigInt| if x > &BigInt::from(4) { x - &nine } else { x.clone() };
    let z0 = EisensteinInt::new(centered(&base.a), centered(&base.b));
    let r = radius as i64;
    let mut lifts: Vec<EisensteinInt> = (-r..=r)
        .flat_map(|s| (-r..=r).map(move |t| (s, t)))
        .map(|(s, t)| &z0 + &EisensteinInt::new(9 * s, 9 * t))
        .collect();
    lifts.sort_by_key(|z| z.norm());
    Ok(lifts)
}

fn symbol_of_units(u: &LocalNumber, w: &LocalNumber, radius: u32) -> Result<SymbolValue> {
    let (x, y) = (unit_lifts(u, radius)?, unit_lifts(w, radius)?);
    let budget = 1u64 << 40;
    for (zx, zy) in x.iter().zip(y.iter()) {
        let ok = eisenstein::factor_with_budget(zx, budget).is_ok()
            && eisenstein::factor_with_budget(zy, budget).is_ok();
        if ok {
            return wild_symbol(zx, zy);
        }
    }
    Err(Error::LiftSearchFailed(radius))
}

/// Symbol at lambda of two elements of the completion.
///
/// Bilinearity reduces to unit pairings and pairings with lambda, using
/// `(lambda, lambda) = (lambda, -1) = 1`; units are replaced by global
/// elements congruent modulo 9, which does not change their class mod cubes.
pub fn wild_symbol_local(a: &LocalNumber, b: &LocalNumber) -> Result<SymbolValue> {
    wild_symbol_local_with(a, b, DEFAULT_LIFT_RADIUS)
}

pub fn wild_symbol_local_with(a: &LocalNumber, b: &LocalNumber, radius: u32) -> Result<SymbolValue> {
    if a.base != Base::Lambda || b.base != Base::Lambda {
        return Err(Error::Precondition("wild symbol needs lambda-adic arguments".into()));
    }
    let ua = LocalNumber { valuation: 0, ..a.clone() };
    let ub = LocalNumber { valuation: 0, ..b.clone() };
    let lam_pair = |u: &LocalNumber| -> Result<SymbolValue> {
        let lifts = unit_lifts(u, radius)?;
        let z = lifts.first().ok_or(Error::LiftSearchFailed(radius))?;
        wild_symbol(&EisensteinInt::lambda(), z)
    };
    let mut e = symbol_of_units(&ua, &ub, radius)?;
    if a.valuation != 0 {
        e = e + lam_pair(&ub)?.times(a.valuation);
    }
    if b.valuation != 0 {
        e = e - lam_pair(&ua)?.times(b.valuation);
    }
    Ok(e)
}

/// Whether all local symbols of `(a, b)` multiply to 1, with the lambda
/// component computed from the local classes of `a` and `b` (through
/// different global representatives than `a` and `b` themselves).
pub fn product_formula_check(a: &EisensteinInt, b: &EisensteinInt) -> Result<bool> {
    let tame = tame_total(a, b)?;
    let prec = localfield::DEFAULT_PRECISION;
    let la = localfield::embed_eisenstein(a, &Base::Lambda, prec, None)?;
    let lb = localfield::embed_eisenstein(b, &Base::Lambda, prec, None)?;
    let wild = wild_symbol_local(&la, &lb)?;
    Ok((tame + wild).is_trivial())
}

/// Equivariance under complex conjugation:
/// `(conj a, conj b)_(conj v) = conj((a, b)_v)`.
pub fn galois_conjugate_symbol_check(a: &EisensteinInt, b: &EisensteinInt, v: &PlaceOfK) -> Result<bool> {
    let s = symbol_at(a, b, v)?;
    let t = symbol_at(&a.conj(), &b.conj(), &v.conj())?;
    Ok(t == -s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn closed_form_at_alpha() {
        for p in arith::primes_up_to(200).into_iter().filter(|p| p % 3 == 1) {
            let (alpha, _) = eisenstein::split_prime(p).unwrap();
            let pa = &EisensteinInt::from_int(p) * &alpha;
            let v = PlaceOfK::of(&alpha).unwrap();
            let s = tame_symbol(&EisensteinInt::omega(), &pa, &v).unwrap();
            assert_eq!(s, SymbolValue::new(((p - 1) / 3) as i64), "p = {p}");
            assert_eq!(tame_symbol_padic(&EisensteinInt::omega(), &pa, &v).unwrap(), s);
        }
    }

    #[test]
    fn rational_pairs_are_trivial_at_lambda() {
        for a in [1, 2, 4, 5, 7, 10, 26] {
            for b in [1, 2, 5, 8, 13, 25] {
                let s = wild_symbol(&EisensteinInt::from_int(a), &EisensteinInt::from_int(b)).unwrap();
                assert!(s.is_trivial(), "({a},{b})");
            }
        }
    }

    #[test]
    fn omega_p_at_lambda() {
        for p in [7u64, 13, 19, 31, 37, 61] {
            let s = wild_symbol(&EisensteinInt::omega(), &EisensteinInt::from_int(p)).unwrap();
            assert_eq!(s.is_trivial(), p % 9 == 1, "p = {p}");
        }
    }

    #[test]
    fn product_formula_examples() {
        assert!(product_formula_check(&EisensteinInt::omega(), &EisensteinInt::from_int(61)).unwrap());
        assert!(product_formula_check(&EisensteinInt::lambda(), &EisensteinInt::lambda()).unwrap());
        assert!(product_formula_check(&e(5, 8), &e(-7, 3)).unwrap());
        assert!(product_formula_check(&e(2, 0), &e(0, 1)).unwrap());
    }

    #[test]
    fn conjugation() {
        let (alpha, abar) = eisenstein::split_prime(61).unwrap();
        let pa = &EisensteinInt::from_int(61) * &alpha;
        let v = PlaceOfK::of(&alpha).unwrap();
        assert_eq!(v.conj(), PlaceOfK::of(&abar).unwrap());
        assert!(galois_conjugate_symbol_check(&EisensteinInt::omega(), &pa, &v).unwrap());
        assert!(galois_conjugate_symbol_check(&e(3, 7), &e(11, -2), &PlaceOfK::lambda()).unwrap());
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(wild_symbol(&EisensteinInt::zero(), &e(1, 0)), Err(Error::ZeroArgument)));
    }
}
