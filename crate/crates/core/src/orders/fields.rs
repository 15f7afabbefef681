//! The concrete fields: pure cubics, the sextic normal closure and the cubic
//! period fields.

use num_bigint::BigInt;
use num_traits::Zero;

use super::maximal::maximal_order;
use super::{order_from_polynomial, OrderData};
use crate::cyclotomic::period_polynomial;
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::poly::Poly;

fn cube_free(m: i64) -> bool {
    let m = m.unsigned_abs();
    (2..).take_while(|d| d * d * d <= m).all(|d| !m.is_multiple_of(d * d * d))
}

/// Maximal order of Q(cbrt m) for cube-free `m` other than +-1.
pub fn pure_cubic(m: i64) -> Result<OrderData> {
    if m.abs() < 2 || !cube_free(m) {
        return Err(Error::Precondition(format!("{m} must be cube-free and not +-1")));
    }
    maximal_order(&order_from_polynomial(&Poly::pure(3, m))?)
}

/// Minimal polynomial of `cbrt p + w`: `((x - w)^3 - p)((x - w^2)^3 - p)`.
pub fn normal_closure_polynomial(p: i64) -> Poly {
    // coefficients of (x - w)^3 - p over Z[w], low degree first
    let e = |a: i64, b: i64| EisensteinInt::new(a, b);
    let mw = e(0, -1);
    let mw2 = &mw * &mw;
    let c = [
        &(&mw2 * &mw) - &e(p, 0),
        &e(3, 0) * &mw2,
        &e(3, 0) * &mw,
        e(1, 0),
    ];
    let mut out = vec![BigInt::zero(); 7];
    for (i, a) in c.iter().enumerate() {
        for (j, b) in c.iter().enumerate() {
            // the product with the conjugate polynomial is rational
            out[i + j] += (a * &b.conj()).a;
        }
    }
    let poly = Poly::new(out);
    debug_assert!(poly.is_monic());
    poly
}

/// Maximal order of K = Q(cbrt p, w).
pub fn normal_closure(p: i64) -> Result<OrderData> {
    let f = normal_closure_polynomial(p);
    maximal_order(&order_from_polynomial(&f)?)
}

/// Maximal order of the cubic subfield of Q(zeta_p), p = 1 mod 3.
pub fn period_field(p: u64) -> Result<OrderData> {
    let f = period_polynomial(p)?;
    maximal_order(&order_from_polynomial(&f)?)
}

/// Z[w].
pub fn eisenstein_order() -> OrderData {
    order_from_polynomial(&Poly::from_i64(&[1, 1, 1])).expect("irreducible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sextic_discriminants() {
        let k = normal_closure(61).unwrap();
        assert_eq!(k.degree, 6);
        assert_eq!(k.discriminant, BigInt::from(-30280854267i64));
        assert_eq!(k.signature, (0, 3));
        let k = normal_closure(7).unwrap();
        assert_eq!(k.discriminant, BigInt::from(-5250987));
    }

    #[test]
    fn period_field_disc() {
        let m = period_field(7).unwrap();
        assert_eq!(m.discriminant, BigInt::from(49));
        assert_eq!(m.signature, (3, 0));
    }

    #[test]
    fn pure_cubic_rejects_cubes() {
        assert!(pure_cubic(16).is_err());
        assert_eq!(pure_cubic(10).unwrap().discriminant, BigInt::from(-300));
    }
}
