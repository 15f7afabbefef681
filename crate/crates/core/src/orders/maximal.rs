//! Round-2 maximalization: replace an order by the ring of multipliers of its
//! q-radical until the radical is stable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{pow_mod_q, Elt, OrderData};
use crate::arith;
use crate::error::Result;
use crate::fp;
use crate::linalg::{self, Mat};

/// HNF basis of the q-radical `{x : x^(q^k) in qO}` with `q^k >= n`.
pub fn radical(o: &OrderData, q: u64) -> Mat {
    let n = o.degree;
    let mut e: u128 = q as u128;
    while e < n as u128 {
        e *= q as u128;
    }
    let t = o.table_mod(q);
    let images: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = vec![0u64; n];
            v[i] = 1;
            pow_mod_q(&t, &v, e, q)
        })
        .collect();
    // x = sum c_i theta_i is in the radical iff sum c_i F(theta_i) = 0 mod q
    let ker = fp::kernel(&linalg::transpose(&images), n, q);
    let rows: Mat = ker.iter().map(|v| v.iter().map(|&c| BigInt::from(c)).collect()).collect();
    linalg::hnf_mod(&rows, n, &BigInt::from(q))
}

/// `{x in O : x I in q I}` for an ideal `I` of O containing `qO`.
fn multiplier_lattice(o: &OrderData, ideal: &Mat, q: u64) -> Mat {
    let n = o.degree;
    let inv = linalg::inverse_rational(ideal).expect("radical has full rank");
    let qb = BigInt::from(q);
    let mut map: Vec<Vec<u64>> = Vec::with_capacity(n);
    for i in 0..n {
        let th = o.basis_elt(i);
        let mut row = Vec::with_capacity(n * n);
        for g in ideal {
            let prod = o.mul(&th, g);
            for col in 0..n {
                let mut s = BigRational::zero();
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        s += BigRational::from(c.clone()) * &inv[k][col];
                    }
                }
                debug_assert!(s.is_integer(), "I is an ideal");
                row.push(s.to_integer().mod_floor(&qb).to_u64().unwrap());
            }
        }
        map.push(row);
    }
    let ker = fp::kernel(&linalg::transpose(&map), n, q);
    let rows: Mat = ker.iter().map(|v| v.iter().map(|&c| BigInt::from(c)).collect()).collect();
    linalg::hnf_mod(&rows, n, &qb)
}

/// The over-order `U / q` for a lattice `qO <= U <= O` containing `q`.
fn over_order(o: &OrderData, u: &Mat, q: u64) -> OrderData {
    let n = o.degree;
    let qb = BigInt::from(q);
    // HNF with reversed columns ends with the row (q, 0, ..., 0); put it first
    let rev: Mat = u.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    let h = linalg::hnf_mod(&rev, n, &qb);
    let mut v: Mat = h.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    v.rotate_right(1);
    debug_assert!(v[0][0] == qb && v[0][1..].iter().all(|c| c.is_zero()));
    let vinv = linalg::inverse_rational(&v).expect("nonsingular");
    let table: Vec<Vec<Elt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let prod = o.mul(&v[i], &v[j]);
                    (0..n)
                        .map(|col| {
                            let mut s = BigRational::zero();
                            for (k, c) in prod.iter().enumerate() {
                                if !c.is_zero() {
                                    s += BigRational::from(c.clone()) * &vinv[k][col];
                                }
                            }
                            s /= BigRational::from(qb.clone());
                            assert!(s.is_integer(), "ring of multipliers is closed");
                            s.to_integer()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let det = linalg::det(&v).abs();
    let index = qb.pow(n as u32) / &det;
    let mut basis = linalg::mat_mul(&v, &o.basis);
    let mut den = &o.basis_den * &qb;
    let g = basis.iter().flatten().fold(den.clone(), |g, c| g.gcd(c));
    if !g.is_one() {
        for c in basis.iter_mut().flatten() {
            *c = &*c / &g;
        }
        den /= &g;
    }
    let mut out = OrderData {
        degree: n,
        table,
        discriminant: &o.discriminant / (&index * &index),
        poly: o.poly.clone(),
        basis,
        basis_den: den,
        signature: o.signature,
        embeddings: Vec::new(),
    };
    out.refresh_embeddings();
    out
}

/// The q-maximal over-order of `o`. Returns `o` unchanged when `q^2` does not
/// divide the discriminant or `o` is already q-maximal.
pub fn maximalize(o: &OrderData, q: u64) -> OrderData {
    let qb = BigInt::from(q);
    let mut cur = o.clone();
    loop {
        if !(&cur.discriminant % (&qb * &qb)).is_zero() {
            return cur;
        }
        let rad = radical(&cur, q);
        let u = multiplier_lattice(&cur, &rad, q);
        let det = linalg::det(&u).abs();
        if det == qb.pow(cur.degree as u32) {
            return cur;
        }
        cur = over_order(&cur, &u, q);
    }
}

/// Maximal order containing `o`: maximalize at every prime whose square
/// divides the discriminant.
pub fn maximal_order(o: &OrderData) -> Result<OrderData> {
    let mut cur = o.clone();
    for (q, e) in arith::factor_big(&o.discriminant)? {
        if e >= 2 {
            cur = maximalize(&cur, q);
        }
    }
    Ok(cur)
}

/// Whether `o` is q-maximal (a single radical step gives nothing new).
pub fn is_q_maximal(o: &OrderData, q: u64) -> bool {
    let qb = BigInt::from(q);
    if !(&o.discriminant % (&qb * &qb)).is_zero() {
        return true;
    }
    let rad = radical(o, q);
    let u = multiplier_lattice(o, &rad, q);
    linalg::det(&u).abs() == qb.pow(o.degree as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::order_from_polynomial;
    use crate::poly::Poly;

    #[test]
    fn pure_cubic_at_3() {
        // 61 = 7 mod 9: Z[cbrt 61] is already maximal
        let o = order_from_polynomial(&Poly::pure(3, 61)).unwrap();
        let m = maximal_order(&o).unwrap();
        assert_eq!(m.discriminant, BigInt::from(-100467));
        // 10 = 1 mod 9: index 3 at 3
        let o = order_from_polynomial(&Poly::pure(3, 10)).unwrap();
        let m = maximal_order(&o).unwrap();
        assert_eq!(m.discriminant, BigInt::from(-300));
        assert_eq!(m.trace_form_det(), m.discriminant);
        assert_eq!(m.index_in_equation_order(), BigInt::from(3));
    }

    #[test]
    fn non_maximal_quadratic() {
        // Z[sqrt(-3)] has index 2 in Z[w]
        let o = order_from_polynomial(&Poly::from_i64(&[3, 0, 1])).unwrap();
        let m = maximal_order(&o).unwrap();
        assert_eq!(m.discriminant, BigInt::from(-3));
        assert_eq!(m.trace_form_det(), BigInt::from(-3));
        assert_eq!(m.one(), vec![BigInt::one(), BigInt::zero()]);
    }
}
