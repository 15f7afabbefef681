//! Prime ideals above a rational prime and valuations.
//!
//! The generic route splits the semisimple algebra `O / rad(q)` with
//! Frobenius-fixed elements; the Kummer-Dedekind route factors the defining
//! polynomial mod q and only applies when q does not divide the index of the
//! equation order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ideal::IdealHNF;
use super::maximal::{is_q_maximal, radical};
use super::{mul_mod_q, pow_mod_q, Elt, OrderData};
use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::{self, Mat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub q: u64,
    pub e: u32,
    pub f: u32,
    pub ideal: IdealHNF,
    /// `beta` with `beta * P <= qO` and `beta` not in `qO`, so that
    /// `v_P(beta / q) = -1` and `beta / q` is integral at every other prime.
    pub anti: Elt,
}

impl PrimeIdeal {
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.q).pow(self.f)
    }

    /// `v_P(x)` for a nonzero integral element.
    pub fn valuation(&self, o: &OrderData, x: &[BigInt]) -> u32 {
        assert!(x.iter().any(|c| !c.is_zero()), "valuation of zero");
        let qb = BigInt::from(self.q);
        let mut y = x.to_vec();
        let mut v = 0;
        loop {
            let z = o.mul(&y, &self.anti);
            if z.iter().all(|c| c.is_multiple_of(&qb)) {
                y = z.into_iter().map(|c| c / &qb).collect();
                v += 1;
            } else {
                return v;
            }
        }
    }

    /// `v_P(I)` for an integral ideal: the minimum over a Z-basis.
    pub fn ideal_valuation(&self, o: &OrderData, i: &IdealHNF) -> u32 {
        i.basis.iter().map(|b| self.valuation(o, b)).min().unwrap()
    }
}

fn to_fq(x: &[BigInt], q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    x.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect()
}

fn lift(x: &[u64]) -> Elt {
    x.iter().map(|&c| BigInt::from(c)).collect()
}

/// Basis of `J / qO` as F_q vectors.
fn subspace(j: &IdealHNF, q: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = j.basis.iter().map(|r| to_fq(r, q)).collect();
    let piv = fp::rref(&mut rows, q);
    rows.truncate(piv.len());
    rows
}

/// Split an ideal `J >= qO` with semisimple quotient into the primes above it.
fn split(o: &OrderData, j: &IdealHNF, q: u64) -> Vec<IdealHNF> {
    let n = o.degree;
    let t = o.table_mod(q);
    let w = subspace(j, q);
    // Phi(y) = y^q - y is F_q-linear
    let phi: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            let mut r = pow_mod_q(&t, &e, q as u128, q);
            r[i] = (r[i] + q - 1) % q;
            r
        })
        .collect();
    // unknowns (c, d): sum c_i Phi(e_i) - sum d_l w_l = 0
    let mut cols: Vec<Vec<u64>> = phi.clone();
    cols.extend(w.iter().map(|r| r.iter().map(|&x| (q - x) % q).collect()));
    let ker = fp::kernel(&linalg::transpose(&cols), cols.len(), q);
    let fixed: Vec<Vec<u64>> = ker.iter().map(|v| v[..n].to_vec()).collect();
    let fixed_dim = fp::rank(&fixed, q);
    let g = fixed_dim - w.len();
    if g <= 1 {
        return vec![j.clone()];
    }
    let mut base = w.clone();
    let mut one = vec![0u64; n];
    one[0] = 1;
    base.push(one.clone());
    let base_rank = fp::rank(&base, q);
    let y = fixed
        .iter()
        .find(|y| {
            let mut m = base.clone();
            m.push((*y).clone());
            fp::rank(&m, q) > base_rank
        })
        .expect("fixed algebra larger than F_q")
        .clone();
    // minimal polynomial of y modulo J
    let mut powers = vec![one];
    loop {
        let next = mul_mod_q(&t, powers.last().unwrap(), &y, q);
        let mut m = w.clone();
        m.extend(powers.iter().cloned());
        let r0 = fp::rank(&m, q);
        m.push(next.clone());
        powers.push(next);
        if fp::rank(&m, q) == r0 {
            break;
        }
    }
    let k = powers.len() - 1;
    let mut cols: Vec<Vec<u64>> = powers.clone();
    cols.extend(w.iter().cloned());
    let ker = fp::kernel(&linalg::transpose(&cols), cols.len(), q);
    let v = ker.iter().find(|v| v[k] != 0).expect("dependency involves the top power");
    let lead_inv = fp::inv(v[k], q);
    let minpoly: Vec<u64> = (0..=k).map(|i| v[i] * lead_inv % q).collect();
    let roots = fp::roots(&minpoly, q);
    debug_assert_eq!(roots.len(), k, "fixed elements have split minimal polynomials");
    let ylift = lift(&y);
    let mut out = Vec::new();
    for c in roots {
        let mut yc = ylift.clone();
        yc[0] -= BigInt::from(c);
        let mut rows = j.basis.clone();
        for i in 0..n {
            rows.push(o.mul(&yc, &o.basis_elt(i)));
        }
        let jc = IdealHNF { basis: linalg::hnf_mod(&rows, n, &BigInt::from(q)), den: BigInt::one() };
        out.extend(split(o, &jc, q));
    }
    out
}

/// `beta` with `beta * P <= qO`, `beta` not in `qO`.
fn anti_uniformizer(o: &OrderData, p: &IdealHNF, q: u64) -> Elt {
    let n = o.degree;
    let gens: Vec<Vec<u64>> = subspace(p, q);
    // beta -> (beta * g mod q)_g is linear in beta
    let mut map: Vec<Vec<u64>> = Vec::with_capacity(n);
    let t = o.table_mod(q);
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        let mut row = Vec::new();
        for g in &gens {
            row.extend(mul_mod_q(&t, &e, g, q));
        }
        map.push(row);
    }
    // P/qO may be zero (q inert): then every beta works
    if gens.is_empty() {
        return o.one();
    }
    let ker = fp::kernel(&linalg::transpose(&map), n, q);
    let v = ker.into_iter().find(|v| v.iter().any(|&c| c != 0)).expect("P^-1 is larger than O");
    lift(&v)
}

fn finish(o: &OrderData, primes: Vec<IdealHNF>, q: u64) -> Result<Vec<PrimeIdeal>> {
    let qb = BigInt::from(q);
    let mut out: Vec<PrimeIdeal> = primes
        .into_iter()
        .map(|ideal| {
            let nrm = ideal.norm_int();
            let mut f = 0;
            let mut x = nrm;
            while x > BigInt::one() {
                x /= &qb;
                f += 1;
            }
            let anti = anti_uniformizer(o, &ideal, q);
            let mut p = PrimeIdeal { q, e: 0, f, ideal, anti };
            p.e = p.valuation(o, &o.from_int(q));
            p
        })
        .collect();
    let total: u32 = out.iter().map(|p| p.e * p.f).sum();
    if total as usize != o.degree {
        return Err(Error::NotMaximalAtQ(q));
    }
    out.sort_by(|a, b| (a.f, a.e, &a.ideal.basis).cmp(&(b.f, b.e, &b.ideal.basis)));
    Ok(out)
}

/// Primes above `q` with ramification indices and residue degrees.
pub fn decompose_prime(o: &OrderData, q: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_q_maximal(o, q) {
        return Err(Error::NotMaximalAtQ(q));
    }
    let rad = IdealHNF { basis: radical(o, q), den: BigInt::one() };
    let primes = split(o, &rad, q);
    finish(o, primes, q)
}

/// Kummer-Dedekind: `P_i = (q, g_i(theta))` for `f = prod g_i^e_i mod q`.
/// Requires q not dividing the index of Z[theta] in O.
pub fn decompose_prime_kummer(o: &OrderData, q: u64) -> Result<Vec<PrimeIdeal>> {
    let index = o.index_in_equation_order();
    if (&index % BigInt::from(q)).is_zero() {
        return Err(Error::Precondition(format!("{q} divides the index of Z[theta]")));
    }
    let n = o.degree;
    let theta = o.generator();
    assert!(theta.is_integral(), "defining polynomial is monic");
    let theta = theta.num;
    let mut rng = ChaCha8Rng::seed_from_u64(q);
    let factors = fp::factor(&o.poly.mod_q(q), q, &mut rng);
    let mut primes = Vec::new();
    for (g, _) in factors {
        // g(theta) by Horner
        let mut acc = o.zero();
        for c in g.iter().rev() {
            acc = o.mul(&acc, &theta);
            acc[0] += BigInt::from(*c);
        }
        let mut rows: Mat = Vec::new();
        for i in 0..n {
            rows.push(o.mul(&acc, &o.basis_elt(i)));
        }
        primes.push(IdealHNF { basis: linalg::hnf_mod(&rows, n, &BigInt::from(q)), den: BigInt::one() });
    }
    finish(o, primes, q)
}

/// Primes above `q`, through Kummer-Dedekind when q does not divide the index.
pub fn primes_above(o: &OrderData, q: u64) -> Result<Vec<PrimeIdeal>> {
    if (o.index_in_equation_order() % BigInt::from(q)).is_zero() {
        decompose_prime(o, q)
    } else {
        decompose_prime_kummer(o, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{maximal::maximal_order, order_from_polynomial};
    use crate::poly::Poly;

    #[test]
    fn three_in_pure_cubic() {
        let o = maximal_order(&order_from_polynomial(&Poly::pure(3, 61)).unwrap()).unwrap();
        let ps = decompose_prime(&o, 3).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].e, ps[0].f), (3, 1));
        let ps = decompose_prime(&o, 61).unwrap();
        assert_eq!((ps.len(), ps[0].e, ps[0].f), (1, 3, 1));
        // 17 = 2 mod 3 : x^3 - 61 has one root mod 17
        let ps = decompose_prime(&o, 17).unwrap();
        let mut ef: Vec<(u32, u32)> = ps.iter().map(|p| (p.e, p.f)).collect();
        ef.sort();
        assert_eq!(ef, vec![(1, 1), (1, 2)]);
    }

    #[test]
    fn routes_agree() {
        let o = maximal_order(&order_from_polynomial(&Poly::pure(3, 67)).unwrap()).unwrap();
        for q in [2u64, 5, 7, 11, 13, 29, 31, 37, 41, 43] {
            let a = decompose_prime(&o, q).unwrap();
            let b = decompose_prime_kummer(&o, q).unwrap();
            assert_eq!(a, b, "q = {q}");
        }
    }

    #[test]
    fn product_of_primes_is_q() {
        let o = maximal_order(&order_from_polynomial(&Poly::pure(3, 10)).unwrap()).unwrap();
        for q in [2u64, 3, 5, 7, 31] {
            let ps = decompose_prime(&o, q).unwrap();
            let prod = ps
                .iter()
                .fold(IdealHNF::unit(&o), |acc, p| acc.mul(&o, &p.ideal.pow(&o, p.e)));
            assert_eq!(prod, IdealHNF::rational(&o, &BigInt::from(q)), "q = {q}");
        }
    }
}
