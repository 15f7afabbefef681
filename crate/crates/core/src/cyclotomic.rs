//! Exact arithmetic in Z[zeta_p] and in the cubic subfield M+ of Q(zeta_p)
//! on the basis of Gaussian periods.
//!
//! Internally products are formed in the group ring Z[C_p] = Z[x]/(x^p - 1)
//! and reduced modulo Phi_p by subtracting the top coefficient, which uses
//! `1 + zeta + ... + zeta^(p-1) = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Element of Z[zeta_p] on the basis `1, zeta, ..., zeta^(p-2)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    pub p: u64,
    pub coeffs: Vec<BigInt>,
}

impl CycloElement {
    pub fn zero(p: u64) -> Self {
        CycloElement { p, coeffs: vec![BigInt::zero(); p as usize - 1] }
    }

    pub fn one(p: u64) -> Self {
        Self::zeta_pow(p, 0)
    }

    pub fn from_int(p: u64, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    /// `zeta^k`.
    pub fn zeta_pow(p: u64, k: u64) -> Self {
        let mut g = vec![BigInt::zero(); p as usize];
        g[(k % p) as usize] = BigInt::one();
        Self::from_group_ring(p, g)
    }

    /// Reduce a length-`p` group ring vector modulo Phi_p.
    pub fn from_group_ring(p: u64, mut g: Vec<BigInt>) -> Self {
        let top = g.pop().expect("group ring vector of length p");
        CycloElement { p, coeffs: g.into_iter().map(|c| c - &top).collect() }
    }

    fn group_ring(&self) -> Vec<BigInt> {
        let mut g = self.coeffs.clone();
        g.push(BigInt::zero());
        g
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycloElement { p: self.p, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CycloElement { p: self.p, coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p as usize;
        let mut out = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % p] += a * b;
                }
            }
        }
        Self::from_group_ring(self.p, out)
    }

    /// Multiply by `1 - zeta^t` (shift and subtract).
    pub fn mul_one_minus_zeta(&self, t: u64) -> Self {
        let p = self.p as usize;
        let g = self.group_ring();
        let mut out = g.clone();
        for (i, c) in g.iter().enumerate() {
            out[(i + t as usize) % p] -= c;
        }
        Self::from_group_ring(self.p, out)
    }

    /// The automorphism `zeta -> zeta^a`.
    pub fn sigma(&self, a: u64) -> Self {
        let p = self.p as usize;
        assert!(!a.is_multiple_of(self.p), "sigma_a needs a coprime to p");
        let mut out = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i * a as usize) % p] += c;
        }
        Self::from_group_ring(self.p, out)
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement(p={}, {:?})", self.p, self.coeffs)
    }
}

/// The cubic subfield M+ of Q(zeta_p) with its Gaussian period basis.
///
/// `eta_i` is the sum of `zeta^t` over the coset `g^i H`, where `g` is the
/// least primitive root and `H` the subgroup of cubes in `(Z/p)^*`.
#[derive(Clone, Debug)]
pub struct PeriodField {
    pub p: u64,
    pub g: u64,
    /// `coset[t]` = index i with t in g^i H, for t = 1..p-1 (entry 0 unused).
    pub coset: Vec<u8>,
    /// `eta_i * eta_j = sum_k table[i][j][k] eta_k`.
    pub table: [[[BigInt; 3]; 3]; 3],
}

/// Element of M+ on the basis `eta_0, eta_1, eta_2`.
///
/// Note `1 = -(eta_0 + eta_1 + eta_2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodElement {
    pub coords: [BigRational; 3],
}

fn check_p(p: u64) -> Result<()> {
    if !arith::is_prime(p) || p % 3 != 1 {
        return Err(Error::InvalidPrime { value: p.to_string(), reason: "need a prime = 1 mod 3" });
    }
    Ok(())
}

impl PeriodField {
    pub fn new(p: u64) -> Result<Self> {
        check_p(p)?;
        let g = arith::primitive_root(p);
        let mut coset = vec![0u8; p as usize];
        let mut x = 1u64;
        for k in 0..p - 1 {
            coset[x as usize] = (k % 3) as u8;
            x = x * g % p;
        }
        let mut field = PeriodField {
            p,
            g,
            coset,
            table: Default::default(),
        };
        for i in 0..3 {
            for j in 0..3 {
                let prod = field.period(i).mul(&field.period(j));
                let e = field
                    .from_cyclo(&prod)
                    .expect("products of periods are fixed by the cubes");
                for k in 0..3 {
                    field.table[i][j][k] = e.coords[k].to_integer();
                }
            }
        }
        Ok(field)
    }

    /// `eta_i` in Z[zeta_p].
    pub fn period(&self, i: usize) -> CycloElement {
        let mut g = vec![BigInt::zero(); self.p as usize];
        for t in 1..self.p as usize {
            if self.coset[t] as usize == i {
                g[t] = BigInt::one();
            }
        }
        CycloElement::from_group_ring(self.p, g)
    }

    /// Elements of the cube subgroup H, ascending.
    pub fn cubes(&self) -> Vec<u64> {
        (1..self.p).filter(|&t| self.coset[t as usize] == 0).collect()
    }

    /// Express an element of Z[zeta_p] fixed by H on the period basis.
    pub fn from_cyclo(&self, z: &CycloElement) -> Option<PeriodElement> {
        let g = z.group_ring();
        let mut coords: [Option<BigInt>; 3] = Default::default();
        for t in 1..self.p as usize {
            let c = &g[t] - &g[0];
            let slot = &mut coords[self.coset[t] as usize];
            match slot {
                None => *slot = Some(c),
                Some(v) if *v == c => {}
                Some(_) => return None,
            }
        }
        Some(PeriodElement {
            coords: coords.map(|c| BigRational::from(c.unwrap())),
        })
    }

    pub fn to_cyclo(&self, e: &PeriodElement) -> Option<CycloElement> {
        let mut acc = CycloElement::zero(self.p);
        for i in 0..3 {
            if !e.coords[i].is_integer() {
                return None;
            }
            let c = CycloElement::from_int(self.p, e.coords[i].to_integer());
            acc = acc.add(&c.mul(&self.period(i)));
        }
        Some(acc)
    }

    pub fn eta(&self, i: usize) -> PeriodElement {
        let mut coords: [BigRational; 3] = Default::default();
        coords[i] = BigRational::one();
        PeriodElement { coords }
    }

    pub fn one(&self) -> PeriodElement {
        PeriodElement::from_rational(BigRational::one())
    }

    pub fn mul(&self, x: &PeriodElement, y: &PeriodElement) -> PeriodElement {
        let mut coords: [BigRational; 3] = Default::default();
        for i in 0..3 {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y.coords[j].is_zero() {
                    continue;
                }
                let c = &x.coords[i] * &y.coords[j];
                for (k, out) in coords.iter_mut().enumerate() {
                    *out += &c * BigRational::from(self.table[i][j][k].clone());
                }
            }
        }
        PeriodElement { coords }
    }

    /// Norm from M+ to Q: the product of the three Galois conjugates.
    pub fn norm(&self, x: &PeriodElement) -> BigRational {
        let s = galois_shift(x);
        let prod = self.mul(&self.mul(x, &s), &galois_shift(&s));
        prod.to_rational().expect("norms are rational")
    }

    pub fn trace(&self, x: &PeriodElement) -> BigRational {
        // each period has trace -1
        -(&x.coords[0] + &x.coords[1] + &x.coords[2])
    }

    /// Characteristic polynomial of `x` over Q (monic, rational coefficients
    /// returned as integers when `x` is integral).
    pub fn char_poly(&self, x: &PeriodElement) -> Vec<BigRational> {
        let s1 = self.trace(x);
        let s2 = self.trace(&self.mul(x, &galois_shift(x)));
        let s3 = self.norm(x);
        vec![-s3, s2, -s1, BigRational::one()]
    }
}

impl PeriodElement {
    pub fn from_rational(r: BigRational) -> Self {
        let c = -r;
        PeriodElement { coords: [c.clone(), c.clone(), c] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        let [a, b, c] = &self.coords;
        (a == b && b == c).then(|| -a.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        PeriodElement {
            coords: [0, 1, 2].map(|i| &self.coords[i] + &o.coords[i]),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PeriodElement {
            coords: [0, 1, 2].map(|i| &self.coords[i] - &o.coords[i]),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn integer_coords(&self) -> Option<[BigInt; 3]> {
        self.is_integral().then(|| self.coords.clone().map(|c| c.to_integer()))
    }
}

impl fmt::Debug for PeriodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "{a}*eta0 + {b}*eta1 + {c}*eta2")
    }
}

/// The generator `eta_i -> eta_(i+1)` of Gal(M+/Q).
pub fn galois_shift(e: &PeriodElement) -> PeriodElement {
    let [a, b, c] = e.coords.clone();
    PeriodElement { coords: [c, a, b] }
}

/// Minimal polynomial of `eta_0`.
pub fn period_polynomial(p: u64) -> Result<Poly> {
    let field = PeriodField::new(p)?;
    Ok(period_polynomial_of(&field))
}

pub fn period_polynomial_of(field: &PeriodField) -> Poly {
    let cp = field.char_poly(&field.eta(0));
    Poly::new(cp.into_iter().map(|c| c.to_integer()).collect())
}

/// `gamma_p`: the product of `1 - zeta^t` over the cubes `t`, i.e. the norm
/// of `1 - zeta` from Q(zeta_p) down to M+.
pub fn cyclo_norm_element(p: u64) -> Result<PeriodElement> {
    let field = PeriodField::new(p)?;
    Ok(cyclo_norm_element_of(&field))
}

pub fn cyclo_norm_element_of(field: &PeriodField) -> PeriodElement {
    let mut acc = CycloElement::one(field.p);
    for t in field.cubes() {
        acc = acc.mul_one_minus_zeta(t);
    }
    field.from_cyclo(&acc).expect("the norm to M+ is fixed by the cubes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_polynomial_of_7() {
        assert_eq!(period_polynomial(7).unwrap(), Poly::from_i64(&[-1, -2, 1, 1]));
    }

    #[test]
    fn periods_sum_to_minus_one() {
        for p in [7u64, 13, 19, 61] {
            let f = PeriodField::new(p).unwrap();
            let s = f.period(0).add(&f.period(1)).add(&f.period(2));
            assert_eq!(s, CycloElement::from_int(p, -1));
        }
    }

    #[test]
    fn period_polynomials_are_totally_real_of_conductor_p() {
        for p in [7u64, 13, 61, 67, 103] {
            let f = period_polynomial(p).unwrap();
            assert_eq!(f.count_real_roots(), 3);
            let d = f.discriminant();
            let pp = BigInt::from(p * p);
            assert!((&d % &pp).is_zero());
            let rest = arith::exact_isqrt(num_traits::ToPrimitive::to_u64(&(d / pp)).unwrap());
            assert!(rest.is_some());
        }
    }

    #[test]
    fn gamma_has_norm_p() {
        for p in [7u64, 13, 61, 67] {
            let f = PeriodField::new(p).unwrap();
            let g = cyclo_norm_element_of(&f);
            assert_eq!(f.norm(&g), BigRational::from(BigInt::from(p)));
            let back = f.to_cyclo(&g).unwrap();
            assert_eq!(f.from_cyclo(&back).unwrap(), g);
        }
    }

    #[test]
    fn shift_has_order_three_and_matches_sigma_g() {
        let f = PeriodField::new(13).unwrap();
        let g = cyclo_norm_element_of(&f);
        let s = galois_shift(&g);
        assert_eq!(galois_shift(&galois_shift(&s)), g);
        // sigma_g sends eta_i to eta_(i+1)
        let via_sigma = f.from_cyclo(&f.to_cyclo(&g).unwrap().sigma(f.g)).unwrap();
        assert_eq!(via_sigma, s);
        assert_eq!(f.char_poly(&g), f.char_poly(&s));
        assert_eq!(galois_shift(&PeriodElement::from_int(5)), PeriodElement::from_int(5));
    }
}
