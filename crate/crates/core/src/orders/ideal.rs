//! Integral and fractional ideals in Hermite normal form.
//!
//! The basis is stored row-wise: row `i` is an element of the order, the
//! matrix is upper triangular with positive diagonal and reduced entries
//! above the diagonal, so equal ideals have identical matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Elt, FieldElement, OrderData};
use crate::linalg::{self, Mat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealHNF {
    pub basis: Mat,
    pub den: BigInt,
}

impl fmt::Debug for IdealHNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.basis)?;
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl IdealHNF {
    pub fn unit(o: &OrderData) -> Self {
        IdealHNF { basis: linalg::identity(o.degree), den: BigInt::one() }
    }

    /// Ideal generated by `gens` together with `modulus * O` (which must lie
    /// in the ideal).
    pub fn from_generators_mod(o: &OrderData, gens: &[Elt], modulus: &BigInt) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(gens.len() * o.degree);
        for g in gens {
            for i in 0..o.degree {
                rows.push(o.mul(g, &o.basis_elt(i)));
            }
        }
        IdealHNF { basis: linalg::hnf_mod(&rows, o.degree, &modulus.abs()), den: BigInt::one() }
    }

    /// Ideal generated by `gens`, which must span a lattice of full rank.
    pub fn from_generators(o: &OrderData, gens: &[Elt]) -> Self {
        let mut rows: Mat = Vec::new();
        for g in gens {
            for i in 0..o.degree {
                rows.push(o.mul(g, &o.basis_elt(i)));
            }
        }
        let h = linalg::hnf(&rows);
        assert_eq!(h.len(), o.degree, "generators do not span a full-rank ideal");
        IdealHNF { basis: h, den: BigInt::one() }
    }

    pub fn principal(o: &OrderData, x: &[BigInt]) -> Self {
        let n = o.norm(x).abs();
        assert!(!n.is_zero(), "principal ideal of zero");
        IdealHNF { basis: linalg::hnf_mod(&o.mul_matrix(x), o.degree, &n), den: BigInt::one() }
    }

    /// Principal fractional ideal of a field element.
    pub fn principal_fractional(o: &OrderData, x: &FieldElement) -> Self {
        let mut i = Self::principal(o, &x.num);
        i.den = x.den.clone();
        i.normalize()
    }

    /// `q * O` for a rational integer.
    pub fn rational(o: &OrderData, q: &BigInt) -> Self {
        let mut b = linalg::identity(o.degree);
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = q.abs();
        }
        IdealHNF { basis: b, den: BigInt::one() }
    }

    fn normalize(mut self) -> Self {
        let g = self.basis.iter().flatten().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in self.basis.iter_mut().flatten() {
                *c = &*c / &g;
            }
            self.den /= &g;
        }
        self
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Index `[O : I]` for integral ideals; the absolute norm in general.
    pub fn norm(&self) -> num_rational::BigRational {
        let d: BigInt = self.basis.iter().enumerate().map(|(i, r)| r[i].clone()).product();
        num_rational::BigRational::new(d, self.den.pow(self.basis.len() as u32))
    }

    /// Norm of an integral ideal.
    pub fn norm_int(&self) -> BigInt {
        assert!(self.is_integral());
        self.basis.iter().enumerate().map(|(i, r)| r[i].clone()).product()
    }

    pub fn mul(&self, o: &OrderData, other: &Self) -> Self {
        let mut rows: Mat = Vec::with_capacity(o.degree * o.degree);
        for a in &self.basis {
            for b in &other.basis {
                rows.push(o.mul(a, b));
            }
        }
        let num_a: BigInt = (0..o.degree).map(|i| self.basis[i][i].clone()).product();
        let num_b: BigInt = (0..o.degree).map(|i| other.basis[i][i].clone()).product();
        let basis = linalg::hnf_mod(&rows, o.degree, &(num_a * num_b));
        IdealHNF { basis, den: &self.den * &other.den }.normalize()
    }

    pub fn pow(&self, o: &OrderData, e: u32) -> Self {
        let mut acc = Self::unit(o);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(o, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(o, &b);
            }
        }
        acc
    }

    /// Sum of two integral ideals.
    pub fn add(&self, o: &OrderData, other: &Self) -> Self {
        assert!(self.is_integral() && other.is_integral());
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let m = self.norm_int().gcd(&other.norm_int());
        IdealHNF { basis: linalg::hnf_mod(&rows, o.degree, &m), den: BigInt::one() }
    }

    /// Membership of an integral element.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let scaled: Vec<BigInt> = x.iter().map(|c| c * &self.den).collect();
        let pivots: Vec<usize> = (0..self.basis.len()).collect();
        linalg::solve_in_hnf(&self.basis, &pivots, &scaled).is_some()
    }

    /// Coordinates of an element of the ideal on its HNF basis.
    pub fn coords_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let scaled: Vec<BigInt> = x.iter().map(|c| c * &self.den).collect();
        let pivots: Vec<usize> = (0..self.basis.len()).collect();
        linalg::solve_in_hnf(&self.basis, &pivots, &scaled)
    }

    /// Whether the lattice is closed under multiplication by the order.
    pub fn is_ideal(&self, o: &OrderData) -> bool {
        self.basis.iter().all(|b| {
            (0..o.degree).all(|i| self.contains(&o.mul(b, &o.basis_elt(i))))
        })
    }

    /// Whether `self` divides (contains) `other`, for integral ideals.
    pub fn divides(&self, other: &Self) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::order_from_polynomial;
    use crate::poly::Poly;

    #[test]
    fn norms_multiply() {
        let o = order_from_polynomial(&Poly::pure(3, 61)).unwrap();
        let x = vec![BigInt::from(-4), BigInt::one(), BigInt::zero()];
        let y = vec![BigInt::from(2), BigInt::from(1), BigInt::from(1)];
        let i = IdealHNF::principal(&o, &x);
        let j = IdealHNF::principal(&o, &y);
        assert_eq!(i.norm_int(), BigInt::from(3));
        let ij = i.mul(&o, &j);
        assert_eq!(ij.norm_int(), i.norm_int() * j.norm_int());
        assert_eq!(ij, IdealHNF::principal(&o, &o.mul(&x, &y)));
        assert!(ij.is_ideal(&o));
        assert!(i.divides(&ij));
    }

    #[test]
    fn rational_ideal() {
        let o = order_from_polynomial(&Poly::pure(3, 7)).unwrap();
        let three = IdealHNF::rational(&o, &BigInt::from(3));
        assert_eq!(three, IdealHNF::principal(&o, &o.from_int(3)));
        assert_eq!(three.norm_int(), BigInt::from(27));
    }
}
