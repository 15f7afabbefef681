//! Orders in number fields of small degree, given by a multiplication table.
//!
//! An order has a Z-basis `theta_0 = 1, theta_1, ..., theta_(n-1)`; elements
//! are integer coordinate vectors on that basis. Each basis element is also
//! recorded in the power basis of the defining polynomial so that numerical
//! embeddings (used only for search bounds and logarithms) can be derived.

pub mod classgroup;
pub mod fields;
pub mod ideal;
pub mod lattice;
pub mod maximal;
pub mod normeq;
pub mod primes;
pub mod principal;
pub mod units;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::poly::Poly;

pub use classgroup::{class_group, ClassGroupStructure, Effort};
pub use ideal::IdealHNF;
pub use maximal::maximalize;
pub use primes::{decompose_prime, PrimeIdeal};

/// Integral element: coordinates on the order basis.
pub type Elt = Vec<BigInt>;

#[derive(Clone)]
pub struct OrderData {
    pub degree: usize,
    /// `table[i][j]` = coordinates of `theta_i * theta_j`.
    pub table: Vec<Vec<Elt>>,
    pub discriminant: BigInt,
    /// Defining polynomial of the field.
    pub poly: Poly,
    /// `theta_i = (sum_j basis[i][j] x^j) / basis_den` in the power basis.
    pub basis: Mat,
    pub basis_den: BigInt,
    /// (real embeddings, pairs of complex embeddings)
    pub signature: (usize, usize),
    /// `embeddings[k][i]` = image of `theta_i` under the k-th embedding:
    /// the real ones first, then one from each complex pair.
    pub embeddings: Vec<Vec<Complex64>>,
}

impl fmt::Debug for OrderData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderData(deg {}, disc {}, poly {})", self.degree, self.discriminant, self.poly)
    }
}

/// Monic irreducible polynomial to its equation order Z[x]/f.
pub fn order_from_polynomial(f: &Poly) -> Result<OrderData> {
    if !f.is_monic() || f.degree() == 0 {
        return Err(Error::Precondition(format!("{f} must be monic of positive degree")));
    }
    if !f.is_irreducible() {
        return Err(Error::Reducible(f.to_string()));
    }
    let n = f.degree();
    // x^k reduced mod f for k < 2n - 1
    let mut powers: Vec<Elt> = Vec::with_capacity(2 * n);
    for k in 0..2 * n - 1 {
        if k < n {
            let mut v = vec![BigInt::zero(); n];
            v[k] = BigInt::one();
            powers.push(v);
        } else {
            // x * x^(k-1)
            let prev = &powers[k - 1];
            let mut v = vec![BigInt::zero(); n];
            for i in 1..n {
                v[i] = prev[i - 1].clone();
            }
            let top = &prev[n - 1];
            for i in 0..n {
                v[i] -= top * &f.coeffs[i];
            }
            powers.push(v);
        }
    }
    let table = (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect();
    let basis = linalg::identity(n);
    let mut o = OrderData {
        degree: n,
        table,
        discriminant: f.discriminant(),
        poly: f.clone(),
        basis,
        basis_den: BigInt::one(),
        signature: (0, 0),
        embeddings: Vec::new(),
    };
    o.refresh_embeddings();
    Ok(o)
}

impl OrderData {
    /// Recompute numerical embeddings from the defining polynomial.
    pub fn refresh_embeddings(&mut self) {
        let roots = self.poly.complex_roots();
        let r1 = roots.iter().filter(|r| r.im == 0.0).count();
        let chosen: Vec<Complex64> = roots
            .iter()
            .enumerate()
            .filter(|(k, r)| *k < r1 || r.im > 0.0)
            .map(|(_, r)| *r)
            .collect();
        self.signature = (r1, (self.degree - r1) / 2);
        let den = self.basis_den.to_f64().unwrap();
        self.embeddings = chosen
            .iter()
            .map(|&z| {
                self.basis
                    .iter()
                    .map(|row| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        let mut zp = Complex64::new(1.0, 0.0);
                        for c in row {
                            acc += zp * c.to_f64().unwrap();
                            zp *= z;
                        }
                        acc / den
                    })
                    .collect()
            })
            .collect();
    }

    pub fn one(&self) -> Elt {
        let mut v = vec![BigInt::zero(); self.degree];
        v[0] = BigInt::one();
        v
    }

    pub fn zero(&self) -> Elt {
        vec![BigInt::zero(); self.degree]
    }

    pub fn basis_elt(&self, i: usize) -> Elt {
        let mut v = self.zero();
        v[i] = BigInt::one();
        v
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> Elt {
        let mut v = self.zero();
        v[0] = n.into();
        v
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Elt {
        let n = self.degree;
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[BigInt], mut e: u64) -> Elt {
        let mut acc = self.one();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Rows are `theta_i * x`, so `y * x` has coordinates `y . M`.
    pub fn mul_matrix(&self, x: &[BigInt]) -> Mat {
        (0..self.degree).map(|i| self.mul(&self.basis_elt(i), x)).collect()
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        let m = self.mul_matrix(x);
        let small: Option<Vec<Vec<i128>>> = m
            .iter()
            .map(|r| r.iter().map(|c| c.to_i64().map(|v| v as i128)).collect())
            .collect();
        if let Some(s) = small {
            if s.iter().flatten().all(|c| c.abs() < 1 << 20) {
                if let Some(d) = linalg::det_i128(&s) {
                    return BigInt::from(d);
                }
            }
        }
        linalg::det(&m)
    }

    pub fn trace(&self, x: &[BigInt]) -> BigInt {
        let m = self.mul_matrix(x);
        (0..self.degree).map(|i| m[i][i].clone()).sum()
    }

    /// Determinant of the trace form; equals the discriminant.
    pub fn trace_form_det(&self) -> BigInt {
        let n = self.degree;
        let tr: Vec<BigInt> = (0..n).map(|i| self.trace(&self.basis_elt(i))).collect();
        let g: Mat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.table[i][j].iter().zip(&tr).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        linalg::det(&g)
    }

    pub fn embed(&self, x: &[BigInt]) -> Vec<Complex64> {
        self.embeddings
            .iter()
            .map(|e| {
                x.iter()
                    .zip(e)
                    .fold(Complex64::new(0.0, 0.0), |acc, (c, z)| acc + z * c.to_f64().unwrap())
            })
            .collect()
    }

    /// `log |sigma(x)|` with complex places weighted twice.
    pub fn log_embedding(&self, x: &[BigInt]) -> Vec<f64> {
        let r1 = self.signature.0;
        self.embed(x)
            .iter()
            .enumerate()
            .map(|(k, z)| if k < r1 { z.norm().ln() } else { 2.0 * z.norm().ln() })
            .collect()
    }

    /// Gram matrix of the basis under `T2(x) = sum |sigma(x)|^2` over all embeddings.
    pub fn t2_gram(&self) -> Vec<Vec<f64>> {
        let n = self.degree;
        let r1 = self.signature.0;
        let mut g = vec![vec![0.0; n]; n];
        for (k, e) in self.embeddings.iter().enumerate() {
            let w = if k < r1 { 1.0 } else { 2.0 };
            for i in 0..n {
                for j in 0..n {
                    g[i][j] += w * (e[i] * e[j].conj()).re;
                }
            }
        }
        g
    }

    pub fn t2(&self, x: &[BigInt]) -> f64 {
        let r1 = self.signature.0;
        self.embed(x)
            .iter()
            .enumerate()
            .map(|(k, z)| if k < r1 { z.norm_sqr() } else { 2.0 * z.norm_sqr() })
            .sum()
    }

    /// Coordinates of `x` in the power basis, with a denominator.
    pub fn to_power_basis(&self, x: &[BigInt]) -> (Vec<BigInt>, BigInt) {
        let v = linalg::vec_mat(x, &self.basis);
        reduce_frac(v, self.basis_den.clone())
    }

    /// Element with the given power-basis coordinates (divided by `den`), if integral.
    pub fn from_power_basis(&self, coeffs: &[BigInt], den: &BigInt) -> Option<Elt> {
        let inv = linalg::inverse_rational(&self.basis)?;
        let n = self.degree;
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut s = BigRational::zero();
            for i in 0..n {
                s += BigRational::from(coeffs[i].clone()) * &inv[i][j];
            }
            s = s * BigRational::from(self.basis_den.clone()) / BigRational::from(den.clone());
            if !s.is_integer() {
                return None;
            }
            out.push(s.to_integer());
        }
        Some(out)
    }

    /// The field generator (the class of x in Q[x]/f) as a field element.
    pub fn generator(&self) -> FieldElement {
        let n = self.degree;
        let mut c = vec![BigInt::zero(); n];
        if n > 1 {
            c[1] = BigInt::one();
        } else {
            c[0] = -self.poly.coeffs[0].clone();
        }
        self.field_from_power_basis(&c, &BigInt::one())
    }

    pub fn field_from_power_basis(&self, coeffs: &[BigInt], den: &BigInt) -> FieldElement {
        let inv = linalg::inverse_rational(&self.basis).expect("basis is nonsingular");
        let n = self.degree;
        let vals: Vec<BigRational> = (0..n)
            .map(|j| {
                let mut s = BigRational::zero();
                for i in 0..n {
                    s += BigRational::from(coeffs[i].clone()) * &inv[i][j];
                }
                s * BigRational::from(self.basis_den.clone()) / BigRational::from(den.clone())
            })
            .collect();
        FieldElement::from_rationals(&vals)
    }

    /// Multiplication table reduced mod `q`.
    pub fn table_mod(&self, q: u64) -> Vec<Vec<Vec<u64>>> {
        let qb = BigInt::from(q);
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn index_in_equation_order(&self) -> BigInt {
        // [O : Z[x]] = den^n / det(basis)
        let d = linalg::det(&self.basis).abs();
        self.basis_den.pow(self.degree as u32) / d
    }
}

/// Multiplication of coordinate vectors mod q with a reduced table.
pub fn mul_mod_q(t: &[Vec<Vec<u64>>], x: &[u64], y: &[u64], q: u64) -> Vec<u64> {
    let n = x.len();
    let mut out = vec![0u128; n];
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            if y[j] == 0 {
                continue;
            }
            let c = (x[i] as u128 * y[j] as u128) % q as u128;
            for k in 0..n {
                out[k] = (out[k] + c * t[i][j][k] as u128) % q as u128;
            }
        }
    }
    out.into_iter().map(|v| v as u64).collect()
}

pub fn pow_mod_q(t: &[Vec<Vec<u64>>], x: &[u64], mut e: u128, q: u64) -> Vec<u64> {
    let n = x.len();
    let mut acc = vec![0u64; n];
    acc[0] = 1 % q;
    let mut b = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_q(t, &acc, &b, q);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod_q(t, &b, &b, q);
        }
    }
    acc
}

fn reduce_frac(mut v: Vec<BigInt>, mut den: BigInt) -> (Vec<BigInt>, BigInt) {
    let g = v.iter().fold(den.clone(), |g, c| g.gcd(c));
    if !g.is_one() && !g.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
        den /= &g;
    }
    if den.is_negative() {
        den = -den;
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    (v, den)
}

/// Element of the field: `num / den` with `num` on the order basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub num: Elt,
    pub den: BigInt,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}", self.num, self.den)
    }
}

impl FieldElement {
    pub fn new(num: Elt, den: BigInt) -> Self {
        let (num, den) = reduce_frac(num, den);
        FieldElement { num, den }
    }

    pub fn integral(x: Elt) -> Self {
        FieldElement { num: x, den: BigInt::one() }
    }

    pub fn from_rationals(v: &[BigRational]) -> Self {
        let den = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = v.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
        Self::new(num, den)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn mul(&self, o: &OrderData, other: &Self) -> Self {
        Self::new(o.mul(&self.num, &other.num), &self.den * &other.den)
    }

    pub fn inverse(&self, o: &OrderData) -> Option<Self> {
        let m = o.mul_matrix(&self.num);
        let inv = linalg::inverse_rational(&m)?;
        // 1 = e_0, and e_0 . M^-1 is the first row of M^-1
        let scale = BigRational::from(self.den.clone());
        let v: Vec<BigRational> = inv[0].iter().map(|c| c * &scale).collect();
        Some(Self::from_rationals(&v))
    }

    pub fn pow(&self, o: &OrderData, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse(o)? } else { self.clone() };
        let num = o.pow(&base.num, e.unsigned_abs());
        Some(Self::new(num, base.den.pow(e.unsigned_abs() as u32)))
    }

    pub fn norm(&self, o: &OrderData) -> BigRational {
        BigRational::new(o.norm(&self.num), self.den.pow(o.degree as u32))
    }

    pub fn log_embedding(&self, o: &OrderData) -> Vec<f64> {
        let d = self.den.to_f64().unwrap().ln();
        let r1 = o.signature.0;
        o.log_embedding(&self.num)
            .into_iter()
            .enumerate()
            .map(|(k, l)| l - if k < r1 { d } else { 2.0 * d })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_cubic_equation_order() {
        let o = order_from_polynomial(&Poly::pure(3, 61)).unwrap();
        assert_eq!(o.discriminant, BigInt::from(-27 * 61 * 61));
        assert_eq!(o.trace_form_det(), o.discriminant);
        assert_eq!(o.signature, (1, 1));
        let theta = o.basis_elt(1);
        assert_eq!(o.pow(&theta, 3), o.from_int(61));
        assert_eq!(o.norm(&theta), BigInt::from(61));
        // N(4 - theta) = f(4) = 3
        let x = vec![BigInt::from(-4), BigInt::one(), BigInt::zero()];
        assert_eq!(o.norm(&x), BigInt::from(-3));
    }

    #[test]
    fn eisenstein_order() {
        let o = order_from_polynomial(&Poly::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(o.discriminant, BigInt::from(-3));
        assert_eq!(o.signature, (0, 1));
        assert!(matches!(order_from_polynomial(&Poly::from_i64(&[-1, 0, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn field_inverse() {
        let o = order_from_polynomial(&Poly::pure(3, 2)).unwrap();
        let x = FieldElement::integral(vec![BigInt::from(-1), BigInt::one(), BigInt::zero()]);
        let inv = x.inverse(&o).unwrap();
        // theta - 1 is a unit
        assert!(inv.is_integral());
        assert_eq!(x.mul(&o, &inv), FieldElement::integral(o.one()));
    }
}
