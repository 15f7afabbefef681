//! Integer polynomials: resultants, discriminants, numerical roots, Sturm
//! sequences and an irreducibility test good enough for small degree.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::fp;
use crate::linalg;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    pub coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `x^n - m`.
    pub fn pure(n: usize, m: i64) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-m);
        c[n] = BigInt::one();
        Poly { coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly { coeffs: Vec::new() };
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact division by a monic polynomial; `None` if there is a remainder.
    pub fn div_exact_monic(&self, d: &Self) -> Option<Self> {
        assert!(d.is_monic());
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return r.iter().all(|c| c.is_zero()).then(|| Poly { coeffs: Vec::new() });
        }
        let k = d.coeffs.len() - 1;
        let mut q = vec![BigInt::zero(); r.len() - k];
        for i in (0..q.len()).rev() {
            let c = r[i + k].clone();
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    pub fn mod_q(&self, q: u64) -> fp::FpPoly {
        let qb = BigInt::from(q);
        fp::trim(self.coeffs.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect())
    }

    /// Content-free Sylvester resultant.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (m, n) = (self.degree(), other.degree());
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut s = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                s[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                s[n + i][i + j] = c.clone();
            }
        }
        linalg::det(&s)
    }

    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let r = self.resultant(&self.derivative());
        let d = r / self.lead();
        if (n * (n - 1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// All complex roots (Aberth iteration), real roots first in ascending
    /// order, then complex roots with positive imaginary part each followed
    /// by its conjugate.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        let lc = self.lead().to_f64().unwrap();
        let c: Vec<f64> = self.coeffs.iter().map(|x| x.to_f64().unwrap() / lc).collect();
        let eval = |z: Complex64| -> (Complex64, Complex64) {
            let mut p = Complex64::new(1.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for k in (0..n).rev() {
                dp = dp * z + p;
                p = p * z + c[k];
            }
            (p, dp)
        };
        // Cauchy bound for the initial circle
        let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
                Complex64::from_polar(radius * 0.7, t)
            })
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let (p, dp) = eval(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let s: Complex64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                    .sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
            if moved < 1e-17 {
                break;
            }
        }
        for r in z.iter_mut() {
            // a couple of Newton polishing steps
            for _ in 0..3 {
                let (p, dp) = eval(*r);
                if dp.norm() > 0.0 {
                    *r -= p / dp;
                }
            }
        }
        order_roots(z)
    }

    /// Number of distinct real roots (Sturm's theorem).
    pub fn count_real_roots(&self) -> usize {
        let to_q = |p: &Poly| -> Vec<BigRational> {
            p.coeffs.iter().map(|c| BigRational::from(c.clone())).collect()
        };
        let mut seq = vec![to_q(self), to_q(&self.derivative())];
        loop {
            let a = &seq[seq.len() - 2];
            let b = &seq[seq.len() - 1];
            if b.is_empty() {
                seq.pop();
                break;
            }
            let r = rat_rem(a, b);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|x| -x).collect());
        }
        let changes = |signs: Vec<i32>| {
            let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos_inf = seq.iter().map(|p| sign(p.last().unwrap())).collect();
        let at_neg_inf = seq
            .iter()
            .map(|p| {
                let s = sign(p.last().unwrap());
                if (p.len() - 1) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        changes(at_neg_inf) - changes(at_pos_inf)
    }

    /// Rational roots of a monic polynomial.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        assert!(self.is_monic());
        let mut out = Vec::new();
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            out.push(BigInt::zero());
        }
        for r in self.complex_roots() {
            if r.im.abs() > 1e-6 * (1.0 + r.re.abs()) {
                continue;
            }
            let cand = BigInt::from(r.re.round() as i64);
            if !cand.is_zero() && self.eval(&cand).is_zero() && !out.contains(&cand) {
                out.push(cand);
            }
        }
        out.sort();
        out
    }

    /// Exact irreducibility test over Q for monic polynomials of small degree.
    ///
    /// Factor degree patterns modulo small primes usually prove
    /// irreducibility; when they do not, candidate factors are rebuilt from
    /// subsets of the numerical roots and checked by exact division.
    pub fn is_irreducible(&self) -> bool {
        assert!(self.is_monic(), "irreducibility test needs a monic polynomial");
        let n = self.degree();
        if n <= 1 {
            return n == 1;
        }
        // subset sums of factor degrees still possible for a rational factor
        let mut possible: Vec<bool> = (0..=n).map(|d| d > 0 && d < n).collect();
        for q in arith::primes_up_to(400) {
            let fq = self.mod_q(q);
            if fq.len() != n + 1 {
                continue;
            }
            let Some(degs) = fp::factor_degrees(&fq, q) else { continue };
            let mut sums = vec![false; n + 1];
            sums[0] = true;
            for d in degs {
                for s in (d..=n).rev() {
                    if sums[s - d] {
                        sums[s] = true;
                    }
                }
            }
            for d in 1..n {
                possible[d] &= sums[d];
            }
            if !possible.iter().any(|&b| b) {
                return true;
            }
        }
        self.find_factor().is_none()
    }

    /// A monic proper factor over Z found from the numerical roots.
    pub fn find_factor(&self) -> Option<Poly> {
        let roots = self.complex_roots();
        let n = roots.len();
        for mask in 1u32..(1 << n) - 1 {
            if mask & 1 == 0 {
                // complementary subsets give the cofactor; trying one is enough
                continue;
            }
            let mut coeffs = vec![Complex64::new(1.0, 0.0)];
            for (i, r) in roots.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                    for (k, c) in coeffs.iter().enumerate() {
                        next[k + 1] += c;
                        next[k] -= c * r;
                    }
                    coeffs = next;
                }
            }
            if coeffs.iter().any(|c| c.im.abs() > 1e-4 * (1.0 + c.re.abs()) || c.re.abs() > 9e15) {
                continue;
            }
            let cand = Poly::new(coeffs.iter().map(|c| BigInt::from(c.re.round() as i64)).collect());
            if cand.degree() > 0 && self.div_exact_monic(&cand).is_some() {
                return Some(cand);
            }
        }
        None
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

fn order_roots(z: Vec<Complex64>) -> Vec<Complex64> {
    let scale = z.iter().fold(1.0f64, |m, r| m.max(r.norm()));
    let tol = 1e-9 * scale;
    let mut real: Vec<f64> = z.iter().filter(|r| r.im.abs() <= tol).map(|r| r.re).collect();
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut upper: Vec<Complex64> = z.iter().filter(|r| r.im > tol).copied().collect();
    upper.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let mut out: Vec<Complex64> = real.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    for u in upper {
        out.push(u);
        out.push(u.conj());
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_cubic_discriminant() {
        assert_eq!(Poly::pure(3, 61).discriminant(), BigInt::from(-27 * 61 * 61));
        assert_eq!(Poly::from_i64(&[1, 1, 1]).discriminant(), BigInt::from(-3));
        assert_eq!(Poly::from_i64(&[-1, -2, 1, 1]).discriminant(), BigInt::from(49));
    }

    #[test]
    fn roots_and_sturm() {
        let f = Poly::from_i64(&[-1, -2, 1, 1]);
        assert_eq!(f.count_real_roots(), 3);
        let roots = f.complex_roots();
        for r in &roots {
            assert!(f.eval_complex(*r).norm() < 1e-10);
        }
        let g = Poly::pure(3, 61);
        assert_eq!(g.count_real_roots(), 1);
        let r = g.complex_roots();
        assert!((r[0].re - 61f64.cbrt()).abs() < 1e-12);
        assert!((r[1] - r[2].conj()).norm() < 1e-12 && r[1].im > 0.0);
    }

    #[test]
    fn irreducibility() {
        assert!(Poly::pure(3, 61).is_irreducible());
        assert!(!Poly::pure(3, 64).is_irreducible());
        assert!(Poly::from_i64(&[1, 1, 1]).is_irreducible());
        // (x^2 + 1)(x^2 + x + 1): no linear factor but reducible
        let h = Poly::from_i64(&[1, 0, 1]).mul(&Poly::from_i64(&[1, 1, 1]));
        assert!(!h.is_irreducible());
        assert_eq!(h.find_factor().map(|f| f.degree()), Some(2));
        // x^4 + 1 is reducible mod every prime
        assert!(Poly::from_i64(&[1, 0, 0, 0, 1]).is_irreducible());
    }

    #[test]
    fn exact_division() {
        let a = Poly::from_i64(&[1, 0, 1]);
        let b = Poly::from_i64(&[1, 1, 1]);
        assert_eq!(a.mul(&b).div_exact_monic(&b), Some(a.clone()));
        assert_eq!(a.div_exact_monic(&b), None);
    }
}
