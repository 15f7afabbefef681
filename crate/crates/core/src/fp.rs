//! Arithmetic over a prime field F_q: dense polynomials, Cantor-Zassenhaus
//! factorization and linear algebra (rank, kernels).
//!
//! Polynomials are coefficient vectors, lowest degree first, without
//! trailing zeros.

use rand::{Rng, SeedableRng};

use crate::arith::{mul_mod, pow_mod};

pub type FpPoly = Vec<u64>;

#[inline]
pub fn inv(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q));
    pow_mod(a, q - 2, q)
}

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &FpPoly) -> isize {
    f.len() as isize - 1
}

pub fn from_i64(coeffs: &[i64], q: u64) -> FpPoly {
    trim(coeffs.iter().map(|&c| c.rem_euclid(q as i64) as u64).collect())
}

pub fn add(f: &FpPoly, g: &FpPoly, q: u64) -> FpPoly {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % q)
        .collect())
}

pub fn sub(f: &FpPoly, g: &FpPoly, q: u64) -> FpPoly {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + q - g.get(i).copied().unwrap_or(0)) % q)
        .collect())
}

pub fn scale(f: &FpPoly, c: u64, q: u64) -> FpPoly {
    trim(f.iter().map(|&x| mul_mod(x, c, q)).collect())
}

pub fn mul(f: &FpPoly, g: &FpPoly, q: u64) -> FpPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(a, b, q)) % q;
        }
    }
    trim(out)
}

pub fn divrem(f: &FpPoly, g: &FpPoly, q: u64) -> (FpPoly, FpPoly) {
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = f.clone();
    if r.len() < g.len() {
        return (Vec::new(), r);
    }
    let lc_inv = inv(*g.last().unwrap(), q);
    let mut quo = vec![0u64; r.len() - g.len() + 1];
    while r.len() >= g.len() && !r.is_empty() {
        let shift = r.len() - g.len();
        let c = mul_mod(*r.last().unwrap(), lc_inv, q);
        quo[shift] = c;
        for (i, &b) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + q - mul_mod(c, b, q)) % q;
        }
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn rem(f: &FpPoly, g: &FpPoly, q: u64) -> FpPoly {
    divrem(f, g, q).1
}

pub fn monic(f: &FpPoly, q: u64) -> FpPoly {
    match f.last() {
        Some(&lc) => scale(f, inv(lc, q), q),
        None => Vec::new(),
    }
}

pub fn gcd(f: &FpPoly, g: &FpPoly, q: u64) -> FpPoly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, q);
        a = b;
        b = r;
    }
    monic(&a, q)
}

pub fn derivative(f: &FpPoly, q: u64) -> FpPoly {
    trim(f.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % q, q)).collect())
}

/// `base^e mod m`.
pub fn powmod(base: &FpPoly, mut e: u128, m: &FpPoly, q: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    acc = rem(&acc, m, q);
    let mut b = rem(base, m, q);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, q), m, q);
        }
        b = rem(&mul(&b, &b, q), m, q);
        e >>= 1;
    }
    acc
}

pub fn eval(f: &FpPoly, x: u64, q: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, q) + c) % q)
}

/// Square-free factorization: pairs `(g, k)` with `f = lc * prod g^k`, each `g` monic.
pub fn squarefree(f: &FpPoly, q: u64) -> Vec<(FpPoly, u32)> {
    let f = monic(f, q);
    if f.len() <= 1 {
        return Vec::new();
    }
    let df = derivative(&f, q);
    if df.is_empty() {
        // f is a q-th power: f(x) = g(x^q) = g(x)^q over F_q
        let g: FpPoly = f.iter().step_by(q as usize).copied().collect();
        return squarefree(&g, q).into_iter().map(|(h, k)| (h, k * q as u32)).collect();
    }
    let mut out = Vec::new();
    let mut c = gcd(&f, &df, q);
    let mut w = divrem(&f, &c, q).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, q);
        let z = divrem(&w, &y, q).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        w = y;
        c = divrem(&c, &w, q).0;
        i += 1;
    }
    if c.len() > 1 {
        let g: FpPoly = c.iter().step_by(q as usize).copied().collect();
        for (h, k) in squarefree(&g, q) {
            out.push((h, k * q as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn ddf(f: &FpPoly, q: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = monic(f, q);
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while (rest.len() as isize - 1) >= 2 * d as isize {
        h = powmod(&h, q as u128, &rest, q);
        let g = gcd(&sub(&h, &x, q), &rest, q);
        if g.len() > 1 {
            rest = divrem(&rest, &g, q).0;
            h = rem(&h, &rest, q);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let dd = rest.len() - 1;
        out.push((rest, dd));
    }
    out
}

/// Split a monic square-free product of degree-`d` irreducibles.
pub fn edf<R: Rng>(f: &FpPoly, d: usize, q: u64, rng: &mut R) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.len() <= 1 {
            continue;
        }
        let g = if q == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, q), f, q);
                acc = add(&acc, &t, q);
            }
            acc
        } else {
            let e = ((q as u128).pow(d as u32) - 1) / 2;
            sub(&powmod(&a, e, f, q), &vec![1], q)
        };
        let h = gcd(&g, f, q);
        if h.len() > 1 && h.len() < f.len() {
            let other = divrem(f, &h, q).0;
            let mut out = edf(&h, d, q, rng);
            out.extend(edf(&other, d, q, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor<R: Rng>(f: &FpPoly, q: u64, rng: &mut R) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    for (g, k) in squarefree(f, q) {
        for (h, d) in ddf(&g, q) {
            for irr in edf(&h, d, q, rng) {
                out.push((irr, k));
            }
        }
    }
    out.sort_by(|a, b| (a.0.len(), a.0.iter().rev().collect::<Vec<_>>())
        .cmp(&(b.0.len(), b.0.iter().rev().collect::<Vec<_>>())));
    out
}

/// Degrees of the irreducible factors of a square-free polynomial, or `None`
/// if `f` is not square-free mod `q`.
pub fn factor_degrees(f: &FpPoly, q: u64) -> Option<Vec<usize>> {
    let f = monic(f, q);
    if gcd(&f, &derivative(&f, q), q).len() > 1 {
        return None;
    }
    let mut degs = Vec::new();
    for (g, d) in ddf(&f, q) {
        degs.extend(std::iter::repeat_n(d, (g.len() - 1) / d));
    }
    degs.sort_unstable();
    Some(degs)
}

/// Roots in F_q of a nonzero polynomial, sorted ascending.
pub fn roots(f: &FpPoly, q: u64) -> Vec<u64> {
    if q < 64 {
        return (0..q).filter(|&x| eval(f, x, q) == 0).collect();
    }
    let f = monic(f, q);
    let xq = powmod(&vec![0, 1], q as u128, &f, q);
    let g = gcd(&sub(&xq, &vec![0, 1], q), &f, q);
    if g.len() <= 1 {
        return Vec::new();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(q);
    let mut out: Vec<u64> = edf(&g, 1, q, &mut rng)
        .into_iter()
        .map(|h| (q - mul_mod(h[0], inv(h[1], q), q)) % q)
        .collect();
    out.sort_unstable();
    out
}

/// Row-reduce in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<u64>], q: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_multiple_of(q)) else { continue };
        m.swap(r, p);
        let iv = inv(m[r][c], q);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, iv, q);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pr.iter()) {
                    *x = (*x + q - mul_mod(f, *y, q)) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<u64>], q: u64) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, q).len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel(m: &[Vec<u64>], ncols: usize, q: u64) -> Vec<Vec<u64>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, q);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - a[i][f] % q) % q;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_multiply_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [2u64, 3, 5, 7, 61] {
            for _ in 0..30 {
                let mut f: FpPoly = (0..7).map(|_| rng.gen_range(0..q)).collect();
                f.push(1);
                let fs = factor(&f, q, &mut rng);
                let back = fs.iter().fold(vec![1u64], |acc, (g, k)| {
                    (0..*k).fold(acc, |a, _| mul(&a, g, q))
                });
                assert_eq!(back, f);
                for (g, _) in &fs {
                    let d = g.len() - 1;
                    assert_eq!(factor_degrees(g, q), Some(vec![d]));
                }
            }
        }
    }

    #[test]
    fn cubic_patterns() {
        // x^3 - 2 mod 7: 2 is not a cube mod 7
        assert_eq!(factor_degrees(&from_i64(&[-2, 0, 0, 1], 7), 7), Some(vec![3]));
        // x^3 - 1 mod 7 splits completely
        assert_eq!(roots(&from_i64(&[-1, 0, 0, 1], 7), 7), vec![1, 2, 4]);
        assert_eq!(roots(&from_i64(&[-1, 0, 0, 1], 103), 103).len(), 3);
        assert_eq!(squarefree(&from_i64(&[0, 0, 0, 1], 3), 3), vec![(vec![0, 1], 3)]);
    }

    #[test]
    fn kernels() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&m, 3, 7);
        assert_eq!(k.len(), 2);
        for v in k {
            for row in &m {
                let s: u64 = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert_eq!(s % 7, 0);
            }
        }
    }
}
