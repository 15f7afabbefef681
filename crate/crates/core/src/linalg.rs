//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Lattices are spanned by rows.
//! The Hermite normal form used throughout is the upper-triangular row form:
//! pivots strictly move right, are positive, and entries above a pivot are
//! reduced into `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn vec_mat(v: &[BigInt], m: &Mat) -> Vec<BigInt> {
    let n = m.first().map_or(0, |r| r.len());
    let mut out = vec![BigInt::zero(); n];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Fraction-free Gaussian elimination (Bareiss) determinant.
pub fn det(m: &Mat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Bareiss determinant on machine integers; `None` on overflow.
pub fn det_i128(m: &[Vec<i128>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Combine rows so that `rows[i][col]` becomes zero; returns the 2x2 transform.
fn combine(p: &[BigInt], r: &[BigInt], col: usize) -> (Vec<BigInt>, Vec<BigInt>, [BigInt; 4]) {
    let (g, u, v) = ext_gcd(&p[col], &r[col]);
    let a = &p[col] / &g;
    let b = &r[col] / &g;
    let np: Vec<BigInt> = p.iter().zip(r).map(|(x, y)| &u * x + &v * y).collect();
    let nr: Vec<BigInt> = p.iter().zip(r).map(|(x, y)| &a * y - &b * x).collect();
    (np, nr, [u, v, -b, a])
}

/// HNF of the lattice spanned by `gens`, which must contain `d * Z^n`.
///
/// Returns an `n x n` upper-triangular basis.
pub fn hnf_mod(gens: &[Vec<BigInt>], n: usize, d: &BigInt) -> Mat {
    assert!(d.is_positive(), "modulus must be positive");
    let mut work: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(d)).collect::<Vec<_>>())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut h: Mat = Vec::with_capacity(n);
    for j in 0..n {
        let mut piv = vec![BigInt::zero(); n];
        piv[j] = d.clone();
        for r in work.iter_mut() {
            if r[j].is_zero() {
                continue;
            }
            let (np, nr, _) = combine(&piv, r, j);
            piv = np;
            *r = nr;
            for x in r.iter_mut().skip(j) {
                *x = x.mod_floor(d);
            }
        }
        if piv[j].is_negative() {
            for x in piv.iter_mut() {
                *x = -&*x;
            }
        }
        for x in piv.iter_mut().skip(j + 1) {
            *x = x.mod_floor(d);
        }
        work.retain(|r| r.iter().any(|x| !x.is_zero()));
        h.push(piv);
    }
    reduce_above(&mut h);
    h
}

/// Reduce the entries above each pivot of an upper-triangular basis.
fn reduce_above(h: &mut Mat) {
    let n = h.len();
    for j in 0..n {
        let pj = h[j][j].clone();
        if pj.is_zero() {
            continue;
        }
        for i in 0..j {
            let q = h[i][j].div_floor(&pj);
            if !q.is_zero() {
                let row_j = h[j].clone();
                for (x, y) in h[i].iter_mut().zip(row_j.iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
}

/// Row HNF with transformation: `u * a = h`.
///
/// `h` has the same shape as `a`; its first `rank` rows are the echelon
/// basis and the remaining rows are zero, so the last `m - rank` rows of `u`
/// span the left kernel.
pub struct HnfResult {
    pub h: Mat,
    pub u: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hnf_with_transform(a: &Mat, track: bool) -> HnfResult {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = if track { identity(m) } else { Vec::new() };
    let mut r = 0;
    let mut pivots = Vec::new();
    for j in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below row r becomes the pivot
            let best = (r..m)
                .filter(|&i| !h[i][j].is_zero())
                .min_by(|&x, &y| h[x][j].abs().cmp(&h[y][j].abs()));
            let Some(b) = best else { break };
            h.swap(r, b);
            if track {
                u.swap(r, b);
            }
            let mut done = true;
            for i in r + 1..m {
                if h[i][j].is_zero() {
                    continue;
                }
                let q = h[i][j].div_floor(&h[r][j]);
                let (hr, ur) = (h[r].clone(), if track { u[r].clone() } else { Vec::new() });
                for (x, y) in h[i].iter_mut().zip(hr.iter()) {
                    *x -= &q * y;
                }
                if track {
                    for (x, y) in u[i].iter_mut().zip(ur.iter()) {
                        *x -= &q * y;
                    }
                }
                if !h[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][j].is_zero() {
            continue;
        }
        if h[r][j].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            if track {
                for x in u[r].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        let p = h[r][j].clone();
        for i in 0..r {
            let q = h[i][j].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            let (hr, ur) = (h[r].clone(), if track { u[r].clone() } else { Vec::new() });
            for (x, y) in h[i].iter_mut().zip(hr.iter()) {
                *x -= &q * y;
            }
            if track {
                for (x, y) in u[i].iter_mut().zip(ur.iter()) {
                    *x -= &q * y;
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    HnfResult { h, u, rank: r, pivots }
}

/// Row-style HNF basis (nonzero rows only) of the lattice spanned by `a`.
pub fn hnf(a: &Mat) -> Mat {
    let res = hnf_with_transform(a, false);
    res.h.into_iter().take(res.rank).collect()
}

/// Smith normal form `u * a * v = diag(d)` of a square nonsingular matrix,
/// with `d[i] | d[i+1]`.
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: Mat,
    pub v: Mat,
}

pub fn snf(a: &Mat) -> Snf {
    let n = a.len();
    let mut m = a.clone();
    let mut u = identity(n);
    let mut v = identity(n);
    let mut t = 0;
    while t < n {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..n {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..n {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let (mt, ut) = (m[t].clone(), u[t].clone());
            for (x, y) in m[i].iter_mut().zip(mt.iter()) {
                *x -= &q * y;
            }
            for (x, y) in u[i].iter_mut().zip(ut.iter()) {
                *x -= &q * y;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for row in m.iter_mut() {
                let y = row[t].clone();
                row[j] -= &q * y;
            }
            for row in v.iter_mut() {
                let y = row[t].clone();
                row[j] -= &q * y;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold a non-divisible entry into row t and retry
        let d = m[t][t].clone();
        let bad = (t + 1..n).find_map(|i| {
            (t + 1..n).find(|&j| !(m[i][j].mod_floor(&d)).is_zero()).map(|_| i)
        });
        if let Some(i) = bad {
            let (mi, ui) = (m[i].clone(), u[i].clone());
            for (x, y) in m[t].iter_mut().zip(mi.iter()) {
                *x += y;
            }
            for (x, y) in u[t].iter_mut().zip(ui.iter()) {
                *x += y;
            }
            continue;
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    Snf { diag, u, v }
}

/// Inverse of an integer matrix over Q.
pub fn inverse_rational(m: &Mat) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let rc = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(rc.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(m: &Mat) -> Option<Mat> {
    let inv = inverse_rational(m)?;
    inv.into_iter()
        .map(|row| row.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

/// Solve `x * basis = target` for an upper-triangular HNF basis with
/// positive pivots at the given columns; `None` if `target` is not in the lattice.
pub fn solve_in_hnf(basis: &Mat, pivots: &[usize], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = target.to_vec();
    let mut coeffs = vec![BigInt::zero(); basis.len()];
    for (i, &j) in pivots.iter().enumerate() {
        let (q, r) = rest[j].div_mod_floor(&basis[i][j]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(basis[i].iter()) {
                *x -= &q * y;
            }
        }
        coeffs[i] = q;
    }
    rest.iter().all(|x| x.is_zero()).then_some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(det_i128(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), Some(-3));
    }

    #[test]
    fn hnf_mod_matches_plain_hnf() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows: Vec<Vec<i64>> =
                (0..5).map(|_| (0..3).map(|_| rng.gen_range(-9..10)).collect()).collect();
            let a = from_i64(&rows);
            let plain = hnf(&a);
            if plain.len() < 3 {
                continue;
            }
            let d = det(&plain).abs();
            let modular = hnf_mod(&a, 3, &d);
            assert_eq!(plain, modular);
        }
    }

    #[test]
    fn kernel_rows_annihilate() {
        let a = m(&[&[1, 2], &[2, 4], &[3, 7], &[0, 5]]);
        let res = hnf_with_transform(&a, true);
        assert_eq!(res.rank, 2);
        for k in res.rank..4 {
            assert!(vec_mat(&res.u[k], &a).iter().all(|x| x.is_zero()));
        }
        assert_eq!(mat_mul(&res.u, &a), res.h);
    }

    #[test]
    fn smith_form() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = snf(&a);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], want);
            }
        }
    }

    #[test]
    fn lattice_membership() {
        let b = hnf(&m(&[&[2, 1], &[0, 3]]));
        let piv = [0usize, 1];
        assert!(solve_in_hnf(&b, &piv, &[BigInt::from(4), BigInt::from(5)]).is_some());
        assert!(solve_in_hnf(&b, &piv, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
