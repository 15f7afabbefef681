//! LLL reduction and Fincke-Pohst enumeration under the T2 form.
//!
//! Floating point is only used to steer the search; every element returned is
//! an exact integer combination of the input rows.

use num_bigint::BigInt;

use super::{Elt, OrderData};
use crate::linalg::Mat;

/// Real coordinates whose squared Euclidean length is `T2`.
pub fn real_vectors(o: &OrderData, rows: &Mat) -> Vec<Vec<f64>> {
    let r1 = o.signature.0;
    rows.iter()
        .map(|x| {
            let mut v = Vec::with_capacity(o.degree);
            for (k, z) in o.embed(x).into_iter().enumerate() {
                if k < r1 {
                    v.push(z.re);
                } else {
                    v.push(std::f64::consts::SQRT_2 * z.re);
                    v.push(std::f64::consts::SQRT_2 * z.im);
                }
            }
            v
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(u: &[i64], b: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; b[0].len()];
    for (c, row) in u.iter().zip(b) {
        if *c != 0 {
            for (o, x) in out.iter_mut().zip(row) {
                *o += *c as f64 * x;
            }
        }
    }
    out
}

/// LLL (delta = 0.99) on real row vectors of full rank; returns the
/// unimodular transform `U` with the reduced basis `U * B`.
pub fn lll(b: &[Vec<f64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n <= 1 {
        return u;
    }
    let delta = 0.99;
    let mut cur: Vec<Vec<f64>> = b.to_vec();
    let mut bstar: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut bn = vec![0.0; n];
    let mut mu = vec![vec![0.0; n]; n];
    let gs = |k: usize, cur: &[Vec<f64>], bstar: &mut Vec<Vec<f64>>, bn: &mut Vec<f64>, mu: &mut Vec<Vec<f64>>| {
        let mut v = cur[k].clone();
        for j in 0..k {
            mu[k][j] = if bn[j] > 0.0 { dot(&cur[k], &bstar[j]) / bn[j] } else { 0.0 };
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= mu[k][j] * y;
            }
        }
        bn[k] = dot(&v, &v);
        bstar[k] = v;
    };
    gs(0, &cur, &mut bstar, &mut bn, &mut mu);
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 1_000_000 {
            break;
        }
        // refresh from exact combinations when the transform is large
        if u[k].iter().any(|c| c.abs() > 1 << 20) {
            cur[k] = combine(&u[k], b);
        }
        gs(k, &cur, &mut bstar, &mut bn, &mut mu);
        let mut again = true;
        let mut passes = 0;
        while again && passes < 8 {
            again = false;
            passes += 1;
            for j in (0..k).rev() {
                let r = mu[k][j].round();
                if r != 0.0 {
                    let ri = r as i64;
                    let (head, tail) = u.split_at_mut(k);
                    for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                        *x -= ri * y;
                    }
                    let (head, tail) = cur.split_at_mut(k);
                    for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                        *x -= r * y;
                    }
                    for l in 0..j {
                        mu[k][l] -= r * mu[j][l];
                    }
                    mu[k][j] -= r;
                    if r.abs() > 1e6 {
                        again = true;
                    }
                }
            }
            if again {
                gs(k, &cur, &mut bstar, &mut bn, &mut mu);
            }
        }
        gs(k, &cur, &mut bstar, &mut bn, &mut mu);
        if bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1] {
            k += 1;
        } else {
            u.swap(k, k - 1);
            cur.swap(k, k - 1);
            k = (k - 1).max(1);
            for j in k - 1..=k {
                gs(j, &cur, &mut bstar, &mut bn, &mut mu);
            }
        }
    }
    u
}

/// Integer combinations of the rows of `rows`.
pub fn apply(u: &[Vec<i64>], rows: &Mat) -> Mat {
    u.iter()
        .map(|r| {
            let mut out = vec![BigInt::from(0); rows[0].len()];
            for (c, row) in r.iter().zip(rows) {
                if *c != 0 {
                    for (o, x) in out.iter_mut().zip(row) {
                        *o += x * *c;
                    }
                }
            }
            out
        })
        .collect()
}

/// LLL-reduced Z-basis of the lattice spanned by `rows` inside the order.
pub fn reduce(o: &OrderData, rows: &Mat) -> Mat {
    let u = lll(&real_vectors(o, rows));
    apply(&u, rows)
}

/// Cholesky factor in the quadratic-form layout: `Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
fn cholesky_form(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut q = g.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    q
}

/// Nonzero integer vectors `x` (up to sign) with `x G x^T <= bound`, at most
/// `limit` of them.
pub fn fincke_pohst(g: &[Vec<f64>], bound: f64, limit: usize) -> Vec<(Vec<i64>, f64)> {
    let n = g.len();
    let q = cholesky_form(g);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let eps = 1e-9 * (1.0 + bound.abs());
    fn rec(
        i: usize,
        rem: f64,
        q: &[Vec<f64>],
        x: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, f64)>,
        bound: f64,
        eps: f64,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let n = q.len();
        let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let r = (rem.max(0.0) / q[i][i]).sqrt();
        let lo = (c - r - 1e-9).ceil() as i64;
        let hi = (c + r + 1e-9).floor() as i64;
        for xi in lo..=hi {
            x[i] = xi;
            let t = xi as f64 - c;
            let rest = rem - q[i][i] * t * t;
            if rest < -eps {
                continue;
            }
            if i == 0 {
                if x.iter().all(|&v| v == 0) {
                    continue;
                }
                // keep one of +-x: first nonzero coordinate from the top positive
                if *x.iter().rev().find(|&&v| v != 0).unwrap() < 0 {
                    continue;
                }
                out.push((x.clone(), bound - rest));
                if out.len() >= limit {
                    return;
                }
            } else {
                rec(i - 1, rest, q, x, out, bound, eps, limit);
                if out.len() >= limit {
                    return;
                }
            }
        }
        x[i] = 0;
    }
    if n > 0 {
        rec(n - 1, bound, &q, &mut x, &mut out, bound, eps, limit);
    }
    out.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    out
}

/// Elements of the lattice spanned by `rows` with `T2 <= bound`, smallest first.
pub fn short_elements(o: &OrderData, rows: &Mat, bound: f64, limit: usize) -> Vec<(Elt, f64)> {
    let red = reduce(o, rows);
    let v = real_vectors(o, &red);
    let g: Vec<Vec<f64>> = v.iter().map(|a| v.iter().map(|b| dot(a, b)).collect()).collect();
    fincke_pohst(&g, bound, limit)
        .into_iter()
        .map(|(x, t)| (apply(&[x], &red).pop().unwrap(), t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::order_from_polynomial;
    use crate::poly::Poly;

    #[test]
    fn lll_reduces_skewed_basis() {
        let b = vec![vec![1.0, 0.0], vec![1000.0, 1.0]];
        let u = lll(&b);
        let red: Vec<Vec<f64>> = u.iter().map(|r| combine(r, &b)).collect();
        assert!(red.iter().all(|r| dot(r, r) <= 1.0 + 1e-9));
    }

    #[test]
    fn roots_of_unity_have_minimal_t2() {
        // Z[w]: the six units have T2 = 2
        let o = order_from_polynomial(&Poly::from_i64(&[1, 1, 1])).unwrap();
        let rows = crate::linalg::identity(2);
        let s = short_elements(&o, &rows, 2.5, 100);
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|(_, t)| (t - 2.0).abs() < 1e-9));
    }

    #[test]
    fn fincke_pohst_counts_z2() {
        let g = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        // x^2 + y^2 <= 2: (1,0),(0,1),(1,1),(1,-1) up to sign
        assert_eq!(fincke_pohst(&g, 2.0, 100).len(), 4);
    }
}
