//! Unit groups: torsion, a log-lattice basis built from units supplied by
//! relation kernels, and reduction of elements modulo units.
//!
//! Logarithms are carried additively alongside each exact unit. Evaluating
//! the logarithm of a large unit from its coordinates would cancel
//! catastrophically at the small embeddings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::classgroup::{class_group_data, Effort};
use super::lattice::{fincke_pohst, lll};
use super::{Elt, FieldElement, OrderData};
use crate::error::Result;
use crate::linalg;

#[derive(Clone, Debug)]
pub struct UnitGroup {
    /// Generator of the roots of unity and their number.
    pub torsion: Elt,
    pub torsion_order: u32,
    pub fundamental: Vec<FieldElement>,
    /// Logarithmic embeddings of the fundamental units (complex places
    /// weighted twice).
    pub logs: Vec<Vec<f64>>,
    /// Zero when the rank is zero. `complete` is false if the basis may
    /// only span a subgroup of finite index.
    pub regulator: f64,
    pub complete: bool,
}

impl UnitGroup {
    pub fn rank(&self) -> usize {
        self.fundamental.len()
    }
}

pub fn unit_rank(o: &OrderData) -> usize {
    o.signature.0 + o.signature.1 - 1
}

/// Roots of unity: the elements of T2 exactly n with norm +-1.
pub fn torsion(o: &OrderData) -> (Elt, u32) {
    let g = o.t2_gram();
    let n = o.degree as f64;
    let rows = linalg::identity(o.degree);
    let mut roots: Vec<Elt> = Vec::new();
    for (x, t) in fincke_pohst(&g, n + 0.01, 1000) {
        if (t - n).abs() > 1e-6 {
            continue;
        }
        let e = super::lattice::apply(&[x], &rows).pop().unwrap();
        if o.norm(&e).abs().is_one() {
            roots.push(e);
        }
    }
    let w = 2 * roots.len() as u32;
    // a root of maximal order generates
    let one = o.one();
    let mut best = (o.from_int(-1), 2u32);
    for r in roots.iter().flat_map(|r| [r.clone(), r.iter().map(|c| -c).collect()]) {
        let mut acc = r.clone();
        let mut k = 1;
        while acc != one && k <= w {
            acc = o.mul(&acc, &r);
            k += 1;
        }
        if k > best.1 {
            best = (r, k);
        }
    }
    (best.0, w.max(2))
}

/// Least-denominator rational approximation within `tol`.
fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if (h2 as f64 / k2 as f64 - x).abs() < tol {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

fn solve_real(m: &[Vec<f64>], v: &[f64]) -> Option<Vec<f64>> {
    // x * m = v for square m, by Gaussian elimination on the transpose
    let n = m.len();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[j][i]).chain([v[i]]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if a[p][c].abs() < 1e-12 {
            return None;
        }
        a.swap(c, p);
        for i in 0..n {
            if i != c {
                let f = a[i][c] / a[c][c];
                for j in c..=n {
                    a[i][j] -= f * a[c][j];
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

fn det_real(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = 1.0;
    for c in 0..n {
        let Some(p) = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()) else {
            return 0.0;
        };
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        d *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                a[i][j] -= f * a[c][j];
            }
        }
    }
    d
}

/// Exact product `prod b_i^(e_i)` of units, with its log vector.
fn combine_units(o: &OrderData, basis: &[(FieldElement, Vec<f64>)], e: &[i64]) -> (FieldElement, Vec<f64>) {
    let mut num = FieldElement::integral(o.one());
    let mut den = FieldElement::integral(o.one());
    let mut log = vec![0.0; basis.first().map_or(0, |b| b.1.len())];
    for ((u, l), &k) in basis.iter().zip(e) {
        if k == 0 {
            continue;
        }
        let p = u.pow(o, k.abs()).expect("positive power");
        if k > 0 {
            num = num.mul(o, &p);
        } else {
            den = den.mul(o, &p);
        }
        for (a, b) in log.iter_mut().zip(l) {
            *a += k as f64 * b;
        }
    }
    let inv = den.inverse(o).expect("units are invertible");
    (num.mul(o, &inv), log)
}

/// A basis of the lattice of unit logarithms seen so far.
#[derive(Clone, Debug)]
pub struct LogLattice {
    pub rank: usize,
    pub basis: Vec<(FieldElement, Vec<f64>)>,
}

impl LogLattice {
    pub fn new(o: &OrderData) -> Self {
        LogLattice { rank: unit_rank(o), basis: Vec::new() }
    }

    fn proj(&self, l: &[f64]) -> Vec<f64> {
        l[..self.rank].to_vec()
    }

    fn lll_reduce(&mut self, o: &OrderData) {
        if self.basis.len() < 2 {
            return;
        }
        let vecs: Vec<Vec<f64>> = self.basis.iter().map(|b| self.proj(&b.1)).collect();
        let u = lll(&vecs);
        let old = self.basis.clone();
        self.basis = u.iter().map(|row| combine_units(o, &old, row)).collect();
    }

    /// Add a unit with its log vector; returns whether the lattice grew.
    pub fn insert(&mut self, o: &OrderData, u: FieldElement, log: Vec<f64>) -> bool {
        if self.rank == 0 {
            return false;
        }
        let v = self.proj(&log);
        let size: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if size < 1e-6 {
            return false;
        }
        if self.basis.len() < self.rank {
            // independent of the current vectors?
            let mut w = v.clone();
            let mut stars: Vec<Vec<f64>> = Vec::new();
            for b in &self.basis {
                let mut s = self.proj(&b.1);
                for t in &stars {
                    let c = s.iter().zip(t).map(|(a, b)| a * b).sum::<f64>() / t.iter().map(|x| x * x).sum::<f64>();
                    for (a, b) in s.iter_mut().zip(t) {
                        *a -= c * b;
                    }
                }
                stars.push(s);
            }
            for t in &stars {
                let c = w.iter().zip(t).map(|(a, b)| a * b).sum::<f64>() / t.iter().map(|x| x * x).sum::<f64>();
                for (a, b) in w.iter_mut().zip(t) {
                    *a -= c * b;
                }
            }
            if w.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-6 * (1.0 + size) {
                self.basis.push((u, log));
                self.lll_reduce(o);
                return true;
            }
            // dependent: only useful once the basis is full
            return false;
        }
        let m: Vec<Vec<f64>> = self.basis.iter().map(|b| self.proj(&b.1)).collect();
        let Some(c) = solve_real(&m, &v) else { return false };
        if c.iter().all(|x| (x - x.round()).abs() < 1e-6) {
            return false;
        }
        let mut fracs = Vec::with_capacity(c.len());
        for x in &c {
            match rationalize(*x, 10_000, 1e-7 * (1.0 + x.abs())) {
                Some(f) => fracs.push(f),
                None => return false,
            }
        }
        let d = fracs.iter().fold(1i64, |l, f| l.lcm(&f.1));
        // rows: d * e_i for the basis, d * c for the new unit
        let r = self.rank;
        let mut rows: Vec<Vec<BigInt>> = (0..r)
            .map(|i| (0..r).map(|j| BigInt::from(if i == j { d } else { 0 })).collect())
            .collect();
        rows.push(fracs.iter().map(|(h, k)| BigInt::from(h * (d / k))).collect());
        let res = linalg::hnf_with_transform(&rows, true);
        let mut all = self.basis.clone();
        all.push((u, log));
        let mut next = Vec::with_capacity(r);
        for row in res.u.iter().take(res.rank) {
            let e: Option<Vec<i64>> = row.iter().map(|x| i64::try_from(x.clone()).ok()).collect();
            let Some(e) = e else { return false };
            next.push(combine_units(o, &all, &e));
        }
        self.basis = next;
        self.lll_reduce(o);
        true
    }

    pub fn regulator(&self) -> Option<f64> {
        if self.rank == 0 {
            return Some(1.0);
        }
        if self.basis.len() < self.rank {
            return None;
        }
        let m: Vec<Vec<f64>> = self.basis.iter().map(|b| self.proj(&b.1)).collect();
        Some(det_real(&m).abs())
    }
}

/// Multiply `x` by a product of fundamental units so that its log vector is
/// close to the diagonal `log|N(x)| / n`.
pub fn reduce_by_units(
    o: &OrderData,
    x: &FieldElement,
    log: &[f64],
    units: &UnitGroup,
) -> (FieldElement, Vec<f64>) {
    let r = units.rank();
    if r == 0 {
        return (x.clone(), log.to_vec());
    }
    let n = o.degree as f64;
    let total: f64 = log.iter().sum();
    let r1 = o.signature.0;
    let target: Vec<f64> = log
        .iter()
        .enumerate()
        .map(|(k, l)| l - total / n * if k < r1 { 1.0 } else { 2.0 })
        .collect();
    let m: Vec<Vec<f64>> = units.logs.iter().map(|l| l[..r].to_vec()).collect();
    let Some(c) = solve_real(&m, &target[..r]) else { return (x.clone(), log.to_vec()) };
    let e: Vec<i64> = c.iter().map(|v| -(v.round() as i64)).collect();
    let basis: Vec<(FieldElement, Vec<f64>)> =
        units.fundamental.iter().cloned().zip(units.logs.iter().cloned()).collect();
    let (u, ul) = combine_units(o, &basis, &e);
    let y = x.mul(o, &u);
    let yl = log.iter().zip(&ul).map(|(a, b)| a + b).collect();
    (y, yl)
}

/// Fundamental units through the class group machinery.
pub fn fundamental_units(o: &OrderData, effort: &Effort) -> Result<UnitGroup> {
    Ok(class_group_data(o, effort)?.units)
}

/// Whether a field element is a unit of the order (integral with norm +-1).
pub fn is_unit(o: &OrderData, u: &FieldElement) -> bool {
    u.is_integral() && u.norm(o).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::order_from_polynomial;
    use crate::poly::Poly;

    #[test]
    fn torsion_orders() {
        let o = order_from_polynomial(&Poly::from_i64(&[1, 1, 1])).unwrap();
        let (z, w) = torsion(&o);
        assert_eq!(w, 6);
        assert_eq!(o.pow(&z, 6), o.one());
        assert_ne!(o.pow(&z, 3), o.one());
        let o = order_from_polynomial(&Poly::pure(3, 2)).unwrap();
        assert_eq!(torsion(&o).1, 2);
    }

    #[test]
    fn lattice_saturates_from_powers() {
        // Q(cbrt 2): eps = theta - 1; feed eps^2 and eps^3
        let o = order_from_polynomial(&Poly::pure(3, 2)).unwrap();
        let eps = FieldElement::integral(vec![BigInt::from(-1), BigInt::one(), BigInt::from(0)]);
        let l = eps.log_embedding(&o);
        let mut lat = LogLattice::new(&o);
        let e2 = eps.pow(&o, 2).unwrap();
        let e3 = eps.pow(&o, 3).unwrap();
        assert!(lat.insert(&o, e2, l.iter().map(|x| 2.0 * x).collect()));
        assert!(lat.insert(&o, e3, l.iter().map(|x| 3.0 * x).collect()));
        assert!((lat.regulator().unwrap() - 1.34737734832938).abs() < 1e-9);
        assert!(is_unit(&o, &lat.basis[0].0));
    }

    #[test]
    fn rationalize_small() {
        assert_eq!(rationalize(2.0 / 3.0, 100, 1e-9), Some((2, 3)));
        assert_eq!(rationalize(-1.5, 100, 1e-9), Some((-3, 2)));
    }
}
