//! Class groups and unit groups by relation collection.
//!
//! Relations are valuation vectors of small elements drawn from ideals of the
//! factor base, each checked exactly against the norm. The class group is the
//! cokernel of the relation matrix (modular HNF, then Smith form); units come
//! from short kernel vectors of the same matrix. A relation set is accepted as
//! complete when `h * R` agrees with a truncated Euler product for the residue
//! of the Dedekind zeta function, which rules out any missing index >= 2 in
//! either the class group or the unit lattice.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ideal::IdealHNF;
use super::lattice::{lll, reduce};
use super::primes::{primes_above, PrimeIdeal};
use super::units::{reduce_by_units, torsion, unit_rank, LogLattice, UnitGroup};
use super::{Elt, FieldElement, OrderData};
use crate::arith;
use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::{self, Mat};

#[derive(Clone, Debug)]
pub struct Effort {
    pub seed: u64,
    /// Norm bound of the factor base used for relations. Primes between this
    /// and the Minkowski bound are only shown to lie in the generated group.
    pub small_bound: Option<u64>,
    pub extra_relations: usize,
    pub max_rounds: usize,
    /// Rounds with unchanged `h` and `R` required after the analytic check passes.
    pub stable_rounds: usize,
    /// Primes up to this bound enter the Euler product.
    pub euler_bound: u64,
    pub deadline: Option<Duration>,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            seed: 0x5eed,
            small_bound: None,
            extra_relations: 20,
            max_rounds: 40,
            stable_rounds: 1,
            euler_bound: 100_000,
            deadline: None,
        }
    }
}

impl Effort {
    pub fn quick() -> Self {
        Effort { max_rounds: 10, euler_bound: 20_000, ..Self::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_deadline(mut self, d: Duration) -> Self {
        self.deadline = Some(d);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupStructure {
    /// Elementary divisors `d_1 | d_2 | ...`, all > 1.
    pub invariants: Vec<u64>,
    pub generators: Vec<IdealHNF>,
    pub certified: bool,
}

impl ClassGroupStructure {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// Invariants of the Sylow `l`-subgroup.
    pub fn sylow(&self, l: u64) -> Vec<u64> {
        self.invariants
            .iter()
            .filter_map(|&d| {
                let mut part = 1;
                let mut d = d;
                while d % l == 0 {
                    d /= l;
                    part *= l;
                }
                (part > 1).then_some(part)
            })
            .collect()
    }

    pub fn rank_at(&self, l: u64) -> usize {
        self.sylow(l).len()
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub elt: Elt,
    pub log: Vec<f64>,
    pub vec: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ClassGroupData {
    pub structure: ClassGroupStructure,
    pub factor_base: Vec<PrimeIdeal>,
    pub minkowski: f64,
    pub small_bound: u64,
    pub relations: Vec<Relation>,
    pub hnf: Mat,
    /// Full Smith diagonal and right transform: the class of a factor-base
    /// vector `w` has coordinates `(w v)_t mod diag_t`.
    pub diag: Vec<BigInt>,
    snf_v: Mat,
    pub units: UnitGroup,
    pub analytic_hr: f64,
    pub hr_ratio: f64,
    /// Every prime up to the Minkowski bound lies in the group generated by
    /// the factor base.
    pub generation_checked: bool,
}

/// `sqrt|d| (4/pi)^r2 n! / n^n`.
pub fn minkowski_bound(o: &OrderData) -> f64 {
    let n = o.degree;
    let d = o.discriminant.abs().to_f64().unwrap();
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    d.sqrt() * (4.0 / std::f64::consts::PI).powi(o.signature.1 as i32) * fact / (n as f64).powi(n as i32)
}

/// Truncated Euler product for `h R`.
pub fn analytic_hr(o: &OrderData, bound: u64, w: u32) -> Result<f64> {
    let disc_poly = o.poly.discriminant();
    let mut log_res = 0.0;
    for q in arith::primes_up_to(bound) {
        let qf = q as f64;
        let degs: Vec<u32> = if (&disc_poly % BigInt::from(q)).is_zero() {
            primes_above(o, q)?.iter().map(|p| p.f).collect()
        } else {
            fp::factor_degrees(&o.poly.mod_q(q), q)
                .expect("square-free mod q")
                .into_iter()
                .map(|d| d as u32)
                .collect()
        };
        log_res += (1.0 - 1.0 / qf).ln();
        for f in degs {
            log_res -= (1.0 - qf.powi(-(f as i32))).ln();
        }
    }
    let (r1, r2) = o.signature;
    let d = o.discriminant.abs().to_f64().unwrap();
    Ok(w as f64 * d.sqrt() / (2f64.powi(r1 as i32) * (2.0 * std::f64::consts::PI).powi(r2 as i32))
        * log_res.exp())
}

struct FactorBase {
    primes: Vec<PrimeIdeal>,
    by_q: BTreeMap<u64, Vec<usize>>,
}

impl FactorBase {
    fn build(o: &OrderData, bound: u64) -> Result<Self> {
        let mut primes = Vec::new();
        let mut by_q: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for q in arith::primes_up_to(bound) {
            for p in primes_above(o, q)? {
                if p.norm() <= BigInt::from(bound) {
                    by_q.entry(q).or_default().push(primes.len());
                    primes.push(p);
                }
            }
        }
        Ok(FactorBase { primes, by_q })
    }

    /// Valuation vector of `(x)` divided by `extra^v` where `v = v_extra(x)`,
    /// if that quotient is supported on the factor base. Returns `v` as well.
    fn factor(&self, o: &OrderData, x: &[BigInt], extra: Option<&PrimeIdeal>) -> Option<(Vec<i64>, u32)> {
        let mut rest = o.norm(x).abs();
        if rest.is_zero() {
            return None;
        }
        let mut vec = vec![0i64; self.primes.len()];
        let mut ve = 0;
        if let Some(p) = extra {
            ve = p.valuation(o, x);
            rest /= p.norm().pow(ve);
        }
        for (&q, idxs) in &self.by_q {
            let qb = BigInt::from(q);
            let mut e = 0u32;
            while (&rest % &qb).is_zero() {
                rest /= &qb;
                e += 1;
            }
            if e == 0 {
                continue;
            }
            let mut s = 0u32;
            for &i in idxs {
                let v = self.primes[i].valuation(o, x);
                vec[i] = v as i64;
                s += v * self.primes[i].f;
            }
            if s != e {
                return None;
            }
            if rest.is_one() {
                break;
            }
        }
        rest.is_one().then_some((vec, ve))
    }
}

fn sign_normalize(mut x: Elt) -> Elt {
    if x.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in x.iter_mut() {
            *c = -&*c;
        }
    }
    x
}

fn random_element(rng: &mut ChaCha8Rng, basis: &Mat, range: i64) -> Elt {
    loop {
        let mut x = vec![BigInt::zero(); basis[0].len()];
        let mut nonzero = false;
        for row in basis {
            let c: i64 = rng.gen_range(-range..=range);
            if c != 0 {
                nonzero = true;
                for (a, b) in x.iter_mut().zip(row) {
                    *a += b * c;
                }
            }
        }
        if nonzero && x.iter().any(|c| !c.is_zero()) {
            return x;
        }
    }
}

/// Rows spanning a full-rank sublattice (chosen mod a large prime) and the HNF
/// of the whole relation lattice, if it has full rank.
fn relation_hnf(rels: &[Relation], n: usize) -> Option<Mat> {
    if n == 0 {
        return Some(Vec::new());
    }
    const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
    let to_fp = |v: &[i64]| -> Vec<u64> { v.iter().map(|&c| c.rem_euclid(P as i64) as u64).collect() };
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    for (idx, r) in rels.iter().enumerate() {
        let mut v = to_fp(&r.vec);
        for (piv, row) in &echelon {
            if v[*piv] != 0 {
                let f = v[*piv];
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + P - arith::mul_mod(f, *b, P)) % P;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&c| c != 0) {
            let inv = fp::inv(v[piv], P);
            for a in v.iter_mut() {
                *a = arith::mul_mod(*a, inv, P);
            }
            echelon.push((piv, v));
            chosen.push(idx);
            if chosen.len() == n {
                break;
            }
        }
    }
    if chosen.len() < n {
        return None;
    }
    let sub: Mat = chosen.iter().map(|&i| rels[i].vec.iter().map(|&c| BigInt::from(c)).collect()).collect();
    let d = linalg::det(&sub).abs();
    let all: Mat = rels.iter().map(|r| r.vec.iter().map(|&c| BigInt::from(c)).collect()).collect();
    Some(linalg::hnf_mod(&all, n, &d))
}

/// Short integer kernel vectors of the relation matrix restricted to `idx`,
/// with an optional target row appended: rows `[e_j | W r_j]`.
fn short_kernel(rels: &[Relation], idx: &[usize], target: Option<&[i64]>, n: usize) -> Vec<Vec<i64>> {
    let m = idx.len() + usize::from(target.is_some());
    let weight = 1u64 << 20;
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let mut v = vec![0.0; m + n];
            v[j] = 1.0;
            let r: &[i64] = if j < idx.len() { &rels[idx[j]].vec } else { target.unwrap() };
            for (c, &x) in r.iter().enumerate() {
                v[m + c] = (weight as f64) * x as f64;
            }
            v
        })
        .collect();
    let u = lll(&rows);
    u.into_iter()
        .filter(|k| {
            (0..n).all(|c| {
                let s: i128 = (0..m)
                    .map(|j| {
                        let r: &[i64] = if j < idx.len() { &rels[idx[j]].vec } else { target.unwrap() };
                        k[j] as i128 * r[c] as i128
                    })
                    .sum();
                s == 0
            }) && k.iter().any(|&c| c != 0)
        })
        .collect()
}

/// `prod x_j^k_j` exactly, with its additive log vector.
fn relation_product(o: &OrderData, rels: &[Relation], idx: &[usize], k: &[i64]) -> (FieldElement, Vec<f64>) {
    let mut num = FieldElement::integral(o.one());
    let mut den = FieldElement::integral(o.one());
    let mut log = vec![0.0; o.signature.0 + o.signature.1];
    for (&j, &c) in idx.iter().zip(k) {
        if c == 0 {
            continue;
        }
        let p = FieldElement::integral(o.pow(&rels[j].elt, c.unsigned_abs()));
        if c > 0 {
            num = num.mul(o, &p);
        } else {
            den = den.mul(o, &p);
        }
        for (a, b) in log.iter_mut().zip(&rels[j].log) {
            *a += c as f64 * b;
        }
    }
    (num.mul(o, &den.inverse(o).expect("nonzero")), log)
}

struct Search<'a> {
    o: &'a OrderData,
    fb: FactorBase,
    rng: ChaCha8Rng,
    reduced_o: Mat,
    reduced: Vec<Option<Mat>>,
    seen: HashSet<Elt>,
    range: i64,
}

impl<'a> Search<'a> {
    fn prime_lattice(&mut self, i: usize) -> Mat {
        if self.reduced[i].is_none() {
            self.reduced[i] = Some(reduce(self.o, &self.fb.primes[i].ideal.basis));
        }
        self.reduced[i].clone().unwrap()
    }

    fn collect(&mut self, rels: &mut Vec<Relation>, target: usize, max_attempts: usize) {
        let o = self.o;
        let nfb = self.fb.primes.len();
        let mut attempts = 0;
        while rels.len() < target && attempts < max_attempts {
            attempts += 1;
            let basis = if nfb == 0 || attempts % 4 == 0 {
                self.reduced_o.clone()
            } else {
                let i = attempts % nfb;
                if self.rng.gen_bool(0.3) {
                    let j = self.rng.gen_range(0..nfb);
                    let prod = self.fb.primes[i].ideal.mul(o, &self.fb.primes[j].ideal);
                    reduce(o, &prod.basis)
                } else {
                    self.prime_lattice(i)
                }
            };
            let x = sign_normalize(random_element(&mut self.rng, &basis, self.range));
            if self.seen.contains(&x) {
                continue;
            }
            if let Some((vec, _)) = self.fb.factor(o, &x, None) {
                self.seen.insert(x.clone());
                rels.push(Relation { log: o.log_embedding(&x), elt: x, vec });
            }
        }
    }
}

fn class_coords(diag: &[BigInt], v: &Mat, w: &[BigInt]) -> Vec<u64> {
    let c = linalg::vec_mat(w, v);
    diag.iter()
        .zip(c)
        .filter(|(d, _)| **d > BigInt::one())
        .map(|(d, x)| x.mod_floor(d).to_u64().unwrap())
        .collect()
}

/// Full class group computation.
pub fn class_group_data(o: &OrderData, effort: &Effort) -> Result<ClassGroupData> {
    let start = Instant::now();
    let mink = minkowski_bound(o);
    let mink_floor = mink.floor().max(1.0) as u64;
    let default_small = if o.degree >= 5 { 400 } else { 300 };
    let small = effort.small_bound.unwrap_or(default_small).min(mink_floor).max(2);
    let fb = FactorBase::build(o, small)?;
    let nfb = fb.primes.len();
    let (tors, w) = torsion(o);
    let analytic = analytic_hr(o, effort.euler_bound, w)?;
    let reduced_o = reduce(o, &linalg::identity(o.degree));
    let mut search = Search {
        o,
        reduced: vec![None; nfb],
        fb,
        rng: ChaCha8Rng::seed_from_u64(effort.seed),
        reduced_o,
        seen: HashSet::new(),
        range: if o.degree <= 3 { 2 } else { 1 },
    };
    let mut rels: Vec<Relation> = Vec::new();
    let mut lat = LogLattice::new(o);
    let mut target = nfb + effort.extra_relations;
    let mut best: Option<(Mat, f64, f64)> = None;
    let mut stable = 0usize;
    let mut last: Option<(BigInt, i64)> = None;
    let mut done = false;
    for _round in 0..effort.max_rounds {
        if effort.deadline.is_some_and(|d| start.elapsed() > d) {
            break;
        }
        search.collect(&mut rels, target, 400 * target + 1000);
        target += effort.extra_relations;
        let Some(h) = relation_hnf(&rels, nfb) else { continue };
        // units from short kernel vectors of a random subset of relations
        let mut idx: Vec<usize> = (0..rels.len()).collect();
        idx.shuffle(&mut search.rng);
        idx.truncate(nfb + 40);
        idx.sort_unstable();
        for k in short_kernel(&rels, &idx, None, nfb) {
            if k.iter().any(|c| c.abs() > 1000) {
                continue;
            }
            let (u, l) = relation_product(o, &rels, &idx, &k);
            lat.insert(o, u, l);
        }
        let hnum: BigInt = (0..nfb).map(|i| h[i][i].clone()).product();
        let reg = lat.regulator();
        let ratio = reg.map(|r| hnum.to_f64().unwrap() * r / analytic);
        best = Some((h, reg.unwrap_or(f64::NAN), ratio.unwrap_or(f64::NAN)));
        if let Some(r) = ratio {
            let key = (hnum.clone(), (reg.unwrap() * 1e6).round() as i64);
            if (0.5..1.5).contains(&r) {
                if last.as_ref() == Some(&key) {
                    stable += 1;
                } else {
                    stable = 0;
                }
                if stable >= effort.stable_rounds {
                    done = true;
                    break;
                }
            } else {
                stable = 0;
            }
            last = Some(key);
        }
    }
    let Some((h, reg, ratio)) = best else {
        return Err(Error::EffortExhausted(format!(
            "relation matrix did not reach full rank {nfb} with {} relations",
            rels.len()
        )));
    };
    // generation: primes between the factor-base bound and the Minkowski bound
    let mut generation_checked = true;
    if small < mink_floor {
        'outer: for q in arith::primes_up_to(mink_floor) {
            for p in primes_above(o, q)? {
                if p.norm() <= BigInt::from(small) || p.norm() > BigInt::from(mink_floor) {
                    continue;
                }
                if effort.deadline.is_some_and(|d| start.elapsed() > d) {
                    generation_checked = false;
                    break 'outer;
                }
                let basis = reduce(o, &p.ideal.basis);
                let mut found = false;
                for _ in 0..5000 {
                    let x = random_element(&mut search.rng, &basis, search.range);
                    if let Some((_, 1)) = search.fb.factor(o, &x, Some(&p)) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    generation_checked = false;
                }
            }
        }
    }
    let (diag, snf_v) = if nfb == 0 {
        (Vec::new(), Vec::new())
    } else {
        let s = linalg::snf(&h);
        (s.diag, s.v)
    };
    let invariants: Vec<u64> = diag.iter().filter(|d| **d > BigInt::one()).map(|d| d.to_u64().unwrap()).collect();
    let generators = class_generators(o, &search.fb.primes, &diag, &snf_v, &invariants);
    let rank = unit_rank(o);
    let complete = lat.basis.len() == rank;
    let units = UnitGroup {
        torsion: tors,
        torsion_order: w,
        fundamental: lat.basis.iter().map(|b| b.0.clone()).collect(),
        logs: lat.basis.iter().map(|b| b.1.clone()).collect(),
        regulator: if complete { reg } else { f64::NAN },
        complete,
    };
    let certified = done && complete && generation_checked;
    Ok(ClassGroupData {
        structure: ClassGroupStructure { invariants, generators, certified },
        factor_base: search.fb.primes,
        minkowski: mink,
        small_bound: small,
        relations: rels,
        hnf: h,
        diag,
        snf_v,
        units,
        analytic_hr: analytic,
        hr_ratio: ratio,
        generation_checked,
    })
}

fn class_generators(
    o: &OrderData,
    fb: &[PrimeIdeal],
    diag: &[BigInt],
    v: &Mat,
    invariants: &[u64],
) -> Vec<IdealHNF> {
    if invariants.is_empty() {
        return Vec::new();
    }
    let n = fb.len();
    let coords: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            class_coords(diag, v, &e)
        })
        .collect();
    let vinv = linalg::inverse_unimodular(v).expect("unimodular");
    let dmax = *invariants.last().unwrap() as i64;
    let offset = diag.len() - invariants.len();
    (0..invariants.len())
        .map(|t| {
            let mut unit = vec![0u64; invariants.len()];
            unit[t] = 1;
            if let Some(j) = coords.iter().position(|c| *c == unit) {
                return fb[j].ideal.clone();
            }
            let row = &vinv[offset + t];
            let mut acc = IdealHNF::unit(o);
            for (j, e) in row.iter().enumerate() {
                let e = e.mod_floor(&BigInt::from(dmax)).to_u32().unwrap();
                if e > 0 {
                    acc = acc.mul(o, &fb[j].ideal.pow(o, e));
                }
            }
            acc
        })
        .collect()
}

/// Class group structure of a maximal order.
pub fn class_group(o: &OrderData, effort: &Effort) -> Result<ClassGroupStructure> {
    Ok(class_group_data(o, effort)?.structure)
}

/// Decomposition `(x) = I A C` with `A`, `C` supported on the factor base.
#[derive(Clone, Debug)]
pub struct SmoothDecomposition {
    pub x: Elt,
    /// Factor-base vector of `A C`, so `[I] = -[w]`.
    pub w: Vec<i64>,
}

impl ClassGroupData {
    pub fn class_of_vector(&self, w: &[i64]) -> Vec<u64> {
        if self.factor_base.is_empty() {
            return Vec::new();
        }
        let w: Vec<BigInt> = w.iter().map(|&c| BigInt::from(c)).collect();
        class_coords(&self.diag, &self.snf_v, &w)
    }

    fn negate(&self, c: Vec<u64>) -> Vec<u64> {
        c.into_iter()
            .zip(&self.structure.invariants)
            .map(|(x, d)| (d - x % d) % d)
            .collect()
    }

    pub fn decompose(&self, o: &OrderData, i: &IdealHNF, seed: u64) -> Result<SmoothDecomposition> {
        assert!(i.is_integral());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nfb = self.factor_base.len();
        let range = if o.degree <= 3 { 2 } else { 1 };
        for attempt in 0..2000 {
            let mut a = vec![0i64; nfb];
            let mut j = i.clone();
            if attempt > 0 && nfb > 0 {
                for _ in 0..rng.gen_range(1..=2) {
                    let k = rng.gen_range(0..nfb);
                    a[k] += 1;
                    j = j.mul(o, &self.factor_base[k].ideal);
                }
            }
            let basis = reduce(o, &j.basis);
            let x = if attempt == 0 { basis[0].clone() } else { random_element(&mut rng, &basis, range) };
            let nx = o.norm(&x).abs();
            let nj = j.norm_int();
            let (nc, r) = nx.div_rem(&nj);
            if !r.is_zero() {
                continue;
            }
            if let Some(c) = self.smooth_cofactor(o, &x, &j, nc) {
                let w = a.iter().zip(&c).map(|(p, q)| p + q).collect();
                return Ok(SmoothDecomposition { x, w });
            }
        }
        Err(Error::EffortExhausted("no smooth decomposition of the ideal".into()))
    }

    /// Factor-base vector of `(x) J^-1` when it is smooth.
    fn smooth_cofactor(&self, o: &OrderData, x: &[BigInt], j: &IdealHNF, mut rest: BigInt) -> Option<Vec<i64>> {
        let mut vec = vec![0i64; self.factor_base.len()];
        let mut by_q: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (k, p) in self.factor_base.iter().enumerate() {
            by_q.entry(p.q).or_default().push(k);
        }
        for (q, idxs) in by_q {
            if rest.is_one() {
                break;
            }
            let qb = BigInt::from(q);
            let mut e = 0u32;
            while (&rest % &qb).is_zero() {
                rest /= &qb;
                e += 1;
            }
            if e == 0 {
                continue;
            }
            let mut s = 0i64;
            for k in idxs {
                let p = &self.factor_base[k];
                let v = p.valuation(o, x) as i64 - p.ideal_valuation(o, j) as i64;
                if v < 0 {
                    return None;
                }
                vec[k] = v;
                s += v * p.f as i64;
            }
            if s != e as i64 {
                return None;
            }
        }
        rest.is_one().then_some(vec)
    }

    /// Class of an integral ideal in coordinates on the cyclic factors.
    pub fn class_of(&self, o: &OrderData, i: &IdealHNF) -> Result<Vec<u64>> {
        if self.structure.invariants.is_empty() {
            return Ok(Vec::new());
        }
        let d = self.decompose(o, i, 1)?;
        Ok(self.negate(self.class_of_vector(&d.w)))
    }

    /// Generator of a principal integral ideal, reduced modulo units, or
    /// `None` when the class is nontrivial.
    pub fn generator(&self, o: &OrderData, i: &IdealHNF) -> Result<Option<FieldElement>> {
        let total = self.relations.len();
        let nfb = self.factor_base.len();
        for seed in 1..20u64 {
            let d = self.decompose(o, i, seed)?;
            if self.class_of_vector(&d.w).iter().any(|&c| c != 0) {
                return Ok(None);
            }
            // a random subset of relations usually spans the whole lattice and
            // keeps the LLL dimension small; widen it when it does not
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let size = (nfb + 20 * seed as usize).min(total);
            let idx: Vec<usize> = if size == total {
                (0..total).collect()
            } else {
                let mut v = rand::seq::index::sample(&mut rng, total, size).into_vec();
                v.sort_unstable();
                v
            };
            let ker = short_kernel(&self.relations, &idx, Some(&d.w), nfb);
            let m = idx.len();
            let Some(k) = ker.iter().find(|k| k[m].abs() == 1 && k[..m].iter().all(|c| c.abs() <= 1000)) else {
                continue;
            };
            // k R + t w = 0, so prod x_j^(-t k_j) generates A C
            let t = k[m];
            let kk: Vec<i64> = k[..m].iter().map(|c| -t * c).collect();
            let (y, ylog) = relation_product(o, &self.relations, &idx, &kk);
            let x = FieldElement::integral(d.x.clone());
            let g = x.mul(o, &y.inverse(o).expect("nonzero"));
            let glog: Vec<f64> = o.log_embedding(&d.x).iter().zip(&ylog).map(|(a, b)| a - b).collect();
            let (g, _) = reduce_by_units(o, &g, &glog, &self.units);
            if g.is_integral() && IdealHNF::principal(o, &g.num) == *i {
                return Ok(Some(g));
            }
        }
        Err(Error::EffortExhausted("could not assemble a generator".into()))
    }

    /// `prod P^v == (x)` for a relation, checked on HNF matrices.
    pub fn check_relation(&self, o: &OrderData, r: &Relation) -> bool {
        let mut acc = IdealHNF::unit(o);
        for (p, &v) in self.factor_base.iter().zip(&r.vec) {
            if v > 0 {
                acc = acc.mul(o, &p.ideal.pow(o, v as u32));
            }
        }
        acc == IdealHNF::principal(o, &r.elt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{maximal::maximal_order, order_from_polynomial};
    use crate::poly::Poly;

    fn pure(m: i64) -> OrderData {
        maximal_order(&order_from_polynomial(&Poly::pure(3, m)).unwrap()).unwrap()
    }

    #[test]
    fn minkowski_of_cbrt61() {
        let b = minkowski_bound(&pure(61));
        assert!((b - 89.6).abs() < 1.0, "{b}");
    }

    #[test]
    fn small_pure_cubics() {
        for (m, inv, reg) in [(2, vec![], 1.34737734832938), (7, vec![3], 2.44105647038903), (11, vec![2], 5.58720662606091)] {
            let o = pure(m);
            let cg = class_group_data(&o, &Effort::default()).unwrap();
            assert_eq!(cg.structure.invariants, inv, "m = {m}");
            assert!(cg.structure.certified, "m = {m}: ratio {}", cg.hr_ratio);
            assert!((cg.units.regulator - reg).abs() < 1e-6, "m = {m}: {}", cg.units.regulator);
            for r in cg.relations.iter().take(10) {
                assert!(cg.check_relation(&o, r));
            }
        }
    }
}
