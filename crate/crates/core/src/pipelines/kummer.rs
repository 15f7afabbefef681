//! The cubic extension M = k(cbrt(p alpha)) of k = Q(w) and its places above
//! lambda, realized as embeddings of M into the completion Q_3(w).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::chevalley::SymbolPlace;
use crate::arith;
use crate::cyclotomic::{cyclo_norm_element_of, galois_shift, PeriodElement, PeriodField};
use crate::eisenstein::{split_prime, EisensteinInt, SymbolValue};
use crate::error::{Error, Result};
use crate::localfield::{self, cube_roots, embed_eisenstein, lift_period_roots, Base, LocalNumber, PeriodRoots};
use crate::symbols::wild_symbol_local;

/// The Jacobi sum `J(chi, chi)` of the cubic residue character attached to
/// the first prime of `split_prime(p)`, up to the sign making it primary.
///
/// `-1` is a cube, so `k(cbrt(p J))` does not depend on the sign.
pub fn jacobi_alpha(p: u64) -> Result<EisensteinInt> {
    let (pi, _) = split_prime(p)?;
    let r = localfield::omega_in_zp(&pi, p, 1).to_u64().unwrap();
    let e = (p - 1) / 3;
    let chi = |x: u64| -> usize {
        match arith::pow_mod(x, e, p) {
            1 => 0,
            t if t == r => 1,
            _ => 2,
        }
    };
    let mut n = [0i64; 3];
    for x in 2..p {
        n[(chi(x) + chi(p + 1 - x)) % 3] += 1;
    }
    // 1 + w + w^2 = 0
    let j = EisensteinInt::new(n[0] - n[2], n[1] - n[2]);
    if j.norm() != BigInt::from(p) {
        return Err(Error::InconsistentInputs(format!("Jacobi sum {j} does not have norm {p}")));
    }
    let j = if j.is_primary() { j } else { -j };
    if !j.is_primary() {
        return Err(Error::InconsistentInputs(format!("Jacobi sum {j} is not primary up to sign")));
    }
    Ok(j)
}

/// `cbrt(p alpha)^radical * prod(real_i^e_i) * scalar` with `real_i` in M+.
#[derive(Clone, Debug)]
pub struct MElement {
    pub radical: i64,
    pub real: Vec<(PeriodElement, i64)>,
    pub scalar: EisensteinInt,
}

impl MElement {
    pub fn from_k(z: EisensteinInt) -> Self {
        MElement { radical: 0, real: Vec::new(), scalar: z }
    }

    pub fn zeta3() -> Self {
        Self::from_k(EisensteinInt::omega())
    }

    pub fn from_real(x: PeriodElement) -> Self {
        MElement { radical: 0, real: vec![(x, 1)], scalar: EisensteinInt::one() }
    }
}

/// A place of M above lambda, split in M/k: a cube root of `p alpha` in
/// Q_3(w) together with an embedding of M+ into Z_3.
#[derive(Clone, Debug)]
pub struct LambdaPlace {
    pub index: usize,
    pub radical: LocalNumber,
    /// Images of `eta_0, eta_1, eta_2` modulo `3^precision`.
    pub periods: [BigInt; 3],
    pub precision: u32,
}

impl LambdaPlace {
    fn real_value(&self, x: &PeriodElement) -> Result<BigInt> {
        let m = BigInt::from(3).pow(self.precision);
        let mut acc = BigInt::zero();
        for (c, r) in x.coords.iter().zip(&self.periods) {
            let d = c.denom().mod_floor(&m).modinv(&m).ok_or_else(|| Error::Precondition("denominator divisible by 3".into()))?;
            acc += c.numer() * d * r;
        }
        Ok(acc.mod_floor(&m))
    }

    /// The image of a real element in Z_3.
    pub fn embed_real(&self, x: &PeriodElement) -> Result<LocalNumber> {
        LocalNumber::lambda_from(&EisensteinInt::from_int(self.real_value(x)?), self.precision)
    }

    pub fn embed(&self, x: &MElement) -> Result<LocalNumber> {
        let mut acc = embed_eisenstein(&x.scalar, &Base::Lambda, self.precision, None)?;
        acc = acc.mul(&power(&self.radical, x.radical));
        for (r, e) in &x.real {
            acc = acc.mul(&power(&self.embed_real(r)?, *e));
        }
        Ok(acc)
    }
}

fn power(x: &LocalNumber, e: i64) -> LocalNumber {
    let y = x.pow(e.unsigned_abs() as u32);
    if e < 0 {
        y.inverse()
    } else {
        y
    }
}

impl SymbolPlace for LambdaPlace {
    type Elt = MElement;

    fn label(&self) -> String {
        format!("l{}", self.index)
    }

    fn symbol(&self, x: &MElement, a: &MElement) -> Result<SymbolValue> {
        wild_symbol_local(&self.embed(x)?, &self.embed(a)?)
    }
}

/// Embeddings of M+ into Z_3 as images of the period basis. Only the
/// assignments compatible with the multiplication table survive.
fn period_embeddings(field: &PeriodField, precision: u32) -> Result<Vec<[BigInt; 3]>> {
    let roots = match lift_period_roots(field.p, precision)? {
        PeriodRoots::Split(r) => r,
        PeriodRoots::NotSplit => return Err(Error::Precondition(format!("3 does not split in the cubic subfield for p = {}", field.p))),
    };
    let m = BigInt::from(3).pow(precision);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for perm in perms {
        let img = perm.map(|i| roots[i].clone());
        let sum_ok = (&img[0] + &img[1] + &img[2] + BigInt::one()).mod_floor(&m).is_zero();
        let table_ok = (0..3).all(|i| {
            (0..3).all(|j| {
                let rhs: BigInt = (0..3).map(|k| &field.table[i][j][k] * &img[k]).sum();
                (&img[i] * &img[j] - rhs).mod_floor(&m).is_zero()
            })
        });
        if sum_ok && table_ok {
            out.push(img);
        }
    }
    if out.len() != 3 {
        return Err(Error::PrecisionExhausted(format!("{} period embeddings at 3^{precision}", out.len())));
    }
    Ok(out)
}

/// Everything about M needed by the symbol computations.
#[derive(Clone, Debug)]
pub struct KummerData {
    pub p: u64,
    pub alpha: EisensteinInt,
    pub field: PeriodField,
    pub gamma: PeriodElement,
    pub places: Vec<LambdaPlace>,
    pub precision: u32,
}

impl KummerData {
    /// Requires lambda to split in M, i.e. `p alpha` to be a cube in Q_3(w).
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        let alpha = jacobi_alpha(p)?;
        let field = PeriodField::new(p)?;
        let gamma = cyclo_norm_element_of(&field);
        let pa = &EisensteinInt::from_int(p) * &alpha;
        let c = embed_eisenstein(&pa, &Base::Lambda, precision, None)?;
        let roots = cube_roots(&c)?;
        if roots.is_empty() {
            return Err(Error::Precondition(format!("p alpha = {pa} is not a cube at lambda")));
        }
        let embs = period_embeddings(&field, precision)?;
        // the pairing of cube roots with real embeddings is arbitrary: every
        // statement made about these places is independent of it
        let places = roots
            .into_iter()
            .zip(embs)
            .enumerate()
            .map(|(index, (radical, periods))| LambdaPlace { index, radical, periods, precision })
            .collect();
        Ok(KummerData { p, alpha, field, gamma, places, precision })
    }

    /// `cbrt(p alpha) / gamma_p`, a generator of the prime above alpha.
    pub fn beta(&self) -> MElement {
        MElement { radical: 1, real: vec![(self.gamma.clone(), -1)], scalar: EisensteinInt::one() }
    }

    /// The cyclotomic units `gamma / sigma(gamma)` and `sigma(gamma) / sigma^2(gamma)`.
    pub fn cyclotomic_units(&self) -> Vec<MElement> {
        let g1 = galois_shift(&self.gamma);
        let g2 = galois_shift(&g1);
        vec![
            MElement { radical: 0, real: vec![(self.gamma.clone(), 1), (g1.clone(), -1)], scalar: EisensteinInt::one() },
            MElement { radical: 0, real: vec![(g1, 1), (g2, -1)], scalar: EisensteinInt::one() },
        ]
    }

    pub fn kummer_p(&self) -> MElement {
        MElement::from_k(EisensteinInt::from_int(self.p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaResidue {
    pub place: String,
    pub residue_mod_9: [u8; 2],
    pub rational: bool,
}

impl KummerData {
    /// `gamma_p` modulo 9 at each place, as coordinates on `1, w`.
    pub fn gamma_residues(&self) -> Result<Vec<GammaResidue>> {
        let nine = BigInt::from(9);
        self.places
            .iter()
            .map(|v| {
                let x = v.embed(&MElement::from_real(self.gamma.clone()))?;
                if !x.is_unit() {
                    return Err(Error::InconsistentInputs("gamma_p is not a unit at lambda".into()));
                }
                let r = x.unit.reduce_mod(&nine);
                let c = [r.a.to_u8().unwrap(), r.b.to_u8().unwrap()];
                Ok(GammaResidue { place: v.label(), residue_mod_9: c, rational: c[1] == 0 })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::DEFAULT_PRECISION;

    #[test]
    fn jacobi_sum_is_split_prime() {
        for p in [7u64, 13, 19, 31, 61, 67, 103] {
            let j = jacobi_alpha(p).unwrap();
            let (a, b) = split_prime(p).unwrap();
            assert!(j == a || j == b, "p = {p}: {j}");
        }
    }

    #[test]
    fn places_of_m_above_lambda() {
        let d = KummerData::new(61, DEFAULT_PRECISION).unwrap();
        assert_eq!(d.places.len(), 3);
        let g = MElement::from_real(d.gamma.clone());
        for v in &d.places {
            // gamma_p has norm p in M+
            let x = v.embed(&g).unwrap();
            assert!(x.is_unit());
            let r = v.radical.pow(3);
            let pa = embed_eisenstein(&(&EisensteinInt::from_int(61) * &d.alpha), &Base::Lambda, DEFAULT_PRECISION, None).unwrap();
            assert!(r.congruent(&pa));
        }
        assert!(d.gamma_residues().unwrap().iter().all(|g| g.rational));
    }

    #[test]
    fn seven_is_not_split_at_lambda() {
        assert!(KummerData::new(7, DEFAULT_PRECISION).is_err());
    }
}
