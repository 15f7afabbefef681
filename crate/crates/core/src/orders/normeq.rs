//! The norm form of Z[cbrt m]:
//! `N(x1 + x2 t + x3 t^2) = x1^3 + m x2^3 + m^2 x3^3 - 3 m x1 x2 x3`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::classgroup::{class_group_data, Effort};
use super::fields::pure_cubic;
use super::ideal::IdealHNF;
use super::primes::{primes_above, PrimeIdeal};
use super::principal::{is_principal_with, NonPrincipalCertificate, Principality};
use super::{FieldElement, OrderData};
use crate::arith;
use crate::error::{Error, Result};

pub fn cubic_form(m: &BigInt, x: &[BigInt; 3]) -> BigInt {
    let [a, b, c] = x;
    a * a * a + m * b * b * b + m * m * c * c * c - BigInt::from(3) * m * a * b * c
}

#[derive(Clone, Debug)]
pub enum NormEquation {
    Solution([BigInt; 3]),
    /// Every ideal of norm `|t|` is non-principal.
    NonPrincipal(Vec<NonPrincipalCertificate>),
    /// A generator exists but no unit multiple lies in Z[cbrt m].
    OutsideEquationOrder,
}

impl NormEquation {
    pub fn solution(&self) -> Option<&[BigInt; 3]> {
        match self {
            NormEquation::Solution(x) => Some(x),
            _ => None,
        }
    }
}

/// All integral ideals of norm `t`.
fn ideals_of_norm(o: &OrderData, t: u64) -> Result<Vec<IdealHNF>> {
    let mut out = vec![IdealHNF::unit(o)];
    for (q, e) in arith::factor(t) {
        let ps = primes_above(o, q)?;
        let mut parts = Vec::new();
        exponent_choices(&ps, 0, e, &mut vec![0; ps.len()], &mut parts);
        let mut next = Vec::new();
        for base in &out {
            for exps in &parts {
                let mut acc = base.clone();
                for (p, &k) in ps.iter().zip(exps) {
                    if k > 0 {
                        acc = acc.mul(o, &p.ideal.pow(o, k));
                    }
                }
                next.push(acc);
            }
        }
        out = next;
    }
    Ok(out)
}

fn exponent_choices(ps: &[PrimeIdeal], i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == ps.len() {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let f = ps[i].f;
    let mut k = 0;
    while k * f <= rest {
        cur[i] = k;
        exponent_choices(ps, i + 1, rest - k * f, cur, out);
        k += 1;
    }
    cur[i] = 0;
}

/// Coordinates on `1, t, t^2` when `x` lies in Z[cbrt m].
fn in_equation_order(o: &OrderData, x: &FieldElement) -> Option<[BigInt; 3]> {
    let num: Vec<BigInt> = x.num.clone();
    let (c, den) = o.to_power_basis(&num);
    let den = den * &x.den;
    if !den.is_one() {
        return None;
    }
    Some([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Solve `x1^3 + m x2^3 + m^2 x3^3 - 3 m x1 x2 x3 = t`.
pub fn norm_equation(m: i64, t: i64, effort: &Effort) -> Result<NormEquation> {
    if t == 0 {
        return Err(Error::Precondition("t must be nonzero".into()));
    }
    let o = pure_cubic(m)?;
    let mb = BigInt::from(m);
    let tb = BigInt::from(t);
    let cg = class_group_data(&o, effort)?;
    let mut certs = Vec::new();
    let mut found_generator = false;
    for ideal in ideals_of_norm(&o, t.unsigned_abs())? {
        let g = match is_principal_with(&o, &cg, &ideal)? {
            Principality::Generator(g) => g,
            Principality::NonPrincipal(c) => {
                certs.push(c);
                continue;
            }
        };
        found_generator = true;
        // odd degree: the sign of the norm flips with -1
        let g = if g.norm(&o).numer().is_negative() != tb.is_negative() {
            FieldElement::new(g.num.iter().map(|c| -c).collect(), g.den.clone())
        } else {
            g
        };
        let mut candidates = vec![g.clone()];
        for u in &cg.units.fundamental {
            // norm +1 multiples of the fundamental unit
            let u = if u.norm(&o).numer().is_negative() {
                FieldElement::new(u.num.iter().map(|c| -c).collect(), u.den.clone())
            } else {
                u.clone()
            };
            let inv = u.inverse(&o).expect("unit");
            let (mut up, mut down) = (g.clone(), g.clone());
            for _ in 0..6 {
                up = up.mul(&o, &u);
                down = down.mul(&o, &inv);
                candidates.push(up.clone());
                candidates.push(down.clone());
            }
        }
        for c in candidates {
            if let Some(x) = in_equation_order(&o, &c) {
                if cubic_form(&mb, &x) == tb {
                    return Ok(NormEquation::Solution(x));
                }
            }
        }
    }
    if found_generator {
        return Ok(NormEquation::OutsideEquationOrder);
    }
    Ok(NormEquation::NonPrincipal(certs))
}

/// Exhaustive search for small solutions, used as an independent check.
pub fn search_norm_form(m: i64, t: i64, bound: i64) -> Option<[BigInt; 3]> {
    let mb = BigInt::from(m);
    let tb = BigInt::from(t);
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let x = [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
                if cubic_form(&mb, &x) == tb {
                    return Some(x);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixty_one() {
        let r = norm_equation(61, 3, &Effort::default()).unwrap();
        let x = r.solution().expect("solvable");
        assert_eq!(cubic_form(&BigInt::from(61), x), BigInt::from(3));
    }

    #[test]
    fn seven_has_none() {
        match norm_equation(7, 3, &Effort::default()).unwrap() {
            NormEquation::NonPrincipal(c) => {
                assert_eq!(c.len(), 1);
                assert_eq!(c[0].class_order, 3);
            }
            other => panic!("{other:?}"),
        }
        assert!(search_norm_form(7, 3, 6).is_none());
    }

    #[test]
    fn unit_norm() {
        let r = norm_equation(2, 1, &Effort::default()).unwrap();
        assert_eq!(cubic_form(&BigInt::from(2), r.solution().unwrap()), BigInt::one());
    }

    #[test]
    fn one_hundred_three() {
        let r = norm_equation(103, 3, &Effort::default()).unwrap();
        let x = r.solution().expect("solvable");
        assert_eq!(cubic_form(&BigInt::from(103), x), BigInt::from(3));
    }
}
