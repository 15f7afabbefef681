//! Principality testing: short vectors first, then the class group.

use num_integer::Integer;
use num_traits::Signed;

use super::classgroup::{class_group_data, ClassGroupData, Effort};
use super::ideal::IdealHNF;
use super::lattice::short_elements;
use super::{Elt, FieldElement, OrderData};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonPrincipalCertificate {
    /// Coordinates of the class on the cyclic factors.
    pub class: Vec<u64>,
    pub invariants: Vec<u64>,
    pub class_order: u64,
    /// Whether the class group itself was certified.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub enum Principality {
    Generator(FieldElement),
    NonPrincipal(NonPrincipalCertificate),
}

impl Principality {
    pub fn generator(&self) -> Option<&FieldElement> {
        match self {
            Principality::Generator(g) => Some(g),
            Principality::NonPrincipal(_) => None,
        }
    }
}

/// An element of `I` of norm `N(I)` among the short vectors of `I`.
pub fn short_generator(o: &OrderData, i: &IdealHNF, limit: usize) -> Option<Elt> {
    let target = i.norm_int();
    let red = super::lattice::reduce(o, &i.basis);
    let first = o.t2(&red[0]);
    for scale in [1.01, 2.0, 4.0] {
        for (x, _) in short_elements(o, &i.basis, first * scale, limit) {
            if o.norm(&x).abs() == target {
                return Some(x);
            }
        }
    }
    None
}

fn class_order(class: &[u64], invariants: &[u64]) -> u64 {
    class
        .iter()
        .zip(invariants)
        .map(|(&c, &d)| d / c.gcd(&d))
        .fold(1, |l, k| l.lcm(&k))
}

/// Principality of an integral ideal against a computed class group.
pub fn is_principal_with(o: &OrderData, cg: &ClassGroupData, i: &IdealHNF) -> Result<Principality> {
    if let Some(x) = short_generator(o, i, 200) {
        return Ok(Principality::Generator(FieldElement::integral(x)));
    }
    match cg.generator(o, i)? {
        Some(g) => Ok(Principality::Generator(g)),
        None => {
            let class = cg.class_of(o, i)?;
            let invariants = cg.structure.invariants.clone();
            Ok(Principality::NonPrincipal(NonPrincipalCertificate {
                class_order: class_order(&class, &invariants),
                class,
                invariants,
                certified: cg.structure.certified,
            }))
        }
    }
}

pub fn is_principal(o: &OrderData, i: &IdealHNF, effort: &Effort) -> Result<Principality> {
    if let Some(x) = short_generator(o, i, 200) {
        return Ok(Principality::Generator(FieldElement::integral(x)));
    }
    let cg = class_group_data(o, effort)?;
    is_principal_with(o, &cg, i)
}

/// `gO == I`, checked on HNF matrices.
pub fn generates(o: &OrderData, g: &FieldElement, i: &IdealHNF) -> bool {
    g.is_integral() && IdealHNF::principal(o, &g.num) == *i
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::fields::pure_cubic;
    use crate::orders::primes::decompose_prime;

    #[test]
    fn cbrt_p_is_principal() {
        let o = pure_cubic(61).unwrap();
        let theta = o.basis_elt(1);
        let i = IdealHNF::principal(&o, &theta);
        let g = is_principal(&o, &i, &Effort::default()).unwrap();
        assert!(generates(&o, g.generator().unwrap(), &i));
    }

    #[test]
    fn prime_above_three() {
        let o = pure_cubic(7).unwrap();
        let p3 = &decompose_prime(&o, 3).unwrap()[0];
        match is_principal(&o, &p3.ideal, &Effort::default()).unwrap() {
            Principality::NonPrincipal(c) => assert_eq!(c.class_order, 3),
            Principality::Generator(g) => panic!("unexpected generator {g:?}"),
        }
        let o = pure_cubic(103).unwrap();
        let p3 = &decompose_prime(&o, 3).unwrap()[0];
        let g = is_principal(&o, &p3.ideal, &Effort::default()).unwrap();
        let g = g.generator().expect("principal");
        assert!(generates(&o, g, &p3.ideal));
    }
}
