//! The ambiguous class number formula and the norm-residue map on units.

use serde::{Deserialize, Serialize};

use crate::eisenstein::{EisensteinInt, SymbolValue};
use crate::error::{Error, Result};
use crate::fp;
use crate::symbols::{self, PlaceOfK};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamifiedPlaceData {
    pub label: String,
    pub e: u64,
    pub f: u64,
    #[serde(rename = "in_S")]
    pub in_s: bool,
}

impl RamifiedPlaceData {
    pub fn new(label: impl Into<String>, e: u64, f: u64, in_s: bool) -> Self {
        RamifiedPlaceData { label: label.into(), e, f, in_s }
    }

    pub fn contribution(&self) -> u64 {
        if self.in_s {
            self.e * self.f
        } else {
            self.e
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChevalleyCertificate {
    pub base_class_order_3part: u64,
    pub degree: u64,
    pub place_data: Vec<RamifiedPlaceData>,
    pub unit_index: u64,
    /// 3-part of the order of the invariant classes.
    pub result: u64,
}

fn check_places(places: &[RamifiedPlaceData]) -> Result<()> {
    match places.iter().find(|v| v.e == 0 || v.f == 0) {
        Some(v) => Err(Error::InconsistentInputs(format!("place {} has e = {} and f = {}", v.label, v.e, v.f))),
        None => Ok(()),
    }
}

/// `|Cl_S^G| = |Cl_S| * prod(contributions) / (degree * unit_index)`.
pub fn chevalley_order(base: u64, degree: u64, places: Vec<RamifiedPlaceData>, unit_index: u64) -> Result<ChevalleyCertificate> {
    check_places(&places)?;
    let num: u64 = base * places.iter().map(RamifiedPlaceData::contribution).product::<u64>();
    let den = degree * unit_index;
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::InconsistentInputs(format!("{num} is not divisible by {den}")));
    }
    Ok(ChevalleyCertificate {
        base_class_order_3part: base,
        degree,
        place_data: places,
        unit_index,
        result: num / den,
    })
}

/// The base order forced by a known value of the ambiguous part.
pub fn chevalley_base(result: u64, degree: u64, places: Vec<RamifiedPlaceData>, unit_index: u64) -> Result<ChevalleyCertificate> {
    check_places(&places)?;
    let prod: u64 = places.iter().map(RamifiedPlaceData::contribution).product();
    let num = result * degree * unit_index;
    if prod == 0 || !num.is_multiple_of(prod) {
        return Err(Error::InconsistentInputs(format!("{num} is not divisible by {prod}")));
    }
    chevalley_order(num / prod, degree, places, unit_index)
}

/// A place at which cubic symbols of elements of type `Elt` can be evaluated.
pub trait SymbolPlace {
    type Elt;
    fn label(&self) -> String;
    fn symbol(&self, x: &Self::Elt, a: &Self::Elt) -> Result<SymbolValue>;
}

impl SymbolPlace for PlaceOfK {
    type Elt = EisensteinInt;

    fn label(&self) -> String {
        format!("({})", self.generator)
    }

    fn symbol(&self, x: &EisensteinInt, a: &EisensteinInt) -> Result<SymbolValue> {
        symbols::symbol_at(x, a, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoImage {
    pub places: Vec<String>,
    /// One row of exponents per unit.
    pub rows: Vec<Vec<u8>>,
    pub rank: usize,
    /// `3^rank`: the index of the local norms among the given units.
    pub order: u64,
}

impl RhoImage {
    pub fn row(&self, i: usize) -> Vec<SymbolValue> {
        self.rows[i].iter().map(|&e| SymbolValue::new(e as i64)).collect()
    }
}

/// `u -> ((u, a)_v)_v` for each unit and place.
pub fn rho_map<P: SymbolPlace>(units: &[P::Elt], kummer: &P::Elt, places: &[P]) -> Result<RhoImage> {
    let mut rows = Vec::with_capacity(units.len());
    for u in units {
        let row = places
            .iter()
            .map(|v| v.symbol(u, kummer).map(SymbolValue::exponent))
            .collect::<Result<Vec<u8>>>()?;
        rows.push(row);
    }
    Ok(image_of_rows(places.iter().map(SymbolPlace::label).collect(), rows))
}

pub fn image_of_rows(places: Vec<String>, rows: Vec<Vec<u8>>) -> RhoImage {
    let m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&e| e as u64).collect()).collect();
    let rank = if m.is_empty() || places.is_empty() { 0 } else { fp::rank(&m, 3) };
    RhoImage { places, rows, rank, order: 3u64.pow(rank as u32) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_cubic_over_k() {
        // M/k for p = 4,7 mod 9: two ramified places, unit index 3
        let v = vec![RamifiedPlaceData::new("a", 3, 1, false), RamifiedPlaceData::new("a'", 3, 1, false)];
        assert_eq!(chevalley_order(1, 3, v, 3).unwrap().result, 1);
    }

    #[test]
    fn three_lambda_places() {
        let v = (0..3).map(|i| RamifiedPlaceData::new(format!("l{i}"), 3, 1, false)).collect();
        assert_eq!(chevalley_order(1, 3, v, 3).unwrap().result, 3);
    }

    #[test]
    fn unramified_divides_by_degree() {
        assert_eq!(chevalley_order(9, 3, vec![], 1).unwrap().result, 3);
        assert!(matches!(chevalley_order(1, 3, vec![], 1), Err(Error::InconsistentInputs(_))));
        assert_eq!(chevalley_base(1, 3, vec![RamifiedPlaceData::new("P", 1, 1, true)], 1).unwrap().base_class_order_3part, 3);
    }

    #[test]
    fn cube_kummer_element_has_trivial_image() {
        let a = EisensteinInt::new(2, 3).pow(3);
        let units = [EisensteinInt::omega(), -EisensteinInt::one()];
        let places = vec![PlaceOfK::of(&EisensteinInt::new(2, 3)).unwrap()];
        let img = rho_map(&units, &a, &places).unwrap();
        assert_eq!(img.order, 1);
    }
}
