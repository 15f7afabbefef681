//! Cubic Hilbert symbols of k = Q(w) at every place, and the product formula.

use purecubic::eisenstein::{split_prime, EisensteinInt};
use purecubic::symbols::{places_dividing, product_formula_check, symbol_at, PlaceOfK};

fn main() -> purecubic::Result<()> {
    let (alpha, _) = split_prime(61)?;
    let a = EisensteinInt::omega();
    let b = &EisensteinInt::from_int(61) * &alpha;
    let mut places = places_dividing(&b)?;
    places.push(PlaceOfK::lambda());
    let mut total = 0;
    for v in &places {
        let s = symbol_at(&a, &b, v)?;
        total += s.exponent() as u32;
        println!("(w, 61 alpha) at {:?} {}: w^{}", v.kind, v.generator, s.exponent());
    }
    println!("sum of exponents = {total} = 0 mod 3");
    println!("product formula for (2 + 5w, 7 - w): {}", product_formula_check(&EisensteinInt::new(2, 5), &EisensteinInt::new(7, -1))?);
    Ok(())
}
