//! x^3 + p y^3 + p^2 z^3 - 3pxyz = 3 has a solution iff 3 is a cube mod p.

use purecubic::eisenstein::is_cube_mod_p;
use purecubic::orders::normeq::{norm_equation, NormEquation};
use purecubic::orders::Effort;

fn main() -> purecubic::Result<()> {
    for p in [7, 13, 31, 43, 61, 67] {
        let cube = is_cube_mod_p(3, p as u64)?;
        match norm_equation(p, 3, &Effort::default())? {
            NormEquation::Solution(x) => println!("p = {p} (3 cube: {cube}): (x, y, z) = ({}, {}, {})", x[0], x[1], x[2]),
            NormEquation::NonPrincipal(c) => println!("p = {p} (3 cube: {cube}): primes above 3 have class orders {:?}", c.iter().map(|c| c.class_order).collect::<Vec<_>>()),
            NormEquation::OutsideEquationOrder => println!("p = {p}: generator outside Z[cbrt p]"),
        }
    }
    Ok(())
}
