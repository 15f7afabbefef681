//! Local numbers over Z_3[w] and Z_p: cube roots by Hensel lifting.

use purecubic::eisenstein::{split_prime, EisensteinInt};
use purecubic::localfield::{cube_roots, embed_eisenstein, kummer_local_type, Base};

fn main() -> purecubic::Result<()> {
    let n = 8;
    let c = EisensteinInt::new(10, 9);
    let x = embed_eisenstein(&c, &Base::Lambda, n, None)?;
    println!("{c} in Z_3[w] mod lambda^{}: {:?}", 2 * n, x);
    println!("local type: {:?}", kummer_local_type(&x)?);
    for r in cube_roots(&x)? {
        println!("  root {:?}, cubes back: {}", r, r.pow(3).congruent(&x));
    }

    let (alpha, _) = split_prime(61)?;
    let y = embed_eisenstein(&EisensteinInt::from_int(8), &Base::PAdic { p: 61 }, n, Some(&alpha))?;
    let roots = cube_roots(&y)?;
    println!("cube roots of 8 in Z_61: {}", roots.len());
    for r in roots {
        println!("  {:?}", r);
    }
    Ok(())
}
