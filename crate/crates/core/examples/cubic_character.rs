//! Primary primes of Z[w] and the cubic residue character.
//!
//!     cargo run --example cubic_character -- 61

use purecubic::eisenstein::{cubic_char, split_prime, EisensteinInt};

fn main() -> purecubic::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(61);
    let (pi, pibar) = split_prime(p)?;
    println!("{p} = ({pi}) ({pibar}), primary: {}", pi.is_primary());
    for x in [2, 3, 5, 7] {
        let chi = cubic_char(&EisensteinInt::from_int(x), &pi)?;
        println!("chi_pi({x}) = w^{}", chi.exponent());
    }
    // 3 = -w^2 lambda^2, so its character is read off lambda
    let l = cubic_char(&EisensteinInt::lambda(), &pi)?;
    println!("chi_pi(lambda) = w^{}", l.exponent());
    Ok(())
}
