//! Maximal order, prime decomposition, units and class group of Q(cbrt m).
//!
//!     cargo run --release --example class_group -- 43

use purecubic::orders::units::fundamental_units;
use purecubic::orders::{class_group, decompose_prime, fields, Effort};

fn main() -> purecubic::Result<()> {
    let m: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(61);
    let o = fields::pure_cubic(m)?;
    println!("Q(cbrt {m}): discriminant {}", o.discriminant);
    for q in [2, 3, 5, 7] {
        let ps: Vec<(u32, u32)> = decompose_prime(&o, q)?.iter().map(|p| (p.e, p.f)).collect();
        println!("  {q} = product of primes with (e, f) {ps:?}");
    }
    let effort = Effort::default();
    let u = fundamental_units(&o, &effort)?;
    println!("  regulator {:.6}", u.regulator);
    let g = class_group(&o, &effort)?;
    println!("  Cl = {:?}, 3-part {:?}, certified {}", g.invariants, g.sylow(3), g.certified);
    Ok(())
}
