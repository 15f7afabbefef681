//! The bounds 9 <= |A_K| <= 9 for the main-case primes, optionally checked
//! against the class groups.
//!
//!     cargo run --release --example main_case -- --with-class-groups

use purecubic::arith::is_prime;
use purecubic::pipelines::{classify, consistency_hk, verify_main, CaseLabel, PipelineConfig};

fn main() -> purecubic::Result<()> {
    let with_class_groups = std::env::args().any(|a| a == "--with-class-groups");
    let cfg = PipelineConfig { with_class_groups, ..PipelineConfig::default() };
    for p in (5..200).filter(|&p| is_prime(p) && classify(p).is_ok_and(|c| c == CaseLabel::CaseMain)) {
        let r = verify_main(p, &cfg)?;
        print!("p = {p}: {} <= |A_K| <= {}, A_K = {:?}", r.lower.base_class_order_3part, 3 * r.upper.base_class_order_3part, r.a_k_invariants);
        if let Some(g) = &r.a_f {
            print!(", Cl(F) = {:?}", g.invariants);
        }
        println!(" [{:?}]", r.certificate.verdict);
    }
    println!("{:?}", consistency_hk(61, 3, Some(9))?);
    Ok(())
}
