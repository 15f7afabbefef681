//! Ambiguous class number certificates: A_M for the cyclic cubic extension
//! of k, then the unramified extension of K for a main-case prime.

use purecubic::pipelines::{verify_a_m, verify_theorem2};

fn main() -> purecubic::Result<()> {
    for p in [7, 19, 61] {
        let r = verify_a_m(p)?;
        println!("p = {p}: |A_M| = {} ({:?})", r.chevalley.result, r.certificate.verdict);
    }
    let t = verify_theorem2(61, 6)?;
    println!("p = 61: zeta row {:?}", t.zeta_row.iter().map(|s| s.exponent()).collect::<Vec<_>>());
    println!("        beta row {:?}", t.beta_row.iter().map(|s| s.exponent()).collect::<Vec<_>>());
    println!("        |A_L^G| = {}, S-unit index {}", t.a_l_invariants(), t.s_unit_index());
    println!("{}", serde_json::to_string_pretty(&t.certificate).expect("serializable"));
    Ok(())
}
