//! The cubic subfield of Q(zeta_p): period polynomial, its roots in Z_3, and
//! the Jacobi sum that generates the split prime.

use purecubic::cyclotomic::period_polynomial;
use purecubic::localfield::{lift_period_roots, PeriodRoots};
use purecubic::pipelines::jacobi_alpha;

fn main() -> purecubic::Result<()> {
    for p in [7, 13, 19, 61, 67] {
        let f = period_polynomial(p)?;
        let roots = match lift_period_roots(p, 6)? {
            PeriodRoots::Split(r) => format!("{:?} mod 3^6", r.map(|x| x.to_string())),
            PeriodRoots::NotSplit => "3 is inert".to_string(),
        };
        println!("p = {p}: {f}; {roots}; J = {}", jacobi_alpha(p)?);
    }
    Ok(())
}
