//! One line per acceptance criterion; the test fails if any criterion does.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use proptest::test_runner::TestRunner;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use purecubic::arith::is_prime;
use purecubic::eisenstein::{split_prime, EisensteinInt, SymbolValue};
use purecubic::localfield::{embed_eisenstein, Base, DEFAULT_PRECISION};
use purecubic::orders::{class_group, fields, Effort};
use purecubic::pipelines::{
    classify, consistency_hk, verify_a_m, verify_main, verify_norm_equation_criterion, verify_theorem2, CaseLabel,
    NormEqOutcome, PipelineConfig, Verdict,
};
use purecubic::symbols::{product_formula_check, tame_symbol, wild_symbol, wild_symbol_local, PlaceOfK};

type Outcome = Result<String, String>;

/// Name, check, runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn check(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Ok(String::new())
    } else {
        Err(msg.into())
    }
}

fn primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..hi).filter(|&p| is_prime(p))
}

/// `(w, p alpha)` at alpha is `w^((p-1)/3)`.
fn c1() -> Outcome {
    let w = EisensteinInt::omega();
    let mut n = 0;
    for p in primes(5, 200).filter(|p| p % 3 == 1) {
        let (alpha, _) = split_prime(p).map_err(|e| e.to_string())?;
        let pa = &EisensteinInt::from_int(p) * &alpha;
        let want = SymbolValue::new(((p - 1) / 3) as i64);
        let got = tame_symbol(&w, &pa, &PlaceOfK::of(&alpha).unwrap()).unwrap();
        check(got == want, format!("p = {p}: got {got}, want {want}"))?;
        n += 1;
    }
    Ok(format!("{n} primes"))
}

/// Rational integers prime to 3 pair trivially at lambda, globally and locally.
fn c2() -> Outcome {
    let ms: Vec<i64> = (1..=26).filter(|m| m % 3 != 0).collect();
    let local = |m: i64| embed_eisenstein(&EisensteinInt::from_int(m), &Base::Lambda, DEFAULT_PRECISION, None).unwrap();
    for &a in &ms {
        for &b in &ms {
            let (za, zb) = (EisensteinInt::from_int(a), EisensteinInt::from_int(b));
            check(wild_symbol(&za, &zb).unwrap().is_trivial(), format!("global, ({a}, {b})"))?;
            check(wild_symbol_local(&local(a), &local(b)).unwrap().is_trivial(), format!("local, ({a}, {b})"))?;
        }
    }
    Ok(format!("{} pairs", ms.len() * ms.len()))
}

fn c3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(common::SEED);
    let mut draw = || loop {
        let z = EisensteinInt::new(rng.gen_range(-500i64..=500), rng.gen_range(-500i64..=500));
        if !z.is_zero() && z.norm() < BigInt::from(1_000_000) {
            return z;
        }
    };
    for i in 0..500 {
        let (a, b) = (draw(), draw());
        check(product_formula_check(&a, &b).unwrap(), format!("pair {i}: ({a}, {b})"))?;
    }
    Ok("500 pairs".into())
}

fn c4() -> Outcome {
    let mut n = 0;
    for p in primes(5, 200).filter(|&p| classify(p).unwrap() != CaseLabel::Case1) {
        let r = verify_a_m(p).map_err(|e| format!("p = {p}: {e}"))?;
        let want = if p % 9 == 1 { 3 } else { 1 };
        check(r.chevalley.result == want, format!("p = {p}: |A_M| = {}", r.chevalley.result))?;
        check(r.certificate.verdict == Verdict::Pass, format!("p = {p}: {:?}", r.certificate.verdict))?;
        n += 1;
    }
    Ok(format!("{n} primes"))
}

fn c5() -> Outcome {
    let mut ps = Vec::new();
    for p in primes(5, 500).filter(|&p| classify(p).unwrap() == CaseLabel::CaseMain) {
        let r = verify_theorem2(p, DEFAULT_PRECISION).map_err(|e| format!("p = {p}: {e}"))?;
        check(r.certificate.verdict == Verdict::Pass, format!("p = {p}: {:?}", r.certificate.verdict))?;
        check((r.a_l_invariants(), r.s_unit_index()) == (3, 9), format!("p = {p}: indices"))?;
        check(r.beta_is_coset(), format!("p = {p}: beta rows {:?}", r.beta_row))?;
        ps.push(p);
    }
    Ok(format!("p in {ps:?}"))
}

fn c6() -> Outcome {
    let with_groups = PipelineConfig { with_class_groups: true, ..PipelineConfig::default() };
    for (p, full) in [(61, vec![6]), (67, vec![6]), (103, vec![3])] {
        let r = verify_main(p, &with_groups).map_err(|e| format!("p = {p}: {e}"))?;
        let g = r.a_f.unwrap();
        check(g.invariants == full && g.three_part == [3] && g.certified, format!("p = {p}: Cl(F) = {:?}", g.invariants))?;
        check(r.a_k_invariants == [3, 3], format!("p = {p}: sandwich gives {:?}", r.a_k_invariants))?;
        check(r.certificate.verdict == Verdict::Pass, format!("p = {p}: {:?}", r.certificate.verdict))?;
    }
    let cfg = PipelineConfig { with_ak: true, ..with_groups };
    let r = verify_main(61, &cfg).map_err(|e| e.to_string())?;
    let g = r.a_k.unwrap();
    check(g.invariants == [6, 6] && g.three_part == [3, 3] && g.certified, format!("Cl(K_61) = {:?}", g.invariants))?;
    Ok("A_F = [3] for 61, 67, 103; A_K = [3,3] for 61".into())
}

/// Class groups of small pure cubic fields.
fn c7() -> Outcome {
    // full groups, then the 3-part
    let known: [(i64, &[u64], &[u64]); 8] = [
        (2, &[], &[]),
        (5, &[], &[]),
        (11, &[2], &[]),
        (17, &[], &[]),
        (7, &[3], &[3]),
        (13, &[3], &[3]),
        (31, &[3], &[3]),
        (43, &[12], &[3]),
    ];
    for (m, full, three) in known {
        let g = class_group(&fields::pure_cubic(m).unwrap(), &Effort::default()).map_err(|e| format!("m = {m}: {e}"))?;
        let ok = g.invariants == full && g.sylow(3) == three && g.certified;
        check(ok, format!("m = {m}: {:?}, certified = {}", g.invariants, g.certified))?;
    }
    Ok("8 fields".into())
}

fn c8() -> Outcome {
    let effort = Effort::default();
    for p in [61, 67, 7, 13, 31, 43] {
        let r = verify_norm_equation_criterion(p, &effort).map_err(|e| format!("p = {p}: {e}"))?;
        let ok = match r.outcome {
            NormEqOutcome::Witness { .. } => r.cube3,
            NormEqOutcome::Refuted { certified, .. } => certified && !r.cube3,
            NormEqOutcome::Inconclusive { .. } => false,
        };
        check(ok && r.certificate.verdict == Verdict::Pass, format!("p = {p}: {:?}", r.outcome))?;
        check(r.cube3 == [61, 67].contains(&p), format!("p = {p}: 3 cube mod p is {}", r.cube3))?;
    }
    Ok("witness for 61, 67; refuted for 7, 13, 31, 43".into())
}

fn c9() -> Outcome {
    let r = consistency_hk(61, 3, Some(9)).map_err(|e| e.to_string())?;
    check(r.q == Some(3) && r.complete, format!("{r:?}"))?;
    Ok("q = 3".into())
}

fn c10() -> Outcome {
    use common::*;
    use proptest::array::uniform3;
    let mut runner = TestRunner::new(config(32));
    let primes: Vec<u64> = (7..400).filter(|&p| p % 3 == 1 && is_prime(p)).collect();
    let split = proptest::sample::select(primes);
    let small = small_primes(200);
    let o = pure_order();
    macro_rules! run {
        ($s:expr, $f:expr) => {
            runner.run(&$s, $f).map_err(|x| x.to_string())?
        };
    }
    run!((eis(12), eis(12), eis(12)), |(a, b, c)| bilinear(&a, &b, &c));
    run!((eis(20), eis(20)), |(a, b)| antisymmetric(&a, &b));
    run!(eis(25), |a| steinberg(&a));
    run!((eis(15), eis(6)), |(a, c)| cube_trivial(&a, &c));
    run!((uniform3(-9i64..10), uniform3(-9i64..10), eis(50), eis(50)), |(x, y, a, b)| norm_multiplicative_in(&o, &x, &y, &a, &b));
    run!((uniform3(-9i64..10), uniform3(-9i64..10), -5i64..6), |(x, y, k)| hnf_canonical(&o, &x, &y, k));
    run!((eis(40), -200i64..200, split.clone()), |(c, u, p)| hensel(&c, u, p));
    run!((split, 1u32..10), |(p, n)| period_roots(p, n));
    run!((proptest::sample::select(small), eis(30)), |(pi, x)| cubic_character_exhaustive(&pi, &x));
    Ok(format!("9 properties, seed {:#x}", SEED))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1", c1, 5),
        ("2", c2, 10),
        ("3", c3, 30),
        ("4", c4, 10),
        ("5", c5, 120),
        ("6", c6, 65 * 60),
        ("7", c7, 300),
        ("8", c8, 300),
        ("9", c9, 1),
        ("10", c10, 120),
    ];
    let mut failed = Vec::new();
    for (name, f, limit) in criteria {
        let t = Instant::now();
        let mut r = f();
        let ms = t.elapsed().as_millis();
        if r.is_ok() && ms > 1000 * limit as u128 {
            r = Err(format!("over the {limit} s limit"));
        }
        match r {
            Ok(detail) => println!("PASS criterion {name} ({ms} ms) {detail}"),
            Err(why) => {
                println!("FAIL criterion {name} ({ms} ms) {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
