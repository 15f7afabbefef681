mod common;

use common::*;
use proptest::prelude::*;
use purecubic::arith::is_prime;

fn split_primes() -> impl Strategy<Value = u64> {
    (7u64..400).prop_filter("p = 1 mod 3", |&p| p % 3 == 1 && is_prime(p))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn symbol_bilinear(a in eis(12), b in eis(12), c in eis(12)) {
        bilinear(&a, &b, &c)?;
    }

    #[test]
    fn symbol_antisymmetric(a in eis(20), b in eis(20)) {
        antisymmetric(&a, &b)?;
    }

    #[test]
    fn symbol_steinberg(a in eis(25)) {
        steinberg(&a)?;
    }

    #[test]
    fn symbol_kills_cubes(a in eis(15), c in eis(6)) {
        cube_trivial(&a, &c)?;
    }

    #[test]
    fn norm_multiplicative(x in prop::array::uniform3(-9i64..10), y in prop::array::uniform3(-9i64..10), a in eis(50), b in eis(50)) {
        norm_multiplicative_in(&pure_order(), &x, &y, &a, &b)?;
    }

    #[test]
    fn hnf_is_canonical(x in prop::array::uniform3(-9i64..10), y in prop::array::uniform3(-9i64..10), k in -5i64..6) {
        hnf_canonical(&pure_order(), &x, &y, k)?;
    }

    #[test]
    fn cube_roots_cube(c in eis(40), u in -200i64..200, p in split_primes()) {
        hensel(&c, u, p)?;
    }

    #[test]
    fn lifted_period_roots(p in split_primes(), n in 1u32..10) {
        period_roots(p, n)?;
    }

    #[test]
    fn cubic_character_matches_search(i in 0usize..1000, x in eis(30)) {
        let ps = small_primes(200);
        cubic_character_exhaustive(&ps[i % ps.len()], &x)?;
    }
}
