use brier_core::arith::{
    crt_list, cyclotomic_value, factor, mod_inv, mod_pow, mult_order, primes_up_to, FactorBudget,
    ResidueClass,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

#[test]
fn cyclotomic_product_is_b_pow_m_minus_one() {
    for b in [2u64, 3, 5, 6, 10] {
        let bb = BigUint::from(b);
        for m in 1..=64u64 {
            let product = divisors(m)
                .into_iter()
                .fold(BigUint::one(), |acc, d| acc * cyclotomic_value(d, &bb));
            assert_eq!(product, bb.pow(m as u32) - 1u32, "b = {b}, m = {m}");
        }
    }
}

#[test]
fn factor_reassembles_random_words() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xB41E);
    let budget = FactorBudget {
        trial_division_bound: 1000,
        rho_iterations: 1 << 40,
        seed: 1,
    };
    for _ in 0..10_000 {
        let n: u64 = rng.gen_range(2..=u64::MAX);
        let f = factor(&BigUint::from(n), &budget);
        assert!(f.is_complete(), "{n} left cofactor {}", f.cofactor);
        assert_eq!(f.reassemble(), BigUint::from(n));
        for (p, _) in &f.factors {
            assert!(p.to_u64().map(is_prime_naive).unwrap_or(false), "{p} in {n}");
        }
    }
}

fn is_prime_naive(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += if d == 2 { 1 } else { 2 };
        if d > 1 << 22 {
            // large prime factors are checked by a Fermat base-2 and base-3 test
            let big = BigUint::from(n);
            return [2u32, 3, 5, 7]
                .iter()
                .all(|&a| mod_pow(&BigInt::from(a), &(&big - 1u32), &big).is_one());
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn inverse_times_value_is_one(a in -1_000_000i64..1_000_000, m in 2u64..1_000_000) {
        prop_assume!(a.unsigned_abs().gcd(&m) == 1);
        let inv = mod_inv(&BigInt::from(a), &BigUint::from(m)).unwrap();
        let prod = (BigInt::from(a) * BigInt::from(inv)).mod_floor(&BigInt::from(m));
        prop_assert_eq!(prod, BigInt::one());
    }

    #[test]
    fn crt_is_the_unique_solution(
        parts in proptest::collection::vec((0u64..200, 1u64..60), 1..4),
    ) {
        let lcm = parts.iter().fold(1u64, |l, &(_, m)| l.lcm(&m));
        prop_assume!(lcm <= 1_000_000);
        // make the system consistent by reading residues off one integer
        let x0 = parts.iter().map(|&(r, _)| r).sum::<u64>() % lcm;
        let classes: Vec<ResidueClass> = parts
            .iter()
            .map(|&(_, m)| ResidueClass::from_u64((x0 % m) as i64, m).unwrap())
            .collect();
        let c = crt_list(&classes).unwrap();
        prop_assert_eq!(c.modulus.to_u64(), Some(lcm));
        let solutions: Vec<u64> = (0..lcm)
            .filter(|x| parts.iter().all(|&(_, m)| x % m == x0 % m))
            .collect();
        prop_assert_eq!(solutions, vec![c.residue.to_u64().unwrap()]);
    }

    #[test]
    fn crt_detects_incompatibility(r1 in 0u64..6, r2 in 0u64..9) {
        // gcd(6, 9) = 3
        let a = ResidueClass::from_u64(r1 as i64, 6).unwrap();
        let b = ResidueClass::from_u64(r2 as i64, 9).unwrap();
        let ok = crt_list(&[a, b]).is_ok();
        prop_assert_eq!(ok, r1 % 3 == r2 % 3);
    }

    #[test]
    fn order_divides_exactly_the_annihilating_exponents(
        pi in 0usize..1000,
        b in 2u64..1000,
        d in 1u64..5000,
    ) {
        let primes = primes_up_to(8000);
        let p = primes[pi % primes.len()];
        prop_assume!(b % p != 0);
        let ord = mult_order(&BigInt::from(b), &BigUint::from(p)).unwrap().to_u64().unwrap();
        prop_assert_eq!((p - 1) % ord, 0);
        // brute-force order
        let mut x = b % p;
        let mut k = 1;
        while x != 1 {
            x = x * b % p;
            k += 1;
        }
        prop_assert_eq!(ord, k);
        let one = mod_pow(&BigInt::from(b), &BigUint::from(d), &BigUint::from(p)).is_one();
        prop_assert_eq!(one, d % ord == 0);
    }
}
