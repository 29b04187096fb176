use brier_core::construct::{theorem2_construct, Certificate, ConstructionParams, Family};
use brier_core::covering::{build_power2_cover, verify_cover};
use brier_core::verify::verify_certificate;
use brier_core::zsigmondy::{assign_primes, SearchBudget};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// `(k·b^r + β) mod p` with `k = T·b^T + α`, computed without reducing `T`.
fn residue_at(cert: &Certificate, beta: &BigInt, r: u64, p: &BigUint) -> BigUint {
    let b = BigUint::from(cert.params.b);
    let tb = &cert.t * b.modpow(&cert.t, p) % p;
    let k = (BigInt::from(tb) + &cert.params.alpha).mod_floor(&BigInt::from(p.clone()));
    let v = k * BigInt::from(b.modpow(&BigUint::from(r), p)) + beta;
    v.mod_floor(&BigInt::from(p.clone())).to_biguint().unwrap()
}

fn build(b: u64, alpha: i64, beta: i64) -> Option<Certificate> {
    let params = ConstructionParams::new(Family::T2, b, alpha, Some(beta), 5);
    params.validate().ok()?;
    let cover = build_power2_cover(5, 4).unwrap();
    let a = assign_primes(b, &cover, &SearchBudget::default())
        .unwrap()
        .complete()
        .unwrap();
    Some(theorem2_construct(&params, &cover, &a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn construction_satisfies_its_defining_congruences(
        b in prop::sample::select(vec![2u64, 4, 5, 6, 9, 10, 11, 12]),
        alpha in prop_oneof![-40i64..-1, 1i64..40],
        beta in prop_oneof![-5i64..-1, 1i64..5],
    ) {
        let Some(cert) = build(b, alpha, beta) else { return Ok(()) };
        let backbone = BigUint::from(16u32 * 5);
        prop_assert_eq!(&cert.t % &backbone, &cert.tau % &backbone);
        let q = BigUint::from(5u8);
        let side_mod = BigUint::from(b - 1) * &cert.p_product / cert.p_product.gcd(&q);
        prop_assert_eq!(&cert.t % &side_mod, &cert.script_t % &side_mod);
        prop_assert!(cert.t < cert.m);

        let side = &cert.sides[0];
        for c in side.cover.congruences() {
            let p = side.assignment.prime_for(c.m).unwrap();
            prop_assert!(residue_at(&cert, &side.beta, c.r, p).is_zero(), "m = {}, p = {}", c.m, p);
        }

        // T + α + β ≡ 1 (mod b - 1)
        let b1 = BigInt::from(b - 1);
        let lhs = (BigInt::from(cert.t.clone()) + &cert.params.alpha + BigInt::from(beta)).mod_floor(&b1);
        prop_assert_eq!(lhs, BigInt::one().mod_floor(&b1));

        // determinism
        let again = build(b, alpha, beta).unwrap();
        prop_assert_eq!(
            serde_json::to_string(&again).unwrap(),
            serde_json::to_string(&cert).unwrap()
        );
    }

    #[test]
    fn class_check_and_cover_imply_the_sweep(
        b in prop::sample::select(vec![2u64, 5, 6, 10]),
        alpha in prop_oneof![-9i64..-1, 1i64..9],
        beta in prop::sample::select(vec![-1i64, 1]),
        bump in 0u64..3,
    ) {
        let Some(mut cert) = build(b, alpha, beta) else { return Ok(()) };
        cert.t += bump;
        let report = verify_certificate(&cert).unwrap();
        let check = |id: u32| report.checks.iter().find(|c| c.id == id).unwrap().passed;
        let is_cover = verify_cover(&cert.sides[0].cover).unwrap().is_cover;
        if check(5) && is_cover {
            prop_assert!(check(6));
        }
        if bump == 0 {
            prop_assert!(report.overall, "{}", report.to_table());
        }
    }
}
