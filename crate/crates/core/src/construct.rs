//! CRT constructions of `T (mod M)` such that every `t ≡ T (mod M)` makes
//! `t·b^t + α` a b-Sierpiński / b-Riesel (families `t2`, `t3`) or b-Brier
//! (family `t4`) number.
//!
//! Each construction solves three CRT systems in order: an auxiliary exponent
//! `τ` on the backbone modulus (`2^{q-1}` or `2^q 3^q`, times `q`), a residue
//! `𝒯` modulo `b - 1` and every assigned prime other than the special primes
//! `q` and `3`, and finally `T` merging the two. The Brier family also needs
//! `υ`, the exponent class `T` falls in modulo `2^q 3^q` when `3` is assigned.
//!
//! For every class `r (mod m)` with prime `p` the result satisfies
//! `T·b^T + α ≡ -β·b^{-r} (mod p)`, so `p | (T·b^T + α)·b^n + β` whenever
//! `n ≡ r (mod m)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{crt_list, is_prime_u64, mod_pow, mod_pow_signed, reduce, ResidueClass, PRIMALITY_POLICY};
use crate::covering::{first_repeated_modulus, CoveringSystem};
use crate::error::{Error, Result};
use crate::zsigmondy::{PrimeAssignment, SearchBudget};

pub const SCHEMA_VERSION: u32 = 1;

/// Which construction a certificate comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Powers-of-two cover with `m = q - 1`; needs `b + 1` not a power of 2.
    T2,
    /// The 2·3·q cover; needs `b >= 3`.
    T3,
    /// Brier: powers-of-two cover with `m = q` on the `+1` side and the
    /// 2·3·q cover on the `-1` side.
    T4,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::T2 => "t2",
            Family::T3 => "t3",
            Family::T4 => "t4",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub family: Family,
    pub b: u64,
    #[serde(with = "crate::json::bigint")]
    pub alpha: BigInt,
    /// Absent for the Brier family, which uses `β = +1` and `β = -1`.
    #[serde(with = "crate::json::opt_bigint")]
    pub beta: Option<BigInt>,
    pub q: u64,
    pub budget: SearchBudget,
}

impl ConstructionParams {
    pub fn new(family: Family, b: u64, alpha: i64, beta: Option<i64>, q: u64) -> Self {
        ConstructionParams {
            family,
            b,
            alpha: BigInt::from(alpha),
            beta: beta.map(BigInt::from),
            q,
            budget: SearchBudget::default(),
        }
    }

    /// Checks the hypotheses of the chosen family, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let fail = |s: String| Err(Error::Hypothesis(s));
        if self.b < 2 {
            return fail(format!("b = {} must be at least 2", self.b));
        }
        if self.alpha.is_zero() {
            return fail("alpha must be nonzero".into());
        }
        if self.q < 5 || !is_prime_u64(self.q) {
            return fail(format!("q = {} must be a prime at least 5", self.q));
        }
        match (self.family, &self.beta) {
            (Family::T4, Some(_)) => return fail("the Brier family takes no beta".into()),
            (Family::T2 | Family::T3, None) => return fail("beta is required".into()),
            (_, Some(beta)) if beta.is_zero() => return fail("beta must be nonzero".into()),
            _ => {}
        }
        let b_plus_one_pow2 = (self.b + 1).is_power_of_two();
        match self.family {
            Family::T2 if b_plus_one_pow2 => fail(format!("b+1 = {} is a power of 2", self.b + 1)),
            Family::T3 if self.b < 3 => fail(format!("b = {} must be at least 3", self.b)),
            Family::T4 if self.b < 3 => fail(format!("b = {} must be at least 3", self.b)),
            Family::T4 if b_plus_one_pow2 => {
                fail(format!("b+1 = {} is a power of 2", self.b + 1))
            }
            _ => Ok(()),
        }
    }
}

/// One covering system together with its primes and the additive constant
/// `β` of `k·b^n + β` that this side makes composite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    #[serde(with = "crate::json::bigint")]
    pub beta: BigInt,
    pub cover: CoveringSystem,
    pub assignment: PrimeAssignment,
}

/// Where the prime `q` sits when it is one of the assigned primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AIndex {
    /// Index into the certificate's sides.
    pub side: usize,
    pub modulus: u64,
    /// 2-adic valuation of the modulus.
    pub j: u32,
    /// 3-adic valuation of the modulus.
    pub jbar: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFlags {
    pub q_divides_p: bool,
    pub three_divides_p: bool,
    pub a_index: Option<AIndex>,
}

/// A complete witness that `t·b^t + α` has the claimed property for all
/// `t ≡ T (mod M)` meeting the size condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub params: ConstructionParams,
    pub sides: Vec<Side>,
    #[serde(rename = "P", with = "crate::json::biguint")]
    pub p_product: BigUint,
    #[serde(with = "crate::json::biguint")]
    pub tau: BigUint,
    #[serde(rename = "script_T", with = "crate::json::biguint")]
    pub script_t: BigUint,
    #[serde(with = "crate::json::opt_bigint")]
    pub upsilon: Option<BigInt>,
    #[serde(rename = "T", with = "crate::json::biguint")]
    pub t: BigUint,
    #[serde(rename = "M", with = "crate::json::biguint")]
    pub m: BigUint,
    pub case_flags: CaseFlags,
    pub primality_policy: String,
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn class(residue: &BigInt, modulus: &BigUint) -> Result<ResidueClass> {
    ResidueClass::new(residue, modulus)
}

/// `P` (product of all assigned primes over all sides) and the case split on
/// whether `q` and `3` are among them.
pub fn compute_p_and_case_flags(sides: &[(&CoveringSystem, &PrimeAssignment)], q: u64) -> (BigUint, CaseFlags) {
    let mut product = BigUint::one();
    let mut flags = CaseFlags {
        q_divides_p: false,
        three_divides_p: false,
        a_index: None,
    };
    let (q_big, three) = (big(q), big(3));
    for (side, (cover, assignment)) in sides.iter().enumerate() {
        for m in cover.moduli() {
            let Some(p) = assignment.prime_for(m) else { continue };
            product *= p;
            if *p == q_big {
                flags.q_divides_p = true;
                flags.a_index = Some(AIndex {
                    side,
                    modulus: m,
                    j: valuation(m, 2),
                    jbar: valuation(m, 3),
                });
            }
            if *p == three {
                flags.three_divides_p = true;
            }
        }
    }
    (product, flags)
}

/// `b^e mod p` for a signed exponent, reducing `e` modulo `p - 1` first.
/// Requires `p` prime and `p ∤ b`.
fn pow_mod_prime(b: u64, e: &BigInt, p: &BigUint) -> Result<BigUint> {
    let order_bound = p - 1u32;
    let e = reduce(e, &order_bound);
    mod_pow_signed(&BigInt::from(b), &BigInt::from(e), p)
}

fn b_inv_pow(b: u64, r: u64, p: &BigUint) -> Result<BigUint> {
    pow_mod_prime(b, &-BigInt::from(r), p)
}

fn b_inv_pow_mod(b: u64, r: u64, m: &BigUint) -> Result<BigInt> {
    Ok(BigInt::from(mod_pow_signed(
        &BigInt::from(b),
        &-BigInt::from(r),
        m,
    )?))
}

fn to_int(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// Checks that the assignment gives exactly one prime per modulus of the cover
/// and that every modulus divides `backbone`.
fn check_side(b: u64, cover: &CoveringSystem, assignment: &PrimeAssignment, backbone: &BigUint, min_modulus: u64) -> Result<()> {
    if let Some(m) = first_repeated_modulus(cover) {
        return Err(Error::RepeatedModulus(m));
    }
    if assignment.b != b {
        return Err(Error::BadParameters(format!(
            "assignment is for base {} but the construction uses base {b}",
            assignment.b
        )));
    }
    for m in cover.moduli() {
        if m < min_modulus {
            return Err(Error::BadParameters(format!("modulus {m} is below {min_modulus}")));
        }
        if !(backbone % m).is_zero() {
            return Err(Error::BadParameters(format!("modulus {m} does not divide {backbone}")));
        }
        if assignment.prime_for(m).is_none() {
            return Err(Error::PartialAssignment { unresolved: vec![m] });
        }
    }
    if assignment.entries.len() != cover.len() {
        return Err(Error::BadParameters(
            "assignment has entries for moduli outside the cover".into(),
        ));
    }
    assignment.validate()
}

fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    values.into_iter().fold(BigUint::one(), |acc, v| acc.lcm(v))
}

/// The shared engine of the Sierpiński/Riesel families. `backbone` is
/// `2^{q-1}` (t2) or `2^q 3^q` (t3).
fn sierpinski_riesel(
    params: &ConstructionParams,
    cover: &CoveringSystem,
    assignment: &PrimeAssignment,
    backbone: BigUint,
) -> Result<Certificate> {
    let b = params.b;
    let q = params.q;
    let alpha = &params.alpha;
    let beta = params.beta.clone().expect("validated");
    let b1 = big(b - 1);
    let q_big = big(q);
    let c = BigInt::one() - alpha - &beta;

    let (p_product, flags) = compute_p_and_case_flags(&[(cover, assignment)], q);

    // τ ≡ 1-α-β (mod backbone); mod q it is 1-α-β unless q is assigned.
    let tau_q = match flags.a_index {
        None => c.clone(),
        Some(a) => {
            let r = cover.class_for_modulus(a.modulus).expect("indexed").r;
            let k = -alpha - &beta * to_int(&b_inv_pow(b, r, &q_big)?);
            k * to_int(&pow_mod_prime(b, &(-&c), &q_big)?)
        }
    };
    let tau = crt_list(&[class(&c, &backbone)?, class(&tau_q, &q_big)?])?;

    // 𝒯 ≡ 1-α-β (mod backbone) and (mod b-1); (-α-β·b^{-r})·b^{-τ} (mod p), p ≠ q.
    let tau_signed = to_int(&tau.residue);
    let mut script = vec![class(&c, &backbone)?, class(&c, &b1)?];
    for cong in cover.congruences() {
        let p = assignment.prime_for(cong.m).expect("checked");
        if *p == q_big {
            continue;
        }
        let k = -alpha - &beta * to_int(&b_inv_pow(b, cong.r, p)?);
        let v = k * to_int(&pow_mod_prime(b, &-&tau_signed, p)?);
        script.push(class(&v, p)?);
    }
    let script_t = crt_list(&script)?;

    let g = q_big.gcd(&p_product);
    let t_cls = crt_list(&[
        class(&to_int(&script_t.residue), &(&b1 * &p_product / &g))?,
        class(&tau_signed, &(&backbone * &q_big))?,
    ])?;

    let m = lcm_all([&backbone, &b1, &q_big].into_iter().chain(assignment.primes()));
    if t_cls.modulus != m {
        return Err(Error::Incompatible {
            first: format!("T modulus {}", t_cls.modulus),
            second: format!("M {m}"),
        });
    }
    Ok(Certificate {
        schema_version: SCHEMA_VERSION,
        params: params.clone(),
        sides: vec![Side {
            beta,
            cover: cover.clone(),
            assignment: assignment.clone(),
        }],
        p_product,
        tau: tau.residue,
        script_t: script_t.residue,
        upsilon: None,
        t: t_cls.residue,
        m,
        case_flags: flags,
        primality_policy: PRIMALITY_POLICY.to_string(),
    })
}

/// Sierpiński/Riesel construction over the powers-of-two cover
/// (moduli `2^j`, `1 <= j < q`, and `2^j q`, `0 <= j < q`).
pub fn theorem2_construct(
    params: &ConstructionParams,
    cover: &CoveringSystem,
    assignment: &PrimeAssignment,
) -> Result<Certificate> {
    if params.family != Family::T2 {
        return Err(Error::BadParameters(format!("expected family t2, got {}", params.family)));
    }
    params.validate()?;
    let backbone = big(1) << (params.q - 1);
    check_side(params.b, cover, assignment, &(&backbone * params.q), 2)?;
    sierpinski_riesel(params, cover, assignment, backbone)
}

/// Sierpiński/Riesel construction over the 2·3·q cover.
pub fn theorem3_construct(
    params: &ConstructionParams,
    cover: &CoveringSystem,
    assignment: &PrimeAssignment,
) -> Result<Certificate> {
    if params.family != Family::T3 {
        return Err(Error::BadParameters(format!("expected family t3, got {}", params.family)));
    }
    params.validate()?;
    let backbone = (big(1) << params.q) * big(3).pow(params.q as u32);
    check_side(params.b, cover, assignment, &(&backbone * params.q), 3)?;
    sierpinski_riesel(params, cover, assignment, backbone)
}

/// Brier construction: `cover1` (moduli dividing `2^q q`) makes
/// `k·b^n + 1` composite, `cover2` (moduli dividing `2^q 3^q q`, all at
/// least 3) makes `k·b^n - 1` composite.
pub fn theorem4_construct(
    params: &ConstructionParams,
    cover1: &CoveringSystem,
    cover2: &CoveringSystem,
    assignment1: &PrimeAssignment,
    assignment2: &PrimeAssignment,
) -> Result<Certificate> {
    if params.family != Family::T4 {
        return Err(Error::BadParameters(format!("expected family t4, got {}", params.family)));
    }
    params.validate()?;
    let b = params.b;
    let q = params.q;
    let alpha = &params.alpha;
    let b1 = big(b - 1);
    let q_big = big(q);
    let three = big(3);
    let two_q = big(1) << q;
    let three_q = big(3).pow(q as u32);
    let backbone = &two_q * &three_q;

    check_side(b, cover1, assignment1, &(&two_q * q), 2)?;
    check_side(b, cover2, assignment2, &(&backbone * q), 3)?;
    for p in assignment1.primes() {
        if assignment2.primes().any(|p2| p2 == p) {
            return Err(Error::DistinctnessViolation(p.to_string()));
        }
    }

    let (p_product, flags) = compute_p_and_case_flags(&[(cover1, assignment1), (cover2, assignment2)], q);
    let minus_alpha = -alpha.clone();

    // 3 can only be primitive for modulus 2, which lives in the first cover.
    let r_two = cover1.class_for_modulus(2).map(|c| c.r);
    if flags.three_divides_p && assignment1.prime_for(2) != Some(&three) {
        return Err(Error::BadParameters("3 is assigned to a modulus other than 2".into()));
    }
    let three_part = |r: u64| -> Result<BigInt> {
        Ok((&minus_alpha - b_inv_pow_mod(b, r, &three_q)?)
            * to_int(&mod_pow_signed(&BigInt::from(b), alpha, &three_q)?))
    };

    let upsilon = match r_two {
        Some(r) if b % 3 != 0 => Some(to_int(
            &crt_list(&[class(&minus_alpha, &two_q)?, class(&three_part(r)?, &three_q)?])?.residue,
        )),
        _ => None,
    };

    let tau_three = if flags.three_divides_p {
        three_part(r_two.expect("3 is assigned to modulus 2"))?
    } else {
        minus_alpha.clone()
    };
    let tau_q = match flags.a_index {
        None => minus_alpha.clone(),
        Some(a) => {
            let cover = if a.side == 0 { cover1 } else { cover2 };
            let r = cover.class_for_modulus(a.modulus).expect("indexed").r;
            let inv = to_int(&b_inv_pow(b, r, &q_big)?);
            // first side: -α - b^{-r}; second side: -α + b^{-r}
            let k = if a.side == 0 { &minus_alpha - inv } else { &minus_alpha + inv };
            let shift = if flags.three_divides_p {
                -upsilon.clone().expect("defined when 3 is assigned")
            } else {
                alpha.clone()
            };
            k * to_int(&pow_mod_prime(b, &shift, &q_big)?)
        }
    };
    let tau = crt_list(&[
        class(&minus_alpha, &two_q)?,
        class(&tau_three, &three_q)?,
        class(&tau_q, &q_big)?,
    ])?;
    let tau_signed = to_int(&tau.residue);

    let mut script = vec![class(&minus_alpha, &two_q)?, class(&minus_alpha, &b1)?];
    for (side, (cover, assignment)) in [(cover1, assignment1), (cover2, assignment2)].into_iter().enumerate() {
        for cong in cover.congruences() {
            let p = assignment.prime_for(cong.m).expect("checked");
            if *p == three || *p == q_big {
                continue;
            }
            let inv = to_int(&b_inv_pow(b, cong.r, p)?);
            let k = if side == 0 { &minus_alpha - inv } else { &minus_alpha + inv };
            let v = k * to_int(&pow_mod_prime(b, &-&tau_signed, p)?);
            script.push(class(&v, p)?);
        }
    }
    let script_t = crt_list(&script)?;

    let g = (&three * &q_big).gcd(&p_product);
    let t_cls = crt_list(&[
        class(&to_int(&script_t.residue), &(&b1 * &p_product / &g))?,
        class(&tau_signed, &(&backbone * &q_big))?,
    ])?;

    let m = lcm_all(
        [&two_q, &three_q, &b1, &q_big]
            .into_iter()
            .chain(assignment1.primes())
            .chain(assignment2.primes()),
    );
    if t_cls.modulus != m {
        return Err(Error::Incompatible {
            first: format!("T modulus {}", t_cls.modulus),
            second: format!("M {m}"),
        });
    }
    Ok(Certificate {
        schema_version: SCHEMA_VERSION,
        params: params.clone(),
        sides: vec![
            Side {
                beta: BigInt::one(),
                cover: cover1.clone(),
                assignment: assignment1.clone(),
            },
            Side {
                beta: -BigInt::one(),
                cover: cover2.clone(),
                assignment: assignment2.clone(),
            },
        ],
        p_product,
        tau: tau.residue,
        script_t: script_t.residue,
        upsilon,
        t: t_cls.residue,
        m,
        case_flags: flags,
        primality_policy: PRIMALITY_POLICY.to_string(),
    })
}

/// Whether `(t·b^t + α)·b + β` exceeds `max_p`, decided from a bit-length
/// bound and only materialized when `t` is small.
pub fn size_condition(t: &BigUint, b: u64, alpha: &BigInt, beta: &BigInt, max_p: &BigUint) -> bool {
    if t.is_zero() {
        return (alpha * BigInt::from(b) + beta) > to_int(max_p);
    }
    // t·b^t >= 2^t, so once t exceeds the bits of everything else the bound holds.
    let need = max_p.bits() + alpha.abs().bits() + beta.abs().bits() + 4;
    if *t >= big(need) {
        return true;
    }
    let t_small = t.to_u32().expect("t < need fits");
    let k = to_int(t) * BigInt::from(b).pow(t_small) + alpha;
    k * BigInt::from(b) + beta > to_int(max_p)
}

/// The `β` values whose size condition a certificate must meet.
pub fn side_betas(cert: &Certificate) -> Vec<BigInt> {
    cert.sides.iter().map(|s| s.beta.clone()).collect()
}

/// Largest assigned prime over all sides.
pub fn max_prime(cert: &Certificate) -> BigUint {
    cert.sides
        .iter()
        .flat_map(|s| s.assignment.primes())
        .max()
        .cloned()
        .unwrap_or_default()
}

/// Least positive `t ≡ T (mod M)` meeting the size condition on every side.
pub fn smallest_valid_t(cert: &Certificate) -> BigUint {
    let max_p = max_prime(cert);
    let betas = side_betas(cert);
    let mut t = if cert.t.is_zero() { cert.m.clone() } else { cert.t.clone() };
    loop {
        if betas
            .iter()
            .all(|beta| size_condition(&t, cert.params.b, &cert.params.alpha, beta, &max_p))
        {
            return t;
        }
        t += &cert.m;
    }
}

/// `k mod p` for `k = T·b^T + α`, with the exponent reduced mod `p - 1`.
pub fn k_mod_prime(t: &BigUint, b: u64, alpha: &BigInt, p: &BigUint) -> BigUint {
    let bp = mod_pow(&BigInt::from(b), &(t % (p - 1u32)), p);
    reduce(&(to_int(&(t % p)) * to_int(&bp) + alpha), p)
}
