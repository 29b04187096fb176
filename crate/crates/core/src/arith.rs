//! Arbitrary-precision integer and modular arithmetic.
//!
//! Everything here is a pure function of its inputs. Residues are always
//! returned in `[0, m)`; negative operands are reduced before use.
//!
//! Primality is Miller-Rabin with fixed bases: the twelve primes 2..=37 are a
//! proven deterministic witness set below 3.317e24 (which covers all of u64),
//! and above that bound the first [`MR_ROUNDS_LARGE`] primes are used as bases.
//! The policy string [`PRIMALITY_POLICY`] is copied into certificates.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of fixed Miller-Rabin bases used above the deterministic range.
pub const MR_ROUNDS_LARGE: usize = 24;

pub const PRIMALITY_POLICY: &str =
    "miller-rabin; bases 2..37 deterministic below 3.317e24; first 24 prime bases above";

const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

// 3317044064679887385961981, the Sorenson-Webster bound for the 12 bases above.
const DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

/// A residue class `residue (mod modulus)` with `0 <= residue < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueClass {
    #[serde(with = "crate::json::biguint")]
    pub residue: BigUint,
    #[serde(with = "crate::json::biguint")]
    pub modulus: BigUint,
}

impl ResidueClass {
    /// Builds the class of `residue` modulo `modulus`, normalizing the residue.
    pub fn new(residue: &BigInt, modulus: &BigUint) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::ZeroModulus);
        }
        Ok(ResidueClass {
            residue: reduce(residue, modulus),
            modulus: modulus.clone(),
        })
    }

    pub fn from_u64(residue: i64, modulus: u64) -> Result<Self> {
        Self::new(&BigInt::from(residue), &BigUint::from(modulus))
    }

    /// The vacuous class `0 (mod 1)`.
    pub fn everything() -> Self {
        ResidueClass {
            residue: BigUint::zero(),
            modulus: BigUint::one(),
        }
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        reduce(n, &self.modulus) == self.residue
    }
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce(a: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    a.mod_floor(&m)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

/// Reduces an `i64` into `[0, m)`.
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// `base^exp mod m`. A zero modulus is treated as 1.
pub fn mod_pow(base: &BigInt, exp: &BigUint, m: &BigUint) -> BigUint {
    if m.is_zero() || m.is_one() {
        return BigUint::zero();
    }
    reduce(base, m).modpow(exp, m)
}

/// `base^exp mod m` for a signed exponent; negative exponents go through the inverse.
pub fn mod_pow_signed(base: &BigInt, exp: &BigInt, m: &BigUint) -> Result<BigUint> {
    match exp.sign() {
        Sign::Minus => {
            let inv = mod_inv(base, m)?;
            Ok(inv.modpow(exp.magnitude(), m))
        }
        _ => Ok(mod_pow(base, exp.magnitude(), m)),
    }
}

/// `x` with `a * x ≡ 1 (mod m)`.
pub fn mod_inv(a: &BigInt, m: &BigUint) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if m.is_one() {
        return Ok(BigUint::zero());
    }
    let a = BigInt::from_biguint(Sign::Plus, reduce(a, m));
    let mi = BigInt::from_biguint(Sign::Plus, m.clone());
    let ext = a.extended_gcd(&mi);
    if !ext.gcd.is_one() {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            m: m.to_string(),
            gcd: ext.gcd.to_string(),
        });
    }
    Ok(reduce(&ext.x, m))
}

/// Merges two residue classes into the class modulo their lcm.
pub fn crt_pair(c1: &ResidueClass, c2: &ResidueClass) -> Result<ResidueClass> {
    let (m1, m2) = (&c1.modulus, &c2.modulus);
    let g = m1.gcd(m2);
    let r1 = BigInt::from(c1.residue.clone());
    let r2 = BigInt::from(c2.residue.clone());
    let diff = &r2 - &r1;
    let g_signed = BigInt::from(g.clone());
    if !(&diff % &g_signed).is_zero() {
        return Err(Error::Incompatible {
            first: c1.to_string(),
            second: c2.to_string(),
        });
    }
    let m1_red = m1 / &g;
    let m2_red = m2 / &g;
    let lcm = m1 * &m2_red;
    if m2_red.is_one() {
        return ResidueClass::new(&r1, &lcm);
    }
    let inv = mod_inv(&BigInt::from(m1_red), &m2_red)?;
    let step = reduce(&(diff / g_signed), &m2_red) * inv % &m2_red;
    let x = r1 + BigInt::from(m1 * step);
    ResidueClass::new(&x, &lcm)
}

/// Left fold of [`crt_pair`]; the empty system is `0 (mod 1)`.
pub fn crt_list(classes: &[ResidueClass]) -> Result<ResidueClass> {
    classes
        .iter()
        .try_fold(ResidueClass::everything(), |acc, c| crt_pair(&acc, c))
}

// ---------------------------------------------------------------------------
// u64 helpers
// ---------------------------------------------------------------------------

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    DETERMINISTIC_BASES
        .iter()
        .all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn deterministic_limit() -> &'static BigUint {
    static LIMIT: OnceLock<BigUint> = OnceLock::new();
    LIMIT.get_or_init(|| DETERMINISTIC_LIMIT.parse().expect("valid literal"))
}

/// Primality test under [`PRIMALITY_POLICY`].
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in small_primes(1000) {
        if (n % p).is_zero() {
            return false;
        }
    }
    if n < deterministic_limit() {
        return DETERMINISTIC_BASES
            .iter()
            .all(|&a| strong_probable_prime(n, &BigUint::from(a)));
    }
    small_primes(200)
        .iter()
        .take(MR_ROUNDS_LARGE)
        .all(|&a| strong_probable_prime(n, &BigUint::from(a)))
}

// ---------------------------------------------------------------------------
// Sieve
// ---------------------------------------------------------------------------

const CACHED_SIEVE_LIMIT: u64 = 1 << 21;

/// All primes `<= limit`, by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Primes up to `limit` from a process-wide cache (limit capped at 2^21).
pub fn small_primes(limit: u64) -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let all = CACHE.get_or_init(|| primes_up_to(CACHED_SIEVE_LIMIT));
    let end = all.partition_point(|&p| p <= limit);
    &all[..end]
}

fn primes_for_trial(limit: u64) -> std::borrow::Cow<'static, [u64]> {
    if limit <= CACHED_SIEVE_LIMIT {
        std::borrow::Cow::Borrowed(small_primes(limit))
    } else {
        std::borrow::Cow::Owned(primes_up_to(limit))
    }
}

// ---------------------------------------------------------------------------
// Factoring
// ---------------------------------------------------------------------------

/// Effort bounds for [`factor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    pub trial_division_bound: u64,
    /// Total Pollard rho iterations shared by all splits of one call.
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_division_bound: 1_000_000,
            rho_iterations: 10_000_000,
            seed: 1,
        }
    }
}

/// `n = ∏ prime^exp · cofactor`; the cofactor is 1 when factoring finished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: BigUint,
    pub factors: Vec<(BigUint, u32)>,
    pub cofactor: BigUint,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Product of all prime powers times the cofactor.
    pub fn reassemble(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Trial division up to the budget bound, then Pollard-Brent rho on what
/// remains. Anything left unsplit when the rho budget runs out is returned as
/// the cofactor.
pub fn factor(n: &BigUint, budget: &FactorBudget) -> Factorization {
    let mut found: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    let mut cofactor = BigUint::one();

    if rest > BigUint::one() {
        for &p in primes_for_trial(budget.trial_division_bound).iter() {
            if BigUint::from(p) * p > rest {
                break;
            }
            while (&rest % p).is_zero() {
                rest /= p;
                found.push(BigUint::from(p));
            }
        }
    }

    let mut iterations_left = budget.rho_iterations;
    let mut seed = budget.seed;
    let mut queue = vec![rest];
    while let Some(m) = queue.pop() {
        if m.is_one() || m.is_zero() {
            continue;
        }
        if is_prime(&m) {
            found.push(m);
            continue;
        }
        let split = match m.to_u64() {
            Some(small) => rho_u64(small, seed, &mut iterations_left).map(BigUint::from),
            None => rho_big(&m, seed, &mut iterations_left),
        };
        seed = seed.wrapping_add(0x9E37_79B9);
        match split {
            Some(d) => {
                let other = &m / &d;
                queue.push(d);
                queue.push(other);
            }
            None => cofactor *= m,
        }
    }

    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization {
        n: n.clone(),
        factors,
        cofactor,
    }
}

/// Complete factorization of a machine word.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let budget = FactorBudget {
        trial_division_bound: 1 << 12,
        rho_iterations: u64::MAX,
        seed: 1,
    };
    let f = factor(&BigUint::from(n), &budget);
    debug_assert!(f.is_complete());
    f.factors
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of a u64"), e))
        .collect()
}

const RHO_BATCH: u64 = 128;

/// Brent's variant of Pollard rho on a u64 composite. Deterministic in `seed`.
fn rho_u64(n: u64, seed: u64, budget: &mut u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut c = seed % (n - 1) + 1;
    while *budget > 0 {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let mut y = (seed.wrapping_mul(6364136223846793005) ^ c) % n;
        let (mut x, mut ys) = (y, y);
        let mut g = 1;
        let mut q = 1u64;
        let mut r = 1u64;
        while g == 1 && *budget > 0 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            *budget = budget.saturating_sub(r);
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = RHO_BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                *budget = budget.saturating_sub(steps);
                g = gcd_u64(q, n);
                k += steps;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
        c = c % (n - 1) + 1;
    }
    None
}

fn rho_big(n: &BigUint, seed: u64, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    let one = BigUint::one();
    let mut c = BigUint::from(seed) % n + &one;
    while *budget > 0 {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(seed.wrapping_mul(6364136223846793005)) % n;
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r = 1u64;
        while g.is_one() && *budget > 0 {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            *budget = budget.saturating_sub(r);
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = RHO_BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                *budget = budget.saturating_sub(steps);
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
        c = c % n + &one;
    }
    None
}

// ---------------------------------------------------------------------------
// Orders and cyclotomic values
// ---------------------------------------------------------------------------

/// Multiplicative order of `b` modulo the prime `p`, found by factoring
/// `p - 1` and stripping prime factors while `b^(d/ℓ) ≡ 1`.
pub fn mult_order(b: &BigInt, p: &BigUint) -> Result<BigUint> {
    let b_red = reduce(b, p);
    if b_red.is_zero() {
        return Err(Error::DividesBase {
            b: b.to_string(),
            p: p.to_string(),
        });
    }
    let p1 = p - 1u32;
    if p1.is_zero() {
        return Err(Error::BadParameters(format!("{p} is not prime")));
    }
    let f = factor(&p1, &FactorBudget::default());
    if !f.is_complete() {
        return Err(Error::IncompleteFactorization {
            n: p1.to_string(),
            cofactor: f.cofactor.to_string(),
        });
    }
    let mut order = p1;
    for (l, _) in &f.factors {
        while (&order % l).is_zero() && b_red.modpow(&(&order / l), p).is_one() {
            order /= l;
        }
    }
    Ok(order)
}

/// Distinct prime factors of `m`, ascending.
pub fn prime_divisors_u64(m: u64) -> Vec<u64> {
    factor_u64(m).into_iter().map(|(p, _)| p).collect()
}

/// Value of the m-th cyclotomic polynomial at `b`, as the exact quotient
/// `∏_{d|m} (b^d - 1)^{μ(m/d)}`. Uses `Φ_m(b) = Φ_rad(m)(b^{m/rad(m)})` so
/// only squarefree divisors appear.
pub fn cyclotomic_value(m: u64, b: &BigUint) -> BigUint {
    assert!(m >= 1, "cyclotomic index must be positive");
    let primes = prime_divisors_u64(m);
    let rad: u64 = primes.iter().product();
    let base = b.pow((m / rad) as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for mask in 0u32..(1 << primes.len()) {
        // d = rad / (product of the primes selected by mask), μ(rad/d) = (-1)^|mask|
        let removed: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product();
        let d = rad / removed;
        let term = base.pow(d as u32) - 1u32;
        if mask.count_ones() % 2 == 0 {
            num *= term;
        } else {
            den *= term;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// `x.bits()` for a signed value's magnitude.
pub fn abs_bits(x: &BigInt) -> u64 {
    x.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(&BigInt::from(2), &big(4), &big(5)), big(1));
        assert_eq!(mod_pow(&BigInt::from(7), &big(0), &big(13)), big(1));
        assert_eq!(mod_pow(&BigInt::from(7), &big(0), &big(1)), big(0));
        // naive loop oracle
        let mut acc = 1u64;
        for _ in 0..47 {
            acc = acc * 2 % 61681;
        }
        assert_eq!(mod_pow(&BigInt::from(2), &big(47), &big(61681)), big(acc));
        assert_eq!(pow_mod_u64(2, 47, 61681), acc);
    }

    #[test]
    fn negative_base_is_reduced() {
        assert_eq!(mod_pow(&BigInt::from(-2), &big(3), &big(7)), big(6));
        assert_eq!(mod_inv(&BigInt::from(-2), &big(5)).unwrap(), big(2));
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(&BigInt::from(2), &big(5)).unwrap(), big(3));
        assert_eq!(mod_inv(&BigInt::from(1), &big(97)).unwrap(), big(1));
        let brute = (1..61681u64).find(|x| 2 * x % 61681 == 1).unwrap();
        assert_eq!(mod_inv(&BigInt::from(2), &big(61681)).unwrap(), big(brute));
        assert!(matches!(
            mod_inv(&BigInt::from(6), &big(9)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn signed_exponent() {
        // 2^-1 mod 5 = 3
        assert_eq!(
            mod_pow_signed(&BigInt::from(2), &BigInt::from(-1), &big(5)).unwrap(),
            big(3)
        );
        assert_eq!(
            mod_pow_signed(&BigInt::from(2), &BigInt::from(-3), &big(17)).unwrap(),
            mod_inv(&BigInt::from(8), &big(17)).unwrap()
        );
    }

    #[test]
    fn crt_examples() {
        let c = crt_pair(
            &ResidueClass::from_u64(2, 3).unwrap(),
            &ResidueClass::from_u64(3, 5).unwrap(),
        )
        .unwrap();
        let scan = (0..15).find(|n| n % 3 == 2 && n % 5 == 3).unwrap();
        assert_eq!(c, ResidueClass::from_u64(scan, 15).unwrap());

        let same = ResidueClass::from_u64(4, 9).unwrap();
        assert_eq!(crt_pair(&same, &same).unwrap(), same);

        // 2 mod 5 and 2^4 - 1 mod 2^2
        let c = crt_pair(
            &ResidueClass::from_u64(2, 5).unwrap(),
            &ResidueClass::from_u64(15, 4).unwrap(),
        )
        .unwrap();
        assert_eq!(c, ResidueClass::from_u64(7, 20).unwrap());
    }

    #[test]
    fn crt_incompatible_and_empty() {
        let e = crt_pair(
            &ResidueClass::from_u64(1, 4).unwrap(),
            &ResidueClass::from_u64(0, 6).unwrap(),
        );
        assert!(matches!(e, Err(Error::Incompatible { .. })));
        assert_eq!(crt_list(&[]).unwrap(), ResidueClass::everything());
        // non-coprime but compatible
        let c = crt_pair(
            &ResidueClass::from_u64(3, 4).unwrap(),
            &ResidueClass::from_u64(1, 6).unwrap(),
        )
        .unwrap();
        assert_eq!(c, ResidueClass::from_u64(7, 12).unwrap());
    }

    #[test]
    fn crt_list_tau() {
        let tau = crt_list(&[
            ResidueClass::from_u64(15, 16).unwrap(),
            ResidueClass::from_u64(2, 5).unwrap(),
        ])
        .unwrap();
        assert_eq!(tau, ResidueClass::from_u64(47, 80).unwrap());
    }

    #[test]
    fn primality() {
        assert!(is_prime(&big(61681)));
        assert!(is_prime(&big(4278255361)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(0)));
        assert!(is_prime(&big(2)));
        // strong pseudoprime to bases 2..=11
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        // 2^89 - 1 is prime, 2^83 - 1 is not
        let m89 = (BigUint::one() << 89u32) - 1u32;
        let m83 = (BigUint::one() << 83u32) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&m83));
        // 2^127 - 1 above the deterministic range
        assert!(is_prime(&((BigUint::one() << 127u32) - 1u32)));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let ps = primes_up_to(1000);
        let brute: Vec<u64> = (2..=1000u64)
            .filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0))
            .collect();
        assert_eq!(ps, brute);
        assert_eq!(small_primes(30), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factor_examples() {
        let f = factor(&big((1 << 20) - 1), &FactorBudget::default());
        let expect: Vec<(BigUint, u32)> = vec![
            (big(3), 1),
            (big(5), 2),
            (big(11), 1),
            (big(31), 1),
            (big(41), 1),
        ];
        assert_eq!(f.factors, expect);
        assert!(f.is_complete());

        let f = factor(&big(1), &FactorBudget::default());
        assert!(f.factors.is_empty());
        assert_eq!(f.cofactor, big(1));

        let f = factor(&big((1 << 40) - 1), &FactorBudget::default());
        assert!(f.primes().any(|p| *p == big(61681)));
        assert_eq!(f.reassemble(), big((1 << 40) - 1));
    }

    #[test]
    fn factor_needs_rho() {
        // two primes above the trial bound
        let n = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64);
        let budget = FactorBudget {
            trial_division_bound: 1000,
            ..FactorBudget::default()
        };
        let f = factor(&n, &budget);
        assert!(f.is_complete());
        assert_eq!(
            f.factors,
            vec![(big(998_244_353), 1), (big(1_000_000_007), 1)]
        );
        // 128-bit semiprime forces the BigUint rho path
        let p = BigUint::from(18_446_744_073_709_551_557u64);
        let q = BigUint::from(4_294_967_291u64);
        let f = factor(&(&p * &q), &budget);
        assert!(f.is_complete());
        assert_eq!(f.reassemble(), &p * &q);
    }

    #[test]
    fn factor_budget_exhaustion_leaves_cofactor() {
        let n = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64);
        let budget = FactorBudget {
            trial_division_bound: 100,
            rho_iterations: 0,
            seed: 1,
        };
        let f = factor(&(&n * 12u32), &budget);
        assert_eq!(f.cofactor, n);
        assert_eq!(f.factors, vec![(big(2), 2), (big(3), 1)]);
        assert_eq!(f.reassemble(), &n * 12u32);
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(&BigInt::from(2), &big(5)).unwrap(), big(4));
        assert_eq!(mult_order(&BigInt::from(2), &big(61681)).unwrap(), big(40));
        assert_eq!(
            mult_order(&BigInt::from(2), &big(4278255361)).unwrap(),
            big(80)
        );
        assert!(matches!(
            mult_order(&BigInt::from(10), &big(5)),
            Err(Error::DividesBase { .. })
        ));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_value(4, &big(2)), big(5));
        assert_eq!(cyclotomic_value(1, &big(7)), big(6));
        assert_eq!(cyclotomic_value(80, &big(2)) % big(4278255361), big(0));
        assert_eq!(cyclotomic_value(40, &big(2)), big(61681));
        assert_eq!(cyclotomic_value(20, &big(2)), big(205));
        assert_eq!(cyclotomic_value(6, &big(2)), big(3));
    }
}
