//! Primitive prime divisors of `b^m - 1`, one per modulus of a covering system.
//!
//! A prime `p` is primitive for `b^m - 1` exactly when `ord_p(b) = m`. Every
//! such prime divides `Φ_m(b)` and is `≡ 1 (mod m)`; the only other prime that
//! can divide `Φ_m(b)` is the largest prime factor of `m` (the intrinsic
//! factor), which is stripped before searching.
//!
//! [`find_primitive_prime`] runs a cascade:
//!
//! 1. trial division of `Φ_m(b)` by primes `p ≡ 1 (mod m)` up to the trial bound;
//! 2. if the stripped value is itself prime, take it, otherwise Pollard rho on it
//!    (skipped above [`RHO_MAX_BITS`], where rho cannot make progress);
//! 3. a scan of primes `p ≡ 1 (mod m)` above the trial bound, testing the order directly.
//!
//! Stage 1 returns the smallest primitive prime overall. Stages 2 and 3 return the
//! smallest one they find.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    cyclotomic_value, factor, is_prime, is_prime_u64, mod_pow, pow_mod_u64, prime_divisors_u64,
    FactorBudget,
};
use crate::covering::{first_repeated_modulus, CoveringSystem};
use crate::error::{Error, Result};

/// Cyclotomic values wider than this skip the rho stage.
pub const RHO_MAX_BITS: u64 = 512;

/// Effort bounds for the primitive prime search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub trial_division_bound: u64,
    pub rho_iterations: u64,
    pub progression_scan_bound: u64,
    pub rho_seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            trial_division_bound: 1_000_000,
            rho_iterations: 10_000_000,
            progression_scan_bound: 1 << 32,
            rho_seed: 1,
        }
    }
}

impl SearchBudget {
    /// A small profile for quick experiments.
    pub fn quick() -> Self {
        SearchBudget {
            trial_division_bound: 100_000,
            rho_iterations: 100_000,
            progression_scan_bound: 1 << 26,
            rho_seed: 1,
        }
    }

    /// A large profile for stubborn moduli.
    pub fn deep() -> Self {
        SearchBudget {
            trial_division_bound: 10_000_000,
            rho_iterations: 100_000_000,
            progression_scan_bound: 1 << 40,
            rho_seed: 1,
        }
    }

    /// Named profile: `default`, `quick` or `deep`.
    pub fn profile(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::default()),
            "quick" => Some(Self::quick()),
            "deep" => Some(Self::deep()),
            _ => None,
        }
    }
}

/// Which stage of the cascade produced a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Trial,
    CyclotomicPrime,
    Rho,
    Progression,
    /// Supplied by the caller rather than searched.
    Given,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub m: u64,
    #[serde(with = "crate::json::biguint")]
    pub p: BigUint,
    pub strategy: Strategy,
}

/// A chosen primitive prime for each modulus of a covering system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeAssignment {
    pub b: u64,
    pub entries: Vec<PrimeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<SearchBudget>,
}

impl PrimeAssignment {
    /// Builds an assignment from explicit `(modulus, prime)` pairs.
    pub fn given(b: u64, pairs: &[(u64, u64)]) -> Self {
        PrimeAssignment {
            b,
            entries: pairs
                .iter()
                .map(|&(m, p)| PrimeEntry {
                    m,
                    p: BigUint::from(p),
                    strategy: Strategy::Given,
                })
                .collect(),
            budget: None,
        }
    }

    pub fn prime_for(&self, m: u64) -> Option<&BigUint> {
        self.entries.iter().find(|e| e.m == m).map(|e| &e.p)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.entries.iter().map(|e| &e.p)
    }

    /// Checks primality, primitivity, distinctness and coprimality to `b - 1`.
    pub fn validate(&self) -> Result<()> {
        let b1 = BigUint::from(self.b - 1);
        let mut seen = HashSet::new();
        for e in &self.entries {
            if !is_primitive_prime(&e.p, self.b, e.m) {
                return Err(Error::BadParameters(format!(
                    "{} is not a primitive prime divisor of {}^{} - 1",
                    e.p, self.b, e.m
                )));
            }
            if !seen.insert(e.p.clone()) {
                return Err(Error::DistinctnessViolation(e.p.to_string()));
            }
            if !e.p.gcd(&b1).is_one() {
                return Err(Error::BadParameters(format!("{} divides b - 1", e.p)));
            }
        }
        Ok(())
    }
}

/// A modulus the search could not resolve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unresolved {
    pub m: u64,
    pub detail: String,
}

/// Outcome of [`assign_primes`]: resolved entries plus any moduli left over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentReport {
    pub assignment: PrimeAssignment,
    pub unresolved: Vec<Unresolved>,
}

impl AssignmentReport {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// The assignment, or `PartialAssignment` naming the unresolved moduli.
    pub fn complete(self) -> Result<PrimeAssignment> {
        if self.is_complete() {
            Ok(self.assignment)
        } else {
            Err(Error::PartialAssignment {
                unresolved: self.unresolved.iter().map(|u| u.m).collect(),
            })
        }
    }
}

/// The cases where `b^w - 1` has no primitive prime divisor.
pub fn zsigmondy_exception(b: u64, w: u64) -> bool {
    (b == 2 && (w == 1 || w == 6)) || ((b + 1).is_power_of_two() && w == 2)
}

/// `ord_p(b) = m`, checked as `b^m ≡ 1` and `b^{m/ℓ} ≢ 1` for each prime `ℓ | m`.
pub fn is_primitive_prime(p: &BigUint, b: u64, m: u64) -> bool {
    if m == 0 || !is_prime(p) {
        return false;
    }
    let divisors = prime_divisors_u64(m);
    if let Some(p64) = p.to_u64() {
        if b % p64 == 0 {
            return false;
        }
        return pow_mod_u64(b, m, p64) == 1
            && divisors.iter().all(|l| pow_mod_u64(b, m / l, p64) != 1);
    }
    let base = BigInt::from(b);
    if (BigUint::from(b) % p).is_zero() {
        return false;
    }
    mod_pow(&base, &BigUint::from(m), p).is_one()
        && divisors
            .iter()
            .all(|l| !mod_pow(&base, &BigUint::from(m / l), p).is_one())
}

fn primitive_u64(p: u64, b: u64, m: u64, divisors: &[u64]) -> bool {
    b % p != 0
        && pow_mod_u64(b, m, p) == 1
        && divisors.iter().all(|l| pow_mod_u64(b, m / l, p) != 1)
        && is_prime_u64(p)
}

/// Smallest primitive prime divisor of `b^m - 1` the budgeted cascade finds.
pub fn find_primitive_prime(b: u64, m: u64, budget: &SearchBudget) -> Result<PrimeEntry> {
    if b < 2 || m == 0 {
        return Err(Error::BadParameters(format!("need b >= 2 and m >= 1, got b = {b}, m = {m}")));
    }
    if zsigmondy_exception(b, m) {
        return Err(Error::ExceptionCase { b, w: m });
    }
    let divisors = prime_divisors_u64(m);
    let found = |p: BigUint, strategy| Ok(PrimeEntry { m, p, strategy });

    let mut phi = cyclotomic_value(m, &BigUint::from(b));
    if let Some(&l) = divisors.last() {
        while (&phi % l).is_zero() {
            phi /= l;
        }
    }

    // Stage 1: every primitive prime is 1 (mod m).
    let mut p = m + 1;
    while p <= budget.trial_division_bound {
        if (&phi % p).is_zero() && primitive_u64(p, b, m, &divisors) {
            return found(BigUint::from(p), Strategy::Trial);
        }
        p = match p.checked_add(m) {
            Some(next) => next,
            None => break,
        };
    }

    // Stage 2: the stripped value has only primitive prime factors.
    if phi > BigUint::one() {
        if is_prime(&phi) {
            if is_primitive_prime(&phi, b, m) {
                return found(phi, Strategy::CyclotomicPrime);
            }
        } else if phi.bits() <= RHO_MAX_BITS && budget.rho_iterations > 0 {
            let f = factor(
                &phi,
                &FactorBudget {
                    trial_division_bound: 1,
                    rho_iterations: budget.rho_iterations,
                    seed: budget.rho_seed,
                },
            );
            if let Some(p) = f
                .primes()
                .filter(|p| is_primitive_prime(p, b, m))
                .min()
                .cloned()
            {
                return found(p, Strategy::Rho);
            }
        }
    }

    // Stage 3: walk the progression past the trial bound.
    let start = budget.trial_division_bound.max(m) / m * m + 1;
    let mut p = start;
    while p <= budget.progression_scan_bound {
        if primitive_u64(p, b, m, &divisors) {
            return found(BigUint::from(p), Strategy::Progression);
        }
        p = match p.checked_add(m) {
            Some(next) => next,
            None => break,
        };
    }

    Err(Error::NotFound {
        b,
        m,
        detail: format!(
            "Φ_m(b) has {} bits; trial to {}, rho {} iterations{}, scan to {}",
            phi.bits(),
            budget.trial_division_bound,
            budget.rho_iterations,
            if phi.bits() > RHO_MAX_BITS {
                " (skipped)"
            } else {
                ""
            },
            budget.progression_scan_bound
        ),
    })
}

/// One primitive prime per modulus of `system`. Moduli are searched in
/// parallel and merged in cover order.
pub fn assign_primes(
    b: u64,
    system: &CoveringSystem,
    budget: &SearchBudget,
) -> Result<AssignmentReport> {
    if let Some(m) = first_repeated_modulus(system) {
        return Err(Error::RepeatedModulus(m));
    }
    if let Some(m) = system.moduli().find(|&m| zsigmondy_exception(b, m)) {
        return Err(Error::ExceptionCase { b, w: m });
    }
    let moduli: Vec<u64> = system.moduli().collect();
    let results: Vec<Result<PrimeEntry>> = moduli
        .par_iter()
        .map(|&m| find_primitive_prime(b, m, budget))
        .collect();

    let mut entries = Vec::new();
    let mut unresolved = Vec::new();
    for (m, r) in moduli.iter().zip(results) {
        match r {
            Ok(e) => entries.push(e),
            Err(Error::NotFound { detail, .. }) => unresolved.push(Unresolved { m: *m, detail }),
            Err(e) => return Err(e),
        }
    }
    let assignment = PrimeAssignment {
        b,
        entries,
        budget: Some(*budget),
    };
    assignment.validate()?;
    Ok(AssignmentReport {
        assignment,
        unresolved,
    })
}
