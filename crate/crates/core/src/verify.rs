//! Independent certificate checking.
//!
//! The verifier only reads the covers, primes, `b`, `α`, the side constants
//! `β`, `T` and `M`. It never looks at `τ`, `𝒯`, `υ` or the case flags, so a
//! bug in the construction cannot hide itself here. All nine checks always
//! run; a failing certificate yields its whole failure surface.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_pow, reduce};
use crate::construct::{
    k_mod_prime, size_condition, theorem2_construct, Certificate, ConstructionParams, Family,
};
use crate::covering::{build_power2_cover, first_repeated_modulus, verify_cover};
use crate::error::{Error, Result};
use crate::zsigmondy::{is_primitive_prime, PrimeAssignment};

/// A concrete counterexample attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An exponent `n` not made composite on `side`.
    N { side: usize, n: u64 },
    Prime {
        side: usize,
        #[serde(with = "crate::json::biguint")]
        p: BigUint,
    },
    Modulus { side: usize, m: u64 },
    /// A residue that should have been zero modulo `p`.
    Residue {
        side: usize,
        #[serde(with = "crate::json::biguint")]
        p: BigUint,
        #[serde(with = "crate::json::biguint")]
        value: BigUint,
    },
    Value {
        #[serde(with = "crate::json::biguint")]
        value: BigUint,
    },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::N { side, n } => write!(f, "side {side}: n = {n}"),
            Witness::Prime { side, p } => write!(f, "side {side}: p = {p}"),
            Witness::Modulus { side, m } => write!(f, "side {side}: m = {m}"),
            Witness::Residue { side, p, value } => write!(f, "side {side}: {value} (mod {p})"),
            Witness::Value { value } => write!(f, "{value}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerifyReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.passed);
        VerifyReport { checks, overall }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Plain-text table, one line per check.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:>2}  {:<4}  {:<26}  {}",
                c.id,
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  [witness {w}]"));
            }
            out.push('\n');
        }
        out.push_str(if self.overall { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }
}

/// Collects the first failure of a check, with its witness.
struct CheckBuilder {
    id: u32,
    name: &'static str,
    failure: Option<(String, Witness)>,
    failures: usize,
}

impl CheckBuilder {
    fn new(id: u32, name: &'static str) -> Self {
        CheckBuilder {
            id,
            name,
            failure: None,
            failures: 0,
        }
    }

    fn fail(&mut self, detail: String, witness: Witness) {
        self.failures += 1;
        if self.failure.is_none() {
            self.failure = Some((detail, witness));
        }
    }

    fn finish(self, ok_detail: String) -> Check {
        match self.failure {
            None => Check {
                id: self.id,
                name: self.name.to_string(),
                passed: true,
                detail: ok_detail,
                witness: None,
            },
            Some((detail, witness)) => Check {
                id: self.id,
                name: self.name.to_string(),
                passed: false,
                detail: if self.failures > 1 {
                    format!("{detail} (and {} more)", self.failures - 1)
                } else {
                    detail
                },
                witness: Some(witness),
            },
        }
    }
}

/// A class `r (mod m)` with the prime claimed for it, if any.
struct ClassView<'a> {
    side: usize,
    r: u64,
    m: u64,
    p: Option<&'a BigUint>,
}

fn classes<'a>(sides: &'a [(BigInt, &'a crate::covering::CoveringSystem, &'a PrimeAssignment)]) -> Vec<ClassView<'a>> {
    sides
        .iter()
        .enumerate()
        .flat_map(|(side, (_, cover, a))| {
            cover.congruences().iter().map(move |c| ClassView {
                side,
                r: c.r,
                m: c.m,
                p: a.prime_for(c.m),
            })
        })
        .collect()
}

fn check_shape(cert: &Certificate) -> Result<()> {
    let want = match cert.params.family {
        Family::T2 | Family::T3 => 1,
        Family::T4 => 2,
    };
    if cert.sides.len() != want {
        return Err(Error::MalformedCertificate(format!(
            "family {} needs {want} covering systems, found {}",
            cert.params.family,
            cert.sides.len()
        )));
    }
    if cert.params.b < 2 {
        return Err(Error::MalformedCertificate("b must be at least 2".into()));
    }
    if cert.m.is_zero() {
        return Err(Error::MalformedCertificate("M must be positive".into()));
    }
    if cert.schema_version != crate::construct::SCHEMA_VERSION {
        return Err(Error::MalformedCertificate(format!(
            "unsupported schema_version {}",
            cert.schema_version
        )));
    }
    for (i, s) in cert.sides.iter().enumerate() {
        if s.beta.is_zero() {
            return Err(Error::MalformedCertificate(format!("side {i} has beta = 0")));
        }
        if s.assignment.b != cert.params.b {
            return Err(Error::MalformedCertificate(format!(
                "side {i} assignment is for base {}",
                s.assignment.b
            )));
        }
    }
    Ok(())
}

/// `(k·b^exp + β) mod p` given `k mod p`.
fn side_value(k_p: &BigUint, b: u64, exp: u64, beta: &BigInt, p: &BigUint) -> BigUint {
    let bn = mod_pow(&BigInt::from(b), &BigUint::from(exp), p);
    reduce(&(BigInt::from(k_p * bn) + beta), p)
}

/// `k mod p`, reducing the exponent mod `p - 1` only when that is valid.
fn k_residue(cert: &Certificate, t: &BigUint, p: &BigUint) -> BigUint {
    let b = cert.params.b;
    if p > &BigUint::one() && is_prime(p) && !(BigUint::from(b) % p).is_zero() {
        k_mod_prime(t, b, &cert.params.alpha, p)
    } else {
        let bt = mod_pow(&BigInt::from(b), t, p);
        reduce(&(BigInt::from(t * bt) + &cert.params.alpha), p)
    }
}

/// Runs all nine checks.
pub fn verify_certificate(cert: &Certificate) -> Result<VerifyReport> {
    check_shape(cert)?;
    let b = cert.params.b;
    let b1 = BigUint::from(b - 1);
    let sides: Vec<(BigInt, &crate::covering::CoveringSystem, &PrimeAssignment)> = cert
        .sides
        .iter()
        .map(|s| (s.beta.clone(), &s.cover, &s.assignment))
        .collect();
    let all = classes(&sides);
    let mut checks = Vec::with_capacity(9);

    // 1. every cover is a cover
    let mut c1 = CheckBuilder::new(1, "cover exhaustive");
    let mut swept = 0u64;
    for (i, (_, cover, _)) in sides.iter().enumerate() {
        match verify_cover(cover) {
            Ok(r) if r.is_cover => swept += cover.lcm(),
            Ok(r) => c1.fail(
                format!("side {i} leaves {} (and possibly more) uncovered", r.uncovered_witnesses.len()),
                Witness::N {
                    side: i,
                    n: r.uncovered_witnesses[0],
                },
            ),
            Err(e) => c1.fail(
                format!("side {i}: {e}"),
                Witness::Value {
                    value: BigUint::from(cover.lcm()),
                },
            ),
        }
    }
    checks.push(c1.finish(format!("swept {swept} residues")));

    // 2. distinct moduli
    let mut c2 = CheckBuilder::new(2, "moduli distinct");
    for (i, (_, cover, _)) in sides.iter().enumerate() {
        if let Some(m) = first_repeated_modulus(cover) {
            c2.fail(format!("side {i} repeats modulus {m}"), Witness::Modulus { side: i, m });
        }
    }
    checks.push(c2.finish(format!("{} classes", all.len())));

    // 3. primitivity
    let mut c3 = CheckBuilder::new(3, "primes primitive");
    for cl in &all {
        match cl.p {
            None => c3.fail(
                format!("no prime for modulus {}", cl.m),
                Witness::Modulus { side: cl.side, m: cl.m },
            ),
            Some(p) if !is_primitive_prime(p, b, cl.m) => c3.fail(
                format!("{p} is not a primitive prime divisor of {b}^{} - 1", cl.m),
                Witness::Prime {
                    side: cl.side,
                    p: p.clone(),
                },
            ),
            Some(_) => {}
        }
    }
    for (i, (_, cover, a)) in sides.iter().enumerate() {
        for e in &a.entries {
            if cover.class_for_modulus(e.m).is_none() {
                c3.fail(
                    format!("prime {} is for modulus {} outside the cover", e.p, e.m),
                    Witness::Modulus { side: i, m: e.m },
                );
            }
        }
    }
    checks.push(c3.finish("ord_p(b) = m for every class".into()));

    // 4. distinct primes, coprime to b - 1
    let mut c4 = CheckBuilder::new(4, "primes distinct");
    let mut seen = HashSet::new();
    for cl in &all {
        let Some(p) = cl.p else { continue };
        if !seen.insert(p.clone()) {
            c4.fail(format!("{p} used twice"), Witness::Prime { side: cl.side, p: p.clone() });
        }
        if !p.gcd(&b1).is_one() {
            c4.fail(
                format!("{p} shares a factor with b - 1"),
                Witness::Prime { side: cl.side, p: p.clone() },
            );
        }
    }
    checks.push(c4.finish(format!("{} distinct primes", seen.len())));

    // 5. divisibility at each class representative
    let mut c5 = CheckBuilder::new(5, "class divisibility");
    for cl in &all {
        let Some(p) = cl.p else { continue };
        let beta = &sides[cl.side].0;
        let k_p = k_residue(cert, &cert.t, p);
        let v = side_value(&k_p, b, cl.r, beta, p);
        if !v.is_zero() {
            c5.fail(
                format!("(T·b^T + α)·b^{} + ({beta}) ≢ 0 (mod {p})", cl.r),
                Witness::Residue {
                    side: cl.side,
                    p: p.clone(),
                    value: v,
                },
            );
        }
    }
    checks.push(c5.finish("p | (T·b^T + α)·b^r + β for every class".into()));

    // 6. every n in one full period is hit by a dividing prime
    let mut c6 = CheckBuilder::new(6, "full-period sweep");
    let mut period_total = 0u64;
    for (i, (beta, cover, a)) in sides.iter().enumerate() {
        match full_period_sweep(cert, beta, cover, a) {
            Ok(None) => period_total += cover.lcm(),
            Ok(Some(n)) => c6.fail(
                format!("side {i}: (T·b^T + α)·b^{n} + ({beta}) has no certified divisor"),
                Witness::N { side: i, n },
            ),
            Err(e) => c6.fail(
                format!("side {i}: {e}"),
                Witness::Value {
                    value: BigUint::from(cover.lcm()),
                },
            ),
        }
    }
    checks.push(c6.finish(format!("n = 1..lcm, {period_total} exponents")));

    // 7. gcd(T·b^T + α + β, b - 1) = 1
    let mut c7 = CheckBuilder::new(7, "gcd with b - 1");
    let k_b1 = if b1.is_one() {
        BigUint::zero()
    } else {
        reduce(
            &(BigInt::from(&cert.t % &b1) * BigInt::from(mod_pow(&BigInt::from(b), &cert.t, &b1))
                + &cert.params.alpha),
            &b1,
        )
    };
    for (i, (beta, _, _)) in sides.iter().enumerate() {
        let v = reduce(&(BigInt::from(k_b1.clone()) + beta), &b1);
        let g = if b1.is_one() { BigUint::one() } else { v.gcd(&b1) };
        if !g.is_one() {
            c7.fail(
                format!("side {i}: gcd(k + ({beta}), b - 1) = {g}"),
                Witness::Residue {
                    side: i,
                    p: b1.clone(),
                    value: v,
                },
            );
        }
    }
    checks.push(c7.finish(format!("k ≡ {k_b1} (mod {b1})")));

    // 8. stability under t ↦ t + M
    let mut c8 = CheckBuilder::new(8, "stable modulo M");
    if cert.t >= cert.m {
        c8.fail(
            format!("T = {} is not reduced modulo M", cert.t),
            Witness::Value { value: cert.t.clone() },
        );
    }
    for cl in &all {
        if !(&cert.m % cl.m).is_zero() {
            c8.fail(
                format!("modulus {} does not divide M", cl.m),
                Witness::Modulus { side: cl.side, m: cl.m },
            );
        }
        if let Some(p) = cl.p {
            if !(&cert.m % p).is_zero() {
                c8.fail(
                    format!("{p} does not divide M"),
                    Witness::Prime { side: cl.side, p: p.clone() },
                );
            }
        }
    }
    checks.push(c8.finish("every m_i and p_i divides M".into()));

    // 9. size condition at the least positive representative
    let mut c9 = CheckBuilder::new(9, "size condition");
    let t0 = if cert.t.is_zero() { cert.m.clone() } else { cert.t.clone() };
    let max_p = all.iter().filter_map(|c| c.p).max().cloned().unwrap_or_default();
    for (i, (beta, _, _)) in sides.iter().enumerate() {
        if !size_condition(&t0, b, &cert.params.alpha, beta, &max_p) {
            c9.fail(
                format!("side {i}: (t·b^t + α)·b + ({beta}) ≤ {max_p} at t = {t0}"),
                Witness::Value { value: t0.clone() },
            );
        }
    }
    checks.push(c9.finish(format!("(t·b^t + α)·b + β > {max_p} for t ≥ {t0}")));

    Ok(VerifyReport::from_checks(checks))
}

/// First `n` in `[1, lcm]` that no class containing it makes divisible, if any.
/// Powers `b^n mod p` are computed from `n` itself, not from the claimed order.
fn full_period_sweep(
    cert: &Certificate,
    beta: &BigInt,
    cover: &crate::covering::CoveringSystem,
    a: &PrimeAssignment,
) -> Result<Option<u64>> {
    let hits = sweep_hits(cert.params.b, beta, cover, a, |p| k_residue(cert, &cert.t, p))?;
    Ok(hits.iter().skip(1).position(|h| h.is_none()).map(|i| i as u64 + 1))
}

/// For `n = 0..=lcm`, the first prime of `a` that divides `k·b^n + β`, found by
/// stepping `b^n` along each class. Entry 0 is unused.
fn sweep_hits<F>(
    b: u64,
    beta: &BigInt,
    cover: &crate::covering::CoveringSystem,
    a: &PrimeAssignment,
    k_mod: F,
) -> Result<Vec<Option<BigUint>>>
where
    F: Fn(&BigUint) -> BigUint + Sync,
{
    let lcm = cover.lcm();
    if lcm > crate::covering::DEFAULT_SWEEP_BOUND {
        return Err(Error::BoundExceeded {
            lcm: lcm.to_string(),
            bound: crate::covering::DEFAULT_SWEEP_BOUND,
        });
    }
    let hits: Vec<(&BigUint, Vec<u64>)> = cover
        .congruences()
        .par_iter()
        .filter_map(|c| a.prime_for(c.m).map(|p| (c, p)))
        .map(|(c, p)| {
            let k_p = k_mod(p);
            let bb = BigInt::from(b);
            let step = mod_pow(&bb, &BigUint::from(c.m), p);
            let first = if c.r == 0 { c.m } else { c.r };
            let mut bn = mod_pow(&bb, &BigUint::from(first), p);
            let mut out = Vec::new();
            let mut n = first;
            while n <= lcm {
                let v = reduce(&(BigInt::from(&k_p * &bn) + beta), p);
                if v.is_zero() {
                    out.push(n);
                }
                bn = bn * &step % p;
                n += c.m;
            }
            (p, out)
        })
        .collect();
    let mut covered: Vec<Option<BigUint>> = vec![None; lcm as usize + 1];
    for (p, ns) in hits {
        for n in ns {
            covered[n as usize].get_or_insert_with(|| p.clone());
        }
    }
    Ok(covered)
}

/// Full-period sweep for a plain multiplier: for `n = 1..=lcm`, the prime of
/// `a` that the class residues say divides `k·b^n + β`, if any.
pub fn predicted_divisors(
    k: &BigUint,
    b: u64,
    beta: &BigInt,
    cover: &crate::covering::CoveringSystem,
    a: &PrimeAssignment,
) -> Result<Vec<Option<BigUint>>> {
    let mut hits = sweep_hits(b, beta, cover, a, |p| k % p)?;
    hits.remove(0);
    Ok(hits)
}

/// Class check for a plain multiplier: `k·b^r + β ≡ 0 (mod p)` for every
/// congruence `r (mod m)` with assigned prime `p`.
pub fn class_divisibility(
    k: &BigUint,
    b: u64,
    beta: &BigInt,
    cover: &crate::covering::CoveringSystem,
    a: &PrimeAssignment,
) -> Vec<bool> {
    cover
        .congruences()
        .iter()
        .map(|c| match a.prime_for(c.m) {
            Some(p) => side_value(&(k % p), b, c.r, beta, p).is_zero(),
            None => false,
        })
        .collect()
}

/// Re-runs the class divisibility residues with `T + k·M` for `k = 1..=count`
/// and requires them to match those at `T`.
pub fn verify_translation_invariance(cert: &Certificate, count: u64) -> Result<VerifyReport> {
    check_shape(cert)?;
    let b = cert.params.b;
    let mut checks = Vec::new();
    let base: Vec<(usize, &BigUint, u64, BigUint)> = cert
        .sides
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            s.cover.congruences().iter().filter_map(move |c| {
                s.assignment.prime_for(c.m).map(|p| (i, p, c.r, s.beta.clone()))
            })
        })
        .map(|(i, p, r, beta)| {
            let k_p = k_residue(cert, &cert.t, p);
            (i, p, r, side_value(&k_p, b, r, &beta, p))
        })
        .collect();
    for k in 1..=count {
        let shifted = &cert.t + &cert.m * k;
        let mut c = CheckBuilder::new(k as u32, "translation");
        for (i, p, r, expect) in &base {
            let beta = &cert.sides[*i].beta;
            let k_p = k_residue(cert, &shifted, p);
            let got = side_value(&k_p, b, *r, beta, p);
            if &got != expect {
                c.fail(
                    format!("T + {k}·M changes the residue mod {p}"),
                    Witness::Prime { side: *i, p: (*p).clone() },
                );
            }
        }
        checks.push(c.finish(format!("T + {k}·M: {} residues unchanged", base.len())));
    }
    Ok(VerifyReport::from_checks(checks))
}

/// The four published residues `T` for `b = 2`, `q = 5`, in the order
/// `(α, β) = (1, 1), (1, -1), (-1, 1), (-1, -1)`.
pub const COROLLARY1_T: [(i64, i64, &str); 4] = [
    (1, 1, "2245377406103792702454767"),
    (1, -1, "2215074033447763254589281"),
    (-1, 1, "1951609044082776021493089"),
    (-1, -1, "3334297893475587915471523"),
];

pub const COROLLARY1_M: &str = "3868562622766813359059760";
pub const COROLLARY1_P: &str = "241785163922925834941235";
pub const COROLLARY1_TAU: u64 = 47;
pub const COROLLARY1_SCRIPT_T: &str = "697952356997067358830863";

/// The published prime for each modulus of the `q = 5` powers-of-two cover.
pub fn corollary1_assignment() -> PrimeAssignment {
    PrimeAssignment::given(
        2,
        &[
            (2, 3),
            (4, 5),
            (8, 17),
            (16, 257),
            (5, 31),
            (10, 11),
            (20, 41),
            (40, 61681),
            (80, 4278255361),
        ],
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproductionRow {
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub rows: Vec<ReproductionRow>,
    pub overall: bool,
    #[serde(skip)]
    pub certificates: Vec<Certificate>,
}

impl ReproductionReport {
    /// `Mismatch` for the first row that differs.
    pub fn into_result(self) -> Result<Self> {
        match self.rows.iter().find(|r| !r.matches) {
            Some(r) => Err(Error::Mismatch {
                field: r.field.clone(),
                expected: r.expected.clone(),
                computed: r.computed.clone(),
            }),
            None => Ok(self),
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!(
                "{:<14} {:>28} {:>28}  {}\n",
                r.field,
                r.expected,
                r.computed,
                if r.matches { "match" } else { "MISMATCH" }
            ));
        }
        out
    }
}

/// Reproduces the `b = 2`, `q = 5` example with the published primes.
pub fn reproduce_corollary1() -> Result<ReproductionReport> {
    reproduce_corollary1_with(&corollary1_assignment())
}

/// Same as [`reproduce_corollary1`] with a caller-supplied prime set.
pub fn reproduce_corollary1_with(assignment: &PrimeAssignment) -> Result<ReproductionReport> {
    let cover = build_power2_cover(5, 4)?;
    let mut rows = Vec::new();
    let mut certificates = Vec::new();
    let mut row = |field: String, expected: String, computed: String| {
        rows.push(ReproductionRow {
            matches: expected == computed,
            field,
            expected,
            computed,
        });
    };
    for (part, (alpha, beta, expected)) in COROLLARY1_T.iter().enumerate() {
        let params = ConstructionParams::new(Family::T2, 2, *alpha, Some(*beta), 5);
        let cert = match theorem2_construct(&params, &cover, assignment) {
            Ok(c) => c,
            Err(e) => {
                row(format!("T part {}", part + 1), expected.to_string(), format!("error: {e}"));
                continue;
            }
        };
        if part == 0 {
            row("tau".into(), COROLLARY1_TAU.to_string(), cert.tau.to_string());
            row("script_T".into(), COROLLARY1_SCRIPT_T.into(), cert.script_t.to_string());
            row("P".into(), COROLLARY1_P.into(), cert.p_product.to_string());
            let a = cert.case_flags.a_index.map(|a| a.modulus.to_string());
            row("a_modulus".into(), "4".into(), a.unwrap_or_else(|| "none".into()));
        }
        row(format!("T part {}", part + 1), expected.to_string(), cert.t.to_string());
        row(format!("M part {}", part + 1), COROLLARY1_M.into(), cert.m.to_string());
        certificates.push(cert);
    }
    let overall = rows.iter().all(|r| r.matches);
    Ok(ReproductionReport {
        rows,
        overall,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part1() -> Certificate {
        reproduce_corollary1().unwrap().certificates.remove(0)
    }

    #[test]
    fn corollary_part1_verifies() {
        let r = verify_certificate(&part1()).unwrap();
        assert!(r.overall, "{}", r.to_table());
        assert_eq!(r.checks.len(), 9);
    }

    #[test]
    fn perturbed_t_fails_with_witness() {
        let mut c = part1();
        c.t += 1u32;
        let r = verify_certificate(&c).unwrap();
        assert!(!r.overall);
        let five = r.checks.iter().find(|c| c.id == 5).unwrap();
        assert!(!five.passed);
        assert!(matches!(five.witness, Some(Witness::Residue { .. })));
    }

    #[test]
    fn reproduction_matches() {
        let r = reproduce_corollary1().unwrap();
        assert!(r.overall, "{}", r.to_table());
        assert!(r.into_result().is_ok());
    }

    #[test]
    fn reproduction_with_wrong_primes_mismatches() {
        let mut a = corollary1_assignment();
        a.entries[6].p = BigUint::from(61u32); // ord_61(2) = 60, not 20
        let r = reproduce_corollary1_with(&a).unwrap();
        assert!(!r.overall);
        assert!(matches!(r.into_result(), Err(Error::Mismatch { .. })));
    }

    #[test]
    fn translation_invariance() {
        let c = part1();
        assert!(verify_translation_invariance(&c, 3).unwrap().overall);
        let r = verify_translation_invariance(&c, 0).unwrap();
        assert!(r.overall && r.checks.is_empty());
        let mut bad = c.clone();
        bad.m /= 2u32;
        let r = verify_translation_invariance(&bad, 1).unwrap();
        assert!(!r.overall);
        assert!(matches!(r.checks[0].witness, Some(Witness::Prime { .. })));
    }

    #[test]
    fn malformed_shape() {
        let mut c = part1();
        c.params.family = Family::T4;
        assert!(matches!(verify_certificate(&c), Err(Error::MalformedCertificate(_))));
    }
}
