//! Covering systems of the integers: construction and exhaustive verification.
//!
//! A [`CoveringSystem`] is an ordered list of congruences `r (mod m)` with the
//! lcm of the moduli cached. Construction order is preserved so serialized
//! systems are byte-stable. [`verify_cover`] sweeps every residue modulo the
//! lcm; there is no sampling fallback.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{crt_list, is_prime_u64, reduce_i64, ResidueClass};
use crate::error::{Error, Result};

/// Largest lcm [`verify_cover`] will sweep by default.
pub const DEFAULT_SWEEP_BOUND: u64 = 100_000_000;

/// How many uncovered residues a failing report lists.
pub const MAX_WITNESSES: usize = 10;

const CHUNK: u64 = 1 << 16;

/// `r (mod m)` with `0 <= r < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    pub r: u64,
    pub m: u64,
}

impl Congruence {
    pub fn new(r: i64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Congruence {
            r: reduce_i64(r, m),
            m,
        })
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.m == self.r
    }
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.r, self.m)
    }
}

#[derive(Deserialize)]
struct RawCover {
    congruences: Vec<Congruence>,
    lcm: u64,
}

/// A finite list of congruences claimed to cover every integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCover")]
pub struct CoveringSystem {
    congruences: Vec<Congruence>,
    lcm: u64,
}

impl TryFrom<RawCover> for CoveringSystem {
    type Error = Error;

    fn try_from(raw: RawCover) -> Result<Self> {
        if let Some(c) = raw.congruences.iter().find(|c| c.m == 0 || c.r >= c.m) {
            return Err(Error::BadParameters(format!(
                "congruence {} (mod {}) is not normalized",
                c.r, c.m
            )));
        }
        let system = CoveringSystem::new(raw.congruences)?;
        if system.lcm != raw.lcm {
            return Err(Error::BadParameters(format!(
                "stated lcm {} differs from the lcm of the moduli {}",
                raw.lcm, system.lcm
            )));
        }
        Ok(system)
    }
}

impl CoveringSystem {
    /// Builds a system, reducing residues and computing the lcm.
    pub fn new(congruences: Vec<Congruence>) -> Result<Self> {
        let mut lcm = 1u64;
        let mut out = Vec::with_capacity(congruences.len());
        for c in congruences {
            if c.m == 0 {
                return Err(Error::ZeroModulus);
            }
            let g = lcm.gcd(&c.m);
            lcm = (lcm / g).checked_mul(c.m).ok_or_else(|| {
                Error::BadParameters("lcm of the moduli does not fit in 64 bits".into())
            })?;
            out.push(Congruence {
                r: c.r % c.m,
                m: c.m,
            });
        }
        Ok(CoveringSystem {
            congruences: out,
            lcm,
        })
    }

    pub fn from_pairs(pairs: &[(i64, u64)]) -> Result<Self> {
        let cs = pairs
            .iter()
            .map(|&(r, m)| Congruence::new(r, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(cs)
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn moduli(&self) -> impl Iterator<Item = u64> + '_ {
        self.congruences.iter().map(|c| c.m)
    }

    /// The congruence with modulus `m`, if present.
    pub fn class_for_modulus(&self, m: u64) -> Option<&Congruence> {
        self.congruences.iter().find(|c| c.m == m)
    }

    /// Returns a copy with congruence `index` replaced.
    pub fn with_congruence(&self, index: usize, c: Congruence) -> Result<Self> {
        let mut cs = self.congruences.clone();
        cs[index] = c;
        Self::new(cs)
    }
}

/// Result of an exhaustive covering sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub is_cover: bool,
    /// Smallest uncovered residues in `[0, lcm)`, at most [`MAX_WITNESSES`].
    pub uncovered_witnesses: Vec<u64>,
    /// Number of congruences hitting a residue -> how many residues mod lcm
    /// are hit that many times. Counts saturate at `u16::MAX`.
    pub multiplicity_histogram: BTreeMap<u16, u64>,
}

#[derive(Default)]
struct ChunkTally {
    histogram: BTreeMap<u16, u64>,
    witnesses: Vec<u64>,
}

impl ChunkTally {
    fn merge(mut self, other: ChunkTally) -> ChunkTally {
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort_unstable();
        self.witnesses.truncate(MAX_WITNESSES);
        self
    }
}

/// Per-residue hit counts of `system` over `[lo, hi)`.
pub(crate) fn hit_counts(system: &CoveringSystem, lo: u64, hi: u64) -> Vec<u16> {
    let mut counts = vec![0u16; (hi - lo) as usize];
    for c in &system.congruences {
        let mut n = lo + (c.r + c.m - lo % c.m) % c.m;
        while n < hi {
            let slot = &mut counts[(n - lo) as usize];
            *slot = slot.saturating_add(1);
            n += c.m;
        }
    }
    counts
}

/// Exhaustively checks that every residue modulo the lcm is covered, using
/// the default bound.
pub fn verify_cover(system: &CoveringSystem) -> Result<CoverReport> {
    verify_cover_bounded(system, DEFAULT_SWEEP_BOUND)
}

/// Like [`verify_cover`] with an explicit bound on the lcm.
pub fn verify_cover_bounded(system: &CoveringSystem, bound: u64) -> Result<CoverReport> {
    let lcm = system.lcm;
    if lcm > bound {
        return Err(Error::BoundExceeded {
            lcm: lcm.to_string(),
            bound,
        });
    }
    let chunks = lcm.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let lo = i * CHUNK;
            let hi = (lo + CHUNK).min(lcm);
            let counts = hit_counts(system, lo, hi);
            let mut t = ChunkTally::default();
            for (off, &k) in counts.iter().enumerate() {
                *t.histogram.entry(k).or_default() += 1;
                if k == 0 && t.witnesses.len() < MAX_WITNESSES {
                    t.witnesses.push(lo + off as u64);
                }
            }
            t
        })
        .reduce(ChunkTally::default, ChunkTally::merge);
    Ok(CoverReport {
        is_cover: tally.witnesses.is_empty(),
        uncovered_witnesses: tally.witnesses,
        multiplicity_histogram: tally.histogram,
    })
}

/// One pair `([A_1..A_v], [B_1..B_v])`: the CRT merge of `A_i (mod B_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairNotation {
    pub residues: Vec<BigInt>,
    pub moduli: Vec<u64>,
}

impl PairNotation {
    pub fn new(residues: Vec<i64>, moduli: Vec<u64>) -> Self {
        PairNotation {
            residues: residues.into_iter().map(BigInt::from).collect(),
            moduli,
        }
    }

    /// Collapses the pair into a single congruence modulo lcm(B_1..B_v).
    pub fn collapse(&self) -> Result<Congruence> {
        if self.residues.len() != self.moduli.len() {
            return Err(Error::BadParameters(format!(
                "pair has {} residues but {} moduli",
                self.residues.len(),
                self.moduli.len()
            )));
        }
        let classes = self
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(a, &b)| ResidueClass::new(a, &BigUint::from(b)))
            .collect::<Result<Vec<_>>>()?;
        let merged = crt_list(&classes)?;
        let too_big = || Error::BadParameters("merged modulus does not fit in 64 bits".into());
        Ok(Congruence {
            r: merged.residue.to_u64().ok_or_else(too_big)?,
            m: merged.modulus.to_u64().ok_or_else(too_big)?,
        })
    }
}

/// Expands Harrington pair notation into a covering system, one congruence per pair.
pub fn expand_pair_notation(pairs: &[PairNotation]) -> Result<CoveringSystem> {
    let cs = pairs
        .iter()
        .map(PairNotation::collapse)
        .collect::<Result<Vec<_>>>()?;
    CoveringSystem::new(cs)
}

fn pow_checked(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::BadParameters(format!("{base}^{exp} does not fit in 64 bits")))
}

/// The powers-of-two family: the ladder `2^{j-1}-1 (mod 2^j)` for
/// `1 <= j <= m`, then `a_j (mod q·2^j)` for `0 <= j <= m` where
/// `a_j ≡ j (mod q)` and `a_j ≡ 2^m - 1 (mod 2^j)`.
///
/// `m = q - 1` gives the Sierpiński/Riesel cover (moduli `2^j`, `j < q`, and
/// `2^j q`, `j < q`); `m = q` gives the first cover of the two-cover family.
pub fn build_power2_cover(q: u64, m: u64) -> Result<CoveringSystem> {
    if q < 3 || !is_prime_u64(q) {
        return Err(Error::BadParameters(format!("q = {q} must be an odd prime")));
    }
    if m < 2 {
        return Err(Error::BadParameters(format!("m = {m} must be at least 2")));
    }
    if q > m + 1 {
        return Err(Error::BadParameters(format!(
            "q = {q} exceeds m + 1 = {}",
            m + 1
        )));
    }
    let m32 = u32::try_from(m).map_err(|_| Error::BadParameters("m too large".into()))?;
    let top = pow_checked(2, m32)?;
    top.checked_mul(q)
        .ok_or_else(|| Error::BadParameters("q·2^m does not fit in 64 bits".into()))?;

    let mut pairs = Vec::new();
    for j in 1..=m32 {
        pairs.push(PairNotation::new(
            vec![(1i64 << (j - 1)) - 1],
            vec![1u64 << j],
        ));
    }
    for j in 0..=m32 {
        pairs.push(PairNotation {
            residues: vec![BigInt::from(j), BigInt::from(top - 1)],
            moduli: vec![q, 1u64 << j],
        });
    }
    expand_pair_notation(&pairs)
}

/// The 2·3·q family: four pair-notation blocks with moduli
/// `2^j 3^ĵ q^{j'}` for `0 <= j <= q`, `1 <= ĵ <= q`, `j' ∈ {0, 1}`.
pub fn build_236_cover(q: u64) -> Result<CoveringSystem> {
    if q < 5 || !is_prime_u64(q) {
        return Err(Error::BadParameters(format!(
            "q = {q} must be a prime at least 5"
        )));
    }
    let q32 = u32::try_from(q).map_err(|_| Error::BadParameters("q too large".into()))?;
    pow_checked(2, q32)?
        .checked_mul(pow_checked(3, q32)?)
        .and_then(|x| x.checked_mul(q))
        .ok_or_else(|| Error::BadParameters("2^q·3^q·q does not fit in 64 bits".into()))?;

    let p2 = |j: u32| 1u64 << j;
    let p3 = |j: u32| 3u64.pow(j);
    let mut pairs = Vec::new();
    for jb in 1..=q32 {
        pairs.push(PairNotation::new(vec![p3(jb - 1) as i64], vec![p3(jb)]));
    }
    for j in 1..=q32 {
        for jb in 1..=q32 {
            pairs.push(PairNotation::new(
                vec![p2(j - 1) as i64, 2 * p3(jb - 1) as i64],
                vec![p2(j), p3(jb)],
            ));
        }
    }
    for j in 1..=q32 {
        for jb in 1..=q32 {
            pairs.push(PairNotation::new(
                vec![0, 2 * p3(jb - 1) as i64, j as i64],
                vec![p2(j), p3(jb), q],
            ));
        }
    }
    for jb in 1..=q32 {
        pairs.push(PairNotation::new(vec![0, jb as i64], vec![p3(jb), q]));
    }
    expand_pair_notation(&pairs)
}

/// True iff no modulus repeats.
pub fn moduli_distinct(system: &CoveringSystem) -> bool {
    first_repeated_modulus(system).is_none()
}

pub fn first_repeated_modulus(system: &CoveringSystem) -> Option<u64> {
    let mut seen = HashSet::new();
    system.moduli().find(|&m| !seen.insert(m))
}
