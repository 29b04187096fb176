use thiserror::Error;

/// Every failure the library reports. Big integers travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m} (gcd {gcd})")]
    NotCoprime { a: String, m: String, gcd: String },

    #[error("incompatible congruences: {first} and {second}")]
    Incompatible { first: String, second: String },

    #[error("prime {p} divides the base {b}")]
    DividesBase { b: String, p: String },

    #[error("could not completely factor {n}; unfactored part {cofactor}")]
    IncompleteFactorization { n: String, cofactor: String },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("lcm {lcm} exceeds the exhaustive sweep bound {bound}")]
    BoundExceeded { lcm: String, bound: u64 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("b = {b}, w = {w} is a Zsigmondy exception: b^w - 1 has no primitive prime divisor")]
    ExceptionCase { b: u64, w: u64 },

    #[error("no primitive prime divisor of {b}^{m} - 1 found within budget ({detail})")]
    NotFound { b: u64, m: u64, detail: String },

    #[error("prime search left {} moduli unresolved: {:?}", unresolved.len(), unresolved)]
    PartialAssignment { unresolved: Vec<u64> },

    #[error("repeated modulus {0} in covering system")]
    RepeatedModulus(u64),

    #[error("prime {0} is assigned more than once")]
    DistinctnessViolation(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("mismatch in {field}: expected {expected}, computed {computed}")]
    Mismatch {
        field: String,
        expected: String,
        computed: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
