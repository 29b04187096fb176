//! Covering-system certificates for b-Sierpiński, b-Riesel and b-Brier
//! numbers of the form `t·b^t + α`.
//!
//! The pipeline is: build a covering system ([`covering`]), pick a primitive
//! prime divisor of `b^m - 1` for every modulus ([`zsigmondy`]), solve the CRT
//! systems for `T (mod M)` ([`construct`]), and check the result without
//! trusting the construction ([`verify`]).

pub mod arith;
pub mod cli;
pub mod construct;
pub mod covering;
pub mod error;
pub mod json;
pub mod verify;
pub mod zsigmondy;

pub use error::{Error, Result};
