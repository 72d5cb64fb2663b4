//! Exact-arithmetic Okounkov bodies for rational projective complexity-one
//! T-varieties over P1, presented as marked fansy divisors.
//!
//! The crate splits into a polyhedral kernel ([`poly`]), the variety model
//! ([`fansy`]), invariant divisors and section spaces ([`support`]), flags and
//! Okounkov bodies ([`flag`], [`body`]), degeneration tooling ([`degen`]) and
//! JSON/OFF interchange ([`model`]). Everything computes over arbitrary
//! precision rationals; there is no floating point anywhere.

pub mod error;
pub mod rat;
pub mod linalg;
pub mod dd;
pub mod poly;
pub mod fan;
pub mod fansy;
pub mod support;
pub mod flag;
pub mod body;
pub mod degen;
pub mod zoo;
pub mod model;

pub use error::{Error, Result};
pub use rat::{Int, Rat};
