//! Counting and enumerating binary rotation words.
//!
//! A binary rotation word codes the orbit of a circle rotation against a
//! two-arc partition. This crate evaluates the closed-form count `f(m)` of
//! such words of length `m` and checks it against two exact enumerations:
//! a geometric one straight from the definition, and one that rebuilds each
//! rotation word from a pair of same-slope Sturmian words.
//!
//! ```
//! use rotwords::counting::f_closed;
//! use rotwords::rotation::{enumerate_rotation_words, EnumerateOptions};
//!
//! let words = enumerate_rotation_words(7, EnumerateOptions::default()).unwrap();
//! assert_eq!(words.len() as u64, f_closed(7).unwrap());
//! ```

pub mod cli;
pub mod counting;
pub mod error;
pub mod rationals;
pub mod rotation;
pub mod sturmian;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use rationals::{FareyInterval, Fraction, SlopeRange};
pub use word::BinaryWord;
