//! Exact arithmetic for Picard–Fuchs operators of Calabi–Yau families:
//! truncated power series, holomorphic periods and mirror maps, Hasse–Witt
//! truncations modulo primes, and q-expansion identities.

pub mod arith;
pub mod catalog;
pub mod diffop;
pub mod error;
pub mod hassewitt;
pub mod poly;
pub mod qexp;
pub mod series;
pub mod verify;

pub use arith::{PrimeField, Rational, Rationals, Ring};
pub use error::{Error, Result};
pub use poly::{Poly, QPoly};
pub use series::{FpSeries, PuiseuxSeries, QSeries, TruncatedSeries};
