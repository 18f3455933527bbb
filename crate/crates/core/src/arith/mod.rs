//! Exact integer, rational and prime-field arithmetic.

pub mod combinatorics;
pub mod crt;
pub mod field;
pub mod primes;
pub mod rational;
pub mod ring;

pub use combinatorics::{bernoulli, bernoulli_and_sigma, divisor_sigma, factorial, factorial_ratio, Family};
pub use crt::{
    crt_combine, inert_in_q_sqrt_m5, rational_reconstruction, reconstruction_bound, splitting_in_q_sqrt_m5, Splitting,
};
pub use field::{mod_inverse, mod_pow, PrimeField, PrimeFieldElem};
pub use primes::{first_primes, first_primes_where, is_prime, primes_up_to};
pub use rational::Rational;
pub use ring::{convolve_naive, Rationals, Ring};
