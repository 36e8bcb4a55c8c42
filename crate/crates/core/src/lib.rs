//! Periods of the Fibonacci and Lucas sequences modulo m.
//!
//! [`pisano::pisano_period`] is the fast route: factor m, find each prime's
//! period among the divisors of its class bound, lift to prime powers and
//! take the lcm. [`fibmod::brute_period`] walks the residue pairs directly
//! and serves as the oracle for everything else.

pub mod analysis;
pub mod error;
pub mod fibmod;
pub mod numth;
pub mod pisano;
pub mod theorems;

pub use error::{Error, Result};
pub use fibmod::{
    brute_period, fib_pair, lucas_brute_period, lucas_pair, Method, PeriodResult, ResiduePair,
    DEFAULT_ORACLE_CAP,
};
pub use numth::{Factorization, MAX_MODULUS};
pub use pisano::{
    classify_prime, lucas_period, pisano_period, prime_period, prime_power_period, PeriodEngine,
    PrimeClass,
};
