//! Integer number theory on 64-bit values: modular arithmetic, primality,
//! factorization, divisors, square roots and multiplicative orders.

mod arith;
mod factor;
mod order;
mod prime;
mod sqrt;

pub use arith::{gcd, lcm, mulmod, powmod, Modulus, MAX_MODULUS};
pub use factor::{divisors, factorize, factorize_seeded, DivisorSet, Factorization, DEFAULT_SEED};
pub use order::multiplicative_order;
pub use prime::is_prime;
pub use sqrt::mod_sqrt;
