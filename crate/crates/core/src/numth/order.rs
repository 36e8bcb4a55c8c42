use super::arith::Modulus;
use super::factor::Factorization;
use super::prime::is_prime;
use crate::error::{Error, Result};

/// Order of `g` in the multiplicative group modulo the prime `p`.
///
/// Starts from `p - 1` and strips each prime factor while the power stays 1,
/// so the cost is `O(sum of exponents)` modular exponentiations.
pub fn multiplicative_order(g: u64, p: u64, fact_p_minus_1: &Factorization) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = Modulus::new(p)?;
    if g.is_multiple_of(p) {
        return Err(Error::NotInvertible(g, p));
    }
    if p == 2 {
        return Ok(1);
    }
    if fact_p_minus_1.value() != p - 1 {
        return Err(Error::FactorizationMismatch { expected: p - 1 });
    }

    let mut order = p - 1;
    for &(q, e) in fact_p_minus_1.factors() {
        for _ in 0..e {
            if m.pow(g, order / q) == 1 {
                order /= q;
            } else {
                break;
            }
        }
    }
    Ok(order)
}
