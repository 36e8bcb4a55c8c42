//! Fast computation of the Pisano period h(m).
//!
//! Primes are classified by their residue mod 5, which fixes an integer
//! whose divisors must contain h(p). The period of a prime power is lifted
//! from h(p), and h(m) is the lcm over the prime powers of m.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibmod::{
    fib_pair_in, lucas_brute_period_capped, lucas_pair_in, Method, PeriodResult, ResiduePair,
    DEFAULT_ORACLE_CAP,
};
use crate::numth::{factorize_seeded, is_prime, lcm, Factorization, Modulus, DEFAULT_SEED};

/// Primes split by how `x^2 - x - 1` factors modulo p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeClass {
    SpecialTwo,
    SpecialFive,
    /// p = ±1 (mod 5): distinct roots in Z/p, h(p) | p - 1.
    Split,
    /// p = ±2 (mod 5): no roots in Z/p, h(p) | 2p + 2.
    Irreducible,
}

impl PrimeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PrimeClass::SpecialTwo => "special_two",
            PrimeClass::SpecialFive => "special_five",
            PrimeClass::Split => "split",
            PrimeClass::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The integer whose divisors contain h(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PeriodBound {
    pub bound: u64,
}

pub fn classify_prime(p: u64) -> Result<PrimeClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(class_of_prime(p))
}

pub(crate) fn class_of_prime(p: u64) -> PrimeClass {
    match (p, p % 5) {
        (2, _) => PrimeClass::SpecialTwo,
        (5, _) => PrimeClass::SpecialFive,
        (_, 1 | 4) => PrimeClass::Split,
        _ => PrimeClass::Irreducible,
    }
}

/// Bound for a prime of the given class: 3, 20, p - 1 or 2p + 2.
pub fn period_bound(p: u64) -> Result<PeriodBound> {
    let bound = match classify_prime(p)? {
        PrimeClass::SpecialTwo => 3,
        PrimeClass::SpecialFive => 20,
        PrimeClass::Split => p - 1,
        PrimeClass::Irreducible => p
            .checked_mul(2)
            .and_then(|b| b.checked_add(2))
            .ok_or(Error::Overflow("2p + 2"))?,
    };
    Ok(PeriodBound { bound })
}

/// A period plus the pieces it was assembled from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodBreakdown {
    pub result: PeriodResult,
    /// Absent only for m = 1.
    pub factorization: Option<Factorization>,
    /// One entry per prime power of m, in factorization order.
    pub components: Vec<PeriodResult>,
}

impl PeriodBreakdown {
    pub fn classes(&self) -> Vec<PrimeClass> {
        let mut classes: Vec<PrimeClass> = self
            .factorization
            .iter()
            .flat_map(|f| f.primes())
            .map(class_of_prime)
            .collect();
        classes.sort_unstable();
        classes.dedup();
        classes
    }
}

/// Configuration shared by the period computations.
///
/// The seed only steers the randomized factorizer and never changes a
/// result. The oracle cap bounds the brute-force fallback used by
/// [`PeriodEngine::lucas_period`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodEngine {
    pub seed: u64,
    pub oracle_cap: u64,
}

impl Default for PeriodEngine {
    fn default() -> Self {
        PeriodEngine {
            seed: DEFAULT_SEED,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

impl PeriodEngine {
    pub fn new(seed: u64, oracle_cap: u64) -> Self {
        PeriodEngine { seed, oracle_cap }
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        factorize_seeded(n, self.seed)
    }

    pub fn prime_period(&self, p: u64) -> Result<PeriodResult> {
        let PeriodBound { bound } = period_bound(p)?;
        let m = Modulus::new(p)?;
        let is_period = |d: u64| fib_pair_in(d, m) == ResiduePair::fibonacci_start(m);

        let period = match class_of_prime(p) {
            PrimeClass::SpecialTwo | PrimeClass::SpecialFive => bound,
            _ => {
                if !is_period(bound) {
                    return Err(Error::BoundNotPeriod { modulus: p, bound });
                }
                least_period_dividing(bound, &self.factorize(bound)?, is_period)
            }
        };
        Ok(PeriodResult::new(p, period, Method::PrimeDivisorSearch))
    }

    /// h(p^e), starting from the candidate `p^(e-1) h(p)` and verifying it.
    ///
    /// h(p^e) is always `p^j h(p)` for some `j < e`. The candidate is
    /// stepped down by p while it still returns to (0, 1), and stepped up
    /// if it does not; either correction sets `lift_adjusted`.
    pub fn prime_power_period(&self, p: u64, e: u32) -> Result<PeriodResult> {
        if e == 0 {
            return Err(Error::InvalidFactorization("zero exponent"));
        }
        let base = self.prime_period(p)?;
        if e == 1 {
            return Ok(base);
        }
        let pe = p.checked_pow(e).ok_or(Error::Overflow("prime power"))?;
        let m = Modulus::new(pe)?;
        let is_period = |d: u64| fib_pair_in(d, m) == ResiduePair::fibonacci_start(m);

        let lift = p.pow(e - 1);
        let mut period = base
            .period
            .checked_mul(lift)
            .ok_or(Error::Overflow("prime-power period"))?;
        let mut adjusted = false;

        if is_period(period) {
            while period > base.period && is_period(period / p) {
                period /= p;
                adjusted = true;
            }
        } else {
            let mut tries = 0;
            while !is_period(period) {
                tries += 1;
                if tries > e {
                    return Err(Error::BoundNotPeriod {
                        modulus: pe,
                        bound: period,
                    });
                }
                period = period
                    .checked_mul(p)
                    .ok_or(Error::Overflow("prime-power period"))?;
            }
            adjusted = true;
        }

        Ok(PeriodResult {
            modulus: pe,
            period,
            method: Method::PrimePowerLift,
            lift_adjusted: adjusted,
        })
    }

    pub fn pisano_period(&self, m: u64) -> Result<PeriodResult> {
        self.pisano_breakdown(m).map(|b| b.result)
    }

    pub fn pisano_breakdown(&self, m: u64) -> Result<PeriodBreakdown> {
        Modulus::new(m)?;
        if m == 1 {
            return Ok(PeriodBreakdown {
                result: PeriodResult::new(1, 1, Method::LcmComposition),
                factorization: None,
                components: Vec::new(),
            });
        }
        let factorization = self.factorize(m)?;
        let components = factorization
            .factors()
            .iter()
            .map(|&(p, e)| self.prime_power_period(p, e))
            .collect::<Result<Vec<_>>>()?;

        let mut period = 1u64;
        for c in &components {
            period = lcm(period, c.period)?;
        }
        let method = match components.as_slice() {
            [single] => single.method,
            _ => Method::LcmComposition,
        };
        Ok(PeriodBreakdown {
            result: PeriodResult {
                modulus: m,
                period,
                method,
                lift_adjusted: components.iter().any(|c| c.lift_adjusted),
            },
            factorization: Some(factorization),
            components,
        })
    }

    /// Period of the Lucas sequence, found among the divisors of h(m).
    pub fn lucas_period(&self, m: u64) -> Result<PeriodResult> {
        let modulus = Modulus::new(m)?;
        if m == 1 {
            return Ok(PeriodResult::new(1, 1, Method::PeriodDivisorSearch));
        }
        let fib_period = self.pisano_period(m)?.period;
        let start = ResiduePair::lucas_start(modulus);
        let is_period = |d: u64| lucas_pair_in(d, modulus) == start;

        if !is_period(fib_period) {
            return lucas_brute_period_capped(m, self.oracle_cap);
        }
        let period = least_period_dividing(fib_period, &self.factorize(fib_period)?, is_period);
        Ok(PeriodResult::new(m, period, Method::PeriodDivisorSearch))
    }
}

/// Least divisor of `bound` accepted by `is_period`, given that `bound` is
/// accepted and the accepted indices are the multiples of one number.
fn least_period_dividing(bound: u64, fact: &Factorization, is_period: impl Fn(u64) -> bool) -> u64 {
    let mut period = bound;
    for &(q, e) in fact.factors() {
        for _ in 0..e {
            if is_period(period / q) {
                period /= q;
            } else {
                break;
            }
        }
    }
    period
}

pub fn prime_period(p: u64) -> Result<PeriodResult> {
    PeriodEngine::default().prime_period(p)
}

pub fn prime_power_period(p: u64, e: u32) -> Result<PeriodResult> {
    PeriodEngine::default().prime_power_period(p, e)
}

/// h(m) for any `1 <= m <= 2^63 - 1`.
pub fn pisano_period(m: u64) -> Result<PeriodResult> {
    PeriodEngine::default().pisano_period(m)
}

pub fn lucas_period(m: u64) -> Result<PeriodResult> {
    PeriodEngine::default().lucas_period(m)
}
