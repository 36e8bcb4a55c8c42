//! Fibonacci and Lucas values modulo m, and the brute-force period oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::Modulus;

/// Default largest modulus the brute-force oracle will walk.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

/// Consecutive terms `(x_n mod m, x_{n+1} mod m)` of a sequence obeying
/// `x_{n+2} = x_{n+1} + x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResiduePair {
    pub lo: u64,
    pub hi: u64,
    pub modulus: u64,
}

impl ResiduePair {
    /// `(0, 1)` reduced modulo `m`.
    pub fn fibonacci_start(m: Modulus) -> Self {
        ResiduePair {
            lo: 0,
            hi: m.reduce(1),
            modulus: m.get(),
        }
    }

    /// `(2, 1)` reduced modulo `m`.
    pub fn lucas_start(m: Modulus) -> Self {
        ResiduePair {
            lo: m.reduce(2),
            hi: m.reduce(1),
            modulus: m.get(),
        }
    }

    /// The pair one index further along.
    pub fn step(self) -> Self {
        let m = Modulus::new(self.modulus).expect("pair carries a valid modulus");
        ResiduePair {
            lo: self.hi,
            hi: m.add(self.lo, self.hi),
            modulus: self.modulus,
        }
    }

    pub fn as_tuple(self) -> (u64, u64) {
        (self.lo, self.hi)
    }
}

/// How a period was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    PrimeDivisorSearch,
    PrimePowerLift,
    LcmComposition,
    /// Lucas period found among the divisors of the Fibonacci period.
    PeriodDivisorSearch,
    Theorem1Filter,
    Theorem2Filter,
    FibIndexLaw,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::PrimeDivisorSearch => "prime_divisor_search",
            Method::PrimePowerLift => "prime_power_lift",
            Method::LcmComposition => "lcm_composition",
            Method::PeriodDivisorSearch => "period_divisor_search",
            Method::Theorem1Filter => "theorem1_filter",
            Method::Theorem2Filter => "theorem2_filter",
            Method::FibIndexLaw => "fib_index_law",
        }
    }
}

/// A period together with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodResult {
    pub modulus: u64,
    pub period: u64,
    pub method: Method,
    /// Set when a prime-power lift had to correct the `p^(e-1) h(p)` candidate.
    #[serde(default)]
    pub lift_adjusted: bool,
}

impl PeriodResult {
    pub(crate) fn new(modulus: u64, period: u64, method: Method) -> Self {
        PeriodResult {
            modulus,
            period,
            method,
            lift_adjusted: false,
        }
    }
}

/// `(F_n mod m, F_{n+1} mod m)` by fast doubling.
///
/// Uses `F_2k = F_k (2 F_{k+1} - F_k)` and `F_{2k+1} = F_k^2 + F_{k+1}^2`,
/// scanning the bits of `n` from the top.
pub fn fib_pair(n: u64, m: u64) -> Result<ResiduePair> {
    Ok(fib_pair_in(n, Modulus::new(m)?))
}

pub(crate) fn fib_pair_in(n: u64, m: Modulus) -> ResiduePair {
    let (mut a, mut b) = (0u64, m.reduce(1));
    for bit in (0..64 - n.leading_zeros()).rev() {
        let c = m.mul(a, m.sub(m.add(b, b), a));
        let d = m.add(m.mul(a, a), m.mul(b, b));
        if (n >> bit) & 1 == 1 {
            (a, b) = (d, m.add(c, d));
        } else {
            (a, b) = (c, d);
        }
    }
    ResiduePair {
        lo: a,
        hi: b,
        modulus: m.get(),
    }
}

/// `(L_n mod m, L_{n+1} mod m)` with `L_0 = 2`, `L_1 = 1`.
pub fn lucas_pair(n: u64, m: u64) -> Result<ResiduePair> {
    Ok(lucas_pair_in(n, Modulus::new(m)?))
}

pub(crate) fn lucas_pair_in(n: u64, m: Modulus) -> ResiduePair {
    // L_n = 2 F_{n+1} - F_n and L_{n+1} = 2 F_n + F_{n+1}
    let f = fib_pair_in(n, m);
    ResiduePair {
        lo: m.sub(m.add(f.hi, f.hi), f.lo),
        hi: m.add(m.add(f.lo, f.lo), f.hi),
        modulus: m.get(),
    }
}

/// Walks the pair recurrence from `(0, 1)` until the pair comes back.
pub fn brute_period(m: u64) -> Result<PeriodResult> {
    brute_period_capped(m, DEFAULT_ORACLE_CAP)
}

pub fn brute_period_capped(m: u64, cap: u64) -> Result<PeriodResult> {
    let modulus = checked_oracle_modulus(m, cap)?;
    let period = walk_until_return(ResiduePair::fibonacci_start(modulus));
    Ok(PeriodResult::new(m, period, Method::BruteForce))
}

/// As [`brute_period`], starting from the Lucas pair `(2, 1)`.
pub fn lucas_brute_period(m: u64) -> Result<PeriodResult> {
    lucas_brute_period_capped(m, DEFAULT_ORACLE_CAP)
}

pub fn lucas_brute_period_capped(m: u64, cap: u64) -> Result<PeriodResult> {
    let modulus = checked_oracle_modulus(m, cap)?;
    let period = walk_until_return(ResiduePair::lucas_start(modulus));
    Ok(PeriodResult::new(m, period, Method::BruteForce))
}

fn checked_oracle_modulus(m: u64, cap: u64) -> Result<Modulus> {
    let modulus = Modulus::new(m)?;
    if m > cap {
        return Err(Error::OracleCapExceeded { modulus: m, cap });
    }
    Ok(modulus)
}

// The pair map is a bijection on a finite set, so every start lies on a cycle.
fn walk_until_return(start: ResiduePair) -> u64 {
    let m = start.modulus;
    let (mut lo, mut hi) = start.as_tuple();
    let mut steps = 0u64;
    loop {
        let next = lo + hi;
        (lo, hi) = (hi, if next >= m { next - m } else { next });
        steps += 1;
        if lo == start.lo && hi == start.hi {
            return steps;
        }
    }
}
