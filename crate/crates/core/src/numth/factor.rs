use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::arith::gcd;
use super::prime::{is_prime, wide_mul};
use crate::error::{Error, Result};

/// Seed used by [`factorize`]. The factorization itself never depends on
/// the seed; only the route the rho search takes does.
pub const DEFAULT_SEED: u64 = 0x5eed_f1b0_7a55_0001;

const TRIAL_LIMIT: u64 = 1 << 10;

/// Canonical prime factorization: primes strictly increasing, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u32)>", into = "Vec<(u64, u32)>")]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Validates and wraps `(prime, exponent)` pairs.
    pub fn from_pairs(factors: Vec<(u64, u32)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidFactorization("no factors"));
        }
        if factors.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidFactorization(
                "primes not strictly increasing",
            ));
        }
        if factors.iter().any(|&(_, e)| e == 0) {
            return Err(Error::InvalidFactorization("zero exponent"));
        }
        if let Some(&(p, _)) = factors.iter().find(|&&(p, _)| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        let f = Factorization { factors };
        f.checked_value()?;
        Ok(f)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The factored integer.
    pub fn value(&self) -> u64 {
        // validated at construction
        self.checked_value().expect("factorization overflows u64")
    }

    /// Number of divisors, `prod (e + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    fn checked_value(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(Error::Overflow("factorization value"))
        })
    }

    fn from_primes(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { factors }
    }
}

impl TryFrom<Vec<(u64, u32)>> for Factorization {
    type Error = Error;

    fn try_from(v: Vec<(u64, u32)>) -> Result<Self> {
        Factorization::from_pairs(v)
    }
}

impl From<Factorization> for Vec<(u64, u32)> {
    fn from(f: Factorization) -> Self {
        f.factors
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `n >= 2` with the default seed.
pub fn factorize(n: u64) -> Result<Factorization> {
    factorize_seeded(n, DEFAULT_SEED)
}

/// Trial division by small primes, then Pollard rho (Brent's variant) with
/// primality checks deciding when to stop splitting.
pub fn factorize_seeded(n: u64, seed: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::NoFactorization(n));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    while rest.is_multiple_of(2) {
        primes.push(2);
        rest /= 2;
    }
    let mut d = 3;
    while d < TRIAL_LIMIT && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += 2;
    }
    if rest > 1 {
        if rest < TRIAL_LIMIT * TRIAL_LIMIT {
            // no factor below TRIAL_LIMIT left, so rest is prime
            primes.push(rest);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            split_into(rest, &mut rng, &mut primes);
        }
    }
    Ok(Factorization::from_primes(primes))
}

fn split_into(n: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = exact_square_root(n) {
        split_into(r, rng, out);
        split_into(r, rng, out);
        return;
    }
    let d = loop {
        if let Some(d) = brent_rho(n, rng) {
            break d;
        }
    };
    split_into(d, rng, out);
    split_into(n / d, rng, out);
}

fn exact_square_root(n: u64) -> Option<u64> {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// One attempt at a nontrivial factor of the odd composite `n`.
fn brent_rho(n: u64, rng: &mut ChaCha8Rng) -> Option<u64> {
    const BATCH: u64 = 128;
    let c = rng.gen_range(1..n);
    let step = |x: u64| ((wide_mul(x, x, n) as u128 + c as u128) % n as u128) as u64;

    let mut y = rng.gen_range(0..n);
    let mut x = y;
    let mut ys = y;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;

    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = wide_mul(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }

    if g == n {
        // the batch overshot; replay one step at a time
        loop {
            ys = step(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// All divisors of a factored integer, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSet {
    pub source: u64,
    pub divisors: Vec<u64>,
}

impl DivisorSet {
    pub fn contains(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.divisors.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }
}

/// Enumerates divisors by exponent vectors.
pub fn divisors(f: &Factorization) -> DivisorSet {
    let mut divs = vec![1u64];
    for &(p, e) in f.factors() {
        let base_len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..base_len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    DivisorSet {
        source: f.value(),
        divisors: divs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(n: u64) -> Vec<(u64, u32)> {
        factorize(n).unwrap().factors().to_vec()
    }

    #[test]
    fn small_examples() {
        assert_eq!(pairs(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(pairs(64), vec![(2, 6)]);
        assert_eq!(pairs(2), vec![(2, 1)]);
        assert_eq!(pairs(97), vec![(97, 1)]);
    }

    #[test]
    fn fib_30_matches_trial_division() {
        // trial-division oracle
        let mut n = 832040u64;
        let mut expected = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                expected.push((d, e));
            }
            d += 1;
        }
        assert_eq!(expected, vec![(2, 3), (5, 1), (11, 1), (31, 1), (61, 1)]);
        assert_eq!(pairs(832040), expected);
    }

    #[test]
    fn hard_64_bit_inputs() {
        // semiprime of two ~32-bit primes
        assert_eq!(
            pairs(4294967291 * 4294967279),
            vec![(4294967279, 1), (4294967291, 1)]
        );
        // square of a large prime
        assert_eq!(pairs(4294967291 * 4294967291), vec![(4294967291, 2)]);
        assert_eq!(
            pairs(u64::MAX),
            vec![
                (3, 1),
                (5, 1),
                (17, 1),
                (257, 1),
                (641, 1),
                (65537, 1),
                (6700417, 1)
            ]
        );
        assert_eq!(pairs(18446744073709551557), vec![(18446744073709551557, 1)]);
    }

    #[test]
    fn seed_does_not_change_result() {
        let n = 1_000_000_007u64 * 998_244_353;
        let a = factorize_seeded(n, 1).unwrap();
        let b = factorize_seeded(n, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_below_two() {
        assert_eq!(factorize(0), Err(Error::NoFactorization(0)));
        assert_eq!(factorize(1), Err(Error::NoFactorization(1)));
    }

    #[test]
    fn from_pairs_validates() {
        assert!(Factorization::from_pairs(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(4, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 0)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 64)]).is_err());
        assert!(Factorization::from_pairs(vec![]).is_err());
    }

    #[test]
    fn divisor_examples() {
        let d = divisors(&factorize(12).unwrap());
        assert_eq!(d.divisors, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(d.source, 12);
        assert_eq!(divisors(&factorize(13).unwrap()).divisors, vec![1, 13]);
        assert_eq!(
            divisors(&factorize(16).unwrap()).divisors,
            vec![1, 2, 4, 8, 16]
        );
    }

    #[test]
    fn display() {
        assert_eq!(factorize(360).unwrap().to_string(), "2^3 * 3^2 * 5");
    }
}
