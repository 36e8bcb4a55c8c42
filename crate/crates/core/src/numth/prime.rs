use super::arith::Modulus;

pub(crate) const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

// Jim Sinclair's base set; deterministic for every n < 2^64.
const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Deterministic primality test for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }

    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    WITNESSES.iter().all(|&a| passes_round(n, a, d, s))
}

fn passes_round(n: u64, a: u64, d: u64, s: u32) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let neg_one = n - 1;
    let mut x = wide_pow(a, d, n);
    if x == 1 || x == neg_one {
        return true;
    }
    for _ in 1..s {
        x = wide_mul(x, x, n);
        if x == neg_one {
            return true;
        }
    }
    false
}

// `Modulus` stops at 2^63 - 1; primality has to cover all of u64.
#[inline]
pub(crate) fn wide_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn wide_pow(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if let Ok(m) = Modulus::new(n) {
        return m.pow(base, exp);
    }
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = wide_mul(acc, base, n);
        }
        base = wide_mul(base, base, n);
        exp >>= 1;
    }
    acc
}
