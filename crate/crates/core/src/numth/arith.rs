use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
///
/// Keeping moduli below 2^63 means the sum of two residues never overflows
/// a `u64`, and products fit in a `u128`.
pub const MAX_MODULUS: u64 = (1 << 63) - 1;

/// A validated modulus in `1..=MAX_MODULUS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        match m {
            0 => Err(Error::ZeroModulus),
            m if m > MAX_MODULUS => Err(Error::ModulusOutOfDomain(m)),
            m => Ok(Modulus(m)),
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, base: u64, mut exp: u64) -> u64 {
        let mut base = self.reduce(base);
        let mut acc = self.reduce(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Exact `(a * b) mod m` through a 128-bit intermediate.
pub fn mulmod(a: u64, b: u64, m: u64) -> Result<u64> {
    let m = Modulus::new(m)?;
    Ok(m.mul(m.reduce(a), m.reduce(b)))
}

/// `a^e mod m` by square-and-multiply; `a^0` is `1 mod m`.
pub fn powmod(a: u64, e: u64, m: u64) -> Result<u64> {
    Ok(Modulus::new(m)?.pow(a, e))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple; `lcm(a, 0) = 0`. Overflow is an error.
pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}
