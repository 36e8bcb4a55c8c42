use super::arith::Modulus;
use super::prime::is_prime;
use crate::error::{Error, Result};

/// Square roots of `a` modulo an odd prime `p` (Tonelli-Shanks).
///
/// Returns `Some((r, p - r))` with `r <= p - r` when `a` is a quadratic
/// residue, `Some((0, 0))` for `a = 0`, and `None` for a non-residue.
pub fn mod_sqrt(a: u64, p: u64) -> Result<Option<(u64, u64)>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if a >= p {
        return Err(Error::ResidueOutOfRange {
            value: a,
            modulus: p,
        });
    }
    if a == 0 {
        return Ok(Some((0, 0)));
    }
    let m = Modulus::new(p)?;
    if m.pow(a, (p - 1) / 2) != 1 {
        return Ok(None);
    }

    let r = if p % 4 == 3 {
        m.pow(a, (p + 1) / 4)
    } else {
        tonelli_shanks(a, m)
    };
    let other = p - r;
    Ok(Some((r.min(other), r.max(other))))
}

fn tonelli_shanks(a: u64, m: Modulus) -> u64 {
    let p = m.get();
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;

    let z = (2..p)
        .find(|&z| m.pow(z, (p - 1) / 2) == p - 1)
        .expect("odd prime has a non-residue");

    let mut c = m.pow(z, q);
    let mut x = m.pow(a, q.div_ceil(2));
    let mut t = m.pow(a, q);
    let mut k = s;

    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = m.mul(t2, t2);
            i += 1;
        }
        let mut b = c;
        for _ in 0..k - i - 1 {
            b = m.mul(b, b);
        }
        x = m.mul(x, b);
        c = m.mul(b, b);
        t = m.mul(t, c);
        k = i;
    }
    x
}
