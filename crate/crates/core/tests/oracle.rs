//! Fast paths checked against the brute-force pair walk.

use pisano_core::fibmod::{brute_period, fib_pair, lucas_brute_period};
use pisano_core::numth::{divisors, factorize, is_prime};
use pisano_core::pisano::{
    lucas_period, pisano_period, prime_period, prime_power_period, PeriodEngine,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn proper_divisors(n: u64) -> Vec<u64> {
    if n == 1 {
        return Vec::new();
    }
    let mut d = divisors(&factorize(n).unwrap()).divisors;
    d.pop();
    d
}

#[test]
fn brute_period_is_minimal_return_time() {
    for m in 2..=10_000u64 {
        let h = brute_period(m).unwrap().period;
        assert_eq!(fib_pair(h, m).unwrap().as_tuple(), (0, 1), "m = {m}");
        for d in proper_divisors(h) {
            assert_ne!(
                fib_pair(d, m).unwrap().as_tuple(),
                (0, 1),
                "m = {m}, d = {d}"
            );
        }
    }
}

#[test]
fn pisano_matches_brute_on_random_moduli_up_to_a_million() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let m = rng.gen_range(1..=1_000_000u64);
        assert_eq!(
            pisano_period(m).unwrap().period,
            brute_period(m).unwrap().period,
            "m = {m}"
        );
    }
}

#[test]
fn period_minus_one_term_squares_to_one() {
    for m in 3..=5_000u64 {
        let h = brute_period(m).unwrap().period;
        let f = fib_pair(h - 1, m).unwrap().lo as u128;
        assert_eq!(f * f % m as u128, 1, "m = {m}");
    }
}

#[test]
fn lift_of_exponent_one_is_the_prime_period() {
    for p in (2..=10_000u64).filter(|&p| is_prime(p)) {
        assert_eq!(prime_power_period(p, 1).unwrap(), prime_period(p).unwrap());
    }
}

#[test]
fn prime_power_lift_matches_brute_force() {
    for p in (2..=300u64).filter(|&p| is_prime(p)) {
        let mut e = 1;
        while p.pow(e) <= 200_000 {
            let r = prime_power_period(p, e).unwrap();
            assert_eq!(r.period, brute_period(p.pow(e)).unwrap().period, "{p}^{e}");
            assert!(!r.lift_adjusted);
            e += 1;
        }
    }
}

#[test]
fn lucas_period_divides_and_matches_oracle() {
    for m in 1..=10_000u64 {
        let l = lucas_period(m).unwrap().period;
        let h = pisano_period(m).unwrap().period;
        assert_eq!(h % l, 0, "m = {m}");
        if m <= 3_000 {
            assert_eq!(l, lucas_brute_period(m).unwrap().period, "m = {m}");
        }
    }
}

#[test]
fn parity_and_divisor_monotonicity() {
    let h: Vec<u64> = (0..=5_000u64)
        .map(|m| {
            if m == 0 {
                0
            } else {
                pisano_period(m).unwrap().period
            }
        })
        .collect();
    assert_eq!(h[2], 3);
    for (m, &hm) in h.iter().enumerate().skip(3) {
        assert_eq!(hm % 2, 0, "m = {m}");
    }
    for n in 1..=5_000usize {
        for m in (n..=5_000).step_by(n) {
            assert_eq!(h[m] % h[n], 0, "h({n}) | h({m})");
        }
    }
}

#[test]
fn theorem_bounds_hold_for_primes_below_100k() {
    for p in (7..=100_000u64).filter(|&p| is_prime(p)) {
        let h = prime_period(p).unwrap().period;
        match p % 5 {
            1 | 4 => assert_eq!((p - 1) % h, 0, "p = {p}"),
            _ => assert_eq!((2 * p + 2) % h, 0, "p = {p}"),
        }
    }
}

#[test]
fn seed_never_changes_a_period() {
    let a = PeriodEngine::new(1, 0);
    let b = PeriodEngine::new(2, 0);
    for m in [
        1u64,
        832040,
        1_000_000_007 * 1_000_000_009,
        999_999_999_999_999_989,
        4_000_000_000_000_000_000,
    ] {
        assert_eq!(
            a.pisano_period(m).unwrap(),
            b.pisano_period(m).unwrap(),
            "m = {m}"
        );
    }
}
