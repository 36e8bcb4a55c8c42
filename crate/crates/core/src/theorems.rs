//! Divisor filters for h(p), Fibonacci primitive roots, and the period of
//! the Fibonacci numbers themselves.
//!
//! The filters are diagnostics. They report what the filtered divisor
//! search answers next to the true period and never assert agreement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibmod::{fib_pair_in, Method, PeriodResult};
use crate::numth::{
    divisors, factorize, is_prime, mod_sqrt, multiplicative_order, DivisorSet, Modulus,
};
use crate::pisano::{
    class_of_prime, period_bound, pisano_period, prime_period, PeriodBound, PrimeClass,
};

/// Which divisor filter produced a [`FilterReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    /// Irreducible primes, divisors of 2p + 2.
    Theorem1,
    /// Split primes, divisors of p - 1.
    Theorem2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub prime: u64,
    pub filter: Filter,
    pub bound: PeriodBound,
    pub all_divisors: DivisorSet,
    pub surviving: Vec<u64>,
    /// Least surviving d with F_{d+1} = 1 (mod p).
    pub paper_answer: Option<u64>,
    pub true_period: u64,
    pub agrees: bool,
}

impl FilterReport {
    pub fn true_period_is_divisor(&self) -> bool {
        self.all_divisors.contains(self.true_period)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FprResult {
    pub prime: u64,
    /// Solutions of g^2 = g + 1 (mod p): two for split primes, one for p = 5.
    pub roots: Vec<u64>,
    pub primitive_roots_among_them: Vec<u64>,
    /// Multiplicative order of each entry of `roots`.
    pub orders: Vec<u64>,
    pub has_fpr: bool,
}

fn require_class(p: u64, expected: PrimeClass) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let actual = class_of_prime(p);
    if actual != expected {
        return Err(Error::WrongClass {
            prime: p,
            actual: actual.as_str(),
            expected: expected.as_str(),
        });
    }
    Ok(())
}

fn bound_divisors(p: u64) -> Result<(PeriodBound, DivisorSet)> {
    let bound = period_bound(p)?;
    Ok((bound, divisors(&factorize(bound.bound)?)))
}

/// Divisors d of 2p + 2 with d ∤ p(p+1)/2, d ∤ p + 1 and d ∤ 3(p - 1).
pub fn theorem1_candidates(p: u64) -> Result<Vec<u64>> {
    require_class(p, PrimeClass::Irreducible)?;
    let (_, all) = bound_divisors(p)?;
    Ok(theorem1_survivors(p, &all))
}

fn theorem1_survivors(p: u64, all: &DivisorSet) -> Vec<u64> {
    let p = p as u128;
    let half_p_p1 = p * (p + 1) / 2;
    let three_pm1 = 3 * (p - 1);
    all.iter()
        .filter(|&d| {
            let d = d as u128;
            !half_p_p1.is_multiple_of(d)
                && !(p + 1).is_multiple_of(d)
                && !three_pm1.is_multiple_of(d)
        })
        .collect()
}

/// Even divisors d of p - 1 with d ∤ p + 1.
pub fn theorem2_candidates(p: u64) -> Result<Vec<u64>> {
    require_class(p, PrimeClass::Split)?;
    let (_, all) = bound_divisors(p)?;
    Ok(theorem2_survivors(p, &all))
}

fn theorem2_survivors(p: u64, all: &DivisorSet) -> Vec<u64> {
    all.iter()
        .filter(|&d| d % 2 == 0 && !(p as u128 + 1).is_multiple_of(d as u128))
        .collect()
}

pub fn theorem1_period(p: u64) -> Result<FilterReport> {
    require_class(p, PrimeClass::Irreducible)?;
    let (bound, all) = bound_divisors(p)?;
    let surviving = theorem1_survivors(p, &all);
    report(p, Filter::Theorem1, bound, all, surviving)
}

pub fn theorem2_period(p: u64) -> Result<FilterReport> {
    require_class(p, PrimeClass::Split)?;
    let (bound, all) = bound_divisors(p)?;
    let surviving = theorem2_survivors(p, &all);
    report(p, Filter::Theorem2, bound, all, surviving)
}

fn report(
    p: u64,
    filter: Filter,
    bound: PeriodBound,
    all_divisors: DivisorSet,
    surviving: Vec<u64>,
) -> Result<FilterReport> {
    let m = Modulus::new(p)?;
    let paper_answer = surviving
        .iter()
        .copied()
        .find(|&d| fib_pair_in(d, m).hi == 1);
    let true_period = prime_period(p)?.period;
    Ok(FilterReport {
        prime: p,
        filter,
        bound,
        all_divisors,
        surviving,
        paper_answer,
        true_period,
        agrees: paper_answer == Some(true_period),
    })
}

/// Roots of g^2 = g + 1 modulo p and whether any of them generates (Z/p)^*.
pub fn fibonacci_primitive_root(p: u64) -> Result<FprResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let class = class_of_prime(p);
    if !matches!(class, PrimeClass::Split | PrimeClass::SpecialFive) {
        return Err(Error::WrongClass {
            prime: p,
            actual: class.as_str(),
            expected: "split or special_five",
        });
    }
    let m = Modulus::new(p)?;
    let inv2 = p.div_ceil(2);
    let (s1, s2) = mod_sqrt(5 % p, p)?.expect("5 is a square modulo a split prime or 5");

    let mut roots = vec![m.mul(m.add(1, s1), inv2)];
    if s1 != s2 {
        roots.push(m.mul(m.add(1, s2), inv2));
    }

    let fact = factorize(p - 1)?;
    let orders = roots
        .iter()
        .map(|&g| multiplicative_order(g, p, &fact))
        .collect::<Result<Vec<_>>>()?;
    let primitive: Vec<u64> = roots
        .iter()
        .zip(&orders)
        .filter(|&(_, &o)| o == p - 1)
        .map(|(&g, _)| g)
        .collect();

    Ok(FprResult {
        prime: p,
        roots,
        has_fpr: !primitive.is_empty(),
        primitive_roots_among_them: primitive,
        orders,
    })
}

/// Largest index whose Fibonacci number is still a valid modulus.
pub const MAX_FIB_INDEX: u64 = 92;

/// Exact F_n for `n <= 93`.
pub fn fibonacci_exact(n: u64) -> Option<u64> {
    let (mut a, mut b) = (0u64, Some(1u64));
    for _ in 0..n {
        let next = b.and_then(|b| a.checked_add(b));
        a = b?;
        b = next;
    }
    Some(a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibIndexOutcome {
    pub index: u64,
    pub fib_value: u64,
    pub computed: PeriodResult,
    /// 2m for even m, 4m for odd m.
    pub predicted: u64,
}

impl FibIndexOutcome {
    pub fn matches(&self) -> bool {
        self.computed.period == self.predicted
    }
}

/// h(F_m) by factorization and composition, next to its predicted value.
pub fn fib_index_period(index: u64) -> Result<FibIndexOutcome> {
    if !(4..=MAX_FIB_INDEX).contains(&index) {
        return Err(Error::IndexOutOfRange(index));
    }
    let fib_value = fibonacci_exact(index).ok_or(Error::Overflow("Fibonacci number"))?;
    let mut computed = pisano_period(fib_value)?;
    computed.method = Method::FibIndexLaw;
    let predicted = if index.is_multiple_of(2) {
        2 * index
    } else {
        4 * index
    };
    Ok(FibIndexOutcome {
        index,
        fib_value,
        computed,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibmod::brute_period;

    #[test]
    fn theorem1_candidate_examples() {
        assert_eq!(theorem1_candidates(7), Ok(vec![16]));
        assert_eq!(theorem1_candidates(3), Ok(vec![8]));
        // divisors of 28 = {1,2,4,7,14,28}; 1,7 | 91, 2,14 | 14, 4 | 36
        assert_eq!(theorem1_candidates(13), Ok(vec![28]));
        assert_eq!(brute_period(13).unwrap().period, 28);
    }

    #[test]
    fn theorem1_class_errors() {
        assert!(matches!(
            theorem1_candidates(11),
            Err(Error::WrongClass { .. })
        ));
        assert!(matches!(
            theorem1_candidates(2),
            Err(Error::WrongClass { .. })
        ));
        assert!(matches!(
            theorem1_candidates(5),
            Err(Error::WrongClass { .. })
        ));
        assert_eq!(theorem1_candidates(21), Err(Error::NotPrime(21)));
    }

    #[test]
    fn theorem1_reports() {
        let r = theorem1_period(7).unwrap();
        assert_eq!(
            (r.paper_answer, r.true_period, r.agrees),
            (Some(16), 16, true)
        );
        let r = theorem1_period(3).unwrap();
        assert_eq!(
            (r.paper_answer, r.true_period, r.agrees),
            (Some(8), 8, true)
        );
        let r = theorem1_period(47).unwrap();
        assert_eq!(r.true_period, 32);
        assert_eq!(r.bound.bound, 96);
        assert!(r.true_period_is_divisor());
        assert_eq!(r.filter, Filter::Theorem1);
    }

    #[test]
    fn theorem2_candidate_examples() {
        assert_eq!(theorem2_candidates(11), Ok(vec![10]));
        assert_eq!(theorem2_candidates(29), Ok(vec![4, 14, 28]));
        assert_eq!(theorem2_candidates(31), Ok(vec![6, 10, 30]));
        assert!(matches!(
            theorem2_candidates(7),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn theorem2_reports() {
        let r = theorem2_period(11).unwrap();
        assert_eq!(
            (r.paper_answer, r.true_period, r.agrees),
            (Some(10), 10, true)
        );
        // F_5 = 5, so 4 fails; F_15 = 610 = 21 * 29 + 1
        assert_eq!(fibonacci_exact(15), Some(610));
        let r = theorem2_period(29).unwrap();
        assert_eq!(
            (r.paper_answer, r.true_period, r.agrees),
            (Some(14), 14, true)
        );
        let r = theorem2_period(101).unwrap();
        assert_eq!(r.true_period, brute_period(101).unwrap().period);
        assert_eq!(r.true_period, 50);
    }

    #[test]
    fn fpr_examples() {
        let r = fibonacci_primitive_root(11).unwrap();
        assert_eq!(r.roots, vec![8, 4]);
        assert_eq!(r.orders, vec![10, 5]);
        assert_eq!(r.primitive_roots_among_them, vec![8]);
        assert!(r.has_fpr);

        let r = fibonacci_primitive_root(5).unwrap();
        assert_eq!(r.roots, vec![3]);

        let r = fibonacci_primitive_root(29).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(!r.has_fpr);

        assert!(matches!(
            fibonacci_primitive_root(7),
            Err(Error::WrongClass { .. })
        ));
        assert!(matches!(
            fibonacci_primitive_root(2),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn fpr_roots_satisfy_the_polynomial() {
        for p in (2..2000u64).filter(|&p| is_prime(p) && p % 5 != 2 && p % 5 != 3 && p != 2) {
            let r = fibonacci_primitive_root(p).unwrap();
            for &g in &r.roots {
                assert_eq!(g * g % p, (g + 1) % p, "p = {p}");
            }
        }
    }

    #[test]
    fn fib_index_examples() {
        for (m, fm, h) in [(6, 8, 12), (5, 5, 20), (10, 55, 20)] {
            let o = fib_index_period(m).unwrap();
            assert_eq!(o.fib_value, fm);
            assert_eq!(o.computed.period, h);
            assert_eq!(o.predicted, h);
            assert!(o.matches());
            assert_eq!(o.computed.method, Method::FibIndexLaw);
        }
        assert_eq!(fib_index_period(3), Err(Error::IndexOutOfRange(3)));
        assert_eq!(fib_index_period(93), Err(Error::IndexOutOfRange(93)));
        assert_eq!(fib_index_period(92).unwrap().predicted, 184);
    }

    #[test]
    fn fibonacci_exact_limits() {
        assert_eq!(fibonacci_exact(0), Some(0));
        assert_eq!(fibonacci_exact(92), Some(7540113804746346429));
        assert!(fibonacci_exact(92).unwrap() <= crate::numth::MAX_MODULUS);
        assert!(fibonacci_exact(93).unwrap() > crate::numth::MAX_MODULUS);
        assert_eq!(fibonacci_exact(94), None);
    }
}
