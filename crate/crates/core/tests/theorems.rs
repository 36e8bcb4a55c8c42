use pisano_core::fibmod::fib_pair;
use pisano_core::numth::is_prime;
use pisano_core::pisano::{pisano_period, prime_period};
use pisano_core::theorems::{
    fib_index_period, fibonacci_primitive_root, theorem1_period, theorem2_period, FilterReport,
};

fn split_primes(limit: u64) -> impl Iterator<Item = u64> {
    (7..=limit).filter(|&p| is_prime(p) && matches!(p % 5, 1 | 4))
}

#[test]
fn vieta_relations_for_split_primes() {
    for p in split_primes(10_000) {
        let r = fibonacci_primitive_root(p).unwrap();
        let [a, b] = r.roots[..] else {
            panic!("p = {p} should have two roots");
        };
        assert_eq!((a + b) % p, 1, "p = {p}");
        assert_eq!((a as u128 * b as u128 % p as u128) as u64, p - 1, "p = {p}");
    }
}

#[test]
fn fibonacci_primitive_root_forces_full_period() {
    let mut with_fpr = 0;
    for p in split_primes(10_000) {
        if fibonacci_primitive_root(p).unwrap().has_fpr {
            with_fpr += 1;
            assert_eq!(pisano_period(p).unwrap().period, p - 1, "p = {p}");
        }
    }
    assert!(with_fpr > 0);
}

fn check_report(r: &FilterReport) {
    assert!(r.true_period_is_divisor(), "p = {}", r.prime);
    assert_eq!(r.all_divisors.source, r.bound.bound);
    assert!(r.surviving.iter().all(|&d| r.all_divisors.contains(d)));
    assert_eq!(r.agrees, r.paper_answer == Some(r.true_period));
    // F_{h+1} = 1 whenever h is the period
    assert_eq!(fib_pair(r.true_period, r.prime).unwrap().hi, 1);
}

#[test]
fn filter_reports_are_internally_consistent() {
    for p in (3..=5_000u64).filter(|&p| is_prime(p) && p != 5) {
        let r = match p % 5 {
            1 | 4 => theorem2_period(p).unwrap(),
            _ => theorem1_period(p).unwrap(),
        };
        check_report(&r);
        assert_eq!(r.true_period, prime_period(p).unwrap().period);
    }
}

#[test]
fn index_law_up_to_sixty() {
    for m in 4..=60 {
        let o = fib_index_period(m).unwrap();
        assert!(
            o.matches(),
            "m = {m}: {} vs {}",
            o.computed.period,
            o.predicted
        );
    }
}

#[test]
fn index_law_up_to_domain_limit() {
    for m in 61..=92 {
        assert!(fib_index_period(m).unwrap().matches(), "m = {m}");
    }
}
