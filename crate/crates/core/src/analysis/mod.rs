//! Range scans over m that check the global period claims and emit
//! CSV/JSON reports.
//!
//! Work is spread over the current rayon pool; results are merged in
//! ascending order before anything reaches a sink, so reports do not depend
//! on the thread count.

mod record;
mod report;

pub use record::{AgreementTally, Flag, FprTally, Ratio, ScanRecord, ScanSummary, Suite};
pub use report::{CsvSink, JsonSink, NullSink, ReportSink, VecSink};

use rayon::prelude::*;
use thiserror::Error;

use crate::error::Error;
use crate::numth::is_prime;
use crate::pisano::{class_of_prime, PeriodEngine, PrimeClass};
use crate::theorems::{
    fibonacci_primitive_root, theorem1_period, theorem2_period, Filter, FilterReport,
};

/// Largest limit accepted by [`Scanner::lucas_ratio_scan`].
pub const LUCAS_SCAN_CAP: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("report I/O failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV encoding failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON encoding failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{suite} scan limit {limit} is above its cap {cap}")]
    LimitTooLarge { suite: Suite, limit: u64, cap: u64 },
}

/// Runs the scans with a given [`PeriodEngine`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Scanner {
    pub engine: PeriodEngine,
}

impl Scanner {
    pub fn new(engine: PeriodEngine) -> Self {
        Scanner { engine }
    }

    pub fn run(
        &self,
        suite: Suite,
        limit: u64,
        sink: &mut dyn ReportSink,
    ) -> Result<ScanSummary, ScanError> {
        match suite {
            Suite::Ratio => self.ratio_scan(limit, sink),
            Suite::Irreducible => self.irreducible_product_scan(limit, sink),
            Suite::Lucas => self.lucas_ratio_scan(limit, sink),
            Suite::Filters => self.filter_agreement_scan(limit, sink),
            Suite::Wall => self.wall_property_scan(limit, sink),
        }
    }

    fn fibonacci_record(&self, m: u64) -> Result<ScanRecord, Error> {
        let b = self.engine.pisano_breakdown(m)?;
        let mut record = ScanRecord::new(m, b.result.period, b.result.method, b.classes());
        if b.result.lift_adjusted {
            record.set_flag(Flag::LiftGuardTriggered);
        }
        if b.result.period as u128 == 6 * m as u128 {
            record.set_flag(Flag::RatioSix);
        }
        Ok(record)
    }

    fn fibonacci_records(&self, ms: &[u64]) -> Result<Vec<ScanRecord>, Error> {
        ms.par_iter().map(|&m| self.fibonacci_record(m)).collect()
    }

    /// h(m) for every `1 <= m <= limit`; checks h(m) <= 6m and that equality
    /// holds exactly at m = 2 * 5^n.
    pub fn ratio_scan(
        &self,
        limit: u64,
        sink: &mut dyn ReportSink,
    ) -> Result<ScanSummary, ScanError> {
        let mut summary = ScanSummary::new(Suite::Ratio, limit);
        let ms: Vec<u64> = (1..=limit).collect();
        let mut records = self.fibonacci_records(&ms)?;

        for r in &mut records {
            check_bound(&mut summary, r, 6, "h(m) <= 6m");
            if r.has_flag(Flag::RatioSix) {
                summary.equality_set.push(r.m);
            }
        }
        summary.expected_equality_set = two_times_powers_of_five(limit);
        if summary.equality_set != summary.expected_equality_set {
            summary.violations.push(format!(
                "equality set {:?} differs from 2*5^n set {:?}",
                summary.equality_set, summary.expected_equality_set
            ));
        }
        emit_records(&mut summary, &mut records, sink)?;
        Ok(summary)
    }

    /// Every m <= limit built only from odd irreducible primes satisfies
    /// h(m) < 4m.
    pub fn irreducible_product_scan(
        &self,
        limit: u64,
        sink: &mut dyn ReportSink,
    ) -> Result<ScanSummary, ScanError> {
        let mut summary = ScanSummary::new(Suite::Irreducible, limit);
        let ms: Vec<u64> = (2..=limit)
            .into_par_iter()
            .map(|m| {
                let f = self.engine.factorize(m)?;
                let qualifies = f
                    .primes()
                    .all(|p| class_of_prime(p) == PrimeClass::Irreducible);
                Ok(qualifies.then_some(m))
            })
            .collect::<Result<Vec<Option<u64>>, Error>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut records = self.fibonacci_records(&ms)?;
        for r in &records {
            if r.period as u128 >= 4 * r.m as u128 {
                summary
                    .violations
                    .push(format!("m = {}: h(m) = {} is not below 4m", r.m, r.period));
            }
        }
        emit_records(&mut summary, &mut records, sink)?;
        Ok(summary)
    }

    /// Lucas periods for `1 <= m <= limit`; the ratio never exceeds 4 and
    /// reaches it only at m = 6.
    pub fn lucas_ratio_scan(
        &self,
        limit: u64,
        sink: &mut dyn ReportSink,
    ) -> Result<ScanSummary, ScanError> {
        if limit > LUCAS_SCAN_CAP {
            return Err(ScanError::LimitTooLarge {
                suite: Suite::Lucas,
                limit,
                cap: LUCAS_SCAN_CAP,
            });
        }
        let mut summary = ScanSummary::new(Suite::Lucas, limit);
        let mut records = (1..=limit)
            .into_par_iter()
            .map(|m| {
                let r = self.engine.lucas_period(m)?;
                let mut rec = ScanRecord::new(m, r.period, r.method, Vec::new());
                if r.lift_adjusted {
                    rec.set_flag(Flag::LiftGuardTriggered);
                }
                Ok(rec)
            })
            .collect::<Result<Vec<_>, Error>>()?;

        for r in &records {
            check_bound(&mut summary, r, 4, "lucas h(m) <= 4m");
            if r.period as u128 == 4 * r.m as u128 {
                summary.equality_set.push(r.m);
            }
        }
        summary.expected_equality_set = if limit >= 6 { vec![6] } else { Vec::new() };
        if summary.equality_set != summary.expected_equality_set {
            summary.violations.push(format!(
                "lucas ratio-4 set {:?} differs from {:?}",
                summary.equality_set, summary.expected_equality_set
            ));
        }
        emit_records(&mut summary, &mut records, sink)?;
        Ok(summary)
    }

    /// Runs both divisor filters on every applicable prime `<= prime_limit`.
    ///
    /// Filter disagreements are tallied and listed, not treated as
    /// failures. A true period outside the bound's divisors, or a split
    /// prime with a Fibonacci primitive root but h(p) != p - 1, is a
    /// violation.
    pub fn filter_agreement_scan(
        &self,
        prime_limit: u64,
        sink: &mut dyn ReportSink,
    ) -> Result<ScanSummary, ScanError> {
        let mut summary = ScanSummary::new(Suite::Filters, prime_limit);
        let primes: Vec<u64> = (3..=prime_limit)
            .filter(|&p| p != 5 && is_prime(p))
            .collect();

        let rows = primes
            .par_iter()
            .map(|&p| -> Result<(FilterReport, Option<bool>), Error> {
                match class_of_prime(p) {
                    PrimeClass::Irreducible => Ok((theorem1_period(p)?, None)),
                    _ => Ok((
                        theorem2_period(p)?,
                        Some(fibonacci_primitive_root(p)?.has_fpr),
                    )),
                }
            })
            .collect::<Result<Vec<_>, Error>>()?;

        for (report, has_fpr) in &rows {
            let tally = match report.filter {
                Filter::Theorem1 => &mut summary.theorem1,
                Filter::Theorem2 => &mut summary.theorem2,
            };
            tally.total += 1;
            if report.agrees {
                tally.agree += 1;
            } else {
                summary.disagreements.push(report.clone());
            }
            if !report.true_period_is_divisor() {
                summary.violations.push(format!(
                    "p = {}: h(p) = {} does not divide {}",
                    report.prime, report.true_period, report.bound.bound
                ));
            }
            if let Some(has_fpr) = *has_fpr {
                let full = report.true_period == report.prime - 1;
                let fpr = &mut summary.fpr;
                fpr.split_primes += 1;
                fpr.with_fpr += has_fpr as u64;
                fpr.full_period += full as u64;
                fpr.with_fpr_full_period += (has_fpr && full) as u64;
                fpr.full_period_without_fpr += (full && !has_fpr) as u64;
                if has_fpr && !full {
                    summary.violations.push(format!(
                        "p = {}: Fibonacci primitive root exists but h(p) = {}",
                        report.prime, report.true_period
                    ));
                }
            }
            sink.filter_report(report)?;
            summary.records += 1;
        }
        sink.finish()?;
        Ok(summary)
    }

    /// h(m) is even for m > 2, and h(n) | h(m) whenever n | m.
    pub fn wall_property_scan(
        &self,
        limit: u64,
        sink: &mut dyn ReportSink,
    ) -> Result<ScanSummary, ScanError> {
        let mut summary = ScanSummary::new(Suite::Wall, limit);
        let ms: Vec<u64> = (1..=limit).collect();
        let mut records = self.fibonacci_records(&ms)?;

        for r in records.iter().filter(|r| r.m > 2) {
            if r.period % 2 != 0 {
                summary
                    .violations
                    .push(format!("m = {}: h(m) = {} is odd", r.m, r.period));
            }
        }
        // records[i] holds m = i + 1
        for n in 1..=limit as usize {
            let hn = records[n - 1].period;
            for m in (2 * n..=limit as usize).step_by(n) {
                let hm = records[m - 1].period;
                if hm % hn != 0 {
                    summary.violations.push(format!(
                        "{n} | {m} but h({n}) = {hn} does not divide h({m}) = {hm}"
                    ));
                }
            }
        }
        emit_records(&mut summary, &mut records, sink)?;
        Ok(summary)
    }
}

fn check_bound(summary: &mut ScanSummary, r: &ScanRecord, factor: u128, what: &str) {
    if r.period as u128 > factor * r.m as u128 {
        summary
            .violations
            .push(format!("m = {}: period {} breaks {what}", r.m, r.period));
    }
}

// Marks running maxima, updates the summary and hands records to the sink in order.
fn emit_records(
    summary: &mut ScanSummary,
    records: &mut [ScanRecord],
    sink: &mut dyn ReportSink,
) -> Result<(), ScanError> {
    for r in records.iter_mut() {
        let ratio = r.ratio();
        if summary.max_ratio.is_none_or(|best| ratio > best) {
            r.set_flag(Flag::NewMaximum);
        }
        summary.observe_ratio(r.m, ratio);
        sink.record(r)?;
        summary.records += 1;
    }
    sink.finish()?;
    Ok(())
}

/// `{2 * 5^n : n >= 1, 2 * 5^n <= limit}`
pub fn two_times_powers_of_five(limit: u64) -> Vec<u64> {
    std::iter::successors(Some(10u64), |&x| x.checked_mul(5))
        .take_while(|&x| x <= limit)
        .collect()
}

pub fn ratio_scan(limit: u64, sink: &mut dyn ReportSink) -> Result<ScanSummary, ScanError> {
    Scanner::default().ratio_scan(limit, sink)
}

pub fn irreducible_product_scan(
    limit: u64,
    sink: &mut dyn ReportSink,
) -> Result<ScanSummary, ScanError> {
    Scanner::default().irreducible_product_scan(limit, sink)
}

pub fn lucas_ratio_scan(limit: u64, sink: &mut dyn ReportSink) -> Result<ScanSummary, ScanError> {
    Scanner::default().lucas_ratio_scan(limit, sink)
}

pub fn filter_agreement_scan(
    prime_limit: u64,
    sink: &mut dyn ReportSink,
) -> Result<ScanSummary, ScanError> {
    Scanner::default().filter_agreement_scan(prime_limit, sink)
}

pub fn wall_property_scan(limit: u64, sink: &mut dyn ReportSink) -> Result<ScanSummary, ScanError> {
    Scanner::default().wall_property_scan(limit, sink)
}
