use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fibmod::Method;
use crate::numth::gcd;
use crate::pisano::PrimeClass;
use crate::theorems::FilterReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    /// period = 6m
    RatioSix,
    /// ratio strictly above every earlier m in the scan
    NewMaximum,
    FilterDisagreement,
    LiftGuardTriggered,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::RatioSix => "ratio_six",
            Flag::NewMaximum => "new_maximum",
            Flag::FilterDisagreement => "filter_disagreement",
            Flag::LiftGuardTriggered => "lift_guard_triggered",
        }
    }
}

/// One row of a scan. The ratio is kept as the exact pair (period, m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub m: u64,
    pub period: u64,
    pub ratio_num: u64,
    pub ratio_den: u64,
    pub method: Method,
    #[serde(skip)]
    pub class_summary: Vec<PrimeClass>,
    pub flags: Vec<Flag>,
}

impl ScanRecord {
    pub fn new(m: u64, period: u64, method: Method, class_summary: Vec<PrimeClass>) -> Self {
        ScanRecord {
            m,
            period,
            ratio_num: period,
            ratio_den: m,
            method,
            class_summary,
            flags: Vec::new(),
        }
    }

    pub fn ratio(&self) -> Ratio {
        Ratio::new(self.ratio_num, self.ratio_den)
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn set_flag(&mut self, flag: Flag) {
        if let Err(i) = self.flags.binary_search(&flag) {
            self.flags.insert(i, flag);
        }
    }

    pub fn flags_joined(&self) -> String {
        self.flags
            .iter()
            .map(|f| f.as_str())
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Exact non-negative rational, compared by cross-multiplication.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "ratio with zero denominator");
        Ratio { num, den }
    }

    pub fn reduced(self) -> Self {
        let g = gcd(self.num, self.den).max(1);
        Ratio {
            num: self.num / g,
            den: self.den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den == 1 {
            write!(f, "{}", r.num)
        } else {
            write!(f, "{}/{} ({:.6})", r.num, r.den, r.to_f64())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Ratio,
    Irreducible,
    Lucas,
    Filters,
    Wall,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Ratio,
        Suite::Irreducible,
        Suite::Lucas,
        Suite::Filters,
        Suite::Wall,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Ratio => "ratio",
            Suite::Irreducible => "irreducible",
            Suite::Lucas => "lucas",
            Suite::Filters => "filters",
            Suite::Wall => "wall",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Agreement counts for one divisor filter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementTally {
    pub agree: u64,
    pub total: u64,
}

/// How the Fibonacci-primitive-root test lines up with h(p) = p - 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FprTally {
    pub split_primes: u64,
    pub with_fpr: u64,
    /// has an FPR and h(p) = p - 1
    pub with_fpr_full_period: u64,
    pub full_period: u64,
    /// h(p) = p - 1 but neither root is primitive
    pub full_period_without_fpr: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub suite: Suite,
    pub limit: u64,
    pub records: u64,
    pub max_ratio: Option<Ratio>,
    pub max_ratio_at: Vec<u64>,
    /// m attaining the extremal ratio the suite checks (6 for Fibonacci,
    /// 4 for Lucas); empty for other suites.
    pub equality_set: Vec<u64>,
    pub expected_equality_set: Vec<u64>,
    pub theorem1: AgreementTally,
    pub theorem2: AgreementTally,
    pub fpr: FprTally,
    pub disagreements: Vec<FilterReport>,
    pub violations: Vec<String>,
}

impl ScanSummary {
    pub(crate) fn new(suite: Suite, limit: u64) -> Self {
        ScanSummary {
            suite,
            limit,
            records: 0,
            max_ratio: None,
            max_ratio_at: Vec::new(),
            equality_set: Vec::new(),
            expected_equality_set: Vec::new(),
            theorem1: AgreementTally::default(),
            theorem2: AgreementTally::default(),
            fpr: FprTally::default(),
            disagreements: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn observe_ratio(&mut self, m: u64, ratio: Ratio) {
        match self.max_ratio {
            Some(best) if ratio < best => {}
            Some(best) if ratio == best => self.max_ratio_at.push(m),
            _ => {
                self.max_ratio = Some(ratio);
                self.max_ratio_at = vec![m];
            }
        }
    }
}

fn braces(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} scan: limit {}, {} records",
            self.suite, self.limit, self.records
        )?;
        if let Some(r) = self.max_ratio {
            write!(f, ", max ratio {} at {}", r, braces(&self.max_ratio_at))?;
        }
        if matches!(self.suite, Suite::Ratio | Suite::Lucas) {
            write!(f, ", equality set {}", braces(&self.equality_set))?;
        }
        if self.suite == Suite::Filters {
            let agree = self.theorem1.agree + self.theorem2.agree;
            let total = self.theorem1.total + self.theorem2.total;
            let rate = if total == 0 {
                0.0
            } else {
                100.0 * agree as f64 / total as f64
            };
            write!(
                f,
                ", agreement {agree}/{total} ({rate:.2}%) [theorem1 {}/{}, theorem2 {}/{}], \
                 fpr {} primes with h = p - 1 among {} with an FPR",
                self.theorem1.agree,
                self.theorem1.total,
                self.theorem2.agree,
                self.theorem2.total,
                self.fpr.with_fpr_full_period,
                self.fpr.with_fpr,
            )?;
            if !self.disagreements.is_empty() {
                let primes: Vec<u64> = self.disagreements.iter().map(|r| r.prime).collect();
                write!(f, ", disagreements at {}", braces(&primes))?;
            }
        }
        if self.passed() {
            write!(f, ": PASS")
        } else {
            write!(f, ": FAIL ({} violations)", self.violations.len())?;
            for v in self.violations.iter().take(20) {
                write!(f, "\n  {v}")?;
            }
            Ok(())
        }
    }
}
