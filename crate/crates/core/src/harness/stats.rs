use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::TrialRecord;

/// Nearest-rank percentile of an ascending slice: the smallest value with at
/// least `q` percent of the samples at or below it.
pub fn nearest_rank<T: Copy>(sorted: &[T], q: f64) -> Option<T> {
    if sorted.is_empty() {
        return None;
    }
    let n = sorted.len();
    let rank = ((q / 100.0) * n as f64).ceil() as usize;
    Some(sorted[rank.clamp(1, n) - 1])
}

/// Aggregate statistics of one trial batch. Cycle figures are integers from
/// the records; nanosecond figures are the same values times the clock period.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub trials: u64,
    pub mean_cycles: f64,
    pub p50_cycles: u64,
    pub p97_cycles: u64,
    pub p9999_cycles: u64,
    pub max_cycles: u64,
    pub mean_ns: f64,
    pub p50_ns: f64,
    pub p97_ns: f64,
    pub p9999_ns: f64,
    pub max_ns: f64,
    pub mean_ns_per_round: f64,
    pub mean_iterations: f64,
    pub mean_defects: f64,
    pub logical_errors: u64,
    pub logical_error_rate: f64,
}

impl Summary {
    /// Fraction of trials with latency at or below `ns`.
    pub fn fraction_within(records: &[TrialRecord], ns: f64) -> f64 {
        if records.is_empty() {
            return 0.0;
        }
        records.iter().filter(|r| r.ns <= ns).count() as f64 / records.len() as f64
    }
}

pub fn summarize(records: &[TrialRecord], rounds: usize, clock_ns: f64) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = records.len() as f64;
    let mut cycles: Vec<u64> = records.iter().map(|r| r.cycles).collect();
    cycles.sort_unstable();
    let pct = |q| nearest_rank(&cycles, q).unwrap();
    let mean_cycles = cycles.iter().sum::<u64>() as f64 / n;
    let mean_ns = mean_cycles * clock_ns;
    let logical_errors = records.iter().filter(|r| r.logical_flip).count() as u64;
    Ok(Summary {
        trials: records.len() as u64,
        mean_cycles,
        p50_cycles: pct(50.0),
        p97_cycles: pct(97.0),
        p9999_cycles: pct(99.99),
        max_cycles: *cycles.last().unwrap(),
        mean_ns,
        p50_ns: pct(50.0) as f64 * clock_ns,
        p97_ns: pct(97.0) as f64 * clock_ns,
        p9999_ns: pct(99.99) as f64 * clock_ns,
        max_ns: *cycles.last().unwrap() as f64 * clock_ns,
        mean_ns_per_round: mean_ns / rounds as f64,
        mean_iterations: records.iter().map(|r| r.iterations as f64).sum::<f64>() / n,
        mean_defects: records.iter().map(|r| r.defects as f64).sum::<f64>() / n,
        logical_errors,
        logical_error_rate: logical_errors as f64 / n,
    })
}

/// Wilson score interval for a binomial proportion at ~95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let phat = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (phat + z * z / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(cycles: u64) -> TrialRecord {
        TrialRecord {
            trial: 0,
            defects: 0,
            cycles,
            ns: cycles as f64 * 10.0,
            iterations: 1,
            clusters: 0,
            logical_flip: false,
            annihilated: true,
        }
    }

    #[test]
    fn mean_of_three() {
        let s = summarize(&[rec(10), rec(20), rec(30)], 1, 10.0).unwrap();
        assert_eq!(s.mean_cycles, 20.0);
        assert_eq!(s.p50_cycles, 20);
        assert_eq!(s.max_ns, 300.0);
    }

    #[test]
    fn single_record() {
        let s = summarize(&[rec(7)], 7, 10.0).unwrap();
        assert_eq!((s.p50_cycles, s.p97_cycles, s.p9999_cycles, s.max_cycles), (7, 7, 7, 7));
        assert_eq!(s.mean_ns_per_round, 10.0);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(summarize(&[], 1, 10.0), Err(Error::EmptyInput)));
    }

    #[test]
    fn nearest_rank_edges() {
        let v: Vec<u32> = (1..=100).collect();
        assert_eq!(nearest_rank(&v, 97.0), Some(97));
        assert_eq!(nearest_rank(&v, 0.0), Some(1));
        assert_eq!(nearest_rank(&v, 100.0), Some(100));
        assert_eq!(nearest_rank(&v, 99.99), Some(100));
        assert_eq!(nearest_rank::<u32>(&[], 50.0), None);
    }

    #[test]
    fn wilson_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(50, 1000);
        assert!(lo < 0.05 && 0.05 < hi);
        assert!((lo - 0.0381).abs() < 1e-3 && (hi - 0.0653).abs() < 1e-3);
    }
}
