//! Adaptive summation of positive series given term logarithms.

/// Terms are added in blocks of this size.
pub const BLOCK: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct SeriesControl {
    /// Relative tolerance on both the last block and the geometric tail.
    pub tol: f64,
    /// Maximum number of terms.
    pub cap: usize,
}

#[derive(Debug, Clone)]
pub struct LogSeries {
    /// `ln Σ t_n` (`-∞` for an identically zero series).
    pub ln_sum: f64,
    /// `ln t_n` for every evaluated term.
    pub log_terms: Vec<f64>,
    /// Estimated relative size of the omitted tail.
    pub rel_tail: f64,
}

impl LogSeries {
    pub fn terms_used(&self) -> usize {
        self.log_terms.len()
    }
}

pub fn log_sum_exp(logs: &[f64]) -> f64 {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + logs.iter().map(|&l| (l - max).exp()).sum::<f64>().ln()
}

/// Sums exactly `count` terms.
pub fn sum_finite<F: FnMut(usize) -> f64>(mut log_term: F, count: usize) -> LogSeries {
    let log_terms: Vec<f64> = (0..count).map(&mut log_term).collect();
    LogSeries { ln_sum: log_sum_exp(&log_terms), log_terms, rel_tail: 0.0 }
}

/// Sums a positive series block by block until the last block and a
/// geometric estimate of the remaining tail both fall below `tol` relative
/// to the running total. The geometric estimate uses the ratio of the last
/// two terms, which bounds the tail once term ratios are non-increasing.
///
/// Returns `Err` with the partial sum when `cap` terms are exhausted.
pub fn sum_adaptive<F: FnMut(usize) -> f64>(
    mut log_term: F,
    ctl: SeriesControl,
) -> Result<LogSeries, LogSeries> {
    let mut log_terms: Vec<f64> = Vec::with_capacity(4 * BLOCK);
    loop {
        let start = log_terms.len();
        let end = (start + BLOCK).min(ctl.cap.max(start + 1));
        log_terms.extend((start..end).map(&mut log_term));

        let ln_sum = log_sum_exp(&log_terms);
        let len = log_terms.len();
        if ln_sum == f64::NEG_INFINITY {
            if len >= ctl.cap || len >= 2 * BLOCK {
                return Ok(LogSeries { ln_sum, log_terms, rel_tail: 0.0 });
            }
            continue;
        }
        let block_rel = (log_sum_exp(&log_terms[start..]) - ln_sum).exp();
        let last = log_terms[len - 1];
        let prev = log_terms[len - 2.min(len)];
        let rel_tail = if last == f64::NEG_INFINITY {
            0.0
        } else {
            let ratio = (last - prev).exp();
            if ratio < 1.0 {
                (last - ln_sum).exp() * ratio / (1.0 - ratio)
            } else {
                f64::INFINITY
            }
        };
        if start > 0 && block_rel < ctl.tol && rel_tail < ctl.tol {
            return Ok(LogSeries { ln_sum, log_terms, rel_tail });
        }
        if len >= ctl.cap {
            return Err(LogSeries { ln_sum, log_terms, rel_tail: rel_tail.max(block_rel) });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_converges() {
        let ratio: f64 = 0.9;
        let series = sum_adaptive(|n| n as f64 * ratio.ln(), SeriesControl { tol: 1e-14, cap: 8192 })
            .unwrap();
        assert!((series.ln_sum.exp() - 10.0).abs() < 1e-12);
        assert_eq!(series.terms_used() % BLOCK, 0);
        assert!(series.rel_tail < 1e-14);
    }

    #[test]
    fn exponential_series() {
        // Σ 2^n / n! = e^2
        let mut ln_fact = 0.0;
        let series = sum_adaptive(
            |n| {
                if n > 0 {
                    ln_fact += (n as f64).ln();
                }
                n as f64 * 2f64.ln() - ln_fact
            },
            SeriesControl { tol: 1e-15, cap: 8192 },
        )
        .unwrap();
        assert!((series.ln_sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn divergent_series_hits_cap() {
        let result = sum_adaptive(|n| n as f64 * 0.01, SeriesControl { tol: 1e-12, cap: 512 });
        let partial = result.unwrap_err();
        assert_eq!(partial.terms_used(), 512);
    }

    #[test]
    fn zero_series() {
        let series = sum_adaptive(|_| f64::NEG_INFINITY, SeriesControl { tol: 1e-12, cap: 8192 })
            .unwrap();
        assert_eq!(series.ln_sum, f64::NEG_INFINITY);
    }

    #[test]
    fn leading_vanishing_terms() {
        let series = sum_adaptive(
            |n| if n < 5 { f64::NEG_INFINITY } else { (n - 5) as f64 * 0.5f64.ln() },
            SeriesControl { tol: 1e-14, cap: 8192 },
        )
        .unwrap();
        assert!((series.ln_sum.exp() - 2.0).abs() < 1e-13);
    }
}
