//! Truncated Fock-basis coefficient vectors for q-coherent states and
//! q-photon-added coherent states (PACS).
//!
//! The PACS with `m` added quanta is
//!
//! ```text
//! |α,m⟩ = 1/N̂ Σ_n α^n √([n+m]!) / [n]! |n+m⟩,   N̂² = Σ_n |α|^{2n} [n+m]! / ([n]!)²
//! ```
//!
//! and `N̂ = N(α,m,q) N(α,q)` with `N²(α,q) = Σ_n |α|^{2n} / [n]!`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qalgebra::{DeformationParam, LnFactorialTable};
use crate::series::{self, LogSeries, SeriesControl};

/// Fraction of the convergence radius that `|α|` must stay below.
pub const DISK_MARGIN: f64 = 0.98;
pub const DEFAULT_STATE_TOL: f64 = 1e-12;
/// Maximum number of retained Fock levels.
pub const LEVEL_CAP: usize = 4096;

/// Rejects amplitudes outside `DISK_MARGIN · radius`.
pub fn check_disk(alpha: Complex64, dp: &DeformationParam) -> Result<()> {
    let alpha_abs = alpha.norm();
    let bound = DISK_MARGIN * dp.radius();
    if !alpha_abs.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be finite, got {alpha}")));
    }
    if alpha_abs >= bound {
        return Err(Error::Divergence { alpha_abs, bound, radius: dp.radius() });
    }
    Ok(())
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")))
    }
}

/// `n ln|α|` with the `0 · ln 0 = 0` convention.
pub(crate) fn n_ln_abs(n: usize, ln_abs: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        n as f64 * ln_abs
    }
}

/// Pure state on the truncated Fock space, levels `0..=n_max`.
#[derive(Debug, Clone)]
pub struct ModeState {
    alpha: Complex64,
    m: u32,
    dp: DeformationParam,
    coeffs: Vec<Complex64>,
    tail_bound: f64,
}

impl ModeState {
    /// Wraps an explicit coefficient vector. No normalization is applied.
    pub fn from_coeffs(
        alpha: Complex64,
        m: u32,
        dp: DeformationParam,
        coeffs: Vec<Complex64>,
        tail_bound: f64,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("state needs at least one level".into()));
        }
        Ok(Self { alpha, m, dp, coeffs, tail_bound })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn added_photons(&self) -> u32 {
        self.m
    }

    pub fn deformation(&self) -> &DeformationParam {
        &self.dp
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Estimated probability mass missing from the truncated vector,
    /// including the rounding bound of the normalization sum.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Highest level with a nonzero coefficient.
    pub fn support(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)).unwrap_or(0)
    }

    /// Copy with `extra` zero levels appended.
    pub fn with_headroom(&self, extra: usize) -> Self {
        let mut padded = self.clone();
        padded.coeffs.resize(self.coeffs.len() + extra, Complex64::new(0.0, 0.0));
        padded
    }

    /// CSV rows `level,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,re,im\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{k},{:e},{:e}\n", c.re, c.im));
        }
        out
    }
}

/// Logarithms of the normalization constants (not squared).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationPair {
    /// `ln N(α,q)`
    pub ln_n_coh: f64,
    /// `ln N(α,m,q)`
    pub ln_n_pacs: f64,
    /// `ln N̂ = ln N(α,m,q) + ln N(α,q)`
    pub ln_n_hat: f64,
}

fn coherent_log_term(table: &LnFactorialTable, ln_abs: f64, n: usize) -> f64 {
    n_ln_abs(2 * n, ln_abs) - table.ln_factorial(n as i64)
}

/// `ln(|α|^{2n} [n+m]! / ([n]!)²)`.
pub(crate) fn pacs_log_term(table: &LnFactorialTable, ln_abs: f64, m: u32, n: usize) -> f64 {
    n_ln_abs(2 * n, ln_abs) + table.ln_factorial((n + m as usize) as i64)
        - 2.0 * table.ln_factorial(n as i64)
}

/// `ln N̂²` summed adaptively. `α = 0` is the finite one-term case.
pub(crate) fn pacs_norm_series(
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    ctl: SeriesControl,
) -> Result<LogSeries, LogSeries> {
    let ln_abs = alpha.norm().ln();
    let mut table = LnFactorialTable::new(*dp);
    let term = |n: usize| {
        table.ensure(n + m as usize + 1);
        pacs_log_term(&table, ln_abs, m, n)
    };
    if alpha.norm() == 0.0 {
        Ok(series::sum_finite(term, 1))
    } else {
        series::sum_adaptive(term, ctl)
    }
}

/// Normalization constants from the first `n_max + 1` terms of each series.
pub fn ln_normalizations(
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    n_max: usize,
) -> Result<NormalizationPair> {
    check_disk(alpha, dp)?;
    let table = LnFactorialTable::with_len(*dp, n_max + m as usize + 1);
    let ln_abs = alpha.norm().ln();
    let count = if alpha.norm() == 0.0 { 1 } else { n_max + 1 };
    let ln_coh_sq = series::sum_finite(|n| coherent_log_term(&table, ln_abs, n), count).ln_sum;
    let ln_hat_sq = series::sum_finite(|n| pacs_log_term(&table, ln_abs, m, n), count).ln_sum;
    let ln_n_coh = 0.5 * ln_coh_sq;
    let ln_n_pacs = 0.5 * (ln_hat_sq - ln_coh_sq);
    Ok(NormalizationPair { ln_n_coh, ln_n_pacs, ln_n_hat: ln_n_coh + ln_n_pacs })
}

/// q-coherent state `Σ α^n/√([n]!) |n⟩ / N(α,q)`.
pub fn coherent_state(alpha: Complex64, dp: &DeformationParam, tol: f64) -> Result<ModeState> {
    pacs_state(alpha, 0, dp, tol)
}

/// q-PACS with adaptive truncation: the normalization series is extended in
/// blocks until the omitted mass is below `tol`.
pub fn pacs_state(alpha: Complex64, m: u32, dp: &DeformationParam, tol: f64) -> Result<ModeState> {
    check_disk(alpha, dp)?;
    check_tol(tol)?;
    let cap = LEVEL_CAP.saturating_sub(m as usize).max(1);
    let series = pacs_norm_series(alpha, m, dp, SeriesControl { tol, cap })
        .map_err(|_| Error::Truncation { tol, cap: LEVEL_CAP })?;
    Ok(assemble(alpha, m, dp, &series))
}

/// q-PACS truncated at exactly `n_max` (levels `0..=n_max`), normalized on
/// the retained levels.
pub fn pacs_state_with_levels(
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    n_max: usize,
) -> Result<ModeState> {
    check_disk(alpha, dp)?;
    if n_max < m as usize {
        return Err(Error::InvalidParameter(format!("n_max = {n_max} is below m = {m}")));
    }
    let count = if alpha.norm() == 0.0 { 1 } else { n_max - m as usize + 1 };
    let table = LnFactorialTable::with_len(*dp, n_max + 1);
    let ln_abs = alpha.norm().ln();
    let log_terms: Vec<f64> = (0..count).map(|n| pacs_log_term(&table, ln_abs, m, n)).collect();
    let series = LogSeries { ln_sum: series::log_sum_exp(&log_terms), log_terms, rel_tail: 0.0 };
    let mut state = assemble(alpha, m, dp, &series);
    state.coeffs.resize(n_max + 1, Complex64::new(0.0, 0.0));
    Ok(state)
}

fn assemble(alpha: Complex64, m: u32, dp: &DeformationParam, series: &LogSeries) -> ModeState {
    let theta = alpha.arg();
    let offset = m as usize;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); offset + series.terms_used()];
    for (n, &log_term) in series.log_terms.iter().enumerate() {
        // |c_{n+m}|² = t_n / N̂²
        let magnitude = (0.5 * (log_term - series.ln_sum)).exp();
        coeffs[n + offset] = Complex64::from_polar(magnitude, n as f64 * theta);
    }
    let rounding = f64::EPSILON * series.terms_used() as f64;
    ModeState { alpha, m, dp: *dp, coeffs, tail_bound: series.rel_tail + rounding }
}
