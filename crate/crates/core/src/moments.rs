//! Closed-form series for PACS expectation values.
//!
//! With `p_n = |α|^{2n} [n+m]! / ([n]!)²` and `N̂² = Σ p_n`:
//!
//! ```text
//! ⟨A†^N A^L⟩ = α*^{N-L}/N̂² Σ |α|^{2n} [n+m]! [n+m+N-L]! / ([n]! [n+N-L]! [n+m-L]!)   (N ≥ L)
//! ⟨A^N A†^L⟩ = α^{N-L}/N̂²  Σ |α|^{2n} [n+m+N]! / ([n]! [n+N-L]!)                     (N ≥ L)
//! ⟨(A†A)^N⟩  = 1/N̂²        Σ p_n [n+m]^N
//! ```
//!
//! with the mirrored branches obtained by conjugation. Factorials of negative
//! arguments make the term vanish (annihilation below the vacuum).

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator_words::{NormalForm, QuadratureExpansion};
use crate::qalgebra::{DeformationParam, LnFactorialTable};
use crate::series::{self, LogSeries, SeriesControl};
use crate::states::{check_disk, check_tol, n_ln_abs, pacs_log_term};

pub const DEFAULT_MOMENT_TOL: f64 = 1e-10;
pub const TERM_CAP: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentOrdering {
    /// `A†^N A^L`
    Normal,
    /// `A^N A†^L`
    Antinormal,
    /// `(A†A)^N`, with `daggers = lowerings = N`
    NumberPower,
}

impl MomentOrdering {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentOrdering::Normal => "normal",
            MomentOrdering::Antinormal => "antinormal",
            MomentOrdering::NumberPower => "number_power",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MomentQuery {
    pub daggers: u32,
    pub lowerings: u32,
    pub ordering: MomentOrdering,
}

impl MomentQuery {
    pub fn normal(daggers: u32, lowerings: u32) -> Self {
        Self { daggers, lowerings, ordering: MomentOrdering::Normal }
    }

    pub fn antinormal(lowerings: u32, daggers: u32) -> Self {
        Self { daggers, lowerings, ordering: MomentOrdering::Antinormal }
    }

    pub fn number_power(power: u32) -> Self {
        Self { daggers: power, lowerings: power, ordering: MomentOrdering::NumberPower }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentValue {
    pub value: Complex64,
    /// Estimated relative truncation error.
    pub tail_estimate: f64,
    pub terms_used: usize,
}

impl MomentValue {
    fn exact(value: Complex64) -> Self {
        Self { value, tail_estimate: 0.0, terms_used: 1 }
    }
}

/// Moment evaluator bound to one PACS `|α,m⟩_q`. Results are cached, so
/// sweeps over `φ` reuse the `φ`-independent moments.
#[derive(Debug)]
pub struct PacsMoments {
    alpha: Complex64,
    m: u32,
    dp: DeformationParam,
    tol: f64,
    ln_abs: f64,
    ln_norm_sq: f64,
    norm_tail: f64,
    table: Mutex<LnFactorialTable>,
    cache: Mutex<HashMap<MomentQuery, MomentValue>>,
}

impl PacsMoments {
    pub fn new(alpha: Complex64, m: u32, dp: &DeformationParam, tol: f64) -> Result<Self> {
        check_disk(alpha, dp)?;
        check_tol(tol)?;
        let mut engine = Self {
            alpha,
            m,
            dp: *dp,
            tol,
            ln_abs: alpha.norm().ln(),
            ln_norm_sq: 0.0,
            norm_tail: 0.0,
            table: Mutex::new(LnFactorialTable::new(*dp)),
            cache: Mutex::new(HashMap::new()),
        };
        let (ln_abs, m) = (engine.ln_abs, engine.m);
        let norm = engine.sum(m as usize, |t, n| pacs_log_term(t, ln_abs, m, n))?;
        engine.ln_norm_sq = norm.ln_sum;
        engine.norm_tail = norm.rel_tail;
        Ok(engine)
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

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `ln N̂²`
    pub fn ln_norm_sq(&self) -> f64 {
        self.ln_norm_sq
    }

    fn sum<F>(&self, max_offset: usize, log_term: F) -> Result<LogSeries>
    where
        F: Fn(&LnFactorialTable, usize) -> f64,
    {
        let mut table = self.table.lock().expect("factorial table poisoned");
        let term = |n: usize| {
            table.ensure(n + max_offset + 1);
            log_term(&table, n)
        };
        if self.alpha.norm() == 0.0 {
            return Ok(series::sum_finite(term, 1));
        }
        let ctl = SeriesControl { tol: self.tol, cap: TERM_CAP };
        series::sum_adaptive(term, ctl).map_err(|partial| Error::Tolerance {
            tol: self.tol,
            cap: TERM_CAP,
            tail: partial.rel_tail,
        })
    }

    fn finish(&self, prefactor: Complex64, s: &LogSeries) -> MomentValue {
        let magnitude =
            if s.ln_sum == f64::NEG_INFINITY { 0.0 } else { (s.ln_sum - self.ln_norm_sq).exp() };
        MomentValue {
            value: prefactor * magnitude,
            tail_estimate: s.rel_tail + self.norm_tail,
            terms_used: s.terms_used(),
        }
    }

    fn cached(
        &self,
        query: MomentQuery,
        compute: impl FnOnce() -> Result<MomentValue>,
    ) -> Result<MomentValue> {
        if let Some(hit) = self.cache.lock().expect("moment cache poisoned").get(&query) {
            return Ok(*hit);
        }
        let value = compute()?;
        self.cache.lock().expect("moment cache poisoned").insert(query, value);
        Ok(value)
    }

    pub fn evaluate(&self, query: MomentQuery) -> Result<MomentValue> {
        match query.ordering {
            MomentOrdering::Normal => self.normal(query.daggers, query.lowerings),
            MomentOrdering::Antinormal => self.antinormal(query.lowerings, query.daggers),
            MomentOrdering::NumberPower => self.number_power(query.daggers),
        }
    }

    /// `⟨A†^N A^L⟩`
    pub fn normal(&self, daggers: u32, lowerings: u32) -> Result<MomentValue> {
        if daggers == 0 && lowerings == 0 {
            return Ok(MomentValue::exact(Complex64::new(1.0, 0.0)));
        }
        self.cached(MomentQuery::normal(daggers, lowerings), || {
            let (ln_abs, m) = (self.ln_abs, self.m as i64);
            let shift = (daggers as i64 - lowerings as i64).unsigned_abs() as i64;
            let low = daggers.min(lowerings) as i64;
            let s = self.sum((m + shift) as usize, |t, n| {
                let n = n as i64;
                if n + m < low {
                    // annihilates below the vacuum
                    return f64::NEG_INFINITY;
                }
                n_ln_abs(2 * n as usize, ln_abs)
                    + t.ln_factorial(n + m)
                    + t.ln_factorial(n + m + shift)
                    - t.ln_factorial(n)
                    - t.ln_factorial(n + shift)
                    - t.ln_factorial(n + m - low)
            })?;
            let prefactor = if daggers >= lowerings {
                self.alpha.conj().powu(shift as u32)
            } else {
                self.alpha.powu(shift as u32)
            };
            Ok(self.finish(prefactor, &s))
        })
    }

    /// `⟨A^N A†^L⟩`
    pub fn antinormal(&self, lowerings: u32, daggers: u32) -> Result<MomentValue> {
        if daggers == 0 && lowerings == 0 {
            return Ok(MomentValue::exact(Complex64::new(1.0, 0.0)));
        }
        self.cached(MomentQuery::antinormal(lowerings, daggers), || {
            let (ln_abs, m) = (self.ln_abs, self.m as i64);
            let shift = (lowerings as i64 - daggers as i64).unsigned_abs() as i64;
            let high = lowerings.max(daggers) as i64;
            let s = self.sum((m + high) as usize, |t, n| {
                let n = n as i64;
                n_ln_abs(2 * n as usize, ln_abs) + t.ln_factorial(n + m + high)
                    - t.ln_factorial(n)
                    - t.ln_factorial(n + shift)
            })?;
            let prefactor = if lowerings >= daggers {
                self.alpha.powu(shift as u32)
            } else {
                self.alpha.conj().powu(shift as u32)
            };
            Ok(self.finish(prefactor, &s))
        })
    }

    /// `⟨(A†A)^N⟩`
    pub fn number_power(&self, power: u32) -> Result<MomentValue> {
        if power == 0 {
            return Ok(MomentValue::exact(Complex64::new(1.0, 0.0)));
        }
        self.cached(MomentQuery::number_power(power), || {
            let (ln_abs, m) = (self.ln_abs, self.m);
            let s = self.sum(m as usize, |t, n| {
                let level = n + m as usize;
                if level == 0 {
                    return f64::NEG_INFINITY;
                }
                pacs_log_term(t, ln_abs, m, n) + power as f64 * t.ln_int(level)
            })?;
            Ok(self.finish(Complex64::new(1.0, 0.0), &s))
        })
    }

    /// `⟨[A,A†]^N⟩ = Σ_k C(N,k) (q²-1)^k ⟨(A†A)^k⟩`
    pub fn commutator_power(&self, power: u32) -> Result<MomentValue> {
        let deform = self.dp.q_squared() - 1.0;
        let mut total = 0.0;
        let mut tail: f64 = 0.0;
        let mut terms = 1;
        let mut binomial = 1.0;
        for k in 0..=power {
            if k > 0 {
                binomial *= (power - k + 1) as f64 / k as f64;
            }
            let moment = self.number_power(k)?;
            total += binomial * deform.powi(k as i32) * moment.value.re;
            tail = tail.max(moment.tail_estimate);
            terms = terms.max(moment.terms_used);
        }
        Ok(MomentValue { value: Complex64::new(total, 0.0), tail_estimate: tail, terms_used: terms })
    }

    /// `Σ P_{d,l}(q) ⟨A†^d A^l⟩`
    pub fn normal_form(&self, nf: &NormalForm) -> Result<MomentValue> {
        let q = self.dp.q();
        let mut out = MomentValue::exact(Complex64::new(0.0, 0.0));
        for ((d, l), poly) in nf.terms() {
            let moment = self.normal(d, l)?;
            out.value += moment.value * poly.evaluate(q);
            out.tail_estimate = out.tail_estimate.max(moment.tail_estimate);
            out.terms_used = out.terms_used.max(moment.terms_used);
        }
        Ok(out)
    }

    /// Expectation of a quadrature expansion at angle `φ`.
    pub fn quadrature(&self, expansion: &QuadratureExpansion, phi: f64) -> Result<MomentValue> {
        let mut out = MomentValue::exact(Complex64::new(0.0, 0.0));
        for (w, nf) in &expansion.phase_terms {
            let part = self.normal_form(nf)?;
            out.value += part.value * Complex64::from_polar(1.0, phi * *w as f64);
            out.tail_estimate = out.tail_estimate.max(part.tail_estimate);
            out.terms_used = out.terms_used.max(part.terms_used);
        }
        out.value *= expansion.prefactor();
        Ok(out)
    }
}

pub fn expval_normal(
    daggers: u32,
    lowerings: u32,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<MomentValue> {
    PacsMoments::new(alpha, m, dp, tol)?.normal(daggers, lowerings)
}

pub fn expval_antinormal(
    lowerings: u32,
    daggers: u32,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<MomentValue> {
    PacsMoments::new(alpha, m, dp, tol)?.antinormal(lowerings, daggers)
}

pub fn expval_number_power(
    power: u32,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<MomentValue> {
    PacsMoments::new(alpha, m, dp, tol)?.number_power(power)
}

pub fn expval_commutator_power(
    power: u32,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<MomentValue> {
    PacsMoments::new(alpha, m, dp, tol)?.commutator_power(power)
}

pub fn expval_normal_form(
    nf: &NormalForm,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<MomentValue> {
    PacsMoments::new(alpha, m, dp, tol)?.normal_form(nf)
}

pub fn expval_quadrature(
    expansion: &QuadratureExpansion,
    phi: f64,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<MomentValue> {
    PacsMoments::new(alpha, m, dp, tol)?.quadrature(expansion, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_words::{normal_order, quadrature_power, Letter};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dp(q: f64) -> DeformationParam {
        DeformationParam::new(q).unwrap()
    }

    #[test]
    fn normalization_is_exact() {
        let e = PacsMoments::new(c(1.0, 1.2), 2, &dp(0.9), 1e-10).unwrap();
        assert_eq!(e.normal(0, 0).unwrap().value, c(1.0, 0.0));
        assert_eq!(e.antinormal(0, 0).unwrap().value, c(1.0, 0.0));
        assert_eq!(e.number_power(0).unwrap().value, c(1.0, 0.0));
    }

    #[test]
    fn coherent_eigenstate_identities() {
        for q in [0.5, 0.9] {
            let alpha = c(0.7, -0.3);
            let e = PacsMoments::new(alpha, 0, &dp(q), 1e-12).unwrap();
            let n1 = e.normal(1, 1).unwrap().value;
            assert!((n1 - alpha.norm_sqr()).norm() < 1e-12);
            assert!((e.number_power(1).unwrap().value - alpha.norm_sqr()).norm() < 1e-12);
            // ⟨A†^N A^L⟩ = α*^N α^L on an eigenstate
            let v = e.normal(3, 1).unwrap().value;
            assert!((v - alpha.conj().powu(3) * alpha).norm() < 1e-12);
            let comm = e.commutator_power(1).unwrap().value.re;
            assert!((comm - (1.0 + (q * q - 1.0) * alpha.norm_sqr())).abs() < 1e-12);
        }
    }

    #[test]
    fn antinormal_commutator_identity() {
        let q = 0.9;
        let e = PacsMoments::new(c(1.3, 0.4), 2, &dp(q), 1e-12).unwrap();
        let n = e.normal(1, 1).unwrap().value.re;
        let a = e.antinormal(1, 1).unwrap().value.re;
        let comm = 1.0 + (q * q - 1.0) * n;
        assert!((a - (n + comm)).abs() < 1e-11);
        assert!((e.commutator_power(1).unwrap().value.re - comm).abs() < 1e-11);
    }

    #[test]
    fn conjugate_symmetry() {
        let e = PacsMoments::new(c(1.0, 1.2), 1, &dp(0.9), 1e-12).unwrap();
        for n in 0..5 {
            for l in 0..5 {
                let a = e.normal(n, l).unwrap().value;
                let b = e.normal(l, n).unwrap().value;
                assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
                let a = e.antinormal(n, l).unwrap().value;
                let b = e.antinormal(l, n).unwrap().value;
                assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn fock_state_moments() {
        let d = dp(0.9);
        let e = PacsMoments::new(c(0.0, 0.0), 2, &d, 1e-12).unwrap();
        let expected = d.q_int(2).powi(3);
        assert!((e.number_power(3).unwrap().value.re - expected).abs() < 1e-13);
        assert_eq!(e.normal(3, 3).unwrap().value, c(0.0, 0.0));
        assert_eq!(e.normal(1, 0).unwrap().value, c(0.0, 0.0));
        assert!((e.normal(2, 2).unwrap().value.re - 1.81).abs() < 1e-13);
    }

    #[test]
    fn classical_limit_commutator_is_one() {
        let e = PacsMoments::new(c(1.5, 0.5), 3, &DeformationParam::classical(), 1e-12).unwrap();
        for n in 1..6 {
            assert!((e.commutator_power(n).unwrap().value.re - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn positivity() {
        let e = PacsMoments::new(c(0.3, 0.9), 1, &dp(0.5), 1e-12).unwrap();
        for n in 0..6 {
            assert!(e.number_power(n).unwrap().value.re > 0.0);
            assert!(e.normal(n, n).unwrap().value.re >= 0.0);
        }
    }

    #[test]
    fn normal_form_of_defining_relation() {
        let e = PacsMoments::new(c(1.1, -0.2), 1, &dp(0.9), 1e-12).unwrap();
        let nf = normal_order(&[Letter::Lower, Letter::Raise]);
        let via_nf = e.normal_form(&nf).unwrap().value;
        let direct = e.antinormal(1, 1).unwrap().value;
        assert!((via_nf - direct).norm() < 1e-11);
    }

    #[test]
    fn undeformed_coherent_quadrature_square() {
        // ⟨Y²⟩ at φ=0 for a real coherent amplitude: ¼ + α²
        let alpha = 0.8;
        let y2 = quadrature_power(2).unwrap();
        let v = expval_quadrature(&y2, 0.0, c(alpha, 0.0), 0, &DeformationParam::classical(), 1e-12)
            .unwrap();
        assert!((v.value.re - (0.25 + alpha * alpha)).abs() < 1e-12);
        assert!(v.value.im.abs() < 1e-14);
    }

    #[test]
    fn doubling_terms_is_stable() {
        let d = dp(0.9);
        let coarse = expval_normal(2, 2, c(2.1, 0.0), 1, &d, 1e-10).unwrap();
        let fine = expval_normal(2, 2, c(2.1, 0.0), 1, &d, 1e-15).unwrap();
        assert!(fine.terms_used > coarse.terms_used);
        assert!((coarse.value - fine.value).norm() < 1e-10 * fine.value.norm());
    }

    #[test]
    fn outside_disk_is_rejected() {
        let err = PacsMoments::new(c(1.0, 1.2), 1, &dp(0.5), 1e-10).unwrap_err();
        assert_eq!(err.kind(), "DivergenceError");
    }
}
