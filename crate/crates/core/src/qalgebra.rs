//! q-arithmetic for the algebra `A A† - q² A† A = 1`.
//!
//! q-integers are `[n]_q = (1 - q^{2n}) / (1 - q²)`, which tend to `n` as
//! `q → 1` and saturate at `1 / (1 - q²)` for `0 ≤ q < 1`. Factorial-bearing
//! quantities are kept in log form so that ratios such as
//! `[n+m+N]_q! / [n]_q!` never overflow for large truncation levels.

use crate::error::{Error, Result};

/// Inputs with `|1 - q|` below this route to the undeformed formulas.
pub const CLASSICAL_LIMIT_EPS: f64 = 1e-9;

/// Deformation parameter `q` with its derived constants.
///
/// Either `0 ≤ q < 1` or the classical limit `q = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParam {
    q: f64,
    q_squared: f64,
    radius: f64,
    classical: bool,
}

impl DeformationParam {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::InvalidParameter(format!("q must be finite, got {q}")));
        }
        if (1.0 - q).abs() < CLASSICAL_LIMIT_EPS {
            return Ok(Self::classical());
        }
        if !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "q must lie in [0, 1) or be the classical limit 1, got {q}"
            )));
        }
        let q_squared = q * q;
        Ok(Self { q, q_squared, radius: 1.0 / (1.0 - q_squared).sqrt(), classical: false })
    }

    /// The undeformed oscillator, `q = 1`.
    pub fn classical() -> Self {
        Self { q: 1.0, q_squared: 1.0, radius: f64::INFINITY, classical: true }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn q_squared(&self) -> f64 {
        self.q_squared
    }

    /// Convergence radius of the coherent-state series, `1/√(1-q²)`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    /// `[n]_q`.
    pub fn q_int(&self, n: u64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        if self.classical {
            return n as f64;
        }
        if self.q == 0.0 {
            return 1.0;
        }
        // expm1 keeps full precision as q approaches 1.
        let ln_q2 = 2.0 * self.q.ln();
        (-(n as f64 * ln_q2).exp_m1()) / (-ln_q2.exp_m1())
    }

    /// `ln [n]_q`, `-∞` for `n = 0`.
    pub fn ln_q_int(&self, n: u64) -> f64 {
        self.q_int(n).ln()
    }
}

/// A q-integer together with its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QInteger {
    pub n: u64,
    pub value: f64,
    pub log_value: f64,
}

impl QInteger {
    pub fn new(n: u64, dp: &DeformationParam) -> Self {
        let value = dp.q_int(n);
        Self { n, value, log_value: value.ln() }
    }
}

pub fn q_int(n: u64, dp: &DeformationParam) -> f64 {
    dp.q_int(n)
}

/// `ln([n]_q!)`. For repeated evaluation use [`LnFactorialTable`].
pub fn q_ln_factorial(n: u64, dp: &DeformationParam) -> f64 {
    (1..=n).map(|k| dp.ln_q_int(k)).sum()
}

pub fn convergence_radius(dp: &DeformationParam) -> f64 {
    dp.radius()
}

/// `(2N-1)!! = 1·3·5···(2N-1)`, with overflow reported.
pub fn double_factorial_odd(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("double factorial needs N >= 1".into()));
    }
    (1..=u64::from(n)).try_fold(1u64, |acc, k| {
        acc.checked_mul(2 * k - 1)
            .ok_or_else(|| Error::Overflow(format!("(2N-1)!! overflows u64 at N = {n}")))
    })
}

/// Incrementally built table of `ln([k]_q!)` for `k = 0..len`.
#[derive(Debug, Clone)]
pub struct LnFactorialTable {
    dp: DeformationParam,
    ln_fact: Vec<f64>,
    ln_int: Vec<f64>,
}

impl LnFactorialTable {
    pub fn new(dp: DeformationParam) -> Self {
        Self { dp, ln_fact: vec![0.0], ln_int: vec![f64::NEG_INFINITY] }
    }

    pub fn with_len(dp: DeformationParam, len: usize) -> Self {
        let mut table = Self::new(dp);
        table.ensure(len);
        table
    }

    pub fn deformation(&self) -> &DeformationParam {
        &self.dp
    }

    pub fn len(&self) -> usize {
        self.ln_fact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_fact.is_empty()
    }

    /// Extends the table so that indices `0..len` are available.
    pub fn ensure(&mut self, len: usize) {
        while self.ln_fact.len() < len {
            let k = self.ln_fact.len() as u64;
            let ln_k = self.dp.ln_q_int(k);
            let prev = *self.ln_fact.last().expect("table starts with [0]_q!");
            self.ln_fact.push(prev + ln_k);
            self.ln_int.push(ln_k);
        }
    }

    /// `ln [k]_q!`; negative arguments give `-∞` (the term vanishes).
    pub fn ln_factorial(&self, k: i64) -> f64 {
        if k < 0 {
            f64::NEG_INFINITY
        } else {
            self.ln_fact[k as usize]
        }
    }

    /// `ln [k]_q`.
    pub fn ln_int(&self, k: usize) -> f64 {
        self.ln_int[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(q: f64) -> DeformationParam {
        DeformationParam::new(q).unwrap()
    }

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(0, &dp(0.9)), 0.0);
        assert!((q_int(2, &dp(0.9)) - 0.3439 / 0.19).abs() < 1e-14);
        assert!((q_int(2, &dp(0.9)) - 1.81).abs() < 1e-14);
        for n in 0..20 {
            assert_eq!(q_int(n, &DeformationParam::classical()), n as f64);
        }
        assert_eq!(q_int(1, &dp(0.3)), 1.0);
    }

    #[test]
    fn near_one_routes_to_limit() {
        let d = dp(1.0 - 1e-12);
        assert!(d.is_classical());
        assert_eq!(d.radius(), f64::INFINITY);
        assert_eq!(q_int(7, &d), 7.0);
    }

    #[test]
    fn approaches_classical_values() {
        let d = dp(1.0 - 1e-6);
        assert!(!d.is_classical());
        for n in 1..=50u64 {
            assert!((q_int(n, &d) - n as f64).abs() < 1e-4 * n as f64);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(DeformationParam::new(-0.5).is_err());
        assert!(DeformationParam::new(1.2).is_err());
        assert!(DeformationParam::new(f64::NAN).is_err());
    }

    #[test]
    fn radius_values() {
        assert_eq!(convergence_radius(&dp(0.0)), 1.0);
        assert!((convergence_radius(&dp(0.9)) - 1.0 / 0.19f64.sqrt()).abs() < 1e-14);
        assert!((convergence_radius(&dp(0.9)) - 2.2941573387056176).abs() < 1e-12);
        assert!(convergence_radius(&DeformationParam::classical()).is_infinite());
    }

    #[test]
    fn ln_factorial_examples() {
        let d = dp(0.9);
        assert_eq!(q_ln_factorial(0, &d), 0.0);
        assert_eq!(q_ln_factorial(1, &d), 0.0);
        assert!((q_ln_factorial(2, &d) - 1.81f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn ln_factorial_matches_direct_product() {
        for q in [0.5, 0.9, 0.99] {
            let d = dp(q);
            let table = LnFactorialTable::with_len(d, 31);
            let mut product = 1.0;
            for n in 0..=30u64 {
                if n > 0 {
                    product *= q_int(n, &d);
                }
                let from_table = table.ln_factorial(n as i64).exp();
                let direct = q_ln_factorial(n, &d).exp();
                assert!((from_table - product).abs() <= 1e-12 * product, "q={q} n={n}");
                assert!((direct - product).abs() <= 1e-12 * product);
            }
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(1).unwrap(), 1);
        assert_eq!(double_factorial_odd(2).unwrap(), 3);
        assert_eq!(double_factorial_odd(4).unwrap(), 105);
        assert!(double_factorial_odd(0).is_err());
        assert!(matches!(double_factorial_odd(40), Err(Error::Overflow(_))));
    }

    #[test]
    fn negative_factorial_argument_vanishes() {
        let table = LnFactorialTable::with_len(dp(0.9), 4);
        assert_eq!(table.ln_factorial(-1), f64::NEG_INFINITY);
    }

    proptest::proptest! {
        #[test]
        fn q_integers_increase_and_saturate(q in 0.01f64..0.999, n in 1u64..400) {
            let d = dp(q);
            let bound = 1.0 / (1.0 - q * q);
            let a = q_int(n, &d);
            let b = q_int(n + 1, &d);
            // strict growth is only resolvable while q^{2n} is above rounding
            if q.powi(2 * n as i32) > 1e-12 {
                proptest::prop_assert!(a < b);
            } else {
                proptest::prop_assert!(a <= b);
            }
            proptest::prop_assert!(b <= bound * (1.0 + 1e-12));
        }
    }
}
