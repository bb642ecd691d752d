//! Hillery-type and Hong–Mandel-type higher-order quadrature squeezing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moments::PacsMoments;
use crate::operator_words::quadrature_power;
use crate::qalgebra::{double_factorial_odd, DeformationParam};

/// Denominators below this magnitude are reported, not divided by.
pub const DENOMINATOR_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezingKind {
    Hillery,
    HongMandel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingReport {
    pub kind: SqueezingKind,
    pub order: u32,
    pub phi: f64,
    pub value: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub squeezed: bool,
}

fn report(kind: SqueezingKind, order: u32, phi: f64, numerator: f64, denominator: f64) -> Result<SqueezingReport> {
    if denominator.is_nan() || denominator.abs() < DENOMINATOR_THRESHOLD {
        return Err(Error::DegenerateDenominator { denominator, threshold: DENOMINATOR_THRESHOLD });
    }
    let value = numerator / denominator;
    Ok(SqueezingReport { kind, order, phi, value, numerator, denominator, squeezed: value < 0.0 })
}

fn check_order(order: u32) -> Result<()> {
    if order == 0 {
        Err(Error::InvalidParameter("squeezing order must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// `S_H` for the quadrature `Y_N(φ) = ½(A^N e^{-iNφ} + A†^N e^{iNφ})`.
///
/// The numerator is `4⟨(ΔY_N)²⟩ - ⟨[A^N, A†^N]⟩`, the denominator the
/// commutator expectation `⟨A^N A†^N⟩ - ⟨A†^N A^N⟩`.
pub fn hillery_with(moments: &PacsMoments, order: u32, phi: f64) -> Result<SqueezingReport> {
    check_order(order)?;
    // ⟨A^k⟩ is the conjugate of ⟨A†^k⟩
    let a_n = moments.normal(order, 0)?.value.conj();
    let a_2n = moments.normal(2 * order, 0)?.value.conj();
    let normal = moments.normal(order, order)?.value.re;
    let antinormal = moments.antinormal(order, order)?.value.re;
    let phase = Complex64::from_polar(1.0, -2.0 * order as f64 * phi);
    let numerator = 2.0 * (((a_2n - a_n * a_n) * phase).re - a_n.norm_sqr() + normal);
    report(SqueezingKind::Hillery, order, phi, numerator, antinormal - normal)
}

pub fn hillery(
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    order: u32,
    phi: f64,
    tol: f64,
) -> Result<SqueezingReport> {
    hillery_with(&PacsMoments::new(alpha, m, dp, tol)?, order, phi)
}

/// `⟨Y(φ)⟩^k = Σ_s C(k,s) 2^{-k} e^{iφ(2s-k)} ⟨A⟩^{k-s} ⟨A†⟩^s`.
fn mean_quadrature_power(a: Complex64, phi: f64, k: u32) -> f64 {
    let ad = a.conj();
    let mut binomial = 1.0;
    let mut total = Complex64::new(0.0, 0.0);
    for s in 0..=k {
        if s > 0 {
            binomial *= (k - s + 1) as f64 / s as f64;
        }
        let phase = Complex64::from_polar(1.0, phi * (2.0 * s as f64 - k as f64));
        total += binomial * phase * a.powu(k - s) * ad.powu(s);
    }
    total.re * 0.5f64.powi(k as i32)
}

/// `⟨(ΔY(φ))^{2N}⟩ = Σ_k C(2N,k) (-1)^k ⟨Y^{2N-k}⟩ ⟨Y⟩^k`, every `⟨Y^j⟩`
/// taken from the normal-ordered expansion of `Y(φ)^j`.
pub fn quadrature_central_moment(moments: &PacsMoments, order: u32, phi: f64) -> Result<f64> {
    let a = moments.normal(0, 1)?.value;
    let mut total = 0.0;
    let mut binomial = 1.0;
    for k in 0..=order {
        if k > 0 {
            binomial *= (order - k + 1) as f64 / k as f64;
        }
        let j = order - k;
        let y_j = if j == 0 { 1.0 } else { moments.quadrature(quadrature_power(j)?.as_ref(), phi)?.value.re };
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * binomial * y_j * mean_quadrature_power(a, phi, k);
    }
    Ok(total)
}

/// `S_HM` of order `2N` for `Y(φ) = ½(A e^{-iφ} + A† e^{iφ})`.
///
/// The commutator power enters through its expectation `⟨[A,A†]^N⟩`.
pub fn hong_mandel_with(moments: &PacsMoments, order: u32, phi: f64) -> Result<SqueezingReport> {
    check_order(order)?;
    let central = quadrature_central_moment(moments, 2 * order, phi)?;
    let double_factorial = double_factorial_odd(order)? as f64;
    let commutator = moments.commutator_power(order)?.value.re;
    let scaled = 4f64.powi(order as i32) * central;
    let denominator = double_factorial * commutator;
    report(SqueezingKind::HongMandel, order, phi, scaled - denominator, denominator)
}

pub fn hong_mandel(
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    order: u32,
    phi: f64,
    tol: f64,
) -> Result<SqueezingReport> {
    hong_mandel_with(&PacsMoments::new(alpha, m, dp, tol)?, order, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dp(q: f64) -> DeformationParam {
        DeformationParam::new(q).unwrap()
    }

    #[test]
    fn coherent_state_is_not_hillery_squeezed() {
        for (q, alpha) in [(0.3, c(0.6, 0.5)), (0.9, c(1.2, 0.7))] {
            let e = PacsMoments::new(alpha, 0, &dp(q), 1e-12).unwrap();
            for k in 0..24 {
                let r = hillery_with(&e, 1, k as f64 * PI / 12.0).unwrap();
                assert!(r.value.abs() < 1e-9, "q={q} S_H={}", r.value);
            }
        }
    }

    #[test]
    fn coherent_state_hong_mandel_first_order() {
        for (q, alpha) in [(0.3, c(0.6, 0.5)), (0.9, c(1.0, 1.2))] {
            let e = PacsMoments::new(alpha, 0, &dp(q), 1e-12).unwrap();
            let r = hong_mandel_with(&e, 1, 0.4).unwrap();
            assert!(r.value.abs() < 1e-9, "q={q} S_HM={}", r.value);
        }
    }

    #[test]
    fn undeformed_coherent_hong_mandel_vanishes() {
        let e = PacsMoments::new(c(0.9, -0.4), 0, &DeformationParam::classical(), 1e-13).unwrap();
        for n in 1..=3 {
            let r = hong_mandel_with(&e, n, 1.1).unwrap();
            assert!(r.value.abs() < 1e-9, "N={n} S_HM={}", r.value);
        }
    }

    #[test]
    fn hillery_periodicity() {
        let e = PacsMoments::new(c(1.5, 0.3), 2, &dp(0.9), 1e-12).unwrap();
        for n in 1..=3 {
            let a = hillery_with(&e, n, 0.37).unwrap();
            let b = hillery_with(&e, n, 0.37 + PI / n as f64).unwrap();
            assert!((a.value - b.value).abs() < 1e-12);
        }
    }

    #[test]
    fn first_orders_coincide() {
        // Y_1 = Y, so both coefficients reduce to 4⟨ΔY²⟩/⟨[A,A†]⟩ - 1
        let e = PacsMoments::new(c(1.8, 0.0), 2, &dp(0.9), 1e-12).unwrap();
        let h = hillery_with(&e, 1, 0.2).unwrap();
        let hm = hong_mandel_with(&e, 1, 0.2).unwrap();
        assert!((h.value - hm.value).abs() < 1e-10);
    }

    #[test]
    fn squeezed_flag_follows_sign() {
        let e = PacsMoments::new(c(2.1, 0.0), 1, &dp(0.9), 1e-12).unwrap();
        let r = hillery_with(&e, 1, 0.0).unwrap();
        assert_eq!(r.squeezed, r.value < 0.0);
        assert!((r.value - r.numerator / r.denominator).abs() < 1e-15);
    }

    #[test]
    fn order_zero_rejected() {
        let e = PacsMoments::new(c(1.0, 0.0), 1, &dp(0.9), 1e-12).unwrap();
        assert!(hillery_with(&e, 0, 0.0).is_err());
        assert!(hong_mandel_with(&e, 0, 0.0).is_err());
        assert!(matches!(hong_mandel_with(&e, 9, 0.0), Err(Error::Resource(_))));
    }

    #[test]
    fn mean_power_matches_real_part() {
        let a = c(0.7, -1.1);
        let phi = 0.3;
        let y = (a * Complex64::from_polar(1.0, -phi)).re;
        for k in 0..6 {
            assert!((mean_quadrature_power(a, phi, k) - y.powi(k as i32)).abs() < 1e-13);
        }
    }
}
