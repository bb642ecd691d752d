//! Higher-order correlation function `g^(N)(0)` and Mandel parameter `Q_N`
//! built on central moments of the number operator `M = A†A`.
//!
//! Both follow the central-moment definitions literally, so the Poissonian
//! baseline is only zero at `N = 2`: for an undeformed coherent state the
//! fourth central moment is `⟨M⟩ + 3⟨M⟩²` and `Q_4 = 3⟨M⟩`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moments::PacsMoments;
use crate::qalgebra::DeformationParam;

/// `|Q|` below this classifies as Poissonian.
pub const CLASSIFICATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    SubPoissonian,
    Poissonian,
    SuperPoissonian,
}

impl Classification {
    pub fn from_mandel(q: f64) -> Self {
        if q < -CLASSIFICATION_TOL {
            Classification::SubPoissonian
        } else if q > CLASSIFICATION_TOL {
            Classification::SuperPoissonian
        } else {
            Classification::Poissonian
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::SubPoissonian => "sub_poissonian",
            Classification::Poissonian => "poissonian",
            Classification::SuperPoissonian => "super_poissonian",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatisticsReport {
    pub order: u32,
    /// `g^(N)(0) = (⟨(ΔM)^N⟩ - ⟨M⟩)/⟨M⟩^N + 1`
    pub g: f64,
    /// `Q_N = ⟨(ΔM)^N⟩/⟨M⟩ - 1`
    pub mandel_q: f64,
    pub mean_m: f64,
    pub central_moment: f64,
    pub classification: Classification,
}

/// `⟨(ΔM)^N⟩ = Σ_k C(N,k) (-1)^k ⟨M^{N-k}⟩ ⟨M⟩^k`.
pub fn central_moment_with(moments: &PacsMoments, order: u32) -> Result<f64> {
    if order == 0 {
        return Err(Error::InvalidParameter("central moment order must be >= 1".into()));
    }
    if order == 1 || moments.alpha().norm() == 0.0 {
        // first central moment, or a number eigenstate |m⟩
        return Ok(0.0);
    }
    let mean = moments.number_power(1)?.value.re;
    let mut total = 0.0;
    let mut binomial = 1.0;
    for k in 0..=order {
        if k > 0 {
            binomial *= (order - k + 1) as f64 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * binomial * moments.number_power(order - k)?.value.re * mean.powi(k as i32);
    }
    Ok(total)
}

pub fn central_moment_m(
    order: u32,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<f64> {
    central_moment_with(&PacsMoments::new(alpha, m, dp, tol)?, order)
}

/// Full report; `correlation` and `mandel` both return it.
pub fn statistics_with(moments: &PacsMoments, order: u32) -> Result<StatisticsReport> {
    if order < 2 {
        return Err(Error::InvalidParameter("statistics order must be >= 2".into()));
    }
    if moments.alpha().norm() == 0.0 && moments.added_photons() == 0 {
        return Err(Error::ZeroMean);
    }
    let mean_m = moments.number_power(1)?.value.re;
    if mean_m.is_nan() || mean_m <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let central_moment = central_moment_with(moments, order)?;
    let mandel_q = central_moment / mean_m - 1.0;
    let g = (central_moment - mean_m) / mean_m.powi(order as i32) + 1.0;
    Ok(StatisticsReport {
        order,
        g,
        mandel_q,
        mean_m,
        central_moment,
        classification: Classification::from_mandel(mandel_q),
    })
}

pub fn correlation(
    order: u32,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<StatisticsReport> {
    statistics_with(&PacsMoments::new(alpha, m, dp, tol)?, order)
}

pub fn mandel(
    order: u32,
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    tol: f64,
) -> Result<StatisticsReport> {
    statistics_with(&PacsMoments::new(alpha, m, dp, tol)?, order)
}
