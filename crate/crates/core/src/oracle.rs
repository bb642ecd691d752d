//! Brute-force reference evaluation on the truncated Fock space.
//!
//! Nothing here uses the closed-form series: ladder entries come from the
//! recurrence `[n+1]_q = 1 + q² [n]_q`, states are built by repeated
//! application of the raising operator, and expectation values are inner
//! products of explicitly transformed coefficient vectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator_words::{Letter, NormalForm};
use crate::qalgebra::DeformationParam;
use crate::states::ModeState;

/// `[0]_q, [1]_q, …, [len-1]_q` by recurrence.
pub fn ladder_spectrum(len: usize, dp: &DeformationParam) -> Vec<f64> {
    let q2 = dp.q_squared();
    let mut out = Vec::with_capacity(len);
    let mut current = 0.0;
    for _ in 0..len {
        out.push(current);
        current = 1.0 + q2 * current;
    }
    out
}

/// `A` on levels `0..dim`: `A|n⟩ = √[n] |n-1⟩`.
pub fn lowering_matrix(dim: usize, dp: &DeformationParam) -> DMatrix<f64> {
    let spectrum = ladder_spectrum(dim, dp);
    DMatrix::from_fn(dim, dim, |row, col| if col == row + 1 { spectrum[col].sqrt() } else { 0.0 })
}

/// `A†` on levels `0..dim`, truncated at the top level.
pub fn raising_matrix(dim: usize, dp: &DeformationParam) -> DMatrix<f64> {
    lowering_matrix(dim, dp).transpose()
}

/// Truncated matrix of a word (product left to right).
pub fn word_matrix(word: &[Letter], dim: usize, dp: &DeformationParam) -> DMatrix<f64> {
    let lower = lowering_matrix(dim, dp);
    let raise = raising_matrix(dim, dp);
    word.iter().fold(DMatrix::identity(dim, dim), |acc, letter| match letter {
        Letter::Lower => acc * &lower,
        Letter::Raise => acc * &raise,
    })
}

/// Truncated matrix of `Σ P_{d,l}(q) A†^d A^l`.
pub fn normal_form_matrix(nf: &NormalForm, dim: usize, dp: &DeformationParam) -> DMatrix<f64> {
    let lower = lowering_matrix(dim, dp);
    let raise = raising_matrix(dim, dp);
    let mut out = DMatrix::zeros(dim, dim);
    for ((d, l), poly) in nf.terms() {
        let mut term = DMatrix::identity(dim, dim);
        for _ in 0..d {
            term *= &raise;
        }
        for _ in 0..l {
            term *= &lower;
        }
        out += term * poly.evaluate(dp.q());
    }
    out
}

fn apply_letter(letter: Letter, v: &[Complex64], sqrt_int: &[f64]) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; v.len()];
    match letter {
        Letter::Lower => {
            for k in 1..v.len() {
                out[k - 1] = v[k] * sqrt_int[k];
            }
        }
        Letter::Raise => {
            for k in 0..v.len() - 1 {
                out[k + 1] = v[k] * sqrt_int[k + 1];
            }
        }
    }
    out
}

/// Applies a word (rightmost letter first) to a coefficient vector.
pub fn apply_word(word: &[Letter], v: &[Complex64], dp: &DeformationParam) -> Vec<Complex64> {
    let sqrt_int: Vec<f64> = ladder_spectrum(v.len(), dp).iter().map(|x| x.sqrt()).collect();
    word.iter().rev().fold(v.to_vec(), |acc, &letter| apply_letter(letter, &acc, &sqrt_int))
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `⟨ψ|word|ψ⟩`, requiring room for every raising letter above the support.
pub fn oracle_expectation(word: &[Letter], state: &ModeState) -> Result<Complex64> {
    let raises = word.iter().filter(|l| **l == Letter::Raise).count();
    let needed = state.support() + raises;
    if needed > state.n_max() {
        return Err(Error::Headroom { needed: needed + 1, available: state.n_max() + 1 });
    }
    let image = apply_word(word, state.coeffs(), state.deformation());
    Ok(inner(state.coeffs(), &image))
}

/// `⟨ψ|M|ψ⟩` for an explicit real matrix on the state's levels.
pub fn oracle_matrix_expectation(matrix: &DMatrix<f64>, state: &ModeState) -> Result<Complex64> {
    let dim = state.coeffs().len();
    if matrix.nrows() != dim || matrix.ncols() != dim {
        return Err(Error::Headroom { needed: matrix.nrows(), available: dim });
    }
    let c = state.coeffs();
    let mut total = Complex64::new(0.0, 0.0);
    for row in 0..dim {
        let mut acc = Complex64::new(0.0, 0.0);
        for col in 0..dim {
            acc += c[col] * matrix[(row, col)];
        }
        total += c[row].conj() * acc;
    }
    Ok(total)
}

/// `Σ_k |c_k|² [k]^N`.
pub fn oracle_number_power(state: &ModeState, power: u32) -> f64 {
    let spectrum = ladder_spectrum(state.coeffs().len(), state.deformation());
    state.coeffs().iter().zip(&spectrum).map(|(c, e)| c.norm_sqr() * e.powi(power as i32)).sum()
}

/// `Σ_k |c_k|² ([k] - ⟨M⟩)^N`.
pub fn oracle_number_central_moment(state: &ModeState, order: u32) -> f64 {
    let spectrum = ladder_spectrum(state.coeffs().len(), state.deformation());
    let mean = oracle_number_power(state, 1);
    state
        .coeffs()
        .iter()
        .zip(&spectrum)
        .map(|(c, e)| c.norm_sqr() * (e - mean).powi(order as i32))
        .sum()
}

/// PACS built as `A†^m |α⟩` renormalized, with `headroom` zero levels on top.
///
/// The coherent vector uses `c_n = c_{n-1} α / √[n]` and is extended until
/// the relative weight of new levels drops below `1e-40` (at most 4096
/// levels).
pub fn oracle_pacs_state(
    alpha: Complex64,
    m: u32,
    dp: &DeformationParam,
    headroom: usize,
) -> ModeState {
    const MAX_LEVELS: usize = 4096;
    let mut coherent = vec![Complex64::new(1.0, 0.0)];
    let mut q_int = 0.0;
    let mut peak: f64 = 1.0;
    while coherent.len() < MAX_LEVELS {
        q_int = 1.0 + dp.q_squared() * q_int;
        let next = coherent[coherent.len() - 1] * alpha / q_int.sqrt();
        peak = peak.max(next.norm_sqr());
        coherent.push(next);
        if next.norm_sqr() < 1e-40 * peak && coherent.len() > 8 {
            break;
        }
    }
    let mut v = coherent;
    v.resize(v.len() + m as usize + headroom, Complex64::new(0.0, 0.0));
    let raise = vec![Letter::Raise; m as usize];
    let mut v = apply_word(&raise, &v, dp);
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    ModeState::from_coeffs(alpha, m, *dp, v, 0.0).expect("non-empty vector")
}
