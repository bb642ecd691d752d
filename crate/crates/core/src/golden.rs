//! Hand-derived normal-ordered expansions of `⟨Y(φ)^j⟩`, `j = 2..6`, as
//! published, and a coefficient-by-coefficient comparison against the
//! rewriter output.
//!
//! A printed `2Re{X e^{-ikφ}}` contributes `X` to phase weight `-k` and its
//! conjugate to `+k`, so only weights `w ≤ 0` are transcribed.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::operator_words::{quadrature_power, NormalForm, QuadratureExpansion};
use crate::qpoly::QPolynomial;

/// One printed term: `poly(q) · A†^d A^l` at phase weight `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedTerm {
    pub w: i32,
    pub d: u32,
    pub l: u32,
    pub poly: QPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedExpansion {
    pub order: u32,
    pub terms: Vec<PrintedTerm>,
}

impl PrintedExpansion {
    /// Completes the transcription into a full expansion (mirroring `w < 0`).
    pub fn to_expansion(&self) -> QuadratureExpansion {
        let mut expansion = QuadratureExpansion {
            order: self.order,
            prefactor_exp: self.order,
            phase_terms: Default::default(),
        };
        for t in &self.terms {
            expansion.phase_terms.entry(t.w).or_insert_with(NormalForm::zero).add_term(t.d, t.l, &t.poly);
            if t.w != 0 {
                expansion
                    .phase_terms
                    .entry(-t.w)
                    .or_insert_with(NormalForm::zero)
                    .add_term(t.l, t.d, &t.poly);
            }
        }
        expansion
    }
}

fn p(terms: &[(u32, i64)]) -> QPolynomial {
    QPolynomial::from_terms(terms.iter().copied())
}

/// `μ = 1 + q² + q⁴ + q⁶ + q⁸`
pub fn mu() -> QPolynomial {
    QPolynomial::q_integer(5)
}

/// `λ = μ + q⁴ + q⁶ + 2q⁸ + 2q¹⁰ + 2q¹² + q¹⁴ + q¹⁶`
pub fn lambda() -> QPolynomial {
    &mu() + &p(&[(4, 1), (6, 1), (8, 2), (10, 2), (12, 2), (14, 1), (16, 1)])
}

fn term(w: i32, d: u32, l: u32, poly: QPolynomial) -> PrintedTerm {
    PrintedTerm { w, d, l, poly }
}

/// Transcriptions of the published `⟨Y(φ)^j⟩` expressions for `j = 2..=6`.
pub fn printed_expansions() -> Vec<PrintedExpansion> {
    let one = QPolynomial::one;
    vec![
        PrintedExpansion {
            order: 2,
            terms: vec![
                term(0, 0, 0, one()),
                term(0, 1, 1, p(&[(0, 1), (2, 1)])),
                term(-2, 0, 2, one()),
            ],
        },
        PrintedExpansion {
            order: 3,
            terms: vec![
                term(-3, 0, 3, one()),
                term(-1, 0, 1, p(&[(0, 2), (2, 1)])),
                term(-1, 1, 2, p(&[(0, 1), (2, 1), (4, 1)])),
            ],
        },
        PrintedExpansion {
            order: 4,
            terms: vec![
                term(0, 0, 0, p(&[(0, 2), (2, 1)])),
                term(0, 1, 1, p(&[(0, 3), (2, 5), (4, 3), (6, 1)])),
                term(0, 2, 2, &mu() + &p(&[(4, 1)])),
                term(-4, 0, 4, one()),
                term(-2, 0, 2, p(&[(0, 3), (2, 2), (4, 1)])),
                term(-2, 1, 3, &mu() + &p(&[(8, -1)])),
            ],
        },
        PrintedExpansion {
            order: 5,
            terms: vec![
                term(-5, 0, 5, one()),
                term(-3, 1, 4, mu()),
                term(-3, 0, 3, p(&[(0, 4), (2, 3), (4, 2), (6, 1)])),
                term(-1, 0, 1, p(&[(0, 5), (2, 6), (4, 3), (6, 1)])),
                term(
                    -1,
                    1,
                    2,
                    &(&mu() * &p(&[(0, 3)])) + &p(&[(0, 1), (2, 4), (4, 6), (6, 3), (10, 1)]),
                ),
                term(-1, 2, 3, &mu() + &p(&[(4, 1), (6, 1), (8, 1), (10, 1), (12, 1)])),
            ],
        },
        PrintedExpansion {
            order: 6,
            terms: vec![
                term(0, 0, 0, p(&[(0, 5), (2, 6), (4, 3), (6, 1)])),
                term(0, 1, 1, p(&[(0, 9), (2, 22), (4, 25), (6, 19), (8, 10), (10, 4), (12, 1)])),
                term(
                    0,
                    2,
                    2,
                    p(&[
                        (0, 5),
                        (2, 9),
                        (4, 17),
                        (6, 18),
                        (8, 18),
                        (10, 12),
                        (12, 7),
                        (14, 3),
                        (16, 1),
                    ]),
                ),
                term(0, 3, 3, &lambda() + &p(&[(6, 1), (10, 1), (12, 1), (14, 1), (18, 1)])),
                term(-6, 0, 6, one()),
                term(-4, 0, 4, p(&[(0, 5), (2, 4), (4, 3), (6, 2), (8, 1)])),
                term(-4, 1, 5, &mu() + &p(&[(10, 1)])),
                term(-2, 0, 2, p(&[(0, 9), (2, 13), (4, 12), (6, 7), (8, 3), (10, 1)])),
                term(
                    -2,
                    1,
                    3,
                    p(&[(0, 5), (2, 9), (4, 12), (6, 14), (8, 10), (10, 6), (12, 3), (14, 1)]),
                ),
                term(-2, 2, 4, lambda()),
            ],
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldenStatus {
    Match,
    /// Both sides have the term, with different coefficients.
    Mismatch,
    /// The rewriter produces a term the printed formula omits.
    MissingFromPrinted,
    /// The printed formula has a term the rewriter does not produce.
    ExtraInPrinted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenEntry {
    pub order: u32,
    pub w: i32,
    pub d: u32,
    pub l: u32,
    pub printed: Option<QPolynomial>,
    pub derived: Option<QPolynomial>,
    pub status: GoldenStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenReport {
    pub entries: Vec<GoldenEntry>,
}

impl GoldenReport {
    pub fn entry(&self, order: u32, w: i32, d: u32, l: u32) -> Option<&GoldenEntry> {
        self.entries.iter().find(|e| e.order == order && e.w == w && e.d == d && e.l == l)
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &GoldenEntry> {
        self.entries.iter().filter(|e| e.status != GoldenStatus::Match)
    }

    pub fn order_matches(&self, order: u32) -> bool {
        self.entries.iter().filter(|e| e.order == order).all(|e| e.status == GoldenStatus::Match)
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Option<QPolynomial>| x.as_ref().map_or("-".to_string(), |p| p.to_string());
        for e in &self.entries {
            writeln!(
                f,
                "j={} w={} A+^{} A^{}: {:?} printed [{}] derived [{}]",
                e.order,
                e.w,
                e.d,
                e.l,
                e.status,
                show(&e.printed),
                show(&e.derived)
            )?;
        }
        Ok(())
    }
}

/// Compares every printed coefficient (phase weights `w ≤ 0`) with the
/// rewriter. Mismatches are data, not errors.
pub fn golden_check() -> Result<GoldenReport> {
    let mut entries = Vec::new();
    for printed in printed_expansions() {
        let derived = quadrature_power(printed.order)?;
        let mut keys: BTreeSet<(i32, u32, u32)> =
            printed.terms.iter().map(|t| (t.w, t.d, t.l)).collect();
        for (w, nf) in derived.phase_terms.iter().filter(|(w, _)| **w <= 0) {
            keys.extend(nf.terms().map(|((d, l), _)| (*w, d, l)));
        }
        for (w, d, l) in keys.into_iter().rev() {
            let printed_poly =
                printed.terms.iter().find(|t| (t.w, t.d, t.l) == (w, d, l)).map(|t| t.poly.clone());
            let derived_poly = derived.term(w, d, l).cloned();
            let status = match (&printed_poly, &derived_poly) {
                (Some(a), Some(b)) if a == b => GoldenStatus::Match,
                (Some(_), Some(_)) => GoldenStatus::Mismatch,
                (None, Some(_)) => GoldenStatus::MissingFromPrinted,
                (Some(_), None) => GoldenStatus::ExtraInPrinted,
                (None, None) => unreachable!("key came from one of the sides"),
            };
            entries.push(GoldenEntry {
                order: printed.order,
                w,
                d,
                l,
                printed: printed_poly,
                derived: derived_poly,
                status,
            });
        }
    }
    Ok(GoldenReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(mu().to_string(), "1 + q^2 + q^4 + q^6 + q^8");
        assert_eq!(
            lambda().to_string(),
            "1 + q^2 + 2q^4 + 2q^6 + 3q^8 + 2q^10 + 2q^12 + q^14 + q^16"
        );
    }

    #[test]
    fn required_coefficients_match() {
        let report = golden_check().unwrap();
        assert!(report.order_matches(2));
        assert_eq!(report.entry(3, -1, 0, 1).unwrap().status, GoldenStatus::Match);
        assert_eq!(report.entry(4, 0, 1, 1).unwrap().status, GoldenStatus::Match);
        assert_eq!(report.entry(6, 0, 1, 1).unwrap().status, GoldenStatus::Match);
    }

    #[test]
    fn printed_expansions_are_hermitian_when_completed() {
        for printed in printed_expansions() {
            assert!(printed.to_expansion().is_hermitian());
        }
    }
}
