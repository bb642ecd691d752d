use qpacs::golden::{golden_check, lambda, mu, printed_expansions, GoldenStatus};
use qpacs::operator_words::quadrature_power;
use qpacs::qpoly::QPolynomial;

#[test]
fn printed_table_agrees_with_rewriter() {
    let report = golden_check().unwrap();
    let bad: Vec<_> = report.discrepancies().collect();
    assert!(bad.is_empty(), "{bad:?}");
    for j in 2..=6 {
        assert!(report.order_matches(j));
    }
}

#[test]
fn required_coefficients() {
    let report = golden_check().unwrap();
    let cases = [
        (2, vec![(0, 1), (2, 1)]),
        (4, vec![(0, 3), (2, 5), (4, 3), (6, 1)]),
        (6, vec![(0, 9), (2, 22), (4, 25), (6, 19), (8, 10), (10, 4), (12, 1)]),
    ];
    for (j, terms) in cases {
        let want = QPolynomial::from_terms(terms.into_iter().map(|(e, c): (u32, i32)| (e, c)));
        let entry = report.entry(j, 0, 1, 1).unwrap();
        assert_eq!(entry.status, GoldenStatus::Match);
        assert_eq!(entry.derived.as_ref(), Some(&want));
        assert_eq!(quadrature_power(j).unwrap().term(0, 1, 1), Some(&want));
    }
}

#[test]
fn constants_and_mirroring() {
    assert_eq!(mu().to_string(), "1 + q^2 + q^4 + q^6 + q^8");
    assert_eq!(lambda().at_one(), 15.into());
    for printed in printed_expansions() {
        let e = printed.to_expansion();
        assert!(e.is_hermitian());
        assert!(e.all_coefficients_nonnegative());
    }
}
