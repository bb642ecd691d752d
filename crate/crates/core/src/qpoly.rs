use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in `q` with exact integer coefficients, keyed by the power of `q`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coefficients: BTreeMap<u32, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c · q^exp`
    pub fn monomial(exp: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `[l]_q = 1 + q² + … + q^{2(l-1)}`.
    pub fn q_integer(l: u32) -> Self {
        Self::from_terms((0..l).map(|k| (2 * k, 1)))
    }

    pub fn add_term(&mut self, exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coefficients.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, exp: u32) -> BigInt {
        self.coefficients.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coefficients.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: u32) -> Self {
        Self { coefficients: self.coefficients.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn at_one(&self) -> BigInt {
        self.coefficients.values().sum()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coefficients.values().all(|c| !c.is_negative())
    }

    pub fn evaluate(&self, q: f64) -> f64 {
        self.coefficients
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * q.powi(*e as i32))
            .sum()
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (e, c) in &rhs.coefficients {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (ea, ca) in &self.coefficients {
            for (eb, cb) in &rhs.coefficients {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    /// Ascending exponents, e.g. `3 + 5q^2 + 3q^4 + q^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coefficients.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "{magnitude}")?,
                _ if magnitude.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{magnitude}q^{e}")?,
            }
        }
        Ok(())
    }
}
