//! Normal ordering of words in `A` and `A†` under `A A† = 1 + q² A† A`,
//! and normal-ordered expansions of quadrature powers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::qpoly::QPolynomial;

/// Largest supported quadrature power.
pub const MAX_QUADRATURE_ORDER: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `A`
    Lower,
    /// `A†`
    Raise,
}

impl Letter {
    /// Phase weight in `Y(φ) = ½(A e^{-iφ} + A† e^{iφ})`.
    pub fn phase_weight(self) -> i32 {
        match self {
            Letter::Lower => -1,
            Letter::Raise => 1,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Lower => write!(f, "A"),
            Letter::Raise => write!(f, "A+"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Letter::Lower),
            "A+" | "a+" | "Ad" | "ad" | "A†" | "a†" | "Adag" | "adag" => Ok(Letter::Raise),
            other => Err(Error::InvalidParameter(format!("unknown ladder letter {other:?}"))),
        }
    }
}

/// Parses a word such as `"A A+ A+"` or `"a,ad"`.
pub fn parse_word(text: &str) -> Result<Vec<Letter>> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == '*')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// `Σ P_{d,l}(q) · A†^d A^l`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<(u32, u32), QPolynomial>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(0, 0, QPolynomial::one())
    }

    /// `P · A†^d A^l`
    pub fn monomial(d: u32, l: u32, coefficient: QPolynomial) -> Self {
        let mut nf = Self::zero();
        nf.add_term(d, l, &coefficient);
        nf
    }

    pub fn add_term(&mut self, d: u32, l: u32, coefficient: &QPolynomial) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry((d, l)).or_default();
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&(d, l));
        }
    }

    pub fn add(&mut self, other: &NormalForm) {
        for ((d, l), p) in &other.terms {
            self.add_term(*d, *l, p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: u32, l: u32) -> Option<&QPolynomial> {
        self.terms.get(&(d, l))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &QPolynomial)> {
        self.terms.iter().map(|(k, p)| (*k, p))
    }

    /// Hermitian conjugate: `P_{d,l} A†^d A^l ↦ P_{d,l} A†^l A^d` (q is real).
    pub fn dagger(&self) -> Self {
        Self { terms: self.terms.iter().map(|((d, l), p)| ((*l, *d), p.clone())).collect() }
    }

    /// Right multiplication by one letter, keeping normal order.
    pub fn times_letter(&self, letter: Letter) -> Self {
        let mut out = NormalForm::zero();
        for ((d, l), p) in &self.terms {
            match letter {
                Letter::Lower => out.add_term(*d, l + 1, p),
                Letter::Raise => {
                    // A†^d (A^l A†) with A^l A† already normal ordered
                    let block = lowering_power_times_raise(*l);
                    for ((bd, bl), bp) in block.terms() {
                        out.add_term(d + bd, bl, &(p * bp));
                    }
                }
            }
        }
        out
    }

    /// Operator product `self · rhs`.
    pub fn times(&self, rhs: &NormalForm) -> Self {
        let mut out = NormalForm::zero();
        for ((d, l), p) in &rhs.terms {
            let mut partial = self.clone();
            for _ in 0..*d {
                partial = partial.times_letter(Letter::Raise);
            }
            for _ in 0..*l {
                partial = partial.times_letter(Letter::Lower);
            }
            for ((pd, pl), pp) in partial.terms {
                out.add_term(pd, pl, &(&pp * p));
            }
        }
        out
    }

    /// Coefficients evaluated at `q = 1` (undeformed oscillator).
    pub fn at_one(&self) -> BTreeMap<(u32, u32), num_bigint::BigInt> {
        self.terms
            .iter()
            .map(|(k, p)| (*k, p.at_one()))
            .filter(|(_, c)| *c != num_bigint::BigInt::from(0))
            .collect()
    }
}

impl fmt::Display for NormalForm {
    /// One line per `(d,l)`: `d l : polynomial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for ((d, l), p) in &self.terms {
            writeln!(f, "{d} {l} : {p}")?;
        }
        Ok(())
    }
}

fn block_cache() -> &'static Mutex<Vec<Arc<NormalForm>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<NormalForm>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Normal form of `A^l A†`, built by applying the defining relation to the
/// leftmost inversion: `A^l A† = A^{l-1} + q² (A^{l-1} A†) A`.
pub fn lowering_power_times_raise(l: u32) -> Arc<NormalForm> {
    let mut cache = block_cache().lock().expect("block cache poisoned");
    if cache.is_empty() {
        // A^0 A† = A†
        cache.push(Arc::new(NormalForm::monomial(1, 0, QPolynomial::one())));
    }
    while cache.len() <= l as usize {
        let k = cache.len() as u32;
        let prev = cache[k as usize - 1].clone();
        let mut next = NormalForm::monomial(0, k - 1, QPolynomial::one());
        for ((d, pl), p) in prev.terms() {
            next.add_term(d, pl + 1, &p.shifted(2));
        }
        cache.push(Arc::new(next));
    }
    cache[l as usize].clone()
}

/// Normal-ordered form of a word, read left to right as an operator product.
pub fn normal_order(word: &[Letter]) -> NormalForm {
    word.iter().fold(NormalForm::identity(), |nf, &letter| nf.times_letter(letter))
}

/// Expansion of a quadrature power as `2^{-prefactor_exp} Σ_w e^{iφw} NF_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadratureExpansion {
    /// Number of quadrature factors.
    pub order: u32,
    /// The overall prefactor is `2^{-prefactor_exp}`.
    pub prefactor_exp: u32,
    pub phase_terms: BTreeMap<i32, NormalForm>,
}

impl QuadratureExpansion {
    pub fn prefactor(&self) -> f64 {
        0.5f64.powi(self.prefactor_exp as i32)
    }

    pub fn term(&self, w: i32, d: u32, l: u32) -> Option<&QPolynomial> {
        self.phase_terms.get(&w).and_then(|nf| nf.coefficient(d, l))
    }

    /// Hermiticity: the weight `w` slot is the dagger of the `-w` slot.
    pub fn is_hermitian(&self) -> bool {
        self.phase_terms.iter().all(|(w, nf)| {
            self.phase_terms.get(&-w).map(NormalForm::dagger).unwrap_or_default() == *nf
        })
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.phase_terms
            .values()
            .all(|nf| nf.terms().all(|(_, p)| p.has_nonnegative_coefficients()))
    }
}

impl fmt::Display for QuadratureExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "prefactor 2^-{}", self.prefactor_exp)?;
        for (w, nf) in &self.phase_terms {
            for ((d, l), p) in nf.terms() {
                writeln!(f, "w={w} {d} {l} : {p}")?;
            }
        }
        Ok(())
    }
}

fn quadrature_cache() -> &'static Mutex<HashMap<u32, Arc<QuadratureExpansion>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<QuadratureExpansion>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Y(φ)^j` in normal-ordered form, exact in `q`.
///
/// Words are grouped by phase weight after each letter so the 2^j words
/// never need to be enumerated individually.
pub fn quadrature_power(j: u32) -> Result<Arc<QuadratureExpansion>> {
    if j == 0 || j > MAX_QUADRATURE_ORDER {
        return Err(Error::Resource(format!(
            "quadrature power must be in 1..={MAX_QUADRATURE_ORDER}, got {j}"
        )));
    }
    if let Some(hit) = quadrature_cache().lock().expect("quadrature cache poisoned").get(&j) {
        return Ok(hit.clone());
    }
    let mut phase_terms = BTreeMap::from([(0, NormalForm::identity())]);
    for _ in 0..j {
        let mut next: BTreeMap<i32, NormalForm> = BTreeMap::new();
        for (w, nf) in &phase_terms {
            for letter in [Letter::Lower, Letter::Raise] {
                next.entry(w + letter.phase_weight()).or_default().add(&nf.times_letter(letter));
            }
        }
        phase_terms = next;
    }
    let expansion = Arc::new(QuadratureExpansion { order: j, prefactor_exp: j, phase_terms });
    quadrature_cache()
        .lock()
        .expect("quadrature cache poisoned")
        .insert(j, expansion.clone());
    Ok(expansion)
}

/// `Y_N(φ)²` with `Y_N(φ) = ½(A^N e^{-iNφ} + A†^N e^{iNφ})`.
///
/// The four pieces are `A^{2N}`, `A†^{2N}`, the normal form of `A^N A†^N`,
/// and `A†^N A^N`; phase weights count `e^{iφ}` powers.
pub fn hillery_quadrature_square(n: u32) -> Result<QuadratureExpansion> {
    if n == 0 {
        return Err(Error::InvalidParameter("Hillery order must be >= 1".into()));
    }
    let w = 2 * n as i32;
    let mut lowered = vec![Letter::Lower; n as usize];
    lowered.extend(std::iter::repeat_n(Letter::Raise, n as usize));
    let mut middle = normal_order(&lowered);
    middle.add_term(n, n, &QPolynomial::one());
    let phase_terms = BTreeMap::from([
        (-w, NormalForm::monomial(0, 2 * n, QPolynomial::one())),
        (0, middle),
        (w, NormalForm::monomial(2 * n, 0, QPolynomial::one())),
    ]);
    Ok(QuadratureExpansion { order: 2, prefactor_exp: 2, phase_terms })
}
