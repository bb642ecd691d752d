//! Independent undeformed (`q = 1`) reference for photon-added coherent
//! states, built from bosonic Wick reordering and coherent-state eigenvalues.
//! Nothing here calls into the library's series code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use qpacs::operator_words::Letter;
use qpacs::Complex64;

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `m! L_m(-x)`, the squared norm of `a†^m |α⟩` with `x = |α|²`.
pub fn laguerre_norm(m: u32, x: f64) -> f64 {
    (0..=m).map(|k| binomial(m, k) * factorial(m) / factorial(k) * x.powi(k as i32)).sum()
}

/// Bosonic normal form of a word: `(d, l) → count` for `a†^d a^l`.
/// Built by multiplying letters on the left, `a a†^d a^l = a†^d a^{l+1} + d a†^{d-1} a^l`.
pub fn bosonic_normal_order(word: &[Letter]) -> BTreeMap<(u32, u32), i64> {
    let mut nf = BTreeMap::from([((0u32, 0u32), 1i64)]);
    for letter in word.iter().rev() {
        let mut next = BTreeMap::new();
        for (&(d, l), &c) in &nf {
            match letter {
                Letter::Raise => *next.entry((d + 1, l)).or_insert(0) += c,
                Letter::Lower => {
                    *next.entry((d, l + 1)).or_insert(0) += c;
                    if d > 0 {
                        *next.entry((d - 1, l)).or_insert(0) += c * d as i64;
                    }
                }
            }
        }
        next.retain(|_, c| *c != 0);
        nf = next;
    }
    nf
}

/// `⟨α| a^k a†^j |α⟩` reordered with `a^k a†^j = Σ_r C(k,r) C(j,r) r! a†^{j-r} a^{k-r}`.
fn coherent_antinormal(alpha: Complex64, k: u32, j: u32) -> Complex64 {
    (0..=k.min(j))
        .map(|r| {
            let w = binomial(k, r) * binomial(j, r) * factorial(r);
            alpha.conj().powu(j - r) * alpha.powu(k - r) * w
        })
        .sum()
}

/// Undeformed PACS `|α, m⟩ ∝ a†^m |α⟩`.
#[derive(Debug, Clone, Copy)]
pub struct Reference {
    pub alpha: Complex64,
    pub m: u32,
}

impl Reference {
    pub fn new(alpha: Complex64, m: u32) -> Self {
        Self { alpha, m }
    }

    fn norm(&self) -> f64 {
        laguerre_norm(self.m, self.alpha.norm_sqr())
    }

    /// `⟨α| a^m X a†^m |α⟩` for `X = a†^d a^l`.
    fn sandwich(&self, d: u32, l: u32) -> Complex64 {
        let (a, m) = (self.alpha, self.m);
        let mut total = Complex64::new(0.0, 0.0);
        // a^m a†^d → Σ_r …  a†^{d-r} a^{m-r};  a^l a†^m → Σ_s …  a†^{m-s} a^{l-s}
        for r in 0..=m.min(d) {
            let wr = binomial(m, r) * binomial(d, r) * factorial(r);
            for s in 0..=m.min(l) {
                let ws = binomial(l, s) * binomial(m, s) * factorial(s);
                let middle = coherent_antinormal(a, m - r, m - s);
                total += a.conj().powu(d - r) * middle * a.powu(l - s) * (wr * ws);
            }
        }
        total
    }

    /// `⟨a†^d a^l⟩`.
    pub fn normal(&self, d: u32, l: u32) -> Complex64 {
        self.sandwich(d, l) / self.norm()
    }

    /// `⟨a^k a†^j⟩`.
    pub fn antinormal(&self, k: u32, j: u32) -> Complex64 {
        (0..=k.min(j))
            .map(|r| self.normal(j - r, k - r) * (binomial(k, r) * binomial(j, r) * factorial(r)))
            .sum()
    }

    /// `⟨(a†a)^p⟩ = Σ_k S(p,k) ⟨a†^k a^k⟩`.
    pub fn number_power(&self, p: u32) -> f64 {
        let stirling = stirling2_row(p);
        (0..=p).map(|k| stirling[k as usize] * self.normal(k, k).re).sum()
    }

    pub fn mean_number(&self) -> f64 {
        self.normal(1, 1).re
    }

    pub fn number_central_moment(&self, order: u32) -> f64 {
        let mean = self.mean_number();
        (0..=order)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(order, k) * self.number_power(order - k) * mean.powi(k as i32)
            })
            .sum()
    }

    /// `(Q_N, g^(N))`.
    pub fn statistics(&self, order: u32) -> (f64, f64) {
        let mean = self.mean_number();
        let central = self.number_central_moment(order);
        (central / mean - 1.0, (central - mean) / mean.powi(order as i32) + 1.0)
    }

    /// `⟨Y^j⟩` for `Y = ½(a e^{-iφ} + a† e^{iφ})`, using
    /// `(x a + y a†)^j = Σ_k j!/(k!(j-2k)!) (xy/2)^k :(x a + y a†)^{j-2k}:`.
    pub fn quadrature_power(&self, j: u32, phi: f64) -> f64 {
        let x = Complex64::from_polar(0.5, -phi);
        let y = x.conj();
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..=j / 2 {
            let n = j - 2 * k;
            let w = factorial(j) / (factorial(k) * factorial(n)) * (x * y / 2.0).powu(k);
            for r in 0..=n {
                total += w * binomial(n, r) * y.powu(r) * x.powu(n - r) * self.normal(r, n - r);
            }
        }
        total.re
    }

    /// `⟨(Y - ⟨Y⟩)^k⟩`.
    pub fn quadrature_central_moment(&self, k: u32, phi: f64) -> f64 {
        let mean = self.quadrature_power(1, phi);
        (0..=k)
            .map(|i| binomial(k, i) * (-mean).powi((k - i) as i32) * self.quadrature_power(i, phi))
            .sum()
    }

    /// Hillery coefficient; the commutator `[a^N, a†^N]` is evaluated directly.
    pub fn hillery(&self, order: u32, phi: f64) -> f64 {
        let an = self.normal(order, 0).conj();
        let a2n = self.normal(2 * order, 0).conj();
        let phase = Complex64::from_polar(1.0, -2.0 * order as f64 * phi);
        // ⟨(ΔY_N)²⟩ with Y_N = ½(a^N e^{-iNφ} + h.c.)
        let y2 = 0.25 * (2.0 * (a2n * phase).re + self.normal(order, order).re + self.antinormal(order, order).re);
        let y1 = (an * Complex64::from_polar(1.0, -(order as f64) * phi)).re;
        let variance = y2 - y1 * y1;
        let comm = self.antinormal(order, order).re - self.normal(order, order).re;
        (4.0 * variance - comm) / comm
    }

    /// Hong–Mandel coefficient; at `q = 1` the commutator is the identity.
    pub fn hong_mandel(&self, order: u32, phi: f64) -> f64 {
        let df: f64 = (1..=order).map(|k| (2 * k - 1) as f64).product();
        (4f64.powi(order as i32) * self.quadrature_central_moment(2 * order, phi) - df) / df
    }
}

/// `S(p, k)` for `k = 0..=p`.
pub fn stirling2_row(p: u32) -> Vec<f64> {
    let mut row = vec![1.0];
    for n in 1..=p as usize {
        let mut next = vec![0.0; n + 1];
        for k in 1..=n {
            let prev = if k < row.len() { row[k] } else { 0.0 };
            next[k] = k as f64 * prev + row[k - 1];
        }
        row = next;
    }
    row
}

/// Every word of exactly `len` letters.
pub fn all_words(len: usize) -> Vec<Vec<Letter>> {
    (0..1u32 << len)
        .map(|bits| {
            (0..len)
                .map(|i| if bits >> i & 1 == 1 { Letter::Raise } else { Letter::Lower })
                .collect()
        })
        .collect()
}

/// `|a - b| ≤ tol · max(1, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let scale = b.norm();
    if scale == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / scale
    }
}
