//! Parameter sweeps and figure presets, written as CSV.
//!
//! Points are evaluated in parallel; rows are always emitted in axis order.
//! Per-point failures land in the `error` column and the sweep carries on.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{MomentOrdering, MomentQuery, PacsMoments, DEFAULT_MOMENT_TOL};
use crate::photon_stats::statistics_with;
use crate::qalgebra::DeformationParam;
use crate::squeezing::{hillery_with, hong_mandel_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Hillery,
    HongMandel,
    Correlation,
    Mandel,
    Moment,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Hillery => "hillery",
            Quantity::HongMandel => "hong_mandel",
            Quantity::Correlation => "correlation",
            Quantity::Mandel => "mandel",
            Quantity::Moment => "moment",
        }
    }

    fn is_squeezing(self) -> bool {
        matches!(self, Quantity::Hillery | Quantity::HongMandel)
    }

    pub fn header(self) -> &'static [&'static str] {
        match self {
            Quantity::Hillery | Quantity::HongMandel => &[
                "q", "alpha_re", "alpha_im", "m", "N", "phi", "numerator", "denominator", "value",
                "squeezed", "error",
            ],
            Quantity::Correlation | Quantity::Mandel => &[
                "q", "alpha_re", "alpha_im", "m", "N", "mean_M", "central_moment", "g", "Q",
                "classification", "error",
            ],
            Quantity::Moment => &[
                "q", "alpha_re", "alpha_im", "m", "daggers", "lowerings", "ordering", "re", "im",
                "tail_estimate", "error",
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Phi,
    AlphaAbs,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count }
    }

    /// Evenly spaced points; the last one is exactly `stop`.
    pub fn points(&self) -> Vec<f64> {
        let last = self.count.saturating_sub(1).max(1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last
                }
            })
            .collect()
    }
}

/// Parameters held fixed along the sweep. The swept variable must be `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedParams {
    pub q: Option<f64>,
    pub alpha: Option<[f64; 2]>,
    /// Argument of α when `|α|` is swept.
    pub alpha_arg: f64,
    pub m: u32,
    /// Squeezing or statistics order `N`.
    pub order: u32,
    pub phi: Option<f64>,
    pub daggers: u32,
    pub lowerings: u32,
    pub ordering: MomentOrdering,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            q: None,
            alpha: None,
            alpha_arg: 0.0,
            m: 0,
            order: 1,
            phi: None,
            daggers: 1,
            lowerings: 1,
            ordering: MomentOrdering::Normal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub fixed: FixedParams,
    pub axis: Axis,
    pub range: Range,
    pub tol: f64,
}

impl SweepSpec {
    pub fn new(quantity: Quantity, fixed: FixedParams, axis: Axis, range: Range) -> Self {
        Self { quantity, fixed, axis, range, tol: DEFAULT_MOMENT_TOL }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        let r = &self.range;
        if r.count < 2 {
            return bad(format!("sweep needs at least 2 points, got {}", r.count));
        }
        if !r.start.is_finite() || !r.stop.is_finite() {
            return bad("sweep range must be finite".into());
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("tolerance must lie in (0, 1), got {}", self.tol));
        }
        let f = &self.fixed;
        match self.axis {
            Axis::Phi => {
                if f.phi.is_some() {
                    return bad("phi is the sweep axis and cannot also be fixed".into());
                }
                if !self.quantity.is_squeezing() {
                    return bad(format!("a phi sweep is meaningless for {}", self.quantity.as_str()));
                }
            }
            Axis::AlphaAbs => {
                if f.alpha.is_some() {
                    return bad("alpha is the sweep axis and cannot also be fixed".into());
                }
                if r.start < 0.0 || r.stop < 0.0 {
                    return bad("|alpha| range must be nonnegative".into());
                }
            }
            Axis::Q => {
                if f.q.is_some() {
                    return bad("q is the sweep axis and cannot also be fixed".into());
                }
                for q in [r.start, r.stop] {
                    DeformationParam::new(q)?;
                }
            }
        }
        if self.axis != Axis::Q {
            match f.q {
                Some(q) => {
                    DeformationParam::new(q)?;
                }
                None => return bad("q must be fixed".into()),
            }
        }
        if self.axis != Axis::AlphaAbs {
            match f.alpha {
                Some([re, im]) if re.is_finite() && im.is_finite() => {}
                Some(_) => return bad("alpha must be finite".into()),
                None => return bad("alpha must be fixed".into()),
            }
        }
        if self.quantity.is_squeezing() && self.axis != Axis::Phi && f.phi.is_none() {
            return bad("phi must be fixed".into());
        }
        match self.quantity {
            Quantity::Hillery | Quantity::HongMandel if f.order == 0 => {
                bad("squeezing order must be >= 1".into())
            }
            Quantity::Correlation | Quantity::Mandel if f.order < 2 => {
                bad("statistics order must be >= 2".into())
            }
            _ => Ok(()),
        }
    }

    fn point(&self, x: f64) -> (f64, Complex64, f64) {
        let f = &self.fixed;
        let mut q = f.q.unwrap_or(1.0);
        let mut alpha = f.alpha.map(|[re, im]| Complex64::new(re, im)).unwrap_or_default();
        let mut phi = f.phi.unwrap_or(0.0);
        match self.axis {
            Axis::Phi => phi = x,
            Axis::AlphaAbs => alpha = Complex64::from_polar(x, f.alpha_arg),
            Axis::Q => q = x,
        }
        (q, alpha, phi)
    }
}

/// Header plus one row per axis point, already formatted.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl SweepResult {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    /// Parsed numeric column; empty cells become `None`.
    pub fn numeric(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let c = self.column(name)?;
        Some(self.rows.iter().map(|r| r[c].parse().ok()).collect())
    }

    pub fn error_count(&self) -> usize {
        let c = self.column("error").expect("every sweep has an error column");
        self.rows.iter().filter(|r| !r[c].is_empty()).count()
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn params(q: f64, alpha: Complex64, m: u32) -> Vec<String> {
    vec![num(q), num(alpha.re), num(alpha.im), m.to_string()]
}

/// Parameter cells and the computed cells of one row.
type Cells = (Vec<String>, Result<Vec<String>>);

fn finish(cells: Cells, width: usize) -> Vec<String> {
    let (mut row, values) = cells;
    match values {
        Ok(v) => {
            row.extend(v);
            row.push(String::new());
        }
        Err(e) => {
            row.resize(width - 1, String::new());
            row.push(e.kind().to_string());
        }
    }
    row
}

fn squeezing_cells(spec: &SweepSpec, moments: Result<&PacsMoments>, q: f64, alpha: Complex64, phi: f64) -> Cells {
    let f = &spec.fixed;
    let mut row = params(q, alpha, f.m);
    row.push(f.order.to_string());
    row.push(num(phi));
    let report = moments.and_then(|e| match spec.quantity {
        Quantity::Hillery => hillery_with(e, f.order, phi),
        _ => hong_mandel_with(e, f.order, phi),
    });
    let values = report
        .map(|r| vec![num(r.numerator), num(r.denominator), num(r.value), r.squeezed.to_string()]);
    (row, values)
}

fn statistics_cells(spec: &SweepSpec, q: f64, alpha: Complex64) -> Cells {
    let f = &spec.fixed;
    let mut row = params(q, alpha, f.m);
    row.push(f.order.to_string());
    let report = DeformationParam::new(q)
        .and_then(|dp| PacsMoments::new(alpha, f.m, &dp, spec.tol))
        .and_then(|e| statistics_with(&e, f.order));
    let values = report.map(|r| {
        vec![
            num(r.mean_m),
            num(r.central_moment),
            num(r.g),
            num(r.mandel_q),
            r.classification.as_str().to_string(),
        ]
    });
    (row, values)
}

fn moment_cells(spec: &SweepSpec, q: f64, alpha: Complex64) -> Cells {
    let f = &spec.fixed;
    let query = match f.ordering {
        MomentOrdering::Normal => MomentQuery::normal(f.daggers, f.lowerings),
        MomentOrdering::Antinormal => MomentQuery::antinormal(f.lowerings, f.daggers),
        MomentOrdering::NumberPower => MomentQuery::number_power(f.daggers),
    };
    let mut row = params(q, alpha, f.m);
    row.extend([query.daggers.to_string(), query.lowerings.to_string(), query.ordering.as_str().to_string()]);
    let value = DeformationParam::new(q)
        .and_then(|dp| PacsMoments::new(alpha, f.m, &dp, spec.tol))
        .and_then(|e| e.evaluate(query));
    (row, value.map(|v| vec![num(v.value.re), num(v.value.im), num(v.tail_estimate)]))
}

fn point_cells(spec: &SweepSpec, x: f64) -> Cells {
    let (q, alpha, phi) = spec.point(x);
    match spec.quantity {
        Quantity::Hillery | Quantity::HongMandel => {
            let moments =
                DeformationParam::new(q).and_then(|dp| PacsMoments::new(alpha, spec.fixed.m, &dp, spec.tol));
            squeezing_cells(spec, moments.as_ref().map_err(Clone::clone), q, alpha, phi)
        }
        Quantity::Correlation | Quantity::Mandel => statistics_cells(spec, q, alpha),
        Quantity::Moment => moment_cells(spec, q, alpha),
    }
}

/// Evaluate a single parameter point given entirely by `fixed`.
/// Unlike a sweep, a computational failure is returned as the error.
pub fn evaluate_point(quantity: Quantity, fixed: FixedParams, tol: f64) -> Result<SweepResult> {
    let Some(q) = fixed.q else {
        return Err(Error::InvalidParameter("q must be given".into()));
    };
    // validate as a two-point q sweep that collapses onto the point
    let mut probe = fixed;
    probe.q = None;
    let spec = SweepSpec::new(quantity, probe, Axis::Q, Range::new(q, q, 2)).with_tol(tol);
    spec.validate()?;
    let (mut row, values) = point_cells(&spec, q);
    row.extend(values?);
    row.push(String::new());
    Ok(SweepResult { header: quantity.header().to_vec(), rows: vec![row] })
}

/// Evaluate every axis point of `spec`.
pub fn evaluate_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let xs = spec.range.points();
    let width = spec.quantity.header().len();
    let rows = if spec.axis == Axis::Phi {
        // one state for the whole sweep, so φ-independent moments are cached
        let (q, alpha, _) = spec.point(0.0);
        let moments = DeformationParam::new(q).and_then(|dp| PacsMoments::new(alpha, spec.fixed.m, &dp, spec.tol));
        xs.par_iter()
            .map(|&phi| finish(squeezing_cells(spec, moments.as_ref().map_err(Clone::clone), q, alpha, phi), width))
            .collect()
    } else {
        xs.par_iter().map(|&x| finish(point_cells(spec, x), width)).collect()
    };
    Ok(SweepResult { header: spec.quantity.header().to_vec(), rows })
}

/// Evaluate `spec` and write the CSV to `out`.
pub fn run_sweep(spec: &SweepSpec, out: &mut dyn Write) -> Result<SweepResult> {
    let result = evaluate_sweep(spec)?;
    out.write_all(result.to_csv().as_bytes()).map_err(|e| Error::Resource(e.to_string()))?;
    Ok(result)
}

pub const FIGURE_IDS: [&str; 9] =
    ["fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5"];

/// Deformation used by every deformed curve of the figures.
pub const FIGURE_Q: f64 = 0.9;
pub const PHI_POINTS: usize = 721;
pub const ALPHA_POINTS: usize = 200;
pub const Q_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub file: String,
    pub label: String,
    /// A `q = 1` comparison curve.
    pub baseline: bool,
    pub spec: SweepSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigurePreset {
    pub id: &'static str,
    pub description: &'static str,
    pub curves: Vec<Curve>,
    /// Settings the preset picks where its figure leaves them open.
    pub choices: Vec<String>,
}

fn alpha_range(q: f64) -> Range {
    let radius = DeformationParam::new(q).expect("valid q").radius();
    Range::new(0.05, 0.95 * radius, ALPHA_POINTS)
}

fn tag(x: f64) -> String {
    format!("{x}")
}

impl FigurePreset {
    pub fn new(id: &str) -> Result<Self> {
        let phi_range = Range::new(0.0, 2.0 * PI, PHI_POINTS);
        let abs_range = alpha_range(FIGURE_Q);
        let range_note = format!(
            "|alpha| axis spans [0.05, 0.95 * radius(q={FIGURE_Q})] = [0.05, {:.6}] for deformed and baseline curves alike",
            abs_range.stop
        );
        let phi_note = format!("phi axis samples {PHI_POINTS} points over [0, 2pi]");
        let mut curves = Vec::new();
        let mut push = |prefix: String, label: String, spec: SweepSpec| {
            if spec.axis == Axis::Q {
                curves.push(Curve { file: format!("{prefix}.csv"), label, baseline: false, spec });
                return;
            }
            for (q, baseline) in [(FIGURE_Q, false), (1.0, true)] {
                let mut spec = spec;
                spec.fixed.q = Some(q);
                curves.push(Curve {
                    file: format!("{prefix}_q{}.csv", tag(q)),
                    label: format!("{label}, q={q}"),
                    baseline,
                    spec,
                });
            }
        };
        let (id, description, choices): (&'static str, &'static str, Vec<String>) = match id {
            "fig1a" => {
                for m in 1..=3 {
                    let fixed = FixedParams { alpha: Some([2.1, 0.0]), m, order: 1, ..Default::default() };
                    push(format!("fig1a_m{m}"), format!("m={m}"), SweepSpec::new(Quantity::Hillery, fixed, Axis::Phi, phi_range));
                }
                ("fig1a", "Hillery S_H versus phi, N=1, alpha=2.1, m in {1,2,3}", vec![phi_note, "m values 1, 2, 3".into()])
            }
            "fig1b" => {
                for n in 2..=4 {
                    let fixed = FixedParams { phi: Some(0.1), m: 1, order: n, ..Default::default() };
                    push(format!("fig1b_N{n}"), format!("N={n}"), SweepSpec::new(Quantity::Hillery, fixed, Axis::AlphaAbs, abs_range));
                }
                ("fig1b", "Hillery S_H versus |alpha|, phi=0.1, m=1, N in {2,3,4}", vec![range_note, "alpha taken real".into()])
            }
            "fig2a" => {
                for m in 1..=3 {
                    let fixed = FixedParams { alpha: Some([1.0, 1.2]), m, order: 4, ..Default::default() };
                    push(format!("fig2a_m{m}"), format!("m={m}"), SweepSpec::new(Quantity::HongMandel, fixed, Axis::Phi, phi_range));
                }
                ("fig2a", "Hong-Mandel S_HM versus phi, N=4, alpha=1.0+1.2i, m in {1,2,3}", vec![phi_note, "m values 1, 2, 3".into()])
            }
            "fig2b" => {
                for n in 1..=4 {
                    let fixed = FixedParams { phi: Some(0.1), m: 3, order: n, ..Default::default() };
                    push(format!("fig2b_N{n}"), format!("N={n}"), SweepSpec::new(Quantity::HongMandel, fixed, Axis::AlphaAbs, abs_range));
                }
                (
                    "fig2b",
                    "Hong-Mandel S_HM versus |alpha|, phi=0.1, m=3",
                    vec![
                        range_note,
                        "alpha taken real".into(),
                        "N in {1,2,3,4}: covers labels read as N in {2,3,4} and as the moment order 2N in {2,4,6,8}".into(),
                    ],
                )
            }
            "fig3a" | "fig4a" => {
                let (quantity, name) =
                    if id == "fig3a" { (Quantity::Correlation, "fig3a") } else { (Quantity::Mandel, "fig4a") };
                for m in 1..=3 {
                    let fixed = FixedParams { m, order: 2, ..Default::default() };
                    push(format!("{name}_m{m}"), format!("m={m}"), SweepSpec::new(quantity, fixed, Axis::AlphaAbs, abs_range));
                }
                let description = if id == "fig3a" {
                    "correlation g versus |alpha|, N=2, m in {1,2,3}"
                } else {
                    "Mandel Q versus |alpha|, N=2, m in {1,2,3}"
                };
                (name, description, vec![range_note, "alpha taken real".into(), "m values 1, 2, 3".into()])
            }
            "fig3b" | "fig4b" => {
                let (quantity, name) =
                    if id == "fig3b" { (Quantity::Correlation, "fig3b") } else { (Quantity::Mandel, "fig4b") };
                for n in [2, 4, 6] {
                    let fixed = FixedParams { m: 1, order: n, ..Default::default() };
                    push(format!("{name}_N{n}"), format!("N={n}"), SweepSpec::new(quantity, fixed, Axis::AlphaAbs, abs_range));
                }
                let description = if id == "fig3b" {
                    "correlation g versus |alpha|, m=1, N in {2,4,6}"
                } else {
                    "Mandel Q versus |alpha|, m=1, N in {2,4,6}"
                };
                (name, description, vec![range_note, "alpha taken real".into()])
            }
            "fig5" => {
                for a in [1.0, 1.5, 2.0] {
                    let fixed = FixedParams { alpha: Some([a, 0.0]), m: 1, order: 2, ..Default::default() };
                    push(format!("fig5_alpha{}", tag(a)), format!("alpha={a}"), SweepSpec::new(Quantity::Mandel, fixed, Axis::Q, Range::new(0.5, 0.999, Q_POINTS)));
                }
                (
                    "fig5",
                    "Mandel Q_2 versus q, m=1, N=2",
                    vec![
                        "alpha values 1.0, 1.5, 2.0 are implementer-chosen".into(),
                        format!("q axis samples {Q_POINTS} points over [0.5, 0.999]"),
                        "rows where alpha lies outside the allowed disk for that q carry DivergenceError".into(),
                    ],
                )
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown figure preset {other}; expected one of {}",
                    FIGURE_IDS.join(", ")
                )))
            }
        };
        Ok(Self { id, description, curves, choices })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        for c in &mut self.curves {
            c.spec.tol = tol;
        }
        self
    }

    pub fn manifest_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("preset serializes")
    }
}

/// Output of [`run_figure`]: one result per curve, in preset order.
#[derive(Debug, Clone)]
pub struct FigureOutput {
    pub preset: FigurePreset,
    pub results: Vec<SweepResult>,
    pub files: Vec<PathBuf>,
}

impl FigureOutput {
    pub fn result(&self, file: &str) -> Option<&SweepResult> {
        self.preset.curves.iter().position(|c| c.file == file).map(|i| &self.results[i])
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Resource(format!("{}: {e}", path.display()))
}

/// Evaluate every curve of a preset into `out_dir`, plus `<id>_manifest.json`.
pub fn run_figure(preset: FigurePreset, out_dir: &Path) -> Result<FigureOutput> {
    std::fs::create_dir_all(out_dir).map_err(|e| io_err(out_dir, e))?;
    let mut results = Vec::with_capacity(preset.curves.len());
    let mut files = Vec::with_capacity(preset.curves.len() + 1);
    for curve in &preset.curves {
        let result = evaluate_sweep(&curve.spec)?;
        let path = out_dir.join(&curve.file);
        std::fs::write(&path, result.to_csv()).map_err(|e| io_err(&path, e))?;
        files.push(path);
        results.push(result);
    }
    let path = out_dir.join(format!("{}_manifest.json", preset.id));
    let mut manifest = preset.manifest_json();
    let _ = writeln!(manifest);
    std::fs::write(&path, manifest).map_err(|e| io_err(&path, e))?;
    files.push(path);
    Ok(FigureOutput { preset, results, files })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mandel_spec(q: f64, m: u32) -> SweepSpec {
        let fixed = FixedParams { q: Some(q), m, order: 2, ..Default::default() };
        SweepSpec::new(Quantity::Mandel, fixed, Axis::AlphaAbs, Range::new(0.1, 2.0, 20))
    }

    #[test]
    fn range_endpoints_exact() {
        let p = Range::new(0.0, 2.0 * PI, 721).points();
        assert_eq!(p.len(), 721);
        assert_eq!(p[0], 0.0);
        assert_eq!(p[720], 2.0 * PI);
    }

    #[test]
    fn mandel_coherent_rows() {
        let r = evaluate_sweep(&mandel_spec(0.9, 0)).unwrap();
        assert_eq!(r.rows.len(), 20);
        assert_eq!(r.error_count(), 0);
        let a = r.numeric("alpha_re").unwrap();
        let q = r.numeric("Q").unwrap();
        for (a, q) in a.iter().zip(&q) {
            let a = a.unwrap();
            assert!((q.unwrap() + 0.19 * a * a).abs() < 1e-8);
        }
    }

    #[test]
    fn invalid_specs() {
        let mut s = mandel_spec(0.9, 0);
        s.range.count = 1;
        assert!(s.validate().is_err());
        let mut s = mandel_spec(0.9, 0);
        s.fixed.alpha = Some([1.0, 0.0]);
        assert!(s.validate().is_err());
        let mut s = mandel_spec(0.9, 0);
        s.axis = Axis::Phi;
        assert!(s.validate().is_err());
        let mut s = mandel_spec(0.9, 0);
        s.fixed.order = 1;
        assert!(s.validate().is_err());
    }

    #[test]
    fn beyond_disk_rows_marked() {
        let mut s = mandel_spec(0.5, 1);
        s.range = Range::new(0.5, 3.0, 6);
        let r = evaluate_sweep(&s).unwrap();
        let e = r.column("error").unwrap();
        assert_eq!(r.rows[0][e], "");
        assert_eq!(r.rows[5][e], "DivergenceError");
        assert_eq!(r.rows[5][r.column("Q").unwrap()], "");
    }

    #[test]
    fn deterministic_output() {
        let fixed = FixedParams { q: Some(0.9), alpha: Some([1.0, 0.5]), m: 2, order: 2, ..Default::default() };
        let s = SweepSpec::new(Quantity::Hillery, fixed, Axis::Phi, Range::new(0.0, PI, 50));
        assert_eq!(evaluate_sweep(&s).unwrap().to_csv(), evaluate_sweep(&s).unwrap().to_csv());
    }

    #[test]
    fn presets_build() {
        for id in FIGURE_IDS {
            let p = FigurePreset::new(id).unwrap();
            for c in &p.curves {
                c.spec.validate().unwrap();
            }
        }
        assert_eq!(FigurePreset::new("fig1a").unwrap().curves.len(), 6);
        assert_eq!(FigurePreset::new("fig5").unwrap().curves.len(), 3);
        assert!(FigurePreset::new("fig9").is_err());
    }
}
