use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qpacs::golden::golden_check;
use qpacs::moments::{MomentOrdering, DEFAULT_MOMENT_TOL};
use qpacs::operator_words::{normal_order, parse_word};
use qpacs::states::pacs_state;
use qpacs::sweep::{
    evaluate_point, run_figure, run_sweep, Axis, FigurePreset, FixedParams, Quantity, Range, SweepResult,
    SweepSpec, FIGURE_IDS,
};
use qpacs::{Complex64, DeformationParam, Error};

#[derive(Parser)]
#[command(name = "qpacs", version, about = "q-deformed photon-added coherent states: moments, squeezing, photon statistics")]
struct Cli {
    /// Relative tolerance of the series evaluations.
    #[arg(long, global = true, default_value_t = DEFAULT_MOMENT_TOL)]
    tol: f64,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output file (directory for `figure`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expectation value of A†^N A^L, A^N A†^L or (A†A)^N.
    Moment(MomentArgs),
    /// Normal-order a word in A and A†, e.g. `A A A+`.
    NormalOrder {
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Hillery-type squeezing coefficient S_H.
    Hillery(SqueezingArgs),
    /// Hong–Mandel-type squeezing coefficient S_HM.
    HongMandel(SqueezingArgs),
    /// Higher-order correlation function g^(N)(0).
    Correlation(StatisticsArgs),
    /// Higher-order Mandel parameter Q_N.
    Mandel(StatisticsArgs),
    /// Generic sweep of any quantity along one axis.
    Sweep(SweepArgs),
    /// Reproduce a figure preset as CSV files plus a manifest.
    Figure {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIGURE_IDS))]
        id: String,
    },
    /// Fock-basis coefficients of the PACS as `level,re,im` rows.
    State(StateArgs),
    /// Compare the rewriter with the tabulated quadrature expansions.
    Golden,
}

#[derive(Args, Clone, Copy)]
struct PointArgs {
    #[arg(long, default_value_t = 0.9)]
    q: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha_im: f64,
    /// Number of added photons.
    #[arg(long, default_value_t = 0)]
    m: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    Normal,
    Antinormal,
    NumberPower,
}

#[derive(Args)]
struct MomentArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Power of A† (the power N for number-power).
    #[arg(long, default_value_t = 1)]
    daggers: u32,
    /// Power of A (ignored for number-power).
    #[arg(long, default_value_t = 1)]
    lowerings: u32,
    #[arg(long, value_enum, default_value_t = OrderingArg::Normal)]
    ordering: OrderingArg,
    /// Sweep |α| as start:stop:count, keeping arg(α).
    #[arg(long, value_parser = parse_range)]
    alpha_sweep: Option<Range>,
}

#[derive(Args)]
struct SqueezingArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, default_value_t = 1)]
    order: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, conflicts_with = "phi_sweep")]
    phi: f64,
    /// Sweep φ as start:stop:count.
    #[arg(long, value_parser = parse_range, conflicts_with = "alpha_sweep")]
    phi_sweep: Option<Range>,
    /// Sweep |α| as start:stop:count, keeping arg(α).
    #[arg(long, value_parser = parse_range)]
    alpha_sweep: Option<Range>,
}

#[derive(Args)]
struct StatisticsArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// Sweep |α| as start:stop:count, keeping arg(α).
    #[arg(long, value_parser = parse_range, conflicts_with = "q_sweep")]
    alpha_sweep: Option<Range>,
    /// Sweep q as start:stop:count.
    #[arg(long, value_parser = parse_range)]
    q_sweep: Option<Range>,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Hillery,
    HongMandel,
    Correlation,
    Mandel,
    Moment,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Phi,
    AlphaAbs,
    Q,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// start:stop:count
    #[arg(long, value_parser = parse_range)]
    range: Range,
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, default_value_t = 1)]
    order: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    #[arg(long, default_value_t = 1)]
    daggers: u32,
    #[arg(long, default_value_t = 1)]
    lowerings: u32,
    #[arg(long, value_enum, default_value_t = OrderingArg::Normal)]
    ordering: OrderingArg,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    point: PointArgs,
}

fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(format!("expected start:stop:count, got {s}"));
    };
    let f = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x}: {e}"));
    let count = count.trim().parse::<usize>().map_err(|e| format!("{count}: {e}"))?;
    Ok(Range::new(f(start)?, f(stop)?, count))
}

impl From<OrderingArg> for MomentOrdering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Normal => MomentOrdering::Normal,
            OrderingArg::Antinormal => MomentOrdering::Antinormal,
            OrderingArg::NumberPower => MomentOrdering::NumberPower,
        }
    }
}

impl PointArgs {
    fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha_re, self.alpha_im)
    }

    fn fixed(&self) -> FixedParams {
        FixedParams {
            q: Some(self.q),
            alpha: Some([self.alpha_re, self.alpha_im]),
            alpha_arg: self.alpha().arg(),
            m: self.m,
            ..Default::default()
        }
    }
}

/// Sweep along `axis` if a range was given, else evaluate the single point.
enum Job {
    Point(Quantity, FixedParams),
    Sweep(SweepSpec),
}

fn job(quantity: Quantity, mut fixed: FixedParams, sweep: Option<(Axis, Range)>) -> Job {
    match sweep {
        None => Job::Point(quantity, fixed),
        Some((axis, range)) => {
            match axis {
                Axis::Phi => fixed.phi = None,
                Axis::AlphaAbs => fixed.alpha = None,
                Axis::Q => fixed.q = None,
            }
            Job::Sweep(SweepSpec::new(quantity, fixed, axis, range))
        }
    }
}

fn output(cli: &Cli) -> io::Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

enum Failure {
    Usage(String),
    Compute(String),
    // downstream reader went away, e.g. `| head`
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Compute(e.to_string())
    }
}

fn write_text(cli: &Cli, text: &str) -> Result<(), Failure> {
    let mut out = output(cli)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run_job(cli: &Cli, job: Job) -> Result<(), Failure> {
    match job {
        Job::Point(quantity, fixed) => {
            let result: SweepResult = evaluate_point(quantity, fixed, cli.tol)?;
            write_text(cli, &result.to_csv())
        }
        Job::Sweep(spec) => {
            let mut csv = Vec::new();
            let result = run_sweep(&spec.with_tol(cli.tol), &mut csv)?;
            write_text(cli, &String::from_utf8_lossy(&csv))?;
            let errors = result.error_count();
            if errors > 0 {
                eprintln!("qpacs: {errors} of {} points failed; see the error column", result.rows.len());
            }
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Moment(a) => {
            let mut fixed = a.point.fixed();
            fixed.daggers = a.daggers;
            fixed.lowerings = a.lowerings;
            fixed.ordering = a.ordering.into();
            run_job(cli, job(Quantity::Moment, fixed, a.alpha_sweep.map(|r| (Axis::AlphaAbs, r))))
        }
        Command::NormalOrder { word } => {
            let letters = parse_word(&word.join(" "))?;
            let nf = normal_order(&letters);
            write_text(cli, &nf.to_string())
        }
        Command::Hillery(a) | Command::HongMandel(a) => {
            let quantity =
                if matches!(cli.command, Command::Hillery(_)) { Quantity::Hillery } else { Quantity::HongMandel };
            let fixed = FixedParams { order: a.order, phi: Some(a.phi), ..a.point.fixed() };
            let sweep = a
                .phi_sweep
                .map(|r| (Axis::Phi, r))
                .or(a.alpha_sweep.map(|r| (Axis::AlphaAbs, r)));
            run_job(cli, job(quantity, fixed, sweep))
        }
        Command::Correlation(a) | Command::Mandel(a) => {
            let quantity =
                if matches!(cli.command, Command::Correlation(_)) { Quantity::Correlation } else { Quantity::Mandel };
            let fixed = FixedParams { order: a.order, ..a.point.fixed() };
            let sweep = a.alpha_sweep.map(|r| (Axis::AlphaAbs, r)).or(a.q_sweep.map(|r| (Axis::Q, r)));
            run_job(cli, job(quantity, fixed, sweep))
        }
        Command::Sweep(a) => {
            let quantity = match a.quantity {
                QuantityArg::Hillery => Quantity::Hillery,
                QuantityArg::HongMandel => Quantity::HongMandel,
                QuantityArg::Correlation => Quantity::Correlation,
                QuantityArg::Mandel => Quantity::Mandel,
                QuantityArg::Moment => Quantity::Moment,
            };
            let axis = match a.axis {
                AxisArg::Phi => Axis::Phi,
                AxisArg::AlphaAbs => Axis::AlphaAbs,
                AxisArg::Q => Axis::Q,
            };
            let fixed = FixedParams {
                order: a.order,
                phi: Some(a.phi),
                daggers: a.daggers,
                lowerings: a.lowerings,
                ordering: a.ordering.into(),
                ..a.point.fixed()
            };
            let fixed = match quantity {
                Quantity::Hillery | Quantity::HongMandel => fixed,
                _ => FixedParams { phi: None, ..fixed },
            };
            run_job(cli, job(quantity, fixed, Some((axis, a.range))))
        }
        Command::Figure { id } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
            let preset = FigurePreset::new(id)?.with_tol(cli.tol);
            let output = run_figure(preset, &dir)?;
            let mut stdout = io::stdout().lock();
            for f in &output.files {
                writeln!(stdout, "{}", f.display())?;
            }
            let errors: usize = output.results.iter().map(SweepResult::error_count).sum();
            if errors > 0 {
                eprintln!("qpacs: {errors} points carry error markers");
            }
            Ok(())
        }
        Command::State(a) => {
            let dp = DeformationParam::new(a.point.q)?;
            let state = pacs_state(a.point.alpha(), a.point.m, &dp, cli.tol)?;
            write_text(cli, &state.to_csv())
        }
        Command::Golden => {
            let report = golden_check()?;
            write_text(cli, &format!("{report}"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("qpacs: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("qpacs: {msg}");
            ExitCode::from(1)
        }
    }
}
