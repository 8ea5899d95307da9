//! `rmoments`: radial expectation values from the command line.

mod records;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rmoments::hydrogen::{expval, kramers_pasternack_range};
use rmoments::oracle::{ho_expval_oracle, ho_expval_quadrature, hydrogen_expval_oracle, hydrogen_expval_quadrature};
use rmoments::oscillator::{
    expval_closed, expval_closed_real, expval_dual_hahn, expval_recurrence_range, inversion_partner,
};
use rmoments::verify::{self, VerifyConfig};
use rmoments::{Error, ExactValue, Executor, HydrogenState, NegativeMode, OscillatorState, Rational, RecurrenceMode};

use records::{write_records, Format, OutputRecord, StateFields, System};

const QUADRATURE_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "rmoments", version, about = "Exact radial moments <r^p> for the n-dimensional oscillator and hydrogen")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moments of the n-dimensional isotropic harmonic oscillator.
    Ho(HoArgs),
    /// Moments of a hydrogen-like atom.
    Hydrogen(HydrogenArgs),
    /// Run the cross-validation sweep.
    Verify(VerifyArgs),
    /// Write a table of moments over a range of powers.
    Table {
        #[command(subcommand)]
        system: TableSystem,
    },
}

#[derive(Subcommand, Debug)]
enum TableSystem {
    Ho {
        #[command(flatten)]
        state: HoState,
        #[command(flatten)]
        range: TableRange,
        #[arg(long, value_enum, default_value_t = HoMethod::Closed)]
        method: HoMethod,
        #[arg(long, value_enum, default_value_t = HoMode::Derived)]
        mode: HoMode,
    },
    Hydrogen {
        #[command(flatten)]
        state: HydrogenStateArgs,
        #[command(flatten)]
        range: TableRange,
        #[arg(long, value_enum, default_value_t = HydrogenMethod::Closed)]
        method: HydrogenMethod,
        #[arg(long, value_enum, default_value_t = HydrogenMode::Consistent)]
        mode: HydrogenMode,
    },
}

#[derive(Args, Debug)]
struct TableRange {
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    p_min: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 4)]
    p_max: i64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct HoState {
    /// Dimension n.
    #[arg(long)]
    dim: u32,
    /// Principal number N.
    #[arg(long = "N")]
    principal: u32,
    /// Hyperangular number K.
    #[arg(long = "K")]
    angular: u32,
}

#[derive(Args, Debug)]
struct HoArgs {
    #[command(flatten)]
    state: HoState,
    /// Integer power; repeat or comma-separate for several.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required_unless_present = "p_real")]
    p: Vec<i64>,
    /// Real power, evaluated in floating point.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', conflicts_with = "p")]
    p_real: Vec<f64>,
    #[arg(long, value_enum, default_value_t = HoMethod::Closed)]
    method: HoMethod,
    /// Recurrence coefficient: derived (default) or the printed one.
    #[arg(long, value_enum, default_value_t = HoMode::Derived)]
    mode: HoMode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Omit exact values.
    #[arg(long)]
    float_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HoMethod {
    Closed,
    DualHahn,
    Recurrence,
    Inversion,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HoMode {
    Derived,
    #[value(name = "paper-literal")]
    Printed,
}

impl From<HoMode> for RecurrenceMode {
    fn from(mode: HoMode) -> Self {
        match mode {
            HoMode::Derived => RecurrenceMode::Derived,
            HoMode::Printed => RecurrenceMode::Printed,
        }
    }
}

#[derive(Args, Debug)]
struct HydrogenStateArgs {
    /// Principal number n.
    #[arg(long)]
    n: u32,
    /// Orbital number l.
    #[arg(long)]
    l: u32,
    /// Nuclear charge, a rational such as 2 or 3/2.
    #[arg(long = "Z", default_value = "1")]
    z: Rational,
    /// Bohr radius, a rational.
    #[arg(long, default_value = "1")]
    a0: Rational,
}

#[derive(Args, Debug)]
struct HydrogenArgs {
    #[command(flatten)]
    state: HydrogenStateArgs,
    /// Integer power; repeat or comma-separate for several.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required_unless_present = "power_real")]
    power: Vec<i64>,
    /// Real power, evaluated by quadrature.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', conflicts_with = "power")]
    power_real: Vec<f64>,
    #[arg(long, value_enum, default_value_t = HydrogenMethod::Closed)]
    method: HydrogenMethod,
    /// Negative powers: consistent inversion (default) or the printed form.
    #[arg(long, value_enum, default_value_t = HydrogenMode::Consistent)]
    mode: HydrogenMode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    float_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HydrogenMethod {
    Closed,
    Recurrence,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HydrogenMode {
    Consistent,
    #[value(name = "paper-literal")]
    Printed,
}

impl From<HydrogenMode> for NegativeMode {
    fn from(mode: HydrogenMode) -> Self {
        match mode {
            HydrogenMode::Consistent => NegativeMode::Consistent,
            HydrogenMode::Printed => NegativeMode::Printed,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    dim_max: u32,
    #[arg(long = "N-max", default_value_t = 12)]
    n_max: u32,
    /// Inclusive integer range `a..b`.
    #[arg(long, allow_hyphen_values = true, default_value = "-6..10", value_parser = parse_range)]
    p_range: (i64, i64),
    #[arg(long, default_value_t = 6)]
    hydrogen_n_max: u32,
    #[arg(long, default_value_t = 8)]
    hydrogen_k_max: u64,
    #[arg(long, default_value_t = 50)]
    residual_samples: usize,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {text:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound {lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound {hi:?}: {e}"))?;
    Ok((lo, hi))
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io { path: String, source: io::Error },
    VerifyFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Core(Error::DivergentMoment(_)) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io { .. } => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "cannot write {path}: {source}"),
            CliError::VerifyFailed(n) => write!(f, "verification found {n} unexpected failure(s)"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn stdout_error(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn ho_flags(state: &OscillatorState, mode: HoMode) -> Vec<String> {
    let mut flags = Vec::new();
    if state.is_nonphysical() {
        flags.push("nonphysical-hyperangular".to_string());
    }
    if mode == HoMode::Printed {
        flags.push("paper-literal-mode".to_string());
    }
    flags
}

fn ho_state(args: &HoState) -> CliResult<OscillatorState> {
    Ok(OscillatorState::new(args.dim, args.principal, args.angular)?)
}

fn ho_exact(state: &OscillatorState, p: i64, method: HoMethod, mode: HoMode) -> CliResult<(ExactValue, &'static str)> {
    if mode == HoMode::Printed && method != HoMethod::Recurrence {
        return Err(CliError::Usage("--mode paper-literal only applies to --method recurrence".into()));
    }
    let value = match method {
        HoMethod::Closed => (expval_closed(state, p)?, "closed"),
        HoMethod::DualHahn => (expval_dual_hahn(state, p)?, "dual-hahn"),
        HoMethod::Recurrence => {
            let record = expval_recurrence_range(state, p, p, mode.into())?.remove(0);
            (record.exact.expect("recurrence is exact"), "recurrence")
        }
        HoMethod::Inversion => (inversion_partner(state, -p - 2)?, "inversion"),
        HoMethod::Oracle => (ho_expval_oracle(state, p)?, "oracle-exact"),
    };
    Ok(value)
}

fn ho_records(
    state: &OscillatorState,
    powers: impl IntoIterator<Item = i64>,
    method: HoMethod,
    mode: HoMode,
    float_only: bool,
) -> CliResult<Vec<OutputRecord>> {
    let flags = ho_flags(state, mode);
    powers
        .into_iter()
        .map(|p| {
            let (value, label) = ho_exact(state, p, method, mode)?;
            let exact = (!float_only).then_some(&value);
            Ok(OutputRecord::new(
                System::Ho,
                state.into(),
                p.to_string(),
                label,
                exact,
                value.to_f64(),
                flags.clone(),
            ))
        })
        .collect()
}

fn ho_real_records(state: &OscillatorState, powers: &[f64], method: HoMethod, mode: HoMode) -> CliResult<Vec<OutputRecord>> {
    let flags = ho_flags(state, mode);
    powers
        .iter()
        .map(|&p| {
            let (float, label) = match method {
                HoMethod::Closed => (expval_closed_real(state, p)?, "closed"),
                HoMethod::Oracle => (ho_expval_quadrature(state, p, QUADRATURE_TOL)?, "oracle-quadrature"),
                other => {
                    return Err(CliError::Usage(format!(
                        "--p-real supports --method closed or oracle, not {other:?}"
                    )))
                }
            };
            Ok(OutputRecord::new(System::Ho, state.into(), format!("{p:?}"), label, None, float, flags.clone()))
        })
        .collect()
}

fn hydrogen_state(args: &HydrogenStateArgs) -> CliResult<HydrogenState> {
    Ok(HydrogenState::new(args.n, args.l, args.z.clone(), args.a0.clone())?)
}

fn hydrogen_flags(mode: HydrogenMode) -> Vec<String> {
    match mode {
        HydrogenMode::Consistent => Vec::new(),
        HydrogenMode::Printed => vec!["paper-literal-mode".to_string()],
    }
}

fn hydrogen_exact(
    state: &HydrogenState,
    q: i64,
    method: HydrogenMethod,
    mode: HydrogenMode,
) -> CliResult<(Rational, &'static str)> {
    match method {
        HydrogenMethod::Closed => {
            let label = if q >= -1 || mode == HydrogenMode::Printed { "closed" } else { "inversion" };
            Ok((expval(state, q, mode.into())?, label))
        }
        HydrogenMethod::Recurrence => {
            if q <= 0 {
                return Ok((expval(state, q, mode.into())?, if q >= -1 { "closed" } else { "inversion" }));
            }
            let table = kramers_pasternack_range(state, q as u64)?;
            Ok((table.last().expect("nonempty").1.clone(), "recurrence"))
        }
        HydrogenMethod::Oracle => Ok((hydrogen_expval_oracle(state, q)?, "oracle-exact")),
    }
}

fn hydrogen_records(
    state: &HydrogenState,
    powers: impl IntoIterator<Item = i64>,
    method: HydrogenMethod,
    mode: HydrogenMode,
    float_only: bool,
) -> CliResult<Vec<OutputRecord>> {
    let flags = hydrogen_flags(mode);
    powers
        .into_iter()
        .map(|q| {
            let (value, label) = hydrogen_exact(state, q, method, mode)?;
            let value = ExactValue::rational(value);
            let exact = (!float_only).then_some(&value);
            Ok(OutputRecord::new(
                System::Hydrogen,
                state.into(),
                q.to_string(),
                label,
                exact,
                value.to_f64(),
                flags.clone(),
            ))
        })
        .collect()
}

fn emit(records: &[OutputRecord], format: Format) -> CliResult<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    write_records(records, format, &mut lock).map_err(stdout_error)?;
    lock.flush().map_err(stdout_error)
}

fn run_ho(args: HoArgs) -> CliResult<()> {
    let state = ho_state(&args.state)?;
    let records = if args.p_real.is_empty() {
        ho_records(&state, args.p.iter().copied(), args.method, args.mode, args.float_only)?
    } else {
        ho_real_records(&state, &args.p_real, args.method, args.mode)?
    };
    emit(&records, args.format)
}

fn run_hydrogen(args: HydrogenArgs) -> CliResult<()> {
    let state = hydrogen_state(&args.state)?;
    let records = if args.power_real.is_empty() {
        hydrogen_records(&state, args.power.iter().copied(), args.method, args.mode, args.float_only)?
    } else {
        if args.method != HydrogenMethod::Oracle {
            return Err(CliError::Usage("--power-real requires --method oracle".into()));
        }
        let flags = hydrogen_flags(args.mode);
        args.power_real
            .iter()
            .map(|&q| {
                let float = hydrogen_expval_quadrature(&state, q, QUADRATURE_TOL)?;
                Ok(OutputRecord::new(
                    System::Hydrogen,
                    (&state).into(),
                    format!("{q:?}"),
                    "oracle-quadrature",
                    None,
                    float,
                    flags.clone(),
                ))
            })
            .collect::<CliResult<Vec<_>>>()?
    };
    emit(&records, args.format)
}

fn run_verify(args: VerifyArgs) -> CliResult<()> {
    let executor = match args.jobs {
        Some(1) => Executor::Sequential,
        _ => Executor::Parallel,
    };
    let config = VerifyConfig {
        dim_max: args.dim_max,
        n_max: args.n_max,
        p_min: args.p_range.0,
        p_max: args.p_range.1,
        hydrogen_n_max: args.hydrogen_n_max,
        hydrogen_k_max: args.hydrogen_k_max,
        residual_samples: args.residual_samples,
        executor,
        ..VerifyConfig::default()
    };
    let report = executor.with_jobs(args.jobs, || verify::run(&config));
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(report.render().as_bytes()).map_err(stdout_error)?;
    lock.flush().map_err(stdout_error)?;
    if report.is_success() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(report.unexpected_failures()))
    }
}

fn write_table(records: &[OutputRecord], range: &TableRange) -> CliResult<()> {
    match &range.out {
        None => emit(records, range.format),
        Some(path) => {
            let io_error = |source| CliError::Io {
                path: path.display().to_string(),
                source,
            };
            let file = File::create(path).map_err(io_error)?;
            let mut writer = BufWriter::new(file);
            write_records(records, range.format, &mut writer).map_err(io_error)?;
            writer.flush().map_err(io_error)
        }
    }
}

fn run_table(system: TableSystem) -> CliResult<()> {
    match system {
        TableSystem::Ho {
            state,
            range,
            method,
            mode,
        } => {
            let state = ho_state(&state)?;
            let records = if method == HoMethod::Recurrence && range.p_min <= range.p_max {
                let flags = ho_flags(&state, mode);
                expval_recurrence_range(&state, range.p_min, range.p_max, mode.into())?
                    .into_iter()
                    .map(|r| {
                        let value = r.exact.expect("recurrence is exact");
                        OutputRecord::new(
                            System::Ho,
                            StateFields::from(&state),
                            r.p.to_string(),
                            r.method.as_str(),
                            Some(&value),
                            r.float,
                            flags.clone(),
                        )
                    })
                    .collect()
            } else {
                ho_records(&state, range.p_min..=range.p_max, method, mode, false)?
            };
            write_table(&records, &range)
        }
        TableSystem::Hydrogen {
            state,
            range,
            method,
            mode,
        } => {
            let state = hydrogen_state(&state)?;
            let records = hydrogen_records(&state, range.p_min..=range.p_max, method, mode, false)?;
            write_table(&records, &range)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ho(args) => run_ho(args),
        Command::Hydrogen(args) => run_hydrogen(args),
        Command::Verify(args) => run_verify(args),
        Command::Table { system } => run_table(system),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("-6..10"), Ok((-6, 10)));
        assert_eq!(parse_range("0..0"), Ok((0, 0)));
        assert!(parse_range("3").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
