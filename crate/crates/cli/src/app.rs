use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use copolar::io::{body_to_json, dual_to_json, parse_body, parse_dual, parse_exponents};
use copolar::newton::{newton_number, newton_polyhedron};
use copolar::scalar::parse_ratio;
use copolar::transforms::{
    extremal_gap, GeodesicSolver, GridBox, ReinhardtSpec, DEFAULT_NODES_PER_AXIS,
};
use copolar::{
    copolar_combination, copolar_of_body, copolar_of_dual, covolume, minkowski_combination,
    BigRational, CopolarBody, Error, Scalar,
};
use serde_json::{json, Value};

use crate::verify::{verify_suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "copolar", version, about = "Copolar duality, covolumes and toric geodesics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Copolar,
    Minkowski,
}

#[derive(Debug, clap::Args)]
struct GridArgs {
    /// Combination parameter, strictly between 0 and 1 (decimal or p/q).
    #[arg(long)]
    t: String,
    /// Nodes per axis.
    #[arg(long, default_value_t = DEFAULT_NODES_PER_AXIS)]
    grid: usize,
    /// The box is [-extent, 0]^n.
    #[arg(long)]
    extent: f64,
    /// Extent A of the [0, A]^n Legendre grid (default: 2 max |1/p_ik|).
    #[arg(long)]
    legendre_extent: Option<f64>,
    l0: PathBuf,
    l1: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Copolar of a body (emits dual JSON) or of a dual set (emits body JSON).
    Copolar {
        input: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Copolar or Minkowski combination (1-t) P + t Q.
    Sum {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        t: String,
        #[arg(long)]
        exact: bool,
        p: PathBuf,
        q: PathBuf,
    },
    /// Covolume of a body.
    Covol {
        input: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Monge-Ampère capacity n! Covol(L°) of the Reinhardt compact with log image L.
    Capacity {
        input: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Newton polyhedron and Newton number of an exponent set.
    Newton {
        input: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Geodesic convex image u_t on [-extent, 0]^n, written as CSV.
    Geodesic {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance of u_t from the nearest relative extremal image.
    Gap {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Randomized inequality suite.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Outcome {
    fs::write(path, bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json(out: &mut dyn Write, value: &Value) -> Outcome {
    writeln!(out, "{value}").map_err(|e| Failure::Input(e.to_string()))
}

fn parse_t<T: Scalar>(text: &str) -> Result<T, Failure> {
    parse_ratio(text)
        .and_then(|r| T::from_ratio(&r))
        .ok_or_else(|| Failure::Input(format!("invalid t: {text:?}")))
}

fn copolar_cmd<T: Scalar>(input: &Path, out: &mut dyn Write) -> Outcome {
    let text = read(input)?;
    let is_dual = serde_json::from_str::<Value>(&text)
        .map(|v| v.get("generators").is_some())
        .unwrap_or(false);
    let value = if is_dual {
        body_to_json(&copolar_of_dual(&parse_dual::<T>(&text)?)?)
    } else {
        dual_to_json(&copolar_of_body(&parse_body::<T>(&text)?)?)
    };
    print_json(out, &value)
}

fn sum_cmd<T: Scalar>(mode: Mode, t: &str, p: &Path, q: &Path, out: &mut dyn Write) -> Outcome {
    let t = parse_t::<T>(t)?;
    let (p, q) = (parse_body::<T>(&read(p)?)?, parse_body::<T>(&read(q)?)?);
    let result = match mode {
        Mode::Copolar => copolar_combination(&p, &q, &t)?,
        Mode::Minkowski => minkowski_combination(&p, &q, &t)?,
    };
    print_json(out, &body_to_json(&result))
}

fn covol_cmd<T: Scalar>(input: &Path, out: &mut dyn Write) -> Outcome {
    let body: CopolarBody<T> = parse_body(&read(input)?)?;
    print_json(out, &covolume(&body)?.to_json())
}

fn capacity_cmd<T: Scalar>(input: &Path, out: &mut dyn Write) -> Outcome {
    let dual = parse_dual::<T>(&read(input)?)?;
    print_json(out, &copolar::transforms::capacity(&dual)?.to_json())
}

fn newton_cmd<T: Scalar>(input: &Path, out: &mut dyn Write) -> Outcome {
    let set = parse_exponents(&read(input)?)?;
    let value = match newton_polyhedron::<T>(&set) {
        Ok(gamma) => {
            let number = newton_number::<T>(&set)?;
            json!({
                "polyhedron": body_to_json(&gamma),
                "number": number.value.to_json(),
                "exact": number.exact,
                "integer": number.integer,
            })
        }
        Err(Error::NotCobounded { normal }) => json!({
            "polyhedron": null,
            "number": "inf",
            "exact": T::is_exact(),
            "integer": null,
            "reason": format!("complement of the Newton polyhedron is unbounded (facet normal {normal:?})"),
        }),
        Err(e) => return Err(e.into()),
    };
    print_json(out, &value)
}

fn grid_setup(args: &GridArgs) -> Result<(ReinhardtSpec, ReinhardtSpec, f64, GridBox), Failure> {
    let t = parse_t::<f64>(&args.t)?;
    let k0 = ReinhardtSpec::new(parse_dual(&read(&args.l0)?)?);
    let k1 = ReinhardtSpec::new(parse_dual(&read(&args.l1)?)?);
    if k0.dim() != k1.dim() {
        return Err(Error::DimensionMismatch {
            expected: k0.dim(),
            found: k1.dim(),
        }
        .into());
    }
    let grid = GridBox::cube(k0.dim(), -args.extent, 0.0, args.grid)?;
    Ok((k0, k1, t, grid))
}

fn solver(args: &GridArgs, k0: &ReinhardtSpec, k1: &ReinhardtSpec, grid: &GridBox) -> Result<GeodesicSolver, Failure> {
    Ok(match args.legendre_extent {
        Some(a) => {
            let legendre = GridBox::new(vec![0.0; grid.dim()], vec![a; grid.dim()], grid.counts().to_vec())?;
            GeodesicSolver::with_legendre_grid(k0, k1, grid, legendre)?
        }
        None => GeodesicSolver::new(k0, k1, grid)?,
    })
}

fn geodesic_cmd(args: &GridArgs, path: &Path, out: &mut dyn Write) -> Outcome {
    let (k0, k1, t, grid) = grid_setup(args)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::TOutOfRange(t).into());
    }
    let solver = solver(args, &k0, &k1, &grid)?;
    let image = solver.at(t)?;
    let mut csv = Vec::new();
    image.write_csv(&mut csv).map_err(|e| Failure::Input(e.to_string()))?;
    write(path, &csv)?;
    print_json(
        out,
        &json!({
            "t": t,
            "nodes": grid.len(),
            "tolerance": solver.tolerance(),
            "legendre_extent": solver.legendre_grid().upper()[0],
            "out": path.display().to_string(),
        }),
    )
}

fn gap_cmd(args: &GridArgs, out: &mut dyn Write) -> Outcome {
    let (k0, k1, t, grid) = grid_setup(args)?;
    if args.legendre_extent.is_some() {
        return Err(Failure::Input("gap uses the default Legendre grid".into()));
    }
    let gap = extremal_gap(&k0, &k1, t, &grid)?;
    print_json(
        out,
        &json!({
            "t": t,
            "gap": gap.gap,
            "tolerance": gap.tolerance,
            "gap_over_tolerance": gap.gap / gap.tolerance,
            "reconstructed": dual_to_json(&gap.reconstructed),
        }),
    )
}

fn verify_cmd(config: Option<&Path>, path: &Path, out: &mut dyn Write) -> Outcome {
    let cfg = match config {
        Some(p) => serde_json::from_str::<VerifyConfig>(&read(p)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => VerifyConfig::default(),
    }
    .with_env_seed()
    .map_err(Failure::Input)?;
    cfg.validate().map_err(Failure::Input)?;
    let report = verify_suite(&cfg);
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Input(e.to_string()))?;
    text.push('\n');
    write(path, text.as_bytes())?;
    print_json(out, &serde_json::to_value(&report.summary).expect("summary serializes"))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} violation(s), see {}",
            report.summary.violations,
            path.display()
        )))
    }
}

macro_rules! by_precision {
    ($exact:expr, $f:ident ( $($arg:expr),* )) => {
        if $exact { $f::<BigRational>($($arg),*) } else { $f::<f64>($($arg),*) }
    };
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Copolar { input, exact } => by_precision!(exact, copolar_cmd(&input, out)),
        Command::Sum { mode, t, exact, p, q } => by_precision!(exact, sum_cmd(mode, &t, &p, &q, out)),
        Command::Covol { input, exact } => by_precision!(exact, covol_cmd(&input, out)),
        Command::Capacity { input, exact } => by_precision!(exact, capacity_cmd(&input, out)),
        Command::Newton { input, exact } => by_precision!(exact, newton_cmd(&input, out)),
        Command::Geodesic { grid, out: path } => geodesic_cmd(&grid, &path, out),
        Command::Gap { grid } => gap_cmd(&grid, out),
        Command::Verify { config, out: path } => verify_cmd(config.as_deref(), &path, out),
    }
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_FAILED
        }
    }
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
