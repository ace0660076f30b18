//! Command-line front end.
//!
//! Exit codes: 0 success (or holomorphic), 1 property check failed,
//! 2 usage / parse / I-O error, 3 algebraic error (divisor of zero),
//! 4 numeric divergence.

pub mod expr;
pub mod plot;

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use thiserror::Error;

use crate::functions::{self, by_name, Kind, PlaneFunction};
use crate::grid::{GridError, Lattice, PlaneBox};
use crate::network::{
    self, read_boundary_csv, read_dataset_csv, Activation, Checkpoint, DataError,
    HyperbolicNetwork, NetworkError,
};
use crate::number::{ElementClass, HyperbolicNumber, DEFAULT_TOL};
use crate::polar::{self, Quadrant};
use expr::EvalError;
use plot::{Palette, Panel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ALGEBRA: i32 = 3;
pub const EXIT_DIVERGED: i32 = 4;

/// Environment variable that overrides the seed in a training config.
pub const SEED_ENV: &str = "HYPERLIB_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Data(#[from] DataError),
    #[error("{0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Check(#[from] functions::CheckError),
    #[error("{0}")]
    Network(#[from] NetworkError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Eval(EvalError::Algebra(_)) => EXIT_ALGEBRA,
            CliError::Eval(EvalError::Overflow) => EXIT_DIVERGED,
            CliError::Check(functions::CheckError::NonFiniteSample { .. }) => EXIT_DIVERGED,
            CliError::Network(
                NetworkError::NonFiniteLoss { .. } | NetworkError::Diverged { .. },
            ) => EXIT_DIVERGED,
            _ => EXIT_USAGE,
        }
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperlib",
    version,
    about = "Hyperbolic numbers, holomorphy checks and hyperbolic networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct GridOpts {
    /// Sampling box.
    #[arg(long = "box", num_args = 4, value_names = ["X_MIN", "X_MAX", "Y_MIN", "Y_MAX"], allow_negative_numbers = true)]
    bounds: Option<Vec<f64>>,
    /// Lattice points per axis, box edges included.
    #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
    grid: Option<Vec<usize>>,
}

impl GridOpts {
    fn lattice(&self, default_half: f64, default_n: usize) -> Result<Lattice, CliError> {
        let b = match self.bounds.as_deref() {
            Some([a, b, c, d]) => PlaneBox::new(*a, *b, *c, *d)?,
            Some(_) => return Err(CliError::Usage("--box takes 4 values".into())),
            None => PlaneBox::square(default_half)?,
        };
        let (nx, ny) = match self.grid.as_deref() {
            Some([nx, ny]) => (*nx, *ny),
            Some(_) => return Err(CliError::Usage("--grid takes 2 values".into())),
            None => (default_n, default_n),
        };
        Ok(Lattice::new(b, nx, ny)?)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression such as "(1+1h)*(1-1h)" or "exp(0.5h)".
    Eval { expr: String },
    /// Scan a catalog function for the (generalized) Cauchy-Riemann conditions.
    Check {
        function: String,
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long, default_value_t = functions::DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value_t = functions::DEFAULT_HOLO_TOL)]
        tol: f64,
        /// Step of the second-difference wave/Laplace residual.
        #[arg(long, default_value_t = functions::DEFAULT_SECOND_STEP)]
        wave_step: f64,
        /// Write per-point residuals as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Report the value ranges of a catalog function over a lattice.
    ScanBounds {
        function: String,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Hyperbolic polar form of x + h·y.
    Polar {
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Train a network from a JSON config.
    Train {
        config: PathBuf,
        #[arg(long)]
        lr: Option<f64>,
        #[arg(long)]
        epochs: Option<usize>,
        /// Directory for the checkpoint and loss history (default: next to the config).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Label a lattice by the output of a 1-in/1-out checkpoint.
    Boundary {
        checkpoint: PathBuf,
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        threshold: f64,
        /// Output CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a catalog function or a boundary CSV as an SVG heatmap.
    Plot {
        /// Catalog function name or path to a boundary CSV.
        source: String,
        #[command(flatten)]
        grid: GridOpts,
        /// Output SVG (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Eval { expr } => cmd_eval(&expr, out),
        Command::Check {
            function,
            grid,
            step,
            tol,
            wave_step,
            csv,
        } => cmd_check(
            &function,
            &grid.lattice(3.0, 31)?,
            step,
            tol,
            wave_step,
            csv.as_deref(),
            out,
        ),
        Command::ScanBounds { function, grid } => {
            cmd_scan_bounds(&function, &grid.lattice(3.0, 31)?, out)
        }
        Command::Polar { x, y, tol } => cmd_polar(x, y, tol, out),
        Command::Train {
            config,
            lr,
            epochs,
            out_dir,
        } => cmd_train(&config, lr, epochs, out_dir.as_deref(), out),
        Command::Boundary {
            checkpoint,
            grid,
            threshold,
            out: path,
        } => cmd_boundary(
            &checkpoint,
            &grid.lattice(3.0, 61)?,
            threshold,
            path.as_deref(),
            out,
        ),
        Command::Plot {
            source,
            grid,
            out: path,
        } => cmd_plot(&source, &grid.lattice(3.0, 61)?, path.as_deref(), out),
    }
}

fn put(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    out.write_fmt(text).map_err(io_err(Path::new("<stdout>")))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        put($out, format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn lookup(name: &str) -> Result<PlaneFunction, CliError> {
    by_name(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown function {name:?}; known: {}",
            functions::CATALOG.join(", ")
        ))
    })
}

fn describe_lattice(l: &Lattice) -> String {
    let b = l.bounds;
    format!(
        "{}x{} over [{}, {}] x [{}, {}]",
        l.nx, l.ny, b.x_min, b.x_max, b.y_min, b.y_max
    )
}

pub fn cmd_eval(src: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let z = expr::evaluate(src)?;
    say!(out, "{z}")?;
    say!(out, "{}", z.to_idempotent())?;
    Ok(EXIT_OK)
}

pub fn cmd_check(
    name: &str,
    lattice: &Lattice,
    step: f64,
    tol: f64,
    wave_step: f64,
    csv: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let f = lookup(name)?;
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::Usage(format!("tol must be >= 0, got {tol}")));
    }
    let scan = functions::gcr_scan(&f, lattice, step, tol)?;
    let (wu, wv) = functions::max_wave_residual(&f, lattice, wave_step)?;
    let (kind, conds, op) = match f.kind() {
        Kind::Hyperbolic => ("hyperbolic", "u_x = v_y, u_y = v_x", "wave u_xx - u_yy"),
        Kind::Complex => ("complex", "u_x = v_y, u_y = -v_x", "Laplace u_xx + u_yy"),
    };
    say!(out, "function: {} ({kind})", f.name())?;
    say!(out, "conditions: {conds}")?;
    say!(out, "lattice: {}", describe_lattice(lattice))?;
    say!(out, "step: {step}  tol: {tol}")?;
    say!(out, "max |r1|: {:e}", scan.max_r1)?;
    say!(out, "max |r2|: {:e}", scan.max_r2)?;
    say!(out, "fraction holomorphic: {}", scan.fraction_holomorphic)?;
    say!(
        out,
        "max {op} residual (u, v): {wu:e}, {wv:e} (step {wave_step})"
    )?;
    if let Some(path) = csv {
        let file = fs::File::create(path).map_err(io_err(path))?;
        scan.write_csv(std::io::BufWriter::new(file))
            .map_err(io_err(path))?;
        say!(out, "csv: {}", path.display())?;
    }
    if scan.fraction_holomorphic == 1.0 {
        say!(out, "verdict: holomorphic")?;
        Ok(EXIT_OK)
    } else {
        say!(out, "verdict: not holomorphic")?;
        Ok(EXIT_CHECK_FAILED)
    }
}

pub fn cmd_scan_bounds(
    name: &str,
    lattice: &Lattice,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let f = lookup(name)?;
    let r = functions::bounds_scan(&f, lattice)?;
    say!(out, "function: {}", f.name())?;
    say!(out, "lattice: {}", describe_lattice(lattice))?;
    say!(out, "u range: [{}, {}]", r.u_range.0, r.u_range.1)?;
    say!(out, "v range: [{}, {}]", r.v_range.0, r.v_range.1)?;
    say!(out, "sup max(|u|, |v|): {}", r.sup_abs)?;
    Ok(EXIT_OK)
}

pub fn cmd_polar(x: f64, y: f64, tol: f64, out: &mut dyn Write) -> Result<i32, CliError> {
    let z = HyperbolicNumber::new(x, y).map_err(|e| CliError::Usage(e.to_string()))?;
    say!(out, "z: {z}")?;
    say!(out, "idempotent: {}", z.to_idempotent())?;
    let q = polar::quadrant_of(z, tol);
    say!(out, "quadrant: {q}")?;
    if q == Quadrant::NullCone {
        let class = match z.classify(tol) {
            ElementClass::Zero => "zero".to_string(),
            ElementClass::ZeroDivisor(axis) => format!("divisor of zero ({axis:?} axis)"),
            ElementClass::Invertible => "invertible".to_string(),
        };
        say!(out, "class: {class}")?;
        say!(out, "modulus: {}", z.modulus())?;
        return Ok(EXIT_OK);
    }
    let p = polar::to_polar(z, tol).expect("off the cone");
    let back = polar::from_polar(p).expect("finite");
    say!(out, "rho: {}", p.rho)?;
    say!(out, "theta: {}", p.theta)?;
    say!(out, "reconstructed: {back}")?;
    Ok(EXIT_OK)
}

/// Training job description. Relative paths resolve against the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    pub dims: Vec<usize>,
    pub activation: String,
    pub seed: u64,
    pub epochs: usize,
    pub lr: f64,
    pub dataset: PathBuf,
    #[serde(default)]
    pub checkpoint: Option<PathBuf>,
    #[serde(default)]
    pub loss_csv: Option<PathBuf>,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

pub fn cmd_train(
    config_path: &Path,
    lr: Option<f64>,
    epochs: Option<usize>,
    out_dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let text = fs::read_to_string(config_path).map_err(io_err(config_path))?;
    let mut cfg: TrainConfig =
        serde_json::from_str(&text).map_err(|e| CliError::Data(DataError::Json(e)))?;
    if let Ok(seed) = std::env::var(SEED_ENV) {
        cfg.seed = seed.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{SEED_ENV} must be an unsigned integer, got {seed:?}"
            ))
        })?;
    }
    cfg.lr = lr.unwrap_or(cfg.lr);
    cfg.epochs = epochs.unwrap_or(cfg.epochs);

    let base = config_path.parent().unwrap_or(Path::new("."));
    let data_path = resolve(base, &cfg.dataset);
    let file = fs::File::open(&data_path).map_err(io_err(&data_path))?;
    let data = read_dataset_csv(BufReader::new(file))?;

    let act: Activation = cfg.activation.parse()?;
    let mut net = HyperbolicNetwork::init(&cfg.dims, act, cfg.seed)?;
    let report = network::train_sgd(&mut net, &data, cfg.epochs, cfg.lr)?;

    let stem = config_path
        .file_stem()
        .map_or_else(|| "model".to_string(), |s| s.to_string_lossy().into_owned());
    let out_base = out_dir.unwrap_or(base);
    let ckpt_path = match (&cfg.checkpoint, out_dir) {
        (Some(p), None) => resolve(base, p),
        (Some(p), Some(d)) => d.join(p.file_name().unwrap_or(p.as_os_str())),
        (None, _) => out_base.join(format!("{stem}.checkpoint.json")),
    };
    let loss_path = match (&cfg.loss_csv, out_dir) {
        (Some(p), None) => resolve(base, p),
        (Some(p), Some(d)) => d.join(p.file_name().unwrap_or(p.as_os_str())),
        (None, _) => out_base.join(format!("{stem}.loss.csv")),
    };

    let ckpt = Checkpoint::from_network(&net)?;
    fs::write(&ckpt_path, ckpt.to_json() + "\n").map_err(io_err(&ckpt_path))?;
    let mut csv = String::from("epoch,loss\n");
    for (k, l) in report.loss_history.iter().enumerate() {
        csv.push_str(&format!("{k},{l}\n"));
    }
    csv.push_str(&format!("{},{}\n", report.epochs, report.final_loss));
    fs::write(&loss_path, csv).map_err(io_err(&loss_path))?;

    say!(
        out,
        "network: dims {:?}, activation {}, seed {}",
        cfg.dims,
        act,
        cfg.seed
    )?;
    say!(out, "samples: {}", data.len())?;
    say!(out, "epochs: {}  lr: {}", report.epochs, cfg.lr)?;
    say!(out, "initial loss: {}", report.loss_history[0])?;
    say!(out, "final loss: {}", report.final_loss)?;
    say!(out, "checkpoint: {}", ckpt_path.display())?;
    say!(out, "loss history: {}", loss_path.display())?;
    Ok(EXIT_OK)
}

pub fn cmd_boundary(
    checkpoint: &Path,
    lattice: &Lattice,
    threshold: f64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let text = fs::read_to_string(checkpoint).map_err(io_err(checkpoint))?;
    let net = Checkpoint::from_json(&text)?.to_network()?;
    let rows = network::decision_boundary(&net, lattice, threshold)?;
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(io_err(p))?;
            network::write_boundary_csv(&rows, std::io::BufWriter::new(file)).map_err(io_err(p))?;
            say!(out, "boundary: {} points -> {}", rows.len(), p.display())?;
        }
        None => network::write_boundary_csv(&rows, out).map_err(io_err(Path::new("<stdout>")))?,
    }
    Ok(EXIT_OK)
}

fn distinct_sorted(vals: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = vals.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

pub fn cmd_plot(
    source: &str,
    lattice: &Lattice,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let svg = if source.ends_with(".csv") {
        let p = Path::new(source);
        let file = fs::File::open(p).map_err(io_err(p))?;
        let rows = read_boundary_csv(BufReader::new(file))?;
        let xs = distinct_sorted(rows.iter().map(|r| r.x));
        let ys = distinct_sorted(rows.iter().map(|r| r.y));
        if xs.len() < 2 || ys.len() < 2 || rows.len() != xs.len() * ys.len() {
            return Err(CliError::Usage(format!("{source}: not a complete lattice")));
        }
        let bounds = PlaneBox::new(xs[0], xs[xs.len() - 1], ys[0], ys[ys.len() - 1])?;
        let lu: Vec<f64> = rows.iter().map(|r| f64::from(r.label_u)).collect();
        let lv: Vec<f64> = rows.iter().map(|r| f64::from(r.label_v)).collect();
        plot::render(
            source,
            &bounds,
            &[
                Panel {
                    title: "label_u",
                    xs: &xs,
                    ys: &ys,
                    values: &lu,
                },
                Panel {
                    title: "label_v",
                    xs: &xs,
                    ys: &ys,
                    values: &lv,
                },
            ],
            Palette::Labels,
        )
    } else {
        let f = lookup(source)?;
        let xs: Vec<f64> = (0..lattice.nx).map(|i| lattice.x_at(i)).collect();
        let ys: Vec<f64> = (0..lattice.ny).map(|j| lattice.y_at(j)).collect();
        let mut us = Vec::with_capacity(lattice.len());
        let mut vs = Vec::with_capacity(lattice.len());
        for (_, _, x, y) in lattice.points() {
            let (u, v) = f.eval(x, y);
            if !(u.is_finite() && v.is_finite()) {
                return Err(functions::CheckError::NonFiniteSample { name: "u/v", x, y }.into());
            }
            us.push(u);
            vs.push(v);
        }
        plot::render(
            f.name(),
            &lattice.bounds,
            &[
                Panel {
                    title: "u",
                    xs: &xs,
                    ys: &ys,
                    values: &us,
                },
                Panel {
                    title: "v",
                    xs: &xs,
                    ys: &ys,
                    values: &vs,
                },
            ],
            Palette::Gray,
        )
    };
    match path {
        Some(p) => {
            fs::write(p, svg).map_err(io_err(p))?;
            say!(out, "wrote {}", p.display())?;
        }
        None => put(out, format_args!("{svg}"))?,
    }
    Ok(EXIT_OK)
}
