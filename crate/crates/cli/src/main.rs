use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altexp::io::{self as fio, fmt17};
use altexp::verify::{self, Suite, VerifyConfig};
use altexp::{
    adft_forward, adft_forward_naive, adft_inverse, alt_interpolate, alt_interpolate_direct, bump,
    bump_interpolation_error, eval_e, std_interpolate, Bump, CubeSamples, Error, Grid, IndexTriple,
    Point, QuadratureSpec, Samples, TensorEvaluator, Triple,
};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex;

#[derive(Parser)]
#[command(
    name = "altexp",
    version,
    about = "Alternating exponential functions of A3: transforms, interpolation, checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    /// Grid density N.
    #[arg(long = "N")]
    n: usize,
    /// Grid offset a.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
    /// Half-step shift b in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    /// Period T.
    #[arg(long = "T", default_value_t = 1.0)]
    period: f64,
}

impl GridArgs {
    fn grid(&self) -> altexp::Result<Grid> {
        Grid::new(self.a, self.b, self.n, self.period)
    }
}

#[derive(Args)]
struct BumpArgs {
    /// Inner radius of the bump.
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Outer radius of the bump.
    #[arg(long, default_value_t = 0.2)]
    beta: f64,
    /// Bump centre as x,y,z.
    #[arg(long, default_value = "0.75,0.75,0.25", allow_hyphen_values = true)]
    center: String,
}

impl BumpArgs {
    fn params(&self) -> altexp::Result<Bump> {
        let c = parse_floats(&self.center, 3, "--center")?;
        Bump::new(self.alpha, self.beta, Point::new(c[0], c[1], c[2]))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the grid points of L_{a,b,N,T} as CSV.
    Grid {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample a built-in function on the grid.
    Sample {
        /// const:<v>, E:<k,l,m> (evaluated at p/T) or bump.
        #[arg(long = "f")]
        function: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        bump: BumpArgs,
        /// Sample the whole cube [0,N)^3 instead of the fundamental domain.
        #[arg(long)]
        full_cube: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Alternating discrete Fourier transform of a sample CSV.
    Transform {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Use the direct O(|L|^2) sum.
        #[arg(long)]
        naive: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inverse transform of a beta coefficient JSON.
    Inverse {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Interpolation coefficients of a sample CSV, optionally with a z-slice.
    Interpolate {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Standard trigonometric interpolation; input must be a full-cube CSV.
        #[arg(long)]
        std: bool,
        /// Compute the alternating coefficients by the direct sum.
        #[arg(long, conflicts_with = "std")]
        direct: bool,
        /// Plane to export, e.g. z=0.25.
        #[arg(long, requires = "slice_out")]
        slice: Option<String>,
        /// Slice resolution per axis.
        #[arg(long, default_value_t = 101)]
        res: usize,
        /// Slice CSV path.
        #[arg(long)]
        slice_out: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the self-verification suites and print a JSON report.
    Verify {
        /// all, identities, c3, operators, transform or interpolation.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Random instances per identity check.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Perturb one remap-table entry.
        #[arg(long)]
        inject_fault: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integral error of the bump interpolants on L_{0,1/2,N,1}.
    ErrorTable {
        /// Comma-separated odd densities.
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Quadrature cells per axis (default 128, 256 for N >= 31).
        #[arg(long = "n")]
        cells: Option<usize>,
        /// Allow densities above 31.
        #[arg(long)]
        long: bool,
        #[command(flatten)]
        bump: BumpArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.into(),
        source,
    }
}

fn parse_floats(s: &str, n: usize, what: &str) -> altexp::Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::InvalidArgument(format!("{what}: {e}")))?;
    if v.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{what}: expected {n} comma-separated numbers, got {s:?}"
        )));
    }
    Ok(v)
}

enum SampleFn {
    Const(f64),
    Alt(IndexTriple),
    Bump(Bump),
}

impl SampleFn {
    fn parse(spec: &str, bump: &BumpArgs) -> altexp::Result<Self> {
        if let Some(v) = spec.strip_prefix("const:") {
            return Ok(SampleFn::Const(parse_floats(v, 1, "const")?[0]));
        }
        if let Some(v) = spec.strip_prefix("E:") {
            let k: Vec<i64> = v
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::InvalidArgument(format!("E label: {e}")))?;
            if k.len() != 3 {
                return Err(Error::InvalidArgument(format!(
                    "E label needs three integers, got {v:?}"
                )));
            }
            return Ok(SampleFn::Alt(Triple::new(k[0], k[1], k[2])));
        }
        if spec == "bump" {
            return Ok(SampleFn::Bump(bump.params()?));
        }
        Err(Error::InvalidArgument(format!(
            "unknown function {spec:?}; use const:<v>, E:<k,l,m> or bump"
        )))
    }

    fn eval(&self, p: &Point, period: f64) -> Complex<f64> {
        match self {
            SampleFn::Const(v) => Complex::new(*v, 0.0),
            SampleFn::Alt(t) => eval_e(t, &p.scale(1.0 / period)),
            SampleFn::Bump(b) => Complex::new(bump(b, p), 0.0),
        }
    }
}

/// Writes through `f` to the given path, or to stdout.
fn emit<F>(path: Option<&Path>, f: F) -> altexp::Result<()>
where
    F: FnOnce(&mut dyn Write) -> altexp::Result<()>,
{
    match path {
        Some(p) => {
            let mut file = fio::create(p)?;
            f(&mut file)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}

fn parse_slice(spec: &str) -> altexp::Result<f64> {
    let v = spec.strip_prefix("z=").ok_or_else(|| {
        Error::InvalidArgument(format!("slice must look like z=<value>, got {spec:?}"))
    })?;
    Ok(parse_floats(v, 1, "--slice")?[0])
}

fn slice_axis(g: &Grid, res: usize) -> Vec<f64> {
    if res == 1 {
        return vec![g.a()];
    }
    (0..res)
        .map(|i| g.a() + g.period() * i as f64 / (res - 1) as f64)
        .collect()
}

fn write_slice(
    path: &Path,
    axis: &[f64],
    z: f64,
    eval: &TensorEvaluator<f64>,
) -> altexp::Result<()> {
    let values = eval.slice(0);
    let file = fio::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    let err = io_err(path);
    writeln!(w, "i,j,x,y,z,re,im").map_err(&err)?;
    for (i, x) in axis.iter().enumerate() {
        for (j, y) in axis.iter().enumerate() {
            let v = values[i * axis.len() + j];
            writeln!(
                w,
                "{i},{j},{},{},{},{},{}",
                fmt17(*x),
                fmt17(*y),
                fmt17(z),
                fmt17(v.re),
                fmt17(v.im)
            )
            .map_err(&err)?;
        }
    }
    w.flush().map_err(&err)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Grid { grid, output } => {
            let g = grid.grid()?;
            emit(output.as_deref(), |w| fio::write_grid_csv(&g, w))?;
        }
        Command::Sample {
            function,
            grid,
            bump,
            full_cube,
            output,
        } => {
            let g = grid.grid()?;
            let f = SampleFn::parse(&function, &bump)?;
            let period = g.period();
            if full_cube {
                let s = CubeSamples::from_fn(g, |p| f.eval(p, period));
                emit(output.as_deref(), |w| fio::write_cube_samples_csv(&s, w))?;
            } else {
                let s = Samples::from_fn(g, |p| f.eval(p, period));
                emit(output.as_deref(), |w| fio::write_samples_csv(&s, w))?;
            }
        }
        Command::Transform {
            input,
            grid,
            naive,
            output,
        } => {
            let s = fio::read_samples_csv(grid.grid()?, fio::open(&input)?)?;
            let beta = if naive {
                adft_forward_naive(&s)
            } else {
                adft_forward(&s)
            };
            emit(output.as_deref(), |w| {
                fio::write_coefficients_json(&beta, w)
            })?;
        }
        Command::Inverse { input, output } => {
            let beta = fio::read_coefficients_json(fio::open(&input)?)?;
            let s = adft_inverse(&beta)?;
            emit(output.as_deref(), |w| fio::write_samples_csv(&s, w))?;
        }
        Command::Interpolate {
            input,
            grid,
            std,
            direct,
            slice,
            res,
            slice_out,
            output,
        } => {
            let g = grid.grid()?;
            let z = slice.as_deref().map(parse_slice).transpose()?;
            if z.is_some() && res == 0 {
                return Err(Error::InvalidArgument("--res must be positive".into()).into());
            }
            let axis = slice_axis(&g, res.max(1));
            if std {
                let s = fio::read_cube_samples_csv(g, fio::open(&input)?)?;
                let interp = std_interpolate(&s)?;
                emit(output.as_deref(), |w| {
                    fio::write_coefficients_json(interp.coefficients(), w)
                })?;
                if let (Some(z), Some(path)) = (z, slice_out.as_deref()) {
                    write_slice(path, &axis, z, &interp.tensor(&axis, &axis, &[z]))?;
                }
            } else {
                let s = fio::read_samples_csv(g, fio::open(&input)?)?;
                let interp = if direct {
                    alt_interpolate_direct(&s)?
                } else {
                    alt_interpolate(&s)?
                };
                emit(output.as_deref(), |w| {
                    fio::write_coefficients_json(interp.coefficients(), w)
                })?;
                if let (Some(z), Some(path)) = (z, slice_out.as_deref()) {
                    write_slice(path, &axis, z, &interp.tensor(&axis, &axis, &[z]))?;
                }
            }
        }
        Command::Verify {
            suite,
            seed,
            instances,
            inject_fault,
            output,
        } => {
            let cfg = VerifyConfig {
                suite: suite.parse::<Suite>()?,
                seed,
                instances,
                inject_fault,
            };
            let report = verify::run(&cfg)?;
            emit(output.as_deref(), |w| {
                serde_json::to_writer_pretty(&mut *w, &report).map_err(|e| Error::Io {
                    path: "<output>".into(),
                    source: e.into(),
                })?;
                writeln!(w).map_err(io_err(Path::new("<output>")))
            })?;
            if !report.passed {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!(
                        "FAILED {}: residual {:e} > tolerance {:e}",
                        c.name, c.max_residual, c.tolerance
                    );
                }
                return Err(Failure::Verification);
            }
        }
        Command::ErrorTable {
            n,
            cells,
            long,
            bump,
            output,
        } => {
            let params = bump.params()?;
            for &d in &n {
                if d % 2 == 0 {
                    return Err(Error::UnsupportedParity(d).into());
                }
                if d > 31 && !long {
                    return Err(Error::InvalidArgument(format!("N = {d} needs --long")).into());
                }
            }
            let mut rows = Vec::with_capacity(n.len());
            for &d in &n {
                let q = QuadratureSpec::new(cells.unwrap_or(if d >= 31 { 256 } else { 128 }))?;
                rows.push((d, q.n(), bump_interpolation_error(&params, d, &q)?));
            }
            emit(output.as_deref(), |w| {
                let err = io_err(Path::new("<output>"));
                writeln!(w, "N,n,error").map_err(&err)?;
                for (d, q, e) in &rows {
                    writeln!(w, "{d},{q},{}", fmt17(*e)).map_err(&err)?;
                }
                Ok(())
            })?;
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("ALTF_THREADS") {
        let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "ALTF_THREADS must be a positive integer, got {v:?}"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Io { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
