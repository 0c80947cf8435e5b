use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ncmax::curve::{emit_curve, CurveObject};
use ncmax::examples::run_example;
use ncmax::io::{profile_to_json, read_input, step_to_csv, write_output};
use ncmax::suites::{run_suite, Suite};
use ncmax::{format_number, Error, ReportDocument, Result};
use ncmax_core::maximal::{ma_operator, ma_point, verify_16_bound};
use ncmax_core::spaces::{norm, NormSpace};
use ncmax_core::{CesaroCurve, LogGrid, SpectralProfile};

/// Spectral maximal functions, rearrangements and symmetric norms of finite
/// spectral models.
#[derive(Parser)]
#[command(name = "ncmax", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InOut {
    /// Profile JSON, matrix JSON/CSV or step-function CSV (`-` for stdin).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-6)]
    grid_min: f64,
    #[arg(long, default_value_t = 1e6)]
    grid_max: f64,
    #[arg(long, default_value_t = 241)]
    points: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<LogGrid> {
        Ok(LogGrid::new(self.grid_min, self.grid_max, self.points)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    /// `μ(·, A)`.
    Mu,
    /// `Cμ(·, A)`.
    Cesaro,
    /// `μ(·, MA(|A|))`.
    Ma,
}

#[derive(Subcommand)]
enum Command {
    /// Singular value function of the input, as a step-function CSV.
    Mu {
        #[command(flatten)]
        io: InOut,
    },
    /// Spectral maximal function at a point, or the operator MA(|A|).
    Maximal {
        #[command(flatten)]
        io: InOut,
        /// Evaluate MA(x) at this level.
        #[arg(long, conflicts_with_all = ["operator", "bound"])]
        point: Option<f64>,
        /// Emit the profile of MA(|A|).
        #[arg(long, conflicts_with = "bound")]
        operator: bool,
        /// Check μ(t, MA(|A|)) ≤ 16·Cμ(A)(t) for all t.
        #[arg(long)]
        bound: bool,
    },
    /// Cesàro transform of μ: pieces as JSON, or values at `--at` points as CSV.
    Cesaro {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        at: Vec<f64>,
    },
    /// Norm of the input in a symmetric space.
    Norm {
        #[command(flatten)]
        io: InOut,
        /// e.g. `lp:p=2`, `lpq:p=2,q=1`, `lorentz:phi=power:0.5`,
        /// `marcinkiewicz:psi=maxone`, `l1plusinf`, `l1capinf`, `weakl1`.
        #[arg(long)]
        space: String,
    },
    /// Run a randomized verification suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Report 0 for runtimeMillis, making reports byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
    /// Reproduce one of the two range-space examples.
    Example {
        #[arg(long)]
        id: u32,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Sample a curve as `t,value` CSV.
    Emit {
        #[command(flatten)]
        io: InOut,
        #[arg(long, value_enum, default_value_t = Object::Mu)]
        object: Object,
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn load(io: &InOut) -> Result<SpectralProfile> {
    read_input(&io.input)?.into_profile()
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn report(mut doc: ReportDocument, out: Option<&std::path::Path>, no_timing: bool) -> Result<ExitCode> {
    if no_timing {
        doc.runtime_millis = 0;
    }
    write_output(out, &doc.to_json())?;
    Ok(if doc.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Mu { io } => {
            let p = load(&io)?;
            write_output(io.out.as_deref(), &step_to_csv(&p.mu()))?;
        }
        Command::Maximal {
            io,
            point,
            operator,
            bound,
        } => {
            let p = load(&io)?;
            let text = match (point, operator, bound) {
                (Some(x), _, _) => json_line(&ma_point(&p, x)?),
                (None, true, _) => profile_to_json(&ma_operator(&p)),
                (None, false, true) => json_line(&verify_16_bound(&p)),
                (None, false, false) => {
                    return Err(Error::Usage("maximal needs one of --point, --operator, --bound".into()))
                }
            };
            write_output(io.out.as_deref(), &text)?;
        }
        Command::Cesaro { io, at } => {
            let p = load(&io)?;
            let curve = CesaroCurve::of(&p.mu())?;
            let text = if at.is_empty() {
                let pieces: Vec<_> = curve
                    .pieces()
                    .iter()
                    .map(|c| serde_json::json!({ "start": c.start, "end": c.end, "a": c.a, "b": c.b }))
                    .collect();
                json_line(&serde_json::json!({
                    "pieces": pieces,
                    "tailStart": curve.tail_start(),
                    "tailCoefficient": curve.tail_coefficient(),
                }))
            } else {
                let mut s = String::from("t,value\n");
                for t in at {
                    s += &format!("{},{}\n", format_number(t), format_number(curve.eval(t)));
                }
                s
            };
            write_output(io.out.as_deref(), &text)?;
        }
        Command::Norm { io, space } => {
            let space: NormSpace = space.parse()?;
            let p = load(&io)?;
            write_output(io.out.as_deref(), &json_line(&norm(&p, &space)?))?;
        }
        Command::Check {
            suite,
            trials,
            seed,
            out,
            no_timing,
        } => {
            let suite: Suite = suite.parse()?;
            return report(run_suite(suite, trials, seed), out.as_deref(), no_timing);
        }
        Command::Example {
            id,
            grid,
            out,
            no_timing,
        } => {
            return report(run_example(id, &grid.grid()?)?, out.as_deref(), no_timing);
        }
        Command::Emit { io, object, grid } => {
            let p = load(&io)?;
            let object = match object {
                Object::Mu => CurveObject::mu(&p),
                Object::Cesaro => CurveObject::cesaro(&p),
                Object::Ma => CurveObject::maximal(&p),
            };
            let csv = emit_curve(&object, grid.points, grid.grid_min, grid.grid_max)?;
            write_output(io.out.as_deref(), &csv)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ncmax: {e}");
            ExitCode::from(2)
        }
    }
}
