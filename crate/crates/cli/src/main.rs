//! Command-line front end: rank tables, linearization dumps, Gramian
//! diagnostics and steering runs with CSV emission.
//!
//! Exit codes: 0 success, 2 uncontrollable configuration, 3 invalid
//! input, 4 numerical failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use satctrl::controllability::{gramian, rank_table};
use satctrl::linearize::build_model;
use satctrl::simulate::integrate_linear;
use satctrl::steering::{synthesize, SteeringProblem};
use satctrl::{Error, PhysicalParams, StateVec, ThrusterConfig};
use std::fs;
use std::io::Write;
use std::process::ExitCode;

const EXIT_UNCONTROLLABLE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "satctrl",
    about = "Controllability analysis and minimum-energy steering for a satellite under the J2 zonal harmonic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Published constants with omega = 1 rad/s.
    Paper,
    /// Published constants with omega = sqrt(mu/sigma^3).
    Physical,
    /// Normalized constants (mu = sigma = omega = 1, J2 = 0).
    Unit,
}

#[derive(Args)]
struct ParamArgs {
    /// JSON file with keys mu, R, J2, sigma, omega; missing keys default
    /// to the built-in reference constants.
    #[arg(long, conflicts_with = "mode")]
    params: Option<String>,
    /// Built-in parameter set.
    #[arg(long, value_enum, default_value = "paper")]
    mode: Mode,
}

impl ParamArgs {
    fn resolve(&self) -> Result<PhysicalParams, Error> {
        if let Some(path) = &self.params {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidParams(format!("cannot read {path}: {e}")))?;
            return PhysicalParams::from_json(&text);
        }
        Ok(match self.mode {
            Mode::Paper => PhysicalParams::paper(),
            Mode::Physical => PhysicalParams::paper().with_physical_omega(),
            Mode::Unit => PhysicalParams::unit(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Kalman rank verdicts for all seven thruster configurations.
    RankTable {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the report as JSON to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Synthesize the minimum-energy steering control and replay it.
    Steer {
        #[command(flatten)]
        params: ParamArgs,
        /// Thruster configuration (r, theta, z, r-theta, r-z, theta-z, r-theta-z).
        #[arg(long)]
        config: String,
        /// Initial deviation state, six comma-separated numbers.
        #[arg(long, default_value = "1,2,3,4,5,6")]
        x0: String,
        /// Target deviation state, six comma-separated numbers.
        #[arg(long, default_value = "6,5,4,3,2,1")]
        x1: String,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 10.0)]
        t1: f64,
        /// RK4 step count for the replay.
        #[arg(long, default_value_t = 4096)]
        steps: usize,
        /// Write the state trajectory CSV here.
        #[arg(long)]
        out_traj: Option<String>,
        /// Write the sampled control CSV here.
        #[arg(long)]
        out_ctrl: Option<String>,
    },
    /// Print the linearized (A, B) model.
    Linearize {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "r-theta-z")]
        config: String,
    },
    /// Controllability Gramian diagnostics over a horizon.
    Gramian {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 10.0)]
        t1: f64,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Uncontrollable { .. } => EXIT_UNCONTROLLABLE,
        Error::SingularGramian { .. } | Error::Divergence { .. } => EXIT_NUMERICAL,
        Error::InvalidParams(_) | Error::InvalidArgument(_) | Error::CoordinateSingularity(_) => {
            EXIT_INVALID
        }
    }
}

fn parse_state(text: &str, name: &str) -> Result<StateVec, Error> {
    let vals: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| Error::InvalidArgument(format!("{name}: {e}")))?;
    if vals.len() != 6 {
        return Err(Error::InvalidArgument(format!(
            "{name} must have six components, got {}",
            vals.len()
        )));
    }
    Ok(StateVec::from_row_slice(&vals))
}

fn write_file(path: &str, contents: &str) -> Result<(), Error> {
    fs::write(path, contents)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {path}: {e}")))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::RankTable { params, out } => {
            let p = params.resolve()?;
            let report = rank_table(&p);
            print!("{report}");
            if let Some(path) = out {
                write_file(&path, &report.to_json())?;
            }
            Ok(())
        }
        Command::Steer { params, config, x0, x1, t0, t1, steps, out_traj, out_ctrl } => {
            let p = params.resolve()?;
            let c: ThrusterConfig = config.parse()?;
            let x0 = parse_state(&x0, "--x0")?;
            let x1 = parse_state(&x1, "--x1")?;
            let model = build_model(&p, c);
            let prob = SteeringProblem { model, x0, x1, t0, t1 };
            let sol = synthesize(&prob)?;
            let traj = integrate_linear(
                &prob.model,
                |t| sol.control_at(t).expect("replay stays inside the horizon"),
                x0,
                t0,
                t1,
                steps,
            )?;
            let terminal_error = (traj.final_state() - x1).norm();
            println!("config: {c}");
            println!("energy: {}", sol.energy);
            println!("terminal error: {terminal_error}");

            if let Some(path) = out_traj {
                let mut csv = String::from("t,x1,x2,x3,x4,x5,x6\n");
                for (t, x) in traj.times.iter().zip(&traj.states) {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        t, x[0], x[1], x[2], x[3], x[4], x[5]
                    ));
                }
                write_file(&path, &csv)?;
            }
            if let Some(path) = out_ctrl {
                let mut csv = String::from("t,u_r,u_theta,u_z\n");
                for (t, u) in sol.sample_control(steps)? {
                    let mut channels = [0.0f64; 3];
                    for (j, d) in c.directions().iter().enumerate() {
                        channels[match d {
                            satctrl::model::Direction::R => 0,
                            satctrl::model::Direction::Theta => 1,
                            satctrl::model::Direction::Z => 2,
                        }] = u[j];
                    }
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        t, channels[0], channels[1], channels[2]
                    ));
                }
                write_file(&path, &csv)?;
            }
            Ok(())
        }
        Command::Linearize { params, config } => {
            let p = params.resolve()?;
            let c: ThrusterConfig = config.parse()?;
            let model = build_model(&p, c);
            println!("A =");
            for i in 0..6 {
                let row: Vec<String> =
                    (0..6).map(|j| format!("{}", model.a[(i, j)])).collect();
                println!("  {}", row.join(" "));
            }
            println!("B =");
            for i in 0..6 {
                let row: Vec<String> =
                    (0..model.b.ncols()).map(|j| format!("{}", model.b[(i, j)])).collect();
                println!("  {}", row.join(" "));
            }
            Ok(())
        }
        Command::Gramian { params, config, t0, t1 } => {
            let p = params.resolve()?;
            let c: ThrusterConfig = config.parse()?;
            let model = build_model(&p, c);
            let g = gramian(&model, t0, t1)?;
            println!("W({t0}, {t1}) for config {c} =");
            for i in 0..6 {
                let row: Vec<String> = (0..6).map(|j| format!("{}", g.w[(i, j)])).collect();
                println!("  {}", row.join(" "));
            }
            let rank = g.rank();
            println!("rank(W): {rank}");
            println!("min singular value: {}", g.min_singular_value());
            println!("max singular value: {}", g.max_singular_value());
            match g.condition_number() {
                Some(cond) => println!("condition number: {cond}"),
                None => println!("condition number: singular"),
            }
            println!("controllable: {}", if rank == 6 { "yes" } else { "no" });
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            if e.use_stderr() {
                let _ = writeln!(std::io::stderr(), "{e}");
                return ExitCode::from(EXIT_INVALID);
            }
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
