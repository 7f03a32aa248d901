use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use xxchain::scan::{figure_preset, report_json, verify_suite, write_scan_files, ScanSpec, DEFAULT_DRAWS};
use xxchain::{
    concurrence_closed_form, concurrence_wootters, correlation_tensor, entanglement_critical_temp,
    envelope_extremum, equilibrium_state, fidelity_critical_temp, optimal_fidelity, singlet_fraction_closed_form,
    singlet_fraction_general, thermal_coefficients, ChainParams, Error, Temperature,
};

#[derive(Parser)]
#[command(name = "xxchain", version, about = "Thermal entanglement and teleportation fidelity of the two-qubit XX chain")]
struct Cli {
    /// Output format for single results
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObservableArg {
    Concurrence,
    Fidelity,
    SingletFraction,
    State,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Entanglement,
    Fidelity,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the thermal state at one parameter point
    Compute {
        #[arg(long, allow_hyphen_values = true)]
        j: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        b1: f64,
        /// k_B T; 0 selects the ground state
        #[arg(long)]
        kbt: f64,
        /// Print only this observable (default: concurrence, singlet fraction and fidelity)
        #[arg(long, value_enum)]
        observable: Option<ObservableArg>,
    },
    /// Critical temperature of entanglement or of teleportation fidelity
    Critical {
        #[arg(long, allow_hyphen_values = true)]
        j: f64,
        #[arg(long, allow_hyphen_values = true)]
        b1: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Run a figure preset or a JSON scan spec; writes CSV plus a JSON sidecar
    Scan {
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        preset: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximize the fidelity critical temperature over B
    Envelope {
        #[arg(long, allow_hyphen_values = true)]
        j: f64,
        #[arg(long, allow_hyphen_values = true)]
        b1: f64,
    },
    /// Cross-check every closed form against its oracle
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DRAWS)]
        draws: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BracketFailure { .. } => ExitCode::from(3),
                Error::Io(_) => ExitCode::FAILURE,
                _ => ExitCode::from(2),
            }
        }
    }
}

fn emit(format: Format, value: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Csv => {
            let Value::Object(map) = value else {
                println!("{value}");
                return;
            };
            let keys: Vec<&str> = map.keys().map(String::as_str).collect();
            let cells: Vec<String> = map
                .values()
                .map(|v| match v {
                    Value::Number(n) => n.as_f64().map(xxchain::scan::format_number).unwrap_or_else(|| n.to_string()),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            println!("{}\n{}", keys.join(","), cells.join(","));
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Compute { j, b, b1, kbt, observable } => {
            let p = ChainParams::new(*j, *b, *b1)?;
            let t = Temperature::new(*kbt)?;
            let closed = *j != 0.0 && !t.is_ground();
            let rho = equilibrium_state(&p, &t)?;
            let concurrence = if closed {
                concurrence_closed_form(&thermal_coefficients(&p, &t)?).value()
            } else {
                concurrence_wootters(&rho)?.value()
            };
            let singlet = if closed {
                singlet_fraction_closed_form(&p, &t)?
            } else {
                singlet_fraction_general(&correlation_tensor(&rho)?)
            };
            let fidelity = optimal_fidelity(singlet)?;
            let value = match observable {
                Some(ObservableArg::Concurrence) => json!({ "concurrence": concurrence }),
                Some(ObservableArg::Fidelity) => json!({ "fidelity": fidelity }),
                Some(ObservableArg::SingletFraction) => json!({ "singletFraction": singlet }),
                Some(ObservableArg::State) => json!({ "state": rho.matrix() }),
                None => json!({ "concurrence": concurrence, "singletFraction": singlet, "fidelity": fidelity }),
            };
            emit(cli.format, &value);
        }
        Command::Critical { j, b1, b, kind } => {
            let r = match kind {
                Kind::Entanglement => {
                    if b.is_some() {
                        eprintln!("note: the entanglement critical temperature does not depend on B; --b ignored");
                    }
                    entanglement_critical_temp(&ChainParams::new(*j, 0.0, *b1)?)
                }
                Kind::Fidelity => fidelity_critical_temp(&ChainParams::new(*j, b.unwrap_or(0.0), *b1)?)?,
            };
            let mut value = json!({ "value": r.temperature(), "exists": r.exists, "residual": r.residual });
            if r.boundary {
                value["boundary"] = json!(true);
            }
            emit(cli.format, &value);
        }
        Command::Scan { preset, spec, out } => {
            let (specs, id) = match (preset, spec) {
                (Some(id), _) => (figure_preset(id)?, Some(id.as_str())),
                (None, Some(path)) => {
                    let spec: ScanSpec = serde_json::from_reader(std::fs::File::open(path)?)?;
                    (vec![spec], None)
                }
                (None, None) => unreachable!("clap requires one of --preset/--spec"),
            };
            let meta = write_scan_files(&specs, id, out)?;
            eprintln!("wrote {} and {}", out.display(), meta.display());
        }
        Command::Envelope { j, b1 } => {
            let env = envelope_extremum(*j, *b1)?;
            let tc = entanglement_critical_temp(&ChainParams::new(*j, 0.0, *b1)?).value;
            let agree = (env.argmax_b + 0.5 * b1).abs() <= 1e-4 && (env.max_t - tc).abs() <= 1e-6;
            emit(
                cli.format,
                &json!({ "argmaxB": env.argmax_b, "maxT": env.max_t, "entanglementTc": tc, "agree": agree }),
            );
        }
        Command::Verify { seed, draws } => {
            let report = verify_suite(*seed, *draws)?;
            std::io::stdout().lock().write_all(report_json(&report)?.as_bytes())?;
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
