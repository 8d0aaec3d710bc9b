mod manifest;
mod metric;
mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::Serialize;
use serde_json::json;

use hyperflow::covolume::H_total;
use hyperflow::flow::{cone_angles, curvature, tet_angles, InitialMetric, Termination, Verdict};
use hyperflow::quadrature::QuadConfig;
use hyperflow::tetgeom::{TetKind, ARCCOSH_2};
use hyperflow::triangulation::EdgeKind;
use hyperflow::{
    certify_limit, parse_triangulation, run_flow, validate, CertifyConfig, Error, FlowConfig, FlowMode, Triangulation,
};

use manifest::{sidecar_path, InputFile, RunManifest};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(name = "hyperflow", version, about = "Ricci flow solver for ideal triangulations with hyper-ideal vertices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Reduced,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Check the combinatorial hypotheses and print a JSON report.
    Validate { file: PathBuf },
    /// Run the flow, certify the limit and print a JSON report.
    Flow(FlowArgs),
    /// Evaluate curvature, angles and the Lyapunov function at a given metric.
    Inspect {
        file: PathBuf,
        /// Metric file: JSON object from edge class id to length.
        #[arg(long)]
        lengths: PathBuf,
    },
    /// Run randomised checks of the geometric kernels.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

#[derive(clap::Args)]
struct FlowArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "reduced")]
    mode: Mode,
    /// Stop once the sup norm of the curvature drops below this.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 1e4)]
    max_time: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt0: f64,
    /// Initial length on every flow variable [default: arccosh(2)/2].
    #[arg(long, conflicts_with = "l0_file")]
    l0: Option<f64>,
    /// Initial metric file: JSON object from edge class id to length.
    #[arg(long)]
    l0_file: Option<PathBuf>,
    /// Write the trajectory as CSV, with a manifest next to it.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the final metric as a metric file.
    #[arg(long)]
    metric_out: Option<PathBuf>,
    /// Residual accepted by the certification.
    #[arg(long, default_value_t = 1e-8)]
    cert_tol: f64,
    /// Run even if validation fails.
    #[arg(long)]
    force: bool,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::Numeric(_) => EXIT_NUMERIC,
            Error::Consistency(_) | Error::NonClosedLink { .. } | Error::Logic(_) | Error::MetricMismatch(_) => {
                EXIT_FAILED
            }
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<(String, InputFile), Failure> {
    let bytes = fs::read(path).map_err(|e| io_failure(path, e))?;
    let input = InputFile::new(path, &bytes);
    let text = String::from_utf8(bytes).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{} is not UTF-8: {e}", path.display()),
    })?;
    Ok((text, input))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure {
        code: EXIT_FAILED,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn load(path: &Path) -> Result<(Triangulation, InputFile), Failure> {
    let (text, input) = read(path)?;
    Ok((parse_triangulation(&text)?, input))
}

fn cmd_validate(file: &Path) -> Result<u8, Failure> {
    let (tri, input) = load(file)?;
    let report = validate(&tri);
    let mut manifest = RunManifest::start("validate", vec![input], json!({}));
    manifest.verdict = Some(if report.passed { "pass" } else { "fail" }.into());
    manifest.finish();
    print_json(&json!({ "manifest": manifest, "report": report }));
    if report.passed {
        Ok(EXIT_OK)
    } else {
        eprintln!("validation failed");
        Ok(EXIT_FAILED)
    }
}

fn initial_metric(args: &FlowArgs, tri: &Triangulation, inputs: &mut Vec<InputFile>) -> Result<InitialMetric, Failure> {
    let Some(path) = &args.l0_file else {
        return Ok(InitialMetric::Constant(args.l0.unwrap_or(0.5 * ARCCOSH_2)));
    };
    let (text, input) = read(path)?;
    inputs.push(input);
    let map = metric::parse(&text)?;
    let values = match args.mode {
        Mode::Reduced => {
            // Ideal lengths are reconstructed, so given ones are ignored.
            let ideal = tri.ideal_edge_classes();
            if map.keys().any(|c| ideal.contains(c)) {
                warn!("ignoring ideal edge lengths in {}: the reduced flow reconstructs them", path.display());
            }
            metric::select(&map, &tri.hyper_edge_classes(), &ideal)?
        }
        Mode::Full => metric::full(&map, tri)?.values,
    };
    Ok(InitialMetric::Values(values))
}

fn cmd_flow(args: &FlowArgs) -> Result<u8, Failure> {
    let (tri, input) = load(&args.file)?;
    let mut inputs = vec![input];
    let report = validate(&tri);
    if !report.passed {
        if args.force {
            warn!("validation failed; continuing because of --force");
        } else {
            print_json(&json!({ "validation": report }));
            eprintln!("validation failed; use --force to run anyway");
            return Ok(EXIT_FAILED);
        }
    }
    let mode = match args.mode {
        Mode::Reduced => FlowMode::Reduced,
        Mode::Full => FlowMode::Full,
    };
    let cfg = FlowConfig {
        mode,
        initial: initial_metric(args, &tri, &mut inputs)?,
        dt0: args.dt0,
        stop_tol: args.tol,
        max_time: args.max_time,
        ..FlowConfig::default()
    };
    let cert_cfg = CertifyConfig {
        residual_tol: args.cert_tol,
        ..CertifyConfig::default()
    };
    let mut manifest = RunManifest::start(
        "flow",
        inputs,
        json!({ "flow": cfg, "certify": cert_cfg, "force": args.force }),
    );

    let trace = run_flow(&tri, &cfg)?;
    let cert = certify_limit(&trace.final_metric, &tri, &cert_cfg)?;
    let last = trace.last();
    info!("final |K| = {:e} at t = {}", last.k_inf, last.t);

    let mut notes = Vec::new();
    if args.cert_tol > CertifyConfig::default().residual_tol {
        notes.push(format!("loose certification: residual tolerance {:e}", args.cert_tol));
    }
    if mode == FlowMode::Full {
        notes.push("certification is only claimed for the reduced flow".to_string());
    }
    if !report.passed {
        notes.push("input failed validation".to_string());
    }

    let code = match &trace.termination {
        Termination::Converged => match cert.verdict {
            Verdict::Pass => EXIT_OK,
            // Converged to the stop tolerance but not to the certification one.
            Verdict::Fail if cert.all_real && cert.length_bounds.ok => EXIT_NUMERIC,
            Verdict::Fail => EXIT_FAILED,
        },
        Termination::MaxTime | Termination::NumericError { .. } => EXIT_NUMERIC,
    };

    manifest.termination = Some(serde_json::to_value(&trace.termination).expect("serializable"));
    manifest.verdict = Some(match cert.verdict {
        Verdict::Pass => "pass".into(),
        Verdict::Fail => "fail".into(),
    });
    if let Some(path) = &args.trace {
        manifest.artifacts.push(path.clone());
    }
    if let Some(path) = &args.metric_out {
        manifest.artifacts.push(path.clone());
    }
    manifest.finish();

    if let Some(path) = &args.trace {
        write(path, &trace.to_csv())?;
        let side = serde_json::to_string_pretty(&manifest).expect("serializable");
        write(&sidecar_path(path), &(side + "\n"))?;
    }
    let final_metric = metric::to_map(&trace.final_metric);
    if let Some(path) = &args.metric_out {
        let text = serde_json::to_string_pretty(&final_metric).expect("serializable");
        write(path, &(text + "\n"))?;
    }

    let out = json!({
        "manifest": manifest,
        "mode": mode,
        "banner": trace.banner,
        "termination": trace.termination,
        "final_time": last.t,
        "accepted_steps": trace.accepted_steps,
        "rejected_steps": trace.rejected_steps,
        "k_inf": last.k_inf,
        "h": last.h_line,
        "max_h_increase": trace.max_h_increase(),
        "final_metric": final_metric,
        "certification": cert,
        "notes": notes,
    });
    print_json(&out);
    if code != EXIT_OK {
        eprintln!("{}", cert.summary);
    }
    Ok(code)
}

#[derive(Serialize)]
struct EdgeRow {
    class: usize,
    kind: EdgeKind,
    valence: usize,
    length: f64,
    cone_angle: f64,
    curvature: f64,
}

#[derive(Serialize)]
struct TetRow {
    tet: usize,
    kind: TetKind,
    edge_classes: [usize; 6],
    phi: [f64; 6],
    alpha: [f64; 6],
}

fn cmd_inspect(file: &Path, lengths: &Path) -> Result<u8, Failure> {
    let (tri, input) = load(file)?;
    let (text, metric_input) = read(lengths)?;
    let l = metric::full(&metric::parse(&text)?, &tri)?;
    let k = curvature(&l, &tri)?;
    let cone = cone_angles(&l, &tri)?;
    let edges: Vec<EdgeRow> = tri
        .edge_classes()
        .iter()
        .map(|e| EdgeRow {
            class: e.id,
            kind: e.kind,
            valence: e.valence,
            length: l.values[e.id],
            cone_angle: cone[e.id],
            curvature: k.values[e.id],
        })
        .collect();
    let tets: Vec<TetRow> = tet_angles(&l, &tri)?
        .into_iter()
        .enumerate()
        .map(|(t, a)| TetRow {
            tet: t,
            kind: tri.tets()[t].kind(),
            edge_classes: tri.standard_edge_classes(t),
            phi: a.phi,
            alpha: a.alpha,
        })
        .collect();
    let quad = QuadConfig::with_tol(1e-13);
    let h = H_total(&l, &tri, &quad)?;
    let mut manifest = RunManifest::start("inspect", vec![input, metric_input], json!({ "quad": quad }));
    manifest.finish();
    print_json(&json!({
        "manifest": manifest,
        "k_inf": k.inf_norm(),
        "k_l2": k.l2_norm(),
        "h": h,
        "edges": edges,
        "tetrahedra": tets,
    }));
    Ok(EXIT_OK)
}

fn cmd_selftest(seed: u64, samples: usize) -> Result<u8, Failure> {
    let mut manifest = RunManifest::start("selftest", vec![], json!({ "seed": seed, "samples": samples }));
    let report = selftest::run(seed, samples)?;
    manifest.verdict = Some(if report.passed { "pass" } else { "fail" }.into());
    manifest.finish();
    print_json(&json!({ "manifest": manifest, "selftest": report }));
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Flow(args) => cmd_flow(args),
        Command::Inspect { file, lengths } => cmd_inspect(file, lengths),
        Command::Selftest { seed, samples } => cmd_selftest(*seed, *samples),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
