//! Command-line harness over the weakgeo library.
//!
//! Every subcommand prints canonical JSON (sweeps print CSV) on standard
//! output. Validation failures exit 1 with a machine-readable
//! `{"error": {"code", "message"}}` envelope; argument errors exit 2.

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use weakgeo::{
    conjecture_scan, extremal_imag_projectors, extremal_real_projectors, generalized_weak_value,
    infer_p, optimal_noise_probe, ChannelKind, Component, DensityOp, HermitianOp, Ket,
    PPSEnsemble, QunitFrame,
};

mod render;
use render::{complex_json, ket_json, matrix_json, num, parse_ket_json, parse_op_json};

#[derive(Parser)]
#[command(name = "weakgeo", version, about = "Qubit weak-value geometry toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct EnsembleArgs {
    /// Pre-selected state shorthand: 0, 1, +, -, +i, -i.
    #[arg(long, conflicts_with = "pre_json")]
    pre: Option<String>,
    /// Pre-selected state as JSON amplitudes (inline, file path, or - for stdin).
    #[arg(long)]
    pre_json: Option<String>,
    /// Post-selected state shorthand: 0, 1, +, -, +i, -i.
    #[arg(long, conflicts_with = "post_json")]
    post: Option<String>,
    /// Post-selected state as JSON amplitudes (inline, file path, or - for stdin).
    #[arg(long)]
    post_json: Option<String>,
}

#[derive(Args, Clone)]
struct OpArgs {
    /// Named observable: sigma_x, sigma_y, sigma_z, identity, gamma,
    /// gamma_perp, h_plus, h_minus.
    #[arg(long, conflicts_with = "op_json")]
    op: Option<String>,
    /// Observable as JSON (inline, file path, or - for stdin): either a
    /// row-major matrix of [re, im] entries or {"trace": t, "bloch": [x, y, z]}.
    #[arg(long)]
    op_json: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Depolarizing,
    AmplitudeDamping,
}

impl From<KindArg> for ChannelKind {
    fn from(k: KindArg) -> ChannelKind {
        match k {
            KindArg::Depolarizing => ChannelKind::Depolarizing,
            KindArg::AmplitudeDamping => ChannelKind::AmplitudeDamping,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    /// Channel noise parameter.
    P,
    /// Invariant-line coordinate (real part axis).
    S,
    /// Plane offset coordinate (imaginary part axis).
    A,
    /// Pre-selection polar angle against a fixed |0> post-selection.
    Theta,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weak value of an observable for a pre/post pair.
    Weak {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[command(flatten)]
        op: OpArgs,
    },
    /// Geometric decomposition (trace, s, a, omega) of an observable.
    Decompose {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[command(flatten)]
        op: OpArgs,
    },
    /// Extremal projectors for the real and imaginary parts.
    Extremal {
        #[command(flatten)]
        ens: EnsembleArgs,
    },
    /// Apply a noise channel to a pure state and print the output density operator.
    NoiseApply {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        ens: EnsembleArgs,
    },
    /// Infer the channel parameter from an observed weak value.
    NoiseInfer {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        ens: EnsembleArgs,
        /// Probe observable (same names as --op).
        #[arg(long)]
        probe: String,
        #[arg(long)]
        observed_re: Option<f64>,
        #[arg(long)]
        observed_im: Option<f64>,
    },
    /// Pick the most parameter-sensitive probe observable.
    Probe {
        #[command(flatten)]
        ens: EnsembleArgs,
    },
    /// Seeded counterexample scan in dimension n.
    Scan {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only require the (0,0) weak value to be real.
        #[arg(long)]
        first_pair_only: bool,
        #[command(flatten)]
        ens: EnsembleArgs,
    },
    /// CSV sweep of a weak value along a parameter grid.
    Sweep {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, allow_negative_numbers = true)]
        max: f64,
        #[arg(long)]
        step: f64,
        /// Probe observable for p/theta sweeps (same names as --op).
        #[arg(long)]
        probe: Option<String>,
        /// Fixed s coordinate for a-sweeps.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        s: f64,
        /// Fixed a coordinate for s-sweeps.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        a: f64,
        /// Channel kind for p-sweeps.
        #[arg(long, value_enum, default_value = "depolarizing")]
        kind: KindArg,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(weakgeo::Error),
    Input(String),
}

impl From<weakgeo::Error> for CliError {
    fn from(e: weakgeo::Error) -> CliError {
        CliError::Lib(e)
    }
}

impl CliError {
    fn envelope(&self) -> Value {
        let (code, message) = match self {
            CliError::Lib(e) => (e.code().to_string(), e.to_string()),
            CliError::Input(m) => ("invalid_input".to_string(), m.clone()),
        };
        json!({"error": {"code": code, "message": message}})
    }
}

fn read_source(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        return Ok(buf);
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))
}

fn parse_state(shorthand: Option<&str>, json_arg: Option<&str>, role: &str) -> Result<Ket, CliError> {
    if let Some(s) = shorthand {
        return match s {
            "0" => Ok(Ket::zero()),
            "1" => Ok(Ket::one()),
            "+" => Ok(Ket::plus()),
            "-" => Ok(Ket::minus()),
            "+i" => Ok(Ket::plus_i()),
            "-i" => Ok(Ket::minus_i()),
            other => Err(CliError::Input(format!(
                "unknown state shorthand {other:?}; expected 0, 1, +, -, +i, -i"
            ))),
        };
    }
    if let Some(j) = json_arg {
        let text = read_source(j)?;
        return parse_ket_json(&text).map_err(CliError::Input);
    }
    Err(CliError::Input(format!("missing --{role} or --{role}-json")))
}

fn ensemble(args: &EnsembleArgs) -> Result<PPSEnsemble, CliError> {
    let pre = parse_state(args.pre.as_deref(), args.pre_json.as_deref(), "pre")?;
    let post = parse_state(args.post.as_deref(), args.post_json.as_deref(), "post")?;
    Ok(PPSEnsemble::new(&pre, &post)?)
}

/// Resolve a named observable; ensemble-derived names need the pair.
fn named_op(name: &str, e: &PPSEnsemble) -> Result<HermitianOp, CliError> {
    match name {
        "sigma_x" => Ok(HermitianOp::sigma_x()),
        "sigma_y" => Ok(HermitianOp::sigma_y()),
        "sigma_z" => Ok(HermitianOp::sigma_z()),
        "identity" => Ok(HermitianOp::identity(2)),
        "gamma" => Ok(HermitianOp::projector(e.gamma())),
        "gamma_perp" => Ok(HermitianOp::projector(e.gamma_perp())),
        "h_plus" => Ok(extremal_real_projectors(e)?.h_plus),
        "h_minus" => Ok(extremal_real_projectors(e)?.h_minus),
        other => Err(CliError::Input(format!(
            "unknown observable {other:?}; expected sigma_x, sigma_y, sigma_z, identity, gamma, gamma_perp, h_plus, h_minus"
        ))),
    }
}

fn observable(op: &OpArgs, e: &PPSEnsemble) -> Result<HermitianOp, CliError> {
    if let Some(name) = op.op.as_deref() {
        return named_op(name, e);
    }
    if let Some(j) = op.op_json.as_deref() {
        let text = read_source(j)?;
        return parse_op_json(&text).map_err(|m| match m {
            render::OpParseError::Input(s) => CliError::Input(s),
            render::OpParseError::Lib(e) => CliError::Lib(e),
        });
    }
    Err(CliError::Input("missing --op or --op-json".to_string()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.cmd {
        Cmd::Weak { ens, op } => {
            let e = ensemble(&ens)?;
            let m = observable(&op, &e)?;
            let w = e.weak_value(&m)?;
            let out = json!({
                "weak_value": complex_json(w),
                "overlap": complex_json(e.overlap()),
                "omega": num(e.omega()),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Cmd::Decompose { ens, op } => {
            let e = ensemble(&ens)?;
            let m = observable(&op, &e)?;
            let d = e.decompose(&m)?;
            let out = json!({
                "trace": num(d.trace),
                "s": num(d.s),
                "a": num(d.a),
                "omega": num(d.omega),
                "reconstructed": complex_json(d.reconstruct()),
                "weak_value": complex_json(e.weak_value(&m)?),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Cmd::Extremal { ens } => {
            let e = ensemble(&ens)?;
            let rep = extremal_real_projectors(&e)?;
            let (g, gp, wg, wgp) = extremal_imag_projectors(&e)?;
            let half_tan = 0.5 * (e.omega() / 2.0).tan();
            let out = json!({
                "h_plus": matrix_json(&rep.h_plus),
                "h_minus": matrix_json(&rep.h_minus),
                "w_plus": complex_json(rep.w_plus),
                "w_minus": complex_json(rep.w_minus),
                "bound": num(rep.bound),
                "gamma_projector": matrix_json(&g),
                "gamma_perp_projector": matrix_json(&gp),
                "w_gamma": complex_json(wg),
                "w_gamma_perp": complex_json(wgp),
                // Attained imaginary extreme |Im W| over state projectors.
                "imag_extreme": num(half_tan.abs()),
                // The full-tangent reading tan(omega/2); listed for
                // comparison, not attained by any state projector.
                "imag_extreme_full_tangent": num((e.omega() / 2.0).tan().abs()),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Cmd::NoiseApply { kind, p, ens } => {
            let phi = parse_state(ens.pre.as_deref(), ens.pre_json.as_deref(), "pre")?;
            let ch = weakgeo::NoiseChannel::new(kind.into(), p)?;
            let rho = ch.apply(&phi)?;
            let (_, bloch) = rho.op().bloch_view()?;
            let out = json!({
                "kind": ChannelKind::from(kind).as_str(),
                "p": num(p),
                "matrix": matrix_json(rho.op()),
                "bloch": [num(bloch[0]), num(bloch[1]), num(bloch[2])],
                "eigen_p": num(rho.p()),
                "eigen_phi": ket_json(rho.phi()),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Cmd::NoiseInfer {
            kind,
            ens,
            probe,
            observed_re,
            observed_im,
        } => {
            let e = ensemble(&ens)?;
            let m = named_op(&probe, &e)?;
            let (observed, component) = match (observed_re, observed_im) {
                (Some(re), Some(im)) => (Complex64::new(re, im), Component::Full),
                (Some(re), None) => (Complex64::new(re, 0.0), Component::Real),
                (None, Some(im)) => (Complex64::new(0.0, im), Component::Imag),
                (None, None) => {
                    return Err(CliError::Input(
                        "provide --observed-re and/or --observed-im".to_string(),
                    ))
                }
            };
            let est = infer_p(kind.into(), e.pre(), e.post(), &m, observed, component)?;
            let out = json!({
                "p_hat": num(est.p_hat),
                "residual": num(est.residual),
                "component": est.component.as_str(),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Cmd::Probe { ens } => {
            let e = ensemble(&ens)?;
            let (probe, s) = optimal_noise_probe(e.pre(), e.post())?;
            let out = json!({
                "probe": matrix_json(&probe),
                "sensitivities": {
                    "re_slope_h_plus": num(s.re_slope_h_plus),
                    "re_slope_h_minus": num(s.re_slope_h_minus),
                    "im_slope_gamma": num(s.im_slope_gamma),
                },
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Cmd::Scan {
            dim,
            trials,
            seed,
            first_pair_only,
            ens,
        } => {
            let (phi, psi) = if ens.pre.is_some() || ens.pre_json.is_some() {
                let phi = parse_state(ens.pre.as_deref(), ens.pre_json.as_deref(), "pre")?;
                let psi = parse_state(ens.post.as_deref(), ens.post_json.as_deref(), "post")?;
                (phi, psi)
            } else {
                // Deterministic seeded pair with a safely bounded overlap.
                let mut rng = weakgeo::sampling::seeded_rng(seed ^ 0x9e3779b97f4a7c15);
                let phi = weakgeo::sampling::random_ket(&mut rng, dim);
                let psi = loop {
                    let k = weakgeo::sampling::random_ket(&mut rng, dim);
                    let m = k.inner(&phi)?.norm();
                    if m > 0.1 && m < 0.9 {
                        break k;
                    }
                };
                (phi, psi)
            };
            let frame = QunitFrame::build(&phi, &psi, dim, seed)?;
            let report = conjecture_scan(&frame, trials, seed, first_pair_only)?;
            let candidates: Vec<Value> = report
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "matrix": matrix_json(&c.operator),
                        "max_imag": num(c.max_imag),
                        "off_span_residual": num(c.off_span_residual),
                    })
                })
                .collect();
            let out = json!({
                "dim": report.dim,
                "trials": report.trials,
                "seed": report.seed,
                "r_rank": frame.r_rank(),
                "max_imag_in_r": num(report.max_imag_in_r),
                "orthogonal_pairs_skipped": report.orthogonal_pairs_skipped,
                "counterexample_count": candidates.len(),
                "candidates": candidates,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Cmd::Sweep {
            ens,
            param,
            min,
            max,
            step,
            probe,
            s,
            a,
            kind,
        } => {
            if step <= 0.0 || max < min {
                return Err(CliError::Lib(weakgeo::Error::EmptyRange));
            }
            // Inclusive endpoint grid with a half-step slack against
            // rounding drift.
            let count = ((max - min) / step + 0.5).floor() as usize + 1;
            let grid: Vec<f64> = (0..count).map(|k| min + step * k as f64).collect();
            let mut csv = String::from("parameter,re,im\n");
            match param {
                ParamArg::P => {
                    let e = ensemble(&ens)?;
                    let m = named_op(probe.as_deref().unwrap_or("gamma"), &e)?;
                    let tail = match ChannelKind::from(kind) {
                        ChannelKind::Depolarizing => e.pre().orthogonal_complement()?,
                        ChannelKind::AmplitudeDamping => Ket::zero(),
                    };
                    for p in grid {
                        // Build the output state directly so the grid may
                        // include the channel's closed endpoint.
                        let op = HermitianOp::projector(e.pre())
                            .scale(1.0 - p)
                            .add(&HermitianOp::projector(&tail).scale(p))?;
                        let rho = DensityOp::from_op(op)?;
                        let w = generalized_weak_value(&rho, e.post(), &m)?;
                        csv.push_str(&row(p, w));
                    }
                }
                ParamArg::S => {
                    let e = ensemble(&ens)?;
                    for sv in grid {
                        let m = e.k_line(sv, a).point_at(0.0).to_op();
                        csv.push_str(&row(sv, e.weak_value(&m)?));
                    }
                }
                ParamArg::A => {
                    let e = ensemble(&ens)?;
                    for av in grid {
                        let m = e.k_line(s, av).point_at(0.0).to_op();
                        csv.push_str(&row(av, e.weak_value(&m)?));
                    }
                }
                ParamArg::Theta => {
                    let post = parse_state(ens.post.as_deref(), ens.post_json.as_deref(), "post")?;
                    let probe_name = probe
                        .as_deref()
                        .ok_or_else(|| CliError::Input("theta sweeps need --probe".to_string()))?;
                    for theta in grid {
                        let pre = Ket::from_bloch([theta.sin(), 0.0, theta.cos()])?;
                        let e = PPSEnsemble::new(&pre, &post)?;
                        let m = named_op(probe_name, &e)?;
                        csv.push_str(&row(theta, e.weak_value(&m)?));
                    }
                }
            }
            Ok(csv)
        }
    }
}

fn row(p: f64, w: Complex64) -> String {
    format!(
        "{},{},{}\n",
        render::fmt(p),
        render::fmt(w.re),
        render::fmt(w.im)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", serde_json::to_string(&e.envelope()).unwrap());
            ExitCode::FAILURE
        }
    }
}
