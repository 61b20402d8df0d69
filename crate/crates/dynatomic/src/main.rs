use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynatomic::config::Config;
use dynatomic::error::{Error, Result};
use dynatomic::exact::parabolic_parameters;
use dynatomic::formats::{json_line, root_order, monodromy_paths_csv, ray_csv, roots_csv, write_file, View};
use dynatomic::monodromy::loop_permutation;
use dynatomic::quad_diff::{case2_certificate, double_pole_certificate, qd_norm, PoleTolerance, QuadDiff, Region};
use dynatomic::rays::{trace_dynamical_ray, trace_parameter_ray};
use dynatomic::render::{counts_csv, counts_svg, escape_counts, Plane, DEFAULT_ITERATIONS, DEFAULT_SIZE};
use dynatomic::verify::{contraction_sample, levin_sample, run, run_all, CRITERIA};
use dynatomic_core::{
    beta_family, classify_angle, connect, predicted_move, transitivity_certificate, Angle, MonodromyMove, ParabolicClass,
    Word,
};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dynatomic", version, about = "Dynatomic periodic curves of z^d + c")]
struct Cli {
    /// JSON config file; fields not given keep their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV and SVG files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Human-readable output instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kneading sequence of a periodic angle.
    Kneading(AngleArgs),
    /// Primitive/satellite criterion at a maximal periodic angle.
    Classify(AngleArgs),
    /// Moves connecting an itinerary to the special orbit.
    Connect {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        itinerary: String,
    },
    /// Connectivity of the graph generated by all moves of period n.
    Transitivity {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
    },
    /// Parameters with a parabolic cycle whose period divides n.
    Parabolics {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
    },
    /// Quadratic-differential certificates.
    QdVerify(QdArgs),
    /// Permutation of period-n points around a parabolic parameter.
    Monodromy {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        angle: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        turns: i32,
    },
    /// Escape-time figures as SVG or CSV.
    Render {
        #[command(subcommand)]
        figure: Figure,
    },
    /// Runs the acceptance suite.
    Verify {
        #[arg(long, default_value = "desk")]
        profile: Profile,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Args)]
struct AngleArgs {
    #[arg(long)]
    d: u32,
    /// Angle as p/q.
    #[arg(long)]
    angle: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum QdCase {
    Case2,
    DoublePole,
    Levin,
    Norm,
    Contract,
}

#[derive(Args)]
struct QdArgs {
    #[arg(long)]
    d: u32,
    #[arg(long = "case", value_enum)]
    case: QdCase,
    /// Parameter as re,im.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    c: Option<C64>,
    /// Periodic point as re,im.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    z: Option<C64>,
    /// Period of the cycle through z.
    #[arg(long)]
    period: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    /// Random points per case for levin.
    #[arg(long, default_value_t = 100)]
    points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Desk,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Svg,
    Csv,
}

#[derive(Args)]
struct FrameArgs {
    #[arg(long)]
    d: u32,
    /// Center of the picture as re,im.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    center: Option<C64>,
    /// Width of the picture in the plane.
    #[arg(long, default_value_t = 4.0)]
    span: f64,
    #[arg(long, default_value_t = DEFAULT_SIZE)]
    size: usize,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: u32,
    #[arg(long, value_enum, default_value = "svg")]
    format: Format,
}

#[derive(Subcommand)]
enum Figure {
    /// The Multibrot set.
    Multibrot(FrameArgs),
    /// Parameter rays over the Multibrot set, or dynamical rays over a
    /// filled Julia set when --c is given.
    Rays {
        #[command(flatten)]
        frame: FrameArgs,
        /// Comma-separated angles p/q.
        #[arg(long, value_delimiter = ',', required = true)]
        angles: Vec<String>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        c: Option<C64>,
        /// Potential at which rays stop.
        #[arg(long, default_value_t = 1e-6)]
        potential: f64,
    },
}

fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [re, im] = parts[..] else {
        return Err(format!("expected re,im but got {s:?}"));
    };
    let f = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(C64::new(f(re)?, f(im)?))
}

/// Failures of the command itself, as opposed to failed checks.
enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Core(_) | Error::Config(_) => Failure::Usage(e.to_string()),
            e => Failure::Runtime(e),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<dynatomic_core::Error> for Failure {
    fn from(e: dynatomic_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    pretty: bool,
    dir: PathBuf,
}

impl Output {
    fn emit(&self, value: &Value) -> Result<()> {
        if self.pretty {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            println!("{}", json_line(value)?);
        }
        Ok(())
    }

    fn file(&self, name: &str, contents: &str) -> Result<String> {
        Ok(write_file(&self.dir, name, contents)?.display().to_string())
    }
}

fn angle(s: &str, d: u32) -> std::result::Result<Angle, Failure> {
    Ok(Angle::parse(s, d)?)
}

fn cycles_json(cycles: Vec<Vec<Word>>) -> Value {
    cycles.into_iter().map(|c| c.iter().map(Word::to_string).collect::<Vec<_>>()).collect()
}

fn move_json(mv: &MonodromyMove) -> Value {
    json!({
        "angle": mv.center.to_string(),
        "kind": mv.kind_name(),
        "winding": mv.winding,
        "cycles": cycles_json(mv.cycles()),
    })
}

fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("DYNATOMIC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Runs one command; `Ok(false)` means a check failed.
fn execute(cli: Cli) -> std::result::Result<bool, Failure> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(dir) = &cli.out {
        config.output_dir = dir.clone();
    }
    let out = Output { pretty: cli.pretty, dir: config.output_dir.clone() };
    let tol = PoleTolerance { merge: config.merge_tol, collision: config.collision_tol };
    match cli.command {
        Command::Kneading(a) => {
            let theta = angle(&a.angle, a.d)?;
            let nu = theta.kneading_sequence()?;
            out.emit(&json!({"d": a.d, "angle": theta.to_string(), "period": theta.period()?, "kneading": nu.to_string()}))?;
        }
        Command::Classify(a) => {
            let theta = angle(&a.angle, a.d)?;
            let class = classify_angle(&theta)?;
            let mut v = json!({"d": a.d, "angle": theta.to_string(), "class": class.verdict()});
            match &class {
                ParabolicClass::SatelliteCandidate { expression, last_digit } => {
                    v["w"] = json!(expression.w.to_string());
                    v["s"] = json!(expression.s);
                    v["last_digit"] = json!(last_digit);
                    let betas: Vec<Value> = beta_family(&theta)?
                        .betas
                        .iter()
                        .map(|b| json!({"index": b.index, "angle": b.angle.to_string(), "a": b.a.to_string(), "b": b.b.to_string()}))
                        .collect();
                    v["betas"] = json!(betas);
                }
                ParabolicClass::SpecialSatellite { eta } => v["eta"] = json!(eta.to_string()),
                ParabolicClass::PrimitiveCertified => {}
            }
            v["move"] = predicted_move(&theta)?.as_ref().map_or(Value::Null, move_json);
            out.emit(&v)?;
        }
        Command::Connect { d, n, itinerary } => {
            let start = Word::parse(&itinerary, d)?;
            let plan = connect(d, n, &start)?;
            out.emit(&json!({
                "d": d,
                "n": n,
                "source": plan.source.to_string(),
                "target": plan.target.to_string(),
                "digit_sums": plan.digit_sums,
                "moves": plan.moves.iter().map(move_json).collect::<Vec<_>>(),
            }))?;
        }
        Command::Transitivity { d, n } => {
            let r = transitivity_certificate(d, n, config.enumeration_budget)?;
            out.emit(&json!({
                "d": r.degree,
                "n": r.period,
                "vertices": r.vertices,
                "edges": r.edges,
                "components": r.components,
                "connected": r.connected,
            }))?;
            return Ok(r.connected);
        }
        Command::Parabolics { d, n } => {
            let mut report = parabolic_parameters(d, n, config.resultant_degree_budget)?;
            report.parameters.sort_by(|a, b| root_order(a.c, b.c));
            let rows: Vec<(C64, f64)> = report.parameters.iter().map(|p| (p.c, p.residuals().0.max(p.residuals().1))).collect();
            let file = out.file(&format!("parabolics_d{d}_n{n}.csv"), &roots_csv(&rows))?;
            let points: Vec<Value> = report
                .parameters
                .iter()
                .map(|p| {
                    json!({
                        "c": complex(p.c),
                        "z": complex(p.z),
                        "period": p.period,
                        "ray_period": p.ray_period,
                        "multiplier": format!("{}/{}", p.numer, p.denom),
                        "primitive": p.is_primitive(),
                        "residual": p.residuals().0.max(p.residuals().1),
                    })
                })
                .collect();
            out.emit(&json!({"d": d, "n": n, "squarefree_degree": report.squarefree_degree, "parameters": points, "file": file}))?;
        }
        Command::QdVerify(q) => return qd_verify(&q, &config, tol, &out),
        Command::Monodromy { d, angle: a, n, radius, turns } => {
            let theta = angle(&a, d)?;
            let r = radius.unwrap_or(config.loop_radius);
            if !(r > 0.0) {
                return Err(Failure::Usage("--radius must be positive".into()));
            }
            let report = loop_permutation(d, &theta, n, r, turns, &config)?;
            let name = format!("monodromy_d{d}_{}_{}_n{n}", theta.numerator(), theta.denominator());
            let mut files = Vec::new();
            for (file, csv) in monodromy_paths_csv(&report) {
                files.push(out.file(&format!("{name}/{file}"), &csv)?);
            }
            files.sort();
            let mut v = serde_json::to_value(&report)?;
            v["files"] = json!(files);
            out.emit(&v)?;
            return Ok(report.matches() || report.predicted.is_none());
        }
        Command::Render { figure } => render(figure, &config, &out)?,
        Command::Verify { profile: Profile::Desk, only } => {
            let results = match only {
                Some(id) => match run(id, &config) {
                    Some(r) => vec![r],
                    None => return Err(Failure::Usage(format!("no criterion {id}; there are {}", CRITERIA.len()))),
                },
                None => run_all(&config),
            };
            for r in &results {
                if out.pretty {
                    println!("{} {:>2}  {:<38} {:>8.2} s  {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name, r.seconds, r.detail);
                } else {
                    println!("{}", json_line(r)?);
                }
            }
            return Ok(results.iter().all(|r| r.pass));
        }
    }
    Ok(true)
}

fn qd_verify(q: &QdArgs, config: &Config, tol: PoleTolerance, out: &Output) -> std::result::Result<bool, Failure> {
    let point = |name: &str, v: Option<C64>| v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this case")));
    let (v, pass) = match q.case {
        QdCase::Case2 => {
            let (c, z) = (point("c", q.c)?, point("z", q.z)?);
            let r = case2_certificate(q.d, c, z, q.period.unwrap_or(1), tol)?;
            let pass = r.residual < 1e-6 && r.dp_dc.norm() > 0.05;
            let mut v = serde_json::to_value(&r)?;
            v["pass"] = json!(pass);
            (v, pass)
        }
        QdCase::DoublePole => {
            let (c, z) = (point("c", q.c)?, point("z", q.z)?);
            let r = double_pole_certificate(q.d, c, z, q.period.unwrap_or(1), tol)?;
            let pass = r.residual < 1e-8 && r.rho_dot.norm() > 0.1;
            let mut v = serde_json::to_value(&r)?;
            v["pass"] = json!(pass);
            (v, pass)
        }
        QdCase::Levin => {
            let cases = q.count.unwrap_or(50);
            let worst = levin_sample(config, Some(q.d), cases, q.points)?;
            let pass = worst < 1e-9;
            (json!({"d": q.d, "cases": cases, "points": q.points, "worst_relative_error": worst, "pass": pass}), pass)
        }
        QdCase::Norm => {
            let r = q.radius.unwrap_or(1.0);
            let n = qd_norm(&QuadDiff::simple(C64::new(0.0, 0.0), C64::new(1.0, 0.0)), &Region::Disk { center: C64::new(0.0, 0.0), radius: r })?;
            let expected = std::f64::consts::TAU * r;
            let pass = (n.value / expected - 1.0).abs() < 1e-3;
            (json!({"radius": r, "norm": n.value, "error": n.error, "expected": expected, "pass": pass}), pass)
        }
        QdCase::Contract => {
            let (cases, r) = (q.count.unwrap_or(20), q.radius.unwrap_or(3.0));
            let (holds, margin) = contraction_sample(config, q.d, cases, r)?;
            let pass = holds && margin > 0.0;
            (json!({"d": q.d, "cases": cases, "radius": r, "smallest_margin": margin, "pass": pass}), pass)
        }
    };
    out.emit(&v)?;
    Ok(pass)
}

fn render(figure: Figure, config: &Config, out: &Output) -> std::result::Result<(), Failure> {
    let (frame, rays) = match figure {
        Figure::Multibrot(frame) => (frame, None),
        Figure::Rays { frame, angles, c, potential } => (frame, Some((angles, c, potential))),
    };
    if frame.size == 0 || frame.iterations == 0 || !(frame.span > 0.0) {
        return Err(Failure::Usage("--size, --iterations and --span must be positive".into()));
    }
    let d = frame.d;
    if d < 2 {
        return Err(Failure::Usage("degree must be at least 2".into()));
    }
    let plane = match rays.as_ref().and_then(|r| r.1) {
        Some(c) => Plane::Dynamical(c),
        None => Plane::Parameter,
    };
    let view = View { center: frame.center.unwrap_or_default(), span: frame.span, width: frame.size, height: frame.size };
    let counts = escape_counts(d, plane, &view, frame.iterations);
    let mut files = Vec::new();
    let mut overlays = Vec::new();
    let stem = match plane {
        Plane::Parameter => format!("multibrot_d{d}"),
        Plane::Dynamical(_) => format!("julia_d{d}"),
    };
    if let Some((angles, _, potential)) = rays {
        for a in &angles {
            let theta = angle(a, d)?;
            let ray = match plane {
                Plane::Parameter => trace_parameter_ray(d, &theta, potential, &config.ray)?,
                Plane::Dynamical(c) => trace_dynamical_ray(d, c, &theta, potential, &config.ray)?,
            };
            let name = format!("{stem}_ray_{}_{}.csv", theta.numerator(), theta.denominator());
            files.push(out.file(&name, &ray_csv(&ray))?);
            overlays.push(ray.samples);
        }
    }
    let main = match frame.format {
        Format::Svg => out.file(&format!("{stem}.svg"), &counts_svg(&counts, &view, frame.iterations, &overlays))?,
        Format::Csv => out.file(&format!("{stem}.csv"), &counts_csv(&counts, view.width))?,
    };
    files.insert(0, main);
    out.emit(&json!({"d": d, "width": view.width, "height": view.height, "iterations": frame.iterations, "files": files}))?;
    Ok(())
}
