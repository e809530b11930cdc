//! `qmobius`: command-line access to the quaternionic Moebius library.
//!
//! Every command writes one JSON document (or CSV for `geodesic --csv`) to
//! stdout. Exit status is 0 on success, 1 on a domain error and 2 when the
//! arguments cannot be parsed; both failures print
//! `{"error": code, "message": text}`.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qmobius::flt::{apply_matrix, to_canonical_disc};
use qmobius::hypgeo::{self, DiscKind, HalfspaceKind};
use qmobius::{crossratio, kobayashi, verify, Error, ExtQuaternion, Flt, Mat2H, Quaternion, Tolerance};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "qmobius", version, about = "Quaternionic Moebius geometry from the command line")]
struct Cli {
    /// Tolerance for approximate predicates.
    #[arg(long, env = "QMOBIUS_TOL")]
    tol: Option<f64>,

    /// Seed for randomized commands.
    #[arg(long, env = "QMOBIUS_SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Model {
    /// Unit-ball model.
    #[arg(long)]
    disc: bool,
    /// Right half-space model.
    #[arg(long)]
    halfspace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dieudonne determinant.
    Det { matrix: String },
    /// Matrix inverse.
    Inv { matrix: String },
    /// Rescale to det_h = 1.
    Normalize { matrix: String },
    /// Group memberships.
    Classify {
        matrix: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Image of a point (`[w,x,y,z]` or `inf`).
    Apply { matrix: String, point: String },
    /// Factor into translations, rotations, dilations and inversions.
    Decompose { matrix: String },
    /// Canonical parameters (alpha, beta, q0) of an Sp(1,1) matrix.
    Canonical { matrix: String },
    /// Cross-ratio of four points.
    CrossRatio { q1: String, q2: String, q3: String, q4: String },
    /// Whether four points lie on one circle or line.
    Concyclic { q1: String, q2: String, q3: String, q4: String },
    /// Poincaré distance.
    Distance {
        #[command(flatten)]
        model: Model,
        q1: String,
        q2: String,
    },
    /// Geodesic through two points, with samples.
    Geodesic {
        #[command(flatten)]
        model: Model,
        q1: String,
        q2: String,
        #[arg(long, default_value_t = 11)]
        samples: usize,
        /// Emit the samples as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Cayley map (1 + q)(1 - q)^-1 or its inverse.
    Cayley {
        #[arg(long)]
        inverse: bool,
        point: String,
    },
    /// Poincaré metric of a tangent vector.
    Metric {
        #[command(flatten)]
        model: Model,
        point: String,
        tau: String,
    },
    /// Poincaré vs Kobayashi comparison.
    KobayashiWitness {
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
    /// Run the seeded invariant suites.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
    },
}

enum Output {
    Json(Value),
    Csv(String),
}

struct Failure {
    code: &'static str,
    message: String,
    status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure { code: e.code(), message: e.to_string(), status }
    }
}

fn parse_error(message: impl Into<String>) -> Failure {
    Failure { code: "ParseError", message: message.into(), status: 2 }
}

fn parse_quaternion(s: &str) -> Result<Quaternion, Failure> {
    if let Ok(v) = serde_json::from_str::<[f64; 4]>(s) {
        return Ok(Quaternion::from(v));
    }
    s.parse::<Quaternion>()
        .map_err(|_| parse_error(format!("expected a quaternion [w,x,y,z], got {s:?}")))
}

fn parse_ext(s: &str) -> Result<ExtQuaternion, Failure> {
    match s.trim().trim_matches('"') {
        "inf" | "∞" => Ok(ExtQuaternion::Infinity),
        _ => parse_quaternion(s).map(ExtQuaternion::Finite),
    }
}

fn parse_matrix(s: &str) -> Result<Mat2H, Failure> {
    let rows: [[f64; 4]; 4] = serde_json::from_str(s)
        .map_err(|_| parse_error(format!("expected a matrix [[a],[b],[c],[d]] of four quaternions, got {s:?}")))?;
    let m = Mat2H::new(rows[0].into(), rows[1].into(), rows[2].into(), rows[3].into());
    if !m.is_finite() {
        return Err(parse_error("matrix entries must be finite"));
    }
    Ok(m)
}

/// Rounds to 7 significant digits; integral values become JSON integers.
fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() });
    }
    let rounded: f64 = format!("{x:.6e}").parse().expect("formatted float parses");
    if rounded.fract() == 0.0 && rounded.abs() < 1e15 {
        json!(rounded as i64)
    } else {
        json!(rounded)
    }
}

/// Applies [`number`] to every float in a JSON tree.
fn tidy(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => number(n.as_f64().expect("f64 number")),
        Value::Array(items) => Value::Array(items.into_iter().map(tidy).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, tidy(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

fn csv_field(x: f64) -> String {
    match number(x) {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library values serialize")
}

fn disc_kind(k: DiscKind) -> &'static str {
    match k {
        DiscKind::Diameter => "Diameter",
        DiscKind::Circle => "Circle",
    }
}

fn halfspace_kind(k: HalfspaceKind) -> &'static str {
    match k {
        HalfspaceKind::HalfLine => "HalfLine",
        HalfspaceKind::Arc => "Arc",
    }
}

fn geodesic(model: &Model, q1: Quaternion, q2: Quaternion, samples: usize, csv: bool) -> Result<Output, Failure> {
    let (kind, ends, points) = if model.disc {
        let g = hypgeo::geodesic_disc(q1, q2)?;
        let pts = hypgeo::geodesic_sample(q1, q2, samples)?;
        (disc_kind(g.kind), vec![to_json(&g.q3), to_json(&g.q4)], pts)
    } else {
        let g = hypgeo::geodesic_halfspace(q1, q2)?;
        let to_disc = |q: Quaternion| {
            hypgeo::cayley_inv(q.into())
                .finite()
                .ok_or_else(|| Failure::from(Error::OutOfDomain(format!("{q} is not in the right half-space"))))
        };
        let (p1, p2) = (to_disc(q1)?, to_disc(q2)?);
        let pts = hypgeo::geodesic_sample(p1, p2, samples)?
            .into_iter()
            .enumerate()
            .map(|(k, p)| match k {
                0 => q1,
                _ if k == samples - 1 => q2,
                _ => hypgeo::cayley(p.into()).finite().expect("ball points avoid the pole"),
            })
            .collect();
        (halfspace_kind(g.kind), vec![to_json(&g.e3), to_json(&g.e4)], pts)
    };
    if csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure { code: "IoError", message: e.to_string(), status: 1 };
        w.write_record(["w", "x", "y", "z"]).map_err(io)?;
        for p in &points {
            w.write_record(p.to_array().map(csv_field)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure { code: "IoError", message: e.to_string(), status: 1 })?;
        return Ok(Output::Csv(String::from_utf8(bytes).expect("CSV output is UTF-8")));
    }
    Ok(Output::Json(json!({
        "kind": kind,
        "ends": ends,
        "samples": to_json(&points),
    })))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(parse_error("--tol must be a positive number"));
        }
        Tolerance::set_global(Tolerance::uniform(tol));
    }
    let tol = Tolerance::default();
    let out = match cli.command {
        Command::Det { matrix } => json!({ "det_h": parse_matrix(&matrix)?.det_h() }),
        Command::Inv { matrix } => json!({ "inverse": to_json(&parse_matrix(&matrix)?.inverse()?) }),
        Command::Normalize { matrix } => json!({ "normalized": to_json(&parse_matrix(&matrix)?.normalize()?) }),
        Command::Classify { matrix, tol: local } => {
            let t = local.unwrap_or(tol.atol);
            let tags: Vec<&str> = parse_matrix(&matrix)?.classify(t).iter().map(|g| g.as_str()).collect();
            json!({ "tags": tags })
        }
        Command::Apply { matrix, point } => {
            let f = Flt::new(parse_matrix(&matrix)?)?;
            let q = parse_ext(&point)?;
            json!({ "image": to_json(&apply_matrix(f.matrix(), q)) })
        }
        Command::Decompose { matrix } => {
            let f = Flt::new(parse_matrix(&matrix)?)?;
            json!({ "generators": to_json(&f.decompose_generators()) })
        }
        Command::Canonical { matrix } => {
            let g = to_canonical_disc(&parse_matrix(&matrix)?)?;
            json!({ "alpha": to_json(&g.alpha()), "beta": to_json(&g.beta()), "q0": to_json(&g.q0()) })
        }
        Command::CrossRatio { q1, q2, q3, q4 } => {
            let cr = crossratio::cross_ratio(parse_ext(&q1)?, parse_ext(&q2)?, parse_ext(&q3)?, parse_ext(&q4)?)?;
            to_json(&cr)
        }
        Command::Concyclic { q1, q2, q3, q4 } => {
            let q = [parse_quaternion(&q1)?, parse_quaternion(&q2)?, parse_quaternion(&q3)?, parse_quaternion(&q4)?];
            let concyclic = crossratio::is_concyclic(q[0], q[1], q[2], q[3], tol.atol)?;
            let cr = crossratio::cross_ratio_finite(q[0], q[1], q[2], q[3])?;
            json!({ "concyclic": concyclic, "cross_ratio": to_json(&cr) })
        }
        Command::Distance { model, q1, q2 } => {
            let (a, b) = (parse_quaternion(&q1)?, parse_quaternion(&q2)?);
            let d = if model.disc { hypgeo::distance_disc(a, b)? } else { hypgeo::distance_halfspace(a, b)? };
            json!({ "distance": d })
        }
        Command::Geodesic { model, q1, q2, samples, csv } => {
            return geodesic(&model, parse_quaternion(&q1)?, parse_quaternion(&q2)?, samples, csv).map(|o| match o {
                Output::Json(v) => Output::Json(tidy(v)),
                csv => csv,
            });
        }
        Command::Cayley { inverse, point } => {
            let q = parse_ext(&point)?;
            let image = if inverse { hypgeo::cayley_inv(q) } else { hypgeo::cayley(q) };
            json!({ "image": to_json(&image) })
        }
        Command::Metric { model, point, tau } => {
            let (q, t) = (parse_quaternion(&point)?, parse_quaternion(&tau)?);
            let m = if model.disc { hypgeo::metric_disc(q, t)? } else { hypgeo::metric_halfspace(q, t)? };
            json!({ "metric": m })
        }
        Command::KobayashiWitness { grid } => to_json(&kobayashi::non_isometry_witness(grid)?),
        Command::Selftest { seed, iters } => {
            let seed = seed.or(cli.seed).unwrap_or(0);
            let reports = verify::run_all(seed, iters);
            let passed = reports.iter().all(|r| r.passed());
            let doc = json!({ "seed": seed, "iters": iters, "passed": passed, "suites": to_json(&reports) });
            if !passed {
                emit(&format!("{}\n", tidy(doc)));
                return Err(Failure { code: "SelftestFailed", message: "invariant suites failed".into(), status: 1 });
            }
            doc
        }
    };
    Ok(Output::Json(tidy(out)))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn fail(f: &Failure) -> ExitCode {
    emit(&format!("{}\n", json!({ "error": f.code, "message": f.message })));
    ExitCode::from(f.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit(&e.to_string());
                return ExitCode::SUCCESS;
            }
            eprint!("{}", e.render());
            let message = e.render().to_string();
            let summary: Vec<&str> = message
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            return fail(&parse_error(summary.join(" ").trim_start_matches("error: ")));
        }
    };
    match run(cli) {
        Ok(Output::Json(v)) => {
            emit(&format!("{v}\n"));
            ExitCode::SUCCESS
        }
        Ok(Output::Csv(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Err(f) => fail(&f),
    }
}
