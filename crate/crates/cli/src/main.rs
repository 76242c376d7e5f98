//! centersvar: command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use centersvar::datagen::generate_reconstruction;
use centersvar::invariants::{fano15, g5, t6, InvariantKind, InvariantVector};
use centersvar::io::{
    config_from_str, config_to_json, invariant_to_json, matrix_to_json, parse_point, reconstruction_to_json,
    variety_to_json,
};
use centersvar::loci::{centers, classify_degeneration_n5, complete_frame, Centers};
use centersvar::projective::{
    gale_transform, general_quadruple, homography_fit, project_config, stability_class, Configuration,
    ProjectivePoint, StabilityClass,
};
use centersvar::Error;

#[derive(Parser, Debug)]
#[command(name = "centersvar", version, about = "Camera-center ambiguity for pairs of projected point sets")]
struct Cli {
    /// Residual tolerance for numeric paths.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomized choices.
    #[arg(long, global = true, env = "CENTERSVAR_SEED", default_value_t = 0)]
    seed: u64,
    /// Output file (directory for `generate`); stdout when absent.
    #[arg(long, short = 'o', global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Project a configuration of P^3 from a center.
    Project {
        #[arg(long, short = 'i')]
        input: PathBuf,
        /// Center as "a0,a1,a2,a3", a JSON array, or a file holding either.
        #[arg(long)]
        center: String,
    },
    /// Invariant vector of a plane configuration.
    Invariants {
        #[arg(long, short = 'i')]
        input: PathBuf,
        /// N5, N6 or N7; inferred from the number of points when absent.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Decide whether two plane configurations are projectively equivalent.
    Equiv {
        #[arg(long, short = 'i')]
        input: PathBuf,
        #[arg(long, short = 'j')]
        second: PathBuf,
        /// Also compare six-point images up to association.
        #[arg(long)]
        associated: bool,
    },
    /// The centers-variety of two configurations of P^3.
    Centers {
        #[arg(long, short = 'i')]
        input: PathBuf,
        #[arg(long, short = 'j')]
        second: PathBuf,
        /// Center for the first configuration.
        #[arg(long)]
        center: Option<String>,
        /// Center for the second configuration.
        #[arg(long)]
        center_b: Option<String>,
    },
    /// Generate a ground-truth instance into the output directory.
    Generate {
        /// Number of points.
        #[arg(long, short = 'n')]
        points: usize,
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
    /// Classify how the five-point fiber over a center degenerates.
    Classify {
        #[arg(long, short = 'i')]
        input: PathBuf,
        #[arg(long)]
        center: String,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String),
    Inconclusive(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io(_) => "Io",
            CliError::Inconclusive(_) => "Inconclusive",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) | CliError::Inconclusive(m) => m.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Inconsistent(_)) => 4,
            CliError::Core(Error::AmbiguousMatch(_) | Error::PathFailure(_)) | CliError::Inconclusive(_) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_config(path: &Path) -> CliResult<Configuration> {
    Ok(config_from_str(&read(path)?)?)
}

fn read_center(spec: &str) -> CliResult<ProjectivePoint> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(parse_point(&read(path)?)?);
    }
    Ok(parse_point(spec)?)
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            text_lines(v, "", &mut out);
            out
        }
    }
}

fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(val, &p, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: {}\n", parts.join(" ")));
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                text_lines(val, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, v: &Value) -> CliResult<()> {
    let text = render(v, cli.format);
    match &cli.out {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn config_block(cli: &Cli, command: &str, inputs: Value) -> Value {
    json!({"command": command, "seed": cli.seed, "tol": cli.tol, "inputs": inputs})
}

fn invariant_vector(p: &Configuration, kind: InvariantKind) -> CliResult<InvariantVector> {
    if p.len() != kind.points() {
        return Err(Error::InvalidInput(format!("{kind} needs {} points, got {}", kind.points(), p.len())).into());
    }
    Ok(match kind {
        InvariantKind::N5 => g5(p)?,
        InvariantKind::N6 => t6(p)?,
        InvariantKind::N7 => fano15(p)?,
    })
}

fn cmd_project(cli: &Cli, input: &Path, center: &str) -> CliResult<()> {
    let x = read_config(input)?;
    let a = read_center(center)?;
    if x.points().contains(&a) {
        return Err(Error::InadmissibleCenter("center coincides with a world point".into()).into());
    }
    let img = project_config(&x, &a)?;
    emit(cli, &config_to_json(&img))
}

fn cmd_invariants(cli: &Cli, input: &Path, kind: Option<&str>) -> CliResult<()> {
    let p = read_config(input)?;
    let kind = match kind {
        Some(k) => k.parse()?,
        None => InvariantKind::for_points(p.len())?,
    };
    emit(cli, &invariant_to_json(&invariant_vector(&p, kind)?))
}

/// Exact homography test; `None` when neither side has four points in
/// general position.
fn homography_verdict(p: &Configuration, q: &Configuration) -> CliResult<Option<(bool, Option<Value>)>> {
    let n = p.len();
    if n <= 3 {
        return Ok(match (complete_frame(p), complete_frame(q)) {
            (Ok(fp), Ok(fq)) => {
                let h = homography_fit(&fp, &fq)?;
                Some((h.is_some(), h.as_ref().map(matrix_to_json)))
            }
            (Err(_), Ok(_)) | (Ok(_), Err(_)) => Some((false, None)),
            _ => None,
        });
    }
    let Some(quad) = general_quadruple(p) else {
        return Ok(general_quadruple(q).map(|_| (false, None)));
    };
    let mut order: Vec<usize> = quad.to_vec();
    order.extend((0..n).filter(|i| !quad.contains(i)));
    let (pp, qq) = (p.permuted(&order), q.permuted(&order));
    if general_quadruple(&qq.select(&[0, 1, 2, 3])).is_none() {
        return Ok(Some((false, None)));
    }
    let h = homography_fit(&pp, &qq)?;
    Ok(Some((h.is_some(), h.as_ref().map(matrix_to_json))))
}

fn cmd_equiv(cli: &Cli, input: &Path, second: &Path, associated: bool) -> CliResult<()> {
    let p = read_config(input)?;
    let q = read_config(second)?;
    if p.len() != q.len() || p.ambient_dim() != 2 || q.ambient_dim() != 2 {
        return Err(Error::InvalidInput("equiv needs two plane configurations of equal size".into()).into());
    }
    let config = config_block(cli, "equiv", json!([input, second]));
    let mut report = match homography_verdict(&p, &q)? {
        Some((verdict, witness)) => json!({
            "equivalent": verdict,
            "certainty": "ExactWitness",
            "witness": witness,
        }),
        None => {
            let kind = InvariantKind::for_points(p.len())
                .map_err(|_| CliError::Inconclusive("no general quadruple and no invariants for this size".into()))?;
            let (u, v) = (invariant_vector(&p, kind)?, invariant_vector(&q, kind)?);
            if !u.projectively_equal(&v) {
                json!({"equivalent": false, "certainty": "InvariantSeparation", "witness": null})
            } else if stability_class(&p)? == StabilityClass::Stable && stability_class(&q)? == StabilityClass::Stable {
                json!({"equivalent": true, "certainty": "InvariantSeparation", "witness": null})
            } else {
                return Err(CliError::Inconclusive("invariants agree on non-stable configurations".into()));
            }
        }
    };
    if associated {
        if p.len() != 6 {
            return Err(Error::InvalidInput("association is compared for six points only".into()).into());
        }
        let assoc = t6(&p)?.projectively_equal(&t6(&gale_transform(&q)?)?);
        report["associated"] = json!(assoc);
    }
    report["config"] = config;
    emit(cli, &report)
}

fn cmd_centers(cli: &Cli, input: &Path, second: &Path, a: Option<&str>, b: Option<&str>) -> CliResult<()> {
    let x = read_config(input)?;
    let y = read_config(second)?;
    let given = Centers { a: a.map(read_center).transpose()?, b: b.map(read_center).transpose()? };
    let variety = centers(&x, &y, &given, cli.tol, cli.seed)?;
    let mut report = variety_to_json(&variety);
    report["config"] = config_block(cli, "centers", json!([input, second]));
    emit(cli, &report)
}

fn cmd_generate(cli: &Cli, points: usize, bound: i64) -> CliResult<()> {
    let dir = cli.out.as_ref().ok_or_else(|| Error::InvalidInput("generate needs --out DIR".into()))?;
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let r = generate_reconstruction(points, cli.seed, bound)?;
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("serializable") + "\n";
    write_atomic(&dir.join("X.json"), &pretty(&config_to_json(&r.x)))?;
    write_atomic(&dir.join("Y.json"), &pretty(&config_to_json(&r.y)))?;
    write_atomic(&dir.join("instance.json"), &pretty(&reconstruction_to_json(&r, cli.seed, bound)))?;
    let summary = json!({
        "written": ["X.json", "Y.json", "instance.json"],
        "n": points,
        "seed": cli.seed,
        "bound": bound,
    });
    print!("{}", render(&summary, cli.format));
    Ok(())
}

fn cmd_classify(cli: &Cli, input: &Path, center: &str) -> CliResult<()> {
    let x = read_config(input)?;
    let a = read_center(center)?;
    let tag = classify_degeneration_n5(&x, &a)?;
    emit(cli, &json!({"degeneration": tag.to_string()}))
}

fn run(cli: &Cli) -> CliResult<()> {
    if !(cli.tol > 0.0) {
        return Err(Error::InvalidInput("--tol must be positive".into()).into());
    }
    match &cli.command {
        Command::Project { input, center } => cmd_project(cli, input, center),
        Command::Invariants { input, kind } => cmd_invariants(cli, input, kind.as_deref()),
        Command::Equiv { input, second, associated } => cmd_equiv(cli, input, second, *associated),
        Command::Centers { input, second, center, center_b } => {
            cmd_centers(cli, input, second, center.as_deref(), center_b.as_deref())
        }
        Command::Generate { points, bound } => cmd_generate(cli, *points, *bound),
        Command::Classify { input, center } => cmd_classify(cli, input, center),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let doc = json!({"code": e.code(), "message": e.message()});
            eprintln!("{}", serde_json::to_string(&doc).expect("serializable"));
            ExitCode::from(e.exit_code())
        }
    }
}
