use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerprof_core::analysis::{distance_ecc, distance_ecp};
use eulerprof_core::cubical::compute_contributions_cubical;
use eulerprof_core::io::{
    cubical_from_binary, format_real, read_contributions_path, read_image_path,
    read_point_cloud_path, write_canonical, write_contributions, ImageFormat,
};
use eulerprof_core::vectorize::{vectorize_ecc, vectorize_ecp};
use eulerprof_core::vr::{
    codensity, compute_contributions_vr, compute_curve_vr, compute_profile_vr, reorder_by_degree,
    AxisSource, VertexFiltrationSpec,
};
use eulerprof_core::{canonicalize, Canonical, Error, EulerCharacteristicProfile, FiltrationVector};

/// Euler characteristic curves and profiles of point clouds and images.
#[derive(Parser, Debug)]
#[command(name = "eulerprof", version)]
struct Cli {
    /// File of `key=value` lines used as defaults for the subcommand's flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Contributions of the Vietoris-Rips complex of a point cloud CSV.
    Vr(VrArgs),
    /// Contributions of the cubical complex of an image.
    Cubical(CubicalArgs),
    /// L1 distance between two contribution files.
    Distance(DistanceArgs),
    /// Pairwise distances between every contribution CSV in a directory.
    Distmatrix(DistmatrixArgs),
    /// Samples a curve or profile on a regular grid.
    Vectorize(VectorizeArgs),
    /// Euler characteristic at one filtration point.
    Evaluate(EvaluateArgs),
    /// Breakpoints `(t, EC)` of a curve.
    Plotdata(PlotdataArgs),
}

#[derive(Args, Debug)]
struct Workers {
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, env = "EULERPROF_WORKERS")]
    workers: Option<usize>,
}

impl Workers {
    fn get(&self) -> usize {
        self.workers.unwrap_or_else(|| {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reorder {
    Ascending,
    None,
}

#[derive(Args, Debug)]
struct VrArgs {
    #[arg(long)]
    input: PathBuf,
    /// Maximum edge length; edges of length <= tmax are kept.
    #[arg(long)]
    tmax: f64,
    #[command(flatten)]
    workers: Workers,
    #[arg(long, value_enum, default_value = "none")]
    reorder: Reorder,
    /// Adds a second axis: mean distance to the K nearest neighbours.
    #[arg(long, value_name = "K")]
    codensity: Option<usize>,
    /// Write one row per simplex instead of the aggregated list.
    #[arg(long)]
    raw: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CubicalArgs {
    #[arg(long)]
    input: PathBuf,
    /// Input format; guessed from the extension when absent.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    raw: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Binary,
    Pgm,
    Csv,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Upper integration limit for curves.
    #[arg(long, conflicts_with = "trunc")]
    upper: Option<f64>,
    /// Truncation point `t1,...,tn` for profiles.
    #[arg(long)]
    trunc: Option<String>,
}

#[derive(Args, Debug)]
struct DistmatrixArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, conflicts_with = "trunc")]
    upper: Option<f64>,
    #[arg(long)]
    trunc: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VectorizeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Samples per axis, `N` or `N1,...,Nn`.
    #[arg(long)]
    samples: String,
    /// Largest sample per axis, `F` or `F1,...,Fn`.
    #[arg(long)]
    fmax: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long)]
    input: PathBuf,
    /// Filtration point, `t` or `t1,...,tn`.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Args, Debug)]
struct PlotdataArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let argv = match apply_config(argv) {
        Ok(a) => a,
        Err(e) => return fail(&e, 2),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return fail(first.trim_start_matches("error: "), 2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e.to_string(), 1),
    }
}

fn fail(message: &str, code: u8) -> ExitCode {
    eprintln!("error: {}", message.replace('\n', " "));
    ExitCode::from(code)
}

/// Appends `--key=value` for every config entry whose flag is not already
/// on the command line. `true` becomes a bare flag and `false` is skipped.
fn apply_config(mut argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_owned());
        } else if a == "--config" {
            path = argv.get(i + 1).cloned();
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let mut extra = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config {path}:{}: expected key=value", n + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let flag = format!("--{key}");
        let given = argv
            .iter()
            .any(|a| a == &flag || a.starts_with(&format!("{flag}=")));
        if given || value == "false" {
            continue;
        }
        if value == "true" {
            extra.push(flag);
        } else {
            extra.push(format!("{flag}={value}"));
        }
    }
    argv.extend(extra);
    Ok(argv)
}

fn run(command: Command) -> eulerprof_core::Result<()> {
    match command {
        Command::Vr(a) => vr(a),
        Command::Cubical(a) => cubical(a),
        Command::Distance(a) => distance(a),
        Command::Distmatrix(a) => distmatrix(a),
        Command::Vectorize(a) => vectorize(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Plotdata(a) => plotdata(a),
    }
}

fn output(path: &Option<PathBuf>) -> eulerprof_core::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(|e| io_error(p, e))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::Io {
        path: path.to_owned(),
        source: e,
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> eulerprof_core::Result<Vec<T>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("invalid {what} {s:?}")))
        })
        .collect()
}

fn parse_point(text: &str) -> eulerprof_core::Result<FiltrationVector> {
    FiltrationVector::new(parse_list::<f64>(text, "coordinate")?)
}

fn vr(a: VrArgs) -> eulerprof_core::Result<()> {
    let mut cloud = read_point_cloud_path(&a.input)?;
    if let Reorder::Ascending = a.reorder {
        cloud = reorder_by_degree(&cloud, a.tmax);
    }
    let workers = a.workers.get();
    let spec = match a.codensity {
        Some(k) => Some(VertexFiltrationSpec::new().with_axis(AxisSource::Vertex(codensity(&cloud, k)?))),
        None => None,
    };
    let mut out = output(&a.output)?;
    if a.raw {
        let raw = compute_contributions_vr(&cloud, a.tmax, spec.as_ref(), workers)?;
        return write_contributions(&mut out, &raw);
    }
    let canonical = match spec {
        Some(spec) => Canonical::Profile(compute_profile_vr(&cloud, a.tmax, &spec, workers)?),
        None => Canonical::Curve(compute_curve_vr(&cloud, a.tmax, workers)?),
    };
    write_canonical(&mut out, &canonical)
}

fn cubical(a: CubicalArgs) -> eulerprof_core::Result<()> {
    let format = match a.format {
        Some(Format::Binary) => ImageFormat::Binary,
        Some(Format::Pgm) => ImageFormat::Pgm,
        Some(Format::Csv) => ImageFormat::Csv,
        None => ImageFormat::from_path(&a.input),
    };
    let raw = if format == ImageFormat::Binary {
        let file = File::open(&a.input).map_err(|e| io_error(&a.input, e))?;
        cubical_from_binary(BufReader::new(file), &a.input.display().to_string(), !a.raw)?
    } else {
        compute_contributions_cubical(&read_image_path_as(&a.input, format)?)?
    };
    let mut out = output(&a.output)?;
    if a.raw {
        write_contributions(&mut out, &raw)
    } else {
        write_canonical(&mut out, &canonicalize(raw)?)
    }
}

fn read_image_path_as(path: &Path, format: ImageFormat) -> eulerprof_core::Result<eulerprof_core::cubical::Image> {
    use eulerprof_core::io::{read_image_csv, read_pgm};
    if format == ImageFormat::from_path(path) {
        return read_image_path(path);
    }
    let file = BufReader::new(File::open(path).map_err(|e| io_error(path, e))?);
    let source = path.display().to_string();
    match format {
        ImageFormat::Pgm => read_pgm(file, &source),
        ImageFormat::Csv => read_image_csv(file, &source),
        ImageFormat::Binary => eulerprof_core::io::read_image_binary(file, &source),
    }
}

fn load(path: &Path) -> eulerprof_core::Result<Canonical> {
    canonicalize(read_contributions_path(path)?)
}

fn as_profile(c: Canonical) -> eulerprof_core::Result<EulerCharacteristicProfile> {
    match c {
        Canonical::Profile(p) => Ok(p),
        Canonical::Curve(curve) => {
            EulerCharacteristicProfile::from_contributions(1, curve.contributions().collect())
        }
    }
}

fn pair_distance(
    a: Canonical,
    b: Canonical,
    upper: Option<f64>,
    trunc: Option<&FiltrationVector>,
) -> eulerprof_core::Result<f64> {
    match (a, b, trunc) {
        (Canonical::Curve(a), Canonical::Curve(b), None) => distance_ecc(&a, &b, upper),
        (a, b, Some(t)) => distance_ecp(&as_profile(a)?, &as_profile(b)?, t),
        (a, b, None) => {
            let (pa, pb) = (as_profile(a)?, as_profile(b)?);
            if pa.dim() != pb.dim() {
                return Err(Error::DimensionMismatch {
                    expected: pa.dim(),
                    found: pb.dim(),
                });
            }
            Err(Error::InvalidParameter(
                "profiles with more than one parameter need --trunc".into(),
            ))
        }
    }
}

fn distance(a: DistanceArgs) -> eulerprof_core::Result<()> {
    let trunc = a.trunc.as_deref().map(parse_point).transpose()?;
    let d = pair_distance(load(&a.a)?, load(&a.b)?, a.upper, trunc.as_ref())?;
    println!("{}", format_real(d));
    Ok(())
}

fn distmatrix(a: DistmatrixArgs) -> eulerprof_core::Result<()> {
    let trunc = a.trunc.as_deref().map(parse_point).transpose()?;
    let mut files: Vec<PathBuf> = std::fs::read_dir(&a.dir)
        .map_err(|e| io_error(&a.dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("csv"))
        .collect();
    files.sort();
    let loaded = files.iter().map(|p| load(p)).collect::<eulerprof_core::Result<Vec<_>>>()?;
    let names: Vec<String> = files
        .iter()
        .map(|p| p.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned()))
        .collect();

    let n = files.len();
    let mut matrix = vec![0.0f64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = pair_distance(loaded[i].clone(), loaded[j].clone(), a.upper, trunc.as_ref())?;
            matrix[i * n + j] = d;
            matrix[j * n + i] = d;
        }
    }
    let mut out = output(&a.output)?;
    let io = |e| io_error(Path::new("<output>"), e);
    writeln!(out, "file,{}", names.join(",")).map_err(io)?;
    for i in 0..n {
        let row: Vec<String> = matrix[i * n..(i + 1) * n].iter().map(|&d| format_real(d)).collect();
        writeln!(out, "{},{}", names[i], row.join(",")).map_err(io)?;
    }
    out.flush().map_err(io)
}

fn vectorize(a: VectorizeArgs) -> eulerprof_core::Result<()> {
    let samples: Vec<usize> = parse_list(&a.samples, "sample count")?;
    let fmax: Vec<f64> = parse_list(&a.fmax, "bound")?;
    let values = match load(&a.input)? {
        Canonical::Curve(c) if samples.len() == 1 && fmax.len() == 1 => {
            vectorize_ecc(&c, samples[0], fmax[0])?
        }
        other => vectorize_ecp(&as_profile(other)?, &samples, &fmax)?.into_flat(),
    };
    let mut out = output(&a.output)?;
    let line: Vec<String> = values.iter().map(i64::to_string).collect();
    writeln!(out, "{}", line.join(",")).map_err(|e| io_error(Path::new("<output>"), e))
}

fn evaluate(a: EvaluateArgs) -> eulerprof_core::Result<()> {
    let at = parse_point(&a.at)?;
    let value = match load(&a.input)? {
        Canonical::Curve(c) if at.dim() == 1 => c.euler_characteristic_at(at.coords()[0]),
        other => as_profile(other)?.euler_characteristic_at(&at)?,
    };
    println!("{value}");
    Ok(())
}

fn plotdata(a: PlotdataArgs) -> eulerprof_core::Result<()> {
    let curve = match load(&a.input)? {
        Canonical::Curve(c) => c,
        Canonical::Profile(p) => {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: p.dim(),
            })
        }
    };
    let mut out = output(&a.output)?;
    let io = |e| io_error(Path::new("<output>"), e);
    writeln!(out, "t,ec").map_err(io)?;
    for (t, ec) in curve.steps() {
        writeln!(out, "{},{ec}", format_real(t)).map_err(io)?;
    }
    out.flush().map_err(io)
}
