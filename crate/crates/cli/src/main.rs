//! `disk-area`: areas, verification sweeps and kernel benchmarks.
//!
//! Exit codes: 0 all checks pass, 1 a check fails (or an I/O error),
//! 2 inconclusive results, 64 usage errors.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use disk_area::area::{AreaMethod, Radius};
use disk_area::circle_maps::{BoundaryMap, BoundaryMapJson};
use disk_area::num_complex::Complex64;
use disk_area::report::{self, Format, Summary};
use disk_area::sweep::{self, parse_seed_range, FamilySpec, MapInstance, Suite, SweepConfig};
use disk_area::verify::SchwarzGrid;
use disk_area::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 64;

/// Directory for reports when `--output` is not given.
const OUT_DIR_ENV: &str = "DISK_AREA_OUT_DIR";

#[derive(Parser)]
#[command(name = "disk-area", version, about = "Area of harmonic images of concentric disks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute |f(D_r)| for each family, radius and method.
    Area(AreaArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Time the direct and FFT kernel sums and check they agree.
    Bench(BenchArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// csv or jsonl.
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
    /// Output file; defaults to $DISK_AREA_OUT_DIR/<name>.<ext>, else stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MapFileArgs {
    /// Boundary map in JSON wire form.
    #[arg(long)]
    map_file: Option<PathBuf>,
    /// The map file holds an orientation-reversing map; use f(z̄) instead.
    #[arg(long, requires = "map_file")]
    conjugate: bool,
}

#[derive(Args)]
struct AreaArgs {
    /// Family spec, repeatable (e.g. identity, shear:0.3, random:0..9:0.5).
    #[arg(long = "family", value_parser = parse_family)]
    families: Vec<FamilySpec>,
    #[arg(long = "r", alias = "radii", value_delimiter = ',', required = true)]
    radii: Vec<f64>,
    #[arg(long = "method", value_delimiter = ',', value_parser = parse_method, default_value = "green-spectral")]
    methods: Vec<AreaMethod>,
    /// Sample count M (default: per method and radius).
    #[arg(long)]
    resolution: Option<usize>,
    /// Mollifier widths for random families.
    #[arg(long, value_delimiter = ',')]
    mollify: Vec<f64>,
    #[command(flatten)]
    map_file: MapFileArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// theorem1, equality, proof, convexity, corollary, schwarz or all.
    #[arg(long, value_parser = parse_suite, default_value = "all")]
    suite: Suite,
    /// Shorthand for --suite proof.
    #[arg(long, conflicts_with = "suite")]
    proof_suite: bool,
    /// Families replacing the suite's default corpus.
    #[arg(long = "family", value_parser = parse_family)]
    families: Vec<FamilySpec>,
    /// Seed range of the random corpus, e.g. 0..99.
    #[arg(long, value_parser = parse_seeds)]
    seeds: Option<std::ops::RangeInclusive<u64>>,
    #[arg(long = "radii", alias = "r", value_delimiter = ',')]
    radii: Vec<f64>,
    #[arg(long = "method", value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<AreaMethod>,
    #[arg(long)]
    resolution: Option<usize>,
    /// Mollifier widths replacing the corpus default.
    #[arg(long, value_delimiter = ',')]
    mollify: Vec<f64>,
    /// Tolerance override, `check_name=value`, repeatable.
    #[arg(long = "tol", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
    /// Precomposition point for the Schwarz check, `re[,im]`.
    #[arg(long, value_parser = parse_complex)]
    center_shift: Option<Complex64>,
    /// Schwarz grid as `n_r,n_theta`.
    #[arg(long, value_parser = parse_grid)]
    schwarz_grid: Option<(usize, usize)>,
    #[command(flatten)]
    map_file: MapFileArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long = "m", value_delimiter = ',', default_values_t = vec![256usize, 1024, 4096])]
    sizes: Vec<usize>,
    #[arg(long = "r", default_value_t = 0.6)]
    r: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::from_slug(s).ok_or_else(|| format!("unknown format `{s}` (csv or jsonl)"))
}

fn parse_family(s: &str) -> Result<FamilySpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<AreaMethod, String> {
    AreaMethod::from_slug(s).ok_or_else(|| format!("unknown method `{s}`"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_slug(s).ok_or_else(|| format!("unknown suite `{s}`"))
}

fn parse_seeds(s: &str) -> Result<std::ops::RangeInclusive<u64>, String> {
    parse_seed_range(s).ok_or_else(|| format!("bad seed range `{s}` (use N or A..B)"))
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, v) = s.split_once('=').ok_or("expected check_name=value")?;
    let v: f64 = v.parse().map_err(|_| format!("bad tolerance `{v}`"))?;
    if !(v >= 0.0 && v.is_finite()) {
        return Err(format!("tolerance {v} must be nonnegative"));
    }
    Ok((name.to_string(), v))
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected n_r,n_theta, got `{s}`");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let parse = |x: &str| x.trim().parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(bad);
    Ok((parse(a)?, parse(b)?))
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("bad number `{p}`"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err("expected re or re,im".into()),
    }
}

/// Failures after argument parsing, with their exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn load_map_file(args: &MapFileArgs) -> Result<Option<MapInstance>, Failure> {
    let Some(path) = &args.map_file else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let raw = BoundaryMapJson::from_json(&text).map_err(|e| usage(format!("malformed map file: {e}")))?;
    let omega = Complex64::new(raw.omega_re, raw.omega_im);
    let knots: Vec<(f64, f64)> = raw.knots.iter().map(|&[t, x]| (t, x)).collect();
    let map = if args.conjugate {
        BoundaryMap::conjugate_reversed(&knots, omega, raw.kind)?
    } else {
        BoundaryMap::new(knots, omega, raw.kind)?
    };
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let params = if args.conjugate { "conjugate=true" } else { "" };
    Ok(Some(MapInstance::from_map(format!("file:{name}"), "file", params, map)))
}

/// Writes rows to `--output`, to `$DISK_AREA_OUT_DIR/<stem>.<ext>`, or to stdout.
fn emit(out: &OutputArgs, stem: &str, write: impl FnOnce(Box<dyn Write>) -> disk_area::Result<()>) -> Result<(), Failure> {
    let path = out.output.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| Path::new(&dir).join(format!("{stem}.{}", out.format.extension())))
    });
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(Error::from)?;
            }
            let f = File::create(&p).map_err(Error::from)?;
            write(Box::new(BufWriter::new(f)))?;
        }
        None => write(Box::new(BufWriter::new(io::stdout().lock())))?,
    }
    Ok(())
}

fn cmd_area(a: AreaArgs) -> Result<u8, Failure> {
    let mut cfg = SweepConfig::defaults(Suite::Theorem1, 0..=0);
    cfg.families = a.families;
    cfg.extra_maps = load_map_file(&a.map_file)?.into_iter().collect();
    cfg.radii = a.radii;
    cfg.methods = a.methods;
    cfg.resolution = a.resolution;
    cfg.mollify = a.mollify;
    let rows = sweep::run_area(&cfg)?;
    emit(&a.out, "area", |w| report::write_areas(w, a.out.format, &rows))?;
    Ok(0)
}

fn cmd_verify(v: VerifyArgs) -> Result<u8, Failure> {
    let suite = if v.proof_suite { Suite::Proof } else { v.suite };
    let seeds = v.seeds.clone().unwrap_or(0..=99);
    let extra: Vec<MapInstance> = load_map_file(&v.map_file)?.into_iter().collect();
    let tolerances: BTreeMap<String, f64> = v.tolerances.iter().cloned().collect();
    let mut records = Vec::new();
    for s in suite.expand() {
        let mut cfg = SweepConfig::defaults(s, seeds.clone());
        if !v.families.is_empty() || !extra.is_empty() {
            cfg.families = v.families.clone();
            cfg.extra_maps = extra.clone();
        }
        if !v.radii.is_empty() {
            cfg.radii = v.radii.clone();
        }
        if !v.methods.is_empty() {
            cfg.methods = v.methods.clone();
        }
        if !v.mollify.is_empty() {
            cfg.mollify = v.mollify.clone();
        }
        cfg.resolution = v.resolution;
        cfg.tolerances = tolerances.clone();
        if let Some(a) = v.center_shift {
            cfg.center_shift = a;
        }
        if let Some((n_r, n_theta)) = v.schwarz_grid {
            cfg.schwarz_grid = SchwarzGrid { n_r, n_theta, ..SchwarzGrid::default() };
        }
        let recs = sweep::run_suite(s, &cfg)?;
        eprintln!("{}: {}", s.slug(), Summary::of(&recs));
        records.extend(recs);
    }
    let summary = Summary::of(&records);
    emit(&v.out, &format!("verify-{}", suite.slug()), |w| report::write_verdicts(w, v.out.format, &records))?;
    eprintln!("summary: {summary}");
    Ok(summary.exit_code() as u8)
}

fn cmd_bench(b: BenchArgs) -> Result<u8, Failure> {
    let r = Radius::new(b.r)?;
    if b.sizes.iter().any(|&m| m < 16 || m % 8 != 0) {
        return Err(usage("bench sizes must be multiples of 8 and at least 16"));
    }
    let rows = sweep::bench_kernel(&b.sizes, r, b.seed)?;
    emit(&b.out, "bench", |w| report::write_bench(w, b.out.format, &rows))?;
    let worst = rows.iter().map(|row| row.rel_diff).fold(0.0, f64::max);
    for pair in rows.chunks(2) {
        eprintln!(
            "M = {}: direct {:.3} ms, fft {:.3} ms, rel diff {:.2e}",
            pair[0].m, pair[0].wall_time_ms, pair[1].wall_time_ms, pair[0].rel_diff
        );
    }
    if worst > sweep::BENCH_AGREEMENT {
        eprintln!("kernel paths disagree: {worst:.3e} > {:e}", sweep::BENCH_AGREEMENT);
        return Ok(EXIT_FAIL);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Area(a) => cmd_area(a),
        Command::Verify(v) => cmd_verify(v),
        Command::Bench(b) => cmd_bench(b),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
