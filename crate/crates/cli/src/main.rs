mod parse;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hllab_core::multiplier::{space_norm, Resolution, SpaceSpec};
use hllab_core::suite::thresholds::parse_key_values;
use hllab_core::suite::{self, default_battery, run_check, RunOptions, Verdict, VerificationReport};
use hllab_core::Error;

use parse::{parse_degrees, parse_function, parse_real, parse_space};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOLUTION: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hllab",
    version,
    about = "Norms, multipliers and theorem checks for Hardy-Lorentz and mixed-norm spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quasinorm of a function in a space.
    Norm(NormArgs),
    /// Run one registered check and write its report.
    Verify(VerifyArgs),
    /// Run the full battery and write every report plus summary.json.
    Suite(SuiteArgs),
}

#[derive(Args, Clone, Default)]
struct ResolutionArgs {
    /// Samples per circle (power of two, at least degree + 1).
    #[arg(long)]
    m: Option<usize>,
    /// Oversampling factor used when --m is absent.
    #[arg(long)]
    oversample: Option<usize>,
    /// Radial quadrature nodes.
    #[arg(long)]
    k: Option<usize>,
    /// Radial grading exponent.
    #[arg(long)]
    grade: Option<f64>,
}

#[derive(Args)]
struct NormArgs {
    /// monomial:n | cauchy:γ:N | dilated:γ:N | random:deg:seed | lacunary:N | file:path
    #[arg(long = "fn")]
    function: String,
    /// hl:p:q | berg:p:q:α[:β] | blocked:p:q:α | lp:s[:α] | ces:s | bloch | littlebloch | bmoa | lip:α:s | zyg:s | hsob:s:β | dirichlet:s
    #[arg(long)]
    space: String,
    #[command(flatten)]
    resolution: ResolutionArgs,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Control {
    Normal,
    Inverted,
}

#[derive(Args, Clone, Default)]
struct RunArgs {
    /// Comma-separated degree sweep.
    #[arg(long)]
    degrees: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Flat key = value file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    resolution: ResolutionArgs,
}

#[derive(Args)]
struct VerifyArgs {
    check_id: String,
    #[arg(long, value_parser = parse_real)]
    p0: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    p: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    s: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    q: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    t: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    alpha: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    beta: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    gamma: Option<f64>,
    /// Run the fail-by-construction controls as claims.
    #[arg(long, value_enum)]
    control: Option<Control>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    out_dir: PathBuf,
    #[command(flatten)]
    run: RunArgs,
}

/// CLI failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Aliasing { .. } | Error::NotPowerOfTwo(_) | Error::BelowResolution { .. } => EXIT_RESOLUTION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Effective settings: config file values overlaid by flags.
struct Settings {
    values: BTreeMap<String, String>,
}

const CHECK_PARAMS: [&str; 8] = ["p0", "p", "s", "q", "t", "alpha", "beta", "gamma"];
const KNOWN_KEYS: [&str; 16] = [
    "seed",
    "degrees",
    "m",
    "oversample",
    "k",
    "grade",
    "control",
    "format",
    "p0",
    "p",
    "s",
    "q",
    "t",
    "alpha",
    "beta",
    "gamma",
];

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let values = match path {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| usage(format!("cannot read config {}: {e}", p.display())))?;
                parse_key_values(&text)?
            }
            None => BTreeMap::new(),
        };
        if let Some(k) = values.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(usage(format!("unknown config key {k}")));
        }
        Ok(Self { values })
    }

    fn set(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    fn overlay_run(&mut self, run: &RunArgs) {
        self.set("degrees", run.degrees.clone());
        self.set("seed", run.seed.map(|s| s.to_string()));
        self.overlay_resolution(&run.resolution);
    }

    fn overlay_resolution(&mut self, r: &ResolutionArgs) {
        self.set("m", r.m.map(|v| v.to_string()));
        self.set("oversample", r.oversample.map(|v| v.to_string()));
        self.set("k", r.k.map(|v| v.to_string()));
        self.set("grade", r.grade.map(|v| v.to_string()));
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        self.values
            .get(key)
            .map(|v| v.parse::<T>().map_err(|_| usage(format!("invalid value for {key}: {v}"))))
            .transpose()
    }

    fn resolution(&self) -> Result<Resolution, Failure> {
        let mut r = Resolution::default();
        if let Some(m) = self.values.get("m").filter(|v| v.as_str() != "auto") {
            r.m = Some(m.parse().map_err(|_| usage(format!("invalid value for m: {m}")))?);
        }
        if let Some(o) = self.get("oversample")? {
            r.oversample = o;
        }
        if let Some(k) = self.get("k")? {
            r.k = k;
        }
        if let Some(g) = self.get::<f64>("grade")? {
            r.grade = g;
        }
        Ok(r)
    }

    fn run_options(&self) -> Result<RunOptions, Failure> {
        let degrees = self.values.get("degrees").map(|d| parse_degrees(d)).transpose()?;
        let control = match self.values.get("control").map(String::as_str) {
            None | Some("normal") => false,
            Some("inverted") => true,
            Some(other) => return Err(usage(format!("invalid control mode {other}"))),
        };
        Ok(RunOptions {
            degrees,
            seed: self.get("seed")?.unwrap_or(suite::DEFAULT_SEED),
            resolution: self.resolution()?,
            control_inverted: control,
            ..RunOptions::default()
        })
    }

    fn check_params(&self) -> Result<BTreeMap<String, f64>, Failure> {
        let mut out = BTreeMap::new();
        for key in CHECK_PARAMS {
            if let Some(v) = self.values.get(key) {
                out.insert(key.to_string(), parse_real(v).map_err(usage)?);
            }
        }
        Ok(out)
    }
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure {
        code: EXIT_USAGE,
        message: format!("cannot write {}: {e}", path.display()),
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(contents.as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
    }
    fs::rename(&tmp, path).map_err(io)
}

fn format_value(x: f64) -> String {
    if x == 0.0 || (1e-4..1e12).contains(&x.abs()) {
        format!("{x:.12}")
    } else {
        format!("{x:.12e}")
    }
}

fn cmd_norm(args: NormArgs) -> Result<u8, Failure> {
    let f = parse_function(&args.function)?;
    let family = parse_space(&args.space)?;
    let mut settings = Settings { values: BTreeMap::new() };
    settings.overlay_resolution(&args.resolution);
    let spec = SpaceSpec::new(family)?.with_resolution(settings.resolution()?);
    println!("{}", format_value(space_norm(&f, &spec)?));
    Ok(EXIT_PASS)
}

fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let mut settings = Settings::load(args.run.config.as_deref())?;
    settings.overlay_run(&args.run);
    let flags = [args.p0, args.p, args.s, args.q, args.t, args.alpha, args.beta, args.gamma];
    for (key, value) in CHECK_PARAMS.iter().zip(flags) {
        settings.set(key, value.map(|v| v.to_string()));
    }
    settings.set(
        "control",
        args.control.map(|c| {
            if c == Control::Inverted {
                "inverted".into()
            } else {
                "normal".into()
            }
        }),
    );
    settings.set(
        "format",
        args.format.map(|f| if f == Format::Csv { "csv".into() } else { "json".into() }),
    );
    let format = match settings.values.get("format").map(String::as_str) {
        None | Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some(other) => return Err(usage(format!("invalid format {other}"))),
    };

    suite::lookup(&args.check_id)?;
    let report = run_check(&args.check_id, &settings.check_params()?, &settings.run_options()?)?;
    let text = render(&report, format);
    match &args.out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    eprintln!("{}: {}", report.check_id, report.verdict);
    Ok(verdict_code(report.verdict))
}

fn cmd_suite(args: SuiteArgs) -> Result<u8, Failure> {
    let mut settings = Settings::load(args.run.config.as_deref())?;
    settings.overlay_run(&args.run);
    let options = settings.run_options()?;
    let mut summary: BTreeMap<String, String> = BTreeMap::new();
    let mut any_fail = false;
    let mut any_inconclusive = false;
    for inst in default_battery() {
        match run_check(inst.check_id, &inst.params, &options) {
            Ok(report) => {
                write_atomic(&args.out_dir.join(format!("{}.json", inst.name)), &render(&report, Format::Json))?;
                write_atomic(&args.out_dir.join(format!("{}.csv", inst.name)), &render(&report, Format::Csv))?;
                any_fail |= report.verdict == Verdict::Fail;
                any_inconclusive |= report.verdict == Verdict::Inconclusive;
                eprintln!("{}: {}", inst.name, report.verdict);
                summary.insert(inst.name, report.verdict.to_string());
            }
            Err(e) => {
                eprintln!("{}: error: {e}", inst.name);
                any_fail = true;
                summary.insert(inst.name, Verdict::Fail.to_string());
            }
        }
    }
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    write_atomic(&args.out_dir.join("summary.json"), &text)?;
    Ok(if any_fail {
        EXIT_FAIL
    } else if any_inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_PASS
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("HLLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: cannot cap threads: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match cli.command {
        Command::Norm(a) => cmd_norm(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Suite(a) => cmd_suite(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
