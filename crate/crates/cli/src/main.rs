mod report;

use std::io::{Read, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use wordstat::asymptotics::{classify, ClassifierConfig};
use wordstat::reproduce::{self, Status};
use wordstat::lambda::lambda_profile;
use wordstat::sigma::{sigma_profile, sigma_profile_direct, sigma_profile_recurrence};
use wordstat::{
    lambda, lambda_naive, sigma, sigma_naive, CheckpointScheme, GeneratorKind,
    GeneratorSpec, Ratio, Word,
};

use report::Series;

const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_ACCEPTANCE: u8 = 4;
const EXIT_IO: u8 = 1;

#[derive(Parser)]
#[command(name = "wordstat", version, about = "Factor statistics and eventual-periodicity tests for binary words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated word to a file.
    Generate(GenerateArgs),
    /// Sigma, lambda and their normalizations for one word.
    Analyze(AnalyzeArgs),
    /// Sigma or lambda over a set of prefix lengths.
    Profile(ProfileArgs),
    /// Decide whether a prefix looks eventually periodic.
    Classify(ClassifyArgs),
    /// Time the fast and naive algorithms.
    Bench(BenchArgs),
    /// Run the acceptance criteria.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Periodic,
    Sparse,
    Random,
    Fibonacci,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Emit {
    Svg,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Functional {
    #[default]
    Sigma,
    Lambda,
}

#[derive(Args, Clone, Debug)]
struct GeneratorArgs {
    /// Word family to generate.
    #[arg(long)]
    kind: Option<Kind>,
    /// Period word for --kind periodic.
    #[arg(long, default_value = "")]
    eta: String,
    /// Preperiod word for --kind periodic.
    #[arg(long, default_value = "")]
    zeta: String,
    /// First gap for --kind sparse.
    #[arg(long, default_value_t = 1)]
    k1: u64,
    /// Gap growth ratio for --kind sparse ("2", "5/2", "1.5").
    #[arg(long, default_value = "2")]
    ratio: Ratio,
    /// Seed for --kind random.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of symbols.
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Args, Clone, Debug)]
struct InputArgs {
    /// Word file of ASCII '0'/'1' ("-" for stdin); whitespace is ignored.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    generator: GeneratorArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    /// Destination file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// dense | geometric:<ratio> | list:<n1,n2,...>
    #[arg(long, default_value = "geometric")]
    checkpoints: CheckpointScheme,
    #[arg(long, value_enum, default_value = "sigma")]
    functional: Functional,
    /// Also write a chart of the normalized series.
    #[arg(long, value_enum)]
    emit: Option<Emit>,
    /// Chart destination; defaults to the output path with an .svg extension.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = ClassifierConfig::default().eps_osc)]
    eps_osc: f64,
    #[arg(long, default_value_t = ClassifierConfig::default().theta_pos)]
    theta_pos: f64,
    #[arg(long, default_value_t = ClassifierConfig::default().k_max)]
    k_max: usize,
    #[arg(long, default_value_t = ClassifierConfig::default().min_length)]
    min_length: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated word lengths.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000,1000000")]
    sizes: Vec<usize>,
    /// Naive algorithms are skipped above this length.
    #[arg(long, default_value_t = 10_000)]
    naive_cutoff: usize,
    /// Seed of the random benchmark words.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the table here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Also write machine-readable results here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Run a single criterion by name.
    #[arg(long)]
    only: Option<String>,
    /// Write machine-readable results here.
    #[arg(long)]
    json: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Parse(String),
    Io(String),
    Acceptance,
}

impl From<wordstat::Error> for Failure {
    fn from(e: wordstat::Error) -> Self {
        match e {
            wordstat::Error::Parse { .. } => Failure::Parse(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Everything a run depends on, echoed into JSON output.
#[derive(Serialize, Default)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<GeneratorSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checkpoints: Option<CheckpointScheme>,
    #[serde(skip_serializing_if = "Option::is_none")]
    functional: Option<Functional>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalization: Option<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classifier: Option<ClassifierConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sizes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    naive_cutoff: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    only: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => run_generate(a),
        Command::Analyze(a) => run_analyze(a),
        Command::Profile(a) => run_profile(a),
        Command::Classify(a) => run_classify(a),
        Command::Bench(a) => run_bench(a),
        Command::Reproduce(a) => run_reproduce(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => fail(EXIT_USAGE, &m),
        Err(Failure::Parse(m)) => fail(EXIT_PARSE, &m),
        Err(Failure::Io(m)) => fail(EXIT_IO, &m),
        Err(Failure::Acceptance) => ExitCode::from(EXIT_ACCEPTANCE),
    }
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn generator_spec(g: &GeneratorArgs) -> CliResult<Option<GeneratorSpec>> {
    let Some(kind) = g.kind else { return Ok(None) };
    let length = g
        .length
        .ok_or_else(|| Failure::Usage("--length is required with --kind".into()))?;
    let kind = match kind {
        Kind::Periodic => GeneratorKind::Periodic { eta: g.eta.clone(), zeta: g.zeta.clone() },
        Kind::Sparse => GeneratorKind::Sparse { k1: g.k1, ratio: g.ratio },
        Kind::Random => GeneratorKind::Random { seed: g.seed },
        Kind::Fibonacci => GeneratorKind::Fibonacci,
    };
    Ok(Some(GeneratorSpec { kind, length }))
}

/// Reads the word named by --input, or generates it from the generator flags.
fn load_word(args: &InputArgs, config: &mut RunConfig) -> CliResult<Word> {
    let spec = generator_spec(&args.generator)?;
    match (&args.input, spec) {
        (Some(_), Some(_)) => Err(Failure::Usage("--input and --kind are mutually exclusive".into())),
        (None, None) => Err(Failure::Usage("an input is required: --input <file> or --kind ...".into())),
        (None, Some(spec)) => {
            let w = spec.generate()?;
            config.generator = Some(spec);
            Ok(w)
        }
        (Some(path), None) => {
            config.input = Some(path.display().to_string());
            let bytes = if path == Path::new("-") {
                let mut buf = Vec::new();
                std::io::stdin()
                    .read_to_end(&mut buf)
                    .map_err(|e| Failure::Io(format!("cannot read stdin: {e}")))?;
                buf
            } else {
                std::fs::read(path)
                    .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?
            };
            Word::parse_ascii(&bytes).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
        }
    }
}

fn write_out(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write stdout: {e}"))),
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn path_string(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

fn ratio(value: u128, n: usize, exponent: i32) -> Option<f64> {
    (n > 0).then(|| value as f64 / (n as f64).powi(exponent))
}

fn run_generate(a: GenerateArgs) -> CliResult<()> {
    let spec = generator_spec(&a.generator)?
        .ok_or_else(|| Failure::Usage("generate needs --kind".into()))?;
    let w = spec.generate()?;
    write_out(a.output.as_deref(), &w.to_ascii())?;
    let config = RunConfig {
        command: "generate",
        output: path_string(&a.output),
        generator: Some(spec),
        ..Default::default()
    };
    let meta = json!({
        "length": w.len(),
        "ones": w.bits().iter().filter(|&&b| b == 1).count(),
        "config": config,
    });
    if a.output.is_some() {
        print!("{}", to_json(&meta));
    } else {
        eprint!("{}", to_json(&meta));
    }
    Ok(())
}

fn run_analyze(a: AnalyzeArgs) -> CliResult<()> {
    let mut config = RunConfig {
        command: "analyze",
        output: path_string(&a.output),
        normalization: Some(vec![2, 3]),
        ..Default::default()
    };
    let w = load_word(&a.input, &mut config)?;
    let n = w.len();
    let s = sigma(&w);
    let l = if n == 0 { None } else { Some(lambda(&w)?) };
    let slack = l.map(|l| 48 * s as i128 - l as i128);
    let text = match a.format {
        Format::Json => {
            let mut out = json!({
                "n": n,
                "sigma": s,
                "lambda": l,
                "sigma_over_n2": ratio(s, n, 2),
                "sigma_over_n3": ratio(s, n, 3),
                "lambda_over_n3": l.and_then(|l| ratio(l, n, 3)),
                "lemma1_slack": slack,
            });
            if l.is_none() {
                out["note"] = json!("lambda is undefined for the empty word");
            }
            out["config"] = serde_json::to_value(&config).expect("serializable");
            to_json(&out)
        }
        Format::Csv => {
            let opt = |x: Option<String>| x.unwrap_or_default();
            format!(
                "n,sigma,lambda,sigma_over_n2,sigma_over_n3,lambda_over_n3,lemma1_slack\n{n},{s},{},{},{},{},{}\n",
                opt(l.map(|l| l.to_string())),
                opt(ratio(s, n, 2).map(report::float)),
                opt(ratio(s, n, 3).map(report::float)),
                opt(l.and_then(|l| ratio(l, n, 3)).map(report::float)),
                opt(slack.map(|x| x.to_string())),
            )
        }
    };
    write_out(a.output.as_deref(), &text)
}

fn run_profile(a: ProfileArgs) -> CliResult<()> {
    let mut config = RunConfig {
        command: "profile",
        output: path_string(&a.output),
        checkpoints: Some(a.checkpoints.clone()),
        functional: Some(a.functional),
        normalization: Some(match a.functional {
            Functional::Sigma => vec![2, 3],
            Functional::Lambda => vec![3],
        }),
        ..Default::default()
    };
    let svg_path = match (a.emit, &a.svg, &a.output) {
        (None, _, _) => None,
        (Some(Emit::Svg), Some(p), _) => Some(p.clone()),
        (Some(Emit::Svg), None, Some(out)) => Some(out.with_extension("svg")),
        (Some(Emit::Svg), None, None) => {
            return Err(Failure::Usage("--emit svg needs --svg <file> or --output <file>".into()))
        }
    };
    let w = load_word(&a.input, &mut config)?;
    let checkpoints = a.checkpoints.resolve(w.len())?;
    let xs = |p: &wordstat::Profile| p.checkpoints.iter().map(|&n| n as f64).collect::<Vec<_>>();

    let (text, series) = match a.functional {
        Functional::Sigma => {
            let p = sigma_profile(&w, &checkpoints)?;
            let text = match a.format {
                Format::Csv => report::sigma_csv(&p),
                Format::Json => {
                    let rows: Vec<Value> = p
                        .iter()
                        .map(|(n, v)| {
                            json!({
                                "n": n,
                                "sigma": v,
                                "sigma_over_n2": ratio(v, n, 2),
                                "sigma_over_n3": ratio(v, n, 3),
                            })
                        })
                        .collect();
                    to_json(&json!({ "functional": "sigma", "rows": rows, "config": config }))
                }
            };
            let x = xs(&p);
            let series = vec![
                Series { name: "sigma/n^2", points: x.iter().copied().zip(p.normalized(2)).collect() },
                Series { name: "sigma/n^3", points: x.iter().copied().zip(p.normalized(3)).collect() },
            ];
            (text, series)
        }
        Functional::Lambda => {
            let (p, witnesses) = lambda_profile(&w, &checkpoints)?;
            let text = match a.format {
                Format::Csv => report::lambda_csv(&p, &witnesses),
                Format::Json => {
                    let rows: Vec<Value> = p
                        .iter()
                        .zip(&witnesses)
                        .map(|((n, v), wit)| {
                            json!({
                                "n": n,
                                "lambda": v,
                                "lambda_over_n3": ratio(v, n, 3),
                                "witness_eta_len": wit.eta_length,
                                "witness_exponent": wit.exponent,
                                "witness_pos": wit.position,
                            })
                        })
                        .collect();
                    to_json(&json!({ "functional": "lambda", "rows": rows, "config": config }))
                }
            };
            let series = vec![Series {
                name: "lambda/n^3",
                points: xs(&p).into_iter().zip(p.normalized(3)).collect(),
            }];
            (text, series)
        }
    };
    write_out(a.output.as_deref(), &text)?;
    if let Some(path) = svg_path {
        let title = match a.functional {
            Functional::Sigma => "Normalized sigma profile",
            Functional::Lambda => "Normalized lambda profile",
        };
        write_out(Some(&path), &report::svg_chart(title, "n", &series))?;
    }
    Ok(())
}

fn run_classify(a: ClassifyArgs) -> CliResult<()> {
    let classifier = ClassifierConfig {
        eps_osc: a.eps_osc,
        theta_pos: a.theta_pos,
        k_max: a.k_max,
        min_length: a.min_length,
        ..ClassifierConfig::default()
    };
    let mut config = RunConfig {
        command: "classify",
        output: path_string(&a.output),
        classifier: Some(classifier.clone()),
        ..Default::default()
    };
    let w = load_word(&a.input, &mut config)?;
    if w.len() < classifier.min_length {
        return Err(Failure::Usage(format!(
            "input has {} symbols; the classifier needs at least {} (lower it with --min-length)",
            w.len(),
            classifier.min_length
        )));
    }
    let verdict = classify(&w, &classifier)?;
    let mut out = serde_json::to_value(&verdict).expect("serializable");
    out["run"] = serde_json::to_value(&config).expect("serializable");
    write_out(a.output.as_deref(), &to_json(&out))
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    algorithm: &'static str,
    seconds: Option<f64>,
    skipped: bool,
    note: Option<&'static str>,
}

fn run_bench(a: BenchArgs) -> CliResult<()> {
    if a.sizes.is_empty() || a.sizes.contains(&0) {
        return Err(Failure::Usage("--sizes must list positive lengths".into()));
    }
    let mut sizes = a.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let mut rows = Vec::new();
    for &n in &sizes {
        let w = wordstat::word::make_random(a.seed, n);
        let geometric = CheckpointScheme::Geometric(wordstat::sigma::DEFAULT_GEOMETRIC_RATIO).resolve(n)?;
        let dense: Vec<usize> = (1..=n).collect();
        let naive = n <= a.naive_cutoff;
        let mut time = |algorithm: &'static str, enabled: bool, note: &'static str, f: &dyn Fn()| {
            let seconds = enabled.then(|| {
                let t = Instant::now();
                f();
                t.elapsed().as_secs_f64()
            });
            rows.push(BenchRow { n, algorithm, seconds, skipped: !enabled, note: (!enabled).then_some(note) });
        };
        time("sigma", true, "", &|| {
            std::hint::black_box(sigma(&w));
        });
        time("sigma_naive", naive, "above naive cutoff", &|| {
            std::hint::black_box(sigma_naive(&w));
        });
        time("lambda", true, "", &|| {
            std::hint::black_box(lambda(&w).ok());
        });
        time("lambda_naive", naive, "above naive cutoff", &|| {
            std::hint::black_box(lambda_naive(&w).ok());
        });
        time("sigma_profile_geometric", true, "", &|| {
            std::hint::black_box(sigma_profile_direct(&w, &geometric).ok());
        });
        time("sigma_profile_dense", naive, "above naive cutoff", &|| {
            std::hint::black_box(sigma_profile_recurrence(&w, &dense).ok());
        });
    }
    let config = RunConfig {
        command: "bench",
        output: path_string(&a.output),
        sizes: Some(sizes),
        naive_cutoff: Some(a.naive_cutoff),
        seed: Some(a.seed),
        ..Default::default()
    };
    let json_text = to_json(&json!({ "rows": rows, "config": config }));
    let text = match a.format {
        Format::Json => json_text.clone(),
        Format::Csv => {
            let mut t = format!("{:>9}  {:<24} {:>12}\n", "n", "algorithm", "seconds");
            for r in &rows {
                let cell = r.seconds.map_or("skipped".to_string(), |s| format!("{s:.6}"));
                t.push_str(&format!("{:>9}  {:<24} {:>12}\n", r.n, r.algorithm, cell));
            }
            t
        }
    };
    write_out(a.output.as_deref(), &text)?;
    if let Some(p) = &a.json {
        write_out(Some(p), &json_text)?;
    }
    Ok(())
}

fn run_reproduce(a: ReproduceArgs) -> CliResult<()> {
    if let Some(name) = &a.only {
        let names = reproduce::criterion_names();
        if !names.contains(&name.as_str()) {
            return Err(Failure::Usage(format!(
                "unknown criterion {name:?}; expected one of {}",
                names.join(", ")
            )));
        }
    }
    let results = reproduce::run(a.only.as_deref(), |r| println!("{}", r.line()));
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    println!("{} criteria, {} failed", results.len(), failed);
    if let Some(p) = &a.json {
        let config = RunConfig { command: "reproduce", only: a.only.clone(), ..Default::default() };
        write_out(Some(p), &to_json(&json!({ "results": results, "config": config })))?;
    }
    if failed > 0 {
        Err(Failure::Acceptance)
    } else {
        Ok(())
    }
}
