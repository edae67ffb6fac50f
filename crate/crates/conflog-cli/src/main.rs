//! `conflog` command line: mine constraint findings from a source tree or
//! tune the similarity threshold against labeled pairs.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use conflog_core::{
    load_labels, run, tune_threshold, ErrorLexicon, OptionLexicon, ToolConfig, TuneResult,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_DEGRADED: u8 = 2;

#[derive(Parser)]
#[command(
    name = "conflog",
    version,
    about = "Mines configuration constraints from log messages in C/C++ sources"
)]
struct Cli {
    /// More diagnostics on stderr (-v info, -vv debug, -vvv trace)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a source tree and report the constraints its messages describe
    Mine(MineArgs),
    /// Sweep the similarity threshold over labeled option/variable pairs
    Tune(TuneArgs),
}

#[derive(Args)]
struct MineArgs {
    /// Root of the source tree to scan
    #[arg(long, value_name = "DIR")]
    src: PathBuf,
    /// Configuration option names, one per line
    #[arg(long, value_name = "FILE")]
    options: PathBuf,
    /// Similarity threshold in [0, 1]
    #[arg(long, value_name = "NUM")]
    threshold: Option<f64>,
    /// Error-status words, one per line; replaces the bundled list
    #[arg(long, value_name = "FILE")]
    error_lexicon: Option<PathBuf>,
    /// Container-interface getter names, one per line
    #[arg(long, value_name = "FILE")]
    getters: Option<PathBuf>,
    /// Extra log call names, one per line
    #[arg(long = "log-fns", value_name = "FILE")]
    log_fns: Option<PathBuf>,
    /// TOML file applied before the flags above
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TuneArgs {
    /// Labeled pairs: option, variable, 0/1, tab-separated
    #[arg(long, value_name = "FILE")]
    labels: PathBuf,
    /// Configuration option names, one per line
    #[arg(long, value_name = "FILE")]
    options: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    init_logging(cli.verbose);
    let result = match cli.command {
        Command::Mine(args) => mine(args),
        Command::Tune(args) => tune(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("conflog: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    let mut builder = env_logger::Builder::new();
    builder.filter_level(level);
    builder.parse_default_env();
    let _ = builder.try_init();
}

fn mine(args: MineArgs) -> Result<u8, String> {
    let mut config = ToolConfig::default();
    if let Some(path) = &args.config {
        let text =
            fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
        config.merge_toml(&text).map_err(|e| e.to_string())?;
    }
    if let Some(threshold) = args.threshold {
        config.threshold = threshold;
    }
    if let Some(path) = &args.error_lexicon {
        config.error_lexicon = ErrorLexicon::from_file(path)
            .map_err(|e| format!("error lexicon {}: {e}", path.display()))?;
        config.error_lexicon_source = path.display().to_string();
    }
    if let Some(path) = &args.getters {
        config.getter_functions = read_name_list(path, "getters")?;
    }
    if let Some(path) = &args.log_fns {
        config.log_functions = read_name_list(path, "log functions")?;
    }

    let outcome = run(&args.src, &args.options, &config).map_err(|e| e.to_string())?;
    let rendered = match args.format {
        Format::Json => outcome.report.to_json(),
        Format::Tsv => outcome.report.to_tsv(),
        Format::Text => outcome.report.to_text(),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, rendered).map_err(|e| format!("write {}: {e}", path.display()))?
        }
        None => print!("{rendered}"),
    }
    if outcome.degraded {
        log::warn!("more than half of the discovered files failed to parse");
        return Ok(EXIT_DEGRADED);
    }
    Ok(EXIT_OK)
}

fn tune(args: TuneArgs) -> Result<u8, String> {
    let pairs = load_labels(&args.labels).map_err(|e| e.to_string())?;
    let lexicon = OptionLexicon::from_file(&args.options).map_err(|e| e.to_string())?;
    let result = tune_threshold(&pairs, &lexicon).map_err(|e| e.to_string())?;
    print!("{}", render_curve(&result));
    Ok(EXIT_OK)
}

fn render_curve(result: &TuneResult) -> String {
    let mut out = String::from("#threshold\tprecision\trecall\tf1\n");
    for point in &result.curve {
        out.push_str(&format!(
            "{:.2}\t{:.4}\t{:.4}\t{:.4}\n",
            point.threshold, point.precision, point.recall, point.f1
        ));
    }
    out.push_str(&format!(
        "# best\t{:.2}\tf1\t{:.4}\n",
        result.best_threshold, result.best_f1
    ));
    out
}

fn read_name_list(path: &PathBuf, what: &str) -> Result<BTreeSet<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{what} {}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::to_string)
        .collect())
}
