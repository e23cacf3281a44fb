use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use posinfer::corpus::parse_labels;
use posinfer::pattern::{to_dfa, PatternExpr};
use posinfer::pipeline::{
    decompose_corpus, generate, ncd_matrix, purity, run_ncd_method, run_tandem_method, ClusterReport, CorpusSpec, Cut,
    NcdOptions,
};
use posinfer::tandem::DEFAULT_MAX_DEPTH;
use posinfer::{Alphabet, Corpus, Error, Linkage};

const EXIT_FAILURE: u8 = 1;
const EXIT_ARGUMENT: u8 = 2;
const EXIT_INPUT_FORMAT: u8 = 3;

/// Cluster strings and infer a simple pattern language for each cluster.
#[derive(Parser)]
#[command(name = "posinfer", version)]
struct Cli {
    /// Symbols of the alphabet, in order.
    #[arg(long, global = true, default_value = "abcdefghijklmnopqrstuvwxyz")]
    alphabet: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum CompressorKind {
    /// Incremental dictionary coder.
    #[default]
    Dict,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LinkageArg {
    Single,
    Complete,
    Average,
}

impl From<LinkageArg> for Linkage {
    fn from(l: LinkageArg) -> Linkage {
        match l {
            LinkageArg::Single => Linkage::Single,
            LinkageArg::Complete => Linkage::Complete,
            LinkageArg::Average => Linkage::Average,
        }
    }
}

#[derive(Args)]
struct CompressionArgs {
    #[arg(long, value_enum, default_value_t)]
    compressor: CompressorKind,
    /// Rename symbols by order of first occurrence before compressing.
    #[arg(long)]
    relabel: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CutArgs {
    /// Keep merges strictly below this height.
    #[arg(long)]
    threshold: Option<f64>,
    /// Number of clusters.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a labeled corpus from a JSON spec.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Pairwise NCD matrix; JSON when the output ends in `.json`, CSV otherwise.
    Matrix {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        compression: CompressionArgs,
    },
    /// Cluster by compression distance.
    ClusterNcd {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "average")]
        linkage: LinkageArg,
        #[command(flatten)]
        cut: CutArgs,
        #[arg(long)]
        report: PathBuf,
        /// Newick file for the dendrogram.
        #[arg(long)]
        dendrogram: Option<PathBuf>,
        /// Directory receiving one Graphviz file per cluster pattern.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        #[command(flatten)]
        compression: CompressionArgs,
    },
    /// Tandem-repeat decomposition of every string, one pattern per line.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Cluster by tandem-repeat structure.
    ClusterTandem {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Directory receiving one Graphviz file per cluster pattern.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Print the purity of a report against reference labels.
    Evaluate {
        #[arg(long)]
        report: PathBuf,
        /// One label per line, or a labeled corpus.
        #[arg(long)]
        labels: PathBuf,
    },
}

fn read(path: &Path) -> posinfer::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> posinfer::Result<()> {
    fs::write(path, contents).map_err(Error::from)
}

fn load_corpus(path: &Path, alphabet: &Alphabet) -> posinfer::Result<Corpus> {
    Corpus::parse(&read(path)?, alphabet)
}

fn finish_report(mut report: ClusterReport, corpus: &Corpus) -> posinfer::Result<ClusterReport> {
    if let Some(labels) = &corpus.labels {
        report.purity = Some(purity(&report, labels)?);
    }
    Ok(report)
}

fn write_dots(dir: &Path, report: &ClusterReport, alphabet: &Alphabet) -> posinfer::Result<()> {
    fs::create_dir_all(dir)?;
    for (i, c) in report.clusters.iter().enumerate() {
        let p = PatternExpr::parse(&c.pattern, alphabet)?;
        write(
            &dir.join(format!("cluster-{i}.dot")),
            &to_dfa(&p, alphabet.len()).to_dot(alphabet),
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> posinfer::Result<()> {
    let alphabet = Alphabet::new(cli.alphabet.chars()).map_err(|e| Error::Argument(e.to_string()))?;
    match cli.command {
        Command::Generate { spec, out, seed } => {
            let mut spec = CorpusSpec::from_json(&read(&spec)?, &alphabet)?;
            spec.seed = seed;
            let corpus = generate(&spec)?;
            write(&out, &corpus.to_text(&spec.alphabet))
        }
        Command::Matrix {
            input,
            out,
            compression,
        } => {
            let CompressorKind::Dict = compression.compressor;
            let corpus = load_corpus(&input, &alphabet)?;
            let m = ncd_matrix(&corpus.strings, &alphabet, compression.relabel)?;
            let is_json = out.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
            write(&out, &if is_json { m.to_json() } else { m.to_csv() })
        }
        Command::ClusterNcd {
            input,
            linkage,
            cut,
            report,
            dendrogram,
            dot_dir,
            compression,
        } => {
            let CompressorKind::Dict = compression.compressor;
            let cut = match (cut.threshold, cut.k) {
                (Some(t), None) => Cut::Threshold(t),
                (None, Some(k)) => Cut::K(k),
                _ => unreachable!("clap enforces exactly one cut"),
            };
            let corpus = load_corpus(&input, &alphabet)?;
            let opts = NcdOptions {
                linkage: linkage.into(),
                cut,
                relabel: compression.relabel,
            };
            let outcome = run_ncd_method(&corpus.strings, &alphabet, &opts)?;
            let mut r = finish_report(outcome.report, &corpus)?;
            if let Some(path) = &dendrogram {
                write(path, &outcome.dendrogram.to_newick())?;
                if let Some(d) = r.dendrogram.as_mut() {
                    d.newick_path = Some(path.display().to_string());
                }
            }
            if let Some(dir) = &dot_dir {
                write_dots(dir, &r, &alphabet)?;
            }
            write(&report, &r.to_json())
        }
        Command::Decompose { input, out, max_depth } => {
            let corpus = load_corpus(&input, &alphabet)?;
            let text: String = decompose_corpus(&corpus.strings, max_depth)
                .iter()
                .map(|p| p.to_text(&alphabet) + "\n")
                .collect();
            write(&out, &text)
        }
        Command::ClusterTandem {
            input,
            report,
            max_depth,
            dot_dir,
        } => {
            let corpus = load_corpus(&input, &alphabet)?;
            let r = finish_report(run_tandem_method(&corpus.strings, &alphabet, max_depth)?, &corpus)?;
            if let Some(dir) = &dot_dir {
                write_dots(dir, &r, &alphabet)?;
            }
            write(&report, &r.to_json())
        }
        Command::Evaluate { report, labels } => {
            let r = ClusterReport::from_json(&read(&report)?)?;
            let p = purity(&r, &parse_labels(&read(&labels)?))?;
            println!("purity={p:?}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ARGUMENT } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Argument(_) | Error::InvalidAlphabet(_) | Error::Capacity { .. } => EXIT_ARGUMENT,
                e if e.is_input_format() => EXIT_INPUT_FORMAT,
                _ => EXIT_FAILURE,
            })
        }
    }
}
