//! The `msglex` command line.
//!
//! Exit codes: 0 success, 1 I/O or environment failure, 2 user error (bad
//! flags, invalid corpus, threshold out of range).

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use msglex_core::corpus::compute_stats;
use msglex_core::lexicon::{build_gold, DEFAULT_CONTENT_POS};
use msglex_core::sweep::DEFAULT_FALLOUT_CAP;
use msglex_core::{evaluate, Corpus, FilterConfig, Lexicon, MeasureKind, MeasureSpec, SweepContext, WordKeySource};

use crate::corpus_io::{load_corpus, LoadError};
use crate::parallel::sweep_all_parallel;
use crate::report::{self, ReportError, CSV_HEADER};
use crate::wordlist::{read_stopwords, write_lexicon};

#[derive(Debug, Parser)]
#[command(name = "msglex", version, about = "Extract and evaluate content-word lexicons from message-annotated corpora")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a corpus file.
    Validate {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Print corpus statistics.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        /// Print CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
    },
    /// Write the gold lexicon: content words of annotated sentences.
    Gold {
        #[command(flatten)]
        input: InputArgs,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a lexicon with one measure at one threshold.
    Extract {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        measure: MeasureArgs,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score one (measure, threshold) point against the gold lexicon.
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        measure: MeasureArgs,
    },
    /// Sweep every measure over its threshold range and write reports.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_FALLOUT_CAP)]
        fallout_cap: f64,
        /// Directory for the CSV and SVG reports.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WordKeyArg {
    Lemma,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Cf,
    Df,
    Tfidf,
    Idf,
}

impl From<MeasureArg> for MeasureKind {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Cf => MeasureKind::CollectionFreq,
            MeasureArg::Df => MeasureKind::DocumentFreq,
            MeasureArg::Tfidf => MeasureKind::TfIdf,
            MeasureArg::Idf => MeasureKind::InterdocFreq,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Stopword list, one word per line.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Content POS tag; repeat for several.
    #[arg(long = "pos", default_values_t = DEFAULT_CONTENT_POS.map(String::from))]
    pub pos: Vec<String>,
    #[arg(long, value_enum, default_value_t = WordKeyArg::Lemma)]
    pub word_key: WordKeyArg,
    #[arg(long)]
    pub no_case_fold: bool,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    /// Percent (1-100) for cf/df/tfidf, minimum document count for idf.
    #[arg(long)]
    pub threshold: u32,
}

/// Fully resolved settings shared by the corpus-reading commands.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub corpus_path: PathBuf,
    pub stopwords_path: Option<PathBuf>,
    pub filter: FilterConfig,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    User(String),
    #[error("{message}\n\n{usage}")]
    Usage { message: String, usage: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::User(_) | CliError::Usage { .. } => 2,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::User(e.to_string()),
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        CliError::Io(e.to_string())
    }
}

fn io_err(context: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", context.display()))
}

impl InputArgs {
    pub fn resolve(&self) -> Result<CliConfig, CliError> {
        let stopwords = match &self.stopwords {
            Some(path) => {
                let file = fs::File::open(path).map_err(io_err(path))?;
                read_stopwords(io::BufReader::new(file)).map_err(io_err(path))?
            }
            None => Vec::new(),
        };
        let source = match self.word_key {
            WordKeyArg::Lemma => WordKeySource::LemmaThenSurface,
            WordKeyArg::Surface => WordKeySource::SurfaceOnly,
        };
        let filter = FilterConfig::new(stopwords, &self.pos, source, !self.no_case_fold)
            .map_err(|e| CliError::User(e.to_string()))?;
        Ok(CliConfig {
            corpus_path: self.corpus.clone(),
            stopwords_path: self.stopwords.clone(),
            filter,
        })
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn warn(&mut self, message: impl std::fmt::Display) {
        let _ = writeln!(self.err, "warning: {message}");
    }
}

fn load(path: &Path, io: &mut Io<'_>) -> Result<Corpus, CliError> {
    let loaded = load_corpus(path)?;
    for w in &loaded.warnings {
        io.warn(w);
    }
    Ok(loaded.corpus)
}

fn measure_spec(args: &MeasureArgs, corpus: &Corpus) -> Result<MeasureSpec, CliError> {
    MeasureSpec::new(args.measure.into(), args.threshold, corpus.n_documents()).map_err(|e| CliError::Usage {
        message: e.to_string(),
        usage: Cli::command().render_usage().to_string(),
    })
}

fn write_lexicon_to(lexicon: &Lexicon, out: Option<&Path>, io: &mut Io<'_>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let file = fs::File::create(path).map_err(io_err(path))?;
            write_lexicon(lexicon, BufWriter::new(file)).map_err(io_err(path))
        }
        None => write_lexicon(lexicon, &mut *io.out).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io(format!("cannot write output: {e}"))
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { corpus } => {
            let corpus = load(&corpus, io)?;
            let n_sentences = corpus.sentences().count();
            writeln!(
                io.out,
                "ok: `{}` with {} documents, {} sentences",
                corpus.name(),
                corpus.n_documents(),
                n_sentences
            )
            .map_err(stdout_err)?;
        }
        Command::Stats { input, csv } => {
            let config = input.resolve()?;
            let corpus = load(&config.corpus_path, io)?;
            let s = compute_stats(&corpus, &config.filter);
            let fields = [
                ("Documents", "n_documents", s.n_documents),
                ("Tokens", "n_tokens", s.n_tokens),
                ("Sentences", "n_sentences", s.n_sentences),
                ("Annotated Sentences", "n_annotated_sentences", s.n_annotated_sentences),
                ("Distinct Content Words in Corpus", "n_distinct_vn_corpus", s.n_distinct_vn_corpus),
                ("Distinct Content Words in Messages", "n_distinct_vn_messages", s.n_distinct_vn_messages),
            ];
            if csv {
                let header: Vec<&str> = fields.iter().map(|f| f.1).collect();
                let values: Vec<String> = fields.iter().map(|f| f.2.to_string()).collect();
                writeln!(io.out, "{}\n{}", header.join(","), values.join(",")).map_err(stdout_err)?;
            } else {
                let width = fields.iter().map(|f| f.0.len()).max().unwrap_or(0) + 1;
                for (label, _, value) in fields {
                    writeln!(io.out, "{:<width$} {value}", format!("{label}:")).map_err(stdout_err)?;
                }
            }
        }
        Command::Gold { input, out } => {
            let config = input.resolve()?;
            let corpus = load(&config.corpus_path, io)?;
            let gold = build_gold(&corpus, &config.filter);
            if gold.is_empty() {
                io.warn("gold lexicon is empty: no content words in annotated sentences");
            }
            write_lexicon_to(&gold, out.as_deref(), io)?;
        }
        Command::Extract { input, measure, out } => {
            let config = input.resolve()?;
            let corpus = load(&config.corpus_path, io)?;
            let spec = measure_spec(&measure, &corpus)?;
            let index = msglex_core::lexicon::build_index(&corpus, &config.filter);
            let lexicon = msglex_core::measures::extract(&index, spec);
            write_lexicon_to(&lexicon, out.as_deref(), io)?;
        }
        Command::Evaluate { input, measure } => {
            let config = input.resolve()?;
            let corpus = load(&config.corpus_path, io)?;
            let spec = measure_spec(&measure, &corpus)?;
            let ctx = SweepContext::new(&corpus, &config.filter).map_err(|e| CliError::User(e.to_string()))?;
            let row = evaluate(&ctx.extract(spec), ctx.gold(), ctx.universe(), spec)
                .map_err(|e| CliError::User(e.to_string()))?;
            writeln!(
                io.out,
                "{CSV_HEADER}\n{},{},{:.4},{:.4},{:.4},{:.4},{},{},{},{}",
                row.kind,
                row.threshold,
                row.precision,
                row.recall,
                row.f_measure,
                row.fallout,
                row.extracted_size,
                row.true_positives,
                row.universe_size,
                row.gold_size
            )
            .map_err(stdout_err)?;
        }
        Command::Sweep { input, fallout_cap, out } => {
            if !(0.0..=1.0).contains(&fallout_cap) {
                return Err(CliError::Usage {
                    message: format!("--fallout-cap {fallout_cap} is outside [0, 1]"),
                    usage: Cli::command().render_usage().to_string(),
                });
            }
            let config = input.resolve()?;
            let corpus = load(&config.corpus_path, io)?;
            let ctx = SweepContext::new(&corpus, &config.filter).map_err(|e| CliError::User(e.to_string()))?;
            if ctx.gold().is_empty() {
                io.warn("gold lexicon is empty: no content words in annotated sentences");
            }
            let results = sweep_all_parallel(&ctx, fallout_cap).map_err(|e| CliError::User(e.to_string()))?;
            let bundle = report::write_bundle(&results, &out).map_err(|e| match e {
                ReportError::Io(io) => CliError::Io(format!("{}: {io}", out.display())),
                other => other.into(),
            })?;
            for kind in &bundle.skipped_svgs {
                io.warn(format_args!("{kind}: a single threshold, no plot written"));
            }
            print_summary(&bundle.summary, io.out).map_err(stdout_err)?;
        }
    }
    Ok(())
}

fn print_summary(summary: &report::Summary, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{:<8} {:>7} {:>8} {:>8} {:>9} {:>8}",
        "measure", "best_f", "F", "fallout", "under_cap", "F"
    )?;
    for (kind, best, capped) in &summary.per_measure {
        let (ct, cf) = match capped {
            Some(p) => (p.threshold.to_string(), format!("{:.4}", p.row.f_measure)),
            None => ("-".into(), "-".into()),
        };
        writeln!(
            out,
            "{:<8} {:>7} {:>8.4} {:>8.4} {:>9} {:>8}",
            kind.code(),
            best.threshold,
            best.row.f_measure,
            best.row.fallout,
            ct,
            cf
        )?;
    }
    let (kind, p) = &summary.best_f;
    writeln!(
        out,
        "Best F-measure: {kind}@{} (F={:.4}, fallout={:.4})",
        p.threshold, p.row.f_measure, p.row.fallout
    )?;
    match &summary.best_f_under_cap {
        Some((kind, p)) => writeln!(
            out,
            "Best F-measure with fallout <= {:.2}: {kind}@{} (F={:.4}, fallout={:.4})",
            summary.fallout_cap, p.threshold, p.row.f_measure, p.row.fallout
        ),
        None => writeln!(out, "Best F-measure with fallout <= {:.2}: none", summary.fallout_cap),
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    let mut io = Io { out, err };
    match execute(cli, &mut io) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}
