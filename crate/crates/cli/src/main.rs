use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thoth_core::familiarity::load_lexicon;
use thoth_core::ingest::{extract_pdf_text, normalize_word};
use thoth_core::{Engine, Error, LexiconName, Metric, ReadabilityError, ReaderProfile, ScheduleError};

const EXIT_IO: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_UNFAMILIAR: u8 = 3;

#[derive(Parser)]
#[command(name = "thoth", version, about = "Readability analysis and RSVP display schedules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a text with the readability formulas
    Analyze {
        /// Text or PDF file, or `-` for stdin
        input: String,
        #[arg(long, default_value_t = LexiconName::DaleChall)]
        lexicon: LexiconName,
        /// Print the report JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Build the per-word display schedule
    Schedule(ScheduleArgs),
    /// Inspect the familiarity lexicons
    Lexicon {
        #[command(subcommand)]
        command: LexiconCommand,
    },
    /// Run the HTTP service
    Serve {
        /// Port to listen on (falls back to THOTH_PORT, then 8080)
        #[arg(long, env = "THOTH_PORT", default_value_t = thoth_server::DEFAULT_PORT)]
        port: u16,
    },
}

#[derive(Args)]
struct ScheduleArgs {
    /// Text or PDF file, or `-` for stdin
    input: String,
    #[arg(long, default_value_t = 300.0)]
    wpm: f64,
    /// Reader age in years
    #[arg(long)]
    age: Option<f64>,
    /// Display-time multiplier for unfamiliar words
    #[arg(long, default_value_t = 1.5)]
    multiplier: f64,
    #[arg(long, default_value_t = LexiconName::DaleChall)]
    lexicon: LexiconName,
    /// Disable the long-word slowdown
    #[arg(long)]
    no_length: bool,
    /// Disable punctuation pauses
    #[arg(long)]
    no_punct: bool,
    /// Write the schedule here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LexiconCommand {
    /// Exit 0 if the word is familiar, 3 if not
    Check {
        word: String,
        #[arg(long, default_value_t = LexiconName::DaleChall)]
        lexicon: LexiconName,
        /// Use this word list instead of the built-in one
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Lexicon(_) | Error::Pdf(_) | Error::Ingest(_) => Failure::io(e.to_string()),
            Error::Readability(_) | Error::Schedule(_) | Error::Gradient(_) => Failure::validation(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("thoth: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze { input, lexicon, json } => analyze(&input, lexicon, json),
        Command::Schedule(args) => schedule(args),
        Command::Lexicon {
            command: LexiconCommand::Check { word, lexicon, file },
        } => check_word(&word, lexicon, file.as_deref()),
        Command::Serve { port } => serve(port),
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    let bytes = if input == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::io(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read(input).map_err(|e| Failure::io(format!("cannot read {input}: {e}")))?
    };
    if bytes.starts_with(b"%PDF-") {
        return extract_pdf_text(&bytes).map_err(|e| Failure::io(format!("{input}: {e}")));
    }
    String::from_utf8(bytes).map_err(|e| {
        Failure::io(format!(
            "{input}: not UTF-8 text (invalid byte at offset {})",
            e.utf8_error().valid_up_to()
        ))
    })
}

fn require_text(text: &str) -> Result<(), Failure> {
    if text.trim().is_empty() {
        Err(Failure::validation(ReadabilityError::InsufficientText.to_string()))
    } else {
        Ok(())
    }
}

fn analyze(input: &str, lexicon: LexiconName, json: bool) -> Result<u8, Failure> {
    let text = read_input(input)?;
    require_text(&text)?;
    let analysis = Engine::new().analyze(&text, lexicon)?;
    let report = &analysis.report;
    if json {
        print!("{}", report.to_json());
        return Ok(0);
    }
    let mut out = String::new();
    out.push_str(&format!("{:<22} {:>9} {:>7}  {}\n", "metric", "raw", "grade", "reliable"));
    for metric in Metric::ALL {
        let s = report.score(metric).expect("report scores every metric");
        let grade = s.grade_level.map_or("-".to_owned(), |g| format!("{g:.2}"));
        let reliable = if s.reliable { "yes" } else { "no" };
        out.push_str(&format!("{:<22} {:>9.2} {:>7}  {}\n", label(metric), s.raw_score, grade, reliable));
    }
    let stats = &analysis.statistics;
    out.push_str(&format!(
        "\nwords {}  sentences {}  syllables {}\n",
        stats.word_count, stats.sentence_count, stats.syllable_count
    ));
    out.push_str(&format!(
        "difficult words        {:.1}% ({})\n",
        100.0 * report.difficult_word_fraction,
        lexicon
    ));
    out.push_str(&format!("consensus grade        {:.2}\n", report.consensus_grade));
    out.push_str(&format!("estimated reader age   {:.1}\n", report.estimated_age));
    print!("{out}");
    Ok(0)
}

fn label(metric: Metric) -> &'static str {
    match metric {
        Metric::Ari => "ARI",
        Metric::FleschReadingEase => "Flesch reading ease",
        Metric::FleschKincaidGrade => "Flesch-Kincaid grade",
        Metric::GunningFog => "Gunning fog",
        Metric::Smog => "SMOG",
        Metric::ColemanLiau => "Coleman-Liau",
        Metric::DaleChall => "Dale-Chall",
        Metric::Spache => "Spache",
    }
}

fn schedule(args: ScheduleArgs) -> Result<u8, Failure> {
    let profile = ReaderProfile {
        base_wpm: args.wpm,
        reader_age: args.age,
        unfamiliar_multiplier: args.multiplier,
        lexicon: args.lexicon,
        length_modifier_enabled: !args.no_length,
        punctuation_pauses_enabled: !args.no_punct,
    };
    profile.validate().map_err(|e: ScheduleError| Failure::validation(e.to_string()))?;
    let text = read_input(&args.input)?;
    require_text(&text)?;
    let json = Engine::new().schedule(&text, &profile)?.to_json();
    match args.output {
        Some(path) => {
            std::fs::write(&path, json).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(json.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::io(format!("cannot write stdout: {e}")))?;
        }
    }
    Ok(0)
}

fn check_word(word: &str, name: LexiconName, file: Option<&Path>) -> Result<u8, Failure> {
    let lexicon = match file {
        Some(path) => load_lexicon(name, path).map_err(|e| Failure::io(e.to_string()))?,
        None => thoth_core::FamiliarityLexicon::builtin(name),
    };
    let normalized = normalize_word(word);
    match lexicon.lookup(&normalized) {
        Some(m) if m.inflected => {
            println!("familiar via {} ({name})", m.base);
            Ok(0)
        }
        Some(m) => {
            println!("familiar: {} ({name})", m.base);
            Ok(0)
        }
        None => {
            println!("unfamiliar: {normalized} ({name})");
            Ok(EXIT_UNFAMILIAR)
        }
    }
}

fn serve(port: u16) -> Result<u8, Failure> {
    // the port was already resolved by clap (flag, then THOTH_PORT, then default)
    let config = thoth_server::Config::from_lookup(|k| (k != "THOTH_PORT").then(|| std::env::var(k).ok()).flatten())
        .map_err(|e| Failure::validation(e.to_string()))?;
    let config = thoth_server::Config { port, ..config };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::io(e.to_string()))?;
    runtime
        .block_on(thoth_server::serve(config))
        .map_err(|e| Failure::io(format!("cannot serve on port {port}: {e}")))?;
    Ok(0)
}
