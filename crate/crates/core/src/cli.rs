//! Command-line front end. Exit codes: 0 success, 1 when at least one query
//! fails to characterize or translate, 2 on usage or I/O errors.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::eval::{evaluate, load_corpus, render_report, ReportFormat};
use crate::hypernym::Lexicon;
use crate::qct::characterize;
use crate::text::{parse_tagged_input, serialize_tsv, tag_tokens, TokenSequence};
use crate::translate::{ModifierLexicon, NominalMode, Translator};

#[derive(Parser, Debug)]
#[command(name = "qct", version, about = "Characterize wh-queries and translate them to description logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tokenize and POS-tag queries.
    Tag(QueryArgs),
    /// Fit queries into the characterization template.
    Characterize(QueryArgs),
    /// Characterize and translate queries into DL.
    Translate(QueryArgs),
    /// Score a JSON-lines corpus.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
struct QueryArgs {
    /// Inline query; stdin is read when neither this nor --input is given.
    #[arg(conflicts_with = "input")]
    query: Option<String>,
    /// File with one query per line (a single tagged query with --tagged).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input is pre-tagged `token<TAB>tag` lines or a JSON token list.
    #[arg(long)]
    tagged: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Hypernym table replacing the bundled one.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Measurable-modifier table replacing the bundled one.
    #[arg(long = "mod-lexicon")]
    mod_lexicon: Option<PathBuf>,
    #[arg(long = "nominal-mode", value_enum, default_value_t = NominalArg::PaperLiteral)]
    nominal_mode: NominalArg,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Group rows by gold form or by query kind.
    #[arg(long, value_enum, default_value_t = Group::Form)]
    group: Group,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dl,
    Table,
    Tsv,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NominalArg {
    PaperLiteral,
    NominalStrict,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Group {
    Form,
    Kind,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Usage> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Usage(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

type Tagged = (String, Result<TokenSequence, String>);

/// Queries to process, each paired with its display text.
fn queries(args: &QueryArgs, stdin: &mut dyn Read) -> Result<Vec<Tagged>, Usage> {
    let text = match (&args.query, &args.input) {
        (Some(q), _) => q.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?,
        (None, None) => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    if args.tagged {
        let seq = parse_tagged_input(&text).map_err(|e| e.to_string());
        let shown = seq.as_ref().map(|s| s.text()).unwrap_or_else(|_| text.trim().to_string());
        return Ok(vec![(shown, seq)]);
    }
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| (l.to_string(), tag_tokens(l).map_err(|e| e.to_string())))
        .collect())
}

fn error_record(query: &str, error: &str) -> String {
    json!({ "query": query, "error": error }).to_string()
}

fn run_tag(args: &QueryArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<bool, Usage> {
    let format = pick(args.format, Format::Tsv, &[Format::Tsv, Format::Json])?;
    let mut ok = true;
    for (query, seq) in queries(args, stdin)? {
        match seq {
            Ok(seq) if format == Format::Tsv => writeln!(out, "{}", serialize_tsv(&seq))?,
            Ok(seq) => writeln!(out, "{}", serde_json::to_string(&seq)?)?,
            Err(e) => {
                ok = false;
                writeln!(out, "{}", error_record(&query, &e))?;
            }
        }
    }
    Ok(ok)
}

fn run_characterize(args: &QueryArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<bool, Usage> {
    pick(args.format, Format::Json, &[Format::Json])?;
    let mut ok = true;
    for (query, seq) in queries(args, stdin)? {
        match seq.and_then(|s| characterize(&s).map_err(|e| e.to_string())) {
            Ok(qct) => writeln!(out, "{}", qct.to_json())?,
            Err(e) => {
                ok = false;
                writeln!(out, "{}", error_record(&query, &e))?;
            }
        }
    }
    Ok(ok)
}

fn run_translate(args: &QueryArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<bool, Usage> {
    let format = pick(args.format, Format::Dl, &[Format::Dl, Format::Json])?;
    let lexicon = match &args.lexicon {
        Some(p) => Lexicon::load(p)?,
        None => Lexicon::bundled(),
    };
    let modifiers = match &args.mod_lexicon {
        Some(p) => ModifierLexicon::load(p)?,
        None => ModifierLexicon::bundled(),
    };
    let nominal = match args.nominal_mode {
        NominalArg::PaperLiteral => NominalMode::PaperLiteral,
        NominalArg::NominalStrict => NominalMode::NominalStrict,
    };
    let translator = Translator::new(&lexicon, &modifiers, nominal);
    let mut ok = true;
    for (query, seq) in queries(args, stdin)? {
        let result = seq
            .and_then(|s| characterize(&s).map_err(|e| e.to_string()))
            .and_then(|q| translator.translate(&q).map_err(|e| e.to_string()));
        match result {
            Ok(r) if format == Format::Dl => {
                writeln!(out, "{}", r.query.desire)?;
                for a in r.axioms() {
                    writeln!(out, "  {a}")?;
                }
            }
            Ok(r) => writeln!(out, "{}", r.to_json())?,
            Err(e) => {
                ok = false;
                writeln!(out, "{}", error_record(&query, &e))?;
            }
        }
    }
    Ok(ok)
}

fn run_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<bool, Usage> {
    let format = pick(args.format, Format::Table, &[Format::Table, Format::Json, Format::Csv])?;
    let corpus = load_corpus(&args.corpus)?;
    let ev = evaluate(&corpus);
    let report = match args.group {
        Group::Form => &ev.by_form,
        Group::Kind => &ev.by_kind,
    };
    let rendered = match format {
        Format::Json => render_report(report, ReportFormat::Json),
        Format::Csv => render_report(report, ReportFormat::Csv),
        _ => render_report(report, ReportFormat::Table),
    };
    out.write_all(rendered.as_bytes())?;
    Ok(true)
}

/// Runs one command; returns the process exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Tag(a) => run_tag(a, stdin, out),
        Command::Characterize(a) => run_characterize(a, stdin, out),
        Command::Translate(a) => run_translate(a, stdin, out),
        Command::Eval(a) => run_eval(a, out),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(err, "some queries failed");
            1
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut input = stdin.as_bytes();
        let argv = std::iter::once("qct").chain(args.iter().copied());
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn characterize_json() {
        let (code, out, _) = call(&["characterize", "What is the capital of Gujarat?", "--format", "json"], "");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["form"], "Simple");
    }

    #[test]
    fn translate_strict() {
        let (code, out, _) =
            call(&["translate", "--nominal-mode", "nominal-strict", "What is the capital of USA?"], "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("(Capital and (some of . {USA}))"));
    }

    #[test]
    fn batch_keeps_going_after_failure() {
        let (code, out, err) = call(&["characterize"], "Why is grass green?\nWhat is a cat?\n");
        assert_eq!(code, 1);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("\"error\""));
        assert!(!err.is_empty());
    }

    #[test]
    fn tagged_input() {
        let (code, out, _) = call(&["characterize", "--tagged"], "Where\tWRB\nis\tVBZ\nCalifornia\tNNP\n?\t.\n");
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("ImplicitLocation"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["tag", "x", "--input", "y"], "").0, 2);
        assert_eq!(call(&["characterize", "What is a cat?", "--format", "dl"], "").0, 2);
        assert_eq!(call(&["eval", "--corpus", "/nonexistent/corpus.jsonl"], "").0, 2);
        assert_eq!(call(&["translate", "--lexicon", "/nonexistent.tsv", "What is a cat?"], "").0, 2);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn tag_tsv() {
        let (code, out, _) = call(&["tag", "Who barks?"], "");
        assert_eq!(code, 0);
        assert!(out.starts_with("Who\tWP\nbarks\tVBZ"));
    }
}
