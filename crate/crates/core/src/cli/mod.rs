//! The `pgs` command-line tool.
//!
//! Each command writes to the given handles and returns the process exit
//! code: 0 on success, 1 when a verification fails, 2 on usage or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::alphabet::{AlphabetPartition, Symbol};
use crate::engine::{self, naive_search, normalize_pattern, EngineMetrics, EngineOptions, Matcher, Mutation};
use crate::gen::InstanceLimits;
use crate::periodicity::prefix_periods_bruteforce;
use crate::pstring::{pcs, PString};
use crate::tokenize::{to_pstring, Token, Tokenizer};
use crate::verify::{self, VerifyConfig};

mod bench;
mod report;
mod spec;

pub use bench::{bench_partition, bench_pattern, bench_text, parse_sizes, BenchStyle};
pub use report::{BenchRow, Location, RunReport, CSV_HEADER};
pub use spec::{format_byte_set, parse_byte_set, AlphabetSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pgs", version, about = "Parameterized string matching")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every offset of TEXT where PATTERN p-matches.
    Search(SearchArgs),
    /// Print the prefix periods of PATTERN with their reaches.
    Periods(PeriodsArgs),
    /// Cross-check the engine against brute force on random instances.
    Verify(VerifyArgs),
    /// Measure the engine on generated inputs and write CSV rows.
    Bench(BenchArgs),
    /// Print the token stream of a source file and its symbol map.
    Tokenize(TokenizeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AlphabetArgs {
    /// Parameter bytes. `\xHH` escapes any byte and `\\` is a backslash.
    #[arg(long, value_name = "CHARS")]
    pub pi: Option<String>,
    /// Restrict constants to these bytes; other bytes are rejected.
    /// By default every byte not in --pi is a constant.
    #[arg(long, value_name = "CHARS")]
    pub sigma: Option<String>,
    /// Read inputs as source code: identifiers are parameters.
    #[arg(long)]
    pub tokens: bool,
    /// With --tokens, treat keywords as identifiers too.
    #[arg(long, requires = "tokens")]
    pub all_identifiers: bool,
    /// Keep a trailing newline at the end of input files (byte mode).
    #[arg(long)]
    pub raw: bool,
}

impl AlphabetArgs {
    fn spec(&self) -> Result<AlphabetSpec, String> {
        AlphabetSpec::from_flags(self.pi.as_deref(), self.sigma.as_deref(), self.tokens, self.all_identifiers)
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    pub text: PathBuf,
    pub pattern: PathBuf,
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Print a JSON report instead of one offset per line.
    #[arg(long)]
    pub json: bool,
    /// Also run the naive search and fail if the results differ.
    #[arg(long, hide = true)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct PeriodsArgs {
    pub pattern: PathBuf,
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Also compute the table by brute force and compare.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub cases: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 300)]
    pub max_n: usize,
    #[arg(long, default_value_t = 60)]
    pub max_m: usize,
    #[arg(long, default_value_t = 4)]
    pub max_pi: usize,
    #[arg(long, default_value_t = 3)]
    pub max_sigma: usize,
    #[arg(long, hide = true)]
    pub inject_mutation: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated text lengths, each optionally `n:m` to set the
    /// pattern length.
    #[arg(long, default_value = "")]
    pub sizes: String,
    /// Pattern length for sizes given without one.
    #[arg(long, default_value_t = 32)]
    pub m: usize,
    /// Number of parameter symbols.
    #[arg(long, default_value_t = 2)]
    pub pi: usize,
    #[arg(long, value_enum, default_value_t = BenchStyle::Random)]
    pub pattern_style: BenchStyle,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TokenizeArgs {
    pub source: PathBuf,
    /// Treat keywords as identifiers too.
    #[arg(long)]
    pub all_identifiers: bool,
    /// Write the symbol map here instead of after the stream.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Search(a) => cmd_search(&a, out),
        Command::Periods(a) => cmd_periods(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
        Command::Tokenize(a) => cmd_tokenize(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failed { code, message }) => {
            let _ = writeln!(err, "pgs: {message}");
            code
        }
    }
}

struct Failed {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failed {
    Failed { code: EXIT_USAGE, message: message.into() }
}

fn failure(message: impl Into<String>) -> Failed {
    Failed { code: EXIT_FAIL, message: message.into() }
}

fn io(e: std::io::Error) -> Failed {
    usage(format!("write failed: {e}"))
}

type CmdResult = Result<i32, Failed>;

fn read_input(path: &Path, raw: bool) -> Result<Vec<u8>, Failed> {
    let mut bytes = fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    if !raw && bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    Ok(bytes)
}

fn byte_string(part: &Arc<AlphabetPartition>, bytes: &[u8], path: &Path) -> Result<PString, Failed> {
    let symbols: Vec<Symbol> = bytes.iter().map(|&b| Symbol::from(b)).collect();
    PString::new(part.clone(), symbols).map_err(|e| match e {
        crate::Error::UnknownSymbol { code, offset } => usage(format!(
            "{}: byte {} at offset {offset} is not in the declared alphabet",
            path.display(),
            format_byte_set(&[code as u8])
        )),
        e => usage(e.to_string()),
    })
}

/// Inputs loaded under an alphabet spec. `text_tokens` is set in token mode.
struct Loaded {
    pattern: PString,
    text: Option<PString>,
    text_tokens: Option<Vec<Token>>,
}

fn load(alpha: &AlphabetArgs, pattern: &Path, text: Option<&Path>) -> Result<Loaded, Failed> {
    let spec = alpha.spec().map_err(usage)?;
    match spec.byte_partition() {
        Some(part) => {
            let p = read_input(pattern, alpha.raw)?;
            let t = text.map(|t| read_input(t, alpha.raw)).transpose()?;
            Ok(Loaded {
                pattern: byte_string(&part, &p, pattern)?,
                text: t.map(|t| byte_string(&part, &t, text.unwrap())).transpose()?,
                text_tokens: None,
            })
        }
        None => {
            let mut tok = Tokenizer::new(spec.identifier_rule());
            let p = tok.tokenize(&read_input(pattern, true)?);
            let t = text.map(|t| read_input(t, true)).transpose()?.map(|t| tok.tokenize(&t));
            let part = tok.partition();
            let conv = |tokens: &[Token]| to_pstring(&part, tokens).map_err(|e| usage(e.to_string()));
            Ok(Loaded { pattern: conv(&p)?, text: t.as_deref().map(conv).transpose()?, text_tokens: t })
        }
    }
}

fn cmd_search(a: &SearchArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load(&a.alphabet, &a.pattern, Some(&a.text))?;
    let (pattern, text) = (loaded.pattern, loaded.text.expect("text requested"));
    let start = Instant::now();
    let matcher = Matcher::with_options(&pattern, EngineOptions::from_env()).map_err(|e| usage(e.to_string()))?;
    let (positions, metrics) = matcher.find_all(&text).map_err(|e| usage(e.to_string()))?;
    let wall_ns = start.elapsed().as_nanos() as u64;

    if a.check {
        let want = naive_search(&text, &pattern).map_err(|e| usage(e.to_string()))?;
        if want != positions {
            return Err(failure(format!("engine reported {positions:?}, naive search {want:?}")));
        }
    }
    check_bounds(&matcher, text.len(), &metrics)?;

    if a.json {
        let locations = loaded
            .text_tokens
            .map(|tokens| positions.iter().map(|&p| Location { line: tokens[p].line, col: tokens[p].col }).collect());
        let report = RunReport {
            positions,
            n: text.len(),
            m: pattern.len(),
            pi_p: pcs(&pattern).len(),
            metrics,
            wall_ns,
            locations,
        };
        writeln!(out, "{}", report.to_json()).map_err(io)?;
    } else {
        for p in positions {
            writeln!(out, "{p}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn check_bounds(matcher: &Matcher, n: usize, metrics: &EngineMetrics) -> Result<(), Failed> {
    let m = matcher.pattern_len();
    let time = engine::time_bound(n, m, matcher.pattern_params());
    if metrics.work() > time {
        return Err(failure(format!("work {} exceeds the time bound {time}", metrics.work())));
    }
    let space = engine::space_bound(m, matcher.engine_partition().param_count());
    if metrics.peak_aux_words > space {
        return Err(failure(format!("{} auxiliary words exceed the space bound {space}", metrics.peak_aux_words)));
    }
    Ok(())
}

fn cmd_periods(a: &PeriodsArgs, out: &mut dyn Write) -> CmdResult {
    let pattern = load(&a.alphabet, &a.pattern, None)?.pattern;
    let matcher = Matcher::with_options(&pattern, EngineOptions::from_env()).map_err(|e| usage(e.to_string()))?;
    let table = matcher.table().to_pairs();
    for (p, r) in &table {
        writeln!(out, "{p} {r}").map_err(io)?;
    }
    if !a.oracle {
        return Ok(EXIT_OK);
    }
    let (normalized, _) = normalize_pattern(&pattern).map_err(|e| usage(e.to_string()))?;
    let want = prefix_periods_bruteforce(&normalized).map_err(|e| usage(e.to_string()))?;
    for (p, r) in &want {
        writeln!(out, "oracle {p} {r}").map_err(io)?;
    }
    if want == table {
        writeln!(out, "MATCH").map_err(io)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "MISMATCH").map_err(io)?;
        Ok(EXIT_FAIL)
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let mut options = EngineOptions::from_env();
    if a.inject_mutation {
        options.mutation = Some(Mutation::OvershootRestart);
    }
    let config = VerifyConfig {
        cases: a.cases,
        seed: a.seed,
        limits: InstanceLimits { max_n: a.max_n, max_m: a.max_m.max(1), max_sigma: a.max_sigma, max_pi: a.max_pi },
        options,
    };
    let report = verify::run(&config);
    if report.passed() {
        writeln!(out, "{} cases passed (seed {})", report.cases, a.seed).map_err(io)?;
        for (name, held) in &report.lemma_held {
            writeln!(out, "  {name}: {held} held").map_err(io)?;
        }
        return Ok(EXIT_OK);
    }
    writeln!(out, "{} of {} cases failed (seed {})", report.failures.len(), report.cases, a.seed).map_err(io)?;
    let f = &report.failures[0];
    writeln!(out, "case {} [{}]: {}", f.case, f.check, f.detail).map_err(io)?;
    match &f.reproducer {
        Some(inst) => writeln!(out, "reproducer: seed={} case={} {inst}", a.seed, f.case).map_err(io)?,
        None => writeln!(out, "reproducer: seed={} case={}", a.seed, f.case).map_err(io)?,
    }
    Ok(EXIT_FAIL)
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    let sizes = parse_sizes(&a.sizes, a.m).map_err(usage)?;
    if a.m == 0 {
        return Err(usage("--m must be positive"));
    }
    let file;
    let sink: &mut dyn Write = match &a.csv {
        Some(path) => {
            file = fs::File::create(path).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            &mut { file }
        }
        None => out,
    };
    let mut w = csv::Writer::from_writer(sink);
    let csv_err = |e: csv::Error| usage(format!("write failed: {e}"));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for (n, m) in sizes {
        let row = bench_row(a.pattern_style, n, m, a.pi, a.seed).map_err(usage)?;
        w.write_record(row.record()).map_err(csv_err)?;
    }
    w.flush().map_err(io)?;
    Ok(EXIT_OK)
}

/// Runs one bench configuration and returns its CSV row.
pub fn bench_row(style: BenchStyle, n: usize, m: usize, params: usize, seed: u64) -> Result<BenchRow, String> {
    let pattern = bench_pattern(style, m, params, seed);
    let text = bench_text(style, &pattern, n, seed);
    let start = Instant::now();
    let matcher = Matcher::new(&pattern).map_err(|e| e.to_string())?;
    let metrics = matcher.find_each(&text, |_| {}).map_err(|e| e.to_string())?;
    let wall_ns = start.elapsed().as_nanos() as u64;
    Ok(BenchRow {
        n,
        m,
        pi_p: pcs(&pattern).len(),
        match_calls: metrics.match_calls,
        loop_iterations: metrics.loop_iterations,
        peak_aux_words: metrics.peak_aux_words,
        wall_ns,
    })
}

fn cmd_tokenize(a: &TokenizeArgs, out: &mut dyn Write) -> CmdResult {
    let src = read_input(&a.source, true)?;
    let rule = if a.all_identifiers {
        crate::tokenize::IdentifierRule::no_keywords()
    } else {
        crate::tokenize::IdentifierRule::default()
    };
    let mut tok = Tokenizer::new(rule);
    let tokens = tok.tokenize(&src);
    let codes: Vec<String> = tokens.iter().map(|t| t.code.to_string()).collect();
    writeln!(out, "{}", codes.join(" ")).map_err(io)?;
    let map = serde_json::to_string(&tok.symbol_map(&tokens)).expect("symbol map serializes");
    match &a.map {
        Some(path) => {
            fs::write(path, map + "\n").map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?
        }
        None => writeln!(out, "{map}").map_err(io)?,
    }
    Ok(EXIT_OK)
}
