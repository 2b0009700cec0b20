//! `optbwtrl`: build indexes and run count, locate, matching statistics and
//! long-LEM queries from the command line.
//!
//! Exit codes: 0 success, 1 bad input data, 2 invalid arguments, 3 I/O
//! failure, 4 malformed index file, 5 internal consistency or self-test
//! failure.

mod selftest;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use optbwtrl::format::has_magic;
use optbwtrl::matching::{compute_matching_statistics, long_lem_query, long_lem_query_direct};
use optbwtrl::oracle::naive_mems;
use optbwtrl::text::{build_suffix_structures, parse_fasta, parse_raw};
use optbwtrl::{Error, FormatError, Lem, Optbwtrl, Text, DEFAULT_BALANCE};

#[derive(Parser)]
#[command(name = "optbwtrl", version, about = "Run-length BWT index with long LEM queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a text and write it to a file.
    Build {
        #[command(flatten)]
        input: InputArgs,
        /// Index file to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print text and index statistics.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Count occurrences of each pattern.
    Count(QueryArgs),
    /// List occurrence positions of each pattern.
    Locate(QueryArgs),
    /// Print matching statistics of each pattern.
    Ms(QueryArgs),
    /// Report all LEMs of length at least L.
    Lems {
        #[command(flatten)]
        query: QueryArgs,
        /// Minimum match length.
        #[arg(short = 'L', long = "min-length", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        min_len: u64,
        /// Search windows from scratch instead of using matching statistics.
        #[arg(long)]
        direct: bool,
    },
    /// Report MEMs by brute force (small inputs only).
    Mems {
        #[command(flatten)]
        query: QueryArgs,
        /// Minimum match length.
        #[arg(short = 'L', long = "min-length", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        min_len: u64,
    },
    /// Compare every query against brute force on generated inputs.
    Selftest {
        /// Number of generated instances.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Random seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Text file, or an index file written by `build`.
    input: PathBuf,
    /// Read the text as FASTA; records are joined with a separator.
    #[arg(long)]
    fasta: bool,
    /// Balancing parameter for the move structures.
    #[arg(short = 'd', long = "balance", default_value_t = DEFAULT_BALANCE as u64, value_parser = clap::value_parser!(u64).range(2..))]
    balance: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Write results here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print a header row.
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    input: InputArgs,
    /// A pattern; may be repeated.
    #[arg(short, long = "pattern")]
    pattern: Vec<String>,
    /// File of patterns, one per line, or FASTA if it starts with '>'.
    #[arg(long)]
    patterns: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Failure::new(3, format!("{}: {err}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Format(FormatError::Io(_)) => 3,
            Error::Format(_) => 4,
            Error::Internal(_) | Error::Construction(_) => 5,
            Error::EmptyPattern | Error::InvalidMinLength | Error::InvalidBalance(_) => 2,
            _ => 1,
        };
        Failure::new(code, err.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::new(3, err.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("optbwtrl: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Build { input, output } => {
            let (_, ix) = load(&input)?;
            let bytes = ix.to_bytes();
            fs::write(&output, bytes).map_err(|e| Failure::io(&output, e))?;
            Ok(())
        }
        Command::Stats { input, out } => {
            let (_, ix) = load(&input)?;
            let mut w = open_output(&out)?;
            write_stats(&mut w, &ix, out.header)?;
            w.flush()?;
            Ok(())
        }
        Command::Count(q) => {
            let (_, ix) = load(&q.input)?;
            let patterns = read_patterns(&q)?;
            let mut w = open_output(&q.out)?;
            let named = patterns.len() > 1;
            if q.out.header {
                writeln!(w, "{}count", if named { "pattern\t" } else { "" })?;
            }
            for (name, raw) in &patterns {
                let count = ix.count(&ix.alphabet().encode(raw))?;
                writeln!(w, "{}{count}", prefix(named, name))?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Locate(q) => {
            let (_, ix) = load(&q.input)?;
            let patterns = read_patterns(&q)?;
            let mut w = open_output(&q.out)?;
            let named = patterns.len() > 1;
            if q.out.header {
                writeln!(w, "{}position", if named { "pattern\t" } else { "" })?;
            }
            for (name, raw) in &patterns {
                let mut positions = ix.locate(&ix.alphabet().encode(raw))?;
                positions.sort_unstable();
                for pos in positions {
                    writeln!(w, "{}{pos}", prefix(named, name))?;
                }
            }
            w.flush()?;
            Ok(())
        }
        Command::Ms(q) => {
            let (text, ix) = load(&q.input)?;
            let s = build_suffix_structures(&text);
            let patterns = read_patterns(&q)?;
            let mut w = open_output(&q.out)?;
            let named = patterns.len() > 1;
            if q.out.header {
                writeln!(w, "{}pos\tlen\tsuff\trow", if named { "pattern\t" } else { "" })?;
            }
            for (name, raw) in &patterns {
                let ms = compute_matching_statistics(&s, &ix, &text.encode_pattern(raw))?;
                for (f, e) in ms.entries().iter().enumerate() {
                    writeln!(w, "{}{}\t{}\t{}\t{}", prefix(named, name), f + 1, e.len, e.suff, e.row)?;
                }
            }
            w.flush()?;
            Ok(())
        }
        Command::Lems { query: q, min_len, direct } => {
            let (text, ix) = load(&q.input)?;
            let s = (!direct).then(|| build_suffix_structures(&text));
            let patterns = read_patterns(&q)?;
            let min_len = min_len as usize;
            write_matches(&q, &patterns, |raw| {
                let p = text.encode_pattern(raw);
                match &s {
                    Some(s) => long_lem_query(&ix, &compute_matching_statistics(s, &ix, &p)?, min_len),
                    None => long_lem_query_direct(&ix, &p, min_len),
                }
            })
        }
        Command::Mems { query: q, min_len } => {
            let (text, _) = load(&q.input)?;
            let patterns = read_patterns(&q)?;
            write_matches(&q, &patterns, |raw| {
                let p = text.encode_pattern(raw);
                Ok(naive_mems(&p, text.symbols()).into_iter().filter(|m| m.len >= min_len as usize).collect())
            })
        }
        Command::Selftest { cases, seed } => selftest::run(cases, seed),
    }
}

fn prefix(named: bool, name: &str) -> String {
    if named {
        format!("{name}\t")
    } else {
        String::new()
    }
}

/// Loads an index file, or reads a text and builds its index.
fn load(input: &InputArgs) -> CliResult<(Text, Optbwtrl)> {
    let bytes = fs::read(&input.input).map_err(|e| Failure::io(&input.input, e))?;
    if has_magic(&bytes) {
        let ix = Optbwtrl::from_bytes(&bytes)?;
        if ix.d() as u64 != input.balance && input.balance != DEFAULT_BALANCE as u64 {
            eprintln!("optbwtrl: note: index was built with d={}, ignoring --balance", ix.d());
        }
        let text = ix.to_text()?;
        return Ok((text, ix));
    }
    let text = if input.fasta {
        let records = parse_fasta(&bytes);
        let seqs: Vec<&[u8]> = records.iter().map(|r| r.seq.as_slice()).collect();
        Text::from_records(&seqs)?
    } else {
        Text::new(parse_raw(&bytes))?
    };
    let ix = Optbwtrl::from_text(&text, input.balance as usize)?;
    Ok((text, ix))
}

fn read_patterns(q: &QueryArgs) -> CliResult<Vec<(String, Vec<u8>)>> {
    let mut out: Vec<(String, Vec<u8>)> =
        q.pattern.iter().enumerate().map(|(i, p)| (format!("p{}", i + 1), p.as_bytes().to_vec())).collect();
    if let Some(path) = &q.patterns {
        let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
        if bytes.trim_ascii_start().starts_with(b">") {
            for (i, rec) in parse_fasta(&bytes).into_iter().enumerate() {
                let name = if rec.name.is_empty() { format!("{}", i + 1) } else { rec.name };
                out.push((name, rec.seq));
            }
        } else {
            for (i, line) in bytes.split(|&b| b == b'\n').enumerate() {
                let line = line.strip_suffix(b"\r").unwrap_or(line);
                if !line.is_empty() {
                    out.push((format!("{}", i + 1), line.to_vec()));
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Failure::new(2, "no patterns given (use -p or --patterns)"));
    }
    if out.iter().any(|(_, p)| p.is_empty()) {
        return Err(Failure::new(2, "empty pattern"));
    }
    Ok(out)
}

fn open_output(out: &OutputArgs) -> CliResult<Box<dyn Write>> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(fs::File::create(path).map_err(|e| Failure::io(path, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_matches(
    q: &QueryArgs,
    patterns: &[(String, Vec<u8>)],
    mut query: impl FnMut(&[u8]) -> optbwtrl::Result<Vec<Lem>>,
) -> CliResult {
    let mut w = open_output(&q.out)?;
    let named = patterns.len() > 1;
    if q.out.header {
        writeln!(w, "{}p_start\tt_start\tlen", if named { "pattern\t" } else { "" })?;
    }
    for (name, raw) in patterns {
        let mut rows = query(raw)?;
        rows.sort_unstable();
        for m in rows {
            writeln!(w, "{}{}\t{}\t{}", prefix(named, name), m.p_start, m.t_start, m.len)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_stats(w: &mut dyn Write, ix: &Optbwtrl, header: bool) -> io::Result<()> {
    let st = ix.stats();
    if header {
        writeln!(w, "key\tvalue")?;
    }
    writeln!(w, "n\t{}", st.n)?;
    writeln!(w, "r\t{}", st.r)?;
    writeln!(w, "sigma\t{}", st.sigma)?;
    writeln!(w, "n/r\t{:.3}", st.n as f64 / st.r as f64)?;
    writeln!(w, "d\t{}", st.d)?;
    for (name, (before, after)) in
        [("lf_intervals", st.lf_intervals), ("phi_intervals", st.phi_intervals), ("phi_inv_intervals", st.phi_inv_intervals)]
    {
        writeln!(w, "{name}\t{before}\t{after}")?;
    }
    writeln!(w, "stored_integers\t{}", st.stored_integers)?;
    writeln!(w, "integers_per_run\t{:.2}", st.stored_integers as f64 / st.r as f64)?;
    Ok(())
}
