//! The `twolayer` command line.
//!
//! Exit codes: 0 success, 1 failed check or I/O error, 2 usage or parse
//! error, 3 resource limit.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::counting::{assemble_table, g_count, verify_identities, Budgets};
use crate::crosscheck::{
    brute_force_agreement, equivalence_agreement, generator_agreement, saturation_agreement,
    Agreement,
};
use crate::error::{Error, Result};
use crate::generator::{
    count_classes_with_jobs, generate_classes_with_jobs, labeled_count, reflect_sentence,
    GrammarVariant,
};
use crate::network::{first_layer_parberry, parse_networks, Network};
use crate::oracle::{check_conjecture, for_each_second_layer};
use crate::saturation::is_saturated_semantic;
use crate::word::{net_of_sentence, sentence_of, Sentence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Which family of networks a command works on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetName {
    /// All labeled two-layer networks with first layer F_n.
    #[value(name = "G")]
    G,
    /// Saturated labeled networks.
    #[value(name = "S")]
    S,
    /// Classes of all networks.
    #[value(name = "RG")]
    Rg,
    /// Classes of saturated networks.
    #[value(name = "RS")]
    Rs,
    /// Saturated classes modulo reflection.
    #[value(name = "R")]
    R,
}

impl SetName {
    fn variant(self) -> Option<GrammarVariant> {
        match self {
            SetName::G | SetName::S => None,
            SetName::Rg => Some(GrammarVariant::Full),
            SetName::Rs => Some(GrammarVariant::Saturated),
            SetName::R => Some(GrammarVariant::SaturatedModuloReflection),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "twolayer",
    version,
    about = "Generate, count and canonicalize two-layer comparator-network prefixes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every member of a set, one per line, followed by `# count=<k>`.
    List {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        set: SetName,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the size of a set.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        set: SetName,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the count table for 3..=max and check its identities.
    Table {
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 3)]
        min: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Largest n for which R(G_n) is generated.
        #[arg(long, default_value_t = Budgets::default().full_max_n)]
        full_max: usize,
        /// Largest n for which R(S_n), R_n and S_n are computed.
        #[arg(long, default_value_t = Budgets::default().saturated_max_n)]
        saturated_max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the brute-force cross-checks and print a pass/fail matrix.
    Verify {
        /// Largest n for the labeled and class-count cross-checks.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Also check that no saturated class subsumes another, up to this n.
        #[arg(long)]
        conjecture: Option<usize>,
    },
    /// Print the canonical sentence of each network in a file (`-` for stdin).
    Word { file: PathBuf },
    /// Print the network of a sentence on first layer F_n.
    Net {
        #[arg(long)]
        n: usize,
        sentence: String,
    },
    /// Print the sentence of the reflected class.
    Reflect { sentence: String },
    /// Write one network file per class into a directory.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        set: SetName,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Parse { .. } | Error::Unsupported(_) => EXIT_USAGE,
        Error::ResourceLimit { .. } => EXIT_LIMIT,
        Error::Internal(_) | Error::Io(_) => EXIT_FAILED,
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::List {
            n,
            set,
            output,
            jobs,
        } => {
            let text = list_text(n, set, jobs)?;
            match output {
                Some(path) => fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Count { n, set, jobs } => {
            writeln!(out, "{}", count(n, set, jobs)?)?;
        }
        Command::Table {
            max,
            min,
            format,
            full_max,
            saturated_max,
            jobs,
        } => {
            if min > max {
                return Err(Error::InvalidArgument(format!(
                    "--min {min} exceeds --max {max}"
                )));
            }
            let budgets = Budgets {
                full_max_n: full_max,
                saturated_max_n: saturated_max,
                jobs,
            };
            let table = assemble_table(min..=max, &budgets)?;
            match format {
                TableFormat::Csv => write!(out, "{}", table.to_csv())?,
                TableFormat::Text => write!(out, "{}", table.to_text())?,
            }
            // the odd-n identity looks two rows back
            let context = assemble_table(min.saturating_sub(2).max(1)..=max, &budgets)?;
            let report = verify_identities(&context)?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                writeln!(
                    err,
                    "identity failed at n={}: {} ({})",
                    c.n, c.name, c.detail
                )?;
            }
            if !report.all_passed() {
                return Ok(EXIT_FAILED);
            }
        }
        Command::Verify { max_n, conjecture } => return verify(max_n, conjecture, out),
        Command::Word { file } => {
            let text = read_input(&file)?;
            let nets = parse_networks(&text)?;
            if nets.is_empty() {
                return Err(Error::parse(1, 1, "no network found"));
            }
            for net in &nets {
                writeln!(out, "{}", sentence_of(net)?)?;
            }
        }
        Command::Net { n, sentence } => {
            let s = parse_sentence(&sentence)?;
            write!(out, "{}", net_of_sentence(&s, n)?)?;
        }
        Command::Reflect { sentence } => {
            let s = parse_sentence(&sentence)?;
            if !s.is_canonical() {
                return Err(Error::InvalidArgument(format!(
                    "sentence {s} is not canonical"
                )));
            }
            writeln!(out, "{}", reflect_sentence(&s))?;
        }
        Command::Export { n, set, dir, jobs } => {
            let variant = set.variant().ok_or_else(|| {
                Error::InvalidArgument("export works on classes: use --set RG, RS or R".into())
            })?;
            let classes = generate_classes_with_jobs(n, variant, jobs)?;
            fs::create_dir_all(&dir)?;
            for (i, s) in classes.iter().enumerate() {
                let path = dir.join(format!("{n}_{}_{s}.net", i + 1));
                fs::write(&path, net_of_sentence(s, n)?.to_string())?;
            }
            let _ = writeln!(err, "wrote {} files to {}", classes.len(), dir.display());
        }
    }
    Ok(EXIT_OK)
}

fn parse_sentence(text: &str) -> Result<Sentence> {
    Sentence::from_str(text.trim())
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

/// Labeled second layers over `F_n`, all or only the saturated ones.
fn labeled_layers(n: usize, saturated_only: bool) -> Result<Vec<String>> {
    let first = first_layer_parberry(n)?;
    let mut lines = Vec::new();
    let mut failure = None;
    for_each_second_layer(n, |l| {
        if failure.is_some() {
            return;
        }
        if saturated_only {
            let net = Network::two_layer(n, first.clone(), l.clone()).expect("valid layers");
            match is_saturated_semantic(&net) {
                Ok(false) => return,
                Ok(true) => {}
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        }
        lines.push(l.to_string());
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    lines.sort();
    Ok(lines)
}

fn list_text(n: usize, set: SetName, jobs: usize) -> Result<String> {
    let lines: Vec<String> = match set.variant() {
        Some(v) => generate_classes_with_jobs(n, v, jobs)?
            .iter()
            .map(|s| s.to_string())
            .collect(),
        None => labeled_layers(n, set == SetName::S)?,
    };
    let mut text = String::new();
    for l in &lines {
        text.push_str(l);
        text.push('\n');
    }
    text.push_str(&format!("# count={}\n", lines.len()));
    Ok(text)
}

fn count(n: usize, set: SetName, jobs: usize) -> Result<String> {
    Ok(match set {
        SetName::G => g_count(n).to_string(),
        SetName::S => labeled_count(n, GrammarVariant::Saturated, jobs)?.to_string(),
        other => {
            let v = other.variant().expect("class set");
            count_classes_with_jobs(n, v, jobs)?.to_string()
        }
    })
}

enum Outcome {
    Pass(String),
    Fail(String),
    Limit(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass(d) => write!(f, "PASS  {d}"),
            Outcome::Fail(d) => write!(f, "FAIL  {d}"),
            Outcome::Limit(d) => write!(f, "LIMIT {d}"),
        }
    }
}

fn outcome(result: Result<Agreement>) -> Result<Outcome> {
    match result {
        Ok(a) if a.passed() => Ok(Outcome::Pass(format!("{} cases", a.cases))),
        Ok(a) => Ok(Outcome::Fail(a.mismatches.join("; "))),
        Err(Error::ResourceLimit { what, n, bound }) => {
            Ok(Outcome::Limit(format!("{what}: n = {n} above {bound}")))
        }
        Err(e) => Err(e),
    }
}

fn verify(max_n: usize, conjecture: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    let mut failed = false;
    let mut report = |out: &mut dyn Write, name: String, o: Outcome| -> Result<()> {
        failed |= matches!(o, Outcome::Fail(_));
        writeln!(out, "{name:<28} {o}")?;
        Ok(())
    };
    for n in 3..=max_n {
        report(
            out,
            format!("counts n={n}"),
            outcome(brute_force_agreement(n))?,
        )?;
        if n <= 6 {
            report(
                out,
                format!("equivalence n={n}"),
                outcome(equivalence_agreement(n, true))?,
            )?;
        }
        if n <= 10 {
            report(
                out,
                format!("saturation n={n}"),
                outcome(saturation_agreement(n))?,
            )?;
            report(
                out,
                format!("generator n={n}"),
                outcome(generator_agreement(n))?,
            )?;
        }
    }
    if let Some(limit) = conjecture {
        for n in 3..=limit {
            let o = match check_conjecture(n) {
                Ok(r) if r.holds() => {
                    Outcome::Pass(format!("{} classes, {} pairs", r.classes, r.pairs_checked))
                }
                Ok(r) => Outcome::Fail(
                    r.counterexamples
                        .iter()
                        .map(|c| {
                            format!("{} subsumes {} via {}", c.subsuming, c.subsumed, c.witness)
                        })
                        .collect::<Vec<_>>()
                        .join("; "),
                ),
                Err(Error::ResourceLimit { what, n, bound }) => {
                    Outcome::Limit(format!("{what}: n = {n} above {bound}"))
                }
                Err(e) => return Err(e),
            };
            report(out, format!("no subsumption n={n}"), o)?;
        }
    }
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}
