use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use fibshift::builders::{build_lsd, build_msd, g, msd_state_bound, predicted_lsd_states};
use fibshift::fibword::{FibWordMethod, Morphic};
use fibshift::oracle::{lemma_by_name, lemma_checks, Bounds};
use fibshift::zeckendorf::encode;
use fibshift::{Dfao, Order};

#[derive(Parser)]
#[command(name = "fibshift", version, about = "Automata for shifts of the Fibonacci word")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one shift automaton and export it.
    Build(BuildArgs),
    /// Check both constructions against the Fibonacci word.
    Verify(VerifyArgs),
    /// State counts per shift, as CSV.
    Table(TableArgs),
    /// Run the bounded lemma checks.
    Lemmas(LemmaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Msd,
    Lsd,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Order {
        match o {
            OrderArg::Msd => Order::Msd,
            OrderArg::Lsd => Order::Lsd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Walnut,
    Csv,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    c: u64,
    #[arg(long, value_enum, default_value = "lsd")]
    order: OrderArg,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    #[arg(long)]
    minimize: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `a..b` (inclusive) or a single value.
#[derive(Clone, Copy, Debug)]
struct CRange {
    lo: u64,
    hi: u64,
}

impl FromStr for CRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(CRange { lo, hi })
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "0..20")]
    c: CRange,
    /// Check indices i < N.
    #[arg(long, default_value_t = 5000, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value = "5..20")]
    c: CRange,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["all", "name"])))]
struct LemmaArgs {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    name: Option<String>,
    #[arg(long, requires = "name")]
    bound: Option<u64>,
    #[arg(long, requires = "name")]
    samples: Option<u64>,
}

enum Failure {
    Usage(String),
    Check,
    Runtime(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<fibshift::Error> for Failure {
    fn from(e: fibshift::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn build(c: u64, order: Order) -> fibshift::Result<Dfao> {
    match order {
        Order::Lsd => build_lsd(c).map(|(m, _)| m),
        Order::Msd => build_msd(c).map(|(m, _)| m),
    }
}

fn cmd_build(args: BuildArgs) -> Result<(), Failure> {
    let mut m = build(args.c, args.order.into())?;
    if args.minimize {
        m = m.minimize();
    }
    let text = match args.format {
        Format::Dot => m.export_dot(),
        Format::Walnut => m.export_walnut(),
        Format::Csv => m.export_csv(),
    };
    emit(&text, args.out.as_ref())?;
    Ok(())
}

fn verify_one(c: u64, n: u64, word: &[u8]) -> fibshift::Result<(bool, String)> {
    let mut ok = true;
    let mut line = format!("c={c}");
    for order in [Order::Lsd, Order::Msd] {
        let m = build(c, order)?;
        match (0..n).find(|&i| m.eval_int(i) != word[(c + i) as usize]) {
            None => line.push_str(&format!(" {order}=ok")),
            Some(i) => {
                ok = false;
                line.push_str(&format!(" {order}=MISMATCH(c={c}, i={i})"));
            }
        }
    }
    if c < 5 {
        line.push_str(" formula=skipped (stated for c >= 5)");
    } else {
        let predicted = predicted_lsd_states(c)?;
        let got = build_lsd(c)?.0.minimize().len();
        if got == predicted {
            line.push_str(&format!(" formula=ok ({got})"));
        } else {
            ok = false;
            line.push_str(&format!(" formula=MISMATCH(minimized {got}, predicted {predicted})"));
        }
    }
    Ok((ok, line))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let word = Morphic::new().prefix((args.c.hi + args.n) as usize + 1);
    let rows: Vec<_> = (args.c.lo..=args.c.hi)
        .into_par_iter()
        .map(|c| verify_one(c, args.n, &word))
        .collect::<fibshift::Result<_>>()?;
    let mut stdout = io::stdout().lock();
    let mut failures = 0;
    for (ok, line) in &rows {
        writeln!(stdout, "{line}")?;
        failures += !ok as usize;
    }
    writeln!(stdout, "verified {} shift(s), {failures} failure(s)", rows.len())?;
    if failures > 0 {
        return Err(Failure::Check);
    }
    Ok(())
}

fn table_row(c: u64) -> fibshift::Result<String> {
    let len = encode(c).digits().len();
    let gc = if c >= 2 { g(c)?.to_string() } else { String::new() };
    let predicted = if c >= 5 { predicted_lsd_states(c)?.to_string() } else { String::new() };
    let min_lsd = build_lsd(c)?.0.minimize().len();
    let min_msd = build_msd(c)?.0.minimize().len();
    Ok(format!("{c},{len},{gc},{predicted},{min_lsd},{min_msd},{}\n", msd_state_bound(c)?))
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let rows: Vec<String> = (args.c.lo..=args.c.hi)
        .into_par_iter()
        .map(table_row)
        .collect::<fibshift::Result<_>>()?;
    let mut text = String::from("c,len,g,predicted,min_lsd,min_msd,msd_bound\n");
    text.extend(rows);
    emit(&text, args.out.as_ref())?;
    Ok(())
}

fn cmd_lemmas(args: LemmaArgs) -> Result<(), Failure> {
    let runs = match &args.name {
        Some(name) => {
            let check = lemma_by_name(name).map_err(|e| Failure::Usage(e.to_string()))?;
            let d = check.default_bounds();
            let bounds = Bounds::new(args.bound.unwrap_or(d.bound), args.samples.unwrap_or(d.samples));
            vec![(check, bounds)]
        }
        None => lemma_checks()
            .into_iter()
            .map(|c| {
                let d = c.default_bounds();
                (c, d)
            })
            .collect(),
    };
    let mut stdout = io::stdout().lock();
    let mut failed = false;
    for (check, bounds) in runs {
        let report = check.run(bounds);
        failed |= !report.passed();
        writeln!(stdout, "{report}")?;
    }
    if failed {
        return Err(Failure::Check);
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("FIBSHIFT_THREADS") else { return Ok(()) };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("FIBSHIFT_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Runtime(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
        Command::Lemmas(a) => cmd_lemmas(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
