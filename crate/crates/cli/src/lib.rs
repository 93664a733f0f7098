//! The `butterfly` command-line tool.
//!
//! Every subcommand writes data to stdout and diagnostics to stderr. Exit
//! status is 0 when every check passes and 1 when a verification finds a
//! counterexample. Bad input of any kind exits with 2.
//!
//! The environment variable `BUTTERFLY_MAX_N`, when set, caps every
//! exhaustive enumeration at that size.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use butterfly_core::asymptotics::{asymptotic_reports, to_decimal};
use butterfly_core::counting::{chains_of_size, named_series};
use butterfly_core::involutions::{check_dyck_flip, check_schroder_flip, InvolutionReport};
use butterfly_core::lattice_paths::{
    classify, decompose, enumerate_paths_with, Alphabet, Constraint, LatticePath, PathTag,
};
use butterfly_core::riordan::RiordanArray;
use butterfly_core::series::DEFAULT_ORDER;
use butterfly_core::trees::enumerate_trees_with;
use butterfly_core::verify::{
    chung_feller_table, flaw_block_table, returns_table, schroder_cf_table,
    schroder_flaw_block_table, stem_prefix_table, verify_bijection, verify_identity, BijectionName,
    BijectionReport, IdentityName, IdentityReport, TableRow,
};
use butterfly_core::{ButterflyError, Limits};

mod table;

pub use table::{Format, Table};

/// Significant digits in decimal columns.
const DECIMAL_DIGITS: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "butterfly",
    version,
    about = "Enumerate and certify plane tree and lattice path bijections"
)]
struct Cli {
    /// Do not print the version banner on stderr.
    #[arg(long, global = true)]
    no_banner: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stream every structure of a given size, one per line.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumerateKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certify a named target exhaustively at one size.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Print a statistic table next to its closed form.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand a named generating function.
    Series {
        name: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Chain statistics over all plane trees.
    Chains {
        #[arg(value_enum)]
        kind: ChainsKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rows of the Riordan array (g, f), optionally applied to a series.
    Riordan {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        apply: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnumerateKind {
    Trees,
    Dyck,
    FreeDyck,
    Schroder,
    FreeSchroder,
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// One of: butterfly, glove, drt-free-dyck, bicolored-free-dyck,
    /// drt-bicolored, leafcolored-schroder, leafcolored-drt-free-schroder,
    /// chain-tricolored, colored-chain-kcolored.
    Bijection {
        name: String,
        #[arg(long)]
        n: usize,
    },
    Involution {
        #[arg(value_enum)]
        kind: InvolutionKind,
        #[arg(long)]
        n: usize,
    },
    /// One of: eq9, eq10, eq12, cf, cf-refined, schroder-cf, narayana,
    /// leaf-half.
    Identity {
        name: String,
        #[arg(long)]
        n: usize,
    },
    /// Every certifiable target at one size.
    All {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InvolutionKind {
    Dyck,
    Schroder,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    ChungFeller,
    FlawBlocks,
    SchroderCf,
    Returns,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChainsKind {
    Count,
    SizeDist,
    TotalSize,
    Average,
    Asymptotic,
}

enum Failure {
    Usage(String),
    Core(ButterflyError),
    Io(io::Error),
    /// A check failed; the report is already on stdout.
    Verification,
}

impl From<ButterflyError> for Failure {
    fn from(e: ButterflyError) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    if !cli.no_banner {
        let _ = writeln!(err, "butterfly {}", env!("CARGO_PKG_VERSION"));
    }
    let outcome = limits_from_env().and_then(|limits| dispatch(cli.command, &limits, out));
    let _ = out.flush();
    match outcome {
        Ok(()) => 0,
        Err(Failure::Verification) => {
            let _ = writeln!(err, "verification failed");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn limits_from_env() -> Result<Limits, Failure> {
    match std::env::var("BUTTERFLY_MAX_N") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Limits::uniform)
            .map_err(|_| Failure::Usage(format!("BUTTERFLY_MAX_N must be a size, got {v:?}"))),
        Err(_) => Ok(Limits::default()),
    }
}

fn dispatch(command: Command, limits: &Limits, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Enumerate { kind, n, format } => enumerate(kind, n, format, limits, out),
        Command::Verify { target } => verify(target, limits, out),
        Command::Table { kind, n, format } => table(kind, n, format, limits, out),
        Command::Series {
            name,
            order,
            format,
        } => series(&name, order, format, out),
        Command::Chains { kind, n, format } => chains(kind, n, format, out),
        Command::Riordan {
            g,
            f,
            rows,
            apply,
            format,
        } => riordan(&g, &f, rows, apply.as_deref(), format, out),
    }
}

/// Writes a stream of records as lines, one JSON array, or CSV.
struct Streamer<'a> {
    format: Format,
    out: &'a mut dyn Write,
    count: usize,
}

impl<'a> Streamer<'a> {
    fn new(format: Format, headers: &[&str], out: &'a mut dyn Write) -> io::Result<Self> {
        let mut s = Streamer {
            format,
            out,
            count: 0,
        };
        match format {
            Format::Json => write!(s.out, "[")?,
            Format::Csv => s.csv_row(headers)?,
            Format::Text => {}
        }
        Ok(s)
    }

    fn csv_row<T: AsRef<[u8]>>(&mut self, row: &[T]) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(&mut *self.out);
        w.write_record(row)?;
        w.flush()
    }

    fn record(&mut self, text: &str, json: Value, csv_row: &[String]) -> io::Result<()> {
        match self.format {
            Format::Text => writeln!(self.out, "{text}")?,
            Format::Json => {
                let sep = if self.count == 0 { "" } else { "," };
                write!(self.out, "{sep}\n{json}")?;
            }
            Format::Csv => self.csv_row(csv_row)?,
        }
        self.count += 1;
        Ok(())
    }

    fn finish(self) -> io::Result<()> {
        if self.format == Format::Json {
            writeln!(self.out, "\n]")?;
        }
        Ok(())
    }
}

fn tag_list(path: &LatticePath) -> String {
    classify(path)
        .iter()
        .map(|t| match t {
            PathTag::Free => "free",
            PathTag::Dyck => "dyck",
            PathTag::Schroder => "schroder",
            PathTag::Elevated => "elevated",
            PathTag::NegativeElevated => "negative-elevated",
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn enumerate(
    kind: EnumerateKind,
    n: usize,
    format: Format,
    limits: &Limits,
    out: &mut dyn Write,
) -> Outcome {
    let (alphabet, constraint) = match kind {
        EnumerateKind::Trees => {
            limits.check_trees(n)?;
            let mut s = Streamer::new(format, &["index", "tree", "edges", "leaves", "depth"], out)?;
            for (i, t) in enumerate_trees_with(n, limits)?.enumerate() {
                let text = t.to_parens();
                let row = vec![
                    i.to_string(),
                    text.clone(),
                    t.edge_count().to_string(),
                    t.leaf_count().to_string(),
                    t.depth().to_string(),
                ];
                s.record(&text, t.to_json(), &row)?;
            }
            s.finish()?;
            return Ok(());
        }
        EnumerateKind::Dyck => (Alphabet::Dyck, Constraint::NonNegative),
        EnumerateKind::FreeDyck => (Alphabet::Dyck, Constraint::Free),
        EnumerateKind::Schroder => (Alphabet::Schroder, Constraint::NonNegative),
        EnumerateKind::FreeSchroder => (Alphabet::Schroder, Constraint::Free),
    };
    let paths = enumerate_paths_with(alphabet, n, constraint, limits)?;
    let mut s = Streamer::new(
        format,
        &["index", "path", "flaws", "flaw_blocks", "tags"],
        out,
    )?;
    for (i, p) in paths.enumerate() {
        let d = decompose(&p)?;
        let text = p.to_string();
        let row = vec![
            i.to_string(),
            text.clone(),
            d.flaws().to_string(),
            d.flaw_blocks().to_string(),
            tag_list(&p),
        ];
        s.record(&text, p.to_json(alphabet), &row)?;
    }
    s.finish()?;
    Ok(())
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_bijection(r: &BijectionReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "target: bijection {}", r.name)?;
    writeln!(out, "n: {}", r.n)?;
    writeln!(out, "domain: {}", r.domain_size)?;
    writeln!(out, "codomain: {}", r.codomain_size)?;
    writeln!(out, "expected: {}", r.expected_size)?;
    writeln!(
        out,
        "round_trips: {}",
        r.domain_size + r.codomain_size - r.failures
    )?;
    writeln!(out, "failures: {}", r.failures)?;
    if let Some(c) = &r.counterexample {
        writeln!(out, "counterexample: {c}")?;
    }
    writeln!(out, "verdict: {}", verdict(r.passed()))
}

fn write_involution(kind: &str, r: &InvolutionReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "target: involution-{kind}")?;
    writeln!(out, "n: {}", r.n)?;
    writeln!(out, "paths_checked: {}", r.checked)?;
    writeln!(out, "fixed_points: {}", r.fixed_points)?;
    writeln!(out, "failures: {}", r.failures)?;
    writeln!(out, "signed_sum: {}", r.signed_sum)?;
    writeln!(out, "verdict: {}", verdict(r.passed()))
}

fn write_identity(r: &IdentityReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "target: identity {}", r.name)?;
    writeln!(out, "n: {}", r.n)?;
    writeln!(out, "checks: {}", r.checks.len())?;
    for c in &r.checks {
        writeln!(
            out,
            "check {}: expected {} observed {} {}",
            c.label,
            c.expected,
            c.actual,
            if c.passed() { "ok" } else { "MISMATCH" }
        )?;
    }
    writeln!(out, "verdict: {}", verdict(r.passed()))
}

fn involution(
    kind: InvolutionKind,
    n: usize,
    limits: &Limits,
) -> Result<(&'static str, InvolutionReport), Failure> {
    if n == 0 {
        return Err(Failure::Usage("involutions are checked for n >= 1".into()));
    }
    Ok(match kind {
        InvolutionKind::Dyck => ("dyck", check_dyck_flip(n, limits)?),
        InvolutionKind::Schroder => ("schroder", check_schroder_flip(n, limits)?),
    })
}

fn verify(target: VerifyTarget, limits: &Limits, out: &mut dyn Write) -> Outcome {
    let passed = match target {
        VerifyTarget::Bijection { name, n } => {
            let r = verify_bijection(name.parse::<BijectionName>()?, n, limits)?;
            write_bijection(&r, out)?;
            r.passed()
        }
        VerifyTarget::Involution { kind, n } => {
            let (name, r) = involution(kind, n, limits)?;
            write_involution(name, &r, out)?;
            r.passed()
        }
        VerifyTarget::Identity { name, n } => {
            let r = verify_identity(name.parse::<IdentityName>()?, n, limits)?;
            write_identity(&r, out)?;
            r.passed()
        }
        VerifyTarget::All { n } => {
            if n == 0 {
                return Err(Failure::Usage("verify all needs n >= 1".into()));
            }
            let mut all = true;
            let mut total = 0;
            for name in BijectionName::ALL {
                let r = verify_bijection(name, n, limits)?;
                write_bijection(&r, out)?;
                writeln!(out)?;
                all &= r.passed();
                total += 1;
            }
            for kind in [InvolutionKind::Dyck, InvolutionKind::Schroder] {
                let (name, r) = involution(kind, n, limits)?;
                write_involution(name, &r, out)?;
                writeln!(out)?;
                all &= r.passed();
                total += 1;
            }
            for name in IdentityName::ALL {
                let r = verify_identity(name, n, limits)?;
                write_identity(&r, out)?;
                writeln!(out)?;
                all &= r.passed();
                total += 1;
            }
            writeln!(out, "targets: {total}")?;
            writeln!(out, "verdict: {}", verdict(all))?;
            all
        }
    };
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn table(
    kind: TableKind,
    n: usize,
    format: Format,
    limits: &Limits,
    out: &mut dyn Write,
) -> Outcome {
    let mut passed = true;
    let mut check = |rows: &[TableRow]| passed &= rows.iter().all(|r| r.observed == r.formula);
    let t = match kind {
        TableKind::ChungFeller => {
            let rows = chung_feller_table(n, limits)?;
            check(&rows);
            let mut t = Table::new(&["m", "count", "catalan"]);
            for r in rows {
                t.push(vec![
                    r.flaws.to_string(),
                    r.observed.to_string(),
                    r.formula.to_string(),
                ]);
            }
            t
        }
        TableKind::FlawBlocks => {
            let paths = flaw_block_table(n, limits)?;
            let trees = stem_prefix_table(n, limits)?;
            check(&paths);
            check(&trees);
            let mut t = Table::new(&["m", "k", "paths", "trees", "formula"]);
            for r in &paths {
                let tree_count = trees
                    .iter()
                    .find(|x| x.flaws == r.flaws && x.blocks == r.blocks)
                    .map(|x| x.observed.clone())
                    .unwrap_or_default();
                if tree_count != r.observed {
                    passed = false;
                }
                t.push(vec![
                    r.flaws.to_string(),
                    r.blocks.to_string(),
                    r.observed.to_string(),
                    tree_count.to_string(),
                    r.formula.to_string(),
                ]);
            }
            if trees.len() != paths.len() {
                passed = false;
            }
            t
        }
        TableKind::SchroderCf => {
            let rows = schroder_cf_table(n, limits)?;
            check(&rows);
            check(&schroder_flaw_block_table(n, limits)?);
            let mut t = Table::new(&["m", "weighted", "schroder"]);
            for r in rows {
                t.push(vec![
                    r.flaws.to_string(),
                    r.observed.to_string(),
                    r.formula.to_string(),
                ]);
            }
            t
        }
        TableKind::Returns => {
            let rows = returns_table(n, limits)?;
            check(&rows);
            let mut t = Table::new(&["k", "count", "formula"]);
            for r in rows {
                t.push(vec![
                    r.blocks.to_string(),
                    r.observed.to_string(),
                    r.formula.to_string(),
                ]);
            }
            t
        }
    };
    t.render(format, out)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn decimal_strings(values: &[BigInt]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(v.to_string()))
            .collect(),
    )
}

fn series(name: &str, order: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let s = named_series(name, order)?;
    match format {
        Format::Text => writeln!(out, "{s}")?,
        Format::Json => writeln!(out, "{}", decimal_strings(s.coeffs()))?,
        Format::Csv => {
            let mut t = Table::new(&["n", "coefficient"]);
            for (i, c) in s.coeffs().iter().enumerate() {
                t.push(vec![i.to_string(), c.to_string()]);
            }
            t.render(Format::Csv, out)?;
        }
    }
    Ok(())
}

fn chains(kind: ChainsKind, n: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let t = match kind {
        ChainsKind::Count | ChainsKind::TotalSize => {
            let reports = asymptotic_reports(n)?;
            let (header, pick): (&str, fn(&_) -> &BigInt) = match kind {
                ChainsKind::Count => (
                    "H_n",
                    |r: &butterfly_core::asymptotics::AsymptoticReport| &r.chains,
                ),
                _ => (
                    "R_n",
                    |r: &butterfly_core::asymptotics::AsymptoticReport| &r.total_size,
                ),
            };
            let mut t = Table::new(&["n", header]);
            for r in &reports {
                t.push(vec![r.n.to_string(), pick(r).to_string()]);
            }
            t
        }
        ChainsKind::SizeDist => {
            let mut t = Table::new(&["k", "chains"]);
            for k in 1..=n + 1 {
                t.push(vec![k.to_string(), chains_of_size(n, k)?.to_string()]);
            }
            t
        }
        ChainsKind::Average | ChainsKind::Asymptotic => {
            let reports = asymptotic_reports(n)?;
            let selected = match kind {
                ChainsKind::Average => &reports[n..],
                _ => &reports[..],
            };
            let with_ratios = matches!(kind, ChainsKind::Asymptotic) && format != Format::Csv;
            let mut headers = vec![
                "n",
                "H_n",
                "R_n",
                "average_num",
                "average_den",
                "average_decimal",
            ];
            if with_ratios {
                headers.extend(["h_ratio", "r_ratio", "predicted_average"]);
            }
            let mut t = Table::new(&headers);
            for r in selected {
                let mut row = vec![
                    r.n.to_string(),
                    r.chains.to_string(),
                    r.total_size.to_string(),
                    r.average.numer().to_string(),
                    r.average.denom().to_string(),
                    to_decimal(&r.average, DECIMAL_DIGITS),
                ];
                if with_ratios {
                    row.push(to_decimal(&r.chains_ratio, DECIMAL_DIGITS));
                    row.push(to_decimal(&r.total_size_ratio, DECIMAL_DIGITS));
                    row.push(to_decimal(&r.predicted_average, DECIMAL_DIGITS));
                }
                t.push(row);
            }
            t
        }
    };
    t.render(format, out)?;
    Ok(())
}

fn riordan(
    g: &str,
    f: &str,
    rows: usize,
    apply: Option<&str>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let order = rows.max(DEFAULT_ORDER);
    let array = RiordanArray::new(named_series(g, order)?, named_series(f, order)?)?;
    let table = array.rows(rows)?;
    let applied = match apply {
        Some(name) => {
            let a = named_series(name, order)?;
            Some(array.apply(&a)?.truncate(rows))
        }
        None => None,
    };
    match format {
        Format::Json => {
            let doc = json!({
                "g": g,
                "f": f,
                "rows": table.iter().map(|r| decimal_strings(r)).collect::<Vec<_>>(),
                "apply": applied.as_ref().map(|s| decimal_strings(s.coeffs())),
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            for row in &table {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
            if let Some(s) = &applied {
                writeln!(out, "apply: {s}")?;
            }
        }
        Format::Csv => {
            let mut t = Table::new(&["i", "j", "entry"]);
            for (i, row) in table.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    t.push(vec![i.to_string(), j.to_string(), v.to_string()]);
                }
            }
            t.render(Format::Csv, out)?;
            if let Some(s) = &applied {
                let mut t = Table::new(&["i", "applied"]);
                for (i, v) in s.coeffs().iter().enumerate() {
                    t.push(vec![i.to_string(), v.to_string()]);
                }
                t.render(Format::Csv, out)?;
            }
        }
    }
    Ok(())
}
