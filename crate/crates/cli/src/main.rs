//! `loop-energy`: energies of graphs with self-loops from the command line.
//!
//! Exit codes: 0 success, 1 a family check found the eigenvalue condition
//! satisfied but the energies unequal, 2 malformed input or bad usage,
//! 3 the eigenvalue condition failed (informational), 4 I/O or numerical
//! failure.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loop_energy::energy::{energy_looped, verify_theorem2, EnergyReport, TheoremVerdict};
use loop_energy::format::{format_sig10, parse_matrix_text, to_matrix_text};
use loop_energy::graph6::{from_graph6, parse_sidecar, read_document, to_document_entry};
use loop_energy::search::{
    exact_recheck, scan_each, scan_family_each, Class, DedupePolicy, SearchConfig, SearchRecord,
    SigmaPolicy, Summary, TSV_HEADER,
};
use loop_energy::spectra::char_poly;
use loop_energy::{Error, LoopedGraph};

const THREADS_ENV: &str = "LOOP_ENERGY_THREADS";

#[derive(Parser)]
#[command(
    name = "loop-energy",
    version,
    about = "Energy of graphs with self-loops"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, loop count, shift, spectrum and energy.
    Energy(GraphInput),
    /// Print the sorted adjacency spectrum.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        /// Also print the exact characteristic polynomial.
        #[arg(long)]
        char_poly: bool,
    },
    /// Compare E((G ∪ G^l)_n) with 2·E(G).
    #[command(name = "verify-thm1")]
    VerifyThm1(GraphInput),
    /// Compare E((pG ∪ qG^l)_{qn}) with (p+q)·E(G).
    #[command(name = "verify-thm2")]
    VerifyThm2 {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Scan labeled graphs and loop placements for equal energies.
    Search(SearchArgs),
    /// Convert between graph6 (+ loop sidecar) and adjacency-matrix text.
    Convert {
        #[arg(long, value_enum)]
        to: ConvertTarget,
        /// Read from this file instead of stdin.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphInput {
    /// A graph6 string. Without it a graph6 document is read from --input or stdin.
    graph6: Option<String>,
    /// Comma-separated 0-based loop vertices for the positional graph.
    #[arg(long, requires = "graph6")]
    loops: Option<String>,
    /// Read a graph6 document (with optional `L:` sidecar lines) from this file.
    #[arg(long, conflicts_with = "graph6")]
    input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = SigmaArg::Interior)]
    sigma: SigmaArg,
    /// Only connected graphs.
    #[arg(long)]
    connected: bool,
    /// Relative equality tolerance: EQUAL when |gap| <= eq_tol·(1 + E(G)).
    #[arg(long, default_value_t = 1e-9)]
    eq_tol: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow orders 6 to 8 (long runtimes).
    #[arg(long)]
    force_large: bool,
    /// Scan only G ∪ G^l for each G in the order range.
    #[arg(long)]
    family: bool,
    #[arg(long, value_enum, default_value_t = DedupeArg::None)]
    dedupe: DedupeArg,
    /// Re-check EQUAL and SUSPECT records with exact characteristic polynomials.
    #[arg(long)]
    exact_recheck: bool,
    /// Worker threads (0 = auto). Defaults to $LOOP_ENERGY_THREADS.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    Interior,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum DedupeArg {
    None,
    Spectral,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertTarget {
    Matrix,
    Graph6,
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// The reader of stdout went away; stop quietly.
    ClosedPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } | Error::Overflow | Error::Io(_) => {
                Failure::Runtime(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Runtime(e.to_string())
    }
}

type CliResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Energy(input) => cmd_energy(&input),
        Command::Spectrum { input, char_poly } => cmd_spectrum(&input, char_poly),
        Command::VerifyThm1(input) => cmd_verify(&input, 1, 1, 1),
        Command::VerifyThm2 { input, p, q } => cmd_verify(&input, 2, p, q),
        Command::Search(args) => cmd_search(&args),
        Command::Convert { to, input } => cmd_convert(to, input.as_ref()),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
    }
}

fn read_text(path: Option<&PathBuf>) -> io::Result<String> {
    let mut s = String::new();
    match path {
        Some(p) => {
            File::open(p)?.read_to_string(&mut s)?;
        }
        None => {
            io::stdin().read_to_string(&mut s)?;
        }
    }
    Ok(s)
}

fn load_graphs(input: &GraphInput) -> Result<Vec<LoopedGraph>, Failure> {
    if let Some(g6) = &input.graph6 {
        let g = from_graph6(g6)?;
        let loops = match &input.loops {
            Some(list) => parse_sidecar(&format!("L:{list}")).map_err(|e| match e {
                Error::Parse { offset, reason } => Error::Parse {
                    offset: offset.saturating_sub(2),
                    reason: format!("--loops: {reason}"),
                },
                other => other,
            })?,
            None => Vec::new(),
        };
        return Ok(vec![g.with_loops(loops)?]);
    }
    Ok(read_document(&read_text(input.input.as_ref())?)?)
}

fn spectrum_line(values: &[f64]) -> String {
    values
        .iter()
        .map(|&x| format_sig10(x))
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_report(out: &mut impl Write, r: &EnergyReport) -> io::Result<()> {
    writeln!(out, "n: {}", r.n)?;
    writeln!(out, "sigma: {}", r.sigma)?;
    writeln!(out, "shift: {}", format_sig10(r.shift))?;
    writeln!(out, "spectrum: {}", spectrum_line(r.spectrum.values()))?;
    writeln!(out, "energy: {}", format_sig10(r.energy))
}

fn cmd_energy(input: &GraphInput) -> CliResult {
    let graphs = load_graphs(input)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (k, g) in graphs.iter().enumerate() {
        let report = energy_looped(g)?;
        if input.json {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&report).expect("serializable")
            )?;
        } else {
            if k > 0 {
                writeln!(out)?;
            }
            print_report(&mut out, &report)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(input: &GraphInput, with_poly: bool) -> CliResult {
    let graphs = load_graphs(input)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for g in &graphs {
        let report = energy_looped(g)?;
        if input.json {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&report.spectrum).expect("serializable")
            )?;
        } else {
            writeln!(out, "{}", spectrum_line(report.spectrum.values()))?;
        }
        if with_poly {
            writeln!(out, "char_poly: {}", char_poly(&g.adjacency_matrix())?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_verdict(out: &mut impl Write, thm: u8, v: &TheoremVerdict) -> io::Result<()> {
    let threshold = v.p.max(v.q) as f64 / (v.p + v.q) as f64;
    writeln!(out, "theorem: {thm} (p={}, q={})", v.p, v.q)?;
    match v.witness {
        None => writeln!(
            out,
            "condition: holds (min |lambda| >= {})",
            format_sig10(threshold)
        )?,
        Some(w) => writeln!(
            out,
            "condition: fails (witness eigenvalue {} below {})",
            format_sig10(w),
            format_sig10(threshold)
        )?,
    }
    if v.boundary {
        writeln!(
            out,
            "note: smallest |lambda| is within 1e-9 of the threshold"
        )?;
    }
    writeln!(out, "lhs: {}", format_sig10(v.lhs_energy))?;
    writeln!(out, "rhs: {}", format_sig10(v.rhs_energy))?;
    writeln!(out, "gap: {}", format_sig10(v.abs_gap))?;
    let verdict = match (v.condition_holds, v.energies_match()) {
        (true, true) => "equal",
        (true, false) => "VIOLATION",
        (false, true) => "equal (condition not met)",
        (false, false) => "unequal (condition not met)",
    };
    writeln!(out, "verdict: {verdict}")
}

fn cmd_verify(input: &GraphInput, thm: u8, p: usize, q: usize) -> CliResult {
    if p + q == 0 {
        return Err(Failure::Usage("p + q must be at least 1".into()));
    }
    let graphs = load_graphs(input)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let (mut violation, mut no_condition) = (false, false);
    for (k, g) in graphs.iter().enumerate() {
        if g.sigma() > 0 {
            return Err(Failure::Usage(
                "verify takes a loopless base graph; drop the loop sidecar".into(),
            ));
        }
        let v = verify_theorem2(g.base(), p, q)?;
        violation |= v.is_violation();
        no_condition |= !v.condition_holds;
        if input.json {
            writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))?;
        } else {
            if k > 0 {
                writeln!(out)?;
            }
            print_verdict(&mut out, thm, &v)?;
        }
    }
    Ok(if violation {
        ExitCode::from(1)
    } else if no_condition {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn worker_count(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a non-negative integer"))),
        Err(_) => Ok(0),
    }
}

fn cmd_search(args: &SearchArgs) -> CliResult {
    let config = SearchConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        sigma_policy: match args.sigma {
            SigmaArg::Interior => SigmaPolicy::Interior,
            SigmaArg::All => SigmaPolicy::All,
        },
        eq_tol: args.eq_tol,
        connected_only: args.connected,
        dedupe: match args.dedupe {
            DedupeArg::None => DedupePolicy::None,
            DedupeArg::Spectral => DedupePolicy::Spectral,
        },
        threads: worker_count(args.threads)?,
        allow_large: args.force_large,
    };
    config.validate().map_err(|e| match e {
        Error::Config(msg) if msg.contains("opt in") => {
            Failure::Usage(format!("{msg}; pass --force-large to proceed"))
        }
        other => other.into(),
    })?;

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if matches!(args.format, FormatArg::Tsv) {
        writeln!(out, "{TSV_HEADER}")?;
    }
    let mut rechecked: Option<SearchRecord> = None;
    let mut pipe_closed = false;
    let sink = |r: &SearchRecord| -> loop_energy::Result<()> {
        let r = if args.exact_recheck && (r.class == Class::Equal || r.suspect) {
            let mut copy = r.clone();
            copy.exact = Some(exact_recheck(r)?);
            rechecked.insert(copy)
        } else {
            r
        };
        let line = match args.format {
            FormatArg::Tsv => r.to_tsv(),
            FormatArg::Jsonl => r.to_json(),
        };
        writeln!(out, "{line}").map_err(|e| {
            pipe_closed = e.kind() == io::ErrorKind::BrokenPipe;
            Error::Io(e.to_string())
        })
    };
    let scanned = if args.family {
        scan_family_each(&config, sink)
    } else {
        scan_each(&config, sink)
    };
    let summary = match scanned {
        Err(Error::Io(_)) if pipe_closed => return Err(Failure::ClosedPipe),
        other => other?,
    };
    out.flush()?;
    print_summary(&summary);
    Ok(ExitCode::SUCCESS)
}

fn print_summary(s: &Summary) {
    eprintln!(
        "records: {}  EQUAL: {}  LOOPED_GREATER: {}  SIMPLE_GREATER: {}  SUSPECT: {}  deduped: {}",
        s.records, s.equal, s.looped_greater, s.simple_greater, s.suspect, s.deduped
    );
}

fn cmd_convert(to: ConvertTarget, input: Option<&PathBuf>) -> CliResult {
    let text = read_text(input)?;
    let graphs = match to {
        ConvertTarget::Matrix => read_document(&text)?,
        ConvertTarget::Graph6 => parse_matrix_text(&text)?,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (k, g) in graphs.iter().enumerate() {
        match to {
            ConvertTarget::Matrix => {
                if k > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", to_matrix_text(g))?;
            }
            ConvertTarget::Graph6 => write!(out, "{}", to_document_entry(g))?,
        }
    }
    Ok(ExitCode::SUCCESS)
}
