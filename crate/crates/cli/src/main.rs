//! `fulleroct`: odd-cycle transversals, independent sets and bound checks
//! for fullerene graphs.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fulleroct::goldberg::{icosahedral_fullerene, GeodesicSpec};
use fulleroct::graph::{self, parse_adjlist, parse_planar_code, write_adjlist, write_planar_code, EmbeddedGraph, FullereneGraph};
use fulleroct::moats::{greedy_packing, Certificate};
use fulleroct::refine::refine;
use fulleroct::report::{analyze_batch, error_line, AnalysisOptions};
use fulleroct::spectra;
use fulleroct::transversal::{independent_set, odd_cycle_transversal_with, Verdict};
use fulleroct::Execution;

const EXIT_VIOLATED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_REJECTED: u8 = 3;

#[derive(Parser)]
#[command(name = "fulleroct", version, about = "Odd-cycle transversals and independent sets of fullerenes")]
struct Cli {
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, env = "FULLEROCT_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse every graph in a file, one JSON object per line.
    Analyze(AnalyzeArgs),
    /// Write the icosahedral fullerene GP(k,k) with 60k² vertices.
    Goldberg(GoldbergArgs),
    /// Verify a moat-packing certificate against a fullerene's dual, or emit
    /// the greedy one.
    Certificate(CertificateArgs),
    /// Spectral checks, one JSON object per graph.
    Spectra(SpectraArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    #[value(name = "planar_code")]
    PlanarCode,
    Adjlist,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file; `-` reads stdin.
    #[arg(long, short)]
    input: PathBuf,
    /// Input format; detected from the header when omitted.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Add eigenvalue-based checks.
    #[arg(long)]
    spectra: bool,
    /// Certificate JSON, applied to the graph whose dual it names.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Also verify the greedy disk packing of each refined dual.
    #[arg(long)]
    greedy_certificate: bool,
    #[arg(long, default_value_t = spectra::DEFAULT_TOLERANCE)]
    eig_tol: f64,
    /// Include wall-clock timings (output is then not byte-stable).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GoldbergArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "planar_code")]
    format: Format,
}

#[derive(Args)]
struct CertificateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Position of the graph in the input file.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Certificate to verify.
    #[arg(long, required_unless_present = "emit_greedy")]
    cert: Option<PathBuf>,
    /// Write the greedy refined-disk certificate instead of verifying one.
    #[arg(long, conflicts_with = "cert")]
    emit_greedy: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectraArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = spectra::DEFAULT_TOLERANCE)]
    eig_tol: f64,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct ParseFailure(anyhow::Error);

fn read_input(args: &InputArgs) -> Result<Vec<u8>> {
    if args.input == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))
    }
}

fn load_graphs(args: &InputArgs) -> Result<std::result::Result<Vec<EmbeddedGraph>, ParseFailure>> {
    let bytes = read_input(args)?;
    let format = args.format.unwrap_or(if bytes.starts_with(b">>planar_code") {
        Format::PlanarCode
    } else {
        Format::Adjlist
    });
    let parsed = match format {
        Format::PlanarCode => parse_planar_code(&bytes),
        Format::Adjlist => match std::str::from_utf8(&bytes) {
            Ok(text) => parse_adjlist(text),
            Err(e) => return Ok(Err(ParseFailure(e.into()))),
        },
    };
    Ok(parsed.map_err(|e| ParseFailure(e.into())))
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn parse_error(e: ParseFailure) -> Result<u8> {
    eprintln!("fulleroct: parse error: {:#}", e.0);
    Ok(EXIT_PARSE)
}

fn execution(jobs: Option<usize>) -> Execution {
    match jobs {
        Some(1) => Execution::Sequential,
        _ => Execution::default(),
    }
}

fn cmd_analyze(args: AnalyzeArgs, exec: Execution) -> Result<u8> {
    let graphs = match load_graphs(&args.input)? {
        Ok(g) => g,
        Err(e) => return parse_error(e),
    };
    let certificate = match &args.certificate {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            match Certificate::from_json(&text) {
                Ok(c) => Some(c),
                Err(e) => return parse_error(ParseFailure(e.into())),
            }
        }
        None => None,
    };
    let opts = AnalysisOptions {
        spectra: args.spectra,
        eig_tol: args.eig_tol,
        certificate,
        greedy_certificate: args.greedy_certificate,
        timings: args.timings,
        exec,
    };
    let mut out = open_output(&args.output)?;
    let mut code = 0;
    for (i, result) in analyze_batch(&graphs, &opts).into_iter().enumerate() {
        let line = match result {
            Ok(report) => {
                if report.any_violated() && code == 0 {
                    code = EXIT_VIOLATED;
                }
                report.to_json()
            }
            Err(e) => {
                eprintln!("fulleroct: graph {i}: {e}");
                code = EXIT_PARSE;
                error_line(i, &e.to_string())
            }
        };
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(code)
}

fn cmd_goldberg(args: GoldbergArgs) -> Result<u8> {
    let spec = GeodesicSpec::new(args.k)?;
    let f = icosahedral_fullerene(spec);
    let bytes = match args.format {
        Format::PlanarCode => write_planar_code([f.graph()])?,
        Format::Adjlist => write_adjlist([f.graph()]).into_bytes(),
    };
    let mut out = open_output(&args.output)?;
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(0)
}

fn cmd_certificate(args: CertificateArgs, exec: Execution) -> Result<u8> {
    let graphs = match load_graphs(&args.input)? {
        Ok(g) => g,
        Err(e) => return parse_error(e),
    };
    let Some(g) = graphs.get(args.index) else {
        bail!("input has {} graphs, no index {}", graphs.len(), args.index);
    };
    let f = match FullereneGraph::validate(g.clone()) {
        Ok(f) => f,
        Err(e) => return parse_error(ParseFailure(e.into())),
    };
    let (tri, _) = graph::dual(&f)?;
    let mut out = open_output(&args.output)?;

    if args.emit_greedy {
        let cert = Certificate::new(&tri, true, &greedy_packing(&refine(&tri)));
        writeln!(out, "{}", cert.to_json())?;
        out.flush()?;
        return Ok(0);
    }

    let path = args.cert.expect("clap requires --cert");
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let cert = match Certificate::from_json(&text) {
        Ok(c) => c,
        Err(e) => return parse_error(ParseFailure(e.into())),
    };
    let stats = match cert.verify(&tri) {
        Ok(s) => s,
        Err(e) => {
            writeln!(out, "certificate: rejected: {e}")?;
            out.flush()?;
            eprintln!("fulleroct: certificate rejected: {e}");
            return Ok(EXIT_REJECTED);
        }
    };
    let tau = odd_cycle_transversal_with(&f, exec)?.len();
    let verdict = Verdict::at_most(stats.value, num_rational::Ratio::from_integer(tau as i64));
    let yes = verdict != Verdict::Violated;
    writeln!(out, "certificate: ok")?;
    writeln!(out, "value: {}/{}", stats.value.numer(), stats.value.denom())?;
    writeln!(out, "moats: 1-moats {}, 3-moats {}, 5-moats {}", stats.m1, stats.m3, stats.m5)?;
    writeln!(out, "tau_odd: {tau}")?;
    writeln!(out, "≤ tau: {}", if yes { "yes" } else { "no" })?;
    out.flush()?;
    Ok(if yes { 0 } else { EXIT_VIOLATED })
}

fn cmd_spectra(args: SpectraArgs, exec: Execution) -> Result<u8> {
    let graphs = match load_graphs(&args.input)? {
        Ok(g) => g,
        Err(e) => return parse_error(e),
    };
    let mut out = open_output(&args.output)?;
    let mut code = 0;
    for (i, g) in graphs.into_iter().enumerate() {
        let f = match FullereneGraph::validate(g) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("fulleroct: graph {i}: {e}");
                code = EXIT_PARSE;
                continue;
            }
        };
        let n = f.n();
        let adj = spectra::adjacency_spectrum_tol(f.graph(), args.eig_tol)?;
        let bound = spectra::lambda_min_bound(n);
        let lambda_min_verdict = spectra::float_verdict(adj.min(), bound, args.eig_tol);
        let tr = odd_cycle_transversal_with(&f, exec)?;
        let cut = spectra::maxcut_spectral_check(&f, &tr)?;
        let isr = independent_set(&f, &tr)?;
        let shell = spectra::closed_shell_check(f.graph(), &isr.vertices, args.eig_tol)?;
        if lambda_min_verdict == Verdict::Violated || !cut.holds {
            code = code.max(EXIT_VIOLATED);
        }
        let line = json!({
            "index": i,
            "n": n,
            "lambda_min": adj.min(),
            "lambda_max": adj.max(),
            "positives": adj.positives(),
            "zeros": adj.zeros(),
            "lambda_min_bound": bound,
            "lambda_min_verdict": lambda_min_verdict,
            "maxcut_cut": cut.cut,
            "mu_max": cut.mu_max,
            "maxcut_bound": cut.bound,
            "maxcut_holds": cut.holds,
            "independent_set_size": isr.size(),
            "closed_shell": shell.verdict,
        });
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(code)
}

fn run(cli: Cli) -> Result<u8> {
    let exec = execution(cli.jobs);
    let work = move || match cli.command {
        Command::Analyze(a) => cmd_analyze(a, exec),
        Command::Goldberg(a) => cmd_goldberg(a),
        Command::Certificate(a) => cmd_certificate(a, exec),
        Command::Spectra(a) => cmd_spectra(a, exec),
    };
    match cli.jobs {
        Some(j) if j > 1 => rayon::ThreadPoolBuilder::new().num_threads(j).build()?.install(work),
        _ => work(),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fulleroct: {e:#}");
            ExitCode::from(EXIT_PARSE)
        }
    }
}
