use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use uberdh::mvss::{e1_page_cached, e2_page, Variant};
use uberdh::verify::{verify_all, VerificationReport};
use uberdh::{io as uio, random, Coeffs, Error, Graph, SimplicialComplex};

#[derive(Parser)]
#[command(name = "uberdh", version, about = "Überhomology, double homology and anti-star Mayer-Vietoris pages of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Simplex,
    BoundarySimplex,
    Cycle,
    Icosahedron,
    Flag,
    /// Random connected complex that is not a simplex.
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Reduced,
    Unreduced,
}

#[derive(Args)]
struct RunConfig {
    /// z, q, f2 or fp:<prime>.
    #[arg(long, default_value = "q", value_parser = parse_coeffs)]
    coeffs: Coeffs,
    /// Worker threads (0 lets the pool decide).
    #[arg(long, env = "UBERDH_THREADS", default_value_t = 0)]
    threads: usize,
    /// Largest vertex count for computations over all vertex subsets.
    #[arg(long, env = "UBERDH_MAX_VERTICES", default_value_t = uberdh::homology::DEFAULT_SUBSET_CAP, value_parser = clap::value_parser!(usize))]
    max_vertices: usize,
    /// Directory for the subset homology cache.
    #[arg(long, env = "UBERDH_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Vertex count for text input.
    #[arg(long)]
    vertices: Option<usize>,
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a standard complex.
    Generate {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        n: Option<usize>,
        /// Edge list for `flag`, one `a b` pair per line.
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Simplicial homology of the complex.
    Homology {
        #[arg(long)]
        reduced: bool,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Überhomology, or its zero-degree part.
    Uber {
        #[arg(long)]
        zero_degree: bool,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Double homology of the moment-angle complex.
    Double {
        #[command(flatten)]
        run: RunConfig,
    },
    /// First or second page of the anti-star Mayer-Vietoris spectral sequence.
    Mvss {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        page: u8,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Connected domination polynomial of the 1-skeleton.
    Domination {
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<i64>,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Check the comparison theorems and corollaries on the complex.
    Verify {
        /// Run over z, q and f2 instead of the chosen coefficients.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        run: RunConfig,
    },
}

fn parse_coeffs(s: &str) -> Result<Coeffs, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Outcome {
    Done,
    VerificationFailed,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::TorsionObstruction(_)) => 2,
        Some(Error::SizeCap { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(format: Format, json: Value, text: impl FnOnce() -> String) -> Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json)?)?,
        Format::Table => write!(out, "{}", text())?,
    }
    Ok(())
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

impl RunConfig {
    /// Parses the input and applies the thread and size settings.
    fn load(&self) -> Result<SimplicialComplex> {
        if self.threads > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(self.threads).build_global().context("starting worker pool")?;
        }
        if self.max_vertices == 0 {
            anyhow::bail!(Error::InvalidInput("--max-vertices must be positive".into()));
        }
        let k = uio::parse_complex(&read_input(self.input.as_deref())?, self.vertices)?;
        if k.m() > self.max_vertices {
            return Err(Error::SizeCap { what: "vertex subsets", needed: k.m(), cap: self.max_vertices }.into());
        }
        Ok(k)
    }
}

fn generate(shape: Shape, n: Option<usize>, edges: Option<&Path>, seed: u64) -> Result<SimplicialComplex> {
    let need_n = || n.ok_or_else(|| Error::InvalidInput("this shape needs --n".into()));
    Ok(match shape {
        Shape::Simplex => SimplicialComplex::simplex(need_n()?)?,
        Shape::BoundarySimplex => SimplicialComplex::boundary_simplex(need_n()?)?,
        Shape::Cycle => SimplicialComplex::cycle(need_n()?)?,
        Shape::Icosahedron => SimplicialComplex::icosahedron(),
        Shape::Random => {
            let n = need_n()?;
            if !(3..=uberdh::homology::DEFAULT_SUBSET_CAP).contains(&n) {
                anyhow::bail!(Error::InvalidInput(format!("random complexes need 3 <= n <= 20, got {n}")));
            }
            random::random_connected_nonsimplex(&mut random::rng(seed), n)
        }
        Shape::Flag => {
            let path = edges.ok_or_else(|| Error::InvalidInput("flag needs --edges".into()))?;
            let text = read_input(Some(path))?;
            let mut pairs = Vec::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                let ends: Vec<usize> = line
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::InvalidInput(format!("bad edge line {line:?}"))))
                    .collect::<Result<_, _>>()?;
                match ends.as_slice() {
                    [a, b] => pairs.push((*a, *b)),
                    _ => anyhow::bail!(Error::InvalidInput(format!("edge lines need two vertices: {line:?}"))),
                }
            }
            let inferred = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
            SimplicialComplex::flag_complex(&Graph::from_edges(n.unwrap_or(inferred), pairs)?)?
        }
    })
}

fn verify_reports(k: &SimplicialComplex, run: &RunConfig, all: bool) -> Result<Vec<VerificationReport>> {
    let choices = if all { vec![Coeffs::Z, Coeffs::Q, Coeffs::F2] } else { vec![run.coeffs] };
    choices.into_iter().map(|c| verify_all(k, c).map_err(Into::into)).collect()
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Generate { shape, n, edges, seed, format } => {
            let k = generate(shape, n, edges.as_deref(), seed)?;
            emit(format, uio::complex_json(&k), || uio::complex_text(&k))?;
        }
        Command::Homology { reduced, run } => {
            let k = run.load()?;
            let h = uberdh::homology(&k, reduced, run.coeffs);
            emit(run.format, uio::homology_json(&h, reduced), || uio::homology_text(&h, reduced))?;
        }
        Command::Uber { zero_degree, run } => {
            let k = run.load()?;
            if zero_degree {
                let t = uberdh::uber_B(&k, run.coeffs)?;
                emit(run.format, uio::uber_zero_json(&t), || uio::uber_zero_text(&t))?;
            } else {
                let t = uberdh::uberhomology(&k, run.coeffs)?;
                emit(run.format, uio::uber_json(&t), || uio::uber_text(&t))?;
            }
        }
        Command::Double { run } => {
            let k = run.load()?;
            let t = uberdh::doubleh::double_homology(&k, run.coeffs)?;
            emit(run.format, uio::double_json(&t), || uio::double_text(&t))?;
        }
        Command::Mvss { variant, page, run } => {
            let k = run.load()?;
            let variant = match variant {
                VariantArg::Reduced => Variant::Reduced,
                VariantArg::Unreduced => Variant::Unreduced,
            };
            let p = match page {
                1 => e1_page_cached(&k, variant, run.coeffs, run.cache.as_deref())?,
                _ => e2_page(&k, variant, run.coeffs)?,
            };
            emit(run.format, uio::page_json(&p), || uio::page_text(&p))?;
        }
        Command::Domination { eval, run } => {
            let k = run.load()?;
            let p = uberdh::domination_polynomial(&k.one_skeleton())?;
            let text = || match eval {
                Some(x) => format!("{}\n", p.eval(x)),
                None => format!("{p}\n"),
            };
            emit(run.format, uio::polynomial_json(&p, eval), text)?;
        }
        Command::Verify { all, run } => {
            let k = run.load()?;
            let reports = verify_reports(&k, &run, all)?;
            let json = match reports.as_slice() {
                [one] => uio::report_json(one),
                many => Value::Array(many.iter().map(uio::report_json).collect()),
            };
            emit(run.format, json, || reports.iter().map(uio::report_text).collect())?;
            if reports.iter().any(|r| !r.all_passed()) {
                return Ok(Outcome::VerificationFailed);
            }
        }
    }
    Ok(Outcome::Done)
}
