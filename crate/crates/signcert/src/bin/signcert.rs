use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use signcert::io;
use signcert::oracle::{self, LogBox, Stability, MAX_DIM};
use signcert_core::certify::{self, Bound, CertifyOptions, TargetSign};
use signcert_core::descartes::Sign;
use signcert_core::separation::EnclosingSearchOptions;
use signcert_core::{AffineMap, Signomial, Tolerances};

const EXIT_INPUT: u8 = 1;
const EXIT_DIMENSION: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "signcert", version, about = "Bound the connected sign components of a signomial")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the certification cascade and write a certificate (exit 3 if the bound is unknown)
    Certify(CertifyArgs),
    /// Count sign components on a log-scale grid
    Oracle(OracleArgs),
    /// Sign-change bounds for a one-variable signomial
    Descartes {
        input: PathBuf,
    },
    /// Apply the exponent map mu -> M mu + v
    Transform(TransformArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Negative,
    Positive,
}

impl From<Target> for TargetSign {
    fn from(t: Target) -> Self {
        match t {
            Target::Negative => TargetSign::Negative,
            Target::Positive => TargetSign::Positive,
        }
    }
}

#[derive(Args)]
struct CertifyArgs {
    /// Signomial file (.sig text or .json)
    input: PathBuf,
    #[arg(long, value_enum, default_value = "negative")]
    target: Target,
    /// Simplex file {"vertices": [[..], ..]} to validate and use
    #[arg(long)]
    simplex: Option<PathBuf>,
    /// Write the certificate here instead of standard output
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// LP feasibility and pivot tolerance
    #[arg(long, default_value_t = Tolerances::default().lp)]
    tol_lp: f64,
    /// Minimum normalized slack for strict separation
    #[arg(long, default_value_t = Tolerances::default().strict)]
    tol_strict: f64,
    /// Barycentric coordinates at or below this count as non-positive
    #[arg(long, default_value_t = Tolerances::default().cone)]
    tol_cone: f64,
    /// Allowed violation when re-checking witnesses
    #[arg(long, default_value_t = Tolerances::default().check)]
    tol_check: f64,
    /// Exhaustive enclosing search up to this many outside points
    #[arg(long, default_value_t = EnclosingSearchOptions::default().max_exhaustive)]
    max_exhaustive: usize,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    /// lo1,hi1,lo2,hi2,... in log coordinates (default -3,3 on every axis)
    #[arg(long = "box", value_delimiter = ',', allow_hyphen_values = true)]
    bounds: Option<Vec<f64>>,
    /// Cells per axis at the finest level; the stability check also runs res/4 and res/2
    #[arg(long)]
    res: Option<usize>,
    /// PPM raster of the finest grid (negative blue, positive red, dead-band white)
    #[arg(long)]
    raster: Option<PathBuf>,
    /// CSV of cell signs on the finest grid
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    input: PathBuf,
    /// Rows separated by ';', entries by ',' (e.g. "1,0;1,1")
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    /// Exponent shift v (default zero)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    shift: Option<Vec<f64>>,
    /// Write JSON here instead of text on standard output
    #[arg(long)]
    json_out: Option<PathBuf>,
}

enum Failure {
    Input(anyhow::Error),
    Dimension(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Certify(a) => run_certify(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Descartes { input } => run_descartes(&input),
        Command::Transform(a) => run_transform(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Dimension(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DIMENSION)
        }
    }
}

fn load(path: &Path) -> Result<Signomial, Failure> {
    Ok(io::read_signomial(path).with_context(|| format!("reading {}", path.display()))?)
}

fn run_certify(a: CertifyArgs) -> Result<ExitCode, Failure> {
    let f = load(&a.input)?;
    let simplex = match &a.simplex {
        Some(p) => Some(io::read_simplex(p).with_context(|| format!("reading {}", p.display()))?),
        None => None,
    };
    let opts = CertifyOptions {
        tolerances: Tolerances {
            lp: a.tol_lp,
            strict: a.tol_strict,
            cone: a.tol_cone,
            check: a.tol_check,
        },
        enclosing: EnclosingSearchOptions {
            max_exhaustive: a.max_exhaustive,
            ..Default::default()
        },
    };
    let cert = certify::certify(&f, a.target.into(), simplex.as_ref(), &opts)?;
    if let Err(e) = cert.revalidate(&f, &opts.tolerances) {
        bail_input(format!("witness failed revalidation: {e}"))?;
    }
    let json = io::certificate_to_json(&cert)?;
    let text = serde_json::to_string_pretty(&json)?;
    match &a.json_out {
        Some(path) => {
            std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            println!("bound: {} ({})", json["bound"], json["rule"].as_str().unwrap_or(""));
        }
        None => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    Ok(if cert.bound == Bound::Unknown {
        ExitCode::from(EXIT_UNKNOWN)
    } else {
        ExitCode::SUCCESS
    })
}

fn bail_input(msg: String) -> Result<(), Failure> {
    Err(Failure::Input(anyhow::anyhow!(msg)))
}

fn default_res(n: usize) -> usize {
    match n {
        1 => 4096,
        2 => 256,
        _ => 48,
    }
}

fn run_oracle(a: OracleArgs) -> Result<ExitCode, Failure> {
    let f = load(&a.input)?;
    let n = f.dim();
    if n > MAX_DIM {
        return Err(Failure::Dimension(format!(
            "the oracle supports at most {MAX_DIM} variables, input has {n}"
        )));
    }
    let bounds = a.bounds.unwrap_or_else(|| [-3.0, 3.0].repeat(n));
    if bounds.len() != 2 * n {
        return Err(Failure::Input(anyhow::anyhow!(
            "--box needs {} values for {n} variables, got {}",
            2 * n,
            bounds.len()
        )));
    }
    let res = a.res.unwrap_or_else(|| default_res(n));
    let lo: Vec<f64> = bounds.iter().step_by(2).copied().collect();
    let hi: Vec<f64> = bounds.iter().skip(1).step_by(2).copied().collect();
    let grid = LogBox::new(lo, hi, vec![res; n])?;
    let ladder = [(res / 4).max(2), (res / 2).max(2), res];
    for (name, sign) in [("negative", Sign::Negative), ("positive", Sign::Positive)] {
        match oracle::stability_check(&f, &grid, &ladder, sign)? {
            Stability::Stable(c) if c.touching_boundary > 0 => println!(
                "{name}: {} (stable, {} touching boundary)",
                c.count, c.touching_boundary
            ),
            Stability::Stable(c) => println!("{name}: {} (stable)", c.count),
            Stability::Unstable(counts) => {
                let seq: Vec<String> = counts.iter().map(|c| c.count.to_string()).collect();
                println!("{name}: {} (unstable: {})", counts.last().map_or(0, |c| c.count), seq.join(" -> "));
            }
        }
    }
    if a.raster.is_some() || a.csv.is_some() {
        let g = oracle::grid_labeling(&f, &grid)?;
        if let Some(p) = &a.raster {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            oracle::write_ppm(&g, &mut w)?;
        }
        if let Some(p) = &a.csv {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            oracle::write_csv(&g, &mut w)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_descartes(input: &Path) -> Result<ExitCode, Failure> {
    let f = load(input)?;
    if f.dim() != 1 {
        return Err(Failure::Dimension(format!(
            "descartes needs one variable, input has {}",
            f.dim()
        )));
    }
    let cert = certify::univariate_certify(&f, TargetSign::Negative)?;
    if let certify::Witness::SignSequence {
        signs,
        sign_changes,
        negative_bound,
        positive_bound,
    } = cert.witness
    {
        println!("signs: {signs}");
        println!("sign changes: {sign_changes}");
        println!("components: at most {}", sign_changes + 1);
        println!("negative: at most {negative_bound}");
        println!("positive: at most {positive_bound}");
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_matrix(s: &str) -> anyhow::Result<Vec<Vec<f64>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad matrix entry {x:?}")))
                .collect()
        })
        .collect()
}

fn run_transform(a: TransformArgs) -> Result<ExitCode, Failure> {
    let f = load(&a.input)?;
    let matrix = parse_matrix(&a.matrix)?;
    let shift = a.shift.unwrap_or_else(|| vec![0.0; f.dim()]);
    let map = AffineMap::new(matrix, shift)?;
    let g = f.monomial_transform(&map)?;
    match &a.json_out {
        Some(p) => std::fs::write(p, io::to_json(&g) + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", io::to_text(&g)),
    }
    Ok(ExitCode::SUCCESS)
}
