//! The `schubert` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calculus::{detect_with, truncation_product_with, verify_with, Options};
use crate::diagram::{k_march, k_march_steps, maximal_corner, pivots, render_padded};
use crate::error::Error;
use crate::fixtures::fixtures;
use crate::grothendieck::{grothendieck, structure_constants};
use crate::perm::Permutation;
use crate::tree::{Mode, TreeBuilder, DEFAULT_NODE_CEILING};

pub const EXIT_OK: i32 = 0;
/// A verification ran to completion and found a mismatch.
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "schubert", version, about = "Diagram marching and Grothendieck polynomial expansions")]
struct Cli {
    /// Maximum number of tree vertices before giving up.
    #[arg(long, global = true, env = "SCHUBERT_NODE_CEILING", default_value_t = DEFAULT_NODE_CEILING)]
    node_ceiling: usize,
    /// Build trees on the rayon thread pool.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw the diagram of a permutation with its maximal corner and pivots.
    Diagram { perm: PermArg },
    /// March toward one or more pivot rows.
    March {
        perm: PermArg,
        #[arg(long, value_delimiter = ',', required = true)]
        rows: Vec<usize>,
        /// Show the intermediate permutations and added boxes.
        #[arg(long)]
        steps: bool,
    },
    /// Build the marching tree of a permutation.
    Tree {
        perm: PermArg,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        cohomology: bool,
        #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
        format: TreeFormat,
    },
    /// Print a Grothendieck polynomial.
    Groth {
        perm: PermArg,
        /// Set every variable beyond x_t to zero.
        #[arg(long, value_name = "T")]
        truncate: Option<usize>,
    },
    /// Expand G_sigma * G_rho in the Grothendieck basis.
    Multiply {
        sigma: PermArg,
        rho: PermArg,
        #[arg(long)]
        cohomology: bool,
        #[arg(long, value_enum, default_value_t = MapFormat::Json)]
        format: MapFormat,
    },
    /// Structure constants of a truncation Schubert problem, read off a tree.
    Product {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t = MapFormat::Json)]
        format: MapFormat,
    },
    /// Compare a tree product with the polynomial computations.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Check the published reference values.
    VerifyPaper,
}

#[derive(Args, Debug)]
struct ProblemArgs {
    sigma: PermArg,
    alpha: PermArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    cohomology: bool,
}

/// A permutation argument together with the number of entries written, so
/// output can keep trailing fixed points the user typed.
#[derive(Clone, Debug)]
struct PermArg {
    perm: Permutation,
    width: usize,
}

impl std::str::FromStr for PermArg {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let (perm, width) = Permutation::parse_with_width(text)?;
        Ok(Self { perm, width })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TreeFormat {
    Dot,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapFormat {
    Json,
    Text,
}

enum Failure {
    Lib(Error),
    Precondition(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Precondition(format!("write failed: {e}"))
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PermParse { .. } | Error::PolyParse { .. } => EXIT_USAGE,
        Error::NodeCeiling(_) | Error::OracleCeiling { .. } | Error::ExpansionDiverged(_) => EXIT_RESOURCE,
        _ => EXIT_PRECONDITION,
    }
}

fn mode(cohomology: bool) -> Mode {
    if cohomology {
        Mode::Cohomology
    } else {
        Mode::K
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Precondition(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PRECONDITION
        }
        Err(Failure::Mismatch) => EXIT_MISMATCH,
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let opts = Options { node_ceiling: cli.node_ceiling, parallel: cli.parallel, ..Options::default() };
    match &cli.command {
        Command::Diagram { perm: PermArg { perm, width } } => {
            write!(out, "{}", render_padded(perm, *width))?;
            writeln!(out, "length: {}", perm.length())?;
            match maximal_corner(perm) {
                None => {
                    writeln!(out, "corner: none")?;
                    writeln!(out, "pivots: none")?;
                }
                Some(corner) => {
                    writeln!(out, "corner: {corner}")?;
                    let list: Vec<String> = pivots(perm)?.iter().map(ToString::to_string).collect();
                    let text = if list.is_empty() { "none".to_string() } else { list.join(" ") };
                    writeln!(out, "pivots: {text}")?;
                }
            }
        }
        Command::March { perm: PermArg { perm, width: w }, rows, steps } => {
            let w = *w;
            let result = k_march(perm, rows)?;
            if *steps {
                for step in k_march_steps(perm, rows)? {
                    writeln!(out, "march toward row {}: {}", step.row, step.marched.to_padded_string(w))?;
                    if let (Some(cell), Some(next)) = (step.added, step.augmented) {
                        writeln!(out, "add box {cell}: {}", next.to_padded_string(w))?;
                    }
                }
            }
            writeln!(out, "{}", result.to_padded_string(w))?;
        }
        Command::Tree { perm, t, cohomology, format } => {
            let mut tree = TreeBuilder::new(*t, mode(*cohomology))
                .ceiling(opts.node_ceiling)
                .parallel(opts.parallel)
                .build(&perm.perm)?;
            tree.width = tree.width.max(perm.width);
            match format {
                TreeFormat::Dot => write!(out, "{}", tree.to_dot())?,
                TreeFormat::Json => writeln!(out, "{}", tree.to_json())?,
                TreeFormat::Text => write!(out, "{}", tree.to_text())?,
            }
        }
        Command::Groth { perm, truncate } => {
            let g = grothendieck(&perm.perm);
            match truncate {
                Some(t) => writeln!(out, "{}", g.truncate(*t))?,
                None => writeln!(out, "{g}")?,
            }
        }
        Command::Multiply { sigma, rho, cohomology, format } => {
            let mut e = structure_constants(&sigma.perm, &rho.perm)?;
            if *cohomology {
                e = e.restrict_to_length(sigma.perm.length() + rho.perm.length());
            }
            let w = sigma.width + rho.width;
            match format {
                MapFormat::Json => writeln!(out, "{}", e.to_json_padded(w))?,
                MapFormat::Text => writeln!(out, "{}", e.to_padded_string(w))?,
            }
        }
        Command::Product { problem, format } => {
            let (pr, m) = resolve(problem, &opts)?;
            let e = truncation_product_with(&pr, m, &opts)?;
            match format {
                MapFormat::Json => writeln!(out, "{}", e.to_json_padded(pr.ambient()))?,
                MapFormat::Text => writeln!(out, "{}", e.to_padded_string(pr.ambient()))?,
            }
        }
        Command::Verify { problem } => {
            let (pr, m) = resolve(problem, &opts)?;
            let report = verify_with(&pr, m, &opts)?;
            writeln!(out, "{}", report.to_json())?;
            if !report.matches() {
                return Err(Failure::Mismatch);
            }
        }
        Command::VerifyPaper => {
            let all = fixtures();
            let mut failed = 0;
            for f in &all {
                match (f.check)() {
                    Ok(()) => writeln!(out, "ok    {}", f.name)?,
                    Err(why) => {
                        failed += 1;
                        writeln!(out, "FAIL  {}: {why}", f.name)?;
                    }
                }
            }
            writeln!(out, "{} of {} checks passed", all.len() - failed, all.len())?;
            if failed > 0 {
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

fn resolve(args: &ProblemArgs, opts: &Options) -> Result<(crate::calculus::TruncationProblem, Mode), Failure> {
    let (sigma, alpha) = (&args.sigma.perm, &args.alpha.perm);
    let pr = detect_with(sigma, alpha, args.n, args.t, opts)?.ok_or_else(|| {
        Failure::Precondition(format!(
            "({sigma}, {alpha}) with n={} t={} is not a truncation Schubert problem",
            args.n, args.t
        ))
    })?;
    Ok((pr, mode(args.cohomology)))
}
