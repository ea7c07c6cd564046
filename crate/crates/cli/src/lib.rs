//! The `ncg` command line: argument parsing, the results cache and exit codes.
//!
//! Exit codes: 0 on success, 1 on structural or input errors, 2 when a
//! validation or certificate fails, 3 for an inconclusive verdict under
//! `--strict`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ncg_core::{FieldDescriptor, NcgError};

pub mod cache;
mod commands;
mod inputs;
pub mod report;

use cache::{Cache, Lookup};
use report::{Format, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ncg", version, about = "Hochschild and cyclic homology of finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "markdown")]
    pub format: Format,

    /// Exit with code 3 when the verdict is inconclusive.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Cache directory; overrides NCG_CACHE_DIR.
    #[arg(long, global = true, env = "NCG_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Catalogue name with parameters (`quantum_plane:q=2,max_weight=3`) or a JSON file.
    #[arg(long)]
    pub algebra: String,

    /// Q or F<p>; defaults to Q for catalogue algebras and the file's field otherwise.
    #[arg(long)]
    pub field: Option<FieldDescriptor>,
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    /// Largest tensor degree n.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,

    #[arg(long, requires = "weight_max")]
    pub weight_min: Option<i64>,

    #[arg(long, requires = "weight_min")]
    pub weight_max: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct CyclicArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,

    #[command(flatten)]
    pub window: WindowArgs,

    /// Truncation N of k[u]/u^N; needs n-max >= 2N.
    #[arg(long, default_value_t = 3)]
    pub u_trunc: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check associativity, unit, weight and parity of an algebra.
    Validate(AlgebraArgs),
    /// Hochschild homology ranks.
    Hh {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Negative cyclic homology as a k[u]/u^N module.
    Hc(CyclicArgs),
    /// Periodic cyclic ranks with a stabilization verdict.
    Hp(CyclicArgs),
    /// Hodge filtration on periodic cyclic homology.
    Filtration(CyclicArgs),
    /// Look for finite u-torsion in the stable window.
    Degeneration(CyclicArgs),
    /// Chern character of an idempotent.
    Chern {
        /// An ncg-idempotent/1 file.
        #[arg(long, conflicts_with_all = ["algebra", "element"])]
        idempotent: Option<PathBuf>,
        #[arg(long, requires = "element")]
        algebra: Option<String>,
        /// Comma-separated coefficients on the basis, e.g. `1,0,0,0`.
        #[arg(long, requires = "algebra")]
        element: Option<String>,
        #[arg(long)]
        field: Option<FieldDescriptor>,
        #[arg(long, default_value_t = 3)]
        u_trunc: usize,
    },
    /// The p-power map on HH_0 in characteristic p.
    Ppower {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Also check the p = 2 lift on every basis element.
        #[arg(long)]
        lift: bool,
    },
    /// Homology of the (1 - σ, N) complex on V^{⊗n}.
    GradedPieces {
        #[arg(long)]
        dim_v: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: FieldDescriptor,
    },
    /// Compare free ranks of ∂ + uB and ∂ over a prime field.
    CharpCompare(CyclicArgs),
    #[command(subcommand)]
    Poisson(PoissonCommand),
    /// Glue two algebras along a bimodule and compare Hochschild ranks.
    Glue {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_parser = ["zero", "ground"], default_value = "zero")]
        bimodule: String,
        #[arg(long)]
        field: Option<FieldDescriptor>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Write the glued algebra as an ncg-algebra/1 file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// List the builtin algebras and bivectors.
    Catalogue,
}

#[derive(Args, Debug, Clone)]
pub struct BivectorArgs {
    /// Catalogue bivector (`so3`, `symplectic:pairs=2,hbar=1/2`) or an ncg-bivector/1 file.
    #[arg(long)]
    pub bivector: String,

    #[arg(long, default_value = "Q")]
    pub field: FieldDescriptor,
}

#[derive(Subcommand, Debug)]
pub enum PoissonCommand {
    /// {f, g} for two polynomials.
    Bracket {
        #[command(flatten)]
        bivector: BivectorArgs,
        /// A polynomial such as `x0^2*x1 + 3` or an ncg-form/1 file.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Jacobi identity on monomials up to a degree.
    Jacobi {
        #[command(flatten)]
        bivector: BivectorArgs,
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// 𝓛 = ħ(ι d - d ι) applied to a form such as `x0*dx1`.
    Lie {
        #[command(flatten)]
        bivector: BivectorArgs,
        #[arg(long)]
        form: String,
    },
    /// exp(ι) d exp(-ι) = d + 𝓛 on monomial forms.
    Conjugation {
        #[command(flatten)]
        bivector: BivectorArgs,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// The Hodge star identity for the standard symplectic form.
    Star {
        #[arg(long, default_value_t = 1)]
        pairs: usize,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
    },
    /// Stable ranks of (forms, d + 𝓛).
    Homology {
        #[command(flatten)]
        bivector: BivectorArgs,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
}

fn exit_for(err: &NcgError) -> i32 {
    match err {
        NcgError::Contract(_) => EXIT_VALIDATION,
        _ => EXIT_ERROR,
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// rendered report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((code, text)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(i32, String), NcgError> {
    let inputs = inputs::collect(&cli.command)?;
    let cache = match (&cli.cache_dir, cli.no_cache) {
        (Some(dir), false) => Some(Cache::new(dir)),
        _ => None,
    };
    let key = {
        let command = format!("{:?}|{:?}|{}", cli.command, cli.format, cli.strict);
        let mut parts: Vec<&[u8]> = vec![env!("CARGO_PKG_VERSION").as_bytes(), command.as_bytes()];
        for (name, bytes) in &inputs {
            parts.push(name.as_bytes());
            parts.push(bytes);
        }
        cache::digest(&parts)
    };
    if let Some(c) = &cache {
        match c.get(&key) {
            Lookup::Hit { exit, output } => return Ok((exit, output)),
            Lookup::Miss => {}
            Lookup::Corrupted(why) => {
                let _ = writeln!(err, "warning: ignoring corrupted cache entry {why}; recomputing");
            }
        }
    }
    let mut report = commands::dispatch(&cli.command)?;
    report.inputs = inputs.iter().map(|(n, b)| report::Input { name: n.clone(), sha256: cache::digest(&[b]) }).collect();
    let code = match report.status {
        Status::Ok => EXIT_OK,
        Status::ValidationFailed => EXIT_VALIDATION,
        Status::Inconclusive if cli.strict => EXIT_INCONCLUSIVE,
        Status::Inconclusive => EXIT_OK,
    };
    let text = report::render(&report, cli.format);
    if let Some(c) = &cache {
        if let Err(e) = c.put(&key, code, &text) {
            let _ = writeln!(err, "warning: cache not written ({e}); continuing without it");
        }
    }
    Ok((code, text))
}
