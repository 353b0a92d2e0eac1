mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "minplex", version, about = "Minimal complexes of projectives over finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Table, global = true)]
    pub emit: Emit,
    /// Accept extension polynomials whose irreducibility cannot be certified.
    #[arg(long, global = true)]
    pub assume_irreducible: bool,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Table,
    Records,
    Repr,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a spec file and summarize the algebra and its contents.
    Validate { spec: PathBuf },
    /// Operations on a single complex (or pair of complexes).
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Base change along the field extension declared in the spec file.
    #[command(subcommand)]
    Extension(ExtensionCmd),
    /// Exhaustive enumeration and the probes built on it.
    #[command(subcommand)]
    Classify(ClassifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    /// Homotopy-minimal model with a verified equivalence.
    Minimize { spec: PathBuf, name: String },
    /// Dimension vectors of the cohomology modules.
    Cohomology { spec: PathBuf, name: String },
    /// Cohomological length, width and range.
    Range { spec: PathBuf, name: String },
    /// Brutal truncation keeping degrees >= AT.
    Truncate {
        spec: PathBuf,
        name: String,
        #[arg(long)]
        at: i64,
    },
    /// Minimal projective resolution of a module or of a complex.
    Resolve {
        spec: PathBuf,
        name: String,
        /// Number of differentials for module resolutions.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Dimensions of chain maps, null-homotopic maps and Hom in the homotopy category.
    Hom { spec: PathBuf, source: String, target: String },
    /// Isomorphism test with a certificate.
    Iso { spec: PathBuf, left: String, right: String },
    /// Splits a complex into indecomposable summands.
    Decompose { spec: PathBuf, name: String },
}

#[derive(Subcommand, Debug)]
pub enum ExtensionCmd {
    /// Base change X ⊗ K of a complex over the base field.
    Tensor { spec: PathBuf, name: String },
    /// Restriction of a complex over the extension field.
    Restrict { spec: PathBuf, name: String },
    /// The isomorphism F(X ⊗ K) ≅ X^l.
    UnitIso { spec: PathBuf, name: String },
    /// Summand witnesses between X and X ⊗ K (or Y and F(Y) with --down).
    Witnesses {
        spec: PathBuf,
        name: String,
        #[arg(long)]
        down: bool,
    },
    /// Range bounds for the summands of X ⊗ K (or F(Y) with --down).
    Bounds {
        spec: PathBuf,
        name: String,
        #[arg(long)]
        down: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BoundArgs {
    /// Complexes live in degrees 0..=M.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Largest multiplicity of each indecomposable projective per degree.
    #[arg(long, default_value_t = 1)]
    pub max_mult: usize,
    /// Largest total dimension over the base field.
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Refuse searches with more candidates than this.
    #[arg(long)]
    pub cap: Option<u128>,
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCmd {
    /// Indecomposable minimal complexes up to isomorphism.
    Enumerate {
        spec: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Number of objects per cohomology dimension vector.
    Discreteness {
        spec: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Only count objects whose cohomology dimensions are at most this.
        #[arg(long)]
        coh_bound: Option<usize>,
    },
    /// Indecomposables per cohomological range.
    Histogram {
        spec: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Instantiates a one-parameter family and checks its members are pairwise distinct.
    Family {
        spec: PathBuf,
        name: String,
        /// Use the parameters 0..N instead of the samples listed in the file.
        #[arg(long)]
        samples: Option<i64>,
    },
    /// Counts per degree bound, with extension and family coherence when available.
    Dichotomy {
        spec: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        family: Option<String>,
        /// Parameters 0..N for the family.
        #[arg(long)]
        samples: Option<i64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            out.print(cli.global.emit);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
