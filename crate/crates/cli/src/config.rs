use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use salkit::arrangement::{ArrangementSpec, FamilyName};
use salkit::Twist;

/// Exact combinatorics of hyperplane arrangements and their Salvetti complexes.
#[derive(Debug, Parser)]
#[command(name = "salkit", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face lattice counts (and optionally every covector).
    Faces {
        #[command(flatten)]
        arrangement: ArrangementArgs,
        /// List every face covector.
        #[arg(long)]
        covectors: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cells and incidence numbers of the Salvetti complex; with `--p`, also
    /// the twisted quotient by the symmetric group.
    Salvetti {
        #[command(flatten)]
        arrangement: ArrangementArgs,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_enum, default_value_t = TwistArg::Sign)]
        twist: TwistArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Homology of the twisted quotient complex over F_p.
    Homology {
        #[command(flatten)]
        arrangement: ArrangementArgs,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = TwistArg::Sign)]
        twist: TwistArg,
        /// Homology of the Salvetti complex itself, without the quotient.
        #[arg(long)]
        unquotiented: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The chain map induced by a subarrangement inclusion: surjectivity,
    /// kernel complex and induced maps on homology.
    Compare {
        #[command(flatten)]
        arrangement: ArrangementArgs,
        #[command(flatten)]
        sub: SubArrangementArgs,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = TwistArg::Sign)]
        twist: TwistArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full bundle for braid(4) and center_of_mass(4,2) at p = 2, 3, 5 plus
    /// any extra primes, with all checks; exits 1 if a check fails.
    Report {
        /// Extra primes to include.
        #[arg(long)]
        p: Vec<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Braid,
    #[value(name = "center_of_mass", alias = "center-of-mass")]
    CenterOfMass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TwistArg {
    Sign,
    Trivial,
}

impl From<TwistArg> for Twist {
    fn from(t: TwistArg) -> Twist {
        match t {
            TwistArg::Sign => Twist::Sign,
            TwistArg::Trivial => Twist::Trivial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct ArrangementArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// JSON arrangement file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SubArrangementArgs {
    #[arg(long, value_enum)]
    pub sub_family: Option<FamilyArg>,
    /// Defaults to `--n`.
    #[arg(long)]
    pub sub_n: Option<usize>,
    #[arg(long)]
    pub sub_l: Option<usize>,
    #[arg(long)]
    pub sub_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Draw braid generators as box diagrams in text output.
    #[arg(long)]
    pub boxes: bool,
}

/// Failures, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input: exit code 2.
    Usage(String),
    /// A check or internal invariant failed: exit code 1.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

impl From<salkit::Error> for CliError {
    fn from(e: salkit::Error) -> Self {
        match e {
            salkit::Error::Inconsistent(_) => CliError::Check(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub const DEFAULT_MAX_DIM: usize = 6;

pub fn max_dim() -> CliResult<usize> {
    match std::env::var("SALKIT_MAX_DIM") {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("SALKIT_MAX_DIM must be a positive integer, got {v:?}"))),
    }
}

fn spec_from(
    family: Option<FamilyArg>,
    n: Option<usize>,
    l: Option<usize>,
    file: Option<&PathBuf>,
    prefix: &str,
) -> CliResult<ArrangementSpec> {
    match (family, file) {
        (Some(_), Some(_)) => Err(CliError::Usage(format!("give either --{prefix}family or --{prefix}file, not both"))),
        (None, None) => Err(CliError::Usage(format!("an arrangement is required: --{prefix}family or --{prefix}file"))),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            ArrangementSpec::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        (Some(f), None) => {
            let n = n.ok_or_else(|| CliError::Usage(format!("--{prefix}n is required with --{prefix}family")))?;
            let family = match f {
                FamilyArg::Braid => FamilyName::Braid,
                FamilyArg::CenterOfMass => {
                    if l.is_none() {
                        return Err(CliError::Usage(format!("--{prefix}l is required for center_of_mass")));
                    }
                    FamilyName::CenterOfMass
                }
            };
            Ok(ArrangementSpec::Family { family, n, l })
        }
    }
}

impl ArrangementArgs {
    pub fn spec(&self) -> CliResult<ArrangementSpec> {
        spec_from(self.family, self.n, self.l, self.file.as_ref(), "")
    }
}

impl SubArrangementArgs {
    pub fn spec(&self, default_n: Option<usize>) -> CliResult<ArrangementSpec> {
        spec_from(self.sub_family, self.sub_n.or(default_n), self.sub_l, self.sub_file.as_ref(), "sub-")
    }
}

/// Everything a command needs, validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub arrangement: Option<ArrangementSpec>,
    pub sub: Option<ArrangementSpec>,
    pub p: Option<u32>,
    pub extra_primes: Vec<u32>,
    pub twist: Twist,
    pub unquotiented: bool,
    pub covectors: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub boxes: bool,
    pub max_dim: usize,
}

impl RunConfig {
    pub fn new(output: &OutputArgs) -> CliResult<Self> {
        Ok(RunConfig {
            arrangement: None,
            sub: None,
            p: None,
            extra_primes: Vec::new(),
            twist: Twist::Sign,
            unquotiented: false,
            covectors: false,
            format: output.format,
            out: output.out.clone(),
            boxes: output.boxes,
            max_dim: max_dim()?,
        })
    }

    pub fn prime(&self) -> CliResult<u32> {
        let p = self.p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
        check_prime(p)
    }
}

pub fn check_prime(p: u32) -> CliResult<u32> {
    if salkit::exactla::is_prime(p as u64) {
        Ok(p)
    } else {
        Err(CliError::Usage(format!("--p {p} is not a prime")))
    }
}
