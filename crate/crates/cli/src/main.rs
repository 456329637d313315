//! `minifold`: replays the exact computations behind the minifold and
//! fake-projective-plane arguments.

mod commands;
mod expr;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minifold_core::atlas::DATA_ENV_VAR;
use minifold_core::lefschetz::Branch;
use minifold_core::Result;

use commands::{AtlasQuery, Expect};
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "minifold", version, about = "Exact replays of exceptional-collection and fake-plane computations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomly generated test data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Atlas CSV to use instead of the shipped table.
    #[arg(long, global = true, env = DATA_ENV_VAR)]
    data: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    /// Named profile: wilson, fake-plane, fake-pn:N, pn:N.
    #[arg(long)]
    profile: Option<String>,

    /// Polynomial literal: ascending coefficients `1,3/2,1/2` or roots `1/2*(k+1)(k+2)`.
    #[arg(long, conflicts_with = "profile")]
    poly: Option<String>,
}

impl ProfileArgs {
    fn resolve(&self) -> Result<minifold_core::eulerform::HilbertProfile> {
        commands::profile(self.profile.as_deref(), self.poly.as_deref())
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BranchArg {
    Standard,
    Conjugate,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Standard => Branch::Standard,
            BranchArg::Conjugate => Branch::Conjugate,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Wilson,
    Keum,
    Equivariant,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gram matrix of the Euler pairing on a twist sequence.
    Gram {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Comma-separated twists (default 0..=n).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        twists: Option<Vec<i64>>,
        /// Reduce entries modulo this prime.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Check det(A_P) = (n! p_n)^(n+1) on a profile and on random polynomials.
    Detcheck {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Number of random polynomials of degree n.
        #[arg(long, default_value_t = 100)]
        random: usize,
        /// Number of random polynomials of degree below n.
        #[arg(long, default_value_t = 50)]
        degenerate: usize,
    },
    /// Exhaustive semi-orthonormal basis search over F_p.
    Sonb {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        twists: Option<Vec<i64>>,
        #[arg(long = "mod")]
        modulus: u64,
        /// Restrict the first vector to Serre-orbit representatives.
        #[arg(long)]
        serre: bool,
        /// Explore first choices on all cores.
        #[arg(long)]
        parallel: bool,
        /// Fail unless the search ends this way.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Serre operator S = A^-1 A^t and its order.
    Serre {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        twists: Option<Vec<i64>>,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Give up on the order after this many powers.
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Fixed-point solutions and twisted traces for the order-7 automorphism.
    Lefschetz {
        #[arg(long, value_enum, default_value = "standard")]
        branch: BranchArg,
        /// Twists k for the trace on H0(O(k)).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,4")]
        k: Vec<i64>,
    },
    /// Character table of the order-21 group.
    Chartable,
    /// Decompose a class function, or classify a 3-dimensional representation.
    Decompose {
        /// Five comma-separated values on 1, σ, σ³, τ, τ² (e.g. `3,b,bbar,0,0`).
        #[arg(long)]
        character: Option<String>,
        /// Trace of σ on a representation of dimension --dim.
        #[arg(long)]
        classify_h0: Option<String>,
        #[arg(long, default_value_t = 3)]
        dim: u32,
    },
    /// Query the fake projective plane table.
    Atlas {
        #[arg(long)]
        aut: Option<String>,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        three_torsion_free: bool,
        #[arg(long)]
        k_phantom: bool,
        /// Print the table as CSV.
        #[arg(long)]
        dump: bool,
    },
    /// End-to-end replays.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, value_enum, default_value = "standard")]
        branch: BranchArg,
    },
}

fn run(cli: &Cli) -> Result<Option<Report>> {
    let data = cli.data.as_deref();
    let report = match &cli.command {
        Command::Gram { profile, twists, modulus } => {
            commands::gram(&profile.resolve()?, twists.as_deref(), *modulus)?
        }
        Command::Detcheck { profile, random, degenerate } => {
            let p = if profile.profile.is_some() || profile.poly.is_some() {
                Some(profile.resolve()?)
            } else {
                None
            };
            commands::detcheck(p.as_ref(), *random, *degenerate, cli.seed)?
        }
        Command::Sonb { profile, twists, modulus, serre, parallel, expect } => {
            commands::sonb(&profile.resolve()?, twists.as_deref(), *modulus, *serre, *parallel, *expect)?
        }
        Command::Serre { profile, twists, modulus, bound } => {
            commands::serre(&profile.resolve()?, twists.as_deref(), *modulus, *bound)?
        }
        Command::Lefschetz { branch, k } => commands::lefschetz_cmd((*branch).into(), k)?,
        Command::Chartable => commands::chartable()?,
        Command::Decompose { character, classify_h0, dim } => {
            commands::decompose_cmd(character.as_deref(), classify_h0.as_deref(), *dim)?
        }
        Command::Atlas { aut, count, three_torsion_free, k_phantom, dump } => {
            if *dump {
                print!("{}", commands::atlas_dump(data)?);
                return Ok(None);
            }
            let q = AtlasQuery {
                aut: aut.as_deref(),
                three_torsion_free: *three_torsion_free,
                k_phantom: *k_phantom,
                count: *count || (aut.is_none() && !*three_torsion_free && !*k_phantom),
            };
            commands::atlas_cmd(data, &q)?
        }
        Command::Reproduce { target, branch } => match target {
            Target::Wilson => commands::reproduce_wilson()?,
            Target::Keum => commands::reproduce_keum((*branch).into())?,
            Target::Equivariant => commands::reproduce_equivariant()?,
        },
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(report)) => {
            print!("{}", report.render(cli.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
