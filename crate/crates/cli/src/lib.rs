//! Command-line front end for `cy3kit`.

pub mod commands;
pub mod input;
pub mod report;
pub mod ring;
pub mod suite;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Failure, Format, Report};
use ring::RingTag;

#[derive(Parser, Debug)]
#[command(name = "cy3kit", version, about = "Exact computations for Calabi-Yau threefolds in positive characteristic")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PolyArgs {
    /// Polynomial literal, e.g. "x0^5 + x1^5 + x2^5 + x3^5 + x4^5".
    #[arg(long)]
    pub poly: Option<String>,
    /// Polynomial file, or the name of a bundled fixture.
    #[arg(long)]
    pub file: Option<String>,
    /// Variable names (comma separated) or a count for x0, x1, ...
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ActionArgs {
    /// Order of the cyclic group.
    #[arg(long)]
    pub d: u32,
    /// Weights, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogKind {
    /// All coefficients 1 (the multiplicative group).
    Multiplicative,
    /// `l(t) = t`.
    Additive,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Logarithm coefficients beta_m of a Calabi-Yau hypersurface.
    Beta {
        #[arg(long, default_value = "Z")]
        ring: RingTag,
        #[command(flatten)]
        input: PolyArgs,
        /// A single index m.
        #[arg(long)]
        m: Option<u32>,
        /// All of beta_1 .. beta_t.
        #[arg(long, default_value_t = 5)]
        t: u32,
    },
    /// Frobenius coefficient of a double cover branched along W = 0.
    BetaDouble {
        #[arg(long, default_value = "Z")]
        ring: RingTag,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        input: PolyArgs,
    },
    /// Ordinarity from the Frobenius coefficient.
    Ordinary {
        #[arg(long, default_value = "Z")]
        ring: RingTag,
        #[arg(long)]
        p: u64,
        /// Treat the input as the branch locus of a double cover.
        #[arg(long)]
        double: bool,
        #[command(flatten)]
        input: PolyArgs,
    },
    /// Height of a formal group given by its logarithm.
    Height {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        h_max: u32,
        /// A standard logarithm.
        #[arg(long, value_enum)]
        log: Option<LogKind>,
        /// Explicit coefficients beta_1, beta_2, ... over Q.
        #[arg(long, allow_hyphen_values = true)]
        betas: Option<String>,
        /// Truncation for --log and polynomial inputs (default p^h_max + 1).
        #[arg(long)]
        t: Option<u32>,
        #[command(flatten)]
        input: PolyArgs,
    },
    /// Logarithm of the Frobenius image: beta'_n = beta_{np}.
    FrobLog {
        #[arg(long, default_value = "Z")]
        ring: RingTag,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        betas: Option<String>,
        #[arg(long)]
        t: Option<u32>,
        #[command(flatten)]
        input: PolyArgs,
    },
    /// Molien series of a diagonal cyclic action.
    Molien {
        #[command(flatten)]
        action: ActionArgs,
        /// Last degree.
        #[arg(long)]
        to: usize,
    },
    /// Invariant monomials of one degree.
    Invariants {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        degree: u32,
        /// Variable names (default X1, X2, ...).
        #[arg(long)]
        names: Option<String>,
    },
    /// Whether invariants of low degree generate the invariant monomials.
    Generated {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long)]
        gen_max: u32,
    },
    /// Fixed locus of the action on projective space.
    FixedPoints {
        #[command(flatten)]
        action: ActionArgs,
    },
    /// Whether an invariant hypersurface avoids every fixed point.
    Freeness {
        #[command(flatten)]
        action: ActionArgs,
        #[command(flatten)]
        input: PolyArgs,
    },
    /// Symbolic check of the Tate-Oort group law.
    TateOort {
        #[arg(long)]
        p: u64,
    },
    /// Incidence of a plane arrangement in P^3.
    Arrangement {
        #[arg(long, default_value = "O")]
        ring: RingTag,
        /// Linear forms, one per line.
        #[arg(long)]
        file: String,
        /// Points to check, one per line.
        #[arg(long)]
        points: Option<String>,
    },
    /// Compare an arrangement with its reduction mod p.
    ReduceCompare {
        #[arg(long, default_value = "O")]
        ring: RingTag,
        #[arg(long)]
        file: String,
        #[arg(long)]
        p: u64,
    },
    /// Derive what the comparison theorems force for a cohomology profile.
    Hodge {
        /// Profile file, or a bundled scenario name.
        #[arg(long)]
        scenario: String,
    },
    /// Lift a root of f from R[eps]/eps^n to R[eps]/eps^(n+1).
    RootLift {
        #[arg(long, default_value = "Z")]
        ring: RingTag,
        /// Coefficients of f, lowest degree first.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// The root's eps-expansion r_0, r_1, ...
        #[arg(long, allow_hyphen_values = true)]
        root: String,
    },
    /// de Rham dimension from mod-p Betti numbers when ie < p - 1.
    Caruso {
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        degree: usize,
    },
    /// Run every bundled fixture.
    Fixtures,
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    commands::dispatch(&cli.command)
}

/// Parse, run and render; returns the text to print and the exit code.
pub fn main_with_args<I, T>(args: I) -> (String, u8)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { report::EXIT_MALFORMED } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match run(&cli) {
        Ok(r) => (r.render(cli.format), 0),
        Err(f) => (f.render(cli.format), f.code),
    }
}
