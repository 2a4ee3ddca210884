use clap::{Args, Parser, Subcommand, ValueEnum};
use resolvent::sample::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(
    name = "resolvent",
    version,
    about = "Bounds, polar cones and ledger audits for resolvent degree"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "RESOLVENT_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Working precision, in bits, for interval-checked real comparisons.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact bounding functions and tables.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Sweeps of identities and inequalities.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Randomized property suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Arithmetic audit of the plane constructions.
    #[command(subcommand)]
    Audit(AuditCmd),
    /// Numeric plane finding.
    #[command(subcommand)]
    Find(FindCmd),
    /// Tschirnhaus hypersurfaces of a random polynomial.
    #[command(subcommand)]
    Tschirnhaus(TschirnhausCmd),
    /// Numeric rehearsal of the plane constructions.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
}

#[derive(Args, Debug)]
pub struct M {
    #[arg(long)]
    pub m: u64,
}

#[derive(Args, Debug)]
pub struct Dk {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Args, Debug)]
pub struct Range {
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// G(m).
    G(M),
    /// F(m).
    F(M),
    /// theta(d,k).
    Theta(Dk),
    /// phi(d,k) and the branch attaining it.
    Phi(Dk),
    /// Wolfson's Phi(d,k).
    WolfsonPhi(Dk),
    /// psi(d,k)_0..psi(d,k)_{d-1}.
    Psi(Dk),
    /// Parameter and moduli space dimensions for degree d in P^r.
    Dims {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
    },
    /// G, F and their ratio for m in a range.
    Table1(Range),
    /// Same rows as table1, intended for the ratio range 19..59.
    Table2(Range),
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Combinatorial identity, theta minimality and the theta upper bound.
    Identities {
        #[arg(long, default_value_t = 60)]
        max: u64,
    },
    /// Stirling bounds (a <= max) and the log C_d, log c_d bounds (d <= 40).
    Analytic {
        #[arg(long, default_value_t = 500)]
        max: u64,
        #[arg(long, default_value_t = 40)]
        d_max: u64,
    },
    /// Monotonicity of the psi chain for m <= max.
    Monotone {
        #[arg(long, default_value_t = 40)]
        max: u64,
    },
    /// G <= F and the equality set for m <= max.
    Comparison {
        #[arg(long, default_value_t = 200)]
        max: u64,
        /// Also check F/G > d+1 at m = 2d^2+11d+15 for d = 11..13.
        #[arg(long)]
        checkpoints: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// The polar expansion identity over the rationals.
    PolarIdentity {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Lines through cone points lie on the variety.
    Bertini {
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AuditCmd {
    /// Audit one proof case: n6, k1..k9, wolfson, or all.
    Ledger {
        #[arg(long)]
        case: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FindCmd {
    /// A k-plane on random quadrics in P^dim.
    Plane {
        #[arg(long)]
        quadrics: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TschirnhausCmd {
    /// b_1..b_upto for a random degree-n polynomial.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        upto: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum PipelineCmd {
    /// Find a point (depth 0), line (1) or plane (2) on tau_{1,2,3}.
    Run {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
    },
}
