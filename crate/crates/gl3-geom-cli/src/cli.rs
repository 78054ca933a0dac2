//! Argument grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Root data, identities, weights, orbit classes, weighted orbital integrals
/// and partial zeta data for GL(3). Every command writes JSON to stdout.
#[derive(Debug, Parser)]
#[command(name = "gl3-geom", version, allow_negative_numbers = true)]
pub struct Cli {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Indentation width of the JSON output; 0 prints a single line.
    #[arg(long = "json-indent", global = true, default_value_t = 2, value_name = "N")]
    pub json_indent: usize,
    /// Seed of every random stream.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Also record wall time in the JSON output (it always goes to stderr).
    #[arg(long, global = true)]
    pub timing: bool,
    /// The command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Top-level commands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data of GL(3).
    Rootdata {
        /// What to print.
        #[command(subcommand)]
        action: RootdataAction,
    },
    /// Machine verification of the cone-indicator identities.
    Verify {
        /// What to verify.
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Convex-hull and norm weights.
    Weight {
        /// Which weight.
        #[command(subcommand)]
        action: WeightAction,
    },
    /// Orbit classification of rational matrices.
    Orbit {
        /// What to do.
        #[command(subcommand)]
        action: OrbitAction,
    },
    /// Weighted orbital integrals of a Gaussian test function.
    Woi(WoiArgs),
    /// Partial zeta value and derivative.
    Zeta(ZetaArgs),
    /// Unipotent coefficients assembled from volumes and zeta data.
    Coeff(CoeffArgs),
    /// The local log-norm integral and its residue-class oracle.
    Locint(LocintArgs),
    /// Every acceptance criterion, with one verdict each.
    Suite(SuiteArgs),
}

/// `rootdata` actions.
#[derive(Debug, Subcommand)]
pub enum RootdataAction {
    /// Roots, weights, parabolics and the Weyl group.
    Dump,
}

/// `verify` actions.
#[derive(Debug, Subcommand)]
pub enum VerifyAction {
    /// The alternating-sum identities of the cone indicators.
    Lemmas {
        /// Which identity.
        #[arg(long, value_enum, default_value_t = Identity::All)]
        which: Identity,
        /// Random samples per check.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

/// Selectable identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    /// σ from its alternating sum equals its direct characterisation.
    Sigma,
    /// 1 + Σ_{P ⊇ P1, P ≠ G} (−1)^{dim A_P/Z} τ̂_P = τ̂′_{P1}.
    TauHatPrime,
    /// The parabolic Möbius identity.
    Moebius,
    /// All three.
    All,
}

/// Method of the hull volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HullMethod {
    /// Convex hull and shoelace area.
    Direct,
    /// Extrapolated chamber sum.
    Limit,
}

/// `weight` actions.
#[derive(Debug, Subcommand)]
pub enum WeightAction {
    /// Area of the hull of Y_s = s⁻¹(T − H_s).
    Hull {
        /// Truncation point T as `a,b,c`.
        #[arg(long = "T", allow_hyphen_values = true)]
        t: String,
        /// Family H_s as `s:x,y,z;...` for all six one-line labels s.
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        /// Volume method.
        #[arg(long, value_enum, default_value_t = HullMethod::Direct)]
        method: HullMethod,
    },
    /// The norm weight c_{M₀}(n).
    Cm0 {
        /// Entries (n₁, n₂, n₃) of the unipotent element as `n1,n2,n3`.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
}

/// `orbit` actions.
#[derive(Debug, Subcommand)]
pub enum OrbitAction {
    /// Kind, eigenvalues, subtype and Jordan parts of γ.
    Classify {
        /// Nine rationals, row-major, comma-separated.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "file", conflicts_with = "file")]
        matrix: Option<String>,
        /// File with one matrix per line.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
}

/// Which weighted orbital integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WoiKind {
    /// J_{M₀}(1, f).
    #[value(name = "jm0")]
    Jm0,
    /// J_{M₂₁}(1, f).
    #[value(name = "jm21")]
    Jm21,
    /// J^T_{M₀}(z, f).
    #[value(name = "jm0T")]
    Jm0T,
    /// J^T_{M₂₁}(z, f).
    #[value(name = "jm21T")]
    Jm21T,
    /// J_G of the minimal unipotent class.
    #[value(name = "jgmin")]
    Jgmin,
    /// J_G of the regular unipotent class.
    #[value(name = "jgreg")]
    Jgreg,
}

/// Arguments of `woi`.
#[derive(Debug, Args)]
pub struct WoiArgs {
    /// The integral.
    #[arg(value_enum)]
    pub kind: WoiKind,
    /// Central eigenvalue z, a rational.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub z: String,
    /// Scalar center of the Gaussian test function, a rational.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub center: String,
    /// Width of the Gaussian test function.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Coefficient of e₁ − e₂ in T.
    #[arg(long = "T1", default_value_t = 0.0)]
    pub t1: f64,
    /// Coefficient of e₂ − e₃ in T.
    #[arg(long = "T2", default_value_t = 0.0)]
    pub t2: f64,
    /// Absolute and relative tolerance (overrides the configuration).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Additive constant of the weight; omitted when absent.
    #[arg(long)]
    pub constant: Option<f64>,
    /// For jm21T: the weight of z·u integrated over N₀.
    #[arg(long = "with-u")]
    pub with_u: bool,
}

/// Arguments of `zeta`.
#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// The point s as `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Finite primes of S, comma-separated; ∞ is always included.
    #[arg(long = "S", default_value = "")]
    pub set: String,
    /// Target precision (overrides the configuration).
    #[arg(long)]
    pub prec: Option<f64>,
}

/// Arguments of `coeff`; each flag overrides the configuration.
#[derive(Debug, Args)]
pub struct CoeffArgs {
    /// Finite primes of S, comma-separated.
    #[arg(long = "S", default_value = "")]
    pub set: String,
    /// Target precision.
    #[arg(long)]
    pub prec: Option<f64>,
    /// vol_M0.
    #[arg(long = "volM0")]
    pub vol_m0: Option<f64>,
    /// vol_M21.
    #[arg(long = "volM21")]
    pub vol_m21: Option<f64>,
    /// vol_G.
    #[arg(long = "volG")]
    pub vol_g: Option<f64>,
    /// c_ℚ.
    #[arg(long = "cQ")]
    pub c_q: Option<f64>,
    /// The constant C.
    #[arg(long = "C")]
    pub c: Option<f64>,
    /// `inside` or `outside`.
    #[arg(long = "ln2-placement")]
    pub ln2_placement: Option<String>,
}

/// Arguments of `locint`.
#[derive(Debug, Args)]
pub struct LocintArgs {
    /// The prime p.
    #[arg(long)]
    pub p: u64,
    /// Depth k of the residue-class oracle.
    #[arg(long = "oracle-depth", default_value_t = 10)]
    pub oracle_depth: u32,
}

/// Arguments of `suite`.
#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Quadrature tolerance (overrides the configuration).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated criterion numbers to run; all when absent.
    #[arg(long)]
    pub only: Option<String>,
}
