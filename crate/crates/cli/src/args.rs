use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "mobius-fq", version, about = "Möbius correlation experiments over F_q[t]")]
pub struct Cli {
    /// Field as `p` or `p^s`.
    #[arg(long, global = true, default_value = "2")]
    pub field: String,
    /// Maximum number of items any single enumeration may visit.
    #[arg(long, global = true, default_value_t = 1 << 22, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// JSON file with default values for any long flag; flags given on the
    /// command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sum of Lambda over A_l against q^l.
    Pnt(PntArgs),
    /// Sum of mu over A_n against the zeta prediction.
    MobiusSums(NmaxArgs),
    /// Mean of tau^2 over A_n: series, brute force and the 4n^3 bound.
    DivisorMoments(NmaxArgs),
    /// Coefficients of the L-polynomial of every character of G_{l,Q}.
    HayesLfunc(HayesArgs),
    /// Inverse-root moduli of every non-principal L-polynomial.
    RhCheck(HayesArgs),
    /// Coefficients of 1/L against sums of mu(f) lambda(f).
    EulerCheck(HayesArgs),
    /// Exact mu sums over A_n coprime to Q against the principal series.
    PrincipalCheck(HayesArgs),
    /// Sums of Lambda(f) lambda(f) against power sums of inverse roots.
    LogderivCheck(HayesArgs),
    /// sum mu(f) e(alpha f) over A_n or G_n.
    LinearCorr(LinearArgs),
    /// sum over G_n of mu(f) chi_r(Q(f)) for a quadratic polynomial Q.
    QuadCorr(QuadArgs),
    /// sum over G_n of mu(f) e(alpha f^2 + beta f).
    HankelCorr(HankelArgs),
    /// Pointwise Vaughan audit and type I / type II decomposition.
    VaughanAudit(VaughanArgs),
    /// Means of random quadratic phases against q^(-rank/2).
    GaussSums(GaussArgs),
    /// Common zeros of random families of quadratic forms.
    Isotropic(IsotropicArgs),
    /// Distribution of rank M_{a,b} for a Hankel matrix.
    RankStats(RankArgs),
    /// Sampled correlation sums and empirical exponents per degree.
    ExponentSweep(SweepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        let i = match self {
            Command::Pnt(_) => 0,
            Command::MobiusSums(_) => 1,
            Command::DivisorMoments(_) => 2,
            Command::HayesLfunc(_) => 3,
            Command::RhCheck(_) => 4,
            Command::EulerCheck(_) => 5,
            Command::PrincipalCheck(_) => 6,
            Command::LogderivCheck(_) => 7,
            Command::LinearCorr(_) => 8,
            Command::QuadCorr(_) => 9,
            Command::HankelCorr(_) => 10,
            Command::VaughanAudit(_) => 11,
            Command::GaussSums(_) => 12,
            Command::Isotropic(_) => 13,
            Command::RankStats(_) => 14,
            Command::ExponentSweep(_) => 15,
        };
        Self::NAMES[i]
    }

    pub const NAMES: [&'static str; 16] = [
        "pnt",
        "mobius-sums",
        "divisor-moments",
        "hayes-lfunc",
        "rh-check",
        "euler-check",
        "principal-check",
        "logderiv-check",
        "linear-corr",
        "quad-corr",
        "hankel-corr",
        "vaughan-audit",
        "gauss-sums",
        "isotropic",
        "rank-stats",
        "exponent-sweep",
    ];
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PntArgs {
    #[arg(long, default_value_t = 10)]
    pub lmax: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NmaxArgs {
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HayesArgs {
    /// Number of leading coefficients in the relation.
    #[arg(long)]
    pub l: usize,
    /// Monic modulus Q as coefficient codes, constant term first.
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub modulus: String,
    /// Highest degree summed; defaults to l + deg Q + 2.
    #[arg(long)]
    pub nmax: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainArg {
    /// Monic polynomials of degree n.
    Monic,
    /// All polynomials of degree below n.
    All,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LinearArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = DomainArg::Monic)]
    pub domain: DomainArg,
    /// Series `m:c_m,...`; sampled from the seed when absent.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Also check the G_n to A_k reduction.
    #[arg(long)]
    pub reduction: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuadArgs {
    #[arg(long)]
    pub n: usize,
    /// Matrix CSV file; a random symmetric matrix when absent.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Draw a random linear and constant part.
    #[arg(long)]
    pub linear: bool,
    /// Additive character index.
    #[arg(long, default_value_t = 1)]
    pub r: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HankelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    /// Also evaluate through the Hankel matrix (odd p).
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VaughanArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Cutoff for a; defaults to floor(n/18).
    #[arg(long)]
    pub u: Option<usize>,
    /// Cutoff for b; defaults to floor(n/18).
    #[arg(long)]
    pub v: Option<usize>,
    /// Sampled linear phases decomposed.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GaussArgs {
    /// Largest dimension; dimensions cycle through 1..=n.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Add random linear and constant parts.
    #[arg(long)]
    pub linear: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IsotropicArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Number of forms per system.
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormArg {
    Average,
    Sum,
    Left,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RankArgs {
    /// Size of the Hankel matrix.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Rank threshold.
    #[arg(long)]
    pub h: usize,
    #[arg(long)]
    pub alpha: Option<String>,
    /// Sampled pairs; 0 enumerates every pair.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    /// Pair form; average for odd p, left for p = 2 by default.
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_parser = ["linear", "quadratic", "hankel"])]
    pub experiment: String,
    #[arg(long)]
    pub nmin: usize,
    #[arg(long)]
    pub nmax: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}
