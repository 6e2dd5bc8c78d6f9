//! Sampled correlation statistics per degree.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linear::{linear_corr, Domain};
use super::quad::{hankel_corr, quad_corr};
use super::CorrelationReport;
use crate::error::{Budget, Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::laurent::LaurentSeries;
use crate::quadform::{FqMatrix, QuadPhase};
use crate::sieve::ArithTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Experiment {
    /// `sum_{A_n} mu(f) e(alpha f)`.
    Linear,
    /// `sum_{G_n} mu(f) chi_r(Q(f))` with a random full quadratic polynomial.
    Quadratic,
    /// `sum_{G_n} mu(f) e(alpha f^2 + beta f)`.
    Hankel,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::Linear => "linear",
            Experiment::Quadratic => "quadratic",
            Experiment::Hankel => "hankel",
        })
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Experiment::Linear),
            "quadratic" => Ok(Experiment::Quadratic),
            "hankel" => Ok(Experiment::Hankel),
            _ => Err(Error::Parse(format!("unknown experiment {s:?}; expected linear, quadratic or hankel"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub samples: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    /// Over samples with a nonzero sum; `None` when every sum vanished.
    pub max_exponent: Option<f64>,
    pub mean_exponent: Option<f64>,
    /// Terms per sum, `q^n`.
    pub terms: u64,
    /// `max_abs <= terms`.
    pub triangle_ok: bool,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str =
        "n,samples,max_abs,mean_abs,max_exponent,mean_exponent,terms,triangle_ok";

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
        format!(
            "{},{},{:.6},{:.6},{},{},{},{}",
            self.n,
            self.samples,
            self.max_abs,
            self.mean_abs,
            opt(self.max_exponent),
            opt(self.mean_exponent),
            self.terms,
            self.triangle_ok
        )
    }
}

fn random_elem<R: Rng>(rng: &mut R, ctx: &FieldCtx) -> Fq {
    Fq(rng.gen_range(0..ctx.q()) as u8)
}

fn sample<R: Rng>(
    experiment: Experiment,
    rng: &mut R,
    n: usize,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<CorrelationReport> {
    match experiment {
        Experiment::Linear => {
            let alpha = LaurentSeries::sample_torus_with(rng, n + 1, ctx);
            linear_corr(&alpha, n, Domain::Monic, arith, ctx, budget)
        }
        Experiment::Quadratic => {
            if ctx.p() == 2 {
                return Err(Error::RequiresOddCharacteristic("quadratic correlation (assume p > 2)"));
            }
            let mut m = FqMatrix::zero(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let v = random_elem(rng, ctx);
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            let b = (0..n).map(|_| random_elem(rng, ctx)).collect();
            let c = random_elem(rng, ctx);
            let r = Fq(rng.gen_range(1..ctx.q()) as u8);
            quad_corr(&QuadPhase::new(m, b, c, r)?, arith, ctx, budget)
        }
        Experiment::Hankel => {
            let alpha = LaurentSeries::sample_torus_with(rng, 2 * n, ctx);
            let beta = LaurentSeries::sample_torus_with(rng, n, ctx);
            hankel_corr(&alpha, &beta, n, arith, ctx, budget)
        }
    }
}

/// One row per `n` in `ns`; phases are drawn from a generator seeded by
/// `seed` and `n`, so rows do not depend on which other `n` are swept.
pub fn exponent_sweep(
    experiment: Experiment,
    ns: &[usize],
    samples: usize,
    seed: u64,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<Vec<SweepRow>> {
    if experiment == Experiment::Quadratic && ctx.p() == 2 {
        return Err(Error::RequiresOddCharacteristic("quadratic correlation (assume p > 2)"));
    }
    if samples == 0 || ns.is_empty() {
        return Ok(Vec::new());
    }
    let n_max = *ns.iter().max().expect("nonempty");
    let arith = ArithTable::build(ctx, n_max, budget)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let (mut max_abs, mut sum_abs) = (0f64, 0f64);
        let mut exps = Vec::new();
        let mut terms = 0;
        for _ in 0..samples {
            let r = sample(experiment, &mut rng, n, &arith, ctx, budget)?;
            max_abs = max_abs.max(r.abs);
            sum_abs += r.abs;
            terms = r.terms;
            exps.extend(r.empirical_exponent);
        }
        let max_exponent = exps.iter().copied().reduce(f64::max);
        let mean_exponent = (!exps.is_empty()).then(|| exps.iter().sum::<f64>() / exps.len() as f64);
        rows.push(SweepRow {
            n,
            samples,
            max_abs,
            mean_abs: sum_abs / samples as f64,
            max_exponent,
            mean_exponent,
            terms,
            triangle_ok: max_abs <= terms as f64 + 1e-9,
        });
    }
    Ok(rows)
}
