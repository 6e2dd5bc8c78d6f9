//! `sum mu(f) e(alpha f)` over A_n or G_n.

use serde::Serialize;

use super::{weighted_histogram, CorrelationReport};
use crate::error::{Budget, Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::histogram::ExpHistogram;
use crate::laurent::LaurentSeries;
use crate::quadform::{kernel::quadratic_values, FqMatrix};
use crate::sieve::ArithTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Domain {
    /// A_n, indexed by the coefficients below the leading one.
    Monic,
    /// G_n, indexed by all `n` coefficients.
    All,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Monic => "A_n",
            Domain::All => "G_n",
        }
    }
}

/// Exponents of `e(alpha f)` in enumeration order. `(alpha f)_{-1}` is the
/// linear form `sum_i f_i alpha_{-1-i}`, plus `alpha_{-1-n}` for the
/// leading 1 of a monic `f`.
pub fn linear_exponents(
    alpha: &LaurentSeries,
    n: usize,
    domain: Domain,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<Vec<u32>> {
    let need = match domain {
        Domain::Monic => n + 1,
        Domain::All => n,
    };
    let tail = alpha.tail(need)?;
    let c = match domain {
        Domain::Monic => tail[n],
        Domain::All => Fq::ZERO,
    };
    let values = quadratic_values(&FqMatrix::zero(n, n), &tail[..n], c, ctx, budget)?;
    Ok(values.into_iter().map(|v| ctx.eq_exponent(v)).collect())
}

pub(crate) fn mobius_weights(arith: &ArithTable, n: usize, domain: Domain, ctx: &FieldCtx) -> Result<Vec<i8>> {
    let covered = match domain {
        Domain::Monic => arith.max_degree() >= n,
        Domain::All => n == 0 || arith.max_degree() + 1 >= n,
    };
    if !covered {
        return Err(Error::InvalidArgument(format!(
            "arithmetic table of degree {} does not cover {} with n = {n}",
            arith.max_degree(),
            domain.name()
        )));
    }
    Ok(match domain {
        Domain::Monic => arith.mobius(n).to_vec(),
        Domain::All => arith.mobius_g(ctx, n),
    })
}

pub fn linear_corr(
    alpha: &LaurentSeries,
    n: usize,
    domain: Domain,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<CorrelationReport> {
    let exps = linear_exponents(alpha, n, domain, ctx, budget)?;
    let mu = mobius_weights(arith, n, domain, ctx)?;
    let h = weighted_histogram(&exps, &mu, ctx.p());
    Ok(CorrelationReport::from_histogram(
        ctx.q(),
        n,
        domain.name(),
        format!("linear alpha={}", alpha.to_text()),
        h,
        exps.len() as u64,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    /// Histogram of the G_n sum.
    pub direct: Vec<i64>,
    /// Histogram of `sum_{c != 0} sum_{k < n}` of the A_k sums at `c alpha`.
    pub reduced: Vec<i64>,
    pub exact: bool,
}

/// Checks `sum_{G_n} = sum_{c in F_q^*} sum_{k < n} sum_{A_k}(c alpha)`
/// bin by bin.
pub fn reduction_check(
    alpha: &LaurentSeries,
    n: usize,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<ReductionReport> {
    let direct = linear_corr(alpha, n, Domain::All, arith, ctx, budget)?;
    let mut reduced = ExpHistogram::new(ctx.p());
    for c in ctx.nonzero() {
        let scaled = alpha.scale(c, ctx);
        for k in 0..n {
            let exps = linear_exponents(&scaled, k, Domain::Monic, ctx, budget)?;
            let mu = mobius_weights(arith, k, Domain::Monic, ctx)?;
            reduced.merge(&weighted_histogram(&exps, &mu, ctx.p()));
        }
    }
    let exact = direct.histogram == reduced.bins();
    Ok(ReductionReport {
        n,
        direct: direct.histogram,
        reduced: reduced.bins().to_vec(),
        exact,
    })
}
