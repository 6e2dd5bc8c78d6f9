//! `sum_{f in G_n} mu(f) Phi(f)` for quadratic and Hankel phases.

use rayon::prelude::*;

use super::linear::{mobius_weights, Domain};
use super::{weighted_histogram, CorrelationReport};
use crate::enumerate::split_range;
use crate::error::{Budget, Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::laurent::LaurentSeries;
use crate::poly::{digits_of, mul_into};
use crate::quadform::{kernel::quadratic_values, QuadPhase};
use crate::sieve::ArithTable;

/// `sum_{f in G_n} mu(f) chi_r(Q(f))` with `f` read as its coefficient
/// vector; `n` is the phase dimension.
pub fn quad_corr(
    phase: &QuadPhase,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<CorrelationReport> {
    if ctx.p() == 2 {
        return Err(Error::RequiresOddCharacteristic("quadratic correlation (assume p > 2)"));
    }
    let n = phase.dim();
    let values = quadratic_values(&phase.m, &phase.b, phase.c, ctx, budget)?;
    let table = phase.exponent_table(ctx);
    let exps: Vec<u32> = values.iter().map(|v| table[v.code()]).collect();
    let mu = mobius_weights(arith, n, Domain::All, ctx)?;
    let h = weighted_histogram(&exps, &mu, ctx.p());
    Ok(CorrelationReport::from_histogram(
        ctx.q(),
        n,
        Domain::All.name(),
        format!("quadratic rank={} r={}", phase.rank(ctx), phase.r.code()),
        h,
        exps.len() as u64,
    ))
}

/// Exponents of `e(alpha f^2 + beta f)` over G_n in index order, computed
/// by squaring each `f` directly.
pub fn hankel_exponents(
    alpha: &LaurentSeries,
    beta: &LaurentSeries,
    n: usize,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<Vec<u32>> {
    let q = ctx.q();
    budget.check_pow(q as u64, n as u32)?;
    let a_tail = alpha.tail((2 * n).saturating_sub(1))?;
    let b_tail = beta.tail(n)?;
    let total = q.pow(n as u32);
    let parts: Vec<Vec<u32>> = split_range(total, rayon::current_num_threads())
        .into_par_iter()
        .map(|range| {
            let mut sq = vec![Fq::ZERO; (2 * n).saturating_sub(1)];
            range
                .map(|idx| {
                    let f = digits_of(idx, q, n);
                    sq.iter_mut().for_each(|c| *c = Fq::ZERO);
                    mul_into(&f, &f, &mut sq, ctx);
                    let mut v = Fq::ZERO;
                    for (c, a) in sq.iter().zip(&a_tail) {
                        v = ctx.add(v, ctx.mul(*c, *a));
                    }
                    for (c, b) in f.iter().zip(&b_tail) {
                        v = ctx.add(v, ctx.mul(*c, *b));
                    }
                    ctx.eq_exponent(v)
                })
                .collect()
        })
        .collect();
    Ok(parts.concat())
}

/// `sum_{f in G_n} mu(f) e(alpha f^2 + beta f)`.
pub fn hankel_corr(
    alpha: &LaurentSeries,
    beta: &LaurentSeries,
    n: usize,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<CorrelationReport> {
    let exps = hankel_exponents(alpha, beta, n, ctx, budget)?;
    let mu = mobius_weights(arith, n, Domain::All, ctx)?;
    let h = weighted_histogram(&exps, &mu, ctx.p());
    Ok(CorrelationReport::from_histogram(
        ctx.q(),
        n,
        Domain::All.name(),
        format!("hankel alpha={} beta={}", alpha.to_text(), beta.to_text()),
        h,
        exps.len() as u64,
    ))
}
