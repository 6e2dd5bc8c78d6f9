//! Distribution of `rk M_{a,b}` over pairs `(a, b)` in G_{k+1} x G_{k+1}.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hankel::{m_ab, PairForm};
use super::matrix::FqMatrix;
use crate::enumerate::split_range;
use crate::error::{Budget, Error, Result};
use crate::field::FieldCtx;
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct RankStats {
    pub k: usize,
    pub h: usize,
    pub form: PairForm,
    pub sampled: bool,
    /// Pairs with rank at most `h`.
    pub count: u64,
    /// `q^{2(k+1)}` when exhaustive, the sample size otherwise.
    pub total: u64,
    /// `histogram[r]` counts pairs of rank exactly `r`.
    pub histogram: Vec<u64>,
}

impl RankStats {
    pub fn density(&self) -> Ratio<u64> {
        Ratio::new(self.count, self.total.max(1))
    }

    /// RankStats CSV: header, then `k,h,density_num,density_den,hist_0,...`.
    /// The density is not reduced, so `density_den` is the pair count.
    pub fn to_csv(&self) -> String {
        let hist_head: Vec<String> = (0..self.histogram.len()).map(|r| format!("hist_{r}")).collect();
        let hist: Vec<String> = self.histogram.iter().map(u64::to_string).collect();
        format!(
            "k,h,density_num,density_den,{}\n{},{},{},{},{}\n",
            hist_head.join(","),
            self.k,
            self.h,
            self.count,
            self.total,
            hist.join(",")
        )
    }
}

pub fn rank_stats(
    m: &FqMatrix,
    k: usize,
    h: usize,
    mode: RankMode,
    form: PairForm,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<RankStats> {
    if !m.is_square() || k > m.rows() {
        return Err(Error::Dimension(format!(
            "rank statistics need a square matrix of size at least k = {k}"
        )));
    }
    let q = ctx.q();
    let side = q.pow(k as u32 + 1);
    let size = m.rows() - k;
    let rank_of = |ai: usize, bi: usize| -> Result<usize> {
        let a = Poly::from_g_index(k + 1, ai, q);
        let b = Poly::from_g_index(k + 1, bi, q);
        Ok(m_ab(m, &a, &b, k, form, ctx)?.rank(ctx))
    };
    let (histogram, total) = match mode {
        RankMode::Exhaustive => {
            let total = (side as u64).checked_mul(side as u64).unwrap_or(u64::MAX);
            budget.check(total)?;
            let parts = split_range(side * side, rayon::current_num_threads());
            let hist = parts
                .into_par_iter()
                .map(|range| -> Result<Vec<u64>> {
                    let mut hist = vec![0u64; size + 1];
                    for idx in range {
                        hist[rank_of(idx / side, idx % side)?] += 1;
                    }
                    Ok(hist)
                })
                .try_reduce(|| vec![0u64; size + 1], |a, b| Ok(add(a, b)))?;
            (hist, total)
        }
        RankMode::Sampled { samples, seed } => {
            budget.check(samples as u64)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<(usize, usize)> = (0..samples)
                .map(|_| (rng.gen_range(0..side), rng.gen_range(0..side)))
                .collect();
            let hist = pairs
                .par_chunks(pairs.len().div_ceil(rayon::current_num_threads()).max(1))
                .map(|chunk| -> Result<Vec<u64>> {
                    let mut hist = vec![0u64; size + 1];
                    for &(a, b) in chunk {
                        hist[rank_of(a, b)?] += 1;
                    }
                    Ok(hist)
                })
                .try_reduce(|| vec![0u64; size + 1], |a, b| Ok(add(a, b)))?;
            (hist, samples as u64)
        }
    };
    let count = histogram.iter().take(h + 1).sum();
    Ok(RankStats {
        k,
        h,
        form,
        sampled: matches!(mode, RankMode::Sampled { .. }),
        count,
        total,
        histogram,
    })
}

fn add(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}
