//! Correlations of mu with linear, quadratic and Hankel phases, Vaughan's
//! decomposition and periodic-function sums.
//!
//! Every sum of `mu(f)` against a p-th root of unity is accumulated as an
//! exponent histogram, so results are exact and independent of the
//! enumeration order and of the worker count.

mod linear;
mod periodic;
mod quad;
mod sweep;
mod vaughan;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::split_range;
use crate::histogram::ExpHistogram;

pub use linear::{linear_corr, linear_exponents, reduction_check, Domain, ReductionReport};
pub use periodic::{periodic_corr, periodic_decomposition, PeriodicReport};
pub use quad::{hankel_corr, hankel_exponents, quad_corr};
pub use sweep::{exponent_sweep, Experiment, SweepRow};
pub use vaughan::{
    default_cutoff, vaughan_audit, vaughan_decompose, AuditFailure, PointwiseAudit, VaughanReport,
};

#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub q: usize,
    pub n: usize,
    pub domain: &'static str,
    /// Text description of the phase.
    pub phase: String,
    /// Exact exponent histogram of the sum over p-th roots of unity.
    pub histogram: Vec<i64>,
    pub sum: Complex64,
    pub abs: f64,
    /// `log_q |sum| / n`; absent when the sum vanishes or `n = 0`.
    pub empirical_exponent: Option<f64>,
    /// Number of terms enumerated.
    pub terms: u64,
}

impl CorrelationReport {
    pub(crate) fn from_histogram(
        q: usize,
        n: usize,
        domain: &'static str,
        phase: String,
        h: ExpHistogram,
        terms: u64,
    ) -> Self {
        let exact_zero = crate::field::is_prime(h.modulus()) && h.is_exactly_zero_prime();
        let sum = if exact_zero { Complex64::new(0.0, 0.0) } else { h.to_complex() };
        let abs = sum.norm();
        CorrelationReport {
            q,
            n,
            domain,
            phase,
            histogram: h.bins().to_vec(),
            sum,
            abs,
            empirical_exponent: empirical_exponent(abs, q, n),
            terms,
        }
    }
}

pub fn empirical_exponent(abs: f64, q: usize, n: usize) -> Option<f64> {
    (n > 0 && abs > 1e-9).then(|| abs.ln() / (q as f64).ln() / n as f64)
}

/// `sum_i weights[i] zeta_p^{exps[i]}` split across workers.
pub(crate) fn weighted_histogram(exps: &[u32], weights: &[i8], p: u32) -> ExpHistogram {
    assert_eq!(exps.len(), weights.len());
    split_range(exps.len(), rayon::current_num_threads())
        .into_par_iter()
        .map(|r| {
            let mut h = ExpHistogram::new(p);
            for i in r {
                let w = weights[i];
                if w != 0 {
                    h.add(exps[i], i64::from(w));
                }
            }
            h
        })
        .reduce(|| ExpHistogram::new(p), ExpHistogram::merged)
}
