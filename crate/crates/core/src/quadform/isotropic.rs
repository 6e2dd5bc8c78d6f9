//! Common zeros of a family of quadratic forms over F_p^n.

use serde::Serialize;

use super::kernel::quadratic_values;
use super::matrix::FqMatrix;
use crate::error::{Budget, Error, Result};
use crate::field::{FieldCtx, Fq};

#[derive(Debug, Clone, Serialize)]
pub struct IsotropicReport {
    pub n: usize,
    pub r: usize,
    pub count: u64,
    /// `(1 - p^{-1/2}) p^{n - 2r(r+1)}`.
    pub bound: f64,
    pub passed: bool,
}

pub fn isotropic_bound(p: u32, n: usize, r: usize) -> f64 {
    let p = p as f64;
    (1.0 - p.powf(-0.5)) * p.powf(n as f64 - 2.0 * (r * (r + 1)) as f64)
}

/// Counts `x` with `x^T M_i x = 0` for all forms. `n` is taken from the
/// first form, or from `dim` when the family is empty.
pub fn isotropic_count(forms: &[FqMatrix], dim: usize, ctx: &FieldCtx, budget: Budget) -> Result<IsotropicReport> {
    if ctx.s() != 1 {
        return Err(Error::InvalidArgument("isotropic counting is over a prime field".into()));
    }
    let n = forms.first().map_or(dim, FqMatrix::rows);
    if forms.iter().any(|m| m.rows() != n || !m.is_symmetric()) {
        return Err(Error::Dimension(format!("every form must be a symmetric {n}x{n} matrix")));
    }
    let q = ctx.q();
    budget.check_pow(q as u64, n as u32)?;
    let mut zero = vec![true; q.pow(n as u32)];
    let b = vec![Fq::ZERO; n];
    for m in forms {
        let values = quadratic_values(m, &b, Fq::ZERO, ctx, budget)?;
        for (z, v) in zero.iter_mut().zip(values) {
            *z &= v.is_zero();
        }
    }
    let count = zero.iter().filter(|&&z| z).count() as u64;
    let bound = isotropic_bound(ctx.p(), n, forms.len());
    let report = IsotropicReport {
        n,
        r: forms.len(),
        count,
        bound,
        passed: count as f64 >= bound,
    };
    if !report.passed {
        return Err(Error::Identity(format!(
            "{count} common zeros is below the bound {bound}"
        )));
    }
    Ok(report)
}
