//! Quadratic phases `chi_r(x^T M x + b.x + c)` and their means.

use num_complex::Complex64;
use serde::Serialize;

use super::kernel::quadratic_values;
use super::matrix::FqMatrix;
use crate::error::{Budget, Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::histogram::ExpHistogram;

const GAUSS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPhase {
    pub m: FqMatrix,
    pub b: Vec<Fq>,
    pub c: Fq,
    /// The additive character index, `chi_r(x) = e_q(r x)`.
    pub r: Fq,
}

impl QuadPhase {
    pub fn new(m: FqMatrix, b: Vec<Fq>, c: Fq, r: Fq) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Dimension("quadratic phase needs a symmetric matrix".into()));
        }
        if b.len() != m.rows() {
            return Err(Error::Dimension(format!(
                "linear part has length {}, matrix is {}x{}",
                b.len(),
                m.rows(),
                m.rows()
            )));
        }
        Ok(QuadPhase { m, b, c, r })
    }

    /// Pure quadratic form `chi_r(x^T M x)`.
    pub fn pure(m: FqMatrix, r: Fq) -> Result<Self> {
        let n = m.rows();
        Self::new(m, vec![Fq::ZERO; n], Fq::ZERO, r)
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    /// Rank of `r M`: `rank M` for a nontrivial character, 0 for `r = 0`.
    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        if self.r.is_zero() {
            0
        } else {
            self.m.rank(ctx)
        }
    }

    /// Exponent table `v -> Tr(r v)` indexed by element code.
    pub fn exponent_table(&self, ctx: &FieldCtx) -> Vec<u32> {
        ctx.elements().map(|v| ctx.eq_exponent(ctx.mul(self.r, v))).collect()
    }

    /// `sum_x Phi(x)` as an exact histogram over p-th roots of unity.
    pub fn sum_histogram(&self, ctx: &FieldCtx, budget: Budget) -> Result<ExpHistogram> {
        let values = quadratic_values(&self.m, &self.b, self.c, ctx, budget)?;
        let table = self.exponent_table(ctx);
        let mut h = ExpHistogram::new(ctx.p());
        for v in values {
            h.add(table[v.code()], 1);
        }
        Ok(h)
    }

    /// `E_{x in F_q^n} Phi(x)` by exhaustive summation, for any `p`.
    pub fn mean(&self, ctx: &FieldCtx, budget: Budget) -> Result<Complex64> {
        let h = self.sum_histogram(ctx, budget)?;
        Ok(h.to_complex() / (ctx.q() as f64).powi(self.dim() as i32))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussReport {
    pub n: usize,
    pub rank: usize,
    pub mean: Complex64,
    pub abs: f64,
    /// `q^{-rank/2}`.
    pub bound: f64,
    /// Whether `|E| = q^{-rank/2}` is asserted (pure quadratic, `r != 0`).
    pub equality_case: bool,
}

/// The mean of a quadratic phase with the bound `|E| <= q^{-rank/2}` (and
/// equality for `b = 0`, `r != 0`) asserted. Requires odd characteristic.
pub fn gauss_mean(phase: &QuadPhase, ctx: &FieldCtx, budget: Budget) -> Result<GaussReport> {
    if ctx.p() == 2 {
        return Err(Error::RequiresOddCharacteristic("gauss_mean"));
    }
    let mean = phase.mean(ctx, budget)?;
    let rank = phase.rank(ctx);
    let bound = (ctx.q() as f64).powf(-(rank as f64) / 2.0);
    let abs = mean.norm();
    let equality_case = phase.b.iter().all(|x| x.is_zero()) && !phase.r.is_zero();
    if abs > bound + GAUSS_TOL {
        return Err(Error::Identity(format!(
            "|E Phi| = {abs} exceeds q^(-rank/2) = {bound}"
        )));
    }
    if equality_case && (abs - bound).abs() > GAUSS_TOL {
        return Err(Error::Identity(format!(
            "|E Phi| = {abs} differs from q^(-rank/2) = {bound} for a pure quadratic phase"
        )));
    }
    Ok(GaussReport {
        n: phase.dim(),
        rank,
        mean,
        abs,
        bound,
        equality_case,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylReport {
    /// `|E_x Phi(x)|^2`.
    pub lhs: f64,
    /// `E_h chi(P(h) - P(0)) E_x chi(2 B_h(x))`.
    pub rhs: Complex64,
    pub residual: f64,
}

/// Checks the differencing identity by brute force over `(h, x)`; the cost
/// is `q^{2n}`. `P(x + h) - P(x) = (P(h) - P(0)) + 2 x^T M h`.
pub fn weyl_check(phase: &QuadPhase, ctx: &FieldCtx, budget: Budget) -> Result<WeylReport> {
    let n = phase.dim();
    let q = ctx.q();
    budget.check_pow(q as u64, 2 * n as u32)?;
    let lhs = phase.mean(ctx, budget)?.norm_sqr();
    let values = quadratic_values(&phase.m, &phase.b, phase.c, ctx, budget)?;
    let table = phase.exponent_table(ctx);
    let two = ctx.from_int(2);
    let zero = FqMatrix::zero(n, n);
    let total = (q as f64).powi(n as i32);
    let mut rhs = Complex64::new(0.0, 0.0);
    for (hidx, &ph) in values.iter().enumerate() {
        let h = super::kernel::point(hidx, n, q);
        let v: Vec<Fq> = phase.m.apply(&h, ctx).into_iter().map(|x| ctx.mul(two, x)).collect();
        let inner_vals = quadratic_values(&zero, &v, Fq::ZERO, ctx, budget)?;
        let mut inner = ExpHistogram::new(ctx.p());
        for w in inner_vals {
            inner.add(table[w.code()], 1);
        }
        let e = table[ctx.sub(ph, phase.c).code()];
        let outer = Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / ctx.p() as f64);
        rhs += outer * inner.to_complex() / total;
    }
    rhs /= total;
    Ok(WeylReport {
        lhs,
        rhs,
        residual: (rhs - Complex64::new(lhs, 0.0)).norm(),
    })
}
