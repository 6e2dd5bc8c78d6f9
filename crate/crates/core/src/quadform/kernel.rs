//! Values of a quadratic polynomial `x^T M x + b.x + c` at every point of
//! F_q^n, in index order (coordinate 0 fastest).
//!
//! Writing `x = y + d e_k` with `y` supported below `k`,
//! `P(x) = P(y) + d (2 (M y)_k + b_k) + d^2 M_kk`, so each point costs O(1)
//! after a linear-size table per coordinate.

use super::matrix::FqMatrix;
use crate::error::{Budget, Error, Result};
use crate::field::{FieldCtx, Fq};

pub fn quadratic_values(
    m: &FqMatrix,
    b: &[Fq],
    c: Fq,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<Vec<Fq>> {
    let n = m.rows();
    if !m.is_symmetric() || b.len() != n {
        return Err(Error::Dimension(format!(
            "quadratic form needs a symmetric matrix and a linear part of length {n}"
        )));
    }
    let q = ctx.q();
    budget.check_pow(q as u64, n as u32)?;
    let two = ctx.from_int(2);
    let mut out = vec![Fq::ZERO; q.pow(n as u32)];
    out[0] = c;
    let mut lin = Vec::with_capacity(out.len() / q.max(1));
    for k in 0..n {
        let qk = q.pow(k as u32);
        lin.clear();
        lin.push(b[k]);
        for j in 0..k {
            let w = ctx.mul(two, m.get(k, j));
            let qj = q.pow(j as u32);
            for d in 1..q {
                let step = ctx.mul(Fq(d as u8), w);
                for y in 0..qj {
                    let v = ctx.add(lin[y], step);
                    lin.push(v);
                }
            }
        }
        let mkk = m.get(k, k);
        for d in 1..q {
            let d = Fq(d as u8);
            let dd = ctx.mul(ctx.mul(d, d), mkk);
            for y in 0..qk {
                let v = ctx.add(ctx.add(out[y], ctx.mul(d, lin[y])), dd);
                out[d.code() * qk + y] = v;
            }
        }
    }
    Ok(out)
}

/// Coordinates of the point with index `idx`.
pub fn point(idx: usize, n: usize, q: usize) -> Vec<Fq> {
    crate::poly::digits_of(idx, q, n)
}
