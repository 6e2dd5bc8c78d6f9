//! Hankel matrices of `f -> (alpha f^2)_{-1}`, dilation matrices `L_a` and
//! the pair forms `M_{a,b}`.

use rand::Rng;
use serde::Serialize;

use super::matrix::FqMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::laurent::LaurentSeries;
use crate::poly::Poly;

/// `M_ij = alpha_{-1-i-j}` for `0 <= i, j < n`; needs `prec >= 2n - 1`.
pub fn hankel_matrix(alpha: &LaurentSeries, n: usize) -> Result<FqMatrix> {
    let mut m = FqMatrix::zero(n, n);
    if n == 0 {
        return Ok(m);
    }
    let tail = alpha.tail(2 * n - 1)?;
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, tail[i + j]);
        }
    }
    Ok(m)
}

/// Compares `x^T M x` with `(alpha f^2)_{-1}` on `samples` random `f in G_n`.
pub fn verify_hankel_form<R: Rng>(
    alpha: &LaurentSeries,
    m: &FqMatrix,
    samples: usize,
    rng: &mut R,
    ctx: &FieldCtx,
) -> Result<()> {
    let n = m.rows();
    let q = ctx.q();
    for _ in 0..samples {
        let x: Vec<Fq> = (0..n).map(|_| Fq(rng.gen_range(0..q) as u8)).collect();
        let f = Poly::new(x.clone());
        let direct = alpha.mul_poly(&f.mul(&f, ctx), ctx)?.residue()?;
        let form = m.bilinear(&x, &x, ctx);
        if direct != form {
            return Err(Error::Identity(format!(
                "x^T M x = {} but (alpha f^2)_(-1) = {} at f = {f}",
                form.code(),
                direct.code()
            )));
        }
    }
    Ok(())
}

/// The `n x (n-k)` matrix of `w -> a w` from G_{n-k} to G_n:
/// entry `(i, j)` is the coefficient of `t^{i-j}` in `a`.
pub fn dilation_matrix(a: &Poly, n: usize, k: usize) -> Result<FqMatrix> {
    if k > n || a.deg_i() > k as i64 {
        return Err(Error::Dimension(format!(
            "dilation by a polynomial of degree {} needs deg a <= k = {k} <= n = {n}",
            a.deg_i()
        )));
    }
    let mut l = FqMatrix::zero(n, n - k);
    for j in 0..n - k {
        for (d, &c) in a.coeffs().iter().enumerate() {
            l.set(j + d, j, c);
        }
    }
    Ok(l)
}

/// Which combination of `L_a^T M L_b` and `L_b^T M L_a` defines `M_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairForm {
    /// `(L_a^T M L_b + L_b^T M L_a) / 2`; odd characteristic only.
    Average,
    /// `L_a^T M L_b + L_b^T M L_a`.
    Sum,
    /// `L_a^T M L_b`; equals the other two up to a unit scalar when `M` is
    /// Hankel, and is the only non-degenerate choice in characteristic 2.
    Left,
}

impl PairForm {
    pub fn default_for(ctx: &FieldCtx) -> Self {
        if ctx.p() == 2 {
            PairForm::Left
        } else {
            PairForm::Average
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairForm::Average => "average",
            PairForm::Sum => "sum",
            PairForm::Left => "left",
        }
    }
}

impl std::str::FromStr for PairForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "average" => Ok(PairForm::Average),
            "sum" => Ok(PairForm::Sum),
            "left" => Ok(PairForm::Left),
            _ => Err(Error::Parse(format!("unknown pair form {s:?}, expected average|sum|left"))),
        }
    }
}

/// `M_{a,b}` for `deg a, deg b <= k`, an `(n-k) x (n-k)` matrix.
pub fn m_ab(m: &FqMatrix, a: &Poly, b: &Poly, k: usize, form: PairForm, ctx: &FieldCtx) -> Result<FqMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("M_{a,b} needs a square matrix".into()));
    }
    if form == PairForm::Average && ctx.p() == 2 {
        return Err(Error::RequiresOddCharacteristic("averaged M_{a,b}"));
    }
    let n = m.rows();
    let la = dilation_matrix(a, n, k)?;
    let lb = dilation_matrix(b, n, k)?;
    let left = la.transpose().mul(m, ctx)?.mul(&lb, ctx)?;
    if form == PairForm::Left {
        return Ok(left);
    }
    let right = lb.transpose().mul(m, ctx)?.mul(&la, ctx)?;
    let sum = left.add(&right, ctx)?;
    Ok(match form {
        PairForm::Average => sum.scale(ctx.inv(ctx.from_int(2))?, ctx),
        _ => sum,
    })
}

/// Asserts `M_{a,b}(M(alpha)) = M(alpha a b)` at size `n - k`.
pub fn hankel_pair_identity(
    alpha: &LaurentSeries,
    n: usize,
    a: &Poly,
    b: &Poly,
    k: usize,
    form: PairForm,
    ctx: &FieldCtx,
) -> Result<FqMatrix> {
    let m = hankel_matrix(alpha, n)?;
    let lhs = m_ab(&m, a, b, k, form, ctx)?;
    let ab = a.mul(b, ctx);
    let rhs = if ab.is_zero() {
        FqMatrix::zero(n - k, n - k)
    } else {
        hankel_matrix(&alpha.mul_poly(&ab, ctx)?, n - k)?
    };
    let rhs = match form {
        PairForm::Sum => rhs.scale(ctx.from_int(2), ctx),
        _ => rhs,
    };
    if lhs != rhs {
        return Err(Error::Identity(format!(
            "M_(a,b) differs from M(alpha a b) for a = {a}, b = {b}"
        )));
    }
    Ok(lhs)
}
