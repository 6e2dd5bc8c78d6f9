//! Dense polynomials over F_q.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// A polynomial in F_q[t], constant term first, without trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    coeffs: Vec<Fq>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Fq::ONE],
        }
    }

    pub fn constant(c: Fq) -> Self {
        Poly::new(vec![c])
    }

    /// `c t^d`.
    pub fn monomial(c: Fq, d: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; d + 1];
        coeffs[d] = c;
        Poly::new(coeffs)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::monomial(Fq::ONE, 1)
    }

    pub fn from_codes(ctx: &FieldCtx, codes: &[usize]) -> Result<Self> {
        let coeffs = codes
            .iter()
            .map(|&c| ctx.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Parses the text format `c_0,c_1,...,c_d` (constant term first).
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Poly::zero());
        }
        let codes = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{tok}' in '{text}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_codes(ctx, &codes)
    }

    /// Text format, inverse of [`Poly::parse`]. The zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.0.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fq> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with `deg 0 = -1`; convenient for
    /// comparisons where any negative value stands for minus infinity.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<Fq> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(Fq::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| ctx.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| ctx.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| ctx.neg(c)).collect())
    }

    pub fn scale(&self, c: Fq, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&x| ctx.mul(c, x)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Fq::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        mul_into(&self.coeffs, &other.coeffs, &mut out, ctx);
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u32, ctx: &FieldCtx) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            base = base.mul(&base, ctx);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `(quot, rem)` with `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv_nonzero(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Fq::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = ctx.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + k;
                rem[idx] = ctx.sub(rem[idx], ctx.mul(factor, dk));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        Ok(self.divmod(divisor, ctx)?.1)
    }

    /// Exact division; `None` when the divisor does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Option<Poly>> {
        let (q, r) = self.divmod(divisor, ctx)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Splits off the leading coefficient: `self = unit * monic`.
    pub fn monic_part(&self, ctx: &FieldCtx) -> Result<(Fq, Poly)> {
        let lead = self.lead().ok_or(Error::ZeroPolynomial("monic_part"))?;
        Ok((lead, self.scale(ctx.inv_nonzero(lead), ctx)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, ctx).expect("b is nonzero");
            a = b;
            b = r;
        }
        match a.monic_part(ctx) {
            Ok((_, m)) => m,
            Err(_) => Poly::zero(),
        }
    }

    /// Index of a monic polynomial of degree n among A_n: the base-q number
    /// whose digits are `c_0, ..., c_{n-1}` with `c_0` least significant.
    pub fn monic_index(&self, q: usize) -> usize {
        debug_assert!(self.is_monic());
        let n = self.coeffs.len() - 1;
        code_of(&self.coeffs[..n], q)
    }

    /// Index of a polynomial of degree < n among G_n (digits `c_0..c_{n-1}`).
    pub fn g_index(&self, q: usize) -> usize {
        code_of(&self.coeffs, q)
    }

    /// The monic polynomial of degree `n` with the given A_n index.
    pub fn from_monic_index(n: usize, index: usize, q: usize) -> Poly {
        let mut coeffs = digits_of(index, q, n);
        coeffs.push(Fq::ONE);
        Poly { coeffs }
    }

    /// The polynomial of G_n with the given index.
    pub fn from_g_index(n: usize, index: usize, q: usize) -> Poly {
        Poly::new(digits_of(index, q, n))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `out += a * b` on raw coefficient slices; `out` must be long enough.
#[inline]
pub(crate) fn mul_into(a: &[Fq], b: &[Fq], out: &mut [Fq], ctx: &FieldCtx) {
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
}

/// Base-q value of a digit vector, first digit least significant.
#[inline]
pub fn code_of(digits: &[Fq], q: usize) -> usize {
    digits.iter().rev().fold(0usize, |acc, d| acc * q + d.code())
}

/// Inverse of [`code_of`] with a fixed number of digits.
pub fn digits_of(mut code: usize, q: usize, len: usize) -> Vec<Fq> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(Fq((code % q) as u8));
        code /= q;
    }
    out
}
