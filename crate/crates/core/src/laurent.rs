//! Truncated Laurent series in 1/t, the character e(.), the torus T and
//! rational approximation by continued fractions.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::poly::Poly;

/// A Laurent series known modulo `t^{-prec-1}`.
///
/// Stored as `body(t) * t^{-prec}`: coefficient `i` of `body` is the
/// coefficient of `t^{i - prec}` in the series. Degrees below `-prec` are
/// unknown and reading them is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    prec: i64,
    body: Poly,
}

impl LaurentSeries {
    /// The zero series known down to `t^{-prec}`.
    pub fn zero(prec: i64) -> Self {
        LaurentSeries {
            prec,
            body: Poly::zero(),
        }
    }

    /// Builds from coefficients of degrees `top, top-1, ..., top-len+1`.
    pub fn from_top(top: i64, coeffs: &[Fq]) -> Self {
        let prec = coeffs.len() as i64 - 1 - top;
        let body: Vec<Fq> = coeffs.iter().rev().copied().collect();
        LaurentSeries {
            prec,
            body: Poly::new(body),
        }
    }

    /// Element of T with coefficients of `t^{-1}, t^{-2}, ...` given in order.
    pub fn from_tail(tail: &[Fq]) -> Self {
        Self::from_top(-1, tail)
    }

    /// A polynomial viewed as a series with precision `prec`.
    pub fn from_poly(f: &Poly, prec: i64) -> Self {
        Self::from_top(-prec, &[]).add_poly_shifted(f)
    }

    fn add_poly_shifted(mut self, f: &Poly) -> Self {
        // Only used with a zero body; places f at degree offset.
        debug_assert!(self.body.is_zero());
        if self.prec < 0 {
            let drop = (-self.prec) as usize;
            let coeffs: Vec<Fq> = f.coeffs().iter().skip(drop).copied().collect();
            self.body = Poly::new(coeffs);
        } else {
            self.body = f.shift(self.prec as usize);
        }
        self
    }

    /// Expansion of `a / g` to precision `prec`.
    pub fn from_ratio(a: &Poly, g: &Poly, prec: i64, ctx: &FieldCtx) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if prec < 0 {
            return Err(Error::InvalidArgument("from_ratio needs prec >= 0".into()));
        }
        // a t^prec = Q g + R with deg R < deg g, so a/g = Q t^{-prec} + O(t^{-prec-1}).
        let (quot, _) = a.shift(prec as usize).divmod(g, ctx)?;
        Ok(LaurentSeries { prec, body: quot })
    }

    /// Uniform random element of T with coefficients of degrees -1..-prec.
    pub fn sample_torus(seed: u64, prec: usize, ctx: &FieldCtx) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::sample_torus_with(&mut rng, prec, ctx)
    }

    /// As [`LaurentSeries::sample_torus`], drawing from an existing stream.
    /// Coefficients are drawn in order of decreasing degree.
    pub fn sample_torus_with<R: Rng>(rng: &mut R, prec: usize, ctx: &FieldCtx) -> Self {
        let q = ctx.q();
        let tail: Vec<Fq> = (0..prec).map(|_| Fq(rng.gen_range(0..q) as u8)).collect();
        Self::from_tail(&tail)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Degree of the leading nonzero known coefficient, `None` when every
    /// known coefficient vanishes.
    pub fn degree(&self) -> Option<i64> {
        self.body.degree().map(|d| d as i64 - self.prec)
    }

    /// Coefficient of `t^deg`.
    pub fn coeff(&self, deg: i64) -> Result<Fq> {
        if deg < -self.prec {
            return Err(Error::Precision {
                needed: -deg,
                available: self.prec,
            });
        }
        Ok(self.body.coeff((deg + self.prec) as usize))
    }

    /// Whether `|alpha| < 1`, i.e. all coefficients of degree >= 0 vanish.
    pub fn in_torus(&self) -> bool {
        self.degree().is_none_or(|d| d < 0)
    }

    /// The coefficient `(alpha)_{-1}`.
    pub fn residue(&self) -> Result<Fq> {
        if self.prec < 1 {
            return Err(Error::Precision {
                needed: 1,
                available: self.prec,
            });
        }
        self.coeff(-1)
    }

    /// Exponent `k` with `e(alpha) = exp(2 pi i k / p)`.
    pub fn e_exponent(&self, ctx: &FieldCtx) -> Result<u32> {
        Ok(ctx.eq_exponent(self.residue()?))
    }

    /// Coefficients of degrees `-1, -2, ..., -len`.
    pub fn tail(&self, len: usize) -> Result<Vec<Fq>> {
        (1..=len as i64).map(|k| self.coeff(-k)).collect()
    }

    /// Polynomial part (coefficients of degree >= 0).
    pub fn polynomial_part(&self) -> Poly {
        if self.prec >= 0 {
            Poly::new(
                self.body
                    .coeffs()
                    .iter()
                    .skip(self.prec as usize)
                    .copied()
                    .collect(),
            )
        } else {
            self.body.shift((-self.prec) as usize)
        }
    }

    fn aligned(&self, other: &Self) -> (i64, Poly, Poly) {
        let prec = self.prec.min(other.prec);
        let cut = |s: &Self| -> Poly {
            let drop = (s.prec - prec) as usize;
            Poly::new(s.body.coeffs().iter().skip(drop).copied().collect())
        };
        (prec, cut(self), cut(other))
    }

    pub fn add(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let (prec, a, b) = self.aligned(other);
        LaurentSeries {
            prec,
            body: a.add(&b, ctx),
        }
    }

    pub fn sub(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let (prec, a, b) = self.aligned(other);
        LaurentSeries {
            prec,
            body: a.sub(&b, ctx),
        }
    }

    pub fn scale(&self, c: Fq, ctx: &FieldCtx) -> Self {
        LaurentSeries {
            prec: self.prec,
            body: self.body.scale(c, ctx),
        }
    }

    /// `alpha * f`, exact down to degree `-(prec - deg f)`.
    pub fn mul_poly(&self, f: &Poly, ctx: &FieldCtx) -> Result<Self> {
        let Some(df) = f.degree() else {
            return Ok(LaurentSeries::zero(self.prec));
        };
        let prec = self.prec - df as i64;
        if prec < 1 {
            return Err(Error::Precision {
                needed: df as i64 + 1,
                available: self.prec,
            });
        }
        let prod = self.body.mul(f, ctx);
        // The lowest df coefficients of the product mix in unknown terms.
        let body = Poly::new(prod.coeffs().iter().skip(df).copied().collect());
        Ok(LaurentSeries { prec, body })
    }

    /// Parses `m:c_m,c_{m-1},...,c_{-prec}`.
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self> {
        let (top, rest) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("series '{text}' lacks 'm:' prefix")))?;
        let top: i64 = top
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad top degree in '{text}'")))?;
        let coeffs = rest
            .split(',')
            .map(|tok| {
                let code: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{tok}' in '{text}'")))?;
                ctx.elem(code)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_top(top, &coeffs))
    }

    /// Text form starting at the larger of the leading degree and `-1`.
    pub fn to_text(&self) -> String {
        let floor_top = (-1i64).max(-self.prec);
        let top = self.degree().map_or(floor_top, |d| d.max(floor_top));
        let coeffs: Vec<String> = (-self.prec..=top)
            .rev()
            .map(|d| self.coeff(d).expect("within precision").0.to_string())
            .collect();
        format!("{top}:{}", coeffs.join(","))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `alpha = a/g + beta` with `g` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalApprox {
    pub a: Poly,
    pub g: Poly,
    pub beta: LaurentSeries,
}

/// Finds `a/g` with `g` monic, `deg g <= floor(n/2)` and
/// `|alpha - a/g| < q^{-floor(n/2)} / |g|`.
///
/// The known part of `alpha` is the rational `body / t^prec`; its continued
/// fraction is computed exactly by the Euclidean algorithm, and the last
/// convergent whose denominator has degree at most `floor(n/2)` is kept. The
/// inequality is checked on the returned `beta` before returning.
pub fn dirichlet_approx(alpha: &LaurentSeries, n: usize, ctx: &FieldCtx) -> Result<RationalApprox> {
    if !alpha.in_torus() {
        return Err(Error::InvalidArgument(format!(
            "dirichlet_approx needs alpha in T, got {alpha}"
        )));
    }
    if alpha.prec < n as i64 + 1 {
        return Err(Error::Precision {
            needed: n as i64 + 1,
            available: alpha.prec,
        });
    }
    let half = n / 2;
    let mut x = Poly::monomial(Fq::ONE, alpha.prec as usize);
    let mut y = alpha.body.clone();
    let (mut p_prev, mut p) = (Poly::one(), Poly::zero());
    let (mut q_prev, mut q) = (Poly::zero(), Poly::one());
    while !y.is_zero() {
        let (quot, rem) = x.divmod(&y, ctx)?;
        let q_next = quot.mul(&q, ctx).add(&q_prev, ctx);
        if q_next.deg_i() > half as i64 {
            break;
        }
        let p_next = quot.mul(&p, ctx).add(&p_prev, ctx);
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        x = y;
        y = rem;
    }
    let (lead, g) = q.monic_part(ctx)?;
    let a = p.scale(ctx.inv(lead)?, ctx);
    let beta = alpha.sub(&LaurentSeries::from_ratio(&a, &g, alpha.prec, ctx)?, ctx);
    let approx = RationalApprox { a, g, beta };
    verify_approx(&approx, n)?;
    Ok(approx)
}

/// Checks the degree and norm conditions of a rational approximation.
pub fn verify_approx(approx: &RationalApprox, n: usize) -> Result<()> {
    let half = n as i64 / 2;
    let dg = approx.g.deg_i();
    if !approx.g.is_monic() || dg > half {
        return Err(Error::Identity(format!(
            "approximation denominator g = {} is not monic of degree <= {half}",
            approx.g
        )));
    }
    // |beta| < q^{-half - deg g} means every coefficient of degree
    // >= -half - deg g vanishes; those must all be known.
    let needed = half + dg;
    if approx.beta.prec < needed {
        return Err(Error::Precision {
            needed,
            available: approx.beta.prec,
        });
    }
    if let Some(d) = approx.beta.degree() {
        if d >= -needed {
            return Err(Error::Identity(format!(
                "|beta| = q^{d} is not below q^{} for a/g = ({})/({})",
                -needed, approx.a, approx.g
            )));
        }
    }
    Ok(())
}
