//! Factorization by trial division and the arithmetic functions mu, Lambda, tau.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::poly::Poly;
use crate::sieve::IrreducibleTable;

/// `unit * prod P_i^{e_i}` with monic irreducible `P_i`, sorted by degree and
/// then by A_n index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fq,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self, ctx: &FieldCtx) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (p, e)| {
                acc.mul(&p.pow(*e, ctx), ctx)
            })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn mobius(&self) -> i64 {
        if self.is_squarefree() {
            if self.factors.len() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }

    /// Lambda: `deg P` on prime powers `P^k`, otherwise 0 (units included).
    pub fn mangoldt(&self) -> i64 {
        match self.factors.as_slice() {
            [(p, _)] => p.deg_i(),
            _ => 0,
        }
    }

    /// Number of monic divisors.
    pub fn tau(&self) -> i64 {
        self.factors.iter().map(|&(_, e)| e as i64 + 1).product()
    }
}

/// Factors `f` by trial division against `table`, which must cover degrees
/// up to `deg f / 2`.
pub fn factorize(f: &Poly, ctx: &FieldCtx, table: &IrreducibleTable) -> Result<Factorization> {
    let (unit, mut rest) = f.monic_part(ctx).map_err(|_| Error::ZeroPolynomial("factorize"))?;
    let n = rest.degree().unwrap_or(0);
    if table.max_degree() < n / 2 {
        return Err(Error::InvalidArgument(format!(
            "irreducible table covers degree {} but factoring degree {n} needs {}",
            table.max_degree(),
            n / 2
        )));
    }
    let q = ctx.q();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    'outer: for d in 1..=n / 2 {
        for p in table.of_degree(d) {
            if 2 * d > rest.deg_i() as usize {
                break 'outer;
            }
            let mut e = 0;
            while let Some(quot) = rest.div_exact(p, ctx)? {
                rest = quot;
                e += 1;
            }
            if e > 0 {
                factors.push((p.clone(), e));
            }
        }
    }
    if rest.deg_i() > 0 {
        factors.push((rest, 1));
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.deg_i()
            .cmp(&b.deg_i())
            .then_with(|| a.monic_index(q).cmp(&b.monic_index(q)))
    });
    Ok(Factorization { unit, factors })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithFn {
    Mobius,
    Mangoldt,
    Tau,
}

/// Evaluates mu, Lambda or tau at a nonzero polynomial. All three depend
/// only on the monic part; Lambda is nonzero only on prime powers.
pub fn arith_fn(
    f: &Poly,
    which: ArithFn,
    ctx: &FieldCtx,
    table: &IrreducibleTable,
) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial(match which {
            ArithFn::Mobius => "mobius",
            ArithFn::Mangoldt => "mangoldt",
            ArithFn::Tau => "tau",
        }));
    }
    let fact = factorize(f, ctx, table)?;
    Ok(match which {
        ArithFn::Mobius => fact.mobius(),
        ArithFn::Mangoldt => fact.mangoldt(),
        ArithFn::Tau => fact.tau(),
    })
}
