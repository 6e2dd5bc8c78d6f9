//! Irreducible tables and full-degree arithmetic-function caches.
//!
//! Both are built from one primitive: a depth-first walk that produces every
//! monic polynomial of degree at most `n` exactly once, as an ordered
//! product of powers of known irreducibles. Irreducibles of degree `d` are
//! then the monics of degree `d` the walk over lower-degree irreducibles
//! never reaches.

use crate::error::{Budget, Result};
use crate::field::{FieldCtx, Fq};
use crate::poly::{code_of, mul_into, Poly};

/// Monic irreducibles of each degree up to a bound, in A_n index order.
#[derive(Debug, Clone)]
pub struct IrreducibleTable {
    q: usize,
    by_degree: Vec<Vec<Poly>>,
}

/// Visits every monic of degree `1..=max_deg` built from `irreducibles`
/// (sorted by degree), passing its coefficients and its factorization as
/// `(irreducible position, exponent)` pairs in increasing position.
pub(crate) fn for_each_factored<F>(
    ctx: &FieldCtx,
    irreducibles: &[Poly],
    max_deg: usize,
    mut visit: F,
) where
    F: FnMut(&[Fq], &[(usize, u32)]),
{
    fn walk<F: FnMut(&[Fq], &[(usize, u32)])>(
        ctx: &FieldCtx,
        irr: &[Poly],
        max_deg: usize,
        start: usize,
        cur: &[Fq],
        factors: &mut Vec<(usize, u32)>,
        visit: &mut F,
    ) {
        let cur_deg = cur.len() - 1;
        for (idx, p) in irr.iter().enumerate().skip(start) {
            let dp = p.coeffs().len() - 1;
            if cur_deg + dp > max_deg {
                break;
            }
            let mut prod = cur.to_vec();
            let mut e = 0u32;
            while prod.len() - 1 + dp <= max_deg {
                let mut next = vec![Fq::ZERO; prod.len() + dp];
                mul_into(&prod, p.coeffs(), &mut next, ctx);
                prod = next;
                e += 1;
                factors.push((idx, e));
                visit(&prod, factors);
                walk(ctx, irr, max_deg, idx + 1, &prod, factors, visit);
                factors.pop();
            }
        }
    }
    let mut factors = Vec::new();
    walk(
        ctx,
        irreducibles,
        max_deg,
        0,
        &[Fq::ONE],
        &mut factors,
        &mut visit,
    );
}

/// Number of monic irreducibles of degree `n` over F_q by the necklace
/// formula `(1/n) sum_{d | n} mu(d) q^{n/d}`.
pub fn necklace_count(q: u64, n: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += integer_mobius(d) as i128 * (q as i128).pow(n / d);
        }
    }
    (total / n as i128) as u64
}

/// Classical Möbius function on positive integers.
pub fn integer_mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

impl IrreducibleTable {
    /// Sieves irreducibles of degree `1..=max_degree`.
    pub fn build(ctx: &FieldCtx, max_degree: usize, budget: Budget) -> Result<Self> {
        let q = ctx.q();
        budget.check_pow(q as u64, max_degree as u32)?;
        let mut by_degree: Vec<Vec<Poly>> = vec![Vec::new(); max_degree + 1];
        let mut known: Vec<Poly> = Vec::new();
        for d in 1..=max_degree {
            let size = q.pow(d as u32);
            let mut reducible = vec![false; size];
            for_each_factored(ctx, &known, d, |coeffs, factors| {
                if coeffs.len() == d + 1 && !(factors.len() == 1 && factors[0].1 == 1) {
                    reducible[code_of(&coeffs[..d], q)] = true;
                }
            });
            let found: Vec<Poly> = (0..size)
                .filter(|&i| !reducible[i])
                .map(|i| Poly::from_monic_index(d, i, q))
                .collect();
            known.extend(found.iter().cloned());
            by_degree[d] = found;
        }
        Ok(IrreducibleTable { q, by_degree })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn of_degree(&self, d: usize) -> &[Poly] {
        self.by_degree.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All irreducibles up to the table's degree, sorted by degree then index.
    pub fn all(&self) -> impl Iterator<Item = &Poly> {
        self.by_degree.iter().flatten()
    }

    /// Irreducibles of degree at most `d`, as an owned sorted list.
    pub fn up_to(&self, d: usize) -> Vec<Poly> {
        self.by_degree
            .iter()
            .take(d + 1)
            .flatten()
            .cloned()
            .collect()
    }
}

/// Flat per-degree caches of mu, Lambda and tau over every A_k, k <= n,
/// indexed by the A_k index.
#[derive(Debug, Clone)]
pub struct ArithTable {
    q: usize,
    max_degree: usize,
    mobius: Vec<Vec<i8>>,
    mangoldt: Vec<Vec<u16>>,
    tau: Vec<Vec<u32>>,
}

impl ArithTable {
    /// Builds the caches for all monics of degree `0..=n`. The cost and
    /// memory are proportional to `q^n`; `budget` bounds `q^n`.
    pub fn build(ctx: &FieldCtx, n: usize, budget: Budget) -> Result<Self> {
        let irr = IrreducibleTable::build(ctx, n, budget)?;
        Ok(Self::from_irreducibles(ctx, &irr, n))
    }

    pub fn from_irreducibles(ctx: &FieldCtx, irr: &IrreducibleTable, n: usize) -> Self {
        assert!(irr.max_degree() >= n, "irreducible table too short");
        let q = ctx.q();
        let primes = irr.up_to(n);
        let mut mobius: Vec<Vec<i8>> = (0..=n).map(|k| vec![0i8; q.pow(k as u32)]).collect();
        let mut mangoldt: Vec<Vec<u16>> = (0..=n).map(|k| vec![0u16; q.pow(k as u32)]).collect();
        let mut tau: Vec<Vec<u32>> = (0..=n).map(|k| vec![0u32; q.pow(k as u32)]).collect();
        mobius[0][0] = 1;
        tau[0][0] = 1;
        for_each_factored(ctx, &primes, n, |coeffs, factors| {
            let d = coeffs.len() - 1;
            let idx = code_of(&coeffs[..d], q);
            let squarefree = factors.iter().all(|&(_, e)| e == 1);
            mobius[d][idx] = if squarefree {
                if factors.len() % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            if factors.len() == 1 {
                mangoldt[d][idx] = (primes[factors[0].0].coeffs().len() - 1) as u16;
            }
            tau[d][idx] = factors.iter().map(|&(_, e)| e + 1).product();
        });
        ArithTable {
            q,
            max_degree: n,
            mobius,
            mangoldt,
            tau,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// mu over A_k by index.
    pub fn mobius(&self, k: usize) -> &[i8] {
        &self.mobius[k]
    }

    pub fn mangoldt(&self, k: usize) -> &[u16] {
        &self.mangoldt[k]
    }

    pub fn tau(&self, k: usize) -> &[u32] {
        &self.tau[k]
    }

    /// mu of a monic polynomial covered by the table.
    pub fn mobius_of(&self, f: &Poly) -> i8 {
        let d = f.degree().expect("nonzero");
        self.mobius[d][f.monic_index(self.q)]
    }

    /// mu over G_n indexed by the G_n index, extended to non-monic
    /// polynomials by `mu(c f) = mu(f)` and `mu(0) = 0`.
    pub fn mobius_g(&self, ctx: &FieldCtx, n: usize) -> Vec<i8> {
        assert!(n == 0 || n - 1 <= self.max_degree);
        let q = self.q;
        let mut out = vec![0i8; q.pow(n as u32)];
        let mut digits = vec![Fq::ZERO; n];
        for k in 0..n {
            let qk = q.pow(k as u32);
            for c in ctx.nonzero() {
                for (idx, &m) in self.mobius[k].iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    let mut rest = idx;
                    for slot in digits.iter_mut().take(k) {
                        *slot = ctx.mul(c, Fq((rest % q) as u8));
                        rest /= q;
                    }
                    let code = code_of(&digits[..k], q) + c.code() * qk;
                    out[code] = m;
                }
            }
        }
        out
    }
}
