//! Vaughan's identity for mu over F_q[t]: the pointwise audit, the
//! coefficient bounds and the type I / type II split of a correlation sum.
//!
//! With `S1(f) = sum_{ab | f, deg a <= u, deg b <= v} mu(a) mu(b)` and
//! `S2(f) = sum_{ab | f, deg a > u, deg b > v} mu(a) mu(b)` the identity
//! reads `mu(f) = -S1(f) + S2(f)`. It does not hold for every `f`; the audit
//! records exactly where it fails.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Budget, Error, Result};
use crate::field::{is_prime, FieldCtx, Fq};
use crate::histogram::ExpHistogram;
use crate::poly::{code_of, digits_of, mul_into, Poly};
use crate::sieve::{for_each_factored, ArithTable, IrreducibleTable};

/// `u = v = floor(n / 18)`.
pub fn default_cutoff(n: usize) -> usize {
    n / 18
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditFailure {
    pub u: usize,
    pub v: usize,
    pub degree: usize,
    /// Monic `f` of this degree where the identity fails.
    pub count: u64,
    /// The failing `f` with the smallest A_n index.
    pub example: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointwiseAudit {
    pub q: usize,
    pub deg_max: usize,
    pub max_uv: usize,
    /// Monic polynomials checked, `f = 1` included.
    pub checked: u64,
    /// One entry per `(u, v, degree)` with at least one failure.
    pub failures: Vec<AuditFailure>,
    /// `max |a_d| / tau(d)` and `max |b_d| / tau(d)` over all `d` and cutoffs.
    pub max_a_ratio: f64,
    pub max_b_ratio: f64,
}

impl PointwiseAudit {
    pub fn failing_degrees(&self, u: usize, v: usize) -> Vec<usize> {
        self.failures
            .iter()
            .filter(|f| f.u == u && f.v == v)
            .map(|f| f.degree)
            .collect()
    }

    /// Degrees `0..=deg_max` with no failure at `(u, v)`.
    pub fn valid_degrees(&self, u: usize, v: usize) -> Vec<usize> {
        let bad = self.failing_degrees(u, v);
        (0..=self.deg_max).filter(|d| !bad.contains(d)).collect()
    }

    /// Whether every failure at `(u, v)` has degree at most `u + v`.
    pub fn holds_above_sum(&self, u: usize, v: usize) -> bool {
        self.failing_degrees(u, v).iter().all(|&d| d <= u + v)
    }

    /// Whether every failure at `(u, v)` has degree at most `max(u, v)`.
    pub fn holds_above_max(&self, u: usize, v: usize) -> bool {
        self.failing_degrees(u, v).iter().all(|&d| d <= u.max(v))
    }
}

/// Grid `c[i][j] = sum mu(a) mu(b)` over `ab | f` with `min(deg a, cap) = i`,
/// `min(deg b, cap) = j`.
fn divisor_pair_grid(factors: &[(usize, u32)], degs: &[usize], cap: usize) -> Vec<i64> {
    let w = cap + 1;
    let mut grid = vec![0i64; w * w];
    grid[0] = 1;
    for &(idx, e) in factors {
        let dp = degs[idx];
        let mut next = grid.clone();
        for i in 0..w {
            for j in 0..w {
                let c = grid[i * w + j];
                if c == 0 {
                    continue;
                }
                let ia = (i + dp).min(cap);
                let jb = (j + dp).min(cap);
                next[ia * w + j] -= c;
                next[i * w + jb] -= c;
                if e >= 2 {
                    next[ia * w + jb] += c;
                }
            }
        }
        grid = next;
    }
    grid
}

/// Grid of `mu(a) mu(b)` over factorizations `ab = d`, capped as above.
/// Empty when `d` is divisible by a cube.
fn product_pair_grid(factors: &[(usize, u32)], degs: &[usize], cap: usize) -> Vec<i64> {
    let w = cap + 1;
    let mut grid = vec![0i64; w * w];
    if factors.iter().any(|&(_, e)| e >= 3) {
        return grid;
    }
    grid[0] = 1;
    for &(idx, e) in factors {
        let dp = degs[idx];
        let mut next = vec![0i64; w * w];
        for i in 0..w {
            for j in 0..w {
                let c = grid[i * w + j];
                if c == 0 {
                    continue;
                }
                let ia = (i + dp).min(cap);
                let jb = (j + dp).min(cap);
                if e == 1 {
                    next[ia * w + j] -= c;
                    next[i * w + jb] -= c;
                } else {
                    next[ia * w + jb] += c;
                }
            }
        }
        grid = next;
    }
    grid
}

/// `row[i] = sum mu(a)` over `a | d` with `min(deg a, cap) = i`.
fn divisor_row(factors: &[(usize, u32)], degs: &[usize], cap: usize) -> Vec<i64> {
    let mut row = vec![0i64; cap + 1];
    row[0] = 1;
    for &(idx, _) in factors {
        let mut next = row.clone();
        for i in 0..=cap {
            next[(i + degs[idx]).min(cap)] -= row[i];
        }
        row = next;
    }
    row
}

fn mobius_from(factors: &[(usize, u32)]) -> i64 {
    if factors.iter().any(|&(_, e)| e >= 2) {
        0
    } else if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn grid_sums(grid: &[i64], cap: usize, u: usize, v: usize) -> (i64, i64) {
    let w = cap + 1;
    let (mut low, mut high) = (0, 0);
    for i in 0..w {
        for j in 0..w {
            if i <= u && j <= v {
                low += grid[i * w + j];
            } else if i > u && j > v {
                high += grid[i * w + j];
            }
        }
    }
    (low, high)
}

struct Visit<'a> {
    coeffs: &'a [Fq],
    factors: &'a [(usize, u32)],
}

fn for_each_monic(ctx: &FieldCtx, irr: &IrreducibleTable, deg_max: usize, mut f: impl FnMut(Visit<'_>)) {
    f(Visit {
        coeffs: &[Fq::ONE],
        factors: &[],
    });
    let primes = irr.up_to(deg_max);
    for_each_factored(ctx, &primes, deg_max, |coeffs, factors| f(Visit { coeffs, factors }));
}

/// Checks the pointwise identity for every monic `f` with `deg f <= deg_max`
/// and every `0 <= u, v <= max_uv`, and the bounds `|a_d|, |b_d| <= tau(d)`
/// where `a_d = sum_{ab = d, deg a <= u, deg b <= v} mu(a) mu(b)` and
/// `b_d = sum_{a | d, deg a > u} mu(a)`.
pub fn vaughan_audit(ctx: &FieldCtx, deg_max: usize, max_uv: usize, budget: Budget) -> Result<PointwiseAudit> {
    let q = ctx.q();
    budget.check_pow(q as u64, deg_max as u32)?;
    let irr = IrreducibleTable::build(ctx, deg_max, budget)?;
    let primes = irr.up_to(deg_max);
    let degs: Vec<usize> = primes.iter().map(|p| p.coeffs().len() - 1).collect();
    let cap = max_uv + 1;
    let mut failures: BTreeMap<(usize, usize, usize), (u64, usize, Vec<Fq>)> = BTreeMap::new();
    let mut checked = 0u64;
    let (mut max_a, mut max_b) = (0f64, 0f64);
    let mut violation: Option<String> = None;
    for_each_monic(ctx, &irr, deg_max, |visit| {
        checked += 1;
        let d = visit.coeffs.len() - 1;
        let index = code_of(&visit.coeffs[..d], q);
        let mu = mobius_from(visit.factors);
        let tau: u32 = visit.factors.iter().map(|&(_, e)| e + 1).product();
        let grid = divisor_pair_grid(visit.factors, &degs, cap);
        let prod = product_pair_grid(visit.factors, &degs, cap);
        let row = divisor_row(visit.factors, &degs, cap);
        for u in 0..=max_uv {
            let b_d: i64 = row[u + 1..].iter().sum();
            max_b = max_b.max(b_d.abs() as f64 / tau as f64);
            if b_d.unsigned_abs() > u64::from(tau) && violation.is_none() {
                violation = Some(format!("|b_d| = {} > tau(d) = {tau} at d = {}, u = {u}", b_d.abs(), Poly::new(visit.coeffs.to_vec())));
            }
            for v in 0..=max_uv {
                let (a_d, _) = grid_sums(&prod, cap, u, v);
                max_a = max_a.max(a_d.abs() as f64 / tau as f64);
                if a_d.unsigned_abs() > u64::from(tau) && violation.is_none() {
                    violation = Some(format!(
                        "|a_d| = {} > tau(d) = {tau} at d = {}, u = {u}, v = {v}",
                        a_d.abs(),
                        Poly::new(visit.coeffs.to_vec())
                    ));
                }
                let (s1, s2) = grid_sums(&grid, cap, u, v);
                if -s1 + s2 != mu {
                    let entry = failures.entry((u, v, d)).or_insert((0, usize::MAX, Vec::new()));
                    entry.0 += 1;
                    if index < entry.1 {
                        entry.1 = index;
                        entry.2 = visit.coeffs.to_vec();
                    }
                }
            }
        }
    });
    if let Some(msg) = violation {
        return Err(Error::Identity(msg));
    }
    let failures = failures
        .into_iter()
        .map(|((u, v, degree), (count, _, coeffs))| AuditFailure {
            u,
            v,
            degree,
            count,
            example: Poly::new(coeffs).to_text(),
        })
        .collect();
    Ok(PointwiseAudit {
        q,
        deg_max,
        max_uv,
        checked,
        failures,
        max_a_ratio: max_a,
        max_b_ratio: max_b,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct VaughanReport {
    pub n: usize,
    pub u: usize,
    pub v: usize,
    /// Type I sum `sum_d a_d sum_{w != 0} Phi(d w)`.
    pub t1: Complex64,
    /// Type II sum `sum_d b_d sum_{deg w > v} mu(w) Phi(d w)`.
    pub t2: Complex64,
    /// `sum_{f in G_n} mu(f) Phi(f)`.
    pub direct: Complex64,
    /// `|direct - (-t1 + t2)|`.
    pub residual: f64,
    /// Degrees below `n` where the pointwise identity holds.
    pub valid_degrees: Vec<usize>,
    pub restricted_t1: Complex64,
    pub restricted_t2: Complex64,
    pub restricted_direct: Complex64,
    /// Residual with every sum restricted to `deg f` in `valid_degrees`.
    pub restricted_residual: f64,
    pub pointwise_failures: Vec<AuditFailure>,
}

struct Parts {
    full: ExpHistogram,
    restricted: ExpHistogram,
}

impl Parts {
    fn new(p: u32) -> Self {
        Parts {
            full: ExpHistogram::new(p),
            restricted: ExpHistogram::new(p),
        }
    }

    fn merged(mut self, other: Parts) -> Self {
        self.full.merge(&other.full);
        self.restricted.merge(&other.restricted);
        self
    }
}

fn degree_of_index(idx: usize, q: usize) -> Option<usize> {
    if idx == 0 {
        return None;
    }
    let (mut d, mut x) = (0, idx);
    while x >= q {
        x /= q;
        d += 1;
    }
    Some(d)
}

fn residual_of(h: &ExpHistogram) -> f64 {
    if is_prime(h.modulus()) && h.is_exactly_zero_prime() {
        0.0
    } else {
        h.to_complex().norm()
    }
}

/// Splits `sum_{f in G_n} mu(f) Phi(f)` into type I and type II sums.
/// `exps[i]` is the exponent of `Phi` at the G_n element of index `i`.
pub fn vaughan_decompose(
    exps: &[u32],
    n: usize,
    u: usize,
    v: usize,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<VaughanReport> {
    let q = ctx.q();
    let p = ctx.p();
    if n == 0 || u + v >= n {
        return Err(Error::InvalidArgument(format!("Vaughan split needs u + v < n, got u = {u}, v = {v}, n = {n}")));
    }
    if exps.len() != q.pow(n as u32) {
        return Err(Error::Dimension(format!("phase table has {} entries, G_n has q^{n}", exps.len())));
    }
    if arith.max_degree() + 1 < n {
        return Err(Error::InvalidArgument(format!(
            "arithmetic table of degree {} does not cover G_{n}",
            arith.max_degree()
        )));
    }
    budget.check((n as u64 + 1).saturating_mul(exps.len() as u64))?;
    let audit = vaughan_audit(ctx, n - 1, u.max(v), budget)?;
    let valid_degrees = audit.valid_degrees(u, v);
    let mut valid = vec![false; n];
    for &d in &valid_degrees {
        valid[d] = true;
    }
    let pointwise_failures: Vec<AuditFailure> =
        audit.failures.iter().filter(|f| f.u == u && f.v == v).cloned().collect();

    // a_d and b_d for monic d of degree < n, as (degree, coefficients, weight).
    let irr = IrreducibleTable::build(ctx, n - 1, budget)?;
    let degs: Vec<usize> = irr.up_to(n - 1).iter().map(|p| p.coeffs().len() - 1).collect();
    let cap = u.max(v) + 1;
    let mut type1: Vec<(Vec<Fq>, i64)> = Vec::new();
    let mut type2: Vec<(Vec<Fq>, i64)> = Vec::new();
    for_each_monic(ctx, &irr, n - 1, |visit| {
        let k = visit.coeffs.len() - 1;
        if k <= u + v {
            let (a_d, _) = grid_sums(&product_pair_grid(visit.factors, &degs, cap), cap, u, v);
            if a_d != 0 {
                type1.push((visit.coeffs.to_vec(), a_d));
            }
        }
        if k + v + 1 < n {
            let b_d: i64 = divisor_row(visit.factors, &degs, cap)[u + 1..].iter().sum();
            if b_d != 0 {
                type2.push((visit.coeffs.to_vec(), b_d));
            }
        }
    });
    let mobius_g: Vec<Vec<i8>> = (0..=n).map(|m| arith.mobius_g(ctx, m)).collect();

    let accumulate = |d: &[Fq], weight: i64, type2: bool, parts: &mut Parts| {
        let k = d.len() - 1;
        let len = n - k;
        let mut out = vec![Fq::ZERO; n];
        for widx in 1..q.pow(len as u32) {
            let w_deg = degree_of_index(widx, q).expect("nonzero");
            let mut wt = weight;
            if type2 {
                if w_deg <= v {
                    continue;
                }
                let mu = mobius_g[len][widx];
                if mu == 0 {
                    continue;
                }
                wt *= i64::from(mu);
            }
            let w = digits_of(widx, q, len);
            out.iter_mut().for_each(|c| *c = Fq::ZERO);
            mul_into(d, &w, &mut out, ctx);
            let e = exps[code_of(&out, q)];
            parts.full.add(e, wt);
            if valid[k + w_deg] {
                parts.restricted.add(e, wt);
            }
        }
    };
    let t1 = type1
        .par_iter()
        .fold(|| Parts::new(p), |mut acc, (d, a)| {
            accumulate(d, *a, false, &mut acc);
            acc
        })
        .reduce(|| Parts::new(p), Parts::merged);
    let t2 = type2
        .par_iter()
        .fold(|| Parts::new(p), |mut acc, (d, b)| {
            accumulate(d, *b, true, &mut acc);
            acc
        })
        .reduce(|| Parts::new(p), Parts::merged);

    let mut direct = Parts::new(p);
    for (idx, &mu) in mobius_g[n].iter().enumerate() {
        if mu == 0 {
            continue;
        }
        direct.full.add(exps[idx], i64::from(mu));
        if valid[degree_of_index(idx, q).expect("mu(0) = 0")] {
            direct.restricted.add(exps[idx], i64::from(mu));
        }
    }

    let diff = |d: &ExpHistogram, a: &ExpHistogram, b: &ExpHistogram| {
        let mut h = d.clone();
        h.merge(a);
        h.merge_scaled(b, -1);
        residual_of(&h)
    };
    Ok(VaughanReport {
        n,
        u,
        v,
        t1: t1.full.to_complex(),
        t2: t2.full.to_complex(),
        direct: direct.full.to_complex(),
        residual: diff(&direct.full, &t1.full, &t2.full),
        valid_degrees: valid_degrees.into_iter().filter(|&d| d < n).collect(),
        restricted_t1: t1.restricted.to_complex(),
        restricted_t2: t2.restricted.to_complex(),
        restricted_direct: direct.restricted.to_complex(),
        restricted_residual: diff(&direct.restricted, &t1.restricted, &t2.restricted),
        pointwise_failures,
    })
}
