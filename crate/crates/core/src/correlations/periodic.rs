//! Correlations of mu with functions constant on Hayes classes, and the
//! reduction of `e(alpha f)` to such a function via a rational
//! approximation of `alpha`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::linear::{linear_corr, linear_exponents, Domain};
use crate::enumerate::split_range;
use crate::error::{Budget, Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::hayes::HayesModulus;
use crate::laurent::{dirichlet_approx, LaurentSeries};
use crate::poly::digits_of;
use crate::sieve::ArithTable;

/// `sum_{f in A_n} mu(f)` per class id.
fn class_mobius_sums(
    n: usize,
    modulus: &HayesModulus,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<Vec<i64>> {
    let q = ctx.q();
    if arith.max_degree() < n {
        return Err(Error::InvalidArgument(format!(
            "arithmetic table of degree {} does not cover A_{n}",
            arith.max_degree()
        )));
    }
    budget.check_pow(q as u64, n as u32)?;
    let classes = modulus.class_count();
    let mu = arith.mobius(n);
    let sums = split_range(mu.len(), rayon::current_num_threads())
        .into_par_iter()
        .map(|range| {
            let mut acc = vec![0i64; classes];
            let mut scratch = Vec::new();
            for idx in range {
                if mu[idx] == 0 {
                    continue;
                }
                let mut coeffs = digits_of(idx, q, n);
                coeffs.push(Fq::ONE);
                acc[modulus.id_of_monic(&coeffs, &mut scratch, ctx)] += i64::from(mu[idx]);
            }
            acc
        })
        .reduce(
            || vec![0i64; classes],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(sums)
}

/// `sum_{f in A_n} F(class(f)) mu(f)` for `F` given on every class id.
pub fn periodic_corr(
    n: usize,
    modulus: &HayesModulus,
    table: &[Complex64],
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<Complex64> {
    if table.len() != modulus.class_count() {
        return Err(Error::Dimension(format!(
            "class table has {} entries, the modulus has {} classes",
            table.len(),
            modulus.class_count()
        )));
    }
    let sums = class_mobius_sums(n, modulus, arith, ctx, budget)?;
    Ok(sums
        .iter()
        .zip(table)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, v)| v * c as f64)
        .sum())
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicReport {
    pub n: usize,
    /// Approximation `alpha = a/g + beta`.
    pub a: String,
    pub g: String,
    pub l: usize,
    pub classes: usize,
    /// Pairs `f, f'` in the same class with `e(alpha f) != e(alpha f')`.
    pub violations: u64,
    /// Smallest A_n index of an `f` disagreeing with its class.
    pub first_violation: Option<String>,
    pub periodic_sum: Complex64,
    pub direct_sum: Complex64,
    pub difference: f64,
}

impl PeriodicReport {
    pub fn audit_passed(&self) -> bool {
        self.violations == 0
    }
}

/// Approximates `alpha` by `a/g`, checks that `f -> e(alpha f)` on A_n is
/// constant on the classes of `(l, g)` with `l = n - floor(n/2) - deg g`,
/// and compares the class-sum route with the direct sum.
pub fn periodic_decomposition(
    alpha: &LaurentSeries,
    n: usize,
    arith: &ArithTable,
    ctx: &FieldCtx,
    budget: Budget,
) -> Result<PeriodicReport> {
    let q = ctx.q();
    let approx = dirichlet_approx(alpha, n, ctx)?;
    let dg = approx.g.degree().expect("g is monic");
    let l = n - n / 2 - dg;
    let modulus = HayesModulus::new(l, approx.g.clone(), ctx)?;
    let exps = linear_exponents(alpha, n, Domain::Monic, ctx, budget)?;

    // First exponent seen per class; every later member must agree.
    let mut table: Vec<Option<u32>> = vec![None; modulus.class_count()];
    let mut violations = 0u64;
    let mut first_violation = None;
    let mut scratch = Vec::new();
    for (idx, &e) in exps.iter().enumerate() {
        let mut coeffs = digits_of(idx, q, n);
        coeffs.push(Fq::ONE);
        let id = modulus.id_of_monic(&coeffs, &mut scratch, ctx);
        match table[id] {
            None => table[id] = Some(e),
            Some(prev) if prev != e => {
                violations += 1;
                if first_violation.is_none() {
                    first_violation = Some(crate::poly::Poly::new(coeffs).to_text());
                }
            }
            Some(_) => {}
        }
    }
    let p = ctx.p() as f64;
    let values: Vec<Complex64> = table
        .iter()
        .map(|e| match e {
            Some(e) => Complex64::from_polar(1.0, std::f64::consts::TAU * f64::from(*e) / p),
            None => Complex64::new(0.0, 0.0),
        })
        .collect();
    let periodic_sum = periodic_corr(n, &modulus, &values, arith, ctx, budget)?;
    let direct_sum = linear_corr(alpha, n, Domain::Monic, arith, ctx, budget)?.sum;
    Ok(PeriodicReport {
        n,
        a: approx.a.to_text(),
        g: approx.g.to_text(),
        l,
        classes: modulus.class_count(),
        violations,
        first_violation,
        periodic_sum,
        difference: (periodic_sum - direct_sum).norm(),
        direct_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hayes::{l_polynomial, ClassSums, HayesGroup};
    use crate::poly::Poly;

    #[test]
    fn constant_one() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let arith = ArithTable::build(&ctx, 8, Budget::DEFAULT).unwrap();
        let modulus = HayesModulus::new(2, Poly::parse(&ctx, "1,1").unwrap(), &ctx).unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); modulus.class_count()];
        for n in 2..=8 {
            let s = periodic_corr(n, &modulus, &ones, &arith, &ctx, Budget::DEFAULT).unwrap();
            assert!(s.norm() < 1e-12);
        }
        assert!(periodic_corr(3, &modulus, &ones[1..], &arith, &ctx, Budget::DEFAULT).is_err());
    }

    #[test]
    fn character_matches_inverse_l_series() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let n_max = 6;
        let arith = ArithTable::build(&ctx, n_max, Budget::DEFAULT).unwrap();
        let modulus = HayesModulus::new(1, Poly::parse(&ctx, "1,0,1").unwrap(), &ctx).unwrap();
        let group = HayesGroup::build(modulus.clone(), &ctx, Budget::DEFAULT).unwrap();
        let sums = ClassSums::build(&group, &arith, n_max, Budget::DEFAULT).unwrap();
        let big = group.exponent() as f64;
        for chi in group.characters().skip(1).step_by(5) {
            let lp = l_polynomial(&group, &sums, &chi).unwrap();
            // 1 / L(z) by series division.
            let mut inv = vec![Complex64::new(0.0, 0.0); n_max + 1];
            inv[0] = Complex64::new(1.0, 0.0);
            for k in 1..=n_max {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 1..=k.min(lp.coeffs.len() - 1) {
                    acc -= lp.coeffs[j] * inv[k - j];
                }
                inv[k] = acc;
            }
            let table: Vec<Complex64> = (0..modulus.class_count())
                .map(|id| match group.element_of_id(id) {
                    Some(e) => Complex64::from_polar(
                        1.0,
                        std::f64::consts::TAU * f64::from(group.char_exponent(&chi, e)) / big,
                    ),
                    None => Complex64::new(0.0, 0.0),
                })
                .collect();
            for (n, want) in inv.iter().enumerate() {
                let got = periodic_corr(n, &modulus, &table, &arith, &ctx, Budget::DEFAULT).unwrap();
                assert!((got - want).norm() < 1e-9, "chi = {}, n = {n}", chi.id);
            }
        }
    }

    #[test]
    fn decomposition_is_periodic_and_agrees() {
        for (p, n) in [(2, 8), (2, 9), (3, 5)] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let arith = ArithTable::build(&ctx, n, Budget::DEFAULT).unwrap();
            for seed in 0..6 {
                let alpha = LaurentSeries::sample_torus(seed, n + 1, &ctx);
                let r = periodic_decomposition(&alpha, n, &arith, &ctx, Budget::DEFAULT).unwrap();
                assert!(r.audit_passed(), "{r:?}");
                assert!(r.difference < 1e-9, "{r:?}");
            }
        }
    }
}
