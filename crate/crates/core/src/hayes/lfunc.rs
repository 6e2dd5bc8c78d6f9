//! L-polynomials of Hayes characters and the identities they satisfy.

use num_complex::Complex64;
use serde::Serialize;

use super::character::HayesCharacter;
use super::group::HayesGroup;
use super::sums::ClassSums;
use crate::error::{Error, Result};
use crate::roots::{roots_with_multiplicity, Root};

/// Threshold separating vanishing coefficients from nonzero ones.
pub const VANISH_TOL: f64 = 1e-6;
/// Tolerance on root moduli against `1` and `q^{-1/2}`.
pub const ROOT_TOL: f64 = 1e-6;
/// Tolerance for the Euler-product and log-derivative residuals.
pub const CHECK_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct LPolynomial {
    pub character: usize,
    /// `c_n = sum_{f in A_n} lambda(f)` for `n = 0..=n_max`.
    pub coeffs: Vec<Complex64>,
    /// `l + deg Q`; `c_n` vanishes from here on.
    pub degree_bound: usize,
    /// Largest `n` with `|c_n| >= VANISH_TOL`.
    pub degree: usize,
    #[serde(skip)]
    pub roots: Vec<Root>,
}

impl LPolynomial {
    /// Coefficients `c_0..=c_degree`.
    pub fn polynomial(&self) -> &[Complex64] {
        &self.coeffs[..=self.degree]
    }

    /// Inverse roots `alpha_i` with multiplicity, `L(z) = prod (1 - alpha_i z)`.
    pub fn inverse_roots(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat(r.value.inv()).take(r.multiplicity))
            .collect()
    }
}

fn require_non_principal(chi: &HayesCharacter, what: &str) -> Result<()> {
    if chi.is_principal() {
        Err(Error::InvalidArgument(format!(
            "{what} applies to non-principal characters; use the principal check"
        )))
    } else {
        Ok(())
    }
}

fn character_sum(group: &HayesGroup, chi: &HayesCharacter, weights: &[i64]) -> Complex64 {
    let h = group.weighted_sum(chi, weights);
    if crate::field::is_prime(h.modulus()) && h.is_exactly_zero_prime() {
        Complex64::new(0.0, 0.0)
    } else {
        h.to_complex()
    }
}

/// Computes `c_0..c_{n_max}` by summing over A_n and asserts the degree
/// bound; `sums.n_max()` must reach `l + deg Q`.
pub fn l_polynomial(group: &HayesGroup, sums: &ClassSums, chi: &HayesCharacter) -> Result<LPolynomial> {
    require_non_principal(chi, "l_polynomial")?;
    let hm = group.modulus();
    let bound = hm.l() + hm.m();
    if sums.n_max() < bound {
        return Err(Error::InvalidArgument(format!(
            "n_max = {} does not reach the degree bound l + deg Q = {bound}",
            sums.n_max()
        )));
    }
    let coeffs: Vec<Complex64> = (0..=sums.n_max())
        .map(|n| character_sum(group, chi, sums.count(n)))
        .collect();
    for (n, c) in coeffs.iter().enumerate().skip(bound) {
        if c.norm() >= VANISH_TOL {
            return Err(Error::Identity(format!(
                "character {}: |c_{n}| = {:.3e} beyond the degree bound {bound}",
                chi.id,
                c.norm()
            )));
        }
    }
    let degree = (0..bound).rev().find(|&n| coeffs[n].norm() >= VANISH_TOL).unwrap_or(0);
    let roots = roots_with_multiplicity(&coeffs[..=degree]);
    Ok(LPolynomial {
        character: chi.id,
        coeffs,
        degree_bound: bound,
        degree,
        roots,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootClass {
    Unit,
    InvSqrtQ,
    Fail,
}

impl std::fmt::Display for RootClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RootClass::Unit => "1",
            RootClass::InvSqrtQ => "q^-1/2",
            RootClass::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootEntry {
    pub value: Complex64,
    pub multiplicity: usize,
    pub modulus: f64,
    pub class: RootClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootReport {
    pub character: usize,
    pub entries: Vec<RootEntry>,
}

impl RootReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.class != RootClass::Fail)
    }

    pub fn ensure(&self) -> Result<()> {
        match self.entries.iter().find(|e| e.class == RootClass::Fail) {
            None => Ok(()),
            Some(e) => Err(Error::Identity(format!(
                "character {}: root {} has modulus {}, neither 1 nor q^-1/2",
                self.character, e.value, e.modulus
            ))),
        }
    }
}

pub fn classify_modulus(modulus: f64, q: usize) -> RootClass {
    if (modulus - 1.0).abs() < ROOT_TOL {
        RootClass::Unit
    } else if (modulus - (q as f64).powf(-0.5)).abs() < ROOT_TOL {
        RootClass::InvSqrtQ
    } else {
        RootClass::Fail
    }
}

pub fn rh_check(lp: &LPolynomial, q: usize) -> RootReport {
    RootReport {
        character: lp.character,
        entries: lp
            .roots
            .iter()
            .map(|r| {
                let modulus = r.value.norm();
                RootEntry {
                    value: r.value,
                    multiplicity: r.multiplicity,
                    modulus,
                    class: classify_modulus(modulus, q),
                }
            })
            .collect(),
    }
}

/// One row of a numerical identity check: `lhs` from the L-polynomial,
/// `rhs` from direct enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub n: usize,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

pub fn max_residual(rows: &[Residual]) -> f64 {
    rows.iter().map(|r| r.residual).fold(0.0, f64::max)
}

/// Fails when any residual reaches `tol`.
pub fn ensure_residuals(rows: &[Residual], tol: f64, what: &str) -> Result<()> {
    match rows.iter().find(|r| !(r.residual < tol)) {
        None => Ok(()),
        Some(r) => Err(Error::Identity(format!(
            "{what}: residual {:.3e} at n = {}",
            r.residual, r.n
        ))),
    }
}

fn residual(n: usize, lhs: Complex64, rhs: Complex64) -> Residual {
    Residual {
        n,
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
    }
}

/// Coefficients of `1 / L(z)` against `sum_{f in A_n} mu(f) lambda(f)`.
pub fn euler_inverse_check(
    group: &HayesGroup,
    sums: &ClassSums,
    chi: &HayesCharacter,
    lp: &LPolynomial,
) -> Result<Vec<Residual>> {
    require_non_principal(chi, "euler_inverse_check")?;
    let c = lp.polynomial();
    let mut inv: Vec<Complex64> = Vec::with_capacity(sums.n_max() + 1);
    for n in 0..=sums.n_max() {
        let mut b = if n == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
        for k in 1..=n.min(c.len() - 1) {
            b -= c[k] * inv[n - k];
        }
        inv.push(b / c[0]);
    }
    Ok(inv
        .into_iter()
        .enumerate()
        .map(|(n, lhs)| residual(n, lhs, character_sum(group, chi, sums.mobius(n))))
        .collect())
}

/// `-sum_i alpha_i^n` against `sum_{deg f = n} Lambda(f) lambda(f)`, `n >= 1`.
pub fn log_deriv_check(
    group: &HayesGroup,
    sums: &ClassSums,
    chi: &HayesCharacter,
    lp: &LPolynomial,
) -> Result<Vec<Residual>> {
    require_non_principal(chi, "log_deriv_check")?;
    let alphas = lp.inverse_roots();
    Ok((1..=sums.n_max())
        .map(|n| {
            let lhs = -alphas.iter().map(|a| a.powu(n as u32)).sum::<Complex64>();
            residual(n, lhs, character_sum(group, chi, sums.mangoldt(n)))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactRow {
    pub n: usize,
    /// `sum_{f in A_n, (f, Q) = 1} mu(f)` by enumeration.
    pub enumerated: i64,
    /// Coefficient of `z^n` in `(1 - qz) prod_{P | Q} (1 - z^{deg P})^{-1}`.
    pub series: i64,
}

/// Integer coefficients of `(1 - qz) prod_{P | Q} (1 - z^{deg P})^{-1}`.
pub fn principal_series(q: usize, prime_degrees: &[usize], n_max: usize) -> Vec<i64> {
    let mut s = vec![0i64; n_max + 1];
    s[0] = 1;
    if n_max >= 1 {
        s[1] = -(q as i64);
    }
    for &d in prime_degrees {
        for k in d..=n_max {
            s[k] += s[k - d];
        }
    }
    s
}

pub fn principal_check(group: &HayesGroup, sums: &ClassSums) -> Vec<ExactRow> {
    let series = principal_series(group.ctx().q(), group.prime_degrees(), sums.n_max());
    (0..=sums.n_max())
        .map(|n| ExactRow {
            n,
            enumerated: sums.mobius(n).iter().sum(),
            series: series[n],
        })
        .collect()
}

pub fn ensure_exact(rows: &[ExactRow]) -> Result<()> {
    match rows.iter().find(|r| r.enumerated != r.series) {
        None => Ok(()),
        Some(r) => Err(Error::Identity(format!(
            "principal check: enumeration {} differs from series {} at n = {}",
            r.enumerated, r.series, r.n
        ))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharSumRow {
    pub character: usize,
    pub d: usize,
    pub value: Complex64,
    pub abs: f64,
    /// `log_q |S| / d`; absent when `d = 0` or `S = 0`.
    pub exponent: Option<f64>,
}

/// `|sum_{f in A_d} mu(f) lambda(f)|` and its empirical exponent in `q^d`.
pub fn char_sum_exponent_report(
    group: &HayesGroup,
    sums: &ClassSums,
    chi: &HayesCharacter,
    d_max: usize,
) -> Vec<CharSumRow> {
    let ln_q = (group.ctx().q() as f64).ln();
    (0..=d_max.min(sums.n_max()))
        .map(|d| {
            let value = character_sum(group, chi, sums.mobius(d));
            let abs = value.norm();
            let exponent = (d > 0 && abs >= VANISH_TOL).then(|| abs.ln() / ln_q / d as f64);
            CharSumRow {
                character: chi.id,
                d,
                value,
                abs,
                exponent,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::field::FieldCtx;
    use crate::hayes::{HayesModulus, DEFAULT_GROUP_BUDGET};
    use crate::poly::Poly;
    use crate::sieve::ArithTable;

    fn setup(p: u32, l: usize, q_text: &str, n_max: usize) -> (HayesGroup, ClassSums) {
        let ctx = FieldCtx::new(p, 1).unwrap();
        let hm = HayesModulus::new(l, Poly::parse(&ctx, q_text).unwrap(), &ctx).unwrap();
        let g = HayesGroup::build(hm, &ctx, DEFAULT_GROUP_BUDGET).unwrap();
        let arith = ArithTable::build(&ctx, n_max, Budget::DEFAULT).unwrap();
        let sums = ClassSums::build(&g, &arith, n_max, Budget::DEFAULT).unwrap();
        (g, sums)
    }

    fn close(a: Complex64, re: f64) -> bool {
        (a - Complex64::new(re, 0.0)).norm() < 1e-12
    }

    #[test]
    fn one_minus_z() {
        let (g, sums) = setup(2, 1, "0,1", 4);
        let chi = g.character(1);
        let lp = l_polynomial(&g, &sums, &chi).unwrap();
        assert!(close(lp.coeffs[0], 1.0));
        assert!(close(lp.coeffs[1], -1.0));
        assert!(close(lp.coeffs[2], 0.0));
        assert_eq!(lp.degree, 1);
        let report = rh_check(&lp, 2);
        assert_eq!(report.entries.len(), 1);
        assert!((report.entries[0].modulus - 1.0).abs() < 1e-12);
        assert!(report.passed());

        let euler = euler_inverse_check(&g, &sums, &chi, &lp).unwrap();
        for row in &euler {
            assert!(close(row.rhs, 1.0), "n = {}", row.n);
            assert!(row.residual < 1e-12);
        }
        let ld = log_deriv_check(&g, &sums, &chi, &lp).unwrap();
        assert!(close(ld[0].rhs, -1.0));
        assert!(close(ld[1].rhs, -1.0));
        assert!(max_residual(&ld) < 1e-9);

        let report = char_sum_exponent_report(&g, &sums, &chi, 4);
        assert!(close(report[0].value, 1.0));
        for row in &report[1..] {
            assert!(close(row.value, 1.0));
            assert_eq!(row.exponent, Some(0.0));
        }
    }

    #[test]
    fn principal_rejected() {
        let (g, sums) = setup(2, 1, "0,1", 3);
        let chi = g.character(0);
        assert!(l_polynomial(&g, &sums, &chi).is_err());
    }

    #[test]
    fn principal_series_examples() {
        assert_eq!(principal_series(3, &[], 4), vec![1, -3, 0, 0, 0]);
        assert_eq!(principal_series(2, &[1], 4), vec![1, -1, -1, -1, -1]);
        assert_eq!(principal_series(2, &[1, 1], 4), vec![1, 0, -1, -2, -3]);
        for (p, qt) in [(2, "1"), (3, "1"), (2, "0,1"), (2, "0,1,1"), (3, "0,0,1"), (2, "1,1,0,1")] {
            let (g, sums) = setup(p, 0, qt, 6);
            ensure_exact(&principal_check(&g, &sums)).unwrap();
        }
    }

    #[test]
    fn irreducible_cubic_modulus() {
        let (g, sums) = setup(2, 0, "1,1,0,1", 6);
        assert_eq!(g.order(), 7);
        for chi in g.characters().skip(1) {
            let lp = l_polynomial(&g, &sums, &chi).unwrap();
            assert!(lp.degree <= 2);
            rh_check(&lp, 2).ensure().unwrap();
            ensure_residuals(&euler_inverse_check(&g, &sums, &chi, &lp).unwrap(), CHECK_TOL, "euler").unwrap();
            ensure_residuals(&log_deriv_check(&g, &sums, &chi, &lp).unwrap(), CHECK_TOL, "logderiv").unwrap();
        }
    }

    #[test]
    fn square_modulus_over_f3() {
        let (g, sums) = setup(3, 0, "0,0,1", 5);
        for chi in g.characters().skip(1) {
            let lp = l_polynomial(&g, &sums, &chi).unwrap();
            let report = rh_check(&lp, 3);
            report.ensure().unwrap();
        }
    }
}
