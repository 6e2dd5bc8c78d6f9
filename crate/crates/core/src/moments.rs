//! Exact summatory identities over A_n: the prime polynomial theorem,
//! Möbius column sums, and divisor-function moments.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::sieve::ArithTable;

/// `(sum over A_l of Lambda, q^l)`.
pub fn pnt_check(table: &ArithTable, l: usize) -> Result<(u64, u64)> {
    if l == 0 || l > table.max_degree() {
        return Err(Error::InvalidArgument(format!(
            "pnt_check needs 1 <= l <= {}, got {l}",
            table.max_degree()
        )));
    }
    let sum = table.mangoldt(l).iter().map(|&x| x as u64).sum();
    Ok((sum, (table.q() as u64).pow(l as u32)))
}

/// `sum over A_n of mu`.
pub fn mobius_sum(table: &ArithTable, n: usize) -> i64 {
    table.mobius(n).iter().map(|&m| m as i64).sum()
}

/// Value the zeta function predicts for [`mobius_sum`]: the coefficient of
/// `z^n` in `1 - qz`.
pub fn mobius_sum_expected(q: usize, n: usize) -> i64 {
    match n {
        0 => 1,
        1 => -(q as i64),
        _ => 0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisorMoment {
    pub n: usize,
    /// `[u^n] (1 - q u^2)(1 - q u)^{-4} / q^n`.
    #[serde(serialize_with = "ser_ratio")]
    pub mean_series: Ratio<i128>,
    /// `q^{-n} sum over A_n of tau^2`.
    #[serde(serialize_with = "ser_ratio")]
    pub mean_bruteforce: Ratio<i128>,
    /// `4 n^3`.
    pub bound: i64,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Coefficients `0..=n` of the power series `(1 - q u^2)(1 - q u)^{-4}`,
/// expanded by repeated convolution with the geometric series.
pub fn tau_squared_series(q: i128, n: usize) -> Vec<i128> {
    let geometric: Vec<i128> = (0..=n).map(|k| q.pow(k as u32)).collect();
    let mut series = vec![0i128; n + 1];
    series[0] = 1;
    for _ in 0..4 {
        let mut next = vec![0i128; n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                next[i + j] += series[i] * geometric[j];
            }
        }
        series = next;
    }
    let mut out = series.clone();
    for k in 2..=n {
        out[k] -= q * series[k - 2];
    }
    out
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n+3, 3) - C(n+1, 3) / q`, the closed form of the normalized series
/// coefficient.
pub fn tau_squared_mean_closed_form(q: i128, n: usize) -> Ratio<i128> {
    let n = n as i128;
    Ratio::from_integer(binom(n + 3, 3)) - Ratio::new(binom(n + 1, 3), q)
}

pub fn divisor_second_moment(table: &ArithTable, n: usize) -> Result<DivisorMoment> {
    if n == 0 || n > table.max_degree() {
        return Err(Error::InvalidArgument(format!(
            "divisor moment needs 1 <= n <= {}, got {n}",
            table.max_degree()
        )));
    }
    let q = table.q() as i128;
    let qn = q.pow(n as u32);
    let series = tau_squared_series(q, n);
    let brute: i128 = table.tau(n).iter().map(|&t| (t as i128) * (t as i128)).sum();
    Ok(DivisorMoment {
        n,
        mean_series: Ratio::new(series[n], qn),
        mean_bruteforce: Ratio::new(brute, qn),
        bound: 4 * (n as i64).pow(3),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxTauRow {
    pub n: usize,
    pub max_tau: u32,
    /// First maximizer in enumeration order.
    pub argmax: String,
    /// `ln(max tau) / (n / ln n)`; undefined for n = 1.
    pub log_ratio: Option<f64>,
}

pub fn max_tau_report(table: &ArithTable, n_max: usize) -> Result<Vec<MaxTauRow>> {
    if n_max > table.max_degree() {
        return Err(Error::InvalidArgument(format!(
            "table covers degree {} < {n_max}",
            table.max_degree()
        )));
    }
    let q = table.q();
    Ok((1..=n_max)
        .map(|n| {
            let taus = table.tau(n);
            let (idx, &max_tau) = taus
                .iter()
                .enumerate()
                .fold((0, &0u32), |best, cur| if cur.1 > best.1 { cur } else { best });
            let nf = n as f64;
            MaxTauRow {
                n,
                max_tau,
                argmax: Poly::from_monic_index(n, idx, q).to_text(),
                log_ratio: (n > 1).then(|| (max_tau as f64).ln() / (nf / nf.ln())),
            }
        })
        .collect())
}
