//! Complex polynomial roots by the Aberth–Ehrlich iteration.
//!
//! Clusters of nearly equal roots (numerically split multiple roots) are
//! merged into one root with multiplicity; the cluster mean is far more
//! accurate than its members. A merge is kept only if the merged
//! factorization still reproduces the input coefficients.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

const CLUSTER_RADIUS: f64 = 1e-3;
const MAX_ITER: usize = 2000;

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of `sum coeffs[k] z^k`, counted with multiplicity. Trailing
/// (highest-degree) zero coefficients must be removed by the caller.
pub fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    assert!(lead.norm() > 0.0, "leading coefficient must be nonzero");
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound on root moduli.
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25) / deg as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, angle)
        })
        .collect();
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Coefficients of `lead * prod (z - r)^m`, lowest degree first.
fn expand(lead: Complex64, roots: &[Root]) -> Vec<Complex64> {
    let mut out = vec![lead];
    for r in roots {
        for _ in 0..r.multiplicity {
            let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
            for (k, &c) in out.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r.value;
            }
            out = next;
        }
    }
    out
}

fn reconstruction_error(coeffs: &[Complex64], roots: &[Root]) -> f64 {
    let lead = *coeffs.last().unwrap();
    let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    expand(lead, roots)
        .iter()
        .zip(coeffs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// A root of multiplicity `m` is a simple root of the `(m-1)`-th
/// derivative; Newton there converges quadratically from the cluster mean.
fn polish(coeffs: &[Complex64], start: Complex64, multiplicity: usize) -> Complex64 {
    let mut d = coeffs.to_vec();
    for _ in 1..multiplicity {
        d = derivative(&d);
    }
    let mut z = start;
    for _ in 0..50 {
        let (p, dp) = eval_with_derivative(&d, z);
        let step = p / dp;
        if !step.is_finite() || (z - step - start).norm() > CLUSTER_RADIUS {
            break;
        }
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Roots with multiplicities.
pub fn roots_with_multiplicity(coeffs: &[Complex64]) -> Vec<Root> {
    let raw = aberth(coeffs);
    let singles: Vec<Root> = raw
        .iter()
        .map(|&value| Root {
            value,
            multiplicity: 1,
        })
        .collect();
    let mut used = vec![false; raw.len()];
    let mut merged = Vec::new();
    for i in 0..raw.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![raw[i]];
        used[i] = true;
        for j in i + 1..raw.len() {
            if !used[j] && (raw[j] - raw[i]).norm() < CLUSTER_RADIUS {
                used[j] = true;
                members.push(raw[j]);
            }
        }
        let mean = members.iter().sum::<Complex64>() / members.len() as f64;
        merged.push(Root {
            value: if members.len() > 1 {
                polish(coeffs, mean, members.len())
            } else {
                mean
            },
            multiplicity: members.len(),
        });
    }
    if merged.len() < singles.len()
        && reconstruction_error(coeffs, &merged) <= reconstruction_error(coeffs, &singles).max(1e-10)
    {
        merged
    } else {
        singles
    }
}
