//! Exact accumulation of root-of-unity sums.
//!
//! A sum `sum_j w_j * zeta^{e_j}` with integer weights and `zeta` a
//! primitive m-th root of unity is accumulated as the integer vector of
//! total weight per exponent, and converted to a complex number once.
//! Accumulation is exact and independent of summation order, so partial
//! histograms from parallel workers merge by vector addition.

use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpHistogram {
    modulus: u32,
    bins: Vec<i64>,
}

impl ExpHistogram {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus >= 1);
        ExpHistogram {
            modulus,
            bins: vec![0; modulus as usize],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn bins(&self) -> &[i64] {
        &self.bins
    }

    #[inline]
    pub fn add(&mut self, exponent: u32, weight: i64) {
        self.bins[(exponent % self.modulus) as usize] += weight;
    }

    pub fn merge(&mut self, other: &ExpHistogram) {
        assert_eq!(self.modulus, other.modulus);
        for (a, b) in self.bins.iter_mut().zip(&other.bins) {
            *a += b;
        }
    }

    /// `self += factor * other`.
    pub fn merge_scaled(&mut self, other: &ExpHistogram, factor: i64) {
        assert_eq!(self.modulus, other.modulus);
        for (a, b) in self.bins.iter_mut().zip(&other.bins) {
            *a += factor * b;
        }
    }

    pub fn merged(mut self, other: ExpHistogram) -> Self {
        self.merge(&other);
        self
    }

    /// Sum of all weights, i.e. the value at `zeta = 1`.
    pub fn total_weight(&self) -> i64 {
        self.bins.iter().sum()
    }

    /// `sum_j bins[j] * exp(2 pi i j / modulus)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.modulus as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &w) in self.bins.iter().enumerate() {
            if w != 0 {
                acc += Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m) * w as f64;
            }
        }
        acc
    }

    /// Exact zero test, valid when the modulus is prime: the only linear
    /// relation among the p-th roots of unity is their vanishing sum.
    pub fn is_exactly_zero_prime(&self) -> bool {
        self.bins.iter().all(|&b| b == self.bins[0])
    }
}
