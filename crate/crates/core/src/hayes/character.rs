//! Characters of G_{l,Q} as exponent vectors against the invariant factors.

use super::group::HayesGroup;
use crate::error::Result;
use crate::histogram::ExpHistogram;
use crate::poly::Poly;

/// `lambda(g) = zeta_L^{sum_i k_i dlog_i(g) L / m_i}` with `L` the group
/// exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HayesCharacter {
    pub id: usize,
    pub exps: Vec<u64>,
}

impl HayesCharacter {
    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }
}

impl HayesGroup {
    /// Number of characters, equal to the group order.
    pub fn character_count(&self) -> usize {
        self.order()
    }

    /// The character with mixed-radix index `id`, first factor fastest;
    /// `id = 0` is principal.
    pub fn character(&self, id: usize) -> HayesCharacter {
        let mut rest = id as u64;
        let exps = self
            .invariants()
            .iter()
            .map(|&m| {
                let k = rest % m;
                rest /= m;
                k
            })
            .collect();
        HayesCharacter { id, exps }
    }

    pub fn characters(&self) -> impl Iterator<Item = HayesCharacter> + '_ {
        (0..self.character_count()).map(|id| self.character(id))
    }

    /// Exponent of `lambda` at element `e`, modulo `self.exponent()`.
    pub fn char_exponent(&self, chi: &HayesCharacter, e: usize) -> u32 {
        let l = self.exponent();
        let mut acc = 0u64;
        for ((&k, &d), &m) in chi.exps.iter().zip(self.dlog(e)).zip(self.invariants()) {
            acc = (acc + k * d as u64 % m * (l / m)) % l;
        }
        acc as u32
    }

    /// `lambda(f)` as an exponent of `zeta_L`, `None` when `gcd(f, Q) != 1`.
    /// Non-monic `f` is normalized first.
    pub fn eval(&self, chi: &HayesCharacter, f: &Poly) -> Result<Option<u32>> {
        Ok(self.element_of(f)?.map(|e| self.char_exponent(chi, e)))
    }

    /// `sum_e weights[e] lambda(e)` over element indices.
    pub fn weighted_sum(&self, chi: &HayesCharacter, weights: &[i64]) -> ExpHistogram {
        let mut h = ExpHistogram::new(self.exponent() as u32);
        for (e, &w) in weights.iter().enumerate() {
            if w != 0 {
                h.add(self.char_exponent(chi, e), w);
            }
        }
        h
    }
}
