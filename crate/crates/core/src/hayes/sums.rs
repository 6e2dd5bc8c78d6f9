//! Per-degree class histograms of 1, mu and Lambda over A_n.
//!
//! Built once per group by a single pass over A_0..A_{n_max}; every
//! character sum of the form `sum_{f in A_n} w(f) lambda(f)` is then a
//! pass over the group elements.

use rayon::prelude::*;

use super::group::HayesGroup;
use crate::enumerate::split_range;
use crate::error::{Budget, Result};
use crate::field::Fq;
use crate::sieve::ArithTable;

#[derive(Debug, Clone)]
pub struct ClassSums {
    n_max: usize,
    /// `count[n][e]`: number of f in A_n in class e.
    count: Vec<Vec<i64>>,
    mobius: Vec<Vec<i64>>,
    mangoldt: Vec<Vec<i64>>,
}

#[derive(Clone)]
struct Acc {
    count: Vec<i64>,
    mobius: Vec<i64>,
    mangoldt: Vec<i64>,
}

impl Acc {
    fn new(n: usize) -> Self {
        Acc {
            count: vec![0; n],
            mobius: vec![0; n],
            mangoldt: vec![0; n],
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        for (a, b) in [
            (&mut self.count, &other.count),
            (&mut self.mobius, &other.mobius),
            (&mut self.mangoldt, &other.mangoldt),
        ] {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self
    }
}

impl ClassSums {
    /// `arith` must cover degree `n_max`; `budget` bounds `q^{n_max}`.
    pub fn build(group: &HayesGroup, arith: &ArithTable, n_max: usize, budget: Budget) -> Result<Self> {
        let ctx = group.ctx();
        let q = ctx.q();
        budget.check_pow(q as u64, n_max as u32)?;
        assert!(arith.max_degree() >= n_max, "arithmetic table too short");
        let hm = group.modulus();
        let index = group.index_table();
        let order = group.order();
        let mut out = ClassSums {
            n_max,
            count: Vec::new(),
            mobius: Vec::new(),
            mangoldt: Vec::new(),
        };
        for n in 0..=n_max {
            let len = q.pow(n as u32);
            let parts = split_range(len, rayon::current_num_threads());
            let mu = arith.mobius(n);
            let lam = arith.mangoldt(n);
            let acc = parts
                .into_par_iter()
                .map(|range| {
                    let mut acc = Acc::new(order);
                    let mut coeffs = vec![Fq::ZERO; n];
                    coeffs.push(Fq::ONE);
                    let mut scratch = Vec::new();
                    for idx in range {
                        let mut rest = idx;
                        for c in coeffs.iter_mut().take(n) {
                            *c = Fq((rest % q) as u8);
                            rest /= q;
                        }
                        let e = index[hm.id_of_monic(&coeffs, &mut scratch, ctx)];
                        if e == u32::MAX {
                            continue;
                        }
                        let e = e as usize;
                        acc.count[e] += 1;
                        acc.mobius[e] += i64::from(mu[idx]);
                        acc.mangoldt[e] += i64::from(lam[idx]);
                    }
                    acc
                })
                .reduce(|| Acc::new(order), Acc::merge);
            out.count.push(acc.count);
            out.mobius.push(acc.mobius);
            out.mangoldt.push(acc.mangoldt);
        }
        Ok(out)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn count(&self, n: usize) -> &[i64] {
        &self.count[n]
    }

    pub fn mobius(&self, n: usize) -> &[i64] {
        &self.mobius[n]
    }

    pub fn mangoldt(&self, n: usize) -> &[i64] {
        &self.mangoldt[n]
    }
}
