//! The finite abelian group G_{l,Q} of invertible classes, its invariant
//! factor decomposition and discrete logarithms.

use super::class::HayesModulus;
use super::snf::smith;
use crate::error::{Budget, Error, Result};
use crate::factor::factorize;
use crate::field::FieldCtx;
use crate::poly::Poly;
use crate::sieve::IrreducibleTable;

const NONE: u32 = u32::MAX;

/// Default bound on the group order.
pub const DEFAULT_GROUP_BUDGET: Budget = Budget(100_000);

#[derive(Debug, Clone)]
pub struct HayesGroup {
    modulus: HayesModulus,
    ctx: FieldCtx,
    /// Class ids of the invertible classes, ascending.
    elements: Vec<usize>,
    /// Class id to element index, or `NONE`.
    index_of: Vec<u32>,
    /// Invariant factors `m_1 | m_2 | ...`, all > 1.
    invariants: Vec<u64>,
    /// Element index of the generator of each cyclic factor.
    generators: Vec<usize>,
    /// `dlog[e * r + i]` is the `i`-th coordinate of element `e`.
    dlog: Vec<u32>,
    /// Degrees of the distinct monic primes dividing Q.
    prime_degrees: Vec<usize>,
}

impl HayesGroup {
    pub fn build(modulus: HayesModulus, ctx: &FieldCtx, budget: Budget) -> Result<Self> {
        let q = ctx.q() as u64;
        let m = modulus.m();
        let irr = IrreducibleTable::build(ctx, m / 2, Budget::DEFAULT)?;
        let fac = factorize(modulus.modulus(), ctx, &irr)?;
        let prime_degrees: Vec<usize> = fac.factors.iter().map(|(p, _)| p.degree().unwrap()).collect();
        // order = q^l phi(Q), phi(Q) = q^m prod (1 - q^{-deg P}).
        let mut order = q.checked_pow((modulus.l() + m) as u32).ok_or(Error::Budget {
            needed: u64::MAX,
            budget: budget.0,
        })?;
        for &d in &prime_degrees {
            order = order / q.pow(d as u32) * (q.pow(d as u32) - 1);
        }
        budget.check(order)?;

        let class_count = modulus.class_count();
        let mut elements = Vec::with_capacity(order as usize);
        let mut index_of = vec![NONE; class_count];
        for id in 0..class_count {
            if modulus.is_invertible(&modulus.class_from_id(id), ctx) {
                index_of[id] = elements.len() as u32;
                elements.push(id);
            }
        }
        if elements.len() as u64 != order {
            return Err(Error::Identity(format!(
                "found {} invertible classes, expected q^l phi(Q) = {order}",
                elements.len()
            )));
        }
        let mut group = HayesGroup {
            modulus,
            ctx: ctx.clone(),
            elements,
            index_of,
            invariants: Vec::new(),
            generators: Vec::new(),
            dlog: Vec::new(),
            prime_degrees,
        };
        group.decompose()?;
        Ok(group)
    }

    /// Builds a polycyclic presentation by adjoining elements one at a time,
    /// then diagonalizes its relation matrix.
    fn decompose(&mut self) -> Result<()> {
        let n = self.elements.len();
        let identity = self.identity_index();
        let mut coords: Vec<Option<Vec<i128>>> = vec![None; n];
        coords[identity] = Some(Vec::new());
        let mut members = vec![identity];
        let mut gens: Vec<usize> = Vec::new();
        let mut relations: Vec<(usize, i128, Vec<i128>)> = Vec::new();
        while members.len() < n {
            let g = (0..n).find(|&e| coords[e].is_none()).unwrap();
            let k = gens.len();
            let mut x = g;
            let mut r: i128 = 1;
            while coords[x].is_none() {
                x = self.mul(x, g);
                r += 1;
            }
            relations.push((k, r, coords[x].clone().unwrap()));
            for c in coords.iter_mut().flatten() {
                c.push(0);
            }
            let base = members.clone();
            let mut gj = identity;
            for j in 1..r {
                gj = self.mul(gj, g);
                for &h in &base {
                    let e = self.mul(gj, h);
                    let mut c = coords[h].clone().unwrap();
                    c[k] = j;
                    debug_assert!(coords[e].is_none());
                    coords[e] = Some(c);
                    members.push(e);
                }
            }
            gens.push(g);
        }
        let k = gens.len();
        let matrix: Vec<Vec<i128>> = relations
            .into_iter()
            .map(|(i, r, mut c)| {
                c.resize(k, 0);
                for x in c.iter_mut() {
                    *x = -*x;
                }
                c[i] += r;
                c
            })
            .collect();
        let s = smith(matrix);
        let keep: Vec<usize> = (0..k).filter(|&i| s.diag[i] > 1).collect();
        let product: i128 = keep.iter().map(|&i| s.diag[i]).product();
        if product != n as i128 {
            return Err(Error::Identity(format!(
                "invariant factors multiply to {product}, group order is {n}"
            )));
        }
        self.invariants = keep.iter().map(|&i| s.diag[i] as u64).collect();
        let r = keep.len();
        self.dlog = vec![0; n * r];
        for (e, c) in coords.iter().enumerate() {
            let c = c.as_ref().unwrap();
            for (slot, &i) in keep.iter().enumerate() {
                let v: i128 = (0..k).map(|j| c[j] * s.v[j][i]).sum();
                self.dlog[e * r + slot] = v.rem_euclid(s.diag[i]) as u32;
            }
        }
        self.generators = keep
            .iter()
            .map(|&i| {
                (0..k).fold(identity, |acc, j| {
                    let exp = s.v_inv[i][j].rem_euclid(n as i128) as u64;
                    self.mul(acc, self.pow(gens[j], exp))
                })
            })
            .collect();
        Ok(())
    }

    pub fn modulus(&self) -> &HayesModulus {
        &self.modulus
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Invariant factors, each dividing the next; empty for the trivial group.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    /// `(generator element index, cyclic order)` per factor.
    pub fn structure(&self) -> Vec<(usize, u64)> {
        self.generators.iter().copied().zip(self.invariants.iter().copied()).collect()
    }

    /// The exponent of the group: the largest invariant factor.
    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn class_id(&self, e: usize) -> usize {
        self.elements[e]
    }

    /// Element index of a class id, if invertible.
    pub fn element_of_id(&self, id: usize) -> Option<usize> {
        match self.index_of[id] {
            NONE => None,
            e => Some(e as usize),
        }
    }

    /// Element index of the class of `f`, `None` when not coprime to Q.
    pub fn element_of(&self, f: &Poly) -> Result<Option<usize>> {
        let class = self.modulus.class_of(f, &self.ctx)?;
        Ok(self.element_of_id(self.modulus.id(&class)))
    }

    pub fn identity_index(&self) -> usize {
        let id = self.modulus.id(&self.modulus.identity());
        self.index_of[id] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let ca = self.modulus.class_from_id(self.elements[a]);
        let cb = self.modulus.class_from_id(self.elements[b]);
        let id = self.modulus.id(&self.modulus.mul(&ca, &cb, &self.ctx));
        self.index_of[id] as usize
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.identity_index();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn dlog(&self, e: usize) -> &[u32] {
        let r = self.rank();
        &self.dlog[e * r..(e + 1) * r]
    }

    pub fn prime_degrees(&self) -> &[usize] {
        &self.prime_degrees
    }

    /// Class id to element index, `u32::MAX` for non-invertible classes.
    pub(crate) fn index_table(&self) -> &[u32] {
        &self.index_of
    }
}
