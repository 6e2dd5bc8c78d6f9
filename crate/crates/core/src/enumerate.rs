//! Enumeration of A_n, G_n and monic irreducibles in a fixed order.
//!
//! Order is lexicographic in coefficient codes with the constant term
//! varying fastest, i.e. item `i` is the polynomial whose (A_n or G_n)
//! index is `i`. Streams can be cut into disjoint contiguous ranges.

use std::ops::Range;

use crate::poly::Poly;
use crate::sieve::IrreducibleTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolySet {
    /// Monic polynomials of degree exactly n.
    Monic,
    /// All polynomials of degree < n, zero included.
    Below,
}

/// An indexable enumeration of A_n or G_n.
#[derive(Debug, Clone, Copy)]
pub struct Enumeration {
    kind: PolySet,
    n: usize,
    q: usize,
}

impl Enumeration {
    pub fn new(kind: PolySet, n: usize, q: usize) -> Self {
        Enumeration { kind, n, q }
    }

    pub fn monic(n: usize, q: usize) -> Self {
        Self::new(PolySet::Monic, n, q)
    }

    pub fn below(n: usize, q: usize) -> Self {
        Self::new(PolySet::Below, n, q)
    }

    /// `q^n` in both cases.
    pub fn len(&self) -> usize {
        self.q.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: usize) -> Poly {
        match self.kind {
            PolySet::Monic => Poly::from_monic_index(self.n, index, self.q),
            PolySet::Below => Poly::from_g_index(self.n, index, self.q),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Poly> + '_ {
        self.range(0..self.len())
    }

    pub fn range(&self, r: Range<usize>) -> impl Iterator<Item = Poly> + '_ {
        r.map(move |i| self.get(i))
    }

    /// Splits `0..len` into at most `parts` contiguous, disjoint, covering
    /// ranges of near-equal size.
    pub fn split(&self, parts: usize) -> Vec<Range<usize>> {
        split_range(self.len(), parts)
    }
}

pub fn split_range(len: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.max(1).min(len.max(1));
    let chunk = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for i in 0..parts {
        let size = chunk + usize::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// The monic irreducibles of degree `n` from a table that covers `n`.
pub fn irreducibles_of_degree(table: &IrreducibleTable, n: usize) -> &[Poly] {
    table.of_degree(n)
}
