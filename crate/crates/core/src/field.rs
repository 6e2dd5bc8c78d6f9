//! The finite field F_q, q = p^s, in a fixed power basis.
//!
//! Elements are integer codes in `[0, q)` whose base-p digits are the
//! coordinates with respect to `1, x, ..., x^{s-1}` where `x` is a root of
//! the field modulus. All operations go through precomputed tables, so the
//! field order is capped at 256.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

/// A field element, stored as its power-basis code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field specification string `p` or `p^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::InvalidField(text.to_string());
        let (p, s) = match text.split_once('^') {
            Some((p, s)) => (p.trim(), s.trim()),
            None => (text, "1"),
        };
        let p: u32 = p.parse().map_err(|_| bad())?;
        let s: u32 = s.parse().map_err(|_| bad())?;
        Ok(FieldSpec { p, s })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.s)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for F_q. Immutable after construction.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    s: u32,
    q: usize,
    /// Monic modulus over F_p, constant term first, length s + 1.
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    trace: Vec<u8>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

// Dense polynomial helpers over F_p with coefficients as u32 digits.
fn fp_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let s = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce from the top using x^s = -(m_0 + ... + m_{s-1} x^{s-1}).
    for d in (s..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for k in 0..s {
            let sub = c * modulus[k] % p;
            prod[d - s + k] = (prod[d - s + k] + p - sub) % p;
        }
    }
    prod.truncate(s);
    prod.resize(s, 0);
    prod
}

fn fp_is_divisible(f: &[u32], g: &[u32], p: u32) -> bool {
    // g monic.
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (k, &gk) in g.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - lead * gk % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn digits_of(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

/// Smallest-code monic irreducible of degree `s` over F_p, where the code
/// of `x^s + c_{s-1} x^{s-1} + ... + c_0` is `sum c_i p^i`.
fn smallest_irreducible(p: u32, s: u32) -> Vec<u32> {
    let s = s as usize;
    if s == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(s as u32) as u32;
    'candidates: for code in 0..count {
        let mut f = digits_of(code, p, s);
        f.push(1);
        for d in 1..=s / 2 {
            let dcount = (p as u64).pow(d as u32) as u32;
            for gcode in 0..dcount {
                let mut g = digits_of(gcode, p, d);
                g.push(1);
                if fp_is_divisible(&f, &g, p) {
                    continue 'candidates;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials of every degree exist")
}

impl FieldCtx {
    pub fn new(p: u32, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (p as u64)
            .checked_pow(s)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| {
                Error::InvalidField(format!("q = {p}^{s} exceeds the supported order {MAX_ORDER}"))
            })? as usize;
        let modulus = smallest_irreducible(p, s);
        let su = s as usize;
        let digits: Vec<Vec<u32>> = (0..q as u32).map(|c| digits_of(c, p, su)).collect();
        let encode = |d: &[u32]| -> u8 {
            let mut code = 0u32;
            for &x in d.iter().rev() {
                code = code * p + x;
            }
            code as u8
        };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = encode(&sum);
                mul[a * q + b] = encode(&fp_mulmod(&digits[a], &digits[b], &modulus, p));
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        // Tr(a) = a + a^p + ... + a^{p^{s-1}}; lands in the prime subfield.
        let mut trace = vec![0u8; q];
        for a in 0..q {
            let mut acc = 0usize;
            let mut frob = a;
            for _ in 0..s {
                acc = add[acc * q + frob] as usize;
                let mut power = 1usize;
                for _ in 0..p {
                    power = mul[power * q + frob] as usize;
                }
                frob = power;
            }
            debug_assert!(acc < p as usize);
            trace[a] = acc as u8;
        }

        Ok(FieldCtx {
            p,
            s,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace,
        })
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        Self::new(spec.p, spec.s)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            s: self.s,
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    /// The modulus over F_p, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|c| Fq(c as u8))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fq> {
        (1..self.q).map(|c| Fq(c as u8))
    }

    pub fn elem(&self, code: usize) -> Result<Fq> {
        if code < self.q {
            Ok(Fq(code as u8))
        } else {
            Err(Error::Parse(format!(
                "element code {code} out of range for q = {}",
                self.q
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u8)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.code() * self.q + b.code()])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.code()])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.code() * self.q + b.code()])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Fq(self.inv[a.code()]))
        }
    }

    /// Inverse of an element already known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Fq) -> Fq {
        debug_assert!(!a.is_zero());
        Fq(self.inv[a.code()])
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to F_p, as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: Fq) -> u32 {
        self.trace[a.code()] as u32
    }

    /// Exponent `k` such that `e_q(a) = exp(2 pi i k / p)`.
    #[inline]
    pub fn eq_exponent(&self, a: Fq) -> u32 {
        self.trace(a)
    }

    /// Trace and the `e_q` exponent (they coincide).
    pub fn trace_and_eq(&self, a: Fq) -> (u32, u32) {
        let t = self.trace(a);
        (t, t)
    }

    /// Table of `Tr(c * a)` for every `a`, i.e. the linear functional
    /// `a -> Tr(c a)` on F_q.
    pub fn trace_form(&self, c: Fq) -> Vec<u8> {
        self.elements()
            .map(|a| self.trace[self.mul(c, a).code()])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_generator_squares_to_x_plus_one() {
        let f = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(Fq(2), Fq(2)), Fq(3));
        assert_eq!(f.trace(Fq(2)), 1);
    }

    #[test]
    fn small_field_facts() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.inv(Fq(2)).unwrap(), Fq(2));
        assert_eq!(f3.inv(Fq(0)), Err(Error::DivisionByZero));
        assert_eq!(f3.div(Fq(1), Fq(0)), Err(Error::DivisionByZero));
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f2.trace_and_eq(Fq(1)), (1, 1));
        for q in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = FieldCtx::new(q.0, q.1).unwrap();
            assert_eq!(f.trace(Fq::ZERO), 0);
            for a in f.elements() {
                assert_eq!(f.add(a, Fq::ZERO), a);
            }
        }
    }

    #[test]
    fn moduli_are_smallest_codes() {
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (7, 1)] {
            let f = FieldCtx::new(p, s).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                    assert_eq!(f.pow(a, f.q() as u64 - 1), Fq::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Trace is F_p-linear.
                    let t = (f.trace(a) + f.trace(b)) % p;
                    assert_eq!(f.trace(f.add(a, b)), t);
                    for c in f.elements() {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            // Trace is onto F_p.
            let hit: std::collections::BTreeSet<u32> = f.elements().map(|a| f.trace(a)).collect();
            assert_eq!(hit.len(), p as usize);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldCtx::new(4, 1).is_err());
        assert!(FieldCtx::new(2, 0).is_err());
        assert!(FieldCtx::new(2, 9).is_err());
        assert_eq!("2^2".parse::<FieldSpec>().unwrap(), FieldSpec { p: 2, s: 2 });
        assert_eq!("3".parse::<FieldSpec>().unwrap(), FieldSpec { p: 3, s: 1 });
        assert!("x".parse::<FieldSpec>().is_err());
    }
}
