//! Classes of monic polynomials modulo the relation R_{l,Q}: same residue
//! mod Q and same first `l` coefficients after the leading one.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::poly::{code_of, digits_of, Poly};

/// The pair `(l, Q)` defining R_{l,Q}, with `Q` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HayesModulus {
    l: usize,
    modulus: Poly,
    q: usize,
}

/// A class: residue mod Q and the head `(a_1, ..., a_l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HayesClass {
    pub residue: Poly,
    pub head: Vec<Fq>,
}

impl HayesModulus {
    pub fn new(l: usize, modulus: Poly, ctx: &FieldCtx) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "Hayes modulus Q = {modulus} must be monic"
            )));
        }
        Ok(HayesModulus {
            l,
            modulus,
            q: ctx.q(),
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `deg Q`.
    pub fn m(&self) -> usize {
        self.modulus.degree().expect("monic")
    }

    /// Number of classes of M / R_{l,Q}, invertible or not: `q^{l+m}`.
    pub fn class_count(&self) -> usize {
        self.q.pow((self.l + self.m()) as u32)
    }

    fn head_count(&self) -> usize {
        self.q.pow(self.l as u32)
    }

    /// The class of `f`; non-monic input is first made monic.
    pub fn class_of(&self, f: &Poly, ctx: &FieldCtx) -> Result<HayesClass> {
        let (_, f) = f
            .monic_part(ctx)
            .map_err(|_| Error::ZeroPolynomial("class_of"))?;
        let residue = f.rem(&self.modulus, ctx)?;
        let n = f.degree().expect("nonzero");
        let head = (1..=self.l)
            .map(|i| if i <= n { f.coeff(n - i) } else { Fq::ZERO })
            .collect();
        Ok(HayesClass { residue, head })
    }

    /// Dense id of a class: `residue_code * q^l + head_code`.
    pub fn id(&self, class: &HayesClass) -> usize {
        let m = self.m();
        let mut res = class.residue.coeffs().to_vec();
        res.resize(m, Fq::ZERO);
        code_of(&res, self.q) * self.head_count() + code_of(&class.head, self.q)
    }

    pub fn class_from_id(&self, id: usize) -> HayesClass {
        let hc = self.head_count();
        HayesClass {
            residue: Poly::new(digits_of(id / hc, self.q, self.m())),
            head: digits_of(id % hc, self.q, self.l),
        }
    }

    /// Class id of a monic polynomial given by its coefficients; avoids
    /// allocation-heavy paths in enumeration loops.
    pub fn id_of_monic(&self, coeffs: &[Fq], scratch: &mut Vec<Fq>, ctx: &FieldCtx) -> usize {
        let n = coeffs.len() - 1;
        let q = self.q;
        let mut head_code = 0usize;
        for i in (1..=self.l).rev() {
            let a = if i <= n { coeffs[n - i] } else { Fq::ZERO };
            head_code = head_code * q + a.code();
        }
        let m = self.m();
        let res_code = if m == 0 {
            0
        } else {
            // Q is monic, so reduction needs no inversion.
            scratch.clear();
            scratch.extend_from_slice(coeffs);
            let qc = self.modulus.coeffs();
            for i in (m..scratch.len()).rev() {
                let c = scratch[i];
                if c.is_zero() {
                    continue;
                }
                for (k, &qk) in qc.iter().enumerate() {
                    let idx = i - m + k;
                    scratch[idx] = ctx.sub(scratch[idx], ctx.mul(c, qk));
                }
            }
            if scratch.len() < m {
                scratch.resize(m, Fq::ZERO);
            }
            code_of(&scratch[..m], q)
        };
        res_code * self.head_count() + head_code
    }

    pub fn is_invertible(&self, class: &HayesClass, ctx: &FieldCtx) -> bool {
        self.modulus.degree() == Some(0) || class.residue.gcd(&self.modulus, ctx).is_one()
    }

    pub fn identity(&self) -> HayesClass {
        HayesClass {
            residue: if self.m() == 0 {
                Poly::zero()
            } else {
                Poly::one()
            },
            head: vec![Fq::ZERO; self.l],
        }
    }

    /// Product of classes; agrees with multiplying representatives.
    pub fn mul(&self, a: &HayesClass, b: &HayesClass, ctx: &FieldCtx) -> HayesClass {
        let residue = a
            .residue
            .mul(&b.residue, ctx)
            .rem(&self.modulus, ctx)
            .expect("monic modulus");
        // Heads are truncations of 1 + a_1 x + ... + a_l x^l, x = 1/t.
        let mut head = vec![Fq::ZERO; self.l];
        for i in 1..=self.l {
            let mut c = ctx.add(a.head[i - 1], b.head[i - 1]);
            for j in 1..i {
                c = ctx.add(c, ctx.mul(a.head[j - 1], b.head[i - j - 1]));
            }
            head[i - 1] = c;
        }
        HayesClass { residue, head }
    }
}
