//! Dense row-major matrices over F_q.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FqMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(FqMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Rows of element codes, validated against the field.
    pub fn from_codes(ctx: &FieldCtx, rows: &[Vec<usize>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&c| ctx.elem(c)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Self, ctx: &FieldCtx) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ctx.add(out.data[idx], ctx.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Fq, Fq) -> Fq) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "shape {}x{} differs from {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self, ctx: &FieldCtx) -> Result<Self> {
        self.zip_with(other, |a, b| ctx.add(a, b))
    }

    pub fn sub(&self, other: &Self, ctx: &FieldCtx) -> Result<Self> {
        self.zip_with(other, |a, b| ctx.sub(a, b))
    }

    pub fn scale(&self, c: Fq, ctx: &FieldCtx) -> Self {
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| ctx.mul(c, a)).collect(),
        }
    }

    /// `M x`.
    pub fn apply(&self, x: &[Fq], ctx: &FieldCtx) -> Vec<Fq> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Fq::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect()
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[Fq], y: &[Fq], ctx: &FieldCtx) -> Fq {
        let my = self.apply(y, ctx);
        x.iter()
            .zip(&my)
            .fold(Fq::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
            let inv = ctx.inv_nonzero(a[rank * cols + c]);
            for r in rank + 1..rows {
                let f = ctx.mul(a[r * cols + c], inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let v = ctx.mul(f, a[rank * cols + j]);
                    a[r * cols + j] = ctx.sub(a[r * cols + j], v);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Matrix CSV: the dimension `n` on the first line (`rows,cols` when not
    /// square), then one line of element codes per row.
    pub fn to_csv(&self) -> String {
        let mut out = if self.is_square() {
            format!("{}\n", self.rows)
        } else {
            format!("{},{}\n", self.rows, self.cols)
        };
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.code().to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(ctx: &FieldCtx, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = head
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad dimension line {head:?}"))))
            .collect::<Result<_>>()?;
        let (r, c) = match dims.as_slice() {
            [n] => (*n, *n),
            [r, c] => (*r, *c),
            _ => return Err(Error::Parse(format!("bad dimension line {head:?}"))),
        };
        let rows: Vec<Vec<usize>> = lines
            .map(|l| {
                l.split(',')
                    .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad matrix entry in {l:?}"))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse(format!("expected {r} rows of {c} entries")));
        }
        Self::from_codes(ctx, &rows)
    }
}
