//! Smith normal form over the integers, tracking the column transform.

/// `U A V = diag(d)` for some unimodular `U`; `v_inv = V^{-1}`.
/// Each nonzero `d_i` divides the next; zero diagonal entries come last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

struct Work {
    a: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    v_inv: Vec<Vec<i128>>,
}

impl Work {
    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// `col_j -= f * col_t`.
    fn sub_col(&mut self, j: usize, t: usize, f: i128) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[j] -= f * row[t];
        }
        // V^{-1} picks up the inverse elementary matrix on the left.
        let (rt, rj) = if t < j {
            let (lo, hi) = self.v_inv.split_at_mut(j);
            (&mut lo[t], &hi[0])
        } else {
            let (lo, hi) = self.v_inv.split_at_mut(t);
            (&mut hi[0], &lo[j])
        };
        for (x, y) in rt.iter_mut().zip(rj.iter()) {
            *x += f * y;
        }
    }

    fn sub_row(&mut self, i: usize, t: usize, f: i128) {
        let rt = self.a[t].clone();
        for (x, y) in self.a[i].iter_mut().zip(rt) {
            *x -= f * y;
        }
    }
}

pub fn smith(a: Vec<Vec<i128>>) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut w = Work {
        a,
        v: identity(cols),
        v_inv: identity(cols),
    };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| w.a[i][j] != 0)
            .min_by_key(|&(i, j)| w.a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        w.a.swap(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t] != 0 {
                    let f = w.a[i][t].div_euclid(w.a[t][t]);
                    w.sub_row(i, t, f);
                    if w.a[i][t] != 0 {
                        w.a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if w.a[t][j] != 0 {
                    let f = w.a[t][j].div_euclid(w.a[t][t]);
                    w.sub_col(j, t, f);
                    if w.a[t][j] != 0 {
                        w.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let d = w.a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % d != 0));
            match bad {
                Some(i) => {
                    // Row t += row i brings a non-multiple into row t.
                    w.sub_row(t, i, -1);
                }
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            for x in w.a[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(w.a[t][t]);
    }
    diag.resize(rows.min(cols), 0);
    Smith {
        diag,
        v: w.v,
        v_inv: w.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        a.iter()
            .map(|row| {
                (0..b[0].len())
                    .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                    .collect()
            })
            .collect()
    }

    fn det(mut m: Vec<Vec<f64>>) -> f64 {
        let n = m.len();
        let mut d = 1.0;
        for c in 0..n {
            let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
            if m[p][c] == 0.0 {
                return 0.0;
            }
            if p != c {
                m.swap(p, c);
                d = -d;
            }
            d *= m[c][c];
            for i in c + 1..n {
                let f = m[i][c] / m[c][c];
                for j in c..n {
                    m[i][j] -= f * m[c][j];
                }
            }
        }
        d
    }

    #[test]
    fn small_example() {
        // Z/2 x Z/4 presented as Z^2 / <(2, 0), (0, 4)> after mixing.
        let s = smith(vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(s.diag, vec![2, 4]);
        let s = smith(vec![vec![4, 0], vec![0, 6]]);
        assert_eq!(s.diag, vec![2, 12]);
    }

    proptest! {
        #[test]
        fn diagonal_is_invariant(entries in proptest::collection::vec(-9i128..=9, 9)) {
            let a: Vec<Vec<i128>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let s = smith(a.clone());
            let n = 3;
            prop_assert_eq!(matmul(&s.v, &s.v_inv), identity(n));
            for w in s.diag.windows(2) {
                if w[0] != 0 && w[1] != 0 {
                    prop_assert_eq!(w[1] % w[0], 0);
                }
                if w[0] == 0 {
                    prop_assert_eq!(w[1], 0);
                }
            }
            let d = det(a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect());
            let prod: i128 = s.diag.iter().product();
            prop_assert!((d.abs() - prod as f64).abs() < 1e-6);
            // A V has the same row lattice as diag(d): every row of A V is an
            // integer combination of the d_i e_i.
            let av = matmul(&a, &s.v);
            for row in &av {
                for (j, &x) in row.iter().enumerate() {
                    match s.diag[j] {
                        0 => prop_assert_eq!(x, 0),
                        d => prop_assert_eq!(x % d, 0),
                    }
                }
            }
        }
    }
}
