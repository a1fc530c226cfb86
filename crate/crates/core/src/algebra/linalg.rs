//! Dense linear algebra over `F_p`.
//!
//! Matrices are row-major `Vec<Vec<u32>>`. These routines back the
//! per-degree computations (Ext, homology slices, brute-force oracles).

use super::field::PrimeField;

pub type Matrix = Vec<Vec<u32>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize, field: PrimeField) -> Matrix {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            let c = row[k];
            if c == 0 {
                continue;
            }
            for (j, o) in out[i].iter_mut().enumerate() {
                let bkj = b[k][j];
                if bkj != 0 {
                    *o = field.add(*o, field.mul(c, bkj));
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[u32], field: PrimeField) -> Vec<u32> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| if x == 0 || y == 0 { acc } else { field.add(acc, field.mul(x, y)) })
        })
        .collect()
}

pub fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix, cols: usize, field: PrimeField) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = field.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix, cols: usize, field: PrimeField) -> usize {
    let mut w = m.clone();
    rref(&mut w, cols, field).len()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel(m: &Matrix, cols: usize, field: PrimeField) -> Vec<Vec<u32>> {
    let mut w = m.clone();
    let pivots = rref(&mut w, cols, field);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(w[r][free]);
        }
        out.push(v);
    }
    out
}

/// Some `x` with `m x = b`, if one exists.
pub fn solve(m: &Matrix, cols: usize, b: &[u32], field: PrimeField) -> Option<Vec<u32>> {
    let mut aug: Matrix = m.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    let pivots = rref(&mut aug, cols + 1, field);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols];
    }
    Some(x)
}

/// Incrementally maintained row space with coordinates relative to the inserted vectors.
#[derive(Clone, Debug)]
pub struct Span {
    field: PrimeField,
    dim: usize,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
    inserted: usize,
}

impl Span {
    pub fn new(dim: usize, field: PrimeField) -> Self {
        Self { field, dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the echelon rows; returns the residue and the combination used.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut v = v.to_vec();
        let mut coeffs = vec![0; self.inserted];
        for (p, row, comb) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            for (x, &y) in coeffs.iter_mut().zip(comb) {
                if y != 0 {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` lies in the span.
    pub fn express(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (r, c) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(c)
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let (mut r, mut comb) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        for (_, _, c) in self.rows.iter_mut() {
            c.push(0);
        }
        // comb expresses v - r; so r = v - comb·inserted.
        for x in comb.iter_mut() {
            *x = f.neg(*x);
        }
        comb.push(1);
        let Some(p) = r.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(r[p]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for x in comb.iter_mut() {
            *x = f.mul(*x, inv);
        }
        debug_assert_eq!(comb.len(), idx + 1);
        self.rows.push((p, r, comb));
        true
    }
}
