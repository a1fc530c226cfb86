use super::groebner::ModVec;
use super::poly::Poly;
use super::ring::GradedRing;
use crate::error::{Error, Result};

/// Matrix of homogeneous polynomials between graded free modules.
///
/// Columns are the images of the source basis; entry `(i, j)` has degree
/// `col_twists[j] - row_twists[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub row_twists: Vec<i32>,
    pub col_twists: Vec<i32>,
    entries: Vec<Vec<Poly>>,
}

impl GradedMatrix {
    pub fn zero(row_twists: Vec<i32>, col_twists: Vec<i32>) -> Self {
        let entries = vec![vec![Poly::zero(); col_twists.len()]; row_twists.len()];
        Self { row_twists, col_twists, entries }
    }

    /// Checked constructor.
    pub fn new(row_twists: Vec<i32>, col_twists: Vec<i32>, entries: Vec<Vec<Poly>>) -> Result<Self> {
        if entries.len() != row_twists.len() || entries.iter().any(|r| r.len() != col_twists.len()) {
            return Err(Error::Malformed(format!(
                "matrix shape does not match {} row and {} column twists",
                row_twists.len(),
                col_twists.len()
            )));
        }
        let m = Self { row_twists, col_twists, entries };
        m.check_degrees()?;
        Ok(m)
    }

    pub fn from_columns(row_twists: Vec<i32>, col_twists: Vec<i32>, cols: &[ModVec]) -> Self {
        let mut m = Self::zero(row_twists, col_twists);
        for (j, c) in cols.iter().enumerate() {
            for (i, f) in c.to_column(m.rows()).into_iter().enumerate() {
                m.entries[i][j] = f;
            }
        }
        m
    }

    pub fn identity(twists: Vec<i32>, nvars: usize) -> Self {
        let mut m = Self::zero(twists.clone(), twists);
        for i in 0..m.rows() {
            m.entries[i][i] = Poly::constant(1, nvars);
        }
        m
    }

    pub fn check_degrees(&self) -> Result<()> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let want = self.col_twists[j] - self.row_twists[i];
                match f.homogeneous_degree() {
                    Some(Some(d)) if d as i32 == want => {}
                    _ => {
                        return Err(Error::InhomogeneousElement(format!(
                            "entry ({i},{j}) is not homogeneous of degree {want}"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.row_twists.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.col_twists.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Poly) {
        self.entries[i][j] = f;
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn column_vec(&self, j: usize) -> ModVec {
        ModVec::from_column(&self.column(j))
    }

    pub fn column_vecs(&self) -> Vec<ModVec> {
        (0..self.cols()).map(|j| self.column_vec(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(Poly::is_zero))
    }

    /// Whether every entry vanishes in the ring.
    pub fn is_zero_in(&self, ring: &GradedRing) -> bool {
        self.entries.iter().all(|r| r.iter().all(|f| ring.is_zero_in_ring(f)))
    }

    /// Entries reduced to normal form in the ring.
    pub fn reduced(&self, ring: &GradedRing) -> Self {
        let entries = self.entries.iter().map(|r| r.iter().map(|f| ring.reduce(f)).collect()).collect();
        Self { row_twists: self.row_twists.clone(), col_twists: self.col_twists.clone(), entries }
    }

    /// `self * other`, reduced in `ring`.
    pub fn mul(&self, other: &GradedMatrix, ring: &GradedRing) -> GradedMatrix {
        debug_assert_eq!(self.cols(), other.rows());
        let mut out = GradedMatrix::zero(self.row_twists.clone(), other.col_twists.clone());
        for i in 0..self.rows() {
            for j in 0..other.cols() {
                let mut acc = Poly::zero();
                for k in 0..self.cols() {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = ring.add(&acc, &ring.mul(a, b));
                    }
                }
                out.entries[i][j] = ring.reduce(&acc);
            }
        }
        out
    }

    pub fn add(&self, other: &GradedMatrix, ring: &GradedRing) -> GradedMatrix {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.entries[i][j] = ring.reduce(&ring.add(&self.entries[i][j], &other.entries[i][j]));
            }
        }
        out
    }

    pub fn sub(&self, other: &GradedMatrix, ring: &GradedRing) -> GradedMatrix {
        self.add(&other.scale(-1, ring), ring)
    }

    pub fn scale(&self, c: i64, ring: &GradedRing) -> GradedMatrix {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for f in row.iter_mut() {
                *f = ring.scale(f, c);
            }
        }
        out
    }

    /// Multiplies every entry by a homogeneous `g` of degree `d`; the source twists grow by `d`.
    pub fn mul_poly(&self, g: &Poly, d: i32, ring: &GradedRing) -> GradedMatrix {
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for f in row.iter_mut() {
                *f = ring.reduce(&ring.mul(f, g));
            }
        }
        for t in out.col_twists.iter_mut() {
            *t += d;
        }
        out
    }

    pub fn transpose_entries(&self) -> Vec<Vec<Poly>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    /// `[A B]` (same rows).
    pub fn hstack(&self, other: &GradedMatrix) -> GradedMatrix {
        debug_assert_eq!(self.row_twists, other.row_twists);
        let mut out = self.clone();
        out.col_twists.extend(other.col_twists.iter().copied());
        for (r, o) in out.entries.iter_mut().zip(&other.entries) {
            r.extend(o.iter().cloned());
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &GradedMatrix, b: &GradedMatrix, c: &GradedMatrix, d: &GradedMatrix) -> GradedMatrix {
        let mut row_twists = a.row_twists.clone();
        row_twists.extend(c.row_twists.iter().copied());
        let mut col_twists = a.col_twists.clone();
        col_twists.extend(b.col_twists.iter().copied());
        let mut entries = Vec::with_capacity(row_twists.len());
        for i in 0..a.rows() {
            let mut r = a.entries[i].clone();
            r.extend(b.entries[i].iter().cloned());
            entries.push(r);
        }
        for i in 0..c.rows() {
            let mut r = c.entries[i].clone();
            r.extend(d.entries[i].iter().cloned());
            entries.push(r);
        }
        GradedMatrix { row_twists, col_twists, entries }
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            row_twists: rows.iter().map(|&i| self.row_twists[i]).collect(),
            col_twists: cols.iter().map(|&j| self.col_twists[j]).collect(),
            entries: rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        }
    }

    pub fn with_twists(mut self, row_twists: Vec<i32>, col_twists: Vec<i32>) -> GradedMatrix {
        debug_assert_eq!(row_twists.len(), self.rows());
        debug_assert_eq!(col_twists.len(), self.cols());
        self.row_twists = row_twists;
        self.col_twists = col_twists;
        self
    }

    /// Entries printed canonically, row by row.
    pub fn fmt_rows(&self, ring: &GradedRing) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|f| ring.fmt_poly(f)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_check() {
        let q = GradedRing::polynomial(101, &["x", "y"]).unwrap();
        let x = q.parse("x").unwrap();
        assert!(GradedMatrix::new(vec![0], vec![1], vec![vec![x.clone()]]).is_ok());
        assert!(GradedMatrix::new(vec![0], vec![2], vec![vec![x]]).is_err());
    }

    #[test]
    fn product_vanishes_in_quotient() {
        let q = GradedRing::polynomial(101, &["x"]).unwrap();
        let r = q.with_relations(vec![q.parse("x^2").unwrap()]).unwrap();
        let x = r.parse("x").unwrap();
        let m = GradedMatrix::new(vec![0], vec![1], vec![vec![x.clone()]]).unwrap();
        let n = GradedMatrix::new(vec![1], vec![2], vec![vec![x]]).unwrap();
        assert!(m.mul(&n, &r).is_zero());
        assert!(!m.mul(&n, &q).is_zero());
    }
}
