use crate::algebra::{GradedMatrix, RingRef};
use crate::error::{Error, Result};

/// A bounded complex of graded free modules over `Q` or `R = Q/I`.
///
/// Components occupy the contiguous homological range `lo..=hi`; the
/// differential `diff(s)` maps `C_s → C_{s-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    ring: RingRef,
    lo: i32,
    twists: Vec<Vec<i32>>,
    diffs: Vec<GradedMatrix>,
}

impl FreeComplex {
    /// `twists[k]` are the generator degrees of `C_{lo+k}`; `diffs[k]` is `∂_{lo+k+1}`.
    pub fn new(ring: RingRef, lo: i32, twists: Vec<Vec<i32>>, diffs: Vec<GradedMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(ring, lo, twists, diffs)?;
        c.check()?;
        Ok(c)
    }

    /// Shape-checked but without the `∂² = 0` and degree checks.
    pub fn new_unchecked(ring: RingRef, lo: i32, twists: Vec<Vec<i32>>, diffs: Vec<GradedMatrix>) -> Result<Self> {
        if twists.is_empty() {
            return Ok(Self::zero(ring));
        }
        if diffs.len() + 1 != twists.len() {
            return Err(Error::Malformed(format!(
                "{} components need {} differentials, got {}",
                twists.len(),
                twists.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.row_twists != twists[k] || d.col_twists != twists[k + 1] {
                return Err(Error::Malformed(format!("differential {} has the wrong shape", lo + k as i32 + 1)));
            }
        }
        Ok(Self { ring, lo, twists, diffs })
    }

    pub fn zero(ring: RingRef) -> Self {
        Self { ring, lo: 0, twists: Vec::new(), diffs: Vec::new() }
    }

    /// The free module with the given twists in homological degree `s`.
    pub fn concentrated(ring: RingRef, s: i32, twists: Vec<i32>) -> Self {
        Self { ring, lo: s, twists: vec![twists], diffs: Vec::new() }
    }

    /// Verifies entry degrees and `∂_{s-1} ∘ ∂_s = 0` in the ring.
    pub fn check(&self) -> Result<()> {
        for (k, d) in self.diffs.iter().enumerate() {
            d.check_degrees()
                .map_err(|_| Error::Malformed(format!("differential {} is not homogeneous", self.lo + k as i32 + 1)))?;
        }
        for k in 1..self.diffs.len() {
            let sq = self.diffs[k - 1].mul(&self.diffs[k], &self.ring);
            if !sq.is_zero() {
                return Err(Error::DifferentialSquareNonzero { degree: self.lo + k as i32 + 1 });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest occupied degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.twists.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn twists(&self, s: i32) -> &[i32] {
        if s < self.lo || s > self.hi() {
            return &[];
        }
        &self.twists[(s - self.lo) as usize]
    }

    pub fn rank(&self, s: i32) -> usize {
        self.twists(s).len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.twists.iter().map(Vec::len).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.twists.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_rank() == 0
    }

    /// `∂_s : C_s → C_{s-1}`, a correctly shaped zero matrix outside the stored range.
    pub fn diff(&self, s: i32) -> GradedMatrix {
        if s > self.lo && s <= self.hi() {
            return self.diffs[(s - self.lo - 1) as usize].clone();
        }
        GradedMatrix::zero(self.twists(s - 1).to_vec(), self.twists(s).to_vec())
    }

    pub fn diff_ref(&self, s: i32) -> Option<&GradedMatrix> {
        if s > self.lo && s <= self.hi() {
            Some(&self.diffs[(s - self.lo - 1) as usize])
        } else {
            None
        }
    }

    /// `Σⁱ C`: `(ΣⁱC)_s = C_{s-i}` with differential `(-1)ⁱ ∂`.
    pub fn shift(&self, i: i32) -> FreeComplex {
        let diffs = if i % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.scale(-1, &self.ring)).collect()
        };
        Self { ring: self.ring.clone(), lo: self.lo + i, twists: self.twists.clone(), diffs }
    }

    /// The same complex with every internal twist raised by `w`.
    pub fn twisted(&self, w: i32) -> FreeComplex {
        let twists: Vec<Vec<i32>> = self.twists.iter().map(|t| t.iter().map(|x| x + w).collect()).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| d.clone().with_twists(twists[k].clone(), twists[k + 1].clone()))
            .collect();
        Self { ring: self.ring.clone(), lo: self.lo, twists, diffs }
    }

    /// Trims zero components from both ends.
    pub fn trimmed(&self) -> FreeComplex {
        let Some(first) = self.twists.iter().position(|t| !t.is_empty()) else {
            return Self::zero(self.ring.clone());
        };
        let last = self.twists.iter().rposition(|t| !t.is_empty()).unwrap();
        Self {
            ring: self.ring.clone(),
            lo: self.lo + first as i32,
            twists: self.twists[first..=last].to_vec(),
            diffs: self.diffs[first..last].to_vec(),
        }
    }

    /// Restriction to the degrees `a..=b` (a brutal truncation).
    pub fn window(&self, a: i32, b: i32) -> FreeComplex {
        if a > b {
            return Self::zero(self.ring.clone());
        }
        let twists: Vec<Vec<i32>> = (a..=b).map(|s| self.twists(s).to_vec()).collect();
        let diffs = (a + 1..=b).map(|s| self.diff(s)).collect();
        Self { ring: self.ring.clone(), lo: a, twists, diffs }
    }

    /// Builds a complex from components indexed by degree, padding gaps with zero modules.
    pub fn from_parts(ring: RingRef, lo: i32, twists: Vec<Vec<i32>>, mut diff: impl FnMut(i32) -> GradedMatrix) -> Result<Self> {
        let n = twists.len() as i32;
        let diffs = (lo + 1..lo + n).map(&mut diff).collect();
        Self::new(ring, lo, twists, diffs)
    }
}
