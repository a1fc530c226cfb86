use crate::algebra::ideal::minimal_generators;
use crate::algebra::{Poly, RingRef};
use crate::complex::koszul::{element_degree, koszul_complex, subset_elems, subsets_by_size};
use crate::complex::FreeComplex;
use crate::error::{Error, Result};

/// The Koszul DG algebra `E = Q⟨ξ_1..ξ_n | ∂ξ_i = f_i⟩` over a polynomial ring `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulAlgebra {
    ring: RingRef,
    f: Vec<Poly>,
    degs: Vec<i32>,
    complex: FreeComplex,
}

impl KoszulAlgebra {
    pub fn new(ring: RingRef, f: Vec<Poly>) -> Result<Self> {
        if !ring.is_polynomial() {
            return Err(Error::HypothesisViolated("the base of E must be a polynomial ring".into()));
        }
        if f.len() > 16 {
            return Err(Error::Malformed("at most 16 elements are supported".into()));
        }
        let degs = f
            .iter()
            .map(|g| element_degree(g).map_err(|_| Error::InhomogeneousInput(ring.fmt_poly(g))))
            .collect::<Result<Vec<_>>>()?;
        let complex = koszul_complex(&ring, &f)?;
        Ok(Self { ring, f, degs, complex })
    }

    /// The standard setting: `f` minimally generates `(f)` and lies in `n²`.
    pub fn standard(ring: RingRef, f: Vec<Poly>) -> Result<Self> {
        let e = Self::new(ring, f)?;
        if !e.is_minimal() {
            return Err(Error::HypothesisViolated("f does not minimally generate (f)".into()));
        }
        e.require_in_n_squared()?;
        Ok(e)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn f(&self) -> &[Poly] {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    /// Internal degrees of `f_1..f_n` (equivalently of `ξ_1..ξ_n`).
    pub fn degrees(&self) -> &[i32] {
        &self.degs
    }

    /// `Kos^Q(f)` as a complex, basis `ξ_S` ordered by size then lexicographically.
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn is_minimal(&self) -> bool {
        minimal_generators(&self.ring, &self.f).len() == self.f.len()
    }

    pub fn require_in_n_squared(&self) -> Result<()> {
        for (i, g) in self.f.iter().enumerate() {
            if g.terms().iter().any(|(m, _)| m.total_exponent() < 2) {
                return Err(Error::HypothesisViolated(format!(
                    "f{} = {} is not in the square of the maximal ideal",
                    i + 1,
                    self.ring.fmt_poly(g)
                )));
            }
        }
        Ok(())
    }

    /// Internal twist of `ξ_S`.
    pub fn subset_twist(&self, s: u32) -> i32 {
        subset_elems(s).iter().map(|&j| self.degs[j]).sum()
    }

    pub fn subsets(&self) -> Vec<Vec<u32>> {
        subsets_by_size(self.n())
    }
}
