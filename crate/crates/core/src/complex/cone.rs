use super::free::FreeComplex;
use crate::algebra::GradedMatrix;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// A map of complexes of homological degree `degree`: `comps[s] : C_s → D_{s+degree}`.
///
/// It commutes with differentials in the sense `∂^D α = (-1)^degree α ∂^C`,
/// which makes it a degree-0 chain map `C → Σ^{-degree} D`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub degree: i32,
    comps: BTreeMap<i32, GradedMatrix>,
}

impl ChainMap {
    pub fn new(source: FreeComplex, target: FreeComplex, degree: i32, comps: BTreeMap<i32, GradedMatrix>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, degree, comps)?;
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(
        source: FreeComplex,
        target: FreeComplex,
        degree: i32,
        mut comps: BTreeMap<i32, GradedMatrix>,
    ) -> Result<Self> {
        comps.retain(|&s, _| source.rank(s) > 0 && target.rank(s + degree) > 0);
        for (&s, m) in &comps {
            if m.row_twists != target.twists(s + degree) || m.col_twists != source.twists(s) {
                return Err(Error::Malformed(format!("chain map component {s} has the wrong shape")));
            }
        }
        Ok(Self { source, target, degree, comps })
    }

    pub fn zero(source: FreeComplex, target: FreeComplex, degree: i32) -> Self {
        Self { source, target, degree, comps: BTreeMap::new() }
    }

    pub fn identity(c: &FreeComplex) -> Self {
        let n = c.ring().nvars();
        let comps = c.degrees().map(|s| (s, GradedMatrix::identity(c.twists(s).to_vec(), n))).collect();
        Self { source: c.clone(), target: c.clone(), degree: 0, comps }
    }

    pub fn component(&self, s: i32) -> GradedMatrix {
        self.comps.get(&s).cloned().unwrap_or_else(|| {
            GradedMatrix::zero(self.target.twists(s + self.degree).to_vec(), self.source.twists(s).to_vec())
        })
    }

    /// Scales every component by the integer `c`.
    pub fn scaled(&self, c: i64) -> Self {
        let ring = self.source.ring().clone();
        let comps = self.comps.iter().map(|(&s, m)| (s, m.scale(c, &ring))).collect();
        Self { source: self.source.clone(), target: self.target.clone(), degree: self.degree, comps }
    }

    /// Reports the first degree where `∂^D α_s ≠ (-1)^degree α_{s-1} ∂^C_s`.
    pub fn check(&self) -> Result<()> {
        let ring = self.source.ring().clone();
        for m in self.comps.values() {
            m.check_degrees().map_err(|_| Error::Malformed("chain map entries must preserve internal degree".into()))?;
        }
        let sign = if self.degree % 2 == 0 { 1 } else { -1 };
        for s in self.source.lo()..=self.source.hi() + 1 {
            let left = self.target.diff(s + self.degree).mul(&self.component(s), &ring);
            let right = self.component(s - 1).mul(&self.source.diff(s), &ring).scale(sign, &ring);
            if left != right {
                return Err(Error::NotAChainMap { degree: s });
            }
        }
        Ok(())
    }

    /// The same data as a degree-0 map into `Σ^{-degree} D`.
    pub fn normalized(&self) -> ChainMap {
        if self.degree == 0 {
            return self.clone();
        }
        ChainMap {
            source: self.source.clone(),
            target: self.target.shift(-self.degree),
            degree: 0,
            comps: self.comps.clone(),
        }
    }
}

/// `cone(α)_s = D_s ⊕ C_{s-1}` with `∂ = [[∂^D, α], [0, -∂^C]]` after normalizing `α` to degree 0.
pub fn mapping_cone(alpha: &ChainMap) -> Result<FreeComplex> {
    alpha.check()?;
    let k = cone_unchecked(&alpha.normalized());
    k.check()?;
    Ok(k)
}

pub(crate) fn cone_unchecked(a: &ChainMap) -> FreeComplex {
    debug_assert_eq!(a.degree, 0);
    let (c, d) = (&a.source, &a.target);
    let ring = c.ring().clone();
    if c.is_zero() && d.is_zero() {
        return FreeComplex::zero(ring);
    }
    let lo = match (c.is_zero(), d.is_zero()) {
        (true, _) => d.lo(),
        (_, true) => c.lo() + 1,
        _ => d.lo().min(c.lo() + 1),
    };
    let hi = match (c.is_zero(), d.is_zero()) {
        (true, _) => d.hi(),
        (_, true) => c.hi() + 1,
        _ => d.hi().max(c.hi() + 1),
    };
    let twists_at = |s: i32| {
        let mut t = d.twists(s).to_vec();
        t.extend_from_slice(c.twists(s - 1));
        t
    };
    let twists: Vec<Vec<i32>> = (lo..=hi).map(twists_at).collect();
    let diffs = (lo + 1..=hi)
        .map(|s| {
            let top_right = a.component(s - 1);
            let bottom_left = GradedMatrix::zero(c.twists(s - 2).to_vec(), d.twists(s).to_vec());
            GradedMatrix::block(&d.diff(s), &top_right, &bottom_left, &c.diff(s - 1).scale(-1, &ring))
        })
        .collect();
    FreeComplex::new_unchecked(ring, lo, twists, diffs).expect("cone shapes are consistent")
}
