use crate::algebra::groebner::GroebnerBasis;
use crate::algebra::ideal::submodule_gb;
use crate::algebra::{GradedMatrix, ModVec, Poly, RingRef};
use crate::complex::koszul::{boundary_terms, element_degree, subset_elems, subsets_by_size};
use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// A complex of finitely presented graded modules over a polynomial ring `Q`.
///
/// Component `s` is `Q^{twists_s} / ⟨rels_s⟩`; the differentials are matrices over `Q`
/// that respect the relations.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentedComplex {
    ring: RingRef,
    lo: i32,
    twists: Vec<Vec<i32>>,
    rels: Vec<Vec<ModVec>>,
    diffs: Vec<GradedMatrix>,
}

impl PresentedComplex {
    pub fn new(ring: RingRef, lo: i32, twists: Vec<Vec<i32>>, rels: Vec<Vec<ModVec>>, diffs: Vec<GradedMatrix>) -> Result<Self> {
        if !ring.is_polynomial() {
            return Err(Error::Malformed("presented complexes live over the polynomial ring".into()));
        }
        if rels.len() != twists.len() || (!twists.is_empty() && diffs.len() + 1 != twists.len()) {
            return Err(Error::Malformed("presented complex has inconsistent lengths".into()));
        }
        let c = Self { ring, lo, twists, rels, diffs };
        c.check()?;
        Ok(c)
    }

    pub fn zero(ring: RingRef) -> Self {
        Self { ring, lo: 0, twists: Vec::new(), rels: Vec::new(), diffs: Vec::new() }
    }

    /// `coker(p)` in degree 0, with `p` a presentation over `Q`.
    pub fn module(ring: RingRef, p: &GradedMatrix) -> Result<Self> {
        Self::new(ring, 0, vec![p.row_twists.clone()], vec![p.column_vecs()], Vec::new())
    }

    /// The residue field `k = Q/(x_1..x_e)`.
    pub fn residue_field(ring: RingRef) -> Self {
        let rels = vec![ring.vars().iter().map(ModVec::from_poly).collect()];
        Self { ring, lo: 0, twists: vec![vec![0]], rels, diffs: Vec::new() }
    }

    /// `Q/(f)`.
    pub fn quotient(ring: RingRef, f: &[Poly]) -> Self {
        let rels = vec![f.iter().map(ModVec::from_poly).collect()];
        Self { ring, lo: 0, twists: vec![vec![0]], rels, diffs: Vec::new() }
    }

    /// A complex of free modules over `R = Q/I`, seen over `Q`.
    pub fn from_free_complex(c: &FreeComplex) -> Result<Self> {
        let ring = c.ring();
        let q: RingRef = std::sync::Arc::new(ring.ambient());
        if c.is_zero() {
            return Ok(Self::zero(q));
        }
        let twists: Vec<Vec<i32>> = c.degrees().map(|s| c.twists(s).to_vec()).collect();
        let rels = twists
            .iter()
            .map(|t| {
                (0..t.len())
                    .flat_map(|k| ring.relations().iter().map(move |r| ModVec::from_poly_at(r, k as u32)))
                    .collect()
            })
            .collect();
        let diffs = (c.lo() + 1..=c.hi()).map(|s| c.diff(s)).collect();
        Self::new(q, c.lo(), twists, rels, diffs)
    }

    /// Checks that differentials preserve relations and square to zero modulo them.
    pub fn check(&self) -> Result<()> {
        for s in self.lo + 1..=self.hi() {
            let d = self.diff(s);
            d.check_degrees()?;
            let gb = self.rel_gb(s - 1);
            for r in &self.rels[(s - self.lo) as usize] {
                let img = apply(&d, r, &self.ring);
                if !gb.contains(&img) {
                    return Err(Error::Malformed(format!("differential {s} does not respect the relations")));
                }
            }
            if s - 1 > self.lo {
                let sq = self.diff(s - 1).mul(&d, &self.ring);
                let gb2 = self.rel_gb(s - 2);
                if sq.column_vecs().iter().any(|v| !gb2.contains(v)) {
                    return Err(Error::DifferentialSquareNonzero { degree: s });
                }
            }
        }
        Ok(())
    }

    fn rel_gb(&self, s: i32) -> GroebnerBasis {
        submodule_gb(&self.ring, self.rels(s), self.twists(s))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.twists.len() as i32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.twists.iter().all(Vec::is_empty)
    }

    pub fn twists(&self, s: i32) -> &[i32] {
        if s < self.lo || s > self.hi() {
            return &[];
        }
        &self.twists[(s - self.lo) as usize]
    }

    pub fn rels(&self, s: i32) -> &[ModVec] {
        if s < self.lo || s > self.hi() {
            return &[];
        }
        &self.rels[(s - self.lo) as usize]
    }

    pub fn rank(&self, s: i32) -> usize {
        self.twists(s).len()
    }

    pub fn diff(&self, s: i32) -> GradedMatrix {
        if s > self.lo && s <= self.hi() {
            return self.diffs[(s - self.lo - 1) as usize].clone();
        }
        GradedMatrix::zero(self.twists(s - 1).to_vec(), self.twists(s).to_vec())
    }

    /// Adds `g_i·e_c` to the relations of every component.
    pub fn killed_by(&self, g: &[Poly]) -> Self {
        let mut out = self.clone();
        for (k, rels) in out.rels.iter_mut().enumerate() {
            for c in 0..self.twists[k].len() {
                for gi in g {
                    if !gi.is_zero() {
                        rels.push(ModVec::from_poly_at(gi, c as u32));
                    }
                }
            }
        }
        out
    }

    /// `M ⊗_Q Kos(x)` with the Koszul sign rule.
    pub fn tensor_koszul(&self, x: &[Poly]) -> Result<Self> {
        let ring = self.ring.clone();
        let n = x.len();
        let degs: Vec<i32> = x.iter().map(element_degree).collect::<Result<_>>()?;
        if self.twists.is_empty() {
            return Ok(self.clone());
        }
        let subsets = subsets_by_size(n);
        let (lo, hi) = (self.lo, self.hi() + n as i32);
        let mut elems: Vec<Vec<(u32, usize)>> = Vec::new();
        let mut index: Vec<HashMap<(u32, usize), usize>> = Vec::new();
        let mut twists = Vec::new();
        let mut rels = Vec::new();
        for s in lo..=hi {
            let mut el = Vec::new();
            let mut tw = Vec::new();
            let mut offsets = HashMap::new();
            for (i, group) in subsets.iter().enumerate() {
                let p = s - i as i32;
                for &sub in group {
                    let shift: i32 = subset_elems(sub).iter().map(|&j| degs[j]).sum();
                    offsets.insert(sub, el.len());
                    for (b, &t) in self.twists(p).iter().enumerate() {
                        el.push((sub, b));
                        tw.push(t + shift);
                    }
                }
            }
            let mut rl = Vec::new();
            for (i, group) in subsets.iter().enumerate() {
                let p = s - i as i32;
                for &sub in group {
                    for r in self.rels(p) {
                        rl.push(r.shift_components(offsets[&sub] as u32));
                    }
                }
            }
            index.push(el.iter().enumerate().map(|(k, e)| (*e, k)).collect());
            elems.push(el);
            twists.push(tw);
            rels.push(rl);
        }
        let mut diffs = Vec::new();
        for s in lo + 1..=hi {
            let (ks, kt) = ((s - lo) as usize, (s - lo - 1) as usize);
            let mut m = GradedMatrix::zero(twists[kt].clone(), twists[ks].clone());
            for (col, &(sub, b)) in elems[ks].iter().enumerate() {
                let p = s - sub.count_ones() as i32;
                let d = self.diff(p);
                for r in 0..d.rows() {
                    let e = d.get(r, b);
                    if !e.is_zero() {
                        let row = index[kt][&(sub, r)];
                        m.set(row, col, ring.add(m.get(row, col), e));
                    }
                }
                for (j, neg, rest) in boundary_terms(sub) {
                    let sign = if (p % 2 != 0) ^ neg { -1 } else { 1 };
                    let row = index[kt][&(rest, b)];
                    m.set(row, col, ring.add(m.get(row, col), &ring.scale(&x[j], sign)));
                }
            }
            diffs.push(m);
        }
        Self::new(ring, lo, twists, rels, diffs)
    }
}

/// `d · v` for a column vector `v`.
pub fn apply(d: &GradedMatrix, v: &ModVec, ring: &RingRef) -> ModVec {
    let field = ring.field();
    let mut acc = ModVec::zero();
    for (j, coef) in v.to_column(d.cols()).iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        acc = acc.add(&d.column_vec(j).mul_poly(coef, field), field);
    }
    acc
}
