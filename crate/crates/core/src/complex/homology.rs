use super::free::FreeComplex;
use crate::algebra::groebner::ModVec;
use crate::algebra::ideal::{
    annihilator, ideal_intersection, krull_dimension, minimal_subset, radical_contains, radical_equal,
    relation_vectors, syzygy_gb_vectors, syzygy_kernel,
};
use crate::algebra::{GradedMatrix, GradedRing, Poly};
use serde::Serialize;

/// Removes generators killed by unit relations until no relation has a constant entry,
/// then drops redundant relations. The result presents the same module with minimal generators.
pub fn minimize_presentation(ring: &GradedRing, p: &GradedMatrix) -> GradedMatrix {
    let field = ring.field();
    let mut m = p.reduced(ring);
    loop {
        let mut pivot = None;
        'search: for j in 0..m.cols() {
            for i in 0..m.rows() {
                let e = m.get(i, j);
                if !e.is_zero() && e.is_constant() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pivot else { break };
        let inv = field.inv(m.get(i, j).constant_coeff());
        let pivot_col = m.column(j);
        for k in 0..m.cols() {
            if k == j || m.get(i, k).is_zero() {
                continue;
            }
            let factor = m.get(i, k).scale(inv, field);
            for r in 0..m.rows() {
                let upd = ring.reduce(&ring.sub(m.get(r, k), &ring.mul(&factor, &pivot_col[r])));
                m.set(r, k, upd);
            }
        }
        let rows: Vec<usize> = (0..m.rows()).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..m.cols()).filter(|&c| c != j).collect();
        m = m.select(&rows, &cols);
    }
    let nonzero: Vec<usize> = (0..m.cols()).filter(|&j| (0..m.rows()).any(|i| !m.get(i, j).is_zero())).collect();
    let m = m.select(&(0..m.rows()).collect::<Vec<_>>(), &nonzero);
    let keep = minimal_subset(ring, &m.column_vecs(), &relation_vectors(ring, m.rows(), 0), &m.row_twists);
    let mut keep = keep;
    keep.sort();
    m.select(&(0..m.rows()).collect::<Vec<_>>(), &keep)
}

/// Presentation of `H_s(C)` over the ring of `C`; rows are minimal generators.
pub fn homology_presentation(c: &FreeComplex, s: i32) -> GradedMatrix {
    let ring = c.ring();
    if c.rank(s) == 0 {
        return GradedMatrix::zero(Vec::new(), Vec::new());
    }
    let cycles = syzygy_kernel(ring, &c.diff(s));
    if cycles.cols() == 0 {
        return GradedMatrix::zero(Vec::new(), Vec::new());
    }
    let boundaries = c.diff(s + 1);
    let both = cycles.hstack(&boundaries);
    let k = cycles.cols() as u32;
    let rels: Vec<ModVec> = syzygy_gb_vectors(ring, &both)
        .into_iter()
        .map(|v| v.project(0, k))
        .filter(|v| !v.is_zero())
        .collect();
    let twists = cycles.col_twists.clone();
    let col_twists = rels.iter().map(|v| v.degree(&twists).unwrap() as i32).collect();
    let p = GradedMatrix::from_columns(twists, col_twists, &rels);
    minimize_presentation(ring, &p)
}

/// Presentations of `H_s(C)` for `s` in `range`.
pub fn complex_homology(c: &FreeComplex, range: std::ops::RangeInclusive<i32>) -> Vec<(i32, GradedMatrix)> {
    range.map(|s| (s, homology_presentation(c, s))).collect()
}

/// `V(ideal)` in `Spec` of the ambient ring; `dimension = -1` means empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportSet {
    #[serde(skip)]
    pub ideal: Vec<Poly>,
    pub dimension: i64,
}

impl SupportSet {
    pub fn is_empty(&self) -> bool {
        self.dimension < 0
    }

    pub fn empty(ring: &GradedRing) -> Self {
        Self { ideal: vec![ring.one()], dimension: -1 }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &SupportSet, ring: &GradedRing) -> bool {
        self.is_empty() || radical_contains(ring, &self.ideal, &other.ideal)
    }

    pub fn same_as(&self, other: &SupportSet, ring: &GradedRing) -> bool {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => true,
            (false, false) => radical_equal(ring, &self.ideal, &other.ideal),
            _ => false,
        }
    }

    pub fn ideal_strings(&self, ring: &GradedRing) -> Vec<String> {
        self.ideal.iter().map(|f| ring.fmt_poly(f)).collect()
    }
}

/// Support of a module given by a presentation: `V(Ann coker p)`.
pub fn module_support(ring: &GradedRing, p: &GradedMatrix) -> SupportSet {
    if p.rows() == 0 {
        return SupportSet::empty(ring);
    }
    let ideal = annihilator(ring, p);
    let dimension = krull_dimension(ring, &ideal);
    SupportSet { ideal, dimension }
}

/// `⋃_s Supp H_s(C)`, as the ideal `⋂_s Ann H_s(C)`.
pub fn complex_support(c: &FreeComplex) -> SupportSet {
    let ring = c.ring();
    let mut acc: Option<Vec<Poly>> = None;
    for s in c.degrees() {
        let p = homology_presentation(c, s);
        if p.rows() == 0 {
            continue;
        }
        let ann = annihilator(ring, &p);
        acc = Some(match acc {
            None => ann,
            Some(prev) => ideal_intersection(ring, &prev, &ann),
        });
    }
    match acc {
        None => SupportSet::empty(ring),
        Some(ideal) => {
            let dimension = krull_dimension(ring, &ideal);
            SupportSet { ideal, dimension }
        }
    }
}
