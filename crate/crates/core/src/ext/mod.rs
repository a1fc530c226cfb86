//! Collapse of DG `E`-modules to complexes of free `A`-modules, `Ext_E(M,k)` over
//! `A = k[χ_1..χ_n]` and support varieties.

use crate::algebra::ideal::{
    annihilator, groebner_basis, hilbert_function, krull_dimension, normal_form, proj_contained, proj_equal,
    radical_contains,
};
use crate::algebra::{GradedMatrix, GradedRing, Monomial, Poly, RingRef};
use crate::complex::{homology_presentation, FreeComplex};
use crate::dg::{e_free_resolution, DGEModule, KoszulAlgebra, PresentedComplex};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// `Hom_E(X,k)` as a free `A`-module on dual generators with differential `d`.
///
/// Column `j` of `d` is `d(g_j^*)`; generator `j` has cohomological degree `degrees[j]`.
#[derive(Clone, Debug)]
pub struct CollapsedComplex {
    pub ring: RingRef,
    pub degrees: Vec<i32>,
    pub d: GradedMatrix,
}

impl CollapsedComplex {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_minimal(&self) -> bool {
        (0..self.rank()).all(|j| (0..self.rank()).all(|i| !self.d.get(i, j).is_constant() || self.d.get(i, j).is_zero()))
    }

    pub fn differential_is_zero(&self) -> bool {
        self.d.is_zero()
    }

    /// Cancels pairs of generators joined by a unit entry.
    pub fn minimized(&self) -> CollapsedComplex {
        let ring = &self.ring;
        let field = ring.field();
        let mut d = self.d.clone();
        let mut degrees = self.degrees.clone();
        loop {
            let n = degrees.len();
            let pivot = (0..n).find_map(|c| (0..n).find(|&r| d.get(r, c).is_constant() && !d.get(r, c).is_zero()).map(|r| (r, c)));
            let Some((r, c)) = pivot else { break };
            let inv = field.inv(d.get(r, c).constant_coeff());
            let col_c = d.column(c);
            for j in 0..n {
                if j == c || d.get(r, j).is_zero() {
                    continue;
                }
                let factor = d.get(r, j).scale(inv, field);
                for i in 0..n {
                    if col_c[i].is_zero() {
                        continue;
                    }
                    let v = ring.sub(d.get(i, j), &ring.mul(&col_c[i], &factor));
                    d.set(i, j, v);
                }
            }
            let keep: Vec<usize> = (0..n).filter(|&k| k != r && k != c).collect();
            d = d.select(&keep, &keep);
            degrees = keep.iter().map(|&k| degrees[k]).collect();
        }
        CollapsedComplex { ring: self.ring.clone(), degrees, d }
    }

    /// Drops generators above cohomological degree `t`.
    pub fn truncated(&self, t: i32) -> CollapsedComplex {
        let keep: Vec<usize> = (0..self.rank()).filter(|&k| self.degrees[k] <= t).collect();
        CollapsedComplex {
            ring: self.ring.clone(),
            degrees: keep.iter().map(|&k| self.degrees[k]).collect(),
            d: self.d.select(&keep, &keep),
        }
    }

    /// Cohomology as a graded `A`-module, keeping generators and relations in degrees `≤ bound`.
    pub fn cohomology(&self, bound: i32) -> GradedAModule {
        let m = self.truncated(bound + 1).minimized();
        let ring = m.ring.clone();
        let tw = |k: i32| m.degrees.iter().map(|t| t + k).collect::<Vec<i32>>();
        let d1 = m.d.clone().with_twists(tw(0), tw(1));
        let d2 = m.d.clone().with_twists(tw(1), tw(2));
        let c = FreeComplex::new_unchecked(ring.clone(), 0, vec![tw(0), tw(1), tw(2)], vec![d1, d2])
            .expect("collapsed differential squares to zero");
        let p = homology_presentation(&c, 1);
        let rows: Vec<usize> = (0..p.rows()).filter(|&i| p.row_twists[i] - 1 <= bound).collect();
        let cols: Vec<usize> = (0..p.cols()).filter(|&j| p.col_twists[j] - 1 <= bound).collect();
        let p = p.select(&rows, &cols);
        let rt = p.row_twists.iter().map(|t| t - 1).collect();
        let ct = p.col_twists.iter().map(|t| t - 1).collect();
        GradedAModule { ring, presentation: p.with_twists(rt, ct), bound }
    }
}

fn constant_poly(c: u32, nvars: usize) -> Poly {
    if c == 0 {
        Poly::zero()
    } else {
        Poly::constant(c, nvars)
    }
}

/// `Hom_E(U_E(X),k)` for a DG `E`-module `X` (dual generators: the basis of `X ⊗ k`), or
/// `Hom_E(X,k)` directly when `X` carries `E ⊗ Γ ⊗ W` labels (dual generators: the labels).
///
/// Only generators of cohomological degree `≤ max_degree` are kept.
pub fn collapse(x: &DGEModule, a: &RingRef, max_degree: i32) -> Result<CollapsedComplex> {
    let n = x.n();
    if a.nvars() != n {
        return Err(Error::Malformed(format!("operator ring has {} variables, E has {n}", a.nvars())));
    }
    let c = &x.complex;
    let out = match &x.labels {
        None => {
            let mut index: HashMap<(i32, usize), usize> = HashMap::new();
            let mut degrees = Vec::new();
            for s in c.degrees().filter(|&s| s <= max_degree) {
                for i in 0..c.rank(s) {
                    index.insert((s, i), degrees.len());
                    degrees.push(s);
                }
            }
            let mut d = GradedMatrix::zero(degrees.clone(), degrees.iter().map(|t| t + 1).collect());
            for (&(s, b), &col) in &index {
                let dn = c.diff(s + 1);
                for beta in 0..dn.cols() {
                    let v = dn.get(b, beta).constant_coeff();
                    if v != 0 {
                        if let Some(&row) = index.get(&(s + 1, beta)) {
                            d.set(row, col, a.add(d.get(row, col), &constant_poly(v, n)));
                        }
                    }
                }
                for i in 0..n {
                    let Some(l) = x.action_ref(i, s - 1) else { continue };
                    for beta in 0..l.cols() {
                        let v = l.get(b, beta).constant_coeff();
                        if v != 0 {
                            let row = index[&(s - 1, beta)];
                            let term = a.var(i).scale(v, a.field());
                            d.set(row, col, a.add(d.get(row, col), &term));
                        }
                    }
                }
            }
            CollapsedComplex { ring: a.clone(), degrees, d }
        }
        Some(labels) => {
            let keep: Vec<usize> = (0..labels.degrees.len()).filter(|&l| labels.degrees[l] <= max_degree).collect();
            let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &l)| (l, k)).collect();
            let degrees: Vec<i32> = keep.iter().map(|&l| labels.degrees[l]).collect();
            let mut d = GradedMatrix::zero(degrees.clone(), degrees.iter().map(|t| t + 1).collect());
            for s in c.degrees() {
                let Some(rows) = labels.basis.get(&s) else { continue };
                let Some(cols) = labels.basis.get(&(s + 1)) else { continue };
                let dn = c.diff(s + 1);
                for (bi, b) in rows.iter().enumerate() {
                    if b.s != 0 || !b.h.is_zero() {
                        continue;
                    }
                    let Some(&col) = pos.get(&b.label) else { continue };
                    for (gi, g) in cols.iter().enumerate() {
                        if g.s != 0 {
                            continue;
                        }
                        let v = dn.get(bi, gi).constant_coeff();
                        if v == 0 {
                            continue;
                        }
                        let Some(&row) = pos.get(&g.label) else { continue };
                        let exps: Vec<u16> = g.h.0.clone();
                        let term = Poly::term(Monomial::new(&exps, a.weights()), v);
                        d.set(row, col, a.add(d.get(row, col), &term));
                    }
                }
            }
            CollapsedComplex { ring: a.clone(), degrees, d }
        }
    };
    // Truncation only disturbs d² in columns whose square leaves the kept range.
    let checked: Vec<usize> = (0..out.rank()).filter(|&j| out.degrees[j].saturating_add(2) <= max_degree).collect();
    let all: Vec<usize> = (0..out.rank()).collect();
    if !out.d.mul(&out.d.select(&all, &checked), a).is_zero() {
        return Err(Error::NotSemiprojective("collapsed differential does not square to zero".into()));
    }
    Ok(out)
}

/// A finitely generated graded module over `A = k[χ_1..χ_n]` (`χ_i` in degree 2), as the
/// cokernel of `presentation`; rows are generators. Exact in cohomological degrees `≤ bound`.
#[derive(Clone, Debug)]
pub struct GradedAModule {
    pub ring: RingRef,
    pub presentation: GradedMatrix,
    pub bound: i32,
}

impl GradedAModule {
    pub fn free(ring: RingRef, degrees: Vec<i32>, bound: i32) -> Self {
        Self { ring, presentation: GradedMatrix::zero(degrees, Vec::new()), bound }
    }

    pub fn generator_degrees(&self) -> &[i32] {
        &self.presentation.row_twists
    }

    pub fn rank(&self) -> usize {
        self.presentation.rows()
    }

    pub fn is_free(&self) -> bool {
        self.presentation.cols() == 0
    }

    /// `dim_k X^t` for `0 ≤ t ≤ t_max`.
    pub fn hilbert(&self, t_max: i32) -> Vec<usize> {
        if self.rank() == 0 {
            return vec![0; (t_max + 1).max(0) as usize];
        }
        hilbert_function(&self.ring, &self.presentation, t_max)
    }

    pub fn annihilator(&self) -> Vec<Poly> {
        annihilator(&self.ring, &self.presentation)
    }

    pub fn relations_text(&self) -> Vec<Vec<String>> {
        self.presentation.transpose_entries().iter().map(|c| c.iter().map(|f| self.ring.fmt_poly(f)).collect()).collect()
    }
}

/// `Ext_E(M,k)` from the minimal `E`-free resolution of `M` truncated at `bound`;
/// exact in cohomological degrees `≤ bound − 2`.
pub fn ext_module(target: &PresentedComplex, alg: &KoszulAlgebra, bound: usize) -> Result<GradedAModule> {
    if bound < 2 {
        return Err(Error::TruncationTooSmall(bound));
    }
    let res = e_free_resolution(target, alg, bound)?;
    let a = operator_ring(alg)?;
    let t = bound as i32 - 2;
    Ok(collapse(&res.module, &a, t + 1)?.cohomology(t))
}

/// `Ext_E(X,k)` for a labeled module `X` (a `U_E` output or a cone of such).
pub fn ext_of_labeled(x: &DGEModule, alg: &KoszulAlgebra, t: i32) -> Result<GradedAModule> {
    if x.labels.is_none() {
        return Err(Error::NotSemiprojective("module carries no basis labels".into()));
    }
    let a = operator_ring(alg)?;
    Ok(collapse(x, &a, t + 1)?.cohomology(t))
}

pub fn operator_ring(alg: &KoszulAlgebra) -> Result<RingRef> {
    Ok(Arc::new(GradedRing::operator_ring(alg.ring().prime(), alg.n())?))
}

/// `A ⊗_k Hom_Q(K^Q,k)`: free with `C(e,i)` generators in degree `i`.
pub fn ext_kk_closed_form(alg: &KoszulAlgebra) -> Result<GradedAModule> {
    alg.require_in_n_squared()?;
    let e = alg.ring().nvars();
    let mut degrees = Vec::new();
    for i in 0..=e {
        degrees.extend(std::iter::repeat_n(i as i32, binomial(e, i)));
    }
    Ok(GradedAModule::free(operator_ring(alg)?, degrees, i32::MAX))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A closed subset of `Proj A` cut out by `ideal`.
#[derive(Clone, Debug, Serialize)]
pub struct SupportVariety {
    #[serde(skip)]
    pub ring: Option<RingRef>,
    #[serde(skip)]
    pub ideal: Vec<Poly>,
    /// Projective dimension; `-1` for the empty variety.
    pub dimension: i64,
    pub stable: Option<bool>,
}

impl SupportVariety {
    pub fn new(ring: RingRef, ideal: Vec<Poly>) -> Self {
        let gb = groebner_basis(&ring, &ideal).polys();
        let dimension = (krull_dimension(&ring, &gb) - 1).max(-1);
        Self { ring: Some(ring), ideal: gb, dimension, stable: None }
    }

    fn a(&self) -> &GradedRing {
        self.ring.as_ref().expect("variety carries its ring")
    }

    pub fn is_empty(&self) -> bool {
        self.dimension < 0
    }

    pub fn is_whole_space(&self) -> bool {
        self.ideal.iter().all(Poly::is_zero)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &SupportVariety) -> bool {
        self.is_empty() || (!other.is_empty() && proj_contained(self.a(), &self.ideal, &other.ideal))
    }

    pub fn same_as(&self, other: &SupportVariety) -> bool {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => true,
            (false, false) => proj_equal(self.a(), &self.ideal, &other.ideal),
            _ => false,
        }
    }

    /// Equality of the defining radicals (affine cones).
    pub fn same_radical(&self, other: &SupportVariety) -> bool {
        radical_contains(self.a(), &self.ideal, &other.ideal) && radical_contains(self.a(), &other.ideal, &self.ideal)
    }

    pub fn ideal_strings(&self) -> Vec<String> {
        let r = self.a();
        self.ideal.iter().filter(|f| !f.is_zero()).map(|f| r.fmt_poly(f)).collect()
    }

    pub fn with_stability(mut self, stable: bool) -> Self {
        self.stable = Some(stable);
        self
    }
}

/// `V(Ann X)`.
pub fn support_variety(x: &GradedAModule) -> SupportVariety {
    if x.rank() == 0 {
        return SupportVariety::new(x.ring.clone(), vec![x.ring.one()]);
    }
    SupportVariety::new(x.ring.clone(), x.annihilator())
}

/// `V(g_1..g_m) ⊆ Proj A`.
pub fn variety_of_elements(a: &RingRef, g: &[Poly]) -> Result<SupportVariety> {
    for x in g {
        if !x.is_homogeneous() {
            return Err(Error::InhomogeneousElement(a.fmt_poly(x)));
        }
    }
    Ok(SupportVariety::new(a.clone(), g.to_vec()))
}

/// `V_E(M)` with its stability flag: the radical must agree at bounds `N` and `N+2`.
pub fn module_variety(target: &PresentedComplex, alg: &KoszulAlgebra, bound: usize) -> Result<(GradedAModule, SupportVariety)> {
    let x = ext_module(target, alg, bound)?;
    let v = support_variety(&x);
    let w = support_variety(&ext_module(target, alg, bound + 2)?);
    let stable = v.same_as(&w) && v.same_radical(&w);
    Ok((x, v.with_stability(stable)))
}

#[derive(Clone, Debug, Serialize)]
pub struct SesReport {
    pub holds: bool,
    pub additivity: bool,
    pub annihilators: bool,
    pub dims_m: Vec<usize>,
    pub dims_mx: Vec<usize>,
}

/// Checks `0 → Σ^{-1}Ext(M) → Ext(M ⊗ Kos(x)) → Ext(M) → 0` numerically and on annihilators.
pub fn ses_koszul_check(target: &PresentedComplex, x: &Poly, alg: &KoszulAlgebra, bound: usize) -> Result<SesReport> {
    let mx = target.tensor_koszul(std::slice::from_ref(x))?;
    let em = ext_module(target, alg, bound)?;
    let emx = ext_module(&mx, alg, bound)?;
    let t = bound as i32 - 2;
    let dims_m = em.hilbert(t);
    let dims_mx = emx.hilbert(t);
    let additivity = (0..=t as usize).all(|m| dims_mx[m] == dims_m[m] + if m > 0 { dims_m[m - 1] } else { 0 });
    let a = em.ring.clone();
    let ann_m = em.annihilator();
    let ann_mx = emx.annihilator();
    let gb_mx = groebner_basis(&a, &ann_mx);
    let mut squares_in = true;
    for f in &ann_m {
        for g in &ann_m {
            if !normal_form(&a.mul(f, g), &gb_mx).is_zero() {
                squares_in = false;
            }
        }
    }
    let annihilators = squares_in && radical_contains(&a, &ann_m, &ann_mx);
    Ok(SesReport { holds: additivity && annihilators, additivity, annihilators, dims_m, dims_mx })
}

/// Hilbert function of `Ext_E(X,k)` for a free `A`-module on the given degrees.
pub fn free_hilbert(n: usize, degrees: &[i32], t_max: i32) -> Vec<usize> {
    let mut out = vec![0; (t_max + 1).max(0) as usize];
    let mut by_degree: BTreeMap<i32, usize> = BTreeMap::new();
    for &d in degrees {
        *by_degree.entry(d).or_default() += 1;
    }
    for (t, slot) in out.iter_mut().enumerate() {
        for (&d, &c) in &by_degree {
            let e = t as i32 - d;
            if e >= 0 && e % 2 == 0 {
                *slot += c * binomial(e as usize / 2 + n - 1, n - 1);
            }
        }
    }
    out
}
