use super::algebra::KoszulAlgebra;
use super::module::DGEModule;
use super::presented::PresentedComplex;
use crate::algebra::groebner::GroebnerBasis;
use crate::algebra::ideal::{minimal_subset, syzygy_gb_vectors};
use crate::algebra::{GradedMatrix, ModVec, Poly};
use crate::complex::koszul::{boundary_terms, wedge};
use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};

/// A minimal semiprojective resolution `E ⊗ V → M` built up to homological degree `bound`.
#[derive(Clone, Debug)]
pub struct EFreeResolution {
    pub algebra: KoszulAlgebra,
    pub target: PresentedComplex,
    pub bound: usize,
    /// Internal twists of the generators `V_s`, `0 ≤ s < bound`.
    pub generators: Vec<Vec<i32>>,
    /// `∂v` in the basis of `(E ⊗ V)_{s-1}`.
    pub boundaries: Vec<Vec<ModVec>>,
    /// `ε(v)` in the free cover of `M_s`.
    pub augmentation: Vec<Vec<ModVec>>,
    pub module: DGEModule,
    basis: Vec<Vec<(u32, usize, usize)>>,
}

/// Basis `ξ_S ⊗ v` of `E ⊗ V`, per homological degree `(S, t, index in V_t)`.
struct Assembly {
    basis: Vec<Vec<(u32, usize, usize)>>,
    module: DGEModule,
}

fn assemble(alg: &KoszulAlgebra, gens: &[Vec<i32>], dv: &[Vec<ModVec>]) -> Assembly {
    let ring = alg.ring().clone();
    let n = alg.n();
    let subsets = alg.subsets();
    if gens.iter().all(Vec::is_empty) {
        return Assembly { basis: Vec::new(), module: DGEModule::zero(ring, alg.f().to_vec()) };
    }
    let top = gens.len() - 1 + n;
    let mut basis: Vec<Vec<(u32, usize, usize)>> = Vec::new();
    let mut index: Vec<HashMap<(u32, usize, usize), usize>> = Vec::new();
    let mut twists = Vec::new();
    for s in 0..=top {
        let mut b = Vec::new();
        let mut tw = Vec::new();
        for (size, group) in subsets.iter().enumerate() {
            if size > s || s - size >= gens.len() {
                continue;
            }
            let t = s - size;
            for &sub in group {
                for (idx, &g) in gens[t].iter().enumerate() {
                    b.push((sub, t, idx));
                    tw.push(alg.subset_twist(sub) + g);
                }
            }
        }
        index.push(b.iter().enumerate().map(|(k, e)| (*e, k)).collect());
        basis.push(b);
        twists.push(tw);
    }
    let mut diffs = Vec::new();
    for s in 1..=top {
        let mut m = GradedMatrix::zero(twists[s - 1].clone(), twists[s].clone());
        for (col, &(sub, t, idx)) in basis[s].iter().enumerate() {
            for (j, neg, rest) in boundary_terms(sub) {
                let row = index[s - 1][&(rest, t, idx)];
                let e = ring.scale(&alg.f()[j], if neg { -1 } else { 1 });
                m.set(row, col, ring.add(m.get(row, col), &e));
            }
            if t == 0 {
                continue;
            }
            let sign = if sub.count_ones() % 2 == 1 { -1 } else { 1 };
            let col_dv = dv[t][idx].to_column(basis[t - 1].len());
            for (k, c) in col_dv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (tsub, tt, tidx) = basis[t - 1][k];
                let Some((u, neg)) = wedge(sub, tsub) else { continue };
                let row = index[s - 1][&(u, tt, tidx)];
                let e = ring.scale(c, if neg { -sign } else { sign });
                m.set(row, col, ring.add(m.get(row, col), &e));
            }
        }
        diffs.push(m);
    }
    let mut actions = vec![BTreeMap::new(); n];
    for (i, act) in actions.iter_mut().enumerate() {
        for s in 0..top {
            let mut m = GradedMatrix::zero(twists[s + 1].clone(), twists[s].clone());
            for (col, &(sub, t, idx)) in basis[s].iter().enumerate() {
                if let Some((u, neg)) = wedge(1 << i, sub) {
                    let row = index[s + 1][&(u, t, idx)];
                    m.set(row, col, ring.constant(if neg { -1 } else { 1 }));
                }
            }
            act.insert(s as i32, m);
        }
    }
    let complex = FreeComplex::new_unchecked(ring, 0, twists, diffs).expect("consistent shapes");
    Assembly { basis, module: DGEModule::new_unchecked(complex, alg.f().to_vec(), actions) }
}

/// Data of the cone over the augmentation `E ⊗ V_{<s} → M` around degree `s`.
struct ConeView<'a> {
    target: &'a PresentedComplex,
    f: &'a Assembly,
    aug: &'a [Vec<ModVec>],
}

impl ConeView<'_> {
    fn twists(&self, s: i32) -> Vec<i32> {
        let mut t = self.target.twists(s).to_vec();
        t.extend_from_slice(self.f.module.complex.twists(s - 1));
        t
    }

    fn rels(&self, s: i32) -> Vec<ModVec> {
        self.target.rels(s).to_vec()
    }

    /// `[[∂^M_s, ε_{s-1}], [0, -∂^F_{s-1}]]`.
    fn diff(&self, s: i32) -> GradedMatrix {
        let ring = self.target.ring();
        let fc = &self.f.module.complex;
        let mut eps = GradedMatrix::zero(self.target.twists(s - 1).to_vec(), fc.twists(s - 1).to_vec());
        if s >= 1 {
            for (col, &(sub, t, idx)) in self.f.basis.get(s as usize - 1).map(|v| v.as_slice()).unwrap_or(&[]).iter().enumerate() {
                if sub == 0 {
                    for (r, e) in self.aug[t][idx].to_column(eps.rows()).into_iter().enumerate() {
                        eps.set(r, col, e);
                    }
                }
            }
        }
        let bottom_left = GradedMatrix::zero(fc.twists(s - 2).to_vec(), self.target.twists(s).to_vec());
        GradedMatrix::block(&self.target.diff(s), &eps, &bottom_left, &fc.diff(s - 1).scale(-1, ring))
    }
}

/// Minimal semiprojective resolution over `E` of a complex of `R`-modules, `R = Q/(f)`.
///
/// At step `s` the minimal generators of `H_s` of the cone over `E ⊗ V_{<s} → M` are
/// adjoined as new generators of `V_s`, killing that homology. Cycle representatives are
/// taken from a Gröbner basis of the cycles (lowest degree first) and reduced to normal
/// form modulo the boundaries.
pub fn e_free_resolution(target: &PresentedComplex, alg: &KoszulAlgebra, bound: usize) -> Result<EFreeResolution> {
    if bound == 0 {
        return Err(Error::TruncationTooSmall(bound));
    }
    if target.ring().as_ref() != alg.ring().as_ref() {
        return Err(Error::Malformed("target and algebra live over different rings".into()));
    }
    if !target.is_zero() && target.lo() < 0 {
        return Err(Error::Malformed("target must live in nonnegative homological degrees".into()));
    }
    let target = target.killed_by(alg.f());
    let ring = alg.ring().clone();
    let mut gens: Vec<Vec<i32>> = Vec::new();
    let mut dv: Vec<Vec<ModVec>> = Vec::new();
    let mut aug: Vec<Vec<ModVec>> = Vec::new();
    for s in 0..bound as i32 {
        let f = assemble(alg, &gens, &dv);
        let view = ConeView { target: &target, f: &f, aug: &aug };
        let twists = view.twists(s);
        let d = view.diff(s);
        let below = view.rels(s - 1);
        let mut bnd = view.diff(s + 1).column_vecs();
        bnd.extend(view.rels(s));
        gens.push(Vec::new());
        dv.push(Vec::new());
        aug.push(Vec::new());
        if twists.is_empty() {
            continue;
        }
        let below_m = GradedMatrix::from_columns(
            d.row_twists.clone(),
            below.iter().map(|v| v.degree(&d.row_twists).unwrap() as i32).collect(),
            &below,
        );
        let k = d.cols() as u32;
        let cycles: Vec<ModVec> = syzygy_gb_vectors(&ring, &d.hstack(&below_m))
            .into_iter()
            .map(|v| v.project(0, k))
            .filter(|v| !v.is_zero())
            .collect();
        bnd.retain(|v| !v.is_zero());
        let chosen = minimal_subset(&ring, &cycles, &bnd, &twists);
        if chosen.is_empty() {
            continue;
        }
        let bgb = GroebnerBasis::compute(ring.field(), ring.weights(), bnd, &twists);
        let split = target.rank(s) as u32;
        let field = ring.field();
        for i in chosen {
            let z = bgb.reduce(&cycles[i]);
            let deg = z.degree(&twists).expect("a minimal generator is nonzero") as i32;
            gens[s as usize].push(deg);
            aug[s as usize].push(z.project(0, split));
            dv[s as usize].push(z.project(split, k).scale(field.neg(1), field));
        }
    }
    let f = assemble(alg, &gens, &dv);
    Ok(EFreeResolution {
        algebra: alg.clone(),
        target,
        bound,
        generators: gens,
        boundaries: dv,
        augmentation: aug,
        module: f.module,
        basis: f.basis,
    })
}

impl EFreeResolution {
    /// `rank V_s`.
    pub fn ranks(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    /// Basis of `(E ⊗ V)_s` as `(S, t, index in V_t)`.
    pub fn basis(&self, s: i32) -> &[(u32, usize, usize)] {
        if s < 0 {
            return &[];
        }
        self.basis.get(s as usize).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Homology of the cone over the augmentation in degree `s` vanishes.
    pub fn cone_acyclic_at(&self, s: i32) -> bool {
        let assembly = Assembly { basis: self.basis.clone(), module: self.module.clone() };
        let view = ConeView { target: &self.target, f: &assembly, aug: &self.augmentation };
        let ring = self.algebra.ring();
        let twists = view.twists(s);
        if twists.is_empty() {
            return true;
        }
        let d = view.diff(s);
        let below = view.rels(s - 1);
        let below_m = GradedMatrix::from_columns(
            d.row_twists.clone(),
            below.iter().map(|v| v.degree(&d.row_twists).unwrap() as i32).collect(),
            &below,
        );
        let k = d.cols() as u32;
        let cycles: Vec<ModVec> = syzygy_gb_vectors(ring, &d.hstack(&below_m))
            .into_iter()
            .map(|v| v.project(0, k))
            .filter(|v| !v.is_zero())
            .collect();
        let mut bnd = view.diff(s + 1).column_vecs();
        bnd.extend(view.rels(s));
        let gb = GroebnerBasis::compute(ring.field(), ring.weights(), bnd, &twists);
        cycles.iter().all(|z| gb.contains(z))
    }

    /// Every differential entry lies in `n` or comes from `E_{≥1}` (no unit on `V ⊗ k`).
    pub fn is_minimal(&self) -> bool {
        for (t, dvs) in self.boundaries.iter().enumerate() {
            for v in dvs {
                for (k, e) in v.to_column(self.basis(t as i32 - 1).len()).iter().enumerate() {
                    let (sub, _, _) = self.basis(t as i32 - 1)[k];
                    if sub == 0 && e.constant_coeff() != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn f(&self) -> &[Poly] {
        self.algebra.f()
    }
}
