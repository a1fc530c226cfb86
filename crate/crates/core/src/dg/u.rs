use super::algebra::KoszulAlgebra;
use super::module::{BasisLabel, DGEModule, DividedPowerIndex, LabelData};
use crate::algebra::{GradedMatrix, Poly};
use crate::complex::cone::{cone_unchecked, ChainMap};
use crate::complex::koszul::{boundary_terms, wedge};
use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};

/// `U_E(P)` truncated at `|H| ≤ ⌊N/2⌋`, or a cone built from such modules.
#[derive(Clone, Debug)]
pub struct UModule {
    pub module: DGEModule,
    /// `χ_i : U_s → U_{s-2}` acting through the divided powers.
    pub chi: Vec<BTreeMap<i32, GradedMatrix>>,
    pub bound: usize,
    pub max_weight: u32,
}

impl UModule {
    /// Homological degrees in which the truncation agrees with the untruncated module.
    pub fn authoritative_below(&self) -> i32 {
        self.bound as i32 - 1
    }

    pub fn chi_action(&self, i: usize, s: i32) -> GradedMatrix {
        let c = &self.module.complex;
        self.chi[i]
            .get(&s)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zero(c.twists(s - 2).to_vec(), c.twists(s).to_vec()))
    }
}

/// Builds `E ⊗ Γ ⊗ P` with differential
/// `∂(ξ_S⊗y^H⊗p) = ∂ξ_S⊗y^H⊗p + (-1)^{|S|} ξ_S⊗y^H⊗∂p
///   + Σ_i [(-1)^{|S|} ξ_S⊗y^{H-e_i}⊗λ_i p − ξ_iξ_S⊗y^{H-e_i}⊗p]`.
pub fn u_construction(p: &DGEModule, alg: &KoszulAlgebra, bound: usize) -> Result<UModule> {
    let report = p.verify();
    if !report.passed {
        return Err(Error::NotKoszulResolution(report.failure.unwrap()));
    }
    if p.f != alg.f() {
        return Err(Error::NotKoszulResolution("P is a module over a different E".into()));
    }
    let ring = alg.ring().clone();
    let n = alg.n();
    let hmax = (bound / 2) as u32;
    let pc = &p.complex;
    if pc.is_zero() {
        return Ok(UModule {
            module: DGEModule::zero(ring, alg.f().to_vec()),
            chi: vec![BTreeMap::new(); n],
            bound,
            max_weight: hmax,
        });
    }
    let subsets = alg.subsets();
    let hs: Vec<Vec<DividedPowerIndex>> = (0..=hmax).map(|w| DividedPowerIndex::all_of_weight(n, w)).collect();
    let mut label_of: HashMap<(i32, usize), usize> = HashMap::new();
    let mut label_degrees = Vec::new();
    for d in pc.degrees() {
        for i in 0..pc.rank(d) {
            label_of.insert((d, i), label_degrees.len());
            label_degrees.push(d);
        }
    }
    let h_twist = |h: &DividedPowerIndex| -> i32 { h.0.iter().zip(alg.degrees()).map(|(&a, &d)| a as i32 * d).sum() };

    let lo = pc.lo();
    let hi = pc.hi() + n as i32 + 2 * hmax as i32;
    // basis element: (S, H, degree of p, index of p)
    type Elem = (u32, DividedPowerIndex, i32, usize);
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    let mut index: Vec<HashMap<Elem, usize>> = Vec::new();
    let mut twists = Vec::new();
    for s in lo..=hi {
        let mut b = Vec::new();
        let mut tw = Vec::new();
        for (size, group) in subsets.iter().enumerate() {
            for &sub in group {
                for (w, hw) in hs.iter().enumerate() {
                    let pd = s - size as i32 - 2 * w as i32;
                    if pc.rank(pd) == 0 {
                        continue;
                    }
                    for h in hw {
                        for (pi, &pt) in pc.twists(pd).iter().enumerate() {
                            b.push((sub, h.clone(), pd, pi));
                            tw.push(alg.subset_twist(sub) + h_twist(h) + pt);
                        }
                    }
                }
            }
        }
        index.push(b.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect());
        basis.push(b);
        twists.push(tw);
    }
    let at = |s: i32| (s - lo) as usize;

    let mut diffs = Vec::new();
    for s in lo + 1..=hi {
        let (ks, kt) = (at(s), at(s - 1));
        let mut m = GradedMatrix::zero(twists[kt].clone(), twists[ks].clone());
        let mut add = |row: usize, col: usize, e: &Poly| {
            let v = ring.add(m.get(row, col), e);
            m.set(row, col, v);
        };
        for (col, (sub, h, pd, pi)) in basis[ks].iter().enumerate() {
            let sign = if sub.count_ones() % 2 == 1 { -1 } else { 1 };
            for (j, neg, rest) in boundary_terms(*sub) {
                let row = index[kt][&(rest, h.clone(), *pd, *pi)];
                add(row, col, &ring.scale(&alg.f()[j], if neg { -1 } else { 1 }));
            }
            if let Some(d) = pc.diff_ref(*pd) {
                for r in 0..d.rows() {
                    let e = d.get(r, *pi);
                    if !e.is_zero() {
                        let row = index[kt][&(*sub, h.clone(), *pd - 1, r)];
                        add(row, col, &ring.scale(e, sign));
                    }
                }
            }
            for i in 0..n {
                let Some(hl) = h.lower(i) else { continue };
                if let Some(l) = p.action_ref(i, *pd) {
                    for r in 0..l.rows() {
                        let e = l.get(r, *pi);
                        if !e.is_zero() {
                            let row = index[kt][&(*sub, hl.clone(), *pd + 1, r)];
                            add(row, col, &ring.scale(e, sign));
                        }
                    }
                }
                if let Some((u, neg)) = wedge(1 << i, *sub) {
                    let row = index[kt][&(u, hl.clone(), *pd, *pi)];
                    add(row, col, &ring.constant(if neg { 1 } else { -1 }));
                }
            }
        }
        diffs.push(m);
    }

    let mut actions = vec![BTreeMap::new(); n];
    let mut chi = vec![BTreeMap::new(); n];
    for i in 0..n {
        for s in lo..=hi {
            let ks = at(s);
            if s < hi {
                let mut m = GradedMatrix::zero(twists[ks + 1].clone(), twists[ks].clone());
                for (col, (sub, h, pd, pi)) in basis[ks].iter().enumerate() {
                    if let Some((u, neg)) = wedge(1 << i, *sub) {
                        let row = index[ks + 1][&(u, h.clone(), *pd, *pi)];
                        m.set(row, col, ring.constant(if neg { -1 } else { 1 }));
                    }
                }
                actions[i].insert(s, m);
            }
            if s - 2 >= lo {
                let mut m = GradedMatrix::zero(twists[ks - 2].clone(), twists[ks].clone());
                for (col, (sub, h, pd, pi)) in basis[ks].iter().enumerate() {
                    if let Some(hl) = h.lower(i) {
                        let row = index[ks - 2][&(*sub, hl, *pd, *pi)];
                        m.set(row, col, ring.one());
                    }
                }
                chi[i].insert(s, m);
            }
        }
    }

    let labels = LabelData {
        degrees: label_degrees,
        basis: (lo..=hi)
            .map(|s| {
                let v = basis[at(s)]
                    .iter()
                    .map(|(sub, h, pd, pi)| BasisLabel { s: *sub, h: h.clone(), label: label_of[&(*pd, *pi)] })
                    .collect();
                (s, v)
            })
            .collect(),
    };
    let complex = FreeComplex::new(ring, lo, twists, diffs).map_err(|e| Error::NotKoszulResolution(e.to_string()))?;
    let module = DGEModule::new_unchecked(complex, alg.f().to_vec(), actions).with_labels(labels);
    let report = module.verify();
    if !report.passed {
        return Err(Error::NotKoszulResolution(report.failure.unwrap()));
    }
    Ok(UModule { module, chi, bound, max_weight: hmax })
}

/// Internal degree of `χ^a` and cohomological degree `2|a|`, requiring all terms of `g` to agree.
fn operator_degrees(g: &Poly, alg: &KoszulAlgebra) -> Result<(i32, i32)> {
    let mut out: Option<(i32, i32)> = None;
    for (m, _) in g.terms() {
        let coh = 2 * m.total_exponent() as i32;
        let int: i32 = m.exps().iter().zip(alg.degrees()).map(|(&a, &d)| a as i32 * d).sum();
        match out {
            None => out = Some((coh, int)),
            Some(prev) if prev != (coh, int) => {
                return Err(Error::InhomogeneousElement(format!("{} terms of mixed degree", g.len())))
            }
            _ => {}
        }
    }
    out.ok_or_else(|| Error::InhomogeneousElement("the zero element has no degree".into()))
}

/// `C̃(g) = cone(g· : U → Σ^d U)` with `E` acting diagonally (with a sign on the shifted copy).
pub fn c_tilde(alg: &KoszulAlgebra, u: &UModule, g: &Poly) -> Result<UModule> {
    let n = alg.n();
    if g.terms().iter().any(|(m, _)| m.nvars() != n) {
        return Err(Error::Malformed("g must be a polynomial in chi1..chin".into()));
    }
    let (d, w) = operator_degrees(g, alg)?;
    let uc = &u.module.complex;
    let ring = uc.ring().clone();
    let field = ring.field();
    let labels = u.module.labels.as_ref().ok_or_else(|| Error::NotSemiprojective("U carries no basis labels".into()))?;

    let twisted = {
        let tw: Vec<Vec<i32>> = uc.degrees().map(|s| uc.twists(s).iter().map(|t| t + w).collect()).collect();
        let diffs = (uc.lo() + 1..=uc.hi())
            .map(|s| {
                let m = uc.diff(s);
                let rt = m.row_twists.iter().map(|t| t + w).collect();
                let ct = m.col_twists.iter().map(|t| t + w).collect();
                m.with_twists(rt, ct)
            })
            .collect();
        FreeComplex::new_unchecked(ring.clone(), uc.lo(), tw, diffs)?
    };
    let mut comps = BTreeMap::new();
    for s in uc.degrees() {
        let lab = &labels.basis[&s];
        let Some(tlab) = labels.basis.get(&(s - d)) else { continue };
        let tindex: HashMap<&BasisLabel, usize> = tlab.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let mut m = GradedMatrix::zero(twisted.twists(s - d).to_vec(), uc.twists(s).to_vec());
        for (col, b) in lab.iter().enumerate() {
            for (mono, c) in g.terms() {
                let Some(h) = b.h.lower_by(mono.exps()) else { continue };
                let key = BasisLabel { s: b.s, h, label: b.label };
                let row = tindex[&key];
                let v = field.add(m.get(row, col).constant_coeff(), *c);
                m.set(row, col, Poly::constant(v, ring.nvars()));
            }
        }
        comps.insert(s, m);
    }
    let alpha = ChainMap::new(uc.clone(), twisted, -d, comps)?;
    let cone = cone_unchecked(&alpha.normalized());
    cone.check()?;

    let target = alpha.normalized().target;
    let nlab = labels.degrees.len();
    let mut actions = vec![BTreeMap::new(); n];
    for (i, act) in actions.iter_mut().enumerate() {
        for s in cone.degrees() {
            let top = u.module.action(i, s - d).with_twists(target.twists(s + 1).to_vec(), target.twists(s).to_vec());
            let bottom = u.module.action(i, s - 1).scale(-1, &ring);
            let z1 = GradedMatrix::zero(top.row_twists.clone(), bottom.col_twists.clone());
            let z2 = GradedMatrix::zero(bottom.row_twists.clone(), top.col_twists.clone());
            act.insert(s, GradedMatrix::block(&top, &z1, &z2, &bottom));
        }
    }
    let mut chi = vec![BTreeMap::new(); n];
    for (i, ch) in chi.iter_mut().enumerate() {
        for s in cone.degrees() {
            let top = u.chi_action(i, s - d).with_twists(target.twists(s - 2).to_vec(), target.twists(s).to_vec());
            let bottom = u.chi_action(i, s - 1);
            let z1 = GradedMatrix::zero(top.row_twists.clone(), bottom.col_twists.clone());
            let z2 = GradedMatrix::zero(bottom.row_twists.clone(), top.col_twists.clone());
            ch.insert(s, GradedMatrix::block(&top, &z1, &z2, &bottom));
        }
    }
    let mut degrees: Vec<i32> = labels.degrees.iter().map(|x| x + d).collect();
    degrees.extend(labels.degrees.iter().map(|x| x + 1));
    let basis = cone
        .degrees()
        .map(|s| {
            let mut v: Vec<BasisLabel> = labels.basis.get(&(s - d)).cloned().unwrap_or_default();
            v.extend(
                labels
                    .basis
                    .get(&(s - 1))
                    .into_iter()
                    .flatten()
                    .map(|b| BasisLabel { s: b.s, h: b.h.clone(), label: b.label + nlab }),
            );
            (s, v)
        })
        .collect();
    let module = DGEModule::new_unchecked(cone, alg.f().to_vec(), actions).with_labels(LabelData { degrees, basis });
    let report = module.verify();
    if !report.passed {
        return Err(Error::NotKoszulResolution(report.failure.unwrap()));
    }
    Ok(UModule { module, chi, bound: u.bound, max_weight: u.max_weight })
}
