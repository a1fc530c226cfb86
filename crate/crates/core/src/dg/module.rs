use super::algebra::KoszulAlgebra;
use crate::algebra::ideal::Lifter;
use crate::algebra::{GradedMatrix, ModVec, Poly, RingRef};
use crate::complex::koszul::{koszul_complex, wedge};
use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Basis element `ξ_S ⊗ y^(H) ⊗ w` of a module of the form `E ⊗ Γ ⊗ W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub s: u32,
    pub h: DividedPowerIndex,
    pub label: usize,
}

/// Exponent vector `H` of a divided power `y^(H)`; homological degree `2|H|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DividedPowerIndex(pub Vec<u16>);

impl DividedPowerIndex {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|&h| h as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&h| h == 0)
    }

    pub fn homological_degree(&self) -> i32 {
        2 * self.weight() as i32
    }

    /// `χ_i · y^(H) = y^(H - e_i)`, or zero when `h_i = 0`.
    pub fn lower(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut h = self.0.clone();
        h[i] -= 1;
        Some(Self(h))
    }

    /// `χ^a · y^(H) = y^(H - a)`, or zero unless `a ≤ H`.
    pub fn lower_by(&self, a: &[u16]) -> Option<Self> {
        if self.0.iter().zip(a).any(|(h, a)| a > h) {
            return None;
        }
        Some(Self(self.0.iter().zip(a).map(|(h, a)| h - a).collect()))
    }

    /// All `H ∈ ℕⁿ` with `|H| = w`, lexicographically decreasing.
    pub fn all_of_weight(n: usize, w: u32) -> Vec<Self> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<DividedPowerIndex>) {
            if cur.len() + 1 == n {
                cur.push(left as u16);
                out.push(DividedPowerIndex(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e as u16);
                rec(n, left - e, cur, out);
                cur.pop();
            }
        }
        if n == 0 {
            return if w == 0 { vec![Self(Vec::new())] } else { Vec::new() };
        }
        let mut out = Vec::new();
        rec(n, w, &mut Vec::new(), &mut out);
        out
    }
}

/// Basis structure `E ⊗ Γ ⊗ W` recorded for the collapse to `A`-modules.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelData {
    /// Homological degree of each label `w`.
    pub degrees: Vec<i32>,
    /// Per homological degree, the label of each basis element in order.
    pub basis: BTreeMap<i32, Vec<BasisLabel>>,
}

/// A complex of free `Q`-modules with a strict action of `E = Kos^Q(f)`.
///
/// `λ_i` has homological degree `+1` and internal degree `deg f_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DGEModule {
    pub complex: FreeComplex,
    pub f: Vec<Poly>,
    actions: Vec<BTreeMap<i32, GradedMatrix>>,
    pub labels: Option<LabelData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn pass() -> Self {
        Self { passed: true, failure: None }
    }

    pub fn fail(msg: impl Into<String>) -> Self {
        Self { passed: false, failure: Some(msg.into()) }
    }
}

impl DGEModule {
    /// `actions[i][s]` is `λ_{i+1} : C_s → C_{s+1}`.
    pub fn new_unchecked(complex: FreeComplex, f: Vec<Poly>, actions: Vec<BTreeMap<i32, GradedMatrix>>) -> Self {
        Self { complex, f, actions, labels: None }
    }

    pub fn new(complex: FreeComplex, f: Vec<Poly>, actions: Vec<BTreeMap<i32, GradedMatrix>>) -> Result<Self> {
        let m = Self::new_unchecked(complex, f, actions);
        let r = m.verify();
        if !r.passed {
            return Err(Error::NotKoszulResolution(r.failure.unwrap()));
        }
        Ok(m)
    }

    pub fn zero(ring: RingRef, f: Vec<Poly>) -> Self {
        let n = f.len();
        Self { complex: FreeComplex::zero(ring), f, actions: vec![BTreeMap::new(); n], labels: None }
    }

    pub fn ring(&self) -> &RingRef {
        self.complex.ring()
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    /// `λ_i` on `C_s`, shaped `C_{s+1} × C_s`.
    pub fn action(&self, i: usize, s: i32) -> GradedMatrix {
        self.actions[i].get(&s).cloned().unwrap_or_else(|| {
            GradedMatrix::zero(self.complex.twists(s + 1).to_vec(), self.complex.twists(s).to_vec())
        })
    }

    pub fn action_ref(&self, i: usize, s: i32) -> Option<&GradedMatrix> {
        self.actions[i].get(&s)
    }

    pub fn with_labels(mut self, labels: LabelData) -> Self {
        self.labels = Some(labels);
        self
    }

    /// Checks `∂² = 0`, Leibniz `∂λ_i + λ_i∂ = f_i`, `λ_i² = 0` and `λ_iλ_j + λ_jλ_i = 0`.
    pub fn verify(&self) -> VerifyReport {
        dg_module_verify(self)
    }
}

/// Verifies the standing identities of a strict DG `E`-module.
pub fn dg_module_verify(x: &DGEModule) -> VerifyReport {
    let c = &x.complex;
    let ring = c.ring().clone();
    if let Err(e) = c.check() {
        return VerifyReport::fail(format!("d^2: {e}"));
    }
    if x.actions.len() != x.f.len() {
        return VerifyReport::fail("number of actions differs from the length of f");
    }
    for i in 0..x.n() {
        for (&s, m) in &x.actions[i] {
            if m.row_twists != c.twists(s + 1) || m.col_twists != c.twists(s) {
                return VerifyReport::fail(format!("lambda{} has the wrong shape at degree {s}", i + 1));
            }
        }
    }
    let degrees: Vec<i32> = c.degrees().collect();
    for i in 0..x.n() {
        for &s in &degrees {
            let left = c.diff(s + 1).mul(&x.action(i, s), &ring);
            let right = x.action(i, s - 1).mul(&c.diff(s), &ring);
            let sum = left.add(&right, &ring);
            let want = GradedMatrix::identity(c.twists(s).to_vec(), ring.nvars()).mul_poly(&x.f[i], 0, &ring);
            if sum.entries() != want.entries() {
                return VerifyReport::fail(format!("Leibniz fails for lambda{} at degree {s}", i + 1));
            }
        }
    }
    for i in 0..x.n() {
        for j in i..x.n() {
            for &s in &degrees {
                let ij = x.action(i, s + 1).mul(&x.action(j, s), &ring);
                let ji = x.action(j, s + 1).mul(&x.action(i, s), &ring);
                let bad = if i == j { !ij.is_zero() } else { !ij.add(&ji, &ring).is_zero() };
                if bad {
                    let what = if i == j {
                        format!("lambda{}^2 != 0", i + 1)
                    } else {
                        format!("lambda{} and lambda{} do not anticommute", i + 1, j + 1)
                    };
                    return VerifyReport::fail(format!("{what} at degree {s}"));
                }
            }
        }
    }
    VerifyReport::pass()
}

/// Multivariate division of `f` by `g` in the given order; returns quotients and remainder.
pub fn divide(ring: &RingRef, f: &Poly, g: &[Poly]) -> (Vec<Poly>, Poly) {
    let field = ring.field();
    let mut q = vec![Poly::zero(); g.len()];
    let mut rem = Poly::zero();
    let mut p = f.clone();
    while let Some((m, c)) = p.leading().cloned() {
        let hit = g.iter().enumerate().find(|(_, gj)| gj.leading_monomial().is_some_and(|l| l.divides(&m)));
        match hit {
            Some((j, gj)) => {
                let (lm, lc) = gj.leading().unwrap();
                let t = lm.quotient_of(&m);
                let coef = field.mul(c, field.inv(*lc));
                q[j] = q[j].add(&Poly::term(t.clone(), coef), field);
                p = p.sub(&gj.mul_term(&t, coef, field), field);
            }
            None => {
                let lead = Poly::term(m, c);
                rem = rem.add(&lead, field);
                p = p.sub(&lead, field);
            }
        }
    }
    (q, rem)
}

/// Left multiplication by `ξ_j` on `Kos(g)` (degree `s → s+1`), as a constant matrix.
fn left_mult_xi(k: &FreeComplex, j: usize, s: i32, n: usize, subsets: &[Vec<u32>]) -> GradedMatrix {
    let ring = k.ring();
    let mut m = GradedMatrix::zero(k.twists(s + 1).to_vec(), k.twists(s).to_vec());
    if s < 0 || s as usize >= n {
        return m;
    }
    let src = &subsets[s as usize];
    let tgt = &subsets[s as usize + 1];
    for (col, &sub) in src.iter().enumerate() {
        if let Some((u, neg)) = wedge(1 << j, sub) {
            let row = tgt.iter().position(|&t| t == u).unwrap();
            m.set(row, col, ring.constant(if neg { -1 } else { 1 }));
        }
    }
    m
}

/// `Kos^Q(f')` as a DG `E`-module through `ξ_i ↦ Σ_j a_ij ξ'_j` with `f_i = Σ_j a_ij f'_j`.
///
/// The witnesses `a_ij` come from multivariate division by `f'` in the given order, with a
/// Gröbner lift as fallback. Returns the module and the matrix `a`.
pub fn koszul_action(e: &KoszulAlgebra, target: &[Poly]) -> Result<(DGEModule, Vec<Vec<Poly>>)> {
    let ring = e.ring().clone();
    let k = koszul_complex(&ring, target)?;
    let m = target.len();
    let mut a = Vec::with_capacity(e.n());
    let mut lifter: Option<Lifter> = None;
    for (index, fi) in e.f().iter().enumerate() {
        let (q, rem) = divide(&ring, fi, target);
        if rem.is_zero() {
            a.push(q);
            continue;
        }
        let lf = lifter.get_or_insert_with(|| {
            let col_twists = target.iter().map(|g| g.degree().unwrap_or(0) as i32).collect();
            let row = GradedMatrix::zero(vec![0], col_twists);
            let mut row = row;
            for (j, g) in target.iter().enumerate() {
                row.set(0, j, g.clone());
            }
            Lifter::new(&ring, &row)
        });
        match lf.lift(&ModVec::from_poly(fi)) {
            Some(v) => a.push(v.to_column(m)),
            None => {
                let rest = lf.remainder(&ModVec::from_poly(fi)).into_poly();
                return Err(Error::NotInIdeal { index, remainder: ring.fmt_poly(&rest) });
            }
        }
    }
    let subsets = crate::complex::koszul::subsets_by_size(m);
    let mut actions = vec![BTreeMap::new(); e.n()];
    for s in 0..m as i32 {
        let xis: Vec<GradedMatrix> = (0..m).map(|j| left_mult_xi(&k, j, s, m, &subsets)).collect();
        for (i, row) in a.iter().enumerate() {
            let mut acc = GradedMatrix::zero(k.twists(s + 1).to_vec(), k.twists(s).to_vec());
            for (j, aij) in row.iter().enumerate() {
                if !aij.is_zero() {
                    acc = acc.add(&xis[j].mul_poly(aij, 0, &ring), &ring);
                }
            }
            actions[i].insert(s, acc);
        }
    }
    let module = DGEModule::new(k, e.f().to_vec(), actions)?;
    Ok((module, a))
}

/// `E` as a module over itself.
pub fn algebra_as_module(e: &KoszulAlgebra) -> DGEModule {
    let k = e.complex().clone();
    let n = e.n();
    let subsets = e.subsets();
    let mut actions = vec![BTreeMap::new(); n];
    for (i, act) in actions.iter_mut().enumerate() {
        for s in 0..n as i32 {
            act.insert(s, left_mult_xi(&k, i, s, n, &subsets));
        }
    }
    DGEModule::new_unchecked(k, e.f().to_vec(), actions)
}
