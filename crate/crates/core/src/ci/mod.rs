//! Complete-intersection detection and proxy-smallness witnesses.

use crate::algebra::ideal::{krull_dimension, minimal_generators, syzygy_kernel, Lifter};
use crate::algebra::{GradedMatrix, GradedRing, ModVec, Poly, RingRef};
use crate::complex::homology::module_support;
use crate::complex::{homology_presentation, minimize_complex, minimize_presentation, ChainMap, FreeComplex, SupportSet};
use crate::complex::cone::mapping_cone;
use crate::algebra::ideal::{annihilator, ideal_intersection};
use crate::dg::{c_tilde, koszul_action, u_construction, KoszulAlgebra, PresentedComplex};
use crate::error::{Error, Result};
use crate::ext::{ext_module, ext_of_labeled, module_variety, operator_ring, support_variety, variety_of_elements, SupportVariety};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Default truncation for the variety route.
pub const DEFAULT_BOUND: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct CIVerdict {
    pub embedding_dimension: usize,
    pub mu: usize,
    pub minimal_generators: Vec<String>,
    pub krull_dimension: i64,
    /// `dim Q/(f) = e − μ`.
    pub oracle_ci: bool,
    /// `V_E(R) = ∅`.
    pub variety_ci: bool,
    pub variety: SupportVariety,
    pub variety_ideal: Vec<String>,
    pub bound: usize,
    pub stable: bool,
    pub agreement: bool,
}

/// Minimal generators of `(f)` (checked to lie in `n²`), `dim Q/(f)` and the classical verdict.
pub fn oracle_route(q: &RingRef, f: &[Poly]) -> Result<(KoszulAlgebra, i64, bool)> {
    if !q.is_polynomial() {
        return Err(Error::HypothesisViolated("Q must be a polynomial ring".into()));
    }
    let fmin = minimal_generators(q, f);
    let alg = KoszulAlgebra::new(q.clone(), fmin)?;
    alg.require_in_n_squared()?;
    let dim = krull_dimension(q, alg.f());
    let ci = dim == q.nvars() as i64 - alg.n() as i64;
    Ok((alg, dim, ci))
}

pub fn ci_check(q: &RingRef, f: &[Poly]) -> Result<CIVerdict> {
    ci_check_with(q, f, DEFAULT_BOUND)
}

pub fn ci_check_with(q: &RingRef, f: &[Poly], bound: usize) -> Result<CIVerdict> {
    let (alg, dim, oracle_ci) = oracle_route(q, f)?;
    let r = PresentedComplex::quotient(q.clone(), alg.f());
    let (_, variety) = module_variety(&r, &alg, bound)?;
    let variety_ci = variety.is_empty();
    let stable = variety.stable.unwrap_or(false);
    Ok(CIVerdict {
        embedding_dimension: q.nvars(),
        mu: alg.n(),
        minimal_generators: alg.f().iter().map(|g| q.fmt_poly(g)).collect(),
        krull_dimension: dim,
        oracle_ci,
        variety_ci,
        variety_ideal: variety.ideal_strings(),
        variety,
        bound,
        stable,
        agreement: oracle_ci == variety_ci,
    })
}

/// Degree-(−2) operators `t_1..t_n` on a minimal resolution window of `M` over a complete intersection.
#[derive(Clone, Debug)]
pub struct EisenbudOperators {
    pub ring: RingRef,
    pub f: Vec<Poly>,
    pub resolution: FreeComplex,
    /// `∂̃_s` over `Q`, keyed by `s`.
    pub lifted: BTreeMap<i32, GradedMatrix>,
    /// `t̃_j` over `Q`, keyed by source degree.
    pub lifted_operators: Vec<BTreeMap<i32, GradedMatrix>>,
    pub operators: Vec<ChainMap>,
}

impl EisenbudOperators {
    /// `∂̃_{s-1}∂̃_s − Σ_j f_j t̃_j` vanishes over `Q` in every degree.
    pub fn operator_identity_holds(&self) -> bool {
        let q = Arc::new(self.ring.ambient());
        self.lifted.keys().all(|&s| {
            let (Some(a), Some(b)) = (self.lifted.get(&(s - 1)), self.lifted.get(&s)) else { return true };
            let mut lhs = a.mul(b, &q);
            for (j, fj) in self.f.iter().enumerate() {
                if let Some(t) = self.lifted_operators[j].get(&s) {
                    let ft = GradedMatrix::new(lhs.row_twists.clone(), lhs.col_twists.clone(), scale_entries(t, fj, &q))
                        .expect("degrees match");
                    lhs = lhs.sub(&ft, &q);
                }
            }
            lhs.is_zero()
        })
    }

    pub fn chain_identity_holds(&self) -> bool {
        self.operators.iter().all(|t| t.check().is_ok())
    }
}

fn scale_entries(t: &GradedMatrix, g: &Poly, q: &RingRef) -> Vec<Vec<Poly>> {
    t.entries().iter().map(|r| r.iter().map(|e| q.mul(e, g)).collect()).collect()
}

/// Lifts `c` to `Q`, writes `∂̃² = Σ f_j t̃_j` and returns `t_j = t̃_j mod (f)` as chain maps.
pub fn complex_operators(
    c: &FreeComplex,
    f: &[Poly],
) -> Result<(BTreeMap<i32, GradedMatrix>, Vec<BTreeMap<i32, GradedMatrix>>, Vec<ChainMap>)> {
    let r = c.ring().clone();
    let q: RingRef = Arc::new(r.ambient());
    let degs: Vec<i32> = f.iter().map(|g| g.degree().unwrap_or(0) as i32).collect();
    let mut row = GradedMatrix::zero(vec![0], degs.clone());
    for (j, g) in f.iter().enumerate() {
        row.set(0, j, g.clone());
    }
    let lifter = Lifter::new(&q, &row);
    let lifted: BTreeMap<i32, GradedMatrix> = (c.lo() + 1..=c.hi()).map(|s| (s, c.diff(s).reduced(&r))).collect();
    let mut tilde = vec![BTreeMap::new(); f.len()];
    let mut comps = vec![BTreeMap::new(); f.len()];
    for s in c.lo() + 2..=c.hi() {
        let prod = lifted[&(s - 1)].mul(&lifted[&s], &q);
        let mut ts: Vec<GradedMatrix> = degs
            .iter()
            .map(|&d| GradedMatrix::zero(c.twists(s - 2).iter().map(|t| t + d).collect(), c.twists(s).to_vec()))
            .collect();
        for i in 0..prod.rows() {
            for k in 0..prod.cols() {
                let p = prod.get(i, k);
                if p.is_zero() {
                    continue;
                }
                let coeffs = lifter.lift(&ModVec::from_poly(p)).ok_or_else(|| {
                    Error::NotCertifiedCI(format!("∂² has an entry outside (f): {}", q.fmt_poly(p)))
                })?;
                for (j, e) in coeffs.to_column(f.len()).into_iter().enumerate() {
                    ts[j].set(i, k, e);
                }
            }
        }
        for (j, t) in ts.into_iter().enumerate() {
            comps[j].insert(s, t.reduced(&r));
            tilde[j].insert(s, t);
        }
    }
    let mut operators = Vec::with_capacity(f.len());
    for (j, cj) in comps.into_iter().enumerate() {
        operators.push(ChainMap::new(c.clone(), c.twisted(degs[j]), -2, cj)?);
    }
    Ok((lifted, tilde, operators))
}

/// Minimal free resolution of `coker(m)` over `r` in homological degrees `0..=s_max`.
pub fn minimal_resolution(r: &RingRef, m: &GradedMatrix, s_max: usize) -> Result<FreeComplex> {
    let p = minimize_presentation(r, m);
    if p.rows() == 0 {
        return Ok(FreeComplex::zero(r.clone()));
    }
    let mut twists = vec![p.row_twists.clone(), p.col_twists.clone()];
    let mut diffs = vec![p];
    while diffs.len() < s_max {
        let last = diffs.last().unwrap();
        let next = if last.cols() == 0 {
            GradedMatrix::zero(Vec::new(), Vec::new())
        } else {
            syzygy_kernel(r, last)
        };
        twists.push(next.col_twists.clone());
        diffs.push(next);
    }
    twists.truncate(s_max + 1);
    diffs.truncate(s_max);
    FreeComplex::new(r.clone(), 0, twists, diffs)
}

fn certify(r: &RingRef) -> Result<Vec<Poly>> {
    let q: RingRef = Arc::new(r.ambient());
    let (alg, _, ci) = oracle_route(&q, r.relations())?;
    if !ci {
        return Err(Error::NotCertifiedCI(format!(
            "({}) is not generated by a regular sequence",
            alg.f().iter().map(|g| q.fmt_poly(g)).collect::<Vec<_>>().join(",")
        )));
    }
    Ok(alg.f().to_vec())
}

pub fn eisenbud_operators(r: &RingRef, m: &GradedMatrix, s_max: usize) -> Result<EisenbudOperators> {
    if s_max < 2 {
        return Err(Error::WindowTooSmall(s_max));
    }
    let f = certify(r)?;
    let resolution = minimal_resolution(r, m, s_max)?;
    let (lifted, lifted_operators, operators) = complex_operators(&resolution, &f)?;
    Ok(EisenbudOperators { ring: r.clone(), f, resolution, lifted, lifted_operators, operators })
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    /// Index `j` of the operator `t_j` coned at this step.
    pub operator: usize,
    pub shift: i32,
    /// `M(i)` after minimization.
    pub complex: FreeComplex,
    pub support: SupportSet,
}

#[derive(Clone, Debug)]
pub struct ProxyWitness {
    pub ring: RingRef,
    pub module: GradedMatrix,
    pub s_max: usize,
    pub resolution: FreeComplex,
    pub trace: Vec<TraceStep>,
    pub perfect: FreeComplex,
    pub support_m: SupportSet,
    pub support_p: SupportSet,
}

/// `⋃ Supp H_s(C)` over `s ≤ top`, as an intersection of annihilators.
pub fn support_below(c: &FreeComplex, top: i32) -> SupportSet {
    let ring = c.ring();
    let mut acc: Option<Vec<Poly>> = None;
    for s in c.lo()..=c.hi().min(top) {
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

/// The part of a minimized complex below its first zero component, if that part ends by `top`.
fn perfect_part(c: &FreeComplex, top: i32) -> Option<FreeComplex> {
    let c = c.trimmed();
    if c.is_zero() {
        return Some(c);
    }
    let gap = (c.lo()..=c.hi() + 1).find(|&s| c.rank(s) == 0).unwrap();
    (gap - 1 <= top).then(|| c.window(c.lo(), gap - 1))
}

struct Run {
    resolution: FreeComplex,
    trace: Vec<(usize, FreeComplex)>,
    perfect: FreeComplex,
}

fn run(r: &RingRef, m: &GradedMatrix, s_max: usize) -> Result<Run> {
    let ops = eisenbud_operators(r, m, s_max)?;
    let top = s_max as i32 - 2;
    let resolution = ops.resolution.clone();
    if let Some(p) = perfect_part(&resolution, top) {
        return Ok(Run { resolution, trace: Vec::new(), perfect: p });
    }
    let mut cur = resolution.clone();
    let mut trace = Vec::new();
    for j in 0..ops.f.len() {
        let t = if j == 0 { ops.operators[0].clone() } else { complex_operators(&cur, &ops.f)?.2.swap_remove(j) };
        cur = minimize_complex(&mapping_cone(&t)?);
        trace.push((j, cur.clone()));
    }
    let perfect = perfect_part(&cur, top).ok_or(Error::NotPerfectAtBound { bound: s_max })?;
    Ok(Run { resolution, trace, perfect })
}

/// Cones every Eisenbud operator in turn and extracts the perfect complex left after minimization.
pub fn proxy_witness(r: &RingRef, m: &GradedMatrix, s_max: usize) -> Result<ProxyWitness> {
    let first = run(r, m, s_max)?;
    let again = run(r, m, s_max + 2)?;
    if again.perfect != first.perfect {
        return Err(Error::NotPerfectAtBound { bound: s_max });
    }
    let top = s_max as i32 - 2;
    let trace = first
        .trace
        .into_iter()
        .map(|(operator, complex)| {
            let support = support_below(&complex, top);
            TraceStep { operator, shift: 2, complex, support }
        })
        .collect();
    let support_m = module_support(r, m);
    let support_p = support_below(&first.perfect, i32::MAX);
    Ok(ProxyWitness {
        ring: r.clone(),
        module: m.clone(),
        s_max,
        resolution: first.resolution,
        trace,
        perfect: first.perfect,
        support_m,
        support_p,
    })
}

pub fn default_window(r: &GradedRing) -> usize {
    2 * r.nvars() + 4
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub passed: bool,
    pub replay: bool,
    pub perfect: bool,
    pub minimal: bool,
    pub nontrivial: bool,
    pub support: bool,
    pub failures: Vec<String>,
}

pub fn verify_witness(w: &ProxyWitness) -> WitnessReport {
    let mut failures = Vec::new();
    let ring = &w.ring;
    let top = w.s_max as i32 - 2;
    let replay = match run(ring, &w.module, w.s_max) {
        Ok(rerun) => {
            let mut ok = rerun.resolution == w.resolution;
            if rerun.trace.len() != w.trace.len() {
                failures.push(format!("trace has {} steps, replay has {}", w.trace.len(), rerun.trace.len()));
                ok = false;
            } else {
                for (k, ((j, c), step)) in rerun.trace.iter().zip(&w.trace).enumerate() {
                    if *j != step.operator || *c != step.complex || step.shift == 0 {
                        failures.push(format!("trace step {k} does not replay"));
                        ok = false;
                    }
                }
            }
            if rerun.perfect != w.perfect {
                failures.push("final complex differs from the replayed one".into());
                ok = false;
            }
            ok
        }
        Err(e) => {
            failures.push(format!("replay failed: {e}"));
            false
        }
    };
    let p = &w.perfect;
    let perfect = p.check().is_ok() && (p.is_zero() || p.hi() <= top);
    if !perfect {
        failures.push("P is not a bounded complex inside the window".into());
    }
    let minimal = p.degrees().all(|s| {
        let d = p.diff(s);
        d.entries().iter().all(|row| row.iter().all(|e| e.is_zero() || !e.is_constant()))
    });
    if !minimal {
        failures.push("P has a unit entry in its differential".into());
    }
    let nontrivial = p.degrees().any(|s| homology_presentation(p, s).rows() > 0);
    if !nontrivial {
        failures.push("P has zero homology".into());
    }
    let supp_p = support_below(p, i32::MAX);
    let supp_m = module_support(ring, &w.module);
    let mut support = supp_p.same_as(&supp_m, ring)
        && supp_p.same_as(&w.support_p, ring)
        && supp_m.same_as(&w.support_m, ring);
    for (k, step) in w.trace.iter().enumerate() {
        if !support_below(&step.complex, top).same_as(&supp_m, ring) || !step.support.same_as(&supp_m, ring) {
            failures.push(format!("support changes at trace step {k}"));
            support = false;
        }
    }
    if !support {
        failures.push("Supp P differs from Supp M".into());
    }
    WitnessReport { passed: replay && perfect && minimal && nontrivial && support, replay, perfect, minimal, nontrivial, support, failures }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeEntry {
    pub g: String,
    pub variety_ideal: Vec<String>,
    pub contains_ring_variety: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub ring_variety_empty: bool,
    pub ring_variety_ideal: Vec<String>,
    pub residue_variety_ideal: Vec<String>,
    pub entries: Vec<ProbeEntry>,
    /// `V_E(R) ⊆ ⋂ V(g)`.
    pub contained_in_intersection: bool,
    pub stable: bool,
}

/// `V_E(R)`, `V_E(k)` and `V_E(C̃(g))` for each `g`, with the containments used to separate
/// complete intersections from the rest.
pub fn non_ci_probe(q: &RingRef, f: &[Poly], g_list: &[Poly], bound: usize) -> Result<ProbeReport> {
    let (alg, _, _) = oracle_route(q, f)?;
    let a = operator_ring(&alg)?;
    let r = PresentedComplex::quotient(q.clone(), alg.f());
    let (_, vr) = module_variety(&r, &alg, bound)?;
    let k = PresentedComplex::residue_field(q.clone());
    let vk = support_variety(&ext_module(&k, &alg, bound)?);
    let (p, _) = koszul_action(&alg, &q.vars())?;
    let u = u_construction(&p, &alg, bound)?;
    let mut entries = Vec::new();
    for g in g_list {
        let c = c_tilde(&alg, &u, g)?;
        let v = support_variety(&ext_of_labeled(&c.module, &alg, bound as i32 - 2)?);
        entries.push(ProbeEntry { g: a.fmt_poly(g), variety_ideal: v.ideal_strings(), contains_ring_variety: vr.is_subset(&v) });
    }
    let inter = variety_of_elements(&a, g_list)?;
    Ok(ProbeReport {
        ring_variety_empty: vr.is_empty(),
        ring_variety_ideal: vr.ideal_strings(),
        residue_variety_ideal: vk.ideal_strings(),
        entries,
        contained_in_intersection: vr.is_subset(&inter),
        stable: vr.stable.unwrap_or(false),
    })
}
