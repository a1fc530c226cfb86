//! Ideal and submodule computations over `Q` or `R = Q/I`.
//!
//! Everything reduces to Gröbner bases over the polynomial ring `Q`;
//! working over `R` means appending `I·Q^r` to the generators.

use super::groebner::{GbBuilder, GroebnerBasis, ModVec};
use super::matrix::GradedMatrix;
use super::monomial::{monomials_of_degree, Monomial};
use super::poly::Poly;
use super::ring::GradedRing;

/// Reduced Gröbner basis of the ideal generated by `gens` in `Q`.
pub fn groebner_basis(ring: &GradedRing, gens: &[Poly]) -> GroebnerBasis {
    let v = gens.iter().map(ModVec::from_poly).collect();
    GroebnerBasis::compute(ring.field(), ring.weights(), v, &[0])
}

pub fn normal_form(f: &Poly, basis: &GroebnerBasis) -> Poly {
    basis.reduce(&ModVec::from_poly(f)).into_poly()
}

/// `I·e_c` for every component `c < rank` (shifted by `offset`).
pub fn relation_vectors(ring: &GradedRing, rank: usize, offset: u32) -> Vec<ModVec> {
    let mut out = Vec::new();
    for c in 0..rank {
        for r in ring.relations() {
            out.push(ModVec::from_poly_at(r, offset + c as u32));
        }
    }
    out
}

/// Gröbner basis of `⟨gens⟩ + I·Q^r` inside `Q^r`.
pub fn submodule_gb(ring: &GradedRing, gens: &[ModVec], twists: &[i32]) -> GroebnerBasis {
    let mut all = gens.to_vec();
    all.extend(relation_vectors(ring, twists.len(), 0));
    GroebnerBasis::compute(ring.field(), ring.weights(), all, twists)
}

/// Indices of a graded-Nakayama-minimal subset of `cands` generating
/// `⟨cands⟩ + ⟨base⟩` modulo `⟨base⟩`, chosen by degree then input order.
pub fn minimal_subset(ring: &GradedRing, cands: &[ModVec], base: &[ModVec], twists: &[i32]) -> Vec<usize> {
    let mut order: Vec<(i64, usize)> = cands
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (v.degree(twists).unwrap(), i))
        .collect();
    order.sort();
    let mut b = GbBuilder::new(ring.field(), ring.weights(), twists);
    b.add_all(base.iter().cloned());
    let mut chosen = Vec::new();
    for (d, i) in order {
        b.complete(Some(d));
        if !b.reduces_to_zero(&cands[i]) {
            b.add(cands[i].clone());
            chosen.push(i);
        }
    }
    chosen
}

/// Minimal homogeneous generators of the ideal `(gens)` of the ring.
pub fn minimal_generators(ring: &GradedRing, gens: &[Poly]) -> Vec<Poly> {
    let cands: Vec<ModVec> = gens.iter().map(|f| ModVec::from_poly(&ring.reduce(f))).collect();
    let base = relation_vectors(ring, 1, 0);
    minimal_subset(ring, &cands, &base, &[0]).into_iter().map(|i| ring.reduce(&gens[i])).collect()
}

/// Columns of `m` forming a minimal generating set of its image over the ring.
pub fn minimal_columns(ring: &GradedRing, m: &GradedMatrix) -> Vec<usize> {
    let cands = m.column_vecs();
    let base = relation_vectors(ring, m.rows(), 0);
    let mut idx = minimal_subset(ring, &cands, &base, &m.row_twists);
    idx.sort();
    idx
}

/// Minimal homogeneous generators of `ker(m)` over the ring, as the columns of a matrix
/// whose rows are indexed by the columns of `m`.
pub fn syzygy_kernel(ring: &GradedRing, m: &GradedMatrix) -> GradedMatrix {
    let syz = syzygy_gb_vectors(ring, m);
    let twists = m.col_twists.clone();
    let base = relation_vectors(ring, m.cols(), 0);
    let chosen = minimal_subset(ring, &syz, &base, &twists);
    let cols: Vec<ModVec> = chosen.iter().map(|&i| reduce_vec(ring, &syz[i], m.cols())).collect();
    let col_twists = cols.iter().map(|c| c.degree(&twists).unwrap() as i32).collect();
    GradedMatrix::from_columns(twists, col_twists, &cols)
}

/// A Gröbner basis of the syzygies of the columns of `m` modulo `I` (not minimized).
pub fn syzygy_gb_vectors(ring: &GradedRing, m: &GradedMatrix) -> Vec<ModVec> {
    let r = m.rows() as u32;
    let k = m.cols() as u32;
    let mut twists = m.row_twists.clone();
    twists.extend(m.col_twists.iter().copied());
    let mut gens: Vec<ModVec> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let unit = ModVec::from_poly_at(&ring.one(), j as u32);
        gens.push(m.column_vec(j).concat(&unit, r));
    }
    gens.extend(relation_vectors(ring, m.rows(), 0));
    let gb = GroebnerBasis::compute(ring.field(), ring.weights(), gens, &twists);
    gb.elems()
        .iter()
        .filter(|g| g.min_component().is_some_and(|c| c >= r))
        .map(|g| g.project(r, r + k))
        .collect()
}

fn reduce_vec(ring: &GradedRing, v: &ModVec, rank: usize) -> ModVec {
    if ring.is_polynomial() {
        return v.clone();
    }
    let col: Vec<Poly> = v.to_column(rank).iter().map(|f| ring.reduce(f)).collect();
    ModVec::from_column(&col)
}

/// Solves `m·a ≡ b` modulo `I` for many right-hand sides against one matrix.
pub struct Lifter {
    gb: GroebnerBasis,
    rows: u32,
    cols: u32,
}

impl Lifter {
    pub fn new(ring: &GradedRing, m: &GradedMatrix) -> Self {
        let r = m.rows() as u32;
        let mut twists = m.row_twists.clone();
        twists.extend(m.col_twists.iter().copied());
        let mut gens: Vec<ModVec> = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let unit = ModVec::from_poly_at(&ring.one(), j as u32);
            gens.push(m.column_vec(j).concat(&unit, r));
        }
        gens.extend(relation_vectors(ring, m.rows(), 0));
        let gb = GroebnerBasis::compute(ring.field(), ring.weights(), gens, &twists);
        Self { gb, rows: r, cols: m.cols() as u32 }
    }

    /// Coefficients `a` with `Σ a_j m_j ≡ b`, or `None` if `b` is not in the image.
    pub fn lift(&self, b: &ModVec) -> Option<ModVec> {
        let rem = self.gb.reduce(b);
        if rem.min_component().is_some_and(|c| c < self.rows) {
            return None;
        }
        let field = self.gb.field();
        Some(rem.project(self.rows, self.rows + self.cols).scale(field.neg(1), field))
    }

    /// The part of the normal form of `b` in the target components (zero iff `b` is in the image).
    pub fn remainder(&self, b: &ModVec) -> ModVec {
        self.gb.reduce(b).project(0, self.rows)
    }
}

/// Dimension of the ring modulo `ideal` (`-1` when the quotient is zero).
pub fn krull_dimension(ring: &GradedRing, ideal: &[Poly]) -> i64 {
    let mut gens = ideal.to_vec();
    gens.extend(ring.relations().iter().cloned());
    let gb = groebner_basis(ring, &gens);
    let leads: Vec<u64> = gb.leading_keys().map(|k| k.mono.support()).collect();
    if gb.contains_unit_in(0) {
        return -1;
    }
    let n = ring.nvars();
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as i64;
        if size > best && leads.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// `dim_k X_d` for `0 ≤ d ≤ d_max`, where `X = coker(p)` over the ring.
pub fn hilbert_function(ring: &GradedRing, p: &GradedMatrix, d_max: i32) -> Vec<usize> {
    let gb = submodule_gb(ring, &p.column_vecs(), &p.row_twists);
    let mut leads: Vec<Vec<&Monomial>> = vec![Vec::new(); p.rows()];
    for k in gb.leading_keys() {
        leads[k.comp as usize].push(&k.mono);
    }
    (0..=d_max)
        .map(|d| {
            let mut total = 0;
            for (c, &t) in p.row_twists.iter().enumerate() {
                let e = d - t;
                if e < 0 {
                    continue;
                }
                total += monomials_of_degree(ring.weights(), e as u32)
                    .iter()
                    .filter(|m| !leads[c].iter().any(|l| l.divides(m)))
                    .count();
            }
            total
        })
        .collect()
}

/// Generators of `{a : a·e_i ∈ im(p) + I·Q^r}`.
pub fn colon_unit(ring: &GradedRing, p: &GradedMatrix, i: usize) -> Vec<Poly> {
    let r = p.rows() as u32;
    let mut twists = p.row_twists.clone();
    twists.push(p.row_twists[i]);
    let mut gens = p.column_vecs();
    gens.extend(relation_vectors(ring, p.rows(), 0));
    let tracker = ModVec::from_poly_at(&ring.one(), i as u32).concat(&ModVec::from_poly(&ring.one()), r);
    gens.push(tracker);
    let gb = GroebnerBasis::compute(ring.field(), ring.weights(), gens, &twists);
    gb.elems()
        .iter()
        .filter(|g| g.min_component() == Some(r))
        .map(|g| g.project(r, r + 1).into_poly())
        .collect()
}

pub fn ideal_intersection(ring: &GradedRing, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut gens: Vec<ModVec> = a
        .iter()
        .map(|f| ModVec::from_poly(f).concat(&ModVec::from_poly(f), 1))
        .collect();
    gens.extend(b.iter().map(ModVec::from_poly));
    let gb = GroebnerBasis::compute(ring.field(), ring.weights(), gens, &[0, 0]);
    gb.elems()
        .iter()
        .filter(|g| g.min_component() == Some(1))
        .map(|g| g.project(1, 2).into_poly())
        .collect()
}

/// `Ann(coker p)` as a reduced Gröbner basis in `Q` (it contains `I`).
pub fn annihilator(ring: &GradedRing, p: &GradedMatrix) -> Vec<Poly> {
    if p.rows() == 0 {
        return vec![ring.one()];
    }
    let mut acc = colon_unit(ring, p, 0);
    for i in 1..p.rows() {
        let next = colon_unit(ring, p, i);
        acc = ideal_intersection(ring, &acc, &next);
    }
    let mut gens = acc;
    gens.extend(ring.relations().iter().cloned());
    groebner_basis(ring, &gens).polys()
}

fn extend(f: &Poly, extra: usize) -> Poly {
    Poly::from_sorted(f.terms().iter().map(|(m, c)| (m.extend_vars(extra), *c)).collect())
}

/// `f ∈ rad(ideal + I)`, decided by the Rabinowitsch trick.
pub fn in_radical(ring: &GradedRing, f: &Poly, ideal: &[Poly]) -> bool {
    if f.is_zero() {
        return true;
    }
    let field = ring.field();
    let n = ring.nvars();
    let mut weights = ring.weights().to_vec();
    weights.push(1);
    let mut gens: Vec<ModVec> = ideal
        .iter()
        .chain(ring.relations())
        .map(|g| ModVec::from_poly(&extend(g, 1)))
        .collect();
    let t = Poly::term(Monomial::var(n, &weights), 1);
    let one = Poly::constant(1, n + 1);
    let tf = t.mul(&extend(f, 1), field);
    gens.push(ModVec::from_poly(&one.sub(&tf, field)));
    let gb = GroebnerBasis::compute(field, &weights, gens, &[0]);
    gb.contains_unit_in(0)
}

/// `small ⊆ rad(big + I)`.
pub fn radical_contains(ring: &GradedRing, big: &[Poly], small: &[Poly]) -> bool {
    let gb = groebner_basis(ring, &[big, ring.relations()].concat());
    small
        .iter()
        .all(|g| normal_form(g, &gb).is_zero() || in_radical(ring, g, big))
}

pub fn radical_equal(ring: &GradedRing, a: &[Poly], b: &[Poly]) -> bool {
    radical_contains(ring, a, b) && radical_contains(ring, b, a)
}

/// `V₊(a) ⊆ V₊(b)` in `Proj` of the ring: every `g ∈ b` times every variable lies in `rad a`.
pub fn proj_contained(ring: &GradedRing, a: &[Poly], b: &[Poly]) -> bool {
    let field = ring.field();
    b.iter().all(|g| {
        ring.vars().iter().all(|x| {
            let gx = g.mul(x, field);
            in_radical(ring, &gx, a)
        })
    })
}

pub fn proj_equal(ring: &GradedRing, a: &[Poly], b: &[Poly]) -> bool {
    proj_contained(ring, a, b) && proj_contained(ring, b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> GradedRing {
        GradedRing::polynomial(32003, &["x", "y"]).unwrap()
    }

    fn polys(q: &GradedRing, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|t| q.parse(t).unwrap()).collect()
    }

    fn row(q: &GradedRing, twists: Vec<i32>, s: &[&str]) -> GradedMatrix {
        GradedMatrix::new(vec![0], twists, vec![polys(q, s)]).unwrap()
    }

    #[test]
    fn syzygies_of_monomials() {
        let q = q2();
        let k = syzygy_kernel(&q, &row(&q, vec![2, 2], &["x^2", "x*y"]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col_twists, vec![3]);
        let c = k.column(0);
        let s: Vec<String> = c.iter().map(|f| q.fmt_poly(f)).collect();
        assert!(s == ["y", "32002*x"] || s == ["32002*y", "x"], "{s:?}");

        let q1 = GradedRing::polynomial(32003, &["x"]).unwrap();
        assert_eq!(syzygy_kernel(&q1, &row(&q1, vec![1], &["x"])).cols(), 0);
        let id = GradedMatrix::identity(vec![0, 0], 2);
        assert_eq!(syzygy_kernel(&q, &id).cols(), 0);
    }

    #[test]
    fn syzygies_over_quotient() {
        let q = GradedRing::polynomial(32003, &["x"]).unwrap();
        let r = q.with_relations(polys(&q, &["x^2"])).unwrap();
        let k = syzygy_kernel(&r, &row(&r, vec![1], &["x"]));
        assert_eq!(k.cols(), 1);
        assert_eq!(r.fmt_poly(k.get(0, 0)), "x");
    }

    #[test]
    fn dimensions() {
        let q = q2();
        assert_eq!(krull_dimension(&q, &polys(&q, &["x^2", "y^2"])), 0);
        assert_eq!(krull_dimension(&q, &polys(&q, &["x^2", "x*y"])), 1);
        assert_eq!(krull_dimension(&q, &[]), 2);
        assert_eq!(krull_dimension(&q, &polys(&q, &["1"])), -1);
    }

    #[test]
    fn minimal_generator_examples() {
        let q = q2();
        assert_eq!(minimal_generators(&q, &polys(&q, &["x^2", "x*y", "x^2+x*y"])).len(), 2);
        assert_eq!(minimal_generators(&q, &polys(&q, &["x", "x^2"])).len(), 1);
        assert_eq!(minimal_generators(&q, &polys(&q, &["x^2-y^2", "x*y", "y^3"])).len(), 2);
    }

    #[test]
    fn annihilators() {
        let q = q2();
        let a = annihilator(&q, &row(&q, vec![2], &["x^2"]));
        assert_eq!(a, polys(&q, &["x^2"]));
        let free = GradedMatrix::zero(vec![0, 0], vec![]);
        assert!(annihilator(&q, &free).is_empty());
        let diag = GradedMatrix::new(vec![0, 0], vec![1, 1], vec![polys(&q, &["x", "0"]), polys(&q, &["0", "y"])]).unwrap();
        assert_eq!(annihilator(&q, &diag), polys(&q, &["x*y"]));
    }

    #[test]
    fn hilbert_functions() {
        let q1 = GradedRing::polynomial(32003, &["x"]).unwrap();
        assert_eq!(hilbert_function(&q1, &row(&q1, vec![2], &["x^2"]), 3), vec![1, 1, 0, 0]);
        let q = q2();
        assert_eq!(hilbert_function(&q, &GradedMatrix::zero(vec![0], vec![]), 2), vec![1, 2, 3]);
        assert_eq!(hilbert_function(&q, &row(&q, vec![2, 2], &["x^2", "x*y"]), 3), vec![1, 2, 1, 1]);
    }

    #[test]
    fn radicals() {
        let q = q2();
        assert!(in_radical(&q, &q.parse("x").unwrap(), &polys(&q, &["x^2", "x*y"])));
        assert!(!in_radical(&q, &q.parse("y").unwrap(), &polys(&q, &["x^2", "x*y"])));
        assert!(radical_equal(&q, &polys(&q, &["x^3"]), &polys(&q, &["x"])));
        assert!(!radical_equal(&q, &polys(&q, &["x*y"]), &polys(&q, &["x"])));
        // V+(x, y) is empty, so it sits inside everything.
        assert!(proj_contained(&q, &polys(&q, &["x", "y"]), &polys(&q, &["x+y"])));
        assert!(!proj_contained(&q, &polys(&q, &["x"]), &polys(&q, &["y"])));
    }

    #[test]
    fn intersection() {
        let q = q2();
        let i = ideal_intersection(&q, &polys(&q, &["x"]), &polys(&q, &["y"]));
        assert_eq!(i, polys(&q, &["x*y"]));
    }
}
