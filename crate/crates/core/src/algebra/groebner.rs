//! Buchberger's algorithm for submodules of free modules `Q^r`.
//!
//! Terms are ordered position-over-term: a term in a lower-numbered
//! component is larger than any term in a higher-numbered one, and terms in
//! the same component compare by the monomial order. An ideal is a
//! submodule of `Q^1`.
//!
//! Pairs are managed with the Gebauer–Möller update. Pair and input
//! selection is by degree, so for homogeneous input the builder can be
//! completed up to a degree bound and membership of elements of degree at
//! most that bound is decided exactly.

use super::field::PrimeField;
use super::monomial::Monomial;
use super::poly::Poly;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

/// A term position: component plus monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Key {
    pub comp: u32,
    pub mono: Monomial,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        other.comp.cmp(&self.comp).then_with(|| self.mono.cmp(&other.mono))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse element of a free module; terms strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModVec {
    terms: Vec<(Key, u32)>,
}

impl ModVec {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_poly(f: &Poly) -> Self {
        Self::from_poly_at(f, 0)
    }

    pub fn from_poly_at(f: &Poly, comp: u32) -> Self {
        Self {
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| (Key { comp, mono: m.clone() }, *c))
                .collect(),
        }
    }

    /// Column vector `(entries[0], entries[1], ...)`.
    pub fn from_column(entries: &[Poly]) -> Self {
        let mut terms = Vec::new();
        for (i, f) in entries.iter().enumerate() {
            terms.extend(f.terms().iter().map(|(m, c)| (Key { comp: i as u32, mono: m.clone() }, *c)));
        }
        Self { terms }
    }

    pub fn from_terms(field: PrimeField, mut terms: Vec<(Key, u32)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Key, u32)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = field.add(*lc, c),
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Self { terms: out }
    }

    /// Component 0 as a polynomial (the whole vector for ideals).
    pub fn into_poly(self) -> Poly {
        debug_assert!(self.terms.iter().all(|(k, _)| k.comp == 0));
        Poly::from_sorted(self.terms.into_iter().map(|(k, c)| (k.mono, c)).collect())
    }

    /// Dense column of length `rank`.
    pub fn to_column(&self, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for (k, c) in &self.terms {
            buckets[k.comp as usize].push((k.mono.clone(), *c));
        }
        buckets.into_iter().map(Poly::from_sorted).collect()
    }

    pub fn component(&self, comp: u32) -> Poly {
        Poly::from_sorted(
            self.terms
                .iter()
                .filter(|(k, _)| k.comp == comp)
                .map(|(k, c)| (k.mono.clone(), *c))
                .collect(),
        )
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Key, u32)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Key, u32)> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `deg(mono) + twist(comp)` over the terms.
    pub fn degree(&self, twists: &[i32]) -> Option<i64> {
        self.terms
            .iter()
            .map(|(k, _)| k.mono.degree() as i64 + twists[k.comp as usize] as i64)
            .max()
    }

    pub fn is_homogeneous(&self, twists: &[i32]) -> bool {
        let mut it = self.terms.iter().map(|(k, _)| k.mono.degree() as i64 + twists[k.comp as usize] as i64);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: u32, field: PrimeField) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, a)| (k.clone(), field.mul(*a, c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, field: PrimeField) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (Key { comp: k.comp, mono: k.mono.mul(m) }, field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly, field: PrimeField) -> Self {
        let mut acc = Self::zero();
        for (m, c) in f.terms() {
            acc = acc.add(&self.mul_term(m, *c, field), field);
        }
        acc
    }

    pub fn add(&self, other: &Self, field: PrimeField) -> Self {
        self.merge(other, field, |c| c)
    }

    pub fn sub(&self, other: &Self, field: PrimeField) -> Self {
        self.merge(other, field, |c| field.neg(c))
    }

    fn merge(&self, other: &Self, field: PrimeField, fb: impl Fn(u32) -> u32) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), fb(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a[i].1, fb(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(k, c)| (k.clone(), fb(*c))));
        Self { terms: out }
    }

    pub fn monic(&self, field: PrimeField) -> Self {
        match self.terms.first() {
            Some((_, c)) if *c != 1 => self.scale(field.inv(*c), field),
            _ => self.clone(),
        }
    }

    /// Keeps components in `[lo, hi)` and renumbers them from zero.
    pub fn project(&self, lo: u32, hi: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.comp >= lo && k.comp < hi)
                .map(|(k, c)| (Key { comp: k.comp - lo, mono: k.mono.clone() }, *c))
                .collect(),
        }
    }

    /// Adds `offset` to every component index.
    pub fn shift_components(&self, offset: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (Key { comp: k.comp + offset, mono: k.mono.clone() }, *c))
                .collect(),
        }
    }

    /// Concatenation `(self, other)` where `other` lives in components shifted by `offset`.
    /// Components of `self` must all be below `offset`.
    pub fn concat(&self, other: &Self, offset: u32) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.shift_components(offset).terms);
        Self { terms }
    }

    pub fn min_component(&self) -> Option<u32> {
        self.terms.first().map(|(k, _)| k.comp)
    }
}

/// Working representation for reductions: max-term access plus cheap updates.
struct Accumulator {
    map: BTreeMap<Key, u32>,
}

impl Accumulator {
    fn new(v: &ModVec) -> Self {
        Self { map: v.terms.iter().cloned().collect() }
    }

    /// `self -= c * m * g`
    fn sub_multiple(&mut self, g: &ModVec, m: &Monomial, c: u32, field: PrimeField) {
        for (k, a) in &g.terms {
            let key = Key { comp: k.comp, mono: k.mono.mul(m) };
            let delta = field.mul(*a, c);
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let v = field.sub(*e.get(), delta);
                    if v == 0 {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(field.neg(delta));
                }
            }
        }
    }
}

/// Reducer lookup over a set of monic module elements.
struct Reducers<'a> {
    elems: &'a [ModVec],
    by_comp: HashMap<u32, Vec<usize>>,
}

impl<'a> Reducers<'a> {
    fn new(elems: &'a [ModVec], active: impl Iterator<Item = usize>) -> Self {
        let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
        for i in active {
            let (k, _) = elems[i].leading().expect("nonzero basis element");
            by_comp.entry(k.comp).or_default().push(i);
        }
        Self { elems, by_comp }
    }

    fn find(&self, key: &Key) -> Option<usize> {
        let cands = self.by_comp.get(&key.comp)?;
        cands
            .iter()
            .copied()
            .find(|&i| self.elems[i].terms[0].0.mono.divides(&key.mono))
    }

    fn reduce(&self, v: &ModVec, field: PrimeField, full: bool) -> ModVec {
        let mut acc = Accumulator::new(v);
        let mut result: Vec<(Key, u32)> = Vec::new();
        while let Some((key, c)) = acc.map.iter().next_back().map(|(k, c)| (k.clone(), *c)) {
            match self.find(&key) {
                Some(i) => {
                    let g = &self.elems[i];
                    let m = g.terms[0].0.mono.quotient_of(&key.mono);
                    acc.sub_multiple(g, &m, c, field);
                }
                None => {
                    if !full {
                        let mut out: Vec<(Key, u32)> = acc.map.into_iter().collect();
                        out.reverse();
                        return ModVec { terms: out };
                    }
                    acc.map.remove(&key);
                    result.push((key, c));
                }
            }
        }
        ModVec { terms: result }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    Input(usize),
    Pair(usize, usize),
}

/// Incremental Buchberger state.
pub struct GbBuilder {
    field: PrimeField,
    weights: Vec<u32>,
    twists: Vec<i32>,
    product_criterion: bool,
    elems: Vec<ModVec>,
    sugar: Vec<i64>,
    active: Vec<bool>,
    inputs: Vec<ModVec>,
    queue: BTreeMap<(i64, Item), ()>,
    pair_lcm: HashMap<(usize, usize), Monomial>,
}

impl GbBuilder {
    /// `twists[c]` is the degree of the `c`-th basis vector of the ambient free module.
    pub fn new(field: PrimeField, weights: &[u32], twists: &[i32]) -> Self {
        Self {
            field,
            weights: weights.to_vec(),
            twists: twists.to_vec(),
            product_criterion: twists.len() <= 1,
            elems: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            inputs: Vec::new(),
            queue: BTreeMap::new(),
            pair_lcm: HashMap::new(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn add(&mut self, v: ModVec) {
        if v.is_zero() {
            return;
        }
        let d = v.degree(&self.twists).unwrap();
        let idx = self.inputs.len();
        self.inputs.push(v);
        self.queue.insert((d, Item::Input(idx)), ());
    }

    pub fn add_all(&mut self, vs: impl IntoIterator<Item = ModVec>) {
        for v in vs {
            self.add(v);
        }
    }

    fn reducers(&self) -> Reducers<'_> {
        Reducers::new(&self.elems, (0..self.elems.len()).filter(|&i| self.active[i]))
    }

    /// Processes all queued work of degree at most `bound` (everything when `None`).
    pub fn complete(&mut self, bound: Option<i64>) {
        loop {
            let Some((&(d, item), _)) = self.queue.iter().next() else { break };
            if let Some(b) = bound {
                if d > b {
                    break;
                }
            }
            self.queue.remove(&(d, item));
            let (candidate, sugar) = match item {
                Item::Input(i) => {
                    let v = std::mem::take(&mut self.inputs[i]);
                    (v, d)
                }
                Item::Pair(i, j) => {
                    self.pair_lcm.remove(&(i, j));
                    (self.s_vector(i, j), d)
                }
            };
            let reduced = self.reducers().reduce(&candidate, self.field, false);
            if !reduced.is_zero() {
                let reduced = reduced.monic(self.field);
                self.insert(reduced, sugar);
            }
        }
    }

    fn s_vector(&self, i: usize, j: usize) -> ModVec {
        let (gi, gj) = (&self.elems[i], &self.elems[j]);
        let (ki, kj) = (&gi.terms[0].0, &gj.terms[0].0);
        let l = ki.mono.lcm(&kj.mono, &self.weights);
        let mi = ki.mono.quotient_of(&l);
        let mj = kj.mono.quotient_of(&l);
        gi.mul_term(&mi, 1, self.field).sub(&gj.mul_term(&mj, 1, self.field), self.field)
    }

    fn pair_degree(&self, i: usize, j: usize, lcm: &Monomial) -> i64 {
        let di = self.sugar[i] - self.elems[i].terms[0].0.mono.degree() as i64;
        let dj = self.sugar[j] - self.elems[j].terms[0].0.mono.degree() as i64;
        di.max(dj) + lcm.degree() as i64
    }

    /// Gebauer–Möller update with the new element `h`.
    fn insert(&mut self, h: ModVec, sugar: i64) {
        let hn = self.elems.len();
        let hk = h.terms[0].0.clone();
        self.elems.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        let candidates: Vec<usize> = (0..hn)
            .filter(|&j| self.active[j] && self.elems[j].terms[0].0.comp == hk.comp)
            .collect();
        let lcms: Vec<Monomial> = candidates
            .iter()
            .map(|&j| hk.mono.lcm(&self.elems[j].terms[0].0.mono, &self.weights))
            .collect();
        let coprime = |j: usize| self.product_criterion && hk.mono.coprime(&self.elems[j].terms[0].0.mono);

        // Chain criterion among the new pairs.
        let mut kept: Vec<usize> = Vec::new();
        for (idx, &j) in candidates.iter().enumerate() {
            if coprime(j) {
                kept.push(idx);
                continue;
            }
            let l = &lcms[idx];
            let dominated = candidates[idx + 1..]
                .iter()
                .enumerate()
                .any(|(off, _)| lcms[idx + 1 + off].divides(l))
                || kept.iter().any(|&k| lcms[k].divides(l));
            if !dominated {
                kept.push(idx);
            }
        }
        let new_pairs: Vec<(usize, Monomial)> = kept
            .into_iter()
            .filter(|&idx| !coprime(candidates[idx]))
            .map(|idx| (candidates[idx], lcms[idx].clone()))
            .collect();

        // Old pairs made redundant by h.
        let mut dead = Vec::new();
        for (&(a, b), l) in &self.pair_lcm {
            if self.elems[a].terms[0].0.comp != hk.comp || !hk.mono.divides(l) {
                continue;
            }
            let la = hk.mono.lcm(&self.elems[a].terms[0].0.mono, &self.weights);
            let lb = hk.mono.lcm(&self.elems[b].terms[0].0.mono, &self.weights);
            if la != *l && lb != *l {
                dead.push((a, b));
            }
        }
        for (a, b) in dead {
            let l = self.pair_lcm.remove(&(a, b)).unwrap();
            let d = self.pair_degree(a, b, &l);
            self.queue.remove(&(d, Item::Pair(a, b)));
        }

        for (j, l) in new_pairs {
            let d = self.pair_degree(j, hn, &l);
            self.queue.insert((d, Item::Pair(j, hn)), ());
            self.pair_lcm.insert((j, hn), l);
        }

        for j in 0..hn {
            if self.active[j] {
                let kj = &self.elems[j].terms[0].0;
                if kj.comp == hk.comp && hk.mono.divides(&kj.mono) {
                    self.active[j] = false;
                }
            }
        }
    }

    /// Normal form against the current (possibly partial) basis.
    pub fn reduce(&self, v: &ModVec) -> ModVec {
        self.reducers().reduce(v, self.field, true)
    }

    /// Top-reduces to zero against the current basis.
    pub fn reduces_to_zero(&self, v: &ModVec) -> bool {
        self.reducers().reduce(v, self.field, false).is_zero()
    }

    pub fn is_complete(&self) -> bool {
        self.queue.is_empty()
    }

    /// Completes and returns the reduced basis.
    pub fn finish(mut self) -> GroebnerBasis {
        self.complete(None);
        let mut basis: Vec<ModVec> = (0..self.elems.len())
            .filter(|&i| self.active[i])
            .map(|i| self.elems[i].clone())
            .collect();
        basis.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
        let mut reduced = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others = Reducers::new(&basis, (0..basis.len()).filter(|&j| j != i));
            let head = ModVec { terms: vec![basis[i].terms[0].clone()] };
            let tail = ModVec { terms: basis[i].terms[1..].to_vec() };
            let tail = others.reduce(&tail, self.field, true);
            reduced.push(head.add(&tail, self.field).monic(self.field));
        }
        GroebnerBasis::from_reduced(self.field, &self.weights, &self.twists, reduced)
    }
}

/// A reduced Gröbner basis of a submodule of `Q^r` (or an ideal, `r = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: PrimeField,
    weights: Vec<u32>,
    twists: Vec<i32>,
    elems: Vec<ModVec>,
}

impl GroebnerBasis {
    pub fn compute(field: PrimeField, weights: &[u32], gens: Vec<ModVec>, twists: &[i32]) -> Self {
        let mut b = GbBuilder::new(field, weights, twists);
        b.add_all(gens);
        b.finish()
    }

    fn from_reduced(field: PrimeField, weights: &[u32], twists: &[i32], elems: Vec<ModVec>) -> Self {
        Self { field, weights: weights.to_vec(), twists: twists.to_vec(), elems }
    }

    pub fn elems(&self) -> &[ModVec] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn leading_keys(&self) -> impl Iterator<Item = &Key> {
        self.elems.iter().map(|g| &g.terms[0].0)
    }

    pub fn reduce(&self, v: &ModVec) -> ModVec {
        Reducers::new(&self.elems, 0..self.elems.len()).reduce(v, self.field, true)
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        Reducers::new(&self.elems, 0..self.elems.len()).reduce(v, self.field, false).is_zero()
    }

    /// Whether the basis contains a unit vector in component `comp` (for ideals: the unit ideal).
    pub fn contains_unit_in(&self, comp: u32) -> bool {
        self.elems.iter().any(|g| g.terms[0].0.comp == comp && g.terms[0].0.mono.is_one())
    }

    /// Polynomials of an ideal basis.
    pub fn polys(&self) -> Vec<Poly> {
        self.elems.iter().map(|g| g.clone().into_poly()).collect()
    }
}
