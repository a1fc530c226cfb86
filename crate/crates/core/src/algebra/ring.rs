use super::field::{PrimeField, DEFAULT_PRIME};
use super::groebner::{GroebnerBasis, ModVec};
use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

/// A weighted polynomial ring over a prime field, optionally modulo a
/// homogeneous ideal.
#[derive(Debug)]
pub struct GradedRing {
    field: PrimeField,
    vars: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<Poly>,
    relation_gb: OnceLock<GroebnerBasis>,
}

pub type RingRef = Arc<GradedRing>;

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.weights == other.weights
            && self.relations == other.relations
    }
}

impl Eq for GradedRing {}

impl Clone for GradedRing {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            relations: self.relations.clone(),
            relation_gb: self.relation_gb.clone(),
        }
    }
}

impl GradedRing {
    /// Validated constructor. Relations must be homogeneous for `degs`.
    pub fn new(p: u64, vars: &[&str], degs: &[u32], relations: Vec<Poly>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if vars.len() != degs.len() {
            return Err(Error::Malformed(format!(
                "{} variables but {} degrees",
                vars.len(),
                degs.len()
            )));
        }
        if degs.contains(&0) {
            return Err(Error::Malformed("variable degrees must be positive".into()));
        }
        if vars.len() > 60 {
            return Err(Error::Malformed("at most 60 variables are supported".into()));
        }
        let ring = Self {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            weights: degs.to_vec(),
            relations: Vec::new(),
            relation_gb: OnceLock::new(),
        };
        ring.with_relations(relations)
    }

    /// Polynomial ring with all variables of degree 1.
    pub fn polynomial(p: u64, vars: &[&str]) -> Result<Self> {
        let degs = vec![1; vars.len()];
        Self::new(p, vars, &degs, Vec::new())
    }

    /// `k[chi1..chin]` with every `chi_i` in degree 2.
    pub fn operator_ring(p: u64, n: usize) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| format!("chi{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Self::new(p, &refs, &vec![2; n], Vec::new())
    }

    pub fn default_prime() -> u64 {
        DEFAULT_PRIME as u64
    }

    /// Same variables, new relations (validated).
    pub fn with_relations(&self, relations: Vec<Poly>) -> Result<Self> {
        for (index, r) in relations.iter().enumerate() {
            if r.terms().iter().any(|(m, _)| m.nvars() != self.vars.len()) {
                return Err(Error::Malformed(format!("relation #{index} has the wrong number of variables")));
            }
            if !r.is_homogeneous() {
                return Err(Error::InhomogeneousRelation { index, poly: self.fmt_poly(r) });
            }
        }
        let relations: Vec<Poly> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Self {
            field: self.field,
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            relations,
            relation_gb: OnceLock::new(),
        })
    }

    /// The ambient polynomial ring (relations dropped).
    pub fn ambient(&self) -> Self {
        Self {
            field: self.field,
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            relations: Vec::new(),
            relation_gb: OnceLock::new(),
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus() as u64
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn is_polynomial(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::term(Monomial::var(i, &self.weights), 1)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn one(&self) -> Poly {
        Poly::constant(1, self.nvars())
    }

    pub fn constant(&self, c: i64) -> Poly {
        Poly::constant(self.field.from_i64(c), self.nvars())
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Gröbner basis of the defining ideal, computed once.
    pub fn relation_gb(&self) -> &GroebnerBasis {
        self.relation_gb.get_or_init(|| {
            let gens: Vec<ModVec> = self.relations.iter().map(ModVec::from_poly).collect();
            GroebnerBasis::compute(self.field, &self.weights, gens, &[0])
        })
    }

    /// Canonical representative modulo the defining ideal.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.relations.is_empty() {
            return f.clone();
        }
        self.relation_gb().reduce(&ModVec::from_poly(f)).into_poly()
    }

    pub fn is_zero_in_ring(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, self.field)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b, self.field)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b, self.field)
    }

    pub fn scale(&self, a: &Poly, c: i64) -> Poly {
        a.scale(self.field.from_i64(c), self.field)
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        a.pow(e, self.field, self.nvars())
    }

    /// Canonical text: degrevlex order, `+`-separated, `^` powers, coefficients in `[0,p)`.
    pub fn fmt_poly(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in f.terms().iter().enumerate() {
            if k > 0 {
                out.push('+');
            }
            let mono = self.fmt_monomial(m);
            match (mono.is_empty(), *c) {
                (true, c) => write!(out, "{c}").unwrap(),
                (false, 1) => out.push_str(&mono),
                (false, c) => write!(out, "{c}*{mono}").unwrap(),
            }
        }
        out
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                e => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        parts.join("*")
    }

    /// Parses a polynomial string in this ring's variables.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        crate::io::poly_parse::parse_poly(self, s, 1, 1)
    }

    /// Checks that `f` is homogeneous; returns its degree (`None` for zero).
    pub fn homogeneous_degree(&self, f: &Poly) -> Result<Option<u32>> {
        f.homogeneous_degree()
            .ok_or_else(|| Error::InhomogeneousInput(self.fmt_poly(f)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_graded_ring_examples() {
        let q = GradedRing::polynomial(32003, &["x", "y"]).unwrap();
        assert!(q.is_polynomial());
        assert_eq!(q.nvars(), 2);

        let f2 = GradedRing::polynomial(2, &["x"]).unwrap();
        let x2 = f2.parse("x^2").unwrap();
        let r = f2.with_relations(vec![x2]).unwrap();
        assert_eq!(r.relations().len(), 1);
        assert!(r.is_zero_in_ring(&r.parse("x^3").unwrap()));
        assert!(!r.is_zero_in_ring(&r.parse("x").unwrap()));

        assert!(matches!(GradedRing::polynomial(6, &["x"]), Err(Error::NonPrimeModulus(6))));
    }

    #[test]
    fn inhomogeneous_relation_named() {
        let q = GradedRing::polynomial(101, &["x", "y"]).unwrap();
        let bad = q.parse("x^2+y").unwrap();
        let good = q.parse("x*y").unwrap();
        match q.with_relations(vec![good, bad]) {
            Err(Error::InhomogeneousRelation { index, poly }) => {
                assert_eq!(index, 1);
                assert_eq!(poly, "x^2+y");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn weighted_homogeneity() {
        let q = GradedRing::new(101, &["x", "y"], &[1, 2], Vec::new()).unwrap();
        let f = q.parse("x^2+y").unwrap();
        assert_eq!(q.homogeneous_degree(&f).unwrap(), Some(2));
    }

    #[test]
    fn canonical_printing() {
        let q = GradedRing::polynomial(32003, &["x", "y"]).unwrap();
        let f = q.parse("x^2 - y^2 + 3*x*y").unwrap();
        assert_eq!(q.fmt_poly(&f), "x^2+3*x*y+32002*y^2");
        assert_eq!(q.parse(&q.fmt_poly(&f)).unwrap(), f);
    }
}
