use super::field::PrimeField;
use super::monomial::Monomial;
use std::cmp::Ordering;

/// Sparse polynomial; terms strictly decreasing in monomial order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: u32, nvars: usize) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(Monomial::one(nvars), c)] }
        }
    }

    pub fn term(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, merging duplicates.
    pub fn from_terms(field: PrimeField, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Self { terms: out }
    }

    /// Trusts the caller that `terms` is sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Self { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Weighted degree if homogeneous; `None` for inhomogeneous polynomials. Zero is
    /// homogeneous of every degree, reported as `Some(None)` by [`Poly::homogeneous_degree`].
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let Some((m, _)) = self.terms.first() else {
            return Some(None);
        };
        let d = m.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Some(Some(d))
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn constant_coeff(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().is_none_or(|(m, _)| m.is_one())
    }

    pub fn add(&self, other: &Poly, field: PrimeField) -> Poly {
        merge(&self.terms, &other.terms, field, |c| c)
    }

    pub fn sub(&self, other: &Poly, field: PrimeField) -> Poly {
        merge(&self.terms, &other.terms, field, |c| field.neg(c))
    }

    pub fn neg(&self, field: PrimeField) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect() }
    }

    pub fn scale(&self, c: u32, field: PrimeField) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, field: PrimeField) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        // Multiplying by a monomial preserves the order.
        Poly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(*a, c))).collect() }
    }

    pub fn mul(&self, other: &Poly, field: PrimeField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(m, *c, field), field);
        }
        acc
    }

    pub fn pow(&self, e: u32, field: PrimeField, nvars: usize) -> Poly {
        let mut r = Poly::constant(1, nvars);
        for _ in 0..e {
            r = r.mul(self, field);
        }
        r
    }

    /// Keeps only the terms of weighted degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect() }
    }

    pub fn monic(&self, field: PrimeField) -> Poly {
        match self.terms.first() {
            Some((_, c)) if *c != 1 => self.scale(field.inv(*c), field),
            _ => self.clone(),
        }
    }
}

fn merge(a: &[(Monomial, u32)], b: &[(Monomial, u32)], field: PrimeField, fb: impl Fn(u32) -> u32) -> Poly {
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
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fb(*c))));
    Poly { terms: out }
}
