use smallvec::SmallVec;
use std::cmp::Ordering;

pub type Exponents = SmallVec<[u16; 6]>;

/// A monomial with its weighted degree cached.
///
/// `Ord` is weighted degree-reverse-lexicographic: higher weighted degree is
/// larger; ties are broken by the last variable where the exponents differ,
/// and the smaller exponent there wins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn new(exps: &[u16], weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Self { deg, exps: SmallVec::from_slice(exps) }
    }

    pub fn var(i: usize, weights: &[u32]) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, weights.len());
        exps[i] = 1;
        Self { deg: weights[i], exps }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { deg: other.deg - self.deg, exps }
    }

    /// Weighted degree of `lcm(self, other)` needs the weights, so they are passed in.
    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { deg, exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support as a bitmask over variables.
    pub fn support(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// Append extra variables with exponent zero (weights unchanged for the old ones).
    pub fn extend_vars(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Monomial { deg: self.deg, exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of weighted degree exactly `d`, in increasing order.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = left / w;
        for e in 0..=max {
            cur.push(e as u16);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut raw);
    let mut out: Vec<Monomial> = raw.iter().map(|e| Monomial::new(e, weights)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_two_vars() {
        let w = [1, 1];
        let x2 = Monomial::new(&[2, 0], &w);
        let xy = Monomial::new(&[1, 1], &w);
        let y2 = Monomial::new(&[0, 2], &w);
        assert!(x2 > xy && xy > y2);
        let x = Monomial::new(&[1, 0], &w);
        assert!(y2 > x);
    }

    #[test]
    fn degrevlex_three_vars_differs_from_lex() {
        let w = [1, 1, 1];
        // x*z < y^2 in degrevlex
        let xz = Monomial::new(&[1, 0, 1], &w);
        let y2 = Monomial::new(&[0, 2, 0], &w);
        assert!(xz < y2);
    }

    #[test]
    fn enumerate_weighted() {
        assert_eq!(monomials_of_degree(&[1, 1], 2).len(), 3);
        assert_eq!(monomials_of_degree(&[2, 2], 3).len(), 0);
        assert_eq!(monomials_of_degree(&[2, 2], 4).len(), 3);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
    }
}
