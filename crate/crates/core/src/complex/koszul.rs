use super::free::FreeComplex;
use crate::algebra::{GradedMatrix, Poly, RingRef};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Subsets of `{0..n}` as bit masks, grouped by size, each group in lexicographic order.
pub fn subsets_by_size(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); n + 1];
    for size in 0..=n {
        let mut cur = Vec::new();
        gen(n, size, 0, &mut cur, &mut out[size]);
    }
    return out;

    fn gen(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<u32>) {
        if cur.len() == size {
            out.push(cur.iter().fold(0, |m, &i| m | (1 << i)));
            return;
        }
        for i in start..n {
            cur.push(i);
            gen(n, size, i + 1, cur, out);
            cur.pop();
        }
    }
}

pub fn subset_elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// `ξ_S · ξ_T = ±ξ_{S∪T}`; `None` when `S ∩ T ≠ ∅`. The flag is `true` for a minus sign.
pub fn wedge(s: u32, t: u32) -> Option<(u32, bool)> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0;
    for a in subset_elems(s) {
        inversions += (t & ((1u32 << a) - 1)).count_ones();
    }
    Some((s | t, inversions % 2 == 1))
}

/// Terms of `∂ξ_S = Σ_k (-1)^k f_{s_k} ξ_{S∖s_k}`: `(s_k, negative, S∖s_k)`.
pub fn boundary_terms(s: u32) -> Vec<(usize, bool, u32)> {
    subset_elems(s)
        .into_iter()
        .enumerate()
        .map(|(k, j)| (j, k % 2 == 1, s & !(1 << j)))
        .collect()
}

/// Degree of a homogeneous element (zero counts as degree 0).
pub fn element_degree(f: &Poly) -> Result<i32> {
    match f.homogeneous_degree() {
        Some(Some(d)) => Ok(d as i32),
        Some(None) => Ok(0),
        None => Err(Error::InhomogeneousInput(format!("{} terms of mixed degree", f.len()))),
    }
}

/// Basis bookkeeping for `C ⊗ Λ(ξ_1..ξ_n)`.
struct TensorBasis {
    /// Per total degree: `(S, b)` with `b` a basis index of `C_{s-|S|}`.
    elems: Vec<Vec<(u32, usize)>>,
    index: Vec<HashMap<(u32, usize), usize>>,
}

/// `C ⊗ Kos(x)` with Koszul signs `∂(c⊗ξ_S) = ∂c⊗ξ_S + (-1)^{|c|} c⊗∂ξ_S`.
pub fn tensor_koszul(c: &FreeComplex, x: &[Poly]) -> Result<FreeComplex> {
    let ring = c.ring().clone();
    let n = x.len();
    let degs: Vec<i32> = x.iter().map(element_degree).collect::<Result<_>>()?;
    if c.is_zero() {
        return Ok(FreeComplex::zero(ring));
    }
    let subsets = subsets_by_size(n);
    let lo = c.lo();
    let hi = c.hi() + n as i32;
    let mut basis = TensorBasis { elems: Vec::new(), index: Vec::new() };
    let mut twists = Vec::new();
    for s in lo..=hi {
        let mut elems = Vec::new();
        let mut tw = Vec::new();
        for (i, group) in subsets.iter().enumerate() {
            let p = s - i as i32;
            for &sub in group {
                let shift: i32 = subset_elems(sub).iter().map(|&j| degs[j]).sum();
                for (b, &t) in c.twists(p).iter().enumerate() {
                    elems.push((sub, b));
                    tw.push(t + shift);
                }
            }
        }
        basis.index.push(elems.iter().enumerate().map(|(k, e)| (*e, k)).collect());
        basis.elems.push(elems);
        twists.push(tw);
    }
    let xs: Vec<Poly> = x.iter().map(|f| ring.reduce(f)).collect();
    let mut diffs = Vec::new();
    for s in lo + 1..=hi {
        let (k_src, k_tgt) = ((s - lo) as usize, (s - lo - 1) as usize);
        let mut m = GradedMatrix::zero(twists[k_tgt].clone(), twists[k_src].clone());
        for (col, &(sub, b)) in basis.elems[k_src].iter().enumerate() {
            let p = s - sub.count_ones() as i32;
            if let Some(d) = c.diff_ref(p) {
                for r in 0..d.rows() {
                    let e = d.get(r, b);
                    if !e.is_zero() {
                        let row = basis.index[k_tgt][&(sub, r)];
                        m.set(row, col, ring.add(m.get(row, col), e));
                    }
                }
            }
            for (j, neg, rest) in boundary_terms(sub) {
                let sign = if (p % 2 != 0) ^ neg { -1 } else { 1 };
                let row = basis.index[k_tgt][&(rest, b)];
                let e = ring.scale(&xs[j], sign);
                m.set(row, col, ring.add(m.get(row, col), &e));
            }
        }
        diffs.push(m);
    }
    FreeComplex::new(ring, lo, twists, diffs)
}

/// `Kos(f)` over the ring of `ring`: basis `ξ_S` in degree `|S|`, twists `Σ_{j∈S} deg f_j`.
pub fn koszul_complex(ring: &RingRef, f: &[Poly]) -> Result<FreeComplex> {
    let unit = FreeComplex::concentrated(ring.clone(), 0, vec![0]);
    tensor_koszul(&unit, f)
}
