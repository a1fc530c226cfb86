//! Dense per-degree linear algebra over `F_p` for checking the Gröbner kernel.

use civar_core::algebra::ideal::{groebner_basis, hilbert_function, krull_dimension, normal_form, syzygy_kernel};
use civar_core::algebra::{GradedMatrix, GradedRing, Poly, RingRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::Arc;

pub const P: u64 = 32003;
pub const TOP: i32 = 6;

pub const SUITE: [(&[&str], &[&str]); 11] = [
    (&["x"], &["x^2"]),
    (&["x"], &["x^3"]),
    (&["x", "y"], &["x^2", "y^2"]),
    (&["x", "y"], &["x^2", "y^3"]),
    (&["x", "y"], &["x^2", "x*y"]),
    (&["x", "y"], &["x^2", "x*y", "y^2"]),
    (&["x", "y"], &["x*y"]),
    (&["x", "y"], &["x^2-y^2", "x*y"]),
    (&["x", "y", "z"], &["x^2", "y^2", "z^2"]),
    (&["x", "y", "z"], &["x*y", "y*z", "x*z"]),
    (&["x", "y", "z"], &["x^2-y*z", "y^2-x*z", "z^2-x*y"]),
];

pub fn poly_ring(vars: &[&str]) -> RingRef {
    Arc::new(GradedRing::polynomial(P, vars).unwrap())
}

pub fn exponents(n: usize, d: i32) -> Vec<Vec<u16>> {
    if d < 0 {
        return vec![];
    }
    if n == 1 {
        return vec![vec![d as u16]];
    }
    (0..=d).rev().flat_map(|a| exponents(n - 1, d - a).into_iter().map(move |mut e| {
        e.insert(0, a as u16);
        e
    })).collect()
}

pub fn monomials(q: &GradedRing, d: i32) -> Vec<Poly> {
    exponents(q.nvars(), d).iter().map(|e| Poly::term(q.monomial(e), 1)).collect()
}

pub fn rank(mut m: Vec<Vec<u64>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, p);
        let iv = pow(m[r][col], P - 2);
        for i in r + 1..m.len() {
            if m[i][col] != 0 {
                let f = m[i][col] * iv % P;
                for j in col..ncols {
                    m[i][j] = (m[i][j] + P * P - f * m[r][j]) % P;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Coordinates of vectors of polynomials (a free module with `twists`) in internal degree `d`.
struct Coords {
    index: HashMap<(usize, Vec<u16>), usize>,
}

impl Coords {
    fn new(q: &GradedRing, twists: &[i32], d: i32) -> Self {
        let mut index = HashMap::new();
        for (c, &t) in twists.iter().enumerate() {
            for e in exponents(q.nvars(), d - t) {
                let n = index.len();
                index.insert((c, e), n);
            }
        }
        Self { index }
    }

    fn row(&self, v: &[Poly]) -> Vec<u64> {
        let mut out = vec![0; self.index.len()];
        for (c, f) in v.iter().enumerate() {
            for (m, a) in f.terms() {
                out[self.index[&(c, m.exps().to_vec())]] = *a as u64;
            }
        }
        out
    }
}

/// `dim_k` of the degree-`d` part of the submodule of `⊕ Q(-twists)` generated by `cols`.
pub fn span_dim(q: &GradedRing, twists: &[i32], cols: &[(i32, Vec<Poly>)], d: i32) -> usize {
    let coords = Coords::new(q, twists, d);
    if coords.index.is_empty() {
        return 0;
    }
    let mut rows = Vec::new();
    for (deg, v) in cols {
        for m in monomials(q, d - deg) {
            let w: Vec<Poly> = v.iter().map(|f| q.mul(&m, f)).collect();
            rows.push(coords.row(&w));
        }
    }
    if rows.is_empty() {
        return 0;
    }
    rank(rows)
}

pub fn ideal_dims(q: &GradedRing, f: &[Poly]) -> Vec<usize> {
    let cols: Vec<(i32, Vec<Poly>)> = f.iter().map(|g| (g.degree().unwrap() as i32, vec![g.clone()])).collect();
    (0..=TOP).map(|d| span_dim(q, &[0], &cols, d)).collect()
}

pub fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn q_dim(n: usize, d: i32) -> usize {
    if d < 0 {
        0
    } else {
        binom(d as usize + n - 1, n - 1)
    }
}

/// Dimension read off the Hilbert function of `Q/I` in degrees `≤ TOP` (exact for the suite).
pub fn dimension_from_hilbert(h: &[usize]) -> i64 {
    let n = h.len();
    let (a, b, c) = (h[n - 3] as i64, h[n - 2] as i64, h[n - 1] as i64);
    if h.iter().all(|&x| x == 0) {
        -1
    } else if c == 0 {
        0
    } else if b == c {
        1
    } else if c - b == b - a {
        2
    } else {
        3
    }
}

pub fn row_matrix(f: &[Poly]) -> GradedMatrix {
    let degs = f.iter().map(|g| g.degree().unwrap() as i32).collect();
    GradedMatrix::new(vec![0], degs, vec![f.to_vec()]).unwrap()
}

pub fn groebner_bases_match_dense_ideal_dimensions() {
    for (vars, gens) in SUITE {
        let q = poly_ring(vars);
        let f: Vec<Poly> = gens.iter().map(|s| q.parse(s).unwrap()).collect();
        let dims = ideal_dims(&q, &f);
        let gb = groebner_basis(&q, &f).polys();
        // Every GB element lies in the dense span of its degree.
        for g in &gb {
            let d = g.degree().unwrap() as i32;
            let with_g: Vec<(i32, Vec<Poly>)> =
                f.iter().map(|h| (h.degree().unwrap() as i32, vec![h.clone()])).chain([(d, vec![g.clone()])]).collect();
            assert_eq!(span_dim(&q, &[0], &with_g, d), dims[d as usize], "{gens:?}: {}", q.fmt_poly(g));
        }
        // Standard monomials count the quotient.
        let leads: Vec<_> = gb.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        for d in 0..=TOP {
            let standard = monomials(&q, d).iter().filter(|m| !leads.iter().any(|l| l.divides(&m.terms()[0].0))).count();
            assert_eq!(standard + dims[d as usize], q_dim(q.nvars(), d), "{gens:?} degree {d}");
        }
        let h = hilbert_function(&q, &row_matrix(&f), TOP);
        let expected: Vec<usize> = (0..=TOP).map(|d| q_dim(q.nvars(), d) - dims[d as usize]).collect();
        assert_eq!(h, expected, "{gens:?}");
        assert_eq!(krull_dimension(&q, &f), dimension_from_hilbert(&expected), "{gens:?}");
    }
}

pub fn normal_forms_decide_dense_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (vars, gens) in SUITE {
        let q = poly_ring(vars);
        let f: Vec<Poly> = gens.iter().map(|s| q.parse(s).unwrap()).collect();
        let gb = groebner_basis(&q, &f);
        let cols: Vec<(i32, Vec<Poly>)> = f.iter().map(|h| (h.degree().unwrap() as i32, vec![h.clone()])).collect();
        for _ in 0..12 {
            let d = rng.random_range(1..=TOP);
            let mons = monomials(&q, d);
            // Half the samples are combinations of generators, so lie in the ideal.
            let g = if rng.random_bool(0.5) {
                cols.iter().fold(Poly::zero(), |acc, (e, h)| {
                    monomials(&q, d - e).iter().fold(acc, |acc, m| {
                        q.add(&acc, &q.scale(&q.mul(m, &h[0]), rng.random_range(0..P as i64)))
                    })
                })
            } else {
                mons.iter().fold(Poly::zero(), |acc, m| q.add(&acc, &q.scale(m, rng.random_range(0..P as i64))))
            };
            let base = span_dim(&q, &[0], &cols, d);
            let member = span_dim(&q, &[0], &[cols.clone(), vec![(d, vec![g.clone()])]].concat(), d) == base;
            assert_eq!(normal_form(&g, &gb).is_zero(), member, "{gens:?}: {}", q.fmt_poly(&g));
        }
    }
}

pub fn syzygies_match_dense_kernels() {
    for (vars, gens) in SUITE {
        let q = poly_ring(vars);
        let f: Vec<Poly> = gens.iter().map(|s| q.parse(s).unwrap()).collect();
        let m = row_matrix(&f);
        let syz = syzygy_kernel(&q, &m);
        let prod = m.mul(&syz, &q);
        assert!(prod.is_zero(), "{gens:?}");
        let dims = ideal_dims(&q, &f);
        let cols: Vec<(i32, Vec<Poly>)> = (0..syz.cols()).map(|j| (syz.col_twists[j], syz.column(j))).collect();
        for d in 0..=TOP {
            let kernel: usize = m.col_twists.iter().map(|&t| q_dim(q.nvars(), d - t)).sum::<usize>() - dims[d as usize];
            assert_eq!(span_dim(&q, &m.col_twists, &cols, d), kernel, "{gens:?} degree {d}");
        }
    }
}

pub fn module_hilbert_functions_over_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (vars, gens) in SUITE {
        let q = poly_ring(vars);
        let f: Vec<Poly> = gens.iter().map(|s| q.parse(s).unwrap()).collect();
        let r = q.with_relations(f.clone()).unwrap();
        for _ in 0..3 {
            let rows: Vec<i32> = (0..rng.random_range(1..=2)).map(|_| rng.random_range(0..=1)).collect();
            let ncols = rng.random_range(0..=2);
            let col_twists: Vec<i32> = (0..ncols).map(|_| rng.random_range(1..=3)).collect();
            let entries: Vec<Vec<Poly>> = rows
                .iter()
                .map(|&a| {
                    col_twists
                        .iter()
                        .map(|&b| monomials(&q, b - a).iter().fold(Poly::zero(), |acc, m| q.add(&acc, &q.scale(m, rng.random_range(0..5)))))
                        .collect()
                })
                .collect();
            let p = GradedMatrix::new(rows.clone(), col_twists.clone(), entries).unwrap();
            let h = hilbert_function(&r, &p, TOP);
            // Dense: coker of [p | f·e_i] over Q.
            let mut cols: Vec<(i32, Vec<Poly>)> = (0..p.cols()).map(|j| (col_twists[j], p.column(j))).collect();
            for (i, &a) in rows.iter().enumerate() {
                for g in &f {
                    let mut v = vec![Poly::zero(); rows.len()];
                    v[i] = g.clone();
                    cols.push((a + g.degree().unwrap() as i32, v));
                }
            }
            for d in 0..=TOP {
                let free: usize = rows.iter().map(|&a| q_dim(q.nvars(), d - a)).sum();
                assert_eq!(h[d as usize], free - span_dim(&q, &rows, &cols, d), "{gens:?} degree {d}");
            }
        }
    }
}
