//! Random free complexes and chain maps over small quotient rings, with a support oracle.

use civar_core::algebra::{GradedMatrix, GradedRing, Poly, RingRef};
use civar_core::complex::{complex_support, mapping_cone, ChainMap, FreeComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub const P: u64 = 32003;

pub fn ring(vars: &[&str], rels: &[&str]) -> RingRef {
    let q = GradedRing::polynomial(P, vars).unwrap();
    let f = rels.iter().map(|s| q.parse(s).unwrap()).collect();
    Arc::new(q.with_relations(f).unwrap())
}

/// Normal monomials of `R` in degree `d`, hard-coded for the two test rings.
fn basis(r: &GradedRing, d: i32) -> Vec<Poly> {
    let names: Vec<String> = match (r.nvars(), d) {
        (_, d) if d < 0 => vec![],
        (_, 0) => vec!["1".into()],
        (1, 1) => vec!["x".into()],
        (1, _) => vec![],
        (2, 1) => vec!["x".into(), "y".into()],
        (2, d) => vec![format!("y^{d}")],
        _ => unreachable!(),
    };
    names.iter().map(|s| r.parse(s).unwrap()).collect()
}

fn coeff_key(r: &GradedRing, f: &Poly) -> Vec<(String, u64)> {
    r.reduce(f).terms().iter().map(|(m, c)| (r.fmt_monomial(m), *c as u64)).collect()
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, p);
        let iv = inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = *x * iv % P;
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..ncols {
                    m[i][j] = (m[i][j] + P * P - f * m[row][j]) % P;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn rank(mut m: Vec<Vec<u64>>, ncols: usize) -> usize {
    echelon(&mut m, ncols).len()
}

/// A uniformly random vector of the kernel of `m` (columns = unknowns).
fn random_kernel_vector(mut m: Vec<Vec<u64>>, ncols: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let pivots = echelon(&mut m, ncols);
    let mut x = vec![0u64; ncols];
    for j in 0..ncols {
        if !pivots.contains(&j) {
            x[j] = rng.random_range(0..P);
        }
    }
    for (i, &pc) in pivots.iter().enumerate() {
        let s: u64 = (0..ncols).filter(|j| !pivots.contains(j)).map(|j| m[i][j] * x[j] % P).sum::<u64>() % P;
        x[pc] = (P - s) % P;
    }
    x
}

/// One unknown: a monomial placed at `(block, row, col)`.
type Unknown = (usize, usize, usize, Poly);

/// Solves `equations(unknown) = 0` for matrices built from `unknowns`, returning a random solution.
fn solve(
    r: &GradedRing,
    unknowns: &[Unknown],
    image: impl Fn(&Unknown) -> Vec<((usize, usize, usize), Poly)>,
    rng: &mut ChaCha8Rng,
) -> Vec<u64> {
    let mut eq_index: HashMap<(usize, usize, usize, String), usize> = HashMap::new();
    let mut cols: Vec<Vec<(usize, u64)>> = Vec::new();
    for u in unknowns {
        let mut col = Vec::new();
        for (pos, f) in image(u) {
            for (m, c) in coeff_key(r, &f) {
                let n = eq_index.len();
                let k = *eq_index.entry((pos.0, pos.1, pos.2, m)).or_insert(n);
                col.push((k, c));
            }
        }
        cols.push(col);
    }
    let mut m = vec![vec![0u64; unknowns.len()]; eq_index.len()];
    for (j, col) in cols.iter().enumerate() {
        for &(i, c) in col {
            m[i][j] = (m[i][j] + c) % P;
        }
    }
    random_kernel_vector(m, unknowns.len(), rng)
}

fn assemble(r: &GradedRing, shapes: &[(Vec<i32>, Vec<i32>)], unknowns: &[Unknown], x: &[u64]) -> Vec<GradedMatrix> {
    let mut out: Vec<GradedMatrix> = shapes.iter().map(|(rt, ct)| GradedMatrix::zero(rt.clone(), ct.clone())).collect();
    for (u, &c) in unknowns.iter().zip(x) {
        let (b, i, j, m) = u;
        let term = r.scale(m, c as i64);
        let cur = out[*b].get(*i, *j).clone();
        out[*b].set(*i, *j, r.add(&cur, &term));
    }
    out
}

fn entry_unknowns(r: &GradedRing, block: usize, rows: &[i32], cols: &[i32]) -> Vec<Unknown> {
    let mut u = Vec::new();
    for (i, &a) in rows.iter().enumerate() {
        for (j, &b) in cols.iter().enumerate() {
            for m in basis(r, b - a) {
                u.push((block, i, j, m));
            }
        }
    }
    u
}

fn times(r: &GradedRing, a: &GradedMatrix, b: &[(usize, usize, Poly)], rows: usize) -> Vec<((usize, usize), Poly)> {
    // a · (sparse b)
    let mut out = Vec::new();
    for &(k, j, ref f) in b {
        for i in 0..rows {
            let p = r.mul(a.get(i, k), f);
            if !p.is_zero() {
                out.push(((i, j), p));
            }
        }
    }
    out
}

pub fn random_complex(r: &RingRef, rng: &mut ChaCha8Rng) -> FreeComplex {
    let len = rng.random_range(1..=3);
    let twists: Vec<Vec<i32>> = (0..len)
        .map(|_| {
            let mut t: Vec<i32> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(0..=4)).collect();
            t.sort();
            t
        })
        .collect();
    let mut diffs: Vec<GradedMatrix> = Vec::new();
    for s in 1..len {
        let (rows, cols) = (&twists[s - 1], &twists[s]);
        let unknowns = entry_unknowns(r, 0, rows, cols);
        let x = if s == 1 {
            unknowns.iter().map(|_| rng.random_range(0..P)).collect()
        } else {
            let prev = diffs[s - 2].clone();
            solve(
                r,
                &unknowns,
                |(_, i, j, m)| {
                    times(r, &prev, &[(*i, *j, m.clone())], prev.rows()).into_iter().map(|((a, b), f)| ((0, a, b), f)).collect()
                },
                rng,
            )
        };
        diffs.push(assemble(r, &[(rows.clone(), cols.clone())], &unknowns, &x).remove(0));
    }
    let c = FreeComplex::new(r.clone(), rng.random_range(-1..=1), twists, diffs).unwrap();
    if rng.random_range(0..5) == 0 {
        return mapping_cone(&ChainMap::identity(&c.window(c.lo(), c.lo()))).unwrap();
    }
    c
}

/// A random chain map `C_s → C_{s+d}` into `C` with twists raised by `w`.
pub fn random_chain_map(r: &RingRef, c: &FreeComplex, d: i32, w: i32, rng: &mut ChaCha8Rng) -> ChainMap {
    let target = c.twisted(w);
    let degrees: Vec<i32> = c.degrees().filter(|&s| target.rank(s + d) > 0).collect();
    let mut unknowns = Vec::new();
    let mut shapes = Vec::new();
    for (b, &s) in degrees.iter().enumerate() {
        unknowns.extend(entry_unknowns(r, b, target.twists(s + d), c.twists(s)));
        shapes.push((target.twists(s + d).to_vec(), c.twists(s).to_vec()));
    }
    let sign: i64 = if d % 2 == 0 { 1 } else { -1 };
    // Equation block for source degree s: ∂^D_{s+d} α_s − sign α_{s−1} ∂^C_s.
    let x = solve(
        r,
        &unknowns,
        |(b, i, j, m)| {
            let s = degrees[*b];
            let mut out = Vec::new();
            let dd = target.diff(s + d);
            for ((a, col), f) in times(r, &dd, &[(*i, *j, m.clone())], dd.rows()) {
                out.push((((s + 10) as usize, a, col), f));
            }
            let dc = c.diff(s + 1);
            for k in 0..dc.cols() {
                let e = r.mul(m, dc.get(*j, k));
                if !e.is_zero() {
                    out.push((((s + 11) as usize, *i, k), r.scale(&e, -sign)));
                }
            }
            out
        },
        rng,
    );
    let mats = assemble(r, &shapes, &unknowns, &x);
    let comps: BTreeMap<i32, GradedMatrix> = mats.into_iter().enumerate().map(|(b, m)| (degrees[b], m)).collect();
    ChainMap::new(c.clone(), target, d, comps).unwrap()
}

/// Rank of a matrix after substituting constants for the variables, with entries read as
/// `Σ c_m m(point)`.
fn eval_rank(r: &GradedRing, m: &GradedMatrix, point: &[u64]) -> usize {
    let rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    r.reduce(m.get(i, j)).terms().iter().fold(0u64, |acc, (mon, c)| {
                        let v = mon.exps().iter().zip(point).fold(1u64, |v, (&e, &p)| v * pow(p, e as u64) % P);
                        (acc + v * *c as u64) % P
                    })
                })
                .collect()
        })
        .collect();
    rank(rows, m.cols())
}

/// Total homology of `C` specialized at `point` (a field-valued complex).
fn specialized_homology(c: &FreeComplex, point: &[u64]) -> usize {
    let r = c.ring();
    let ranks: BTreeMap<i32, usize> = (c.lo()..=c.hi() + 1).map(|s| (s, eval_rank(r, &c.diff(s), point))).collect();
    c.degrees().map(|s| c.rank(s) - ranks[&s] - ranks[&(s + 1)]).sum()
}

/// Expected Krull dimension of `Supp C`: `-1` empty, `0` the maximal ideal only, `1` the line `V(x)`.
pub fn oracle_dimension(c: &FreeComplex) -> i64 {
    let n = c.ring().nvars();
    if n == 2 && specialized_homology(c, &[0, 1]) > 0 {
        return 1;
    }
    if specialized_homology(c, &vec![0; n]) > 0 {
        0
    } else {
        -1
    }
}

/// A shift `d ≠ 0` and twist `w` for which nonzero maps `C_s → C_{s+d}(w)` can exist, when possible.
pub fn pick_shift(c: &FreeComplex, rng: &mut ChaCha8Rng) -> (i32, i32) {
    let pairs: Vec<(i32, i32)> = c
        .degrees()
        .flat_map(|s| c.degrees().filter(move |&t| t != s).map(move |t| (s, t - s)))
        .collect();
    if pairs.is_empty() {
        return ([-2, -1, 1, 2][rng.random_range(0..4)], 0);
    }
    let (s, d) = pairs[rng.random_range(0..pairs.len())];
    let a = c.twists(s)[rng.random_range(0..c.rank(s))];
    let b = c.twists(s + d)[rng.random_range(0..c.rank(s + d))];
    (d, a - b - rng.random_range(0..=1))
}

pub fn run_suite(r: &RingRef, seed: u64, cases: usize) -> Vec<(i64, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = Vec::new();
    for case in 0..cases {
        let c = random_complex(r, &mut rng);
        let (d, w) = pick_shift(&c, &mut rng);
        let alpha = random_chain_map(r, &c, d, w, &mut rng);
        let k = mapping_cone(&alpha).unwrap();
        let (sc, sk) = (complex_support(&c), complex_support(&k));
        let expected = oracle_dimension(&c);
        assert_eq!(sc.dimension, expected, "case {case}: support of C");
        assert_eq!(oracle_dimension(&k), expected, "case {case}: oracle on the cone");
        assert_eq!(sk.dimension, expected, "case {case}: support of the cone");
        assert!(sc.same_as(&sk, r) && sk.same_as(&sc, r), "case {case}: radicals differ");
        let nonzero = c.degrees().any(|s| !alpha.component(s).is_zero());
        seen.push((expected, nonzero));
    }
    seen
}

