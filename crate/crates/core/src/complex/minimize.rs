use super::free::FreeComplex;
use crate::algebra::GradedMatrix;

/// Strips split-exact summands `R --u--> R` (`u` a unit) by Gaussian elimination.
///
/// The result is homotopy equivalent to `c` and has no constant entries in its differential.
pub fn minimize_complex(c: &FreeComplex) -> FreeComplex {
    let ring = c.ring().clone();
    if c.is_zero() {
        return c.clone();
    }
    let field = ring.field();
    let lo = c.lo();
    let mut twists: Vec<Vec<i32>> = c.degrees().map(|s| c.twists(s).to_vec()).collect();
    let mut diffs: Vec<GradedMatrix> = (lo + 1..=c.hi()).map(|s| c.diff(s).reduced(&ring)).collect();
    for k in 0..diffs.len() {
        loop {
            let d = &diffs[k];
            let pivot = (0..d.cols()).find_map(|j| {
                (0..d.rows()).find(|&i| d.get(i, j).is_constant() && !d.get(i, j).is_zero()).map(|i| (i, j))
            });
            let Some((r, col)) = pivot else { break };
            let inv = field.inv(d.get(r, col).constant_coeff());
            let mut m = d.clone();
            let pivot_col = d.column(col);
            for j in 0..m.cols() {
                if j == col || d.get(r, j).is_zero() {
                    continue;
                }
                let factor = d.get(r, j).scale(inv, field);
                for (i, p) in pivot_col.iter().enumerate() {
                    if !p.is_zero() {
                        let v = ring.reduce(&ring.sub(m.get(i, j), &ring.mul(p, &factor)));
                        m.set(i, j, v);
                    }
                }
            }
            let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..m.cols()).filter(|&j| j != col).collect();
            diffs[k] = m.select(&rows, &cols);
            twists[k].remove(r);
            twists[k + 1].remove(col);
            if k > 0 {
                let p = &diffs[k - 1];
                let keep: Vec<usize> = (0..p.cols()).filter(|&j| j != r).collect();
                diffs[k - 1] = p.select(&(0..p.rows()).collect::<Vec<_>>(), &keep);
            }
            if k + 1 < diffs.len() {
                let n = &diffs[k + 1];
                let keep: Vec<usize> = (0..n.rows()).filter(|&i| i != col).collect();
                diffs[k + 1] = n.select(&keep, &(0..n.cols()).collect::<Vec<_>>());
            }
        }
    }
    FreeComplex::new_unchecked(ring, lo, twists, diffs).expect("elimination preserves shapes")
}
