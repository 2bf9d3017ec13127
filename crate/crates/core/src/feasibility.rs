//! Exact phase-one simplex: decides whether `{x ≥ 0 : A x = b}` is nonempty
//! and returns a point when it is. All pivoting is done in exact rational
//! arithmetic; Bland's rule guarantees termination. Problem sizes here are
//! tiny (at most a few hundred columns), so no sparsity or factorization
//! machinery is warranted.

use num_traits::{Signed, Zero};

use crate::choice::Rational;

/// Returns a nonnegative solution of `A x = b`, or `None` when the system is
/// infeasible. `a` is row-major with equal-length rows.
pub(crate) fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }

    // tableau columns: n structural vars, m artificials, rhs
    let cols = n + m + 1;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let negate = b[i].is_negative();
        let mut t = Vec::with_capacity(cols);
        for v in row {
            t.push(if negate { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            t.push(if k == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            });
        }
        t.push(if negate { -b[i].clone() } else { b[i].clone() });
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase-1 objective: minimize the artificial sum. Reduced-cost row for
    // the starting basis: cost(artificial) = 1, cost(structural) = 0, so the
    // row is the negated column sums over structural columns and rhs.
    let mut obj = vec![Rational::zero(); cols];
    for row in &tableau {
        for (j, v) in row.iter().enumerate() {
            if j < n || j == cols - 1 {
                obj[j] -= v;
            }
        }
    }

    // Bland: entering column = lowest index with negative reduced cost
    while let Some(entering) = (0..cols - 1).find(|&j| obj[j].is_negative()) {
        // ratio test; ties broken by lowest basis variable (Bland)
        let mut leaving: Option<usize> = None;
        let mut best_ratio: Option<Rational> = None;
        for (i, row) in tableau.iter().enumerate() {
            if !row[entering].is_positive() {
                continue;
            }
            let ratio = &row[cols - 1] / &row[entering];
            let better = match &best_ratio {
                None => true,
                Some(current) => {
                    ratio < *current
                        || (ratio == *current && basis[i] < basis[leaving.unwrap()])
                }
            };
            if better {
                best_ratio = Some(ratio);
                leaving = Some(i);
            }
        }
        let leaving = leaving.expect("phase-1 objective is bounded below");

        // pivot
        let pivot = tableau[leaving][entering].clone();
        for v in tableau[leaving].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = tableau[leaving].clone();
        for (i, row) in tableau.iter_mut().enumerate() {
            if i == leaving || row[entering].is_zero() {
                continue;
            }
            let factor = row[entering].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        if !obj[entering].is_zero() {
            let factor = obj[entering].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        basis[leaving] = entering;
    }

    // obj holds the negated objective value in the rhs slot
    if obj[cols - 1].is_negative() {
        return None; // artificial mass left over: infeasible
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tableau[i][cols - 1].clone();
        }
    }
    Some(x)
}
