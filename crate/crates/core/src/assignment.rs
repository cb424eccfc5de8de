//! Minimum-cost bipartite assignment (Hungarian algorithm, O(n^2 m)).
//!
//! Used for cluster-to-class mapping in the metrics, for pseudo-label
//! accuracy, and for epoch-to-epoch centroid alignment in the pipeline
//! baselines.

use ndarray::ArrayView2;

use crate::error::{Error, Result};

/// Solves the min-cost assignment for a rectangular cost matrix with
/// `rows <= cols`. Returns, for each row, the column it is assigned to.
/// Every row is matched; columns may be left unmatched when `cols > rows`.
///
/// The implementation is the standard potential-based shortest augmenting
/// path formulation. Ties resolve deterministically (lowest column index
/// reached first wins).
pub fn min_cost_assignment(cost: ArrayView2<'_, f64>) -> Result<Vec<usize>> {
    let (n, m) = cost.dim();
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput(
            "assignment requires a non-empty cost matrix".into(),
        ));
    }
    if n > m {
        return Err(Error::InvalidInput(format!(
            "assignment requires rows <= cols, got {n}x{m}"
        )));
    }
    if cost.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(
            "assignment cost matrix contains non-finite entries".into(),
        ));
    }

    // 1-indexed potentials; p[j] is the row matched to column j (0 = none).
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=m {
                if !used[j] {
                    let cur = cost[(i0 - 1, j - 1)] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![usize::MAX; n];
    for j in 1..=m {
        if p[j] != 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    debug_assert!(row_to_col.iter().all(|&c| c != usize::MAX));
    Ok(row_to_col)
}

/// Max-profit assignment: the permutation maximizing the summed entries.
pub fn max_profit_assignment(profit: ArrayView2<'_, f64>) -> Result<Vec<usize>> {
    let negated = profit.map(|v| -v);
    min_cost_assignment(negated.view())
}
