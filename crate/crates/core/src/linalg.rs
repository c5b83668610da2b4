//! Exact Gauss-Jordan elimination over the rational-function field.

use crate::scalars::Scalar;

fn entry_size(s: &Scalar) -> usize {
    s.numer().num_terms() + s.denom().num_terms()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Scalar>]) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    for row in &mut m {
        row.resize(ncols, Scalar::zero());
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        // smallest nonzero entry keeps intermediate expressions small
        let Some(p) = (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| entry_size(&m[i][col])) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            m[r][c] = &m[r][c] * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&f * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rref(rows).1.len()
}

/// Coefficients `c` with `Σ c_i basis_i = target`, or `None` if `target` is
/// outside the span. Free coordinates are set to zero.
pub fn solve_in_span(basis: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = basis.len();
    let dim = basis.iter().map(Vec::len).chain(std::iter::once(target.len())).max().unwrap_or(0);
    let at = |v: &[Scalar], j: usize| v.get(j).cloned().unwrap_or_else(Scalar::zero);
    let system: Vec<Vec<Scalar>> = (0..dim)
        .map(|j| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| at(b, j)).collect();
            row.push(at(target, j));
            row
        })
        .collect();
    let (reduced, pivots) = rref(&system);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut sol = vec![Scalar::zero(); n];
    for (row, &col) in reduced.iter().zip(&pivots) {
        sol[col] = row[n].clone();
    }
    Some(sol)
}

/// Indices of a maximal linearly independent subfamily, in input order.
pub fn independent_indices(rows: &[Vec<Scalar>]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut kept_rows: Vec<Vec<Scalar>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        kept_rows.push(row.clone());
        if rank(&kept_rows) == kept_rows.len() {
            kept.push(i);
        } else {
            kept_rows.pop();
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn rank_with_parameter() {
        let q = Scalar::q();
        let rows = vec![vec![r(1), q.clone()], vec![q.clone(), &q * &q]];
        assert_eq!(rank(&rows), 1);
        let rows = vec![vec![r(1), q.clone()], vec![q.clone(), r(1)]];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn solve_and_reject() {
        let basis = vec![vec![r(1), r(0), r(1)], vec![r(0), r(1), r(1)]];
        let sol = solve_in_span(&basis, &[r(2), r(3), r(5)]).unwrap();
        assert_eq!(sol, vec![r(2), r(3)]);
        assert!(solve_in_span(&basis, &[r(1), r(1), r(1)]).is_none());
        assert_eq!(solve_in_span(&[], &[]), Some(vec![]));
    }

    #[test]
    fn independent_subset() {
        let rows = vec![vec![r(1), r(2)], vec![r(2), r(4)], vec![r(0), r(1)]];
        assert_eq!(independent_indices(&rows), vec![0, 2]);
    }
}
