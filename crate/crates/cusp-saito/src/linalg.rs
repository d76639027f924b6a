//! Exact linear solving over the rationals.

use num_traits::Zero;

use crate::curve_algebra::Rat;

/// Solves `A·x = rhs` for a dense matrix given by rows.
///
/// Returns a particular solution with every free variable set to zero, or
/// `None` when the system is inconsistent.
pub(crate) fn solve(mut rows: Vec<Vec<Rat>>, mut rhs: Vec<Rat>, unknowns: usize) -> Option<Vec<Rat>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = Rat::from_integer(1.into()) / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        let pivot_row = rows[r].clone();
        let pivot_rhs = rhs[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..unknowns].iter_mut().zip(&pivot_row[col..unknowns]) {
                    *v -= &factor * p;
                }
                rhs[i] -= &factor * &pivot_rhs;
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); unknowns];
    for (row, col) in pivots {
        x[col] = rhs[row].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_algebra::int;

    #[test]
    fn solves_and_detects_inconsistency() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve(rows, vec![int(3), int(1)], 2), Some(vec![int(2), int(1)]));
        let rows = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(rows, vec![int(1), int(3)], 2), None);
        let rows = vec![vec![int(0), int(2)]];
        assert_eq!(solve(rows, vec![int(4)], 2), Some(vec![int(0), int(2)]));
        assert_eq!(solve(vec![], vec![], 0), Some(vec![]));
    }
}
