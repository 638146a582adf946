//! Exact Gaussian elimination over the rationals, used by the brute-force
//! search oracles and the bounded element-code decoder.

use num::{BigRational, Zero};

/// Solves `A x = b` exactly. Returns any solution (free variables set to
/// zero) or `None` when the system is inconsistent.
pub(crate) fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0usize;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        b.swap(row, piv);
        let inv = a[row][col].clone();
        for v in a[row].iter_mut() {
            *v /= &inv;
        }
        b[row] /= &inv;
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &a[row][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &b[row];
                b[r] -= delta;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for r in row..rows {
        if a[r].iter().all(|v| v.is_zero()) && !b[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for col in 0..cols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = b[r].clone();
        }
    }
    // Verify: with free variables at zero the particular solution must satisfy
    // every original row; rows below the pivot block were checked above and
    // eliminated rows are consistent by construction.
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn solves_square_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(5), q(1)];
        let x = solve(a, b).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let b = vec![q(1), q(3)];
        assert!(solve(a, b).is_none());
    }

    #[test]
    fn underdetermined_picks_particular() {
        let a = vec![vec![q(1), q(1)]];
        let b = vec![q(4)];
        let x = solve(a, b).unwrap();
        assert_eq!(x, vec![q(4), q(0)]);
    }
}
