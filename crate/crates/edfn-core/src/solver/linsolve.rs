//! Dense linear solves, generic over the scalar type.

use crate::value::Scalar;

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when the matrix is singular (exactly, in exact mode; up
/// to the pivot threshold in float mode). Consumes its inputs.
pub(crate) fn solve_dense<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    for col in 0..n {
        // Pick the largest usable pivot in this column.
        let mut pivot = None;
        let mut pivot_abs = T::zero();
        for (row, a_row) in a.iter().enumerate().skip(col) {
            let cand = a_row[col].abs_val();
            if a_row[col].pivot_ok() && (pivot.is_none() || cand > pivot_abs) {
                pivot = Some(row);
                pivot_abs = cand;
            }
        }
        let pivot = pivot?;
        a.swap(col, pivot);
        b.swap(col, pivot);

        let inv = T::one() / a[col][col].clone();
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() * inv.clone();
            for j in col..n {
                let delta = factor.clone() * a[col][j].clone();
                a[row][j] = a[row][j].clone() - delta;
            }
            let delta = factor * b[col].clone();
            b[row] = b[row].clone() - delta;
        }
    }

    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for j in row + 1..n {
            acc = acc - a[row][j].clone() * x[j].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Some(x)
}

/// Solves the symmetric tridiagonal system with constant diagonal `d`,
/// constant off-diagonal `e`, and right-hand side all ones. Partial
/// pivoting between adjacent rows (one extra superdiagonal of fill-in).
pub(crate) fn solve_constant_tridiagonal<T: Scalar>(n: usize, d: &T, e: &T) -> Option<Vec<T>> {
    let mut diag = vec![d.clone(); n];
    let mut sub: Vec<T> = vec![e.clone(); n]; // sub[i] sits at (i, i-1), sub[0] unused
    let mut sup: Vec<T> = vec![e.clone(); n]; // sup[i] sits at (i, i+1), last unused
    let mut sup2: Vec<T> = vec![T::zero(); n]; // fill-in at (i, i+2)
    let mut rhs = vec![T::one(); n];
    if n >= 1 {
        sup[n - 1] = T::zero();
    }

    for i in 0..n.saturating_sub(1) {
        let swap = if T::EXACT {
            !diag[i].pivot_ok() && sub[i + 1].pivot_ok()
        } else {
            sub[i + 1].abs_val() > diag[i].abs_val()
        };
        if swap {
            // Row i covers columns (i, i+1, i+2) as (diag, sup, sup2);
            // row i+1 covers them as (sub, diag, sup).
            std::mem::swap(&mut diag[i], &mut sub[i + 1]);
            let tmp = sup[i].clone();
            sup[i] = diag[i + 1].clone();
            diag[i + 1] = tmp;
            let tmp = sup2[i].clone();
            sup2[i] = sup[i + 1].clone();
            sup[i + 1] = tmp;
            rhs.swap(i, i + 1);
        }
        if !diag[i].pivot_ok() {
            return None;
        }
        let factor = sub[i + 1].clone() / diag[i].clone();
        diag[i + 1] = diag[i + 1].clone() - factor.clone() * sup[i].clone();
        sup[i + 1] = sup[i + 1].clone() - factor.clone() * sup2[i].clone();
        rhs[i + 1] = rhs[i + 1].clone() - factor * rhs[i].clone();
        sub[i + 1] = T::zero();
    }
    if !diag[n - 1].pivot_ok() {
        return None;
    }

    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        if i + 1 < n {
            acc = acc - sup[i].clone() * x[i + 1].clone();
        }
        if i + 2 < n {
            acc = acc - sup2[i].clone() * x[i + 2].clone();
        }
        x[i] = acc / diag[i].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    #[test]
    fn solves_small_rational_system() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1.
        let a = vec![
            vec![BigRational::from_int(1), BigRational::from_int(1)],
            vec![BigRational::from_int(1), BigRational::from_int(-1)],
        ];
        let b = vec![BigRational::from_int(3), BigRational::from_int(1)];
        let x = solve_dense(a, b).unwrap();
        assert_eq!(x, vec![BigRational::from_int(2), BigRational::from_int(1)]);
    }

    #[test]
    fn detects_singularity() {
        let a = vec![
            vec![BigRational::from_int(1), BigRational::from_int(2)],
            vec![BigRational::from_int(2), BigRational::from_int(4)],
        ];
        let b = vec![BigRational::from_int(1), BigRational::from_int(2)];
        assert!(solve_dense(a, b).is_none());
    }

    #[test]
    fn float_path_agrees() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let b = vec![5.0, 10.0];
        let x = solve_dense(a, b).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
    }
}
