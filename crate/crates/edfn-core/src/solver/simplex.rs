//! Global minimization of `⟨μ, M μ⟩` over the probability simplex by
//! exhaustive support enumeration.
//!
//! For every nonempty support `S` we solve the stationarity system
//! `(Mμ)_i = h` on `S`, `Σμ = 1`, keep the feasible (componentwise
//! nonnegative) solutions, and take the best. The objective is generally
//! indefinite, so this enumeration — not a convex QP method — is what makes
//! the minimum certified. Boundary minima always show up as stationary
//! points of smaller supports, so rank-deficient systems can be skipped.

use crate::value::Scalar;

use super::linsolve::solve_dense;
use super::SolveOutcome;

/// Float slack when accepting slightly negative stationary coordinates.
const FEAS_SLACK: f64 = 1e-11;

pub(crate) fn minimize<T: Scalar>(m: &[Vec<T>]) -> SolveOutcome<T> {
    let k = m.len();
    assert!(k >= 1 && k <= 63, "support enumeration needs 1 ≤ k ≤ 63");

    let mut best: Option<T> = None;
    // Ties within tolerance of the current best: (g, μ, mask).
    let mut ties: Vec<(T, Vec<T>, u64)> = Vec::new();

    for mask in 1u64..(1u64 << k) {
        let support: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let Some(mu) = stationary_point(m, &support) else {
            continue;
        };
        let g = quad_form(m, &mu);
        let bound = match &best {
            Some(b) => b.clone() + T::tol_g(),
            None => {
                best = Some(g.clone());
                ties.push((g, mu, mask));
                continue;
            }
        };
        if g > bound {
            continue;
        }
        if g < *best.as_ref().unwrap() {
            best = Some(g.clone());
            let keep = g.clone() + T::tol_g();
            ties.retain(|(og, _, _)| *og <= keep);
        }
        ties.push((g, mu, mask));
    }

    let best_g = best.expect("singleton supports are always feasible");
    let keep = best_g.clone() + T::tol_g();
    ties.retain(|(og, _, _)| *og <= keep);

    // Distinct minimizers, after matching vectors coordinatewise.
    let mut distinct: Vec<(T, Vec<T>, u64)> = Vec::new();
    for (g, mu, mask) in ties {
        if !distinct.iter().any(|(_, other, _)| vectors_match(&mu, other)) {
            distinct.push((g, mu, mask));
        }
    }
    // Deterministic representative: smallest support, then lowest mask.
    distinct.sort_by_key(|(_, _, mask)| (mask.count_ones(), *mask));
    let unique = distinct.len() == 1;
    let (g, mu, _) = distinct.into_iter().next().unwrap();

    let support: Vec<usize> = (0..k).filter(|&i| is_positive(&mu[i])).collect();
    let full_support = support.len() == k;
    SolveOutcome { g, minimizer: mu, support, full_support, unique }
}

/// Stationary point of the quadratic form restricted to `support`, if the
/// system is nonsingular and the point is feasible.
fn stationary_point<T: Scalar>(m: &[Vec<T>], support: &[usize]) -> Option<Vec<T>> {
    let s = support.len();
    let mut a = vec![vec![T::zero(); s + 1]; s + 1];
    let mut b = vec![T::zero(); s + 1];
    for (r, &i) in support.iter().enumerate() {
        for (c, &j) in support.iter().enumerate() {
            a[r][c] = m[i][j].clone();
        }
        a[r][s] = -T::one();
    }
    for c in 0..s {
        a[s][c] = T::one();
    }
    b[s] = T::one();

    let x = solve_dense(a, b)?;
    let mut mu = vec![T::zero(); m.len()];
    for (r, &i) in support.iter().enumerate() {
        let v = x[r].clone();
        if v < T::zero() {
            if T::EXACT || v.approx_f64() < -FEAS_SLACK {
                return None;
            }
            // Clamp float round-off.
            mu[i] = T::zero();
        } else {
            mu[i] = v;
        }
    }
    Some(mu)
}

pub(crate) fn quad_form<T: Scalar>(m: &[Vec<T>], mu: &[T]) -> T {
    let k = mu.len();
    let mut acc = T::zero();
    for i in 0..k {
        if mu[i].is_zero() {
            continue;
        }
        acc = acc + m[i][i].clone() * mu[i].clone() * mu[i].clone();
        for j in i + 1..k {
            if !mu[j].is_zero() && !m[i][j].is_zero() {
                acc = acc
                    + T::from_int(2) * m[i][j].clone() * mu[i].clone() * mu[j].clone();
            }
        }
    }
    acc
}

fn vectors_match<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x.clone() - y.clone()).abs_val() <= T::tol_mu())
}

fn is_positive<T: Scalar>(x: &T) -> bool {
    if T::EXACT {
        *x > T::zero()
    } else {
        x.approx_f64() > 1e-12
    }
}
