//! Structured minimization for CRGs that are white joins of gray paths.
//!
//! For such a CRG the quadratic form splits: with `J` the all-ones matrix
//! and `A` the adjacency matrix of the gray paths,
//! `M = pJ + (1-2p)I - pA`, so on the simplex the objective is
//! `p + Σ_runs m_r² · f(run)` where a run is a maximal block of consecutive
//! support vertices inside one path, `m_r` its total mass, and `f(ℓ)` the
//! stationary value of the local form on a run of length `ℓ`.
//!
//! The global minimum is therefore a one-dimensional packing problem: if
//! some feasible run has `f ≤ 0`, concentrate all mass on the best such
//! run; otherwise pick disjoint runs maximizing `Σ 1/f` (a knapsack along
//! each path, runs separated by at least one gap) and split mass
//! proportionally to `1/f`. Stationary points of rank-deficient runs are
//! skipped; their face minima reappear as smaller runs.
//!
//! This route is exact in both arithmetic modes and is cross-validated
//! against support enumeration in the test suite.

use crate::crg::{linear_forest_components, Crg};
use crate::value::Scalar;

use super::linsolve::solve_dense;
use super::SolveOutcome;

/// Cap on path lengths handled by this solver.
pub const FOREST_CAP: usize = 128;

const FEAS_SLACK: f64 = 1e-11;

struct Run<T> {
    f: T,
    nu: Vec<T>,
}

/// Attempts the structured route; `None` if the CRG is not a white join of
/// gray paths (or too large).
pub(crate) fn try_minimize<T: Scalar>(crg: &Crg, p: &T) -> Option<SolveOutcome<T>> {
    let components = linear_forest_components(crg)?;
    let l_max = components.iter().map(Vec::len).max()?;
    if crg.k() > FOREST_CAP {
        return None;
    }

    let runs: Vec<Option<Run<T>>> = (0..=l_max).map(|l| run_stationary(l, p)).collect();

    // Knapsack along a path of span j: best total rate Σ 1/f with runs
    // separated by gaps, plus the number of optimal packings.
    let mut rate = vec![T::zero(); l_max + 1];
    let mut count = vec![1u128; l_max + 1];
    for j in 1..=l_max {
        let mut best = rate[j - 1].clone();
        let mut cnt = count[j - 1];
        for l in (1..=j).rev() {
            let Some(run) = &runs[l] else { continue };
            if !(run.f > T::zero()) {
                continue;
            }
            let rest = if l == j { 0 } else { j - l - 1 };
            let cand = T::one() / run.f.clone()
                + if l == j { T::zero() } else { rate[rest].clone() };
            let cand_cnt = if l == j { 1 } else { count[rest] };
            if cand > best && !nearly_equal(&cand, &best) {
                best = cand;
                cnt = cand_cnt;
            } else if nearly_equal(&cand, &best) {
                cnt = cnt.saturating_add(cand_cnt);
            }
        }
        rate[j] = best;
        count[j] = cnt;
    }

    let mut rate_total = T::zero();
    let mut count_harmonic: u128 = 1;
    for comp in &components {
        rate_total = rate_total + rate[comp.len()].clone();
        count_harmonic = count_harmonic.saturating_mul(count[comp.len()]);
    }

    // Candidate minima: the harmonic packing and each nonpositive run.
    let mut cands: Vec<(T, Cand, u128)> = Vec::new();
    if rate_total > T::zero() {
        let g = p.clone() + T::one() / rate_total.clone();
        cands.push((g, Cand::Harmonic, count_harmonic));
    }
    for (l, run) in runs.iter().enumerate() {
        let Some(run) = run else { continue };
        if run.f > T::zero() {
            continue;
        }
        let placements: u128 = components
            .iter()
            .map(|c| c.len().saturating_sub(l - 1) as u128)
            .sum();
        if placements > 0 {
            cands.push((p.clone() + run.f.clone(), Cand::Single(l), placements));
        }
    }
    if cands.is_empty() {
        return None;
    }

    let best_g = cands
        .iter()
        .map(|(g, _, _)| g.clone())
        .reduce(|a, b| if b < a { b } else { a })
        .unwrap();
    let keep = best_g.clone() + T::tol_g();
    cands.retain(|(g, _, _)| *g <= keep);
    let ties: u128 = cands.iter().map(|(_, _, c)| *c).sum();

    // Deterministic representative: prefer the harmonic packing.
    cands.sort_by_key(|(_, kind, _)| match kind {
        Cand::Harmonic => (0usize, 0usize),
        Cand::Single(l) => (1, *l),
    });
    let (g, kind, _) = cands.into_iter().next().unwrap();

    let mut mu = vec![T::zero(); crg.k()];
    match kind {
        Cand::Harmonic => {
            for comp in &components {
                place_packing(comp, &rate, &runs, &rate_total, &mut mu);
            }
        }
        Cand::Single(l) => {
            let comp = components.iter().find(|c| c.len() >= l).expect("placement exists");
            let run = runs[l].as_ref().expect("feasible run");
            for (t, &v) in comp[..l].iter().enumerate() {
                mu[v] = run.nu[t].clone();
            }
        }
    }

    let support: Vec<usize> = (0..crg.k()).filter(|&v| is_positive(&mu[v])).collect();
    let full_support = support.len() == crg.k();
    Some(SolveOutcome { g, minimizer: mu, support, full_support, unique: ties == 1 })
}

enum Cand {
    Harmonic,
    Single(usize),
}

/// Writes one optimal packing of `comp` into `mu`, mass-weighted by
/// `1/(f · rate_total)` per run. Follows the same branch preference as the
/// knapsack (longer runs first), so it reconstructs a counted optimum.
fn place_packing<T: Scalar>(
    comp: &[usize],
    rate: &[T],
    runs: &[Option<Run<T>>],
    rate_total: &T,
    mu: &mut [T],
) {
    let mut j = comp.len();
    while j > 0 {
        let target = &rate[j];
        if nearly_equal(target, &rate[j - 1]) {
            j -= 1;
            continue;
        }
        let mut advanced = false;
        for l in (1..=j).rev() {
            let Some(run) = &runs[l] else { continue };
            if !(run.f > T::zero()) {
                continue;
            }
            let rest = if l == j { 0 } else { j - l - 1 };
            let cand =
                T::one() / run.f.clone() + if l == j { T::zero() } else { rate[rest].clone() };
            if nearly_equal(&cand, target) {
                let mass = T::one() / (run.f.clone() * rate_total.clone());
                for (t, &v) in comp[j - l..j].iter().enumerate() {
                    mu[v] = mass.clone() * run.nu[t].clone();
                }
                j = if l == j { 0 } else { j - l - 1 };
                advanced = true;
                break;
            }
        }
        debug_assert!(advanced, "knapsack reconstruction must progress");
        if !advanced {
            break;
        }
    }
}

/// Interior stationary point of the local form on a run of `l` consecutive
/// path vertices: `(1-2p)Σν² - 2pΣν_iν_{i+1}` over the simplex. Returns the
/// stationary value `f` and the distribution `ν`, or `None` when the system
/// is singular or the point infeasible.
fn run_stationary<T: Scalar>(l: usize, p: &T) -> Option<Run<T>> {
    if l == 0 {
        return None;
    }
    let two_p = p.clone() + p.clone();
    let diag = T::one() - two_p.clone();
    if l == 1 {
        // The face is a single point; its value is 1-2p even when the
        // one-by-one system is singular.
        return Some(Run { f: diag, nu: vec![T::one()] });
    }
    let mut a = vec![vec![T::zero(); l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = diag.clone();
        if i > 0 {
            row[i - 1] = -p.clone();
        }
        if i + 1 < l {
            row[i + 1] = -p.clone();
        }
    }
    let x = solve_dense(a, vec![T::one(); l])?;
    let mut s = T::zero();
    for xi in &x {
        s = s + xi.clone();
    }
    if !s.pivot_ok() {
        return None;
    }
    let mut nu = Vec::with_capacity(l);
    for xi in x {
        let v = xi / s.clone();
        if v < T::zero() {
            if T::EXACT || v.approx_f64() < -FEAS_SLACK {
                return None;
            }
            nu.push(T::zero());
        } else {
            nu.push(v);
        }
    }
    Some(Run { f: T::one() / s, nu })
}

fn nearly_equal<T: Scalar>(a: &T, b: &T) -> bool {
    if T::EXACT {
        a == b
    } else {
        let (x, y) = (a.approx_f64(), b.approx_f64());
        (x - y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs()))
    }
}

fn is_positive<T: Scalar>(x: &T) -> bool {
    if T::EXACT {
        *x > T::zero()
    } else {
        x.approx_f64() > 1e-12
    }
}
