//! Evaluation of `g_K(p)` with certified minimizers.
//!
//! `g_K(p)` is the minimum of `⟨μ, M_K(p) μ⟩` over probability masses `μ`
//! on the vertices of `K`, where `M_K(p)` weighs white entries `p`, black
//! entries `1-p` and gray edges `0`. Minimization runs in one of two modes:
//! exact rationals (zero-tolerance identities) or floats (fixed
//! tolerances), and along one of two routes:
//!
//! * exhaustive support enumeration ([`solve_g_enumerated`]), the default
//!   for general CRGs up to the mode's cap;
//! * a structured run-packing route for white joins of gray paths
//!   ([`forest`]), which handles the long path CRGs that appear in
//!   accumulation-point experiments.
//!
//! Both routes return the same record type and are cross-validated against
//! each other in the tests.

mod forest;
mod linsolve;
mod simplex;

pub use forest::FOREST_CAP;

use num::BigRational;
use serde::Serialize;

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::value::{p_as_scalar, Mode, PValue, Scalar, Value};
use crate::{Error, Result};

/// Support-enumeration cap in float mode.
pub const SIMPLEX_CAP_FLOAT: usize = 16;
/// Support-enumeration cap in exact mode.
pub const SIMPLEX_CAP_EXACT: usize = 12;

/// Result of a `g_K(p)` solve.
#[derive(Debug, Clone, Serialize)]
pub struct GRecord {
    pub g: Value,
    pub minimizer: Vec<Value>,
    pub support: Vec<usize>,
    pub unique: bool,
    pub full_support: bool,
    pub p_core: Option<bool>,
    pub mode: Mode,
}

#[derive(Debug, Clone)]
pub(crate) struct SolveOutcome<T> {
    pub g: T,
    pub minimizer: Vec<T>,
    pub support: Vec<usize>,
    pub full_support: bool,
    pub unique: bool,
}

impl<T: Scalar> SolveOutcome<T> {
    fn into_record(self) -> GRecord {
        GRecord {
            g: self.g.into_value(),
            minimizer: self.minimizer.into_iter().map(Scalar::into_value).collect(),
            support: self.support,
            unique: self.unique,
            full_support: self.full_support,
            p_core: None,
            mode: if T::EXACT { Mode::Exact } else { Mode::Float },
        }
    }
}

/// The matrix `M_K(p)`: diagonal entries carry the vertex colors, off
/// diagonals the edge colors; white weighs `p`, black `1-p`, gray `0`.
pub(crate) fn cost_matrix<T: Scalar>(crg: &Crg, p: &T) -> Vec<Vec<T>> {
    let k = crg.k();
    let mut m = vec![vec![T::zero(); k]; k];
    for (v, row) in m.iter_mut().enumerate() {
        row[v] = match crg.vcolor(v) {
            VertexColor::White => p.clone(),
            VertexColor::Black => T::one() - p.clone(),
        };
    }
    for (i, j, c) in crg.edge_pairs() {
        let w = match c {
            EdgeColor::White => p.clone(),
            EdgeColor::Black => T::one() - p.clone(),
            EdgeColor::Gray => T::zero(),
        };
        m[i][j] = w.clone();
        m[j][i] = w;
    }
    m
}

/// `M_K(p)` with entries in the arithmetic mode of `p`.
pub fn build_matrix(crg: &Crg, p: &PValue) -> Result<Vec<Vec<Value>>> {
    Ok(match p {
        PValue::Exact(_) => {
            let ps: BigRational = p_as_scalar(p)?;
            cost_matrix(crg, &ps)
                .into_iter()
                .map(|row| row.into_iter().map(Scalar::into_value).collect())
                .collect()
        }
        PValue::Float(_) => {
            let ps: f64 = p_as_scalar(p)?;
            cost_matrix(crg, &ps)
                .into_iter()
                .map(|row| row.into_iter().map(Scalar::into_value).collect())
                .collect()
        }
    })
}

fn simplex_cap<T: Scalar>() -> usize {
    if T::EXACT {
        SIMPLEX_CAP_EXACT
    } else {
        SIMPLEX_CAP_FLOAT
    }
}

/// Generic solve: structured route for path forests, support enumeration
/// otherwise.
pub(crate) fn solve_scalar<T: Scalar>(crg: &Crg, p: &T) -> Result<SolveOutcome<T>> {
    if let Some(outcome) = forest::try_minimize(crg, p) {
        return Ok(outcome);
    }
    let cap = simplex_cap::<T>();
    if crg.k() > cap {
        return Err(Error::SizeCap { what: "g_K(p) support enumeration", got: crg.k(), cap });
    }
    Ok(simplex::minimize(&cost_matrix(crg, p)))
}

/// Generic solve restricted to support enumeration.
pub(crate) fn solve_scalar_enumerated<T: Scalar>(crg: &Crg, p: &T) -> Result<SolveOutcome<T>> {
    let cap = simplex_cap::<T>();
    if crg.k() > cap {
        return Err(Error::SizeCap { what: "g_K(p) support enumeration", got: crg.k(), cap });
    }
    Ok(simplex::minimize(&cost_matrix(crg, p)))
}

/// Evaluates `g_K(p)` and its minimizer in the arithmetic mode of `p`.
pub fn solve_g(crg: &Crg, p: &PValue) -> Result<GRecord> {
    match p {
        PValue::Exact(_) => {
            let ps: BigRational = p_as_scalar(p)?;
            Ok(solve_scalar(crg, &ps)?.into_record())
        }
        PValue::Float(_) => {
            let ps: f64 = p_as_scalar(p)?;
            Ok(solve_scalar(crg, &ps)?.into_record())
        }
    }
}

/// Evaluates `g_K(p)` by support enumeration only, bypassing the structured
/// route. Useful as an independent oracle.
pub fn solve_g_enumerated(crg: &Crg, p: &PValue) -> Result<GRecord> {
    match p {
        PValue::Exact(_) => {
            let ps: BigRational = p_as_scalar(p)?;
            Ok(solve_scalar_enumerated(crg, &ps)?.into_record())
        }
        PValue::Float(_) => {
            let ps: f64 = p_as_scalar(p)?;
            Ok(solve_scalar_enumerated(crg, &ps)?.into_record())
        }
    }
}

/// `true` when `a > b` strictly; float mode demands a `TOL_G` margin.
fn strictly_greater<T: Scalar>(a: &T, b: &T) -> bool {
    *a > b.clone() + T::tol_g()
}

pub(crate) fn is_p_core_scalar<T: Scalar>(crg: &Crg, p: &T) -> Result<bool> {
    let record = solve_scalar(crg, p)?;
    // Primary test: every proper sub-CRG has strictly larger g. Deleting
    // single vertices suffices because g is monotone under sub-CRGs.
    let mut primary = true;
    if crg.k() > 1 {
        for v in 0..crg.k() {
            let sub = crg.delete_vertex(v)?;
            let sub_g = solve_scalar(&sub, p)?.g;
            if !strictly_greater(&sub_g, &record.g) {
                primary = false;
                break;
            }
        }
    }
    // Cross-check: unique full-support minimizer.
    let cross = record.unique && record.full_support;
    if primary != cross {
        return Err(Error::Inconsistency(format!(
            "p-core tests disagree: sub-CRG sweep says {primary}, minimizer says {cross} \
             (unique={}, full_support={})",
            record.unique, record.full_support
        )));
    }
    Ok(primary)
}

/// Decides whether `K` is `p`-core: every proper sub-CRG has strictly
/// larger `g` at `p`; equivalently the minimizer is unique with full
/// support. Both tests run and must agree.
pub fn is_p_core(crg: &Crg, p: &PValue) -> Result<bool> {
    check_p_interior(p)?;
    match p {
        PValue::Exact(_) => {
            let ps: BigRational = p_as_scalar(p)?;
            is_p_core_scalar(crg, &ps)
        }
        PValue::Float(_) => {
            let ps: f64 = p_as_scalar(p)?;
            is_p_core_scalar(crg, &ps)
        }
    }
}

fn check_p_interior(p: &PValue) -> Result<()> {
    let x = p.as_f64();
    if x <= 0.0 || x >= 1.0 {
        return Err(Error::domain(
            "p-core is defined for p in (0,1); use the structural 0-core/1-core checks at the endpoints",
        ));
    }
    Ok(())
}

/// Finds a p-core sub-CRG attaining `g_K(p)`, returned with the original
/// vertex indices it keeps.
pub(crate) fn p_core_reduction_scalar<T: Scalar>(crg: &Crg, p: &T) -> Result<(Crg, Vec<usize>)> {
    let mut current = crg.clone();
    let mut verts: Vec<usize> = (0..crg.k()).collect();
    let g = solve_scalar(&current, p)?.g;
    'outer: loop {
        if current.k() == 1 {
            break;
        }
        for v in 0..current.k() {
            let sub = current.delete_vertex(v)?;
            let sub_g = solve_scalar(&sub, p)?.g;
            if !strictly_greater(&sub_g, &g) {
                verts.remove(v);
                current = sub;
                continue 'outer;
            }
        }
        break;
    }
    Ok((current, verts))
}

pub fn p_core_reduction(crg: &Crg, p: &PValue) -> Result<(Crg, Vec<usize>)> {
    check_p_interior(p)?;
    match p {
        PValue::Exact(_) => {
            let ps: BigRational = p_as_scalar(p)?;
            p_core_reduction_scalar(crg, &ps)
        }
        PValue::Float(_) => {
            let ps: f64 = p_as_scalar(p)?;
            p_core_reduction_scalar(crg, &ps)
        }
    }
}

pub(crate) fn gray_degree_residual_scalar<T: Scalar>(crg: &Crg, p: &T) -> Result<T> {
    let record = solve_scalar(crg, p)?;
    let g = record.g.clone();
    let mut worst = T::zero();
    for v in 0..crg.k() {
        let residual = match crg.vcolor(v) {
            VertexColor::White => {
                // μ(u) = g/p on white vertices.
                (record.minimizer[v].clone() - g.clone() / p.clone()).abs_val()
            }
            VertexColor::Black => {
                // d_G(u) = (p-g)/p + ((1-2p)/p)·μ(u) on black vertices.
                let mut d_gray = T::zero();
                for u in crg.gray_neighbors(v) {
                    d_gray = d_gray + record.minimizer[u].clone();
                }
                let expected = (p.clone() - g.clone()) / p.clone()
                    + (T::one() - p.clone() - p.clone()) / p.clone()
                        * record.minimizer[v].clone();
                (d_gray - expected).abs_val()
            }
        };
        if residual > worst {
            worst = residual;
        }
    }
    Ok(worst)
}

/// Report from [`gray_degree_identity_check`].
#[derive(Debug, Clone, Serialize)]
pub struct GrayDegreeReport {
    pub g: Value,
    pub max_residual: Value,
}

/// Verifies the weighted-gray-degree identities satisfied by the minimizer
/// of a p-core CRG for `p ∈ (0, 1/2]`: white vertices carry mass `g/p`, and
/// every black vertex has gray degree `(p-g)/p + ((1-2p)/p)·μ(u)`. Returns
/// the largest residual (zero in exact mode).
pub fn gray_degree_identity_check(crg: &Crg, p: &PValue) -> Result<GrayDegreeReport> {
    check_p_interior(p)?;
    if p.as_f64() > 0.5 {
        return Err(Error::domain("gray-degree identity applies for p in (0, 1/2]"));
    }
    if !is_p_core(crg, p)? {
        return Err(Error::domain("gray-degree identity requires a p-core CRG"));
    }
    match p {
        PValue::Exact(_) => {
            let ps: BigRational = p_as_scalar(p)?;
            let g = solve_scalar(crg, &ps)?.g;
            Ok(GrayDegreeReport {
                g: g.into_value(),
                max_residual: gray_degree_residual_scalar(crg, &ps)?.into_value(),
            })
        }
        PValue::Float(_) => {
            let ps: f64 = p_as_scalar(p)?;
            let g = solve_scalar(crg, &ps)?.g;
            Ok(GrayDegreeReport {
                g: g.into_value(),
                max_residual: gray_degree_residual_scalar(crg, &ps)?.into_value(),
            })
        }
    }
}

/// Recolors a non-gray edge of a p-core CRG gray and reports both g values;
/// the new value is strictly smaller.
pub fn gray_replace_check(
    crg: &Crg,
    p: &PValue,
    edge: (usize, usize),
) -> Result<(GRecord, GRecord)> {
    check_p_interior(p)?;
    let (u, v) = edge;
    if u == v || u >= crg.k() || v >= crg.k() {
        return Err(Error::domain(format!("bad edge ({u},{v})")));
    }
    if crg.ecolor(u, v) == EdgeColor::Gray {
        return Err(Error::domain(format!("edge ({u},{v}) is already gray")));
    }
    if !is_p_core(crg, p)? {
        return Err(Error::domain("gray replacement requires a p-core CRG"));
    }
    let mut recolored = crg.clone();
    recolored.set_ecolor(u, v, EdgeColor::Gray);
    let before = solve_g(crg, p)?;
    let after = solve_g(&recolored, p)?;
    Ok((before, after))
}

/// Residual of the gray-join reciprocal identity
/// `1/g_{K⊕L} = 1/g_K + 1/g_L`; zero in exact mode.
pub fn join_identity_check(k: &Crg, l: &Crg, p: &PValue) -> Result<Value> {
    check_p_interior(p)?;
    match p {
        PValue::Exact(_) => {
            let ps: BigRational = p_as_scalar(p)?;
            Ok(join_identity_scalar(k, l, &ps)?.into_value())
        }
        PValue::Float(_) => {
            let ps: f64 = p_as_scalar(p)?;
            Ok(join_identity_scalar(k, l, &ps)?.into_value())
        }
    }
}

pub(crate) fn join_identity_scalar<T: Scalar>(k: &Crg, l: &Crg, p: &T) -> Result<T> {
    let join = k.gray_join(l);
    let g_join = solve_scalar(&join, p)?.g;
    let g_k = solve_scalar(k, p)?.g;
    let g_l = solve_scalar(l, p)?.g;
    Ok((T::one() / g_join - T::one() / g_k - T::one() / g_l).abs_val())
}

/// Fills the `p_core` field of a record for CLI output.
pub fn solve_with_core_flag(crg: &Crg, p: &PValue) -> Result<GRecord> {
    let mut record = solve_g(crg, p)?;
    let x = p.as_f64();
    if x > 0.0 && x < 1.0 {
        record.p_core = Some(is_p_core(crg, p)?);
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat_to_f64;

    fn ratio(n: i64, d: i64) -> PValue {
        PValue::from_ratio(n, d).unwrap()
    }

    fn exact_g(crg: &Crg, p: &PValue) -> BigRational {
        match solve_g(crg, p).unwrap().g {
            Value::Exact(r) => r,
            Value::Float(_) => panic!("expected exact mode"),
        }
    }

    #[test]
    fn closed_form_kwb() {
        // g_{K(w,b)}(p) = (w/p + b/(1-p))^{-1}.
        let p = ratio(1, 4);
        let pr = BigRational::from_ratio(1, 4);
        for (w, b) in [(1usize, 0usize), (0, 1), (1, 2), (2, 3)] {
            let crg = Crg::kwb(w, b).unwrap();
            let expected = BigRational::from_int(1)
                / (BigRational::from_int(w as i64) / pr.clone()
                    + BigRational::from_int(b as i64) / (BigRational::from_int(1) - pr.clone()));
            assert_eq!(exact_g(&crg, &p), expected, "K({w},{b})");
        }
    }

    #[test]
    fn p3_minimizer() {
        let p3 = Crg::path(3).unwrap();
        let rec = solve_g(&p3, &ratio(1, 4)).unwrap();
        assert_eq!(rec.g, Value::Exact(BigRational::from_ratio(3, 10)));
        let expected = [
            BigRational::from_ratio(3, 10),
            BigRational::from_ratio(2, 5),
            BigRational::from_ratio(3, 10),
        ];
        for (got, want) in rec.minimizer.iter().zip(expected) {
            assert_eq!(got.as_exact().unwrap(), &want);
        }
        assert!(rec.unique && rec.full_support);
        assert_eq!(rec.support, vec![0, 1, 2]);
    }

    #[test]
    fn single_vertex() {
        let white = Crg::kwb(1, 0).unwrap();
        for p in [ratio(1, 10), ratio(1, 4), ratio(2, 3)] {
            let g = exact_g(&white, &p);
            assert_eq!(Value::Exact(g), Value::Exact(p.as_exact().unwrap().clone()));
        }
    }

    #[test]
    fn forest_route_matches_enumeration() {
        let p = ratio(1, 4);
        for crg in [
            Crg::path(2).unwrap(),
            Crg::path(5).unwrap(),
            Crg::path(3).unwrap().white_join(&Crg::path(2).unwrap()),
            Crg::path(1).unwrap().white_join(&Crg::path(1).unwrap()),
        ] {
            let fast = solve_g(&crg, &p).unwrap();
            let slow = solve_g_enumerated(&crg, &p).unwrap();
            assert_eq!(fast.g, slow.g, "path solve mismatch on\n{crg}");
            assert_eq!(fast.unique, slow.unique, "uniqueness mismatch on\n{crg}");
            assert_eq!(fast.full_support, slow.full_support);
        }
    }

    #[test]
    fn float_mode_agrees_with_exact() {
        let crg = Crg::kwb(1, 2).unwrap();
        let exact = exact_g(&crg, &ratio(1, 4));
        let float = solve_g(&crg, &PValue::Float(0.25)).unwrap();
        assert!((float.g.as_f64() - rat_to_f64(&exact)).abs() < 1e-12);
    }

    #[test]
    fn p_core_examples() {
        let p = ratio(1, 4);
        assert!(is_p_core(&Crg::kwb(2, 3).unwrap(), &p).unwrap());
        assert!(is_p_core(&Crg::path(3).unwrap(), &p).unwrap());
        // A CRG with a black edge between black vertices is never p-core
        // for p in (0, 1/2].
        let mut bad = Crg::kwb(0, 2).unwrap();
        bad.set_ecolor(0, 1, EdgeColor::Black);
        assert!(!is_p_core(&bad, &p).unwrap());
        assert!(is_p_core(&bad, &PValue::from_ratio(0, 1).unwrap()).is_err());
    }

    #[test]
    fn gray_degree_identity_on_k12() {
        // K(1,2) at p=1/4: white mass is g/p = (3/20)/(1/4) = 3/5.
        let rec = solve_g(&Crg::kwb(1, 2).unwrap(), &ratio(1, 4)).unwrap();
        assert_eq!(rec.minimizer[0].as_exact().unwrap(), &BigRational::from_ratio(3, 5));
        let report = gray_degree_identity_check(&Crg::kwb(1, 2).unwrap(), &ratio(1, 4)).unwrap();
        assert_eq!(report.max_residual, Value::Exact(BigRational::from_int(0)));
    }

    #[test]
    fn gray_replace_on_p3() {
        let p3 = Crg::path(3).unwrap();
        let (before, after) = gray_replace_check(&p3, &ratio(1, 4), (0, 2)).unwrap();
        assert_eq!(before.g, Value::Exact(BigRational::from_ratio(3, 10)));
        assert_eq!(after.g, Value::Exact(BigRational::from_ratio(1, 4)));

        // Gray edges are rejected.
        assert!(gray_replace_check(&p3, &ratio(1, 4), (0, 1)).is_err());
        assert!(gray_replace_check(&Crg::kwb(1, 1).unwrap(), &ratio(1, 4), (0, 1)).is_err());
    }

    #[test]
    fn join_identity() {
        // 1/g_{K(1,1)}(1/3) = 1/g_{K(1,0)} + 1/g_{K(0,1)} = 3 + 3/2.
        let g = exact_g(&Crg::kwb(1, 1).unwrap(), &ratio(1, 3));
        assert_eq!(
            BigRational::from_int(1) / g,
            BigRational::from_ratio(9, 2)
        );
        let res = join_identity_check(
            &Crg::kwb(1, 0).unwrap(),
            &Crg::kwb(0, 1).unwrap(),
            &ratio(1, 3),
        )
        .unwrap();
        assert_eq!(res, Value::Exact(BigRational::from_int(0)));

        let res = join_identity_check(&Crg::path(2).unwrap(), &Crg::path(2).unwrap(), &ratio(1, 4))
            .unwrap();
        assert_eq!(res, Value::Exact(BigRational::from_int(0)));
    }
}
