//! Colored regularity graphs and their structural constructions.
//!
//! A CRG is a clique with black/white vertices and black/white/gray edges.
//! Gray is the permissive color: it never contributes weight to the
//! quadratic form and accepts both edges and non-edges under embedding.
//!
//! Vertex pairs are stored in a flat upper-triangular array in column order
//! (`pair_index`), so edge access never needs the vertex count.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{self, ColoredClique};
use crate::graphs::pair_index;
use crate::{Error, Result};

/// Cap on CRG canonicalization (brute-force permutation search).
pub const CRG_CANON_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexColor {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeColor {
    White,
    Black,
    Gray,
}

impl VertexColor {
    pub fn flip(self) -> Self {
        match self {
            VertexColor::White => VertexColor::Black,
            VertexColor::Black => VertexColor::White,
        }
    }

    fn as_char(self) -> char {
        match self {
            VertexColor::White => 'W',
            VertexColor::Black => 'B',
        }
    }
}

impl EdgeColor {
    pub fn flip(self) -> Self {
        match self {
            EdgeColor::White => EdgeColor::Black,
            EdgeColor::Black => EdgeColor::White,
            EdgeColor::Gray => EdgeColor::Gray,
        }
    }

    fn as_char(self) -> char {
        match self {
            EdgeColor::White => 'w',
            EdgeColor::Black => 'b',
            EdgeColor::Gray => 'g',
        }
    }
}

/// A colored regularity graph on vertices `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crg {
    vcolors: Vec<VertexColor>,
    ecolors: Vec<EdgeColor>,
}

impl Crg {
    pub fn new(vcolors: Vec<VertexColor>, ecolors: Vec<EdgeColor>) -> Result<Self> {
        let k = vcolors.len();
        if k == 0 {
            return Err(Error::domain("CRG must have at least one vertex"));
        }
        if ecolors.len() != k * (k - 1) / 2 {
            return Err(Error::domain(format!(
                "CRG on {k} vertices needs {} edge colors, got {}",
                k * (k - 1) / 2,
                ecolors.len()
            )));
        }
        Ok(Crg { vcolors, ecolors })
    }

    /// `K(w,b)`: `w` white and `b` black vertices, all edges gray. White
    /// vertices come first.
    pub fn kwb(w: usize, b: usize) -> Result<Self> {
        if w + b == 0 {
            return Err(Error::domain("K(0,0) is empty"));
        }
        let mut vcolors = vec![VertexColor::White; w];
        vcolors.extend(vec![VertexColor::Black; b]);
        let k = w + b;
        Crg::new(vcolors, vec![EdgeColor::Gray; k * (k - 1) / 2])
    }

    /// The path CRG `𝒫_n`: `n` black vertices whose gray edges form the
    /// path `0-1-…-(n-1)`; every other edge is white.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("path CRG needs at least one vertex"));
        }
        let mut crg = Crg::new(
            vec![VertexColor::Black; n],
            vec![EdgeColor::White; n * (n - 1) / 2],
        )?;
        for i in 1..n {
            crg.set_ecolor(i - 1, i, EdgeColor::Gray);
        }
        Ok(crg)
    }

    pub fn k(&self) -> usize {
        self.vcolors.len()
    }

    pub fn vcolor(&self, v: usize) -> VertexColor {
        self.vcolors[v]
    }

    pub fn ecolor(&self, u: usize, v: usize) -> EdgeColor {
        assert!(u != v, "no self-pairs");
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.ecolors[pair_index(i, j)]
    }

    pub fn set_ecolor(&mut self, u: usize, v: usize, c: EdgeColor) {
        assert!(u != v, "no self-pairs");
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.ecolors[pair_index(i, j)] = c;
    }

    pub fn vertex_colors(&self) -> &[VertexColor] {
        &self.vcolors
    }

    pub fn white_vertices(&self) -> Vec<usize> {
        (0..self.k()).filter(|&v| self.vcolors[v] == VertexColor::White).collect()
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        (0..self.k()).filter(|&v| self.vcolors[v] == VertexColor::Black).collect()
    }

    pub fn white_count(&self) -> usize {
        self.vcolors.iter().filter(|c| **c == VertexColor::White).count()
    }

    pub fn black_count(&self) -> usize {
        self.k() - self.white_count()
    }

    /// All unordered pairs with their colors.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (usize, usize, EdgeColor)> + '_ {
        (1..self.k()).flat_map(move |j| (0..j).map(move |i| (i, j, self.ecolor(i, j))))
    }

    pub fn count_edges(&self, c: EdgeColor) -> usize {
        self.ecolors.iter().filter(|e| **e == c).count()
    }

    pub fn gray_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.k()).filter(|&u| u != v && self.ecolor(u, v) == EdgeColor::Gray).collect()
    }

    pub fn gray_degree(&self, v: usize) -> usize {
        (0..self.k()).filter(|&u| u != v && self.ecolor(u, v) == EdgeColor::Gray).count()
    }

    /// Induced sub-CRG on `verts` (in the given order).
    pub fn sub_crg(&self, verts: &[usize]) -> Result<Self> {
        let vcolors: Vec<VertexColor> = verts.iter().map(|&v| self.vcolors[v]).collect();
        let mut ecolors = Vec::with_capacity(verts.len() * verts.len().saturating_sub(1) / 2);
        for j in 1..verts.len() {
            for i in 0..j {
                ecolors.push(self.ecolor(verts[i], verts[j]));
            }
        }
        Crg::new(vcolors, ecolors)
    }

    /// Sub-CRG with one vertex removed.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        let verts: Vec<usize> = (0..self.k()).filter(|&u| u != v).collect();
        self.sub_crg(&verts)
    }

    /// Disjoint union with all cross edges gray.
    pub fn gray_join(&self, other: &Crg) -> Crg {
        self.join(other, EdgeColor::Gray)
    }

    /// Disjoint union with all cross edges white.
    pub fn white_join(&self, other: &Crg) -> Crg {
        self.join(other, EdgeColor::White)
    }

    fn join(&self, other: &Crg, cross: EdgeColor) -> Crg {
        let ka = self.k();
        let k = ka + other.k();
        let mut vcolors = self.vcolors.clone();
        vcolors.extend_from_slice(&other.vcolors);
        let mut out = Crg::new(vcolors, vec![cross; k * (k - 1) / 2]).expect("nonempty");
        for (i, j, c) in self.edge_pairs() {
            out.set_ecolor(i, j, c);
        }
        for (i, j, c) in other.edge_pairs() {
            out.set_ecolor(ka + i, ka + j, c);
        }
        out
    }

    /// Swaps black and white on vertices and edges; gray is fixed. This is
    /// an involution and conjugates `p ↦ 1-p`.
    pub fn complement(&self) -> Crg {
        Crg {
            vcolors: self.vcolors.iter().map(|c| c.flip()).collect(),
            ecolors: self.ecolors.iter().map(|c| c.flip()).collect(),
        }
    }

    /// 0-core: only white and gray edges, and white edges only between
    /// black vertices.
    pub fn is_zero_core(&self) -> bool {
        self.edge_pairs().all(|(i, j, c)| match c {
            EdgeColor::Black => false,
            EdgeColor::White => {
                self.vcolors[i] == VertexColor::Black && self.vcolors[j] == VertexColor::Black
            }
            EdgeColor::Gray => true,
        })
    }

    /// 1-core: only black and gray edges, and black edges only between
    /// white vertices.
    pub fn is_one_core(&self) -> bool {
        self.edge_pairs().all(|(i, j, c)| match c {
            EdgeColor::White => false,
            EdgeColor::Black => {
                self.vcolors[i] == VertexColor::White && self.vcolors[j] == VertexColor::White
            }
            EdgeColor::Gray => true,
        })
    }

    /// Dalmatian substitution `K^ℓ(r)`: replaces the first `r` white
    /// vertices with `ℓ` black vertices joined by white edges. Each
    /// replacement block keeps the replaced vertex's edges to the rest of
    /// the CRG, and two blocks are joined by the color that joined their
    /// original white vertices.
    pub fn dalmatian(&self, ell: usize, r: usize) -> Result<Crg> {
        if !self.is_zero_core() {
            return Err(Error::domain("dalmatian substitution requires a 0-core CRG"));
        }
        if ell == 0 {
            return Err(Error::domain("dalmatian size must be positive"));
        }
        let whites = self.white_vertices();
        if r == 0 || r > whites.len() {
            return Err(Error::domain(format!(
                "dalmatian count r={r} outside 1..={}",
                whites.len()
            )));
        }
        let replaced = &whites[..r];
        let kept: Vec<usize> = (0..self.k()).filter(|v| !replaced.contains(v)).collect();

        // New vertex layout: kept originals first, then one block of ell
        // black vertices per replaced white vertex.
        let k_new = kept.len() + r * ell;
        let mut vcolors: Vec<VertexColor> = kept.iter().map(|&v| self.vcolors[v]).collect();
        vcolors.extend(vec![VertexColor::Black; r * ell]);
        let mut out = Crg::new(vcolors, vec![EdgeColor::Gray; k_new * (k_new - 1) / 2])?;

        let block_of = |idx: usize| replaced[(idx - kept.len()) / ell];
        for j in 1..k_new {
            for i in 0..j {
                let c = if j < kept.len() {
                    self.ecolor(kept[i], kept[j])
                } else if i < kept.len() {
                    self.ecolor(kept[i], block_of(j))
                } else if block_of(i) == block_of(j) {
                    EdgeColor::White
                } else {
                    self.ecolor(block_of(i), block_of(j))
                };
                out.set_ecolor(i, j, c);
            }
        }
        Ok(out)
    }

    // -- Serialization ------------------------------------------------------

    /// The CRG text format: vertex count, a row of vertex colors, then the
    /// upper-triangular edge rows.
    pub fn to_text(&self) -> String {
        let k = self.k();
        let mut out = format!("{k}\n");
        out.extend(self.vcolors.iter().map(|c| c.as_char()));
        out.push('\n');
        for i in 0..k.saturating_sub(1) {
            for j in i + 1..k {
                out.push(self.ecolor(i, j).as_char());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut offset = 0usize;
        let mut lines = Vec::new();
        for line in text.lines() {
            lines.push((offset, line.trim_end()));
            offset += line.len() + 1;
        }
        lines.retain(|(_, l)| !l.trim().is_empty());
        if lines.is_empty() {
            return Err(Error::Parse { offset: 0, msg: "empty CRG text".into() });
        }
        let k: usize = lines[0].1.trim().parse().map_err(|_| Error::Parse {
            offset: lines[0].0,
            msg: format!("bad vertex count {:?}", lines[0].1),
        })?;
        if k == 0 {
            return Err(Error::Parse { offset: lines[0].0, msg: "CRG must be nonempty".into() });
        }
        let expected_lines = 1 + 1 + k.saturating_sub(1);
        if lines.len() != expected_lines {
            return Err(Error::Parse {
                offset: lines.last().unwrap().0,
                msg: format!("expected {expected_lines} lines for k={k}, got {}", lines.len()),
            });
        }
        let (voff, vline) = lines[1];
        let vline = vline.trim();
        if vline.len() != k {
            return Err(Error::Parse {
                offset: voff,
                msg: format!("vertex color row must have {k} characters"),
            });
        }
        let mut vcolors = Vec::with_capacity(k);
        for (i, ch) in vline.chars().enumerate() {
            vcolors.push(match ch {
                'W' => VertexColor::White,
                'B' => VertexColor::Black,
                _ => {
                    return Err(Error::Parse {
                        offset: voff + i,
                        msg: format!("bad vertex color {ch:?} (want W or B)"),
                    })
                }
            });
        }
        let mut crg = Crg::new(vcolors, vec![EdgeColor::Gray; k * (k - 1) / 2])?;
        for i in 0..k.saturating_sub(1) {
            let (eoff, eline) = lines[2 + i];
            let eline = eline.trim();
            if eline.len() != k - i - 1 {
                return Err(Error::Parse {
                    offset: eoff,
                    msg: format!("edge row {} must have {} characters", i + 1, k - i - 1),
                });
            }
            for (t, ch) in eline.chars().enumerate() {
                let c = match ch {
                    'w' => EdgeColor::White,
                    'b' => EdgeColor::Black,
                    'g' => EdgeColor::Gray,
                    _ => {
                        return Err(Error::Parse {
                            offset: eoff + t,
                            msg: format!("bad edge color {ch:?} (want w, b or g)"),
                        })
                    }
                };
                crg.set_ecolor(i, i + 1 + t, c);
            }
        }
        Ok(crg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CrgJson::from(self)).expect("crg serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CrgJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

impl fmt::Display for Crg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// JSON mirror of the text format: `{k, vcolors, ecolors}` with the edge
/// rows as strings.
#[derive(Debug, Serialize, Deserialize)]
pub struct CrgJson {
    pub k: usize,
    pub vcolors: String,
    pub ecolors: Vec<String>,
}

impl From<&Crg> for CrgJson {
    fn from(crg: &Crg) -> Self {
        let k = crg.k();
        let vcolors: String = crg.vcolors.iter().map(|c| c.as_char()).collect();
        let ecolors = (0..k.saturating_sub(1))
            .map(|i| (i + 1..k).map(|j| crg.ecolor(i, j).as_char()).collect())
            .collect();
        CrgJson { k, vcolors, ecolors }
    }
}

impl TryFrom<CrgJson> for Crg {
    type Error = Error;

    fn try_from(raw: CrgJson) -> Result<Self> {
        let mut text = format!("{}\n{}\n", raw.k, raw.vcolors);
        for row in &raw.ecolors {
            text.push_str(row);
            text.push('\n');
        }
        Crg::from_text(&text)
    }
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

impl ColoredClique for Crg {
    fn size(&self) -> usize {
        self.k()
    }
    fn vertex_label(&self, v: usize) -> u8 {
        match self.vcolors[v] {
            VertexColor::White => 0,
            VertexColor::Black => 1,
        }
    }
    fn edge_label(&self, u: usize, v: usize) -> u8 {
        match self.ecolor(u, v) {
            EdgeColor::White => 0,
            EdgeColor::Black => 1,
            EdgeColor::Gray => 2,
        }
    }
}

/// Canonical key: equal keys iff the CRGs are isomorphic (color-preserving).
pub fn canonical_form(crg: &Crg) -> Result<Vec<u8>> {
    if crg.k() > CRG_CANON_CAP {
        return Err(Error::SizeCap { what: "CRG canonical form", got: crg.k(), cap: CRG_CANON_CAP });
    }
    Ok(canon::canonical_key(crg))
}

pub fn crg_isomorphic(a: &Crg, b: &Crg) -> Result<bool> {
    if a.k() != b.k()
        || a.white_count() != b.white_count()
        || a.count_edges(EdgeColor::White) != b.count_edges(EdgeColor::White)
        || a.count_edges(EdgeColor::Black) != b.count_edges(EdgeColor::Black)
    {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// All CRGs on exactly `k` vertices up to isomorphism, deterministically
/// ordered by canonical key.
pub fn enumerate_crgs(k: usize) -> Result<Vec<Crg>> {
    if k > CRG_CANON_CAP {
        return Err(Error::SizeCap { what: "CRG enumeration", got: k, cap: CRG_CANON_CAP });
    }
    let mut level: Vec<Crg> = vec![
        Crg::new(vec![VertexColor::White], vec![]).unwrap(),
        Crg::new(vec![VertexColor::Black], vec![]).unwrap(),
    ];
    for size in 1..k {
        let mut seen = std::collections::BTreeMap::new();
        for crg in &level {
            for vc in [VertexColor::White, VertexColor::Black] {
                let mut combo = vec![EdgeColor::White; size];
                loop {
                    let mut vcolors = crg.vcolors.clone();
                    vcolors.push(vc);
                    let mut ecolors = crg.ecolors.clone();
                    ecolors.extend_from_slice(&combo);
                    let next = Crg::new(vcolors, ecolors)?;
                    seen.entry(canonical_form(&next)?).or_insert(next);
                    if !advance(&mut combo) {
                        break;
                    }
                }
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

fn advance(combo: &mut [EdgeColor]) -> bool {
    for c in combo.iter_mut() {
        *c = match *c {
            EdgeColor::White => EdgeColor::Black,
            EdgeColor::Black => EdgeColor::Gray,
            EdgeColor::Gray => {
                *c = EdgeColor::White;
                continue;
            }
        };
        return true;
    }
    false
}

/// Builds the 0-core CRG with `w` white vertices and the given white-edge
/// graph among its black vertices; all other edges are gray. Every 0-core
/// CRG has this form.
pub fn zero_core_from_graph(w: usize, white_edges: &crate::graphs::SimpleGraph) -> Result<Crg> {
    let b = white_edges.n();
    let mut crg = Crg::kwb(w, b)?;
    for (i, j) in white_edges.edges() {
        crg.set_ecolor(w + i, w + j, EdgeColor::White);
    }
    Ok(crg)
}

/// A probability mass on the vertices of a CRG.
///
/// All weights share one arithmetic mode; they are nonnegative, sum to one
/// (exactly in exact mode, within 1e-12 in float mode) and have nonempty
/// support.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbMass {
    weights: Vec<crate::value::Value>,
}

impl ProbMass {
    pub fn new(weights: Vec<crate::value::Value>) -> Result<Self> {
        use crate::value::Value;
        use num::{BigRational, Zero};
        if weights.is_empty() {
            return Err(Error::domain("probability mass on an empty vertex set"));
        }
        let exact = weights.iter().all(|w| matches!(w, Value::Exact(_)));
        let float = weights.iter().all(|w| matches!(w, Value::Float(_)));
        if !exact && !float {
            return Err(Error::domain("probability mass mixes exact and float weights"));
        }
        if exact {
            let mut sum = BigRational::zero();
            for w in &weights {
                let r = w.as_exact().unwrap();
                if r < &BigRational::zero() {
                    return Err(Error::domain("negative probability weight"));
                }
                sum += r;
            }
            if sum != BigRational::from_integer(1.into()) {
                return Err(Error::domain("probability mass must sum to 1"));
            }
        } else {
            let sum: f64 = weights.iter().map(|w| w.as_f64()).sum();
            if weights.iter().any(|w| w.as_f64() < -1e-12) {
                return Err(Error::domain("negative probability weight"));
            }
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::domain(format!("probability mass sums to {sum}, not 1")));
            }
        }
        if weights.iter().all(|w| w.as_f64() <= 0.0) {
            return Err(Error::domain("probability mass has empty support"));
        }
        Ok(ProbMass { weights })
    }

    /// The exact uniform distribution on `k` vertices.
    pub fn uniform(k: usize) -> Result<Self> {
        use num::BigRational;
        if k == 0 {
            return Err(Error::domain("probability mass on an empty vertex set"));
        }
        let w = crate::value::Value::Exact(BigRational::new(1.into(), (k as i64).into()));
        ProbMass::new(vec![w; k])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[crate::value::Value] {
        &self.weights
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.weights[0], crate::value::Value::Exact(_))
    }

    pub fn as_exact(&self) -> Option<Vec<num::BigRational>> {
        self.weights.iter().map(|w| w.as_exact().cloned()).collect()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w.as_f64()).collect()
    }
}

/// Decomposes a CRG that is a white join of path CRGs into the ordered
/// vertex lists of its gray paths. Returns `None` if the CRG is not of that
/// form (some vertex white, some edge black, gray degree above two, or a
/// gray cycle).
pub(crate) fn linear_forest_components(crg: &Crg) -> Option<Vec<Vec<usize>>> {
    let k = crg.k();
    if crg.vcolors.iter().any(|c| *c == VertexColor::White) {
        return None;
    }
    if crg.ecolors.iter().any(|c| *c == EdgeColor::Black) {
        return None;
    }
    if (0..k).any(|v| crg.gray_degree(v) > 2) {
        return None;
    }
    let mut visited = vec![false; k];
    let mut components = Vec::new();
    // Walk each path from an endpoint (gray degree ≤ 1).
    for start in 0..k {
        if visited[start] || crg.gray_degree(start) > 1 {
            continue;
        }
        let mut path = vec![start];
        visited[start] = true;
        let mut prev = start;
        let mut cur = start;
        loop {
            let next = crg
                .gray_neighbors(cur)
                .into_iter()
                .find(|&u| u != prev && !visited[u]);
            match next {
                Some(u) => {
                    visited[u] = true;
                    path.push(u);
                    prev = cur;
                    cur = u;
                }
                None => break,
            }
        }
        components.push(path);
    }
    if visited.iter().any(|v| !v) {
        // Leftover vertices all have gray degree 2: a gray cycle.
        return None;
    }
    components.sort_by_key(|p| (p.len(), p[0]));
    Some(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kwb_shapes() {
        let k = Crg::kwb(2, 1).unwrap();
        assert_eq!(k.k(), 3);
        assert_eq!(k.white_count(), 2);
        assert_eq!(k.count_edges(EdgeColor::Gray), 3);
        assert!(Crg::kwb(0, 0).is_err());
        let single = Crg::kwb(1, 0).unwrap();
        assert_eq!(single.k(), 1);
        assert_eq!(single.vcolor(0), VertexColor::White);
    }

    #[test]
    fn path_crg_structure() {
        let p1 = Crg::path(1).unwrap();
        assert!(crg_isomorphic(&p1, &Crg::kwb(0, 1).unwrap()).unwrap());

        let p3 = Crg::path(3).unwrap();
        assert_eq!(p3.ecolor(0, 1), EdgeColor::Gray);
        assert_eq!(p3.ecolor(1, 2), EdgeColor::Gray);
        assert_eq!(p3.ecolor(0, 2), EdgeColor::White);

        let p5 = Crg::path(5).unwrap();
        assert_eq!(p5.count_edges(EdgeColor::Gray), 4);
        assert_eq!(p5.count_edges(EdgeColor::White), 6);
        assert!(p5.is_zero_core());
    }

    #[test]
    fn joins() {
        let a = Crg::kwb(1, 0).unwrap();
        let b = Crg::kwb(0, 1).unwrap();
        assert!(crg_isomorphic(&a.gray_join(&b), &Crg::kwb(1, 1).unwrap()).unwrap());

        let p2 = Crg::path(2).unwrap();
        let wj = p2.white_join(&p2);
        assert_eq!(wj.k(), 4);
        assert_eq!(wj.black_count(), 4);
        assert_eq!(wj.count_edges(EdgeColor::Gray), 2);
        assert_eq!(wj.count_edges(EdgeColor::White), 4);

        // Gray join is associative up to isomorphism.
        let left = a.gray_join(&b).gray_join(&p2);
        let right = a.gray_join(&b.gray_join(&p2));
        assert!(crg_isomorphic(&left, &right).unwrap());
    }

    #[test]
    fn complement_is_involution() {
        let p3 = Crg::path(3).unwrap();
        let c = p3.complement();
        assert_eq!(c.white_count(), 3);
        assert_eq!(c.ecolor(0, 1), EdgeColor::Gray);
        assert_eq!(c.ecolor(0, 2), EdgeColor::Black);
        assert_eq!(c.complement(), p3);
        assert!(crg_isomorphic(&Crg::kwb(2, 1).unwrap().complement(), &Crg::kwb(1, 2).unwrap()).unwrap());
    }

    #[test]
    fn core_checks() {
        assert!(Crg::path(4).unwrap().is_zero_core());
        let k = Crg::kwb(2, 2).unwrap();
        assert!(k.is_zero_core() && k.is_one_core());

        let mut bad = Crg::kwb(0, 2).unwrap();
        bad.set_ecolor(0, 1, EdgeColor::Black);
        assert!(!bad.is_zero_core());

        // Conjugation: K is 0-core iff its complement is 1-core.
        for crg in enumerate_crgs(3).unwrap() {
            assert_eq!(crg.is_zero_core(), crg.complement().is_one_core());
        }
    }

    #[test]
    fn dalmatian_identities() {
        // K(1,t-1)^1(1) = K(0,t).
        for t in 1..=4 {
            let k = Crg::kwb(1, t - 1).unwrap();
            let d = k.dalmatian(1, 1).unwrap();
            assert!(crg_isomorphic(&d, &Crg::kwb(0, t).unwrap()).unwrap());
        }

        // K(2,0)^2(1): one white and two black vertices, white edge inside
        // the block, gray edges across.
        let d = Crg::kwb(2, 0).unwrap().dalmatian(2, 1).unwrap();
        assert_eq!(d.k(), 3);
        assert_eq!(d.white_count(), 1);
        assert_eq!(d.count_edges(EdgeColor::White), 1);
        assert_eq!(d.count_edges(EdgeColor::Gray), 2);
        assert_eq!(d.ecolor(1, 2), EdgeColor::White);

        // K^n(r) = (K^n(r-1))^n(1).
        let k = Crg::kwb(3, 1).unwrap();
        let lhs = k.dalmatian(2, 2).unwrap();
        let rhs = k.dalmatian(2, 1).unwrap().dalmatian(2, 1).unwrap();
        assert!(crg_isomorphic(&lhs, &rhs).unwrap());

        assert!(Crg::kwb(1, 1).unwrap().dalmatian(2, 2).is_err());
        let mut not_core = Crg::kwb(2, 0).unwrap();
        not_core.set_ecolor(0, 1, EdgeColor::Black);
        assert!(not_core.dalmatian(1, 1).is_err());
    }

    #[test]
    fn text_format_roundtrip() {
        let p3 = Crg::path(3).unwrap();
        let text = p3.to_text();
        assert_eq!(text, "3\nBBB\ngw\ng\n");
        assert_eq!(Crg::from_text(&text).unwrap(), p3);

        let single = Crg::kwb(1, 0).unwrap();
        assert_eq!(single.to_text(), "1\nW\n");
        assert_eq!(Crg::from_text("1\nW\n").unwrap(), single);

        assert!(Crg::from_text("2\nWX\ng\n").is_err());
        assert!(Crg::from_text("2\nWB\nz\n").is_err());
        assert!(Crg::from_text("").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let k = Crg::kwb(1, 2).unwrap();
        let json = k.to_json();
        assert_eq!(Crg::from_json(&json).unwrap(), k);
    }

    #[test]
    fn isomorphism_examples() {
        let a = Crg::kwb(1, 2).unwrap();
        let b = Crg::kwb(2, 1).unwrap();
        assert!(!crg_isomorphic(&a, &b).unwrap());
        assert!(!crg_isomorphic(&Crg::path(3).unwrap(), &Crg::kwb(0, 3).unwrap()).unwrap());

        let ab = a.gray_join(&b);
        let ba = b.gray_join(&a);
        assert!(crg_isomorphic(&ab, &ba).unwrap());
    }

    #[test]
    fn enumerate_crg_counts() {
        assert_eq!(enumerate_crgs(1).unwrap().len(), 2);
        // 2 vertices: 3 vertex-color classes × 3 edge colors.
        assert_eq!(enumerate_crgs(2).unwrap().len(), 9);
        // Spot check determinism.
        let a = enumerate_crgs(3).unwrap();
        let b = enumerate_crgs(3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn linear_forest_recognition() {
        let p3 = Crg::path(3).unwrap();
        let p2 = Crg::path(2).unwrap();
        let forest = p3.white_join(&p2);
        let comps = linear_forest_components(&forest).unwrap();
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 3]);

        assert!(linear_forest_components(&Crg::kwb(1, 2).unwrap()).is_none());

        // K(0,3) is an all-gray triangle, not a linear forest.
        assert!(linear_forest_components(&Crg::kwb(0, 3).unwrap()).is_none());
    }
}
