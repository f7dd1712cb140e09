//! Simple graphs, forbidden-family specifications and chromatic invariants.
//!
//! Graphs here are small: they describe forbidden induced subgraphs and the
//! toy instances of the exhaustive distance oracle. Adjacency is stored as a
//! flat upper-triangular bit array in graph6 column order, which makes the
//! graph6 codec a direct transcription.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{self, ColoredClique};
use crate::{Error, Result};

/// Cap on exact chromatic-number instances.
pub const CHROMATIC_CAP: usize = 12;
/// Cap on graph canonicalization.
pub const GRAPH_CANON_CAP: usize = 12;
/// Cap on parsed graph sizes; keeps malformed inputs from allocating wildly.
const PARSE_CAP: usize = 1024;

/// Index of pair `{i,j}` (`i < j`) in a flat upper-triangular array laid out
/// column by column: all pairs with larger endpoint 1, then 2, and so on.
#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    bits: Vec<bool>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "graphs have at least one vertex");
        SimpleGraph { n, bits: vec![false; n * (n - 1) / 2] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.set_edge(u, v, true);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        g.bits.iter_mut().for_each(|b| *b = true);
        g
    }

    /// The cycle `C_n`, `n ≥ 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Self::empty(n);
        for i in 0..n {
            g.set_edge(i, (i + 1) % n, true);
        }
        g
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..n {
            g.set_edge(i - 1, i, true);
        }
        g
    }

    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        assert!(s >= 1 && t >= 1);
        let mut g = Self::empty(s + t);
        for u in 0..s {
            for v in s..s + t {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// The star `K_{1,k}`; vertex 0 is the center.
    pub fn star(k: usize) -> Self {
        Self::complete_bipartite(1, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.bits[pair_index(i, j)]
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(u != v, "no self-loops");
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.bits[pair_index(i, j)] = present;
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |j| (0..j).map(move |i| (i, j))).filter(|&(i, j)| self.has_edge(i, j))
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn complement(&self) -> Self {
        SimpleGraph { n: self.n, bits: self.bits.iter().map(|b| !b).collect() }
    }

    pub fn is_edgeless(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn is_complete(&self) -> bool {
        self.bits.iter().all(|b| *b)
    }

    /// Induced subgraph on `verts`, in the given order.
    pub fn induced(&self, verts: &[usize]) -> Self {
        let mut g = Self::empty(verts.len());
        for j in 1..verts.len() {
            for i in 0..j {
                if self.has_edge(verts[i], verts[j]) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Number of symmetric-difference edits between two graphs on the same
    /// vertex set.
    pub fn edit_edges(&self, other: &Self) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::domain(format!(
                "vertex count mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count())
    }
}

impl fmt::Display for SimpleGraph {
    // Graphs display as their graph6 form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", emit_graph6(self))
    }
}

// ---------------------------------------------------------------------------
// graph6 codec
// ---------------------------------------------------------------------------

/// Encodes a graph in graph6 format.
pub fn emit_graph6(g: &SimpleGraph) -> String {
    let mut out = Vec::new();
    let n = g.n;
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let nbits = n * (n - 1) / 2;
    let mut acc = 0u8;
    let mut filled = 0;
    for idx in 0..nbits {
        acc = (acc << 1) | u8::from(g.bits[idx]);
        filled += 1;
        if filled == 6 {
            out.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("ascii by construction")
}

/// Parses a graph6 string; errors carry the byte offset of the problem.
pub fn parse_graph6(text: &str) -> Result<SimpleGraph> {
    let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut base = 0usize;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    if bytes.is_empty() {
        return Err(Error::Parse { offset: base, msg: "empty graph6 string".into() });
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse {
                offset: base + i,
                msg: format!("byte 0x{b:02x} outside graph6 alphabet"),
            });
        }
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::Parse {
                offset: base + 1,
                msg: "graphs beyond 258047 vertices are not supported".into(),
            });
        }
        if bytes.len() < 4 {
            return Err(Error::Parse { offset: base, msg: "truncated extended size header".into() });
        }
        let n = (usize::from(bytes[1] - 63) << 12)
            | (usize::from(bytes[2] - 63) << 6)
            | usize::from(bytes[3] - 63);
        (n, 4)
    } else {
        (usize::from(bytes[0] - 63), 1)
    };
    if n == 0 {
        return Err(Error::Parse { offset: base, msg: "graph6 with zero vertices".into() });
    }
    if n > PARSE_CAP {
        return Err(Error::SizeCap { what: "graph6 parse", got: n, cap: PARSE_CAP });
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        return Err(Error::Parse {
            offset: base + bytes.len().min(pos + nbytes),
            msg: format!("expected {} data bytes for n={}, found {}", nbytes, n, bytes.len() - pos),
        });
    }
    let mut g = SimpleGraph::empty(n);
    let mut idx = 0usize;
    while idx < nbits {
        let b = bytes[pos] - 63;
        for k in 0..6 {
            let bit = (b >> (5 - k)) & 1 == 1;
            if idx < nbits {
                g.bits[idx] = bit;
                idx += 1;
            } else if bit {
                return Err(Error::Parse {
                    offset: base + pos,
                    msg: "nonzero padding bits".into(),
                });
            }
        }
        pos += 1;
    }
    Ok(g)
}

/// Parses the fallback adjacency-list format: one `u v` pair per line,
/// 0-indexed; an optional leading line with a single integer fixes the
/// vertex count.
pub fn parse_adjacency_list(text: &str) -> Result<SimpleGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            match toks.as_slice() {
                [single] if n.is_none() && edges.is_empty() => {
                    n = Some(single.parse().map_err(|_| Error::Parse {
                        offset,
                        msg: format!("bad vertex count {single:?}"),
                    })?);
                }
                [a, b] => {
                    let u: usize = a.parse().map_err(|_| Error::Parse {
                        offset,
                        msg: format!("bad vertex id {a:?}"),
                    })?;
                    let v: usize = b.parse().map_err(|_| Error::Parse {
                        offset,
                        msg: format!("bad vertex id {b:?}"),
                    })?;
                    if u == v {
                        return Err(Error::Parse { offset, msg: "self-loop".into() });
                    }
                    edges.push((u, v));
                }
                _ => {
                    return Err(Error::Parse {
                        offset,
                        msg: format!("expected 'u v', got {trimmed:?}"),
                    })
                }
            }
        }
        offset += line.len() + 1;
    }
    let needed = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
    let n = n.unwrap_or(needed);
    if needed > n {
        return Err(Error::Parse {
            offset: 0,
            msg: format!("edge endpoint {} exceeds declared vertex count {n}", needed - 1),
        });
    }
    Ok(SimpleGraph::from_edges(n, &edges))
}

// ---------------------------------------------------------------------------
// Isomorphism and enumeration
// ---------------------------------------------------------------------------

struct GraphClique<'a>(&'a SimpleGraph);

impl ColoredClique for GraphClique<'_> {
    fn size(&self) -> usize {
        self.0.n
    }
    fn vertex_label(&self, _v: usize) -> u8 {
        0
    }
    fn edge_label(&self, u: usize, v: usize) -> u8 {
        u8::from(self.0.has_edge(u, v))
    }
}

/// Canonical key; equal keys iff isomorphic.
pub fn graph_canonical_key(g: &SimpleGraph) -> Result<Vec<u8>> {
    if g.n > GRAPH_CANON_CAP {
        return Err(Error::SizeCap { what: "graph canonical form", got: g.n, cap: GRAPH_CANON_CAP });
    }
    Ok(canon::canonical_key(&GraphClique(g)))
}

pub fn graphs_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool> {
    if a.n != b.n || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(graph_canonical_key(a)? == graph_canonical_key(b)?)
}

/// All graphs on exactly `n` vertices, up to isomorphism, in a deterministic
/// order.
pub fn enumerate_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > GRAPH_CANON_CAP {
        return Err(Error::SizeCap { what: "graph enumeration", got: n, cap: GRAPH_CANON_CAP });
    }
    let mut level: Vec<SimpleGraph> = vec![SimpleGraph::empty(1)];
    for k in 1..n {
        let mut seen = std::collections::BTreeMap::new();
        for g in &level {
            for mask in 0u32..(1 << k) {
                let mut h = SimpleGraph::empty(k + 1);
                h.bits[..g.bits.len()].copy_from_slice(&g.bits);
                for u in 0..k {
                    if mask >> u & 1 == 1 {
                        h.set_edge(u, k, true);
                    }
                }
                let key = graph_canonical_key(&h)?;
                seen.entry(key).or_insert(h);
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

/// Does `host` contain `pattern` as an induced subgraph?
pub fn has_induced(host: &SimpleGraph, pattern: &SimpleGraph) -> bool {
    if pattern.n > host.n {
        return false;
    }
    let mut order: Vec<usize> = (0..pattern.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    let mut map = vec![usize::MAX; pattern.n];
    let mut used = vec![false; host.n];
    induced_search(host, pattern, &order, 0, &mut map, &mut used)
}

fn induced_search(
    host: &SimpleGraph,
    pattern: &SimpleGraph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    'cand: for hv in 0..host.n {
        if used[hv] {
            continue;
        }
        for &pu in &order[..depth] {
            if pattern.has_edge(pu, pv) != host.has_edge(map[pu], hv) {
                continue 'cand;
            }
        }
        map[pv] = hv;
        used[hv] = true;
        if induced_search(host, pattern, order, depth + 1, map, used) {
            return true;
        }
        used[hv] = false;
        map[pv] = usize::MAX;
    }
    false
}

// ---------------------------------------------------------------------------
// Chromatic invariants
// ---------------------------------------------------------------------------

/// Exact chromatic number by branch and bound, seeded with a maximum-clique
/// lower bound and a greedy upper bound.
pub fn chromatic_number(g: &SimpleGraph) -> Result<usize> {
    chromatic_number_capped(g, CHROMATIC_CAP)
}

pub fn chromatic_number_capped(g: &SimpleGraph, cap: usize) -> Result<usize> {
    if g.n > cap {
        return Err(Error::SizeCap { what: "chromatic number", got: g.n, cap });
    }
    if g.is_edgeless() {
        return Ok(1);
    }
    let lower = max_clique_size(g);
    let upper = greedy_coloring_bound(g);
    for k in lower..upper {
        if k_colorable(g, k) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Clique cover number: chromatic number of the complement.
pub fn clique_cover_number(g: &SimpleGraph) -> Result<usize> {
    chromatic_number(&g.complement())
}

fn greedy_coloring_bound(g: &SimpleGraph) -> usize {
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut color = vec![usize::MAX; g.n];
    let mut max = 0;
    for &v in &order {
        let mut taken = 0u64;
        for u in 0..g.n {
            if g.has_edge(u, v) && color[u] != usize::MAX {
                taken |= 1 << color[u];
            }
        }
        let c = (0..).find(|&c| taken >> c & 1 == 0).unwrap();
        color[v] = c;
        max = max.max(c + 1);
    }
    max
}

/// Maximum clique size by branch-and-bound over bitmask candidate sets.
pub fn max_clique_size(g: &SimpleGraph) -> usize {
    let n = g.n;
    let adj: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| g.has_edge(u, v)).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut best = 0;
    clique_search(&adj, 0, (1u32 << n) - 1, &mut best);
    best
}

fn clique_search(adj: &[u32], r_size: usize, p: u32, best: &mut usize) {
    *best = (*best).max(r_size);
    if r_size + (p.count_ones() as usize) <= *best {
        return;
    }
    // Candidates after v only, so each clique is visited once.
    let mut cands = p;
    while cands != 0 {
        let v = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        clique_search(adj, r_size + 1, cands & adj[v], best);
        if r_size + (cands.count_ones() as usize) <= *best {
            return;
        }
    }
}

fn k_colorable(g: &SimpleGraph, k: usize) -> bool {
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut color = vec![usize::MAX; g.n];
    color_search(g, &order, 0, k, 0, &mut color)
}

fn color_search(
    g: &SimpleGraph,
    order: &[usize],
    depth: usize,
    k: usize,
    used_colors: usize,
    color: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    // Symmetry break: a fresh color may only be the next unused one.
    let limit = k.min(used_colors + 1);
    'c: for c in 0..limit {
        for u in 0..g.n {
            if g.has_edge(u, v) && color[u] == c {
                continue 'c;
            }
        }
        color[v] = c;
        if color_search(g, order, depth + 1, k, used_colors.max(c + 1), color) {
            return true;
        }
        color[v] = usize::MAX;
    }
    false
}

// ---------------------------------------------------------------------------
// Forbidden-family specifications
// ---------------------------------------------------------------------------

/// A parametric family of forbidden graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilyGenerator {
    /// All cycles `C_j` with `j ≥ m` (`m ≥ 3`).
    CyclesGe { m: usize },
    /// The star `K_{1,k}`.
    Star { k: usize },
    /// The complete bipartite graph `K_{s,t}`.
    CompleteBipartite { s: usize, t: usize },
}

impl FamilyGenerator {
    /// Instances on at most `max_n` vertices. For `cycles_ge` this is the
    /// full list `C_m..C_max_n`; the other generators have one instance.
    pub fn members_up_to(&self, max_n: usize) -> Vec<SimpleGraph> {
        match *self {
            FamilyGenerator::CyclesGe { m } => {
                if max_n >= m {
                    (m..=max_n).map(SimpleGraph::cycle).collect()
                } else {
                    vec![]
                }
            }
            FamilyGenerator::Star { k } => {
                if k + 1 <= max_n {
                    vec![SimpleGraph::star(k)]
                } else {
                    vec![]
                }
            }
            FamilyGenerator::CompleteBipartite { s, t } => {
                if s + t <= max_n {
                    vec![SimpleGraph::complete_bipartite(s, t)]
                } else {
                    vec![]
                }
            }
        }
    }

    /// Representatives that realize the generator's minimum chromatic
    /// number. Cycles contribute one instance of each parity, which covers
    /// the minimum over the whole tail.
    fn chi_representatives(&self) -> Vec<SimpleGraph> {
        match *self {
            FamilyGenerator::CyclesGe { m } => vec![SimpleGraph::cycle(m), SimpleGraph::cycle(m + 1)],
            FamilyGenerator::Star { k } => vec![SimpleGraph::star(k)],
            FamilyGenerator::CompleteBipartite { s, t } => {
                vec![SimpleGraph::complete_bipartite(s, t)]
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            FamilyGenerator::CyclesGe { m } if m < 3 => {
                Err(Error::domain(format!("cycles_ge requires m >= 3, got {m}")))
            }
            FamilyGenerator::Star { k } if k < 1 => Err(Error::domain("star requires k >= 1")),
            FamilyGenerator::CompleteBipartite { s, t } if s < 1 || t < 1 => {
                Err(Error::domain("complete_bipartite requires s,t >= 1"))
            }
            _ => Ok(()),
        }
    }
}

/// A forbidden family: finitely many explicit graphs plus parametric
/// generators.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub finite: Vec<SimpleGraph>,
    pub generators: Vec<FamilyGenerator>,
    /// Optional user cap on generator instantiation; when absent, callers
    /// that test against a CRG use their own bound policy.
    pub cycle_test_bound: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct FamilySpecJson {
    #[serde(default)]
    forbidden: Vec<String>,
    #[serde(default)]
    families: Vec<FamilyGenerator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycle_test_bound: Option<usize>,
}

impl FamilySpec {
    pub fn new(finite: Vec<SimpleGraph>, generators: Vec<FamilyGenerator>) -> Result<Self> {
        let spec = FamilySpec { finite, generators, cycle_test_bound: None };
        spec.validate()?;
        Ok(spec)
    }

    /// A family with a single forbidden graph.
    pub fn single(g: SimpleGraph) -> Self {
        FamilySpec { finite: vec![g], generators: vec![], cycle_test_bound: None }
    }

    fn validate(&self) -> Result<()> {
        if self.finite.is_empty() && self.generators.is_empty() {
            return Err(Error::domain("family must have at least one member"));
        }
        for g in &self.generators {
            g.validate()?;
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FamilySpecJson = serde_json::from_str(text)?;
        let mut finite = Vec::new();
        for s in &raw.forbidden {
            finite.push(parse_graph6(s)?);
        }
        let spec = FamilySpec { finite, generators: raw.families, cycle_test_bound: raw.cycle_test_bound };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let raw = FamilySpecJson {
            forbidden: self.finite.iter().map(emit_graph6).collect(),
            families: self.generators.clone(),
            cycle_test_bound: self.cycle_test_bound,
        };
        serde_json::to_string(&raw).expect("spec serialization")
    }

    /// Content digest of the family, used to address catalog cache entries.
    pub fn property_hash(&self) -> String {
        let mut forb: Vec<String> = self.finite.iter().map(emit_graph6).collect();
        forb.sort();
        let mut gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| serde_json::to_string(g).expect("generator serialization"))
            .collect();
        gens.sort();
        let mut hasher = Sha256::new();
        hasher.update(forb.join("|"));
        hasher.update(";");
        hasher.update(gens.join("|"));
        if let Some(b) = self.cycle_test_bound {
            hasher.update(format!(";ctb={b}"));
        }
        let digest = hasher.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Does the family contain an anti-clique (an edgeless member)?
    pub fn contains_anticlique(&self) -> bool {
        self.finite.iter().any(SimpleGraph::is_edgeless)
    }

    /// Does the family contain a clique?
    pub fn contains_clique(&self) -> bool {
        // Generators all produce non-complete graphs on ≥ 3 vertices,
        // except K_{1,1} = K_2.
        self.finite.iter().any(SimpleGraph::is_complete)
            || self.generators.iter().any(|g| {
                matches!(g, FamilyGenerator::Star { k: 1 })
                    || matches!(g, FamilyGenerator::CompleteBipartite { s: 1, t: 1 })
            })
    }

    /// All members on at most `max_n` vertices.
    pub fn members_up_to(&self, max_n: usize) -> Vec<SimpleGraph> {
        let mut out: Vec<SimpleGraph> =
            self.finite.iter().filter(|g| g.n() <= max_n).cloned().collect();
        for gen in &self.generators {
            out.extend(gen.members_up_to(max_n));
        }
        out
    }

    /// `χ(𝓕)`: the minimum chromatic number over the family.
    pub fn family_chi(&self) -> Result<usize> {
        self.validate()?;
        let mut best: Option<usize> = None;
        for g in &self.finite {
            let c = chromatic_number(g)?;
            best = Some(best.map_or(c, |b| b.min(c)));
        }
        for gen in &self.generators {
            for g in gen.chi_representatives() {
                let c = chromatic_number(&g)?;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
        best.ok_or_else(|| Error::domain("family must have at least one member"))
    }

    /// `χ̄(𝓕)`: the minimum clique cover number over the family.
    pub fn family_clique_cover(&self) -> Result<usize> {
        self.validate()?;
        let mut best: Option<usize> = None;
        for g in &self.finite {
            let c = clique_cover_number(g)?;
            best = Some(best.map_or(c, |b| b.min(c)));
        }
        for gen in &self.generators {
            for g in gen.chi_representatives() {
                let c = clique_cover_number(&g)?;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
        best.ok_or_else(|| Error::domain("family must have at least one member"))
    }

    /// The complemented family. Generators have no symbolic complement here,
    /// so their presence is an error.
    pub fn complemented(&self) -> Result<FamilySpec> {
        if !self.generators.is_empty() {
            return Err(Error::Unsupported(
                "complement of a parametric family generator".into(),
            ));
        }
        Ok(FamilySpec {
            finite: self.finite.iter().map(SimpleGraph::complement).collect(),
            generators: vec![],
            cycle_test_bound: self.cycle_test_bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_star_roundtrip() {
        // "D?{" is the 5-vertex star K_{1,4} with center 4.
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(4), 4);
        assert_eq!(emit_graph6(&g), "D?{");
        assert!(graphs_isomorphic(&g, &SimpleGraph::star(4)).unwrap());
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(matches!(parse_graph6("!!"), Err(Error::Parse { offset: 0, .. })));
        assert!(parse_graph6("").is_err());
        // Truncated payload.
        assert!(parse_graph6("D").is_err());
    }

    #[test]
    fn graph6_roundtrip_various() {
        for g in [
            SimpleGraph::empty(1),
            SimpleGraph::cycle(5),
            SimpleGraph::complete(7),
            SimpleGraph::complete_bipartite(3, 3),
            SimpleGraph::path(10),
        ] {
            let s = emit_graph6(&g);
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn adjacency_list_parse() {
        let g = parse_adjacency_list("5\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 5);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
        assert!(parse_adjacency_list("0 0").is_err());
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&SimpleGraph::cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&SimpleGraph::complete_bipartite(3, 3)).unwrap(), 2);
        assert_eq!(chromatic_number(&SimpleGraph::complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&SimpleGraph::path(6)).unwrap(), 2);
    }

    #[test]
    fn clique_cover_examples() {
        assert_eq!(clique_cover_number(&SimpleGraph::complete_bipartite(3, 3)).unwrap(), 3);
        assert_eq!(clique_cover_number(&SimpleGraph::complete(4)).unwrap(), 1);
        // The complement of C_5 is C_5 again.
        let c5 = SimpleGraph::cycle(5);
        assert!(graphs_isomorphic(&c5, &c5.complement()).unwrap());
        assert_eq!(chromatic_number(&c5.complement()).unwrap(), 3);
        assert_eq!(clique_cover_number(&c5).unwrap(), 3);
    }

    #[test]
    fn family_chi_examples() {
        let k33 = FamilySpec::single(SimpleGraph::complete_bipartite(3, 3));
        assert_eq!(k33.family_chi().unwrap(), 2);

        let thm2 = FamilySpec::new(
            vec![],
            vec![FamilyGenerator::Star { k: 4 }, FamilyGenerator::CyclesGe { m: 5 }],
        )
        .unwrap();
        assert_eq!(thm2.family_chi().unwrap(), 2);

        let mixed =
            FamilySpec::new(vec![SimpleGraph::complete(4), SimpleGraph::cycle(5)], vec![]).unwrap();
        assert_eq!(mixed.family_chi().unwrap(), 3);
        assert_eq!(chromatic_number(&SimpleGraph::complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&SimpleGraph::cycle(5)).unwrap(), 3);

        let empty = FamilySpec { finite: vec![], generators: vec![], cycle_test_bound: None };
        assert!(empty.family_chi().is_err());
    }

    #[test]
    fn family_spec_json_roundtrip() {
        let text = r#"{"forbidden":["D?{"],"families":[{"type":"cycles_ge","m":5}]}"#;
        let spec = FamilySpec::from_json(text).unwrap();
        assert_eq!(spec.finite.len(), 1);
        assert_eq!(spec.generators, vec![FamilyGenerator::CyclesGe { m: 5 }]);
        let again = FamilySpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.property_hash(), again.property_hash());
    }

    #[test]
    fn cycle_generator_instances() {
        let gen = FamilyGenerator::CyclesGe { m: 5 };
        for (i, c) in gen.members_up_to(9).iter().enumerate() {
            let k = i + 5;
            assert_eq!(c.n(), k);
            assert_eq!(c.edge_count(), k);
            assert!((0..k).all(|v| c.degree(v) == 2));
        }
        assert!(FamilyGenerator::CyclesGe { m: 2 }.validate().is_err());
    }

    #[test]
    fn enumerate_small_graph_counts() {
        // Unlabeled graph counts: 1, 2, 4, 11, 34.
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(2).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(3).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(4).unwrap().len(), 11);
        assert_eq!(enumerate_graphs(5).unwrap().len(), 34);
    }

    #[test]
    fn induced_subgraph_detection() {
        let c5 = SimpleGraph::cycle(5);
        assert!(has_induced(&c5, &SimpleGraph::path(4)));
        assert!(!has_induced(&c5, &SimpleGraph::complete(3)));
        assert!(has_induced(&SimpleGraph::complete(5), &SimpleGraph::complete(3)));
    }
}
