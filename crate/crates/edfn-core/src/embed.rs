//! Embedding decisions: graphs into CRGs, families into CRGs, and the
//! colored-graph order `⊑`.
//!
//! `F ↦ K` asks for a map `φ: V(F) → V(K)` (not necessarily injective)
//! sending edges to black/gray edges or collapsing them onto black
//! vertices, and non-edges to white/gray edges or white vertices. The
//! colored-graph order `G ⊑ H` asks for an injection carrying black edges
//! to black/gray, white to white/gray, and gray to gray only.
//!
//! Both are decided by backtracking with forward checking over bitmask
//! candidate sets; every positive answer comes with a witness map that the
//! caller can replay against the definitions.

use serde::Serialize;

use crate::colored::ColoredGraph;
use crate::crg::{Crg, EdgeColor, ProbMass, VertexColor};
use crate::graphs::{FamilyGenerator, FamilySpec, SimpleGraph};
use crate::{Error, Result};

/// Cap on explicit colored-graph injection instances.
pub const COLORED_LEQ_CAP: usize = 64;

// ---------------------------------------------------------------------------
// F ↦ K
// ---------------------------------------------------------------------------

/// Finds `φ` witnessing `F ↦ K`, or `None` if no embedding exists.
pub fn find_embedding(f: &SimpleGraph, k: &Crg) -> Option<Vec<usize>> {
    let kk = k.k();
    debug_assert!(kk <= 63);
    let full: u64 = (1u64 << kk) - 1;

    // bad_edge[y]: forbidden images x for a vertex adjacent (in F) to a
    // vertex already placed at y; bad_nonedge[y] likewise for non-adjacent.
    let mut bad_edge = vec![0u64; kk];
    let mut bad_nonedge = vec![0u64; kk];
    for y in 0..kk {
        if k.vcolor(y) != VertexColor::Black {
            bad_edge[y] |= 1 << y;
        }
        if k.vcolor(y) != VertexColor::White {
            bad_nonedge[y] |= 1 << y;
        }
        for x in 0..kk {
            if x == y {
                continue;
            }
            match k.ecolor(x, y) {
                EdgeColor::Gray => {}
                EdgeColor::Black => bad_nonedge[y] |= 1 << x,
                EdgeColor::White => bad_edge[y] |= 1 << x,
            }
        }
    }

    let mut order: Vec<usize> = (0..f.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(f.degree(v)));

    let mut state = EmbedState {
        f,
        order,
        bad_edge,
        bad_nonedge,
        masks: vec![full; f.n()],
        assignment: vec![usize::MAX; f.n()],
    };
    if state.search(0) {
        Some(state.assignment)
    } else {
        None
    }
}

pub fn embeds(f: &SimpleGraph, k: &Crg) -> bool {
    find_embedding(f, k).is_some()
}

/// Replays `φ` against the definition of `F ↦ K`.
pub fn verify_embedding(f: &SimpleGraph, k: &Crg, phi: &[usize]) -> bool {
    if phi.len() != f.n() || phi.iter().any(|&x| x >= k.k()) {
        return false;
    }
    for u in 0..f.n() {
        for v in u + 1..f.n() {
            let (x, y) = (phi[u], phi[v]);
            let ok = if f.has_edge(u, v) {
                if x == y {
                    k.vcolor(x) == VertexColor::Black
                } else {
                    matches!(k.ecolor(x, y), EdgeColor::Black | EdgeColor::Gray)
                }
            } else if x == y {
                k.vcolor(x) == VertexColor::White
            } else {
                matches!(k.ecolor(x, y), EdgeColor::White | EdgeColor::Gray)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

struct EmbedState<'a> {
    f: &'a SimpleGraph,
    order: Vec<usize>,
    bad_edge: Vec<u64>,
    bad_nonedge: Vec<u64>,
    masks: Vec<u64>,
    assignment: Vec<usize>,
}

impl EmbedState<'_> {
    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mut cands = self.masks[v];
        while cands != 0 {
            let y = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.assignment[v] = y;

            // Forward-check the not-yet-placed vertices.
            let saved: Vec<(usize, u64)> = self.order[depth + 1..]
                .iter()
                .map(|&u| (u, self.masks[u]))
                .collect();
            let mut dead = false;
            for &(u, old) in &saved {
                let bad = if self.f.has_edge(u, v) {
                    self.bad_edge[y]
                } else {
                    self.bad_nonedge[y]
                };
                let next = old & !bad;
                self.masks[u] = next;
                if next == 0 {
                    dead = true;
                    break;
                }
            }
            if !dead && self.search(depth + 1) {
                return true;
            }
            for (u, old) in saved {
                self.masks[u] = old;
            }
        }
        self.assignment[v] = usize::MAX;
        false
    }
}

// ---------------------------------------------------------------------------
// Family embedding
// ---------------------------------------------------------------------------

/// Verdict of a family embedding test.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyVerdict {
    pub embeds: bool,
    /// Label of the member that embedded, e.g. `"C_7"` or a graph6 string.
    pub member: Option<String>,
    pub witness: Option<Vec<usize>>,
    /// True when a negative verdict only holds up to the cycle bound below.
    pub bounded: bool,
    pub cycle_bound: Option<usize>,
}

/// Bound up to which `cycles_ge(m)` is instantiated against a CRG on `k`
/// vertices: `max(2k², 2m)`, unless the spec pins its own cap.
pub fn cycle_bound(spec: &FamilySpec, m: usize, k: usize) -> usize {
    spec.cycle_test_bound.unwrap_or_else(|| (2 * k * k).max(2 * m))
}

/// Does any member of the family embed into `K`?
pub fn family_embeds(spec: &FamilySpec, k: &Crg) -> FamilyVerdict {
    let mut bound_used = None;
    for g in &spec.finite {
        if let Some(w) = find_embedding(g, k) {
            return positive(crate::graphs::emit_graph6(g), w, bound_used);
        }
    }
    for gen in &spec.generators {
        match *gen {
            FamilyGenerator::Star { k: leaves } => {
                let star = SimpleGraph::star(leaves);
                if let Some(w) = find_embedding(&star, k) {
                    return positive(format!("K_{{1,{leaves}}}"), w, bound_used);
                }
            }
            FamilyGenerator::CompleteBipartite { s, t } => {
                let b = SimpleGraph::complete_bipartite(s, t);
                if let Some(w) = find_embedding(&b, k) {
                    return positive(format!("K_{{{s},{t}}}"), w, bound_used);
                }
            }
            FamilyGenerator::CyclesGe { m } => {
                let bound = cycle_bound(spec, m, k.k());
                bound_used = Some(bound);
                for j in m..=bound {
                    let cycle = SimpleGraph::cycle(j);
                    if let Some(w) = find_embedding(&cycle, k) {
                        return positive(format!("C_{j}"), w, bound_used);
                    }
                }
            }
        }
    }
    FamilyVerdict {
        embeds: false,
        member: None,
        witness: None,
        bounded: bound_used.is_some(),
        cycle_bound: bound_used,
    }
}

fn positive(member: String, witness: Vec<usize>, bound: Option<usize>) -> FamilyVerdict {
    FamilyVerdict {
        embeds: true,
        member: Some(member),
        witness: Some(witness),
        bounded: false,
        cycle_bound: bound,
    }
}

// ---------------------------------------------------------------------------
// Colored-graph order
// ---------------------------------------------------------------------------

/// Decides `G ⊑ H`, returning an injection when it holds.
///
/// Blow-ups of the same base are compared part-wise when possible;
/// otherwise both sides are expanded (capped at [`COLORED_LEQ_CAP`]).
pub fn colored_leq(g: &ColoredGraph, h: &ColoredGraph) -> Result<Option<Vec<usize>>> {
    if g.size() > h.size() {
        return Ok(None);
    }
    if g.size() == 0 {
        return Ok(Some(vec![]));
    }
    if let (ColoredGraph::Blowup { base: bg, sizes: sg }, ColoredGraph::Blowup { base: bh, sizes: sh }) =
        (g, h)
    {
        if bg == bh && sg.iter().zip(sh).all(|(a, b)| a <= b) {
            // Identity part map: send part x of G onto the first sg[x]
            // vertices of part x of H.
            let mut map = Vec::with_capacity(g.size());
            let mut h_offset = 0usize;
            for (x, &s) in sg.iter().enumerate() {
                for t in 0..s {
                    map.push(h_offset + t);
                }
                h_offset += sh[x];
            }
            debug_assert!(verify_colored_injection(g, h, &map));
            return Ok(Some(map));
        }
    }
    let ge = g.expand(COLORED_LEQ_CAP)?;
    let he = h.expand(COLORED_LEQ_CAP)?;
    Ok(colored_leq_explicit(&ge, &he))
}

fn colored_leq_explicit(g: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<usize>> {
    let (gn, hn) = (g.size(), h.size());
    debug_assert!(hn <= 64);
    let full: u64 = if hn == 64 { u64::MAX } else { (1u64 << hn) - 1 };

    // bad[c][y]: images x forbidden for a G-vertex whose relation to a
    // vertex placed at y has color c (injectivity included).
    let mut bad = vec![vec![0u64; hn]; 3];
    for y in 0..hn {
        for c in 0..3 {
            bad[c][y] |= 1 << y;
        }
        for x in 0..hn {
            if x == y {
                continue;
            }
            let hc = h.ecolor(x, y);
            for (c, allowed) in [
                (EdgeColor::White, matches!(hc, EdgeColor::White | EdgeColor::Gray)),
                (EdgeColor::Black, matches!(hc, EdgeColor::Black | EdgeColor::Gray)),
                (EdgeColor::Gray, matches!(hc, EdgeColor::Gray)),
            ] {
                if !allowed {
                    bad[color_idx(c)][y] |= 1 << x;
                }
            }
        }
    }

    let mut masks = vec![full; gn];
    let mut assignment = vec![usize::MAX; gn];
    let mut placed = vec![false; gn];
    if leq_search(g, &bad, &mut masks, &mut assignment, &mut placed, 0) {
        Some(assignment)
    } else {
        None
    }
}

fn color_idx(c: EdgeColor) -> usize {
    match c {
        EdgeColor::White => 0,
        EdgeColor::Black => 1,
        EdgeColor::Gray => 2,
    }
}

fn leq_search(
    g: &ColoredGraph,
    bad: &[Vec<u64>],
    masks: &mut [u64],
    assignment: &mut [usize],
    placed: &mut [bool],
    depth: usize,
) -> bool {
    let gn = g.size();
    if depth == gn {
        return true;
    }
    // Most-constrained vertex next (deterministic tie-break by index).
    let v = (0..gn)
        .filter(|&u| !placed[u])
        .min_by_key(|&u| (masks[u].count_ones(), u))
        .unwrap();
    let mut cands = masks[v];
    placed[v] = true;
    while cands != 0 {
        let y = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        assignment[v] = y;
        let saved: Vec<u64> = masks.to_vec();
        let mut dead = false;
        for u in 0..gn {
            if placed[u] {
                continue;
            }
            masks[u] &= !bad[color_idx(g.ecolor(u, v))][y];
            if masks[u] == 0 {
                dead = true;
                break;
            }
        }
        if !dead && leq_search(g, bad, masks, assignment, placed, depth + 1) {
            return true;
        }
        masks.copy_from_slice(&saved);
    }
    placed[v] = false;
    assignment[v] = usize::MAX;
    false
}

/// Replays an injection against the definition of `G ⊑ H`.
pub fn verify_colored_injection(g: &ColoredGraph, h: &ColoredGraph, map: &[usize]) -> bool {
    let gn = g.size();
    if map.len() != gn || map.iter().any(|&x| x >= h.size()) {
        return false;
    }
    let mut seen = std::collections::BTreeSet::new();
    if !map.iter().all(|x| seen.insert(*x)) {
        return false;
    }
    for u in 0..gn {
        for v in u + 1..gn {
            let ok = match g.ecolor(u, v) {
                EdgeColor::White => {
                    matches!(h.ecolor(map[u], map[v]), EdgeColor::White | EdgeColor::Gray)
                }
                EdgeColor::Black => {
                    matches!(h.ecolor(map[u], map[v]), EdgeColor::Black | EdgeColor::Gray)
                }
                EdgeColor::Gray => matches!(h.ecolor(map[u], map[v]), EdgeColor::Gray),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Finite instances of the structural lemmas
// ---------------------------------------------------------------------------

/// Constructs the explicit injection `n×K(t+1,0) ⊑ n×K` promised for every
/// 0-core `K` with `t` white and at least `n` black vertices: white parts
/// map onto white parts, and the extra white part spreads across the first
/// vertex of `n` distinct black parts. The witness is validated before it
/// is returned.
pub fn manyblack_witness(k: &Crg, n: usize) -> Result<Vec<usize>> {
    if !k.is_zero_core() {
        return Err(Error::domain("manyblack witness requires a 0-core CRG"));
    }
    if n == 0 {
        return Err(Error::domain("manyblack witness requires n >= 1"));
    }
    let whites = k.white_vertices();
    let blacks = k.black_vertices();
    if blacks.len() < n {
        return Err(Error::domain(format!(
            "manyblack witness needs at least n={n} black vertices, found {}",
            blacks.len()
        )));
    }
    let t = whites.len();
    let small = ColoredGraph::blowup_uniform(&Crg::kwb(t + 1, 0)?, n);
    let big = ColoredGraph::blowup_uniform(k, n);

    let mut map = Vec::with_capacity((t + 1) * n);
    for &w in &whites {
        for j in 0..n {
            map.push(w * n + j);
        }
    }
    for &b in blacks.iter().take(n) {
        map.push(b * n);
    }
    if !verify_colored_injection(&small, &big, &map) {
        return Err(Error::Inconsistency(
            "constructed manyblack witness failed validation".into(),
        ));
    }
    Ok(map)
}

/// Report of a dalmatian transfer check on one finite instance.
#[derive(Debug, Clone, Serialize)]
pub struct DalmatianTransfer {
    /// Whether `n×K ⊑ L[μ,m]` holds.
    pub hypothesis: bool,
    /// Whether `n×K^n(r) ⊑ L[μ,m]` holds; only computed under the
    /// hypothesis.
    pub conclusion: Option<bool>,
    /// Both relations hold.
    pub both: bool,
}

/// Checks one finite instance of the dalmatian transfer: whenever
/// `n×K ⊑ L[μ,m]` holds (with `K` 0-core, `m·μ(x) ≥ n` on black vertices
/// of `L`, and `K` having more white vertices than `L`), then
/// `n×K^n(r) ⊑ L[μ,m]` must hold as well for `1 ≤ r ≤ |VW(K)|-|VW(L)|`.
/// A violated transfer is an inconsistency error; the report records which
/// sides held.
pub fn dalmatian_transfer_check(
    k: &Crg,
    l: &Crg,
    mu: &ProbMass,
    m: usize,
    n: usize,
    r: usize,
) -> Result<DalmatianTransfer> {
    if !k.is_zero_core() {
        return Err(Error::domain("dalmatian transfer requires a 0-core K"));
    }
    if mu.len() != l.k() {
        return Err(Error::domain("mass must be indexed by V(L)"));
    }
    let (s, t) = (k.white_count(), l.white_count());
    if s <= t {
        return Err(Error::domain(format!(
            "dalmatian transfer requires |VW(K)| > |VW(L)|, got {s} <= {t}"
        )));
    }
    if r == 0 || r > s - t {
        return Err(Error::domain(format!("r={r} outside 1..={}", s - t)));
    }
    if n == 0 {
        return Err(Error::domain("dalmatian transfer requires n >= 1"));
    }
    for (x, w) in mu.weights().iter().enumerate() {
        if l.vcolor(x) == VertexColor::Black && w.as_f64() * m as f64 + 1e-9 < n as f64 {
            return Err(Error::domain(format!(
                "m·μ(x) ≥ n fails at black vertex {x}: {} · {m} < {n}",
                w.as_f64()
            )));
        }
    }

    let target = blowup_of_mass(l, mu, m)?;
    let hypothesis = colored_leq(&ColoredGraph::blowup_uniform(k, n), &target)?.is_some();
    if !hypothesis {
        return Ok(DalmatianTransfer { hypothesis, conclusion: None, both: false });
    }
    let dal = k.dalmatian(n, r)?;
    let conclusion = colored_leq(&ColoredGraph::blowup_uniform(&dal, n), &target)?.is_some();
    if !conclusion {
        return Err(Error::Inconsistency(
            "dalmatian transfer violated: hypothesis holds but conclusion fails".into(),
        ));
    }
    Ok(DalmatianTransfer { hypothesis, conclusion: Some(conclusion), both: conclusion })
}

fn blowup_of_mass(l: &Crg, mu: &ProbMass, m: usize) -> Result<ColoredGraph> {
    if let Some(exact) = mu.as_exact() {
        ColoredGraph::blowup_mass(l, &exact, m)
    } else {
        ColoredGraph::blowup_mass(l, &mu.as_f64(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_embeds_into_small_crgs() {
        let star = SimpleGraph::star(4);
        let w = find_embedding(&star, &Crg::kwb(2, 0).unwrap()).unwrap();
        assert!(verify_embedding(&star, &Crg::kwb(2, 0).unwrap(), &w));
        assert!(embeds(&star, &Crg::kwb(1, 1).unwrap()));
        // But not into path CRGs.
        for n in 1..=8 {
            assert!(!embeds(&star, &Crg::path(n).unwrap()), "K_1_4 vs P_{n}");
        }
    }

    #[test]
    fn k33_embedding_threshold() {
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        assert!(!embeds(&k33, &Crg::kwb(1, 2).unwrap()));
        let w = find_embedding(&k33, &Crg::kwb(1, 3).unwrap()).unwrap();
        assert!(verify_embedding(&k33, &Crg::kwb(1, 3).unwrap(), &w));
    }

    #[test]
    fn family_verdicts() {
        let spec = FamilySpec::new(
            vec![],
            vec![FamilyGenerator::Star { k: 4 }, FamilyGenerator::CyclesGe { m: 5 }],
        )
        .unwrap();
        // Paths avoid the whole family (bounded verdict).
        for n in 1..=6 {
            let v = family_embeds(&spec, &Crg::path(n).unwrap());
            assert!(!v.embeds, "family vs P_{n}");
            assert!(v.bounded);
        }
        // A gray 5-cycle on black vertices admits C_5.
        let mut c5 =
            Crg::new(vec![VertexColor::Black; 5], vec![EdgeColor::White; 10]).unwrap();
        for i in 0..5 {
            c5.set_ecolor(i, (i + 1) % 5, EdgeColor::Gray);
        }
        let v = family_embeds(&spec, &c5);
        assert!(v.embeds);
        assert_eq!(v.member.as_deref(), Some("C_5"));
    }

    #[test]
    fn colored_leq_examples() {
        // Subgraphs are ⊑.
        let g = ColoredGraph::blowup_uniform(&Crg::kwb(1, 1).unwrap(), 1);
        let h = ColoredGraph::blowup_uniform(&Crg::kwb(1, 1).unwrap(), 2);
        assert!(colored_leq(&g, &h).unwrap().is_some());

        // 2×K(2,0) ⊑ 2×K(1,2) (many black vertices act as one white).
        let small = ColoredGraph::blowup_uniform(&Crg::kwb(2, 0).unwrap(), 2);
        let big = ColoredGraph::blowup_uniform(&Crg::kwb(1, 2).unwrap(), 2);
        let w = colored_leq(&small, &big).unwrap().unwrap();
        assert!(verify_colored_injection(&small, &big, &w));

        // All-black triangle is not ⊑ all-white triangle.
        let black = ColoredGraph::from_graph(&SimpleGraph::complete(3));
        let white = ColoredGraph::from_graph(&SimpleGraph::empty(3));
        assert!(colored_leq(&black, &white).unwrap().is_none());
    }

    #[test]
    fn manyblack_examples() {
        let w = manyblack_witness(&Crg::kwb(1, 3).unwrap(), 3).unwrap();
        assert_eq!(w.len(), 2 * 3);

        // P_4 has no white vertices: 2×K(1,0) ⊑ 2×P_4.
        let w = manyblack_witness(&Crg::path(4).unwrap(), 2).unwrap();
        assert_eq!(w.len(), 2);

        assert!(manyblack_witness(&Crg::kwb(1, 1).unwrap(), 2).is_err());
    }

    #[test]
    fn dalmatian_transfer_instances() {
        let k = Crg::kwb(2, 0).unwrap();
        let l = Crg::kwb(1, 2).unwrap();
        let mu = ProbMass::uniform(3).unwrap();

        // n=2, m=6: both sides hold.
        let rep = dalmatian_transfer_check(&k, &l, &mu, 6, 2, 1).unwrap();
        assert!(rep.hypothesis && rep.both);

        // n=3, m=9: the hypothesis itself fails (L has only two black
        // vertices), so the transfer holds vacuously.
        let rep = dalmatian_transfer_check(&k, &l, &mu, 9, 3, 1).unwrap();
        assert!(!rep.hypothesis && !rep.both);

        // Precondition violations.
        assert!(dalmatian_transfer_check(&Crg::kwb(1, 0).unwrap(), &l, &mu, 9, 3, 1).is_err());
        assert!(dalmatian_transfer_check(&k, &l, &mu, 9, 3, 2).is_err());
    }
}
