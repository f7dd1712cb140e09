//! Ground-truth edit distances on tiny graphs by exhaustive search.
//!
//! These oracles pin down the normalized edit distance definitions
//! independently of the CRG machinery: `dist(G,H)` counts symmetric
//! difference edges, and the distance to a hereditary property minimizes
//! over every graph on the same vertex set, checked for induced-subgraph
//! freeness directly.

use std::collections::HashMap;

use num::BigRational;
use serde::Serialize;

use crate::graphs::{emit_graph6, graph_canonical_key, has_induced, FamilySpec, SimpleGraph};
use crate::value::{PValue, Scalar, Value};
use crate::{Error, Result};

/// Cap for exhaustive distance-to-property searches.
pub const DIST_CAP: usize = 7;
/// Cap for the max-distance-at-density sweep.
pub const MAX_DIST_CAP: usize = 6;

/// Normalized edit distance between two graphs on the same vertex count:
/// `|E(G) Δ E(H)| / C(n,2)`.
pub fn dist_graphs(g: &SimpleGraph, h: &SimpleGraph) -> Result<BigRational> {
    let edits = g.edit_edges(h)?;
    let n = g.n();
    if n < 2 {
        return Ok(BigRational::from_int(0));
    }
    Ok(BigRational::from_ratio(edits as i64, (n * (n - 1) / 2) as i64))
}

struct FreenessOracle {
    members: Vec<SimpleGraph>,
    memo: HashMap<Vec<u8>, bool>,
}

impl FreenessOracle {
    fn new(spec: &FamilySpec, n: usize) -> FreenessOracle {
        FreenessOracle { members: spec.members_up_to(n), memo: HashMap::new() }
    }

    fn is_free(&mut self, g: &SimpleGraph) -> Result<bool> {
        let key = graph_canonical_key(g)?;
        if let Some(&cached) = self.memo.get(&key) {
            return Ok(cached);
        }
        let free = !self.members.iter().any(|m| has_induced(g, m));
        self.memo.insert(key, free);
        Ok(free)
    }
}

/// Exact distance from `G` to `Forb(𝓕)`: the minimum number of edits
/// landing in an `𝓕`-free graph, normalized. Searches edit sets in
/// increasing size, so it stops at the first feasible edit count.
pub fn dist_to_property(g: &SimpleGraph, spec: &FamilySpec) -> Result<BigRational> {
    let n = g.n();
    if n > DIST_CAP {
        return Err(Error::SizeCap { what: "distance to property", got: n, cap: DIST_CAP });
    }
    let slots = n * (n - 1) / 2;
    let mut oracle = FreenessOracle::new(spec, n);
    let mut work = g.clone();
    for d in 0..=slots {
        if flip_search(&mut work, &mut oracle, d, 0)? {
            return Ok(if slots == 0 {
                BigRational::from_int(0)
            } else {
                BigRational::from_ratio(d as i64, slots as i64)
            });
        }
    }
    Err(Error::domain(format!(
        "no 𝓕-free graph exists on {n} vertices; the property is trivial there"
    )))
}

/// Tries every way of flipping exactly `d` of the remaining pair slots.
fn flip_search(
    g: &mut SimpleGraph,
    oracle: &mut FreenessOracle,
    d: usize,
    first_slot: usize,
) -> Result<bool> {
    if d == 0 {
        return oracle.is_free(g);
    }
    let n = g.n();
    let slots: Vec<(usize, usize)> =
        (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    if first_slot + d > slots.len() {
        return Ok(false);
    }
    for s in first_slot..=slots.len() - d {
        let (i, j) = slots[s];
        let old = g.has_edge(i, j);
        g.set_edge(i, j, !old);
        let hit = flip_search(g, oracle, d - 1, s + 1)?;
        g.set_edge(i, j, old);
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Report of a maximum-distance sweep at one density.
#[derive(Debug, Clone, Serialize)]
pub struct MaxDistReport {
    pub n: usize,
    pub p: Value,
    pub edges: usize,
    pub max_dist: Value,
    pub argmax_graph6: String,
}

/// Maximum of `dist_to_property` over all graphs on `n` vertices with
/// exactly `⌊p·C(n,2)⌋` edges, up to isomorphism. A finite-n sample of the
/// limsup, not an asymptotic claim.
pub fn max_dist_at_density(n: usize, p: &PValue, spec: &FamilySpec) -> Result<MaxDistReport> {
    if n > MAX_DIST_CAP {
        return Err(Error::SizeCap { what: "max distance at density", got: n, cap: MAX_DIST_CAP });
    }
    let slots = n * (n - 1) / 2;
    let edges = match p {
        PValue::Exact(r) => r.scaled_floor(slots),
        PValue::Float(x) => x.scaled_floor(slots),
    };

    // Canonical representatives with exactly `edges` edges.
    let mut reps: std::collections::BTreeMap<Vec<u8>, SimpleGraph> = Default::default();
    let slot_list: Vec<(usize, usize)> =
        (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut chosen = Vec::new();
    collect_edge_sets(n, &slot_list, edges, 0, &mut chosen, &mut reps)?;

    let mut best: Option<(BigRational, SimpleGraph)> = None;
    for g in reps.values() {
        let d = dist_to_property(g, spec)?;
        match &best {
            Some((cur, _)) if *cur >= d => {}
            _ => best = Some((d, g.clone())),
        }
    }
    let (max_dist, argmax) =
        best.ok_or_else(|| Error::domain("no graphs at the requested density"))?;
    Ok(MaxDistReport {
        n,
        p: match p {
            PValue::Exact(r) => Value::Exact(r.clone()),
            PValue::Float(x) => Value::Float(*x),
        },
        edges,
        max_dist: Value::Exact(max_dist),
        argmax_graph6: emit_graph6(&argmax),
    })
}

fn collect_edge_sets(
    n: usize,
    slots: &[(usize, usize)],
    remaining: usize,
    first: usize,
    chosen: &mut Vec<(usize, usize)>,
    reps: &mut std::collections::BTreeMap<Vec<u8>, SimpleGraph>,
) -> Result<()> {
    if remaining == 0 {
        let g = SimpleGraph::from_edges(n, chosen);
        reps.entry(graph_canonical_key(&g)?).or_insert(g);
        return Ok(());
    }
    if first + remaining > slots.len() {
        return Ok(());
    }
    for s in first..=slots.len() - remaining {
        chosen.push(slots[s]);
        collect_edge_sets(n, slots, remaining - 1, s + 1, chosen, reps)?;
        chosen.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn dist_graphs_basics() {
        let c4 = SimpleGraph::cycle(4);
        assert_eq!(dist_graphs(&c4, &c4).unwrap(), rational(0, 1));
        let k4 = SimpleGraph::complete(4);
        let e4 = SimpleGraph::empty(4);
        assert_eq!(dist_graphs(&k4, &e4).unwrap(), rational(1, 1));
        // C_4 vs the path on 4 vertices: one edge differs.
        let p4 = SimpleGraph::path(4);
        assert_eq!(dist_graphs(&c4, &p4).unwrap(), rational(1, 6));
        assert!(dist_graphs(&c4, &SimpleGraph::complete(5)).is_err());
    }

    #[test]
    fn dist_to_property_basics() {
        let spec = FamilySpec::single(SimpleGraph::complete(3));
        // Already triangle-free.
        assert_eq!(dist_to_property(&SimpleGraph::cycle(5), &spec).unwrap(), rational(0, 1));
        // K_5 needs 4 deletions (max triangle-free subgraph has 6 edges).
        assert_eq!(dist_to_property(&SimpleGraph::complete(5), &spec).unwrap(), rational(4, 10));
        // C_5 is one edit away from being C_5-free.
        let spec_c5 = FamilySpec::single(SimpleGraph::cycle(5));
        assert_eq!(dist_to_property(&SimpleGraph::cycle(5), &spec_c5).unwrap(), rational(1, 10));
    }

    #[test]
    fn trivial_property_detected() {
        // Forbidding both the single-vertex graph's edgeless form and the
        // edge leaves nothing on two vertices.
        let spec = FamilySpec::new(
            vec![SimpleGraph::complete(2), SimpleGraph::empty(2)],
            vec![],
        )
        .unwrap();
        assert!(dist_to_property(&SimpleGraph::complete(2), &spec).is_err());
    }

    #[test]
    fn max_dist_examples() {
        let spec = FamilySpec::single(SimpleGraph::complete(3));
        // p=1 on 5 vertices forces K_5.
        let rep = max_dist_at_density(5, &PValue::from_ratio(1, 1).unwrap(), &spec).unwrap();
        assert_eq!(rep.edges, 10);
        assert_eq!(rep.max_dist, Value::Exact(rational(4, 10)));

        // p=0: the empty graph is triangle-free.
        let rep = max_dist_at_density(5, &PValue::from_ratio(0, 1).unwrap(), &spec).unwrap();
        assert_eq!(rep.max_dist, Value::Exact(rational(0, 1)));
    }
}
