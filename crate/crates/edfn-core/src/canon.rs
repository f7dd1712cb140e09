//! Canonical forms for small vertex- and edge-colored cliques.
//!
//! The canonical key of a structure is the lexicographically smallest byte
//! encoding over all vertex permutations that respect a color-refinement
//! partition. Two structures are isomorphic iff their keys are equal. This
//! is a brute-force search with branch-and-bound pruning, adequate for the
//! vertex counts this crate works at (≤ 9 for CRGs, ≤ 12 for plain graphs).

use std::collections::BTreeMap;

/// A complete structure on `n` vertices with byte-valued vertex and edge
/// colors. Edge colors must be symmetric and strictly below 0xFF.
pub(crate) trait ColoredClique {
    fn size(&self) -> usize;
    fn vertex_label(&self, v: usize) -> u8;
    fn edge_label(&self, u: usize, v: usize) -> u8;
}

/// Partitions vertices into refinement classes; returns a class id per
/// vertex. Ids are ordered by the class invariant, so they are stable across
/// isomorphic relabelings.
fn refine_classes<S: ColoredClique>(s: &S) -> Vec<usize> {
    let n = s.size();
    let mut class: Vec<Vec<u8>> = (0..n)
        .map(|v| {
            let mut counts = [0u8; 8];
            for u in 0..n {
                if u != v {
                    counts[s.edge_label(u, v) as usize & 7] += 1;
                }
            }
            let mut inv = vec![s.vertex_label(v)];
            inv.extend_from_slice(&counts);
            inv
        })
        .collect();

    for _ in 0..3 {
        let ids = assign_ids(&class);
        let mut next: Vec<Vec<u8>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nbrs: Vec<(u8, usize)> = (0..n)
                .filter(|&u| u != v)
                .map(|u| (s.edge_label(u, v), ids[u]))
                .collect();
            nbrs.sort_unstable();
            let mut inv = vec![ids[v] as u8];
            for (c, id) in nbrs {
                inv.push(c);
                inv.push(id as u8);
            }
            next.push(inv);
        }
        if assign_ids(&next) == ids {
            return ids;
        }
        class = next;
    }
    assign_ids(&class)
}

fn assign_ids(invariants: &[Vec<u8>]) -> Vec<usize> {
    let mut keys: Vec<&[u8]> = invariants.iter().map(|v| v.as_slice()).collect();
    keys.sort_unstable();
    keys.dedup();
    let rank: BTreeMap<&[u8], usize> = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    invariants.iter().map(|inv| rank[inv.as_slice()]).collect()
}

/// Computes the canonical key. The key encodes `n`, the vertex labels in
/// canonical order, and the edge labels column by column.
pub(crate) fn canonical_key<S: ColoredClique>(s: &S) -> Vec<u8> {
    canonical_key_and_perm(s).0
}

/// Canonical key plus one permutation achieving it; `perm[position] = vertex`.
pub(crate) fn canonical_key_and_perm<S: ColoredClique>(s: &S) -> (Vec<u8>, Vec<usize>) {
    let n = s.size();
    assert!(n >= 1);
    let class = refine_classes(s);

    // Positions are filled class by class in invariant order.
    let mut by_class: Vec<usize> = (0..n).collect();
    by_class.sort_by_key(|&v| (class[v], v));
    let pos_class: Vec<usize> = by_class.iter().map(|&v| class[v]).collect();

    let mut st = Search {
        s,
        class: &class,
        pos_class: &pos_class,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        edges: Vec::with_capacity(n * (n - 1) / 2),
        best_edges: seed_incumbent(s, &class, &pos_class),
        best_perm: by_class.clone(),
    };
    st.run(0);

    let mut key = Vec::with_capacity(1 + n + n * (n - 1) / 2);
    key.push(n as u8);
    for &v in &st.best_perm {
        key.push(s.vertex_label(v));
    }
    key.extend_from_slice(&st.best_edges);
    (key, st.best_perm)
}

/// Edge encoding of the identity-by-class permutation, used as the initial
/// incumbent so the search always has something to prune against.
fn seed_incumbent<S: ColoredClique>(s: &S, class: &[usize], pos_class: &[usize]) -> Vec<u8> {
    let n = s.size();
    let mut by_class: Vec<usize> = (0..n).collect();
    by_class.sort_by_key(|&v| (class[v], v));
    debug_assert!(by_class.iter().map(|&v| class[v]).eq(pos_class.iter().copied()));
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for t in 0..n {
        for u in 0..t {
            edges.push(s.edge_label(by_class[u], by_class[t]));
        }
    }
    edges
}

struct Search<'a, S: ColoredClique> {
    s: &'a S,
    class: &'a [usize],
    pos_class: &'a [usize],
    perm: Vec<usize>,
    used: Vec<bool>,
    edges: Vec<u8>,
    best_edges: Vec<u8>,
    best_perm: Vec<usize>,
}

impl<S: ColoredClique> Search<'_, S> {
    // Invariant on entry: self.edges == self.best_edges[..self.edges.len()].
    fn run(&mut self, t: usize) {
        let n = self.s.size();
        if t == n {
            // By the invariant this leaf ties the incumbent; record its perm.
            self.best_perm.clone_from(&self.perm);
            return;
        }
        let want = self.pos_class[t];
        let start = self.edges.len();
        'cands: for v in 0..n {
            if self.used[v] || self.class[v] != want {
                continue;
            }
            for offset in 0..t {
                let c = self.s.edge_label(self.perm[offset], v);
                match c.cmp(&self.best_edges[start + offset]) {
                    std::cmp::Ordering::Greater => {
                        self.edges.truncate(start);
                        continue 'cands;
                    }
                    std::cmp::Ordering::Less => {
                        // Strictly smaller: this branch becomes the new
                        // incumbent prefix; pad the rest with the sentinel.
                        self.best_edges.truncate(start + offset);
                        self.best_edges.push(c);
                        let full = n * (n - 1) / 2;
                        self.best_edges.resize(full, 0xFF);
                    }
                    std::cmp::Ordering::Equal => {}
                }
                self.edges.push(c);
            }
            self.used[v] = true;
            self.perm.push(v);
            self.run(t + 1);
            self.perm.pop();
            self.used[v] = false;
            self.edges.truncate(start);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Tiny {
        n: usize,
        vl: Vec<u8>,
        el: Vec<Vec<u8>>,
    }
    impl ColoredClique for Tiny {
        fn size(&self) -> usize {
            self.n
        }
        fn vertex_label(&self, v: usize) -> u8 {
            self.vl[v]
        }
        fn edge_label(&self, u: usize, v: usize) -> u8 {
            self.el[u][v]
        }
    }

    fn path3(order: [usize; 3]) -> Tiny {
        // Path a-b-c with edge color 1, non-edge color 0.
        let mut el = vec![vec![0u8; 3]; 3];
        let (a, b, c) = (order[0], order[1], order[2]);
        el[a][b] = 1;
        el[b][a] = 1;
        el[b][c] = 1;
        el[c][b] = 1;
        Tiny { n: 3, vl: vec![0; 3], el }
    }

    #[test]
    fn relabelings_share_key() {
        let k0 = canonical_key(&path3([0, 1, 2]));
        let k1 = canonical_key(&path3([2, 0, 1]));
        let k2 = canonical_key(&path3([1, 2, 0]));
        assert_eq!(k0, k1);
        assert_eq!(k0, k2);
    }

    #[test]
    fn different_structures_differ() {
        let path = canonical_key(&path3([0, 1, 2]));
        let mut el = vec![vec![1u8; 3]; 3];
        for (i, row) in el.iter_mut().enumerate() {
            row[i] = 0;
        }
        let triangle = canonical_key(&Tiny { n: 3, vl: vec![0; 3], el });
        assert_ne!(path, triangle);
    }

    #[test]
    fn achieving_perm_reproduces_key() {
        let s = path3([2, 0, 1]);
        let (key, perm) = canonical_key_and_perm(&s);
        let mut rebuilt = vec![3u8];
        for &v in &perm {
            rebuilt.push(s.vertex_label(v));
        }
        for t in 0..3 {
            for u in 0..t {
                rebuilt.push(s.edge_label(perm[u], perm[t]));
            }
        }
        assert_eq!(key, rebuilt);
    }
}
