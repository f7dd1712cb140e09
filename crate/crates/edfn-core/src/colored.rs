//! Colored graphs: cliques with black/white/gray edges but no vertex colors.
//!
//! These arise as blow-ups of CRGs. A blow-up replaces each CRG vertex by a
//! monochromatic clique (its color is the vertex color) and joins parts by
//! the original edge colors. Blow-ups are kept compressed — base CRG plus
//! part sizes — so p-degree computations stay closed-form even at part
//! sizes in the tens of thousands.

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::graphs::{pair_index, SimpleGraph};
use crate::value::Scalar;
use crate::{Error, Result};

/// Default cap on explicit expansion (vertex count).
pub const EXPAND_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoredGraph {
    /// Edge colors stored directly, upper-triangular in column order.
    Explicit { m: usize, ecolors: Vec<EdgeColor> },
    /// A blow-up of `base` with one part per base vertex.
    Blowup { base: Crg, sizes: Vec<usize> },
}

/// Edge weight under density `p`: white counts `p`, black `1-p`, gray `0`.
pub fn edge_weight<T: Scalar>(c: EdgeColor, p: &T) -> T {
    match c {
        EdgeColor::White => p.clone(),
        EdgeColor::Black => T::one() - p.clone(),
        EdgeColor::Gray => T::zero(),
    }
}

fn vertex_edge_color(c: VertexColor) -> EdgeColor {
    match c {
        VertexColor::White => EdgeColor::White,
        VertexColor::Black => EdgeColor::Black,
    }
}

impl ColoredGraph {
    /// A graph viewed as a colored graph: edges black, non-edges white.
    pub fn from_graph(g: &SimpleGraph) -> Self {
        let m = g.n();
        let mut ecolors = Vec::with_capacity(m * (m - 1) / 2);
        for j in 1..m {
            for i in 0..j {
                ecolors.push(if g.has_edge(i, j) { EdgeColor::Black } else { EdgeColor::White });
            }
        }
        ColoredGraph::Explicit { m, ecolors }
    }

    /// The uniform blow-up `m×K`.
    pub fn blowup_uniform(base: &Crg, m: usize) -> Self {
        let sizes = vec![m; base.k()];
        ColoredGraph::Blowup { base: base.clone(), sizes }
    }

    /// The blow-up `K[μ,n]` with part sizes `⌊μ(x)·n⌋`.
    pub fn blowup_mass<T: Scalar>(base: &Crg, mu: &[T], n: usize) -> Result<Self> {
        if mu.len() != base.k() {
            return Err(Error::domain(format!(
                "mass has {} entries for a CRG on {} vertices",
                mu.len(),
                base.k()
            )));
        }
        let sizes = mu.iter().map(|w| w.scaled_floor(n)).collect();
        Ok(ColoredGraph::Blowup { base: base.clone(), sizes })
    }

    pub fn size(&self) -> usize {
        match self {
            ColoredGraph::Explicit { m, .. } => *m,
            ColoredGraph::Blowup { sizes, .. } => sizes.iter().sum(),
        }
    }

    /// The base part containing global vertex `v` (blow-up form only).
    fn part_of(sizes: &[usize], v: usize) -> usize {
        let mut acc = 0;
        for (x, &s) in sizes.iter().enumerate() {
            acc += s;
            if v < acc {
                return x;
            }
        }
        panic!("vertex {v} out of range");
    }

    /// Edge color between two distinct vertices.
    pub fn ecolor(&self, u: usize, v: usize) -> EdgeColor {
        assert!(u != v);
        match self {
            ColoredGraph::Explicit { ecolors, .. } => {
                let (i, j) = if u < v { (u, v) } else { (v, u) };
                ecolors[pair_index(i, j)]
            }
            ColoredGraph::Blowup { base, sizes } => {
                let x = Self::part_of(sizes, u);
                let y = Self::part_of(sizes, v);
                if x == y {
                    vertex_edge_color(base.vcolor(x))
                } else {
                    base.ecolor(x, y)
                }
            }
        }
    }

    /// Expands a blow-up into explicit form. `cap` bounds the result size.
    pub fn expand(&self, cap: usize) -> Result<ColoredGraph> {
        let m = self.size();
        if m > cap {
            return Err(Error::SizeCap { what: "colored graph expansion", got: m, cap });
        }
        if m == 0 {
            return Err(Error::domain("cannot expand an empty colored graph"));
        }
        match self {
            ColoredGraph::Explicit { .. } => Ok(self.clone()),
            ColoredGraph::Blowup { .. } => {
                let mut ecolors = Vec::with_capacity(m * (m - 1) / 2);
                for j in 1..m {
                    for i in 0..j {
                        ecolors.push(self.ecolor(i, j));
                    }
                }
                Ok(ColoredGraph::Explicit { m, ecolors })
            }
        }
    }

    /// The p-degree of vertex `v`: total edge weight at `v`.
    pub fn p_degree<T: Scalar>(&self, v: usize, p: &T) -> T {
        match self {
            ColoredGraph::Explicit { m, .. } => {
                let mut sum = T::zero();
                for u in 0..*m {
                    if u != v {
                        sum = sum + edge_weight(self.ecolor(u, v), p);
                    }
                }
                sum
            }
            ColoredGraph::Blowup { base, sizes } => {
                let x = Self::part_of(sizes, v);
                Self::part_degree(base, sizes, x, p)
            }
        }
    }

    fn part_degree<T: Scalar>(base: &Crg, sizes: &[usize], x: usize, p: &T) -> T {
        let mut sum =
            edge_weight(vertex_edge_color(base.vcolor(x)), p) * T::from_int(sizes[x] as i64 - 1);
        for y in 0..base.k() {
            if y != x && sizes[y] > 0 {
                sum = sum + edge_weight(base.ecolor(x, y), p) * T::from_int(sizes[y] as i64);
            }
        }
        sum
    }

    /// The maximum p-degree `Δ_p`. For blow-ups this is computed from the
    /// part structure without expansion.
    pub fn max_p_degree<T: Scalar>(&self, p: &T) -> Result<T> {
        if self.size() == 0 {
            return Err(Error::domain("max p-degree of an empty colored graph"));
        }
        match self {
            ColoredGraph::Explicit { m, .. } => {
                let mut best = self.p_degree(0, p);
                for v in 1..*m {
                    let d = self.p_degree(v, p);
                    if d > best {
                        best = d;
                    }
                }
                Ok(best)
            }
            ColoredGraph::Blowup { base, sizes } => {
                let mut best: Option<T> = None;
                for x in 0..base.k() {
                    if sizes[x] == 0 {
                        continue;
                    }
                    let d = Self::part_degree(base, sizes, x, p);
                    best = Some(match best {
                        Some(b) if b >= d => b,
                        _ => d,
                    });
                }
                best.ok_or_else(|| Error::domain("max p-degree of an empty colored graph"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;
    use crate::value::Scalar;

    #[test]
    fn uniform_blowup_shapes() {
        let k11 = Crg::kwb(1, 1).unwrap();
        let b = ColoredGraph::blowup_uniform(&k11, 2);
        assert_eq!(b.size(), 4);
        // Part 0 is white: its internal edge is white; part 1 black.
        assert_eq!(b.ecolor(0, 1), EdgeColor::White);
        assert_eq!(b.ecolor(2, 3), EdgeColor::Black);
        assert_eq!(b.ecolor(0, 2), EdgeColor::Gray);

        let k = Crg::path(3).unwrap();
        assert_eq!(ColoredGraph::blowup_uniform(&k, 5).size(), 15);
    }

    #[test]
    fn mass_blowup_sizes() {
        let k = Crg::kwb(1, 2).unwrap();
        let mu = vec![
            BigRational::from_ratio(3, 5),
            BigRational::from_ratio(1, 5),
            BigRational::from_ratio(1, 5),
        ];
        let b = ColoredGraph::blowup_mass(&k, &mu, 10).unwrap();
        match &b {
            ColoredGraph::Blowup { sizes, .. } => assert_eq!(sizes, &vec![6, 2, 2]),
            _ => unreachable!(),
        }
        // A zero coordinate yields an empty part.
        let mu0 = vec![BigRational::from_int(1), BigRational::from_int(0), BigRational::from_int(0)];
        let b0 = ColoredGraph::blowup_mass(&k, &mu0, 7).unwrap();
        assert_eq!(b0.size(), 7);

        // Uniform mass at n = k·m equals the uniform blow-up.
        let u = vec![BigRational::from_ratio(1, 3); 3];
        let um = ColoredGraph::blowup_mass(&k, &u, 12).unwrap();
        assert_eq!(um.expand(64).unwrap(), ColoredGraph::blowup_uniform(&k, 4).expand(64).unwrap());
    }

    #[test]
    fn p_degree_examples() {
        // All-gray blow-up has max p-degree 0.
        let g = ColoredGraph::blowup_uniform(&Crg::kwb(2, 1).unwrap(), 1);
        assert_eq!(g.max_p_degree(&BigRational::from_ratio(1, 4)).unwrap(), BigRational::from_int(0));

        // 2×K(1,0) is a single white edge: Δ_p = p.
        let g = ColoredGraph::blowup_uniform(&Crg::kwb(1, 0).unwrap(), 2);
        assert_eq!(g.max_p_degree(&0.3f64).unwrap(), 0.3);
    }

    #[test]
    fn compressed_matches_explicit() {
        let k = Crg::path(3).unwrap();
        let mu = vec![
            BigRational::from_ratio(3, 10),
            BigRational::from_ratio(2, 5),
            BigRational::from_ratio(3, 10),
        ];
        let b = ColoredGraph::blowup_mass(&k, &mu, 20).unwrap();
        let e = b.expand(64).unwrap();
        let p = BigRational::from_ratio(1, 4);
        assert_eq!(b.max_p_degree(&p).unwrap(), e.max_p_degree(&p).unwrap());
        for v in 0..b.size() {
            assert_eq!(b.p_degree(v, &p), e.p_degree(v, &p));
        }
    }
}
