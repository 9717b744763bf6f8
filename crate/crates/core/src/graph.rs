//! Simple graphs and graphs with loops on a chosen vertex set.
//!
//! Vertices are `0..n`. Edges are stored as ordered pairs `(u, v)` with
//! `u < v`, so the edge set has no self-pairs and no duplicates by
//! construction. Loops live only on [`LoopedGraph`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::spectra::SymmetricMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. `n = 0` is allowed.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from unordered pairs. Repeated pairs collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { index: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfPair(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateOrder {
                family: "complete graph",
                min: 1,
                n,
            });
        }
        let edges = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        Ok(Graph { n, edges })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DegenerateOrder {
                family: "cycle",
                min: 3,
                n,
            });
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateOrder {
                family: "path",
                min: 1,
                n,
            });
        }
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Decodes an edge bitmask in graph6 column order: bit `k` is the `k`-th
    /// pair of the sequence (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
    ///
    /// Only defined for `n <= 11` (55 pairs fit in a `u64`).
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 11, "edge mask supports at most 11 vertices");
        let mut edges = BTreeSet::new();
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> bit & 1 == 1 {
                    edges.insert((u, v));
                }
                bit += 1;
            }
        }
        Graph { n, edges }
    }

    /// Inverse of [`Graph::from_edge_mask`].
    pub fn edge_mask(&self) -> u64 {
        assert!(self.n <= 11, "edge mask supports at most 11 vertices");
        self.edges
            .iter()
            .fold(0u64, |acc, &(u, v)| acc | 1 << (v * (v - 1) / 2 + u))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n
    }

    /// `self` on vertices `0..a`, `other` relabeled to `a..a+b`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + offset, v + offset)))
            .collect();
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        check_permutation(perm, self.n);
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        Graph { n: self.n, edges }
    }

    /// `G^l`: a loop on every vertex.
    pub fn with_all_loops(&self) -> LoopedGraph {
        LoopedGraph {
            base: self.clone(),
            loops: (0..self.n).collect(),
        }
    }

    /// Attaches loops on exactly the given vertices.
    pub fn with_loops<I>(&self, loops: I) -> Result<LoopedGraph>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = BTreeSet::new();
        for v in loops {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    index: v,
                    n: self.n,
                });
            }
            set.insert(v);
        }
        Ok(LoopedGraph {
            base: self.clone(),
            loops: set,
        })
    }

    /// Loopless view (σ = 0).
    pub fn without_loops(&self) -> LoopedGraph {
        LoopedGraph {
            base: self.clone(),
            loops: BTreeSet::new(),
        }
    }

    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        adjacency(self, &BTreeSet::new())
    }
}

/// A simple graph together with the set of vertices that carry a loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LoopedGraph {
    base: Graph,
    loops: BTreeSet<usize>,
}

impl LoopedGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.n
    }

    /// Number of loops.
    pub fn sigma(&self) -> usize {
        self.loops.len()
    }

    /// Loop-carrying vertices, ascending.
    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops.iter().copied()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(&v)
    }

    /// Bitmask of loop-carrying vertices (`n <= 64`).
    pub fn loop_mask(&self) -> u64 {
        self.loops.iter().fold(0, |acc, &v| acc | 1 << v)
    }

    /// Disjoint union of all parts, vertex labels and loop sets offset
    /// cumulatively in sequence order.
    pub fn union<'a, I>(parts: I) -> LoopedGraph
    where
        I: IntoIterator<Item = &'a LoopedGraph>,
    {
        let mut base = Graph::empty(0);
        let mut loops = BTreeSet::new();
        for part in parts {
            let offset = base.n;
            loops.extend(part.loops.iter().map(|v| v + offset));
            base = base.disjoint_union(&part.base);
        }
        LoopedGraph { base, loops }
    }

    /// `p` loopless copies of `g` followed by `q` fully looped copies.
    pub fn family(g: &Graph, p: usize, q: usize) -> LoopedGraph {
        let plain = g.without_loops();
        let looped = g.with_all_loops();
        let parts: Vec<&LoopedGraph> = std::iter::repeat_n(&plain, p)
            .chain(std::iter::repeat_n(&looped, q))
            .collect();
        LoopedGraph::union(parts)
    }

    pub fn permute(&self, perm: &[usize]) -> LoopedGraph {
        LoopedGraph {
            base: self.base.permute(perm),
            loops: self.loops.iter().map(|&v| perm[v]).collect(),
        }
    }

    /// `A(G) + I_σ`.
    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        adjacency(&self.base, &self.loops)
    }
}

fn adjacency(g: &Graph, loops: &BTreeSet<usize>) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(g.n);
    for &(u, v) in &g.edges {
        m.set_pair(u, v, 1.0);
    }
    for &v in loops {
        m.set_pair(v, v, 1.0);
    }
    m
}

fn check_permutation(perm: &[usize], n: usize) {
    assert_eq!(perm.len(), n, "permutation length must equal vertex count");
    let mut seen = vec![false; n];
    for &p in perm {
        assert!(p < n && !seen[p], "not a permutation of 0..{n}");
        seen[p] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        let k1 = Graph::complete(1).unwrap();
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert!((0..5).all(|v| k5.degree(v) == 4));
        assert!(matches!(
            Graph::complete(0),
            Err(Error::DegenerateOrder { n: 0, .. })
        ));
    }

    #[test]
    fn cycles_and_paths() {
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let p2 = Graph::path(2).unwrap();
        assert_eq!(p2.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::path(0).is_err());
    }

    #[test]
    fn from_edges_rejects_bad_pairs() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(Error::SelfPair(1)));
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { index: 2, n: 2 })
        );
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn unions() {
        let k3 = Graph::complete(3).unwrap();
        let h = k3.disjoint_union(&k3);
        assert_eq!((h.order(), h.edge_count()), (6, 6));
        assert_eq!(k3.disjoint_union(&Graph::empty(0)), k3);
        let p2 = Graph::path(2).unwrap();
        let u = p2.disjoint_union(&p2);
        assert_eq!(u.order(), 4);
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn loops() {
        let k3 = Graph::complete(3).unwrap();
        let k3l = k3.with_all_loops();
        assert_eq!(k3l.loops().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(Graph::empty(0).with_all_loops().sigma(), 0);
        assert_eq!(Graph::path(4).unwrap().with_all_loops().sigma(), 4);
        assert_eq!(k3.with_loops([]).unwrap().sigma(), 0);
        assert_eq!(
            Graph::path(3).unwrap().with_loops([3]),
            Err(Error::VertexOutOfRange { index: 3, n: 3 })
        );
    }

    #[test]
    fn looped_union_offsets_loops() {
        let k3 = Graph::complete(3).unwrap();
        let h3 = LoopedGraph::union([&k3.without_loops(), &k3.with_all_loops()]);
        assert_eq!((h3.order(), h3.sigma()), (6, 3));
        assert_eq!(h3.loops().collect::<Vec<_>>(), vec![3, 4, 5]);

        let single = k3.with_loops([1]).unwrap();
        assert_eq!(LoopedGraph::union([&single]), single);

        let fam = LoopedGraph::family(&Graph::path(2).unwrap(), 2, 1);
        assert_eq!((fam.order(), fam.sigma()), (6, 2));
        assert_eq!(fam.loops().collect::<Vec<_>>(), vec![4, 5]);
    }

    #[test]
    fn adjacency_of_worked_example() {
        let k3 = Graph::complete(3).unwrap();
        let h3 = LoopedGraph::union([&k3.without_loops(), &k3.with_all_loops()]);
        let expected = [
            [0, 1, 1, 0, 0, 0],
            [1, 0, 1, 0, 0, 0],
            [1, 1, 0, 0, 0, 0],
            [0, 0, 0, 1, 1, 1],
            [0, 0, 0, 1, 1, 1],
            [0, 0, 0, 1, 1, 1],
        ];
        let a = h3.adjacency_matrix();
        for (i, row) in expected.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert_eq!(a.get(i, j), e as f64, "entry ({i},{j})");
            }
        }
        assert_eq!(a.trace(), 3.0);
    }

    #[test]
    fn adjacency_small_cases() {
        let z = Graph::empty(3).adjacency_matrix();
        assert!(z.entries().iter().all(|&x| x == 0.0));
        let k2l = Graph::complete(2).unwrap().with_loops([0]).unwrap();
        assert_eq!(
            k2l.adjacency_matrix(),
            SymmetricMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap()
        );
    }

    #[test]
    fn edge_mask_round_trip() {
        for mask in 0..64u64 {
            let g = Graph::from_edge_mask(4, mask);
            assert_eq!(g.edge_mask(), mask);
        }
        assert_eq!(Graph::from_edge_mask(3, 0b111), Graph::complete(3).unwrap());
        assert_eq!(Graph::from_edge_mask(3, 0b001).edges().next(), Some((0, 1)));
        assert_eq!(Graph::from_edge_mask(3, 0b010).edges().next(), Some((0, 2)));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(5).unwrap().is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(Graph::empty(1).is_connected());
        let p2 = Graph::path(2).unwrap();
        assert!(!p2.disjoint_union(&p2).is_connected());
    }
}
