//! Simple undirected graphs on at most 63 vertices.
//!
//! Adjacency is stored as one neighbor bitmask per vertex, so a vertex set
//! fits in a single machine word and closed-neighborhood tests are a couple
//! of bitwise operations. Graphs are immutable values: every structural
//! operation returns a new graph.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_VERTICES: usize = 63;

/// A subset of the vertices `0..n` of some graph, as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// All of `0..n`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[must_use]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[must_use]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::empty(), VertexSet::with)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "vertex count",
            got: n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

/// Packs the bits of `mask` that lie in `keep` into the low positions,
/// preserving their order.
fn compress(mask: u64, keep: u64) -> u64 {
    let mut out = 0;
    let mut pos = 0;
    let mut k = keep;
    while k != 0 {
        let b = k & k.wrapping_neg();
        if mask & b != 0 {
            out |= 1 << pos;
        }
        pos += 1;
        k &= k - 1;
    }
    out
}

impl Graph {
    fn from_adj(adj: Vec<u64>) -> Self {
        let g = Graph { adj };
        debug_assert!(g.invariants_hold(), "graph invariant violated: {g:?}");
        g
    }

    /// Symmetric, loop-free, and no neighbor index at or beyond `n`.
    pub fn invariants_hold(&self) -> bool {
        let n = self.n();
        let all = VertexSet::full(n).bits();
        self.adj.iter().enumerate().all(|(v, &nb)| {
            nb & !all == 0
                && nb >> v & 1 == 0
                && VertexSet(nb).iter().all(|u| self.adj[u] >> v & 1 == 1)
        })
    }

    /// The edgeless graph `O_n`.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph::from_adj(vec![0; n]))
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let all = VertexSet::full(n).bits();
        Ok(Graph::from_adj((0..n).map(|v| all & !(1 << v)).collect()))
    }

    /// Builds a graph from an edge list. Repeated edges are harmless; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SpecDomain(format!("self-loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph::from_adj(adj))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(self.vertices()) {
            let bad = s.difference(self.vertices()).iter().next().unwrap_or(64);
            return Err(Error::InvalidVertex {
                vertex: bad,
                n: self.n(),
            });
        }
        Ok(())
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]))
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v] | 1 << v))
    }

    /// `N[v]` as raw masks, indexed by vertex. This is what the enumeration
    /// oracle consumes.
    pub fn closed_masks(&self) -> Vec<u64> {
        self.adj
            .iter()
            .enumerate()
            .map(|(v, &nb)| nb | 1 << v)
            .collect()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.neighbors(v).map(VertexSet::len)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|nb| nb.count_ones() as usize).collect()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, &nb)| {
            VertexSet(nb & !((2u64 << u) - 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.is_subset(self.vertices())
            && s.iter()
                .all(|v| s.without(v).is_subset(VertexSet(self.adj[v])))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.is_subset(self.vertices()) && s.iter().all(|v| self.adj[v] & s.bits() == 0)
    }

    /// Induced subgraph on `V ∖ s`. Survivors keep their relative order and
    /// are renumbered `0..n-|s|`.
    pub fn delete_vertices(&self, s: VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        let keep = self.vertices().difference(s).bits();
        let adj = VertexSet(keep)
            .iter()
            .map(|v| compress(self.adj[v], keep))
            .collect();
        Ok(Graph::from_adj(adj))
    }

    pub fn delete_vertex(&self, u: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.delete_vertices(VertexSet::singleton(u))
    }

    pub fn induced(&self, s: VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        self.delete_vertices(self.vertices().difference(s))
    }

    /// `G/u`: make `N(u)` a clique, then delete `u`.
    pub fn contract_vertex(&self, u: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        let nu = self.adj[u];
        let mut adj = self.adj.clone();
        for v in VertexSet(nu).iter() {
            adj[v] |= nu & !(1 << v);
        }
        Graph::from_adj(adj).delete_vertex(u)
    }

    /// `G ∪ H`; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n1 = self.n();
        check_order(n1 + other.n())?;
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|&nb| nb << n1))
            .collect();
        Ok(Graph::from_adj(adj))
    }

    /// `G + H`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let (n1, n2) = (self.n(), other.n());
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(n1).bits();
        let right = VertexSet::full(n1 + n2).bits() & !left;
        for (v, nb) in g.adj.iter_mut().enumerate() {
            *nb |= if v < n1 { right } else { left };
        }
        debug_assert!(g.invariants_hold());
        Ok(g)
    }

    /// Corona `G ∘ H`. Vertices `0..n` are those of `G`; copy `i` of `H`
    /// occupies `n + i*m .. n + (i+1)*m` and is fully joined to vertex `i`.
    pub fn corona(&self, h: &Graph) -> Result<Graph> {
        let (n, m) = (self.n(), h.n());
        if n == 0 {
            return Err(Error::SpecDomain(
                "corona needs a nonempty base graph".into(),
            ));
        }
        let order = n * (1 + m);
        if order > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "corona order",
                got: order,
                limit: MAX_VERTICES,
            });
        }
        let mut adj = self.adj.clone();
        adj.resize(order, 0);
        let block = VertexSet::full(m).bits();
        for i in 0..n {
            let offset = n + i * m;
            for (j, &nb) in h.adj.iter().enumerate() {
                adj[offset + j] = nb << offset | 1 << i;
            }
            adj[i] |= block << offset;
        }
        Ok(Graph::from_adj(adj))
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n() {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let next = VertexSet(frontier)
                    .iter()
                    .fold(0, |acc, w| acc | self.adj[w])
                    & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    /// Size of a maximum independent set, by exact branching.
    pub fn independence_number(&self) -> usize {
        fn mis(adj: &[u64], cand: u64) -> usize {
            if cand == 0 {
                return 0;
            }
            let mut best_v = 0;
            let mut best_d = 0;
            for v in VertexSet(cand).iter() {
                let d = (adj[v] & cand).count_ones();
                if d <= 1 {
                    // a vertex of degree <= 1 is in some maximum independent set
                    return 1 + mis(adj, cand & !(adj[v] | 1 << v));
                }
                if d > best_d {
                    best_d = d;
                    best_v = v;
                }
            }
            let v = best_v;
            let skip = mis(adj, cand & !(1 << v));
            let take = 1 + mis(adj, cand & !(adj[v] | 1 << v));
            skip.max(take)
        }
        mis(&self.adj, self.vertices().bits())
    }

    /// Lexicographically smallest adjacency list over all relabelings.
    /// Only for tiny graphs (at most 8 vertices); `None` otherwise.
    pub fn canonical_form(&self) -> Option<Vec<u64>> {
        let n = self.n();
        if n > 8 {
            return None;
        }
        (0..n)
            .permutations(n)
            .map(|perm| {
                let mut adj = vec![0u64; n];
                for (u, v) in self.edges() {
                    adj[perm[u]] |= 1 << perm[v];
                    adj[perm[v]] |= 1 << perm[u];
                }
                adj
            })
            .min()
    }

    pub fn is_isomorphic_small(&self, other: &Graph) -> Option<bool> {
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return Some(false);
        }
        Some(self.canonical_form()? == other.canonical_form()?)
    }

    /// Edge-list text: a line with `n`, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list text format. `#` starts a comment; blank lines
    /// are ignored.
    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::parse(first, format!("bad vertex count {header:?}")))?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let fields: Vec<&str> = l.split_whitespace().collect();
            let [a, b] = fields[..] else {
                return Err(Error::parse(line, "expected `u v`"));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("bad vertex index {s:?}")))
            };
            let (u, v) = (parse(a)?, parse(b)?);
            if u >= n || v >= n {
                return Err(Error::parse(
                    line,
                    format!("edge {u} {v} out of range for n={n}"),
                ));
            }
            if u == v {
                return Err(Error::parse(line, format!("self-loop at {u}")));
            }
            edges.push((u, v));
        }
        Graph::from_edges(n, edges)
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_text(s)
    }
}
