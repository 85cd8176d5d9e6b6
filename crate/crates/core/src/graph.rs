//! Dynamic vertex-arrival graph with an irrevocable proper coloring.
//!
//! Vertices arrive one at a time and are never removed. Adjacency is kept
//! symmetric and sorted so every iteration order is deterministic.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Vertex identifier, assigned in arrival order starting at 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(u32);

impl VertexId {
    /// Builds an id. Ids are 1-based; 0 is not a vertex.
    pub fn new(id: u32) -> VertexId {
        assert!(id >= 1, "vertex ids start at 1");
        VertexId(id)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn index(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A color: an opaque positive integer. Algorithms may skip values, so the
/// graph tracks the set of distinct values rather than assuming contiguity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Color(u32);

impl Color {
    pub fn new(value: u32) -> Color {
        assert!(value >= 1, "colors start at 1");
        Color(value)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Length of the shortest odd cycle; `Infinite` exactly when the graph is
/// bipartite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OddGirth {
    Finite(u32),
    Infinite,
}

impl OddGirth {
    pub fn is_infinite(self) -> bool {
        matches!(self, OddGirth::Infinite)
    }

    /// True when the odd-girth is at least `k` (bipartite graphs pass every
    /// threshold).
    pub fn at_least(self, k: u32) -> bool {
        match self {
            OddGirth::Finite(g) => g >= k,
            OddGirth::Infinite => true,
        }
    }
}

impl fmt::Display for OddGirth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddGirth::Finite(g) => write!(f, "{}", g),
            OddGirth::Infinite => write!(f, "inf"),
        }
    }
}

impl PartialOrd for OddGirth {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OddGirth {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use OddGirth::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {vertex} is already colored {existing}; assignments are irrevocable")]
    AlreadyColored { vertex: VertexId, existing: Color },
    #[error("color {color} on vertex {vertex} conflicts with neighbor {conflict}")]
    ImproperColor {
        vertex: VertexId,
        color: Color,
        conflict: VertexId,
    },
    #[error("component of vertex {0} contains an odd cycle")]
    OddCycle(VertexId),
    #[error("vertex {0} is uncolored")]
    Uncolored(VertexId),
    #[error("graph too large for exact search: {n} vertices (cap {cap})")]
    TooLarge { n: usize, cap: usize },
}

/// Growing graph plus its (partial) coloring.
#[derive(Clone, Debug, Default)]
pub struct ColoredGraph {
    adjacency: Vec<Vec<VertexId>>,
    colors: Vec<Option<Color>>,
    distinct: BTreeSet<Color>,
}

impl ColoredGraph {
    pub fn new() -> ColoredGraph {
        ColoredGraph::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.adjacency.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.adjacency.len() as u32).map(VertexId::new)
    }

    /// Sorted, deduplicated neighbor list.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.index()]
    }

    pub fn color(&self, v: VertexId) -> Option<Color> {
        self.colors.get(v.index()).copied().flatten()
    }

    pub fn distinct_color_count(&self) -> usize {
        self.distinct.len()
    }

    pub fn distinct_colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.distinct.iter().copied()
    }

    pub fn max_color(&self) -> Option<Color> {
        self.distinct.iter().next_back().copied()
    }

    /// Adds a vertex adjacent to `neighbors`, returning its fresh id.
    /// The new vertex is uncolored until `assign_color`.
    pub fn add_vertex(&mut self, neighbors: &[VertexId]) -> Result<VertexId, GraphError> {
        for &u in neighbors {
            if !self.contains(u) {
                return Err(GraphError::UnknownVertex(u));
            }
        }
        let set: BTreeSet<VertexId> = neighbors.iter().copied().collect();
        let id = VertexId::new(self.adjacency.len() as u32 + 1);
        for &u in &set {
            // the fresh id is the largest, so pushing keeps lists sorted
            self.adjacency[u.index()].push(id);
        }
        self.adjacency.push(set.into_iter().collect());
        self.colors.push(None);
        Ok(id)
    }

    /// Irrevocably colors `v`. Rejects recoloring and improper colors.
    pub fn assign_color(&mut self, v: VertexId, color: Color) -> Result<(), GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        if let Some(existing) = self.colors[v.index()] {
            return Err(GraphError::AlreadyColored {
                vertex: v,
                existing,
            });
        }
        for &u in &self.adjacency[v.index()] {
            if self.colors[u.index()] == Some(color) {
                return Err(GraphError::ImproperColor {
                    vertex: v,
                    color,
                    conflict: u,
                });
            }
        }
        self.colors[v.index()] = Some(color);
        self.distinct.insert(color);
        Ok(())
    }

    /// Checks that every edge joins differently colored endpoints (uncolored
    /// endpoints are skipped).
    pub fn check_proper(&self) -> Result<(), GraphError> {
        for v in self.vertices() {
            let cv = match self.color(v) {
                Some(c) => c,
                None => continue,
            };
            for &u in self.neighbors(v) {
                if u > v && self.color(u) == Some(cv) {
                    return Err(GraphError::ImproperColor {
                        vertex: u,
                        color: cv,
                        conflict: v,
                    });
                }
            }
        }
        Ok(())
    }

    /// Vertices of the connected component containing `v`, ascending.
    pub fn component_of(&self, v: VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        seen[v.index()] = true;
        queue.push_back(v);
        let mut out = Vec::new();
        while let Some(u) = queue.pop_front() {
            out.push(u);
            for &w in self.neighbors(u) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
        out.sort();
        out
    }

    /// The unique bipartition of `v`'s component into two independent sets,
    /// the side containing `v` first. Fails with `OddCycle` if the component
    /// is not bipartite.
    pub fn bipartition_of_component(
        &self,
        v: VertexId,
    ) -> Result<(Vec<VertexId>, Vec<VertexId>), GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        side[v.index()] = 0;
        queue.push_back(v);
        let mut same = Vec::new();
        let mut other = Vec::new();
        while let Some(u) = queue.pop_front() {
            if side[u.index()] == 0 {
                same.push(u);
            } else {
                other.push(u);
            }
            for &w in self.neighbors(u) {
                if side[w.index()] == u8::MAX {
                    side[w.index()] = 1 - side[u.index()];
                    queue.push_back(w);
                } else if side[w.index()] == side[u.index()] {
                    return Err(GraphError::OddCycle(v));
                }
            }
        }
        same.sort();
        other.sort();
        Ok((same, other))
    }

    /// True when every component is 2-colorable.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for s in self.vertices() {
            if side[s.index()] != u8::MAX {
                continue;
            }
            side[s.index()] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if side[w.index()] == u8::MAX {
                        side[w.index()] = 1 - side[u.index()];
                        queue.push_back(w);
                    } else if side[w.index()] == side[u.index()] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Shortest odd closed walk through `source` found by layered BFS,
    /// truncated at `depth_cap` layers. An edge inside layer `d` witnesses an
    /// odd cycle of length at most `2d+1`; scanning layers outward makes the
    /// first hit the minimum for this source.
    fn odd_walk_from(&self, source: VertexId, depth_cap: u32) -> Option<u32> {
        let n = self.vertex_count();
        let mut dist = vec![u32::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[source.index()] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()];
            for &w in self.neighbors(u) {
                let dw = dist[w.index()];
                if dw == du {
                    return Some(2 * du + 1);
                }
                if dw == u32::MAX && du < depth_cap {
                    dist[w.index()] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Exact odd-girth by BFS layerings from every vertex. For a shortest odd
    /// cycle of length `2k+1`, the BFS from any of its vertices meets an edge
    /// inside layer `k`, so the minimum over sources is exact.
    pub fn odd_girth_sequential(&self) -> OddGirth {
        let mut best: Option<u32> = None;
        for s in self.vertices() {
            let cap = match best {
                // only a strictly shorter odd cycle can improve the answer
                Some(b) => ((b - 2).saturating_sub(1)) / 2,
                None => u32::MAX,
            };
            if let Some(g) = self.odd_walk_from(s, cap) {
                if best.map_or(true, |b| g < b) {
                    best = Some(g);
                }
            }
        }
        match best {
            Some(g) => OddGirth::Finite(g),
            None => OddGirth::Infinite,
        }
    }

    /// Exact odd-girth with the per-source scans fanned out across threads.
    #[cfg(feature = "parallel")]
    pub fn odd_girth_parallel(&self) -> OddGirth {
        use rayon::prelude::*;
        let n = self.vertex_count() as u32;
        let best = (1..=n)
            .into_par_iter()
            .filter_map(|id| self.odd_walk_from(VertexId::new(id), u32::MAX))
            .min();
        match best {
            Some(g) => OddGirth::Finite(g),
            None => OddGirth::Infinite,
        }
    }

    /// Exact odd-girth; parallel when the `parallel` feature is enabled.
    pub fn odd_girth(&self) -> OddGirth {
        #[cfg(feature = "parallel")]
        {
            self.odd_girth_parallel()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.odd_girth_sequential()
        }
    }

    /// One-sided probe: the shortest odd closed walk detectable from this
    /// single source. Finding one is definitive; not finding one is not.
    pub fn odd_walk_through(&self, source: VertexId) -> Option<u32> {
        self.odd_walk_from(source, u32::MAX)
    }

    /// Shortest odd cycle of length at most `max_len`, or `None` if every odd
    /// cycle (if any) is longer. Exact for thresholds: the BFS witness for an
    /// odd cycle of length `g` sits at depth `(g-1)/2`.
    pub fn shortest_odd_cycle_at_most(&self, max_len: u32) -> Option<u32> {
        let cap = (max_len.saturating_sub(1)) / 2;
        let mut best: Option<u32> = None;
        for s in self.vertices() {
            if let Some(g) = self.odd_walk_from(s, cap) {
                if g <= max_len && best.map_or(true, |b| g < b) {
                    best = Some(g);
                }
            }
        }
        best
    }
}
