//! Pointed graphs: BFS distances, spheres `S_n(v)`, the index set `I(Γ)` and
//! the standing assumptions every graph must satisfy.
//!
//! Infinite graphs are represented by finite *windows*: the ball of radius
//! `R` around the base, as an induced subgraph. A window certifies the sphere
//! `S_n(v)` whenever `|v| + n <= R`, because every path of length at most `n`
//! starting at `v` stays inside the ball of radius `|v| + n`.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{ForgeError, Result};

pub type Vertex = usize;

/// A finite simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(ForgeError::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(ForgeError::SelfLoop { vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(ForgeError::DuplicateEdge {
                    u: u.min(w[0]),
                    v: u.max(w[0]),
                });
            }
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// BFS layers from `source`: `layers[n]` is the sorted list of vertices
    /// at distance `n`. Stops after `max_depth` when given.
    pub fn bfs_layers(&self, source: Vertex, max_depth: Option<usize>) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count()];
        seen[source] = true;
        let mut layers = vec![vec![source]];
        while max_depth.is_none_or(|d| layers.len() <= d) {
            let mut next = Vec::new();
            for &u in layers.last().unwrap() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        layers
    }

    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// All-pairs distances, `None` when the graph is disconnected.
    pub fn distance_matrix(&self) -> Option<Vec<Vec<usize>>> {
        (0..self.vertex_count())
            .map(|v| self.distances_from(v).into_iter().collect::<Option<Vec<_>>>())
            .collect()
    }
}

/// How far a window can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    /// Ball of an arbitrary graph.
    Generic,
    /// Ball of a Cayley graph; distances are translation invariant.
    Translation,
}

/// The largest distance index `M(Γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxIndex {
    Finite(usize),
    /// Window of an infinite graph; `M` is at least the window radius.
    Unbounded { at_least: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSet {
    pub indices: Vec<usize>,
    pub max: MaxIndex,
}

/// A graph with a base vertex, its distance profile, and a truncation
/// certificate.
#[derive(Debug, Clone)]
pub struct PointedGraph {
    graph: Graph,
    base: Vertex,
    dist: Vec<usize>,
    spheres: Vec<Vec<Vertex>>,
    window: Option<(usize, WindowKind)>,
    layers: Vec<OnceLock<Vec<Vec<Vertex>>>>,
}

impl PointedGraph {
    /// A finite, complete pointed graph.
    pub fn new(graph: Graph, base: Vertex) -> Result<Self> {
        Self::build(graph, base, None)
    }

    /// The ball of radius `radius` around `base` in a larger (possibly
    /// infinite) graph. Every vertex must lie within `radius` of `base`.
    pub fn window(graph: Graph, base: Vertex, radius: usize, kind: WindowKind) -> Result<Self> {
        Self::build(graph, base, Some((radius, kind)))
    }

    fn build(graph: Graph, base: Vertex, window: Option<(usize, WindowKind)>) -> Result<Self> {
        let n = graph.vertex_count();
        if base >= n {
            return Err(ForgeError::VertexOutOfRange {
                vertex: base,
                count: n,
            });
        }
        let dist = graph
            .distances_from(base)
            .into_iter()
            .enumerate()
            .map(|(v, d)| d.ok_or(ForgeError::DisconnectedGraph { vertex: v }))
            .collect::<Result<Vec<_>>>()?;
        let max = dist.iter().copied().max().unwrap_or(0);
        if let Some((radius, _)) = window {
            if max > radius {
                return Err(ForgeError::BadParameter(format!(
                    "window of radius {radius} contains a vertex at distance {max}"
                )));
            }
        }
        let mut spheres = vec![Vec::new(); max + 1];
        for (v, &d) in dist.iter().enumerate() {
            spheres[d].push(v);
        }
        let layers = (0..n).map(|_| OnceLock::new()).collect();
        Ok(PointedGraph {
            graph,
            base,
            dist,
            spheres,
            window,
            layers,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `|v|`, the distance from the base.
    pub fn norm(&self, v: Vertex) -> usize {
        self.dist[v]
    }

    pub fn distances(&self) -> &[usize] {
        &self.dist
    }

    pub fn is_truncated(&self) -> bool {
        self.window.is_some()
    }

    pub fn window_kind(&self) -> Option<WindowKind> {
        self.window.map(|(_, k)| k)
    }

    pub fn window_radius(&self) -> Option<usize> {
        self.window.map(|(r, _)| r)
    }

    /// Sphere certificate: `S_n(v)` is exact whenever `|v| + n` is at most
    /// this value. `None` means unbounded (finite complete graph).
    pub fn exact_radius(&self) -> Option<usize> {
        self.window_radius()
    }

    /// Pairwise certificate: `d(u, v)` is exact for all `|u|, |v|` up to this
    /// value. A shortest path between two such vertices has length at most
    /// `2r` and stays within `3r` of the base.
    pub fn pairwise_exact_radius(&self) -> Option<usize> {
        self.window_radius().map(|r| r / 3)
    }

    /// `S_n(v_0)`; empty beyond the last sphere.
    pub fn sphere(&self, n: usize) -> &[Vertex] {
        self.spheres.get(n).map_or(&[], Vec::as_slice)
    }

    /// Number of nonempty base spheres stored (`M + 1` for finite graphs).
    pub fn sphere_count(&self) -> usize {
        self.spheres.len()
    }

    /// Checks that `S_n(v)` is certified.
    pub fn certify(&self, v: Vertex, n: usize) -> Result<()> {
        match self.window_radius() {
            Some(r) if self.dist[v] + n > r => Err(ForgeError::RadiusExceeded {
                needed: self.dist[v] + n,
                certified: r,
            }),
            _ => Ok(()),
        }
    }

    fn layers_of(&self, v: Vertex) -> &[Vec<Vertex>] {
        self.layers[v].get_or_init(|| {
            let depth = self.window_radius().map(|r| r.saturating_sub(self.dist[v]));
            self.graph.bfs_layers(v, depth)
        })
    }

    /// `S_n(v)`, sorted. Errors when a window cannot certify the answer.
    pub fn sphere_at(&self, v: Vertex, n: usize) -> Result<&[Vertex]> {
        if v >= self.vertex_count() {
            return Err(ForgeError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count(),
            });
        }
        self.certify(v, n)?;
        Ok(self.layers_of(v).get(n).map_or(&[], Vec::as_slice))
    }

    /// `d(u, v)`, exact whenever the window can certify it.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<usize> {
        let layers = self.layers_of(u);
        for (d, layer) in layers.iter().enumerate() {
            if layer.binary_search(&v).is_ok() {
                return Ok(d);
            }
        }
        let r = self.window_radius().unwrap_or(0);
        Err(ForgeError::RadiusExceeded {
            needed: self.dist[u] + self.dist[u].max(self.dist[v]) + 1,
            certified: r,
        })
    }

    pub fn index_set(&self) -> IndexSet {
        let indices: Vec<usize> = (0..self.spheres.len()).collect();
        let max = match self.window_radius() {
            Some(r) => MaxIndex::Unbounded { at_least: r },
            None => MaxIndex::Finite(self.spheres.len() - 1),
        };
        IndexSet { indices, max }
    }

    /// `M(Γ, v_0)` for finite graphs, `None` for windows.
    pub fn max_index(&self) -> Option<usize> {
        match self.window {
            None => Some(self.spheres.len() - 1),
            Some(_) => None,
        }
    }

    pub fn check_assumptions(&self) -> AssumptionReport {
        let condition_iii = match self.max_index() {
            None => CheckOutcome::Vacuous,
            Some(m) => (0..self.vertex_count())
                .find(|&v| self.layers_of(v).len() <= m)
                .map_or(CheckOutcome::Pass, |v| CheckOutcome::Fail { witness: Some(v) }),
        };
        AssumptionReport {
            simple: CheckOutcome::Pass,
            connected: CheckOutcome::Pass,
            locally_finite: CheckOutcome::Pass,
            condition_iii,
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertex_count(),
            edges: self.graph.edges().map(|(u, v)| [u, v]).collect(),
            base: self.base,
            labels: self.graph.labels().map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(i, s)| (i.to_string(), s.clone()))
                    .collect()
            }),
            window_radius: self.window_radius(),
            note: None,
        }
    }
}

/// Builds a finite pointed graph from a dense edge list.
pub fn build_graph(vertex_count: usize, edges: &[(Vertex, Vertex)], base: Vertex) -> Result<PointedGraph> {
    PointedGraph::new(Graph::from_edges(vertex_count, edges)?, base)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail { witness: Option<Vertex> },
    Vacuous,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self, CheckOutcome::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub simple: CheckOutcome,
    pub connected: CheckOutcome,
    pub locally_finite: CheckOutcome,
    pub condition_iii: CheckOutcome,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        [&self.simple, &self.connected, &self.locally_finite, &self.condition_iii]
            .iter()
            .all(|c| c.passed())
    }
}

/// On-disk graph description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[Vertex; 2]>,
    pub base: Vertex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
    /// Present when the file stores the ball of an infinite graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GraphFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| ForgeError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_pointed(&self) -> Result<PointedGraph> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut graph = Graph::from_edges(self.vertices, &edges)?;
        if let Some(map) = &self.labels {
            let mut labels: Vec<String> = (0..self.vertices).map(|v| v.to_string()).collect();
            for (k, name) in map {
                let v: usize = k
                    .parse()
                    .map_err(|_| ForgeError::Parse(format!("label key `{k}` is not a vertex id")))?;
                if v >= self.vertices {
                    return Err(ForgeError::VertexOutOfRange {
                        vertex: v,
                        count: self.vertices,
                    });
                }
                labels[v] = name.clone();
            }
            graph = graph.with_labels(labels);
        }
        match self.window_radius {
            None => PointedGraph::new(graph, self.base),
            Some(r) => PointedGraph::window(graph, self.base, r, WindowKind::Generic),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> PointedGraph {
        build_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0).unwrap()
    }

    #[test]
    fn four_cycle_spheres() {
        let pg = cycle4();
        assert_eq!(pg.sphere(0), &[0]);
        assert_eq!(pg.sphere(1), &[1, 3]);
        assert_eq!(pg.sphere(2), &[2]);
        assert_eq!(pg.sphere_at(1, 2).unwrap(), &[3]);
        assert_eq!(pg.sphere_at(0, 0).unwrap(), &[0]);
        assert!(pg.sphere_at(0, 3).unwrap().is_empty());
    }

    #[test]
    fn single_vertex() {
        let pg = build_graph(1, &[], 0).unwrap();
        let ix = pg.index_set();
        assert_eq!(ix.indices, vec![0]);
        assert_eq!(ix.max, MaxIndex::Finite(0));
        assert!(pg.check_assumptions().all_pass());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            build_graph(3, &[(0, 1), (2, 2)], 0),
            Err(ForgeError::SelfLoop { vertex: 2 })
        ));
        assert!(matches!(
            build_graph(3, &[(0, 1), (1, 0)], 0),
            Err(ForgeError::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(
            build_graph(3, &[(0, 1)], 0),
            Err(ForgeError::DisconnectedGraph { vertex: 2 })
        ));
        assert!(matches!(
            build_graph(2, &[(0, 5)], 0),
            Err(ForgeError::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn path_fails_condition_iii_at_middle_vertex() {
        let pg = build_graph(3, &[(0, 1), (1, 2)], 0).unwrap();
        assert_eq!(
            pg.check_assumptions().condition_iii,
            CheckOutcome::Fail { witness: Some(1) }
        );
        assert_eq!(cycle4().check_assumptions().condition_iii, CheckOutcome::Pass);
    }

    #[test]
    fn window_certificates() {
        // path 0..=6 viewed as the ball of radius 3 around vertex 3 in Z
        let edges: Vec<_> = (0..6).map(|i| (i, i + 1)).collect();
        let pg = PointedGraph::window(Graph::from_edges(7, &edges).unwrap(), 3, 3, WindowKind::Generic).unwrap();
        assert_eq!(pg.exact_radius(), Some(3));
        assert_eq!(pg.pairwise_exact_radius(), Some(1));
        assert_eq!(pg.sphere_at(4, 2).unwrap(), &[2, 6]);
        assert!(matches!(
            pg.sphere_at(4, 3),
            Err(ForgeError::RadiusExceeded { needed: 4, certified: 3 })
        ));
        assert_eq!(pg.check_assumptions().condition_iii, CheckOutcome::Vacuous);
        assert_eq!(pg.index_set().max, MaxIndex::Unbounded { at_least: 3 });
    }

    #[test]
    fn graph_file_round_trip() {
        let text = r#"{"vertices": 3, "edges": [[0,1],[1,2]], "base": 1, "labels": {"1": "hub"}}"#;
        let file = GraphFile::from_json(text).unwrap();
        let pg = file.to_pointed().unwrap();
        assert_eq!(pg.graph().label(1), Some("hub"));
        assert_eq!(pg.to_file().edges, file.edges);
    }
}
