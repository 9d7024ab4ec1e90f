//! Exhaustive search over small connected graphs for pointed graphs that
//! satisfy (S1) and (S2) but fail to produce a hypergroup.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ForgeError, Result};
use crate::graph::{build_graph, PointedGraph, Vertex};
use crate::hypergroup::{build_table, check_s1, check_s2, classify, Verdict};
use crate::walks::next_permutation;

pub const MAX_SEARCH_VERTICES: usize = 10;

/// A graph on at most 16 vertices as neighbor bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    adj: Vec<u16>,
}

impl SmallGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "small graphs have at most 16 vertices");
        SmallGraph { adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..n {
                if frontier >> v & 1 == 1 {
                    next |= self.adj[v];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == n
    }

    /// Relabels so that old vertex `order[p]` becomes `p`.
    pub fn permuted(&self, order: &[Vertex]) -> SmallGraph {
        let n = self.vertex_count();
        let mut g = SmallGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if self.has_edge(order[a], order[b]) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Upper triangle read column by column, first bit most significant.
    fn code_of(&self, order: &[Vertex]) -> u64 {
        let mut code = 0u64;
        for b in 1..order.len() {
            for a in 0..b {
                code = code << 1 | self.has_edge(order[a], order[b]) as u64;
            }
        }
        code
    }
}

/// Iterated color refinement from the given initial colors; colors are
/// ranks of sorted signatures, so they are invariant under relabeling.
fn refine(g: &SmallGraph, initial: Vec<usize>) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colors = initial;
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| g.has_edge(v, w)).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
        let next_classes = uniq.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

struct Canon<'a> {
    g: &'a SmallGraph,
    cell_of_position: Vec<usize>,
    colors: Vec<usize>,
    total_bits: u32,
    best: Option<(u64, Vec<Vertex>)>,
}

impl Canon<'_> {
    fn search(&mut self, order: &mut Vec<Vertex>, used: u16, code: u64, bits: u32) {
        let p = order.len();
        if p == self.g.vertex_count() {
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, order.clone()));
            }
            return;
        }
        for v in 0..self.g.vertex_count() {
            if used >> v & 1 == 1 || self.colors[v] != self.cell_of_position[p] {
                continue;
            }
            let mut c = code;
            for &u in order.iter() {
                c = c << 1 | self.g.has_edge(u, v) as u64;
            }
            let nbits = bits + p as u32;
            if let Some((best, _)) = &self.best {
                let prefix = if nbits == 0 { 0 } else { best >> (self.total_bits - nbits) };
                if c < prefix {
                    continue;
                }
            }
            order.push(v);
            self.search(order, used | 1 << v, c, nbits);
            order.pop();
        }
    }
}

fn canonical_with_colors(g: &SmallGraph, initial: Vec<usize>) -> (u64, Vec<Vertex>) {
    let n = g.vertex_count();
    let colors = refine(g, initial);
    let mut cell_of_position = colors.clone();
    cell_of_position.sort_unstable();
    let mut canon = Canon {
        g,
        cell_of_position,
        colors,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        best: None,
    };
    canon.search(&mut Vec::with_capacity(n), 0, 0, 0);
    canon.best.expect("at least one ordering")
}

/// Canonical code and the relabeling that attains it. Two graphs on the
/// same number of vertices are isomorphic iff their codes agree.
pub fn canonical_form(g: &SmallGraph) -> (u64, Vec<Vertex>) {
    canonical_with_colors(g, vec![0; g.vertex_count()])
}

/// Canonical code of `(g, base)` up to base-preserving isomorphism.
pub fn pointed_canonical_code(g: &SmallGraph, base: Vertex) -> u64 {
    let initial = (0..g.vertex_count()).map(|v| (v != base) as usize).collect();
    canonical_with_colors(g, initial).0
}

/// Canonical code by trying all `n!` orderings; a slow reference.
pub fn brute_force_canonical_code(g: &SmallGraph) -> u64 {
    let n = g.vertex_count();
    let mut order: Vec<Vertex> = (0..n).collect();
    let mut best = g.code_of(&order);
    while next_permutation(&mut order) {
        best = best.max(g.code_of(&order));
    }
    best
}

/// All connected graphs on `n` vertices up to isomorphism, in canonical
/// labeling, sorted by code. Built by attaching a new vertex to every
/// nonempty subset of each graph on `n - 1` vertices: deleting a non-cut
/// vertex (a leaf of a spanning tree) shows this reaches every class.
pub fn connected_graphs(max_vertices: usize) -> Result<Vec<Vec<SmallGraph>>> {
    if max_vertices > MAX_SEARCH_VERTICES {
        return Err(ForgeError::CapExceeded(format!(
            "graph enumeration is capped at {MAX_SEARCH_VERTICES} vertices"
        )));
    }
    let mut levels: Vec<Vec<SmallGraph>> = Vec::new();
    if max_vertices == 0 {
        return Ok(levels);
    }
    levels.push(vec![SmallGraph::new(1)]);
    for n in 2..=max_vertices {
        let prev = levels.last().unwrap();
        let mut found: Vec<(u64, SmallGraph)> = prev
            .par_iter()
            .flat_map_iter(|g| {
                (1u16..1 << (n - 1)).map(move |mask| {
                    let mut h = g.clone();
                    h.adj.push(mask);
                    for v in 0..n - 1 {
                        if mask >> v & 1 == 1 {
                            h.adj[v] |= 1 << (n - 1);
                        }
                    }
                    let (code, order) = canonical_form(&h);
                    (code, h.permuted(&order))
                })
            })
            .collect();
        found.sort_by_key(|(c, _)| *c);
        found.dedup_by_key(|(c, _)| *c);
        levels.push(found.into_iter().map(|(_, g)| g).collect());
    }
    Ok(levels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasePolicy {
    /// Every vertex as base.
    AllBases,
    /// One base per orbit of the automorphism group.
    CanonicalBase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub vertices: usize,
    pub edges: Vec<[Vertex; 2]>,
    pub base: Vertex,
    pub condition_iii: bool,
    pub s1: bool,
    pub s2: bool,
    /// Present when the pointed graph passes the filter.
    pub verdict: Option<Verdict>,
}

impl SearchRecord {
    pub fn is_counterexample(&self) -> bool {
        self.condition_iii && self.s1 && self.s2 && self.verdict == Some(Verdict::PreHypergroupOnly)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub max_vertices: usize,
    pub base_policy: BasePolicy,
    /// Connected graphs per vertex count `1..=max_vertices`.
    pub graphs_per_size: Vec<usize>,
    pub graphs_examined: usize,
    pub pointed_examined: usize,
    pub passing_filter: usize,
    pub records: Vec<SearchRecord>,
    pub counterexamples: Vec<SearchRecord>,
}

/// Evaluates one pointed graph.
pub fn evaluate(pg: &PointedGraph) -> Result<SearchRecord> {
    let condition_iii = pg.check_assumptions().all_pass();
    let s1 = check_s1(pg)?.holds;
    let s2 = check_s2(pg)?.holds;
    let verdict = if condition_iii && s1 && s2 {
        Some(classify(&build_table(pg, None, "search")?)?.verdict)
    } else {
        None
    };
    Ok(SearchRecord {
        vertices: pg.vertex_count(),
        edges: pg.graph().edges().map(|(u, v)| [u, v]).collect(),
        base: pg.base(),
        condition_iii,
        s1,
        s2,
        verdict,
    })
}

fn bases(g: &SmallGraph, policy: BasePolicy) -> Vec<Vertex> {
    let n = g.vertex_count();
    match policy {
        BasePolicy::AllBases => (0..n).collect(),
        BasePolicy::CanonicalBase => {
            let mut seen = BTreeSet::new();
            (0..n)
                .filter(|&v| seen.insert(pointed_canonical_code(g, v)))
                .collect()
        }
    }
}

pub fn search_conjecture(max_vertices: usize, policy: BasePolicy) -> Result<SearchReport> {
    let levels = connected_graphs(max_vertices)?;
    let graphs: Vec<&SmallGraph> = levels.iter().flatten().collect();
    let per_graph = graphs
        .par_iter()
        .map(|g| {
            bases(g, policy)
                .into_iter()
                .map(|b| evaluate(&build_graph(g.vertex_count(), &g.edges(), b)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let records: Vec<SearchRecord> = per_graph.into_iter().flatten().collect();
    let counterexamples = records.iter().filter(|r| r.is_counterexample()).cloned().collect();
    Ok(SearchReport {
        max_vertices,
        base_policy: policy,
        graphs_per_size: levels.iter().map(Vec::len).collect(),
        graphs_examined: graphs.len(),
        pointed_examined: records.len(),
        passing_filter: records.iter().filter(|r| r.verdict.is_some()).count(),
        records,
        counterexamples,
    })
}

/// Rebuilds a record from its edge list and recomputes every verdict.
pub fn replay(record: &SearchRecord) -> Result<SearchRecord> {
    let edges: Vec<_> = record.edges.iter().map(|&[u, v]| (u, v)).collect();
    evaluate(&build_graph(record.vertices, &edges, record.base)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn all_connected_labeled(n: usize) -> Vec<SmallGraph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                SmallGraph::from_edges(n, &edges)
            })
            .filter(SmallGraph::is_connected)
            .collect()
    }

    #[test]
    fn known_counts() {
        let levels = connected_graphs(7).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn refined_canonical_form_matches_brute_force_classes() {
        for n in 1..=5 {
            let graphs = all_connected_labeled(n);
            let mut fast_to_slow: BTreeMap<u64, u64> = BTreeMap::new();
            let mut slow_to_fast: BTreeMap<u64, u64> = BTreeMap::new();
            for g in &graphs {
                let fast = canonical_form(g).0;
                let slow = brute_force_canonical_code(g);
                assert_eq!(*fast_to_slow.entry(fast).or_insert(slow), slow);
                assert_eq!(*slow_to_fast.entry(slow).or_insert(fast), fast);
            }
            let expected = [1, 1, 2, 6, 21][n - 1];
            assert_eq!(fast_to_slow.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn canonical_labeling_attains_code() {
        let g = SmallGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let (code, order) = canonical_form(&g);
        let h = g.permuted(&order);
        let identity: Vec<usize> = (0..5).collect();
        assert_eq!(h.code_of(&identity), code);
        assert_eq!(canonical_form(&h).0, code);
    }

    #[test]
    fn base_orbits() {
        // the path on 4 vertices has two base orbits; the cycle has one
        let path = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(bases(&path, BasePolicy::CanonicalBase).len(), 2);
        let cycle = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(bases(&cycle, BasePolicy::CanonicalBase), vec![0]);
    }

    #[test]
    fn small_searches() {
        let one = search_conjecture(1, BasePolicy::AllBases).unwrap();
        assert_eq!(one.records.len(), 1);
        assert_eq!(one.records[0].verdict, Some(Verdict::Hypergroup));
        let four = search_conjecture(4, BasePolicy::AllBases).unwrap();
        assert!(four.counterexamples.is_empty());
        assert_eq!(four.graphs_examined, 1 + 1 + 2 + 6);
        for r in &four.records {
            assert_eq!(&replay(r).unwrap(), r);
        }
        assert!(matches!(
            search_conjecture(11, BasePolicy::AllBases),
            Err(ForgeError::CapExceeded(_))
        ));
    }
}
