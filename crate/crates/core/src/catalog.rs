//! Named fixtures: `name(":" param)*`.
//!
//! | spec | graph |
//! |------|-------|
//! | `cycle:n` | `Cay(Z/n, {±1})` |
//! | `prism:n` | `Cay(Z/n ⊕ Z/2, {(±1,0), (0,1)})` |
//! | `zmod:n1,n2,...` | direct sum with the standard generators |
//! | `bipartite:n,m` | `K_{n,m}`, base in the `n`-part |
//! | `odd:n`, `petersen` | odd graph `O_n` (`petersen` = `O_3`) |
//! | `lattice:d[:r=R]` | ball of `Z^d` |
//! | `free:n[:r=R]` | ball of `F_n` |
//! | `ladder[:r=R]` | ball of `Z ⊕ Z/2` |
//! | `tree:binary:D` | rooted binary tree to depth `D` |
//! | `figure:N[:1]` | drawn example `N` (`:1` selects the alternate base) |
//! | `path:n` | path on `n` vertices, base at an end |

use std::path::Path;

use crate::cayley::{
    build_cayley, parse_group_spec, realize_full, realize_window, standard_generators, CayleyWindow,
    GroupElement, GroupKind, DEFAULT_ELEMENT_CAP,
};
use crate::error::{ForgeError, Result};
use crate::graph::{Graph, GraphFile, PointedGraph, WindowKind};

pub const DEFAULT_LATTICE_RADIUS: usize = 12;
pub const DEFAULT_FREE_RADIUS: usize = 6;

const FIGURE3: &str = include_str!("../fixtures/figure3.json");
const FIGURE4: &str = include_str!("../fixtures/figure4.json");
const FIGURE5: &str = include_str!("../fixtures/figure5.json");
const FIGURE6: &str = include_str!("../fixtures/figure6.json");

#[derive(Debug, Clone)]
enum Source {
    Plain(PointedGraph),
    Cayley(Box<CayleyWindow>),
}

/// A catalog entry: a pointed graph, plus its group data when it is a
/// Cayley graph.
#[derive(Debug, Clone)]
pub struct Fixture {
    name: String,
    source: Source,
    note: Option<String>,
}

impl Fixture {
    pub fn plain(name: impl Into<String>, pointed: PointedGraph) -> Self {
        Fixture {
            name: name.into(),
            source: Source::Plain(pointed),
            note: None,
        }
    }

    pub fn from_cayley(name: impl Into<String>, window: CayleyWindow) -> Self {
        Fixture {
            name: name.into(),
            source: Source::Cayley(Box::new(window)),
            note: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn pointed(&self) -> &PointedGraph {
        match &self.source {
            Source::Plain(pg) => pg,
            Source::Cayley(w) => w.pointed(),
        }
    }

    pub fn cayley(&self) -> Option<&CayleyWindow> {
        match &self.source {
            Source::Cayley(w) => Some(w),
            Source::Plain(_) => None,
        }
    }

    /// The Cayley data, or `NotCayley`.
    pub fn require_cayley(&self) -> Result<&CayleyWindow> {
        self.cayley()
            .ok_or_else(|| ForgeError::NotCayley(self.name.clone()))
    }
}

/// Looks up a fixture using the built-in figure data.
pub fn catalog(spec: &str) -> Result<Fixture> {
    catalog_with_dir(spec, None)
}

/// Looks up a fixture; figure files are read from `dir` when given.
pub fn catalog_with_dir(spec: &str, dir: Option<&Path>) -> Result<Fixture> {
    let parts: Vec<&str> = spec.split(':').collect();
    let (radius, parts) = split_radius(spec, &parts)?;
    let name = parts[0];
    let params = &parts[1..];
    let bad = |msg: &str| ForgeError::BadParameter(format!("{msg} in `{spec}`"));
    let ints = |p: &str| -> Result<Vec<usize>> {
        p.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad("expected integers")))
            .collect()
    };
    let one_int = |min: usize| -> Result<usize> {
        match params {
            [p] => match ints(p)?.as_slice() {
                [n] if *n >= min => Ok(*n),
                _ => Err(bad(&format!("expected one integer >= {min}"))),
            },
            _ => Err(bad("expected one parameter")),
        }
    };
    let finite_only = || -> Result<()> {
        match radius {
            Some(_) => Err(bad("finite fixtures take no radius")),
            None => Ok(()),
        }
    };

    let fixture = match name {
        "cycle" => {
            finite_only()?;
            let n = one_int(3)?;
            finite_cayley(spec, GroupKind::Abelian { moduli: vec![n as u64] }, None)?
        }
        "prism" => {
            finite_only()?;
            let n = one_int(3)?;
            let kind = GroupKind::Abelian {
                moduli: vec![n as u64, 2],
            };
            let gens = vec![
                GroupElement::Vector(vec![1, 0]),
                GroupElement::Vector(vec![n as i64 - 1, 0]),
                GroupElement::Vector(vec![0, 1]),
            ];
            finite_cayley(spec, kind, Some(gens))?
        }
        "zmod" => {
            finite_only()?;
            let (kind, _) = parse_group_spec(&format!("zmod:{}", params.join(":")))?;
            finite_cayley(spec, kind, None)?
        }
        "bipartite" => {
            finite_only()?;
            let (n, m) = match params {
                [p] => match ints(p)?.as_slice() {
                    [n, m] if *n >= 1 && *m >= 1 => (*n, *m),
                    _ => return Err(bad("expected n,m >= 1")),
                },
                _ => return Err(bad("expected n,m")),
            };
            Fixture::plain(spec, complete_bipartite(n, m)?)
        }
        "odd" => {
            finite_only()?;
            Fixture::plain(spec, odd_graph(one_int(2)?)?)
        }
        "petersen" => {
            finite_only()?;
            if !params.is_empty() {
                return Err(bad("no parameters expected"));
            }
            Fixture::plain(spec, odd_graph(3)?)
        }
        "lattice" => {
            let d = one_int(1)?;
            infinite_cayley(spec, GroupKind::Abelian { moduli: vec![0; d] }, radius.unwrap_or(DEFAULT_LATTICE_RADIUS))?
        }
        "free" => {
            let n = one_int(1)?;
            if n > 26 {
                return Err(bad("rank must be at most 26"));
            }
            infinite_cayley(spec, GroupKind::Free { rank: n }, radius.unwrap_or(DEFAULT_FREE_RADIUS))?
        }
        "ladder" => {
            if !params.is_empty() {
                return Err(bad("no parameters expected"));
            }
            infinite_cayley(
                spec,
                GroupKind::Abelian { moduli: vec![0, 2] },
                radius.unwrap_or(DEFAULT_LATTICE_RADIUS),
            )?
        }
        "tree" => {
            finite_only()?;
            match params {
                ["binary", d] => {
                    let depth = d.parse::<usize>().map_err(|_| bad("expected a depth"))?;
                    Fixture::plain(spec, binary_tree(depth)?)
                }
                _ => return Err(bad("expected tree:binary:D")),
            }
        }
        "figure" => {
            finite_only()?;
            let (n, alternate) = match params {
                [n] => (n.parse::<usize>().map_err(|_| bad("bad figure number"))?, false),
                [n, "1"] => (n.parse::<usize>().map_err(|_| bad("bad figure number"))?, true),
                _ => return Err(bad("expected figure:N or figure:N:1")),
            };
            figure(spec, n, alternate, dir)?
        }
        "path" => {
            finite_only()?;
            let n = one_int(1)?;
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Fixture::plain(spec, PointedGraph::new(Graph::from_edges(n, &edges)?, 0)?)
        }
        _ => return Err(ForgeError::UnknownFixture(spec.to_string())),
    };
    Ok(fixture)
}

fn split_radius<'a>(spec: &str, parts: &[&'a str]) -> Result<(Option<usize>, Vec<&'a str>)> {
    match parts.split_last() {
        Some((last, rest)) if last.starts_with("r=") => {
            let r = last[2..]
                .parse::<usize>()
                .ok()
                .filter(|&r| r >= 1)
                .ok_or_else(|| ForgeError::BadParameter(format!("bad radius in `{spec}`")))?;
            Ok((Some(r), rest.to_vec()))
        }
        _ => Ok((None, parts.to_vec())),
    }
}

fn finite_cayley(spec: &str, kind: GroupKind, gens: Option<Vec<GroupElement>>) -> Result<Fixture> {
    let gens = gens.unwrap_or_else(|| standard_generators(&kind));
    let cg = build_cayley(kind, gens)?;
    Ok(Fixture::from_cayley(spec, realize_full(&cg, DEFAULT_ELEMENT_CAP)?))
}

fn infinite_cayley(spec: &str, kind: GroupKind, radius: usize) -> Result<Fixture> {
    let gens = standard_generators(&kind);
    let cg = build_cayley(kind, gens)?;
    Ok(Fixture::from_cayley(spec, realize_window(&cg, radius, DEFAULT_ELEMENT_CAP)?))
}

fn complete_bipartite(n: usize, m: usize) -> Result<PointedGraph> {
    let mut edges = Vec::with_capacity(n * m);
    for a in 0..n {
        for b in n..n + m {
            edges.push((a, b));
        }
    }
    PointedGraph::new(Graph::from_edges(n + m, &edges)?, 0)
}

/// `O_n`: the `(n-1)`-subsets of a `(2n-1)`-set, adjacent when disjoint.
fn odd_graph(n: usize) -> Result<PointedGraph> {
    let ground = 2 * n - 1;
    if ground > 20 {
        return Err(ForgeError::BadParameter(format!("odd:{n} is too large")));
    }
    let subsets: Vec<u32> = (0u32..1 << ground)
        .filter(|s| s.count_ones() as usize == n - 1)
        .collect();
    let mut edges = Vec::new();
    for (a, &s) in subsets.iter().enumerate() {
        for (b, &t) in subsets.iter().enumerate().skip(a + 1) {
            if s & t == 0 {
                edges.push((a, b));
            }
        }
    }
    PointedGraph::new(Graph::from_edges(subsets.len(), &edges)?, 0)
}

/// The rooted tree where the root has two children and every other vertex
/// has two children and a parent, cut at depth `depth`.
fn binary_tree(depth: usize) -> Result<PointedGraph> {
    if depth > 20 {
        return Err(ForgeError::BadParameter(format!("tree depth {depth} is too large")));
    }
    let n = (1usize << (depth + 1)) - 1;
    let edges: Vec<_> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
    PointedGraph::window(Graph::from_edges(n, &edges)?, 0, depth, WindowKind::Generic)
}

fn figure(spec: &str, n: usize, alternate: bool, dir: Option<&Path>) -> Result<Fixture> {
    if n == 1 {
        if alternate {
            return Err(ForgeError::UnknownFixture(spec.to_string()));
        }
        return Ok(Fixture::plain(spec, binary_tree(8)?));
    }
    if n == 2 {
        if alternate {
            return Err(ForgeError::UnknownFixture(spec.to_string()));
        }
        return Ok(Fixture::plain(spec, complete_bipartite(2, 3)?));
    }
    let builtin = match n {
        3 => FIGURE3,
        4 => FIGURE4,
        5 => FIGURE5,
        6 => FIGURE6,
        _ => return Err(ForgeError::UnknownFixture(spec.to_string())),
    };
    let file = match dir {
        Some(d) => GraphFile::load(&d.join(format!("figure{n}.json")))?,
        None => GraphFile::from_json(builtin)?,
    };
    let mut file = file;
    if alternate {
        // only the third drawing marks a second base point
        if n != 3 {
            return Err(ForgeError::UnknownFixture(spec.to_string()));
        }
        file.base = label_to_vertex(&file, "F")
            .ok_or_else(|| ForgeError::BadParameter("figure 3 lacks vertex F".into()))?;
    }
    let pointed = file.to_pointed()?;
    Ok(Fixture {
        name: spec.to_string(),
        source: Source::Plain(pointed),
        note: file.note.clone(),
    })
}

fn label_to_vertex(file: &GraphFile, label: &str) -> Option<usize> {
    file.labels
        .as_ref()?
        .iter()
        .find(|(_, l)| l.as_str() == label)
        .and_then(|(k, _)| k.parse().ok())
}

/// A fixture spec or a path to a graph JSON file.
pub fn load_fixture(spec_or_path: &str, dir: Option<&Path>) -> Result<Fixture> {
    let path = Path::new(spec_or_path);
    if spec_or_path.ends_with(".json") || path.is_file() {
        let file = GraphFile::load(path)?;
        let pointed = file.to_pointed()?;
        return Ok(Fixture {
            name: spec_or_path.to_string(),
            source: Source::Plain(pointed),
            note: file.note,
        });
    }
    catalog_with_dir(spec_or_path, dir)
}

/// Finite Cayley fixtures used by the oracle cross-checks.
pub fn finite_cayley_specs() -> Vec<String> {
    let mut specs: Vec<String> = (3..=8).map(|n| format!("cycle:{n}")).collect();
    specs.extend((3..=6).map(|n| format!("prism:{n}")));
    specs.push("zmod:2,2,2".to_string());
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_and_prism_sizes() {
        let k23 = catalog("bipartite:2,3").unwrap();
        assert_eq!(k23.pointed().vertex_count(), 5);
        assert_eq!(k23.pointed().graph().edge_count(), 6);
        let idx = k23.pointed().index_set();
        assert_eq!(idx.indices, vec![0, 1, 2]);

        let p3 = catalog("prism:3").unwrap();
        assert_eq!(p3.pointed().vertex_count(), 6);
        assert_eq!(p3.pointed().graph().edge_count(), 9);
        assert_eq!(p3.pointed().max_index(), Some(2));
        assert!(p3.pointed().check_assumptions().all_pass());
    }

    #[test]
    fn cycles_have_two_point_spheres() {
        for n in 3..=12 {
            let c = catalog(&format!("cycle:{n}")).unwrap();
            let pg = c.pointed();
            for k in 1..=n / 2 {
                let expected = if n % 2 == 0 && k == n / 2 { 1 } else { 2 };
                assert_eq!(pg.sphere(k).len(), expected, "cycle:{n} k={k}");
            }
        }
    }

    #[test]
    fn petersen() {
        let p = catalog("petersen").unwrap();
        let g = p.pointed().graph();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        let sizes: Vec<usize> = (0..3).map(|i| p.pointed().sphere(i).len()).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
    }

    #[test]
    fn tree_window() {
        let t = catalog("tree:binary:8").unwrap();
        let pg = t.pointed();
        assert!(pg.is_truncated());
        assert_eq!(pg.exact_radius(), Some(8));
        // a child of the root has the root and two children as neighbors
        assert_eq!(pg.sphere_at(1, 1).unwrap(), &[0, 3, 4]);
    }

    #[test]
    fn radius_suffix() {
        let z = catalog("lattice:1:r=10").unwrap();
        assert_eq!(z.pointed().vertex_count(), 21);
        assert!(z.pointed().is_truncated());
        let l = catalog("ladder:r=5").unwrap();
        assert_eq!(l.pointed().vertex_count(), 11 + 9);
        assert!(matches!(catalog("cycle:4:r=3"), Err(ForgeError::BadParameter(_))));
    }

    #[test]
    fn figures_load_with_their_bases() {
        for (spec, n, base) in [
            ("figure:3", 7, "A"),
            ("figure:3:1", 7, "F"),
            ("figure:4", 4, "A"),
            ("figure:5", 9, "A"),
            ("figure:6", 8, "K"),
        ] {
            let f = catalog(spec).unwrap();
            let pg = f.pointed();
            assert_eq!(pg.vertex_count(), n, "{spec}");
            assert_eq!(pg.graph().label(pg.base()), Some(base), "{spec}");
            assert!(f.note().is_some());
        }
        assert!((0..7).all(|v| catalog("figure:3").unwrap().pointed().graph().degree(v) == 4));
    }

    #[test]
    fn unknown_and_bad_specs() {
        assert!(matches!(catalog("nope:3"), Err(ForgeError::UnknownFixture(_))));
        assert!(matches!(catalog("cycle:x"), Err(ForgeError::BadParameter(_))));
        assert!(matches!(catalog("figure:9"), Err(ForgeError::UnknownFixture(_))));
        assert!(matches!(catalog("figure:4:1"), Err(ForgeError::UnknownFixture(_))));
        assert!(catalog("bipartite:2").is_err());
    }

    #[test]
    fn non_cayley_fixture_reports_it() {
        let k = catalog("bipartite:2,3").unwrap();
        assert!(matches!(k.require_cayley(), Err(ForgeError::NotCayley(_))));
        assert!(catalog("prism:4").unwrap().require_cayley().is_ok());
    }
}
