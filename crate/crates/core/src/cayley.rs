//! Cayley graphs `Cay(G, S)` with the base point at the identity.
//!
//! Three group families are supported: finitely generated abelian groups
//! `Z^d ⊕ Z/n_1 ⊕ ...` (as integer vectors), free groups `F_n` (as freely
//! reduced words) and finite permutation groups (as images of `0..degree`).

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::graph::{Graph, PointedGraph, Vertex, WindowKind};

/// Default cap on the number of elements a realization may hold.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Coordinates, reduced modulo the component moduli.
    Vector(Vec<i64>),
    /// Freely reduced word; letter `k > 0` is generator `k`, `-k` its inverse.
    Word(Vec<i32>),
    /// Image of each point `0..degree`.
    Perm(Vec<u32>),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Word(w) if w.is_empty() => write!(f, "e"),
            GroupElement::Word(w) => {
                for &l in w {
                    let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                    write!(f, "{}", if l > 0 { c } else { c.to_ascii_uppercase() })?;
                }
                Ok(())
            }
            GroupElement::Perm(p) => {
                let mut seen = vec![false; p.len()];
                let mut any = false;
                for start in 0..p.len() {
                    if seen[start] || p[start] as usize == start {
                        continue;
                    }
                    any = true;
                    write!(f, "(")?;
                    let mut x = start;
                    let mut first = true;
                    while !seen[x] {
                        seen[x] = true;
                        if !first {
                            write!(f, " ")?;
                        }
                        write!(f, "{}", x + 1)?;
                        first = false;
                        x = p[x] as usize;
                    }
                    write!(f, ")")?;
                }
                if !any {
                    write!(f, "()")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    /// Direct sum of cyclic groups; modulus 0 stands for `Z`.
    Abelian { moduli: Vec<u64> },
    Free { rank: usize },
    Permutation { degree: usize },
}

impl GroupKind {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupKind::Abelian { moduli } => GroupElement::Vector(vec![0; moduli.len()]),
            GroupKind::Free { .. } => GroupElement::Word(Vec::new()),
            GroupKind::Permutation { degree } => GroupElement::Perm((0..*degree as u32).collect()),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            GroupKind::Abelian { moduli } => moduli.iter().all(|&m| m > 0),
            GroupKind::Free { rank } => *rank == 0,
            GroupKind::Permutation { .. } => true,
        }
    }

    /// Checks that `g` belongs to this group and returns its canonical form.
    pub fn normalize(&self, g: &GroupElement) -> Result<GroupElement> {
        match (self, g) {
            (GroupKind::Abelian { moduli }, GroupElement::Vector(v)) if v.len() == moduli.len() => {
                Ok(GroupElement::Vector(
                    v.iter()
                        .zip(moduli)
                        .map(|(&x, &m)| if m == 0 { x } else { x.rem_euclid(m as i64) })
                        .collect(),
                ))
            }
            (GroupKind::Free { rank }, GroupElement::Word(w))
                if w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank) =>
            {
                Ok(GroupElement::Word(free_reduce(w.iter().copied())))
            }
            (GroupKind::Permutation { degree }, GroupElement::Perm(p)) if p.len() == *degree => {
                let mut seen = vec![false; *degree];
                for &x in p {
                    if x as usize >= *degree || std::mem::replace(&mut seen[x as usize], true) {
                        return Err(ForgeError::Parse("not a permutation".into()));
                    }
                }
                Ok(g.clone())
            }
            _ => Err(ForgeError::KindMismatch),
        }
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        match (self, g, h) {
            (GroupKind::Abelian { moduli }, GroupElement::Vector(a), GroupElement::Vector(b))
                if a.len() == moduli.len() && b.len() == moduli.len() =>
            {
                Ok(GroupElement::Vector(
                    a.iter()
                        .zip(b)
                        .zip(moduli)
                        .map(|((&x, &y), &m)| if m == 0 { x + y } else { (x + y).rem_euclid(m as i64) })
                        .collect(),
                ))
            }
            (GroupKind::Free { .. }, GroupElement::Word(a), GroupElement::Word(b)) => {
                Ok(GroupElement::Word(free_reduce(a.iter().chain(b).copied())))
            }
            (GroupKind::Permutation { degree }, GroupElement::Perm(a), GroupElement::Perm(b))
                if a.len() == *degree && b.len() == *degree =>
            {
                // (gh)(x) = g(h(x))
                Ok(GroupElement::Perm(b.iter().map(|&x| a[x as usize]).collect()))
            }
            _ => Err(ForgeError::KindMismatch),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        match (self, g) {
            (GroupKind::Abelian { moduli }, GroupElement::Vector(a)) if a.len() == moduli.len() => {
                Ok(GroupElement::Vector(
                    a.iter()
                        .zip(moduli)
                        .map(|(&x, &m)| if m == 0 { -x } else { (-x).rem_euclid(m as i64) })
                        .collect(),
                ))
            }
            (GroupKind::Free { .. }, GroupElement::Word(w)) => {
                Ok(GroupElement::Word(w.iter().rev().map(|&l| -l).collect()))
            }
            (GroupKind::Permutation { degree }, GroupElement::Perm(p)) if p.len() == *degree => {
                let mut inv = vec![0u32; p.len()];
                for (x, &y) in p.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                Ok(GroupElement::Perm(inv))
            }
            _ => Err(ForgeError::KindMismatch),
        }
    }

    /// Parses one element literal: `(1,0)` or `3` for abelian groups, `aB`
    /// for free groups (uppercase = inverse), cycle notation `(1 2 3)(4 5)`
    /// with 1-based points for permutation groups.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let raw = match self {
            GroupKind::Abelian { .. } => {
                let inner = text.trim_start_matches('(').trim_end_matches(')');
                let coords = inner
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| ForgeError::Parse(format!("bad vector `{text}`")))?;
                GroupElement::Vector(coords)
            }
            GroupKind::Free { .. } => {
                if text == "e" {
                    GroupElement::Word(Vec::new())
                } else {
                    let letters = text
                        .chars()
                        .map(|c| {
                            if c.is_ascii_lowercase() {
                                Ok((c as u8 - b'a' + 1) as i32)
                            } else if c.is_ascii_uppercase() {
                                Ok(-((c as u8 - b'A' + 1) as i32))
                            } else {
                                Err(ForgeError::Parse(format!("bad word `{text}`")))
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    GroupElement::Word(letters)
                }
            }
            GroupKind::Permutation { degree } => GroupElement::Perm(parse_cycles(text, *degree)?),
        };
        self.normalize(&raw)
    }
}

fn free_reduce(letters: impl Iterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn parse_cycles(text: &str, degree: usize) -> Result<Vec<u32>> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let bad = || ForgeError::Parse(format!("bad cycle notation `{text}`"));
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = open.find(')').ok_or_else(bad)?;
        let points = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<usize>() {
                Ok(p) if p >= 1 && p <= degree => Ok(p - 1),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        // apply this cycle after the ones already read: cycles are disjoint
        // in well-formed input, so the order does not matter
        for (i, &p) in points.iter().enumerate() {
            perm[p] = points[(i + 1) % points.len()] as u32;
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

fn max_cycle_point(text: &str) -> usize {
    text.split(|c: char| !c.is_ascii_digit())
        .filter_map(|s| s.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

/// A group spec string and its standard generating set.
pub fn parse_group_spec(spec: &str) -> Result<(GroupKind, Vec<GroupElement>)> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let ints = |s: &str| -> Result<Vec<u64>> {
        s.split(',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| ForgeError::BadParameter(format!("`{p}` in `{spec}`")))
            })
            .collect()
    };
    match name {
        "zmod" => {
            let moduli = ints(params)?;
            if moduli.is_empty() || moduli.contains(&0) {
                return Err(ForgeError::BadParameter(format!("moduli must be positive in `{spec}`")));
            }
            let kind = GroupKind::Abelian { moduli };
            let gens = standard_generators(&kind);
            Ok((kind, gens))
        }
        "lattice" => {
            let d = match ints(params)?.as_slice() {
                [d] if *d >= 1 => *d as usize,
                _ => return Err(ForgeError::BadParameter(format!("`{spec}` needs one dimension"))),
            };
            let kind = GroupKind::Abelian { moduli: vec![0; d] };
            let gens = standard_generators(&kind);
            Ok((kind, gens))
        }
        "free" => {
            let n = match ints(params)?.as_slice() {
                [n] if *n >= 1 && *n <= 26 => *n as usize,
                _ => return Err(ForgeError::BadParameter(format!("`{spec}` needs a rank in 1..=26"))),
            };
            let kind = GroupKind::Free { rank: n };
            let gens = standard_generators(&kind);
            Ok((kind, gens))
        }
        "perm" => {
            let path = Path::new(params);
            let text = std::fs::read_to_string(path).map_err(|source| ForgeError::Io {
                path: params.to_string(),
                source,
            })?;
            parse_permutation_generators(&text)
        }
        _ => Err(ForgeError::UnknownFixture(spec.to_string())),
    }
}

/// Generators in cycle notation, one per line; `#` starts a comment.
pub fn parse_permutation_generators(text: &str) -> Result<(GroupKind, Vec<GroupElement>)> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .collect();
    let degree = lines.iter().map(|l| max_cycle_point(l)).max().unwrap_or(0);
    let kind = GroupKind::Permutation { degree };
    let gens = lines
        .iter()
        .map(|l| kind.parse_element(l))
        .collect::<Result<Vec<_>>>()?;
    Ok((kind, gens))
}

/// `±e_i` for abelian groups (only `e_i` when the component is `Z/2`),
/// `a_i^{±1}` for free groups. Empty for permutation groups.
pub fn standard_generators(kind: &GroupKind) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    match kind {
        GroupKind::Abelian { moduli } => {
            for (i, &m) in moduli.iter().enumerate() {
                for s in [1i64, -1] {
                    let mut v = vec![0i64; moduli.len()];
                    v[i] = s;
                    gens.push(kind.normalize(&GroupElement::Vector(v)).unwrap());
                }
                if m == 1 {
                    gens.retain(|g| *g != kind.identity());
                }
            }
        }
        GroupKind::Free { rank } => {
            for l in 1..=*rank as i32 {
                gens.push(GroupElement::Word(vec![l]));
                gens.push(GroupElement::Word(vec![-l]));
            }
        }
        GroupKind::Permutation { .. } => {}
    }
    gens.sort();
    gens.dedup();
    gens
}

/// `Cay(G, S)`; the generating set is stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    kind: GroupKind,
    generators: Vec<GroupElement>,
}

impl CayleyGraph {
    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn is_finite(&self) -> bool {
        self.kind.is_finite()
    }
}

/// Validates `S` (symmetric, `e ∉ S`, generating) and builds `Cay(G, S)`.
pub fn build_cayley(kind: GroupKind, generators: Vec<GroupElement>) -> Result<CayleyGraph> {
    let mut gens = generators
        .iter()
        .map(|g| kind.normalize(g))
        .collect::<Result<Vec<_>>>()?;
    gens.sort();
    gens.dedup();
    let e = kind.identity();
    if gens.contains(&e) {
        return Err(ForgeError::ContainsIdentity);
    }
    for g in &gens {
        let inv = kind.inverse(g)?;
        if gens.binary_search(&inv).is_err() {
            return Err(ForgeError::NotSymmetric(g.to_string()));
        }
    }
    match &kind {
        GroupKind::Abelian { moduli } => {
            if !abelian_generates(moduli, &gens) {
                return Err(ForgeError::NotGenerating(format!(
                    "the generators span a proper subgroup of {}",
                    describe_abelian(moduli)
                )));
            }
        }
        GroupKind::Free { rank } => {
            if !free_generates(*rank, &gens) {
                return Err(ForgeError::NotGenerating(format!(
                    "the generators span a proper subgroup of F_{rank}"
                )));
            }
        }
        // G is by definition the group the permutations generate.
        GroupKind::Permutation { .. } => {}
    }
    Ok(CayleyGraph {
        kind,
        generators: gens,
    })
}

fn describe_abelian(moduli: &[u64]) -> String {
    let parts: Vec<String> = moduli
        .iter()
        .map(|&m| if m == 0 { "Z".to_string() } else { format!("Z/{m}") })
        .collect();
    parts.join("+")
}

/// The subgroup generated by `gens` together with the relations `m_i e_i`
/// is all of `Z^d` iff integer row reduction leaves a unit pivot in every
/// column.
fn abelian_generates(moduli: &[u64], gens: &[GroupElement]) -> bool {
    let d = moduli.len();
    let mut rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| match g {
            GroupElement::Vector(v) => v.iter().map(|&x| x as i128).collect(),
            _ => unreachable!("normalized abelian element"),
        })
        .collect();
    for (i, &m) in moduli.iter().enumerate() {
        if m > 0 {
            let mut r = vec![0i128; d];
            r[i] = m as i128;
            rows.push(r);
        }
    }
    for (top, col) in (0..d).enumerate() {
        loop {
            let pivot = (top..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(p) = pivot else { return false };
            rows.swap(top, p);
            let mut clean = true;
            for r in top + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[top][col]);
                    let pivot_row = rows[top].clone();
                    for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                    clean &= rows[r][col] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if rows[top][col].abs() != 1 {
            return false;
        }
    }
    true
}

/// Stallings folding: the subgroup generated by `gens` is all of `F_rank`
/// iff the folded graph is a single vertex carrying a loop for every letter.
fn free_generates(rank: usize, gens: &[GroupElement]) -> bool {
    // edges (u, letter > 0, v)
    let mut edges: Vec<(usize, i32, usize)> = Vec::new();
    let mut vertex_count = 1;
    for g in gens {
        let GroupElement::Word(w) = g else { unreachable!() };
        let mut at = 0;
        for (i, &l) in w.iter().enumerate() {
            let next = if i + 1 == w.len() {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            if l > 0 {
                edges.push((at, l, next));
            } else {
                edges.push((next, -l, at));
            }
            at = next;
        }
    }
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    loop {
        let mut out: HashMap<(usize, i32), usize> = HashMap::new();
        let mut merge = None;
        for &(u, l, v) in &edges {
            let (u, v) = (find(&mut parent, u), find(&mut parent, v));
            for (from, label, to) in [(u, l, v), (v, -l, u)] {
                match out.get(&(from, label)) {
                    Some(&t) if t != to => {
                        merge = Some((t, to));
                        break;
                    }
                    _ => {
                        out.insert((from, label), to);
                    }
                }
            }
            if merge.is_some() {
                break;
            }
        }
        match merge {
            Some((a, b)) => {
                let (a, b) = (find(&mut parent, a), find(&mut parent, b));
                parent[a.max(b)] = a.min(b);
            }
            None => {
                let roots: std::collections::BTreeSet<usize> =
                    (0..vertex_count).map(|x| find(&mut parent, x)).collect();
                return roots.len() == 1
                    && (1..=rank as i32).all(|l| out.contains_key(&(0, l)));
            }
        }
    }
}

/// A realized ball of `Cay(G, S)` with its element table.
#[derive(Debug, Clone)]
pub struct CayleyWindow {
    cayley: CayleyGraph,
    pointed: PointedGraph,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, Vertex>,
}

impl CayleyWindow {
    pub fn cayley(&self) -> &CayleyGraph {
        &self.cayley
    }

    pub fn pointed(&self) -> &PointedGraph {
        &self.pointed
    }

    pub fn into_pointed(self) -> PointedGraph {
        self.pointed
    }

    /// True when the whole (finite) group was realized.
    pub fn is_complete(&self) -> bool {
        !self.pointed.is_truncated()
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, v: Vertex) -> &GroupElement {
        &self.elements[v]
    }

    pub fn vertex_of(&self, g: &GroupElement) -> Option<Vertex> {
        self.index.get(g).copied()
    }

    /// `|g|` when `g` lies in the realized ball.
    pub fn norm_of(&self, g: &GroupElement) -> Option<usize> {
        self.vertex_of(g).map(|v| self.pointed.norm(v))
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.cayley
            .kind
            .multiply(g, h)
            .expect("window elements share the group kind")
    }

    /// Vertex of `u·v`, if the product lies in the ball.
    pub fn product_vertex(&self, u: Vertex, v: Vertex) -> Option<Vertex> {
        self.vertex_of(&self.multiply(&self.elements[u], &self.elements[v]))
    }

    /// `d(u, v) = |u^{-1} v|`, when the quotient lies in the ball.
    pub fn translation_distance(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let inv = self.cayley.kind.inverse(&self.elements[u]).ok()?;
        self.norm_of(&self.multiply(&inv, &self.elements[v]))
    }

    /// `v · S_n(e)` as sorted vertex ids; certified when `|v| + n <= R`.
    pub fn translated_sphere(&self, v: Vertex, n: usize) -> Result<Vec<Vertex>> {
        self.pointed.certify(v, n)?;
        let mut out = self
            .pointed
            .sphere(n)
            .iter()
            .map(|&w| {
                self.product_vertex(v, w)
                    .expect("certified translate lies in the ball")
            })
            .collect::<Vec<_>>();
        out.sort_unstable();
        Ok(out)
    }
}

/// Realizes the ball of radius `radius` around `e` (the whole group when it
/// is finite and the radius covers its diameter).
pub fn realize_window(cg: &CayleyGraph, radius: usize, cap: usize) -> Result<CayleyWindow> {
    realize(cg, Some(radius), cap)
}

/// Realizes a finite Cayley graph completely.
pub fn realize_full(cg: &CayleyGraph, cap: usize) -> Result<CayleyWindow> {
    if !cg.is_finite() {
        return Err(ForgeError::NotFinite);
    }
    realize(cg, None, cap)
}

fn realize(cg: &CayleyGraph, radius: Option<usize>, cap: usize) -> Result<CayleyWindow> {
    let kind = &cg.kind;
    let mut index: HashMap<GroupElement, Vertex> = HashMap::new();
    let mut elements = vec![kind.identity()];
    index.insert(kind.identity(), 0);
    let mut layer = vec![kind.identity()];
    let mut depth = 0;
    let mut exhausted = false;
    while radius.is_none_or(|r| depth < r) {
        let mut next: Vec<GroupElement> = Vec::new();
        for g in &layer {
            for s in &cg.generators {
                let h = kind.multiply(g, s)?;
                if !index.contains_key(&h) {
                    index.insert(h.clone(), usize::MAX);
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            exhausted = true;
            break;
        }
        next.sort();
        for h in &next {
            index.insert(h.clone(), elements.len());
            elements.push(h.clone());
        }
        if elements.len() > cap {
            return Err(ForgeError::WindowOverflow { cap });
        }
        layer = next;
        depth += 1;
    }
    if !exhausted && kind.is_finite() {
        // the ball may still be the whole group: probe one layer further
        exhausted = layer.iter().all(|g| {
            cg.generators
                .iter()
                .all(|s| index.contains_key(&kind.multiply(g, s).unwrap()))
        });
    }
    let mut edges = Vec::new();
    for (u, g) in elements.iter().enumerate() {
        for s in &cg.generators {
            if let Some(&v) = index.get(&kind.multiply(g, s)?) {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
    }
    let labels = elements.iter().map(ToString::to_string).collect();
    let graph = Graph::from_edges(elements.len(), &edges)?.with_labels(labels);
    let pointed = if exhausted {
        PointedGraph::new(graph, 0)?
    } else {
        PointedGraph::window(graph, 0, depth, WindowKind::Translation)?
    };
    Ok(CayleyWindow {
        cayley: cg.clone(),
        pointed,
        elements,
        index,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S3Report {
    pub holds: bool,
    pub pairs_checked: usize,
    /// `(v, i)` where `v·S_i(e) != S_i(v)`.
    pub witness: Option<(Vertex, usize)>,
}

/// Compares `v·S_i(e)` with the BFS sphere `S_i(v)` for every vertex and
/// every certified radius.
pub fn check_s3(window: &CayleyWindow) -> Result<S3Report> {
    let pg = window.pointed();
    let top = pg.sphere_count() - 1;
    let mut checked = 0;
    for v in 0..pg.vertex_count() {
        let max_i = match pg.exact_radius() {
            Some(r) => r - pg.norm(v),
            None => top,
        };
        for i in 0..=max_i.min(top) {
            checked += 1;
            if window.translated_sphere(v, i)? != pg.sphere_at(v, i)? {
                return Ok(S3Report {
                    holds: false,
                    pairs_checked: checked,
                    witness: Some((v, i)),
                });
            }
        }
    }
    Ok(S3Report {
        holds: true,
        pairs_checked: checked,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(moduli: &[u64]) -> CayleyGraph {
        let kind = GroupKind::Abelian {
            moduli: moduli.to_vec(),
        };
        let gens = standard_generators(&kind);
        build_cayley(kind, gens).unwrap()
    }

    #[test]
    fn arithmetic() {
        let f2 = GroupKind::Free { rank: 2 };
        let ab = f2.parse_element("ab").unwrap();
        let b_inv = f2.parse_element("B").unwrap();
        assert_eq!(f2.multiply(&ab, &b_inv).unwrap(), f2.parse_element("a").unwrap());

        let z2 = GroupKind::Abelian { moduli: vec![0, 0] };
        let p = z2.multiply(&GroupElement::Vector(vec![1, 2]), &GroupElement::Vector(vec![3, -1]));
        assert_eq!(p.unwrap(), GroupElement::Vector(vec![4, 1]));

        let z4 = GroupKind::Abelian { moduli: vec![4] };
        assert_eq!(
            z4.inverse(&GroupElement::Vector(vec![3])).unwrap(),
            GroupElement::Vector(vec![1])
        );
        assert!(matches!(
            z4.multiply(&GroupElement::Vector(vec![1]), &GroupElement::Word(vec![1])),
            Err(ForgeError::KindMismatch)
        ));
    }

    #[test]
    fn permutation_arithmetic() {
        let s3 = GroupKind::Permutation { degree: 3 };
        let r = s3.parse_element("(1 2 3)").unwrap();
        let t = s3.parse_element("(1 2)").unwrap();
        // (1 2 3)(1 2): 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
        assert_eq!(s3.multiply(&r, &t).unwrap().to_string(), "(1 3)");
        assert_eq!(s3.inverse(&r).unwrap().to_string(), "(1 3 2)");
    }

    #[test]
    fn cyclic_group_gives_four_cycle() {
        let w = realize_full(&zmod(&[4]), DEFAULT_ELEMENT_CAP).unwrap();
        let g = w.pointed().graph();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn prism_realization() {
        let w = realize_full(&zmod(&[3, 2]), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(w.cayley().generators().len(), 3);
        assert_eq!(w.pointed().vertex_count(), 6);
        assert_eq!(w.pointed().graph().edge_count(), 9);
    }

    #[test]
    fn generation_checks() {
        let z = GroupKind::Abelian { moduli: vec![0] };
        let gens = vec![GroupElement::Vector(vec![2]), GroupElement::Vector(vec![-2])];
        assert!(matches!(build_cayley(z.clone(), gens), Err(ForgeError::NotGenerating(_))));
        let gens = vec![
            GroupElement::Vector(vec![2]),
            GroupElement::Vector(vec![-2]),
            GroupElement::Vector(vec![3]),
            GroupElement::Vector(vec![-3]),
        ];
        assert!(build_cayley(z.clone(), gens).is_ok());
        assert!(matches!(
            build_cayley(z.clone(), vec![GroupElement::Vector(vec![1])]),
            Err(ForgeError::NotSymmetric(_))
        ));
        assert!(matches!(
            build_cayley(z, vec![GroupElement::Vector(vec![0])]),
            Err(ForgeError::ContainsIdentity)
        ));
        // Z/6 is generated by 2 and 3
        let z6 = GroupKind::Abelian { moduli: vec![6] };
        let gens = ["2", "4", "3"].iter().map(|s| z6.parse_element(s).unwrap()).collect();
        assert!(build_cayley(z6.clone(), gens).is_ok());
        let gens = ["2", "4"].iter().map(|s| z6.parse_element(s).unwrap()).collect();
        assert!(build_cayley(z6, gens).is_err());
    }

    #[test]
    fn free_generation_by_folding() {
        let f2 = GroupKind::Free { rank: 2 };
        let words = |ws: &[&str]| -> Vec<GroupElement> {
            ws.iter().map(|w| f2.parse_element(w).unwrap()).collect()
        };
        assert!(build_cayley(f2.clone(), words(&["a", "A", "ab", "BA"])).is_ok());
        assert!(matches!(
            build_cayley(f2.clone(), words(&["aa", "AA", "b", "B"])),
            Err(ForgeError::NotGenerating(_))
        ));
        assert!(matches!(
            build_cayley(f2.clone(), words(&["ab", "BA"])),
            Err(ForgeError::NotGenerating(_))
        ));
    }

    #[test]
    fn integer_line_window() {
        let (kind, gens) = parse_group_spec("lattice:1").unwrap();
        let w = realize_window(&build_cayley(kind, gens).unwrap(), 10, DEFAULT_ELEMENT_CAP).unwrap();
        let pg = w.pointed();
        assert_eq!(pg.vertex_count(), 21);
        assert!((1..=10).all(|i| pg.sphere(i).len() == 2));
        assert_eq!(pg.exact_radius(), Some(10));
    }

    #[test]
    fn free_group_sphere_sizes() {
        let (kind, gens) = parse_group_spec("free:2").unwrap();
        let w = realize_window(&build_cayley(kind, gens).unwrap(), 3, DEFAULT_ELEMENT_CAP).unwrap();
        let sizes: Vec<usize> = (1..=3).map(|i| w.pointed().sphere(i).len()).collect();
        // |S_i| = 4 * 3^(i-1)
        assert_eq!(sizes, vec![4, 12, 36]);
    }

    #[test]
    fn window_overflow() {
        let (kind, gens) = parse_group_spec("free:3").unwrap();
        let cg = build_cayley(kind, gens).unwrap();
        assert!(matches!(
            realize_window(&cg, 8, 1000),
            Err(ForgeError::WindowOverflow { cap: 1000 })
        ));
    }

    #[test]
    fn s3_holds_on_small_groups() {
        let c4 = realize_full(&zmod(&[4]), DEFAULT_ELEMENT_CAP).unwrap();
        assert!(check_s3(&c4).unwrap().holds);
        let p5 = realize_full(&zmod(&[5, 2]), DEFAULT_ELEMENT_CAP).unwrap();
        assert!(check_s3(&p5).unwrap().holds);
        let (kind, gens) = parse_group_spec("lattice:2").unwrap();
        let z2 = realize_window(&build_cayley(kind, gens).unwrap(), 4, DEFAULT_ELEMENT_CAP).unwrap();
        let report = check_s3(&z2).unwrap();
        assert!(report.holds);
        assert!(report.pairs_checked > 41);
    }

    #[test]
    fn finite_window_smaller_than_group_is_truncated() {
        let w = realize_window(&zmod(&[10]), 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(!w.is_complete());
        assert_eq!(w.pointed().vertex_count(), 5);
        let w = realize_window(&zmod(&[4]), 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(w.is_complete());
    }

    #[test]
    fn permutation_file() {
        let text = "# S3 by transpositions\n(1 2)\n(2 3)\n";
        let (kind, gens) = parse_permutation_generators(text).unwrap();
        let cg = build_cayley(kind, gens).unwrap();
        let w = realize_full(&cg, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(w.element_count(), 6);
        // Cayley graph of S3 by two transpositions is a hexagon
        assert!((0..6).all(|v| w.pointed().graph().degree(v) == 2));
        assert_eq!(w.pointed().sphere(3).len(), 1);
    }
}
