//! Structure constants `p_{i,j}^k`, the product `x_i ∘ x_j`, the
//! hypergroup axioms and the symmetry conditions (S1), (S2).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ForgeError, Result};
use crate::graph::{Graph, PointedGraph, Vertex};
use crate::rational::{self, Rational};

/// Finitely supported combination `Σ_k w_k x_k` with positive weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProbabilityVector {
    entries: Vec<(usize, Rational)>,
}

impl ProbabilityVector {
    /// `x_i`.
    pub fn point(i: usize) -> Self {
        ProbabilityVector {
            entries: vec![(i, rational::one())],
        }
    }

    /// Drops zero weights and merges repeated indices.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, w) in pairs {
            *map.entry(k).or_insert_with(Rational::zero) += w;
        }
        ProbabilityVector {
            entries: map.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
        }
    }

    pub fn get(&self, k: usize) -> Rational {
        self.entries
            .binary_search_by_key(&k, |(i, _)| *i)
            .map_or_else(|_| Rational::zero(), |p| self.entries[p].1.clone())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(k, _)| *k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(k, w)| (*k, w))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(k, _)| *k)
    }

    pub fn total(&self) -> Rational {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    /// Positive weights summing to exactly one.
    pub fn is_stochastic(&self) -> bool {
        self.entries.iter().all(|(_, w)| w.is_positive()) && self.total().is_one()
    }

    /// Dense coefficients `0..len`.
    pub fn dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (k, w) in &self.entries {
            if *k < len {
                out[*k] = w.clone();
            }
        }
        out
    }

    pub fn to_f64(&self) -> BTreeMap<usize, f64> {
        self.entries
            .iter()
            .map(|(k, w)| (*k, rational::to_f64(w)))
            .collect()
    }
}

impl Serialize for ProbabilityVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, String> = self
            .entries
            .iter()
            .map(|(k, w)| (*k, rational::format(w)))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProbabilityVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<usize, String>::deserialize(d)?;
        let pairs = map
            .into_iter()
            .map(|(k, s)| rational::parse(&s).map(|w| (k, w)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(ProbabilityVector::from_pairs(pairs))
    }
}

/// `p_{i,j}^k` for all `i, j <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub bound: usize,
    /// True when `bound = M` on a finite graph, so every product is exact
    /// and closed.
    pub complete: bool,
    pub source: String,
    /// `|S_i(v_0)|` for `i <= bound`.
    pub sphere_sizes: Vec<usize>,
    /// `rows[i][j] = x_i ∘ x_j`.
    pub rows: Vec<Vec<ProbabilityVector>>,
}

impl StructureTable {
    pub fn row(&self, i: usize, j: usize) -> Result<&ProbabilityVector> {
        let b = self.bound;
        if i > b || j > b {
            return Err(self.out_of_scope(i.max(j)));
        }
        Ok(&self.rows[i][j])
    }

    pub fn p(&self, i: usize, j: usize, k: usize) -> Result<Rational> {
        Ok(self.row(i, j)?.get(k))
    }

    pub fn dim(&self) -> usize {
        self.bound + 1
    }

    fn out_of_scope(&self, index: usize) -> ForgeError {
        if self.complete {
            ForgeError::IndexOutOfRange {
                index,
                bound: self.bound,
            }
        } else {
            ForgeError::RadiusExceeded {
                needed: index,
                certified: self.bound,
            }
        }
    }
}

fn check_index(pg: &PointedGraph, i: usize) -> Result<()> {
    if pg.is_truncated() {
        return Ok(());
    }
    if i >= pg.sphere_count() {
        return Err(ForgeError::IndexOutOfRange {
            index: i,
            bound: pg.sphere_count() - 1,
        });
    }
    Ok(())
}

/// The law of `|w|` after a uniform jump to `v ∈ S_i(v_0)` followed by a
/// uniform jump to `w ∈ S_j(v)`.
pub fn structure_row(pg: &PointedGraph, i: usize, j: usize) -> Result<ProbabilityVector> {
    check_index(pg, i)?;
    check_index(pg, j)?;
    let si = pg.sphere(i);
    if si.is_empty() {
        return Err(ForgeError::IndexOutOfRange {
            index: i,
            bound: pg.sphere_count().saturating_sub(1),
        });
    }
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for &v in si {
        let sj = pg.sphere_at(v, j)?;
        if sj.is_empty() {
            return Err(ForgeError::EmptySphere { vertex: v, radius: j });
        }
        let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
        for &w in sj {
            *counts.entry(pg.norm(w)).or_default() += 1;
        }
        for (k, c) in counts {
            *acc.entry(k).or_insert_with(Rational::zero) += rational::ratio(c, sj.len() as i64);
        }
    }
    let scale = rational::ratio(1, si.len() as i64);
    Ok(ProbabilityVector::from_pairs(
        acc.into_iter().map(|(k, w)| (k, w * &scale)),
    ))
}

pub fn structure_constant(pg: &PointedGraph, i: usize, j: usize, k: usize) -> Result<Rational> {
    Ok(structure_row(pg, i, j)?.get(k))
}

/// `x_i ∘ x_j`.
pub fn product(table: &StructureTable, i: usize, j: usize) -> Result<ProbabilityVector> {
    table.row(i, j).cloned()
}

/// Bilinear extension of `∘` to finitely supported combinations.
pub fn product_vectors(
    table: &StructureTable,
    a: &ProbabilityVector,
    b: &ProbabilityVector,
) -> Result<ProbabilityVector> {
    let mut pairs = Vec::new();
    for (i, wa) in a.iter() {
        for (j, wb) in b.iter() {
            let w = wa * wb;
            for (k, p) in table.row(i, j)?.iter() {
                pairs.push((k, &w * p));
            }
        }
    }
    Ok(ProbabilityVector::from_pairs(pairs))
}

/// Largest bound a table can have on this pointed graph.
pub fn default_bound(pg: &PointedGraph) -> usize {
    match pg.exact_radius() {
        Some(r) => r / 2,
        None => pg.sphere_count() - 1,
    }
}

/// Builds all rows `i, j <= bound` (default: `M`, or half the window radius).
pub fn build_table(pg: &PointedGraph, bound: Option<usize>, source: &str) -> Result<StructureTable> {
    let bound = bound.unwrap_or_else(|| default_bound(pg));
    match pg.exact_radius() {
        Some(r) if 2 * bound > r => {
            return Err(ForgeError::RadiusExceeded {
                needed: 2 * bound,
                certified: r,
            })
        }
        None if bound >= pg.sphere_count() => {
            return Err(ForgeError::IndexOutOfRange {
                index: bound,
                bound: pg.sphere_count() - 1,
            })
        }
        _ => {}
    }
    let cells: Vec<(usize, usize)> = (0..=bound)
        .flat_map(|i| (0..=bound).map(move |j| (i, j)))
        .collect();
    let computed = cells
        .par_iter()
        .map(|&(i, j)| structure_row(pg, i, j))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = vec![Vec::with_capacity(bound + 1); bound + 1];
    for ((i, _), pv) in cells.into_iter().zip(computed) {
        rows[i].push(pv);
    }
    let table = StructureTable {
        bound,
        complete: !pg.is_truncated() && bound + 1 == pg.sphere_count(),
        source: match pg.window_radius() {
            Some(r) => format!("{source} (window radius {r})"),
            None => source.to_string(),
        },
        sphere_sizes: (0..=bound).map(|i| pg.sphere(i).len()).collect(),
        rows,
    };
    debug_assert!(table_invariants(&table).is_ok());
    Ok(table)
}

/// Row sums, the triangle support bound, the unit law and condition (3').
pub fn table_invariants(table: &StructureTable) -> std::result::Result<(), String> {
    for i in 0..=table.bound {
        for j in 0..=table.bound {
            let row = &table.rows[i][j];
            if !row.is_stochastic() {
                return Err(format!("row ({i},{j}) is not stochastic"));
            }
            let (lo, hi) = (i.abs_diff(j), i + j);
            if let Some(k) = row.support().find(|&k| k < lo || k > hi) {
                return Err(format!("p_{{{i},{j}}}^{k} outside [{lo},{hi}]"));
            }
            if i == 0 && *row != ProbabilityVector::point(j) || j == 0 && *row != ProbabilityVector::point(i) {
                return Err(format!("unit law fails at ({i},{j})"));
            }
            if row.get(0).is_zero() == (i == j) {
                return Err(format!("condition (3') fails at ({i},{j})"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Hypergroup,
    PreHypergroupOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativityWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(with = "rational::as_string")]
    pub p_ij: Rational,
    #[serde(with = "rational::as_string")]
    pub p_ji: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub h: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Coefficient of `x_k` in `(x_h ∘ x_i) ∘ x_j`.
    #[serde(with = "rational::as_string")]
    pub left: Rational,
    /// Coefficient of `x_k` in `x_h ∘ (x_i ∘ x_j)`.
    #[serde(with = "rational::as_string")]
    pub right: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub commutative: bool,
    pub associative: bool,
    pub bound: usize,
    pub scope: String,
    pub commutativity_witness: Option<CommutativityWitness>,
    pub associativity_witness: Option<AssociativityWitness>,
}

/// Both sides of the associativity law for `(h, i, j)`.
pub fn associator(
    table: &StructureTable,
    h: usize,
    i: usize,
    j: usize,
) -> Result<(ProbabilityVector, ProbabilityVector)> {
    let left = product_vectors(table, table.row(h, i)?, &ProbabilityVector::point(j))?;
    let right = product_vectors(table, &ProbabilityVector::point(h), table.row(i, j)?)?;
    Ok((left, right))
}

fn first_difference(a: &ProbabilityVector, b: &ProbabilityVector) -> Option<usize> {
    let mut ks: Vec<usize> = a.support().chain(b.support()).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter().find(|&k| a.get(k) != b.get(k))
}

/// Triples `(h, i, j)` whose associator is computable on the table:
/// all of them for a complete table, else `h + i <= B` and `i + j <= B`.
fn associativity_scope(table: &StructureTable) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    let b = table.bound;
    let complete = table.complete;
    (0..=b).flat_map(move |h| {
        (0..=b).flat_map(move |i| {
            (0..=b)
                .filter(move |&j| complete || (h + i <= b && i + j <= b))
                .map(move |j| (h, i, j))
        })
    })
}

pub fn first_associativity_violation(table: &StructureTable) -> Result<Option<AssociativityWitness>> {
    first_associativity_violation_within(table, usize::MAX)
}

/// Same as [`first_associativity_violation`], restricted to `h + i + j <= limit`.
pub fn first_associativity_violation_within(
    table: &StructureTable,
    limit: usize,
) -> Result<Option<AssociativityWitness>> {
    for (h, i, j) in associativity_scope(table) {
        if h + i + j > limit {
            continue;
        }
        let (left, right) = associator(table, h, i, j)?;
        if let Some(k) = first_difference(&left, &right) {
            return Ok(Some(AssociativityWitness {
                h,
                i,
                j,
                k,
                left: left.get(k),
                right: right.get(k),
            }));
        }
    }
    Ok(None)
}

pub fn classify(table: &StructureTable) -> Result<ClassificationReport> {
    let b = table.bound;
    let mut commutativity_witness = None;
    'outer: for i in 0..=b {
        for j in 0..=b {
            let (a, c) = (&table.rows[i][j], &table.rows[j][i]);
            if let Some(k) = first_difference(a, c) {
                commutativity_witness = Some(CommutativityWitness {
                    i,
                    j,
                    k,
                    p_ij: a.get(k),
                    p_ji: c.get(k),
                });
                break 'outer;
            }
        }
    }
    let associativity_witness = first_associativity_violation(table)?;
    let commutative = commutativity_witness.is_none();
    let associative = associativity_witness.is_none();
    Ok(ClassificationReport {
        verdict: if commutative && associative {
            Verdict::Hypergroup
        } else {
            Verdict::PreHypergroupOnly
        },
        commutative,
        associative,
        bound: b,
        scope: if table.complete {
            "all indices".to_string()
        } else {
            format!("indices up to {b}; associativity for h+i <= {b} and i+j <= {b}")
        },
        commutativity_witness,
        associativity_witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S1Witness {
    pub i: usize,
    pub v: Vertex,
    pub v_prime: Vertex,
    pub size_v: usize,
    pub size_v_prime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S1Report {
    pub holds: bool,
    pub scope: String,
    pub witness: Option<S1Witness>,
}

/// Radii `i` for which `S_i(v)` is certified.
fn certified_radii(pg: &PointedGraph, v: Vertex, finite_top: usize) -> usize {
    match pg.exact_radius() {
        Some(r) => r - pg.norm(v),
        None => finite_top,
    }
}

fn scope_text(pg: &PointedGraph) -> String {
    match pg.exact_radius() {
        Some(r) => format!("pairs (v, i) with |v| + i <= {r}"),
        None => "all vertices and indices".to_string(),
    }
}

/// (S1): `|S_i(v)|` does not depend on `v`.
pub fn check_s1(pg: &PointedGraph) -> Result<S1Report> {
    let top = pg.vertex_count();
    let base = pg.base();
    for v in 0..pg.vertex_count() {
        for i in 0..=certified_radii(pg, v, top) {
            let (a, b) = (pg.sphere_at(base, i)?.len(), pg.sphere_at(v, i)?.len());
            if a != b {
                return Ok(S1Report {
                    holds: false,
                    scope: scope_text(pg),
                    witness: Some(S1Witness {
                        i,
                        v: base,
                        v_prime: v,
                        size_v: a,
                        size_v_prime: b,
                    }),
                });
            }
        }
    }
    Ok(S1Report {
        holds: true,
        scope: scope_text(pg),
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S2Witness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: Vertex,
    pub v_prime: Vertex,
    pub count_v: usize,
    pub count_v_prime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S2Report {
    pub holds: bool,
    pub scope: String,
    pub witness: Option<S2Witness>,
}

/// `counts[i][j] = |S_i(v) ∩ S_j(v_0)|` over the certified radii of `v`.
fn intersection_profile(pg: &PointedGraph, v: Vertex) -> Result<Vec<Vec<usize>>> {
    let top = pg.vertex_count();
    let mut out = Vec::new();
    for i in 0..=certified_radii(pg, v, top) {
        let sphere = pg.sphere_at(v, i)?;
        if sphere.is_empty() && pg.exact_radius().is_none() {
            break;
        }
        let mut row = vec![0usize; pg.sphere_count()];
        for &w in sphere {
            row[pg.norm(w)] += 1;
        }
        out.push(row);
    }
    Ok(out)
}

/// (S2): `|S_i(v) ∩ S_j(v_0)|` is constant over `v ∈ S_k(v_0)`.
pub fn check_s2(pg: &PointedGraph) -> Result<S2Report> {
    for k in 0..pg.sphere_count() {
        let sphere = pg.sphere(k);
        let first = sphere[0];
        let reference = intersection_profile(pg, first)?;
        for &v in &sphere[1..] {
            let profile = intersection_profile(pg, v)?;
            let rows = reference.len().max(profile.len());
            for i in 0..rows {
                for j in 0..pg.sphere_count() {
                    let a = reference.get(i).map_or(0, |r| r[j]);
                    let b = profile.get(i).map_or(0, |r| r[j]);
                    if a != b {
                        return Ok(S2Report {
                            holds: false,
                            scope: scope_text(pg),
                            witness: Some(S2Witness {
                                i,
                                j,
                                k,
                                v: first,
                                v_prime: v,
                                count_v: a,
                                count_v_prime: b,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(S2Report {
        holds: true,
        scope: scope_text(pg),
        witness: None,
    })
}

/// Intersection numbers `q[i][j][k] = Q_{i,j}^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTable {
    pub diameter: usize,
    pub q: Vec<Vec<Vec<u64>>>,
}

impl IntersectionTable {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.q[i][j][k]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceRegularReport {
    pub holds: bool,
    pub diameter: usize,
    /// `(i, j, k, v, w)`: the count for the pair `(v, w)` differs from the
    /// first pair at distance `k`.
    pub witness: Option<(usize, usize, usize, Vertex, Vertex)>,
    pub intersection: Option<IntersectionTable>,
}

/// Compares `|{x : d(v,x)=i, d(x,w)=j}|` over all pairs at each distance.
pub fn check_distance_regular(g: &Graph) -> Result<DistanceRegularReport> {
    let d = g
        .distance_matrix()
        .ok_or(ForgeError::DisconnectedGraph { vertex: 0 })?;
    let n = g.vertex_count();
    let diameter = d.iter().flatten().copied().max().unwrap_or(0);
    let size = diameter + 1;
    // first observed count per (i, j, k) and the pair that produced it
    type Seen = Option<(u64, Vertex, Vertex)>;
    let mut q: Vec<Vec<Vec<Seen>>> = vec![vec![vec![None; size]; size]; size];
    let mut counts = vec![vec![0u64; size]; size];
    for v in 0..n {
        for w in 0..n {
            let k = d[v][w];
            for row in counts.iter_mut() {
                row.fill(0);
            }
            for x in 0..n {
                counts[d[v][x]][d[x][w]] += 1;
            }
            for i in 0..size {
                for j in 0..size {
                    match q[i][j][k] {
                        None => q[i][j][k] = Some((counts[i][j], v, w)),
                        Some((c, _, _)) if c != counts[i][j] => {
                            return Ok(DistanceRegularReport {
                                holds: false,
                                diameter,
                                witness: Some((i, j, k, v, w)),
                                intersection: None,
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let q = q
        .into_iter()
        .map(|a| {
            a.into_iter()
                .map(|b| b.into_iter().map(|c| c.map_or(0, |(x, _, _)| x)).collect())
                .collect()
        })
        .collect();
    Ok(DistanceRegularReport {
        holds: true,
        diameter,
        witness: None,
        intersection: Some(IntersectionTable { diameter, q }),
    })
}

/// `p_{i,j}^k = Q_{j,k}^i / Q_{j,j}^0`.
pub fn q_to_p(q: &IntersectionTable, source: &str) -> StructureTable {
    let b = q.diameter;
    let rows = (0..=b)
        .map(|i| {
            (0..=b)
                .map(|j| {
                    let den = q.get(j, j, 0) as i64;
                    ProbabilityVector::from_pairs(
                        (0..=b).map(|k| (k, rational::ratio(q.get(j, k, i) as i64, den))),
                    )
                })
                .collect()
        })
        .collect();
    StructureTable {
        bound: b,
        complete: true,
        source: source.to_string(),
        sphere_sizes: (0..=b).map(|i| q.get(i, i, 0) as usize).collect(),
        rows,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionsReport {
    pub s1: S1Report,
    pub s2: S2Report,
    /// `None` for windows, where regularity is not decidable.
    pub distance_regular: Option<DistanceRegularReport>,
}

pub fn check_conditions(pg: &PointedGraph) -> Result<ConditionsReport> {
    Ok(ConditionsReport {
        s1: check_s1(pg)?,
        s2: check_s2(pg)?,
        distance_regular: if pg.is_truncated() {
            None
        } else {
            Some(check_distance_regular(pg.graph())?)
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::rational::ratio;

    fn table(spec: &str) -> StructureTable {
        build_table(catalog(spec).unwrap().pointed(), None, spec).unwrap()
    }

    #[test]
    fn integer_line_constants() {
        let z = catalog("lattice:1").unwrap();
        let pg = z.pointed();
        assert_eq!(structure_constant(pg, 1, 1, 0).unwrap(), ratio(1, 2));
        assert_eq!(structure_constant(pg, 1, 1, 2).unwrap(), ratio(1, 2));
        let t = table("lattice:1");
        assert_eq!(
            product(&t, 2, 3).unwrap(),
            ProbabilityVector::from_pairs([(1, ratio(1, 2)), (5, ratio(1, 2))])
        );
    }

    #[test]
    fn tree_p22() {
        let t = catalog("tree:binary:8").unwrap();
        let row = structure_row(t.pointed(), 2, 2).unwrap();
        assert_eq!(
            row,
            ProbabilityVector::from_pairs([(0, ratio(1, 6)), (2, ratio(1, 6)), (4, ratio(2, 3))])
        );
    }

    #[test]
    fn four_cycle_table() {
        let t = table("cycle:4");
        assert_eq!(t.bound, 2);
        assert!(t.complete);
        assert_eq!(
            t.rows[1][1],
            ProbabilityVector::from_pairs([(0, ratio(1, 2)), (2, ratio(1, 2))])
        );
        assert_eq!(product(&t, 1, 2).unwrap(), ProbabilityVector::point(1));
        assert!(table_invariants(&t).is_ok());
        assert_eq!(classify(&t).unwrap().verdict, Verdict::Hypergroup);
    }

    #[test]
    fn window_table_bound_is_checked() {
        let pg = catalog("lattice:1:r=10").unwrap().pointed().clone();
        assert!(build_table(&pg, Some(5), "z").is_ok());
        assert!(matches!(
            build_table(&pg, Some(6), "z"),
            Err(ForgeError::RadiusExceeded { .. })
        ));
        let c4 = catalog("cycle:4").unwrap();
        assert!(matches!(
            build_table(c4.pointed(), Some(3), "c4"),
            Err(ForgeError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&table("bipartite:2,3")).unwrap().verdict, Verdict::Hypergroup);
        assert_eq!(classify(&table("prism:5")).unwrap().verdict, Verdict::Hypergroup);
        let tree = classify(&table("tree:binary:8")).unwrap();
        assert!(!tree.commutative);
        assert_eq!(tree.verdict, Verdict::PreHypergroupOnly);
        let z2 = table("lattice:2");
        let report = classify(&z2).unwrap();
        assert!(!report.associative);
        let (l, r) = associator(&z2, 1, 2, 3).unwrap();
        assert_ne!(l, r);
    }

    #[test]
    fn symmetry_conditions() {
        let tree = catalog("tree:binary:8").unwrap();
        let s1 = check_s1(tree.pointed()).unwrap();
        let w = s1.witness.unwrap();
        assert_eq!((w.i, w.size_v, w.size_v_prime), (1, 2, 3));
        assert!(check_s2(tree.pointed()).unwrap().holds);

        assert!(check_s1(catalog("lattice:2").unwrap().pointed()).unwrap().holds);
        assert!(!check_s2(catalog("prism:3").unwrap().pointed()).unwrap().holds);
        let f4 = catalog("figure:4").unwrap();
        assert!(!check_s1(f4.pointed()).unwrap().holds);
        assert!(!check_s2(f4.pointed()).unwrap().holds);
        assert!(check_s2(catalog("figure:3").unwrap().pointed()).unwrap().holds);
        assert!(!check_s2(catalog("figure:3:1").unwrap().pointed()).unwrap().holds);
    }

    #[test]
    fn distance_regularity() {
        for (spec, dr) in [("petersen", true), ("prism:4", true), ("prism:3", false), ("bipartite:2,3", false)] {
            let f = catalog(spec).unwrap();
            assert_eq!(check_distance_regular(f.pointed().graph()).unwrap().holds, dr, "{spec}");
        }
    }

    #[test]
    fn q_to_p_matches_direct_table() {
        for spec in ["cycle:4", "cycle:7", "petersen", "prism:4", "bipartite:3,3"] {
            let f = catalog(spec).unwrap();
            let q = check_distance_regular(f.pointed().graph())
                .unwrap()
                .intersection
                .unwrap();
            let mut expected = table(spec);
            expected.source = spec.to_string();
            assert_eq!(q_to_p(&q, spec), expected, "{spec}");
        }
    }

    #[test]
    fn probability_vector_json() {
        let pv = ProbabilityVector::from_pairs([(10, ratio(1, 3)), (2, ratio(2, 3))]);
        let json = serde_json::to_string(&pv).unwrap();
        assert_eq!(json, r#"{"2":"2/3","10":"1/3"}"#);
        let back: ProbabilityVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pv);
    }
}
