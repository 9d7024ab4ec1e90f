//! Transition matrices `P_k = (p_{k,i}^j)` acting on row vectors.

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cayley::CayleyWindow;
use crate::error::{ForgeError, Result};
use crate::graph::PointedGraph;
use crate::hypergroup::{
    check_s1, check_s2, classify, first_associativity_violation_within, StructureTable, Verdict,
};
use crate::rational::{self, Rational};
use crate::walks::{jump_distribution, JumpPattern};

/// Dense exact matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        RationalMatrix {
            rows: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.rows[i][i] = rational::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        let n = self.dim();
        let rows = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut out = vec![Rational::zero(); n];
                for (c, a) in self.rows[i].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.rows[c].iter().enumerate() {
                        if !b.is_zero() {
                            out[j] += a * b;
                        }
                    }
                }
                out
            })
            .collect();
        RationalMatrix { rows }
    }

    /// `self += w · other`.
    pub fn add_scaled(&mut self, w: &Rational, other: &RationalMatrix) {
        for (r, o) in self.rows.iter_mut().zip(&other.rows) {
            for (a, b) in r.iter_mut().zip(o) {
                if !b.is_zero() {
                    *a += w * b;
                }
            }
        }
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(rational::format).collect())
            .collect();
        strings.serialize(s)
    }
}

/// `P_k` truncated to the indices `0..=bound` of its table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    pub k: usize,
    pub dim: usize,
    pub entries: RationalMatrix,
    /// Row `i` carries all of its mass (always true for complete tables).
    pub complete_rows: Vec<bool>,
}

impl TransitionMatrix {
    pub fn is_complete(&self) -> bool {
        self.complete_rows.iter().all(|&c| c)
    }
}

pub fn transition_matrix(table: &StructureTable, k: usize) -> Result<TransitionMatrix> {
    if k > table.bound {
        return Err(ForgeError::IndexOutOfRange {
            index: k,
            bound: table.bound,
        });
    }
    let dim = table.dim();
    let mut entries = RationalMatrix::zeros(dim);
    let complete_rows: Vec<bool> = (0..dim).map(|i| table.complete || k + i <= table.bound).collect();
    for i in 0..dim {
        let row = table.row(k, i)?;
        for (j, w) in row.iter() {
            if j < dim {
                entries.rows[i][j] = w.clone();
            }
        }
    }
    Ok(TransitionMatrix {
        k,
        dim,
        entries,
        complete_rows,
    })
}

pub fn transition_matrices(table: &StructureTable) -> Result<Vec<TransitionMatrix>> {
    (0..=table.bound).map(|k| transition_matrix(table, k)).collect()
}

/// Rows `a` of `P_i P_j` that are exact: every row for a complete table,
/// else `i + j + a <= B`.
fn product_rows(table: &StructureTable, i: usize, j: usize) -> impl Iterator<Item = usize> {
    let b = table.bound;
    let complete = table.complete;
    (0..=b).filter(move |&a| complete || i + j + a <= b)
}

fn scope_text(table: &StructureTable) -> String {
    if table.complete {
        "all indices".to_string()
    } else {
        format!("rows a of P_i P_j with i + j + a <= {}", table.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    pub holds: bool,
    pub scope: String,
    /// `(i, j, row)` where `P_i P_j` and `Σ_k p_{i,j}^k P_k` first differ.
    pub witness: Option<(usize, usize, usize)>,
}

/// `P_i P_j = Σ_k p_{i,j}^k P_k`.
pub fn verify_regular_representation(table: &StructureTable) -> Result<RepresentationReport> {
    let ps = transition_matrices(table)?;
    for i in 0..=table.bound {
        for j in 0..=table.bound {
            if product_rows(table, i, j).next().is_none() {
                continue;
            }
            let lhs = ps[i].entries.mul(&ps[j].entries);
            let mut rhs = RationalMatrix::zeros(table.dim());
            for (k, w) in table.row(i, j)?.iter() {
                if k <= table.bound {
                    rhs.add_scaled(w, &ps[k].entries);
                }
            }
            if let Some(a) = product_rows(table, i, j).find(|&a| lhs.row(a) != rhs.row(a)) {
                return Ok(RepresentationReport {
                    holds: false,
                    scope: scope_text(table),
                    witness: Some((i, j, a)),
                });
            }
        }
    }
    Ok(RepresentationReport {
        holds: true,
        scope: scope_text(table),
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommuteReport {
    pub commute: bool,
    pub scope: String,
    /// `(i, j, row)` with `(P_i P_j)_row != (P_j P_i)_row`.
    pub witness: Option<(usize, usize, usize)>,
    /// Associativity over the same index range.
    pub associative: bool,
    /// `commute == associative`.
    pub consistent: bool,
}

/// Pairwise commutation, reported next to the associativity verdict over
/// the same scope.
pub fn commute_check(table: &StructureTable) -> Result<CommuteReport> {
    let ps = transition_matrices(table)?;
    let mut witness = None;
    'outer: for i in 0..=table.bound {
        for j in i + 1..=table.bound {
            if product_rows(table, i, j).next().is_none() {
                continue;
            }
            let ij = ps[i].entries.mul(&ps[j].entries);
            let ji = ps[j].entries.mul(&ps[i].entries);
            if let Some(a) = product_rows(table, i, j).find(|&a| ij.row(a) != ji.row(a)) {
                witness = Some((i, j, a));
                break 'outer;
            }
        }
    }
    let limit = if table.complete { usize::MAX } else { table.bound };
    let associative = first_associativity_violation_within(table, limit)?.is_none();
    let commute = witness.is_none();
    Ok(CommuteReport {
        commute,
        scope: scope_text(table),
        witness,
        associative,
        consistent: commute == associative,
    })
}

/// `(ξ P)_j = Σ_i ξ_i p_{k,i}^j`.
pub fn apply(p: &TransitionMatrix, xi: &[Rational]) -> Result<Vec<Rational>> {
    if xi.len() != p.dim {
        return Err(ForgeError::DimensionMismatch {
            expected: p.dim,
            got: xi.len(),
        });
    }
    let mut out = vec![Rational::zero(); p.dim];
    for (i, x) in xi.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let e = p.entries.get(i, j);
            if !e.is_zero() {
                *o += x * e;
            }
        }
    }
    Ok(out)
}

pub fn apply_f64(p: &TransitionMatrix, xi: &[f64]) -> Result<Vec<f64>> {
    if xi.len() != p.dim {
        return Err(ForgeError::DimensionMismatch {
            expected: p.dim,
            got: xi.len(),
        });
    }
    let mut out = vec![0.0; p.dim];
    for (i, &x) in xi.iter().enumerate() {
        for (j, o) in out.iter_mut().enumerate() {
            *o += x * rational::to_f64(p.entries.get(i, j));
        }
    }
    Ok(out)
}

fn norm_sq(v: &[Rational]) -> Rational {
    v.iter().map(|x| x * x).sum()
}

/// A named test vector for Rayleigh quotients.
#[derive(Debug, Clone)]
pub struct TestVector {
    pub name: String,
    pub values: Vec<Rational>,
}

/// `e_0`, the constant vector and geometric vectors with ratios ½, ¼, ¾.
pub fn default_test_vectors(len: usize) -> Vec<TestVector> {
    let mut out = Vec::new();
    let mut e0 = vec![Rational::zero(); len];
    e0[0] = rational::one();
    out.push(TestVector {
        name: "e_0".into(),
        values: e0,
    });
    out.push(TestVector {
        name: "uniform".into(),
        values: vec![rational::one(); len],
    });
    for (n, d) in [(1, 2), (1, 4), (3, 4)] {
        out.push(TestVector {
            name: format!("geometric {n}/{d}"),
            values: geometric(len, &rational::ratio(n, d)),
        });
    }
    out
}

/// `(1, q, q^2, ...)`.
pub fn geometric(len: usize, q: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut x = rational::one();
    for _ in 0..len {
        out.push(x.clone());
        x *= q;
    }
    out
}

/// `‖ξ P‖² / ‖ξ‖²` for `ξ` supported on the complete rows of `P`.
pub fn rayleigh_squared(p: &TransitionMatrix, xi: &[Rational]) -> Result<Rational> {
    let mut v = xi.to_vec();
    v.resize(p.dim, Rational::zero());
    for (i, x) in v.iter_mut().enumerate() {
        if !p.complete_rows[i] {
            *x = Rational::zero();
        }
    }
    let den = norm_sq(&v);
    if den.is_zero() {
        return Err(ForgeError::BadParameter("test vector vanishes on the certified rows".into()));
    }
    Ok(norm_sq(&apply(p, &v)?) / den)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormBound {
    pub k: usize,
    #[serde(with = "rational::as_string")]
    pub c_k: Rational,
    pub d_k: usize,
    /// `c_k d_k`; the upper bound is its square root.
    #[serde(with = "rational::as_string")]
    pub upper_squared: Rational,
    pub upper: f64,
    /// Best `‖ξ P_k‖² / ‖ξ‖²` among the test vectors.
    #[serde(with = "rational::as_string")]
    pub lower_squared: Rational,
    pub lower: f64,
    pub best_vector: String,
    /// Set for truncated tables: the sups run over certified rows and
    /// columns only. The window upper bound then covers vectors supported on
    /// rows `i <= B - 3k`; the lower bound is exact regardless, so on small
    /// windows it can exceed the upper one.
    pub window_sup: Option<String>,
    /// `Supp_i(k)` per certified row `i`.
    pub row_supports: Vec<(usize, Vec<usize>)>,
    /// `Supp^j(k)` per certified column `j`.
    pub column_supports: Vec<(usize, Vec<usize>)>,
}

/// `c_k`, `d_k`, the upper bound `√(c_k d_k)` and a Rayleigh lower bound.
pub fn norm_bounds(table: &StructureTable, k: usize, extra: &[TestVector]) -> Result<NormBound> {
    let p = transition_matrix(table, k)?;
    let b = table.bound;
    let complete = table.complete;
    let row_ok = |i: usize| complete || k + i <= b;
    // column j collects rows i <= j + k
    let col_ok = |j: usize| complete || j + 2 * k <= b;
    let row_supports: Vec<(usize, Vec<usize>)> = (0..=b)
        .filter(|&i| row_ok(i))
        .map(|i| (i, (0..=b).filter(|&j| !p.entries.get(i, j).is_zero()).collect()))
        .collect();
    let column_supports: Vec<(usize, Vec<usize>)> = (0..=b)
        .filter(|&j| col_ok(j))
        .map(|j| (j, (0..=b).filter(|&i| !p.entries.get(i, j).is_zero()).collect()))
        .collect();
    let d_k = row_supports.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    let c_k = column_supports
        .iter()
        .map(|(j, s)| s.iter().map(|&i| p.entries.get(i, *j) * p.entries.get(i, *j)).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero);
    let upper_squared = &c_k * Rational::from_integer(d_k.into());

    let mut lower_squared = Rational::zero();
    let mut best_vector = String::new();
    let vectors = default_test_vectors(p.dim);
    for tv in vectors.iter().chain(extra) {
        let r = rayleigh_squared(&p, &tv.values)?;
        if r > lower_squared {
            lower_squared = r;
            best_vector = tv.name.clone();
        }
    }
    Ok(NormBound {
        k,
        upper: sqrt_f64(&upper_squared),
        lower: sqrt_f64(&lower_squared),
        c_k,
        d_k,
        upper_squared,
        lower_squared,
        best_vector,
        window_sup: (!complete).then(|| format!("rows i <= {}, columns j <= {}", b.saturating_sub(k), b.saturating_sub(2 * k))),
        row_supports,
        column_supports,
    })
}

fn sqrt_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN).sqrt()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformBound {
    /// `S(Γ) = sup_v sup_k |S_k(v)|`.
    pub s: usize,
    pub bound: usize,
    pub certified_pairs: usize,
    pub window_sup: bool,
}

/// `S(Γ)` and the bound `‖P_k‖ <= S(Γ)^2`, over certified `(v, k)`.
pub fn uniform_norm_bound(pg: &PointedGraph) -> Result<UniformBound> {
    let mut s = 0;
    let mut pairs = 0;
    for v in 0..pg.vertex_count() {
        let top = match pg.exact_radius() {
            Some(r) => r - pg.norm(v),
            None => pg.vertex_count(),
        };
        for k in 0..=top {
            let size = pg.sphere_at(v, k)?.len();
            if size == 0 && !pg.is_truncated() {
                break;
            }
            pairs += 1;
            s = s.max(size);
        }
    }
    Ok(UniformBound {
        s,
        bound: s * s,
        certified_pairs: pairs,
        window_sup: pg.is_truncated(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StationaryReport {
    #[serde(with = "rational::vec_as_string")]
    pub pi: Vec<Rational>,
    /// `π P = π` for the walk matrix with constant rows `|S_j| / |G|`.
    pub pi_fixed_by_walk_matrix: bool,
    pub walk_matrix_idempotent: bool,
    /// `π P_k = π` for every `k`.
    pub pi_fixed_by_all: bool,
    pub failing_k: Option<usize>,
}

impl StationaryReport {
    pub fn holds(&self) -> bool {
        self.pi_fixed_by_walk_matrix && self.walk_matrix_idempotent && self.pi_fixed_by_all
    }
}

/// `π_G = (1, |S_1|, ..., |S_M|) / |G|` on a finite Cayley graph.
pub fn stationary_check(window: &CayleyWindow, table: &StructureTable) -> Result<StationaryReport> {
    if !window.is_complete() {
        return Err(ForgeError::NotFinite);
    }
    if !table.complete {
        return Err(ForgeError::TruncatedMatrix);
    }
    let pg = window.pointed();
    let order = pg.vertex_count() as i64;
    let pi: Vec<Rational> = (0..pg.sphere_count())
        .map(|i| rational::ratio(pg.sphere(i).len() as i64, order))
        .collect();
    let dim = pi.len();
    let mut walk = RationalMatrix::zeros(dim);
    for i in 0..dim {
        walk.rows[i] = pi.clone();
    }
    let walk_tm = TransitionMatrix {
        k: 0,
        dim,
        entries: walk.clone(),
        complete_rows: vec![true; dim],
    };
    let pi_fixed_by_walk_matrix = apply(&walk_tm, &pi)? == pi;
    let walk_matrix_idempotent = walk.mul(&walk) == walk;
    let mut failing_k = None;
    for k in 0..dim {
        if apply(&transition_matrix(table, k)?, &pi)? != pi {
            failing_k = Some(k);
            break;
        }
    }
    Ok(StationaryReport {
        pi,
        pi_fixed_by_walk_matrix,
        walk_matrix_idempotent,
        pi_fixed_by_all: failing_k.is_none(),
        failing_k,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub k: usize,
    pub irreducible: bool,
    /// Strongly connected components of the support graph, each sorted,
    /// ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
}

/// Strong connectivity of `i → j` whenever `p_{k,i}^j > 0`.
pub fn irreducibility(p: &TransitionMatrix) -> Result<IrreducibilityReport> {
    if !p.is_complete() {
        return Err(ForgeError::TruncatedMatrix);
    }
    let n = p.dim;
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| !p.entries.get(i, j).is_zero()).collect())
        .collect();
    let mut classes = tarjan(&succ);
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    Ok(IrreducibilityReport {
        k: p.k,
        irreducible: classes.len() == 1,
        classes,
    })
}

fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(s: &mut State, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for t in 0..s.succ[v].len() {
            let w = s.succ[v][t];
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            s.out.push(comp);
        }
    }
    let n = succ.len();
    let mut s = State {
        succ,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaincoroReport {
    pub pattern: JumpPattern,
    pub holds: bool,
    pub hypothesis_met: bool,
    /// `(i, j)` of the first mismatching entry.
    pub witness: Option<(usize, usize)>,
}

/// `(P_{i_1} ⋯ P_{i_m})_{i,j} = Σ_k J(i_1, ..., i_m)_k p_{k,i}^j` on every
/// exact row. Without `informational`, a graph failing (S1), (S2) or the
/// hypergroup axioms is rejected with `HypothesisNotMet`.
pub fn verify_maincoro(
    table: &StructureTable,
    pg: &PointedGraph,
    pat: &JumpPattern,
    informational: bool,
) -> Result<MaincoroReport> {
    let hypothesis_met =
        check_s1(pg)?.holds && check_s2(pg)?.holds && classify(table)?.verdict == Verdict::Hypergroup;
    if !hypothesis_met && !informational {
        return Err(ForgeError::HypothesisNotMet(
            "the graph must satisfy (S1) and (S2) and produce a hypergroup".into(),
        ));
    }
    let b = table.bound;
    let row_ok = |i: usize| table.complete || i + pat.total() <= b;
    let tilde = jump_distribution(pg, pat)?;
    let mut prod = RationalMatrix::identity(table.dim());
    for &i in pat.indices() {
        prod = prod.mul(&transition_matrix(table, i)?.entries);
    }
    let mut rhs = RationalMatrix::zeros(table.dim());
    for (k, w) in tilde.iter() {
        rhs.add_scaled(w, &transition_matrix(table, k)?.entries);
    }
    let witness = (0..=b)
        .filter(|&i| row_ok(i))
        .find_map(|i| (0..=b).find(|&j| prod.get(i, j) != rhs.get(i, j)).map(|j| (i, j)));
    Ok(MaincoroReport {
        pattern: pat.clone(),
        holds: witness.is_none(),
        hypothesis_met,
        witness,
    })
}

/// Propagates `e_0` through `P_{i_1} ⋯ P_{i_m}`.
pub fn propagate_unit(table: &StructureTable, pat: &JumpPattern) -> Result<Vec<Rational>> {
    let mut xi = vec![Rational::zero(); table.dim()];
    xi[0] = rational::one();
    for &i in pat.indices() {
        xi = apply(&transition_matrix(table, i)?, &xi)?;
    }
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::hypergroup::build_table;
    use crate::rational::ratio;

    fn table(spec: &str) -> StructureTable {
        build_table(catalog(spec).unwrap().pointed(), None, spec).unwrap()
    }

    #[test]
    fn four_cycle_matrices() {
        let t = table("cycle:4");
        let p2 = transition_matrix(&t, 2).unwrap();
        assert_eq!(p2.entries.get(0, 2), &rational::one());
        assert_eq!(p2.entries.get(1, 1), &rational::one());
        assert_eq!(p2.entries.get(2, 0), &rational::one());
        assert_eq!(transition_matrix(&t, 0).unwrap().entries, RationalMatrix::identity(3));
        assert!(verify_regular_representation(&t).unwrap().holds);
        let c = commute_check(&t).unwrap();
        assert!(c.commute && c.consistent);
    }

    #[test]
    fn integer_line_p1() {
        let t = table("lattice:1");
        let p1 = transition_matrix(&t, 1).unwrap();
        assert_eq!(p1.entries.get(0, 1), &rational::one());
        for i in 1..6 {
            assert_eq!(p1.entries.get(i, i - 1), &ratio(1, 2));
            assert_eq!(p1.entries.get(i, i + 1), &ratio(1, 2));
        }
        assert!(!p1.complete_rows[6]);
        let nb = norm_bounds(&t, 1, &[]).unwrap();
        assert_eq!(nb.c_k, ratio(5, 4));
        assert_eq!(nb.d_k, 2);
        assert_eq!(nb.upper_squared, ratio(5, 2));
        assert!(nb.lower >= 1.0 && nb.lower <= nb.upper);
    }

    #[test]
    fn identity_norm() {
        let t = table("petersen");
        let nb = norm_bounds(&t, 0, &[]).unwrap();
        assert_eq!((nb.c_k.clone(), nb.d_k), (rational::one(), 1));
        assert_eq!(nb.lower_squared, rational::one());
    }

    #[test]
    fn apply_checks_dimension() {
        let t = table("cycle:4");
        let p = transition_matrix(&t, 1).unwrap();
        assert!(matches!(
            apply(&p, &[rational::one()]),
            Err(ForgeError::DimensionMismatch { expected: 3, got: 1 })
        ));
        let xi = vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)];
        assert_eq!(apply(&transition_matrix(&t, 0).unwrap(), &xi).unwrap(), xi);
    }

    #[test]
    fn uniform_bounds() {
        assert_eq!(uniform_norm_bound(catalog("lattice:1").unwrap().pointed()).unwrap().s, 2);
        assert_eq!(uniform_norm_bound(catalog("ladder:r=5").unwrap().pointed()).unwrap().s, 4);
        let single = catalog("path:1").unwrap();
        assert_eq!(uniform_norm_bound(single.pointed()).unwrap().s, 1);
    }

    #[test]
    fn stationary() {
        for (spec, pi) in [
            ("cycle:4", vec![ratio(1, 4), ratio(1, 2), ratio(1, 4)]),
            ("prism:3", vec![ratio(1, 6), ratio(1, 2), ratio(1, 3)]),
        ] {
            let f = catalog(spec).unwrap();
            let r = stationary_check(f.require_cayley().unwrap(), &table(spec)).unwrap();
            assert_eq!(r.pi, pi);
            assert!(r.holds(), "{spec}");
        }
    }

    #[test]
    fn four_cycle_irreducibility() {
        let t = table("cycle:4");
        let r1 = irreducibility(&transition_matrix(&t, 1).unwrap()).unwrap();
        assert!(r1.irreducible);
        let r2 = irreducibility(&transition_matrix(&t, 2).unwrap()).unwrap();
        assert!(!r2.irreducible);
        assert_eq!(r2.classes, vec![vec![0, 2], vec![1]]);
        assert!(!irreducibility(&transition_matrix(&t, 0).unwrap()).unwrap().irreducible);
        let z = table("lattice:1");
        assert!(matches!(
            irreducibility(&transition_matrix(&z, 1).unwrap()),
            Err(ForgeError::TruncatedMatrix)
        ));
    }

    #[test]
    fn maincoro_small() {
        for (spec, p) in [("petersen", "1,2,1"), ("cycle:4", "1,1,1,1")] {
            let f = catalog(spec).unwrap();
            let t = table(spec);
            let r = verify_maincoro(&t, f.pointed(), &p.parse().unwrap(), false).unwrap();
            assert!(r.holds && r.hypothesis_met, "{spec}");
        }
        let f = catalog("prism:3").unwrap();
        assert!(matches!(
            verify_maincoro(&table("prism:3"), f.pointed(), &"1,2".parse().unwrap(), false),
            Err(ForgeError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn noncommuting_windows() {
        for spec in ["lattice:2", "tree:binary:8"] {
            let c = commute_check(&table(spec)).unwrap();
            assert!(!c.commute, "{spec}");
            assert!(c.consistent, "{spec}");
        }
    }
}
