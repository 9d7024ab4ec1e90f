//! m-fold products computed three ways, and the distance process
//! `Z_n = |X_1 ⋯ X_n|` of a random walk on a Cayley graph.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::CayleyWindow;
use crate::error::{ForgeError, Result};
use crate::graph::{PointedGraph, Vertex};
use crate::hypergroup::{product_vectors, ProbabilityVector, StructureTable};
use crate::rational::{self, Rational};

pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000_000;
pub const DEFAULT_PATTERN_CAP: u128 = 1_000_000;
pub const MAX_PATTERN_LEN: usize = 64;
/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.5758;
/// Trials per random stream; fixed so results do not depend on threads.
const BLOCK: u64 = 10_000;

/// Jump lengths `i_1, ..., i_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JumpPattern(Vec<usize>);

impl JumpPattern {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() || indices.len() > MAX_PATTERN_LEN {
            return Err(ForgeError::BadParameter(format!(
                "pattern length must be in 1..={MAX_PATTERN_LEN}"
            )));
        }
        Ok(JumpPattern(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl FromStr for JumpPattern {
    type Err = ForgeError;

    fn from_str(s: &str) -> Result<Self> {
        let indices = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| ForgeError::Parse(format!("bad pattern `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        JumpPattern::new(indices)
    }
}

impl fmt::Display for JumpPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `PL(i_1, ..., i_m) = (⋯(x_{i_1} ∘ x_{i_2}) ∘ ⋯) ∘ x_{i_m}`.
pub fn left_nested_product(table: &StructureTable, pat: &JumpPattern) -> Result<ProbabilityVector> {
    let mut acc = ProbabilityVector::point(pat.0[0]);
    table.row(pat.0[0], 0)?;
    for &i in &pat.0[1..] {
        acc = product_vectors(table, &acc, &ProbabilityVector::point(i))?;
    }
    Ok(acc)
}

/// `J(i_1, ..., i_m)`: the law of `|w|` after `m` uniform jumps of the given
/// lengths, starting at the base.
pub fn jump_distribution(pg: &PointedGraph, pat: &JumpPattern) -> Result<ProbabilityVector> {
    let n = pg.vertex_count();
    let mut mu: Vec<Rational> = vec![Rational::zero(); n];
    mu[pg.base()] = rational::one();
    for &i in &pat.0 {
        let mut next = vec![Rational::zero(); n];
        for (v, m) in mu.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let sphere = pg.sphere_at(v, i)?;
            if sphere.is_empty() {
                return Err(ForgeError::EmptySphere { vertex: v, radius: i });
            }
            let share = m / Rational::from_integer(sphere.len().into());
            for &w in sphere {
                next[w] += &share;
            }
        }
        mu = next;
    }
    Ok(ProbabilityVector::from_pairs(
        mu.into_iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(v, m)| (pg.norm(v), m)),
    ))
}

fn sphere_product_count(window: &CayleyWindow, pat: &JumpPattern) -> u128 {
    pat.0
        .iter()
        .map(|&i| window.pointed().sphere(i).len() as u128)
        .try_fold(1u128, |acc, s| acc.checked_mul(s))
        .unwrap_or(u128::MAX)
}

fn check_window_radius(window: &CayleyWindow, pat: &JumpPattern) -> Result<()> {
    match window.pointed().exact_radius() {
        Some(r) if pat.total() > r => Err(ForgeError::RadiusExceeded {
            needed: pat.total(),
            certified: r,
        }),
        _ => Ok(()),
    }
}

/// `p_{i_1,...,i_m}^k`: enumerates every tuple `(v_1, ..., v_m)` with
/// `v_t ∈ S_{i_t}(e)` and tallies `|v_1 ⋯ v_m|`.
pub fn brute_force_conditional(
    window: &CayleyWindow,
    pat: &JumpPattern,
    cap: u128,
) -> Result<ProbabilityVector> {
    check_window_radius(window, pat)?;
    let count = sphere_product_count(window, pat);
    if count > cap {
        return Err(ForgeError::EnumerationCapExceeded { count, cap });
    }
    let pg = window.pointed();
    if let Some(&i) = pat.0.iter().find(|&&i| pg.sphere(i).is_empty()) {
        return Err(ForgeError::EmptySphere {
            vertex: pg.base(),
            radius: i,
        });
    }
    let mut tally: BTreeMap<usize, u128> = BTreeMap::new();
    let identity = window.element(pg.base()).clone();
    let mut stack = vec![(0usize, identity)];
    while let Some((depth, g)) = stack.pop() {
        if depth == pat.len() {
            let norm = window
                .norm_of(&g)
                .expect("product of certified jumps stays in the window");
            *tally.entry(norm).or_default() += 1;
            continue;
        }
        for &v in pg.sphere(pat.0[depth]) {
            stack.push((depth + 1, window.multiply(&g, window.element(v))));
        }
    }
    let total = Rational::from_integer(count.into());
    Ok(ProbabilityVector::from_pairs(
        tally
            .into_iter()
            .map(|(k, c)| (k, Rational::from_integer(c.into()) / &total)),
    ))
}

/// Sampled outcome frequencies with 99% normal-approximation intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalDistribution {
    pub counts: BTreeMap<usize, u64>,
    pub trials: u64,
    pub seed: u64,
    pub estimates: BTreeMap<usize, f64>,
    pub half_widths: BTreeMap<usize, f64>,
}

impl EmpiricalDistribution {
    fn from_counts(counts: BTreeMap<usize, u64>, trials: u64, seed: u64) -> Self {
        let n = trials as f64;
        let estimates: BTreeMap<usize, f64> =
            counts.iter().map(|(&k, &c)| (k, c as f64 / n)).collect();
        let half_widths = estimates
            .iter()
            .map(|(&k, &p)| (k, Z_99 * (p * (1.0 - p) / n).sqrt()))
            .collect();
        EmpiricalDistribution {
            counts,
            trials,
            seed,
            estimates,
            half_widths,
        }
    }

    pub fn estimate(&self, k: usize) -> f64 {
        self.estimates.get(&k).copied().unwrap_or(0.0)
    }

    /// `max_k |estimate_k − exact_k|` over the union of both supports.
    pub fn max_deviation(&self, exact: &ProbabilityVector) -> f64 {
        self.estimates
            .keys()
            .copied()
            .chain(exact.support())
            .map(|k| (self.estimate(k) - rational::to_f64(&exact.get(k))).abs())
            .fold(0.0, f64::max)
    }
}

/// Samples each `v_t` uniformly from `S_{i_t}(e)` and tallies
/// `|v_1 ⋯ v_m|`. Trials are split into fixed blocks, block `b` drawing from
/// stream `b` of a ChaCha generator seeded with `seed`.
pub fn monte_carlo_conditional(
    window: &CayleyWindow,
    pat: &JumpPattern,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalDistribution> {
    if trials == 0 {
        return Err(ForgeError::BadParameter("trials must be positive".into()));
    }
    check_window_radius(window, pat)?;
    let pg = window.pointed();
    let spheres: Vec<&[Vertex]> = pat.0.iter().map(|&i| pg.sphere(i)).collect();
    if let Some(pos) = spheres.iter().position(|s| s.is_empty()) {
        return Err(ForgeError::EmptySphere {
            vertex: pg.base(),
            radius: pat.0[pos],
        });
    }
    let blocks = trials.div_ceil(BLOCK);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let n = BLOCK.min(trials - b * BLOCK);
            let mut local: BTreeMap<usize, u64> = BTreeMap::new();
            for _ in 0..n {
                let mut g = window.element(pg.base()).clone();
                for s in &spheres {
                    let v = s[rng.random_range(0..s.len())];
                    g = window.multiply(&g, window.element(v));
                }
                let norm = window
                    .norm_of(&g)
                    .expect("product of certified jumps stays in the window");
                *local.entry(norm).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_default() += c;
            }
            a
        });
    Ok(EmpiricalDistribution::from_counts(counts, trials, seed))
}

/// Step law of the walk: `P(X = x) = α_{|x|}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkDistribution {
    alpha: BTreeMap<usize, Rational>,
}

impl Serialize for WalkDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, String> = self
            .alpha
            .iter()
            .map(|(k, a)| (*k, rational::format(a)))
            .collect();
        map.serialize(s)
    }
}

impl WalkDistribution {
    /// Checks `α_i >= 0` and `Σ_i α_i |S_i| = 1`.
    pub fn new(alpha: BTreeMap<usize, Rational>, pg: &PointedGraph) -> Result<Self> {
        let mut total = Rational::zero();
        for (&i, a) in &alpha {
            if a.is_negative() {
                return Err(ForgeError::InvalidDistribution(format!("alpha_{i} is negative")));
            }
            if !a.is_zero() && pg.sphere(i).is_empty() {
                return Err(ForgeError::InvalidDistribution(format!(
                    "alpha_{i} is positive but S_{i} is empty"
                )));
            }
            total += a * Rational::from_integer(pg.sphere(i).len().into());
        }
        if !total.is_one() {
            return Err(ForgeError::InvalidDistribution(format!(
                "sum of alpha_i |S_i| is {}",
                rational::format(&total)
            )));
        }
        Ok(WalkDistribution {
            alpha: alpha.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
        })
    }

    /// `α_i = 1/|G|` on a finite graph.
    pub fn uniform(pg: &PointedGraph) -> Result<Self> {
        if pg.is_truncated() {
            return Err(ForgeError::NotFinite);
        }
        let a = rational::ratio(1, pg.vertex_count() as i64);
        Self::new((0..pg.sphere_count()).map(|i| (i, a.clone())).collect(), pg)
    }

    /// Reads `{"i": "num/den", ...}`.
    pub fn from_json(text: &str, pg: &PointedGraph) -> Result<Self> {
        let raw: BTreeMap<usize, String> = serde_json::from_str(text)?;
        let alpha = raw
            .into_iter()
            .map(|(i, s)| rational::parse(&s).map(|a| (i, a)))
            .collect::<Result<_>>()?;
        Self::new(alpha, pg)
    }

    pub fn alpha(&self, i: usize) -> Rational {
        self.alpha.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.alpha.keys().copied()
    }
}

/// `P(Z_1 = i_1, ..., Z_k = i_k)` for every pattern of positive probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointLaw {
    pub depth: usize,
    pub entries: BTreeMap<Vec<usize>, Rational>,
}

#[derive(Serialize)]
struct JointEntry<'a> {
    pattern: &'a [usize],
    #[serde(with = "rational::as_string")]
    probability: &'a Rational,
}

impl Serialize for JointLaw {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            depth: usize,
            entries: Vec<JointEntry<'a>>,
        }
        Out {
            depth: self.depth,
            entries: self
                .entries
                .iter()
                .map(|(p, q)| JointEntry {
                    pattern: p,
                    probability: q,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl JointLaw {
    pub fn prob(&self, pattern: &[usize]) -> Rational {
        self.entries.get(pattern).cloned().unwrap_or_else(Rational::zero)
    }

    /// The law of the first `depth` coordinates.
    pub fn marginal(&self, depth: usize) -> JointLaw {
        let mut entries: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (p, q) in &self.entries {
            *entries
                .entry(p[..depth].to_vec())
                .or_insert_with(Rational::zero) += q;
        }
        JointLaw { depth, entries }
    }
}

fn require_complete(window: &CayleyWindow) -> Result<()> {
    if window.is_complete() {
        Ok(())
    } else {
        Err(ForgeError::NotFinite)
    }
}

/// Exact joint law of `(Z_1, ..., Z_depth)` by dynamic programming over the
/// running product `X_1 ⋯ X_t`.
pub fn joint_distance_law(
    window: &CayleyWindow,
    alpha: &WalkDistribution,
    depth: usize,
    cap: u128,
) -> Result<JointLaw> {
    require_complete(window)?;
    let pg = window.pointed();
    let patterns = (pg.sphere_count() as u128)
        .checked_pow(depth as u32)
        .unwrap_or(u128::MAX);
    if patterns > cap {
        return Err(ForgeError::PatternCapExceeded { count: patterns, cap });
    }
    let steps: Vec<(Vertex, Rational)> = (0..pg.vertex_count())
        .map(|x| (x, alpha.alpha(pg.norm(x))))
        .filter(|(_, a)| !a.is_zero())
        .collect();
    let mut products: HashMap<(Vertex, Vertex), Vertex> = HashMap::new();
    let mut mult = |g: Vertex, x: Vertex| -> Vertex {
        *products
            .entry((g, x))
            .or_insert_with(|| window.product_vertex(g, x).expect("finite group is closed"))
    };
    let mut states: BTreeMap<(Vec<usize>, Vertex), Rational> = BTreeMap::new();
    states.insert((Vec::new(), pg.base()), rational::one());
    for _ in 0..depth {
        let mut next: BTreeMap<(Vec<usize>, Vertex), Rational> = BTreeMap::new();
        for ((pattern, g), p) in &states {
            for (x, a) in &steps {
                let h = mult(*g, *x);
                let mut pat = pattern.clone();
                pat.push(pg.norm(h));
                *next.entry((pat, h)).or_insert_with(Rational::zero) += p * a;
            }
        }
        states = next;
    }
    let mut entries: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for ((pattern, _), p) in states {
        *entries.entry(pattern).or_insert_with(Rational::zero) += p;
    }
    entries.retain(|_, p| !p.is_zero());
    Ok(JointLaw { depth, entries })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovCounterexample {
    pub history_a: Vec<usize>,
    pub history_b: Vec<usize>,
    pub next: usize,
    #[serde(with = "rational::as_string")]
    pub p_a: Rational,
    #[serde(with = "rational::as_string")]
    pub p_b: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IidCounterexample {
    pub history: Vec<usize>,
    pub next: usize,
    #[serde(with = "rational::as_string")]
    pub conditional: Rational,
    #[serde(with = "rational::as_string")]
    pub marginal: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovReport {
    pub depth: usize,
    pub is_markov: bool,
    pub is_iid: bool,
    pub counterexample: Option<MarkovCounterexample>,
    pub iid_counterexample: Option<IidCounterexample>,
}

/// Compares `P(Z_{n+1} = j | Z_1..Z_n)` across histories sharing `Z_n`
/// (Markov) and against the law of `Z_1` (i.i.d.).
pub fn markov_check(law: &JointLaw) -> MarkovReport {
    let mut counterexample = None;
    let mut iid_counterexample = None;
    let first = law.marginal(1.min(law.depth));
    let step = |j: usize| first.prob(&[j]);
    let outcomes: Vec<usize> = {
        let mut o: Vec<usize> = law.entries.keys().flatten().copied().collect();
        o.sort_unstable();
        o.dedup();
        o
    };
    for n in 1..law.depth {
        let head = law.marginal(n);
        let upto = law.marginal(n + 1);
        // conditional laws keyed by history, grouped by last value
        let mut by_last: BTreeMap<usize, (Vec<usize>, Vec<Rational>)> = BTreeMap::new();
        for (history, ph) in &head.entries {
            let cond: Vec<Rational> = outcomes
                .iter()
                .map(|&j| {
                    let mut p = history.clone();
                    p.push(j);
                    upto.prob(&p) / ph
                })
                .collect();
            if iid_counterexample.is_none() {
                if let Some(pos) = (0..outcomes.len()).find(|&t| cond[t] != step(outcomes[t])) {
                    iid_counterexample = Some(IidCounterexample {
                        history: history.clone(),
                        next: outcomes[pos],
                        conditional: cond[pos].clone(),
                        marginal: step(outcomes[pos]),
                    });
                }
            }
            let last = *history.last().unwrap();
            match by_last.get(&last) {
                None => {
                    by_last.insert(last, (history.clone(), cond));
                }
                Some((h0, c0)) => {
                    if counterexample.is_none() {
                        if let Some(pos) = (0..outcomes.len()).find(|&t| c0[t] != cond[t]) {
                            counterexample = Some(MarkovCounterexample {
                                history_a: h0.clone(),
                                history_b: history.clone(),
                                next: outcomes[pos],
                                p_a: c0[pos].clone(),
                                p_b: cond[pos].clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    MarkovReport {
        depth: law.depth,
        is_markov: counterexample.is_none(),
        is_iid: iid_counterexample.is_none(),
        counterexample,
        iid_counterexample,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepIdentity {
    pub i: usize,
    pub j: usize,
    /// `P(Z_2 = j | Z_1 = i)`.
    #[serde(with = "rational::as_string")]
    pub lhs: Rational,
    /// `Σ_k p_{i,k}^j α_k |S_k|`.
    #[serde(with = "rational::as_string")]
    pub rhs: Rational,
    /// `|S_j| = Σ_k p_{i,k}^j |S_k|`, checked for the uniform law.
    pub uniform_identity: Option<bool>,
}

impl StepIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.uniform_identity != Some(false)
    }
}

pub fn conditional_step_identity(
    window: &CayleyWindow,
    table: &StructureTable,
    alpha: &WalkDistribution,
    i: usize,
    j: usize,
) -> Result<StepIdentity> {
    require_complete(window)?;
    let pg = window.pointed();
    let law = joint_distance_law(window, alpha, 2, DEFAULT_PATTERN_CAP)?;
    let p_i = law.marginal(1).prob(&[i]);
    if p_i.is_zero() {
        return Err(ForgeError::ZeroProbabilityCondition { index: i });
    }
    let lhs = law.prob(&[i, j]) / &p_i;
    let size = |k: usize| Rational::from_integer(pg.sphere(k).len().into());
    let mut rhs = Rational::zero();
    for k in 0..pg.sphere_count() {
        rhs += table.p(i, k, j)? * alpha.alpha(k) * size(k);
    }
    let uniform = WalkDistribution::uniform(pg)?;
    let uniform_identity = if *alpha == uniform {
        let mut sum = Rational::zero();
        for k in 0..pg.sphere_count() {
            sum += table.p(i, k, j)? * size(k);
        }
        Some(sum == size(j))
    } else {
        None
    };
    Ok(StepIdentity {
        i,
        j,
        lhs,
        rhs,
        uniform_identity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    pub holds: bool,
    pub permutations_checked: usize,
    /// A reordering whose `PL` differs from the pattern's.
    pub witness: Option<(JumpPattern, JumpPattern)>,
}

/// `PL` is unchanged under every reordering of the pattern.
pub fn permutation_invariance_check(table: &StructureTable, pat: &JumpPattern) -> Result<PermutationReport> {
    let reference = left_nested_product(table, pat)?;
    let mut perm = pat.0.clone();
    perm.sort_unstable();
    let mut checked = 0;
    loop {
        checked += 1;
        let p = JumpPattern(perm.clone());
        if left_nested_product(table, &p)? != reference {
            return Ok(PermutationReport {
                holds: false,
                permutations_checked: checked,
                witness: Some((pat.clone(), p)),
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(PermutationReport {
        holds: true,
        permutations_checked: checked,
        witness: None,
    })
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
