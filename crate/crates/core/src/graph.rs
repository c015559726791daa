//! Simple undirected graphs, seeded instance generators and brute-force
//! combinatorial oracles (clique existence, densest-K-subgraph, subset density).
//!
//! The oracles enumerate vertex subsets in lexicographic order and are meant for
//! desk-scale instances. Every enumeration is checked against a [`Guard`] first.

use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of subsets an oracle may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard(pub u64);

impl Guard {
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    /// Refuses to enumerate `C(n, k)` subsets when that exceeds the limit.
    pub fn check(self, n: usize, k: usize) -> Result<u128> {
        let count = binomial(n, k);
        if count > u128::from(self.0) {
            return Err(Error::GuardExceeded {
                n,
                k,
                count,
                limit: self.0,
            });
        }
        Ok(count)
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard(Self::DEFAULT_LIMIT)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until it breaks.
pub fn for_each_k_subset<B>(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let ControlFlow::Break(b) = visit(&idx) {
            return Some(b);
        }
        // rightmost position that can still advance
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return None;
        }
        idx[pos - 1] += 1;
        for j in pos..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sorted set of distinct indices: a graph vertex subset or a vector support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Support(Vec<usize>);

impl From<Support> for Vec<usize> {
    fn from(s: Support) -> Self {
        s.0
    }
}

impl TryFrom<Vec<usize>> for Support {
    type Error = Error;

    fn try_from(indices: Vec<usize>) -> Result<Self> {
        Support::new(indices, usize::MAX)
    }
}

impl Support {
    /// Validates that `indices` is strictly increasing and bounded by `dim`.
    pub fn new(indices: Vec<usize>, dim: usize) -> Result<Self> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidParameter(format!(
                    "support indices must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= dim {
                return Err(Error::IndexOutOfRange { index: last, dim });
            }
        }
        Ok(Support(indices))
    }

    /// Sorts and deduplicates arbitrary indices.
    pub fn from_unsorted(mut indices: Vec<usize>, dim: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        Self::new(indices, dim)
    }

    pub fn full(n: usize) -> Self {
        Support((0..n).collect())
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Support(indices)
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

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            edge_count: 0,
        }
    }

    /// Builds a graph from edges, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.insert_edge(u, v, i + 1)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        for vertex in [u, v] {
            if vertex >= self.n {
                return Err(Error::VertexOutOfRange {
                    line,
                    vertex,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge {
                line,
                u: u.min(v),
                v: u.max(v),
            });
        }
        self.set(u, v, true);
        self.edge_count += 1;
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize, present: bool) {
        self.adj[u * self.n + v] = present;
        self.adj[v * self.n + u] = present;
    }

    /// Adds `{u, v}` if absent. Returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u >= self.n || v >= self.n {
            return Err(Error::IndexOutOfRange {
                index: u.max(v),
                dim: self.n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop { line: 0, vertex: u });
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.set(u, v, true);
        self.edge_count += 1;
        Ok(true)
    }

    /// Removes `{u, v}` if present. Returns whether an edge was removed.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return false;
        }
        self.set(u, v, false);
        self.edge_count -= 1;
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if self.has_edge(u, v) && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut count = 0;
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        let k = vertices.len();
        self.induced_edge_count(vertices) == k * k.saturating_sub(1) / 2
    }

    /// Serializes to the edge-list text format (header `n m`, one `u v` per line).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.edge_count).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    /// Parses the edge-list format. Lines starting with `#` and blank lines are skipped.
    fn from_str(text: &str) -> Result<Self> {
        let mut graph: Option<Graph> = None;
        let mut declared = 0;
        let mut found = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (a, b) = parse_pair(line, line_no)?;
            match graph.as_mut() {
                None => {
                    graph = Some(Graph::empty(a));
                    declared = b;
                }
                Some(g) => {
                    g.insert_edge(a, b, line_no)?;
                    found += 1;
                }
            }
        }
        let graph = graph.ok_or_else(|| Error::Malformed {
            line: 0,
            reason: "missing \"n m\" header".into(),
        })?;
        if found != declared {
            return Err(Error::EdgeCountMismatch { declared, found });
        }
        Ok(graph)
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let malformed = |reason: String| Error::Malformed {
        line: line_no,
        reason,
    };
    let mut tokens = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = tokens
            .next()
            .ok_or_else(|| malformed("expected two integers".into()))?;
        tok.parse()
            .map_err(|_| malformed(format!("not a non-negative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if let Some(extra) = tokens.next() {
        return Err(malformed(format!("unexpected trailing token {extra:?}")));
    }
    Ok((a, b))
}

/// Clique question `(G, K)`: does `G` contain a `K`-clique?
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueInstance {
    graph: Graph,
    k: usize,
}

impl CliqueInstance {
    pub fn new(graph: Graph, k: usize) -> Result<Self> {
        if k == 0 || k > graph.n() {
            return Err(Error::InvalidParameter(format!(
                "clique size K = {k} must satisfy 1 <= K <= n = {}",
                graph.n()
            )));
        }
        Ok(CliqueInstance { graph, k })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    Ok(())
}

fn sample_gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.set(u, v, true);
                g.edge_count += 1;
            }
        }
    }
    g
}

fn complete_on(g: &mut Graph, vertices: &[usize]) {
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            // endpoints are distinct and in range
            let _ = g.add_edge(u, v);
        }
    }
}

/// Complete graph `K_ℓ`.
pub fn gen_complete(ell: usize) -> Graph {
    let mut g = Graph::empty(ell);
    complete_on(&mut g, &(0..ell).collect::<Vec<_>>());
    g
}

/// `K_ℓ` without the edge `{0, 1}`: the two non-adjacent vertices come first.
pub fn gen_clique_minus_edge(ell: usize) -> Result<Graph> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!(
            "clique-minus-edge needs l >= 2, got {ell}"
        )));
    }
    let mut g = gen_complete(ell);
    g.remove_edge(0, 1);
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`, deterministic in `seed`.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    Ok(sample_gnp(&mut rng_from_seed(seed), n, p))
}

/// `G(n, 1/2)` with a uniformly chosen `k`-subset completed to a clique.
pub fn gen_planted_clique(n: usize, k: usize, seed: u64) -> Result<(Graph, Support)> {
    let mut rng = rng_from_seed(seed);
    planted(&mut rng, n, k, 0.5)
}

fn planted(rng: &mut impl Rng, n: usize, k: usize, p: f64) -> Result<(Graph, Support)> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "planted clique size {k} not in 1..={n}"
        )));
    }
    let mut g = sample_gnp(rng, n, p);
    let mut chosen = index::sample(rng, n, k).into_vec();
    chosen.sort_unstable();
    complete_on(&mut g, &chosen);
    Ok((g, Support::from_sorted_unchecked(chosen)))
}

/// Exhaustive search for a `K`-clique.
pub fn has_k_clique_bruteforce(inst: &CliqueInstance, guard: Guard) -> Result<bool> {
    let g = inst.graph();
    guard.check(g.n(), inst.k())?;
    Ok(for_each_k_subset(g.n(), inst.k(), |s| {
        if g.is_clique(s) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_some())
}

/// Densest `K`-subgraph: maximum induced edge count and its lexicographically smallest argmax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensestSubgraph {
    pub max_edges: usize,
    pub support: Support,
}

pub fn densest_k_subgraph_bruteforce(g: &Graph, k: usize, guard: Guard) -> Result<DensestSubgraph> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!(
            "subset size {k} not in 1..={}",
            g.n()
        )));
    }
    guard.check(g.n(), k)?;
    let full = k * (k - 1) / 2;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for_each_k_subset(g.n(), k, |s| {
        let e = g.induced_edge_count(s);
        if best.as_ref().is_none_or(|(b, _)| e > *b) {
            best = Some((e, s.to_vec()));
        }
        if e == full {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let (max_edges, support) = best.expect("at least one subset when 1 <= k <= n");
    Ok(DensestSubgraph {
        max_edges,
        support: Support::from_sorted_unchecked(support),
    })
}

/// Edge budget `δ·ℓ(ℓ−1)/2` for an `ℓ`-subset.
pub fn density_budget(ell: usize, delta: f64) -> f64 {
    delta * (ell * ell.saturating_sub(1)) as f64 / 2.0
}

/// True iff every `ℓ`-subset of `g` induces at most `δ·ℓ(ℓ−1)/2` edges.
pub fn verify_subset_density(g: &Graph, ell: usize, delta: f64, guard: Guard) -> Result<bool> {
    if ell > g.n() {
        return Err(Error::InvalidParameter(format!(
            "subset size {ell} exceeds n = {}",
            g.n()
        )));
    }
    guard.check(g.n(), ell)?;
    let budget = density_budget(ell, delta);
    Ok(for_each_k_subset(g.n(), ell, |s| {
        if g.induced_edge_count(s) as f64 > budget {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_none())
}

/// Parameters for [`gen_two_graph_family`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoGraphParams {
    pub n: usize,
    pub ell: usize,
    pub delta: f64,
    pub seed: u64,
    /// Rejection-sampling budget for the sparse side.
    pub retries: usize,
}

impl TwoGraphParams {
    pub const DEFAULT_RETRIES: usize = 100;

    pub fn new(n: usize, ell: usize, delta: f64, seed: u64) -> Self {
        TwoGraphParams {
            n,
            ell,
            delta,
            seed,
            retries: Self::DEFAULT_RETRIES,
        }
    }

    /// Edge probability of the first sparse sample; later attempts decay by 0.9.
    fn initial_probability(&self) -> f64 {
        (2.0 * self.delta / self.n as f64).min(1.0)
    }
}

/// One graph with a planted `ℓ`-clique and one certified `δ`-sparse graph.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoGraphFamily {
    pub with_clique: Graph,
    pub planted: Support,
    pub sparse: Graph,
    /// Sparse samples drawn before one passed certification.
    pub attempts: usize,
}

/// Builds the two-graph promise pair by planting a clique on a sparse background and
/// rejection-sampling a second graph until [`verify_subset_density`] certifies it.
pub fn gen_two_graph_family(params: TwoGraphParams, guard: Guard) -> Result<TwoGraphFamily> {
    let TwoGraphParams {
        n,
        ell,
        delta,
        seed,
        retries,
    } = params;
    if ell == 0 || ell > n {
        return Err(Error::InvalidParameter(format!(
            "clique size {ell} not in 1..={n}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "density {delta} not in (0, 1)"
        )));
    }
    guard.check(n, ell)?;
    let mut rng = rng_from_seed(seed);
    let p0 = params.initial_probability();
    let (with_clique, planted) = planted(&mut rng, n, ell, p0)?;
    let mut p = p0;
    for attempt in 1..=retries {
        let sparse = sample_gnp(&mut rng, n, p);
        if verify_subset_density(&sparse, ell, delta, guard)? {
            return Ok(TwoGraphFamily {
                with_clique,
                planted,
                sparse,
                attempts: attempt,
            });
        }
        p *= 0.9;
    }
    Err(Error::CertificationFailed { attempts: retries })
}
