//! Self-verification suites behind `spca-lab verify`. Each suite replays one
//! invariant family against brute force or closed form and counts failures.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    binomial, gen_clique_minus_edge, gen_complete, gen_erdos_renyi, has_k_clique_bruteforce,
    CliqueInstance, Graph,
};
use crate::hardness::{decide_clique_via_gap, reduce_clique_to_spca};
use crate::spca::{spca_decide, Settings, SolverKind};
use crate::spectral::{
    adjacency_matrix, clique_minus_edge_spectrum, eps_star, hong_bound, top_eigenpair,
};

/// Agreement required between a closed form and the eigensolver.
pub const SPECTRAL_AGREEMENT: f64 = 1e-8;
/// Bound on `|λ² − (ℓ−3)λ − 2(ℓ−2)|`.
pub const QUADRATIC_RESIDUAL: f64 = 1e-10;
/// Agreement between `(r−1)(1−ε*(r))` and the clique-minus-edge eigenvalue.
pub const THRESHOLD_IDENTITY: f64 = 1e-9;
/// Slack on Hong's bound.
pub const HONG_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn new(suite: &'static str) -> Self {
        SuiteOutcome {
            suite,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Graph on `ℓ` labeled vertices whose edges are the set bits of `mask` over
/// the pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(ell: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(ell);
    let mut bit = 0;
    for u in 0..ell {
        for v in u + 1..ell {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).expect("valid pair");
            }
            bit += 1;
        }
    }
    g
}

/// Every labeled graph on `ℓ <= max_ell` vertices has `λ₁ = ℓ − 1` iff it is complete.
pub fn lemma1(max_ell: usize, settings: &Settings<f64>) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("lemma1");
    for ell in 1..=max_ell {
        let pairs = ell * (ell - 1) / 2;
        if pairs >= 64 || (1u64 << pairs) > settings.guard.0 {
            return Err(Error::GuardExceeded {
                n: ell,
                k: 2,
                count: 1u128 << pairs.min(127),
                limit: settings.guard.0,
            });
        }
        let full = (1u64 << pairs) - 1;
        for mask in 0..=full {
            let g = graph_from_mask(ell, mask);
            let lam = top_eigenpair(&adjacency_matrix::<f64>(&g), settings.tol)?.lambda;
            let hits = (lam - (ell as f64 - 1.0)).abs() <= SPECTRAL_AGREEMENT;
            out.record(hits == (mask == full), || {
                format!("l={ell} mask={mask:#x}: lambda={lam}")
            });
        }
    }
    Ok(out)
}

/// Closed-form clique-minus-edge spectrum against the eigensolver for `ℓ` in
/// `3..=max_ell`, and the threshold identity for `r` in `2..=max_r`.
pub fn eqstar(max_ell: usize, max_r: usize, settings: &Settings<f64>) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("eqstar");
    for ell in 3..=max_ell {
        let closed = clique_minus_edge_spectrum::<f64>(ell)?;
        let numeric = top_eigenpair(
            &adjacency_matrix::<f64>(&gen_clique_minus_edge(ell)?),
            settings.tol,
        )?
        .lambda;
        let diff = (closed.lambda - numeric).abs();
        out.record(diff <= SPECTRAL_AGREEMENT, || {
            format!("l={ell}: closed {} vs numeric {numeric}", closed.lambda)
        });
        let res = closed.quadratic_residual().abs();
        out.record(res <= QUADRATIC_RESIDUAL, || {
            format!("l={ell}: quadratic residual {res:e}")
        });
    }
    for r in 2..=max_r {
        let gap = eps_star::<f64>(r)?;
        let lam = clique_minus_edge_spectrum::<f64>(r)?.lambda;
        let diff = (gap.threshold - lam).abs();
        out.record(diff <= THRESHOLD_IDENTITY, || {
            format!("r={r}: threshold {} vs lambda {lam}", gap.threshold)
        });
    }
    Ok(out)
}

/// Hong's bound on random graphs without isolated vertices, plus tightness on `K_n` and `P₃`.
pub fn hong(
    count: usize,
    max_n: usize,
    seed: u64,
    settings: &Settings<f64>,
) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("hong");
    if max_n < 2 {
        return Err(Error::InvalidParameter(
            "hong suite needs max_n >= 2".into(),
        ));
    }
    let ps = [0.3, 0.5, 0.8];
    let mut drawn = 0u64;
    let mut accepted = 0;
    while accepted < count {
        let n = 2 + (drawn as usize) % (max_n - 1);
        let p = ps[(drawn as usize / (max_n - 1)) % ps.len()];
        let g = gen_erdos_renyi(n, p, seed.wrapping_add(drawn))?;
        drawn += 1;
        if g.has_isolated_vertex() {
            continue;
        }
        accepted += 1;
        let lam = top_eigenpair(&adjacency_matrix::<f64>(&g), settings.tol)?.lambda;
        let bound = hong_bound::<f64>(&g);
        out.record(bound.applicable && lam <= bound.value + HONG_SLACK, || {
            format!(
                "n={n} e={}: lambda {lam} > bound {}",
                g.edge_count(),
                bound.value
            )
        });
    }
    let p3 = Graph::from_edges(3, [(0, 1), (1, 2)])?;
    let tight: Vec<Graph> = (2..=max_n)
        .map(gen_complete)
        .chain(std::iter::once(p3))
        .collect();
    for g in &tight {
        let lam = top_eigenpair(&adjacency_matrix::<f64>(g), settings.tol)?.lambda;
        let bound = hong_bound::<f64>(g).value;
        out.record((lam - bound).abs() <= HONG_SLACK, || {
            format!(
                "tightness n={} e={}: lambda {lam} vs bound {bound}",
                g.n(),
                g.edge_count()
            )
        });
    }
    Ok(out)
}

/// Reduction equivalence and gap-decider correctness on seeded `G(n, p)` graphs
/// with `n` in `5..=10`, `p` in `{0.3, 0.5, 0.8}` and `K` in `2..=5`.
pub fn reduction(count: usize, seed: u64, settings: &Settings<f64>) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("reduction");
    let ps = [0.3, 0.5, 0.8];
    for i in 0..count {
        let n = 5 + i % 6;
        let p = ps[i % ps.len()];
        let g = gen_erdos_renyi(n, p, seed.wrapping_add(i as u64))?;
        for k in 2..=5 {
            let inst = CliqueInstance::new(g.clone(), k)?;
            let truth = has_k_clique_bruteforce(&inst, settings.guard)?;
            let decided = spca_decide(&reduce_clique_to_spca::<f64>(&inst), settings)?;
            out.record(decided == truth, || {
                format!("graph {i} (n={n}, p={p}) K={k}: spca {decided}, clique {truth}")
            });
            let gap = decide_clique_via_gap::<f64>(&inst, &SolverKind::Exact, settings)?;
            out.record(gap.has_clique == truth, || {
                format!(
                    "graph {i} K={k}: gap decider {} (x={}), clique {truth}",
                    gap.has_clique, gap.x
                )
            });
        }
    }
    Ok(out)
}

/// Defaults used by `verify all`.
pub fn all(settings: &Settings<f64>) -> Result<Vec<SuiteOutcome>> {
    Ok(vec![
        lemma1(6, settings)?,
        eqstar(64, 1000, settings)?,
        hong(500, 12, 0, settings)?,
        reduction(200, 0, settings)?,
    ])
}

/// Number of labeled graphs on `ℓ` vertices.
pub fn labeled_graph_count(ell: usize) -> u128 {
    1u128 << binomial(ell, 2).min(127)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_enumeration_covers_complete_graph() {
        assert_eq!(graph_from_mask(4, 0b111111), gen_complete(4));
        assert_eq!(graph_from_mask(4, 0), Graph::empty(4));
        assert_eq!(
            graph_from_mask(3, 0b001).edges().collect::<Vec<_>>(),
            vec![(0, 1)]
        );
        assert_eq!(labeled_graph_count(6), 32768);
    }

    #[test]
    fn small_suites_pass() {
        let s = Settings::default();
        assert!(lemma1(4, &s).unwrap().passed());
        assert!(eqstar(12, 50, &s).unwrap().passed());
        assert!(hong(40, 8, 1, &s).unwrap().passed());
        assert!(reduction(12, 5, &s).unwrap().passed());
    }

    #[test]
    fn lemma1_guard() {
        let s = Settings {
            guard: crate::graph::Guard(1000),
            ..Settings::default()
        };
        assert!(lemma1(6, &s).is_err());
    }
}
