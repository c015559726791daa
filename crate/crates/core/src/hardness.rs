//! The clique-to-sparse-PCA reduction and the two decision procedures built on
//! an SPCA solver: the gap decider for clique and the two-graph distinguisher.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CliqueInstance, Graph};
use crate::scalar::Scalar;
use crate::spca::{opt_exact, Settings, SpcaInstance, SpcaSolver};
use crate::spectral::{adjacency_matrix, eps_star};

/// `(G, K) ↦ (A(G), r = K, M = K − 1)`.
pub fn reduce_clique_to_spca<T: Scalar>(inst: &CliqueInstance) -> SpcaInstance<T> {
    let k = inst.k();
    SpcaInstance {
        matrix: adjacency_matrix(inst.graph()),
        r: k,
        m: Some(T::from_count(k - 1)),
    }
}

/// Outcome of the gap decider.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct GapDecision<T> {
    pub k: usize,
    pub solver: String,
    /// Achieved `ṽᵀ S ṽ`.
    pub x: T,
    /// `(K−1)(1−ε*(K))`.
    pub threshold: T,
    pub has_clique: bool,
}

/// Decides `K`-clique by running `solver` on the reduced instance and comparing
/// the achieved value against `(K−1)(1−ε*(K))`.
///
/// The comparison is strict: `K_K` minus one edge attains the threshold exactly,
/// so a value at the threshold is a no. Correct whenever the solver's ratio
/// exceeds `1 − ε*(K)`, e.g. for the exact solver.
pub fn decide_clique_via_gap<T: Scalar>(
    inst: &CliqueInstance,
    solver: &dyn SpcaSolver<T>,
    settings: &Settings<T>,
) -> Result<GapDecision<T>> {
    let k = inst.k();
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "gap decider needs K >= 2, got {k}"
        )));
    }
    let gap = eps_star::<T>(k)?;
    let reduced = reduce_clique_to_spca::<T>(inst);
    let sol = solver.solve(&reduced.matrix, k, settings)?;
    Ok(GapDecision {
        k,
        solver: solver.name().to_string(),
        x: sol.value,
        threshold: gap.threshold,
        has_clique: sol.value > gap.threshold + settings.tau,
    })
}

/// `(ℓ, α, δ)` for the two-graph distinguisher.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct DistinguishConfig<T> {
    pub ell: usize,
    pub alpha: T,
    pub delta: T,
}

impl<T: Scalar> DistinguishConfig<T> {
    /// Validates `α ∈ (0,1]`, `δ ∈ (0,1)`, `δ <= α²` and `δ < α²(ℓ−1)/ℓ + 1/ℓ`.
    /// `delta` defaults to `α²`.
    pub fn new(ell: usize, alpha: T, delta: Option<T>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParameter(msg));
        if ell == 0 {
            return invalid("clique size l must be positive".into());
        }
        if !(alpha > T::zero() && alpha <= T::one()) {
            return invalid(format!("alpha = {alpha} not in (0, 1]"));
        }
        let a2 = alpha * alpha;
        let delta = delta.unwrap_or(a2);
        if !(delta > T::zero() && delta < T::one()) {
            return invalid(format!("delta = {delta} not in (0, 1)"));
        }
        if delta > a2 {
            return invalid(format!("delta = {delta} exceeds alpha^2 = {a2}"));
        }
        let l = T::from_count(ell);
        let cap = a2 * (l - T::one()) / l + T::one() / l;
        if !(delta < cap) {
            return invalid(format!(
                "delta = {delta} violates delta < alpha^2 (l-1)/l + 1/l = {cap}"
            ));
        }
        Ok(DistinguishConfig { ell, alpha, delta })
    }

    /// `α(ℓ − 1)`.
    pub fn threshold(&self) -> T {
        self.alpha * (T::from_count(self.ell) - T::one())
    }
}

/// Which input graph the distinguisher claims holds the `ℓ`-clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Declared {
    First,
    Second,
}

impl Declared {
    pub fn as_str(self) -> &'static str {
        match self {
            Declared::First => "first",
            Declared::Second => "second",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct DistinguishResult<T> {
    pub declared: Declared,
    /// `ṽᵀ A ṽ` on the first graph.
    pub achieved_value: T,
    /// `α(ℓ − 1)`.
    pub threshold: T,
}

/// Runs `solver` on the first graph only and declares it the clique holder iff
/// the achieved value reaches `α(ℓ − 1)`. The promise (exactly one side has an
/// `ℓ`-clique, the other is `δ`-sparse) is the caller's to certify.
pub fn distinguish<T: Scalar>(
    first: &Graph,
    second: &Graph,
    cfg: &DistinguishConfig<T>,
    solver: &dyn SpcaSolver<T>,
    settings: &Settings<T>,
) -> Result<DistinguishResult<T>> {
    if first.n() != second.n() {
        return Err(Error::DimensionMismatch {
            expected: first.n(),
            got: second.n(),
        });
    }
    if cfg.ell > first.n() {
        return Err(Error::InvalidParameter(format!(
            "l = {} exceeds n = {}",
            cfg.ell,
            first.n()
        )));
    }
    let a = adjacency_matrix::<T>(first);
    let sol = solver.solve(&a, cfg.ell, settings)?;
    let threshold = cfg.threshold();
    let declared = if sol.value >= threshold - settings.tau {
        Declared::First
    } else {
        Declared::Second
    };
    Ok(DistinguishResult {
        declared,
        achieved_value: sol.value,
        threshold,
    })
}

/// Slack allowed by [`soundness_bound_check`].
pub const SOUNDNESS_SLACK: f64 = 1e-9;

/// On a graph whose `ℓ`-subsets are all `δ`-sparse, checks numerically that
/// `OPT(A, ℓ) < √δ · (ℓ − 1)`, the inequality that makes the distinguisher sound.
pub fn soundness_bound_check<T: Scalar>(
    g: &Graph,
    ell: usize,
    delta: T,
    settings: &Settings<T>,
) -> Result<bool> {
    if ell == 0 || ell > g.n() {
        return Err(Error::InvalidParameter(format!(
            "l = {ell} not in 1..={}",
            g.n()
        )));
    }
    let alpha = delta.sqrt();
    let opt = opt_exact(&adjacency_matrix::<T>(g), ell, settings)?;
    Ok(opt.value < alpha * (T::from_count(ell) - T::one()) + T::lit(SOUNDNESS_SLACK))
}
