//! Sparse PCA: exact solution by support enumeration, the decision problem,
//! certificate verification and two heuristic solvers with no approximation
//! guarantee (greedy forward selection and eigenvector thresholding).

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{for_each_k_subset, Guard, Support};
use crate::scalar::Scalar;
use crate::spectral::{lambda_max, norm, top_eigenpair, SymmetricMatrix};

/// Absolute slack for `value >= M` comparisons in `f64`.
pub const DECISION_TOLERANCE: f64 = 1e-7;

/// Allowed deviation of a certificate's Euclidean norm from 1.
pub const CERTIFICATE_NORM_TOLERANCE: f64 = 1e-8;

/// Numerical knobs shared by the solvers and deciders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings<T> {
    /// Relative eigensolver tolerance.
    pub tol: T,
    /// Decision guard band.
    pub tau: T,
    pub guard: Guard,
}

impl<T: Scalar> Default for Settings<T> {
    fn default() -> Self {
        Settings {
            tol: T::default_tolerance(),
            tau: T::default_decision_tolerance(),
            guard: Guard::default(),
        }
    }
}

/// `(S, r, M)`; `M` is only needed for the decision problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SpcaInstance<T> {
    pub matrix: SymmetricMatrix<T>,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<T>,
}

impl<T: Scalar> SpcaInstance<T> {
    pub fn new(matrix: SymmetricMatrix<T>, r: usize, m: Option<T>) -> Result<Self> {
        if r > matrix.n() {
            return Err(Error::InvalidParameter(format!(
                "sparsity r = {r} exceeds n = {}",
                matrix.n()
            )));
        }
        Ok(SpcaInstance { matrix, r, m })
    }

    fn threshold(&self) -> Result<T> {
        self.m
            .ok_or_else(|| Error::InvalidParameter("instance has no variance threshold M".into()))
    }
}

/// An `r`-sparse unit vector, stored by its support and the values on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SpcaSolution<T> {
    pub support: Support,
    pub values: Vec<T>,
    /// Achieved `vᵀ S v`.
    pub value: T,
}

impl<T: Scalar> SpcaSolution<T> {
    /// Full `n`-vector.
    pub fn to_dense(&self, n: usize) -> Result<Vec<T>> {
        embed_subvector(&self.values, &self.support, n)
    }
}

/// Places `z` at the positions of `q` inside a zero `n`-vector.
pub fn embed_subvector<T: Scalar>(z: &[T], q: &Support, n: usize) -> Result<Vec<T>> {
    if z.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: q.len(),
            got: z.len(),
        });
    }
    let mut v = vec![T::zero(); n];
    for (&i, &zi) in q.indices().iter().zip(z) {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        v[i] = zi;
    }
    Ok(v)
}

fn check_sparsity(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::InvalidParameter(format!(
            "sparsity r = {r} not in 1..={n}"
        )));
    }
    Ok(())
}

/// Top eigenpair of `S` restricted to `idx`, as a solution.
pub fn solve_on_support<T: Scalar>(
    s: &SymmetricMatrix<T>,
    idx: &[usize],
    settings: &Settings<T>,
) -> Result<SpcaSolution<T>> {
    let support = Support::new(idx.to_vec(), s.n())?;
    let sub = s.principal_submatrix(&support)?;
    let pair = top_eigenpair(&sub, settings.tol)?;
    Ok(SpcaSolution {
        support,
        values: pair.vector,
        value: pair.lambda,
    })
}

/// Lexicographically first maximizer of `λ₁(S_Q)` over `|Q| = k`.
fn best_support_of_size<T: Scalar>(s: &SymmetricMatrix<T>, k: usize) -> (T, Vec<usize>) {
    let mut best: Option<(T, Vec<usize>)> = None;
    for_each_k_subset::<()>(s.n(), k, |idx| {
        let lam = lambda_max(&s.principal_submatrix_of(idx));
        if best
            .as_ref()
            .is_none_or(|(b, _)| lam > *b + T::tie_band(*b))
        {
            best = Some((lam, idx.to_vec()));
        }
        ControlFlow::Continue(())
    });
    best.expect("k <= n yields at least one subset")
}

/// `OPT(S, r)` by enumerating every support of size exactly `r`.
///
/// Supports smaller than `r` need not be visited: `λ₁` of a principal submatrix
/// never decreases when indices are added (Cauchy interlacing).
pub fn opt_exact<T: Scalar>(
    s: &SymmetricMatrix<T>,
    r: usize,
    settings: &Settings<T>,
) -> Result<SpcaSolution<T>> {
    check_sparsity(s.n(), r)?;
    settings.guard.check(s.n(), r)?;
    let (_, idx) = best_support_of_size(s, r);
    solve_on_support(s, &idx, settings)
}

/// Maximum of `λ₁(S_Q)` over every support with `1 <= |Q| <= r`.
///
/// Reference route for checking [`opt_exact`]; costs `Σ_k C(n, k)` eigenvalue solves.
pub fn opt_exact_at_most<T: Scalar>(
    s: &SymmetricMatrix<T>,
    r: usize,
    settings: &Settings<T>,
) -> Result<SpcaSolution<T>> {
    check_sparsity(s.n(), r)?;
    let mut best: Option<(T, Vec<usize>)> = None;
    for k in 1..=r {
        settings.guard.check(s.n(), k)?;
        let (lam, idx) = best_support_of_size(s, k);
        if best
            .as_ref()
            .is_none_or(|(b, _)| lam > *b + T::tie_band(*b))
        {
            best = Some((lam, idx));
        }
    }
    let (_, idx) = best.expect("r >= 1");
    solve_on_support(s, &idx, settings)
}

/// Is there a unit vector with at most `r` non-zeros and `vᵀ S v >= M`?
///
/// `r = 0` is always a no: there is no 0-sparse unit vector.
pub fn spca_decide<T: Scalar>(inst: &SpcaInstance<T>, settings: &Settings<T>) -> Result<bool> {
    let m = inst.threshold()?;
    if inst.r == 0 {
        return Ok(false);
    }
    let opt = opt_exact(&inst.matrix, inst.r, settings)?;
    Ok(opt.value >= m - settings.tau)
}

/// Polynomial-time check of a witness `v` for the decision instance.
pub fn verify_certificate<T: Scalar>(
    inst: &SpcaInstance<T>,
    v: &[T],
    settings: &Settings<T>,
) -> Result<bool> {
    let m = inst.threshold()?;
    let n = inst.matrix.n();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    let unit = (norm(v) - T::one()).abs() <= T::lit(CERTIFICATE_NORM_TOLERANCE);
    let sparse = v.iter().filter(|x| **x != T::zero()).count() <= inst.r;
    Ok(unit && sparse && inst.matrix.quadratic_form(v) >= m - settings.tau)
}

/// Greedy forward selection.
///
/// Starts from the largest diagonal entry (or, when the diagonal is constant,
/// from the smaller endpoint of the largest off-diagonal magnitude) and keeps
/// adding the index that maximizes `λ₁` of the grown submatrix.
pub fn greedy_solver<T: Scalar>(
    s: &SymmetricMatrix<T>,
    r: usize,
    settings: &Settings<T>,
) -> Result<SpcaSolution<T>> {
    check_sparsity(s.n(), r)?;
    let n = s.n();
    let diag = s.diagonal();
    let constant = diag.iter().all(|&d| d == diag[0]);
    let start = if constant && n > 1 {
        let mut best = (T::neg_infinity(), 0);
        for i in 0..n {
            for j in i + 1..n {
                let a = s.get(i, j).abs();
                if a > best.0 {
                    best = (a, i);
                }
            }
        }
        best.1
    } else {
        let mut best = 0;
        for i in 1..n {
            if diag[i] > diag[best] {
                best = i;
            }
        }
        best
    };
    let mut chosen = vec![start];
    while chosen.len() < r {
        let mut best: Option<(T, usize)> = None;
        for cand in (0..n).filter(|c| !chosen.contains(c)) {
            let mut idx = chosen.clone();
            idx.push(cand);
            idx.sort_unstable();
            let lam = lambda_max(&s.principal_submatrix_of(&idx));
            if best.is_none_or(|(b, _)| lam > b + T::tie_band(b)) {
                best = Some((lam, cand));
            }
        }
        chosen.push(best.expect("r <= n leaves a candidate").1);
    }
    chosen.sort_unstable();
    solve_on_support(s, &chosen, settings)
}

/// Keeps the `r` largest-magnitude coordinates of the top eigenvector of `S`
/// (ties to the smaller index) and re-solves on that support.
pub fn threshold_solver<T: Scalar>(
    s: &SymmetricMatrix<T>,
    r: usize,
    settings: &Settings<T>,
) -> Result<SpcaSolution<T>> {
    check_sparsity(s.n(), r)?;
    let top = top_eigenpair(s, settings.tol)?;
    let mut taken = vec![false; s.n()];
    let mut chosen = Vec::with_capacity(r);
    for _ in 0..r {
        let mut best: Option<(T, usize)> = None;
        for (i, x) in top.vector.iter().enumerate() {
            if taken[i] {
                continue;
            }
            let mag = x.abs();
            if best.is_none_or(|(b, _)| mag > b + T::tie_band(b)) {
                best = Some((mag, i));
            }
        }
        let i = best.expect("r <= n").1;
        taken[i] = true;
        chosen.push(i);
    }
    chosen.sort_unstable();
    solve_on_support(s, &chosen, settings)
}

/// Produces a feasible `r`-sparse unit vector for `S`.
pub trait SpcaSolver<T: Scalar> {
    fn name(&self) -> &str;

    fn solve(
        &self,
        s: &SymmetricMatrix<T>,
        r: usize,
        settings: &Settings<T>,
    ) -> Result<SpcaSolution<T>>;
}

/// Built-in solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Exact,
    Greedy,
    Threshold,
}

impl SolverKind {
    pub const ALL: [SolverKind; 3] = [SolverKind::Exact, SolverKind::Greedy, SolverKind::Threshold];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Greedy => "greedy",
            SolverKind::Threshold => "threshold",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SolverKind::Exact),
            "greedy" => Ok(SolverKind::Greedy),
            "threshold" => Ok(SolverKind::Threshold),
            other => Err(Error::InvalidParameter(format!("unknown solver {other:?}"))),
        }
    }
}

impl<T: Scalar> SpcaSolver<T> for SolverKind {
    fn name(&self) -> &str {
        self.as_str()
    }

    fn solve(
        &self,
        s: &SymmetricMatrix<T>,
        r: usize,
        settings: &Settings<T>,
    ) -> Result<SpcaSolution<T>> {
        match self {
            SolverKind::Exact => opt_exact(s, r, settings),
            SolverKind::Greedy => greedy_solver(s, r, settings),
            SolverKind::Threshold => threshold_solver(s, r, settings),
        }
    }
}

/// `value / OPT`; undefined unless `OPT > 0`.
pub fn ratio_against<T: Scalar>(value: T, opt: T) -> Result<T> {
    if !(opt > T::zero()) {
        return Err(Error::RatioUndefined(opt.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(value / opt)
}

/// Empirical approximation ratio of `solver` on `(S, r)` against [`opt_exact`].
pub fn measured_ratio<T: Scalar>(
    solver: &dyn SpcaSolver<T>,
    s: &SymmetricMatrix<T>,
    r: usize,
    settings: &Settings<T>,
) -> Result<T> {
    let opt = opt_exact(s, r, settings)?;
    let got = solver.solve(s, r, settings)?;
    ratio_against(got.value, opt.value)
}
