//! Dense symmetric matrices, top eigenpairs and the closed-form spectral
//! quantities behind the clique reduction: the clique-minus-one-edge spectrum,
//! the inapproximability gap `ε*(r)` and Hong's spectral-radius bound.

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Support};
use crate::scalar::Scalar;

/// Dense real symmetric `n × n` matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    /// Builds the matrix from its upper triangle: `f(i, j)` is called for `i <= j` only.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                m.data[i * n + j] = x;
                m.data[j * n + i] = x;
            }
        }
        m
    }

    /// Validates squareness and exact symmetry.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        for i in 0..n {
            for j in i + 1..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.n).map(|i| dot(self.row(i), v)).collect()
    }

    /// `vᵀ S v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        dot(v, &self.mul_vec(v))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// Restriction to the rows and columns listed in `support`.
    pub fn principal_submatrix(&self, support: &Support) -> Result<Self> {
        if let Some(&bad) = support.indices().iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.n,
            });
        }
        Ok(self.principal_submatrix_of(support.indices()))
    }

    pub(crate) fn principal_submatrix_of(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in idx {
            let row = self.row(i);
            data.extend(idx.iter().map(|&j| row[j]));
        }
        SymmetricMatrix { n: k, data }
    }
}

pub fn principal_submatrix<T: Scalar>(
    s: &SymmetricMatrix<T>,
    q: &Support,
) -> Result<SymmetricMatrix<T>> {
    s.principal_submatrix(q)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson<T> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Serialize for SymmetricMatrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            n: self.n,
            rows: self.rows(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for SymmetricMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::<T>::deserialize(deserializer)?;
        if raw.rows.len() != raw.n {
            return Err(D::Error::custom(format!(
                "declared n = {} but {} rows given",
                raw.n,
                raw.rows.len()
            )));
        }
        SymmetricMatrix::from_rows(raw.rows).map_err(D::Error::custom)
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Scalar>(v: &[T]) -> T {
    dot(v, v).sqrt()
}

/// Symmetric matrix with upper-triangle entries drawn uniformly from `[-1, 1]`.
pub fn random_uniform_symmetric<T: Scalar>(n: usize, seed: u64) -> SymmetricMatrix<T> {
    let mut rng = crate::graph::rng_from_seed(seed);
    SymmetricMatrix::from_upper(n, |_, _| T::lit(rng.random_range(-1.0..=1.0)))
}

/// (0,1) adjacency matrix with zero diagonal.
pub fn adjacency_matrix<T: Scalar>(g: &Graph) -> SymmetricMatrix<T> {
    SymmetricMatrix::from_upper(g.n(), |i, j| {
        if g.has_edge(i, j) {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// Largest eigenvalue with a unit eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair<T> {
    pub lambda: T,
    pub vector: Vec<T>,
}

impl<T: Scalar> Eigenpair<T> {
    /// `‖S v − λ v‖₂`.
    pub fn residual(&self, s: &SymmetricMatrix<T>) -> T {
        let sv = s.mul_vec(&self.vector);
        sv.iter()
            .zip(&self.vector)
            .map(|(&a, &b)| {
                let d = a - self.lambda * b;
                d * d
            })
            .sum::<T>()
            .sqrt()
    }
}

/// Flips `v` so that its first non-negligible coordinate is non-negative.
pub(crate) fn canonical_sign<T: Scalar>(v: &mut [T]) {
    let cutoff = T::epsilon().sqrt();
    if let Some(&first) = v.iter().find(|x| x.abs() > cutoff) {
        if first < T::zero() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigenvalues and eigenvectors (as columns of a row-major `n × n` buffer)
/// by cyclic Jacobi rotations.
pub fn symmetric_eigen<T: Scalar>(s: &SymmetricMatrix<T>) -> (Vec<T>, Vec<T>) {
    let n = s.n;
    let mut a = s.data.clone();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let target = T::epsilon() * s.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum();
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let two = T::lit(2.0);
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(T::one()));
                let c = T::one() / t.hypot(T::one());
                let sn = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

fn check_tolerance<T: Scalar>(n: usize, tol: T) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "eigenpair of an empty matrix".into(),
        ));
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn accept<T: Scalar>(
    s: &SymmetricMatrix<T>,
    mut pair: Eigenpair<T>,
    tol: T,
    iterations: usize,
) -> Result<Eigenpair<T>> {
    canonical_sign(&mut pair.vector);
    let residual = pair.residual(s);
    if residual > tol * pair.lambda.abs().max(T::one()) {
        return Err(Error::NonConvergence {
            iterations,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(pair)
}

/// Top eigenpair `(λ₁, z)` of a symmetric matrix.
///
/// The eigenvector is unit-norm with its first non-negligible coordinate
/// non-negative. Fails if the residual `‖S z − λ₁ z‖` exceeds `tol·max(1, |λ₁|)`.
pub fn top_eigenpair<T: Scalar>(s: &SymmetricMatrix<T>, tol: T) -> Result<Eigenpair<T>> {
    check_tolerance(s.n, tol)?;
    let n = s.n;
    let (values, vectors) = symmetric_eigen(s);
    let mut best = 0;
    for i in 1..n {
        if values[i] > values[best] {
            best = i;
        }
    }
    let mut vector: Vec<T> = (0..n).map(|k| vectors[k * n + best]).collect();
    let len = norm(&vector);
    vector.iter_mut().for_each(|x| *x = *x / len);
    accept(
        s,
        Eigenpair {
            lambda: values[best],
            vector,
        },
        tol,
        MAX_SWEEPS,
    )
}

/// Largest eigenvalue only.
pub fn lambda_max<T: Scalar>(s: &SymmetricMatrix<T>) -> T {
    if s.n == 0 {
        return T::zero();
    }
    let (values, _) = symmetric_eigen(s);
    values.into_iter().fold(T::neg_infinity(), T::max)
}

/// Default iteration budget of [`top_eigenpair_power`].
pub const POWER_ITERATION_BUDGET: usize = 100_000;

/// Shifted power iteration: runs on `S + cI` where `c` is the Gershgorin bound
/// that makes the shifted matrix positive semidefinite, then removes the shift.
///
/// Starts from the normalized all-ones vector; when an iterate collapses to zero
/// it restarts from the standard basis vectors in index order.
pub fn top_eigenpair_power<T: Scalar>(
    s: &SymmetricMatrix<T>,
    tol: T,
    budget: usize,
) -> Result<Eigenpair<T>> {
    check_tolerance(s.n, tol)?;
    let n = s.n;
    let shift = (0..n)
        .map(|i| {
            let radius: T = (0..n).filter(|&j| j != i).map(|j| s.get(i, j).abs()).sum();
            radius - s.get(i, i)
        })
        .fold(T::zero(), T::max);
    let inv_sqrt_n = T::one() / T::from_count(n).sqrt();
    let mut starts = std::iter::once(vec![inv_sqrt_n; n]).chain((0..n).map(|k| {
        let mut e = vec![T::zero(); n];
        e[k] = T::one();
        e
    }));
    let mut v = starts.next().expect("all-ones start");
    let mut last_residual = T::infinity();
    for it in 0..budget {
        let sv = s.mul_vec(&v);
        let lambda = dot(&v, &sv);
        let residual = sv
            .iter()
            .zip(&v)
            .map(|(&a, &b)| (a - lambda * b) * (a - lambda * b))
            .sum::<T>()
            .sqrt();
        last_residual = residual;
        let w: Vec<T> = sv.iter().zip(&v).map(|(&a, &b)| a + shift * b).collect();
        let len = norm(&w);
        // v sits in the kernel of the shifted matrix, i.e. on the bottom of the spectrum
        if len <= T::epsilon() * shift.max(T::one()) {
            match starts.next() {
                Some(next) => v = next,
                None => break,
            }
            continue;
        }
        if residual <= tol * lambda.abs().max(T::one()) {
            return accept(s, Eigenpair { lambda, vector: v }, tol, it);
        }
        v = w.into_iter().map(|x| x / len).collect();
    }
    Err(Error::NonConvergence {
        iterations: budget,
        residual: last_residual.to_f64().unwrap_or(f64::NAN),
    })
}

/// Top eigenpair of `K_ℓ` minus the edge `{0,1}`, in closed form.
///
/// The eigenvector is `x` on the two non-adjacent vertices and `y` on the other
/// `ℓ − 2`; `λ` is the positive root of `λ² − (ℓ−3)λ − 2(ℓ−2) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CliqueMinusEdgeSpectrum<T> {
    pub ell: usize,
    pub lambda: T,
    pub x: T,
    pub y: T,
}

impl<T: Scalar> CliqueMinusEdgeSpectrum<T> {
    /// `λ² − (ℓ−3)λ − 2(ℓ−2)`.
    pub fn quadratic_residual(&self) -> T {
        let l = T::from_count(self.ell);
        let three = T::lit(3.0);
        let two = T::lit(2.0);
        self.lambda * self.lambda - (l - three) * self.lambda - two * (l - two)
    }

    /// Expanded eigenvector `[x·1₂; y·1_{ℓ−2}]`.
    pub fn vector(&self) -> Vec<T> {
        (0..self.ell)
            .map(|i| if i < 2 { self.x } else { self.y })
            .collect()
    }
}

pub fn clique_minus_edge_spectrum<T: Scalar>(ell: usize) -> Result<CliqueMinusEdgeSpectrum<T>> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!(
            "clique-minus-edge needs l >= 2, got {ell}"
        )));
    }
    let l = T::from_count(ell);
    let half = T::lit(0.5);
    let root = ((l + T::one()).powi(2) - T::lit(8.0)).sqrt();
    let lambda = (l - T::lit(3.0)) * half + half * root;
    // λ − ℓ + 3 = (root − (ℓ−3)) / 2 > 0; rationalized as 4(ℓ−2) / (root + ℓ − 3) once ℓ > 3
    let denom = if ell <= 3 {
        (root - (l - T::lit(3.0))) * half
    } else {
        T::lit(4.0) * (l - T::lit(2.0)) / (root + l - T::lit(3.0))
    };
    let x = T::one();
    let y = T::lit(2.0) / denom;
    let len = (T::lit(2.0) * x * x + (l - T::lit(2.0)) * y * y).sqrt();
    Ok(CliqueMinusEdgeSpectrum {
        ell,
        lambda,
        x: x / len,
        y: y / len,
    })
}

/// Gap parameters for sparsity `r`: `ε*(r)` and the threshold `(r−1)(1−ε*(r))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapParams<T> {
    pub r: usize,
    pub eps_star: T,
    pub threshold: T,
}

/// `ε*(r) = (r+1)/(2(r−1)) · (1 − √(1 − 8/(r+1)²))`.
pub fn eps_star<T: Scalar>(r: usize) -> Result<GapParams<T>> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "eps* needs r >= 2, got {r}"
        )));
    }
    let rr = T::from_count(r);
    let u = T::lit(8.0) / (rr + T::one()).powi(2);
    // 1 − √(1 − u) without cancellation
    let gap = u / (T::one() + (T::one() - u).sqrt());
    let eps = (rr + T::one()) / (T::lit(2.0) * (rr - T::one())) * gap;
    Ok(GapParams {
        r,
        eps_star: eps,
        threshold: (rr - T::one()) * (T::one() - eps),
    })
}

/// Leading term `2/(r²−1)` of `ε*(r)`.
pub fn eps_star_leading_term<T: Scalar>(r: usize) -> T {
    let rr = T::from_count(r);
    T::lit(2.0) / (rr * rr - T::one())
}

/// Hong's bound `√(2e − n + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HongBound<T> {
    pub value: T,
    /// False when `2e − n + 1 < 0`; `value` is then 0.
    pub applicable: bool,
}

pub fn hong_bound<T: Scalar>(g: &Graph) -> HongBound<T> {
    let radicand = 2 * g.edge_count() as i64 - g.n() as i64 + 1;
    if radicand < 0 {
        return HongBound {
            value: T::zero(),
            applicable: false,
        };
    }
    HongBound {
        value: T::from_i64(radicand).expect("small integer").sqrt(),
        applicable: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_clique_minus_edge, gen_complete};

    const TOL: f64 = 1e-10;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let a = adjacency_matrix::<f64>(&gen_complete(3));
        assert_eq!(
            a.rows(),
            vec![
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0]
            ]
        );
        assert_eq!(
            adjacency_matrix::<f64>(&Graph::empty(2)),
            SymmetricMatrix::zeros(2)
        );
        let a = adjacency_matrix::<f64>(&gen_clique_minus_edge(4).unwrap());
        assert_eq!(
            a.rows(),
            vec![
                vec![0.0, 0.0, 1.0, 1.0],
                vec![0.0, 0.0, 1.0, 1.0],
                vec![1.0, 1.0, 0.0, 1.0],
                vec![1.0, 1.0, 1.0, 0.0],
            ]
        );
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        assert_eq!(
            SymmetricMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.5, 1.0]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
        assert!(SymmetricMatrix::from_rows(vec![vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let a = adjacency_matrix::<f64>(&path(3));
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            r#"{"n":3,"rows":[[0.0,1.0,0.0],[1.0,0.0,1.0],[0.0,1.0,0.0]]}"#
        );
        assert_eq!(
            serde_json::from_str::<SymmetricMatrix<f64>>(&text).unwrap(),
            a
        );
        assert!(
            serde_json::from_str::<SymmetricMatrix<f64>>(r#"{"n":2,"rows":[[0,1],[2,0]]}"#)
                .is_err()
        );
        assert!(
            serde_json::from_str::<SymmetricMatrix<f64>>(r#"{"n":3,"rows":[[0,1],[1,0]]}"#)
                .is_err()
        );
    }

    #[test]
    fn top_eigenpair_examples() {
        let k3 = top_eigenpair(&adjacency_matrix::<f64>(&gen_complete(3)), TOL).unwrap();
        assert!((k3.lambda - 2.0).abs() < 1e-12);
        let z = top_eigenpair(&SymmetricMatrix::<f64>::zeros(3), TOL).unwrap();
        assert_eq!(z.lambda, 0.0);
        let p3 = top_eigenpair(&adjacency_matrix::<f64>(&path(3)), TOL).unwrap();
        assert!((p3.lambda - 2f64.sqrt()).abs() < 1e-12);
        // eigenvector of P3 is (1, √2, 1)/2
        for (got, want) in p3.vector.iter().zip([0.5, 0.5 * 2f64.sqrt(), 0.5]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(top_eigenpair(&SymmetricMatrix::<f64>::zeros(0), TOL).is_err());
        assert!(top_eigenpair(&SymmetricMatrix::<f64>::zeros(2), 0.0).is_err());
    }

    #[test]
    fn sign_convention_holds() {
        let s = SymmetricMatrix::from_rows(vec![vec![1.0, -2.0], vec![-2.0, 1.0]]).unwrap();
        let e = top_eigenpair(&s, TOL).unwrap();
        assert!((e.lambda - 3.0).abs() < 1e-12);
        assert!(e.vector[0] > 0.0 && e.vector[1] < 0.0);
    }

    #[test]
    fn bipartite_picks_positive_end() {
        // spectrum of P4 is ±φ, ±1/φ
        let e = top_eigenpair(&adjacency_matrix::<f64>(&path(4)), TOL).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((e.lambda - phi).abs() < 1e-12);
        let p = top_eigenpair_power(
            &adjacency_matrix::<f64>(&path(4)),
            TOL,
            POWER_ITERATION_BUDGET,
        )
        .unwrap();
        assert!((p.lambda - phi).abs() < 1e-9);
    }

    #[test]
    fn power_route_agrees_with_jacobi_on_graphs() {
        for seed in 0..40 {
            let g = crate::graph::gen_erdos_renyi(9, 0.45, seed).unwrap();
            let a = adjacency_matrix::<f64>(&g);
            let j = top_eigenpair(&a, TOL).unwrap();
            let p = top_eigenpair_power(&a, TOL, POWER_ITERATION_BUDGET).unwrap();
            assert!(
                (j.lambda - p.lambda).abs() < 1e-8,
                "seed {seed}: {} vs {}",
                j.lambda,
                p.lambda
            );
        }
    }

    #[test]
    fn power_route_restarts_when_start_is_annihilated() {
        // all-ones lies in the kernel of S + cI for this matrix
        let s = SymmetricMatrix::from_rows(vec![vec![-1.0, -1.0], vec![-1.0, -1.0]]).unwrap();
        let p = top_eigenpair_power(&s, TOL, 1000).unwrap();
        assert!(p.lambda.abs() < 1e-9);
        assert!(matches!(
            top_eigenpair_power(&adjacency_matrix::<f64>(&path(6)), 1e-14, 3),
            Err(Error::NonConvergence { iterations: 3, .. })
        ));
    }

    #[test]
    fn clique_minus_edge_closed_form() {
        let s2 = clique_minus_edge_spectrum::<f64>(2).unwrap();
        assert_eq!(s2.lambda, 0.0);
        let s3 = clique_minus_edge_spectrum::<f64>(3).unwrap();
        assert!((s3.lambda - 2f64.sqrt()).abs() < 1e-14);
        let s4 = clique_minus_edge_spectrum::<f64>(4).unwrap();
        assert!((s4.lambda - (1.0 + 17f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!(clique_minus_edge_spectrum::<f64>(1).is_err());
        for ell in 2..200 {
            let s = clique_minus_edge_spectrum::<f64>(ell).unwrap();
            let l = ell as f64;
            assert!(s.quadratic_residual().abs() < 1e-10 * l.max(1.0));
            assert!(((l - 2.0) * s.y - s.lambda * s.x).abs() < 1e-10);
            assert!((2.0 * s.x + (l - 3.0) * s.y - s.lambda * s.y).abs() < 1e-10);
            assert!((2.0 * s.x * s.x + (l - 2.0) * s.y * s.y - 1.0).abs() < 1e-10);
            assert!(s.x >= 0.0 && s.y >= 0.0);
        }
    }

    #[test]
    fn clique_minus_edge_vector_matches_eigensolver() {
        for ell in 3..12 {
            let closed = clique_minus_edge_spectrum::<f64>(ell).unwrap();
            let a = adjacency_matrix::<f64>(&gen_clique_minus_edge(ell).unwrap());
            let e = top_eigenpair(&a, TOL).unwrap();
            for (got, want) in e.vector.iter().zip(closed.vector()) {
                assert!((got - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn eps_star_examples() {
        let g2 = eps_star::<f64>(2).unwrap();
        assert!((g2.eps_star - 1.0).abs() < 1e-12 && g2.threshold.abs() < 1e-12);
        let g3 = eps_star::<f64>(3).unwrap();
        assert!((g3.eps_star - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
        assert!((g3.threshold - 2f64.sqrt()).abs() < 1e-12);
        let g100 = eps_star::<f64>(100).unwrap();
        assert!((g100.eps_star - 2.0 / 9999.0).abs() < 1e-7);
        assert!(eps_star::<f64>(1).is_err());
    }

    #[test]
    fn eps_star_in_f32() {
        let g = eps_star::<f32>(3).unwrap();
        assert!((g.threshold - 2f32.sqrt()).abs() < 1e-5);
        let s = clique_minus_edge_spectrum::<f32>(10).unwrap();
        assert!((s.lambda - eps_star::<f32>(10).unwrap().threshold).abs() < 1e-4);
    }

    #[test]
    fn hong_bound_examples() {
        let h = hong_bound::<f64>(&gen_complete(3));
        assert!(h.applicable && (h.value - 2.0).abs() < 1e-15);
        assert_eq!(hong_bound::<f64>(&gen_complete(4)).value, 3.0);
        assert!((hong_bound::<f64>(&path(3)).value - 2f64.sqrt()).abs() < 1e-15);
        let sparse = hong_bound::<f64>(&Graph::empty(5));
        assert!(!sparse.applicable && sparse.value == 0.0);
    }

    #[test]
    fn principal_submatrix_examples() {
        let k3 = adjacency_matrix::<f64>(&gen_complete(3));
        let q = Support::new(vec![0, 1], 3).unwrap();
        assert_eq!(
            k3.principal_submatrix(&q).unwrap().rows(),
            vec![vec![0.0, 1.0], vec![1.0, 0.0]]
        );
        assert_eq!(k3.principal_submatrix(&Support::full(3)).unwrap(), k3);
        let k4e = adjacency_matrix::<f64>(&gen_clique_minus_edge(4).unwrap());
        assert_eq!(
            k4e.principal_submatrix(&q).unwrap(),
            SymmetricMatrix::zeros(2)
        );
        let bad = Support::new(vec![1, 5], 10).unwrap();
        assert_eq!(
            k3.principal_submatrix(&bad),
            Err(Error::IndexOutOfRange { index: 5, dim: 3 })
        );
    }
}
