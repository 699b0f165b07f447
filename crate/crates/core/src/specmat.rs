//! Dense real symmetric matrices and the spectral machinery built on them.
//!
//! Everything here works in the eigenbasis: [`eigh`] runs cyclic Jacobi
//! rotations, and the operator functions ([`mat_sqrt`], [`mat_log2`],
//! [`support_projector`]) map eigenvalues and rebuild `V f(Λ) Vᵀ`.
//!
//! Eigenvalues below `rank_cut * λ_max` are treated as exact zeros. The cut is
//! relative because co-occurrence counts give operators of very different
//! scales.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-12;

/// Numerical tolerances shared by the spectral and density routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Eigenvalues with `λ <= rank_cut * λ_max` count as zero.
    pub rank_cut: f64,
    /// Equality tolerance for matrices and kernel-overlap tests.
    pub match_tol: f64,
}

impl Tolerance {
    pub fn new(rank_cut: f64, match_tol: f64) -> Result<Self> {
        for (name, v) in [("rank_cut", rank_cut), ("match_tol", match_tol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidArgument(alloc::format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(Tolerance { rank_cut, match_tol })
    }

    /// Same value for both thresholds.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_cut: 1e-9,
            match_tol: 1e-9,
        }
    }
}

/// Base of the logarithm used by entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Two,
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => libm::log2(x),
            LogBase::E => libm::log(x),
        }
    }
}

/// A real symmetric matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.dim {
            list.entry(&self.row(i));
        }
        list.finish()
    }
}

impl SymMatrix {
    /// Builds from row-major entries, rejecting asymmetry above `1e-12`
    /// (relative to the largest entry) and averaging away what remains.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Shape(alloc::format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        let scale = data.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        for i in 0..dim {
            for j in i + 1..dim {
                let (a, b) = (data[i * dim + j], data[j * dim + i]);
                let gap = (a - b).abs();
                if gap.is_nan() || gap > SYMMETRY_TOL * scale {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self::symmetrized(dim, data))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::Shape(alloc::format!(
                "row {bad} has {} entries, expected {dim}",
                rows[bad].len()
            )));
        }
        Self::new(dim, rows.iter().flatten().copied().collect())
    }

    /// Averages `data` with its transpose. For products that are symmetric
    /// in exact arithmetic.
    pub(crate) fn symmetrized(dim: usize, mut data: Vec<f64>) -> Self {
        for i in 0..dim {
            for j in i + 1..dim {
                let m = 0.5 * (data[i * dim + j] + data[j * dim + i]);
                data[i * dim + j] = m;
                data[j * dim + i] = m;
            }
        }
        SymMatrix { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![1.0; dim])
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * m.dim + i] = *v;
        }
        m
    }

    /// `v vᵀ`.
    pub fn outer(v: &[f64]) -> Self {
        let dim = v.len();
        let mut data = Vec::with_capacity(dim * dim);
        for a in v {
            data.extend(v.iter().map(|b| a * b));
        }
        SymMatrix { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `‖self − other‖_max`; infinite when the dimensions differ.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn approx_eq(&self, other: &SymMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_same_dim(other)?;
        Ok(SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + c * b)
                .collect(),
        })
    }

    /// `tr(self · other)`.
    pub fn trace_product(&self, other: &SymMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        // tr(AB) = Σ a_ij b_ji, and b is symmetric.
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    /// `self · inner · self`, symmetric because `self` is.
    pub fn sandwich(&self, inner: &SymMatrix) -> Result<SymMatrix> {
        self.check_same_dim(inner)?;
        let n = self.dim;
        let left = matmul(n, &self.data, &inner.data);
        Ok(Self::symmetrized(n, matmul(n, &left, &self.data)))
    }

    /// Kronecker product `self ⊗ other`, with `self`'s index major.
    pub fn kron(&self, other: &SymMatrix) -> SymMatrix {
        let (m, n) = (self.dim, other.dim);
        let dim = m * n;
        let mut data = vec![0.0; dim * dim];
        for i in 0..m {
            for j in 0..m {
                let a = self.get(i, j);
                if a == 0.0 {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        data[(i * n + k) * dim + j * n + l] = a * other.get(k, l);
                    }
                }
            }
        }
        SymMatrix { dim, data }
    }

    /// Entrywise (Schur) product.
    pub fn hadamard(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_same_dim(other)?;
        Ok(SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    fn check_same_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Shape(alloc::format!(
                "{}x{} against {}x{}",
                self.dim,
                self.dim,
                other.dim,
                other.dim
            )));
        }
        Ok(())
    }
}

pub(crate) fn matmul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest eigenvalue magnitude; 0 for the empty or zero matrix.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `Σ f(λ_k) v_k v_kᵀ`.
    pub fn rebuild(&self, mut f: impl FnMut(f64) -> f64) -> SymMatrix {
        let n = self.dim();
        let mut data = vec![0.0; n * n];
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let w = f(*lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let wi = w * v[i];
                for j in 0..n {
                    data[i * n + j] += wi * v[j];
                }
            }
        }
        SymMatrix::symmetrized(n, data)
    }

    fn cutoff(&self, tol: &Tolerance) -> f64 {
        tol.rank_cut * self.spectral_radius()
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Eigenvalues come back descending. Each eigenvector has its first nonzero
/// component positive, and eigenvectors of (numerically) equal eigenvalues are
/// ordered lexicographically largest first, so the output is reproducible.
pub fn eigh(a: &SymMatrix) -> Result<EigenSystem> {
    let n = a.dim;
    let mut m = a.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm: f64 = libm::sqrt(m.iter().map(|x| x * x).sum());

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| m[p * n + q] * m[p * n + q])
            .sum();
        if libm::sqrt(off) <= 1e-15 * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (kp, kq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * kp - s * kq;
                    m[k * n + q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * pk - s * qk;
                    m[q * n + k] = s * pk + c * qk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let (kp, kq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * kp - s * kq;
                    v[k * n + q] = s * kp + c * kq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NumericFailure { dim: n });
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
            if let Some(first) = col.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
            }
            (m[k * n + k], col)
        })
        .collect();

    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
    let tie = 1e-12 * pairs.iter().fold(1.0_f64, |s, p| s.max(p.0.abs()));
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end - 1].0 - pairs[end].0 <= tie {
            end += 1;
        }
        pairs[start..end].sort_by(|a, b| lex_cmp(&b.1, &a.1));
        start = end;
    }

    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-12 {
            return x.partial_cmp(y).unwrap_or(Ordering::Equal);
        }
    }
    Ordering::Equal
}

/// Principal square root of a PSD matrix. Eigenvalues within the rank cut of
/// zero are set to zero; anything more negative is an error.
pub fn mat_sqrt(a: &SymMatrix, tol: &Tolerance) -> Result<SymMatrix> {
    let es = eigh(a)?;
    check_psd(&es, tol)?;
    let cut = es.cutoff(tol);
    Ok(es.rebuild(|l| if l > cut { libm::sqrt(l) } else { 0.0 }))
}

/// Base-2 logarithm restricted to the support; kernel directions map to 0.
pub fn mat_log2(a: &SymMatrix, tol: &Tolerance) -> Result<SymMatrix> {
    mat_log(a, tol, LogBase::Two)
}

pub fn mat_log(a: &SymMatrix, tol: &Tolerance, base: LogBase) -> Result<SymMatrix> {
    let es = eigh(a)?;
    let cut = es.cutoff(tol);
    Ok(es.rebuild(|l| if l > cut { base.log(l) } else { 0.0 }))
}

/// Orthogonal projector onto the span of eigenvectors above the rank cut.
pub fn support_projector(a: &SymMatrix, tol: &Tolerance) -> Result<SymMatrix> {
    let es = eigh(a)?;
    let cut = es.cutoff(tol);
    Ok(es.rebuild(|l| if l > cut && l > 0.0 { 1.0 } else { 0.0 }))
}

/// `I − support_projector(a)`.
pub fn kernel_projector(a: &SymMatrix, tol: &Tolerance) -> Result<SymMatrix> {
    let es = eigh(a)?;
    let cut = es.cutoff(tol);
    Ok(es.rebuild(|l| if l > cut && l > 0.0 { 0.0 } else { 1.0 }))
}

/// Number of eigenvalues above the rank cut.
pub fn rank(a: &SymMatrix, tol: &Tolerance) -> Result<usize> {
    let es = eigh(a)?;
    let cut = es.cutoff(tol);
    Ok(es.eigenvalues.iter().filter(|l| **l > cut && **l > 0.0).count())
}

pub(crate) fn check_psd(es: &EigenSystem, tol: &Tolerance) -> Result<()> {
    let min = es.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -es.cutoff(tol) {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(())
}
