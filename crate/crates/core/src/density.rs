//! Density matrices and the measures defined on them.
//!
//! A [`DensityMatrix`] is any PSD operator with nonnegative trace; it need not
//! be normalized. Every measure normalizes its arguments first, so
//! `R(cρ, dσ) = R(ρ, σ)` for positive `c`, `d`.
//!
//! Entailment is support inclusion: `ρ ≺ σ` iff `supp ρ ⊆ supp σ`, which is
//! exactly when the relative entropy `N(ρ‖σ)` is finite and the
//! representativeness `R(ρ, σ) = 1 / (1 + N(ρ‖σ))` is positive.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::specmat::{self, eigh, kernel_projector, mat_log, mat_sqrt, LogBase, SymMatrix, Tolerance};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: SymMatrix,
    trace: f64,
}

impl DensityMatrix {
    /// Validates positivity with the default tolerance.
    pub fn new(op: SymMatrix) -> Result<Self> {
        Self::with_tolerance(op, &Tolerance::default())
    }

    pub fn with_tolerance(op: SymMatrix, tol: &Tolerance) -> Result<Self> {
        let es = eigh(&op)?;
        specmat::check_psd(&es, tol)?;
        let trace = op.trace();
        Ok(DensityMatrix { op, trace })
    }

    /// Skips the eigen check; for operators that are PSD by construction.
    pub(crate) fn from_psd(op: SymMatrix) -> Self {
        let trace = op.trace();
        DensityMatrix { op, trace }
    }

    pub fn op(&self) -> &SymMatrix {
        &self.op
    }

    pub fn into_op(self) -> SymMatrix {
        self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    pub fn is_normalized(&self) -> bool {
        (self.trace - 1.0).abs() <= 1e-9
    }

    pub fn is_zero(&self) -> bool {
        self.op.max_abs() == 0.0
    }

    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.op.approx_eq(&other.op, tol)
    }
}

impl fmt::Display for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(4);
        for i in 0..self.dim() {
            let row: Vec<_> = self
                .op
                .row(i)
                .iter()
                .map(|x| alloc::format!("{:>w$.p$}", x, w = prec + 4, p = prec))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `|v⟩⟨v|`.
pub fn pure(v: &[f64]) -> Result<DensityMatrix> {
    if v.iter().all(|x| *x == 0.0) {
        return Err(Error::Degenerate("pure state of the zero vector"));
    }
    Ok(DensityMatrix::from_psd(SymMatrix::outer(v)))
}

/// `Σ wᵢ ρᵢ` with positive weights.
pub fn mixture(weights: &[f64], parts: &[DensityMatrix]) -> Result<DensityMatrix> {
    if weights.len() != parts.len() {
        return Err(Error::Shape(alloc::format!(
            "{} weights for {} parts",
            weights.len(),
            parts.len()
        )));
    }
    let Some(first) = parts.first() else {
        return Err(Error::Degenerate("empty mixture"));
    };
    if let Some(w) = weights.iter().find(|w| w.is_nan() || **w <= 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "mixture weight {w} is not positive"
        )));
    }
    let mut acc = SymMatrix::zeros(first.dim());
    for (w, p) in weights.iter().zip(parts) {
        acc = acc.add_scaled(*w, &p.op)?;
    }
    Ok(DensityMatrix::from_psd(acc))
}

/// `ρ / tr ρ`.
pub fn normalize(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.trace.is_nan() || rho.trace <= 0.0 {
        return Err(Error::Degenerate("cannot normalize an operator of zero trace"));
    }
    if rho.trace == 1.0 {
        return Ok(rho.clone());
    }
    Ok(DensityMatrix::from_psd(rho.op.scale(1.0 / rho.trace)))
}

/// A nonnegative real or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    /// Clamps round-off below zero.
    pub fn finite(x: f64) -> Self {
        ExtendedReal::Finite(if x < 0.0 { 0.0 } else { x })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(*x),
            ExtendedReal::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => fmt::Display::fmt(x, f),
            ExtendedReal::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Forward entails, backward does not.
    Hyponym,
    Hypernym,
    Equivalent,
    Incomparable,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Hyponym => "HYPONYM",
            Relation::Hypernym => "HYPERNYM",
            Relation::Equivalent => "EQUIVALENT",
            Relation::Incomparable => "INCOMPARABLE",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntailmentVerdict {
    /// `R(ρ, σ)`
    pub forward: f64,
    /// `R(σ, ρ)`
    pub backward: f64,
    pub relation: Relation,
}

/// Measure configuration: tolerances and the logarithm base.
///
/// The free functions in this module use `Measures::default()`, which is
/// base 2 with the default tolerances.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Measures {
    pub tol: Tolerance,
    pub base: LogBase,
}

impl Measures {
    pub fn new(tol: Tolerance, base: LogBase) -> Self {
        Measures { tol, base }
    }

    fn prepare(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<(DensityMatrix, DensityMatrix)> {
        if rho.dim() != sigma.dim() {
            return Err(Error::Shape(alloc::format!(
                "comparing a {}-dimensional operator with a {}-dimensional one",
                rho.dim(),
                sigma.dim()
            )));
        }
        Ok((normalize(rho)?, normalize(sigma)?))
    }

    /// `tr √(√ρ σ √ρ)`, clamped to `[0, 1]`.
    ///
    /// Evaluated as the sum of singular values of `√σ √ρ`, read off the
    /// symmetric dilation `[[0, B], [Bᵀ, 0]]`. Going through the eigenvalues
    /// of `√ρ σ √ρ` instead squares the spectrum, and small eigenvalues of
    /// the inputs then drown in round-off.
    pub fn fidelity(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        let (rho, sigma) = self.prepare(rho, sigma)?;
        let n = rho.dim();
        let b = specmat::matmul(
            n,
            mat_sqrt(&sigma.op, &self.tol)?.as_slice(),
            mat_sqrt(&rho.op, &self.tol)?.as_slice(),
        );
        let m = 2 * n;
        let mut dilation = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                dilation[i * m + n + j] = b[i * n + j];
                dilation[(n + j) * m + i] = b[i * n + j];
            }
        }
        let es = eigh(&SymMatrix::new(m, dilation)?)?;
        let f = es.eigenvalues.iter().map(|l| l.abs()).sum::<f64>() / 2.0;
        Ok(f.clamp(0.0, 1.0))
    }

    /// Trace of the normalized `ρ` that lies in the kernel of `σ`.
    fn kernel_overlap(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        let kernel = kernel_projector(&sigma.op, &self.tol)?;
        Ok(kernel.trace_product(&rho.op)?.max(0.0))
    }

    /// `N(ρ‖σ) = tr ρ log ρ − tr ρ log σ`, infinite when `ρ` has weight in
    /// the kernel of `σ`.
    pub fn relative_entropy(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ExtendedReal> {
        let (rho, sigma) = self.prepare(rho, sigma)?;
        if self.kernel_overlap(&rho, &sigma)? > self.tol.match_tol {
            return Ok(ExtendedReal::Infinite);
        }
        let self_term = -self.entropy_of_normalized(&rho)?;
        let cross = mat_log(&sigma.op, &self.tol, self.base)?.trace_product(&rho.op)?;
        Ok(ExtendedReal::finite(self_term - cross))
    }

    /// `1 / (1 + N(ρ‖σ))`; exactly 0 when the divergence is infinite.
    pub fn representativeness(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        Ok(match self.relative_entropy(rho, sigma)? {
            ExtendedReal::Infinite => 0.0,
            ExtendedReal::Finite(n) => 1.0 / (1.0 + n),
        })
    }

    /// `−tr ρ log ρ` of the normalized operator.
    pub fn von_neumann_entropy(&self, rho: &DensityMatrix) -> Result<f64> {
        self.entropy_of_normalized(&normalize(rho)?)
    }

    fn entropy_of_normalized(&self, rho: &DensityMatrix) -> Result<f64> {
        let es = eigh(&rho.op)?;
        let cut = self.tol.rank_cut * es.spectral_radius();
        let s: f64 = es
            .eigenvalues
            .iter()
            .filter(|l| **l > cut)
            .map(|l| -l * self.base.log(*l))
            .sum();
        Ok(s.max(0.0))
    }

    /// `supp ρ ⊆ supp σ`.
    ///
    /// Uses the same kernel-overlap test as [`Measures::relative_entropy`],
    /// so `supp_leq(ρ, σ)` holds exactly when `R(ρ, σ) > 0`.
    pub fn supp_leq(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
        let (rho, sigma) = self.prepare(rho, sigma)?;
        Ok(self.kernel_overlap(&rho, &sigma)? <= self.tol.match_tol)
    }

    /// `ρ ≺ σ`.
    pub fn precedes(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
        self.supp_leq(rho, sigma)
    }

    /// `ρ ∼ σ`: each precedes the other.
    pub fn equivalent(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
        Ok(self.precedes(rho, sigma)? && self.precedes(sigma, rho)?)
    }

    /// Thresholds both directions of representativeness at `theta`.
    ///
    /// With `theta = 0` this is the support order. Larger thresholds give a
    /// graded notion of hyponymy that is no longer transitive.
    pub fn classify(&self, rho: &DensityMatrix, sigma: &DensityMatrix, theta: f64) -> Result<EntailmentVerdict> {
        if !(0.0..1.0).contains(&theta) {
            return Err(Error::InvalidArgument(alloc::format!(
                "threshold {theta} outside [0, 1)"
            )));
        }
        let forward = self.representativeness(rho, sigma)?;
        let backward = self.representativeness(sigma, rho)?;
        let relation = match (forward > theta, backward > theta) {
            (true, false) => Relation::Hyponym,
            (false, true) => Relation::Hypernym,
            (true, true) => Relation::Equivalent,
            (false, false) => Relation::Incomparable,
        };
        Ok(EntailmentVerdict {
            forward,
            backward,
            relation,
        })
    }
}

pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Measures::default().fidelity(rho, sigma)
}

pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ExtendedReal> {
    Measures::default().relative_entropy(rho, sigma)
}

pub fn representativeness(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Measures::default().representativeness(rho, sigma)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Measures::default().von_neumann_entropy(rho)
}

pub fn supp_leq(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
    Measures::default().supp_leq(rho, sigma)
}

pub fn precedes(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
    Measures::default().precedes(rho, sigma)
}

pub fn equivalent(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
    Measures::default().equivalent(rho, sigma)
}

pub fn classify(rho: &DensityMatrix, sigma: &DensityMatrix, theta: f64) -> Result<EntailmentVerdict> {
    Measures::default().classify(rho, sigma, theta)
}
