//! Plane-wave modes of the almost-commutative Dirac operator and their
//! classification by the Krein ratio `(DΨ, DΨ) / (Ψ, Ψ)`.
//!
//! A mode `Ψ = ξ e^{i(−Et + p·x)} ⊗ e_i` turns `D = −i∂̸ ⊗ 𝟙 + γ⁵ ⊗ D_F`
//! into the constant matrix `γ^μ k_μ ⊗ 𝟙 + γ⁵ ⊗ D_F` with `k = (−E, p)`.
//! The ratio is computed from that matrix alone; the closed form
//! `E² − ‖p‖² − m_i²` is only used by tests.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{GammaBasis, SPINOR_DIM};
use crate::error::{Error, Result};
use crate::finite_triple::FiniteTriple;
use crate::matrix::{re, ComplexMatrix, ComplexVector};

/// `|(Ψ, Ψ)|` below this is treated as Krein-null.
pub const KREIN_NULL_TOL: f64 = 1e-10;

/// Default tolerance for calling a ratio zero.
pub const HARMONIC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveMode {
    pub energy: f64,
    pub momentum: [f64; 3],
    pub spinor: [Complex64; 4],
    /// Index of the internal basis state `e_i`.
    pub internal: usize,
}

impl PlaneWaveMode {
    /// Mode with the default constant spinor `e₃`, whose Krein norm is `+1`.
    pub fn new(energy: f64, momentum: [f64; 3], internal: usize) -> Self {
        let mut spinor = [Complex64::ZERO; 4];
        spinor[2] = re(1.0);
        Self {
            energy,
            momentum,
            spinor,
            internal,
        }
    }

    pub fn with_spinor(mut self, spinor: [Complex64; 4]) -> Self {
        self.spinor = spinor;
        self
    }

    /// Covector `k_μ = (−E, p)` of the phase `−Et + p·x`.
    pub fn covector(&self) -> [f64; 4] {
        [
            -self.energy,
            self.momentum[0],
            self.momentum[1],
            self.momentum[2],
        ]
    }

    /// `Ψ = ξ ⊗ e_i` in an internal space of dimension `dim`.
    pub fn vector(&self, dim: usize) -> Result<ComplexVector> {
        if self.internal >= dim {
            return Err(Error::State(format!(
                "internal index {} out of range for dim_H = {dim}",
                self.internal
            )));
        }
        let mut v = ComplexVector::zeros(SPINOR_DIM * dim);
        for (s, z) in self.spinor.iter().enumerate() {
            v[s * dim + self.internal] = *z;
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinorKind {
    Causal,
    Harmonic,
    NonCausal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinorClass {
    pub kind: SpinorKind,
    pub ratio: f64,
    pub tol: f64,
}

/// `γ^μ k_μ ⊗ 𝟙 + γ⁵ ⊗ internal`, the momentum-space Dirac matrix for an
/// arbitrary Hermitian internal operator.
pub fn dirac_matrix(internal: &ComplexMatrix, k: [f64; 4], basis: &GammaBasis) -> ComplexMatrix {
    let n = internal.rows();
    &basis.slash(k).kron(&ComplexMatrix::identity(n)) + &basis.gamma5.kron(internal)
}

/// Momentum-space Dirac matrix of the triple for the given mode.
pub fn dirac_momentum(t: &FiniteTriple, mode: &PlaneWaveMode, basis: &GammaBasis) -> ComplexMatrix {
    dirac_matrix(&t.dirac, mode.covector(), basis)
}

/// `(DΨ, DΨ) / (Ψ, Ψ)` for a given Dirac matrix and vector.
pub fn krein_ratio_of(d: &ComplexMatrix, psi: &ComplexVector, basis: &GammaBasis) -> Result<f64> {
    let norm = basis.krein_product(psi, psi)?;
    if norm.norm() < KREIN_NULL_TOL {
        return Err(Error::KreinNull(norm.norm()));
    }
    let d_psi = d.mul_vec(psi)?;
    let num = basis.krein_product(&d_psi, &d_psi)?;
    // Both products are real for the Hermitian 𝒥.
    Ok(num.re / norm.re)
}

pub fn krein_ratio(t: &FiniteTriple, mode: &PlaneWaveMode, basis: &GammaBasis) -> Result<f64> {
    let psi = mode.vector(t.dim_h)?;
    krein_ratio_of(&dirac_momentum(t, mode, basis), &psi, basis)
}

pub fn classify_ratio(ratio: f64, tol: f64) -> SpinorClass {
    let kind = if ratio.abs() <= tol {
        SpinorKind::Harmonic
    } else if ratio > tol {
        SpinorKind::Causal
    } else {
        SpinorKind::NonCausal
    };
    SpinorClass { kind, ratio, tol }
}

pub fn classify_spinor(
    t: &FiniteTriple,
    mode: &PlaneWaveMode,
    basis: &GammaBasis,
    tol: f64,
) -> Result<SpinorClass> {
    Ok(classify_ratio(krein_ratio(t, mode, basis)?, tol))
}

/// `√(‖p‖² + m²)`.
pub fn on_shell_energy(p: [f64; 3], m: f64) -> f64 {
    (p.iter().map(|x| x * x).sum::<f64>() + m * m).sqrt()
}

/// `⟨e_i, X² e_i⟩` for a Hermitian internal operator `X`; equals `m_i²`
/// when `e_i` is an eigenvector of `X²`.
pub fn internal_mass_sq(internal: &ComplexMatrix, index: usize) -> Result<f64> {
    if index >= internal.rows() {
        return Err(Error::State(format!(
            "internal index {index} out of range for dimension {}",
            internal.rows()
        )));
    }
    let row = (0..internal.cols()).map(|j| internal[(index, j)].norm_sqr());
    // (X²)_ii = Σ_j X_ij X_ji = Σ_j |X_ij|² for Hermitian X.
    Ok(row.sum())
}
