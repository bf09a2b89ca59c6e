//! Gamma matrices for signature (-,+,+,+), the fundamental symmetry and the
//! Krein structure it induces on spinor space.
//!
//! Conventions:
//!
//! * `γ⁰ = i·diag(1, 1, -1, -1)` is anti-Hermitian, `γᵏ = [[0, σₖ], [σₖ, 0]]`
//!   are Hermitian, and `{γ^μ, γ^ν} = 2 g^{μν}`.
//! * `γ⁵ = i γ⁰γ¹γ²γ³` is Hermitian, squares to one and anticommutes with
//!   every `γ^μ`.
//! * The fundamental symmetry is `𝒥 = iγ⁰ = diag(-1, -1, 1, 1)`. With this
//!   sign `⟨φ, ψ⟩ = (φ, 𝒥ψ)` is positive definite and the global time
//!   function is causal.
//! * The Krein product is `(φ, ψ) = φ* (𝒥 ⊗ 𝟙ₙ) ψ` and the Krein adjoint is
//!   `A⁺ = (𝒥 ⊗ 𝟙ₙ) A* (𝒥 ⊗ 𝟙ₙ)`.
//!
//! Under these conventions every `γ^μ` is Krein anti-self-adjoint, so the
//! momentum-space Dirac matrix `γ^μ k_μ` satisfies `D⁺ = -D` while the
//! commutator `[D, f] = -iγ^μ ∂_μ f` of an affine function is Krein
//! self-adjoint.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{c, re, ComplexMatrix, ComplexVector};

/// Minkowski metric `diag(-1, 1, 1, 1)`.
pub const METRIC: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Spinor dimension.
pub const SPINOR_DIM: usize = 4;

#[derive(Debug, Clone)]
pub struct GammaBasis {
    pub gamma: [ComplexMatrix; 4],
    pub gamma5: ComplexMatrix,
    pub metric: [f64; 4],
    /// The fundamental symmetry 𝒥.
    pub fundamental_symmetry: ComplexMatrix,
}

fn pauli() -> [ComplexMatrix; 3] {
    let z = Complex64::ZERO;
    let one = re(1.0);
    let i = c(0.0, 1.0);
    [
        ComplexMatrix::from_rows(&[vec![z, one], vec![one, z]]).unwrap(),
        ComplexMatrix::from_rows(&[vec![z, -i], vec![i, z]]).unwrap(),
        ComplexMatrix::from_rows(&[vec![one, z], vec![z, -one]]).unwrap(),
    ]
}

/// Builds the fixed gamma basis.
pub fn build_gamma_basis() -> GammaBasis {
    let i = c(0.0, 1.0);
    let gamma0 = ComplexMatrix::from_diagonal(&[i, i, -i, -i]);
    let off_diag =
        ComplexMatrix::from_rows(&[vec![re(0.0), re(1.0)], vec![re(1.0), re(0.0)]]).unwrap();
    let [s1, s2, s3] = pauli();
    let gamma = [
        gamma0.clone(),
        off_diag.kron(&s1),
        off_diag.kron(&s2),
        off_diag.kron(&s3),
    ];
    let gamma5 = (&(&(&gamma[0] * &gamma[1]) * &gamma[2]) * &gamma[3]).scale(i);
    let fundamental_symmetry = gamma0.scale(i);
    GammaBasis {
        gamma,
        gamma5,
        metric: METRIC,
        fundamental_symmetry,
    }
}

impl Default for GammaBasis {
    fn default() -> Self {
        build_gamma_basis()
    }
}

impl GammaBasis {
    /// `γ^μ k_μ` for a covector `k`.
    pub fn slash(&self, k: [f64; 4]) -> ComplexMatrix {
        self.gamma
            .iter()
            .zip(k)
            .fold(ComplexMatrix::zeros(4, 4), |acc, (g, kmu)| {
                &acc + &g.scale(re(kmu))
            })
    }

    /// `𝒥 ⊗ 𝟙ₙ` acting on spinors tensored with an `n`-dimensional internal
    /// space.
    pub fn krein_operator(&self, internal_dim: usize) -> ComplexMatrix {
        self.fundamental_symmetry
            .kron(&ComplexMatrix::identity(internal_dim))
    }

    fn internal_dim(&self, len: usize) -> Result<usize> {
        if len == 0 || !len.is_multiple_of(SPINOR_DIM) {
            return Err(Error::Dimension(format!(
                "length {len} is not a positive multiple of {SPINOR_DIM}"
            )));
        }
        Ok(len / SPINOR_DIM)
    }

    /// Krein product `(φ, ψ) = ⟨φ, (𝒥 ⊗ 𝟙ₙ) ψ⟩`.
    pub fn krein_product(&self, phi: &ComplexVector, psi: &ComplexVector) -> Result<Complex64> {
        if phi.len() != psi.len() {
            return Err(Error::Dimension(format!(
                "spinor lengths differ: {} vs {}",
                phi.len(),
                psi.len()
            )));
        }
        let n = self.internal_dim(psi.len())?;
        // 𝒥 is diagonal here, but keep the general form.
        let j_psi = self.krein_operator(n).mul_vec(psi)?;
        Ok(phi.dotc(&j_psi))
    }

    /// Positive-definite Hilbert product `⟨φ, ψ⟩ = (φ, 𝒥ψ)`.
    pub fn hilbert_product(&self, phi: &ComplexVector, psi: &ComplexVector) -> Result<Complex64> {
        let n = self.internal_dim(psi.len())?;
        let j_psi = self.krein_operator(n).mul_vec(psi)?;
        self.krein_product(phi, &j_psi)
    }

    /// Krein adjoint `A⁺ = (𝒥 ⊗ 𝟙ₙ) A* (𝒥 ⊗ 𝟙ₙ)`.
    pub fn krein_adjoint(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "Krein adjoint needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = self.internal_dim(a.rows())?;
        let j = self.krein_operator(n);
        Ok(&(&j * &a.adjoint()) * &j)
    }
}

/// Free-function form of [`GammaBasis::krein_product`].
pub fn krein_product(
    phi: &ComplexVector,
    psi: &ComplexVector,
    basis: &GammaBasis,
) -> Result<Complex64> {
    basis.krein_product(phi, psi)
}

/// Free-function form of [`GammaBasis::krein_adjoint`].
pub fn krein_adjoint(a: &ComplexMatrix, basis: &GammaBasis) -> Result<ComplexMatrix> {
    basis.krein_adjoint(a)
}

/// Unit vector `e_index` of length `dim`.
pub fn unit_vector(dim: usize, index: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(dim);
    v[index] = re(1.0);
    v
}
