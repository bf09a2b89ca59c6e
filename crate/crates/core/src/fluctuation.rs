//! Scalar inner fluctuations of the electroweak internal Dirac operator.
//!
//! Only the Higgs sector is generated: `Φ = D_F + A + J_F A J_F*` with
//! `A = Σ_j a_j [D_F, b_j]`, and no gauge one-forms along spacetime.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::GammaBasis;
use crate::dispersion::{dirac_matrix, internal_mass_sq, krein_ratio_of, PlaneWaveMode};
use crate::error::{Error, Result};
use crate::finite_triple::{block_diag, ew_representation, quaternion, FiniteTriple};
use crate::matrix::{re, ComplexMatrix, DEFAULT_TOL};

/// Element `(λ, q)` of `ℂ ⊕ ℍ`, with `q` in its 2x2 complex embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct EWAlgebraElement {
    pub lambda: Complex64,
    q: ComplexMatrix,
}

impl EWAlgebraElement {
    /// `(λ, α + βj)`.
    pub fn new(lambda: Complex64, alpha: Complex64, beta: Complex64) -> Self {
        Self {
            lambda,
            q: quaternion(alpha, beta),
        }
    }

    /// Accepts a 2x2 matrix only if it has the form `[[α, β], [−β̄, ᾱ]]`.
    pub fn from_parts(lambda: Complex64, q: ComplexMatrix) -> Result<Self> {
        if q.rows() != 2 || q.cols() != 2 {
            return Err(Error::Dimension("quaternion block must be 2x2".into()));
        }
        let expected = quaternion(q[(0, 0)], q[(0, 1)]);
        if !q.approx_eq(&expected, DEFAULT_TOL) {
            return Err(Error::Domain(
                "matrix is not a quaternion [[a, b], [-conj b, conj a]]".into(),
            ));
        }
        Ok(Self { lambda, q })
    }

    pub fn identity() -> Self {
        Self::new(re(1.0), re(1.0), Complex64::ZERO)
    }

    pub fn q(&self) -> &ComplexMatrix {
        &self.q
    }

    /// `(λ̄, q*)`.
    pub fn adjoint(&self) -> Self {
        Self {
            lambda: self.lambda.conj(),
            q: self.q.adjoint(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            lambda: self.lambda * other.lambda,
            q: &self.q * &other.q,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            lambda: self.lambda * s,
            q: self.q.scale(re(s)),
        }
    }

    /// Action on the eight-dimensional lepton space.
    pub fn represent(&self) -> ComplexMatrix {
        ew_representation(self.lambda, &self.q)
    }
}

/// Higgs doublet `φ = (h₁ + 1, h₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HiggsField {
    #[serde(with = "crate::matrix::complex_pair")]
    pub h1: Complex64,
    #[serde(with = "crate::matrix::complex_pair")]
    pub h2: Complex64,
}

impl HiggsField {
    pub fn new(h1: Complex64, h2: Complex64) -> Self {
        Self { h1, h2 }
    }

    pub fn vacuum() -> Self {
        Self::new(Complex64::ZERO, Complex64::ZERO)
    }

    /// After symmetry breaking: `φ = (v + h, 0)`.
    pub fn broken(v: f64, h: f64) -> Self {
        Self::new(re(v + h - 1.0), Complex64::ZERO)
    }

    pub fn doublet(&self) -> [Complex64; 2] {
        [self.h1 + 1.0, self.h2]
    }

    pub fn doublet_norm_sq(&self) -> f64 {
        self.doublet().iter().map(|z| z.norm_sqr()).sum()
    }
}

fn require_electroweak(t: &FiniteTriple) -> Result<()> {
    if t.dim_h != 8 || t.real_structure.is_none() {
        return Err(Error::UnsupportedTriple(format!(
            "expected the 8-dimensional electroweak triple with a real structure, got dim_H = {}",
            t.dim_h
        )));
    }
    Ok(())
}

/// `Φ = D_F + A + J_F A J_F*` for the one-form `A = Σ_j a_j [D_F, b_j]`.
pub fn inner_fluctuation_form(
    t: &FiniteTriple,
    pairs: &[(EWAlgebraElement, EWAlgebraElement)],
) -> Result<ComplexMatrix> {
    require_electroweak(t)?;
    let d = &t.dirac;
    let one_form = pairs
        .iter()
        .fold(ComplexMatrix::zeros(8, 8), |acc, (a, b)| {
            &acc + &(&a.represent() * &d.commutator(&b.represent()))
        });
    let mirrored = t
        .conjugate_by_real_structure(&one_form)
        .expect("checked by require_electroweak");
    Ok(&(d + &one_form) + &mirrored)
}

/// `Φ = D_F + a[D_F, b] + J_F a[D_F, b] J_F*` for a single pair.
///
/// A single pair is generally not self-adjoint; use
/// [`self_adjoint_pairs`] for a Hermitian fluctuation.
pub fn inner_fluctuation(
    t: &FiniteTriple,
    a: &EWAlgebraElement,
    b: &EWAlgebraElement,
) -> Result<ComplexMatrix> {
    inner_fluctuation_form(t, &[(a.clone(), b.clone())])
}

/// Pairs whose one-form is `a[D, b] + (a[D, b])*`, using
/// `(a[D, b])* = b*[D, a*] − [D, b*a*]`.
pub fn self_adjoint_pairs(
    a: &EWAlgebraElement,
    b: &EWAlgebraElement,
) -> Vec<(EWAlgebraElement, EWAlgebraElement)> {
    let (a_adj, b_adj) = (a.adjoint(), b.adjoint());
    vec![
        (a.clone(), b.clone()),
        (b_adj.clone(), a_adj.clone()),
        (EWAlgebraElement::identity().scale(-1.0), b_adj.mul(&a_adj)),
    ]
}

/// A self-adjoint one-form producing the given Higgs field:
/// `a = (1, 0)`, `b = (0, h̄₁ + h̄₂ j)`.
pub fn pairs_for_higgs(field: &HiggsField) -> Vec<(EWAlgebraElement, EWAlgebraElement)> {
    let a = EWAlgebraElement::new(re(1.0), Complex64::ZERO, Complex64::ZERO);
    let b = EWAlgebraElement::new(Complex64::ZERO, field.h1.conj(), field.h2.conj());
    self_adjoint_pairs(&a, &b)
}

/// The lepton-sector block `φ` in the basis `{ν_R, e_R, ν_L, e_L}`.
pub fn higgs_phi_block(m_e: Complex64, field: &HiggsField) -> ComplexMatrix {
    let (h1, h2) = (field.h1, field.h2);
    let mb = m_e.conj();
    let mut phi = ComplexMatrix::zeros(4, 4);
    phi[(1, 2)] = -mb * h2;
    phi[(1, 3)] = mb * (h1 + 1.0);
    phi[(2, 1)] = -m_e * h2.conj();
    phi[(3, 1)] = m_e * (h1.conj() + 1.0);
    phi
}

/// `Φ = diag(φ, φ̄)` on the full lepton space.
pub fn higgs_phi(m_e: Complex64, field: &HiggsField) -> ComplexMatrix {
    let phi = higgs_phi_block(m_e, field);
    block_diag(&phi, &phi.conj())
}

/// Top-left `4x4` block (particles) of an `8x8` operator.
pub fn particle_block(phi: &ComplexMatrix) -> Result<ComplexMatrix> {
    if phi.rows() != 8 || phi.cols() != 8 {
        return Err(Error::Dimension(format!(
            "expected 8x8, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(4, 4, |i, j| phi[(i, j)]))
}

/// Reads `(h₁, h₂)` back from the positions of `φ`, returning the field and
/// the largest deviation of `Φ` from the `diag(φ, φ̄)` pattern it implies.
pub fn extract_higgs(phi: &ComplexMatrix, m_e: Complex64) -> Result<(HiggsField, f64)> {
    if m_e.norm() == 0.0 {
        return Err(Error::Domain(
            "Higgs field is not determined when m_e = 0".into(),
        ));
    }
    let block = particle_block(phi)?;
    let mb = m_e.conj();
    let field = HiggsField::new(block[(1, 3)] / mb - 1.0, -block[(1, 2)] / mb);
    let residual = phi.max_abs_diff(&higgs_phi(m_e, &field));
    Ok((field, residual))
}

/// `Tr Φ²`, rejecting a non-negligible imaginary part.
pub fn trace_phi_sq(phi: &ComplexMatrix) -> Result<f64> {
    if !phi.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} is not square",
            phi.rows(),
            phi.cols()
        )));
    }
    let tr = (phi * phi).trace();
    if tr.im.abs() > 1e-10 {
        return Err(Error::NonHermitian(format!(
            "Tr Φ² has imaginary part {:e}",
            tr.im
        )));
    }
    Ok(tr.re)
}

/// `2 |m_e|² |φ|²`, the trace of `φ²` over the lepton sector.
pub fn trace_phi_sq_closed_form(m_e: Complex64, field: &HiggsField) -> f64 {
    2.0 * m_e.norm_sqr() * field.doublet_norm_sq()
}

/// Largest entrywise deviation of `D_Φ²` from `(‖p‖² − E²) 𝟙 ⊗ 𝟙 + 𝟙 ⊗ Φ²`.
pub fn fluctuated_square_residual(
    phi: &ComplexMatrix,
    mode: &PlaneWaveMode,
    basis: &GammaBasis,
) -> f64 {
    let d = dirac_matrix(phi, mode.covector(), basis);
    let n = phi.rows();
    let p2: f64 = mode.momentum.iter().map(|x| x * x).sum();
    let expected = &ComplexMatrix::identity(4 * n).scale(re(p2 - mode.energy * mode.energy))
        + &ComplexMatrix::identity(4).kron(&(phi * phi));
    (&d * &d).max_abs_diff(&expected)
}

/// Krein ratio of the mode `e₃ e^{i(−Et + p·x)} ⊗ e_state` under the
/// fluctuated Dirac operator `D_Φ`. Zero means the mode is harmonic.
///
/// Fails with `Internal` if the square identity of `D_Φ` does not hold to
/// `1e-12` (relative to the largest entry when that exceeds one).
#[allow(clippy::too_many_arguments)]
pub fn fluctuated_dispersion(
    t: &FiniteTriple,
    m_e: Complex64,
    field: &HiggsField,
    energy: f64,
    p: [f64; 3],
    state_label: &str,
    basis: &GammaBasis,
) -> Result<f64> {
    require_electroweak(t)?;
    let index = t.state_index(state_label)?;
    let phi = higgs_phi(m_e, field);
    let mode = PlaneWaveMode::new(energy, p, index);
    let d = dirac_matrix(&phi, mode.covector(), basis);
    let scale = (&d * &d).max_abs().max(1.0);
    let residual = fluctuated_square_residual(&phi, &mode, basis);
    if residual > 1e-12 * scale {
        return Err(Error::Internal(format!(
            "D_Φ² block identity violated by {residual:e}"
        )));
    }
    krein_ratio_of(&d, &mode.vector(8)?, basis)
}

/// Energy solving `E² = ‖p‖² + ⟨e, Φ² e⟩` for the named state.
pub fn fluctuated_on_shell_energy(
    t: &FiniteTriple,
    m_e: Complex64,
    field: &HiggsField,
    p: [f64; 3],
    state_label: &str,
) -> Result<f64> {
    let index = t.state_index(state_label)?;
    let mass_sq = internal_mass_sq(&higgs_phi(m_e, field), index)?;
    Ok((p.iter().map(|x| x * x).sum::<f64>() + mass_sq).sqrt())
}
