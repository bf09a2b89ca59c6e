//! Finite (internal) spectral triples: the two-point space, the
//! electroweak lepton space, and matrix-level axiom checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::GammaBasis;
use crate::error::{Error, Result};
use crate::matrix::{c, re, ComplexMatrix, DEFAULT_TOL};

/// Basis labels of the electroweak internal space.
pub const EW_LABELS: [&str; 8] = [
    "nu_R", "e_R", "nu_L", "e_L", "nubar_R", "ebar_R", "nubar_L", "ebar_L",
];

/// A finite spectral triple `(A_F, H_F, D_F)` with optional real structure
/// and grading.
///
/// The real structure is stored as its matrix part `M`; it acts as
/// `J v = M · conj(v)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct FiniteTriple {
    pub dim_h: usize,
    /// A real spanning set of the represented algebra.
    pub generators: Vec<ComplexMatrix>,
    pub dirac: ComplexMatrix,
    pub real_structure: Option<ComplexMatrix>,
    pub grading: Option<ComplexMatrix>,
    pub labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriple {
    #[serde(rename = "dim_H")]
    dim_h: usize,
    generators: Vec<ComplexMatrix>,
    #[serde(rename = "D_F")]
    dirac: ComplexMatrix,
    #[serde(rename = "J_F", default)]
    real_structure: Option<ComplexMatrix>,
    #[serde(rename = "gamma_F", default)]
    grading: Option<ComplexMatrix>,
    #[serde(default)]
    labels: Vec<String>,
}

impl TryFrom<RawTriple> for FiniteTriple {
    type Error = Error;

    fn try_from(raw: RawTriple) -> Result<Self> {
        FiniteTriple::new(
            raw.dim_h,
            raw.generators,
            raw.dirac,
            raw.real_structure,
            raw.grading,
            raw.labels,
        )
    }
}

impl From<FiniteTriple> for RawTriple {
    fn from(t: FiniteTriple) -> Self {
        RawTriple {
            dim_h: t.dim_h,
            generators: t.generators,
            dirac: t.dirac,
            real_structure: t.real_structure,
            grading: t.grading,
            labels: t.labels,
        }
    }
}

/// Index of a basis state of `H_F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InternalState(usize);

impl InternalState {
    pub fn new(index: usize, triple: &FiniteTriple) -> Result<Self> {
        if index >= triple.dim_h {
            return Err(Error::State(format!(
                "internal index {index} out of range for dim_H = {}",
                triple.dim_h
            )));
        }
        Ok(Self(index))
    }

    pub fn index(self) -> usize {
        self.0
    }

    /// Vector state `ω_i(a) = ⟨e_i, a e_i⟩`.
    pub fn evaluate(self, a: &ComplexMatrix) -> Complex64 {
        a[(self.0, self.0)]
    }
}

impl FiniteTriple {
    /// Checks shapes only. Use [`validate_axioms`] for the algebraic checks.
    pub fn new(
        dim_h: usize,
        generators: Vec<ComplexMatrix>,
        dirac: ComplexMatrix,
        real_structure: Option<ComplexMatrix>,
        grading: Option<ComplexMatrix>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if dim_h == 0 {
            return Err(Error::Dimension("dim_H must be positive".into()));
        }
        let check = |what: &str, m: &ComplexMatrix| -> Result<()> {
            if m.rows() != dim_h || m.cols() != dim_h {
                return Err(Error::Dimension(format!(
                    "{what} is {}x{}, expected {dim_h}x{dim_h}",
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(())
        };
        if generators.is_empty() {
            return Err(Error::Dimension(
                "at least one generator is required".into(),
            ));
        }
        for (k, g) in generators.iter().enumerate() {
            check(&format!("generator {k}"), g)?;
        }
        check("D_F", &dirac)?;
        if let Some(j) = &real_structure {
            check("J_F", j)?;
        }
        if let Some(g) = &grading {
            check("gamma_F", g)?;
        }
        if !labels.is_empty() && labels.len() != dim_h {
            return Err(Error::Dimension(format!(
                "{} labels given for dim_H = {dim_h}",
                labels.len()
            )));
        }
        Ok(Self {
            dim_h,
            generators,
            dirac,
            real_structure,
            grading,
            labels,
        })
    }

    /// True when `D_F` vanishes, i.e. the internal points are infinitely far
    /// apart.
    pub fn is_degenerate(&self) -> bool {
        self.dirac.max_abs() == 0.0
    }

    pub fn state_index(&self, label: &str) -> Result<usize> {
        let wanted = normalize_label(label);
        self.labels
            .iter()
            .position(|l| normalize_label(l) == wanted)
            .ok_or_else(|| Error::State(format!("unknown state label {label:?}")))
    }

    /// `J X J⁻¹ = M X̄ M*` for the antiunitary `J = M ∘ conj`.
    pub fn conjugate_by_real_structure(&self, x: &ComplexMatrix) -> Option<ComplexMatrix> {
        self.real_structure
            .as_ref()
            .map(|m| &(m * &x.conj()) * &m.adjoint())
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triple serialization cannot fail")
    }
}

fn normalize_label(label: &str) -> String {
    label
        .replace('ν', "nu")
        .replace("\u{304}", "bar")
        .to_ascii_lowercase()
}

/// Two-point space `ℂ ⊕ ℂ` on `ℂ²` with `D_F = [[0, m], [m̄, 0]]`.
///
/// `m = 0` is accepted; the resulting triple reports
/// [`FiniteTriple::is_degenerate`].
pub fn two_point_triple(m: Complex64) -> FiniteTriple {
    let z = Complex64::ZERO;
    FiniteTriple {
        dim_h: 2,
        generators: vec![
            ComplexMatrix::from_real_diagonal(&[1.0, 0.0]),
            ComplexMatrix::from_real_diagonal(&[0.0, 1.0]),
        ],
        dirac: ComplexMatrix::from_rows(&[vec![z, m], vec![m.conj(), z]]).unwrap(),
        real_structure: None,
        grading: Some(ComplexMatrix::from_real_diagonal(&[1.0, -1.0])),
        labels: vec!["sheet0".into(), "sheet1".into()],
    }
}

/// Quaternion `α + βj` embedded as `[[α, β], [-β̄, ᾱ]]`.
pub fn quaternion(alpha: Complex64, beta: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![alpha, beta], vec![-beta.conj(), alpha.conj()]]).unwrap()
}

/// Representation of `(λ, q) ∈ ℂ ⊕ ℍ` on the lepton space: `diag(λ, λ̄)` on
/// the right-handed pair, `q` on the left-handed doublet and `λ` on every
/// antiparticle state.
pub fn ew_representation(lambda: Complex64, q: &ComplexMatrix) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(8, 8);
    a[(0, 0)] = lambda;
    a[(1, 1)] = lambda.conj();
    for i in 0..2 {
        for j in 0..2 {
            a[(2 + i, 2 + j)] = q[(i, j)];
        }
    }
    for k in 4..8 {
        a[(k, k)] = lambda;
    }
    a
}

/// Mass matrix `Y = diag(0, m_e)`.
pub fn ew_mass_matrix(m_e: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[Complex64::ZERO, m_e])
}

/// Places four 2x2 blocks into a 4x4 matrix.
fn blocks4(
    tl: &ComplexMatrix,
    tr: &ComplexMatrix,
    bl: &ComplexMatrix,
    br: &ComplexMatrix,
) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| {
        let b = match (i < 2, j < 2) {
            (true, true) => tl,
            (true, false) => tr,
            (false, true) => bl,
            (false, false) => br,
        };
        b[(i % 2, j % 2)]
    })
}

/// Block-diagonal `diag(a, b)` of two square matrices.
pub fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = (a.rows(), b.rows());
    ComplexMatrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (false, false) => b[(i - n, j - n)],
        _ => Complex64::ZERO,
    })
}

/// Electroweak lepton space with a massless neutrino.
pub fn electroweak_triple(m_e: Complex64) -> FiniteTriple {
    let y = ew_mass_matrix(m_e);
    let y_bar = y.conj();
    let zero = ComplexMatrix::zeros(2, 2);
    let lepton = blocks4(&zero, &y.adjoint(), &y, &zero);
    let antilepton = blocks4(&zero, &y_bar.adjoint(), &y_bar, &zero);
    let dirac = block_diag(&lepton, &antilepton);

    let swap = ComplexMatrix::from_fn(8, 8, |i, j| {
        if (i + 4) % 8 == j {
            re(1.0)
        } else {
            Complex64::ZERO
        }
    });
    let grading = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0]);

    let one = re(1.0);
    let i = c(0.0, 1.0);
    let z = Complex64::ZERO;
    let zero_q = ComplexMatrix::zeros(2, 2);
    let generators = vec![
        ew_representation(one, &zero_q),
        ew_representation(i, &zero_q),
        ew_representation(z, &quaternion(one, z)),
        ew_representation(z, &quaternion(i, z)),
        ew_representation(z, &quaternion(z, one)),
        ew_representation(z, &quaternion(z, i)),
    ];

    FiniteTriple {
        dim_h: 8,
        generators,
        dirac,
        real_structure: Some(swap),
        grading: Some(grading),
        labels: EW_LABELS.iter().map(|s| s.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Largest entrywise residual observed (0 when not applicable).
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.status)
    }

    fn push(&mut self, name: &str, residual: Option<f64>, tol: f64) {
        let (status, residual) = match residual {
            None => (CheckStatus::NotApplicable, 0.0),
            Some(r) if r <= tol => (CheckStatus::Pass, r),
            Some(r) => (CheckStatus::Fail, r),
        };
        self.checks.push(Check {
            name: name.to_string(),
            status,
            residual,
        });
    }
}

fn flatten_real(m: &ComplexMatrix) -> DVector<f64> {
    let n = m.rows() * m.cols();
    DVector::from_fn(2 * n, |k, _| {
        let z = m.inner()[k % n];
        if k < n {
            z.re
        } else {
            z.im
        }
    })
}

/// Worst distance from a product of generators to their real span.
fn closure_residual(generators: &[ComplexMatrix]) -> f64 {
    let cols: Vec<DVector<f64>> = generators.iter().map(flatten_real).collect();
    let g = DMatrix::from_columns(&cols);
    let svd = g.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.max();
    let rank_cols: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > 1e-10 * smax.max(1.0))
        .map(|(i, _)| u.column(i).into_owned())
        .collect();
    if rank_cols.is_empty() {
        return 0.0;
    }
    let q = DMatrix::from_columns(&rank_cols);
    let mut worst: f64 = 0.0;
    for a in generators {
        for b in generators {
            let p = flatten_real(&(a * b));
            let proj = &q * (q.transpose() * &p);
            worst = worst.max((p - proj).amax());
        }
    }
    worst
}

/// Matrix-level axiom checks for a finite triple.
///
/// Checks, by name:
/// * `dirac_hermitian`: `D_F = D_F*`
/// * `algebra_closure`: products of generators stay in their real span
/// * `real_structure_unitary`, `real_structure_commutes_with_dirac`
///   (`J D_F = D_F J`), `order_zero`, `first_order`: only with `J_F`
/// * `grading_involution`, `grading_commutes_with_algebra`,
///   `grading_anticommutes_with_dirac`: only with `gamma_F`
/// * `krein_product_term`: `γ⁵ ⊗ D_F` is Krein anti-self-adjoint
pub fn validate_axioms(t: &FiniteTriple, basis: &GammaBasis, tol: f64) -> ValidationReport {
    let mut report = ValidationReport { checks: Vec::new() };
    let n = t.dim_h;
    let d = &t.dirac;

    report.push("dirac_hermitian", Some(d.max_abs_diff(&d.adjoint())), tol);
    report.push(
        "algebra_closure",
        Some(closure_residual(&t.generators)),
        tol.max(1e-10),
    );

    let gens = &t.generators;
    match &t.real_structure {
        Some(m) => {
            let unitary = (&m.adjoint() * m).max_abs_diff(&ComplexMatrix::identity(n));
            report.push("real_structure_unitary", Some(unitary), tol);
            let jdj = t.conjugate_by_real_structure(d).unwrap();
            report.push(
                "real_structure_commutes_with_dirac",
                Some(jdj.max_abs_diff(d)),
                tol,
            );
            let mut order0: f64 = 0.0;
            let mut order1: f64 = 0.0;
            for a in gens {
                let da = d.commutator(a);
                for b in gens {
                    let opp = t.conjugate_by_real_structure(&b.adjoint()).unwrap();
                    order0 = order0.max(a.commutator(&opp).max_abs());
                    order1 = order1.max(da.commutator(&opp).max_abs());
                }
            }
            report.push("order_zero", Some(order0), tol);
            report.push("first_order", Some(order1), tol);
        }
        None => {
            for name in [
                "real_structure_unitary",
                "real_structure_commutes_with_dirac",
                "order_zero",
                "first_order",
            ] {
                report.push(name, None, tol);
            }
        }
    }

    match &t.grading {
        Some(g) => {
            let sq = (g * g).max_abs_diff(&ComplexMatrix::identity(n));
            let herm = g.max_abs_diff(&g.adjoint());
            report.push("grading_involution", Some(sq.max(herm)), tol);
            let comm = gens
                .iter()
                .map(|a| a.commutator(g).max_abs())
                .fold(0.0, f64::max);
            report.push("grading_commutes_with_algebra", Some(comm), tol);
            report.push(
                "grading_anticommutes_with_dirac",
                Some(d.anticommutator(g).max_abs()),
                tol,
            );
        }
        None => {
            for name in [
                "grading_involution",
                "grading_commutes_with_algebra",
                "grading_anticommutes_with_dirac",
            ] {
                report.push(name, None, tol);
            }
        }
    }

    let term = basis.gamma5.kron(d);
    let krein = basis
        .krein_adjoint(&term)
        .map(|adj| adj.max_abs_diff(&-&term))
        .unwrap_or(f64::INFINITY);
    report.push("krein_product_term", Some(krein), tol);

    report
}

/// [`validate_axioms`] with the default tolerance.
pub fn validate_axioms_default(t: &FiniteTriple, basis: &GammaBasis) -> ValidationReport {
    validate_axioms(t, basis, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_gamma_basis;

    #[test]
    fn two_point_square_is_scalar() {
        let t = two_point_triple(re(1.0));
        assert!((&t.dirac * &t.dirac).approx_eq(&ComplexMatrix::identity(2), 0.0));
    }

    #[test]
    fn two_point_imaginary_mass_eigenvalues() {
        let t = two_point_triple(c(0.0, 2.0));
        assert!(t.dirac.is_hermitian(0.0));
        let ev = t.dirac.hermitian_eigenvalues();
        assert!((ev[0] + 2.0).abs() < 1e-12 && (ev[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_mass_is_degenerate() {
        let t = two_point_triple(Complex64::ZERO);
        assert!(t.is_degenerate());
        assert!(t.dirac.approx_eq(&ComplexMatrix::zeros(2, 2), 0.0));
        assert!(!two_point_triple(re(0.1)).is_degenerate());
    }

    #[test]
    fn electroweak_dirac_action() {
        let t = electroweak_triple(re(1.0));
        let e_r = t.state_index("e_R").unwrap();
        let e_l = t.state_index("e_L").unwrap();
        let nu_r = t.state_index("nu_R").unwrap();
        assert_eq!(t.dirac[(e_l, e_r)], re(1.0));
        for i in 0..8 {
            if i != e_l {
                assert_eq!(t.dirac[(i, e_r)], Complex64::ZERO);
            }
            assert_eq!(t.dirac[(i, nu_r)], Complex64::ZERO);
            assert_eq!(
                t.dirac[(i, t.state_index("nubar_R").unwrap())],
                Complex64::ZERO
            );
        }
    }

    #[test]
    fn electroweak_dirac_hermitian_for_complex_mass() {
        let t = electroweak_triple(c(0.3, 0.4));
        assert!(t.dirac.is_hermitian(0.0));
        assert!(electroweak_triple(Complex64::ZERO).is_degenerate());
    }

    #[test]
    fn constructors_pass_validation() {
        let b = build_gamma_basis();
        for t in [
            two_point_triple(re(1.0)),
            two_point_triple(c(0.7, -1.3)),
            electroweak_triple(re(1.0)),
            electroweak_triple(c(-0.2, 1.1)),
        ] {
            let report = validate_axioms_default(&t, &b);
            assert!(report.all_passed(), "{report:?}");
        }
        let ew = validate_axioms_default(&electroweak_triple(re(1.0)), &b);
        assert_eq!(ew.status("first_order"), Some(CheckStatus::Pass));
        assert_eq!(ew.status("order_zero"), Some(CheckStatus::Pass));
        let tp = validate_axioms_default(&two_point_triple(re(1.0)), &b);
        assert_eq!(tp.status("first_order"), Some(CheckStatus::NotApplicable));
    }

    #[test]
    fn tampered_dirac_fails_hermiticity() {
        let b = build_gamma_basis();
        let mut t = two_point_triple(re(1.0));
        t.dirac =
            ComplexMatrix::from_rows(&[vec![re(0.0), re(1.0)], vec![re(2.0), re(0.0)]]).unwrap();
        let report = validate_axioms_default(&t, &b);
        assert_eq!(report.status("dirac_hermitian"), Some(CheckStatus::Fail));
        assert_eq!(report.status("krein_product_term"), Some(CheckStatus::Fail));
        assert!(!report.all_passed());
    }

    #[test]
    fn non_closing_generators_detected() {
        let b = build_gamma_basis();
        let mut t = two_point_triple(re(1.0));
        // span{[[0,1],[1,0]]} is not closed: its square is the identity.
        t.generators = vec![ComplexMatrix::from_rows(&[
            vec![re(0.0), re(1.0)],
            vec![re(1.0), re(0.0)],
        ])
        .unwrap()];
        t.grading = None;
        let report = validate_axioms_default(&t, &b);
        assert_eq!(report.status("algebra_closure"), Some(CheckStatus::Fail));
    }

    #[test]
    fn json_round_trip() {
        let t = electroweak_triple(c(0.3, -0.4));
        let back = FiniteTriple::from_json(&t.to_json()).unwrap();
        assert_eq!(back.dim_h, 8);
        assert!(back.dirac.approx_eq(&t.dirac, 1e-15));
        assert!(back
            .real_structure
            .unwrap()
            .approx_eq(t.real_structure.as_ref().unwrap(), 0.0));
        assert_eq!(back.labels, t.labels);
    }

    #[test]
    fn json_rejects_bad_documents() {
        let unknown = r#"{"dim_H":1,"generators":[[[[1,0]]]],"D_F":[[[0,0]]],"extra":1}"#;
        assert!(FiniteTriple::from_json(unknown).is_err());
        let wrong_dim = r#"{"dim_H":2,"generators":[[[[1,0]]]],"D_F":[[[0,0]]]}"#;
        assert!(FiniteTriple::from_json(wrong_dim).is_err());
        let ok = r#"{"dim_H":1,"generators":[[[[1,0]]]],"D_F":[[[0,0]]]}"#;
        let t = FiniteTriple::from_json(ok).unwrap();
        assert!(t.real_structure.is_none() && t.labels.is_empty());
    }

    #[test]
    fn labels_accept_unicode_aliases() {
        let t = electroweak_triple(re(1.0));
        assert_eq!(t.state_index("ν_L").unwrap(), 2);
        assert_eq!(t.state_index("e_L").unwrap(), 3);
        assert!(t.state_index("tau_L").is_err());
    }
}
