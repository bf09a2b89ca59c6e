//! Causal structure of flat Minkowski space and of the two-sheet space
//! `ℳ × {0, 1}`.
//!
//! All inequalities are non-strict: null separations and threshold cases
//! count as causal. Boundary comparisons carry a relative tolerance so that
//! the pure-state and mixed-state criteria agree exactly on the threshold.
//! Time orientation is increasing `t`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::GammaBasis;
use crate::error::{Error, Result};
use crate::finite_triple::two_point_triple;
use crate::matrix::{c, ComplexMatrix, DEFAULT_TOL};

/// An event of Minkowski space (units with `c = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Event {
    pub t: f64,
    pub x: [f64; 3],
}

impl Event {
    pub fn new(t: f64, x: [f64; 3]) -> Self {
        Self { t, x }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.iter().all(|v| v.is_finite())
    }

    /// Contravariant components `(t, x, y, z)`.
    pub fn coords(&self) -> [f64; 4] {
        [self.t, self.x[0], self.x[1], self.x[2]]
    }
}

/// Which copy of Minkowski space a point lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Sheet {
    Zero,
    One,
}

impl TryFrom<u8> for Sheet {
    type Error = Error;
    fn try_from(i: u8) -> Result<Self> {
        match i {
            0 => Ok(Sheet::Zero),
            1 => Ok(Sheet::One),
            _ => Err(Error::Domain(format!("sheet index {i} is not 0 or 1"))),
        }
    }
}

impl From<Sheet> for u8 {
    fn from(s: Sheet) -> u8 {
        match s {
            Sheet::Zero => 0,
            Sheet::One => 1,
        }
    }
}

impl Sheet {
    /// Mixing parameter of the pure state on this sheet, from
    /// `ω_ξ(a ⊕ b) = ξ a + (1 − ξ) b`.
    pub fn xi(self) -> f64 {
        match self {
            Sheet::Zero => 1.0,
            Sheet::One => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetPoint {
    pub event: Event,
    pub sheet: Sheet,
}

impl SheetPoint {
    pub fn new(event: Event, sheet: Sheet) -> Self {
        Self { event, sheet }
    }
}

/// The state `ω_{x,ξ}` interpolating between the two sheets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedState {
    pub event: Event,
    xi: f64,
}

impl MixedState {
    pub fn new(event: Event, xi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::Domain(format!("xi = {xi} outside [0, 1]")));
        }
        Ok(Self { event, xi })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }
}

impl From<SheetPoint> for MixedState {
    fn from(p: SheetPoint) -> Self {
        Self {
            event: p.event,
            xi: p.sheet.xi(),
        }
    }
}

fn separation(x: &Event, y: &Event) -> (f64, f64) {
    let dt = y.t - x.t;
    let dx2: f64 = x.x.iter().zip(&y.x).map(|(a, b)| (b - a) * (b - a)).sum();
    (dt, dx2)
}

/// `x ⪯ y` with the default tolerance.
pub fn minkowski_precedes(x: &Event, y: &Event) -> bool {
    minkowski_precedes_tol(x, y, DEFAULT_TOL)
}

/// `x ⪯ y`: `y` is in the closed future cone of `x`.
pub fn minkowski_precedes_tol(x: &Event, y: &Event, tol: f64) -> bool {
    let (dt, dx2) = separation(x, y);
    dt >= 0.0 && dx2 - dt * dt <= tol * (dx2 + dt * dt)
}

/// `L²(x, y) = −(x₀ − y₀)² + ‖x − y‖²`.
pub fn extremal_length_sq(x: &Event, y: &Event) -> f64 {
    let (dt, dx2) = separation(x, y);
    dx2 - dt * dt
}

/// Length of the longest causal curve from `x` to `y`.
pub fn proper_time(x: &Event, y: &Event) -> Result<f64> {
    if !minkowski_precedes(x, y) {
        return Err(Error::Causality(format!("{x:?} does not precede {y:?}")));
    }
    Ok((-extremal_length_sq(x, y)).max(0.0).sqrt())
}

/// Cross-sheet term `1/|m|²`, infinite when `m = 0`.
fn fiber_sq(m: Complex64) -> f64 {
    let n2 = m.norm_sqr();
    if n2 == 0.0 {
        f64::INFINITY
    } else {
        1.0 / n2
    }
}

/// `L²_m[(x,i),(y,j)] = (4/π²) L²(x,y) + [i ≠ j] / |m|²`.
pub fn extremal_length_sq_sheets(p: &SheetPoint, q: &SheetPoint, m: Complex64) -> f64 {
    let base = 4.0 / (PI * PI) * extremal_length_sq(&p.event, &q.event);
    if p.sheet == q.sheet {
        base
    } else {
        base + fiber_sq(m)
    }
}

pub fn causally_related_pure(p: &SheetPoint, q: &SheetPoint, m: Complex64) -> bool {
    causally_related_pure_tol(p, q, m, DEFAULT_TOL)
}

/// `x ⪯ y` and `L²_m ≤ 0`.
pub fn causally_related_pure_tol(p: &SheetPoint, q: &SheetPoint, m: Complex64, tol: f64) -> bool {
    if !minkowski_precedes_tol(&p.event, &q.event, tol) {
        return false;
    }
    if p.sheet == q.sheet {
        // x ⪯ y already forces L² ≤ 0.
        return true;
    }
    let base = 4.0 / (PI * PI) * extremal_length_sq(&p.event, &q.event);
    let fiber = fiber_sq(m);
    if fiber.is_infinite() {
        return false;
    }
    base + fiber <= tol * (base.abs() + fiber)
}

/// Minimal proper time `|arcsin√η − arcsin√ξ| / |m|` needed to connect two
/// mixed states; infinite when `m = 0` and `ξ ≠ η`.
pub fn mixed_threshold(a: &MixedState, b: &MixedState, m: Complex64) -> f64 {
    let gap = (b.xi.sqrt().asin() - a.xi.sqrt().asin()).abs();
    let mod_m = m.norm();
    if gap == 0.0 {
        0.0
    } else if mod_m == 0.0 {
        f64::INFINITY
    } else {
        gap / mod_m
    }
}

pub fn causally_related_mixed(a: &MixedState, b: &MixedState, m: Complex64) -> bool {
    causally_related_mixed_tol(a, b, m, DEFAULT_TOL)
}

/// `x ⪯ y` and `l(γ) ≥ |arcsin√η − arcsin√ξ| / |m|` for the longest causal
/// curve `γ`; for `m = 0` only `ξ = η` is allowed.
pub fn causally_related_mixed_tol(a: &MixedState, b: &MixedState, m: Complex64, tol: f64) -> bool {
    if !minkowski_precedes_tol(&a.event, &b.event, tol) {
        return false;
    }
    if m.norm() == 0.0 {
        return a.xi == b.xi;
    }
    let tau_sq = (-extremal_length_sq(&a.event, &b.event)).max(0.0);
    let thr = mixed_threshold(a, b, m);
    let thr_sq = thr * thr;
    thr_sq - tau_sq <= tol * (tau_sq + thr_sq)
}

/// Largest eigenvalue of `𝒥 · (−iγ^μ k_μ)` for the affine function
/// `f(x) = k_μ x^μ + c`. The function is causal iff this is `≤ 0`.
pub fn affine_cone_margin(k: [f64; 4], basis: &GammaBasis) -> Result<f64> {
    let commutator = basis.slash(k).scale(c(0.0, -1.0));
    let m = &basis.fundamental_symmetry * &commutator;
    largest_hermitian_eigenvalue(&m)
}

fn largest_hermitian_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    let scale = m.max_abs().max(1.0);
    if !m.is_hermitian(1e-12 * scale) {
        return Err(Error::Internal(
            "𝒥[D, a] is not Hermitian; Krein self-adjointness of the commutator failed".into(),
        ));
    }
    Ok(*m.hermitian_eigenvalues().last().expect("nonempty matrix"))
}

/// Whether the affine function with gradient covector `k` lies in the
/// causal cone, i.e. `(ψ, [D, f] ψ) ≤ 0` for every spinor `ψ`.
pub fn is_causal_affine_function(k: [f64; 4], basis: &GammaBasis) -> Result<bool> {
    Ok(affine_cone_margin(k, basis)? <= DEFAULT_TOL)
}

/// An element `a₀ ⊕ a₁` of the two-sheet algebra with affine components
/// `a_i(x) = k_i · x + c_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoSheetAffine {
    pub k0: [f64; 4],
    pub k1: [f64; 4],
    pub c0: f64,
    pub c1: f64,
}

impl TwoSheetAffine {
    pub fn values_at(&self, x: &Event) -> [f64; 2] {
        let coords = x.coords();
        let dot = |k: &[f64; 4]| k.iter().zip(coords).map(|(a, b)| a * b).sum::<f64>();
        [dot(&self.k0) + self.c0, dot(&self.k1) + self.c1]
    }
}

/// Worst (largest) eigenvalue of `(𝒥 ⊗ 𝟙₂) [D, a]` over the sample events,
/// where `[D, a] = Σ_i (−iγ^μ ∂_μ a_i) ⊗ E_ii + γ⁵ ⊗ [D_F, diag(a₀(x), a₁(x))]`.
pub fn two_sheet_cone_margin(
    a: &TwoSheetAffine,
    m: Complex64,
    samples: &[Event],
    basis: &GammaBasis,
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain(
            "at least one sample event is required".into(),
        ));
    }
    let d_f = two_point_triple(m).dirac;
    let proj = [
        ComplexMatrix::from_real_diagonal(&[1.0, 0.0]),
        ComplexMatrix::from_real_diagonal(&[0.0, 1.0]),
    ];
    let minus_i = c(0.0, -1.0);
    let kinetic = &basis.slash(a.k0).scale(minus_i).kron(&proj[0])
        + &basis.slash(a.k1).scale(minus_i).kron(&proj[1]);
    let krein = basis.krein_operator(2);
    let mut worst = f64::NEG_INFINITY;
    for x in samples {
        let [a0, a1] = a.values_at(x);
        let internal = d_f.commutator(&ComplexMatrix::from_real_diagonal(&[a0, a1]));
        let comm = &kinetic + &basis.gamma5.kron(&internal);
        worst = worst.max(largest_hermitian_eigenvalue(&(&krein * &comm))?);
    }
    Ok(worst)
}

/// Causal-cone membership of a two-sheet affine element, checked on the
/// given sample events only. This is a necessary condition: a `true`
/// verdict says nothing about points outside the samples.
pub fn is_causal_element_two_sheet(
    a: &TwoSheetAffine,
    m: Complex64,
    samples: &[Event],
    basis: &GammaBasis,
) -> Result<bool> {
    Ok(two_sheet_cone_margin(a, m, samples, basis)? <= DEFAULT_TOL)
}

/// Regular grid of events spanning the box `[lo, hi]` with `per_axis`
/// points along each of the four axes.
pub fn sample_box(lo: &Event, hi: &Event, per_axis: usize) -> Vec<Event> {
    let lo_c = lo.coords();
    let hi_c = hi.coords();
    let n = per_axis.max(1);
    let at = |axis: usize, i: usize| {
        if n == 1 {
            0.5 * (lo_c[axis] + hi_c[axis])
        } else {
            lo_c[axis] + (hi_c[axis] - lo_c[axis]) * i as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    out.push(Event::new(at(0, i), [at(1, j), at(2, k), at(3, l)]));
                }
            }
        }
    }
    out
}

/// Metric `diag(−1, 1, 1, 1, 1/|m|²)` of the five-dimensional ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddingMetric {
    /// Diagonal entries; the last one is `+inf` when `m = 0`.
    pub diag: [f64; 5],
    #[serde(with = "crate::matrix::complex_pair")]
    pub m: Complex64,
    pub infinite_fiber: bool,
}

pub fn embedding_metric(m: Complex64) -> EmbeddingMetric {
    let fiber = fiber_sq(m);
    EmbeddingMetric {
        diag: [-1.0, 1.0, 1.0, 1.0, fiber],
        m,
        infinite_fiber: fiber.is_infinite(),
    }
}

impl EmbeddingMetric {
    /// `g_ab dx^a dx^b`.
    pub fn interval_sq(&self, dx: [f64; 5]) -> f64 {
        self.diag
            .iter()
            .zip(dx)
            .map(|(g, d)| if d == 0.0 { 0.0 } else { g * d * d })
            .sum()
    }

    /// `g^ab k_a k_b` with the inverse metric `diag(−1, 1, 1, 1, |m|²)`.
    pub fn covector_norm_sq(&self, k: [f64; 5]) -> f64 {
        let inv = [-1.0, 1.0, 1.0, 1.0, self.m.norm_sqr()];
        inv.iter().zip(k).map(|(g, v)| g * v * v).sum()
    }
}

/// One point of the cross-sheet light-cone scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightconeSample {
    pub t: f64,
    pub r: f64,
    pub sheet_crossing_allowed: bool,
}

/// Samples whether `(0, 0)` on sheet 0 causally precedes `(t, r ê₁)` on
/// sheet 1 over `[0, t_max] × [0, r_max]`.
pub fn lightcone_scan(
    m: Complex64,
    t_max: f64,
    r_max: f64,
    steps: usize,
    tol: f64,
) -> Vec<LightconeSample> {
    let steps = steps.max(1);
    let origin = SheetPoint::new(Event::new(0.0, [0.0; 3]), Sheet::Zero);
    let mut out = Vec::with_capacity((steps + 1) * (steps + 1));
    for i in 0..=steps {
        let t = t_max * i as f64 / steps as f64;
        for j in 0..=steps {
            let r = r_max * j as f64 / steps as f64;
            let q = SheetPoint::new(Event::new(t, [r, 0.0, 0.0]), Sheet::One);
            out.push(LightconeSample {
                t,
                r,
                sheet_crossing_allowed: causally_related_pure_tol(&origin, &q, m, tol),
            });
        }
    }
    out
}

/// Cross-sheet threshold proper time `π / (2|m|)`.
pub fn cross_sheet_threshold(m: Complex64) -> f64 {
    let n = m.norm();
    if n == 0.0 {
        f64::INFINITY
    } else {
        PI / (2.0 * n)
    }
}
