//! Spectral distance `sup { |ω₁(a) − ω₂(a)| : ‖[D_F, a]‖ ≤ 1 }` on finite
//! triples whose algebra is represented by diagonal matrices.
//!
//! The supremum is taken over self-adjoint elements. Writing `a = Σ c_k B_k`
//! over an orthonormal real basis `B_k` of the self-adjoint diagonal part,
//! the objective is linear in `c` and the constraint is a seminorm, so the
//! problem reduces to maximising `δ·c / ‖Σ c_k [D_F, B_k]‖` away from the
//! kernel of the commutator map. A nonzero component of `δ` in that kernel
//! makes the distance infinite.
//!
//! [`connes_distance_oracle`] is an independent exhaustive grid search used
//! to cross-check the optimiser.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finite_triple::FiniteTriple;
use crate::matrix::{re, ComplexMatrix, DEFAULT_TOL};

/// A state on a diagonal algebra, given by weights on the basis vectors of
/// `H_F`: `ω(a) = Σ_i w_i a_ii`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraState {
    weights: Vec<f64>,
}

impl AlgebraState {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::State("state needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::State(format!(
                "weight {w} is not a nonnegative number"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::State(format!("weights sum to {sum}, expected 1")));
        }
        Ok(Self { weights })
    }

    /// Vector state of basis vector `index`.
    pub fn pure(index: usize, dim: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::State(format!(
                "pure state {index} out of range for dimension {dim}"
            )));
        }
        let mut w = vec![0.0; dim];
        w[index] = 1.0;
        Self::new(w)
    }

    /// `ω_ξ(a ⊕ b) = ξ a + (1 − ξ) b` on the two-point space.
    pub fn two_sheet(xi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::State(format!("xi = {xi} outside [0, 1]")));
        }
        Self::new(vec![xi, 1.0 - xi])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn evaluate(&self, a: &ComplexMatrix) -> Complex64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| a[(i, i)] * w)
            .sum()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.weights.len() != dim {
            return Err(Error::State(format!(
                "state has {} weights but dim_H = {dim}",
                self.weights.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct DistanceResult {
    /// The distance; `f64::INFINITY` when the constraint set is unbounded
    /// along a direction that separates the states.
    pub value: f64,
    /// The element attaining the supremum, or the unbounded direction when
    /// the distance is infinite.
    pub maximizer: ComplexMatrix,
    /// `|optimiser − oracle|`, when the oracle was run.
    pub gap: Option<f64>,
}

impl DistanceResult {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

impl Serialize for DistanceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DistanceResult", 4)?;
        st.serialize_field("value", &self.value.is_finite().then_some(self.value))?;
        st.serialize_field("infinite", &self.is_infinite())?;
        st.serialize_field("maximizer", &self.maximizer)?;
        st.serialize_field("gap", &self.gap)?;
        st.end()
    }
}

#[derive(Debug, Clone)]
pub struct DistanceOptions {
    pub seed: u64,
    pub starts: usize,
    pub max_iterations: usize,
    pub tol: f64,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            starts: 16,
            max_iterations: 2000,
            tol: DEFAULT_TOL,
        }
    }
}

/// Grid used by [`connes_distance_oracle`].
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Coefficient spacing.
    pub step: f64,
    /// Half-width used when the constraint does not bound the box.
    pub max_half_width: f64,
    /// Refuse grids with more points than this.
    pub max_points: u64,
    /// Search complex coefficients (non-self-adjoint elements) instead of
    /// real ones.
    pub complex: bool,
}

impl GridSpec {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            max_half_width: 10.0,
            max_points: 20_000_000,
            complex: false,
        }
    }
}

const MAX_ORACLE_DIMS: usize = 4;

fn real_diag(m: &ComplexMatrix) -> (DVector<f64>, DVector<f64>) {
    let n = m.rows();
    (
        DVector::from_fn(n, |i, _| m[(i, i)].re),
        DVector::from_fn(n, |i, _| m[(i, i)].im),
    )
}

fn flatten(m: &ComplexMatrix) -> DVector<f64> {
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

fn require_diagonal_algebra(t: &FiniteTriple, tol: f64) -> Result<()> {
    for (i, a) in t.generators.iter().enumerate() {
        for b in &t.generators[i + 1..] {
            if a.commutator(b).max_abs() > tol {
                return Err(Error::UnsupportedAlgebra(
                    "generators do not commute; only commutative internal algebras are supported"
                        .into(),
                ));
            }
        }
    }
    if let Some(k) = t.generators.iter().position(|g| !g.is_diagonal(tol)) {
        return Err(Error::UnsupportedAlgebra(format!(
            "generator {k} is not diagonal; represent the algebra by diagonal generators"
        )));
    }
    Ok(())
}

/// Orthonormal real basis (as diagonal vectors) of the self-adjoint part of
/// the span of diagonal generators.
fn self_adjoint_basis(t: &FiniteTriple) -> Vec<DVector<f64>> {
    let mut vecs = Vec::new();
    for g in &t.generators {
        let (r, i) = real_diag(g);
        vecs.push(r);
        vecs.push(i);
    }
    let m = DMatrix::from_columns(&vecs);
    let svd = m.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.max();
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| smax > 0.0 && **s > 1e-10 * smax)
        .map(|(k, _)| u.column(k).into_owned())
        .collect()
}

/// Spectral distance between two states with the default options.
pub fn connes_distance(
    t: &FiniteTriple,
    w1: &AlgebraState,
    w2: &AlgebraState,
) -> Result<DistanceResult> {
    connes_distance_with(t, w1, w2, &DistanceOptions::default())
}

pub fn connes_distance_with(
    t: &FiniteTriple,
    w1: &AlgebraState,
    w2: &AlgebraState,
    opts: &DistanceOptions,
) -> Result<DistanceResult> {
    require_diagonal_algebra(t, opts.tol)?;
    w1.check_dim(t.dim_h)?;
    w2.check_dim(t.dim_h)?;
    let n = t.dim_h;

    let basis = self_adjoint_basis(t);
    let k = basis.len();
    let zero = ComplexMatrix::zeros(n, n);
    if k == 0 {
        return Ok(DistanceResult {
            value: 0.0,
            maximizer: zero,
            gap: None,
        });
    }
    let basis_mats: Vec<ComplexMatrix> = basis
        .iter()
        .map(|v| ComplexMatrix::from_real_diagonal(v.as_slice()))
        .collect();
    let w_diff = DVector::from_fn(n, |i, _| w1.weights[i] - w2.weights[i]);
    let delta = DVector::from_fn(k, |j, _| basis[j].dot(&w_diff));
    let comms: Vec<ComplexMatrix> = basis_mats.iter().map(|b| t.dirac.commutator(b)).collect();
    let element = |coef: &DVector<f64>| -> ComplexMatrix {
        basis_mats
            .iter()
            .zip(coef.iter())
            .fold(zero.clone(), |acc, (b, x)| &acc + &b.scale(re(*x)))
    };

    // Split coefficient space into the kernel of c ↦ [D_F, a] and its
    // orthogonal complement.
    let lin = DMatrix::from_columns(&comms.iter().map(flatten).collect::<Vec<_>>());
    let svd = lin.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.max();
    let thresh = 1e-10 * smax.max(1.0);
    let mut kernel = Vec::new();
    let mut range = Vec::new();
    for j in 0..k {
        let row = v_t.row(j).transpose();
        if j < svd.singular_values.len() && svd.singular_values[j] > thresh {
            range.push(row);
        } else {
            kernel.push(row);
        }
    }

    let delta_norm = delta.norm();
    let kernel_part = kernel
        .iter()
        .fold(DVector::zeros(k), |acc, v| acc + v * v.dot(&delta));
    if kernel_part.norm() > 1e-12 * delta_norm.max(1.0) {
        let dir = &kernel_part / kernel_part.norm();
        return Ok(DistanceResult {
            value: f64::INFINITY,
            maximizer: element(&dir),
            gap: None,
        });
    }
    if delta_norm <= 1e-15 || range.is_empty() {
        return Ok(DistanceResult {
            value: 0.0,
            maximizer: zero,
            gap: None,
        });
    }

    let w = DMatrix::from_columns(&range);
    let delta_w = w.transpose() * &delta;
    let r = delta_w.len();
    let comm_norm = |y: &DVector<f64>| -> (f64, DVector<f64>) {
        let coef = &w * y;
        let m = comms
            .iter()
            .zip(coef.iter())
            .fold(zero.clone(), |acc, (c, x)| &acc + &c.scale(re(*x)));
        let (sigma, u, v) = m.top_singular_triplet();
        let grad_c = DVector::from_fn(k, |j, _| {
            let mv = comms[j].inner() * &v;
            u.dotc(&mv).re
        });
        (sigma, w.transpose() * grad_c)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<DVector<f64>> = (0..opts.starts.max(1))
        .map(|s| {
            if s == 0 {
                delta_w.clone()
            } else {
                DVector::from_fn(r, |_, _| rng.random_range(-1.0..1.0))
            }
        })
        .collect();

    let mut best: Option<(f64, DVector<f64>)> = None;
    for start in starts {
        if let Some((val, y)) = ascend(start, &delta_w, &comm_norm, opts.max_iterations) {
            if best.as_ref().is_none_or(|(b, _)| val > *b) {
                best = Some((val, y));
            }
        }
    }
    let (value, y) =
        best.ok_or_else(|| Error::Internal("no feasible start for the distance ascent".into()))?;
    Ok(DistanceResult {
        value: value.max(0.0),
        maximizer: element(&(&w * y)),
        gap: None,
    })
}

/// Projected ascent of `δ·y / N(y)` with `y` renormalised onto `N(y) = 1`
/// after every step.
fn ascend(
    start: DVector<f64>,
    delta: &DVector<f64>,
    comm_norm: &impl Fn(&DVector<f64>) -> (f64, DVector<f64>),
    max_iterations: usize,
) -> Option<(f64, DVector<f64>)> {
    let project = |y: DVector<f64>| -> Option<(DVector<f64>, DVector<f64>)> {
        let (n, grad) = comm_norm(&y);
        (n > 0.0 && n.is_finite()).then(|| (y / n, grad))
    };
    let (mut y, mut grad_n) = project(start)?;
    if delta.dot(&y) < 0.0 {
        y = -y;
        grad_n = -grad_n;
    }
    let mut val = delta.dot(&y);
    let mut step = 0.5;
    for _ in 0..max_iterations {
        // N(y) = 1 here, so ∇(δ·y / N) = δ − (δ·y) ∇N.
        let g = delta - &grad_n * val;
        let gnorm = g.norm();
        if gnorm <= 1e-15 * delta.norm() {
            break;
        }
        let candidate = &y + &g * (step * y.norm() / gnorm);
        match project(candidate) {
            Some((cy, cg)) if delta.dot(&cy) > val => {
                val = delta.dot(&cy);
                y = cy;
                grad_n = cg;
                step = (step * 2.0).min(1.0);
            }
            _ => {
                step *= 0.5;
                if step < 1e-14 {
                    break;
                }
            }
        }
    }
    Some((val, y))
}

/// Optimiser result with the oracle gap filled in.
pub fn connes_distance_checked(
    t: &FiniteTriple,
    w1: &AlgebraState,
    w2: &AlgebraState,
    opts: &DistanceOptions,
    grid: &GridSpec,
) -> Result<DistanceResult> {
    let mut result = connes_distance_with(t, w1, w2, opts)?;
    let oracle = connes_distance_oracle(t, w1, w2, grid)?;
    result.gap = Some((result.value - oracle).abs());
    Ok(result)
}

/// Exhaustive grid search over generator coefficients.
///
/// Real mode searches real combinations of the Hermitian parts of the
/// generators; complex mode searches complex combinations of the generators
/// themselves. When the identity lies in the span, the coefficient with the
/// largest identity weight is pinned to zero (shifting `a` by a multiple of
/// the identity changes neither the objective nor the constraint). Every
/// returned value is attained by a feasible grid point, so it never exceeds
/// the supremum beyond the feasibility tolerance.
pub fn connes_distance_oracle(
    t: &FiniteTriple,
    w1: &AlgebraState,
    w2: &AlgebraState,
    grid: &GridSpec,
) -> Result<f64> {
    w1.check_dim(t.dim_h)?;
    w2.check_dim(t.dim_h)?;
    if !(grid.step > 0.0 && grid.step.is_finite()) {
        return Err(Error::Domain(format!(
            "grid step {} must be positive",
            grid.step
        )));
    }
    let n = t.dim_h;

    // Coefficient directions: complex mode uses x_k g_k and y_k (i g_k).
    let dirs: Vec<ComplexMatrix> = if grid.complex {
        t.generators
            .iter()
            .flat_map(|g| [g.clone(), g.scale(Complex64::I)])
            .collect()
    } else {
        t.generators
            .iter()
            .flat_map(|g| {
                let herm = (g + &g.adjoint()).scale(re(0.5));
                let anti = (g - &g.adjoint()).scale(Complex64::new(0.0, -0.5));
                [herm, anti]
            })
            .filter(|m| m.max_abs() > 0.0)
            .collect()
    };

    // Pin a coordinate carrying the identity, if the identity is spanned.
    let flat: Vec<DVector<f64>> = dirs.iter().map(flatten).collect();
    let id_flat = flatten(&ComplexMatrix::identity(n));
    let mut pinned: Vec<usize> = Vec::new();
    if !flat.is_empty() {
        let a = DMatrix::from_columns(&flat);
        if let Ok(u) = a.clone().svd(true, true).solve(&id_flat, 1e-12) {
            if (&a * &u - &id_flat).amax() < 1e-10 {
                let j = u.iamax();
                pinned.push(j);
                if grid.complex {
                    // Complex multiples of the identity are invariant too.
                    pinned.push(if j % 2 == 0 { j + 1 } else { j - 1 });
                }
            }
        }
    }
    let free: Vec<usize> = (0..dirs.len()).filter(|j| !pinned.contains(j)).collect();
    if free.len() > MAX_ORACLE_DIMS {
        return Err(Error::OracleIntractable(format!(
            "{} free coefficients exceed the grid limit of {MAX_ORACLE_DIMS}",
            free.len()
        )));
    }

    let comms: Vec<ComplexMatrix> = free.iter().map(|&j| t.dirac.commutator(&dirs[j])).collect();
    let obj: Vec<Complex64> = free
        .iter()
        .map(|&j| w1.evaluate(&dirs[j]) - w2.evaluate(&dirs[j]))
        .collect();
    if free.is_empty() {
        return Ok(0.0);
    }

    // ‖[D,a]‖_op ≥ ‖[D,a]‖_F / √n ≥ s_min ‖c‖ / √n bounds the feasible box.
    let lin = DMatrix::from_columns(&comms.iter().map(flatten).collect::<Vec<_>>());
    let s_min = lin.singular_values().min();
    let half_width = if s_min > 1e-12 {
        (n as f64).sqrt() / s_min
    } else {
        grid.max_half_width
    };
    let intervals = (2.0 * half_width / grid.step).ceil().max(1.0) as u64;
    let per_axis = intervals + 1;
    let total = per_axis
        .checked_pow(free.len() as u32)
        .filter(|p| *p <= grid.max_points)
        .ok_or_else(|| {
            Error::OracleIntractable(format!(
                "{per_axis}^{} grid points exceed the limit of {}",
                free.len(),
                grid.max_points
            ))
        })?;
    let h = 2.0 * half_width / intervals as f64;
    let coord = |i: u64| -half_width + h * i as f64;

    let d = free.len();
    let mut idx = vec![0u64; d];
    let mut best: f64 = 0.0;
    let zero = ComplexMatrix::zeros(n, n);
    for _ in 0..total {
        let objective: Complex64 = idx.iter().zip(&obj).map(|(&i, o)| o * coord(i)).sum();
        let value = objective.norm();
        if value > best {
            let m = idx
                .iter()
                .zip(&comms)
                .fold(zero.clone(), |acc, (&i, c)| &acc + &c.scale(re(coord(i))));
            if m.op_norm() <= 1.0 + 1e-12 {
                best = value;
            }
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < per_axis {
                break;
            }
            *slot = 0;
        }
    }
    Ok(best)
}

/// Squared distance on a product geometry: `d_M² + d_F²`.
pub fn product_distance_sq(d_m: f64, d_f: f64) -> Result<f64> {
    for (name, d) in [("d_M", d_m), ("d_F", d_f)] {
        if d.is_nan() || d < 0.0 {
            return Err(Error::Domain(format!("{name} = {d} must be nonnegative")));
        }
    }
    Ok(d_m * d_m + d_f * d_f)
}
