//! Subcommand implementations. Each returns the document to print.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use acgeom::causality::{
    affine_cone_margin, causally_related_mixed_tol, causally_related_pure_tol,
    cross_sheet_threshold, extremal_length_sq, extremal_length_sq_sheets, lightcone_scan,
    minkowski_precedes_tol, mixed_threshold, proper_time, sample_box, two_sheet_cone_margin,
    MixedState, SheetPoint,
};
use acgeom::dispersion::{
    classify_spinor, internal_mass_sq, PlaneWaveMode, SpinorKind, HARMONIC_TOL,
};
use acgeom::distance::{
    connes_distance_checked, connes_distance_with, AlgebraState, DistanceOptions, GridSpec,
};
use acgeom::finite_triple::{electroweak_triple, validate_axioms};
use acgeom::fluctuation::{
    fluctuated_dispersion, fluctuated_on_shell_energy, higgs_phi, inner_fluctuation_form,
    pairs_for_higgs, particle_block, trace_phi_sq, trace_phi_sq_closed_form, HiggsField,
};
use acgeom::{build_gamma_basis, Complex64, FiniteTriple, DEFAULT_TOL};
use serde_json::{json, Value};

use crate::input::{CausalInput, ClassifyInput, ConeInput, EwDispersionInput, FluctuateInput};
use crate::{read_json, CliError, Settings};

/// Finite values as numbers, infinities as `null`.
fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn load_triple(path: &Path) -> Result<FiniteTriple, CliError> {
    read_json(path)
}

pub fn validate(settings: &Settings, triple: &Path) -> Result<Value, CliError> {
    let t = load_triple(triple)?;
    let report = validate_axioms(
        &t,
        &build_gamma_basis(),
        settings.tolerance.unwrap_or(DEFAULT_TOL),
    );
    Ok(json!({ "passed": report.all_passed(), "checks": report.checks }))
}

fn parse_state(text: &str, dim: usize) -> Result<AlgebraState, CliError> {
    if let Ok(index) = text.trim().parse::<usize>() {
        return Ok(AlgebraState::pure(index, dim)?);
    }
    let weights = text
        .split(',')
        .map(|w| w.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Malformed(format!("state '{text}': {e}")))?;
    Ok(AlgebraState::new(weights)?)
}

pub fn distance(
    settings: &Settings,
    triple: &Path,
    state_a: &str,
    state_b: &str,
    oracle_step: Option<f64>,
) -> Result<Value, CliError> {
    let t = load_triple(triple)?;
    let (a, b) = (
        parse_state(state_a, t.dim_h)?,
        parse_state(state_b, t.dim_h)?,
    );
    let opts = DistanceOptions {
        seed: settings.seed,
        tol: settings.tolerance.unwrap_or(DEFAULT_TOL),
        ..DistanceOptions::default()
    };
    let result = match oracle_step {
        Some(step) => connes_distance_checked(&t, &a, &b, &opts, &GridSpec::with_step(step))?,
        None => connes_distance_with(&t, &a, &b, &opts)?,
    };
    Ok(serde_json::to_value(result).expect("distance result serializes"))
}

pub fn causal(settings: &Settings, input: &Path) -> Result<Value, CliError> {
    let inp: CausalInput = read_json(input)?;
    let tol = settings.tolerance.unwrap_or(DEFAULT_TOL);
    let m: Complex64 = inp.m.into();
    if !(inp.event_a.is_finite() && inp.event_b.is_finite()) {
        return Err(acgeom::Error::Domain("event coordinates must be finite".into()).into());
    }
    let precedes = minkowski_precedes_tol(&inp.event_a, &inp.event_b, tol);
    let tau = if precedes {
        finite(proper_time(&inp.event_a, &inp.event_b).unwrap_or(0.0))
    } else {
        Value::Null
    };
    match (inp.sheets, inp.xis) {
        (Some([s, u]), None) => {
            let (p, q) = (
                SheetPoint::new(inp.event_a, s),
                SheetPoint::new(inp.event_b, u),
            );
            let threshold = if s == u {
                0.0
            } else {
                cross_sheet_threshold(m)
            };
            Ok(json!({
                "related": causally_related_pure_tol(&p, &q, m, tol),
                "L2m": finite(extremal_length_sq_sheets(&p, &q, m)),
                "proper_time": tau,
                "threshold": finite(threshold),
            }))
        }
        (None, Some([xi, eta])) => {
            let a = MixedState::new(inp.event_a, xi)?;
            let b = MixedState::new(inp.event_b, eta)?;
            // The rescaled squared length is only defined between pure states.
            let l2m = if [xi, eta].iter().all(|x| *x == 0.0 || *x == 1.0) {
                let rescaled = 4.0 / (PI * PI) * extremal_length_sq(&inp.event_a, &inp.event_b);
                let fiber = if xi == eta { 0.0 } else { 1.0 / m.norm_sqr() };
                finite(rescaled + fiber)
            } else {
                Value::Null
            };
            Ok(json!({
                "related": causally_related_mixed_tol(&a, &b, m, tol),
                "L2m": l2m,
                "proper_time": tau,
                "threshold": finite(mixed_threshold(&a, &b, m)),
            }))
        }
        _ => Err(CliError::Malformed(
            "give exactly one of \"sheets\" or \"xis\"".into(),
        )),
    }
}

pub fn cone(settings: &Settings, input: &Path) -> Result<Value, CliError> {
    let inp: ConeInput = read_json(input)?;
    let tol = settings.tolerance.unwrap_or(DEFAULT_TOL);
    let basis = build_gamma_basis();
    match (inp.k, inp.two_sheet) {
        (Some(k), None) => {
            if inp.m.is_some() || inp.sample_box.is_some() {
                return Err(CliError::Malformed(
                    "\"m\" and \"box\" only apply to \"two_sheet\"".into(),
                ));
            }
            let margin = affine_cone_margin(k, &basis)?;
            Ok(json!({ "causal": margin <= tol, "worst_eigenvalue": margin, "samples": 1 }))
        }
        (None, Some(a)) => {
            let (Some(m), Some(bx)) = (inp.m, inp.sample_box) else {
                return Err(CliError::Malformed(
                    "\"two_sheet\" needs \"m\" and \"box\"".into(),
                ));
            };
            let samples = sample_box(&bx.lo, &bx.hi, bx.per_axis);
            let margin = two_sheet_cone_margin(&a, m.into(), &samples, &basis)?;
            Ok(
                json!({ "causal": margin <= tol, "worst_eigenvalue": margin, "samples": samples.len() }),
            )
        }
        _ => Err(CliError::Malformed(
            "give exactly one of \"k\" or \"two_sheet\"".into(),
        )),
    }
}

pub fn lightcone(
    settings: &Settings,
    m: f64,
    t_max: f64,
    r_max: f64,
    steps: usize,
) -> Result<String, CliError> {
    if !(t_max >= 0.0 && r_max >= 0.0 && m.is_finite()) {
        return Err(
            acgeom::Error::Domain("t_max and r_max must be nonnegative, m finite".into()).into(),
        );
    }
    let samples = lightcone_scan(
        Complex64::new(m, 0.0),
        t_max,
        r_max,
        steps,
        settings.tolerance.unwrap_or(DEFAULT_TOL),
    );
    let mut out = String::from("t,r,sheet_crossing_allowed\n");
    for s in samples {
        writeln!(out, "{},{},{}", s.t, s.r, s.sheet_crossing_allowed).expect("writing to a String");
    }
    Ok(out)
}

pub fn classify(settings: &Settings, input: &Path) -> Result<Value, CliError> {
    let inp: ClassifyInput = read_json(input)?;
    let base = input.parent().unwrap_or(Path::new("."));
    let t = load_triple(&base.join(&inp.triple_file))?;
    let mut mode = PlaneWaveMode::new(inp.energy, inp.p, inp.internal_index);
    if let Some(spinor) = inp.spinor {
        mode = mode.with_spinor(spinor.map(Complex64::from));
    }
    let tol = inp.tol.or(settings.tolerance).unwrap_or(HARMONIC_TOL);
    let class = classify_spinor(&t, &mode, &build_gamma_basis(), tol)?;
    let mass_sq = internal_mass_sq(&t.dirac, inp.internal_index)?;
    let on_shell = (inp.p.iter().map(|x| x * x).sum::<f64>() + mass_sq).sqrt();
    let name = match class.kind {
        SpinorKind::Causal => "Causal",
        SpinorKind::Harmonic => "Harmonic",
        SpinorKind::NonCausal => "NonCausal",
    };
    Ok(json!({ "class": name, "ratio": class.ratio, "on_shell_E": on_shell }))
}

pub fn fluctuate(input: &Path) -> Result<Value, CliError> {
    let inp: FluctuateInput = read_json(input)?;
    let m: Complex64 = inp.m_e.into();
    let field = match (inp.h1, inp.h2, inp.v, inp.h) {
        (h1, h2, None, None) if h1.is_some() || h2.is_some() => HiggsField::new(
            h1.map_or(Complex64::new(0.0, 0.0), Into::into),
            h2.map_or(Complex64::new(0.0, 0.0), Into::into),
        ),
        (None, None, Some(v), h) => HiggsField::broken(v, h.unwrap_or(0.0)),
        _ => {
            return Err(CliError::Malformed(
                "give either h1/h2 or v (with optional h)".into(),
            ))
        }
    };
    let t = electroweak_triple(m);
    let phi = inner_fluctuation_form(&t, &pairs_for_higgs(&field))?;
    let numeric = trace_phi_sq(&particle_block(&phi)?)?;
    Ok(json!({
        "Phi": phi,
        "trace_phi_sq": numeric,
        "closed_form": trace_phi_sq_closed_form(m, &field),
        "max_abs_diff": phi.max_abs_diff(&higgs_phi(m, &field)),
    }))
}

pub fn ew_dispersion(input: &Path) -> Result<Value, CliError> {
    let inp: EwDispersionInput = read_json(input)?;
    let m: Complex64 = inp.m_e.into();
    let t = electroweak_triple(m);
    let field = HiggsField::broken(inp.v, inp.h);
    let energy = fluctuated_on_shell_energy(&t, m, &field, inp.p, &inp.state)?;
    let residual = fluctuated_dispersion(
        &t,
        m,
        &field,
        energy,
        inp.p,
        &inp.state,
        &build_gamma_basis(),
    )?;
    Ok(json!({ "E_on_shell": energy, "residual": residual }))
}
