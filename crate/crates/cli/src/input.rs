//! Input documents read by the subcommands.

use std::path::PathBuf;

use acgeom::causality::{Event, Sheet, TwoSheetAffine};
use acgeom::Complex64;
use serde::Deserialize;

/// A complex number given either as `[re, im]` or as a bare real.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum ComplexInput {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexInput> for Complex64 {
    fn from(z: ComplexInput) -> Self {
        match z {
            ComplexInput::Pair([re, im]) => Complex64::new(re, im),
            ComplexInput::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CausalInput {
    #[serde(rename = "eventA")]
    pub event_a: Event,
    #[serde(rename = "eventB")]
    pub event_b: Event,
    pub sheets: Option<[Sheet; 2]>,
    pub xis: Option<[f64; 2]>,
    pub m: ComplexInput,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleBox {
    pub lo: Event,
    pub hi: Event,
    #[serde(default = "default_per_axis")]
    pub per_axis: usize,
}

fn default_per_axis() -> usize {
    3
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeInput {
    /// Gradient covector of an affine function on one sheet.
    pub k: Option<[f64; 4]>,
    pub two_sheet: Option<TwoSheetAffine>,
    pub m: Option<ComplexInput>,
    #[serde(rename = "box")]
    pub sample_box: Option<SampleBox>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyInput {
    /// Resolved relative to the directory of the input file.
    pub triple_file: PathBuf,
    #[serde(rename = "E")]
    pub energy: f64,
    pub p: [f64; 3],
    pub internal_index: usize,
    pub tol: Option<f64>,
    pub spinor: Option<[ComplexInput; 4]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluctuateInput {
    pub m_e: ComplexInput,
    pub h1: Option<ComplexInput>,
    pub h2: Option<ComplexInput>,
    pub v: Option<f64>,
    pub h: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EwDispersionInput {
    pub m_e: ComplexInput,
    pub v: f64,
    #[serde(default)]
    pub h: f64,
    pub p: [f64; 3],
    pub state: String,
}
