//! Output shapes. JSON is emitted from these structs field-by-field, so a
//! given run is byte-reproducible.

use serde::Serialize;

use padic::PadicNumber;

#[derive(Serialize)]
pub struct WitnessOut {
    pub z1: PadicNumber,
    pub z2: PadicNumber,
    pub residual_norm: String,
}

#[derive(Serialize)]
pub struct ClassifyOut {
    pub lambda: String,
    pub p: u64,
    pub k: u32,
    pub precision: u32,
    pub precheck: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region_member: Option<bool>,
    pub region_agrees: bool,
    pub witnesses: Vec<WitnessOut>,
}

#[derive(Serialize)]
pub struct SolveTiOut {
    pub lambda: String,
    pub p: u64,
    pub k: u32,
    pub verdict: String,
    pub witnesses: Vec<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_reason: Option<String>,
}

#[derive(Serialize)]
pub struct SolvePeriodicOut {
    pub lambda: String,
    pub p: u64,
    pub k: u32,
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_plus: Option<PadicNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_minus: Option<PadicNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_system_residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation: Option<String>,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyOut {
    pub lambda: String,
    pub p: u64,
    pub k: u32,
    pub n: u32,
    pub law: String,
    pub znorm: String,
    pub munorm: String,
    pub max_defect_norm: String,
    pub bounded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transition: Option<String>,
    pub checks: Vec<CheckOut>,
    pub all_passed: bool,
}

#[derive(Serialize)]
pub struct ScanRow {
    pub lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ti_region: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ti_verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodic_region: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transition: Option<String>,
}

#[derive(Serialize)]
pub struct ScanOut {
    pub p: u64,
    pub k: u32,
    pub rows: Vec<ScanRow>,
}
