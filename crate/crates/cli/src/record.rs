//! The versioned output record shared by every subcommand.

use serde::{Deserialize, Serialize};
use twobridge::classify::{
    ReducibleSlopes, SatelliteVerdict, SurgeryClassification, TorusKnotSurgery,
};
use twobridge::invariants::{SurfaceData, Weights};
use twobridge::oracle::FullReport;
use twobridge::paths::{PathName, Regime};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub input: Input,
    pub result: CommandResult,
}

/// Echo of the normalized inputs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<PathName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Weights>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub swap: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum CommandResult {
    Paths(PathsResult),
    Invariants(InvariantsResult),
    Classify(ClassifyResult),
    Verify(VerifyResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathsResult {
    pub regimes: Vec<RegimeCatalog>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeCatalog {
    pub regime: Regime,
    pub paths: Vec<PathRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRow {
    pub name: PathName,
    pub minimal: bool,
    pub edges: usize,
    pub labels: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsResult {
    pub regime: Regime,
    pub labels: String,
    pub surface: SurfaceData,
    /// The surface reported with components exchanged (0 <= t < 1).
    pub swapped: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub printed: SurfaceData,
    pub differing_fields: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub reducible: Vec<ReducibleSlopes>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgery: Option<SurgeryClassification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satellite: Option<SatelliteVerdict>,
    pub torus_list: Vec<TorusKnotSurgery>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub ok: bool,
    pub report: FullReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}
