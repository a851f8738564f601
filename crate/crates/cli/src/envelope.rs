//! JSON output envelopes.
//!
//! Every command prints one [`Envelope`]: the command name, an echo of its
//! parameters, the result payload, and fixed metadata. All exact integers
//! are decimal strings.

use std::collections::BTreeMap;

use fm_fidelity::cohomology::{CohomologyTable, MultiDegree, MultiProjSpace};
use fm_fidelity::criteria::{
    DiagonalClass, GvScenario, GvViolation, HarnessReport, HomDiagonalCondition,
    SimplicityViolation, SupportLocusTable,
};
use fm_fidelity::scenarios::{PoincareReport, CHAR_ASSUMPTION};
use fm_fidelity::transform::{ContributionGrid, Verdict, NORMALIZATION};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub char_assumption: String,
    pub grading: String,
}

impl Default for Metadata {
    fn default() -> Self {
        Metadata {
            char_assumption: CHAR_ASSUMPTION.to_string(),
            grading: NORMALIZATION.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope<P, R> {
    pub schema: String,
    pub command: String,
    pub params: P,
    pub result: R,
    pub metadata: Metadata,
}

impl<P, R> Envelope<P, R> {
    pub fn new(command: &str, params: P, result: R) -> Self {
        Envelope {
            schema: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            params,
            result,
            metadata: Metadata::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottParams {
    pub n: u32,
    pub d: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethParams {
    pub space: MultiProjSpace,
    pub degree: MultiDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipCommandParams {
    pub k: u32,
    pub l: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepParams {
    pub kmax: u32,
    pub lmax: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlopCommandParams {
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareParams {
    pub g: u32,
    #[serde(rename = "type")]
    pub divisors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileParams {
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_y: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EquivalenceParams {
    File {
        path: String,
    },
    Poincare {
        g: u32,
        #[serde(rename = "type")]
        divisors: Vec<u64>,
    },
}

/// A grid together with the verdict assembled from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictResult {
    pub verdict: Verdict,
    pub grid: ContributionGrid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCell {
    pub k: u32,
    pub l: u32,
    pub fully_faithful: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_degree: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
    /// Every cell satisfies `fully_faithful ⟺ k ≥ l`.
    pub frontier_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvCheckResult {
    pub pass: bool,
    pub violation: Option<GvViolation>,
    pub table: SupportLocusTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitResult {
    pub pass: bool,
    pub table: CohomologyTable,
}

/// Input file for `bo-check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoInput {
    pub dim_x: u32,
    pub classes: Vec<BoClassEntry>,
    pub hom: HomDiagonalCondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoClassEntry {
    pub i: i64,
    pub class: DiagonalClass,
}

impl BoInput {
    pub fn class_map(&self) -> Result<BTreeMap<i64, DiagonalClass>, String> {
        let mut map = BTreeMap::new();
        for e in &self.classes {
            if map.insert(e.i, e.class).is_some() {
                return Err(format!("index {} classified twice", e.i));
            }
        }
        Ok(map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoResult {
    pub pass: bool,
    pub violation: Option<SimplicityViolation>,
    pub w_table: SupportLocusTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceResult {
    pub scenario: GvScenario,
    pub report: HarnessReport,
}

pub type BottEnvelope = Envelope<BottParams, CohomologyTable>;
pub type KunnethEnvelope = Envelope<KunnethParams, CohomologyTable>;
pub type FlipEnvelope = Envelope<FlipCommandParams, VerdictResult>;
pub type SweepEnvelope = Envelope<SweepParams, SweepResult>;
pub type FlopEnvelope = Envelope<FlopCommandParams, VerdictResult>;
pub type PoincareEnvelope = Envelope<PoincareParams, PoincareReport>;
pub type GvCheckEnvelope = Envelope<FileParams, GvCheckResult>;
pub type WitEnvelope = Envelope<FileParams, WitResult>;
pub type BoEnvelope = Envelope<FileParams, BoResult>;
pub type EquivalenceEnvelope = Envelope<EquivalenceParams, EquivalenceResult>;
