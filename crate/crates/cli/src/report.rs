//! The report format. Every value is exact: polynomials and fractions are
//! strings, and keys come out in declaration order.

use genusone::catalog::{EnriquesScan, ExtremalEnumeration, NonJacobianVerdict, Verdict};
use genusone::weierstrass::GenericFiberKind;
use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub status: Status,
    #[serde(flatten)]
    pub body: Body,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Body {
    Invariants(InvariantsRecord),
    Classify(ClassifyRecord),
    Mw(MwRecord),
    VerifyCase(Vec<Verdict>),
    VerifyNonjacobian(Vec<NonJacobianVerdict>),
    EnumerateExtremal(ExtremalEnumeration),
    Act(ActionRecord),
    TorsionScan(TorsionRecord),
    Enriques(EnriquesScan),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRecord {
    pub model: String,
    pub b2: String,
    pub b4: String,
    pub b6: String,
    pub b8: String,
    pub c4: String,
    pub c6: String,
    pub discriminant: String,
    /// `numerator / denominator`, absent when the discriminant vanishes.
    pub j: Option<String>,
    pub generic_fiber: GenericFiberKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRecord {
    pub place: String,
    pub degree: usize,
    pub kodaira: String,
    #[serde(rename = "type")]
    pub label: String,
    pub v_disc: u32,
    pub components: u32,
    pub euler: u32,
    pub wild: u32,
    pub component_group: Vec<u64>,
    pub split: Option<bool>,
    /// Times the model was divided by `π^i` at this place.
    pub reductions: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnclassifiedRecord {
    pub place: String,
    pub v_disc: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub model: String,
    pub fibers: Vec<FiberRecord>,
    pub unclassified: Vec<UnclassifiedRecord>,
    /// Singular fibres, degree-weighted.
    pub configuration: String,
    pub euler_sum: u64,
    pub rank_sum: u64,
    pub extremal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwGroup {
    pub rank: u32,
    pub torsion: Vec<u64>,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwRecord {
    pub configuration: String,
    pub root_lattice: String,
    pub discriminant_group: Vec<u64>,
    /// One entry per embedding class met.
    pub groups: Vec<MwGroup>,
    pub exhaustive: bool,
    pub order_identity: Option<bool>,
    pub mw_in_disc: Option<bool>,
    pub mw_squared_in_disc: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub m: i64,
    pub section: Vec<i64>,
    pub class: Vec<i64>,
    pub image: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub fibers: String,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionRecord {
    pub special_fibers: u32,
    pub found: Vec<TorsionEntry>,
    pub expected: Vec<TorsionEntry>,
}
