use serde::{Deserialize, Serialize};

use super::ComplexError;

/// On-disk manifest document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub tet_count: usize,
    pub gluings: Vec<GluingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// `perm` lists the images of the source face's three vertices in ascending
/// source order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingRecord {
    pub tet: usize,
    pub face: usize,
    pub to_tet: usize,
    pub to_face: usize,
    pub perm: [u8; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b0_closed: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2_gf2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gromov_norm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume_hint: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_tv_description: Option<String>,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}
