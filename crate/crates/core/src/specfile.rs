//! JSON spec files.
//!
//! ```json
//! {"factors": [{"kind": "affine_power", "c": 1, "b": 1, "beta": 1},
//!              {"kind": "power_law", "A": 2, "alpha": "3/2"}],
//!  "arithmeticMode": "float_log"}
//! ```
//!
//! `arithmeticMode` is optional; without it exact integer arithmetic is
//! used whenever every factor allows it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ArithmeticMode, ProductSpec};
use crate::sequence::SequenceSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub factors: Vec<SequenceSpec>,
    #[serde(
        rename = "arithmeticMode",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub arithmetic_mode: Option<ArithmeticMode>,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("spec file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files always serialize")
    }

    pub fn to_product_spec(&self) -> Result<ProductSpec> {
        match self.arithmetic_mode {
            Some(mode) => ProductSpec::with_mode(self.factors.clone(), mode),
            None => ProductSpec::new(self.factors.clone()),
        }
    }
}

impl From<&ProductSpec> for SpecFile {
    fn from(spec: &ProductSpec) -> Self {
        Self {
            factors: spec.factors().to_vec(),
            arithmetic_mode: Some(spec.mode()),
        }
    }
}
