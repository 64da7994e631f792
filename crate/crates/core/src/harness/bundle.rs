//! The self-describing text container for instances: JSON with a format
//! tag, provenance (generator seed and reduction trail), and the instance
//! itself, certificates included.

use super::Instance;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const BUNDLE_FORMAT: &str = "reduction-bundle/1";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reduction_trail: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub format: String,
    #[serde(default)]
    pub provenance: Provenance,
    pub instance: Instance,
}

impl Bundle {
    pub fn new(instance: Instance) -> Bundle {
        Bundle { format: BUNDLE_FORMAT.to_string(), provenance: Provenance::default(), instance }
    }

    pub fn with_provenance(instance: Instance, provenance: Provenance) -> Bundle {
        Bundle { format: BUNDLE_FORMAT.to_string(), provenance, instance }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Bundle> {
        let bundle: Bundle = serde_json::from_str(text)?;
        if bundle.format != BUNDLE_FORMAT {
            return Err(crate::Error::Parse {
                line: 1,
                msg: format!("unsupported bundle format {:?}", bundle.format),
            });
        }
        Ok(bundle)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Bundle> {
        let text = std::fs::read_to_string(path)?;
        Bundle::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{gen_planted, GenParams, PlantedKind};

    #[test]
    fn round_trip_every_generator_output() {
        let params = GenParams { weighted: true, ..GenParams::default() };
        for kind in [
            PlantedKind::CnfTdModulator,
            PlantedKind::CnfHub,
            PlantedKind::Cnf2satBackdoor,
            PlantedKind::CnfHornBackdoor,
            PlantedKind::CnfPwModulator,
            PlantedKind::CircuitDepthBounded,
            PlantedKind::AnnotatedDag,
            PlantedKind::Graph,
        ] {
            for seed in 0..10 {
                let instance = gen_planted(kind, &params, seed).unwrap();
                let bundle = Bundle::with_provenance(
                    instance,
                    Provenance {
                        generator: Some(format!("{kind:?}")),
                        seed: Some(seed),
                        reduction_trail: vec!["none".into()],
                        notes: vec![],
                    },
                );
                let text = bundle.to_json().unwrap();
                let back = Bundle::from_json(&text).unwrap();
                assert_eq!(bundle, back);
            }
        }
    }

    #[test]
    fn wrong_format_rejected() {
        let err = Bundle::from_json(r#"{"format":"other/9","instance":{"graph":{"vertex_count":1,"edges":[],"directed":false}}}"#);
        assert!(err.is_err());
    }
}
