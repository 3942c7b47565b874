//! Scenario JSON files. All numeric fields are decimal or "p/q" strings so
//! values survive the round trip exactly; binary floats never appear.

use crate::CliError;
use recov_core::{render_rational, Health, NodeSpec, Rate, Scenario, Weight};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub nodes: Vec<NodeEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeEntry {
    pub id: usize,
    pub v0: String,
    pub w: String,
    pub inc: String,
    pub dec: String,
}

impl ScenarioFile {
    pub fn to_scenario(&self) -> Result<Scenario, CliError> {
        let nodes = self
            .nodes
            .iter()
            .map(|e| {
                let field = |what: &str, err: String| {
                    CliError::Input(format!("node {}: {what}: {err}", e.id))
                };
                Ok(NodeSpec {
                    id: e.id,
                    v0: Health::parse(&e.v0).map_err(|x| field("v0", x.to_string()))?,
                    w: Weight::parse(&e.w).map_err(|x| field("w", x.to_string()))?,
                    inc: Rate::parse(&e.inc).map_err(|x| field("inc", x.to_string()))?,
                    dec: Rate::parse(&e.dec).map_err(|x| field("dec", x.to_string()))?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Scenario::new(nodes).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn from_scenario(scenario: &Scenario) -> ScenarioFile {
        ScenarioFile {
            nodes: scenario
                .nodes()
                .iter()
                .map(|n| NodeEntry {
                    id: n.id,
                    v0: render_rational(n.v0.as_ratio()),
                    w: render_rational(n.w.as_ratio()),
                    inc: render_rational(n.inc.as_ratio()),
                    dec: render_rational(n.dec.as_ratio()),
                })
                .collect(),
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file: ScenarioFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    file.to_scenario()
}

pub fn save_scenario(path: &Path, scenario: &Scenario) -> Result<(), CliError> {
    let file = ScenarioFile::from_scenario(scenario);
    let text = serde_json::to_string_pretty(&file).expect("scenario serializes");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use recov_core::fixtures;

    #[test]
    fn round_trip_is_identity_on_exact_rationals() {
        // Includes a non-terminating rational to force the p/q path.
        let s = fixtures::scenario(&[
            ("1/3", "2", "0.25", "1/7"),
            ("0.95", "1", "0.85", "0.3"),
        ]);
        let file = ScenarioFile::from_scenario(&s);
        assert_eq!(file.nodes[0].v0, "1/3");
        assert_eq!(file.nodes[0].dec, "1/7");
        assert_eq!(file.nodes[1].v0, "0.95");
        let back = file.to_scenario().unwrap();
        assert_eq!(back, s);
        // And through JSON text.
        let text = serde_json::to_string(&file).unwrap();
        let reparsed: ScenarioFile = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed.to_scenario().unwrap(), s);
    }

    #[test]
    fn rejects_schema_violations() {
        let bad = ScenarioFile {
            nodes: vec![NodeEntry {
                id: 1,
                v0: "1.5".into(),
                w: "1".into(),
                inc: "0.1".into(),
                dec: "0.1".into(),
            }],
        };
        assert!(bad.to_scenario().is_err());
        let bad_ids = ScenarioFile {
            nodes: vec![NodeEntry {
                id: 2,
                v0: "0.5".into(),
                w: "1".into(),
                inc: "0.1".into(),
                dec: "0.1".into(),
            }],
        };
        assert!(bad_ids.to_scenario().is_err());
    }
}
