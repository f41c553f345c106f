//! JSON text format for mass functions.
//!
//! ```json
//! {
//!   "frame": ["A", "B"],
//!   "masses": [
//!     { "set": ["A"], "mass": 0.6 },
//!     { "set": ["A", "B"], "mass": 0.4 }
//!   ]
//! }
//! ```
//!
//! An empty `set` is `∅` and is only accepted with `"open_world": true`.
//! Masses are written in shortest round-trip form, so reading back a written
//! file gives identical values.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::MassFunction;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MassFile {
    frame: Vec<String>,
    masses: Vec<MassEntry>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    open_world: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MassEntry {
    set: Vec<String>,
    mass: f64,
}

/// Parses and validates a mass function.
pub fn parse_mass_function(text: &str) -> Result<MassFunction> {
    let file: MassFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let frame = Frame::new(file.frame).map_err(|e| Error::Parse(format!("frame: {e}")))?;
    let mut entries = Vec::with_capacity(file.masses.len());
    let mut seen = std::collections::BTreeSet::new();
    for (i, entry) in file.masses.into_iter().enumerate() {
        let set = frame
            .set(&entry.set)
            .map_err(|e| Error::Parse(format!("masses[{i}].set: {e}")))?;
        if !seen.insert(set.clone()) {
            return Err(Error::Parse(format!(
                "masses[{i}].set: {} is listed twice",
                frame.display_set(&set)
            )));
        }
        entries.push((set, entry.mass));
    }
    let m = MassFunction::unchecked(&frame, entries, file.open_world)?;
    m.validate().map_err(Error::Invalid)?;
    Ok(m)
}

pub fn read_mass_function(path: impl AsRef<Path>) -> Result<MassFunction> {
    parse_mass_function(&std::fs::read_to_string(path)?)
}

/// Pretty-printed JSON, focal sets in the library's canonical order.
pub fn to_json_string(m: &MassFunction) -> String {
    let frame = m.frame();
    let file = MassFile {
        frame: frame.labels().to_vec(),
        masses: m
            .iter()
            .map(|(set, mass)| MassEntry {
                set: frame.labels_of(set).map(str::to_owned).collect(),
                mass,
            })
            .collect(),
        open_world: m.is_open_world(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("mass file serializes");
    text.push('\n');
    text
}

pub fn write_mass_function(path: impl AsRef<Path>, m: &MassFunction) -> Result<()> {
    std::fs::write(path, to_json_string(m))?;
    Ok(())
}
