//! JSON representation of a [`NonlocalBox`].
//!
//! ```json
//! {
//!   "provenance": "builtin:pr",
//!   "alice_first": { "00": [[p00, p01], [p10, p11]], "01": ..., "10": ..., "11": ... },
//!   "bob_first":   { ... }
//! }
//! ```
//!
//! Keys are `"<x><y>"`; each block is indexed `[a][b]`. Floats are written
//! in shortest round-trip form, so save-then-load is lossless.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::boxes::{Behavior, JointDistribution, NonlocalBox};
use crate::error::{Error, Result};

/// Per-block normalization slack accepted on load.
pub const LOAD_TOLERANCE: f64 = 1e-9;

const KEYS: [&str; 4] = ["00", "01", "10", "11"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxFile {
    pub provenance: String,
    pub alice_first: BTreeMap<String, [[f64; 2]; 2]>,
    pub bob_first: BTreeMap<String, [[f64; 2]; 2]>,
}

fn behavior_map(b: &Behavior) -> BTreeMap<String, [[f64; 2]; 2]> {
    let mut m = BTreeMap::new();
    for x in 0..2 {
        for y in 0..2 {
            m.insert(format!("{x}{y}"), *b.get(x, y).table());
        }
    }
    m
}

fn behavior_from_map(order: &str, m: &BTreeMap<String, [[f64; 2]; 2]>) -> Result<Behavior> {
    if let Some(extra) = m.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::InvalidTable {
            key: format!("{order}.{extra}"),
            reason: "unexpected input key".into(),
        });
    }
    let mut tables = [[JointDistribution::uniform(); 2]; 2];
    for (i, key) in KEYS.iter().enumerate() {
        let t = m.get(*key).ok_or_else(|| Error::InvalidTable {
            key: format!("{order}.{key}"),
            reason: "missing".into(),
        })?;
        tables[i / 2][i % 2] = JointDistribution::new(*t, LOAD_TOLERANCE).map_err(|e| match e {
            Error::InvalidTable { reason, .. } => Error::InvalidTable {
                key: format!("{order}.{key}"),
                reason,
            },
            e => e,
        })?;
    }
    Ok(Behavior::new(tables))
}

impl From<&NonlocalBox> for BoxFile {
    fn from(bx: &NonlocalBox) -> Self {
        Self {
            provenance: bx.provenance.clone(),
            alice_first: behavior_map(&bx.alice_first),
            bob_first: behavior_map(&bx.bob_first),
        }
    }
}

impl TryFrom<BoxFile> for NonlocalBox {
    type Error = Error;

    fn try_from(f: BoxFile) -> Result<Self> {
        Ok(NonlocalBox::new(
            behavior_from_map("alice_first", &f.alice_first)?,
            behavior_from_map("bob_first", &f.bob_first)?,
            f.provenance,
        ))
    }
}

pub fn box_to_json(bx: &NonlocalBox) -> String {
    let mut s = serde_json::to_string_pretty(&BoxFile::from(bx)).expect("box serializes");
    s.push('\n');
    s
}

pub fn box_from_json(text: &str, origin: &Path) -> Result<NonlocalBox> {
    let f: BoxFile = serde_json::from_str(text).map_err(|source| Error::BoxFile {
        path: origin.to_path_buf(),
        source,
    })?;
    f.try_into()
}

pub fn write_box(bx: &NonlocalBox, path: &Path) -> Result<()> {
    std::fs::write(path, box_to_json(bx)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_box(path: &Path) -> Result<NonlocalBox> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    box_from_json(&text, path)
}
