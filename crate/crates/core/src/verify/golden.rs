//! Expected values, kept apart from the input definitions.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::data::DataFiles;
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoldenFile {
    version: u32,
    checks: BTreeMap<String, GoldenEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenEntry {
    pub anchor: String,
    pub expect: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct Golden {
    entries: BTreeMap<String, GoldenEntry>,
}

pub const GOLDEN_VERSION: u32 = 1;

impl Golden {
    pub fn load(files: &DataFiles) -> Result<Self> {
        let file: GoldenFile = files.parse("golden.json")?;
        if file.version != GOLDEN_VERSION {
            return Err(Error::config(format!(
                "golden.json version {} (expected {GOLDEN_VERSION})",
                file.version
            )));
        }
        Ok(Golden {
            entries: file.checks,
        })
    }

    pub fn entry(&self, id: &str) -> Result<&GoldenEntry> {
        self.entries
            .get(id)
            .ok_or_else(|| Error::unknown("golden entry", id))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
