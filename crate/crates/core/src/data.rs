//! Definition files: embedded copies, optionally overridden from a directory.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};

macro_rules! embedded {
    ($($p:literal),* $(,)?) => {
        &[$(($p, include_str!(concat!("../data/", $p)))),*]
    };
}

/// Relative path and contents of every bundled definition file.
pub const EMBEDDED: &[(&str, &str)] = embedded![
    "spaces/M22.json",
    "spaces/M31.json",
    "spaces/M3.json",
    "spaces/M4.json",
    "spaces/M12.json",
    "spaces/M21.json",
    "spaces/M12xM21.json",
    "spaces/M21xM21.json",
    "homs/theta_star.json",
    "homs/j3_star.json",
    "homs/p_pullback_m3.json",
    "homs/p_star_pushforward.json",
    "homs/xi_star_m31.json",
    "homs/xi_star_m4.json",
    "homs/pi1_m12xm21.json",
    "homs/pi2_m12xm21.json",
    "homs/pi1_m21xm21.json",
    "homs/pi2_m21xm21.json",
    "surfaces/S1.json",
    "surfaces/S2.json",
    "surfaces/S3.json",
    "surfaces/T1.json",
    "surfaces/T2.json",
    "surfaces/T3.json",
    "surfaces/V1.json",
    "surfaces/V2.json",
    "surfaces/V3.json",
    "surfaces/V4.json",
    "constants.json",
    "golden.json",
];

#[derive(Clone, Debug)]
pub struct DataFiles {
    files: BTreeMap<String, String>,
}

impl DataFiles {
    pub fn embedded() -> Self {
        let files = EMBEDDED
            .iter()
            .map(|(p, c)| (p.to_string(), c.to_string()))
            .collect();
        DataFiles { files }
    }

    /// Embedded files, each replaced by its counterpart under `dir` when present.
    pub fn with_overrides(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(Error::config(format!(
                "data directory {} not found",
                dir.display()
            )));
        }
        let mut data = Self::embedded();
        for (name, contents) in data.files.iter_mut() {
            let path = dir.join(name);
            if path.exists() {
                *contents = std::fs::read_to_string(&path)
                    .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
            }
        }
        Ok(data)
    }

    /// Replaces one file in memory.
    pub fn set(&mut self, name: &str, contents: impl Into<String>) -> Result<()> {
        match self.files.get_mut(name) {
            Some(c) => {
                *c = contents.into();
                Ok(())
            }
            None => Err(Error::unknown("data file", name)),
        }
    }

    pub fn get(&self, name: &str) -> Result<&str> {
        self.files
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::unknown("data file", name))
    }

    pub fn names_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.files
            .keys()
            .filter(move |k| k.starts_with(prefix))
            .map(String::as_str)
    }

    pub fn parse<T: DeserializeOwned>(&self, name: &str) -> Result<T> {
        serde_json::from_str(self.get(name)?).map_err(|e| Error::config(format!("{name}: {e}")))
    }
}
