//! Named checks of every class formula, relation, table and count against
//! golden values kept apart from the input data.

mod checks;
mod classes;
pub mod golden;
mod parts;
mod systems;

use std::time::Instant;

use serde::Serialize;

use crate::data::DataFiles;
use crate::enumerative::Constants;
use crate::error::{Error, Result};
use crate::rings::Rings;
use crate::surfaces::Surfaces;

pub use classes::{BoundaryClass, DERIVED_CLASSES};
pub use golden::{Golden, GoldenEntry};
pub use parts::Parts;
pub use systems::{Component, Equation, MultiplicitySystem, SYSTEMS, Solved};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    version: u32,
    checks: &'a [CheckResult],
    summary: Summary,
}

impl Report {
    pub fn summary(&self) -> Summary {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        Summary {
            total: self.checks.len(),
            passed,
            failed: self.checks.len() - passed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// With `deterministic`, timings are zeroed so equal inputs give equal bytes.
    pub fn to_json(&self, deterministic: bool) -> String {
        let checks: Vec<CheckResult> = self
            .checks
            .iter()
            .cloned()
            .map(|mut c| {
                if deterministic {
                    c.micros = 0;
                }
                c
            })
            .collect();
        let doc = ReportJson {
            version: REPORT_VERSION,
            checks: &checks,
            summary: self.summary(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.to_human());
        }
        let s = self.summary();
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            s.total, s.passed, s.failed
        ));
        out
    }
}

impl CheckResult {
    pub fn to_human(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        let mut out = format!("[{mark}] {} ({})\n", self.id, self.anchor);
        if !self.passed {
            out.push_str(&format!(
                "  expected: {}\n  actual:   {}\n",
                self.expected, self.actual
            ));
        }
        out
    }
}

/// Loaded data plus golden values; checks borrow it immutably.
#[derive(Clone, Debug)]
pub struct Verifier {
    rings: Rings,
    surfaces: Surfaces,
    constants: Constants,
    golden: Golden,
}

type CheckFn = fn(&Verifier, &mut Parts) -> Result<()>;

impl Verifier {
    pub fn load(files: &DataFiles) -> Result<Self> {
        let rings = Rings::load(files)?;
        let surfaces = Surfaces::load(files, &rings)?;
        let constants = Constants::load(files)?;
        let golden = Golden::load(files)?;
        let registered: Vec<&str> = checks::REGISTRY.iter().map(|(id, _)| *id).collect();
        if let Some(id) = golden.ids().find(|id| !registered.contains(id)) {
            return Err(Error::config(format!("golden entry `{id}` has no check")));
        }
        if let Some(id) = registered.iter().find(|id| golden.entry(id).is_err()) {
            return Err(Error::config(format!("check `{id}` has no golden entry")));
        }
        Ok(Verifier {
            rings,
            surfaces,
            constants,
            golden,
        })
    }

    pub fn embedded() -> Result<Self> {
        Self::load(&DataFiles::embedded())
    }

    pub fn rings(&self) -> &Rings {
        &self.rings
    }

    pub fn surfaces(&self) -> &Surfaces {
        &self.surfaces
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn golden(&self) -> &Golden {
        &self.golden
    }

    /// Check ids in declaration order.
    pub fn check_ids(&self) -> Vec<&'static str> {
        checks::REGISTRY.iter().map(|(id, _)| *id).collect()
    }

    fn lookup(id: &str) -> Result<CheckFn> {
        checks::REGISTRY
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, f)| *f)
            .ok_or_else(|| Error::unknown("check", id))
    }

    /// A check whose computation fails is reported as failed, with the error
    /// as its actual value.
    pub fn run_check(&self, id: &str) -> Result<CheckResult> {
        let f = Self::lookup(id)?;
        let entry = self.golden.entry(id)?;
        let start = Instant::now();
        let mut parts = Parts::new(entry);
        let outcome = f(self, &mut parts);
        let (expected, actual, passed) = parts.finish();
        let (actual, passed) = match outcome {
            Ok(()) => (actual, passed),
            Err(e) => (format!("error: {e}"), false),
        };
        Ok(CheckResult {
            id: id.to_string(),
            anchor: entry.anchor.clone(),
            expected,
            actual,
            passed,
            micros: start.elapsed().as_micros() as u64,
        })
    }

    pub fn run_all(&self) -> Report {
        let checks = self
            .check_ids()
            .into_iter()
            .map(|id| {
                self.run_check(id)
                    .expect("registered id has a golden entry")
            })
            .collect();
        Report { checks }
    }
}
