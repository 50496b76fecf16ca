//! Per-part comparison of computed values against one golden entry.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::golden::GoldenEntry;
use crate::algebra::Rational;
use crate::algebra::rational::{self, join_terms, show};
use crate::error::{Error, Result};
use crate::rings::{Formal, RingSpace, TautClass};

struct Part {
    key: String,
    expected: String,
    actual: String,
}

impl Part {
    fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// Collects (expected, actual) pairs for one check. A failing check reports
/// only the parts, and within a class only the basis entries, that differ.
pub struct Parts<'a> {
    golden: &'a GoldenEntry,
    used: BTreeSet<String>,
    items: Vec<Part>,
}

impl<'a> Parts<'a> {
    pub(crate) fn new(golden: &'a GoldenEntry) -> Self {
        Parts {
            golden,
            used: BTreeSet::new(),
            items: Vec::new(),
        }
    }

    pub fn expected(&mut self, key: &str) -> Result<&'a str> {
        let v = self
            .golden
            .expect
            .get(key)
            .ok_or_else(|| Error::config(format!("golden part `{key}` is missing")))?;
        self.used.insert(key.to_string());
        Ok(v)
    }

    /// Golden keys starting with `prefix`, in sorted order.
    pub fn keys_with_prefix(&self, prefix: &str) -> Vec<String> {
        self.golden
            .expect
            .keys()
            .filter(|k| k.starts_with(prefix))
            .cloned()
            .collect()
    }

    /// Records a comparison whose expected side the caller derived from
    /// [`Parts::expected`].
    pub fn record(&mut self, key: &str, expected: String, actual: String) {
        self.push(key, expected, actual);
    }

    fn push(&mut self, key: &str, expected: String, actual: String) {
        self.items.push(Part {
            key: key.to_string(),
            expected,
            actual,
        });
    }

    pub fn text(&mut self, key: &str, actual: impl Into<String>) -> Result<()> {
        let e = self.expected(key)?.to_string();
        self.push(key, e, actual.into());
        Ok(())
    }

    pub fn number(&mut self, key: &str, actual: &Rational) -> Result<()> {
        let e = rational::parse(self.expected(key)?)?;
        self.push(key, show(&e), show(actual));
        Ok(())
    }

    pub fn flag(&mut self, key: &str, actual: bool) -> Result<()> {
        self.text(key, actual.to_string())
    }

    /// Golden value parsed as a class in the actual's space and degree.
    pub fn class(&mut self, key: &str, space: &RingSpace, actual: &TautClass) -> Result<()> {
        let src = self.expected(key)?;
        let e = space.parse_class(src, Some(actual.degree()))?;
        let d = e.diff(actual)?;
        if d.is_empty() {
            self.push(key, e.to_string(), actual.to_string());
        } else {
            let side = |pick: fn(&(String, Rational, Rational)) -> &Rational| {
                d.iter()
                    .map(|x| format!("{} = {}", x.0, show(pick(x))))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            self.push(key, side(|x| &x.1), side(|x| &x.2));
        }
        Ok(())
    }

    /// Golden value parsed as an unreduced codim-2 vector.
    pub fn formal(&mut self, key: &str, space: &RingSpace, actual: &Formal) -> Result<()> {
        let e = space.parse_formal(self.expected(key)?)?;
        self.push(key, formal_string(&e), formal_string(actual));
        Ok(())
    }

    pub(crate) fn finish(mut self) -> (String, String, bool) {
        for (k, v) in &self.golden.expect {
            if !self.used.contains(k) {
                self.items.push(Part {
                    key: k.clone(),
                    expected: v.clone(),
                    actual: "(not computed)".into(),
                });
            }
        }
        let passed = self.items.iter().all(Part::passed);
        let shown: Vec<&Part> = if passed {
            self.items.iter().collect()
        } else {
            self.items.iter().filter(|p| !p.passed()).collect()
        };
        let join = |f: fn(&Part) -> &str| {
            shown
                .iter()
                .map(|p| format!("{}: {}", p.key, f(p)))
                .collect::<Vec<_>>()
                .join("; ")
        };
        (join(|p| &p.expected), join(|p| &p.actual), passed)
    }
}

pub(crate) fn formal_string(f: &Formal) -> String {
    join_terms(
        f.iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (c.clone(), l.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::DataFiles;
    use crate::rings::Rings;

    fn entry(pairs: &[(&str, &str)]) -> GoldenEntry {
        GoldenEntry {
            anchor: "t".into(),
            expect: pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    #[test]
    fn class_failure_shows_only_differing_entries() {
        let rings = Rings::load(&DataFiles::embedded()).unwrap();
        let m3 = rings.space("M3").unwrap();
        let g = entry(&[("c", "9*lambda - d0 - 3*d1"), ("n", "2")]);
        let mut p = Parts::new(&g);
        let actual = m3.parse_class("9*lambda - d0 - 4*d1", None).unwrap();
        p.class("c", m3, &actual).unwrap();
        p.number("n", &rational::int(2)).unwrap();
        let (e, a, passed) = p.finish();
        assert!(!passed);
        assert_eq!(e, "c: d1 = -3");
        assert_eq!(a, "c: d1 = -4");
    }

    #[test]
    fn unused_keys_fail_and_missing_keys_error() {
        let g = entry(&[("a", "true"), ("b", "1")]);
        let mut p = Parts::new(&g);
        p.flag("a", true).unwrap();
        assert!(p.flag("z", true).unwrap_err().is_config());
        let (_, a, passed) = p.finish();
        assert!(!passed);
        assert_eq!(a, "b: (not computed)");
    }

    #[test]
    fn numbers_compare_by_value() {
        let g = entry(&[("x", "4/2")]);
        let mut p = Parts::new(&g);
        p.number("x", &rational::int(2)).unwrap();
        assert!(p.finish().2);
    }
}
