//! Tautological ring pieces, classes and the maps between them.

mod class;
mod hom;
mod space;
pub(crate) mod symbolic;

use std::collections::BTreeMap;

pub use class::TautClass;
pub use hom::{HomRule, RingHom};
pub use space::{AnchoredExpr, CatalogEntry, Formal, Relation, RingSpace};

use crate::data::DataFiles;
use crate::error::{Error, Result};

/// All ring spaces and homomorphisms loaded from data.
#[derive(Clone, Debug)]
pub struct Rings {
    spaces: BTreeMap<String, RingSpace>,
    homs: BTreeMap<String, RingHom>,
}

impl Rings {
    pub fn load(files: &DataFiles) -> Result<Self> {
        let mut spaces = BTreeMap::new();
        for name in files.names_with_prefix("spaces/") {
            let s = RingSpace::from_file(files.parse(name)?)?;
            if spaces.insert(s.id().to_string(), s).is_some() {
                return Err(Error::config(format!("duplicate space in {name}")));
            }
        }
        let mut homs = BTreeMap::new();
        for name in files.names_with_prefix("homs/") {
            let file: hom::HomFile = files.parse(name)?;
            let (d, c) = RingHom::file_endpoints(&file);
            let (d, c) = (d.to_string(), c.to_string());
            let get = |id: &str| {
                spaces
                    .get(id)
                    .ok_or_else(|| Error::config(format!("{name}: unknown space `{id}`")))
            };
            let h = RingHom::from_file(file, get(&d)?, get(&c)?)?;
            if homs.insert(h.id().to_string(), h).is_some() {
                return Err(Error::config(format!("duplicate hom in {name}")));
            }
        }
        let rings = Rings { spaces, homs };
        let mut names = BTreeMap::new();
        for s in rings.spaces.values() {
            for e in s.catalog_entries() {
                if let Some(prev) = names.insert(e.name.clone(), s.id()) {
                    return Err(Error::config(format!(
                        "catalog name `{}` on both {prev} and {}",
                        e.name,
                        s.id()
                    )));
                }
            }
        }
        Ok(rings)
    }

    pub fn space(&self, id: &str) -> Result<&RingSpace> {
        self.spaces
            .get(id)
            .ok_or_else(|| Error::unknown("space", id))
    }

    pub fn spaces(&self) -> impl Iterator<Item = &RingSpace> {
        self.spaces.values()
    }

    pub fn hom(&self, id: &str) -> Result<&RingHom> {
        self.homs.get(id).ok_or_else(|| Error::unknown("hom", id))
    }

    pub fn homs(&self) -> impl Iterator<Item = &RingHom> {
        self.homs.values()
    }

    pub fn apply_hom(&self, id: &str, c: &TautClass) -> Result<TautClass> {
        let h = self.hom(id)?;
        h.apply(self.space(h.domain())?, self.space(h.codomain())?, c)
    }

    pub fn apply_hom_formal(&self, id: &str, f: &Formal) -> Result<TautClass> {
        let h = self.hom(id)?;
        h.apply_formal(self.space(h.domain())?, self.space(h.codomain())?, f)
    }

    /// Catalog entry looked up across all spaces.
    pub fn catalog(&self, name: &str) -> Result<&CatalogEntry> {
        self.spaces
            .values()
            .find_map(|s| s.catalog(name).ok())
            .ok_or_else(|| Error::unknown("catalog class", name))
    }

    pub fn divisor_product(&self, a: &TautClass, b: &TautClass) -> Result<TautClass> {
        if a.space() != b.space() {
            return Err(Error::SpaceMismatch {
                expected: a.space().into(),
                found: b.space().into(),
            });
        }
        self.space(a.space())?.divisor_product(a, b)
    }
}
