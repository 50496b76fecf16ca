//! Pullbacks (ring homomorphisms given on generators) and pushforwards
//! (linear maps given basis-by-basis).

use std::collections::BTreeMap;

use serde::Deserialize;

use super::class::TautClass;
use super::space::{Formal, RingSpace};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct HomFile {
    id: String,
    anchor: String,
    domain: String,
    codomain: String,
    kind: HomKindFile,
    #[serde(default)]
    source_degree: Option<u32>,
    #[serde(default)]
    target_degree: Option<u32>,
    #[serde(default)]
    default_zero: bool,
    images: ImagesFile,
}

#[derive(Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum HomKindFile {
    Ring,
    Table,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImagesFile {
    #[serde(default)]
    divisors: BTreeMap<String, String>,
    #[serde(default)]
    specials: BTreeMap<String, String>,
    #[serde(default)]
    table: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub enum HomRule {
    /// Product rule on divisor products; specials mapped individually.
    Ring {
        divisor_images: Vec<TautClass>,
        special_images: BTreeMap<String, TautClass>,
    },
    /// Basis-by-basis table on one graded piece.
    Table {
        source_degree: u32,
        target_degree: u32,
        default_zero: bool,
        images: BTreeMap<String, TautClass>,
    },
}

#[derive(Clone, Debug)]
pub struct RingHom {
    id: String,
    anchor: String,
    domain: String,
    codomain: String,
    rule: HomRule,
}

impl RingHom {
    pub(crate) fn from_file(
        file: HomFile,
        domain: &RingSpace,
        codomain: &RingSpace,
    ) -> Result<Self> {
        let cfg = |m: String| Error::config(format!("hom {}: {m}", file.id));
        let img = file.images;
        let rule = match file.kind {
            HomKindFile::Ring => {
                if !img.table.is_empty() || file.source_degree.is_some() || file.default_zero {
                    return Err(cfg("ring homs take only divisor and special images".into()));
                }
                let mut divisor_images = Vec::new();
                for d in domain.divisor_basis() {
                    let src = img
                        .divisors
                        .get(d)
                        .ok_or_else(|| cfg(format!("no image for divisor `{d}`")))?;
                    divisor_images.push(codomain.parse_class(src, Some(1))?);
                }
                if let Some(extra) = img
                    .divisors
                    .keys()
                    .find(|k| !domain.divisor_basis().contains(k))
                {
                    return Err(cfg(format!("image for unknown divisor `{extra}`")));
                }
                let mut special_images = BTreeMap::new();
                for s in domain.specials() {
                    let src = img
                        .specials
                        .get(s)
                        .ok_or_else(|| cfg(format!("no image for special `{s}`")))?;
                    special_images.insert(s.clone(), codomain.parse_class(src, Some(2))?);
                }
                if let Some(extra) = img.specials.keys().find(|k| !domain.specials().contains(k)) {
                    return Err(cfg(format!("image for unknown special `{extra}`")));
                }
                HomRule::Ring {
                    divisor_images,
                    special_images,
                }
            }
            HomKindFile::Table => {
                if !img.divisors.is_empty() || !img.specials.is_empty() {
                    return Err(cfg("table homs take only table images".into()));
                }
                let source_degree = file
                    .source_degree
                    .ok_or_else(|| cfg("missing source_degree".into()))?;
                let target_degree = file
                    .target_degree
                    .ok_or_else(|| cfg("missing target_degree".into()))?;
                let basis = domain.basis(source_degree)?;
                let formal = if source_degree == 2 {
                    domain.formal_labels()
                } else {
                    Vec::new()
                };
                let mut images = BTreeMap::new();
                for (label, src) in &img.table {
                    if !basis.contains(label) && !formal.contains(label) {
                        return Err(cfg(format!(
                            "`{label}` is not a degree-{source_degree} label"
                        )));
                    }
                    images.insert(
                        label.clone(),
                        codomain.parse_class(src, Some(target_degree))?,
                    );
                }
                HomRule::Table {
                    source_degree,
                    target_degree,
                    default_zero: file.default_zero,
                    images,
                }
            }
        };
        Ok(RingHom {
            id: file.id,
            anchor: file.anchor,
            domain: file.domain,
            codomain: file.codomain,
            rule,
        })
    }

    pub(crate) fn file_endpoints(file: &HomFile) -> (&str, &str) {
        (&file.domain, &file.codomain)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn anchor(&self) -> &str {
        &self.anchor
    }

    pub fn domain(&self) -> &str {
        &self.domain
    }

    pub fn codomain(&self) -> &str {
        &self.codomain
    }

    pub fn rule(&self) -> &HomRule {
        &self.rule
    }

    fn missing(&self, label: &str) -> Error {
        Error::MissingImage {
            hom: self.id.clone(),
            label: label.to_string(),
        }
    }

    /// Image of a formal codim-2 vector on the domain. Tables are looked up
    /// label by label, without reducing first.
    pub fn apply_formal(
        &self,
        domain: &RingSpace,
        codomain: &RingSpace,
        f: &Formal,
    ) -> Result<TautClass> {
        let (divisor_images, special_images) = match &self.rule {
            HomRule::Ring {
                divisor_images,
                special_images,
            } => (divisor_images, special_images),
            HomRule::Table {
                source_degree: 2,
                target_degree,
                default_zero,
                images,
            } => {
                let mut acc = codomain.zero(*target_degree)?;
                for (label, x) in f {
                    match images.get(label) {
                        Some(img) => acc = acc.add(&img.scale(x))?,
                        None if *default_zero && domain.codim2_basis().contains(label) => {}
                        None => return Err(self.missing(label)),
                    }
                }
                return Ok(acc);
            }
            HomRule::Table { .. } => {
                return Err(Error::InvalidArgument(format!(
                    "{} does not act on codim-2 classes",
                    self.id
                )));
            }
        };
        let divs = domain.divisor_basis();
        let mut acc = codomain.zero(2)?;
        for (label, c) in f {
            let image = if let Some(s) = special_images.get(label) {
                s.clone()
            } else {
                let (a, b) = split_product(label, divs).ok_or_else(|| self.missing(label))?;
                codomain.divisor_product(&divisor_images[a], &divisor_images[b])?
            };
            acc = acc.add(&image.scale(c))?;
        }
        Ok(acc)
    }

    pub fn apply(
        &self,
        domain: &RingSpace,
        codomain: &RingSpace,
        c: &TautClass,
    ) -> Result<TautClass> {
        if c.space() != self.domain {
            return Err(Error::SpaceMismatch {
                expected: self.domain.clone(),
                found: c.space().into(),
            });
        }
        match &self.rule {
            HomRule::Ring { divisor_images, .. } => match c.degree() {
                1 => {
                    let mut acc = codomain.zero(1)?;
                    for (x, img) in c.coeffs().iter().zip(divisor_images) {
                        acc = acc.add(&img.scale(x))?;
                    }
                    Ok(acc)
                }
                _ => self.apply_formal(domain, codomain, &domain.formal_of(c)?),
            },
            HomRule::Table {
                source_degree,
                target_degree,
                default_zero,
                images,
            } => {
                if c.degree() != *source_degree {
                    return Err(Error::DegreeMismatch {
                        expected: *source_degree,
                        found: c.degree(),
                    });
                }
                let mut acc = codomain.zero(*target_degree)?;
                for (label, x) in c.entries() {
                    match images.get(label) {
                        Some(img) => acc = acc.add(&img.scale(x))?,
                        None if *default_zero => {}
                        None => return Err(self.missing(label)),
                    }
                }
                Ok(acc)
            }
        }
    }
}

/// Indices (i ≤ j) of the divisors in a canonical product label.
fn split_product(label: &str, divs: &[String]) -> Option<(usize, usize)> {
    let pos = |s: &str| divs.iter().position(|d| d == s);
    if let Some(base) = label.strip_suffix("^2") {
        let i = pos(base)?;
        return Some((i, i));
    }
    // labels may themselves contain '*' only as the product separator
    let (a, b) = label.split_once('*')?;
    Some((pos(a)?, pos(b)?))
}
