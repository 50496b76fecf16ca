//! Two-dimensional test families as linear functionals on codim-2 bases.
//!
//! Each family carries a numerical-equivalence lattice on its base with a
//! Gram matrix, restrictions of the divisor generators to that lattice, and
//! the stated values of classes that are not products of divisors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, show};
use crate::algebra::{QMatrix, Rational};
use crate::data::DataFiles;
use crate::error::{Error, Result};
use crate::expr;
use crate::rings::symbolic::{self, SymPoly};
use crate::rings::{Formal, RingSpace, Rings, TautClass};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    id: String,
    anchor: String,
    target_space: String,
    lattice: Vec<String>,
    gram: Vec<Vec<String>>,
    #[serde(default)]
    aliases: BTreeMap<String, String>,
    restrictions: BTreeMap<String, String>,
    #[serde(default)]
    direct_values: BTreeMap<String, DirectFile>,
    #[serde(default)]
    overrides: BTreeMap<String, StatedFile>,
    #[serde(default)]
    vanishing: Option<VanishingFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DirectFile {
    value: String,
    anchor: String,
    #[serde(default)]
    derivation: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StatedFile {
    value: String,
    anchor: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VanishingFile {
    anchor: String,
    labels: Vec<String>,
}

/// Where a functional entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    GramDerived,
    StatedDirect,
    StatedOverride,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::GramDerived => "gram_derived",
            Provenance::StatedDirect => "stated_direct",
            Provenance::StatedOverride => "stated_override",
        })
    }
}

/// A stated value of a class that is not a divisor product.
#[derive(Clone, Debug)]
pub struct DirectValue {
    pub value: Rational,
    pub anchor: String,
    /// Lattice expression whose pairing the value should equal, when stated.
    pub derivation: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Stated {
    pub value: Rational,
    pub anchor: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    Match,
    Override,
    Underivable,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub label: String,
    pub derived: Option<String>,
    pub effective: String,
    pub status: AuditStatus,
}

/// Values of a test family on every codim-2 basis label of its target space.
#[derive(Clone, Debug)]
pub struct SurfaceFunctional {
    surface: String,
    space: String,
    labels: Arc<Vec<String>>,
    values: Vec<Rational>,
    provenance: Vec<Provenance>,
    extras: BTreeMap<String, Rational>,
}

impl SurfaceFunctional {
    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn space(&self) -> &str {
        &self.space
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn value(&self, label: &str) -> Result<&Rational> {
        let i = self
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::unknown("basis label", label))?;
        Ok(&self.values[i])
    }

    /// Stated values of specials outside the basis.
    pub fn extras(&self) -> &BTreeMap<String, Rational> {
        &self.extras
    }

    /// Nonzero (label, value) pairs on the basis.
    pub fn nonzero(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.labels
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, v)| (l.as_str(), v))
    }

    pub fn evaluate(&self, c: &TautClass) -> Result<Rational> {
        if c.space() != self.space {
            return Err(Error::SpaceMismatch {
                expected: self.space.clone(),
                found: c.space().into(),
            });
        }
        if c.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: c.degree(),
            });
        }
        Ok(c.coeffs()
            .iter()
            .zip(&self.values)
            .map(|(a, b)| a * b)
            .sum())
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    id: String,
    anchor: String,
    target_space: String,
    lattice: Vec<String>,
    gram: QMatrix,
    aliases: BTreeMap<String, Vec<Rational>>,
    restrictions: BTreeMap<String, Vec<Rational>>,
    direct: BTreeMap<String, DirectValue>,
    overrides: BTreeMap<String, Stated>,
    vanishing: Option<(String, Vec<String>)>,
    functional: SurfaceFunctional,
}

impl SurfaceModel {
    fn from_file(file: SurfaceFile, space: &RingSpace) -> Result<Self> {
        let cfg = |m: String| Error::config(format!("surface {}: {m}", file.id));
        let n = file.lattice.len();
        if file.gram.len() != n || file.gram.iter().any(|r| r.len() != n) {
            return Err(cfg(format!("gram must be {n}x{n}")));
        }
        let rows = file
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| rational::parse(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let gram = QMatrix::from_rows(rows)?;
        if gram != gram.transpose() {
            return Err(cfg("gram is not symmetric".into()));
        }
        if space.id() != file.target_space {
            return Err(cfg(format!("target space is {}", file.target_space)));
        }
        let mut model = SurfaceModel {
            id: file.id.clone(),
            anchor: file.anchor,
            target_space: file.target_space,
            lattice: file.lattice,
            gram,
            aliases: BTreeMap::new(),
            restrictions: BTreeMap::new(),
            direct: BTreeMap::new(),
            overrides: BTreeMap::new(),
            vanishing: None,
            functional: SurfaceFunctional {
                surface: file.id.clone(),
                space: space.id().into(),
                labels: space.basis(2)?.clone(),
                values: Vec::new(),
                provenance: Vec::new(),
                extras: BTreeMap::new(),
            },
        };
        for (name, src) in &file.aliases {
            if model.lattice.contains(name) {
                return Err(cfg(format!("alias `{name}` shadows a lattice label")));
            }
            let v = model.lattice_vector(src)?;
            model.aliases.insert(name.clone(), v);
        }
        for (d, src) in &file.restrictions {
            if !space.divisor_basis().contains(d) {
                return Err(cfg(format!(
                    "`{d}` is not a divisor generator of {}",
                    space.id()
                )));
            }
            let v = model.lattice_vector(src)?;
            model.restrictions.insert(d.clone(), v);
        }
        for (label, d) in file.direct_values {
            if !space.specials().contains(&label) {
                return Err(cfg(format!(
                    "direct value for `{label}`, which is not a special class"
                )));
            }
            let value = rational::parse(&d.value)?;
            if let Some(src) = &d.derivation {
                model.lattice_number(src)?;
            }
            model.direct.insert(
                label,
                DirectValue {
                    value,
                    anchor: d.anchor,
                    derivation: d.derivation,
                },
            );
        }
        let basis = space.codim2_basis();
        for (label, o) in file.overrides {
            if !basis.contains(&label) || space.specials().contains(&label) {
                return Err(cfg(format!(
                    "override for `{label}`, which is not a product basis label"
                )));
            }
            model.overrides.insert(
                label,
                Stated {
                    value: rational::parse(&o.value)?,
                    anchor: o.anchor,
                },
            );
        }
        if let Some(v) = file.vanishing {
            for l in &v.labels {
                if !space.specials().contains(l) {
                    return Err(cfg(format!("vanishing label `{l}` is not a special class")));
                }
                if model.direct.contains_key(l) {
                    return Err(cfg(format!("`{l}` is both stated and vanishing")));
                }
            }
            model.vanishing = Some((v.anchor, v.labels));
        }
        model.build_functional(space).map_err(|e| match e {
            Error::Config(m) => Error::Config(m),
            other => cfg(other.to_string()),
        })?;
        Ok(model)
    }

    fn build_functional(&mut self, space: &RingSpace) -> Result<()> {
        let mut values = Vec::new();
        let mut provenance = Vec::new();
        for label in space.codim2_basis() {
            let (v, p) = if let Some(o) = self.overrides.get(label) {
                (o.value.clone(), Provenance::StatedOverride)
            } else if space.specials().contains(label) {
                let v = self.special_value(label).ok_or_else(|| {
                    Error::config(format!("surface {}: no value for `{label}`", self.id))
                })?;
                (v, Provenance::StatedDirect)
            } else {
                let v = self.derive_product(space, label).map_err(|_| {
                    Error::config(format!("surface {}: `{label}` is not derivable", self.id))
                })?;
                (v, Provenance::GramDerived)
            };
            values.push(v);
            provenance.push(p);
        }
        self.functional.values = values;
        self.functional.provenance = provenance;
        for s in space.specials() {
            if !space.codim2_basis().contains(s)
                && let Some(v) = self.special_value(s)
            {
                self.functional.extras.insert(s.clone(), v);
            }
        }
        Ok(())
    }

    /// Stated value of a special class, including asserted vanishing.
    pub fn special_value(&self, label: &str) -> Option<Rational> {
        if let Some(d) = self.direct.get(label) {
            return Some(d.value.clone());
        }
        match &self.vanishing {
            Some((_, labels)) if labels.iter().any(|l| l == label) => Some(Rational::zero()),
            _ => None,
        }
    }

    fn derive_product(&self, space: &RingSpace, label: &str) -> Result<Rational> {
        let (a, b) = split_label(label, space.divisor_basis())
            .ok_or_else(|| Error::unknown("product label", label))?;
        let va = self.restriction(a)?;
        let vb = self.restriction(b)?;
        self.pair(va, vb)
    }

    fn restriction(&self, d: &str) -> Result<&Vec<Rational>> {
        self.restrictions
            .get(d)
            .ok_or_else(|| Error::unknown("restriction", format!("{d} on {}", self.id)))
    }

    fn resolve(&self, name: &str) -> Result<SymPoly> {
        if let Some(i) = self.lattice.iter().position(|l| l == name) {
            return Ok(SymPoly::atom(i));
        }
        match self.aliases.get(name) {
            Some(v) => Ok(SymPoly::linear(v, 0)),
            None => Err(Error::unknown("lattice class", name)),
        }
    }

    fn eval_lattice(&self, src: &str) -> Result<SymPoly> {
        let e = expr::parse(src)?;
        symbolic::eval(&e, src, &|n| self.resolve(n))
    }

    /// Parses a linear combination of lattice classes and aliases.
    pub fn lattice_vector(&self, src: &str) -> Result<Vec<Rational>> {
        let p = self.eval_lattice(src)?;
        let mut v = vec![Rational::zero(); self.lattice.len()];
        for (m, c) in &p.terms {
            match m.as_slice() {
                [i] => v[*i] += c,
                _ => {
                    return Err(Error::Parse {
                        input: src.into(),
                        message: "not a lattice vector".into(),
                    });
                }
            }
        }
        Ok(v)
    }

    /// Intersection number of a quadratic lattice expression.
    pub fn lattice_number(&self, src: &str) -> Result<Rational> {
        let p = self.eval_lattice(src)?;
        let mut total = Rational::zero();
        for (m, c) in &p.terms {
            match m.as_slice() {
                [i, j] => total += c * self.gram.get(*i, *j),
                _ => {
                    return Err(Error::Parse {
                        input: src.into(),
                        message: "not a degree-two expression".into(),
                    });
                }
            }
        }
        Ok(total)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn anchor(&self) -> &str {
        &self.anchor
    }

    pub fn target_space(&self) -> &str {
        &self.target_space
    }

    pub fn lattice_labels(&self) -> &[String] {
        &self.lattice
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn direct_values(&self) -> &BTreeMap<String, DirectValue> {
        &self.direct
    }

    pub fn overrides(&self) -> &BTreeMap<String, Stated> {
        &self.overrides
    }

    pub fn functional(&self) -> &SurfaceFunctional {
        &self.functional
    }

    /// vᵀ·gram·w
    pub fn pair(&self, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        let n = self.lattice.len();
        for x in [v, w] {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.len(),
                });
            }
        }
        let gw = self.gram.mul_vec(w)?;
        Ok(v.iter().zip(&gw).map(|(a, b)| a * b).sum())
    }

    pub fn restrict_divisor(&self, d: &TautClass) -> Result<Vec<Rational>> {
        if d.space() != self.target_space {
            return Err(Error::SpaceMismatch {
                expected: self.target_space.clone(),
                found: d.space().into(),
            });
        }
        if d.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: d.degree(),
            });
        }
        let mut v = vec![Rational::zero(); self.lattice.len()];
        for (label, c) in d.entries() {
            for (x, y) in v.iter_mut().zip(self.restriction(label)?) {
                *x += c * y;
            }
        }
        Ok(v)
    }

    /// Value of a formal codim-2 vector without reducing it first: products
    /// use the effective value on basis labels and the Gram pairing
    /// elsewhere; specials use their stated values.
    pub fn evaluate_formal(&self, space: &RingSpace, f: &Formal) -> Result<Rational> {
        let mut total = Rational::zero();
        for (label, c) in f {
            let v = if let Ok(v) = self.functional.value(label) {
                v.clone()
            } else if space.specials().contains(label) {
                self.special_value(label).ok_or_else(|| {
                    Error::unknown("surface value", format!("{label} on {}", self.id))
                })?
            } else {
                self.derive_product(space, label)?
            };
            total += c * v;
        }
        Ok(total)
    }

    /// Compares every product entry and every stated value carrying a
    /// derivation with its Gram recomputation.
    pub fn audit(&self, space: &RingSpace) -> Vec<AuditEntry> {
        let mut out = Vec::new();
        for (label, (eff, p)) in space.codim2_basis().iter().zip(
            self.functional
                .values
                .iter()
                .zip(&self.functional.provenance),
        ) {
            if space.specials().contains(label) {
                continue;
            }
            let derived = self.derive_product(space, label).ok();
            let status = match (&derived, p) {
                (None, _) => AuditStatus::Underivable,
                (Some(d), _) if d == eff => AuditStatus::Match,
                (Some(_), Provenance::StatedOverride) => AuditStatus::Override,
                (Some(_), _) => AuditStatus::Mismatch,
            };
            out.push(AuditEntry {
                label: label.clone(),
                derived: derived.as_ref().map(show),
                effective: show(eff),
                status,
            });
        }
        for (label, d) in &self.direct {
            let Some(src) = &d.derivation else { continue };
            let derived = self.lattice_number(src).ok();
            let status = match &derived {
                None => AuditStatus::Underivable,
                Some(x) if *x == d.value => AuditStatus::Match,
                Some(_) => AuditStatus::Mismatch,
            };
            out.push(AuditEntry {
                label: label.clone(),
                derived: derived.as_ref().map(show),
                effective: show(&d.value),
                status,
            });
        }
        out
    }
}

/// Divisor names of a canonical product label.
fn split_label<'a>(label: &'a str, divs: &[String]) -> Option<(&'a str, &'a str)> {
    let known = |s: &str| divs.iter().any(|d| d == s);
    if let Some(base) = label.strip_suffix("^2") {
        return known(base).then_some((base, base));
    }
    let (a, b) = label.split_once('*')?;
    (known(a) && known(b)).then_some((a, b))
}

/// All test families loaded from data.
#[derive(Clone, Debug)]
pub struct Surfaces {
    models: BTreeMap<String, SurfaceModel>,
}

impl Surfaces {
    pub fn load(files: &DataFiles, rings: &Rings) -> Result<Self> {
        let mut models = BTreeMap::new();
        for name in files.names_with_prefix("surfaces/") {
            let file: SurfaceFile = files.parse(name)?;
            let space = rings.space(&file.target_space).map_err(|_| {
                Error::config(format!("{name}: unknown space `{}`", file.target_space))
            })?;
            let m = SurfaceModel::from_file(file, space)?;
            if models.insert(m.id().to_string(), m).is_some() {
                return Err(Error::config(format!("duplicate surface in {name}")));
            }
        }
        Ok(Surfaces { models })
    }

    pub fn get(&self, id: &str) -> Result<&SurfaceModel> {
        self.models
            .get(id)
            .ok_or_else(|| Error::unknown("surface", id))
    }

    pub fn all(&self) -> impl Iterator<Item = &SurfaceModel> {
        self.models.values()
    }

    pub fn functional(&self, id: &str) -> Result<&SurfaceFunctional> {
        Ok(self.get(id)?.functional())
    }

    pub fn pair_on_surface(&self, id: &str, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        self.get(id)?.pair(v, w)
    }

    pub fn evaluate(&self, id: &str, c: &TautClass) -> Result<Rational> {
        self.functional(id)?.evaluate(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn toy() -> SurfaceModel {
        let json = r#"{
            "id": "toy", "anchor": "product of two curves", "target_space": "toy",
            "lattice": ["A", "B"], "gram": [["0", "1"], ["1", "0"]],
            "restrictions": {"x": "A", "y": "A + B"},
            "direct_values": {"k": {"value": "2", "anchor": "stated", "derivation": "A*B + B*A"}}
        }"#;
        let space = r#"{
            "id": "toy", "anchor": "toy",
            "bases": {"divisor": ["x", "y"], "codim2": ["x^2", "x*y", "y^2", "k"], "specials": ["k"]}
        }"#;
        let space = RingSpace::from_file(serde_json::from_str(space).unwrap()).unwrap();
        SurfaceModel::from_file(serde_json::from_str(json).unwrap(), &space).unwrap()
    }

    #[test]
    fn pairing_and_functional() {
        let m = toy();
        assert_eq!(
            m.pair(&[int(1), int(0)], &[int(0), int(1)]).unwrap(),
            int(1)
        );
        assert!(matches!(
            m.pair(&[int(1)], &[int(0), int(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(m.functional().values(), &[int(0), int(1), int(2), int(2)]);
        assert_eq!(m.lattice_number("(A + B)^2").unwrap(), int(2));
        assert!(m.lattice_vector("A*B").is_err());
    }

    #[test]
    fn labels_split() {
        let divs = vec!["psi".to_string(), "d1|1".to_string()];
        assert_eq!(split_label("psi^2", &divs), Some(("psi", "psi")));
        assert_eq!(split_label("psi*d1|1", &divs), Some(("psi", "d1|1")));
        assert_eq!(split_label("kappa2", &divs), None);
    }
}
