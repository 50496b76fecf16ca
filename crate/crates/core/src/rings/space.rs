//! Graded pieces of a tautological ring described by data: a divisor basis, a
//! codimension-two basis, and enough relations to reduce every formal
//! product of divisors (and every special symbol) onto that basis.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Deserialize;

use super::class::TautClass;
use super::symbolic::{self, SymPoly};
use crate::algebra::{QMatrix, Rational, mat_rref};
use crate::error::{Error, Result};
use crate::expr;

/// Vector in the free span of formal codim-2 labels (divisor products and specials).
pub type Formal = BTreeMap<String, Rational>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SpaceFile {
    id: String,
    anchor: String,
    bases: BasesFile,
    #[serde(default)]
    aliases: BTreeMap<String, String>,
    #[serde(default)]
    relations: Vec<AnchoredExpr>,
    #[serde(default)]
    special_expansions: BTreeMap<String, AnchoredExpr>,
    #[serde(default)]
    catalog: BTreeMap<String, CatalogFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasesFile {
    divisor: Vec<String>,
    #[serde(default)]
    codim2: Vec<String>,
    #[serde(default)]
    specials: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchoredExpr {
    pub anchor: String,
    pub expr: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    anchor: String,
    expr: String,
    degree: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub anchor: String,
    pub expr: String,
    pub formal: Formal,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub anchor: String,
    pub class: TautClass,
}

#[derive(Clone, Debug)]
pub struct RingSpace {
    id: String,
    anchor: String,
    divisors: Arc<Vec<String>>,
    codim2: Arc<Vec<String>>,
    specials: Vec<String>,
    aliases: BTreeMap<String, Vec<Rational>>,
    relations: Vec<Relation>,
    expansions: BTreeMap<String, Relation>,
    rewrite: BTreeMap<String, Vec<Rational>>,
    catalog: BTreeMap<String, CatalogEntry>,
}

/// Canonical label of the product of divisors `a` and `b`.
fn product_label(a: &str, b: &str) -> String {
    if a == b {
        format!("{a}^2")
    } else {
        format!("{a}*{b}")
    }
}

fn add_into(f: &mut Formal, label: String, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = f.entry(label.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        f.remove(&label);
    }
}

enum Parsed {
    Zero,
    Divisor(Vec<Rational>),
    Codim2(Formal),
}

impl RingSpace {
    pub(crate) fn from_file(file: SpaceFile) -> Result<Self> {
        let cfg = |m: String| Error::config(format!("space {}: {m}", file.id));
        let mut seen = BTreeSet::new();
        for l in file
            .bases
            .divisor
            .iter()
            .chain(&file.bases.specials)
            .chain(file.aliases.keys())
        {
            if !seen.insert(l.clone()) {
                return Err(cfg(format!("duplicate symbol `{l}`")));
            }
        }
        let mut space = RingSpace {
            id: file.id.clone(),
            anchor: file.anchor,
            divisors: Arc::new(file.bases.divisor),
            codim2: Arc::new(file.bases.codim2),
            specials: file.bases.specials,
            aliases: BTreeMap::new(),
            relations: Vec::new(),
            expansions: BTreeMap::new(),
            rewrite: BTreeMap::new(),
            catalog: BTreeMap::new(),
        };

        for (name, src) in &file.aliases {
            match space.parse(src)? {
                Parsed::Divisor(v) => {
                    space.aliases.insert(name.clone(), v);
                }
                _ => return Err(cfg(format!("alias `{name}` must be a divisor"))),
            }
        }

        let formal_labels = space.formal_labels();
        let mut basis_seen = BTreeSet::new();
        for b in space.codim2.iter() {
            if !formal_labels.contains(b) {
                return Err(cfg(format!(
                    "codim-2 basis label `{b}` is neither a product nor a special"
                )));
            }
            if !basis_seen.insert(b.clone()) {
                return Err(cfg(format!("duplicate codim-2 basis label `{b}`")));
            }
        }

        for r in file.relations {
            let formal = space.parse_formal(&r.expr)?;
            space.relations.push(Relation {
                anchor: r.anchor,
                expr: r.expr,
                formal,
            });
        }
        for (sym, e) in file.special_expansions {
            if !space.specials.contains(&sym) {
                return Err(cfg(format!("expansion for unknown special `{sym}`")));
            }
            let formal = space.parse_formal(&e.expr)?;
            space.expansions.insert(
                sym,
                Relation {
                    anchor: e.anchor,
                    expr: e.expr,
                    formal,
                },
            );
        }
        space.build_rewrite()?;

        for (name, c) in file.catalog {
            let class = space.parse_class(&c.expr, c.degree)?;
            space.catalog.insert(
                name.clone(),
                CatalogEntry {
                    name,
                    anchor: c.anchor,
                    class,
                },
            );
        }
        Ok(space)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn anchor(&self) -> &str {
        &self.anchor
    }

    pub fn divisor_basis(&self) -> &[String] {
        &self.divisors
    }

    pub fn codim2_basis(&self) -> &[String] {
        &self.codim2
    }

    pub fn specials(&self) -> &[String] {
        &self.specials
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn expansions(&self) -> &BTreeMap<String, Relation> {
        &self.expansions
    }

    pub fn catalog_entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.catalog.values()
    }

    pub fn catalog(&self, name: &str) -> Result<&CatalogEntry> {
        self.catalog
            .get(name)
            .ok_or_else(|| Error::unknown("catalog class", name))
    }

    pub fn basis(&self, degree: u32) -> Result<&Arc<Vec<String>>> {
        match degree {
            1 => Ok(&self.divisors),
            2 => Ok(&self.codim2),
            d => Err(Error::DegreeMismatch {
                expected: 2,
                found: d,
            }),
        }
    }

    pub fn zero(&self, degree: u32) -> Result<TautClass> {
        Ok(TautClass::zero(
            &self.id,
            degree,
            self.basis(degree)?.clone(),
        ))
    }

    /// Unit vector of one basis label.
    pub fn basis_class(&self, degree: u32, label: &str) -> Result<TautClass> {
        let z = self.zero(degree)?;
        let i = z.index(label)?;
        let mut v = z.coeffs().to_vec();
        v[i] = Rational::one();
        self.class(degree, v)
    }

    pub fn class(&self, degree: u32, coeffs: Vec<Rational>) -> Result<TautClass> {
        TautClass::new(&self.id, degree, self.basis(degree)?.clone(), coeffs)
    }

    /// Every formal codim-2 label: products dᵢdⱼ with i ≤ j, then specials.
    pub fn formal_labels(&self) -> Vec<String> {
        let d = &self.divisors;
        let mut out = Vec::new();
        for i in 0..d.len() {
            for j in i..d.len() {
                out.push(product_label(&d[i], &d[j]));
            }
        }
        out.extend(self.specials.iter().cloned());
        out
    }

    fn resolve(&self, name: &str) -> Result<SymPoly> {
        if let Some(i) = self.divisors.iter().position(|d| d == name) {
            return Ok(SymPoly::atom(i));
        }
        if let Some(j) = self.specials.iter().position(|s| s == name) {
            return Ok(SymPoly::atom(self.divisors.len() + j));
        }
        if let Some(v) = self.aliases.get(name) {
            return Ok(SymPoly::linear(v, 0));
        }
        Err(Error::unknown("symbol", format!("{name} on {}", self.id)))
    }

    fn parse(&self, src: &str) -> Result<Parsed> {
        let e = expr::parse(src)?;
        let p = symbolic::eval(&e, src, &|n| self.resolve(n))?;
        let nd = self.divisors.len();
        let mut degree = None;
        let mut div = vec![Rational::zero(); nd];
        let mut formal = Formal::new();
        for (m, c) in p.terms {
            let (d, slot) = match m.as_slice() {
                [i] if *i < nd => (1, None),
                [s] => (2, Some(self.specials[s - nd].clone())),
                [i, j] if *j < nd => (
                    2,
                    Some(product_label(&self.divisors[*i], &self.divisors[*j])),
                ),
                [] => {
                    return Err(Error::Parse {
                        input: src.into(),
                        message: "constant term in a class".into(),
                    });
                }
                _ => return Err(Error::UnsupportedProduct(format!("{src} on {}", self.id))),
            };
            if let Some(prev) = degree
                && prev != d
            {
                return Err(Error::DegreeMismatch {
                    expected: prev,
                    found: d,
                });
            }
            degree = Some(d);
            match slot {
                None => div[m[0]] += c,
                Some(label) => add_into(&mut formal, label, c),
            }
        }
        Ok(match degree {
            None => Parsed::Zero,
            Some(1) => Parsed::Divisor(div),
            Some(_) => Parsed::Codim2(formal),
        })
    }

    /// Parses an unreduced codim-2 expression.
    pub fn parse_formal(&self, src: &str) -> Result<Formal> {
        match self.parse(src)? {
            Parsed::Zero => Ok(Formal::new()),
            Parsed::Codim2(f) => Ok(f),
            Parsed::Divisor(_) => Err(Error::DegreeMismatch {
                expected: 2,
                found: 1,
            }),
        }
    }

    /// Parses and reduces an expression; `degree` is required only for `0`.
    pub fn parse_class(&self, src: &str, degree: Option<u32>) -> Result<TautClass> {
        let (found, class) = match self.parse(src)? {
            Parsed::Zero => {
                let d = degree.ok_or_else(|| Error::Parse {
                    input: src.into(),
                    message: "degree of a zero class must be given".into(),
                })?;
                (d, self.zero(d)?)
            }
            Parsed::Divisor(v) => (1, self.class(1, v)?),
            Parsed::Codim2(f) => (2, self.reduce(&f)?),
        };
        match degree {
            Some(d) if d != found => Err(Error::DegreeMismatch { expected: d, found }),
            _ => Ok(class),
        }
    }

    fn build_rewrite(&mut self) -> Result<()> {
        let basis: Vec<String> = self.codim2.to_vec();
        let nonbasis: Vec<String> = self
            .formal_labels()
            .into_iter()
            .filter(|l| !basis.contains(l))
            .collect();
        let mut equations: Vec<&Formal> = self.relations.iter().map(|r| &r.formal).collect();
        let mut special_rows = Vec::new();
        for (sym, e) in &self.expansions {
            let mut f = e
                .formal
                .iter()
                .map(|(l, c)| (l.clone(), -c))
                .collect::<Formal>();
            add_into(&mut f, sym.clone(), Rational::one());
            special_rows.push(f);
        }
        equations.extend(special_rows.iter());
        if basis.is_empty() {
            if !equations.is_empty() {
                return Err(Error::config(format!(
                    "space {}: relations without a codim-2 basis",
                    self.id
                )));
            }
            return Ok(());
        }

        let columns: Vec<&String> = nonbasis.iter().chain(&basis).collect();
        let rows: Vec<Vec<Rational>> = equations
            .iter()
            .map(|f| {
                columns
                    .iter()
                    .map(|l| f.get(*l).cloned().unwrap_or_else(Rational::zero))
                    .collect()
            })
            .collect();
        let n = nonbasis.len();
        if rows.is_empty() {
            if n > 0 {
                return Err(Error::config(format!(
                    "space {}: `{}` is not reducible",
                    self.id, nonbasis[0]
                )));
            }
            return Ok(());
        }
        let rref = mat_rref(&QMatrix::from_rows(rows)?);
        for (k, label) in nonbasis.iter().enumerate() {
            if rref.pivot_columns.get(k) != Some(&k) {
                return Err(Error::config(format!(
                    "space {}: relations do not determine `{label}`",
                    self.id
                )));
            }
        }
        if rref.rank > n {
            let extra = &basis[rref.pivot_columns[n] - n];
            return Err(Error::config(format!(
                "space {}: relations force a dependency among basis labels (pivot at `{extra}`)",
                self.id
            )));
        }
        for (k, label) in nonbasis.iter().enumerate() {
            let row = rref.reduced.row(k);
            self.rewrite
                .insert(label.clone(), row[n..].iter().map(|c| -c).collect());
        }
        Ok(())
    }

    /// Reduces a formal vector onto the codim-2 basis.
    pub fn reduce(&self, formal: &Formal) -> Result<TautClass> {
        let mut v = vec![Rational::zero(); self.codim2.len()];
        for (label, c) in formal {
            if let Some(i) = self.codim2.iter().position(|b| b == label) {
                v[i] += c;
            } else if let Some(r) = self.rewrite.get(label) {
                for (x, y) in v.iter_mut().zip(r) {
                    *x += c * y;
                }
            } else if self.formal_labels().contains(label) {
                return Err(Error::UnsupportedProduct(format!("{label} on {}", self.id)));
            } else {
                return Err(Error::unknown(
                    "formal label",
                    format!("{label} on {}", self.id),
                ));
            }
        }
        self.class(2, v)
    }

    fn check_piece(&self, c: &TautClass, degree: u32) -> Result<()> {
        if c.space() != self.id {
            return Err(Error::SpaceMismatch {
                expected: self.id.clone(),
                found: c.space().into(),
            });
        }
        if c.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: c.degree(),
            });
        }
        Ok(())
    }

    /// Unreduced symmetric expansion of a product of divisors.
    pub fn formal_product(&self, a: &TautClass, b: &TautClass) -> Result<Formal> {
        self.check_piece(a, 1)?;
        self.check_piece(b, 1)?;
        let d = &self.divisors;
        let mut f = Formal::new();
        for (i, ca) in a.coeffs().iter().enumerate() {
            for (j, cb) in b.coeffs().iter().enumerate() {
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                add_into(&mut f, product_label(&d[lo], &d[hi]), ca * cb);
            }
        }
        Ok(f)
    }

    pub fn divisor_product(&self, a: &TautClass, b: &TautClass) -> Result<TautClass> {
        self.reduce(&self.formal_product(a, b)?)
    }

    /// A codim-2 class read back as a formal vector over its basis labels.
    pub fn formal_of(&self, c: &TautClass) -> Result<Formal> {
        self.check_piece(c, 2)?;
        Ok(c.entries()
            .map(|(l, v)| (l.to_string(), v.clone()))
            .collect())
    }

    /// The stored expansion of a special symbol in the codim-2 basis.
    pub fn special_expand(&self, symbol: &str) -> Result<TautClass> {
        if !self.specials.iter().any(|s| s == symbol) {
            return Err(Error::unknown(
                "special symbol",
                format!("{symbol} on {}", self.id),
            ));
        }
        let mut f = Formal::new();
        f.insert(symbol.to_string(), Rational::one());
        self.reduce(&f)
    }

    /// Degree-1 class of a divisor generator or alias.
    pub fn divisor(&self, name: &str) -> Result<TautClass> {
        if self.divisors.iter().any(|d| d == name) || self.aliases.contains_key(name) {
            return self.parse_class(name, Some(1));
        }
        Err(Error::unknown("divisor", format!("{name} on {}", self.id)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn toy() -> RingSpace {
        let file: SpaceFile = serde_json::from_str(
            r#"{
              "id": "toy", "anchor": "toy ring",
              "bases": {"divisor": ["a", "b"], "codim2": ["a^2", "b^2", "k"], "specials": ["k", "s"]},
              "aliases": {"c": "a + 2*b"},
              "relations": [{"anchor": "r", "expr": "a*b - 1/2*a^2"}],
              "special_expansions": {"s": {"anchor": "e", "expr": "a*b + k"}},
              "catalog": {"z": {"anchor": "zero", "expr": "0", "degree": 2}, "w": {"anchor": "w", "expr": "c*c"}}
            }"#,
        )
        .unwrap();
        RingSpace::from_file(file).unwrap()
    }

    #[test]
    fn reduction_uses_relations_and_expansions() {
        let t = toy();
        let s = t.special_expand("s").unwrap();
        assert_eq!(s.coeffs(), &[frac(1, 2), int(0), int(1)]);
        let w = &t.catalog("w").unwrap().class;
        // (a + 2b)² = a² + 4ab + 4b² = 3a² + 4b²
        assert_eq!(w.coeffs(), &[int(3), int(4), int(0)]);
        assert!(t.catalog("z").unwrap().class.is_zero());
    }

    #[test]
    fn products_are_symmetric() {
        let t = toy();
        let a = t.divisor("a").unwrap();
        let c = t.divisor("c").unwrap();
        assert_eq!(
            t.divisor_product(&a, &c).unwrap(),
            t.divisor_product(&c, &a).unwrap()
        );
    }

    #[test]
    fn rejects_products_with_specials() {
        let t = toy();
        assert!(matches!(
            t.parse_class("a*k", None),
            Err(Error::UnsupportedProduct(_))
        ));
        assert!(matches!(
            t.parse_class("a + k", None),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(t.parse_class("q", None).is_err());
        assert!(t.special_expand("a").is_err());
    }

    #[test]
    fn underdetermined_space_fails_to_load() {
        let file: SpaceFile = serde_json::from_str(
            r#"{"id": "bad", "anchor": "", "bases": {"divisor": ["a", "b"], "codim2": ["a^2"]}}"#,
        )
        .unwrap();
        assert!(RingSpace::from_file(file).unwrap_err().is_config());
    }

    #[test]
    fn dependent_basis_fails_to_load() {
        let file: SpaceFile = serde_json::from_str(
            r#"{"id": "bad", "anchor": "", "bases": {"divisor": ["a"], "codim2": ["a^2"]},
                "relations": [{"anchor": "", "expr": "a^2"}]}"#,
        )
        .unwrap();
        assert!(RingSpace::from_file(file).unwrap_err().is_config());
    }
}
