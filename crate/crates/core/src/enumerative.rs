//! Degrees of difference maps on curves and the fiber counts built from them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, ToPrimitive, Zero};
use serde::Deserialize;

use crate::algebra::Rational;
use crate::algebra::rational::{self, int};
use crate::data::DataFiles;
use crate::error::{Error, Result};
use crate::expr::{self, Expr};

/// Degree of C×C → Pic, (x, y) ↦ O((d+1)x − d·y), on a genus-2 curve.
pub fn abel_difference_degree(d: i64) -> Result<i64> {
    if d < 1 {
        return Err(Error::InvalidArgument(format!(
            "abel difference degree needs d >= 1, got {d}"
        )));
    }
    Ok(2 * d * d * (d + 1) * (d + 1))
}

/// Degree of C×C → Pic, (x, y) ↦ O(d1·x − d2·y), on a genus-2 curve.
pub fn mixed_difference_degree(d1: i64, d2: i64) -> Result<i64> {
    if d1 < 1 || d2 < 1 {
        return Err(Error::InvalidArgument(format!(
            "mixed difference degree needs positive inputs, got ({d1}, {d2})"
        )));
    }
    Ok(2 * d1 * d1 * d2 * d2)
}

/// 2^{g−1}(2^g + 1)
pub fn even_theta_count(g: u32) -> i64 {
    ((1i64 << (2 * g)) + (1i64 << g)) / 2
}

/// 2^{g−1}(2^g − 1)
pub fn odd_theta_count(g: u32) -> i64 {
    ((1i64 << (2 * g)) - (1i64 << g)) / 2
}

/// Class a·F₁ + b·F₂ + c·Δ in H²(C×C).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceClass {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

pub fn scorza_correspondence_class(g: u32) -> Result<CorrespondenceClass> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "Scorza correspondence needs g >= 2, got {g}"
        )));
    }
    let k = int(i64::from(g) - 1);
    Ok(CorrespondenceClass {
        a: k.clone(),
        b: k,
        c: Rational::one(),
    })
}

/// Degree of the Scorza condition on (x, y₁, y₂) with η⁺ = O(3x − y₁ − y₂)
/// in genus 2, split along F₁, F₂ and the diagonal.
pub fn scorza_triple_degree() -> Result<(i64, [i64; 3])> {
    let t = scorza_correspondence_class(2)?;
    let coef = |q: &Rational| q.to_integer().to_i64().unwrap_or(0);
    let parts = [
        coef(&t.a) * mixed_difference_degree(3, 1)?,
        coef(&t.b) * mixed_difference_degree(3, 1)?,
        coef(&t.c) * abel_difference_degree(2)?,
    ];
    Ok((parts.iter().sum(), parts))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsFile {
    factors: BTreeMap<String, FactorFile>,
    constants: BTreeMap<String, ConstantFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorFile {
    value: String,
    anchor: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantFile {
    value: String,
    decomposition: String,
    anchor: String,
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub name: String,
    pub value: Rational,
    pub anchor: String,
}

#[derive(Clone, Debug)]
pub struct CountConstant {
    pub id: String,
    pub value: Rational,
    pub decomposition: String,
    pub anchor: String,
    expr: Expr,
}

/// Named factors and count constants, each decomposition checked on load.
#[derive(Clone, Debug)]
pub struct Constants {
    factors: BTreeMap<String, Factor>,
    constants: BTreeMap<String, CountConstant>,
}

impl Constants {
    pub fn load(files: &DataFiles) -> Result<Self> {
        let file: ConstantsFile = files.parse("constants.json")?;
        let mut factors = BTreeMap::new();
        for (name, f) in file.factors {
            let value = rational::parse(&f.value)?;
            factors.insert(
                name.clone(),
                Factor {
                    name,
                    value,
                    anchor: f.anchor,
                },
            );
        }
        let mut constants = BTreeMap::new();
        for (id, c) in file.constants {
            if factors.contains_key(&id) {
                return Err(Error::config(format!("constant `{id}` shadows a factor")));
            }
            let expr = expr::parse(&c.decomposition)?;
            let value = rational::parse(&c.value)?;
            constants.insert(
                id.clone(),
                CountConstant {
                    id,
                    value,
                    decomposition: c.decomposition,
                    anchor: c.anchor,
                    expr,
                },
            );
        }
        let out = Constants { factors, constants };
        for c in out.constants.values() {
            let v = out.eval(
                &c.expr,
                &c.decomposition,
                &mut BTreeSet::from([c.id.clone()]),
            )?;
            if v != c.value {
                return Err(Error::config(format!(
                    "constant `{}`: decomposition gives {}, stored {}",
                    c.id,
                    rational::show(&v),
                    rational::show(&c.value)
                )));
            }
        }
        Ok(out)
    }

    pub fn factor(&self, name: &str) -> Result<&Factor> {
        self.factors
            .get(name)
            .ok_or_else(|| Error::unknown("factor", name))
    }

    pub fn factors(&self) -> impl Iterator<Item = &Factor> {
        self.factors.values()
    }

    pub fn count_constant(&self, id: &str) -> Result<&CountConstant> {
        self.constants
            .get(id)
            .ok_or_else(|| Error::unknown("count constant", id))
    }

    pub fn constants(&self) -> impl Iterator<Item = &CountConstant> {
        self.constants.values()
    }

    /// Re-evaluates the decomposition of a registered constant.
    pub fn evaluate(&self, id: &str) -> Result<Rational> {
        let c = self.count_constant(id)?;
        self.eval(
            &c.expr,
            &c.decomposition,
            &mut BTreeSet::from([c.id.clone()]),
        )
    }

    /// Evaluates an arithmetic expression over factors, constants and the
    /// degree formulas.
    pub fn evaluate_expr(&self, src: &str) -> Result<Rational> {
        self.eval(&expr::parse(src)?, src, &mut BTreeSet::new())
    }

    fn eval(&self, e: &Expr, src: &str, stack: &mut BTreeSet<String>) -> Result<Rational> {
        let err = |m: String| Error::Parse {
            input: src.to_string(),
            message: m,
        };
        Ok(match e {
            Expr::Num(q) => q.clone(),
            Expr::Ident(name) => {
                if let Some(f) = self.factors.get(name) {
                    f.value.clone()
                } else if let Some(c) = self.constants.get(name) {
                    if !stack.insert(name.clone()) {
                        return Err(Error::config(format!("constant `{name}` refers to itself")));
                    }
                    let v = self.eval(&c.expr, &c.decomposition, stack)?;
                    stack.remove(name);
                    v
                } else {
                    return Err(Error::unknown("factor", name.as_str()));
                }
            }
            Expr::Call(name, args) => {
                let mut xs = Vec::new();
                for a in args {
                    let v = self.eval(a, src, stack)?;
                    if !v.is_integer() {
                        return Err(err(format!("`{name}` takes integer arguments")));
                    }
                    xs.push(
                        v.to_integer()
                            .to_i64()
                            .ok_or_else(|| err("argument out of range".into()))?,
                    );
                }
                let genus = |x: i64| {
                    u32::try_from(x)
                        .ok()
                        .filter(|g| *g <= 30)
                        .ok_or_else(|| err(format!("bad genus {x}")))
                };
                int(match (name.as_str(), xs.as_slice()) {
                    ("abel", [d]) => abel_difference_degree(*d)?,
                    ("mixed", [a, b]) => mixed_difference_degree(*a, *b)?,
                    ("even_theta", [g]) => even_theta_count(genus(*g)?),
                    ("odd_theta", [g]) => odd_theta_count(genus(*g)?),
                    _ => {
                        return Err(err(format!(
                            "unknown function `{name}` with {} arguments",
                            xs.len()
                        )));
                    }
                })
            }
            Expr::Neg(a) => -self.eval(a, src, stack)?,
            Expr::Add(a, b) => self.eval(a, src, stack)? + self.eval(b, src, stack)?,
            Expr::Sub(a, b) => self.eval(a, src, stack)? - self.eval(b, src, stack)?,
            Expr::Mul(a, b) => self.eval(a, src, stack)? * self.eval(b, src, stack)?,
            Expr::Div(a, b) => {
                let d = self.eval(b, src, stack)?;
                if d.is_zero() {
                    return Err(err("division by zero".into()));
                }
                self.eval(a, src, stack)? / d
            }
            Expr::Pow(a, k) => {
                let base = self.eval(a, src, stack)?;
                (0..*k).fold(Rational::one(), |acc, _| acc * &base)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_formulas() {
        assert_eq!(abel_difference_degree(1).unwrap(), 8);
        assert_eq!(abel_difference_degree(2).unwrap(), 72);
        assert_eq!(abel_difference_degree(3).unwrap(), 2 * 9 * 16);
        assert!(abel_difference_degree(0).is_err());
        assert_eq!(mixed_difference_degree(3, 1).unwrap(), 18);
        assert_eq!(mixed_difference_degree(1, 1).unwrap(), 2);
        assert_eq!(mixed_difference_degree(2, 3).unwrap(), 72);
        assert!(mixed_difference_degree(0, 2).is_err());
    }

    #[test]
    fn theta_counts() {
        assert_eq!((even_theta_count(1), odd_theta_count(1)), (3, 1));
        assert_eq!((even_theta_count(2), odd_theta_count(2)), (10, 6));
        assert_eq!((even_theta_count(4), odd_theta_count(4)), (136, 120));
    }

    #[test]
    fn scorza() {
        let t = scorza_correspondence_class(4).unwrap();
        assert_eq!((t.a, t.b, t.c), (int(3), int(3), int(1)));
        assert!(scorza_correspondence_class(1).is_err());
        assert_eq!(scorza_triple_degree().unwrap(), (108, [18, 18, 72]));
    }
}
