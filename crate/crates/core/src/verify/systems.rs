//! Linear systems for the multiplicities of the components of a
//! two-divisor intersection, and the classes they determine.

use num_traits::Zero;

use super::Verifier;
use crate::algebra::rational::{int, join_terms, show};
use crate::algebra::{QMatrix, Rational, Solve, solve_exact};
use crate::error::{Error, Result};
use crate::grr::{Locus, locus_lambda2};
use crate::rings::TautClass;

/// One component of the intersection with its unknown multiplicity.
#[derive(Clone, Debug)]
pub struct Component {
    /// Name of the unknown (m, n, k, …).
    pub unknown: &'static str,
    pub label: &'static str,
    /// `None` for the locus being computed.
    pub class: Option<TautClass>,
}

/// Σ coeffs·unknowns = rhs
#[derive(Clone, Debug)]
pub struct Equation {
    pub id: String,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub struct MultiplicitySystem {
    pub id: &'static str,
    pub space: &'static str,
    pub lhs: TautClass,
    pub components: Vec<Component>,
    pub equations: Vec<Equation>,
}

/// A solved system and the constraints that can be dropped without losing
/// uniqueness of the solution.
#[derive(Clone, Debug)]
pub struct Solved {
    pub values: Vec<Rational>,
    pub redundant: Vec<String>,
}

pub const SYSTEMS: &[&str] = &["F31", "H4plus"];

impl MultiplicitySystem {
    pub fn unknowns(&self) -> Vec<&'static str> {
        self.components.iter().map(|c| c.unknown).collect()
    }

    pub fn display_equation(&self, e: &Equation) -> String {
        let lhs = join_terms(
            e.coeffs
                .iter()
                .zip(&self.components)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, comp)| (c.clone(), comp.unknown.to_string())),
        );
        format!("{lhs} = {}", show(&e.rhs))
    }

    pub fn display_solution(&self, values: &[Rational]) -> String {
        self.components
            .iter()
            .zip(values)
            .map(|(c, v)| format!("{} = {}", c.unknown, show(v)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Unique solution of the given equations, or `None` if they leave a
    /// free direction or are inconsistent.
    fn solve_subset(&self, keep: &[&Equation]) -> Result<Option<Vec<Rational>>> {
        let a = QMatrix::from_rows(keep.iter().map(|e| e.coeffs.clone()).collect())?;
        let b: Vec<Rational> = keep.iter().map(|e| e.rhs.clone()).collect();
        Ok(match solve_exact(&a, &b)? {
            Solve::Solution { x, kernel_dim: 0 } => Some(x),
            _ => None,
        })
    }

    pub fn solve(&self) -> Result<Solved> {
        let all: Vec<&Equation> = self.equations.iter().collect();
        let a = QMatrix::from_rows(all.iter().map(|e| e.coeffs.clone()).collect())?;
        let b: Vec<Rational> = all.iter().map(|e| e.rhs.clone()).collect();
        let values = match solve_exact(&a, &b)? {
            Solve::Solution { x, kernel_dim: 0 } => x,
            Solve::Solution { kernel_dim, .. } => {
                return Err(Error::Verification(format!(
                    "{} system leaves {kernel_dim} multiplicities free",
                    self.id
                )));
            }
            Solve::Inconsistent { certificate } => {
                let combo = join_terms(
                    certificate
                        .iter()
                        .zip(&self.equations)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, e)| (c.clone(), format!("[{}]", e.id))),
                );
                return Err(Error::Verification(format!(
                    "{} system is inconsistent: {combo} gives 0 = nonzero",
                    self.id
                )));
            }
        };
        let mut redundant = Vec::new();
        for (i, e) in self.equations.iter().enumerate() {
            let rest: Vec<&Equation> = all
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, e)| *e)
                .collect();
            if self.solve_subset(&rest)?.as_ref() == Some(&values) {
                redundant.push(e.id.clone());
            }
        }
        Ok(Solved { values, redundant })
    }

    /// (lhs − Σ known multiplicity·class) / multiplicity of the unknown locus.
    pub fn unknown_class(&self, values: &[Rational]) -> Result<TautClass> {
        let mut rest = self.lhs.clone();
        let mut divisor = None;
        for (c, x) in self.components.iter().zip(values) {
            match &c.class {
                Some(cl) => rest = rest.sub(&cl.scale(x))?,
                None => divisor = Some(x.clone()),
            }
        }
        let n = divisor
            .ok_or_else(|| Error::Verification(format!("{} has no unknown locus", self.id)))?;
        if n.is_zero() {
            return Err(Error::Verification(format!(
                "{}: multiplicity of the unknown locus is zero",
                self.id
            )));
        }
        Ok(rest.scale(&(int(1) / n)))
    }
}

impl Verifier {
    pub fn multiplicity_system(&self, id: &str) -> Result<MultiplicitySystem> {
        match id {
            "F31" => self.f31_system(),
            "H4plus" => self.h4plus_system(),
            _ => Err(Error::unknown("multiplicity system", id)),
        }
    }

    /// W₃,₁·Θ₃,₁ = m·Hyp₃,₁ + n·F₃,₁ + k·W₂ + l·γ₁ + j·γ₂, restricted to T₁–T₃
    /// and pushed forward to M3.
    fn f31_system(&self) -> Result<MultiplicitySystem> {
        let m31 = self.rings.space("M31")?;
        let lhs = self.catalog_product("W31", "Theta31")?;
        let components = vec![
            Component {
                unknown: "m",
                label: "Hyp31",
                class: Some(self.compute_hyp31()?),
            },
            Component {
                unknown: "n",
                label: "F31",
                class: None,
            },
            Component {
                unknown: "k",
                label: "W2",
                class: Some(self.w2_m31()?.class),
            },
            Component {
                unknown: "l",
                label: "gamma1",
                class: Some(m31.special_expand("gamma1")?),
            },
            Component {
                unknown: "j",
                label: "gamma2",
                class: Some(m31.special_expand("gamma2")?),
            },
        ];
        let mut equations = Vec::new();
        for s in ["T1", "T2", "T3"] {
            let count = self.constants.evaluate(&format!("{s}_F31_fibers"))?;
            equations.push(self.surface_equation(s, &lhs, &components, count)?);
        }
        let push = |c: &TautClass| self.rings.apply_hom("p_star_pushforward", c);
        let images: Vec<Option<TautClass>> = components
            .iter()
            .map(|c| c.class.as_ref().map(push).transpose())
            .collect::<Result<_>>()?;
        let z3 = &self.rings.catalog("Z3")?.class;
        let target = push(&lhs)?;
        for d in self.rings.space("M3")?.divisor_basis() {
            let coeffs = images
                .iter()
                .map(|img| match img {
                    Some(c) => c.coeff(d),
                    None => z3.coeff(d),
                })
                .collect::<Result<_>>()?;
            equations.push(Equation {
                id: format!("p_*:{d}"),
                coeffs,
                rhs: target.coeff(d)?,
            });
        }
        Ok(MultiplicitySystem {
            id: "F31",
            space: "M31",
            lhs,
            components,
            equations,
        })
    }

    /// Θ_null·T = m·Hyp₄ + n·H₄⁺ + k·W₂ + l·γ₁, restricted to V₁–V₄, plus the
    /// λ²-coordinate with the interior value of H₄⁺ from Porteous.
    fn h4plus_system(&self) -> Result<MultiplicitySystem> {
        let m4 = self.rings.space("M4")?;
        let lhs = self.catalog_product("Theta_null_M4", "T_M4")?;
        let components = vec![
            Component {
                unknown: "m",
                label: "Hyp4",
                class: Some(self.rings.catalog("Hyp4")?.class.clone()),
            },
            Component {
                unknown: "n",
                label: "H4plus",
                class: None,
            },
            Component {
                unknown: "k",
                label: "W2",
                class: Some(self.w2_m4()?.class),
            },
            Component {
                unknown: "l",
                label: "gamma1",
                class: Some(m4.basis_class(2, "gamma1")?),
            },
        ];
        let mut equations = Vec::new();
        for s in ["V1", "V2", "V3", "V4"] {
            let count = self.constants.evaluate(&format!("{s}_H4plus"))?;
            equations.push(self.surface_equation(s, &lhs, &components, count)?);
        }
        let interior = locus_lambda2(Locus::H4Plus, &self.rings)?;
        let coeffs = components
            .iter()
            .map(|c| match &c.class {
                Some(cl) => cl.coeff("lambda^2"),
                None => Ok(interior.clone()),
            })
            .collect::<Result<_>>()?;
        equations.push(Equation {
            id: "lambda^2".into(),
            coeffs,
            rhs: lhs.coeff("lambda^2")?,
        });
        Ok(MultiplicitySystem {
            id: "H4plus",
            space: "M4",
            lhs,
            components,
            equations,
        })
    }

    fn surface_equation(
        &self,
        surface: &str,
        lhs: &TautClass,
        components: &[Component],
        count: Rational,
    ) -> Result<Equation> {
        let coeffs = components
            .iter()
            .map(|c| match &c.class {
                Some(cl) => self.surfaces.evaluate(surface, cl),
                None => Ok(count.clone()),
            })
            .collect::<Result<_>>()?;
        Ok(Equation {
            id: surface.to_string(),
            coeffs,
            rhs: self.surfaces.evaluate(surface, lhs)?,
        })
    }

    pub fn solve_multiplicities(&self, id: &str) -> Result<(MultiplicitySystem, Solved)> {
        let sys = self.multiplicity_system(id)?;
        let solved = sys.solve()?;
        Ok((sys, solved))
    }

    pub fn compute_f31(&self) -> Result<TautClass> {
        let (sys, s) = self.solve_multiplicities("F31")?;
        sys.unknown_class(&s.values)
    }

    pub fn compute_h4plus(&self) -> Result<TautClass> {
        let (sys, s) = self.solve_multiplicities("H4plus")?;
        sys.unknown_class(&s.values)
    }
}
