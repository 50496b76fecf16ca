//! Classes derived on the way to the main loci, and lookup by name.

use super::Verifier;
use crate::algebra::{QMatrix, Solve, solve_exact};
use crate::error::{Error, Result};
use crate::rings::{Formal, HomRule, TautClass};

/// Names resolved by [`Verifier::named_class`] besides catalog entries.
pub const DERIVED_CLASSES: &[&str] = &["Hyp31", "F31", "H4plus", "W2_M31", "W2_M4"];

/// A class supported on a boundary divisor, found from its pullback to the
/// product of the two sides of the node.
#[derive(Clone, Debug)]
pub struct BoundaryClass {
    /// Coefficients over the generators of A¹ of the boundary divisor.
    pub formal: Formal,
    pub class: TautClass,
}

impl Verifier {
    /// j₃* of the hyperelliptic locus in genus 4.
    pub fn compute_hyp31(&self) -> Result<TautClass> {
        self.rings
            .apply_hom("j3_star", &self.rings.catalog("Hyp4")?.class)
    }

    /// W₂ on M31: ξ* of it is the genus-2 Weierstrass divisor on the second factor.
    pub fn w2_m31(&self) -> Result<BoundaryClass> {
        let w = &self.rings.catalog("W21")?.class;
        let target = self.rings.apply_hom("pi2_m12xm21", w)?;
        self.boundary_class("xi_star_m31", &target)
    }

    /// W₂ on M4: ξ* of it is the Weierstrass divisor pulled back from both factors.
    pub fn w2_m4(&self) -> Result<BoundaryClass> {
        let w = &self.rings.catalog("W21")?.class;
        let target = self
            .rings
            .apply_hom("pi1_m21xm21", w)?
            .add(&self.rings.apply_hom("pi2_m21xm21", w)?)?;
        self.boundary_class("xi_star_m4", &target)
    }

    fn boundary_class(&self, hom: &str, target: &TautClass) -> Result<BoundaryClass> {
        let h = self.rings.hom(hom)?;
        let HomRule::Table { images, .. } = h.rule() else {
            return Err(Error::InvalidArgument(format!("{hom} is not a table")));
        };
        let cols: Vec<_> = images.values().map(|c| c.coeffs().to_vec()).collect();
        let a = QMatrix::from_columns(target.coeffs().len(), &cols)?;
        let x = match solve_exact(&a, target.coeffs())? {
            Solve::Solution { x, kernel_dim: 0 } => x,
            Solve::Solution { kernel_dim, .. } => {
                return Err(Error::Verification(format!(
                    "{hom} system leaves {kernel_dim} free coefficients"
                )));
            }
            Solve::Inconsistent { .. } => {
                return Err(Error::Verification(format!("{hom} system is inconsistent")));
            }
        };
        let formal: Formal = images.keys().cloned().zip(x).collect();
        let class = self.rings.space(h.domain())?.reduce(&formal)?;
        Ok(BoundaryClass { formal, class })
    }

    /// Product of two catalog divisors.
    pub fn catalog_product(&self, a: &str, b: &str) -> Result<TautClass> {
        self.rings
            .divisor_product(&self.rings.catalog(a)?.class, &self.rings.catalog(b)?.class)
    }

    /// Derived names, catalog names, `A*B` for catalog divisors, or
    /// `SPACE:label` for a basis label or special class.
    pub fn named_class(&self, name: &str) -> Result<TautClass> {
        match name {
            "Hyp31" => return self.compute_hyp31(),
            "F31" => return self.compute_f31(),
            "H4plus" => return self.compute_h4plus(),
            "W2_M31" => return Ok(self.w2_m31()?.class),
            "W2_M4" => return Ok(self.w2_m4()?.class),
            _ => {}
        }
        if let Ok(e) = self.rings.catalog(name) {
            return Ok(e.class.clone());
        }
        if let Some((space, label)) = name.split_once(':') {
            return self.class_on(space, label);
        }
        if let Some((a, b)) = name.split_once('*') {
            return self.catalog_product(a, b);
        }
        Err(Error::unknown("class", name))
    }

    /// A class named relative to a space: `W2`, a basis label or special,
    /// or any global name.
    pub fn class_on(&self, space: &str, name: &str) -> Result<TautClass> {
        let s = self.rings.space(space)?;
        if name == "W2" {
            return self.named_class(&format!("W2_{space}"));
        }
        if s.divisor_basis().iter().any(|l| l == name) {
            return s.basis_class(1, name);
        }
        if s.codim2_basis().iter().any(|l| l == name) {
            return s.basis_class(2, name);
        }
        if s.specials().iter().any(|l| l == name) {
            return s.special_expand(name);
        }
        let c = self.named_class(name)?;
        if c.space() != space {
            return Err(Error::SpaceMismatch {
                expected: space.into(),
                found: c.space().into(),
            });
        }
        Ok(c)
    }
}
