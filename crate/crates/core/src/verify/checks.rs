//! The check registry. Each check computes its values and hands them to
//! [`Parts`] under the keys of its golden entry.

use num_traits::Zero;

use super::{CheckFn, Parts, Verifier};
use crate::algebra::poly::{Sym, mono};
use crate::algebra::rational::{frac, int};
use crate::algebra::{QMatrix, Rational, Solve, kernel_basis, mat_rref, solve_exact};
use crate::enumerative::{
    abel_difference_degree, even_theta_count, mixed_difference_degree, odd_theta_count,
    scorza_triple_degree,
};
use crate::error::{Error, Result};
use crate::grr::{Locus, grr_spin_character, jet_bundle_chern, locus_lambda2, spin_c1};
use crate::rings::{Formal, RingSpace, TautClass};
use crate::surfaces::AuditStatus;

/// Declaration order is report order.
pub(super) const REGISTRY: &[(&str, CheckFn)] = &[
    ("basis_m31", basis_m31),
    ("boundary_strata", boundary_strata),
    ("boundary_strata_m3", boundary_strata_m3),
    ("kappa2_m22", kappa2_m22),
    ("j3_pullbacks", j3_pullbacks),
    ("hyp31", hyp31),
    ("products", products),
    ("w2_classes", w2_classes),
    ("surface_tables", surface_tables),
    ("surface_audit", surface_audit),
    ("multiplicities_f31", multiplicities_f31),
    ("f31", f31),
    ("pushforwards", pushforwards),
    ("multiplicities_h4plus", multiplicities_h4plus),
    ("h4plus", h4plus),
    ("relation_hygiene", relation_hygiene),
    ("ci_obstructions", ci_obstructions),
    ("enumerative", enumerative),
    ("grr_spin", grr_spin),
    ("jet_chern", jet_chern),
    ("lambda2", lambda2),
];

const S_SURFACES: [&str; 3] = ["S1", "S2", "S3"];
const BOUNDARY_STRATA: [&str; 5] = ["lambda*d11", "d00", "d1|1", "gamma1", "gamma2"];

fn unit(label: &str) -> Formal {
    Formal::from([(label.to_string(), int(1))])
}

fn list_or_none(items: Vec<String>) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn show_values(values: &[Rational]) -> String {
    values
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Nonzero row space of `rows` in reduced echelon form, one class per row.
fn echelon_classes(space: &RingSpace, rows: Vec<Vec<Rational>>) -> Result<String> {
    let r = mat_rref(&QMatrix::from_rows(rows)?);
    (0..r.rank)
        .map(|i| Ok(space.class(2, r.reduced.row(i).to_vec())?.to_string()))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.join(" | "))
}

impl Verifier {
    /// Columns are ϑ*-images of the M31 codim-2 basis, in M22 coordinates.
    pub fn theta_matrix(&self) -> Result<QMatrix> {
        let m31 = self.rings.space("M31")?;
        let rows = self.rings.space("M22")?.codim2_basis().len();
        let cols = m31
            .codim2_basis()
            .iter()
            .map(|l| {
                let c = m31.basis_class(2, l)?;
                Ok(self.rings.apply_hom("theta_star", &c)?.coeffs().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        QMatrix::from_columns(rows, &cols)
    }

    /// A codim-2 vector on M31 recovered from its ϑ*-image and its values
    /// on S₁–S₃, which must determine it.
    pub fn solve_from_theta_and_surfaces(&self, f: &Formal) -> Result<TautClass> {
        let m31 = self.rings.space("M31")?;
        let theta = self.theta_matrix()?;
        let image = self.rings.apply_hom_formal("theta_star", f)?;
        let mut rows = theta.to_rows();
        let mut rhs = image.coeffs().to_vec();
        for s in S_SURFACES {
            let model = self.surfaces.get(s)?;
            rows.push(model.functional().values().to_vec());
            rhs.push(model.evaluate_formal(m31, f)?);
        }
        match solve_exact(&QMatrix::from_rows(rows)?, &rhs)? {
            Solve::Solution { x, kernel_dim: 0 } => m31.class(2, x),
            Solve::Solution { kernel_dim, .. } => Err(Error::Verification(format!(
                "{kernel_dim} coefficients left free"
            ))),
            Solve::Inconsistent { .. } => Err(Error::Verification(
                "pullback and surface values are inconsistent".into(),
            )),
        }
    }

    fn surface_values(&self, surfaces: &[&str], c: &TautClass) -> Result<String> {
        let v = surfaces
            .iter()
            .map(|s| self.surfaces.evaluate(s, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(show_values(&v))
    }
}

fn basis_m31(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m31 = v.rings.space("M31")?;
    let a = v.theta_matrix()?;
    p.number("rank", &int(a.rank() as i64))?;
    let kernel = kernel_basis(&a);
    p.number("kernel_dim", &int(kernel.len() as i64))?;
    let family = p
        .expected("kernel")?
        .split('|')
        .map(|src| m31.parse_class(src, Some(2)))
        .collect::<Result<Vec<_>>>()?;
    let expected = echelon_classes(m31, family.iter().map(|c| c.coeffs().to_vec()).collect())?;
    p.record("kernel", expected, echelon_classes(m31, kernel)?);
    let rows = S_SURFACES
        .iter()
        .map(|s| family.iter().map(|r| v.surfaces.evaluate(s, r)).collect())
        .collect::<Result<Vec<_>>>()?;
    let det = QMatrix::from_rows(rows)?.determinant()?;
    p.flag("nonsingular", !det.is_zero())
}

fn boundary_strata(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m31 = v.rings.space("M31")?;
    for name in BOUNDARY_STRATA {
        let f = unit(name);
        let stored = m31.reduce(&f)?;
        p.class(name, m31, &stored)?;
        let solved = v.solve_from_theta_and_surfaces(&f)?;
        p.flag(&format!("{name}:solved"), solved == stored)?;
        let direct = v.rings.apply_hom_formal("theta_star", &f)?;
        let via = v.rings.apply_hom("theta_star", &stored)?;
        p.flag(&format!("{name}:theta"), direct == via)?;
        if m31.specials().iter().any(|s| s == name) {
            p.text(
                &format!("{name}:surfaces"),
                v.surface_values(&S_SURFACES, &stored)?,
            )?;
        } else {
            let residual = S_SURFACES
                .iter()
                .map(|s| {
                    let model = v.surfaces.get(s)?;
                    Ok(model.evaluate_formal(m31, &f)? - model.functional().evaluate(&stored)?)
                })
                .collect::<Result<Vec<_>>>()?;
            p.text(&format!("{name}:surface_residual"), show_values(&residual))?;
        }
    }
    Ok(())
}

fn boundary_strata_m3(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m3 = v.rings.space("M3")?;
    let m31 = v.rings.space("M31")?;
    for s in ["d00", "gamma1"] {
        let e = m3.special_expand(s)?;
        p.class(&format!("M3:{s}"), m3, &e)?;
        let pulled = v.rings.apply_hom("p_pullback_m3", &e)?;
        p.class(&format!("M31:{s}"), m31, &pulled)?;
    }
    Ok(())
}

fn kappa2_m22(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m22 = v.rings.space("M22")?;
    let k = m22.special_expand("kappa2")?;
    p.class("expanded", m22, &k)?;
    let m31k = v.rings.space("M31")?.basis_class(2, "kappa2")?;
    p.flag(
        "theta_fixes_kappa2",
        v.rings.apply_hom("theta_star", &m31k)? == k,
    )
}

fn j3_pullbacks(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m4 = v.rings.space("M4")?;
    let m31 = v.rings.space("M31")?;
    for d in m4.divisor_basis() {
        let img = v.rings.apply_hom("j3_star", &m4.divisor(d)?)?;
        p.class(d, m31, &img)?;
    }
    for s in m4.specials() {
        let img = v.rings.apply_hom_formal("j3_star", &unit(s))?;
        p.class(s, m31, &img)?;
    }
    Ok(())
}

fn hyp31(v: &Verifier, p: &mut Parts) -> Result<()> {
    let h = v.compute_hyp31()?;
    p.class("class", v.rings.space("M31")?, &h)?;
    let push = v.rings.apply_hom("p_star_pushforward", &h)?;
    p.class("pushforward", v.rings.space("M3")?, &push)?;
    let theta = v.rings.apply_hom("theta_star", &h)?;
    p.class("theta", v.rings.space("M22")?, &theta)
}

fn products(v: &Verifier, p: &mut Parts) -> Result<()> {
    for (key, space) in [("W31*Theta31", "M31"), ("Theta_null_M4*T_M4", "M4")] {
        p.class(key, v.rings.space(space)?, &v.named_class(key)?)?;
    }
    Ok(())
}

fn w2_classes(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m31 = v.rings.space("M31")?;
    let m4 = v.rings.space("M4")?;
    p.class("M31", m31, &v.w2_m31()?.class)?;
    let w = v.w2_m4()?;
    p.formal("M4:boundary", m4, &w.formal)?;
    p.class("M4", m4, &w.class)?;
    let w21 = &v.rings.catalog("W21")?.class;
    p.class("weierstrass_g2", v.rings.space("M21")?, w21)
}

/// Keys are `SURFACE:name`, with names resolved in the surface's space.
fn surface_tables(v: &Verifier, p: &mut Parts) -> Result<()> {
    for key in p.keys_with_prefix("") {
        let (s, name) = key
            .split_once(':')
            .ok_or_else(|| Error::config(format!("surface table key `{key}`")))?;
        let model = v.surfaces.get(s)?;
        let c = v.class_on(model.target_space(), name)?;
        p.number(&key, &v.surfaces.evaluate(s, &c)?)?;
    }
    Ok(())
}

fn surface_audit(v: &Verifier, p: &mut Parts) -> Result<()> {
    let (mut overrides, mut mismatches, mut underivable, mut direct) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for model in v.surfaces.all() {
        let space = v.rings.space(model.target_space())?;
        for e in model.audit(space) {
            let id = format!("{}:{}", model.id(), e.label);
            let derived = e.derived.clone().unwrap_or_default();
            match e.status {
                AuditStatus::Override => {
                    overrides.push(format!("{id} derived {derived} stated {}", e.effective))
                }
                AuditStatus::Mismatch => {
                    mismatches.push(format!("{id} derived {derived} stated {}", e.effective))
                }
                AuditStatus::Underivable => underivable.push(id),
                AuditStatus::Match if model.direct_values().contains_key(&e.label) => {
                    direct.push(format!("{id} = {}", e.effective))
                }
                AuditStatus::Match => {}
            }
        }
    }
    p.text("overrides", list_or_none(overrides))?;
    p.text("mismatches", list_or_none(mismatches))?;
    p.text("underivable", list_or_none(underivable))?;
    p.text("derived_direct_values", list_or_none(direct))
}

fn multiplicities(v: &Verifier, p: &mut Parts, id: &str) -> Result<()> {
    let (sys, solved) = v.solve_multiplicities(id)?;
    for e in &sys.equations {
        p.text(&format!("equation:{}", e.id), sys.display_equation(e))?;
    }
    p.text("solution", sys.display_solution(&solved.values))?;
    p.text("redundant", list_or_none(solved.redundant))
}

fn multiplicities_f31(v: &Verifier, p: &mut Parts) -> Result<()> {
    multiplicities(v, p, "F31")
}

fn multiplicities_h4plus(v: &Verifier, p: &mut Parts) -> Result<()> {
    multiplicities(v, p, "H4plus")
}

fn f31(v: &Verifier, p: &mut Parts) -> Result<()> {
    let f = v.compute_f31()?;
    p.class("class", v.rings.space("M31")?, &f)?;
    p.number("kappa2", &f.coeff("kappa2")?)?;
    p.number("psi^2", &f.coeff("psi^2")?)?;
    let push = v.rings.apply_hom("p_star_pushforward", &f)?;
    p.class("pushforward", v.rings.space("M3")?, &push)
}

fn pushforwards(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m3 = v.rings.space("M3")?;
    for name in ["W31*Theta31", "Hyp31", "F31", "W2", "gamma1", "gamma2"] {
        let c = v.class_on("M31", name)?;
        p.class(name, m3, &v.rings.apply_hom("p_star_pushforward", &c)?)?;
    }
    Ok(())
}

fn h4plus(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m4 = v.rings.space("M4")?;
    let h = v.compute_h4plus()?;
    p.class("class", m4, &h)?;
    p.class("lhs", m4, &v.named_class("Theta_null_M4*T_M4")?)?;
    p.number("lambda^2", &h.coeff("lambda^2")?)?;
    p.number(
        "lambda^2_porteous",
        &locus_lambda2(Locus::H4Plus, &v.rings)?,
    )
}

fn relation_hygiene(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m4 = v.rings.space("M4")?;
    let k2 = m4
        .relations()
        .iter()
        .find(|r| r.formal.contains_key("kappa2"))
        .ok_or_else(|| Error::config("M4 has no kappa2 relation"))?;
    let pulled = v.rings.apply_hom_formal("j3_star", &k2.formal)?;
    p.flag("j3_kappa2_relation_vanishes", pulled.is_zero())?;
    let mut nonzero = Vec::new();
    for s in v.rings.spaces() {
        for r in s.relations() {
            if !s.reduce(&r.formal)?.is_zero() {
                nonzero.push(format!("{}: {}", s.id(), r.anchor));
            }
        }
    }
    p.text("stored_relations_nonzero", list_or_none(nonzero))?;
    let (mut bad, mut skipped) = (Vec::new(), Vec::new());
    for model in v.surfaces.all() {
        let space = v.rings.space(model.target_space())?;
        for r in space.relations() {
            match model.evaluate_formal(space, &r.formal) {
                Ok(x) if x.is_zero() => {}
                Ok(x) => bad.push(format!("{}: {} = {x}", model.id(), r.anchor)),
                Err(_) => skipped.push(format!("{}: {}", model.id(), r.anchor)),
            }
        }
    }
    p.text("surface_relation_values_nonzero", list_or_none(bad))?;
    p.text("surface_relation_unevaluable", list_or_none(skipped))
}

/// Nonzero coefficients on `labels` among all products of two divisors.
fn product_obstructions(space: &RingSpace, labels: &[&str]) -> Result<String> {
    let divs = space.divisor_basis();
    let mut out = Vec::new();
    for i in 0..divs.len() {
        for j in i..divs.len() {
            let c = space.divisor_product(&space.divisor(&divs[i])?, &space.divisor(&divs[j])?)?;
            for l in labels {
                let x = c.coeff(l)?;
                if !x.is_zero() {
                    out.push(format!("{}*{}: {l} = {x}", divs[i], divs[j]));
                }
            }
        }
    }
    Ok(list_or_none(out))
}

fn coefficients(c: &TautClass, labels: &[&str]) -> Result<String> {
    labels
        .iter()
        .map(|l| Ok(format!("{l} = {}", c.coeff(l)?)))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.join(", "))
}

fn ci_obstructions(v: &Verifier, p: &mut Parts) -> Result<()> {
    let m31 = v.rings.space("M31")?;
    let m4 = v.rings.space("M4")?;
    const M4_BOUNDARY: [&str; 4] = ["d00", "d01a", "gamma1", "d1|1"];
    p.text(
        "M31_products",
        product_obstructions(m31, &["kappa2", "d01a"])?,
    )?;
    p.number("F31_kappa2", &v.compute_f31()?.coeff("kappa2")?)?;
    p.text("M4_products", product_obstructions(m4, &M4_BOUNDARY)?)?;
    p.text("H4plus", coefficients(&v.compute_h4plus()?, &M4_BOUNDARY)?)?;
    p.text(
        "Hyp4",
        coefficients(&v.rings.catalog("Hyp4")?.class, &M4_BOUNDARY)?,
    )?;
    // b with p*(Hyp₃)·b = Hyp₃,₁, over the M31 divisor basis
    let a = v
        .rings
        .apply_hom("p_pullback_m3", &v.rings.catalog("Hyp3")?.class)?;
    let cols = m31
        .divisor_basis()
        .iter()
        .map(|d| Ok(m31.divisor_product(&a, &m31.divisor(d)?)?.coeffs().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let hyp = v.compute_hyp31()?;
    let sys = QMatrix::from_columns(m31.codim2_basis().len(), &cols)?;
    match solve_exact(&sys, hyp.coeffs())? {
        Solve::Solution { x, kernel_dim } => {
            p.class("cofactor", m31, &m31.class(1, x)?)?;
            p.flag("cofactor_unique", kernel_dim == 0)
        }
        Solve::Inconsistent { .. } => Err(Error::Verification(
            "Hyp31 is not divisible by p*Hyp3".into(),
        )),
    }
}

fn enumerative(v: &Verifier, p: &mut Parts) -> Result<()> {
    p.number("abel(1)", &int(abel_difference_degree(1)?))?;
    p.number("abel(2)", &int(abel_difference_degree(2)?))?;
    p.number("mixed(3,1)", &int(mixed_difference_degree(3, 1)?))?;
    let (total, [a, b, c]) = scorza_triple_degree()?;
    p.text("scorza_triple", format!("{total} = {a} + {b} + {c}"))?;
    p.number("even_theta(1)", &int(even_theta_count(1)))?;
    p.number("even_theta(2)", &int(even_theta_count(2)))?;
    p.number("odd_theta(2)", &int(odd_theta_count(2)))?;
    p.number("odd_theta(4)", &int(odd_theta_count(4)))?;
    for f in v.constants.factors() {
        p.number(&format!("factor:{}", f.name), &f.value)?;
    }
    for c in v.constants.constants() {
        p.number(&format!("constant:{}", c.id), &v.constants.evaluate(&c.id)?)?;
    }
    Ok(())
}

fn grr_spin(_: &Verifier, p: &mut Parts) -> Result<()> {
    p.text("character", grr_spin_character(4)?.to_string())?;
    p.text("c1", spin_c1()?.to_string())
}

fn jet_chern(_: &Verifier, p: &mut Parts) -> Result<()> {
    for (key, n, w) in [("J2(eta)", 2, frac(1, 2)), ("J5(omega)", 5, int(1))] {
        let c = jet_bundle_chern(n, &w)?;
        let coeffs: Vec<Rational> = (1..=3u32)
            .map(|i| c.c(i as usize).coeff(&mono(&[(Sym::Psi, i)])))
            .collect();
        p.text(key, show_values(&coeffs))?;
    }
    Ok(())
}

fn lambda2(v: &Verifier, p: &mut Parts) -> Result<()> {
    for l in Locus::ALL {
        p.number(l.name(), &locus_lambda2(l, &v.rings)?)?;
    }
    p.number("H4plus_class", &v.compute_h4plus()?.coeff("lambda^2")?)
}
