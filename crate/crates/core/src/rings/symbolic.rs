//! Evaluation of parsed expressions into small commutative polynomials over
//! indexed atoms. Callers decide what each identifier denotes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::expr::Expr;

/// Polynomial whose monomials are sorted atom-index lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    pub terms: BTreeMap<Vec<usize>, Rational>,
}

impl SymPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = SymPoly::default();
        p.push(Vec::new(), c);
        p
    }

    pub fn atom(i: usize) -> Self {
        let mut p = SymPoly::default();
        p.push(vec![i], Rational::one());
        p
    }

    /// Σ cᵢ·atom(offset + i)
    pub fn linear(coeffs: &[Rational], offset: usize) -> Self {
        let mut p = SymPoly::default();
        for (i, c) in coeffs.iter().enumerate() {
            p.push(vec![offset + i], c.clone());
        }
        p
    }

    fn push(&mut self, mut m: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        m.sort_unstable();
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(mut self, other: SymPoly, sign: &Rational) -> SymPoly {
        for (m, c) in other.terms {
            self.push(m, c * sign);
        }
        self
    }

    fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut p = SymPoly::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                p.push(m, ca * cb);
            }
        }
        p
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }
}

/// Evaluates `e`, resolving identifiers with `resolve`. Function calls are rejected.
pub fn eval(e: &Expr, src: &str, resolve: &dyn Fn(&str) -> Result<SymPoly>) -> Result<SymPoly> {
    let err = |m: &str| Error::Parse {
        input: src.to_string(),
        message: m.to_string(),
    };
    Ok(match e {
        Expr::Num(q) => SymPoly::constant(q.clone()),
        Expr::Ident(name) => resolve(name)?,
        Expr::Call(name, _) => return Err(err(&format!("function `{name}` not allowed here"))),
        Expr::Neg(a) => SymPoly::default().add(eval(a, src, resolve)?, &-Rational::one()),
        Expr::Add(a, b) => eval(a, src, resolve)?.add(eval(b, src, resolve)?, &Rational::one()),
        Expr::Sub(a, b) => eval(a, src, resolve)?.add(eval(b, src, resolve)?, &-Rational::one()),
        Expr::Mul(a, b) => eval(a, src, resolve)?.mul(&eval(b, src, resolve)?),
        Expr::Div(a, b) => {
            let d = eval(b, src, resolve)?
                .as_constant()
                .ok_or_else(|| err("division by a non-constant"))?;
            if d.is_zero() {
                return Err(err("division by zero"));
            }
            SymPoly::default().add(eval(a, src, resolve)?, &d.recip())
        }
        Expr::Pow(a, k) => {
            let base = eval(a, src, resolve)?;
            let mut p = SymPoly::constant(Rational::one());
            for _ in 0..*k {
                p = p.mul(&base);
            }
            p
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};
    use crate::expr::parse;

    fn resolve(name: &str) -> Result<SymPoly> {
        match name {
            "x" => Ok(SymPoly::atom(0)),
            "y" => Ok(SymPoly::atom(1)),
            _ => Err(Error::unknown("symbol", name)),
        }
    }

    #[test]
    fn expands_products() {
        let src = "(x + y)^2 - 2*x*y";
        let p = eval(&parse(src).unwrap(), src, &resolve).unwrap();
        let mut want = BTreeMap::new();
        want.insert(vec![0, 0], int(1));
        want.insert(vec![1, 1], int(1));
        assert_eq!(p.terms, want);
    }

    #[test]
    fn rational_division() {
        let src = "1/5*(x - 1/2*y)";
        let p = eval(&parse(src).unwrap(), src, &resolve).unwrap();
        assert_eq!(p.terms[&vec![0]], frac(1, 5));
        assert_eq!(p.terms[&vec![1]], frac(-1, 10));
    }

    #[test]
    fn rejects_symbolic_division_and_unknowns() {
        let src = "x / y";
        assert!(eval(&parse(src).unwrap(), src, &resolve).is_err());
        let src = "z";
        assert!(eval(&parse(src).unwrap(), src, &resolve).is_err());
    }
}
