//! Sparse polynomials over F_{2^n}, kept in a canonical form: exponents
//! strictly increasing, no zero coefficients, like terms merged.
//!
//! Exponent 0 is the constant term. Any other exponent is reduced into
//! [1, 2^n - 1], so x^(2^n-1) keeps mapping 0 to 0 instead of collapsing
//! into the constant 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::modarith;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub coef: FieldElement,
    pub exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    ctx: FieldCtx,
    terms: Vec<Term>,
}

/// Niho-type trinomials and the named families are all sparse polynomials.
pub type TrinomialSpec = SparsePoly;

/// Reduces a signed exponent for use as a polynomial exponent over a field
/// with multiplicative group order `order`.
pub fn reduce_exponent(e: i128, order: u64) -> u64 {
    if e == 0 {
        return 0;
    }
    match modarith::reduce(e, order) {
        0 => order,
        r => r,
    }
}

impl SparsePoly {
    pub fn new(ctx: &FieldCtx, terms: impl IntoIterator<Item = (FieldElement, i128)>) -> Self {
        let order = ctx.group_order();
        let mut raw: Vec<Term> = terms
            .into_iter()
            .map(|(coef, e)| Term { coef, exp: reduce_exponent(e, order) })
            .collect();
        raw.sort_by_key(|t| t.exp);
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.exp == t.exp => last.coef = ctx.add(last.coef, t.coef),
                _ => terms.push(t),
            }
        }
        terms.retain(|t| !t.coef.is_zero());
        SparsePoly { ctx: ctx.clone(), terms }
    }

    /// Sum of monomials with coefficient 1.
    pub fn monomials(ctx: &FieldCtx, exps: impl IntoIterator<Item = i128>) -> Self {
        Self::new(ctx, exps.into_iter().map(|e| (FieldElement::ONE, e)))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.terms.iter().fold(FieldElement::ZERO, |acc, t| {
            self.ctx.add(acc, self.ctx.mul(t.coef, self.ctx.pow_u64(x, t.exp)))
        })
    }

    /// p(x^e) as a polynomial (exponents multiplied by `e`).
    pub fn compose_monomial(&self, e: u64) -> Self {
        let order = self.ctx.group_order();
        Self::new(
            &self.ctx,
            self.terms.iter().map(|t| {
                let exp = if t.exp == 0 { 0 } else { modarith::mul_mod(t.exp, e, order) as i128 };
                // a nonzero exponent that reduces to 0 still denotes x^(2^n-1)
                let exp = if t.exp != 0 && exp == 0 { order as i128 } else { exp };
                (t.coef, exp)
            }),
        )
    }

    pub fn to_json(&self) -> SparsePolyJson {
        SparsePolyJson {
            modulus: self.ctx.modulus_hex(),
            terms: self.terms.iter().map(|t| TermJson { coef_hex: t.coef.to_hex(), exp: t.exp }).collect(),
        }
    }

    pub fn from_json(ctx: &FieldCtx, json: &SparsePolyJson) -> Result<Self> {
        if crate::gf::parse_modulus_hex(&json.modulus)? != ctx.modulus() {
            return Err(Error::Parse(format!("modulus {} does not match field {}", json.modulus, ctx.modulus_hex())));
        }
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let bits = crate::gf::parse_modulus_hex(&t.coef_hex)?;
                Ok((ctx.element(bits)?, t.exp as i128))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ctx, terms))
    }
}

impl std::fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = match t.exp {
                0 => String::new(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            };
            match (t.coef == FieldElement::ONE, mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{}", t.coef)?,
                (false, false) => write!(f, "{}*{mono}", t.coef)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef_hex: String,
    pub exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsePolyJson {
    pub modulus: String,
    pub terms: Vec<TermJson>,
}
