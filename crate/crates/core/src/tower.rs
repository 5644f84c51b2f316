//! The quadratic tower F_{2^m} ⊂ F_{2^n}, n = 2m: conjugation, norms, the
//! unit circle U = {x : x^(2^m+1) = 1} and its rational parametrization
//! z ↦ (z + γ)/(z + γ̄) by the subfield.
//!
//! Subfield elements live inside F_{2^n}; membership is the test x^(2^m) = x.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{make_field, FieldCtx, FieldElement};

#[derive(Clone, Debug)]
pub struct TowerCtx {
    field: FieldCtx,
    m: u32,
    subfield: Vec<FieldElement>,
    circle: Vec<FieldElement>,
}

impl TowerCtx {
    pub fn new(field: FieldCtx) -> Result<Self> {
        let n = field.degree();
        if n % 2 != 0 {
            return Err(Error::OddDegree(n));
        }
        let m = n / 2;
        let g = field.generator();
        let q = 1u64 << m;
        let step_sub = field.pow_u64(g, q + 1);
        let step_circle = field.pow_u64(g, q - 1);

        let mut subfield = Vec::with_capacity(q as usize);
        subfield.push(FieldElement::ZERO);
        let mut acc = FieldElement::ONE;
        for _ in 0..q - 1 {
            subfield.push(acc);
            acc = field.mul(acc, step_sub);
        }
        subfield.sort_unstable();

        let mut circle = Vec::with_capacity(q as usize + 1);
        let mut acc = FieldElement::ONE;
        for _ in 0..=q {
            circle.push(acc);
            acc = field.mul(acc, step_circle);
        }
        Ok(TowerCtx { field, m, subfield, circle })
    }

    /// Tower over the default field F_{2^{2m}}.
    pub fn with_m(m: u32) -> Result<Self> {
        Self::new(make_field(2 * m, None)?)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// 2^m + 1.
    pub fn unit_circle_order(&self) -> u64 {
        (1u64 << self.m) + 1
    }

    /// x̄ = x^(2^m).
    pub fn conjugate(&self, x: FieldElement) -> FieldElement {
        self.field.frobenius(x, self.m)
    }

    /// x · x̄, an element of the subfield.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        self.field.mul(x, self.conjugate(x))
    }

    pub fn in_subfield(&self, x: FieldElement) -> bool {
        self.conjugate(x) == x
    }

    /// The 2^m subfield elements, sorted by bitmask.
    pub fn subfield_elements(&self) -> &[FieldElement] {
        &self.subfield
    }

    /// Tr_1^m of a subfield element.
    pub fn subfield_trace(&self, x: FieldElement) -> Result<u8> {
        if !self.in_subfield(x) {
            return Err(Error::NotInSubfield(x.bits()));
        }
        let mut acc = FieldElement::ZERO;
        let mut term = x;
        for _ in 0..self.m {
            acc = self.field.add(acc, term);
            term = self.field.square(term);
        }
        Ok(acc.bits() as u8)
    }

    pub fn in_unit_circle(&self, x: FieldElement) -> bool {
        !x.is_zero() && self.norm(x) == FieldElement::ONE
    }

    /// U in the order g^(k(2^m-1)), k = 0..=2^m, g the canonical generator.
    pub fn unit_circle_iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.circle.iter().copied()
    }

    pub fn unit_circle(&self) -> &[FieldElement] {
        &self.circle
    }

    /// Elements of F_{2^n} \ F_{2^m} in bitmask order.
    pub fn non_subfield_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.field.elements().filter(move |&x| !self.in_subfield(x))
    }

    /// Smallest-bitmask element outside the subfield.
    pub fn canonical_gamma(&self) -> FieldElement {
        self.non_subfield_elements().next().expect("m >= 1 leaves room outside the subfield")
    }

    /// (z + γ)/(z + γ̄), which lies in U \ {1}.
    pub fn cayley_param(&self, gamma: FieldElement, z: FieldElement) -> Result<FieldElement> {
        if self.in_subfield(gamma) {
            return Err(Error::GammaInSubfield(gamma.bits()));
        }
        if !self.in_subfield(z) {
            return Err(Error::ZNotInSubfield(z.bits()));
        }
        let f = &self.field;
        let num = f.add(z, gamma);
        let den = f.add(z, self.conjugate(gamma));
        f.div(num, den)
    }

    /// Checks that z ↦ (z+γ)/(z+γ̄) maps the subfield bijectively onto U \ {1}.
    pub fn check_cayley_bijection(&self, gamma: FieldElement) -> Result<CayleyReport> {
        let mut image = self
            .subfield
            .iter()
            .map(|&z| self.cayley_param(gamma, z))
            .collect::<Result<Vec<_>>>()?;
        image.sort_unstable();
        let before = image.len();
        image.dedup();
        let injective = image.len() == before;
        let mut expected: Vec<_> = self.circle.iter().copied().filter(|&u| u != FieldElement::ONE).collect();
        expected.sort_unstable();
        Ok(CayleyReport {
            m: self.m,
            gamma: gamma.to_hex(),
            injective,
            image_size: image.len(),
            covers_circle_minus_one: image == expected,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyReport {
    pub m: u32,
    pub gamma: String,
    pub injective: bool,
    pub image_size: usize,
    pub covers_circle_minus_one: bool,
}

impl CayleyReport {
    pub fn passed(&self) -> bool {
        self.injective && self.covers_circle_minus_one
    }
}
