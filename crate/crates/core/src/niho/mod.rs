//! Niho pairs (s, t) modulo 2^m + 1 and the trinomials
//! f(x) = x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1) over F_{2^{2m}}.
//!
//! Pairs are unordered: storage keeps s <= t after reduction. Fractions a/b
//! denote a · b^(-1) modulo 2^m + 1 and are reduced as soon as they enter.

mod family;
mod table1;

pub use family::{family_trinomial, Conditions, Family, FamilyId, FamilyInstance};
pub use table1::{known_pairs_table1, EquivalentEntry, Table1Entry, Table1Row};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith;
use crate::poly::TrinomialSpec;
use crate::tower::TowerCtx;

/// 2^m + 1.
pub fn circle_modulus(m: u32) -> u64 {
    (1u64 << m) + 1
}

/// num · den^(-1) mod 2^m + 1.
pub fn resolve_fraction(num: i64, den: i64, m: u32) -> Result<u64> {
    let modulus = circle_modulus(m);
    if den == 0 {
        return Err(Error::NonInvertibleDenominator { den, modulus });
    }
    let inv = modarith::mod_inv(den as i128, modulus).ok_or(Error::NonInvertibleDenominator { den, modulus })?;
    Ok(modarith::mul_mod(modarith::reduce(num as i128, modulus), inv, modulus))
}

/// An integer or a fraction `num/den`, as written in pair notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub const fn new(num: i64, den: i64) -> Self {
        Fraction { num, den }
    }

    pub const fn int(v: i64) -> Self {
        Fraction { num: v, den: 1 }
    }

    pub fn resolve(self, m: u32) -> Result<u64> {
        resolve_fraction(self.num, self.den, m)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |tok: &str| {
            tok.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {tok:?} in {s:?}")))
        };
        match s.split_once('/') {
            Some((a, b)) => {
                let den = parse(b)?;
                if den == 0 {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Fraction::new(parse(a)?, den))
            }
            None => Ok(Fraction::int(parse(s)?)),
        }
    }
}

/// Parses `"S,T"` where each side is an integer or fraction.
pub fn parse_pair(s: &str) -> Result<(Fraction, Fraction)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected S,T, got {s:?}")))?;
    Ok((a.parse()?, b.parse()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NihoPair {
    pub m: u32,
    pub s: u64,
    pub t: u64,
}

impl NihoPair {
    pub fn new(m: u32, s: i128, t: i128) -> Self {
        let modulus = circle_modulus(m);
        let (s, t) = (modarith::reduce(s, modulus), modarith::reduce(t, modulus));
        NihoPair { m, s: s.min(t), t: s.max(t) }
    }

    pub fn from_fractions(m: u32, s: Fraction, t: Fraction) -> Result<Self> {
        Ok(Self::new(m, s.resolve(m)? as i128, t.resolve(m)? as i128))
    }

    /// s = t, or either entry is 0.
    pub fn is_degenerate(&self) -> bool {
        self.s == self.t || self.s == 0 || self.t == 0
    }

    /// Exponents s(2^m-1)+1 and t(2^m-1)+1 before reduction.
    pub fn exponents(&self) -> (u64, u64) {
        let q1 = (1u64 << self.m) - 1;
        (self.s * q1 + 1, self.t * q1 + 1)
    }
}

impl fmt::Display for NihoPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

/// x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1), canonicalized.
pub fn pair_to_trinomial(tower: &TowerCtx, pair: &NihoPair) -> TrinomialSpec {
    let (es, et) = pair.exponents();
    TrinomialSpec::monomials(tower.field(), [1, es as i128, et as i128])
}

/// The pair (i/(2i-1), (i-j)/(2i-1)) when 2i - 1 is invertible mod 2^m + 1.
pub fn inverse_exponent_transform(m: u32, i: u64, j: u64) -> Option<NihoPair> {
    let modulus = circle_modulus(m);
    let den = modarith::reduce(2 * i as i128 - 1, modulus);
    let inv = modarith::mod_inv(den as i128, modulus)?;
    let s = modarith::mul_mod(i, inv, modulus);
    let t = modarith::mul_mod(modarith::reduce(i as i128 - j as i128, modulus), inv, modulus);
    Some(NihoPair::new(m, s as i128, t as i128))
}

/// Pairs obtained by substituting x ↦ x^(d^(-1)) for an invertible Niho
/// exponent d of the pair, deduplicated and sorted. The swap is implicit.
pub fn equivalent_pairs(m: u32, pair: &NihoPair) -> Vec<NihoPair> {
    let mut out: Vec<NihoPair> = [
        inverse_exponent_transform(m, pair.s, pair.t),
        inverse_exponent_transform(m, pair.t, pair.s),
    ]
    .into_iter()
    .flatten()
    .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Smallest j in [0, m) with d ≡ 2^j (mod 2^m - 1).
pub fn is_niho_exponent(d: u64, m: u32) -> Option<u32> {
    let modulus = (1u64 << m) - 1;
    if modulus == 1 {
        return Some(0);
    }
    (0..m).find(|&j| d % modulus == (1u64 << j) % modulus)
}
