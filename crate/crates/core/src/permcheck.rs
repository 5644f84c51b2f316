//! Permutation checks: a full-domain scan with an occupancy bitset, and the
//! unit-circle reduction for x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1), which only
//! needs the 2^m + 1 points of U.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::modarith;
use crate::niho::{pair_to_trinomial, NihoPair};
use crate::poly::SparsePoly;
use crate::tower::TowerCtx;

/// Largest extension degree the exhaustive engine accepts.
pub const EXHAUSTIVE_MAX_DEGREE: u32 = 28;

const CHUNK: u32 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Exhaustive,
    UnitCircle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// x != y with f(x) = f(y).
    Collision { x: FieldElement, y: FieldElement },
    /// A point of U where 1 + x^s + x^t vanishes.
    ZeroOnCircle { x: FieldElement },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermReport {
    pub pair: Option<NihoPair>,
    pub method: Method,
    pub is_permutation: bool,
    pub counterexample: Option<Counterexample>,
    pub evaluations: u64,
    #[serde(rename = "elapsed_ms", with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(ms.max(0.0) / 1e3))
    }
}

impl PermReport {
    /// Re-evaluates the counterexample against `poly`.
    pub fn counterexample_holds(&self, tower: Option<&TowerCtx>, poly: &SparsePoly) -> bool {
        match self.counterexample {
            None => self.is_permutation,
            Some(Counterexample::Collision { x, y }) => x != y && poly.eval(x) == poly.eval(y),
            Some(Counterexample::ZeroOnCircle { x }) => {
                let Some(tower) = tower else { return false };
                let Some(pair) = self.pair else { return false };
                let f = tower.field();
                let h = f.add(f.add(FieldElement::ONE, f.pow_u64(x, pair.s)), f.pow_u64(x, pair.t));
                tower.in_unit_circle(x) && h.is_zero()
            }
        }
    }
}

/// Evaluates `poly` on every element and reports the first collision in
/// bitmask order: the smallest y whose image was already hit, paired with
/// the smallest x < y sharing it.
pub fn is_permutation_exhaustive(ctx: &FieldCtx, poly: &SparsePoly) -> Result<PermReport> {
    let start = Instant::now();
    let n = ctx.degree();
    if n > EXHAUSTIVE_MAX_DEGREE {
        return Err(Error::FieldTooLarge(n));
    }
    let size = ctx.size();
    let words: Vec<AtomicU64> = (0..size.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let collided = AtomicBool::new(false);
    let chunks = size.div_ceil(CHUNK as u64) as u32;
    (0..chunks).into_par_iter().for_each(|c| {
        if collided.load(Ordering::Relaxed) {
            return;
        }
        let lo = c * CHUNK;
        let hi = (lo as u64 + CHUNK as u64).min(size) as u32;
        for x in lo..hi {
            let y = poly.eval(FieldElement::from_bits(x)).bits() as usize;
            let bit = 1u64 << (y % 64);
            if words[y / 64].fetch_or(bit, Ordering::Relaxed) & bit != 0 {
                collided.store(true, Ordering::Relaxed);
                return;
            }
        }
    });
    if !collided.into_inner() {
        return Ok(PermReport {
            pair: None,
            method: Method::Exhaustive,
            is_permutation: true,
            counterexample: None,
            evaluations: size,
            elapsed: start.elapsed(),
        });
    }
    let (x, y) = first_collision(ctx, poly);
    Ok(PermReport {
        pair: None,
        method: Method::Exhaustive,
        is_permutation: false,
        counterexample: Some(Counterexample::Collision { x, y }),
        evaluations: y.bits() as u64 + 1,
        elapsed: start.elapsed(),
    })
}

fn first_collision(ctx: &FieldCtx, poly: &SparsePoly) -> (FieldElement, FieldElement) {
    let mut seen = vec![0u64; ctx.size().div_ceil(64) as usize];
    for y in ctx.elements() {
        let v = poly.eval(y).bits() as usize;
        if seen[v / 64] >> (v % 64) & 1 == 1 {
            let target = poly.eval(y);
            let x = ctx.elements().find(|&x| poly.eval(x) == target).expect("image was hit before");
            return (x, y);
        }
        seen[v / 64] |= 1 << (v % 64);
    }
    unreachable!("parallel scan saw a collision")
}

/// Decides whether x^r h(x^s) permutes the field, with d · s = 2^n - 1:
/// gcd(r, s) = 1 and x ↦ x^r h(x)^s permutes the d-th roots of unity.
pub fn zieve_check(ctx: &FieldCtx, r: u64, s_div: u64, h: &SparsePoly) -> Result<bool> {
    let order = ctx.group_order();
    if s_div == 0 || order % s_div != 0 {
        return Err(Error::BadFactorization { d: order.checked_div(s_div).unwrap_or(0), s: s_div, order });
    }
    let d = order / s_div;
    if modarith::gcd(r, s_div) != 1 {
        return Ok(false);
    }
    let step = ctx.pow_u64(ctx.generator(), s_div);
    let mut images = Vec::with_capacity(d as usize);
    let mut x = FieldElement::ONE;
    for _ in 0..d {
        let hx = h.eval(x);
        if hx.is_zero() {
            return Ok(false);
        }
        images.push(ctx.mul(ctx.pow_u64(x, r), ctx.pow_u64(hx, s_div)));
        x = ctx.mul(x, step);
    }
    images.sort_unstable();
    images.dedup();
    Ok(images.len() as u64 == d)
}

/// Checks φ(x) = x (1 + x^s + x^t)^(2^m-1) on U, computing h^(2^m-1) as
/// conj(h)/h. A zero of h on U, or two points of U with the same image,
/// decide non-permutation; a collision is lifted to a pair x != y in
/// F_{2^n} with f(x) = f(y).
pub fn unit_circle_check(tower: &TowerCtx, pair: &NihoPair) -> PermReport {
    let start = Instant::now();
    let f = tower.field();
    let m = tower.m();
    let mut seen: HashMap<FieldElement, usize> = HashMap::with_capacity(tower.unit_circle().len());
    let report = |is_permutation, counterexample, evaluations| PermReport {
        pair: Some(*pair),
        method: Method::UnitCircle,
        is_permutation,
        counterexample,
        evaluations,
        elapsed: start.elapsed(),
    };
    for (k, u) in tower.unit_circle_iter().enumerate() {
        let h = f.add(f.add(FieldElement::ONE, f.pow_u64(u, pair.s)), f.pow_u64(u, pair.t));
        if h.is_zero() {
            return report(false, Some(Counterexample::ZeroOnCircle { x: u }), k as u64 + 1);
        }
        let phi = f.mul(u, f.div(tower.conjugate(h), h).expect("h != 0"));
        if let Some(&j) = seen.get(&phi) {
            let poly = pair_to_trinomial(tower, pair);
            let (x, y) = lift_collision(tower, &poly, j as u64, k as u64);
            return report(false, Some(Counterexample::Collision { x, y }), k as u64 + 1);
        }
        seen.insert(phi, k);
    }
    debug_assert_eq!(seen.len() as u64, (1u64 << m) + 1);
    report(true, None, seen.len() as u64)
}

/// U is enumerated as g^(k(2^m-1)), so g^k is a preimage of the k-th point
/// under x ↦ x^(2^m-1). Equal φ-values force f(g^j)/f(g^k) = c in the
/// subfield, and f(c x) = c f(x).
fn lift_collision(tower: &TowerCtx, poly: &SparsePoly, j: u64, k: u64) -> (FieldElement, FieldElement) {
    let f = tower.field();
    let g = f.generator();
    let x = f.pow_u64(g, j);
    let y = f.pow_u64(g, k);
    let (fx, fy) = (poly.eval(x), poly.eval(y));
    let lifted = if fx.is_zero() || fy.is_zero() {
        y
    } else {
        f.mul(f.div(fx, fy).expect("nonzero"), y)
    };
    (x.min(lifted), x.max(lifted))
}

/// Runs both engines on the pair's trinomial and reports whether they agree.
pub fn cross_validate(tower: &TowerCtx, pair: &NihoPair) -> Result<bool> {
    let poly = pair_to_trinomial(tower, pair);
    let exhaustive = is_permutation_exhaustive(tower.field(), &poly)?;
    Ok(exhaustive.is_permutation == unit_circle_check(tower, pair).is_permutation)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineRow {
    pub m: u32,
    pub s: u64,
    pub t: u64,
    pub exhaustive: bool,
    pub unit_circle: bool,
    pub agree: bool,
}

/// Both engines over every unordered pair 0 <= s <= t <= 2^m, in (s, t) order.
pub fn engine_sweep(tower: &TowerCtx) -> Result<Vec<EngineRow>> {
    let m = tower.m();
    let q = 1u64 << m;
    let pairs: Vec<NihoPair> = (0..=q)
        .flat_map(|s| (s..=q).map(move |t| NihoPair { m, s, t }))
        .collect();
    pairs
        .par_iter()
        .map(|p| {
            let exhaustive = is_permutation_exhaustive(tower.field(), &pair_to_trinomial(tower, p))?.is_permutation;
            let unit_circle = unit_circle_check(tower, p).is_permutation;
            Ok(EngineRow { m, s: p.s, t: p.t, exhaustive, unit_circle, agree: exhaustive == unit_circle })
        })
        .collect()
}
