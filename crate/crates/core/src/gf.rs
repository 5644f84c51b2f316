//! Arithmetic in F_{2^n}, 2 <= n <= 32, with elements packed into a `u32` in
//! the polynomial basis.
//!
//! A [`FieldCtx`] owns the modulus and every derived constant (canonical
//! generator, trace mask, optional log/antilog tables). Contexts are immutable
//! and cheap to clone; elements are plain `Copy` bitmasks that only have
//! meaning relative to the context that produced them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{gf2x, modarith};

/// Largest degree for which log/antilog tables are built.
pub const TABLE_MAX_DEGREE: u32 = 20;

/// Residue class of a polynomial over F_2; bit i is the coefficient of x^i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw bitmask without range checking; see [`FieldCtx::element`].
    pub const fn from_bits(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

struct LogTables {
    // exp[i] = g^i for i in 0..2N, doubled so log sums need no reduction
    exp: Vec<u32>,
    // log[0] is unused
    log: Vec<u32>,
}

struct Inner {
    n: u32,
    modulus: u64,
    order: u64,
    order_factors: Vec<u64>,
    generator: FieldElement,
    trace_mask: u32,
    tables: Option<LogTables>,
}

/// Immutable description of F_{2^n}.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.inner.n)
            .field("modulus", &format_args!("{:#x}", self.inner.modulus))
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.n == other.inner.n && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds F_{2^n}. Without a modulus, the smallest irreducible polynomial of
/// degree n (as an integer) is used.
pub fn make_field(n: u32, modulus: Option<u64>) -> Result<FieldCtx> {
    FieldCtx::new(n, modulus)
}

/// Parses a modulus written as hex (`0x13`, `13`) with bit i = coefficient of x^i.
pub fn parse_modulus_hex(s: &str) -> Result<u64> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("modulus {s:?}: {e}")))
}

pub fn modulus_hex(modulus: u64) -> String {
    format!("{modulus:#x}")
}

impl FieldCtx {
    pub fn new(n: u32, modulus: Option<u64>) -> Result<Self> {
        if !(2..=32).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        let modulus = match modulus {
            Some(f) => {
                let found = gf2x::degree(f).unwrap_or(0);
                if f == 0 || found != n {
                    return Err(Error::DegreeMismatch { modulus: f, expected: n, found });
                }
                if !gf2x::is_irreducible(f) {
                    return Err(Error::ReducibleModulus(f));
                }
                f
            }
            None => gf2x::smallest_irreducible(n),
        };
        let order = (1u64 << n) - 1;
        let mut inner = Inner {
            n,
            modulus,
            order,
            order_factors: modarith::prime_factors(order),
            generator: FieldElement::ONE,
            trace_mask: 0,
            tables: None,
        };
        inner.generator = find_generator(&inner);
        inner.trace_mask = (0..n)
            .filter(|&i| naive_trace(&inner, FieldElement(1 << i)) == 1)
            .fold(0u32, |acc, i| acc | (1 << i));
        if n <= TABLE_MAX_DEGREE {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldCtx { inner: Arc::new(inner) })
    }

    pub fn degree(&self) -> u32 {
        self.inner.n
    }

    pub fn modulus(&self) -> u64 {
        self.inner.modulus
    }

    pub fn modulus_hex(&self) -> String {
        modulus_hex(self.inner.modulus)
    }

    /// 2^n - 1.
    pub fn group_order(&self) -> u64 {
        self.inner.order
    }

    pub fn size(&self) -> u64 {
        self.inner.order + 1
    }

    /// n/2 when n is even.
    pub fn half_degree(&self) -> Option<u32> {
        (self.inner.n % 2 == 0).then_some(self.inner.n / 2)
    }

    /// 2^m - 1 for m = n/2.
    pub fn q_minus(&self) -> Option<u64> {
        self.half_degree().map(|m| (1u64 << m) - 1)
    }

    /// 2^m + 1 for m = n/2.
    pub fn q_plus(&self) -> Option<u64> {
        self.half_degree().map(|m| (1u64 << m) + 1)
    }

    pub fn has_tables(&self) -> bool {
        self.inner.tables.is_some()
    }

    /// Smallest-bitmask element of multiplicative order 2^n - 1.
    pub fn generator(&self) -> FieldElement {
        self.inner.generator
    }

    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits > self.inner.order {
            return Err(Error::ElementOutOfRange { bits, n: self.inner.n });
        }
        Ok(FieldElement(bits as u32))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        (x.0 as u64) <= self.inner.order
    }

    /// All field elements in bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..=self.inner.order).map(|b| FieldElement(b as u32))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElement::ZERO
                } else {
                    FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
                }
            }
            None => self.mul_clmul(a, b),
        }
    }

    /// Shift-and-xor product followed by reduction; never consults tables.
    pub fn mul_clmul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        mul_raw(&self.inner, a, b)
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inner.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                FieldElement(t.exp[((self.inner.order - l) % self.inner.order) as usize])
            }
            None => self.pow_unsigned(a, self.inner.order - 1),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`. Nonzero bases reduce `e` modulo 2^n - 1;
    /// for the zero base `0^0 = 1`, `0^e = 0` for `e > 0`, and negative `e`
    /// is a division by zero.
    pub fn pow(&self, a: FieldElement, e: i128) -> Result<FieldElement> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let e = modarith::reduce(e, self.inner.order);
        Ok(self.pow_nonzero(a, e))
    }

    /// `a^e` for a nonnegative exponent; total, with `0^0 = 1`.
    pub fn pow_u64(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        self.pow_nonzero(a, e % self.inner.order)
    }

    fn pow_nonzero(&self, a: FieldElement, e: u64) -> FieldElement {
        match &self.inner.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                FieldElement(t.exp[modarith::mul_mod(l, e, self.inner.order) as usize])
            }
            None => self.pow_unsigned(a, e),
        }
    }

    fn pow_unsigned(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = mul_raw(&self.inner, acc, base);
            }
            base = mul_raw(&self.inner, base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace Tr_1^n(x) as a bit.
    pub fn trace_abs(&self, x: FieldElement) -> u8 {
        ((x.0 & self.inner.trace_mask).count_ones() & 1) as u8
    }

    /// Tr_1^n computed as the sum of the n conjugates (no precomputed mask).
    pub fn trace_abs_naive(&self, x: FieldElement) -> u8 {
        naive_trace(&self.inner, x)
    }

    /// Relative trace Tr_k^n(x) = sum of x^(2^(k i)) for i < n/k.
    pub fn trace_rel(&self, x: FieldElement, k: u32) -> Result<FieldElement> {
        let n = self.inner.n;
        if k == 0 || n % k != 0 {
            return Err(Error::NotADivisor { k, n });
        }
        let mut acc = FieldElement::ZERO;
        let mut term = x;
        for _ in 0..n / k {
            acc = self.add(acc, term);
            term = self.frobenius(term, k);
        }
        Ok(acc)
    }

    /// x^(2^j).
    pub fn frobenius(&self, x: FieldElement, j: u32) -> FieldElement {
        let mut y = x;
        for _ in 0..j % self.inner.n {
            y = self.square(y);
        }
        y
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(element_order(&self.inner, x))
    }

    /// log_g(x) mod 3 for the canonical generator g.
    pub fn cube_coset_index(&self, x: FieldElement) -> Result<u8> {
        let order = self.inner.order;
        if order % 3 != 0 {
            return Err(Error::NotDivisible(self.inner.n));
        }
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let e = order / 3;
        let target = self.pow_u64(x, e);
        let base = self.pow_u64(self.inner.generator, e);
        let mut probe = FieldElement::ONE;
        for j in 0..3u8 {
            if probe == target {
                return Ok(j);
            }
            probe = self.mul(probe, base);
        }
        unreachable!("x^((2^n-1)/3) is a cube root of unity")
    }
}

fn mul_raw(inner: &Inner, a: FieldElement, b: FieldElement) -> FieldElement {
    let prod = gf2x::clmul(a.0, b.0);
    FieldElement(reduce_product(prod, inner.modulus, inner.n))
}

fn reduce_product(mut prod: u64, modulus: u64, n: u32) -> u32 {
    for i in (n..2 * n).rev() {
        if (prod >> i) & 1 == 1 {
            prod ^= modulus << (i - n);
        }
    }
    prod as u32
}

fn naive_trace(inner: &Inner, x: FieldElement) -> u8 {
    let mut acc = 0u32;
    let mut term = x;
    for _ in 0..inner.n {
        acc ^= term.0;
        term = mul_raw(inner, term, term);
    }
    debug_assert!(acc <= 1, "trace must land in F_2");
    acc as u8
}

fn pow_raw(inner: &Inner, a: FieldElement, mut e: u64) -> FieldElement {
    let mut base = a;
    let mut acc = FieldElement::ONE;
    while e != 0 {
        if e & 1 == 1 {
            acc = mul_raw(inner, acc, base);
        }
        base = mul_raw(inner, base, base);
        e >>= 1;
    }
    acc
}

fn element_order(inner: &Inner, x: FieldElement) -> u64 {
    let mut ord = inner.order;
    for &p in &inner.order_factors {
        while ord % p == 0 && pow_raw(inner, x, ord / p) == FieldElement::ONE {
            ord /= p;
        }
    }
    ord
}

fn find_generator(inner: &Inner) -> FieldElement {
    (2..=inner.order as u32)
        .map(FieldElement)
        .find(|&g| {
            inner
                .order_factors
                .iter()
                .all(|&p| pow_raw(inner, g, inner.order / p) != FieldElement::ONE)
        })
        .unwrap_or(FieldElement::ONE)
}

fn build_tables(inner: &Inner) -> LogTables {
    let order = inner.order as usize;
    let mut exp = vec![0u32; 2 * order];
    let mut log = vec![0u32; order + 1];
    let mut acc = FieldElement::ONE;
    for i in 0..order {
        exp[i] = acc.0;
        exp[i + order] = acc.0;
        log[acc.0 as usize] = i as u32;
        acc = mul_raw(inner, acc, inner.generator);
    }
    LogTables { exp, log }
}
