//! Named families of permutation trinomials over F_{2^{2m}}: the nine known
//! classes f1..f9, the four new Niho pairs, their multiplied-out variants
//! x^((q+1)k) · f(x), and single rows of the table of known pairs.
//!
//! Hypotheses are evaluated from the parameters every time an instance is
//! built; nothing is taken on trust from the caller.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::table1::{k_minus_k_odd_condition, Table1Row};
use super::{circle_modulus, pair_to_trinomial, Fraction, NihoPair};
use crate::error::{Error, Result};
use crate::gf::{parse_modulus_hex, FieldElement};
use crate::modarith;
use crate::poly::TrinomialSpec;
use crate::tower::TowerCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    T3,
    T4,
    T5,
    T6,
    C1,
    C2,
    C3,
    C4,
    Table1Row,
}

impl FamilyId {
    pub const ALL: [FamilyId; 18] = [
        FamilyId::F1,
        FamilyId::F2,
        FamilyId::F3,
        FamilyId::F4,
        FamilyId::F5,
        FamilyId::F6,
        FamilyId::F7,
        FamilyId::F8,
        FamilyId::F9,
        FamilyId::T3,
        FamilyId::T4,
        FamilyId::T5,
        FamilyId::T6,
        FamilyId::C1,
        FamilyId::C2,
        FamilyId::C3,
        FamilyId::C4,
        FamilyId::Table1Row,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::F1 => "F1",
            FamilyId::F2 => "F2",
            FamilyId::F3 => "F3",
            FamilyId::F4 => "F4",
            FamilyId::F5 => "F5",
            FamilyId::F6 => "F6",
            FamilyId::F7 => "F7",
            FamilyId::F8 => "F8",
            FamilyId::F9 => "F9",
            FamilyId::T3 => "T3",
            FamilyId::T4 => "T4",
            FamilyId::T5 => "T5",
            FamilyId::T6 => "T6",
            FamilyId::C1 => "C1",
            FamilyId::C2 => "C2",
            FamilyId::C3 => "C3",
            FamilyId::C4 => "C4",
            FamilyId::Table1Row => "TABLE1_ROW",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == up)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// A family together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// x^(2^2k+1) + (ax)^(2^k+1) + a x^2 with n = 3k.
    F1 { a: FieldElement },
    /// x^(2^2k+1) + x^(2^k+1) + v x with n = 3k.
    F2 { v: FieldElement },
    /// x^r h(x^s), s = (2^n-1)/3, h(y) = a y^2 + b y + c.
    F3 { r: u64, a: FieldElement, b: FieldElement, c: FieldElement },
    F4 { k: u64 },
    F5 { a: FieldElement },
    F6 { k: u64 },
    F7 { a: FieldElement, b: FieldElement },
    F8,
    F9,
    T3,
    T4,
    T5,
    T6,
    C1 { k: u64 },
    C2 { k: u64 },
    C3 { k: u64 },
    C4 { k: u64 },
    Table1 { row: Table1Row, k: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub met: bool,
    pub reason: String,
}

impl Conditions {
    fn from_checks(checks: &[(bool, String)]) -> Self {
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, why)) => Conditions { met: false, reason: format!("fails: {why}") },
            None => Conditions {
                met: true,
                reason: checks.iter().map(|(_, s)| s.as_str()).collect::<Vec<_>>().join("; "),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: Family,
    pub conditions: Conditions,
}

impl FamilyInstance {
    pub fn new(tower: &TowerCtx, family: Family) -> Self {
        let conditions = family.check(tower);
        FamilyInstance { family, conditions }
    }

    pub fn id(&self) -> FamilyId {
        self.family.id()
    }
}

/// Expands an instance whose hypotheses hold.
pub fn family_trinomial(tower: &TowerCtx, instance: &FamilyInstance) -> Result<TrinomialSpec> {
    // recomputed: the stored flag may come from another field
    let conditions = instance.family.check(tower);
    if !conditions.met {
        return Err(Error::ConditionViolated {
            family: instance.family.id().to_string(),
            reason: conditions.reason,
        });
    }
    instance.family.expand(tower)
}

impl Family {
    pub fn id(&self) -> FamilyId {
        match self {
            Family::F1 { .. } => FamilyId::F1,
            Family::F2 { .. } => FamilyId::F2,
            Family::F3 { .. } => FamilyId::F3,
            Family::F4 { .. } => FamilyId::F4,
            Family::F5 { .. } => FamilyId::F5,
            Family::F6 { .. } => FamilyId::F6,
            Family::F7 { .. } => FamilyId::F7,
            Family::F8 => FamilyId::F8,
            Family::F9 => FamilyId::F9,
            Family::T3 => FamilyId::T3,
            Family::T4 => FamilyId::T4,
            Family::T5 => FamilyId::T5,
            Family::T6 => FamilyId::T6,
            Family::C1 { .. } => FamilyId::C1,
            Family::C2 { .. } => FamilyId::C2,
            Family::C3 { .. } => FamilyId::C3,
            Family::C4 { .. } => FamilyId::C4,
            Family::Table1 { .. } => FamilyId::Table1Row,
        }
    }

    /// Builds a family from an id and `name=value` parameters (field
    /// elements in hex, integers in decimal).
    pub fn from_params(id: FamilyId, params: &BTreeMap<String, String>) -> Result<Self> {
        let int = |name: &str| -> Result<u64> {
            let v = params.get(name).ok_or_else(|| Error::Parse(format!("{id} needs parameter {name}")))?;
            v.parse().map_err(|_| Error::Parse(format!("parameter {name}={v:?} is not an integer")))
        };
        let elem = |name: &str| -> Result<FieldElement> {
            let v = params.get(name).ok_or_else(|| Error::Parse(format!("{id} needs parameter {name}")))?;
            let bits = parse_modulus_hex(v)?;
            u32::try_from(bits)
                .map(FieldElement::from_bits)
                .map_err(|_| Error::Parse(format!("parameter {name}={v:?} too wide")))
        };
        Ok(match id {
            FamilyId::F1 => Family::F1 { a: elem("a")? },
            FamilyId::F2 => Family::F2 { v: elem("v")? },
            FamilyId::F3 => Family::F3 { r: int("r")?, a: elem("a")?, b: elem("b")?, c: elem("c")? },
            FamilyId::F4 => Family::F4 { k: int("k")? },
            FamilyId::F5 => Family::F5 { a: elem("a")? },
            FamilyId::F6 => Family::F6 { k: int("k")? },
            FamilyId::F7 => Family::F7 { a: elem("a")?, b: elem("b")? },
            FamilyId::F8 => Family::F8,
            FamilyId::F9 => Family::F9,
            FamilyId::T3 => Family::T3,
            FamilyId::T4 => Family::T4,
            FamilyId::T5 => Family::T5,
            FamilyId::T6 => Family::T6,
            FamilyId::C1 => Family::C1 { k: int("k")? },
            FamilyId::C2 => Family::C2 { k: int("k")? },
            FamilyId::C3 => Family::C3 { k: int("k")? },
            FamilyId::C4 => Family::C4 { k: int("k")? },
            FamilyId::Table1Row => {
                let row_name = params.get("row").ok_or_else(|| Error::Parse("TABLE1_ROW needs parameter row".into()))?;
                let row = Table1Row::ALL
                    .into_iter()
                    .find(|r| r.id().eq_ignore_ascii_case(row_name))
                    .ok_or_else(|| Error::Parse(format!("unknown table row {row_name:?}")))?;
                let k = match row {
                    Table1Row::F6 => Some(int("k")?),
                    _ => None,
                };
                Family::Table1 { row, k }
            }
        })
    }

    /// The Niho pair when the family is an instance of x + x^(s(q-1)+1) + x^(t(q-1)+1).
    pub fn niho_pair(&self, tower: &TowerCtx) -> Option<NihoPair> {
        let m = tower.m();
        let fr = |a: Fraction, b: Fraction| NihoPair::from_fractions(m, a, b).ok();
        match *self {
            Family::F6 { k } => Some(NihoPair::new(m, k as i128, -(k as i128))),
            Family::F8 => fr(Fraction::int(1), Fraction::new(-1, 2)),
            Family::T3 => fr(Fraction::new(-1, 3), Fraction::new(4, 3)),
            Family::T4 => fr(Fraction::int(3), Fraction::int(-1)),
            Family::T5 => fr(Fraction::new(-2, 3), Fraction::new(5, 3)),
            Family::T6 => fr(Fraction::new(1, 5), Fraction::new(4, 5)),
            Family::F5 { a } if a == FieldElement::ONE => Some(NihoPair::new(m, 2, -1)),
            Family::Table1 { row, k } => {
                let (s, t) = row.pair_fractions(k);
                fr(s, t)
            }
            _ => None,
        }
    }

    /// Evaluates the family's hypotheses on this tower.
    pub fn check(&self, tower: &TowerCtx) -> Conditions {
        let f = tower.field();
        let m = tower.m();
        let n = f.degree();
        let q = 1u64 << m;
        let chk = |ok: bool, s: String| (ok, s);
        let checks: Vec<(bool, String)> = match *self {
            Family::F1 { a } => {
                let mut c = vec![chk(n % 3 == 0, format!("3 | n (n = {n})"))];
                if n % 3 == 0 {
                    let k = n / 3;
                    let e = (1u64 << (2 * k)) + (1u64 << k) + 1;
                    c.push(chk(f.pow_u64(a, e) != FieldElement::ONE, format!("a^(2^2k+2^k+1) != 1 (k = {k})")));
                }
                c
            }
            Family::F2 { v } => {
                let mut c = vec![chk(n % 3 == 0, format!("3 | n (n = {n})")), chk(!v.is_zero(), "v != 0".into())];
                if n % 3 == 0 {
                    let k = n / 3;
                    c.push(chk(f.frobenius(v, k) == v, format!("v in F_2^{k}")));
                }
                c
            }
            Family::F3 { r, a, b, c } => {
                let s = f.group_order() / 3;
                let w = f.pow_u64(f.generator(), s);
                let h = |y: FieldElement| f.add(f.add(f.mul(a, f.square(y)), f.mul(b, y)), c);
                let hs = [h(FieldElement::ONE), h(w), h(f.square(w))];
                let mut checks = vec![
                    chk(r > 0, "r > 0".into()),
                    chk(modarith::gcd(r, s) == 1, format!("gcd(r, {s}) = 1")),
                    chk(hs.iter().all(|v| !v.is_zero()), "h(w^i) != 0 for i = 0,1,2".into()),
                ];
                if hs.iter().all(|v| !v.is_zero()) {
                    let l1 = f.cube_coset_index(f.div(hs[0], hs[1]).expect("nonzero")).expect("n even");
                    let l2 = f.cube_coset_index(f.div(hs[1], hs[2]).expect("nonzero")).expect("n even");
                    checks.push(chk(l1 == l2, format!("log(h(1)/h(w)) = log(h(w)/h(w^2)) mod 3 ({l1} vs {l2})")));
                    checks.push(chk(l1 as u64 != r % 3, format!("log(h(1)/h(w)) != r mod 3 ({l1} vs {})", r % 3)));
                }
                checks
            }
            Family::F4 { k } => {
                vec![chk(modarith::gcd(2 * k + 3, q - 1) == 1, format!("gcd(2k+3, 2^m-1) = 1 (k = {k})"))]
            }
            Family::F5 { a } => vec![chk(tower.in_unit_circle(a), "a^(2^m+1) = 1".into())],
            Family::F6 { k } => vec![
                chk(k > 0, "k > 0".into()),
                chk(m % 2 == 0 || k_minus_k_odd_condition(m, k), "m even, or exp3(k) >= exp3(2^m+1)".into()),
            ],
            Family::F7 { a, b } => {
                if a.is_zero() || b.is_zero() {
                    vec![chk(false, "ab != 0".into())]
                } else {
                    vec![chk(f7_condition(tower, a, b), "one of the two coefficient conditions".into())]
                }
            }
            Family::F8 => vec![chk(m % 3 != 0, "m != 0 mod 3".into())],
            Family::F9 => vec![chk(m % 2 == 1, "m odd".into())],
            Family::T3 | Family::T4 | Family::T5 => vec![chk(m % 2 == 0, "m even".into())],
            Family::T6 => vec![chk(modarith::gcd(5, q + 1) == 1, "gcd(5, 2^m+1) = 1".into())],
            Family::C1 { k } | Family::C2 { k } | Family::C3 { k } => vec![
                chk(k > 0, "k > 0".into()),
                chk(modarith::gcd(2 * k + 1, q - 1) == 1, format!("gcd(2k+1, q-1) = 1 (k = {k})")),
                chk(m % 2 == 0, "m even".into()),
            ],
            Family::C4 { k } => vec![
                chk(k > 0, "k > 0".into()),
                chk(modarith::gcd(2 * k + 1, q - 1) == 1, format!("gcd(2k+1, q-1) = 1 (k = {k})")),
                chk(modarith::gcd(5, q + 1) == 1, "gcd(5, q+1) = 1".into()),
            ],
            Family::Table1 { row, k } => {
                let (s, t) = row.pair_fractions(k);
                let defined = NihoPair::from_fractions(m, s, t).is_ok();
                vec![
                    chk(defined, format!("{} exists modulo 2^m+1", row.label())),
                    chk(row.condition(m, k), row.condition_text().to_string()),
                ]
            }
        };
        Conditions::from_checks(&checks)
    }

    /// Expands the polynomial without checking hypotheses. Fails only when
    /// the shape itself is undefined on this field.
    pub fn expand(&self, tower: &TowerCtx) -> Result<TrinomialSpec> {
        let f = tower.field();
        let m = tower.m();
        let n = f.degree();
        let q = 1i128 << m;
        let one = FieldElement::ONE;
        let undefined = |why: &str| Error::PreconditionViolated(format!("{}: {why}", self.id()));
        let poly = match *self {
            Family::F1 { a } => {
                if n % 3 != 0 {
                    return Err(undefined("needs 3 | n"));
                }
                let k = n / 3;
                let ak = f.pow_u64(a, (1u64 << k) + 1);
                TrinomialSpec::new(f, [(one, (1i128 << (2 * k)) + 1), (ak, (1i128 << k) + 1), (a, 2)])
            }
            Family::F2 { v } => {
                if n % 3 != 0 {
                    return Err(undefined("needs 3 | n"));
                }
                let k = n / 3;
                TrinomialSpec::new(f, [(one, (1i128 << (2 * k)) + 1), (one, (1i128 << k) + 1), (v, 1)])
            }
            Family::F3 { r, a, b, c } => {
                let s = (f.group_order() / 3) as i128;
                let r = r as i128;
                TrinomialSpec::new(f, [(a, r + 2 * s), (b, r + s), (c, r)])
            }
            Family::F4 { k } => {
                let base = k as i128 * (q + 1);
                TrinomialSpec::monomials(f, [base + 3, base + q + 2, base + 3 * q])
            }
            Family::F5 { a } => {
                let a2 = f.pow_u64(a, 1u64 << (m - 1));
                TrinomialSpec::new(f, [(one, 1), (a, 2 * (q - 1) + 1), (a2, q * (q - 1) + 1)])
            }
            Family::F6 { k } => {
                let k = k as i128;
                TrinomialSpec::monomials(f, [1, k * (q - 1) + 1, -k * (q - 1) + 1])
            }
            Family::F7 { a, b } => TrinomialSpec::new(f, [(a, 1), (b, q), (one, 2 * (q - 1) + 1)]),
            Family::F8 => TrinomialSpec::monomials(f, [1, q, (q / 2) * (q - 1) + 1]),
            Family::F9 => TrinomialSpec::monomials(f, [1, q + 2, (q / 2) * (q + 1) + 1]),
            Family::T3 | Family::T4 | Family::T5 | Family::T6 | Family::Table1 { .. } => {
                let pair = self.niho_pair(tower).ok_or_else(|| undefined("pair does not exist modulo 2^m+1"))?;
                pair_to_trinomial(tower, &pair)
            }
            Family::C1 { k } | Family::C2 { k } | Family::C3 { k } | Family::C4 { k } => {
                let base = (q + 1) * k as i128;
                let exps: [i128; 3] = match *self {
                    Family::C1 { .. } | Family::C2 { .. } | Family::C3 { .. } if m % 2 != 0 => {
                        return Err(undefined("needs even m"));
                    }
                    Family::C1 { .. } => [base + 1, base + (2 * q * q - q + 2) / 3, base + (q * q + 4 * q - 2) / 3],
                    Family::C2 { .. } => [base + 1, base + 3 * q - 2, base - q + 2],
                    Family::C3 { .. } => [base + 1, base + 1 + (q - 1) * (q - 1) / 3, base + (2 * q * q + 5 * q - 4) / 3],
                    _ => {
                        let l = modarith::mod_inv(5, circle_modulus(m)).ok_or_else(|| undefined("5 not invertible mod q+1"))?
                            as i128;
                        [base + 1, base + 1 + l * (q - 1), base + 1 + 4 * l * (q - 1)]
                    }
                };
                TrinomialSpec::monomials(f, exps)
            }
        };
        Ok(poly)
    }
}

fn f7_condition(tower: &TowerCtx, a: FieldElement, b: FieldElement) -> bool {
    let f = tower.field();
    let q = 1i128 << tower.m();
    let b_pow = f.pow(b, 1 - q).expect("b != 0");
    if a == b_pow {
        let w = f.pow(b, -1 - q).expect("b != 0");
        tower.subfield_trace(w) == Ok(0)
    } else {
        let ab2 = f.div(a, f.square(b)).expect("b != 0");
        let rel = f.add(
            f.add(f.square(b), f.mul(f.square(a), f.pow(b, q - 1).expect("b != 0"))),
            a,
        );
        tower.in_subfield(ab2) && tower.subfield_trace(ab2) == Ok(0) && rel.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f8_at_m4() {
        let t = TowerCtx::with_m(4).unwrap();
        let inst = FamilyInstance::new(&t, Family::F8);
        assert!(inst.conditions.met);
        assert_eq!(family_trinomial(&t, &inst).unwrap().exponents(), vec![1, 16, 121]);
    }

    #[test]
    fn f8_condition_violated_at_m3() {
        let t = TowerCtx::with_m(3).unwrap();
        let inst = FamilyInstance::new(&t, Family::F8);
        assert!(!inst.conditions.met);
        assert!(matches!(family_trinomial(&t, &inst), Err(Error::ConditionViolated { .. })));
    }

    #[test]
    fn c4_at_m3() {
        let t = TowerCtx::with_m(3).unwrap();
        let inst = FamilyInstance::new(&t, Family::C4 { k: 1 });
        assert!(inst.conditions.met);
        assert_eq!(family_trinomial(&t, &inst).unwrap().exponents(), vec![3, 10, 24]);
    }

    #[test]
    fn f6_full_period_collapses_to_identity() {
        let t = TowerCtx::with_m(3).unwrap();
        let inst = FamilyInstance::new(&t, Family::F6 { k: 9 });
        assert!(inst.conditions.met);
        assert_eq!(family_trinomial(&t, &inst).unwrap().exponents(), vec![1]);
    }

    #[test]
    fn f6_is_the_k_minus_k_pair() {
        let t = TowerCtx::with_m(4).unwrap();
        for k in 1..=16u64 {
            let fam = Family::F6 { k };
            let pair = fam.niho_pair(&t).unwrap();
            assert_eq!(fam.expand(&t).unwrap(), pair_to_trinomial(&t, &pair));
        }
    }

    #[test]
    fn corollary_shapes_match_shifted_pairs() {
        // x^((q+1)k) f(x) for the pair trinomial f
        let t = TowerCtx::with_m(4).unwrap();
        let f = t.field();
        let k = 2u64;
        let shift = 17 * k;
        for (cor, base) in [(Family::C1 { k }, Family::T3), (Family::C2 { k }, Family::T4), (Family::C3 { k }, Family::T5), (Family::C4 { k }, Family::T6)] {
            let base_poly = base.expand(&t).unwrap();
            let shifted = TrinomialSpec::monomials(f, base_poly.exponents().iter().map(|&e| (e + shift) as i128));
            assert_eq!(cor.expand(&t).unwrap(), shifted, "{:?}", cor.id());
        }
    }

    #[test]
    fn parse_family_ids() {
        assert_eq!("f3".parse::<FamilyId>().unwrap(), FamilyId::F3);
        assert_eq!("TABLE1_ROW".parse::<FamilyId>().unwrap(), FamilyId::Table1Row);
        assert!("F10".parse::<FamilyId>().is_err());
        let mut p = BTreeMap::new();
        p.insert("k".to_string(), "3".to_string());
        assert_eq!(Family::from_params(FamilyId::C2, &p).unwrap(), Family::C2 { k: 3 });
        assert!(Family::from_params(FamilyId::F5, &p).is_err());
    }

    #[test]
    fn f1_f2_need_n_divisible_by_three() {
        let t = TowerCtx::with_m(2).unwrap();
        assert!(!Family::F2 { v: FieldElement::ONE }.check(&t).met);
        assert!(Family::F2 { v: FieldElement::ONE }.expand(&t).is_err());
        let t = TowerCtx::with_m(3).unwrap();
        assert!(Family::F2 { v: FieldElement::ONE }.check(&t).met);
        assert!(!Family::F2 { v: FieldElement::ZERO }.check(&t).met);
        assert!(!Family::F1 { a: FieldElement::ONE }.check(&t).met);
    }
}
