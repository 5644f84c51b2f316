use niho::loweq::{quadratic_roots, quadratic_solvable, quartic_no_root_lw, quartic_roots_brute, QuarticLW};
use niho::niho::{equivalent_pairs, pair_to_trinomial};
use niho::permcheck::{is_permutation_exhaustive, unit_circle_check};
use niho::{make_field, FieldElement, NihoPair, SparsePoly, TowerCtx};
use proptest::prelude::*;

fn mask(n: u32) -> u32 {
    if n == 32 { u32::MAX } else { (1u32 << n) - 1 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(n in 2u32..=32, a: u32, b: u32, c: u32) {
        let f = make_field(n, None).unwrap();
        let (a, b, c) = [a, b, c].map(|v| FieldElement::from_bits(v & mask(n))).into();
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul_clmul(a, b));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            prop_assert_eq!(f.pow_u64(a, f.group_order()), FieldElement::ONE);
        }
    }

    #[test]
    fn frobenius_and_trace(n in 2u32..=24, a: u32, b: u32) {
        let f = make_field(n, None).unwrap();
        let (a, b) = (FieldElement::from_bits(a & mask(n)), FieldElement::from_bits(b & mask(n)));
        prop_assert_eq!(f.square(f.add(a, b)), f.add(f.square(a), f.square(b)));
        prop_assert_eq!(f.frobenius(a, n), a);
        prop_assert_eq!(f.trace_abs(f.add(a, b)), f.trace_abs(a) ^ f.trace_abs(b));
        prop_assert_eq!(f.trace_abs(a), f.trace_abs_naive(a));
        prop_assert_eq!(f.trace_abs(f.square(a)), f.trace_abs(a));
    }

    #[test]
    fn tower_structure(m in 1u32..=10, a: u32, b: u32) {
        let t = TowerCtx::with_m(m).unwrap();
        let f = t.field();
        let (a, b) = (FieldElement::from_bits(a & mask(2 * m)), FieldElement::from_bits(b & mask(2 * m)));
        prop_assert_eq!(t.conjugate(t.conjugate(a)), a);
        prop_assert!(t.in_subfield(t.norm(a)));
        prop_assert!(t.in_subfield(f.add(a, t.conjugate(a))));
        if !a.is_zero() && !b.is_zero() {
            let u = f.div(t.conjugate(a), a).unwrap();
            let v = f.div(t.conjugate(b), b).unwrap();
            prop_assert!(t.in_unit_circle(u));
            prop_assert!(t.in_unit_circle(f.mul(u, v)));
            prop_assert_eq!(t.conjugate(u), f.inv(u).unwrap());
        }
    }

    #[test]
    fn quadratic_roots_are_roots(n in 2u32..=16, a: u32, b: u32) {
        let f = make_field(n, None).unwrap();
        let (a, b) = (FieldElement::from_bits(a & mask(n)), FieldElement::from_bits(b & mask(n)));
        prop_assume!(!a.is_zero());
        let roots = quadratic_roots(&f, a, b);
        for &x in &roots {
            prop_assert!(f.add(f.add(f.square(x), f.mul(a, x)), b).is_zero());
        }
        prop_assert_eq!(roots.len(), if quadratic_solvable(&f, a, b).unwrap() { 2 } else { 0 });
    }

    #[test]
    fn certificates_are_sound(m in 2u32..=7, i: usize, j: usize, k: usize) {
        let t = TowerCtx::with_m(m).unwrap();
        let sub = t.subfield_elements();
        let pick = |r: usize| sub[1 + r % (sub.len() - 1)];
        let q = QuarticLW::new(&t, sub[i % sub.len()], pick(j), pick(k)).unwrap();
        let cert = quartic_no_root_lw(&t, &q).unwrap();
        if cert.verdict.certifies_no_root() {
            prop_assert!(quartic_roots_brute(&t, &q).is_empty());
        }
    }

    #[test]
    fn engines_agree_and_counterexamples_hold(m in 2u32..=6, s: u64, u: u64) {
        let t = TowerCtx::with_m(m).unwrap();
        let pair = NihoPair::new(m, s as i128, u as i128);
        let poly = pair_to_trinomial(&t, &pair);
        let ex = is_permutation_exhaustive(t.field(), &poly).unwrap();
        let uc = unit_circle_check(&t, &pair);
        prop_assert_eq!(ex.is_permutation, uc.is_permutation);
        prop_assert!(ex.counterexample_holds(None, &poly));
        prop_assert!(uc.counterexample_holds(Some(&t), &poly));
        if ex.is_permutation {
            prop_assert_eq!(ex.evaluations, t.field().size());
            prop_assert_eq!(uc.evaluations, t.unit_circle_order());
        }
    }

    #[test]
    fn transforms_preserve_verdict(m in 2u32..=7, s: u64, u: u64) {
        let t = TowerCtx::with_m(m).unwrap();
        let pair = NihoPair::new(m, s as i128, u as i128);
        let verdict = unit_circle_check(&t, &pair).is_permutation;
        for other in equivalent_pairs(m, &pair) {
            prop_assert_eq!(unit_circle_check(&t, &other).is_permutation, verdict, "{} -> {}", pair, other);
        }
    }

    #[test]
    fn composition_with_coprime_monomial(m in 2u32..=4, s: u64, u: u64, e in 1u64..256) {
        let t = TowerCtx::with_m(m).unwrap();
        let f = t.field();
        prop_assume!(niho::modarith::gcd(e, f.group_order()) == 1);
        let pair = NihoPair::new(m, s as i128, u as i128);
        let poly = pair_to_trinomial(&t, &pair);
        if is_permutation_exhaustive(f, &poly).unwrap().is_permutation {
            let composed = poly.compose_monomial(e);
            prop_assert!(is_permutation_exhaustive(f, &composed).unwrap().is_permutation);
            for x in f.elements() {
                prop_assert_eq!(composed.eval(x), poly.eval(f.pow_u64(x, e)));
            }
        }
    }
}

#[test]
fn monomial_permutation_iff_coprime() {
    let f = make_field(6, None).unwrap();
    for e in 1..63u64 {
        let p = SparsePoly::monomials(&f, [e as i128]);
        let pp = is_permutation_exhaustive(&f, &p).unwrap().is_permutation;
        assert_eq!(pp, niho::modarith::gcd(e, 63) == 1, "x^{e}");
    }
}
