//! Builds admissible instances of each named family on small fields and
//! verifies them exhaustively, plus two instances that break a hypothesis.
//!
//! cargo run --example known_families

use niho::niho::{family_trinomial, Family, FamilyInstance};
use niho::permcheck::is_permutation_exhaustive;
use niho::{FieldElement, TowerCtx};

fn fe(bits: u32) -> FieldElement {
    FieldElement::from_bits(bits)
}

/// First `count` admissible instances produced by `candidates` at this m.
fn admissible(tower: &TowerCtx, candidates: impl Iterator<Item = Family>, count: usize) -> Vec<FamilyInstance> {
    candidates
        .map(|f| FamilyInstance::new(tower, f))
        .filter(|i| i.conditions.met)
        .take(count)
        .collect()
}

fn main() {
    for m in [2u32, 3, 4, 5, 6] {
        let tower = TowerCtx::with_m(m).unwrap();
        let f = tower.field();
        let elems = || f.elements().skip(1).take(64);
        let mut instances = Vec::new();
        instances.extend(admissible(&tower, elems().map(|a| Family::F1 { a }), 2));
        instances.extend(admissible(&tower, elems().map(|v| Family::F2 { v }), 2));
        instances.extend(admissible(
            &tower,
            (1..8u64).flat_map(|r| [(1, 0, 1), (1, 1, 0), (2, 1, 3), (3, 7, 1)].map(|(a, b, c)| Family::F3 {
                r,
                a: fe(a),
                b: fe(b),
                c: fe(c),
            })),
            2,
        ));
        instances.extend(admissible(&tower, (0..8).map(|k| Family::F4 { k }), 2));
        instances.extend(admissible(&tower, tower.unit_circle_iter().map(|a| Family::F5 { a }), 2));
        instances.extend(admissible(&tower, (1..8).map(|k| Family::F6 { k }), 2));
        instances.extend(admissible(
            &tower,
            elems().flat_map(|a| elems().map(move |b| Family::F7 { a, b })),
            2,
        ));
        instances.extend(admissible(&tower, [Family::F8, Family::F9].into_iter(), 2));

        println!("m = {m}, n = {}", f.degree());
        for inst in &instances {
            let poly = family_trinomial(&tower, inst).unwrap();
            let report = is_permutation_exhaustive(f, &poly).unwrap();
            println!("  {:?}: {} -> {}", inst.family, poly, report.is_permutation);
        }
    }

    // hypotheses broken: a^(2^2k+2^k+1) = 1 for f1, v = 0 for f2
    let tower = TowerCtx::with_m(3).unwrap();
    for family in [Family::F1 { a: FieldElement::ONE }, Family::F2 { v: FieldElement::ZERO }] {
        let inst = FamilyInstance::new(&tower, family);
        let poly = family.expand(&tower).unwrap();
        let report = is_permutation_exhaustive(tower.field(), &poly).unwrap();
        println!("violating {:?} ({}): {} -> {}", family, inst.conditions.reason, poly, report.is_permutation);
    }
}
