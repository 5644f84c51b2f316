//! Acceptance run: each criterion prints one PASS/FAIL line with its
//! elapsed time against the budget. Oracles in this file avoid the library's
//! log tables and closed forms: powers use shift-and-xor products, fraction
//! residues come from brute-force search, and permutation checks sort images.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use niho::loweq::{quadratic_criterion_sweep, verify_lemma_quartics, QuarticFamily};
use niho::niho::{family_trinomial, pair_to_trinomial, resolve_fraction, Family, FamilyInstance};
use niho::permcheck::{engine_sweep, is_permutation_exhaustive, unit_circle_check};
use niho::survey::{inhomogeneous_orbits, rows_to_csv, search_pairs, verify_table1};
use niho::{FieldCtx, FieldElement, NihoPair, SparsePoly, TowerCtx};

fn pow_clmul(f: &FieldCtx, x: FieldElement, mut e: u64) -> FieldElement {
    let (mut acc, mut base) = (FieldElement::ONE, x);
    while e > 0 {
        if e & 1 == 1 {
            acc = f.mul_clmul(acc, base);
        }
        base = f.mul_clmul(base, base);
        e >>= 1;
    }
    acc
}

/// Permutation test by sorting all images, evaluated without tables.
fn oracle_is_pp(f: &FieldCtx, poly: &SparsePoly) -> bool {
    let mut img: Vec<u32> = f
        .elements()
        .map(|x| {
            poly.terms().iter().fold(0u32, |acc, t| {
                let xe = if t.exp == 0 { FieldElement::ONE } else { pow_clmul(f, x, t.exp) };
                acc ^ f.mul_clmul(t.coef, xe).bits()
            })
        })
        .collect();
    img.sort_unstable();
    img.dedup();
    img.len() as u64 == f.size()
}

/// a/b mod 2^m + 1 by searching for the unique r with b r = a.
fn oracle_fraction(a: i64, b: i64, m: u32) -> Option<u64> {
    let c = (1i64 << m) + 1;
    let hits: Vec<i64> = (0..c).filter(|r| (b * r - a).rem_euclid(c) == 0).collect();
    (hits.len() == 1).then(|| hits[0] as u64)
}

fn oracle_pair(m: u32, s: (i64, i64), t: (i64, i64)) -> Option<NihoPair> {
    Some(NihoPair::new(m, oracle_fraction(s.0, s.1, m)? as i128, oracle_fraction(t.0, t.1, m)? as i128))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond { Ok(()) } else { Err(msg()) }
}

/// Both engines plus the sorting oracle agree that the pair permutes.
fn pair_verifies_both(m: u32, pair: NihoPair) -> Check {
    let tower = TowerCtx::with_m(m).map_err(|e| e.to_string())?;
    let poly = pair_to_trinomial(&tower, &pair);
    let uc = unit_circle_check(&tower, &pair).is_permutation;
    let ex = is_permutation_exhaustive(tower.field(), &poly).map_err(|e| e.to_string())?.is_permutation;
    ensure(uc && ex, || format!("m={m} {pair}: unit circle {uc}, exhaustive {ex}"))?;
    if tower.field().degree() <= 12 {
        ensure(oracle_is_pp(tower.field(), &poly), || format!("m={m} {pair}: sorting oracle disagrees"))?;
    }
    Ok(())
}

fn new_pair_criterion(s: (i64, i64), t: (i64, i64)) -> Check {
    for m in [2u32, 4, 6, 8] {
        let pair = oracle_pair(m, s, t).ok_or_else(|| format!("m={m}: fraction undefined"))?;
        let lib = NihoPair::new(
            m,
            resolve_fraction(s.0, s.1, m).map_err(|e| e.to_string())? as i128,
            resolve_fraction(t.0, t.1, m).map_err(|e| e.to_string())? as i128,
        );
        ensure(lib == pair, || format!("m={m}: residues {lib} vs oracle {pair}"))?;
        pair_verifies_both(m, pair)?;
    }
    Ok(())
}

fn c1() -> Check {
    // m = 2 collapses to f(x) = x
    let t = TowerCtx::with_m(2).unwrap();
    let p = pair_to_trinomial(&t, &oracle_pair(2, (-1, 3), (4, 3)).unwrap());
    ensure(p.exponents() == vec![1], || format!("m=2 trinomial is {p}"))?;
    new_pair_criterion((-1, 3), (4, 3))
}

fn c2() -> Check {
    new_pair_criterion((3, 1), (-1, 1))
}

fn c3() -> Check {
    new_pair_criterion((-2, 3), (5, 3))
}

fn c4() -> Check {
    for m in 1..=10u32 {
        let circle = (1u64 << m) + 1;
        if gcd(5, circle) == 1 {
            let pair = oracle_pair(m, (1, 5), (4, 5)).ok_or_else(|| format!("m={m}: oracle undefined"))?;
            let lib = (resolve_fraction(1, 5, m).ok(), resolve_fraction(4, 5, m).ok());
            ensure(lib == (oracle_fraction(1, 5, m), oracle_fraction(4, 5, m)), || format!("m={m}: residues {lib:?}"))?;
            pair_verifies_both(m, pair)?;
        } else {
            ensure(m % 4 == 2, || format!("m={m}: gcd(5, 2^m+1) != 1 outside m = 2 mod 4"))?;
            ensure(resolve_fraction(1, 5, m).is_err(), || format!("m={m}: 1/5 should not resolve"))?;
        }
    }
    Ok(())
}

fn c5() -> Check {
    for m in 2..=8u32 {
        let tower = TowerCtx::with_m(m).unwrap();
        let rows = verify_table1(&tower).map_err(|e| e.to_string())?;
        ensure(rows.iter().map(|r| r.source.split('(').next().unwrap().to_string()).collect::<BTreeSet<_>>().len() == 7, || {
            format!("m={m}: missing table rows")
        })?;
        for r in rows.iter().filter(|r| r.condition_ok) {
            ensure(r.claims_hold(), || format!("m={m} {} {}: claimed pair not PP", r.source, r.label))?;
            let claimed: Vec<NihoPair> = r.pair.into_iter().chain(r.equivalents.iter().filter_map(|e| e.pair)).collect();
            for p in claimed {
                let poly = pair_to_trinomial(&tower, &p);
                let ex = is_permutation_exhaustive(tower.field(), &poly).map_err(|e| e.to_string())?;
                ensure(ex.is_permutation, || format!("m={m} {} {p}: exhaustive says not PP", r.source))?;
            }
        }
    }
    Ok(())
}

fn candidates(tower: &TowerCtx, id: &str) -> Vec<Family> {
    let f = tower.field();
    let small: Vec<FieldElement> = f.elements().skip(1).take(48).collect();
    match id {
        "F1" => small.iter().map(|&a| Family::F1 { a }).collect(),
        "F2" => small.iter().map(|&v| Family::F2 { v }).collect(),
        "F3" => {
            let coefs: Vec<FieldElement> = f.elements().take(16).collect();
            let mut out = Vec::new();
            for r in 1..12u64 {
                for &a in &coefs[1..] {
                    out.extend(coefs.iter().map(|&b| Family::F3 { r, a, b, c: FieldElement::ONE }));
                }
            }
            out
        }
        "F4" => (0..10).map(|k| Family::F4 { k }).collect(),
        "F5" => tower.unit_circle_iter().map(|a| Family::F5 { a }).collect(),
        "F6" => (1..10).map(|k| Family::F6 { k }).collect(),
        "F7" => small
            .iter()
            .flat_map(|&a| small.iter().map(move |&b| Family::F7 { a, b }))
            .collect(),
        "F8" => vec![Family::F8],
        "F9" => vec![Family::F9],
        _ => unreachable!(),
    }
}

fn c6() -> Check {
    for id in ["F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9"] {
        // first admissible instance on each field, falling back to a second
        // instance on the same field when only one field qualifies
        let mut verified: Vec<(u32, Family)> = Vec::new();
        for m in 2..=8u32 {
            let tower = TowerCtx::with_m(m).unwrap();
            let admissible = candidates(&tower, id).into_iter().filter(|&fam| FamilyInstance::new(&tower, fam).conditions.met);
            verified.extend(admissible.take(2).map(|fam| (m, fam)));
        }
        let fields: BTreeSet<u32> = verified.iter().map(|(m, _)| *m).collect();
        let chosen: Vec<(u32, Family)> = if fields.len() >= 2 {
            fields.iter().take(2).map(|&m| *verified.iter().find(|(v, _)| *v == m).unwrap()).collect()
        } else {
            verified.into_iter().take(2).collect()
        };
        ensure(chosen.len() == 2, || format!("{id}: fewer than two admissible instances with n <= 16"))?;
        for (m, fam) in chosen {
            let tower = TowerCtx::with_m(m).unwrap();
            let poly = family_trinomial(&tower, &FamilyInstance::new(&tower, fam)).map_err(|e| e.to_string())?;
            let ex = is_permutation_exhaustive(tower.field(), &poly).map_err(|e| e.to_string())?;
            ensure(ex.is_permutation, || format!("{id} m={m} {fam:?}: {poly} not PP"))?;
            if tower.field().degree() <= 12 {
                ensure(oracle_is_pp(tower.field(), &poly), || format!("{id} {fam:?}: oracle disagrees"))?;
            }
        }
    }
    let tower = TowerCtx::with_m(3).unwrap();
    for fam in [Family::F1 { a: FieldElement::ONE }, Family::F2 { v: FieldElement::ZERO }] {
        let inst = FamilyInstance::new(&tower, fam);
        ensure(!inst.conditions.met, || format!("{fam:?} should violate its hypothesis"))?;
        let poly = fam.expand(&tower).map_err(|e| e.to_string())?;
        let ex = is_permutation_exhaustive(tower.field(), &poly).map_err(|e| e.to_string())?;
        ensure(!ex.is_permutation && !oracle_is_pp(tower.field(), &poly), || format!("{fam:?} unexpectedly PP"))?;
    }
    Ok(())
}

fn c7() -> Check {
    let mut count = 0;
    for m in [2u32, 3, 4] {
        let tower = TowerCtx::with_m(m).unwrap();
        let q = 1u64 << m;
        for k in [1u64, 2, 3] {
            if gcd(2 * k + 1, q - 1) != 1 {
                continue;
            }
            let fams = [Family::C1 { k }, Family::C2 { k }, Family::C3 { k }, Family::C4 { k }];
            for (i, fam) in fams.into_iter().enumerate() {
                let admissible = if i < 3 { m % 2 == 0 } else { gcd(5, q + 1) == 1 };
                let inst = FamilyInstance::new(&tower, fam);
                ensure(inst.conditions.met == admissible, || format!("m={m} {fam:?}: admissibility mismatch"))?;
                if !admissible {
                    continue;
                }
                let poly = family_trinomial(&tower, &inst).map_err(|e| e.to_string())?;
                let ex = is_permutation_exhaustive(tower.field(), &poly).map_err(|e| e.to_string())?;
                ensure(ex.is_permutation && oracle_is_pp(tower.field(), &poly), || format!("m={m} {fam:?}: {poly} not PP"))?;
                count += 1;
            }
        }
    }
    ensure(count > 0, || "no admissible instance".into())
}

fn c8() -> Check {
    for m in [2u32, 3, 4, 5] {
        let tower = TowerCtx::with_m(m).unwrap();
        let rows = engine_sweep(&tower).map_err(|e| e.to_string())?;
        let c = (1usize << m) + 1;
        ensure(rows.len() == c * (c + 1) / 2, || format!("m={m}: {} pairs", rows.len()))?;
        if let Some(r) = rows.iter().find(|r| !r.agree) {
            return Err(format!("m={m}: engines disagree on ({},{})", r.s, r.t));
        }
    }
    Ok(())
}

fn c9() -> Check {
    for n in [2u32, 4, 6, 8, 10, 12] {
        let ctx = niho::make_field(n, None).unwrap();
        let r = quadratic_criterion_sweep(&ctx);
        ensure(r.pairs_checked == (ctx.size() - 1) * ctx.size(), || format!("n={n}: {} pairs", r.pairs_checked))?;
        ensure(r.disagreements == 0, || format!("n={n}: {} disagreements, first {:?}", r.disagreements, r.first_disagreement))?;
    }
    Ok(())
}

fn c10() -> Check {
    let runs = [2u32, 4, 6, 8]
        .into_iter()
        .flat_map(|m| [(QuarticFamily::Eq4, m), (QuarticFamily::Eq6, m)])
        .chain([3u32, 4, 5, 8].into_iter().map(|m| (QuarticFamily::Eq8, m)));
    for (fam, m) in runs {
        let tower = TowerCtx::with_m(m).unwrap();
        let r = verify_lemma_quartics(&tower, fam).map_err(|e| e.to_string())?;
        ensure(r.all_pass, || format!("{} m={m}: roots at {:?}", r.lemma, r.failures))?;
        ensure(r.certificate_as_prescribed, || format!("{} m={m}: certificate {:?} not produced everywhere", r.lemma, r.prescribed))?;
        ensure(r.checked + r.skipped == 1usize << m, || format!("{} m={m}: coverage {}", r.lemma, r.checked + r.skipped))?;
    }
    Ok(())
}

fn c11() -> Check {
    for m in 1..=5u32 {
        let tower = TowerCtx::with_m(m).unwrap();
        let rows = search_pairs(&tower).map_err(|e| e.to_string())?;
        let bad = inhomogeneous_orbits(&rows);
        ensure(bad.is_empty(), || format!("m={m}: mixed verdicts in orbits {bad:?}"))?;
        // each member's verdict is its own engine run, recheck on the full field
        for r in rows.iter().filter(|r| r.orbit.len() > 1) {
            let poly = pair_to_trinomial(&tower, &r.pair);
            ensure(oracle_is_pp(tower.field(), &poly) == r.is_pp, || format!("m={m} {}: oracle disagrees", r.pair))?;
        }
    }
    Ok(())
}

fn c12() -> Check {
    for m in 2..=8u32 {
        let tower = TowerCtx::with_m(m).unwrap();
        let f = tower.field();
        let q = 1u64 << m;
        let gammas: Vec<FieldElement> = f.elements().filter(|&x| pow_clmul(f, x, q) != x).take(3).collect();
        ensure(gammas.len() == 3, || format!("m={m}: fewer than three gammas"))?;
        let circle: BTreeSet<FieldElement> =
            f.elements().filter(|&x| pow_clmul(f, x, q + 1) == FieldElement::ONE && x != FieldElement::ONE).collect();
        for g in gammas {
            let image: Vec<FieldElement> = f
                .elements()
                .filter(|&z| pow_clmul(f, z, q) == z)
                .map(|z| tower.cayley_param(g, z))
                .collect::<niho::Result<_>>()
                .map_err(|e| e.to_string())?;
            let set: BTreeSet<FieldElement> = image.iter().copied().collect();
            ensure(set.len() == image.len() && image.len() as u64 == q, || format!("m={m} gamma {g}: not injective"))?;
            ensure(set == circle, || format!("m={m} gamma {g}: image is not U minus 1"))?;
        }
    }
    Ok(())
}

fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn c13() -> Check {
    let outputs: Vec<(String, String, String)> = [1usize, 4, 8]
        .into_iter()
        .map(|threads| {
            with_threads(threads, || {
                let mut table = String::new();
                let mut sweep = String::new();
                let mut csv = String::new();
                for m in 2..=8u32 {
                    let t = TowerCtx::with_m(m).unwrap();
                    table.push_str(&serde_json::to_string(&verify_table1(&t).unwrap()).unwrap());
                }
                for m in 2..=5u32 {
                    let t = TowerCtx::with_m(m).unwrap();
                    sweep.push_str(&serde_json::to_string(&engine_sweep(&t).unwrap()).unwrap());
                    csv.push_str(&rows_to_csv(&search_pairs(&t).unwrap()).unwrap());
                }
                (table, sweep, csv)
            })
        })
        .collect();
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || "outputs differ across thread counts".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
}

#[test]
fn acceptance_criteria() {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "(-1/3,4/3) permutes for m in {2,4,6,8}, both engines", budget: Some(s(1)), run: c1 },
        Criterion { id: 2, name: "(3,-1) permutes for m in {2,4,6,8}", budget: Some(s(1)), run: c2 },
        Criterion { id: 3, name: "(-2/3,5/3) permutes for m in {2,4,6,8}", budget: Some(s(1)), run: c3 },
        Criterion { id: 4, name: "(1/5,4/5) permutes for m <= 10 with gcd(5,2^m+1)=1", budget: Some(s(5)), run: c4 },
        Criterion { id: 5, name: "table rows with conditions met permute, m = 2..8", budget: Some(s(30)), run: c5 },
        Criterion { id: 6, name: "families f1..f9 admissible instances and two violations", budget: Some(s(60)), run: c6 },
        Criterion { id: 7, name: "multiplied-out exponent families, m in {2,3,4}, k in {1,2,3}", budget: Some(s(30)), run: c7 },
        Criterion { id: 8, name: "exhaustive and unit-circle engines agree, m = 2..5", budget: Some(s(60)), run: c8 },
        Criterion { id: 9, name: "quadratic trace criterion vs brute force, n = 2..12 even", budget: Some(s(60)), run: c9 },
        Criterion { id: 10, name: "quartic no-root claims with prescribed certificates", budget: Some(s(120)), run: c10 },
        Criterion { id: 11, name: "orbits are verdict-homogeneous, m <= 5", budget: None, run: c11 },
        Criterion { id: 12, name: "Cayley parametrization is a bijection onto U minus 1", budget: None, run: c12 },
        Criterion { id: 13, name: "table and sweep output identical with 1, 4, 8 threads", budget: None, run: c13 },
    ];
    let mut failed = Vec::new();
    for c in criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let over = c.budget.is_some_and(|b| elapsed > b);
        let budget = c.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        match (&result, over) {
            (Ok(()), false) => println!("criterion {:>2}: PASS ({:.3}s{budget}) {}", c.id, elapsed.as_secs_f64(), c.name),
            _ => {
                let why = match result {
                    Err(e) => e,
                    Ok(()) => "over time budget".to_string(),
                };
                println!("criterion {:>2}: FAIL ({:.3}s{budget}) {}: {why}", c.id, elapsed.as_secs_f64(), c.name);
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
