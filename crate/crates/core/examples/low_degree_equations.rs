//! Quadratics over GF(2^n) by the trace test, cubics and quartics over the
//! subfield, and the quartic certificates used by the new pairs.
//!
//! cargo run --example low_degree_equations

use niho::loweq::{
    cubic_roots_subfield, quadratic_criterion_sweep, quadratic_roots, quadratic_solvable, quartic_no_root_lw,
    quartic_roots_brute, verify_lemma_quartics, QuarticFamily, QuarticLW,
};
use niho::{make_field, FieldElement, TowerCtx};

fn main() {
    let f = make_field(6, None).unwrap();
    let (a, b) = (FieldElement::from_bits(0b101), FieldElement::from_bits(0b11));
    println!(
        "x^2 + {a}x + {b}: solvable {}, roots {:?}",
        quadratic_solvable(&f, a, b).unwrap(),
        quadratic_roots(&f, a, b)
    );
    let sweep = quadratic_criterion_sweep(&f);
    println!("trace test vs brute force over GF(2^6): {} disagreements", sweep.disagreements);

    let t = TowerCtx::with_m(3).unwrap();
    let sub = t.subfield_elements();
    let (a2, a1) = (sub[2], sub[5]);
    println!("y^3 + {a2}y + {a1} roots in GF(2^3): {:?}", cubic_roots_subfield(&t, a2, a1).unwrap());

    let q = QuarticLW::new(&t, sub[1], sub[3], sub[6]).unwrap();
    let cert = quartic_no_root_lw(&t, &q).unwrap();
    println!("quartic certificate {:?}, brute-force roots {:?}", cert.verdict, quartic_roots_brute(&t, &q));

    for (fam, m) in [(QuarticFamily::Eq4, 4), (QuarticFamily::Eq6, 6), (QuarticFamily::Eq8, 5), (QuarticFamily::Eq8, 8)] {
        let r = verify_lemma_quartics(&TowerCtx::with_m(m).unwrap(), fam).unwrap();
        println!(
            "{} m={m}: no root {}, {} checked, case1 {}, case2 {}",
            r.lemma, r.all_pass, r.checked, r.certified_case1, r.certified_case2
        );
    }
}
