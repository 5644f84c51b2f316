//! Both permutation engines on a few pairs, with counterexamples for the
//! failures, and the general x^r h(x^s) criterion on a non-Niho shape.
//!
//! cargo run --release --example verify_permutation

use niho::permcheck::{is_permutation_exhaustive, unit_circle_check, zieve_check};
use niho::niho::pair_to_trinomial;
use niho::{NihoPair, SparsePoly, TowerCtx};

fn main() {
    for (m, s, t) in [(4u32, 11i128, 7i128), (6, 3, -1), (3, 3, -1), (8, 1, 2), (10, 3, -1)] {
        let tower = TowerCtx::with_m(m).unwrap();
        let pair = NihoPair::new(m, s, t);
        let uc = unit_circle_check(&tower, &pair);
        print!("m={m:<2} {pair:<10} unit circle: {:<5} ({} points)", uc.is_permutation, uc.evaluations);
        if tower.field().degree() <= 16 {
            let ex = is_permutation_exhaustive(tower.field(), &pair_to_trinomial(&tower, &pair)).unwrap();
            print!("  exhaustive: {:<5} ({} points)", ex.is_permutation, ex.evaluations);
        }
        println!();
        if let Some(c) = uc.counterexample {
            println!("    counterexample {c:?}");
        }
    }

    // x + x^7 + x^13 over GF(2^4) is x h(x^3) with h(y) = 1 + y^2 + y^4
    let tower = TowerCtx::with_m(2).unwrap();
    let f = tower.field();
    let h = SparsePoly::monomials(f, [0, 2, 4]);
    println!("x h(x^3) over GF(2^4): {}", zieve_check(f, 1, 3, &h).unwrap());
}
