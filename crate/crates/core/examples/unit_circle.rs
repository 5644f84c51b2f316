//! The tower GF(2^4) ⊂ GF(2^8): subfield, unit circle, and the map
//! z ↦ (z + γ)/(z + γ̄) from the subfield onto U \ {1}.
//!
//! cargo run --example unit_circle

use niho::TowerCtx;

fn main() {
    let t = TowerCtx::with_m(4).unwrap();
    let f = t.field();
    println!("n = {}, m = {}, |U| = {}", f.degree(), t.m(), t.unit_circle_order());

    let circle: Vec<String> = t.unit_circle_iter().map(|u| u.to_string()).collect();
    println!("U = {{{}}}", circle.join(", "));

    let gamma = t.canonical_gamma();
    println!("gamma = {gamma}, conjugate {}", t.conjugate(gamma));
    for &z in t.subfield_elements().iter().take(4) {
        println!("  z = {z:<5} -> {}", t.cayley_param(gamma, z).unwrap());
    }
    let report = t.check_cayley_bijection(gamma).unwrap();
    println!("bijection onto U \\ {{1}}: {}", report.passed());
}
