//! Fractional pair notation, the trinomials it denotes, and the pairs
//! obtained by substituting inverse Niho exponents.
//!
//! cargo run --example niho_pairs

use niho::niho::{equivalent_pairs, is_niho_exponent, pair_to_trinomial, parse_pair};
use niho::survey::canonical_orbit;
use niho::{NihoPair, TowerCtx};

fn main() {
    let m = 4;
    let tower = TowerCtx::with_m(m).unwrap();
    for text in ["-1/3,4/3", "3,-1", "-2/3,5/3", "1/5,4/5"] {
        let (s, t) = parse_pair(text).unwrap();
        let pair = NihoPair::from_fractions(m, s, t).unwrap();
        let (ds, dt) = pair.exponents();
        println!("({text}) at m={m} is {pair}: {}", pair_to_trinomial(&tower, &pair));
        println!("  exponents {ds}, {dt} are Niho: {:?} {:?}", is_niho_exponent(ds, m), is_niho_exponent(dt, m));
        let eq: Vec<String> = equivalent_pairs(m, &pair).iter().map(|p| p.to_string()).collect();
        println!("  one-step equivalents {}", eq.join(" "));
        let orbit = canonical_orbit(m, &pair);
        println!("  orbit of {} pairs, representative {}", orbit.members.len(), orbit.representative);
    }
    match NihoPair::from_fractions(6, "1/5".parse().unwrap(), "4/5".parse().unwrap()) {
        Ok(p) => println!("unexpected {p}"),
        Err(e) => println!("(1/5,4/5) at m=6: {e}"),
    }
}
