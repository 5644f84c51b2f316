//! Arithmetic in GF(2^8) with the default modulus and with an explicit one.
//!
//! cargo run --example field_arithmetic

use niho::gf::parse_modulus_hex;
use niho::{make_field, FieldElement};

fn main() {
    let f = make_field(8, None).unwrap();
    println!("GF(2^8) modulus {}, generator {}", f.modulus_hex(), f.generator());

    let a = FieldElement::from_bits(0x57);
    let b = FieldElement::from_bits(0x83);
    println!("{a} + {b} = {}", f.add(a, b));
    println!("{a} * {b} = {}", f.mul(a, b));
    println!("{a}^-1 = {}", f.inv(a).unwrap());
    println!("{a}^-3 = {}", f.pow(a, -3).unwrap());
    println!("Tr({a}) = {}, Tr_2^8({a}) = {}", f.trace_abs(a), f.trace_rel(a, 2).unwrap());
    println!("order of {a} is {}", f.order_of(a).unwrap());

    // a second irreducible octic gives an isomorphic field with other bit patterns
    let g = make_field(8, Some(parse_modulus_hex("0x11d").unwrap())).unwrap();
    println!("GF(2^8) mod {}: {a} * {b} = {}", g.modulus_hex(), g.mul(a, b));

    match make_field(8, Some(0x101)) {
        Ok(_) => unreachable!(),
        Err(e) => println!("0x101 rejected: {e}"),
    }

    // beyond the table limit products use shift-and-xor
    let big = make_field(32, None).unwrap();
    let x = FieldElement::from_bits(0xdead_beef);
    println!("GF(2^32) mod {}: x * x^-1 = {}", big.modulus_hex(), big.mul(x, big.inv(x).unwrap()));
}
