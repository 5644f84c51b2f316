//! Polynomials over F_2 packed into machine words (bit i = coefficient of x^i).

pub fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Carry-less product of two polynomials of degree < 32.
pub fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `a` divided by the nonzero polynomial `m`.
pub fn rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// `a * b mod m` for `deg a, deg b < deg m <= 32`.
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem(clmul(a as u32, b as u32), m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree n is irreducible iff gcd(x^(2^i) - x, f) = 1
/// for every 1 <= i <= n/2.
pub fn is_irreducible(f: u64) -> bool {
    let n = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let x = rem(0b10, f);
    let mut power = x;
    for _ in 1..=n / 2 {
        power = mulmod(power, power, f);
        if gcd(f, power ^ x) != 1 {
            return false;
        }
    }
    true
}

/// Smallest (as an integer) irreducible polynomial of degree `n`.
pub fn smallest_irreducible(n: u32) -> u64 {
    let start = 1u64 << n;
    (start..start << 1)
        .find(|&f| is_irreducible(f))
        .expect("irreducible polynomials exist in every degree")
}
