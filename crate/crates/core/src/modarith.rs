//! Integer helpers: gcd, modular inverses, residues of signed values,
//! p-adic valuations and small factorizations.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid on signed integers: returns `(g, x, y)` with `a*x + b*y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Representative of `a` in `[0, modulus)`.
pub fn reduce(a: i128, modulus: u64) -> u64 {
    a.rem_euclid(modulus as i128) as u64
}

/// Inverse of `a` modulo `modulus`, if it exists.
pub fn mod_inv(a: i128, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(0);
    }
    let a = reduce(a, modulus) as i128;
    let (g, x, _) = ext_gcd(a, modulus as i128);
    (g == 1).then(|| reduce(x, modulus))
}

pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// Exponent of `p` in the factorization of `k`; `None` for `k = 0`.
pub fn valuation(k: u64, p: u64) -> Option<u32> {
    if k == 0 {
        return None;
    }
    let mut k = k;
    let mut e = 0;
    while k % p == 0 {
        k /= p;
        e += 1;
    }
    Some(e)
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}
