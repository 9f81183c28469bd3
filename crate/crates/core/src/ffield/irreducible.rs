//! Polynomials over F_p, used only to certify and search for moduli.

use super::binomial::mod_pow;
use super::field::{is_prime, FieldError, FieldParams};

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut r: Poly = a.to_vec();
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (k, &bk) in b.iter().enumerate() {
                let idx = top - db + k;
                r[idx] = (r[idx] + (p - c) * bk) % p;
            }
        }
        r.pop();
        r = trim(r);
        if r.len() <= db {
            break;
        }
    }
    trim(r)
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Poly {
    let mut acc = poly_rem(&[1], f, p);
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub_x(a: &[u64], p: u64) -> Poly {
    let mut r = a.to_vec();
    if r.len() < 2 {
        r.resize(2, 0);
    }
    r[1] = (r[1] + p - 1) % p;
    trim(r)
}

/// Rabin-style certificate: f divides x^(p^m) - x and is coprime to
/// x^(p^d) - x for every proper divisor d of m.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let p64 = p as u64;
    let f: Poly = modulus.iter().map(|&c| c as u64).collect();
    let f = trim(f);
    if f.len() < 2 {
        return false;
    }
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    // frob[d] = x^(p^d) mod f
    let mut frob = vec![poly_rem(&[0, 1], &f, p64)];
    for _ in 0..m {
        let prev = frob.last().unwrap();
        frob.push(poly_powmod(prev, p64, &f, p64));
    }
    if !sub_x(&frob[m], p64).is_empty() {
        return false;
    }
    (1..m).filter(|d| m.is_multiple_of(*d)).all(|d| {
        let g = poly_gcd(&f, &sub_x(&frob[d], p64), p64);
        g.len() == 1
    })
}

/// Smallest monic irreducible polynomial of degree m over F_p, comparing
/// coefficient sequences c0, c1, ... lexicographically.
pub fn find_irreducible(p: u32, m: u32) -> Result<FieldParams, FieldError> {
    if !is_prime(p as u64) {
        return Err(FieldError::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(FieldError::BadModulus("degree must be at least 1".into()));
    }
    let count = (p as u64)
        .checked_pow(m)
        .filter(|&c| c <= 1 << 20)
        .ok_or(FieldError::TooLarge(u64::MAX))?;
    for idx in 0..count {
        // c0 is the most significant digit of idx
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut rest = idx;
        for c in coeffs[..m as usize].iter_mut().rev() {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[m as usize] = 1;
        if is_irreducible(p, &coeffs) {
            return FieldParams::new(p, coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
