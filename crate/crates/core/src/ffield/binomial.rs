use super::field::{FieldElement, FieldError};

/// C(n, k) mod p for any integers, via base-p digits for n >= 0 and
/// C(n, k) = (-1)^k C(k - n - 1, k) for n < 0. Zero whenever k < 0.
pub fn lucas_binomial(n: i64, k: i64, p: u32) -> u32 {
    if k < 0 {
        return 0;
    }
    if n < 0 {
        let upper = (k as i128 - n as i128 - 1) as u128;
        let v = lucas_nonneg(upper, k as u128, p);
        return if k % 2 == 0 { v } else { (p - v) % p };
    }
    lucas_nonneg(n as u128, k as u128, p)
}

fn lucas_nonneg(mut n: u128, mut k: u128, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let p128 = p as u128;
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = ((n % p128) as u64, (k % p128) as u64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, kd, p as u64) % p as u64;
        n /= p128;
        k /= p128;
    }
    acc as u32
}

/// C(n, k) mod p for 0 <= k <= n < p.
fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

pub(crate) fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// alpha (alpha - 1) ... (alpha - i + 1) / i!, defined for i < p.
pub fn falling_binomial(alpha: &FieldElement, i: u64) -> Result<FieldElement, FieldError> {
    let field = alpha.field();
    let p = field.p();
    if i >= p as u64 {
        return Err(FieldError::FactorialNotInvertible { i, p });
    }
    let mut num = field.one();
    let mut fact = field.one();
    for r in 0..i as i64 {
        num = num * (alpha - &field.from_int(r));
        fact = fact.mul_int(r + 1);
    }
    Ok(num * fact.inv()?)
}
