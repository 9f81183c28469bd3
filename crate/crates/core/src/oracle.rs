//! Brute-force references for the fast paths: factorial binomials, the
//! p^s-fold ad y, and brackets expanded from partial derivatives.

use num_bigint::BigUint;

use crate::dpalgebra::{mono_mul, AlgebraElement, Heights, Monomial};
use crate::error::Result;
use crate::ffield::lucas_binomial;
use crate::liealg::{AlgebraDescriptor, DerivationOperator, Family};

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// n! / (k! (n-k)!) mod p, for 0 <= k <= n.
pub fn factorial_binomial(n: u64, k: u64, p: u32) -> u32 {
    assert!(k <= n, "factorial_binomial needs k <= n");
    let c = factorial(n) / (factorial(k) * factorial(n - k));
    (c % p).try_into().expect("residue fits")
}

/// Pairs 0 <= k <= n <= bound where Lucas and the factorial formula differ.
pub fn binomial_mismatches(p: u32, bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut row = vec![BigUint::from(1u32)];
    for n in 0..=bound {
        if n > 0 {
            let mut next = vec![BigUint::from(1u32); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        for k in 0..=n {
            let direct: u32 = (&row[k as usize] % p).try_into().expect("residue fits");
            if direct != lucas_binomial(n as i64, k as i64, p) {
                out.push((n, k));
            }
        }
    }
    out
}

/// First basis monomial where the closed-form D and p^s applications of
/// ad y differ; `Ok(None)` when they agree everywhere.
pub fn derivation_mismatch(alg: &AlgebraDescriptor, s: u32) -> Result<Option<Monomial>> {
    let closed = DerivationOperator::closed_form(alg, s)?;
    let iterated = DerivationOperator::iterated_ad(alg, s)?;
    for m in alg.basis() {
        let mut v = alg.element(*m)?;
        let y = alg.element(Monomial::new(0, 1))?;
        for _ in 0..alg.heights().p().pow(s) {
            v = alg.bracket(&y, &v)?;
        }
        if closed.apply(&alg.element(*m)?)? != v || iterated.apply(&alg.element(*m)?)? != v {
            return Ok(Some(*m));
        }
    }
    Ok(None)
}

fn dx(m: Monomial) -> Option<Monomial> {
    (m.i > 0).then(|| Monomial::new(m.i - 1, m.j))
}

fn dy(m: Monomial) -> Option<Monomial> {
    (m.j > 0).then(|| Monomial::new(m.i, m.j - 1))
}

/// {a, b} = ∂_y a ∂_x b - ∂_x a ∂_y b with divided-power products, plus the
/// x̄ y^(j+l-1) correction of the Albert-Zassenhaus family on y-only pairs;
/// the graded Hamiltonian family drops constants.
pub fn direct_bracket(alg: &AlgebraDescriptor, a: Monomial, b: Monomial) -> Result<AlgebraElement> {
    let h: Heights = alg.heights();
    let f = alg.field();
    let mut out = AlgebraElement::zero(h);
    if let (Some(u), Some(v)) = (dy(a), dx(b)) {
        out.add_scaled(&f.one(), &mono_mul(f, h, u, v)?)?;
    }
    if let (Some(u), Some(v)) = (dx(a), dy(b)) {
        out.add_scaled(&-f.one(), &mono_mul(f, h, u, v)?)?;
    }
    match alg.family() {
        Family::AlbertZassenhaus if a.i == 0 && b.i == 0 && a.j + b.j > 0 => {
            let (j, l) = (a.j as i64, b.j as i64);
            let p = h.p();
            let c = f.from_int(lucas_binomial(j + l - 1, l, p) as i64 - lucas_binomial(j + l - 1, j, p) as i64);
            let target = Monomial::new(h.x_top(), (j + l - 1) as u32);
            if h.contains(target) {
                out.add_term(target, &c)?;
            }
        }
        Family::GradedHamiltonian => out = out.retain(|m| m != Monomial::ONE),
        _ => {}
    }
    Ok(out)
}

/// Basis pairs whose tabulated bracket differs from `direct_bracket`.
pub fn bracket_mismatches(alg: &AlgebraDescriptor) -> Result<Vec<(Monomial, Monomial)>> {
    let mut out = Vec::new();
    for &a in alg.basis() {
        let u = alg.element(a)?;
        for &b in alg.basis() {
            if alg.bracket(&u, &alg.element(b)?)? != direct_bracket(alg, a, b)? {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial_binomial(5, 2, 3), 1);
        assert_eq!(factorial_binomial(9, 3, 3), 0);
        assert_eq!(factorial_binomial(7, 0, 5), 1);
    }

    #[test]
    fn lucas_matches_factorials() {
        for p in [3, 5, 7] {
            assert!(binomial_mismatches(p, 2 * (p as u64).pow(2)).is_empty());
        }
    }

    #[test]
    fn tables_match_direct_expansion() {
        for family in [Family::GradedHamiltonian, Family::AlbertZassenhaus] {
            for (p, n1, n2) in [(3, 1, 1), (3, 2, 1), (5, 1, 1)] {
                let f = Field::prime(p).unwrap();
                let alg = AlgebraDescriptor::new(family, Heights::new(p, n1, n2).unwrap(), &f).unwrap();
                assert!(bracket_mismatches(&alg).unwrap().is_empty(), "{family} {p} {n1} {n2}");
            }
        }
    }

    #[test]
    fn closed_form_matches_repeated_ad() {
        let f = Field::prime(3).unwrap();
        let alg = AlgebraDescriptor::new(Family::AlbertZassenhaus, Heights::new(3, 2, 2).unwrap(), &f).unwrap();
        assert_eq!(derivation_mismatch(&alg, 1).unwrap(), None);
    }
}
