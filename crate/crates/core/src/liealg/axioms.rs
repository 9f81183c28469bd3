//! Exhaustive axiom checks on the structure constants of a descriptor.

use std::fmt;

use rayon::prelude::*;

use super::{raw_bracket, AlgebraDescriptor, Family};
use crate::dpalgebra::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Anticommutativity(Monomial, Monomial),
    Jacobi(Monomial, Monomial, Monomial),
    /// Unprojected bracket lands outside the basis with a nonzero coefficient
    /// other than the dropped constant term.
    Closure {
        a: Monomial,
        b: Monomial,
        target: Monomial,
        coeff: u32,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Anticommutativity(a, b) => write!(f, "{{{a}, {b}}} != -{{{b}, {a}}}"),
            AxiomViolation::Jacobi(a, b, c) => write!(f, "Jacobi fails on {a}, {b}, {c}"),
            AxiomViolation::Closure { a, b, target, coeff } => {
                write!(f, "{{{a}, {b}}} has coefficient {coeff} on {target}")
            }
        }
    }
}

fn accumulate(acc: &mut Vec<(usize, u32)>, p: u32, entry: Option<(u32, usize)>) {
    if let Some((c, t)) = entry {
        match acc.iter_mut().find(|(u, _)| *u == t) {
            Some(e) => e.1 = (e.1 + c) % p,
            None => acc.push((t, c)),
        }
    }
}

pub fn anticommutativity_violations(alg: &AlgebraDescriptor) -> Vec<AxiomViolation> {
    let p = alg.heights().p();
    let dim = alg.dim();
    let basis = alg.basis();
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            let mut acc = Vec::with_capacity(2);
            accumulate(&mut acc, p, alg.table(a, b));
            accumulate(&mut acc, p, alg.table(b, a));
            if acc.iter().any(|&(_, c)| c != 0) {
                out.push(AxiomViolation::Anticommutativity(basis[a], basis[b]));
            }
        }
    }
    out
}

fn nested(alg: &AlgebraDescriptor, p: u32, a: usize, b: usize, c: usize) -> Option<(u32, usize)> {
    let (c1, t) = alg.table(b, c)?;
    let (c2, u) = alg.table(a, t)?;
    Some((c1 * c2 % p, u))
}

/// Unordered triples a <= b <= c on which the Jacobi sum is nonzero.
pub fn jacobi_violations(alg: &AlgebraDescriptor) -> Vec<AxiomViolation> {
    let p = alg.heights().p();
    let dim = alg.dim();
    let basis = alg.basis();
    (0..dim)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut found = Vec::new();
            let mut acc = Vec::with_capacity(3);
            for b in a..dim {
                for c in b..dim {
                    acc.clear();
                    accumulate(&mut acc, p, nested(alg, p, a, b, c));
                    accumulate(&mut acc, p, nested(alg, p, b, c, a));
                    accumulate(&mut acc, p, nested(alg, p, c, a, b));
                    if acc.iter().any(|&(_, v)| v != 0) {
                        found.push(AxiomViolation::Jacobi(basis[a], basis[b], basis[c]));
                    }
                }
            }
            found
        })
        .collect()
}

/// Pairs whose unprojected bracket has weight outside the basis. The constant
/// term of the graded Hamiltonian family is the one permitted exception.
pub fn closure_violations(alg: &AlgebraDescriptor) -> Vec<AxiomViolation> {
    let h = alg.heights();
    let mut out = Vec::new();
    for &a in alg.basis() {
        for &b in alg.basis() {
            let Some((coeff, target)) = raw_bracket(alg.family(), &h, a, b) else {
                continue;
            };
            let dropped = alg.family() == Family::GradedHamiltonian && target == Monomial::ONE;
            if alg.basis_index(target).is_none() && !dropped {
                out.push(AxiomViolation::Closure { a, b, target, coeff });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalgebra::Heights;
    use crate::ffield::Field;

    #[test]
    fn small_configurations_satisfy_axioms() {
        for family in [Family::GradedHamiltonian, Family::AlbertZassenhaus] {
            for (p, n1, n2) in [(3, 1, 1), (3, 2, 1)] {
                let alg = AlgebraDescriptor::new(family, Heights::new(p, n1, n2).unwrap(), &Field::prime(p).unwrap())
                    .unwrap();
                assert!(anticommutativity_violations(&alg).is_empty());
                assert!(jacobi_violations(&alg).is_empty());
                assert!(closure_violations(&alg).is_empty());
            }
        }
    }
}
