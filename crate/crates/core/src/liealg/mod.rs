//! Graded Hamiltonian and Albert-Zassenhaus brackets on O(2; (n1, n2)).

mod axioms;
mod derivation;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use axioms::{anticommutativity_violations, closure_violations, jacobi_violations, AxiomViolation};
pub use derivation::{DerivationOperator, Realization};

use crate::dpalgebra::{AlgebraElement, Heights, Monomial};
use crate::error::{Error, Result};
use crate::ffield::{lucas_binomial, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// H(2; (n1, n2))^(2), spanned by all monomials except 1 and x-bar y-bar.
    GradedHamiltonian,
    /// H(2; (n1, n2); Phi(1)), spanned by all monomials.
    AlbertZassenhaus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GradedHamiltonian => "graded-hamiltonian",
            Family::AlbertZassenhaus => "albert-zassenhaus",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graded-hamiltonian" | "gh" | "GH" => Ok(Family::GradedHamiltonian),
            "albert-zassenhaus" | "az" | "AZ" => Ok(Family::AlbertZassenhaus),
            _ => Err(Error::parse(
                "family",
                s,
                "expected graded-hamiltonian or albert-zassenhaus",
            )),
        }
    }
}

/// N(i,j,k,l) = C(i+k-1, i) C(j+l-1, j-1) - C(i+k-1, i-1) C(j+l-1, j) mod p.
pub fn n_coeff(p: u32, i: i64, j: i64, k: i64, l: i64) -> u32 {
    let first = lucas_binomial(i + k - 1, i, p) as u64 * lucas_binomial(j + l - 1, j - 1, p) as u64;
    let second = lucas_binomial(i + k - 1, i - 1, p) as u64 * lucas_binomial(j + l - 1, j, p) as u64;
    let p = p as u64;
    ((first % p + p - second % p) % p) as u32
}

/// Bracket of two monomials before any projection onto a basis: coefficient
/// (a prime-field residue) and target monomial.
pub fn raw_bracket(family: Family, h: &Heights, a: Monomial, b: Monomial) -> Option<(u32, Monomial)> {
    let p = h.p();
    let (i, j, k, l) = (a.i as i64, a.j as i64, b.i as i64, b.j as i64);
    let (c, ti, tj) = if family == Family::AlbertZassenhaus && i == 0 && k == 0 {
        if j + l == 0 {
            return None;
        }
        let c = (lucas_binomial(j + l - 1, l, p) + p - lucas_binomial(j + l - 1, j, p)) % p;
        (c, h.x_top() as i64, j + l - 1)
    } else {
        if i + k == 0 || j + l == 0 {
            return None;
        }
        (n_coeff(p, i, j, k, l), i + k - 1, j + l - 1)
    };
    if ti >= h.x_bound() as i64 || tj >= h.y_bound() as i64 {
        debug_assert_eq!(c, 0, "overflowing bracket {a}, {b}");
        return None;
    }
    (c != 0).then(|| (c, Monomial::new(ti as u32, tj as u32)))
}

struct Inner {
    family: Family,
    heights: Heights,
    field: Field,
    basis: Vec<Monomial>,
    position: Vec<Option<u32>>,
    // basis-index pairs -> (residue, basis index)
    table: Vec<Option<(u32, u32)>>,
}

/// One of the two Lie algebra families at fixed heights and field, with its
/// structure constants tabulated on basis pairs.
#[derive(Clone)]
pub struct AlgebraDescriptor(Arc<Inner>);

impl AlgebraDescriptor {
    pub fn new(family: Family, heights: Heights, field: &Field) -> Result<Self> {
        if field.p() != heights.p() {
            return Err(Error::Config(format!(
                "field characteristic {} differs from heights characteristic {}",
                field.p(),
                heights.p()
            )));
        }
        let top = Monomial::new(heights.x_top(), heights.y_top());
        let basis: Vec<Monomial> = heights
            .monomials()
            .filter(|&m| family == Family::AlbertZassenhaus || (m != Monomial::ONE && m != top))
            .collect();
        let mut position = vec![None; heights.num_monomials()];
        for (idx, m) in basis.iter().enumerate() {
            position[heights.index(*m)] = Some(idx as u32);
        }
        let dim = basis.len();
        let mut table = vec![None; dim * dim];
        for (ai, &a) in basis.iter().enumerate() {
            for (bi, &b) in basis.iter().enumerate() {
                let entry = raw_bracket(family, &heights, a, b).and_then(|(c, t)| {
                    // the constant term is dropped in the graded Hamiltonian case
                    position[heights.index(t)].map(|ti| (c, ti))
                });
                table[ai * dim + bi] = entry;
            }
        }
        Ok(AlgebraDescriptor(Arc::new(Inner {
            family,
            heights,
            field: field.clone(),
            basis,
            position,
            table,
        })))
    }

    pub fn family(&self) -> Family {
        self.0.family
    }

    pub fn heights(&self) -> Heights {
        self.0.heights
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.0.basis
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn basis_index(&self, m: Monomial) -> Option<usize> {
        if !self.0.heights.contains(m) {
            return None;
        }
        self.0.position[self.0.heights.index(m)].map(|x| x as usize)
    }

    pub fn name(&self) -> String {
        let h = self.0.heights;
        match self.0.family {
            Family::GradedHamiltonian => format!("H(2;({},{}))^(2)", h.n1(), h.n2()),
            Family::AlbertZassenhaus => format!("H(2;({},{});Phi(1))", h.n1(), h.n2()),
        }
    }

    /// Structure constant on basis indices: `{b_a, b_b} = c * b_t`.
    #[inline]
    pub(crate) fn table(&self, a: usize, b: usize) -> Option<(u32, usize)> {
        self.0.table[a * self.dim() + b].map(|(c, t)| (c, t as usize))
    }

    /// Basis monomial as an element with coefficient 1.
    pub fn element(&self, m: Monomial) -> Result<AlgebraElement> {
        if self.basis_index(m).is_none() {
            return Err(Error::OutsideBasis(m, self.name()));
        }
        AlgebraElement::monomial(self.0.heights, m, self.0.field.one())
    }

    /// Drops coefficients on monomials outside the basis (the constant term
    /// for the graded Hamiltonian family).
    pub fn project(&self, v: &AlgebraElement) -> AlgebraElement {
        v.retain(|m| self.basis_index(m).is_some())
    }

    fn check_support(&self, v: &AlgebraElement) -> Result<()> {
        if v.heights() != self.0.heights {
            return Err(Error::HeightsMismatch(v.heights(), self.0.heights));
        }
        if let Some(m) = v.monomials().find(|&m| self.basis_index(m).is_none()) {
            return Err(Error::OutsideBasis(m, self.name()));
        }
        Ok(())
    }

    /// Lie bracket, extended bilinearly from the monomial rule.
    pub fn bracket(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_support(u)?;
        self.check_support(v)?;
        let field = &self.0.field;
        let mut acc = vec![0u32; self.dim()];
        let mut seen = vec![false; self.dim()];
        let mut touched = Vec::new();
        for (a, ca) in u.terms() {
            let ai = self.basis_index(*a).unwrap();
            for (b, cb) in v.terms() {
                let bi = self.basis_index(*b).unwrap();
                if let Some((c, t)) = self.table(ai, bi) {
                    let term = field.raw_mul(field.raw_mul(ca.raw(), cb.raw()), c);
                    if !seen[t] {
                        seen[t] = true;
                        touched.push(t);
                    }
                    acc[t] = field.raw_add(acc[t], term);
                }
            }
        }
        let terms = touched
            .into_iter()
            .filter(|&t| acc[t] != 0)
            .map(|t| (self.0.basis[t], field.wrap(acc[t])));
        AlgebraElement::from_terms(self.0.heights, terms)
    }
}

impl fmt::Debug for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.name(), self.0.field)
    }
}

/// Anything that carries a bilinear bracket on algebra elements.
pub trait Bracket {
    fn heights(&self) -> Heights;
    fn bracket(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement>;
}

impl Bracket for AlgebraDescriptor {
    fn heights(&self) -> Heights {
        AlgebraDescriptor::heights(self)
    }

    fn bracket(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        AlgebraDescriptor::bracket(self, u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(family: Family, p: u32, n1: u32, n2: u32) -> AlgebraDescriptor {
        AlgebraDescriptor::new(family, Heights::new(p, n1, n2).unwrap(), &Field::prime(p).unwrap()).unwrap()
    }

    fn mono(a: &AlgebraDescriptor, i: u32, j: u32) -> AlgebraElement {
        AlgebraElement::monomial(a.heights(), Monomial::new(i, j), a.field().one()).unwrap()
    }

    #[test]
    fn n_coeff_examples() {
        assert_eq!(n_coeff(3, 1, 0, 0, 1), 2);
        for p in [3u32, 5] {
            for i in 1..6 {
                for j in 1..6 {
                    assert_eq!(n_coeff(p, i, j, i, j), 0);
                }
            }
        }
        assert_eq!(n_coeff(3, 2, 1, 2, 1), 0);
    }

    #[test]
    fn dimensions() {
        for (p, n1, n2) in [(3, 1, 1), (3, 2, 1), (3, 2, 2), (5, 2, 1)] {
            let pow = (p as usize).pow(n1 + n2);
            assert_eq!(alg(Family::GradedHamiltonian, p, n1, n2).dim(), pow - 2);
            assert_eq!(alg(Family::AlbertZassenhaus, p, n1, n2).dim(), pow);
        }
    }

    #[test]
    fn bracket_examples() {
        let gh = alg(Family::GradedHamiltonian, 3, 2, 1);
        assert!(gh.bracket(&mono(&gh, 1, 0), &mono(&gh, 0, 1)).unwrap().is_zero());
        let lhs = gh.bracket(&mono(&gh, 2, 1), &mono(&gh, 0, 1)).unwrap();
        assert_eq!(lhs, -&mono(&gh, 1, 1));

        let az = alg(Family::AlbertZassenhaus, 3, 2, 1);
        let xy = az.bracket(&mono(&az, 1, 0), &mono(&az, 0, 1)).unwrap();
        assert_eq!(xy, -&mono(&az, 0, 0));
        let one_y = az.bracket(&mono(&az, 0, 0), &mono(&az, 0, 1)).unwrap();
        assert_eq!(one_y, -&mono(&az, 8, 0));
    }

    #[test]
    fn support_outside_basis_rejected() {
        let gh = alg(Family::GradedHamiltonian, 3, 1, 1);
        let one = AlgebraElement::monomial(gh.heights(), Monomial::ONE, gh.field().one()).unwrap();
        assert!(matches!(
            gh.bracket(&one, &mono(&gh, 1, 0)),
            Err(Error::OutsideBasis(..))
        ));
        assert!(gh.element(Monomial::new(2, 2)).is_err());
    }

    #[test]
    fn bracket_is_bilinear_under_cancellation() {
        for family in [Family::GradedHamiltonian, Family::AlbertZassenhaus] {
            let a = alg(family, 3, 2, 2);
            let f = a.field();
            let h = a.heights();
            let u = AlgebraElement::from_terms(
                h,
                a.basis().iter().map(|m| (*m, f.from_int(1 + (m.i + m.j) as i64 % 2))),
            )
            .unwrap();
            let v = AlgebraElement::from_terms(
                h,
                a.basis().iter().map(|m| (*m, f.from_int(1 + (m.i * m.j) as i64 % 2))),
            )
            .unwrap();
            let mut expected = AlgebraElement::zero(h);
            for (m, c) in u.terms() {
                for (n, d) in v.terms() {
                    let single = a.bracket(&a.element(*m).unwrap(), &a.element(*n).unwrap()).unwrap();
                    expected.add_scaled(&(c * d), &single).unwrap();
                }
            }
            assert_eq!(a.bracket(&u, &v).unwrap(), expected);
        }
    }

    #[test]
    fn ad_y_is_d_by_dx() {
        let az = alg(Family::AlbertZassenhaus, 3, 2, 1);
        let y = mono(&az, 0, 1);
        for m in az.basis().iter().filter(|m| m.i > 0) {
            let image = az.bracket(&y, &mono(&az, m.i, m.j)).unwrap();
            assert_eq!(image, mono(&az, m.i - 1, m.j));
        }
    }
}
