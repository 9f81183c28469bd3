use std::fmt;

use super::AlgebraDescriptor;
use crate::dpalgebra::{AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, Matrix};
use crate::liealg::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realization {
    /// p^s-fold composition of ad y.
    IteratedAd,
    /// Monomial action written out directly; requires n1 = s + 1.
    ClosedForm,
}

/// D = c (ad y)^{p^s}. D sends each basis monomial to a multiple of a basis
/// monomial, so it is stored as one optional image per basis index.
#[derive(Clone)]
pub struct DerivationOperator {
    alg: AlgebraDescriptor,
    s: u32,
    realization: Realization,
    images: Vec<Option<(u32, usize)>>,
    scale: FieldElement,
}

impl DerivationOperator {
    pub fn iterated_ad(alg: &AlgebraDescriptor, s: u32) -> Result<Self> {
        let h = alg.heights();
        let y = alg
            .basis_index(Monomial::new(0, 1))
            .ok_or_else(|| Error::OutsideBasis(Monomial::new(0, 1), alg.name()))?;
        let steps = (h.p() as u64)
            .checked_pow(s)
            .filter(|&st| st <= 1 << 20)
            .ok_or_else(|| Error::Config(format!("s = {s} is too large")))?;
        let p = h.p();
        let images = (0..alg.dim())
            .map(|e| {
                let mut cur = (1u32, e);
                for _ in 0..steps {
                    let (c, t) = alg.table(y, cur.1)?;
                    cur = (cur.0 * c % p, t);
                }
                Some(cur)
            })
            .collect();
        Ok(Self::from_images(alg, s, Realization::IteratedAd, images))
    }

    pub fn closed_form(alg: &AlgebraDescriptor, s: u32) -> Result<Self> {
        let h = alg.heights();
        if h.n1() != s + 1 {
            return Err(Error::Hypothesis(format!(
                "closed-form D needs n1 = s + 1, got n1 = {}, s = {s}",
                h.n1()
            )));
        }
        let p = h.p();
        let ps = p.pow(s);
        let images = alg
            .basis()
            .iter()
            .map(|m| {
                let (a, r) = (m.i / ps, m.i % ps);
                let (c, target) = if a > 0 {
                    (1, Monomial::new(m.i - ps, m.j))
                } else {
                    match alg.family() {
                        Family::GradedHamiltonian => return None,
                        // -j with j = J - 1
                        Family::AlbertZassenhaus => ((p + 1 - m.j % p) % p, Monomial::new((p - 1) * ps + r, m.j)),
                    }
                };
                if c == 0 {
                    return None;
                }
                alg.basis_index(target).map(|t| (c, t))
            })
            .collect();
        Ok(Self::from_images(alg, s, Realization::ClosedForm, images))
    }

    fn from_images(
        alg: &AlgebraDescriptor,
        s: u32,
        realization: Realization,
        images: Vec<Option<(u32, usize)>>,
    ) -> Self {
        DerivationOperator {
            alg: alg.clone(),
            s,
            realization,
            images,
            scale: alg.field().one(),
        }
    }

    /// Closed form when n1 = s + 1 (after checking it against the iterated
    /// realization), otherwise the iterated realization.
    pub fn build(alg: &AlgebraDescriptor, s: u32) -> Result<Self> {
        let iterated = Self::iterated_ad(alg, s)?;
        if alg.heights().n1() != s + 1 {
            return Ok(iterated);
        }
        let closed = Self::closed_form(alg, s)?;
        if let Some(m) = closed.disagreement(&iterated) {
            return Err(Error::Hypothesis(format!("closed-form and iterated D differ on {m}")));
        }
        Ok(closed)
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.alg
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn scale(&self) -> &FieldElement {
        &self.scale
    }

    /// c D
    pub fn scaled(&self, c: &FieldElement) -> Self {
        DerivationOperator {
            scale: &self.scale * c,
            ..self.clone()
        }
    }

    /// First basis monomial on which the unscaled actions differ.
    pub fn disagreement(&self, other: &DerivationOperator) -> Option<Monomial> {
        (0..self.alg.dim())
            .find(|&e| self.images[e] != other.images[e])
            .map(|e| self.alg.basis()[e])
    }

    /// Image of a basis vector, scale included.
    pub fn image(&self, e: usize) -> Option<(FieldElement, usize)> {
        let (c, t) = self.images[e]?;
        let coef = self.scale.mul_int(c as i64);
        (!coef.is_zero()).then_some((coef, t))
    }

    /// Image of a basis vector under D^k.
    pub fn power_image(&self, e: usize, k: u64) -> Option<(FieldElement, usize)> {
        let mut coef = self.alg.field().one();
        let mut cur = e;
        for _ in 0..k {
            let (c, t) = self.image(cur)?;
            coef = &coef * &c;
            cur = t;
        }
        Some((coef, cur))
    }

    pub fn apply(&self, v: &AlgebraElement) -> Result<AlgebraElement> {
        self.apply_power(v, 1)
    }

    pub fn apply_power(&self, v: &AlgebraElement, k: u64) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.alg.heights());
        for (m, c) in v.terms() {
            let e = self
                .alg
                .basis_index(*m)
                .ok_or_else(|| Error::OutsideBasis(*m, self.alg.name()))?;
            if let Some((d, t)) = self.power_image(e, k) {
                out.add_term(self.alg.basis()[t], &(c * &d))?;
            }
        }
        Ok(out)
    }

    /// Matrix of D^k in basis coordinates (columns are images).
    pub fn power_matrix(&self, k: u64) -> Matrix {
        let dim = self.alg.dim();
        let mut m = Matrix::zeros(self.alg.field(), dim, dim);
        for e in 0..dim {
            if let Some((c, t)) = self.power_image(e, k) {
                m.set(t, e, &c);
            }
        }
        m
    }

    pub fn power_is_zero(&self, k: u64) -> bool {
        (0..self.alg.dim()).all(|e| self.power_image(e, k).is_none())
    }

    /// Checks D^{p^2} = lambda^{(p-1)p} D^p on every basis vector.
    pub fn satisfies_pp_relation(&self, lambda: &FieldElement) -> bool {
        let p = self.alg.heights().p() as u64;
        let mu = lambda.pow((p - 1) * p);
        (0..self.alg.dim()).all(|e| {
            let lhs = self.power_image(e, p * p);
            let rhs = self
                .power_image(e, p)
                .map(|(c, t)| (&c * &mu, t))
                .filter(|(c, _)| !c.is_zero());
            lhs == rhs
        })
    }

    /// Basis pairs (a, b) with D{a,b} != {Da,b} + {a,Db}.
    pub fn leibniz_violations(&self) -> Vec<(Monomial, Monomial)> {
        let basis = self.alg.basis();
        let field = self.alg.field();
        let dim = basis.len();
        let mut out = Vec::new();
        let mut acc: Vec<(usize, u32)> = Vec::with_capacity(3);
        for a in 0..dim {
            for b in 0..dim {
                acc.clear();
                let mut add = |t: usize, c: u32| match acc.iter_mut().find(|(u, _)| *u == t) {
                    Some(entry) => entry.1 = field.raw_add(entry.1, c),
                    None => acc.push((t, c)),
                };
                if let Some((c, t)) = self.alg.table(a, b) {
                    if let Some((d, u)) = self.image(t) {
                        add(u, field.raw_mul(field.from_int(c as i64).raw(), d.raw()));
                    }
                }
                if let Some((d, u)) = self.image(a) {
                    if let Some((c, t)) = self.alg.table(u, b) {
                        add(t, field.raw_neg(field.raw_mul(field.from_int(c as i64).raw(), d.raw())));
                    }
                }
                if let Some((d, u)) = self.image(b) {
                    if let Some((c, t)) = self.alg.table(a, u) {
                        add(t, field.raw_neg(field.raw_mul(field.from_int(c as i64).raw(), d.raw())));
                    }
                }
                if acc.iter().any(|&(_, c)| c != 0) {
                    out.push((basis[a], basis[b]));
                }
            }
        }
        out
    }
}

impl fmt::Debug for DerivationOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (ad y)^(p^{}) on {:?} [{:?}]",
            self.scale, self.s, self.alg, self.realization
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalgebra::Heights;
    use crate::ffield::Field;

    fn alg(family: Family, p: u32, n1: u32, n2: u32) -> AlgebraDescriptor {
        AlgebraDescriptor::new(family, Heights::new(p, n1, n2).unwrap(), &Field::prime(p).unwrap()).unwrap()
    }

    fn mono(a: &AlgebraDescriptor, i: u32, j: u32, c: i64) -> AlgebraElement {
        AlgebraElement::monomial(a.heights(), Monomial::new(i, j), a.field().from_int(c)).unwrap()
    }

    #[test]
    fn realizations_agree() {
        for family in [Family::AlbertZassenhaus, Family::GradedHamiltonian] {
            for (p, s, n2) in [(3, 1, 1), (3, 1, 2), (5, 1, 1), (3, 0, 2)] {
                let a = alg(family, p, s + 1, n2);
                let it = DerivationOperator::iterated_ad(&a, s).unwrap();
                let cf = DerivationOperator::closed_form(&a, s).unwrap();
                assert_eq!(cf.disagreement(&it), None, "{family} p={p} s={s} n2={n2}");
            }
        }
    }

    #[test]
    fn az_examples() {
        let a = alg(Family::AlbertZassenhaus, 3, 2, 1);
        let d = DerivationOperator::build(&a, 1).unwrap();
        assert_eq!(d.realization(), Realization::ClosedForm);
        assert_eq!(d.apply(&mono(&a, 3, 0, 1)).unwrap(), mono(&a, 0, 0, 1));
        assert_eq!(d.apply(&mono(&a, 0, 2, 1)).unwrap(), mono(&a, 6, 2, -1));
        assert!(d.satisfies_pp_relation(&a.field().one()));
        assert!(d.leibniz_violations().is_empty());
    }

    #[test]
    fn gh_d_to_the_p_vanishes() {
        for (p, n2) in [(3, 1), (3, 2), (5, 1)] {
            let a = alg(Family::GradedHamiltonian, p, 2, n2);
            let d = DerivationOperator::build(&a, 1).unwrap();
            assert!(!d.power_is_zero(p as u64 - 1));
            assert!(d.power_is_zero(p as u64));
            assert!(d.leibniz_violations().is_empty());
        }
    }

    #[test]
    fn az_d_to_the_p_is_diagonal() {
        let a = alg(Family::AlbertZassenhaus, 3, 2, 2);
        let d = DerivationOperator::build(&a, 1).unwrap();
        for (e, m) in a.basis().iter().enumerate() {
            let expected = (1 - m.j as i64).rem_euclid(3);
            match d.power_image(e, 3) {
                None => assert_eq!(expected, 0, "{m}"),
                Some((c, t)) => {
                    assert_eq!(t, e);
                    assert_eq!(c, a.field().from_int(expected));
                }
            }
        }
    }

    #[test]
    fn scaling_obeys_pp_relation() {
        let f = crate::ffield::artin_schreier_field(3).unwrap();
        let a = AlgebraDescriptor::new(Family::AlbertZassenhaus, Heights::new(3, 2, 1).unwrap(), &f).unwrap();
        let d = DerivationOperator::build(&a, 1).unwrap().scaled(&f.t());
        assert!(d.satisfies_pp_relation(&f.t()));
        assert!(!d.satisfies_pp_relation(&f.one()));
        assert!(d.leibniz_violations().is_empty());
    }

    #[test]
    fn closed_form_needs_matching_height() {
        let a = alg(Family::AlbertZassenhaus, 3, 2, 1);
        assert!(DerivationOperator::closed_form(&a, 0).is_err());
        assert_eq!(
            DerivationOperator::build(&a, 0).unwrap().realization(),
            Realization::IteratedAd
        );
    }
}
