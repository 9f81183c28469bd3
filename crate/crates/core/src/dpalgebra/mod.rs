//! The divided power algebra O(2; (n1, n2)) with basis x^(i) y^(j).

mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{falling_binomial, lucas_binomial, Field, FieldElement};

/// Largest number of monomials we are willing to index densely.
const MAX_MONOMIALS: u64 = 1 << 16;

/// Heights n1, n2 of the indeterminates x and y over characteristic p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Heights {
    p: u32,
    n1: u32,
    n2: u32,
}

impl Heights {
    pub fn new(p: u32, n1: u32, n2: u32) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidHeights(format!(
                "heights must be positive, got ({n1}, {n2})"
            )));
        }
        if !crate::ffield::is_prime(p as u64) {
            return Err(Error::InvalidHeights(format!("{p} is not a prime")));
        }
        let size = (p as u64).checked_pow(n1 + n2);
        if size.is_none_or(|s| s > MAX_MONOMIALS) {
            return Err(Error::InvalidHeights(format!(
                "p^(n1+n2) = {p}^{} is too large",
                n1 + n2
            )));
        }
        Ok(Heights { p, n1, n2 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    /// p^n1: exclusive bound on x-exponents.
    pub fn x_bound(&self) -> u32 {
        self.p.pow(self.n1)
    }

    /// p^n2: exclusive bound on y-exponents.
    pub fn y_bound(&self) -> u32 {
        self.p.pow(self.n2)
    }

    /// q = p^n2.
    pub fn q(&self) -> u32 {
        self.y_bound()
    }

    /// Exponent of x-bar.
    pub fn x_top(&self) -> u32 {
        self.x_bound() - 1
    }

    /// Exponent of y-bar.
    pub fn y_top(&self) -> u32 {
        self.y_bound() - 1
    }

    pub fn num_monomials(&self) -> usize {
        (self.x_bound() * self.y_bound()) as usize
    }

    pub fn contains(&self, m: Monomial) -> bool {
        m.i < self.x_bound() && m.j < self.y_bound()
    }

    /// Dense position of a monomial, ordered lexicographically by (i, j).
    pub fn index(&self, m: Monomial) -> usize {
        (m.i * self.y_bound() + m.j) as usize
    }

    pub fn monomial_at(&self, idx: usize) -> Monomial {
        let yb = self.y_bound() as usize;
        Monomial::new((idx / yb) as u32, (idx % yb) as u32)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.num_monomials()).map(move |k| self.monomial_at(k))
    }
}

impl fmt::Display for Heights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, n1={}, n2={})", self.p, self.n1, self.n2)
    }
}

/// x^(i) y^(j); ordered lexicographically by (i, j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { i: 0, j: 0 };

    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^({})y^({})", self.i, self.j)
    }
}

/// Coefficient C(i+k, i) C(j+l, j) mod p and target of x^(i)y^(j) * x^(k)y^(l),
/// or `None` when the product vanishes.
pub(crate) fn mono_product(h: &Heights, a: Monomial, b: Monomial) -> Option<(u32, Monomial)> {
    let (i, j) = (a.i + b.i, a.j + b.j);
    let p = h.p();
    let c = lucas_binomial(i as i64, a.i as i64, p) * lucas_binomial(j as i64, a.j as i64, p) % p;
    if i >= h.x_bound() || j >= h.y_bound() {
        // exponent overflow forces a base-p carry
        debug_assert_eq!(c, 0, "overflowing product {a} * {b} has nonzero coefficient");
        return None;
    }
    (c != 0).then_some((c, Monomial::new(i, j)))
}

/// Sparse element of O(2; (n1, n2)); zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    heights: Heights,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl AlgebraElement {
    pub fn zero(heights: Heights) -> Self {
        AlgebraElement {
            heights,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(heights: Heights, m: Monomial, coef: FieldElement) -> Result<Self> {
        Self::from_terms(heights, [(m, coef)])
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms(heights: Heights, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Result<Self> {
        let mut out = Self::zero(heights);
        for (m, c) in terms {
            if !heights.contains(m) {
                return Err(Error::MonomialOutOfRange(m));
            }
            out.add_term(m, &c)?;
        }
        Ok(out)
    }

    pub fn heights(&self) -> Heights {
        self.heights
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, m: Monomial) -> Option<&FieldElement> {
        self.terms.get(&m)
    }

    /// Field of the coefficients; `None` for the zero element.
    pub fn field(&self) -> Option<&Field> {
        self.terms.values().next().map(FieldElement::field)
    }

    /// Adds `coef * m` in place.
    pub fn add_term(&mut self, m: Monomial, coef: &FieldElement) -> Result<()> {
        if let Some(f) = self.field() {
            if !f.same(coef.field()) {
                return Err(Error::Field(crate::ffield::FieldError::Mismatch(
                    f.params().to_string(),
                    coef.field().params().to_string(),
                )));
            }
        }
        if coef.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                let sum = &*c + coef;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(m, coef.clone());
            }
        }
        Ok(())
    }

    /// self += coef * other
    pub fn add_scaled(&mut self, coef: &FieldElement, other: &AlgebraElement) -> Result<()> {
        self.check(other)?;
        if coef.is_zero() {
            return Ok(());
        }
        for (m, c) in &other.terms {
            self.add_term(*m, &(coef * c))?;
        }
        Ok(())
    }

    fn check(&self, other: &AlgebraElement) -> Result<()> {
        if self.heights != other.heights {
            return Err(Error::HeightsMismatch(self.heights, other.heights));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, coef: &FieldElement) -> AlgebraElement {
        if coef.is_zero() {
            return Self::zero(self.heights);
        }
        AlgebraElement {
            heights: self.heights,
            terms: self.terms.iter().map(|(m, c)| (*m, c * coef)).collect(),
        }
    }

    /// Divided-power product, extended bilinearly.
    pub fn checked_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        let mut out = Self::zero(self.heights);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((c, m)) = mono_product(&self.heights, *a, *b) {
                    out.add_term(m, &(ca * cb).mul_int(c as i64))?;
                }
            }
        }
        Ok(out)
    }

    /// Copy without the terms on which `keep` returns false.
    pub fn retain(&self, mut keep: impl FnMut(Monomial) -> bool) -> AlgebraElement {
        AlgebraElement {
            heights: self.heights,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Dense raw coordinates over all monomials.
    pub(crate) fn to_raw(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.heights.num_monomials()];
        for (m, c) in &self.terms {
            v[self.heights.index(*m)] = c.raw();
        }
        v
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("incompatible algebra elements")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("incompatible algebra elements")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            heights: self.heights,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Single product of two monomials, as an element over `field`.
pub fn mono_mul(field: &Field, heights: Heights, a: Monomial, b: Monomial) -> Result<AlgebraElement> {
    for m in [a, b] {
        if !heights.contains(m) {
            return Err(Error::MonomialOutOfRange(m));
        }
    }
    let mut out = AlgebraElement::zero(heights);
    if let Some((c, m)) = mono_product(&heights, a, b) {
        out.add_term(m, &field.from_int(c as i64))?;
    }
    Ok(out)
}

/// (1 + sigma x^(p^s))^alpha = sum_i C(alpha, i) i! sigma^i x^(i p^s), i < p.
pub fn generalized_power(
    heights: Heights,
    sigma: &FieldElement,
    alpha: &FieldElement,
    s: u32,
) -> Result<AlgebraElement> {
    let field = sigma.field();
    let p = heights.p();
    let step = (p as u64).checked_pow(s).unwrap_or(u64::MAX);
    if step >= heights.x_bound() as u64 {
        return Err(Error::NoGenerator(step));
    }
    let mut out = AlgebraElement::zero(heights);
    let mut fact = field.one();
    let mut sigma_pow = field.one();
    for i in 0..p as u64 {
        if i > 0 {
            fact = fact.mul_int(i as i64);
            sigma_pow = &sigma_pow * sigma;
        }
        let exponent = i * step;
        if exponent >= heights.x_bound() as u64 {
            break;
        }
        let coef = falling_binomial(alpha, i)? * &fact * &sigma_pow;
        out.add_term(Monomial::new(exponent as u32, 0), &coef)?;
    }
    Ok(out)
}
