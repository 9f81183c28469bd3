use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use super::irreducible::is_irreducible;

/// Largest field order we build log/exp tables for.
const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("modulus {0} is reducible")]
    Reducible(String),
    #[error("field of order {0} is too large")]
    TooLarge(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands belong to different fields ({0} vs {1})")]
    Mismatch(String, String),
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("{i}! is not invertible in characteristic {p}")]
    FactorialNotInvertible { i: u64, p: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl FieldError {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        FieldError::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Characteristic plus a monic irreducible modulus (coefficients low to high).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    modulus: Vec<u32>,
}

impl FieldParams {
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if modulus.len() < 2 {
            return Err(FieldError::BadModulus("degree must be at least 1".into()));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(FieldError::BadModulus(format!(
                "coefficient {c} is not reduced mod {p}"
            )));
        }
        if modulus.last() != Some(&1) {
            return Err(FieldError::BadModulus("modulus is not monic".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let order = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(FieldError::TooLarge(order));
        }
        let params = FieldParams { p, modulus };
        if !is_irreducible(p, &params.modulus) {
            return Err(FieldError::Reducible(params.to_string()));
        }
        Ok(params)
    }

    /// The prime field F_p, realized with modulus `x`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree m.
    pub fn degree(&self) -> u32 {
        (self.modulus.len() - 1) as u32
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree())
    }
}

/// `p^m:c0,c1,...,cm`
impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:", self.p, self.degree())?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FieldParams {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| FieldError::parse("field spec", s, reason);
        let (head, coeffs) = s.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let (p, m) = head.split_once('^').ok_or_else(|| err("missing '^'"))?;
        let p: u32 = p.trim().parse().map_err(|_| err("bad characteristic"))?;
        let m: usize = m.trim().parse().map_err(|_| err("bad degree"))?;
        let modulus = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("bad coefficient"))?;
        if modulus.len() != m.saturating_add(1) {
            return Err(err("expected m+1 modulus coefficients"));
        }
        FieldParams::new(p, modulus)
    }
}

struct FieldInner {
    params: FieldParams,
    p: u32,
    m: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field F_{p^m}. Elements are encoded as `c0 + c1 p + ... + c_{m-1} p^{m-1}`.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl Field {
    pub fn new(params: FieldParams) -> Self {
        let p = params.p();
        let m = params.degree();
        let order = params.order();
        let mut inner = FieldInner {
            params,
            p,
            m,
            order,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let generator = find_generator(&inner);
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for e in 0..order - 1 {
            exp.push(x);
            log[x as usize] = e;
            x = slow_mul(&inner, x, generator);
        }
        inner.exp = exp;
        inner.log = log;
        Field(Arc::new(inner))
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Ok(Field::new(FieldParams::prime(p)?))
    }

    pub fn params(&self) -> &FieldParams {
        &self.0.params
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.params == other.0.params
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(self.raw_int(n))
    }

    /// The residue class of `t`; equals a prime-field constant when m = 1.
    pub fn t(&self) -> FieldElement {
        if self.0.m == 1 {
            let c0 = self.0.params.modulus()[0];
            return self.wrap((self.0.p - c0) % self.0.p);
        }
        self.wrap(self.0.p)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.m as usize {
            return Err(FieldError::Dimension(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.0.m
            )));
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(FieldError::BadModulus(format!("coefficient {c} out of range")));
            }
            v = v * self.0.p + c;
        }
        Ok(self.wrap(v))
    }

    /// All elements, ordered lexicographically by coefficient sequence (c0 first).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let (p, m) = (self.0.p, self.0.m);
        (0..self.0.order).map(move |idx| {
            // idx enumerates digits with c0 most significant
            let mut rest = idx;
            let mut digits = vec![0u32; m as usize];
            for d in digits.iter_mut().rev() {
                *d = rest % p;
                rest /= p;
            }
            let mut v = 0;
            for &c in digits.iter().rev() {
                v = v * p + c;
            }
            self.wrap(v)
        })
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        parse_element(self, s)
    }

    pub(crate) fn wrap(&self, value: u32) -> FieldElement {
        debug_assert!(value < self.0.order);
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub(crate) fn raw_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub(crate) fn raw_add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub(crate) fn raw_neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub(crate) fn raw_sub(&self, a: u32, b: u32) -> u32 {
        self.raw_add(a, self.raw_neg(b))
    }

    #[inline]
    pub(crate) fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.m == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        let n = self.0.order - 1;
        let e = self.0.log[a as usize] + self.0.log[b as usize];
        self.0.exp[(if e >= n { e - n } else { e }) as usize]
    }

    #[inline]
    pub(crate) fn raw_inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.0.order - 1;
        let l = self.0.log[a as usize];
        Some(self.0.exp[((n - l) % n) as usize])
    }

    pub(crate) fn raw_pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }

    /// Prime-subfield residue of an encoded value, if it lies in F_p.
    pub(crate) fn raw_prime_residue(&self, a: u32) -> Option<u32> {
        (a < self.0.p).then_some(a)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.params)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Field {}

fn slow_mul(f: &FieldInner, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p as u64, f.m as usize);
    let digits = |mut v: u32| {
        let mut d = vec![0u64; m];
        for x in d.iter_mut() {
            *x = (v % f.p) as u64;
            v /= f.p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, x) in da.iter().enumerate() {
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let modulus = f.params.modulus();
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (k, &mk) in modulus[..m].iter().enumerate() {
            let idx = top - m + k;
            prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
        }
    }
    prod[..m].iter().rev().fold(0u32, |acc, &d| acc * f.p + d as u32)
}

fn slow_pow(f: &FieldInner, a: u32, mut e: u64) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(f, acc, base);
        }
        base = slow_mul(f, base, base);
        e >>= 1;
    }
    acc
}

fn find_generator(f: &FieldInner) -> u32 {
    let n = (f.order - 1) as u64;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            factors.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    (1..f.order)
        .find(|&g| factors.iter().all(|&r| slow_pow(f, g, n / r) != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

/// Supported arithmetic for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    /// Inverts the first operand; the second is ignored.
    Inv,
    Pow(u64),
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(e) => Ok(a.pow(e)),
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn raw(&self) -> u32 {
        self.value
    }

    /// Coefficients c0..c_{m-1} of the polynomial representative.
    pub fn coeffs(&self) -> Vec<u32> {
        let p = self.field.p();
        let mut v = self.value;
        (0..self.field.degree())
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// Some(r) when the element is the prime-field residue r.
    pub fn prime_residue(&self) -> Option<u32> {
        self.field.raw_prime_residue(self.value)
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(FieldError::Mismatch(
                self.field.params().to_string(),
                other.field.params().to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.raw_add(self.value, other.value)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.raw_sub(self.value, other.value)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.raw_mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.field
            .raw_inv(self.value)
            .map(|v| self.field.wrap(v))
            .ok_or(FieldError::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.wrap(self.field.raw_pow(self.value, e))
    }

    /// Integer multiple `n * self`.
    pub fn mul_int(&self, n: i64) -> Self {
        let c = self.field.raw_int(n);
        self.field.wrap(self.field.raw_mul(self.value, c))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field.same(&other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.raw_neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Canonical text: a residue for prime fields, otherwise a polynomial in `t`
/// with descending powers, e.g. `2t^2+t+1`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.value);
        }
        let coeffs = self.coeffs();
        let mut first = true;
        for (k, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts the canonical form plus signs, `*`, and unreduced integers.
fn parse_element(field: &Field, s: &str) -> Result<FieldElement, FieldError> {
    let err = |reason: &str| FieldError::parse("field element", s, reason);
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let t = field.t();
    let mut acc = field.zero();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if std::ptr::eq(rest, compact.as_str()) => (false, rest),
            _ => return Err(err("expected '+' or '-'")),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let (coef_text, power_text) = match term.find('t') {
            Some(pos) => (&term[..pos], Some(&term[pos + 1..])),
            None => (term, None),
        };
        let coef_text = coef_text.strip_suffix('*').unwrap_or(coef_text);
        let coef = if coef_text.is_empty() {
            if power_text.is_none() {
                return Err(err("empty coefficient"));
            }
            1
        } else {
            coef_text.parse::<i64>().map_err(|_| err("bad coefficient"))?
        };
        let mut value = field.from_int(coef);
        if let Some(pt) = power_text {
            if field.degree() == 1 {
                return Err(err("'t' is not available in a prime field"));
            }
            let power = if pt.is_empty() {
                1
            } else {
                pt.strip_prefix('^')
                    .ok_or_else(|| err("expected '^' after 't'"))?
                    .parse::<u64>()
                    .map_err(|_| err("bad exponent"))?
            };
            value = value * t.pow(power);
        }
        acc = if negative { acc - value } else { acc + value };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f27() -> Field {
        Field::new(FieldParams::new(3, vec![2, 2, 0, 1]).unwrap())
    }

    #[test]
    fn mod_three_addition() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.from_int(2) + f.from_int(2), f.from_int(1));
    }

    #[test]
    fn inverse_of_two_mod_five() {
        let f = Field::prime(5).unwrap();
        let expected = (0..5).find(|x| (2 * x) % 5 == 1).unwrap();
        assert_eq!(f.from_int(2).inv().unwrap(), f.from_int(expected));
    }

    #[test]
    fn reduction_in_f27() {
        let f = f27();
        let t = f.t();
        let t2 = f.from_coeffs(&[0, 0, 1]).unwrap();
        assert_eq!(&t * &t2, f.from_coeffs(&[1, 1, 0]).unwrap());
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = f27();
        assert_eq!(f.zero().inv(), Err(FieldError::ZeroInverse));
        let arith = field_arith(&f.zero(), &f.one(), FieldOp::Inv);
        assert_eq!(arith, Err(FieldError::ZeroInverse));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = Field::prime(3).unwrap().one();
        let b = Field::prime(5).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(FieldError::Mismatch(..))));
        assert!(field_arith(&a, &b, FieldOp::Mul).is_err());
    }

    #[test]
    fn params_text_round_trip() {
        let params: FieldParams = "3^3:2,2,0,1".parse().unwrap();
        assert_eq!(params.to_string(), "3^3:2,2,0,1");
        assert!("3^3:1,0,0,1".parse::<FieldParams>().is_err()); // x^3+1 has root 2
        assert!("4^1:0,1".parse::<FieldParams>().is_err());
        assert!("2^1:0,1".parse::<FieldParams>().is_err());
        assert!("3^2:1,0,2".parse::<FieldParams>().is_err());
        assert!("3^2:1,0".parse::<FieldParams>().is_err());
    }

    #[test]
    fn element_text() {
        let f = f27();
        for e in f.elements() {
            let text = e.to_string();
            assert_eq!(f.parse_element(&text).unwrap(), e, "{text}");
        }
        assert_eq!(f.parse_element("t^3").unwrap(), f.parse_element("t+1").unwrap());
        assert_eq!(f.parse_element("-1").unwrap().to_string(), "2");
        assert_eq!(f.parse_element("2*t^2 - t").unwrap().to_string(), "2t^2+2t");
        assert!(f.parse_element("").is_err());
        assert!(f.parse_element("t^").is_err());
        assert!(f.parse_element("1++t").is_err());
        assert!(Field::prime(5).unwrap().parse_element("t").is_err());
    }

    #[test]
    fn elements_are_lexicographic() {
        let f = f27();
        let all: Vec<Vec<u32>> = f.elements().map(|e| e.coeffs()).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 27);
    }

    #[test]
    fn t_in_prime_field_is_root_of_modulus() {
        let f = Field::new(FieldParams::new(5, vec![3, 1]).unwrap());
        assert_eq!(f.t(), f.from_int(2));
    }
}
