use std::fmt;

use rayon::prelude::*;

use super::{GradedBasis, GradedEntry, GradingCase, GradingSpec, Label, SwitchConfig};
use crate::dpalgebra::{generalized_power, AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::ffield::{falling_binomial, lucas_binomial, Field, FieldElement};
use crate::liealg::{AlgebraDescriptor, Family};

fn factorial(field: &Field, a: u32) -> FieldElement {
    (1..=a as i64).fold(field.one(), |acc, i| acc.mul_int(i))
}

/// c_{j,a} = a! σ^a C(-jπ+a, a) / C(-jπ+p-1, p-1).
fn big_field_scalar(cfg: &SwitchConfig, j: i32, a: u32) -> Result<FieldElement> {
    let field = cfg.sigma().field();
    let p = field.p();
    let base = -cfg.pi().mul_int(j as i64);
    let num = factorial(field, a)
        * cfg.sigma().pow(a as u64)
        * falling_binomial(&(&base + &field.from_int(a as i64)), a as u64)?;
    let den = falling_binomial(&(&base + &field.from_int(p as i64 - 1)), p as u64 - 1)?;
    let inv = den
        .inv()
        .map_err(|_| Error::Hypothesis(format!("C(-j pi + p - 1, p - 1) vanishes at j = {j}")))?;
    Ok(num * inv)
}

/// The explicit switched basis of the case (monomials for pre-switch cases).
pub fn build_closed_basis(spec: &GradingSpec, field: &Field, cfg: &SwitchConfig) -> Result<GradedBasis> {
    let h = spec.heights();
    if field.p() != h.p() {
        return Err(Error::Config("field and heights have different characteristic".into()));
    }
    if cfg.s() != spec.s() {
        return Err(Error::Config(format!(
            "switch s = {} differs from grading s = {}",
            cfg.s(),
            spec.s()
        )));
    }
    let ps = h.p().pow(spec.s());
    let q = h.q() as i32;
    let top = Monomial::new(h.x_top(), h.y_top());
    let mut entries = Vec::new();
    for label in spec.labels() {
        let Label { j, k, a } = label;
        let mono = Monomial::new((k + 1) as u32, (j + 1) as u32);
        let tail = AlgebraElement::monomial(h, mono, field.one())?;
        let (vector, scalar) = match spec.case() {
            GradingCase::PreSwitchAZ | GradingCase::PreSwitchGH => (
                AlgebraElement::monomial(h, spec.monomial_of(label).unwrap(), field.one())?,
                field.one(),
            ),
            GradingCase::BigField => {
                let alpha = -cfg.pi().mul_int(j as i64) + field.from_int(a as i64);
                let head = generalized_power(h, cfg.sigma(), &alpha, spec.s())?;
                (head.checked_mul(&tail)?, big_field_scalar(cfg, j, a)?)
            }
            GradingCase::PrimeField => {
                if label == Label::new(-1, -1, 0) || label == Label::new(q - 2, ps as i32 - 2, h.p() - 1) {
                    continue;
                }
                let head = generalized_power(h, &field.one(), &field.from_int(a as i64), spec.s())?;
                let v = head.checked_mul(&tail)?.retain(|m| m != Monomial::ONE);
                (v, factorial(field, a))
            }
        };
        let gh = matches!(spec.case(), GradingCase::PreSwitchGH | GradingCase::PrimeField);
        if gh && (vector.is_zero() || vector.coeff(top).is_some() || vector.coeff(Monomial::ONE).is_some()) {
            if spec.case() == GradingCase::PreSwitchGH {
                continue;
            }
            return Err(Error::NotABasis(format!(
                "e{label} leaves the graded Hamiltonian algebra"
            )));
        }
        entries.push(GradedEntry {
            label,
            degree: spec.degree_of_label(label),
            vector,
            scalar,
        });
    }
    GradedBasis::new(h, field, spec.modulus(), entries)
}

fn binom(n: i64, k: i64, p: u32) -> i64 {
    lucas_binomial(n, k, p) as i64
}

/// Right side of the product table: {e_left, e_right} = coefficient e_target.
pub fn table_coefficient(
    spec: &GradingSpec,
    cfg: &SwitchConfig,
    left: Label,
    right: Label,
) -> Result<(FieldElement, Label)> {
    let field = cfg.pi().field();
    let p = spec.heights().p();
    let ps = p.pow(spec.s()) as i32;
    let (j, k, a) = (left.j as i64, left.k as i64, left.a as i64);
    let (l, h, b) = (right.j as i64, right.k as i64, right.a as i64);
    if k + h >= -1 {
        let c = binom(k + h + 1, h, p) * binom(j + l + 1, j, p) - binom(k + h + 1, k, p) * binom(j + l + 1, l, p);
        let target = Label::new((j + l) as i32, (k + h) as i32, ((a + b) % p as i64) as u32);
        return Ok((field.from_int(c), target));
    }
    let target = Label::new((j + l) as i32, ps - 2, ((a + b - 1).rem_euclid(p as i64)) as u32);
    let (cj, cl) = (
        field.from_int(binom(j + l + 1, j, p)),
        field.from_int(binom(j + l + 1, l, p)),
    );
    let coef = match spec.case() {
        GradingCase::BigField => {
            let wl = -cfg.pi().mul_int(l) + field.from_int(b);
            let wj = -cfg.pi().mul_int(j) + field.from_int(a);
            cfg.sigma() * &(cj * wl - cl * wj)
        }
        GradingCase::PrimeField => cj.mul_int(b) - cl.mul_int(a),
        case => return Err(Error::Config(format!("no product table for case {case}"))),
    };
    Ok((coef, target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableViolation {
    pub left: Label,
    pub right: Label,
    pub target: Label,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{e{}, e{}}}: table gives {} (target e{}), bracket gives {}",
            self.left, self.right, self.expected, self.target, self.actual
        )
    }
}

/// Compares every bracket of closed-form basis vectors with the table. A
/// target label outside the index range must come with coefficient 0.
/// Pairs involving a zero placeholder are skipped.
pub fn verify_product_tables(
    alg: &AlgebraDescriptor,
    spec: &GradingSpec,
    cfg: &SwitchConfig,
    basis: &GradedBasis,
) -> Result<Vec<TableViolation>> {
    let expected_family = match spec.case() {
        GradingCase::BigField => Family::AlbertZassenhaus,
        GradingCase::PrimeField => Family::GradedHamiltonian,
        case => return Err(Error::Config(format!("no product table for case {case}"))),
    };
    if alg.family() != expected_family {
        return Err(Error::Config(format!(
            "case {} needs the {expected_family} family",
            spec.case()
        )));
    }
    let labels = spec.labels();
    let found: Result<Vec<Vec<TableViolation>>> = labels
        .par_iter()
        .map(|&left| {
            let mut out = Vec::new();
            if basis.get(left).is_none() {
                return Ok(out);
            }
            let u = basis.vector(left);
            for &right in &labels {
                if basis.get(right).is_none() {
                    continue;
                }
                let v = basis.vector(right);
                let actual = alg.bracket(&u, &v)?;
                let (coef, target) = table_coefficient(spec, cfg, left, right)?;
                let expected = if spec.contains(target) {
                    basis.vector(target).scale(&coef)
                } else if coef.is_zero() {
                    AlgebraElement::zero(alg.heights())
                } else {
                    // nonzero multiple of a nonexistent element
                    out.push(TableViolation {
                        left,
                        right,
                        target,
                        expected: format!("{coef} * e{target}"),
                        actual: actual.to_string(),
                    });
                    continue;
                };
                if expected != actual {
                    out.push(TableViolation {
                        left,
                        right,
                        target,
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                    });
                }
            }
            Ok(out)
        })
        .collect();
    Ok(found?.into_iter().flatten().collect())
}
