//! Cyclic gradings, Laguerre grading switching and the closed-form switched
//! bases with their product tables.

mod basis;
mod closed;
mod switch;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use basis::{check_graded, GradedBasis, GradedEntry, GradingViolation};
pub use closed::{build_closed_basis, table_coefficient, verify_product_tables, TableViolation};
pub use switch::{eigen_decompose, laguerre_apply, switch_grading, truncated_exponential, SwitchRoute};

use crate::dpalgebra::{Heights, Monomial};
use crate::error::{Error, Result};
use crate::ffield::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GradingCase {
    #[serde(rename = "preswitch-az")]
    PreSwitchAZ,
    #[serde(rename = "preswitch-gh")]
    PreSwitchGH,
    #[serde(rename = "big-field")]
    BigField,
    #[serde(rename = "prime-field")]
    PrimeField,
}

impl GradingCase {
    /// Whether the degree formula carries the jπ shift.
    fn uses_pi(self) -> bool {
        matches!(self, GradingCase::PreSwitchGH | GradingCase::PrimeField)
    }
}

impl fmt::Display for GradingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GradingCase::PreSwitchAZ => "preswitch-az",
            GradingCase::PreSwitchGH => "preswitch-gh",
            GradingCase::BigField => "big-field",
            GradingCase::PrimeField => "prime-field",
        })
    }
}

impl FromStr for GradingCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "preswitch-az" => Ok(GradingCase::PreSwitchAZ),
            "preswitch-gh" => Ok(GradingCase::PreSwitchGH),
            "big-field" => Ok(GradingCase::BigField),
            "prime-field" => Ok(GradingCase::PrimeField),
            _ => Err(Error::parse("grading case", s, "unknown case")),
        }
    }
}

/// Index (j, k, a) of x^(a p^s) x^(k+1) y^(j+1); ordered by j, then k, then a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub j: i32,
    pub k: i32,
    pub a: u32,
}

impl Label {
    pub fn new(j: i32, k: i32, a: u32) -> Self {
        Label { j, k, a }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.j, self.k, self.a)
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |r: &str| Error::parse("label", s, r);
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err("expected (j,k,a)"))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [j, k, a] = parts[..] else {
            return Err(err("expected three components"));
        };
        Ok(Label {
            j: j.parse().map_err(|_| err("bad j"))?,
            k: k.parse().map_err(|_| err("bad k"))?,
            a: a.parse().map_err(|_| err("bad a"))?,
        })
    }
}

/// Degree map Monomial -> Z/N for one of the four cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingSpec {
    case: GradingCase,
    heights: Heights,
    s: u32,
    pi_hat: u32,
}

impl GradingSpec {
    /// `pi` must lie in the prime field for the cases whose degree formula
    /// uses it; it is ignored otherwise.
    pub fn new(case: GradingCase, heights: Heights, s: u32, pi: Option<&FieldElement>) -> Result<Self> {
        if s >= heights.n1() {
            return Err(Error::Config(format!(
                "s = {s} needs n1 > s, got n1 = {}",
                heights.n1()
            )));
        }
        if case != GradingCase::PreSwitchAZ && heights.n1() != s + 1 {
            return Err(Error::Config(format!(
                "case {case} needs n1 = s + 1, got n1 = {}, s = {s}",
                heights.n1()
            )));
        }
        let pi_hat = if case.uses_pi() {
            let pi = pi.ok_or_else(|| Error::Config(format!("case {case} needs pi")))?;
            pi.prime_residue()
                .ok_or_else(|| Error::Config(format!("pi = {pi} is not in the prime field")))?
        } else {
            0
        };
        Ok(GradingSpec {
            case,
            heights,
            s,
            pi_hat,
        })
    }

    pub fn case(&self) -> GradingCase {
        self.case
    }

    pub fn heights(&self) -> Heights {
        self.heights
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Integer representative of π in [0, p).
    pub fn pi_hat(&self) -> u32 {
        self.pi_hat
    }

    pub fn q(&self) -> u64 {
        self.heights.q() as u64
    }

    fn ps(&self) -> u32 {
        self.heights.p().pow(self.s)
    }

    /// N = p^{n1} (q - 1).
    pub fn modulus(&self) -> u64 {
        self.heights.x_bound() as u64 * (self.q() - 1)
    }

    /// Number of values taken by a.
    pub fn a_bound(&self) -> u32 {
        self.heights.x_bound() / self.ps()
    }

    pub fn label_of(&self, m: Monomial) -> Label {
        let ps = self.ps();
        Label {
            j: m.j as i32 - 1,
            k: (m.i % ps) as i32 - 1,
            a: m.i / ps,
        }
    }

    pub fn monomial_of(&self, l: Label) -> Option<Monomial> {
        let ps = self.ps() as i64;
        let (j, k) = (l.j as i64, l.k as i64);
        if j < -1 || k < -1 || k > ps - 2 || l.a >= self.a_bound() {
            return None;
        }
        let m = Monomial::new((l.a as i64 * ps + k + 1) as u32, (j + 1) as u32);
        self.heights.contains(m).then_some(m)
    }

    pub fn contains(&self, l: Label) -> bool {
        self.monomial_of(l).is_some()
    }

    /// All labels in (j, k, a) order.
    pub fn labels(&self) -> Vec<Label> {
        let mut out: Vec<Label> = self.heights.monomials().map(|m| self.label_of(m)).collect();
        out.sort();
        out
    }

    /// (1-q)((a + jπ) p^s + k) - j mod N; π = 0 where the case does not use it.
    pub fn degree_of_label(&self, l: Label) -> u64 {
        let n = self.modulus() as i128;
        let q = self.q() as i128;
        let shift = l.a as i128 + l.j as i128 * self.pi_hat as i128;
        let raw = (1 - q) * (shift * self.ps() as i128 + l.k as i128) - l.j as i128;
        raw.rem_euclid(n) as u64
    }

    pub fn degree_of(&self, m: Monomial) -> u64 {
        self.degree_of_label(self.label_of(m))
    }
}

/// Pre-switch degree of a monomial.
pub fn preswitch_degree(m: Monomial, spec: &GradingSpec) -> Result<u64> {
    if !spec.heights().contains(m) {
        return Err(Error::MonomialOutOfRange(m));
    }
    Ok(spec.degree_of(m))
}

/// σ, π and λ = σ^{-1} of a switching run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchConfig {
    sigma: FieldElement,
    pi: FieldElement,
    s: u32,
}

impl SwitchConfig {
    /// Requires (π^p - π) σ^p = 1.
    pub fn big_field(sigma: FieldElement, pi: FieldElement, s: u32) -> Result<Self> {
        let p = sigma.field().p() as u64;
        if sigma.is_zero() {
            return Err(Error::Config("sigma must be nonzero".into()));
        }
        if !((pi.pow(p) - &pi) * sigma.pow(p)).is_one() {
            return Err(Error::Config(format!(
                "(pi^p - pi) sigma^p != 1 for pi = {pi}, sigma = {sigma}"
            )));
        }
        Ok(SwitchConfig { sigma, pi, s })
    }

    /// σ = 1 and π in the prime field; π = 0 is accepted here and refused
    /// by the callers that need a genuine configuration.
    pub fn prime_field(pi: FieldElement, s: u32) -> Result<Self> {
        if pi.prime_residue().is_none() {
            return Err(Error::Config(format!("pi = {pi} is not in the prime field")));
        }
        Ok(SwitchConfig {
            sigma: pi.field().one(),
            pi,
            s,
        })
    }

    pub fn sigma(&self) -> &FieldElement {
        &self.sigma
    }

    pub fn pi(&self) -> &FieldElement {
        &self.pi
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn lambda(&self) -> FieldElement {
        self.sigma.inv().expect("sigma is nonzero")
    }

    /// ν = -1 + 1/π, or `None` when π = 0.
    pub fn nu(&self) -> Option<FieldElement> {
        let inv = self.pi.inv().ok()?;
        Some(inv - self.pi.field().one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    #[test]
    fn preswitch_examples() {
        let h = Heights::new(3, 2, 2).unwrap();
        let az = GradingSpec::new(GradingCase::PreSwitchAZ, h, 1, None).unwrap();
        assert_eq!(az.modulus(), 72);
        assert_eq!(preswitch_degree(Monomial::new(1, 0), &az).unwrap(), 1);
        assert_eq!(preswitch_degree(Monomial::new(0, 8), &az).unwrap(), 1);

        let f = Field::prime(5).unwrap();
        let h = Heights::new(5, 2, 1).unwrap();
        for pi in 1..5 {
            let gh = GradingSpec::new(GradingCase::PreSwitchGH, h, 1, Some(&f.from_int(pi))).unwrap();
            assert_eq!(preswitch_degree(Monomial::new(0, 1), &gh).unwrap(), 4);
        }
    }

    #[test]
    fn labels_biject_with_monomials() {
        let h = Heights::new(3, 2, 2).unwrap();
        let spec = GradingSpec::new(GradingCase::BigField, h, 1, None).unwrap();
        let labels = spec.labels();
        assert_eq!(labels.len(), 81);
        assert_eq!(labels[0], Label::new(-1, -1, 0));
        for l in labels {
            assert_eq!(spec.label_of(spec.monomial_of(l).unwrap()), l);
        }
        assert!(!spec.contains(Label::new(-1, 2, 0)));
        assert!(!spec.contains(Label::new(8, 0, 0)));
    }

    #[test]
    fn label_text() {
        let l: Label = "(-1,0,2)".parse().unwrap();
        assert_eq!(l, Label::new(-1, 0, 2));
        assert_eq!(l.to_string(), "(-1,0,2)");
        assert!("(1,2)".parse::<Label>().is_err());
    }

    #[test]
    fn switch_config_constraint() {
        let f = crate::ffield::artin_schreier_field(3).unwrap();
        assert!(SwitchConfig::big_field(f.one(), f.t(), 1).is_ok());
        assert!(SwitchConfig::big_field(f.one(), f.one(), 1).is_err());
        let cfg = SwitchConfig::prime_field(Field::prime(5).unwrap().from_int(2), 1).unwrap();
        assert_eq!(cfg.nu().unwrap().prime_residue(), Some(2));
    }
}
