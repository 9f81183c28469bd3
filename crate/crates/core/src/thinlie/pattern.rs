use std::collections::BTreeMap;
use std::fmt;

use super::report::{DiamondKind, DiamondType, ThinReport};
use crate::error::Result;
use crate::ffield::FieldElement;
use crate::grading::GradingCase;

/// Degrees t(q - 1) + 1 with t >= 1, up to `max_degree`.
pub fn slot_degrees(q: u64, max_degree: u64) -> Vec<u64> {
    (1..)
        .map(|t| t * (q - 1) + 1)
        .take_while(|&d| d <= max_degree)
        .collect()
}

/// Expected kind at the m-th finite slot, degree q + m p^s (q - 1):
/// -1 + m(ν + 1), read as a fake diamond when that value is 0 or 1.
pub fn expected_finite_type(nu: &FieldElement, m: u64) -> DiamondKind {
    let f = nu.field();
    let mu = (nu + &f.one()).mul_int(m as i64) - f.one();
    if mu.is_zero() {
        DiamondKind::Fake(0)
    } else if mu.is_one() {
        DiamondKind::Fake(1)
    } else {
        DiamondKind::Genuine(DiamondType::Finite(mu))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub check: &'static str,
    pub degree: u64,
    pub found: String,
    pub expected: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}: found {}, expected {}",
            self.degree, self.found, self.expected
        )
    }
}

fn describe(kind: Option<&DiamondKind>) -> String {
    match kind {
        None => "no diamond".into(),
        Some(DiamondKind::Anomaly(s)) => format!("anomaly ({s})"),
        Some(k) => k.token(),
    }
}

/// Compares the diamond records of a report with the predicted pattern.
pub fn verify_pattern(report: &ThinReport) -> Result<Vec<Discrepancy>> {
    let params = &report.params;
    let field = params.field()?;
    let nu = params.nu_element(&field)?;
    let (q, ps, max) = (params.q, params.ps(), params.max_degree);
    let slots = slot_degrees(q, max);
    let records: BTreeMap<u64, &DiamondKind> = report.diamonds.iter().map(|d| (d.degree, &d.kind)).collect();
    let mut out = Vec::new();
    let mut push = |check, degree, found: String, expected: String| {
        out.push(Discrepancy {
            check,
            degree,
            found,
            expected,
        })
    };

    for c in &report.components {
        let is_slot = slots.binary_search(&c.degree).is_ok();
        if c.degree > 1 && c.dim == 2 && !is_slot {
            push(
                "diamond_degrees",
                c.degree,
                "dimension 2".into(),
                "dimension 1 off the slots".into(),
            );
        }
    }
    for &d in &slots {
        let kind = records.get(&d).copied();
        if !matches!(kind, Some(DiamondKind::Genuine(_) | DiamondKind::Fake(_))) {
            push("diamond_degrees", d, describe(kind), "a diamond or fake diamond".into());
            continue;
        }
        let t = (d - 1) / (q - 1);
        let finite = (t - 1) % ps == 0;
        if !finite {
            if kind != Some(&DiamondKind::Genuine(DiamondType::Infinity)) {
                push("slot_kinds", d, describe(kind), "inf".into());
            }
            continue;
        }
        if kind == Some(&DiamondKind::Genuine(DiamondType::Infinity)) {
            push("slot_kinds", d, "inf".into(), "finite or fake".into());
            continue;
        }
        let m = (t - 1) / ps;
        match &nu {
            Some(nu) => {
                let expected = expected_finite_type(nu, m);
                if kind != Some(&expected) {
                    push("finite_types", d, describe(kind), expected.token());
                }
            }
            None => push(
                "finite_types",
                d,
                describe(kind),
                "a progression (nu undefined for pi = 0)".into(),
            ),
        }
        if params.case == GradingCase::BigField && matches!(kind, Some(DiamondKind::Fake(_))) {
            push("no_fakes", d, describe(kind), "a genuine diamond".into());
        }
    }
    let second = records.get(&q).copied();
    let minus_one = DiamondKind::Genuine(DiamondType::Finite(-field.one()));
    if q <= max && second != Some(&minus_one) {
        push("second_diamond", q, describe(second), minus_one.token());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    #[test]
    fn slots() {
        assert_eq!(slot_degrees(9, 40), vec![9, 17, 25, 33]);
        assert_eq!(slot_degrees(5, 4), Vec::<u64>::new());
    }

    #[test]
    fn progression_has_period_p() {
        let f = Field::prime(5).unwrap();
        let nu = f.from_int(2);
        assert_eq!(
            expected_finite_type(&nu, 0),
            DiamondKind::Genuine(DiamondType::Finite(-f.one()))
        );
        assert_eq!(
            expected_finite_type(&nu, 1),
            DiamondKind::Genuine(DiamondType::Finite(nu.clone()))
        );
        assert_eq!(expected_finite_type(&nu, 5), expected_finite_type(&nu, 0));
        // -1 + 3m: m = 2 gives 0, m = 4 gives 1
        assert_eq!(expected_finite_type(&nu, 2), DiamondKind::Fake(0));
        assert_eq!(expected_finite_type(&nu, 4), DiamondKind::Fake(1));
    }
}
