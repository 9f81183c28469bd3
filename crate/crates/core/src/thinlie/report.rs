use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pattern::{slot_degrees, verify_pattern};
use super::{expand_loop, LoopConfig};
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElement, FieldParams};
use crate::grading::{GradingCase, GradingSpec, SwitchConfig};
use crate::liealg::{AlgebraDescriptor, Family};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiamondType {
    Finite(FieldElement),
    Infinity,
}

impl fmt::Display for DiamondType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiamondType::Finite(mu) => write!(f, "{mu}"),
            DiamondType::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiamondKind {
    Genuine(DiamondType),
    /// Type 0 or 1.
    Fake(u8),
    Anomaly(String),
}

impl DiamondKind {
    /// Token used by the text timeline.
    pub fn token(&self) -> String {
        match self {
            DiamondKind::Genuine(t) => t.to_string(),
            DiamondKind::Fake(t) => format!("fake{t}"),
            DiamondKind::Anomaly(_) => "anomaly".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondRecord {
    pub degree: u64,
    pub kind: DiamondKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub degree: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Reported but not asserted.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl CheckResult {
    pub fn pass() -> Self {
        CheckResult {
            pass: true,
            counterexample: None,
            informational: false,
        }
    }

    pub fn fail(counterexample: impl Into<String>) -> Self {
        CheckResult {
            pass: false,
            counterexample: Some(counterexample.into()),
            informational: false,
        }
    }

    fn from_first(first: Option<String>) -> Self {
        first.map_or_else(CheckResult::pass, CheckResult::fail)
    }

    fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

/// Echo of the run configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub p: u32,
    pub n: u32,
    pub s: u32,
    pub case: GradingCase,
    pub family: Family,
    pub field: String,
    pub pi: String,
    pub sigma: String,
    pub nu: Option<String>,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub q: u64,
    pub max_degree: u64,
}

impl ReportParams {
    pub fn new(alg: &AlgebraDescriptor, spec: &GradingSpec, cfg: &SwitchConfig, max_degree: u64) -> Self {
        let h = alg.heights();
        ReportParams {
            p: h.p(),
            n: h.n2(),
            s: spec.s(),
            case: spec.case(),
            family: alg.family(),
            field: alg.field().params().to_string(),
            pi: cfg.pi().to_string(),
            sigma: cfg.sigma().to_string(),
            nu: cfg.nu().map(|nu| nu.to_string()),
            modulus: spec.modulus(),
            q: spec.q(),
            max_degree,
        }
    }

    pub fn field(&self) -> Result<Field> {
        let params: FieldParams = self.field.parse()?;
        Ok(Field::new(params))
    }

    pub fn nu_element(&self, field: &Field) -> Result<Option<FieldElement>> {
        Ok(self.nu.as_deref().map(|nu| field.parse_element(nu)).transpose()?)
    }

    /// p^s.
    pub fn ps(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "wire::Report", try_from = "wire::Report")]
pub struct ThinReport {
    pub params: ReportParams,
    pub components: Vec<ComponentSummary>,
    pub diamonds: Vec<DiamondRecord>,
    pub checks: BTreeMap<String, CheckResult>,
}

mod wire {
    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct Diamond {
        pub degree: u64,
        pub kind: String,
        #[serde(rename = "type")]
        pub ty: String,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Report {
        pub params: ReportParams,
        pub components: Vec<ComponentSummary>,
        pub diamonds: Vec<Diamond>,
        pub checks: BTreeMap<String, CheckResult>,
    }

    impl From<ThinReport> for Report {
        fn from(r: ThinReport) -> Self {
            let diamonds = r
                .diamonds
                .into_iter()
                .map(|d| {
                    let (kind, ty) = match d.kind {
                        DiamondKind::Genuine(t) => ("genuine", t.to_string()),
                        DiamondKind::Fake(t) => ("fake", t.to_string()),
                        DiamondKind::Anomaly(s) => ("anomaly", s),
                    };
                    Diamond {
                        degree: d.degree,
                        kind: kind.into(),
                        ty,
                    }
                })
                .collect();
            Report {
                params: r.params,
                components: r.components,
                diamonds,
                checks: r.checks,
            }
        }
    }

    impl TryFrom<Report> for ThinReport {
        type Error = Error;

        fn try_from(r: Report) -> Result<Self> {
            let field = r.params.field()?;
            let diamonds = r
                .diamonds
                .into_iter()
                .map(|d| {
                    let kind = match (d.kind.as_str(), d.ty.as_str()) {
                        ("genuine", "inf") => DiamondKind::Genuine(DiamondType::Infinity),
                        ("genuine", t) => DiamondKind::Genuine(DiamondType::Finite(field.parse_element(t)?)),
                        ("fake", "0") => DiamondKind::Fake(0),
                        ("fake", "1") => DiamondKind::Fake(1),
                        ("anomaly", s) => DiamondKind::Anomaly(s.into()),
                        (k, t) => return Err(Error::parse("diamond", &format!("{k}:{t}"), "unknown kind")),
                    };
                    Ok(DiamondRecord { degree: d.degree, kind })
                })
                .collect::<Result<_>>()?;
            Ok(ThinReport {
                params: r.params,
                components: r.components,
                diamonds,
                checks: r.checks,
            })
        }
    }
}

impl ThinReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::parse("report", text.lines().next().unwrap_or(""), e.to_string()))
    }

    /// One `degree:type` line per diamond slot record.
    pub fn timeline(&self) -> String {
        self.diamonds
            .iter()
            .map(|d| format!("{}:{}\n", d.degree, d.kind.token()))
            .collect()
    }

    /// Whether every asserted check passed.
    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.pass || c.informational)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.pass && !c.informational)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Expands the loop algebra and runs every check.
pub fn analyze(cfg: &LoopConfig, params: ReportParams) -> Result<ThinReport> {
    if params.max_degree != cfg.max_degree || params.modulus != cfg.basis.modulus() {
        return Err(Error::Config(
            "report parameters do not match the loop configuration".into(),
        ));
    }
    let exp = expand_loop(cfg)?;
    let max = cfg.max_degree;
    let q = params.q;
    let slots: Vec<u64> = slot_degrees(q, max);

    let components: Vec<ComponentSummary> = exp
        .components()
        .iter()
        .map(|c| ComponentSummary {
            degree: c.degree,
            dim: c.dim,
        })
        .collect();
    let diamonds: Vec<DiamondRecord> = (2..=max)
        .into_par_iter()
        .map(|i| {
            let kind = exp.classify_component(i, slots.binary_search(&i).is_ok())?;
            Ok(kind.map(|kind| DiamondRecord { degree: i, kind }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut checks = BTreeMap::new();
    let thin = components
        .iter()
        .find(|c| c.dim == 0 || c.dim > 2)
        .map(|c| format!("degree {} has dimension {}", c.degree, c.dim));
    checks.insert("thinness".into(), CheckResult::from_first(thin));

    let covering: Vec<Option<String>> = (1..=max)
        .into_par_iter()
        .map(|i| Ok(exp.check_covering(i)?.map(|f| f.to_string())))
        .collect::<Result<_>>()?;
    checks.insert(
        "covering".into(),
        CheckResult::from_first(covering.into_iter().flatten().next()),
    );

    let anomaly = diamonds.iter().find_map(|d| match &d.kind {
        DiamondKind::Anomaly(s) => Some(format!("degree {}: {s}", d.degree)),
        _ => None,
    });
    checks.insert("diamond_relations".into(), CheckResult::from_first(anomaly));

    let normalization = if q > max {
        Some(format!("second diamond at {q} lies beyond max_degree"))
    } else if !exp.normalization_holds(q)? {
        Some(format!(
            "[V,Y,X] = -2[V,X,Y] with [V,X,X] = 0 = [V,Y,Y] fails at degree {q}"
        ))
    } else {
        None
    };
    checks.insert("normalization".into(), CheckResult::from_first(normalization));

    let chain = exp.centralizer_chain(2 * q)?;
    let first = chain.range(2..q).find_map(|(i, c)| {
        let ok = if *i + 1 == q { c.dim() == 0 } else { c.is_y_line() };
        (!ok).then(|| format!("C(L_{i}) = {c}"))
    });
    checks.insert("centralizer_first".into(), CheckResult::from_first(first));
    let second = chain
        .range(q + 1..(2 * q).saturating_sub(2))
        .find_map(|(i, c)| (!c.is_y_line()).then(|| format!("C(L_{i}) = {c}")));
    let mut second = CheckResult::from_first(second);
    if !(params.p > 3 && q != 5) {
        second = second.informational();
    }
    checks.insert("centralizer_second".into(), second);

    let periodicity = if max < 2 * params.modulus {
        Some(format!("max_degree {max} is below 2N"))
    } else {
        exp.periodicity_failure()
            .map(|i| format!("L_{} != L_{i}", i + params.modulus))
    };
    checks.insert("periodicity".into(), CheckResult::from_first(periodicity));

    let accounting = match exp.period_dimension() {
        Some(d) if d == cfg.alg.dim() => None,
        Some(d) => Some(format!("sum of dims over one period is {d}, dim S = {}", cfg.alg.dim())),
        None => Some("max_degree is below N".into()),
    };
    checks.insert("dimension_accounting".into(), CheckResult::from_first(accounting));

    let mut report = ThinReport {
        params,
        components,
        diamonds,
        checks,
    };
    let discrepancies = verify_pattern(&report)?;
    let mut names = vec!["diamond_degrees", "slot_kinds", "finite_types", "second_diamond"];
    if report.params.case == GradingCase::BigField {
        names.push("no_fakes");
    }
    for name in names {
        let first = discrepancies.iter().find(|d| d.check == name).map(|d| d.to_string());
        report.checks.insert(name.into(), CheckResult::from_first(first));
    }
    Ok(report)
}
