//! Complete run configurations with defaults materialized, and the check
//! suites run on them.

use std::collections::BTreeMap;

use crate::dpalgebra::Heights;
use crate::error::{Error, Result};
use crate::ffield::{artin_schreier_field, solve_artin_schreier, Field, FieldElement, FieldParams};
use crate::grading::{
    build_closed_basis, check_graded, switch_grading, verify_product_tables, GradedBasis, GradingCase, GradingSpec,
    SwitchConfig,
};
use crate::liealg::{
    anticommutativity_violations, closure_violations, jacobi_violations, AlgebraDescriptor, DerivationOperator, Family,
};
use crate::oracle;
use crate::thinlie::{analyze, CheckResult, LoopConfig, ReportParams, ThinReport};

pub type Checks = BTreeMap<String, CheckResult>;

/// Unvalidated parameters, as read from the command line or a config file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub case: Option<GradingCase>,
    pub family: Option<Family>,
    pub p: u32,
    pub n: u32,
    pub s: Option<u32>,
    pub n1: Option<u32>,
    pub field: Option<FieldParams>,
    pub pi: Option<String>,
    pub sigma: Option<String>,
    pub allow_negative_control: bool,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub alg: AlgebraDescriptor,
    pub spec: GradingSpec,
    pub switch: SwitchConfig,
}

fn parse_in(field: &Field, what: &str, text: &str) -> Result<FieldElement> {
    field
        .parse_element(text)
        .map_err(|e| Error::Config(format!("{what} = {text:?}: {e}")))
}

impl ScenarioSpec {
    pub fn big_field(p: u32, n: u32, s: u32) -> Self {
        ScenarioSpec {
            case: Some(GradingCase::BigField),
            p,
            n,
            s: Some(s),
            ..Default::default()
        }
    }

    pub fn prime_field(p: u32, n: u32, s: u32, pi: i64) -> Self {
        ScenarioSpec {
            case: Some(GradingCase::PrimeField),
            p,
            n,
            s: Some(s),
            pi: Some(pi.to_string()),
            ..Default::default()
        }
    }

    /// Family defaults to Albert-Zassenhaus, except that the prime-field
    /// case always uses the graded Hamiltonian family.
    pub fn resolve_case(&self) -> Result<(GradingCase, Family)> {
        let family = self.family;
        let case = self.case.unwrap_or(match family {
            Some(Family::GradedHamiltonian) => GradingCase::PreSwitchGH,
            _ => GradingCase::PreSwitchAZ,
        });
        let needed = match case {
            GradingCase::BigField | GradingCase::PreSwitchAZ => Family::AlbertZassenhaus,
            GradingCase::PrimeField | GradingCase::PreSwitchGH => Family::GradedHamiltonian,
        };
        match family {
            Some(f) if f != needed => Err(Error::Config(format!("case {case} needs the {needed} family, got {f}"))),
            _ => Ok((case, needed)),
        }
    }

    pub fn build(&self) -> Result<Scenario> {
        let p = self.p;
        if p < 3 || !crate::ffield::is_prime(p as u64) {
            return Err(Error::Config(format!("p = {p} must be an odd prime")));
        }
        if self.n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        let (case, family) = self.resolve_case()?;
        let s = self.s.unwrap_or_else(|| self.n1.map_or(1, |n1| n1.saturating_sub(1)));
        let n1 = self.n1.unwrap_or(s + 1);
        let preswitch = matches!(case, GradingCase::PreSwitchAZ | GradingCase::PreSwitchGH);
        if !preswitch && n1 != s + 1 {
            return Err(Error::Config(format!("case {case} needs n1 = s + 1")));
        }
        let field = match &self.field {
            Some(params) => Field::new(params.clone()),
            None if case == GradingCase::BigField => artin_schreier_field(p)?,
            None => Field::prime(p)?,
        };
        if field.p() != p {
            return Err(Error::Config(format!(
                "field characteristic {} differs from p = {p}",
                field.p()
            )));
        }
        let sigma = match &self.sigma {
            Some(t) => parse_in(&field, "sigma", t)?,
            None => field.one(),
        };
        let switch = match case {
            GradingCase::BigField => {
                let pi = match &self.pi {
                    Some(t) => parse_in(&field, "pi", t)?,
                    None => {
                        let target = sigma
                            .inv()
                            .map_err(|_| Error::Config("sigma must be nonzero".into()))?
                            .pow(p as u64);
                        solve_artin_schreier(&target).ok_or_else(|| {
                            Error::Config(format!("pi^p - pi = sigma^-p has no solution in {}", field.params()))
                        })?
                    }
                };
                SwitchConfig::big_field(sigma, pi, s)?
            }
            _ => {
                if !sigma.is_one() {
                    return Err(Error::Config(format!("case {case} fixes sigma = 1")));
                }
                let pi = match &self.pi {
                    Some(t) => parse_in(&field, "pi", t)?,
                    None if case == GradingCase::PrimeField => field.one(),
                    None => field.zero(),
                };
                if case == GradingCase::PrimeField && pi.is_zero() && !self.allow_negative_control {
                    return Err(Error::Config(
                        "pi = 0 is the negative control and needs --allow-negative-control".into(),
                    ));
                }
                SwitchConfig::prime_field(pi, s)?
            }
        };
        let heights = Heights::new(p, n1, self.n)?;
        let alg = AlgebraDescriptor::new(family, heights, &field)?;
        let spec = GradingSpec::new(case, heights, s, Some(switch.pi()))?;
        Ok(Scenario { alg, spec, switch })
    }
}

fn first<T: std::fmt::Display>(items: &[T]) -> CheckResult {
    match items.first() {
        None => CheckResult::pass(),
        Some(x) => CheckResult::fail(format!("{x} ({} in total)", items.len())),
    }
}

fn require(ok: bool, counterexample: impl FnOnce() -> String) -> CheckResult {
    if ok {
        CheckResult::pass()
    } else {
        CheckResult::fail(counterexample())
    }
}

impl Scenario {
    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn derivation(&self) -> Result<DerivationOperator> {
        DerivationOperator::build(&self.alg, self.spec.s())
    }

    /// Closed-form basis of the case (monomials before switching).
    pub fn closed_basis(&self) -> Result<GradedBasis> {
        build_closed_basis(&self.spec, self.field(), &self.switch)
    }

    pub fn switched_basis(&self) -> Result<GradedBasis> {
        let d = self.derivation()?;
        switch_grading(&self.alg, &self.spec, &d, &self.switch, None)
    }

    pub fn report_params(&self, max_degree: u64) -> ReportParams {
        ReportParams::new(&self.alg, &self.spec, &self.switch, max_degree)
    }

    pub fn loop_config(&self, max_degree: Option<u64>) -> Result<LoopConfig> {
        LoopConfig::from_basis(self.alg.clone(), self.closed_basis()?, max_degree)
    }

    pub fn analyze(&self, max_degree: Option<u64>) -> Result<ThinReport> {
        let cfg = self.loop_config(max_degree)?;
        let params = self.report_params(cfg.max_degree);
        analyze(&cfg, params)
    }

    fn expected_dim(&self) -> usize {
        let full = self.alg.heights().num_monomials();
        match self.alg.family() {
            Family::GradedHamiltonian => full - 2,
            Family::AlbertZassenhaus => full,
        }
    }

    /// Algebra axioms, dimension, derivation laws and gradedness of the
    /// case's basis.
    pub fn verify(&self) -> Result<Checks> {
        let mut out = Checks::new();
        let alg = &self.alg;
        out.insert(
            "dimension".into(),
            require(alg.dim() == self.expected_dim(), || {
                format!("dim {} != {}", alg.dim(), self.expected_dim())
            }),
        );
        out.insert("anticommutativity".into(), first(&anticommutativity_violations(alg)));
        out.insert("jacobi".into(), first(&jacobi_violations(alg)));
        out.insert("closure".into(), first(&closure_violations(alg)));

        let d = self.derivation()?;
        let leibniz: Vec<String> = d
            .leibniz_violations()
            .iter()
            .map(|(a, b)| format!("({a}, {b})"))
            .collect();
        out.insert("leibniz".into(), first(&leibniz));
        let h = alg.heights();
        let p = h.p() as u64;
        if h.n1() == self.spec.s() + 1 {
            match alg.family() {
                Family::GradedHamiltonian => {
                    out.insert("d_p_vanishes".into(), require(d.power_is_zero(p), || "D^p != 0".into()));
                }
                Family::AlbertZassenhaus => {
                    out.insert(
                        "d_pp_equals_d_p".into(),
                        require(d.satisfies_pp_relation(&self.field().one()), || "D^(p^2) != D^p".into()),
                    );
                    let bad = alg.basis().iter().enumerate().find(|(e, m)| {
                        let expected = self.field().from_int(1 - m.j as i64);
                        match d.power_image(*e, p) {
                            None => !expected.is_zero(),
                            Some((c, t)) => t != *e || c != expected,
                        }
                    });
                    out.insert(
                        "d_p_eigenvalues".into(),
                        require(bad.is_none(), || format!("D^p {} is not -j times it", bad.unwrap().1)),
                    );
                }
            }
        }
        let basis = self.closed_basis()?;
        let violations = check_graded(alg, &basis)?;
        out.insert("graded".into(), first(&violations));
        Ok(out)
    }

    /// Switched basis with its checks; switched times c must equal the
    /// closed form on every label.
    pub fn switch(&self) -> Result<(GradedBasis, Checks)> {
        let mut out = Checks::new();
        let switched = self.switched_basis()?;
        out.insert("switched_graded".into(), first(&check_graded(&self.alg, &switched)?));
        let closed = self.closed_basis()?;
        out.insert("closed_graded".into(), first(&check_graded(&self.alg, &closed)?));
        let mismatch = closed.entries().iter().find(|e| {
            switched
                .get(e.label)
                .is_none_or(|sw| sw.degree != e.degree || sw.vector.scale(&e.scalar) != e.vector)
        });
        out.insert(
            "closed_matches_switched".into(),
            require(
                mismatch.is_none() && switched.len() >= closed.len(),
                || match mismatch {
                    Some(e) => format!("e{}", e.label),
                    None => "label sets differ".into(),
                },
            ),
        );
        if matches!(self.spec.case(), GradingCase::BigField | GradingCase::PrimeField) {
            let tables = verify_product_tables(&self.alg, &self.spec, &self.switch, &closed)?;
            out.insert("product_tables".into(), first(&tables));
        }
        Ok((switched, out))
    }

    /// Brute-force cross-checks.
    pub fn oracle(&self) -> Result<Checks> {
        let mut out = Checks::new();
        let p = self.alg.heights().p();
        let bad = oracle::binomial_mismatches(p, 2 * (p as u64).pow(2));
        let bad: Vec<String> = bad.iter().map(|(n, k)| format!("C({n},{k})")).collect();
        out.insert("lucas_vs_factorial".into(), first(&bad));
        if self.alg.heights().n1() == self.spec.s() + 1 {
            let m = oracle::derivation_mismatch(&self.alg, self.spec.s())?;
            out.insert(
                "closed_form_vs_iterated_ad".into(),
                require(m.is_none(), || format!("differs on {}", m.unwrap())),
            );
        }
        let pairs: Vec<String> = oracle::bracket_mismatches(&self.alg)?
            .iter()
            .map(|(a, b)| format!("({a}, {b})"))
            .collect();
        out.insert("table_vs_direct_bracket".into(), first(&pairs));
        Ok(out)
    }
}
