use modlie::dpalgebra::Monomial;
use modlie::grading::{GradingCase, Label};
use modlie::liealg::Family;
use modlie::scenario::ScenarioSpec;
use modlie::thinlie::{expand_loop, DiamondKind, DiamondType, ThinReport};

fn kind_at(r: &ThinReport, degree: u64) -> Option<&DiamondKind> {
    r.diamonds.iter().find(|d| d.degree == degree).map(|d| &d.kind)
}

#[test]
fn big_field_pattern() {
    let sc = ScenarioSpec::big_field(3, 2, 1).build().unwrap();
    let r = sc.analyze(None).unwrap();
    assert!(r.passed(), "{:?}", r.failed_checks());
    assert_eq!(r.params.max_degree, 216);
    let f = sc.field();
    let nu = f.t().inv().unwrap() - f.one();
    assert_eq!(
        kind_at(&r, 9),
        Some(&DiamondKind::Genuine(DiamondType::Finite(-f.one())))
    );
    assert_eq!(kind_at(&r, 33), Some(&DiamondKind::Genuine(DiamondType::Finite(nu))));
    assert_eq!(kind_at(&r, 17), Some(&DiamondKind::Genuine(DiamondType::Infinity)));
    for c in &r.components {
        assert_eq!(c.dim, if c.degree % 8 == 1 { 2 } else { 1 }, "degree {}", c.degree);
    }
    assert!(r.diamonds.iter().all(|d| !matches!(d.kind, DiamondKind::Fake(_))));
    assert_eq!(r.components[..72].iter().map(|c| c.dim).sum::<usize>(), 81);
}

#[test]
fn prime_field_patterns_for_every_pi() {
    for pi in 1..5 {
        let sc = ScenarioSpec::prime_field(5, 1, 1, pi).build().unwrap();
        let r = sc.analyze(None).unwrap();
        assert!(r.passed(), "pi = {pi}: {:?}", r.failed_checks());
        assert_eq!(r.components[..100].iter().map(|c| c.dim).sum::<usize>(), 123);
        let fakes: Vec<u64> = r
            .diamonds
            .iter()
            .filter(|d| matches!(d.kind, DiamondKind::Fake(_)) && d.degree <= 100)
            .map(|d| d.degree)
            .collect();
        assert_eq!(fakes.len(), 2, "pi = {pi}");
        assert!(fakes.iter().all(|d| d % 4 == 1));
    }
}

#[test]
fn prime_field_pi_one_fake_zero() {
    // ν = 0, so -1 + m(ν+1) = 0 at m = 1
    let r = ScenarioSpec::prime_field(5, 1, 1, 1)
        .build()
        .unwrap()
        .analyze(None)
        .unwrap();
    assert_eq!(kind_at(&r, 25), Some(&DiamondKind::Fake(0)));
    assert_eq!(kind_at(&r, 45), Some(&DiamondKind::Fake(1)));
}

#[test]
fn small_field_configs_are_thin() {
    let mut specs = vec![ScenarioSpec::big_field(3, 1, 1), ScenarioSpec::big_field(3, 2, 0)];
    specs.extend((1..3).map(|pi| ScenarioSpec::prime_field(3, 2, 1, pi)));
    for spec in specs {
        let r = spec.build().unwrap().analyze(None).unwrap();
        assert!(r.passed(), "{:?}: {:?}", r.params, r.failed_checks());
    }
}

#[test]
fn unswitched_exponent_gives_only_finite_diamonds() {
    let r = ScenarioSpec::big_field(3, 2, 0).build().unwrap().analyze(None).unwrap();
    assert_eq!(r.params.modulus, 24);
    assert!(r
        .diamonds
        .iter()
        .all(|d| matches!(d.kind, DiamondKind::Genuine(DiamondType::Finite(_)))));
    // slots 9, 17, ..., 65
    assert_eq!(r.diamonds.len(), 8);
}

#[test]
fn negative_control_fails_covering_at_the_y_component() {
    let mut spec = ScenarioSpec::prime_field(5, 1, 1, 0);
    spec.allow_negative_control = true;
    let sc = spec.build().unwrap();
    let r = sc.analyze(None).unwrap();
    assert!(!r.passed());
    let covering = &r.checks["covering"];
    assert!(!covering.pass);
    assert!(covering.counterexample.as_ref().unwrap().starts_with("degree 4:"));

    let cfg = sc.loop_config(None).unwrap();
    let exp = expand_loop(&cfg).unwrap();
    let e = sc.closed_basis().unwrap().vector(Label::new(0, -1, 0));
    let l4 = &exp.component(4).unwrap().basis_vectors;
    assert_eq!(l4.len(), 1);
    assert_eq!(l4[0].monomials().collect::<Vec<_>>(), vec![Monomial::new(0, 1)]);
    assert_eq!(e.monomials().collect::<Vec<_>>(), vec![Monomial::new(0, 1)]);
    for i in 1..4 {
        assert!(exp.check_covering(i).unwrap().is_none(), "degree {i}");
    }
    let xy = sc.alg.bracket(&sc.alg.bracket(&e, &cfg.x).unwrap(), &cfg.y).unwrap();
    let yx = sc.alg.bracket(&sc.alg.bracket(&e, &cfg.y).unwrap(), &cfg.x).unwrap();
    assert!(xy.is_zero() && yx.is_zero());
}

#[test]
fn second_chain_is_asserted_only_when_promised() {
    let big = ScenarioSpec::prime_field(5, 2, 1, 2)
        .build()
        .unwrap()
        .analyze(None)
        .unwrap();
    assert_eq!(big.params.q, 25);
    assert!(!big.checks["centralizer_second"].informational);
    assert!(big.checks["centralizer_second"].pass);
    let small = ScenarioSpec::prime_field(5, 1, 1, 2)
        .build()
        .unwrap()
        .analyze(None)
        .unwrap();
    assert!(small.checks["centralizer_second"].informational);
}

#[test]
fn reports_round_trip_and_render() {
    let r = ScenarioSpec::big_field(3, 2, 1).build().unwrap().analyze(None).unwrap();
    let json = r.to_json();
    assert_eq!(ThinReport::from_json(&json).unwrap(), r);
    assert_eq!(ThinReport::from_json(&json).unwrap().to_json(), json);
    let timeline = r.timeline();
    assert!(timeline.starts_with("9:2\n17:inf\n25:inf\n33:t^2+1\n"));
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["params"]["N"], 72);
    assert_eq!(value["params"]["case"], "big-field");
    assert_eq!(value["diamonds"][0]["type"], "2");
    assert_eq!(value["checks"]["covering"]["pass"], true);
}

#[test]
fn truncated_runs_report_what_they_can_reach() {
    let sc = ScenarioSpec::big_field(3, 2, 1).build().unwrap();
    let r = sc.analyze(Some(40)).unwrap();
    assert_eq!(r.components.len(), 40);
    assert!(!r.checks["periodicity"].pass);
    assert!(r.checks["covering"].pass);
    assert_eq!(sc.alg.family(), Family::AlbertZassenhaus);
    assert_eq!(sc.spec.case(), GradingCase::BigField);
}
