use modlie::dpalgebra::Heights;
use modlie::ffield::{artin_schreier_field, Field, FieldElement};
use modlie::grading::{
    build_closed_basis, check_graded, switch_grading, verify_product_tables, GradedBasis, GradingCase, GradingSpec,
    Label, SwitchConfig, SwitchRoute,
};
use modlie::liealg::{AlgebraDescriptor, DerivationOperator, Family};

struct Setup {
    alg: AlgebraDescriptor,
    spec: GradingSpec,
    cfg: SwitchConfig,
    closed: GradedBasis,
    d: DerivationOperator,
}

fn big_field(n: u32) -> Setup {
    let f = artin_schreier_field(3).unwrap();
    let h = Heights::new(3, 2, n).unwrap();
    let alg = AlgebraDescriptor::new(Family::AlbertZassenhaus, h, &f).unwrap();
    let spec = GradingSpec::new(GradingCase::BigField, h, 1, None).unwrap();
    let cfg = SwitchConfig::big_field(f.one(), f.t(), 1).unwrap();
    let closed = build_closed_basis(&spec, &f, &cfg).unwrap();
    let d = DerivationOperator::build(&alg, 1).unwrap();
    Setup {
        alg,
        spec,
        cfg,
        closed,
        d,
    }
}

fn prime_field(p: u32, n: u32, pi: i64) -> Setup {
    let f = Field::prime(p).unwrap();
    let h = Heights::new(p, 2, n).unwrap();
    let alg = AlgebraDescriptor::new(Family::GradedHamiltonian, h, &f).unwrap();
    let pi = f.from_int(pi);
    let spec = GradingSpec::new(GradingCase::PrimeField, h, 1, Some(&pi)).unwrap();
    let cfg = SwitchConfig::prime_field(pi, 1).unwrap();
    let closed = build_closed_basis(&spec, &f, &cfg).unwrap();
    let d = DerivationOperator::build(&alg, 1).unwrap();
    Setup {
        alg,
        spec,
        cfg,
        closed,
        d,
    }
}

fn all_setups() -> Vec<Setup> {
    let mut out = vec![big_field(2), big_field(1)];
    out.extend((1..5).map(|pi| prime_field(5, 1, pi)));
    out.extend((1..3).map(|pi| prime_field(3, 2, pi)));
    out
}

fn assert_matches_switch(s: &Setup, switched: &GradedBasis) {
    assert_eq!(switched.len(), s.closed.len());
    for e in s.closed.entries() {
        let sw = switched.get(e.label).unwrap_or_else(|| panic!("missing {}", e.label));
        assert_eq!(sw.degree, e.degree, "{}", e.label);
        assert_eq!(sw.vector.scale(&e.scalar), e.vector, "{}", e.label);
    }
}

#[test]
fn closed_bases_are_graded_and_match_switching() {
    for s in all_setups() {
        assert_eq!(s.closed.rank(), s.alg.dim());
        assert!(check_graded(&s.alg, &s.closed).unwrap().is_empty());
        let switched = switch_grading(&s.alg, &s.spec, &s.d, &s.cfg, None).unwrap();
        assert!(check_graded(&s.alg, &switched).unwrap().is_empty());
        assert_matches_switch(&s, &switched);
    }
}

#[test]
fn product_tables_hold() {
    for s in all_setups() {
        let v = verify_product_tables(&s.alg, &s.spec, &s.cfg, &s.closed).unwrap();
        assert!(
            v.is_empty(),
            "{}",
            v.iter().take(5).map(|x| x.to_string()).collect::<Vec<_>>().join("\n")
        );
    }
}

#[test]
fn exponential_and_laguerre_routes_agree_when_nilpotent() {
    for pi in 1..5 {
        let s = prime_field(5, 1, pi);
        let e = switch_grading(&s.alg, &s.spec, &s.d, &s.cfg, Some(SwitchRoute::Exponential)).unwrap();
        let l = switch_grading(&s.alg, &s.spec, &s.d, &s.cfg, Some(SwitchRoute::Laguerre)).unwrap();
        assert_eq!(e, l);
    }
    let s = big_field(2);
    assert!(switch_grading(&s.alg, &s.spec, &s.d, &s.cfg, Some(SwitchRoute::Exponential)).is_err());
}

#[test]
fn degree_multiset() {
    for s in all_setups() {
        let q = s.spec.q();
        let dims = s.closed.degree_dimensions();
        assert_eq!(dims.iter().sum::<usize>(), s.alg.dim());
        let ones: Vec<usize> = dims
            .iter()
            .enumerate()
            .filter(|&(r, &d)| r as u64 % (q - 1) == 1 && d == 1)
            .map(|(r, _)| r)
            .collect();
        for (r, &d) in dims.iter().enumerate() {
            if r as u64 % (q - 1) != 1 {
                assert_eq!(d, 1, "residue {r}");
            } else {
                assert!(d == 2 || d == 1, "residue {r}");
            }
        }
        let expected_short = if s.spec.case() == GradingCase::PrimeField { 2 } else { 0 };
        assert_eq!(ones.len(), expected_short);
    }
}

#[test]
fn big_field_scalars_are_invertible() {
    let s = big_field(2);
    let f = s.cfg.pi().field().clone();
    for e in s.closed.entries() {
        assert!(!e.scalar.is_zero(), "{}", e.label);
    }
    // c_{0,a} = a! σ^a
    let fact = [1, 1, 2];
    for a in 0..3u32 {
        let c: &FieldElement = &s.closed.get(Label::new(0, 0, a)).unwrap().scalar;
        assert_eq!(*c, f.from_int(fact[a as usize]));
    }
}

#[test]
fn preswitch_az_grading_is_graded() {
    let f = Field::prime(3).unwrap();
    let h = Heights::new(3, 2, 1).unwrap();
    let alg = AlgebraDescriptor::new(Family::AlbertZassenhaus, h, &f).unwrap();
    let spec = GradingSpec::new(GradingCase::PreSwitchAZ, h, 1, None).unwrap();
    let cfg = SwitchConfig::prime_field(f.one(), 1).unwrap();
    let basis = build_closed_basis(&spec, &f, &cfg).unwrap();
    assert!(check_graded(&alg, &basis).unwrap().is_empty());

    let mut entries = basis.entries().to_vec();
    entries[5].degree = (entries[5].degree + 1) % basis.modulus();
    let corrupted = GradedBasis::new(h, &f, basis.modulus(), entries).unwrap();
    assert!(!check_graded(&alg, &corrupted).unwrap().is_empty());
}
