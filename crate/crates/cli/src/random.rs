use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modlie::dpalgebra::AlgebraElement;
use modlie::scenario::{Checks, Scenario};
use modlie::thinlie::CheckResult;
use modlie::Result;

fn random_element(sc: &Scenario, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let field = sc.field();
    let basis = sc.alg.basis();
    let terms = (0..1 + rng.next_u32() % 6).map(|_| {
        let m = basis[rng.next_u32() as usize % basis.len()];
        let c = field
            .elements()
            .nth(rng.next_u32() as usize % field.order() as usize)
            .unwrap();
        (m, c)
    });
    AlgebraElement::from_terms(sc.alg.heights(), terms).expect("basis monomials are in range")
}

/// Jacobi and Leibniz on `samples` seeded random triples of sparse elements.
pub fn random_identity_checks(sc: &Scenario, seed: u64, samples: usize) -> Result<Checks> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = &sc.alg;
    let d = sc.derivation()?;
    let mut jacobi = None;
    let mut leibniz = None;
    for k in 0..samples {
        let (u, v, w) = (
            random_element(sc, &mut rng),
            random_element(sc, &mut rng),
            random_element(sc, &mut rng),
        );
        let cyc = [
            alg.bracket(&u, &alg.bracket(&v, &w)?)?,
            alg.bracket(&v, &alg.bracket(&w, &u)?)?,
            alg.bracket(&w, &alg.bracket(&u, &v)?)?,
        ];
        if jacobi.is_none() && !(&(&cyc[0] + &cyc[1]) + &cyc[2]).is_zero() {
            jacobi = Some(format!("sample {k}: u = {u}, v = {v}, w = {w}"));
        }
        let lhs = d.apply(&alg.bracket(&u, &v)?)?;
        let rhs = &alg.bracket(&d.apply(&u)?, &v)? + &alg.bracket(&u, &d.apply(&v)?)?;
        if leibniz.is_none() && lhs != rhs {
            leibniz = Some(format!("sample {k}: u = {u}, v = {v}"));
        }
    }
    let to_check = |first: Option<String>| first.map_or_else(CheckResult::pass, CheckResult::fail);
    Ok(Checks::from([
        ("random_jacobi".to_string(), to_check(jacobi)),
        ("random_leibniz".to_string(), to_check(leibniz)),
    ]))
}
