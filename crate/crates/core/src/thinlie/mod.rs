//! Loop algebras of cyclically graded algebras: expansion, covering,
//! diamond typing, centralizer chains and pattern verification.

mod checks;
mod pattern;
mod report;

use crate::dpalgebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::ffield::{Echelon, Field};
use crate::grading::{GradedBasis, Label};
use crate::liealg::AlgebraDescriptor;

pub use checks::{Centralizer, CoveringFailure};
pub use pattern::{expected_finite_type, slot_degrees, verify_pattern, Discrepancy};
pub use report::{
    analyze, CheckResult, ComponentSummary, DiamondKind, DiamondRecord, DiamondType, ReportParams, ThinReport,
};

/// Input of a loop expansion.
#[derive(Clone, Debug)]
pub struct LoopConfig {
    pub alg: AlgebraDescriptor,
    pub basis: GradedBasis,
    pub x: AlgebraElement,
    pub y: AlgebraElement,
    pub max_degree: u64,
}

impl LoopConfig {
    /// Takes X and Y from the degree-1 component of `basis`: Y is the entry
    /// with j = q - 2, X the other one.
    pub fn from_basis(alg: AlgebraDescriptor, basis: GradedBasis, max_degree: Option<u64>) -> Result<Self> {
        let (x, y) = generators(&basis)?;
        let max_degree = max_degree.unwrap_or(3 * basis.modulus());
        let cfg = LoopConfig {
            alg,
            basis,
            x,
            y,
            max_degree,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree == 0 {
            return Err(Error::Config("max_degree must be positive".into()));
        }
        if self.basis.heights() != self.alg.heights() {
            return Err(Error::HeightsMismatch(self.basis.heights(), self.alg.heights()));
        }
        for (name, g) in [("X", &self.x), ("Y", &self.y)] {
            if g.is_zero() {
                return Err(Error::Config(format!("generator {name} is zero")));
            }
            if self.alg.project(g) != *g {
                return Err(Error::Config(format!("generator {name} lies outside the algebra")));
            }
        }
        let field = self.alg.field();
        let mut span = Echelon::new(field, self.alg.heights().num_monomials());
        for e in self.basis.component(1) {
            span.insert(&e.vector.to_raw());
        }
        let mut pair = Echelon::new(field, self.alg.heights().num_monomials());
        for (name, g) in [("X", &self.x), ("Y", &self.y)] {
            if !span.contains(&g.to_raw()) {
                return Err(Error::Config(format!(
                    "generator {name} is not homogeneous of degree 1"
                )));
            }
            if !pair.insert(&g.to_raw()) {
                return Err(Error::Config("generators are linearly dependent".into()));
            }
        }
        Ok(())
    }
}

fn generators(basis: &GradedBasis) -> Result<(AlgebraElement, AlgebraElement)> {
    let q = basis.heights().q() as i32;
    let ones = basis.component(1);
    if ones.len() != 2 {
        return Err(Error::Config(format!(
            "degree 1 has dimension {}, expected 2",
            ones.len()
        )));
    }
    let is_y = |l: Label| l.j == q - 2;
    match (is_y(ones[0].label), is_y(ones[1].label)) {
        (false, true) => Ok((ones[0].vector.clone(), ones[1].vector.clone())),
        (true, false) => Ok((ones[1].vector.clone(), ones[0].vector.clone())),
        _ => Err(Error::Config("cannot tell X from Y in degree 1".into())),
    }
}

/// L_i with representatives inside S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRecord {
    pub degree: u64,
    pub dim: usize,
    pub basis_vectors: Vec<AlgebraElement>,
}

/// Result of `expand_loop`; components run one degree past `max_degree` so
/// that every reported component can be checked against its successor.
#[derive(Clone, Debug)]
pub struct Expansion {
    alg: AlgebraDescriptor,
    x: AlgebraElement,
    y: AlgebraElement,
    max_degree: u64,
    modulus: u64,
    components: Vec<ComponentRecord>,
}

/// L_1 = <X, Y>, L_{i+1} = <[u, X], [u, Y] : u in L_i>, computed inside S.
pub fn expand_loop(cfg: &LoopConfig) -> Result<Expansion> {
    cfg.validate()?;
    let field = cfg.alg.field();
    let len = cfg.alg.heights().num_monomials();
    let mut components = Vec::with_capacity(cfg.max_degree as usize + 1);
    components.push(ComponentRecord {
        degree: 1,
        dim: 2,
        basis_vectors: vec![cfg.x.clone(), cfg.y.clone()],
    });
    for degree in 2..=cfg.max_degree + 1 {
        let prev = components.last().expect("L_1 is present");
        let mut span = Echelon::new(field, len);
        let mut vectors = Vec::new();
        for u in &prev.basis_vectors {
            for g in [&cfg.x, &cfg.y] {
                let w = cfg.alg.bracket(u, g)?;
                if span.insert(&w.to_raw()) {
                    vectors.push(w);
                }
            }
        }
        components.push(ComponentRecord {
            degree,
            dim: vectors.len(),
            basis_vectors: vectors,
        });
    }
    Ok(Expansion {
        alg: cfg.alg.clone(),
        x: cfg.x.clone(),
        y: cfg.y.clone(),
        max_degree: cfg.max_degree,
        modulus: cfg.basis.modulus(),
        components,
    })
}

impl Expansion {
    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.alg
    }

    pub fn x(&self) -> &AlgebraElement {
        &self.x
    }

    pub fn y(&self) -> &AlgebraElement {
        &self.y
    }

    /// Components of degrees 1..=max_degree.
    pub fn components(&self) -> &[ComponentRecord] {
        &self.components[..self.max_degree as usize]
    }

    /// L_i for 1 <= i <= max_degree + 1.
    pub fn component(&self, i: u64) -> Option<&ComponentRecord> {
        if i == 0 {
            return None;
        }
        self.components.get(i as usize - 1)
    }

    pub fn dim(&self, i: u64) -> usize {
        self.component(i).map_or(0, |c| c.dim)
    }

    fn field(&self) -> &Field {
        self.alg.field()
    }

    fn echelon(&self, vectors: &[AlgebraElement]) -> Echelon {
        let mut e = Echelon::new(self.field(), self.alg.heights().num_monomials());
        for v in vectors {
            e.insert(&v.to_raw());
        }
        e
    }

    fn bracket(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        self.alg.bracket(u, v)
    }

    fn bracket_chain(&self, v: &AlgebraElement, gens: &[&AlgebraElement]) -> Result<AlgebraElement> {
        gens.iter().try_fold(v.clone(), |acc, g| self.bracket(&acc, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalgebra::Heights;
    use crate::ffield::artin_schreier_field;
    use crate::grading::{build_closed_basis, GradingCase, GradingSpec, SwitchConfig};
    use crate::liealg::Family;

    pub(crate) fn big_field_config(n: u32, max_degree: u64) -> LoopConfig {
        let f = artin_schreier_field(3).unwrap();
        let h = Heights::new(3, 2, n).unwrap();
        let alg = AlgebraDescriptor::new(Family::AlbertZassenhaus, h, &f).unwrap();
        let spec = GradingSpec::new(GradingCase::BigField, h, 1, None).unwrap();
        let cfg = SwitchConfig::big_field(f.one(), f.t(), 1).unwrap();
        let basis = build_closed_basis(&spec, &f, &cfg).unwrap();
        LoopConfig::from_basis(alg, basis, Some(max_degree)).unwrap()
    }

    #[test]
    fn first_component_is_the_generator_pair() {
        let cfg = big_field_config(1, 10);
        let exp = expand_loop(&cfg).unwrap();
        assert_eq!(exp.components().len(), 10);
        assert_eq!(exp.dim(1), 2);
        assert_eq!(exp.dim(11), exp.component(11).unwrap().dim);
        assert!(exp.component(12).is_none());
    }

    #[test]
    fn diamonds_at_one_mod_eight() {
        let cfg = big_field_config(2, 40);
        let exp = expand_loop(&cfg).unwrap();
        for c in exp.components() {
            let expected = if c.degree % 8 == 1 { 2 } else { 1 };
            assert_eq!(c.dim, expected, "degree {}", c.degree);
        }
    }

    #[test]
    fn dependent_generators_are_refused() {
        let mut cfg = big_field_config(1, 10);
        cfg.y = cfg.x.scale(&cfg.alg.field().from_int(2));
        assert!(cfg.validate().is_err());
        let mut cfg = big_field_config(1, 10);
        cfg.max_degree = 0;
        assert!(cfg.validate().is_err());
    }
}
