use std::collections::BTreeMap;

use super::{GradedBasis, GradedEntry, GradingSpec, SwitchConfig};
use crate::dpalgebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::ffield::{falling_binomial, FieldElement, Matrix};
use crate::liealg::{AlgebraDescriptor, DerivationOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwitchRoute {
    /// E(D), for D^p = 0.
    Exponential,
    /// L_{p-1}^{(aπ)}(D) on the label-a eigencomponent.
    Laguerre,
}

fn element_from_coords(alg: &AlgebraDescriptor, coords: &[FieldElement]) -> AlgebraElement {
    let terms = alg.basis().iter().zip(coords).map(|(m, c)| (*m, c.clone()));
    AlgebraElement::from_terms(alg.heights(), terms).expect("basis monomials are in range")
}

/// Eigenspaces of D^p, keyed by the label a of the eigenvalue a λ^p.
pub fn eigen_decompose(d: &DerivationOperator, lambda: &FieldElement) -> Result<BTreeMap<u32, Vec<AlgebraElement>>> {
    let alg = d.descriptor();
    let p = alg.heights().p();
    if lambda.is_zero() {
        return Err(Error::Hypothesis("lambda must be nonzero".into()));
    }
    if !d.satisfies_pp_relation(lambda) {
        return Err(Error::Hypothesis("D^(p^2) != lambda^((p-1)p) D^p".into()));
    }
    let dp = d.power_matrix(p as u64);
    let lp = lambda.pow(p as u64);
    let mut out = BTreeMap::new();
    let mut total = 0;
    for a in 0..p {
        let space = dp.eigenspace(&lp.mul_int(a as i64))?;
        if space.is_empty() {
            continue;
        }
        total += space.len();
        out.insert(a, space.iter().map(|c| element_from_coords(alg, c)).collect());
    }
    if total != alg.dim() {
        return Err(Error::Defect {
            found: total,
            expected: alg.dim(),
        });
    }
    Ok(out)
}

/// L_{p-1}^{(α)}(D) v = Σ_k C(α+p-1, p-1-k) (-1)^k / k! D^k v.
pub fn laguerre_apply(alpha: &FieldElement, d: &DerivationOperator, v: &AlgebraElement) -> Result<AlgebraElement> {
    let field = d.descriptor().field();
    let p = field.p() as u64;
    let top = alpha + &field.from_int(p as i64 - 1);
    let mut out = AlgebraElement::zero(v.heights());
    let mut fact = field.one();
    for k in 0..p {
        if k > 0 {
            fact = fact.mul_int(k as i64);
        }
        let sign = if k % 2 == 0 { field.one() } else { -field.one() };
        let coef = falling_binomial(&top, p - 1 - k)? * sign * fact.inv()?;
        out.add_scaled(&coef, &d.apply_power(v, k)?)?;
    }
    Ok(out)
}

/// E(D) v = Σ_{k<p} D^k v / k!.
pub fn truncated_exponential(d: &DerivationOperator, v: &AlgebraElement) -> Result<AlgebraElement> {
    let field = d.descriptor().field();
    let mut out = AlgebraElement::zero(v.heights());
    let mut fact = field.one();
    for k in 0..field.p() as u64 {
        if k > 0 {
            fact = fact.mul_int(k as i64);
        }
        out.add_scaled(&fact.inv()?, &d.apply_power(v, k)?)?;
    }
    Ok(out)
}

/// Constant degree shift of D, `None` when D = 0.
fn derivation_degree(grading: &GradingSpec, d: &DerivationOperator) -> Result<Option<u64>> {
    let alg = d.descriptor();
    let n = grading.modulus();
    let mut shift = None;
    for (e, m) in alg.basis().iter().enumerate() {
        if let Some((_, t)) = d.image(e) {
            let delta = (grading.degree_of(alg.basis()[t]) + n - grading.degree_of(*m)) % n;
            match shift {
                None => shift = Some(delta),
                Some(s) if s != delta => {
                    return Err(Error::Hypothesis(format!(
                        "D is not homogeneous: shifts {s} and {delta}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(shift)
}

/// Switches the monomial grading `grading` with σ^{-1} D. The route is
/// chosen from D^p = 0 unless forced.
pub fn switch_grading(
    alg: &AlgebraDescriptor,
    grading: &GradingSpec,
    d: &DerivationOperator,
    cfg: &SwitchConfig,
    route: Option<SwitchRoute>,
) -> Result<GradedBasis> {
    if d.descriptor().heights() != alg.heights() || d.descriptor().family() != alg.family() {
        return Err(Error::Config("derivation belongs to another algebra".into()));
    }
    if grading.heights() != alg.heights() {
        return Err(Error::HeightsMismatch(grading.heights(), alg.heights()));
    }
    let p = alg.heights().p() as u64;
    let n = grading.modulus();
    if let Some(deg) = derivation_degree(grading, d)? {
        if !(p * deg).is_multiple_of(n) {
            return Err(Error::Hypothesis(format!("m | pd fails: m = {n}, d = {deg}")));
        }
    }
    let lambda = cfg.lambda();
    let ds = d.scaled(&lambda);
    let nilpotent = ds.power_is_zero(p);
    let route = route.unwrap_or(if nilpotent {
        SwitchRoute::Exponential
    } else {
        SwitchRoute::Laguerre
    });

    let images: Vec<AlgebraElement> = match route {
        SwitchRoute::Exponential => {
            if !nilpotent {
                return Err(Error::Hypothesis("D^p != 0".into()));
            }
            alg.basis()
                .iter()
                .map(|m| truncated_exponential(&ds, &alg.element(*m)?))
                .collect::<Result<_>>()?
        }
        SwitchRoute::Laguerre => laguerre_images(alg, &ds, &lambda, cfg.pi(), nilpotent)?,
    };

    let entries = alg
        .basis()
        .iter()
        .zip(images)
        .map(|(m, vector)| GradedEntry {
            label: grading.label_of(*m),
            degree: grading.degree_of(*m),
            vector,
            scalar: alg.field().one(),
        })
        .collect();
    GradedBasis::new(alg.heights(), alg.field(), n, entries)
}

fn laguerre_images(
    alg: &AlgebraDescriptor,
    ds: &DerivationOperator,
    lambda: &FieldElement,
    pi: &FieldElement,
    nilpotent: bool,
) -> Result<Vec<AlgebraElement>> {
    let p = alg.heights().p() as u64;
    // with D^p = 0 only the label 0 occurs and π drops out
    if !nilpotent && pi.pow(p) - pi != lambda.pow(p) {
        return Err(Error::Hypothesis(format!("pi^p - pi != lambda^p for pi = {pi}")));
    }
    let spaces = eigen_decompose(ds, lambda)?;
    let mut columns = Vec::with_capacity(alg.dim());
    let mut labels = Vec::with_capacity(alg.dim());
    for (a, vs) in &spaces {
        for v in vs {
            columns.push(
                alg.basis()
                    .iter()
                    .map(|m| v.coeff(*m).cloned().unwrap_or_else(|| alg.field().zero()))
                    .collect(),
            );
            labels.push(*a);
        }
    }
    let q = Matrix::from_columns(alg.field(), &columns)?;
    let qinv = q
        .inverse()
        .ok_or_else(|| Error::NotABasis("eigenvectors are dependent".into()))?;
    (0..alg.dim())
        .map(|e| {
            let mut out = AlgebraElement::zero(alg.heights());
            for a in spaces.keys() {
                let mut part = AlgebraElement::zero(alg.heights());
                for (c, col) in columns.iter().enumerate() {
                    if labels[c] != *a {
                        continue;
                    }
                    let x = qinv.get(c, e);
                    if x.is_zero() {
                        continue;
                    }
                    part.add_scaled(&x, &element_from_coords(alg, col))?;
                }
                if part.is_zero() {
                    continue;
                }
                let alpha = pi.mul_int(*a as i64);
                out.add_scaled(&alg.field().one(), &laguerre_apply(&alpha, ds, &part)?)?;
            }
            Ok(out)
        })
        .collect()
}
