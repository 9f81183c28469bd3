//! Exact arithmetic in F_p and F_{p^m}, modular binomials, and dense linear
//! algebra over those fields.

mod binomial;
mod field;
mod irreducible;
mod linalg;

pub use binomial::{falling_binomial, lucas_binomial};
pub(crate) use field::is_prime;
pub use field::{field_arith, Field, FieldElement, FieldError, FieldOp, FieldParams};
pub use irreducible::{find_irreducible, is_irreducible};
pub(crate) use linalg::Echelon;
pub use linalg::{span_solve, Matrix, SpanResult, SpanTask};

/// Smallest (coefficient-lexicographic) solution of x^p - x = c, found by
/// exhaustive search; `None` if the equation has no root in the field.
pub fn solve_artin_schreier(c: &FieldElement) -> Option<FieldElement> {
    let field = c.field();
    let p = field.p() as u64;
    field.elements().find(|x| &(x.pow(p) - x) == c)
}

/// The field F_p[t]/(t^p - t - 1), in which t solves x^p - x = 1.
pub fn artin_schreier_field(p: u32) -> Result<Field, FieldError> {
    let mut modulus = vec![0u32; p as usize + 1];
    modulus[0] = p.saturating_sub(1);
    modulus[1] = p.saturating_sub(1);
    modulus[p as usize] = 1;
    Ok(Field::new(FieldParams::new(p, modulus)?))
}
