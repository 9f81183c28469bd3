//! `c*x^(i)y^(j) + ...` text form of algebra elements.

use std::fmt;

use super::{AlgebraElement, Heights, Monomial};
use crate::error::{Error, Result};
use crate::ffield::Field;

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let coef = c.to_string();
            if coef.contains('+') {
                write!(f, "({coef})*{m}")?;
            } else {
                write!(f, "{coef}*{m}")?;
            }
        }
        Ok(())
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (pos, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse("algebra element", s, "unbalanced ')'"));
                }
            }
            '+' if depth == 0 => {
                parts.push(&s[start..pos]);
                start = pos + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse("algebra element", s, "unbalanced '('"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_monomial(s: &str, whole: &str) -> Result<Monomial> {
    let err = |reason: &str| Error::parse("monomial", whole, reason);
    let rest = s.strip_prefix("x^(").ok_or_else(|| err("expected 'x^('"))?;
    let (i, rest) = rest.split_once(")y^(").ok_or_else(|| err("expected ')y^('"))?;
    let j = rest.strip_suffix(')').ok_or_else(|| err("expected ')'"))?;
    let i = i.parse().map_err(|_| err("bad x-exponent"))?;
    let j = j.parse().map_err(|_| err("bad y-exponent"))?;
    Ok(Monomial::new(i, j))
}

impl AlgebraElement {
    /// Parses the text produced by `Display`; duplicate monomials are summed.
    pub fn parse(text: &str, field: &Field, heights: Heights) -> Result<AlgebraElement> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(AlgebraElement::zero(heights));
        }
        let mut out = AlgebraElement::zero(heights);
        for term in split_top_level(trimmed)? {
            let term = term.trim();
            let star = term
                .rfind("*x^(")
                .ok_or_else(|| Error::parse("algebra element", text, "term without '*x^('"))?;
            let (coef, mono) = (&term[..star], &term[star + 1..]);
            let coef = coef.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coef);
            let c = field.parse_element(coef)?;
            let m = parse_monomial(mono, text)?;
            if !heights.contains(m) {
                return Err(Error::MonomialOutOfRange(m));
            }
            out.add_term(m, &c)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{artin_schreier_field, FieldParams};

    #[test]
    fn canonical_text_round_trips() {
        let f = artin_schreier_field(3).unwrap();
        let h = Heights::new(3, 2, 1).unwrap();
        let t = f.t();
        let u = AlgebraElement::from_terms(
            h,
            [
                (Monomial::new(0, 0), f.one()),
                (Monomial::new(3, 2), &t + &f.one()),
                (Monomial::new(1, 0), t.clone()),
            ],
        )
        .unwrap();
        let text = u.to_string();
        assert_eq!(text, "1*x^(0)y^(0) + t*x^(1)y^(0) + (t+1)*x^(3)y^(2)");
        assert_eq!(AlgebraElement::parse(&text, &f, h).unwrap(), u);
        assert_eq!(AlgebraElement::parse("0", &f, h).unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_malformed_text() {
        let f = crate::ffield::Field::new(FieldParams::prime(5).unwrap());
        let h = Heights::new(5, 1, 1).unwrap();
        for bad in [
            "",
            "x^(1)y^(0)",
            "1*x^(1)y^(",
            "(1*x^(0)y^(0)",
            "1*x^(9)y^(0)",
            "1*x^(1)z^(0)",
        ] {
            assert!(AlgebraElement::parse(bad, &f, h).is_err(), "{bad}");
        }
        let summed = AlgebraElement::parse("2*x^(1)y^(0) + 3*x^(1)y^(0)", &f, h).unwrap();
        assert!(summed.is_zero());
    }
}
