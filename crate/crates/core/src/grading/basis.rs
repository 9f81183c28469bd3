use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::Label;
use crate::dpalgebra::{AlgebraElement, Heights};
use crate::error::{Error, Result};
use crate::ffield::{Echelon, Field, FieldElement, Matrix};
use crate::liealg::Bracket;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEntry {
    pub label: Label,
    pub degree: u64,
    pub vector: AlgebraElement,
    /// c_{j,a} for closed-form bases, 1 for switched or pre-switch ones.
    pub scalar: FieldElement,
}

/// Homogeneous basis over Z/N, keyed by label. Zero placeholders are not
/// stored; `vector` returns zero for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    heights: Heights,
    field: Field,
    modulus: u64,
    entries: Vec<GradedEntry>,
    index: BTreeMap<Label, usize>,
}

impl GradedBasis {
    pub fn new(heights: Heights, field: &Field, modulus: u64, mut entries: Vec<GradedEntry>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Config("grading modulus must be positive".into()));
        }
        entries.sort_by_key(|e| e.label);
        let mut index = BTreeMap::new();
        for (pos, e) in entries.iter().enumerate() {
            if e.degree >= modulus {
                return Err(Error::Config(format!(
                    "degree {} of {} is not reduced mod {modulus}",
                    e.degree, e.label
                )));
            }
            if e.vector.heights() != heights {
                return Err(Error::HeightsMismatch(e.vector.heights(), heights));
            }
            if index.insert(e.label, pos).is_some() {
                return Err(Error::NotABasis(format!("label {} repeated", e.label)));
            }
        }
        Ok(GradedBasis {
            heights,
            field: field.clone(),
            modulus,
            entries,
            index,
        })
    }

    pub fn heights(&self) -> Heights {
        self.heights
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[GradedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: Label) -> Option<&GradedEntry> {
        self.index.get(&label).map(|&i| &self.entries[i])
    }

    /// Vector of a label, zero for labels not stored.
    pub fn vector(&self, label: Label) -> AlgebraElement {
        self.get(label)
            .map(|e| e.vector.clone())
            .unwrap_or_else(|| AlgebraElement::zero(self.heights))
    }

    /// Number of entries in each residue class mod N.
    pub fn degree_dimensions(&self) -> Vec<usize> {
        let mut dims = vec![0usize; self.modulus as usize];
        for e in &self.entries {
            dims[e.degree as usize] += 1;
        }
        dims
    }

    /// Entries of degree `d`.
    pub fn component(&self, d: u64) -> Vec<&GradedEntry> {
        self.entries.iter().filter(|e| e.degree == d % self.modulus).collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(&self.field, self.heights.num_monomials());
        for e in &self.entries {
            ech.insert(&e.vector.to_raw());
        }
        ech.dim()
    }

    /// Line records `(j,k,a) | degree | element | scalar`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{} | {} | {} | {}\n", e.label, e.degree, e.vector, e.scalar));
        }
        out
    }

    pub fn parse(text: &str, field: &Field, heights: Heights, modulus: u64) -> Result<Self> {
        let mut entries = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.split(" | ").collect();
            let [label, degree, vector, scalar] = parts[..] else {
                return Err(Error::parse(
                    "graded basis record",
                    line,
                    "expected four fields separated by ' | '",
                ));
            };
            entries.push(GradedEntry {
                label: label.parse()?,
                degree: degree
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse("graded basis record", line, "bad degree"))?,
                vector: AlgebraElement::parse(vector, field, heights)?,
                scalar: field.parse_element(scalar)?,
            });
        }
        Self::new(heights, field, modulus, entries)
    }
}

impl fmt::Display for GradedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Bracket of two basis vectors with a component in the wrong degree, or
/// outside the span of the basis altogether (`stray` = None).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub left: Label,
    pub right: Label,
    pub expected_degree: u64,
    pub stray: Option<(Label, u64)>,
}

impl fmt::Display for GradingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stray {
            Some((l, d)) => write!(
                f,
                "{{{}, {}}} has a component on {l} of degree {d}, expected degree {}",
                self.left, self.right, self.expected_degree
            ),
            None => write!(f, "{{{}, {}}} leaves the span of the basis", self.left, self.right),
        }
    }
}

/// Coordinates with respect to a set of independent vectors, through an
/// invertible square submatrix on pivot rows.
struct Coordinates {
    field: Field,
    pivot_rows: Vec<usize>,
    inverse: Matrix,
    columns: Vec<Vec<u32>>,
}

impl Coordinates {
    fn new(field: &Field, columns: Vec<Vec<u32>>) -> Result<Self> {
        let n = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut ech = Echelon::new(field, n);
        let mut pivot_rows = Vec::with_capacity(n);
        for r in 0..rows {
            if pivot_rows.len() == n {
                break;
            }
            let row: Vec<u32> = columns.iter().map(|c| c[r]).collect();
            if ech.insert(&row) {
                pivot_rows.push(r);
            }
        }
        if pivot_rows.len() < n {
            return Err(Error::NotABasis(format!("rank {} < {n}", pivot_rows.len())));
        }
        let square = Matrix::from_raw_rows(
            field,
            n,
            pivot_rows
                .iter()
                .map(|&r| columns.iter().map(|c| c[r]).collect())
                .collect(),
        );
        let inverse = square.inverse().expect("pivot rows give an invertible block");
        Ok(Coordinates {
            field: field.clone(),
            pivot_rows,
            inverse,
            columns,
        })
    }

    /// Coordinates of `w`, or `None` if it is not in the span.
    fn solve(&self, w: &[u32]) -> Option<Vec<u32>> {
        let f = &self.field;
        let n = self.columns.len();
        let mut coords = vec![0u32; n];
        for (c, &r) in self.pivot_rows.iter().enumerate() {
            if w[r] == 0 {
                continue;
            }
            for (i, x) in coords.iter_mut().enumerate() {
                let m = self.inverse.raw(i, c);
                if m != 0 {
                    *x = f.raw_add(*x, f.raw_mul(m, w[r]));
                }
            }
        }
        let mut residual = w.to_vec();
        for (col, &x) in self.columns.iter().zip(&coords) {
            if x == 0 {
                continue;
            }
            for (rv, &cv) in residual.iter_mut().zip(col) {
                if cv != 0 {
                    *rv = f.raw_sub(*rv, f.raw_mul(x, cv));
                }
            }
        }
        residual.iter().all(|&v| v == 0).then_some(coords)
    }
}

/// Pairs of basis vectors whose bracket is not homogeneous of the sum degree.
pub fn check_graded<B: Bracket + Sync>(alg: &B, basis: &GradedBasis) -> Result<Vec<GradingViolation>> {
    if alg.heights() != basis.heights {
        return Err(Error::HeightsMismatch(alg.heights(), basis.heights));
    }
    let entries = &basis.entries;
    let coords = Coordinates::new(&basis.field, entries.iter().map(|e| e.vector.to_raw()).collect())?;
    let n = basis.modulus;
    let results: Result<Vec<Vec<GradingViolation>>> = (0..entries.len())
        .into_par_iter()
        .map(|a| {
            let mut found = Vec::new();
            for b in 0..entries.len() {
                let (u, v) = (&entries[a], &entries[b]);
                let expected = (u.degree + v.degree) % n;
                let w = alg.bracket(&u.vector, &v.vector)?;
                if w.is_zero() {
                    continue;
                }
                let violation = match coords.solve(&w.to_raw()) {
                    None => Some(None),
                    Some(c) => c
                        .iter()
                        .enumerate()
                        .find(|&(i, &x)| x != 0 && entries[i].degree != expected)
                        .map(|(i, _)| Some((entries[i].label, entries[i].degree))),
                };
                if let Some(stray) = violation {
                    found.push(GradingViolation {
                        left: u.label,
                        right: v.label,
                        expected_degree: expected,
                        stray,
                    });
                }
            }
            Ok(found)
        })
        .collect();
    Ok(results?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalgebra::Monomial;

    struct Abelian(Heights);

    impl Bracket for Abelian {
        fn heights(&self) -> Heights {
            self.0
        }

        fn bracket(&self, _: &AlgebraElement, _: &AlgebraElement) -> Result<AlgebraElement> {
            Ok(AlgebraElement::zero(self.0))
        }
    }

    fn sample() -> GradedBasis {
        let f = Field::prime(3).unwrap();
        let h = Heights::new(3, 1, 1).unwrap();
        let entries = vec![
            GradedEntry {
                label: Label::new(0, 0, 0),
                degree: 2,
                vector: AlgebraElement::parse("1*x^(1)y^(1) + 2*x^(2)y^(0)", &f, h).unwrap(),
                scalar: f.from_int(2),
            },
            GradedEntry {
                label: Label::new(-1, 0, 0),
                degree: 1,
                vector: AlgebraElement::parse("1*x^(1)y^(0)", &f, h).unwrap(),
                scalar: f.one(),
            },
        ];
        GradedBasis::new(h, &f, 4, entries).unwrap()
    }

    #[test]
    fn one_dimensional_abelian_is_graded() {
        let f = Field::prime(3).unwrap();
        let h = Heights::new(3, 1, 1).unwrap();
        for degree in 0..5 {
            let basis = GradedBasis::new(
                h,
                &f,
                5,
                vec![GradedEntry {
                    label: Label::new(-1, 0, 0),
                    degree,
                    vector: AlgebraElement::monomial(h, Monomial::new(1, 0), f.one()).unwrap(),
                    scalar: f.one(),
                }],
            )
            .unwrap();
            assert!(check_graded(&Abelian(h), &basis).unwrap().is_empty());
        }
    }

    #[test]
    fn text_round_trip_in_label_order() {
        let b = sample();
        let text = b.to_text();
        assert!(text.starts_with("(-1,0,0) | 1 | 1*x^(1)y^(0) | 1\n"));
        let back = GradedBasis::parse(&text, b.field(), b.heights(), 4).unwrap();
        assert_eq!(back, b);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn rejects_bad_records() {
        let f = Field::prime(3).unwrap();
        let h = Heights::new(3, 1, 1).unwrap();
        for bad in [
            "(0,0,0) | 1 | 1*x^(1)y^(0)",
            "(0,0) | 1 | 0 | 1",
            "(0,0,0) | 9 | 0 | 1",
            "(0,0,0) | x | 0 | 1",
        ] {
            assert!(GradedBasis::parse(bad, &f, h, 4).is_err(), "{bad}");
        }
        let dup = "(0,0,0) | 1 | 0 | 1\n(0,0,0) | 2 | 0 | 1\n";
        assert!(GradedBasis::parse(dup, &f, h, 4).is_err());
    }

    #[test]
    fn dependent_vectors_are_not_a_basis() {
        let f = Field::prime(3).unwrap();
        let h = Heights::new(3, 1, 1).unwrap();
        let v = AlgebraElement::monomial(h, Monomial::new(1, 0), f.one()).unwrap();
        let entries = (0..2)
            .map(|a| GradedEntry {
                label: Label::new(0, 0, a),
                degree: 0,
                vector: v.clone(),
                scalar: f.one(),
            })
            .collect();
        let basis = GradedBasis::new(h, &f, 2, entries).unwrap();
        assert!(matches!(check_graded(&Abelian(h), &basis), Err(Error::NotABasis(_))));
    }
}
