//! Arrangement files.
//!
//! A JSON document with an even `dim` and an ordered `subspaces` list. Each
//! record carries a `name` and exactly one of
//!
//! * `forms`: two lists of `dim` rational strings, or
//! * `complex`: `{ "z": [[re, im], ..], "zbar": [[re, im], ..] }` with `d`
//!   entries each (`zbar` may be omitted).
//!
//! Rational strings are an optional sign, digits, and an optional `/`
//! followed by a positive denominator, e.g. `"-1/3"`. Unknown fields are
//! rejected.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Arrangement, ArrangementError, Complex, ComplexFormSpec, LinearForm, SubspacePair};
use crate::linalg::Rational;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    dim: usize,
    subspaces: Vec<Record>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forms: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex: Option<ComplexRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexRecord {
    z: Vec<[String; 2]>,
    #[serde(default)]
    zbar: Vec<[String; 2]>,
}

pub fn parse_rational(s: &str) -> Result<Rational, ArrangementError> {
    let bad = || ArrangementError::Parse(format!("malformed rational {s:?}"));
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let unsigned = num.strip_prefix(['+', '-']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let numer: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let denom = match den {
        Some(d) if digits(d) => d.parse::<BigInt>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_form(name: &str, coeffs: &[String], dim: usize) -> Result<LinearForm, ArrangementError> {
    if coeffs.len() != dim {
        return Err(ArrangementError::WrongCoefficientCount {
            name: name.to_string(),
            expected: dim,
            got: coeffs.len(),
        });
    }
    coeffs
        .iter()
        .map(|c| parse_rational(c))
        .collect::<Result<_, _>>()
        .map(LinearForm::new)
}

fn parse_complex_list(
    name: &str,
    entries: &[[String; 2]],
    d: usize,
    optional: bool,
) -> Result<Vec<Complex>, ArrangementError> {
    if entries.is_empty() && optional {
        return Ok(vec![(Rational::zero(), Rational::zero()); d]);
    }
    if entries.len() != d {
        return Err(ArrangementError::WrongCoefficientCount {
            name: name.to_string(),
            expected: d,
            got: entries.len(),
        });
    }
    entries
        .iter()
        .map(|[re, im]| Ok((parse_rational(re)?, parse_rational(im)?)))
        .collect()
}

/// Parses an arrangement file. Shape errors are reported here; use
/// [`super::validate`] for admissibility.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| ArrangementError::Parse(e.to_string()))?;
    if doc.dim == 0 || !doc.dim.is_multiple_of(2) {
        return Err(ArrangementError::OddDimension(doc.dim));
    }
    let d = doc.dim / 2;
    let mut subspaces = Vec::with_capacity(doc.subspaces.len());
    for rec in &doc.subspaces {
        let pair = match (&rec.forms, &rec.complex) {
            (Some(forms), None) => {
                if forms.len() != 2 {
                    return Err(ArrangementError::Parse(format!(
                        "subspace {}: expected exactly two forms, got {}",
                        rec.name,
                        forms.len()
                    )));
                }
                SubspacePair::new(
                    rec.name.clone(),
                    parse_form(&rec.name, &forms[0], doc.dim)?,
                    parse_form(&rec.name, &forms[1], doc.dim)?,
                )
            }
            (None, Some(cx)) => {
                let spec = ComplexFormSpec {
                    z: parse_complex_list(&rec.name, &cx.z, d, false)?,
                    zbar: parse_complex_list(&rec.name, &cx.zbar, d, true)?,
                };
                SubspacePair::from_complex(rec.name.clone(), &spec, d)?
            }
            _ => {
                return Err(ArrangementError::Parse(format!(
                    "subspace {}: give exactly one of \"forms\" or \"complex\"",
                    rec.name
                )))
            }
        };
        subspaces.push(pair);
    }
    Arrangement::new(doc.dim, subspaces)
}

/// Writes the arrangement back out, every member in `forms` syntax.
pub fn to_document(arr: &Arrangement) -> String {
    let form = |f: &LinearForm| f.coefficients().iter().map(format_rational).collect();
    let doc = Document {
        dim: arr.dim(),
        subspaces: arr
            .subspaces()
            .iter()
            .map(|s| Record {
                name: s.name.clone(),
                forms: Some(vec![form(&s.first), form(&s.second)]),
                complex: None,
            })
            .collect(),
    };
    crate::json::pretty(&serde_json::to_value(&doc).expect("document serializes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("+4/2").unwrap(), int(2));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        for bad in ["", "1/0", "1/-2", "a", "1.5", "--1", "1/", "/2", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn single_subspace() {
        let arr = parse_arrangement(
            r#"{"dim": 2, "subspaces": [{"name": "H1", "forms": [["1","0"],["0","1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(arr.len(), 1);
        assert!(super::super::validate(&arr).is_admissible());
    }

    #[test]
    fn conjugate_record() {
        let arr = parse_arrangement(
            r#"{"dim": 4, "subspaces": [
                {"name": "H4", "complex": {"z": [["0","0"],["1","0"]], "zbar": [["-2","0"],["0","0"]]}}
            ]}"#,
        )
        .unwrap();
        assert_eq!(arr.subspace(0).first, LinearForm::from_i64(&[-2, 0, 1, 0]));
        assert_eq!(arr.subspace(0).second, LinearForm::from_i64(&[0, 2, 0, 1]));
    }

    #[test]
    fn rejects_malformed() {
        let cases = [
            r#"{"dim": 3, "subspaces": [{"name": "H", "forms": [["1","0","0"],["0","1","0"]]}]}"#,
            r#"{"dim": 2, "subspaces": [{"name": "H", "forms": [["1","0","0"],["0","1"]]}]}"#,
            r#"{"dim": 2, "subspaces": [{"name": "H", "forms": [["1","x"],["0","1"]]}]}"#,
            r#"{"dim": 2, "subspaces": [{"name": "H", "forms": [["1","0"],["0","1"]], "extra": 1}]}"#,
            r#"{"dim": 2, "subspaces": [{"name": "H"}]}"#,
            r#"{"dim": 2, "subspaces": [{"name": "H", "forms": [["1","0"]]}]}"#,
            r#"{"dim": 2, "subspaces": [{"name": "H", "forms": [["0","0"],["0","1"]]}]}"#,
            r#"{"dim": 2, "subspaces": []}"#,
            r#"{"dim": 2}"#,
        ];
        for c in cases {
            assert!(parse_arrangement(c).is_err(), "accepted {c}");
        }
    }
}
