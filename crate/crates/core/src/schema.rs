//! The JSON document for a [`BiSymFunc`]:
//!
//! ```text
//! {"basis": "schur" | "powersum",
//!  "truncation": {"n1": …, "n2": …, "total": …, "t_lo": …, "t_hi": …},
//!  "terms": [{"lambda1": [..], "lambda2": [..], "t": [[exp, "num/den"], ..]}, ..]}
//! ```
//!
//! Terms are sorted by `(lambda1, lambda2)` in canonical partition order and
//! each `t` list by exponent, so equal values serialize to equal bytes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::partition::Partition;
use crate::symfunc::{from_schur_basis, to_schur_basis, BiSymFunc, Monomial, Truncation};
use crate::tpoly::{Rational, TPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Schur,
    #[serde(rename = "powersum")]
    PowerSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub lambda1: Partition,
    pub lambda2: Partition,
    pub t: Vec<(i32, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub basis: Basis,
    pub truncation: Truncation,
    pub terms: Vec<Term>,
}

pub fn format_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Schema(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(Error::Schema(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

fn encode_poly(c: &TPoly) -> Vec<(i32, String)> {
    c.terms().map(|(e, v)| (e, format_rational(v))).collect()
}

fn decode_poly(t: &[(i32, String)]) -> Result<TPoly, Error> {
    let mut p = TPoly::zero();
    let mut last = None;
    for (e, v) in t {
        if last.is_some_and(|l| l >= *e) {
            return Err(Error::Schema(format!("t exponents not strictly increasing at {e}")));
        }
        last = Some(*e);
        p.add_term(*e, parse_rational(v)?);
    }
    Ok(p)
}

fn encode_terms(map: &BTreeMap<Monomial, TPoly>) -> Vec<Term> {
    map.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((l1, l2), c)| Term {
            lambda1: l1.clone(),
            lambda2: l2.clone(),
            t: encode_poly(c),
        })
        .collect()
}

/// The document for `f` in the requested basis.
pub fn to_document(f: &BiSymFunc, basis: Basis) -> Document {
    let terms = match basis {
        Basis::PowerSum => encode_terms(f.terms()),
        Basis::Schur => encode_terms(&to_schur_basis(f)),
    };
    Document {
        basis,
        truncation: f.truncation(),
        terms,
    }
}

/// Reads a document back into the power-sum representation.
pub fn from_document(doc: &Document) -> Result<BiSymFunc, Error> {
    let mut map: BTreeMap<Monomial, TPoly> = BTreeMap::new();
    for term in &doc.terms {
        let key = (term.lambda1.clone(), term.lambda2.clone());
        if map.contains_key(&key) {
            return Err(Error::Schema(format!(
                "duplicate term ({:?}, {:?})",
                term.lambda1, term.lambda2
            )));
        }
        let tr = doc.truncation;
        if !tr.admits(term.lambda1.size(), term.lambda2.size()) {
            return Err(Error::Schema(format!(
                "term ({:?}, {:?}) lies outside the truncation",
                term.lambda1, term.lambda2
            )));
        }
        map.insert(key, decode_poly(&term.t)?);
    }
    match doc.basis {
        Basis::PowerSum => Ok(BiSymFunc::from_terms(map, doc.truncation)),
        Basis::Schur => from_schur_basis(&map, doc.truncation),
    }
}

pub fn to_json(f: &BiSymFunc, basis: Basis) -> String {
    serde_json::to_string(&to_document(f, basis)).expect("documents always serialize")
}

pub fn to_json_pretty(f: &BiSymFunc, basis: Basis) -> String {
    serde_json::to_string_pretty(&to_document(f, basis)).expect("documents always serialize")
}

pub fn from_json(s: &str) -> Result<BiSymFunc, Error> {
    let doc: Document = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
    from_document(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::part;
    use crate::symfunc::{schur_pair, Factor};
    use crate::tpoly::rat;
    use proptest::prelude::*;

    fn sample() -> BiSymFunc {
        let tr = Truncation::weight(4);
        let a = schur_pair(&part(&[2, 1]), &part(&[1]), tr).unwrap().scale(&TPoly::from_ints(&[1, 0, -3]));
        let b = BiSymFunc::power_sum(2, Factor::Second, tr).scale(&TPoly::monomial(-1, rat(1, 2)));
        &a + &b
    }

    #[test]
    fn exact_layout() {
        let tr = Truncation::new(2, 1, 3, 0, 4);
        let f = schur_pair(&part(&[2]), &part(&[1]), tr).unwrap().scale(&TPoly::from_ints(&[1, 0, 1]));
        let json = to_json(&f, Basis::Schur);
        assert_eq!(
            json,
            r#"{"basis":"schur","truncation":{"n1":2,"n2":1,"total":3,"t_lo":0,"t_hi":4},"terms":[{"lambda1":[2],"lambda2":[1],"t":[[0,"1/1"],[2,"1/1"]]}]}"#
        );
        let ps = to_json(&f, Basis::PowerSum);
        assert!(ps.starts_with(r#"{"basis":"powersum""#));
        assert!(ps.contains(r#"{"lambda1":[2],"lambda2":[1],"t":[[0,"1/2"],[2,"1/2"]]},{"lambda1":[1,1],"#));
    }

    #[test]
    fn round_trip_both_bases() {
        let f = sample();
        for basis in [Basis::Schur, Basis::PowerSum] {
            let back = from_json(&to_json(&f, basis)).unwrap();
            assert_eq!(back, f);
            assert_eq!(to_json(&back, basis), to_json(&f, basis));
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn malformed_documents() {
        let head = r#"{"basis":"powersum","truncation":{"n1":2,"n2":2,"total":2,"t_lo":0,"t_hi":2},"terms":"#;
        let cases = [
            format!(r#"{head}[{{"lambda1":[1],"lambda2":[],"t":[[0,"1/1"]]}},{{"lambda1":[1],"lambda2":[],"t":[[1,"1/1"]]}}]}}"#),
            format!(r#"{head}[{{"lambda1":[3],"lambda2":[],"t":[[0,"1/1"]]}}]}}"#),
            format!(r#"{head}[{{"lambda1":[1],"lambda2":[],"t":[[1,"1/1"],[0,"1/1"]]}}]}}"#),
            format!(r#"{head}[{{"lambda1":[1,2],"lambda2":[],"t":[[0,"1/1"]]}}]}}"#),
            format!(r#"{head}[{{"lambda1":[1],"lambda2":[],"t":[[0,"a"]]}}]}}"#),
            r#"{"basis":"monomial","truncation":{"n1":1,"n2":1,"total":1,"t_lo":0,"t_hi":0},"terms":[]}"#.to_string(),
        ];
        for c in &cases {
            assert!(matches!(from_json(c), Err(Error::Schema(_))), "{c}");
        }
    }

    fn arb_func() -> impl Strategy<Value = BiSymFunc> {
        let parts = prop::sample::select(vec![
            part(&[]),
            part(&[1]),
            part(&[2]),
            part(&[1, 1]),
            part(&[3]),
            part(&[2, 1]),
            part(&[1, 1, 1]),
        ]);
        let term = (parts.clone(), parts, -3i32..4, -5i64..6, 1i64..4);
        prop::collection::vec(term, 0..6).prop_map(|ts| {
            let tr = Truncation::weight(6);
            let mut f = BiSymFunc::zero(tr);
            for (a, b, e, n, d) in ts {
                f.add_term(a, b, TPoly::monomial(e, rat(n, d)));
            }
            f
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(f in arb_func()) {
            for basis in [Basis::Schur, Basis::PowerSum] {
                let s = to_json(&f, basis);
                let back = from_json(&s).unwrap();
                prop_assert_eq!(&back, &f);
                prop_assert_eq!(to_json(&back, basis), s);
            }
        }
    }
}
