//! Affine hyperplane arrangements `a_i . x = b_i` in `R^m` over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{parse_err, Error, Result};
use crate::exactmath::{dot, format_rational, parse_rational, RatMatrix, Rational};
use crate::subset::{k_subsets, SubsetFamily, SubsetIndex};

/// `n` hyperplanes in `R^m`: coefficient rows plus constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    coeffs: RatMatrix,
    constants: Vec<Rational>,
}

impl Arrangement {
    pub fn new(coeffs: RatMatrix, constants: Vec<Rational>) -> Result<Self> {
        if coeffs.rows() == 0 || coeffs.cols() == 0 {
            return Err(Error::Argument(
                "an arrangement needs at least one hyperplane in dimension >= 1".into(),
            ));
        }
        if constants.len() != coeffs.rows() {
            return Err(Error::Dimension(format!(
                "{} constants for {} hyperplanes",
                constants.len(),
                coeffs.rows()
            )));
        }
        if let Some(i) = (0..coeffs.rows()).find(|&i| coeffs.row(i).iter().all(Zero::is_zero)) {
            return Err(Error::Argument(format!("hyperplane {} has a zero normal", i + 1)));
        }
        Ok(Self { coeffs, constants })
    }

    pub fn from_i64(rows: &[&[i64]], constants: &[i64]) -> Result<Self> {
        Self::new(
            RatMatrix::from_i64(rows)?,
            constants.iter().map(|&c| crate::exactmath::rat(c)).collect(),
        )
    }

    /// Number of hyperplanes.
    pub fn n(&self) -> usize {
        self.coeffs.rows()
    }

    /// Ambient dimension.
    pub fn m(&self) -> usize {
        self.coeffs.cols()
    }

    pub fn coeffs(&self) -> &RatMatrix {
        &self.coeffs
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    /// Same normals, new constants.
    pub fn with_constants(&self, constants: Vec<Rational>) -> Result<Self> {
        Self::new(self.coeffs.clone(), constants)
    }

    /// Evaluates `a_i . x - b_i` for 1-based `i`.
    pub fn residual(&self, i: usize, x: &[Rational]) -> Rational {
        dot(self.coeffs.row(i - 1), x) - &self.constants[i - 1]
    }

    pub fn to_json(&self) -> Value {
        let hyperplanes: Vec<Value> = (0..self.n())
            .map(|i| {
                json!({
                    "coeffs": self.coeffs.row(i).iter().map(format_rational).collect::<Vec<_>>(),
                    "constant": format_rational(&self.constants[i]),
                })
            })
            .collect();
        json!({ "m": self.m(), "hyperplanes": hyperplanes })
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values always serialize")
    }
}

fn scalar(v: &Value, loc: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(loc, e)),
        Value::Number(n) if n.is_i64() => Ok(crate::exactmath::rat(n.as_i64().unwrap_or_default())),
        _ => Err(parse_err(loc, "expected a \"p/q\" string")),
    }
}

/// Parses the arrangement document
/// `{ "m": int, "hyperplanes": [ { "coeffs": ["p/q", ...], "constant": "p/q" } ] }`.
/// Unknown top-level keys are ignored.
pub fn parse(text: &str) -> Result<Arrangement> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    parse_value(&doc)
}

pub fn parse_value(doc: &Value) -> Result<Arrangement> {
    let m = doc
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("m", "missing or not a non-negative integer"))? as usize;
    if m == 0 {
        return Err(parse_err("m", "dimension must be at least 1"));
    }
    let hyperplanes = doc
        .get("hyperplanes")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("hyperplanes", "missing or not an array"))?;
    if hyperplanes.is_empty() {
        return Err(parse_err("hyperplanes", "empty hyperplane list"));
    }
    let mut rows = Vec::with_capacity(hyperplanes.len());
    let mut constants = Vec::with_capacity(hyperplanes.len());
    for (i, h) in hyperplanes.iter().enumerate() {
        let loc = format!("hyperplanes[{i}]");
        let coeffs = h
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err(format!("{loc}.coeffs"), "missing or not an array"))?;
        if coeffs.len() != m {
            return Err(parse_err(
                format!("{loc}.coeffs"),
                format!("{} coefficients, expected m = {m}", coeffs.len()),
            ));
        }
        let row = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| scalar(c, &format!("{loc}.coeffs[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        if row.iter().all(Zero::is_zero) {
            return Err(parse_err(format!("{loc}.coeffs"), "zero coefficient row"));
        }
        let c = h
            .get("constant")
            .ok_or_else(|| parse_err(format!("{loc}.constant"), "missing"))?;
        constants.push(scalar(c, &format!("{loc}.constant"))?);
        rows.push(row);
    }
    Arrangement::new(RatMatrix::from_rows(rows)?, constants)
}

/// Every set of at most `cols` rows is linearly independent.
pub fn rows_generic(a: &RatMatrix) -> bool {
    let size = a.cols().min(a.rows());
    k_subsets(a.rows(), size).iter().all(|s| {
        let idx: Vec<usize> = s.elements().iter().map(|e| e - 1).collect();
        a.select_rows(&idx).map(|sub| sub.rank() == size).unwrap_or(false)
    })
}

/// Every `<= m` normals are linearly independent.
pub fn normals_generic(h: &Arrangement) -> bool {
    rows_generic(h.coeffs())
}

/// Both genericity conditions: normals in general position and no `m+1`
/// hyperplanes through a common point.
pub fn is_generic(h: &Arrangement) -> bool {
    if !normals_generic(h) {
        return false;
    }
    let m = h.m();
    k_subsets(h.n(), m + 1).iter().all(|s| {
        let idx: Vec<usize> = s.elements().iter().map(|e| e - 1).collect();
        let a = h.coeffs().select_rows(&idx).expect("indices in range");
        let mut rows = a.row_vecs();
        for (row, &i) in rows.iter_mut().zip(&idx) {
            row.push(h.constants()[i].clone());
        }
        let augmented = RatMatrix::from_rows(rows).expect("rectangular");
        augmented.rank() > a.rank()
    })
}

/// Points lying on more than `m` hyperplanes, with the full index set of each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcurrencyReport {
    pub sets: SubsetFamily,
    pub points: Vec<Vec<Rational>>,
}

/// Groups the vertices of the arrangement by exact coordinates and keeps the
/// points of multiplicity `> m`. Requires generic normals, so every vertex is
/// cut out by any `m` of its hyperplanes.
pub fn concurrency_report(h: &Arrangement) -> Result<ConcurrencyReport> {
    if !normals_generic(h) {
        return Err(Error::Precondition(
            "concurrency report needs normals in general position".into(),
        ));
    }
    let (n, m) = (h.n(), h.m());
    let mut seen: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
    if n > m {
        for s in k_subsets(n, m) {
            let idx: Vec<usize> = s.elements().iter().map(|e| e - 1).collect();
            let a = h.coeffs().select_rows(&idx)?;
            let rhs = RatMatrix::new(m, 1, idx.iter().map(|&i| h.constants()[i].clone()).collect())?;
            let x = a.inverse()?.mul(&rhs)?;
            seen.insert(x.column(0), ());
        }
    }
    let mut found: Vec<(SubsetIndex, Vec<Rational>)> = seen
        .into_keys()
        .filter_map(|p| {
            let through: Vec<usize> = (1..=n).filter(|&i| h.residual(i, &p).is_zero()).collect();
            (through.len() > m).then(|| (SubsetIndex::new(through).expect("sorted"), p))
        })
        .collect();
    found.sort();
    let (sets, points): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    Ok(ConcurrencyReport {
        sets: SubsetFamily::new(n, m, sets)?,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn example_5_1() -> Arrangement {
        Arrangement::from_i64(
            &[&[1, 0], &[2, 3], &[3, 2], &[0, 1], &[3, -2], &[2, -3]],
            &[0, -2, 3, 0, 5, 5],
        )
        .unwrap()
    }

    fn triangle_altitudes() -> Arrangement {
        Arrangement::from_i64(
            &[&[0, 1], &[3, -1], &[1, 1], &[1, 0], &[1, 3], &[1, -1]],
            &[0, 0, 4, 1, 4, 0],
        )
        .unwrap()
    }

    #[test]
    fn parse_example() {
        let doc = r#"{"m": 2, "hyperplanes": [
            {"coeffs": ["1","0"], "constant": "0"},
            {"coeffs": ["2","3"], "constant": "-2"},
            {"coeffs": ["3","2"], "constant": "3"},
            {"coeffs": ["0","1"], "constant": "0"},
            {"coeffs": ["3","-2"], "constant": "5"},
            {"coeffs": ["2","-3"], "constant": "5"}]}"#;
        let h = parse(doc).unwrap();
        assert_eq!((h.n(), h.m()), (6, 2));
        assert_eq!(h, example_5_1());
        assert_eq!(parse(&h.serialize()).unwrap(), h);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse(r#"{"m":2,"hyperplanes":[]}"#),
            Err(Error::Parse { .. })
        ));
        let zero = r#"{"m":2,"hyperplanes":[{"coeffs":["0","0"],"constant":"1"}]}"#;
        assert!(matches!(parse(zero), Err(Error::Parse { .. })));
        let bad = r#"{"m":2,"hyperplanes":[{"coeffs":["1","x/2"],"constant":"1"}]}"#;
        match parse(bad) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "hyperplanes[0].coeffs[1]"),
            other => panic!("unexpected {other:?}"),
        }
        let short = r#"{"m":3,"hyperplanes":[{"coeffs":["1","2"],"constant":"1"}]}"#;
        assert!(parse(short).is_err());
    }

    #[test]
    fn genericity_of_normals() {
        assert!(normals_generic(&example_5_1()));
        let rep = Arrangement::from_i64(&[&[1, 0], &[0, 1], &[1, 0]], &[0, 1, 2]).unwrap();
        assert!(!normals_generic(&rep));
        let three = Arrangement::from_i64(&[&[1, 0], &[0, 1], &[1, 1]], &[0, 0, 5]).unwrap();
        assert!(normals_generic(&three));
    }

    #[test]
    fn genericity_of_arrangements() {
        assert!(is_generic(&example_5_1()));
        assert!(!is_generic(&triangle_altitudes()));
        let parallel = Arrangement::from_i64(&[&[1, 1], &[2, 2]], &[0, 1]).unwrap();
        assert!(!is_generic(&parallel));
    }

    #[test]
    fn triangle_altitude_concurrencies() {
        let rep = concurrency_report(&triangle_altitudes()).unwrap();
        let sets: Vec<&[usize]> = rep.sets.members.iter().map(SubsetIndex::elements).collect();
        assert_eq!(sets, vec![&[1, 2, 6][..], &[1, 3, 5], &[2, 3, 4], &[4, 5, 6]]);
        let union = rep.sets.masks().iter().fold(0, |a, b| a | b);
        assert_eq!(union, 0b111111);
        let orthocenter = rep.points[3].clone();
        assert_eq!(orthocenter, vec![rat(1), rat(1)]);
    }

    #[test]
    fn generic_has_empty_report() {
        assert!(concurrency_report(&example_5_1()).unwrap().sets.is_empty());
    }

    #[test]
    fn central_pencil_is_one_concurrency() {
        let h = Arrangement::from_i64(&[&[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0]).unwrap();
        let rep = concurrency_report(&h).unwrap();
        assert_eq!(rep.sets.members, vec![SubsetIndex::new(vec![1, 2, 3]).unwrap()]);
    }

    #[test]
    fn normals_generic_survives_row_scaling() {
        let h = example_5_1();
        let mut rows = h.coeffs().row_vecs();
        let mut consts = h.constants().to_vec();
        for (i, f) in [(1, rat(-3)), (4, crate::exactmath::ratio(2, 7))] {
            rows[i].iter_mut().for_each(|x| *x *= &f);
            consts[i] *= &f;
        }
        let scaled = Arrangement::new(RatMatrix::from_rows(rows).unwrap(), consts).unwrap();
        assert_eq!(normals_generic(&scaled), normals_generic(&h));
        assert_eq!(is_generic(&scaled), is_generic(&h));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn serialize_parse_round_trip(
                n in 1usize..6,
                m in 1usize..4,
                seed in proptest::collection::vec((-50i64..50, 1i64..9), 30),
            ) {
                let mut it = seed.into_iter().cycle();
                let mut rows = Vec::new();
                for _ in 0..n {
                    let mut row: Vec<Rational> = (0..m)
                        .map(|_| { let (p, q) = it.next().unwrap(); crate::exactmath::ratio(p, q) })
                        .collect();
                    if row.iter().all(Zero::is_zero) { row[0] = rat(1); }
                    rows.push(row);
                }
                let consts = (0..n).map(|_| { let (p, q) = it.next().unwrap(); crate::exactmath::ratio(p, q) }).collect();
                let h = Arrangement::new(RatMatrix::from_rows(rows).unwrap(), consts).unwrap();
                prop_assert_eq!(parse(&h.serialize()).unwrap(), h);
            }
        }
    }
}
