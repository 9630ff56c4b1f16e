//! Bundled example arrangements with their expected check results.

use serde_json::Value;

use crate::arrangement::{parse_value, Arrangement};
use crate::error::{parse_err, Error, Result};

const SOURCES: [(&str, &str); 4] = [
    ("example-5-1", include_str!("../../../fixtures/example-5-1.json")),
    ("example-5-2", include_str!("../../../fixtures/example-5-2.json")),
    ("prop-6-1", include_str!("../../../fixtures/prop-6-1.json")),
    (
        "triangle-altitudes",
        include_str!("../../../fixtures/triangle-altitudes.json"),
    ),
];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub notes: Vec<String>,
    pub arrangement: Arrangement,
    /// `(check name, expected value)` pairs, compared as exact strings.
    pub expectations: Vec<(String, String)>,
}

pub fn fixture_names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let name = doc
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("name", "missing"))?
        .to_string();
    let notes = doc
        .get("notes")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).map(String::from).collect())
        .unwrap_or_default();
    let expectations = doc
        .get("expectations")
        .and_then(Value::as_array)
        .map(|a| {
            a.iter()
                .enumerate()
                .map(|(i, e)| {
                    let field = |k: &str| {
                        e.get(k)
                            .and_then(Value::as_str)
                            .map(String::from)
                            .ok_or_else(|| parse_err(format!("expectations[{i}].{k}"), "missing string"))
                    };
                    Ok((field("check")?, field("expected")?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?
        .unwrap_or_default();
    Ok(Fixture {
        name,
        notes,
        arrangement: parse_value(&doc)?,
        expectations,
    })
}

pub fn load_fixture(name: &str) -> Result<Fixture> {
    let (_, text) = SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownFixture {
            name: name.to_string(),
            available: fixture_names().join(", "),
        })?;
    parse_fixture(text)
}

pub fn all_fixtures() -> Vec<Fixture> {
    fixture_names()
        .into_iter()
        .map(|n| load_fixture(n).expect("bundled fixtures parse"))
        .collect()
}
