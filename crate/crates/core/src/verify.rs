//! Runs the expectations bundled with the fixtures plus a few reference
//! computations, and formats the outcome as a PASS/FAIL table.

use serde::Serialize;

use crate::arrangement::{concurrency_report, is_generic};
use crate::charpoly::{char_poly_via_flats, count_cones, whitney_char_poly};
use crate::conegeom::{is_facet, sign_vector, simplex_cells};
use crate::discriminantal::build_disc;
use crate::error::{Error, Result};
use crate::fixtures::{all_fixtures, load_fixture, Fixture};
use crate::lattice::{enumerate_p, in_p};
use crate::matroid::is_very_generic;
use crate::subset::SubsetIndex;

/// The twenty `Disc(A)` normals of the perpendicular-pairs example, as printed,
/// in dictionary order.
pub const PRINTED_DISC_ROWS: [([usize; 3], [i64; 6]); 20] = [
    ([1, 2, 3], [-5, -2, 3, 0, 0, 0]),
    ([1, 2, 4], [2, -1, 0, 3, 0, 0]),
    ([1, 2, 5], [-13, 2, 0, 0, 3, 0]),
    ([1, 2, 6], [-12, 3, 0, 0, 0, 3]),
    ([1, 3, 4], [3, 0, -1, 2, 0, 0]),
    ([1, 3, 5], [-12, 0, 2, 0, 2, 0]),
    ([1, 3, 6], [-13, 0, 3, 0, 0, 2]),
    ([1, 4, 5], [-3, 0, 0, 2, 1, 0]),
    ([1, 4, 6], [-2, 0, 0, 3, 0, 1]),
    ([1, 5, 6], [-5, 0, 0, 0, 3, -2]),
    ([2, 3, 4], [0, 3, -2, -5, 0, 0]),
    ([2, 3, 5], [0, -12, 13, 0, -5, 0]),
    ([2, 3, 6], [0, -13, 12, 0, 0, -5]),
    ([2, 4, 5], [0, -3, 0, 13, 2, 0]),
    ([2, 4, 6], [0, -2, 0, 12, 0, 2]),
    ([2, 5, 6], [0, -5, 0, 0, 12, -13]),
    ([3, 4, 5], [0, 0, -3, 12, 3, 0]),
    ([3, 4, 6], [0, 0, -2, 13, 0, 3]),
    ([3, 5, 6], [0, 0, -5, 0, 13, -12]),
    ([4, 5, 6], [0, 0, 0, -5, 2, -3]),
];

pub const VERY_GENERIC_CHI: &str = "x^6-20x^5+145x^4-426x^3+300x^2";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub fixture: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn subset_arg(check: &str, prefix: &str) -> Option<Result<SubsetIndex>> {
    let inner = check.strip_prefix(prefix)?.strip_prefix('{')?.strip_suffix('}')?;
    let parsed: std::result::Result<Vec<usize>, _> = inner.split(',').map(|t| t.trim().parse()).collect();
    Some(
        parsed
            .map_err(|_| Error::Argument(format!("bad subset in check `{check}`")))
            .and_then(SubsetIndex::from_unsorted),
    )
}

/// Evaluates one named check on a fixture and renders its value.
pub fn evaluate_check(f: &Fixture, check: &str) -> Result<String> {
    let h = &f.arrangement;
    if let Some(s) = subset_arg(check, "cell") {
        let s = s?;
        return Ok(simplex_cells(h)?.iter().any(|c| c.hyperplanes == s).to_string());
    }
    if let Some(s) = subset_arg(check, "facet") {
        let d = build_disc(h.coeffs())?;
        let sigma = sign_vector(&d, h.constants())?;
        return Ok(is_facet(&d, &sigma, &s?)?.to_string());
    }
    Ok(match check {
        "generic" => is_generic(h).to_string(),
        "disc.rank" => build_disc(h.coeffs())?.normals().rank().to_string(),
        "cones" => {
            let d = build_disc(h.coeffs())?;
            count_cones(&whitney_char_poly(d.normals())?, d.n()).to_string()
        }
        "cones.flats" => {
            let d = build_disc(h.coeffs())?;
            count_cones(&char_poly_via_flats(d.normals())?, d.n()).to_string()
        }
        "chi" => whitney_char_poly(build_disc(h.coeffs())?.normals())?.to_string(),
        "very_generic" => is_very_generic(h.coeffs())?.verdict.to_string(),
        "concurrency_sets" => concurrency_report(h)?.sets.to_string(),
        "concurrencies_in_P" => {
            let r = concurrency_report(h)?;
            in_p(&r.sets, h.n(), h.m()).to_string()
        }
        "disc.rows_as_printed" => {
            let d = build_disc(h.coeffs())?;
            let matching = PRINTED_DISC_ROWS
                .iter()
                .filter(|(s, row)| {
                    let idx = SubsetIndex::new(s.to_vec()).expect("sorted");
                    d.position(&idx).is_some_and(|p| {
                        d.normal(p)
                            .iter()
                            .zip(row)
                            .all(|(x, &y)| *x == crate::exactmath::rat(y))
                    })
                })
                .count();
            format!("{matching}/{}", PRINTED_DISC_ROWS.len())
        }
        other => return Err(Error::Argument(format!("unknown check `{other}`"))),
    })
}

fn outcome(fixture: &str, check: &str, expected: &str, actual: Result<String>) -> CheckOutcome {
    let actual = actual.unwrap_or_else(|e| format!("error: {e}"));
    CheckOutcome {
        fixture: fixture.to_string(),
        check: check.to_string(),
        expected: expected.to_string(),
        pass: actual == expected,
        actual,
    }
}

/// All fixture expectations, then the reference computations that do not
/// belong to a single fixture. Order is fixed.
pub fn verify_paper() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for f in all_fixtures() {
        for (check, expected) in &f.expectations {
            out.push(outcome(&f.name, check, expected, evaluate_check(&f, check)));
        }
    }
    let e51 = load_fixture("example-5-1").expect("bundled");
    for (check, expected) in [("disc.rows_as_printed", "20/20"), ("cones.flats", "884")] {
        out.push(outcome(&e51.name, check, expected, evaluate_check(&e51, check)));
    }
    let p = enumerate_p(6, 2);
    let chi = p.as_ref().map(|p| p.char_poly(6)).map_err(Clone::clone);
    out.push(outcome(
        "P(6,2)",
        "chi",
        VERY_GENERIC_CHI,
        chi.as_ref().map(ToString::to_string).map_err(Clone::clone),
    ));
    out.push(outcome(
        "P(6,2)",
        "cones",
        "892",
        chi.map(|c| count_cones(&c, 6).to_string()),
    ));
    out
}

pub fn render_table(outcomes: &[CheckOutcome]) -> String {
    let w_fix = outcomes.iter().map(|o| o.fixture.len()).max().unwrap_or(0).max(7);
    let w_check = outcomes.iter().map(|o| o.check.len()).max().unwrap_or(0).max(5);
    let mut s = format!(
        "{:<6}{:<w_fix$}  {:<w_check$}  {}\n",
        "", "fixture", "check", "expected / actual"
    );
    for o in outcomes {
        let status = if o.pass { "PASS" } else { "FAIL" };
        let detail = if o.pass {
            o.actual.clone()
        } else {
            format!("{} / {}", o.expected, o.actual)
        };
        s.push_str(&format!(
            "{status:<6}{:<w_fix$}  {:<w_check$}  {detail}\n",
            o.fixture, o.check
        ));
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    s.push_str(&format!("{passed}/{} checks passed\n", outcomes.len()));
    s
}
