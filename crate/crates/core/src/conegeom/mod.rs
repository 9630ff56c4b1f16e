//! Cones of `Disc(A)`, their facets, and simplex cells of the primal
//! arrangement.
//!
//! The constant vector `b` of a generic arrangement lies in an open cone of
//! `Disc(A)`. A discriminantal hyperplane `M_S` is a facet of that cone when
//! `M_S` meets the cone's closure in codimension one, i.e. when the other
//! sign conditions stay strictly satisfiable on `M_S`.

pub mod lp;
pub mod svg;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arrangement::{is_generic, Arrangement};
use crate::discriminantal::{build_disc, DiscArrangement};
use crate::error::{Error, Result};
use crate::exactmath::{sign, RatMatrix, Rational};
use crate::subset::{k_subsets, SubsetIndex};

pub use lp::{lp_strict_feasible, strict_witness, Strict};

/// Signs of `M_S · b` in dictionary order of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignVector {
    pub signs: Vec<i8>,
}

pub fn sign_vector(d: &DiscArrangement, b: &[Rational]) -> Result<SignVector> {
    if b.len() != d.n() {
        return Err(Error::Dimension(format!(
            "b has length {}, expected {}",
            b.len(),
            d.n()
        )));
    }
    let signs = (0..d.len())
        .map(|i| match sign(&d.evaluate(i, b)) {
            0 => Err(Error::OnHyperplane(d.subsets()[i].clone())),
            s => Ok(s),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignVector { signs })
}

fn facet_system<'a>(
    d: &'a DiscArrangement,
    sigma: &SignVector,
    s: &SubsetIndex,
) -> Result<(Vec<Strict<'a>>, &'a [Rational])> {
    let pos = d
        .position(s)
        .ok_or_else(|| Error::Argument(format!("{s} is not a hyperplane of Disc(A)")))?;
    if sigma.signs.len() != d.len() {
        return Err(Error::Dimension("sign vector length differs from Disc(A)".into()));
    }
    let strict = (0..d.len())
        .filter(|&i| i != pos)
        .map(|i| Strict {
            normal: d.normal(i),
            sign: sigma.signs[i],
        })
        .collect();
    Ok((strict, d.normal(pos)))
}

/// A point of `M_S` strictly inside every other wall of the cone, if any.
pub fn facet_witness(
    d: &DiscArrangement,
    sigma: &SignVector,
    s: &SubsetIndex,
) -> Result<Option<Vec<Rational>>> {
    let (strict, tight) = facet_system(d, sigma, s)?;
    Ok(strict_witness(&strict, &[tight], d.n()))
}

pub fn is_facet(d: &DiscArrangement, sigma: &SignVector, s: &SubsetIndex) -> Result<bool> {
    Ok(facet_witness(d, sigma, s)?.is_some())
}

/// All facets of the cone with sign vector `sigma`, in dictionary order.
pub fn facets(d: &DiscArrangement, sigma: &SignVector) -> Result<Vec<SubsetIndex>> {
    let mut out = Vec::new();
    for s in d.subsets() {
        if is_facet(d, sigma, s)? {
            out.push(s.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexCell {
    pub hyperplanes: SubsetIndex,
    /// Vertex `t` is cut out by the hyperplanes other than the `t`-th.
    #[serde(serialize_with = "ser_points")]
    pub vertices: Vec<Vec<Rational>>,
}

fn ser_points<S: serde::Serializer>(pts: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(pts.iter().map(|p| {
        p.iter()
            .map(crate::exactmath::format_rational)
            .collect::<Vec<_>>()
    }))
}

/// Intersection point of the hyperplanes with 1-based indices `idx`.
pub fn vertex(h: &Arrangement, idx: &[usize]) -> Result<Vec<Rational>> {
    let rows: Vec<usize> = idx.iter().map(|i| i - 1).collect();
    let a = h.coeffs().select_rows(&rows)?;
    let rhs = RatMatrix::new(
        rows.len(),
        1,
        rows.iter().map(|&i| h.constants()[i].clone()).collect(),
    )?;
    Ok(a.inverse()?.mul(&rhs)?.column(0))
}

/// Simplex vertices of the `(m+1)`-subset `s`.
pub fn simplex_vertices(h: &Arrangement, s: &SubsetIndex) -> Result<Vec<Vec<Rational>>> {
    s.elements()
        .iter()
        .map(|&skip| {
            let rest: Vec<usize> = s.elements().iter().copied().filter(|&i| i != skip).collect();
            vertex(h, &rest)
        })
        .collect()
}

/// Bounded regions cut out by exactly `m+1` hyperplanes: subsets whose
/// simplex has every other hyperplane strictly on one side.
pub fn simplex_cells(h: &Arrangement) -> Result<Vec<SimplexCell>> {
    if !is_generic(h) {
        return Err(Error::Precondition(
            "simplex cells need a generic arrangement".into(),
        ));
    }
    let (n, m) = (h.n(), h.m());
    let mut cells = Vec::new();
    for s in k_subsets(n, m + 1) {
        let vertices = simplex_vertices(h, &s)?;
        let clear = (1..=n).filter(|&j| !s.contains(j)).all(|j| {
            let signs: Vec<Rational> = vertices.iter().map(|v| h.residual(j, v)).collect();
            signs.iter().all(Signed::is_positive) || signs.iter().all(Signed::is_negative)
        });
        if clear {
            cells.push(SimplexCell {
                hyperplanes: s,
                vertices,
            });
        }
    }
    Ok(cells)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceRecord {
    pub subset: SubsetIndex,
    pub cell_present: bool,
    pub facet: bool,
}

/// For every `(m+1)`-subset: is it a simplex cell of `H`, and is `M_S` a facet
/// of the cone of `Disc(A)` containing the constants of `H`?
pub fn correspondence_report(h: &Arrangement) -> Result<Vec<CorrespondenceRecord>> {
    let cells = simplex_cells(h)?;
    let d = build_disc(h.coeffs())?;
    let sigma = sign_vector(&d, h.constants())?;
    d.subsets()
        .iter()
        .map(|s| {
            Ok(CorrespondenceRecord {
                subset: s.clone(),
                cell_present: cells.iter().any(|c| &c.hyperplanes == s),
                facet: is_facet(&d, &sigma, s)?,
            })
        })
        .collect()
}

/// Barycenter of a cell's vertices.
pub fn barycenter(vertices: &[Vec<Rational>]) -> Vec<Rational> {
    let count = Rational::from_integer(vertices.len().into());
    let dim = vertices.first().map_or(0, Vec::len);
    (0..dim)
        .map(|j| vertices.iter().fold(Rational::zero(), |acc, v| acc + &v[j]) / &count)
        .collect()
}
