//! The discriminantal arrangement `Disc(A)`: one central hyperplane `M_S` in
//! `R^n` per `(m+1)`-subset `S` of the primal hyperplanes.
//!
//! `M_S` is the locus of constant vectors `y` for which the hyperplanes indexed
//! by `S` pass through a common point, i.e. `det [A_S | y_S] = 0`. Its normal is
//! read off by cofactor expansion along the last column: the coefficient of
//! `y_{i_t}` is `(-1)^(m+1+t)` times the `m x m` minor of `A` on `S \ {i_t}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{dot, format_rational, RatMatrix, Rational};
use crate::subset::{k_subsets, SubsetIndex};

/// Normal vector of `M_S` (length `n`), supported on `S`.
pub fn disc_row(a: &RatMatrix, s: &SubsetIndex) -> Result<Vec<Rational>> {
    let (n, m) = (a.rows(), a.cols());
    if s.len() != m + 1 {
        return Err(Error::Argument(format!(
            "discriminantal subsets have m+1 = {} elements, got {s}",
            m + 1
        )));
    }
    if s.max_element().is_some_and(|e| e > n) {
        return Err(Error::Argument(format!("{s} leaves {{1..{n}}}")));
    }
    let cols: Vec<usize> = (0..m).collect();
    let mut row = vec![Rational::zero(); n];
    for (t, &i) in s.elements().iter().enumerate() {
        let rest: Vec<usize> = s.elements().iter().filter(|&&j| j != i).map(|j| j - 1).collect();
        let minor = a.select(&rest, &cols)?.det()?;
        // 1-based position t+1, so the sign is (-1)^(m+1+t+1) = (-1)^(m+t).
        row[i - 1] = if (m + t) % 2 == 0 { minor } else { -minor };
    }
    Ok(row)
}

/// `Disc(A)`: rows in dictionary order of their subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscArrangement {
    n: usize,
    m: usize,
    subsets: Vec<SubsetIndex>,
    normals: RatMatrix,
}

pub fn build_disc(a: &RatMatrix) -> Result<DiscArrangement> {
    let (n, m) = (a.rows(), a.cols());
    if m == 0 || n <= m {
        return Err(Error::Argument(format!(
            "discriminantal arrangement needs n > m >= 1, got n = {n}, m = {m}"
        )));
    }
    let subsets = k_subsets(n, m + 1);
    let rows = subsets
        .iter()
        .map(|s| disc_row(a, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscArrangement {
        n,
        m,
        subsets,
        normals: RatMatrix::from_rows(rows)?,
    })
}

impl DiscArrangement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[SubsetIndex] {
        &self.subsets
    }

    /// The `binom(n, m+1) x n` normal matrix.
    pub fn normals(&self) -> &RatMatrix {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        self.normals.row(i)
    }

    pub fn position(&self, s: &SubsetIndex) -> Option<usize> {
        self.subsets.binary_search(s).ok()
    }

    pub fn evaluate(&self, i: usize, y: &[Rational]) -> Rational {
        dot(self.normals.row(i), y)
    }

    /// Each row scaled to a primitive integer vector with positive leading
    /// entry; same hyperplanes, canonical equations.
    pub fn canonicalize(&self) -> Self {
        let rows = (0..self.len()).map(|i| primitive(self.normals.row(i))).collect();
        Self {
            n: self.n,
            m: self.m,
            subsets: self.subsets.clone(),
            normals: RatMatrix::from_rows(rows).expect("rectangular"),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "subsets": self.subsets,
            "normals": (0..self.len())
                .map(|i| self.normals.row(i).iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn primitive(row: &[Rational]) -> Vec<Rational> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return row.to_vec();
    }
    let flip = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let v = Rational::from_integer(x / &g);
            if flip {
                -v
            } else {
                v
            }
        })
        .collect()
}
