//! Characteristic polynomials and cone counts of central arrangements.
//!
//! Three independent routes: the Whitney subset sum, the Möbius sum over the
//! lattice of flats, and the deletion–restriction recursion on region counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{EchelonBasis, RatMatrix, Rational};

/// `coeffs[d]` is the coefficient of `t^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    #[serde(serialize_with = "ser_ints")]
    pub coeffs: Vec<BigInt>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl CharPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    fn add_term(&mut self, power: usize, c: &BigInt) {
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, BigInt::zero());
        }
        self.coeffs[power] += c;
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            if d == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match d {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{d}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

fn check_normals(normals: &RatMatrix) -> Result<()> {
    match (0..normals.rows()).find(|&i| normals.row(i).iter().all(Zero::is_zero)) {
        Some(i) => Err(Error::Argument(format!("normal {} is zero", i + 1))),
        None => Ok(()),
    }
}

/// `χ(t) = Σ_{B ⊆ A} (-1)^{|B|} t^{n - rank B}` over the rows of `normals`.
///
/// The subsets are walked as a binary include/exclude tree carrying an
/// incremental echelon basis. When the next normal already lies in the span
/// of the chosen ones, including it never changes a rank below that node, so
/// the two subtrees cancel term by term and the node contributes zero. The
/// result is the full subset sum; only provably cancelling work is skipped.
pub fn whitney_char_poly(normals: &RatMatrix) -> Result<CharPoly> {
    check_normals(normals)?;
    let n = normals.cols();
    let rows = normals.row_vecs();
    let mut basis = EchelonBasis::new(n);
    let mut poly = CharPoly {
        coeffs: vec![BigInt::zero(); n + 1],
    };
    // counts[r] = signed number of surviving leaves with rank r
    let mut counts = vec![0i64; n + 1];

    fn walk(i: usize, rows: &[Vec<Rational>], basis: &mut EchelonBasis, counts: &mut [i64]) {
        if i == rows.len() {
            let r = basis.rank();
            counts[r] += if r.is_multiple_of(2) { 1 } else { -1 };
            return;
        }
        if basis.contains(&rows[i]) {
            return;
        }
        walk(i + 1, rows, basis, counts);
        basis.insert(&rows[i]);
        walk(i + 1, rows, basis, counts);
        basis.pop();
    }

    walk(0, &rows, &mut basis, &mut counts);
    for (r, c) in counts.iter().enumerate() {
        poly.add_term(n - r, &BigInt::from(*c));
    }
    Ok(poly)
}

/// Unpruned Whitney sum, one rank computation per subset. Exponential; used
/// only to cross-check the tree walk on small inputs.
pub fn whitney_char_poly_naive(normals: &RatMatrix) -> Result<CharPoly> {
    check_normals(normals)?;
    let (count, n) = (normals.rows(), normals.cols());
    if count > 24 {
        return Err(Error::ScaleGuard(format!("2^{count} subsets")));
    }
    let mut poly = CharPoly {
        coeffs: vec![BigInt::zero(); n + 1],
    };
    for mask in 0u32..1 << count {
        let idx: Vec<usize> = (0..count).filter(|i| mask >> i & 1 == 1).collect();
        let r = if idx.is_empty() {
            0
        } else {
            normals.select_rows(&idx)?.rank()
        };
        let sign = if idx.len().is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        poly.add_term(n - r, &sign);
    }
    Ok(poly)
}

/// `(-1)^n χ(-1)`.
pub fn count_cones(chi: &CharPoly, n: usize) -> BigUint {
    let v = chi.eval(&BigInt::from(-1));
    let v = if n.is_multiple_of(2) { v } else { -v };
    v.to_biguint()
        .expect("cone count of a real arrangement is nonnegative")
}

/// A flat of the vector matroid on the rows: its members as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub members: u64,
    pub rank: usize,
}

fn span_closure(rows: &[Vec<Rational>], members: u64, dim: usize) -> (u64, usize) {
    let mut basis = EchelonBasis::new(dim);
    for (i, r) in rows.iter().enumerate() {
        if members >> i & 1 == 1 {
            basis.insert(r);
        }
    }
    let closed = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| basis.contains(r))
        .fold(0u64, |m, (i, _)| m | 1 << i);
    (closed, basis.rank())
}

/// All flats, grouped by rank, each level sorted by bitmask.
pub fn flats(normals: &RatMatrix) -> Result<Vec<Vec<Flat>>> {
    check_normals(normals)?;
    let count = normals.rows();
    if count > 64 {
        return Err(Error::ScaleGuard(format!(
            "{count} hyperplanes exceed the 64-element flat encoding"
        )));
    }
    let rows = normals.row_vecs();
    let dim = normals.cols();
    let mut levels = vec![vec![Flat { members: 0, rank: 0 }]];
    loop {
        let mut next: BTreeMap<u64, usize> = BTreeMap::new();
        for f in levels.last().expect("nonempty") {
            for e in 0..count {
                if f.members >> e & 1 == 0 {
                    let (closed, rank) = span_closure(&rows, f.members | 1 << e, dim);
                    next.insert(closed, rank);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(
            next.into_iter()
                .map(|(members, rank)| Flat { members, rank })
                .collect(),
        );
    }
    Ok(levels)
}

/// `Σ_F μ(0̂, F) t^{n - rank F}` over the lattice of flats.
pub fn char_poly_via_flats(normals: &RatMatrix) -> Result<CharPoly> {
    let levels = flats(normals)?;
    let n = normals.cols();
    let mut poly = CharPoly {
        coeffs: vec![BigInt::zero(); n + 1],
    };
    let mut below: Vec<(u64, BigInt)> = Vec::new();
    for level in &levels {
        let mut this_level = Vec::new();
        for f in level {
            debug_assert_eq!(f.rank, level[0].rank);
            let mu = if f.members == 0 {
                BigInt::one()
            } else {
                -below
                    .iter()
                    .filter(|(g, _)| g & !f.members == 0)
                    .fold(BigInt::zero(), |acc, (_, m)| acc + m)
            };
            poly.add_term(n - f.rank, &mu);
            this_level.push((f.members, mu));
        }
        below.extend(this_level);
    }
    Ok(poly)
}

/// Scales to first nonzero entry 1 so parallel normals coincide.
fn projective_key(v: &[Rational]) -> Vec<Rational> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
    v.iter().map(|x| x / &lead).collect()
}

/// Region count by `r(A) = r(A \ H) + r(A^H)`, with `A^H` realized in
/// coordinates on `H` through a kernel basis. Memoized on the projectively
/// normalized arrangement.
pub fn count_cones_deletion_restriction(normals: &RatMatrix) -> Result<u64> {
    check_normals(normals)?;
    let mut rows: Vec<Vec<Rational>> = normals.row_vecs().iter().map(|r| projective_key(r)).collect();
    rows.sort();
    rows.dedup();
    let mut memo = HashMap::new();
    Ok(regions(rows, &mut memo))
}

fn regions(rows: Vec<Vec<Rational>>, memo: &mut HashMap<Vec<Vec<Rational>>, u64>) -> u64 {
    if rows.is_empty() {
        return 1;
    }
    if let Some(&r) = memo.get(&rows) {
        return r;
    }
    let rank = RatMatrix::from_rows(rows.clone()).expect("rectangular").rank();
    let result = if rank == rows.len() {
        // independent normals: a coordinate orthant arrangement
        1u64 << rows.len()
    } else {
        let (h, rest) = rows.split_last().expect("nonempty");
        let deleted = regions(rest.to_vec(), memo);
        let kernel = RatMatrix::from_rows(vec![h.clone()])
            .expect("one row")
            .nullspace();
        let mut restricted: Vec<Vec<Rational>> = rest
            .iter()
            .filter_map(|a| {
                let p: Vec<Rational> = (0..kernel.cols())
                    .map(|j| {
                        a.iter()
                            .enumerate()
                            .fold(Rational::zero(), |acc, (i, x)| acc + x * kernel.get(i, j))
                    })
                    .collect();
                (!p.iter().all(Zero::is_zero)).then(|| projective_key(&p))
            })
            .collect();
        restricted.sort();
        restricted.dedup();
        deleted + regions(restricted, memo)
    };
    memo.insert(rows, result);
    result
}

/// Convenience: cone count as a machine integer, for reports.
pub fn cones(normals: &RatMatrix) -> Result<u64> {
    let chi = whitney_char_poly(normals)?;
    Ok(count_cones(&chi, normals.cols()).to_u64().expect("fits"))
}
