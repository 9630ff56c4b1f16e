//! Exact strict-feasibility test for homogeneous linear systems.
//!
//! Decides whether some `y` has `s_i (a_i · y) > 0` for every strict row and
//! `c_j · y = 0` for every tight row, by maximizing `ε` subject to
//! `s_i (a_i · y) >= ε`, the tight equalities and `ε <= 1`, with `y = y⁺ - y⁻`.
//! Every right-hand side is zero except the `ε` bound, so the slack basis is
//! feasible and no phase one is needed. Dense rational tableau, Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::exactmath::{dot, Rational};

/// A strict constraint `sign * (normal · y) > 0`.
#[derive(Clone, Debug)]
pub struct Strict<'a> {
    pub normal: &'a [Rational],
    pub sign: i8,
}

/// Maximizes `c · x` over `A x <= b`, `x >= 0` with `b >= 0`. Returns the
/// optimal point, or `None` when unbounded.
fn simplex_max(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let vars = c.len();
    let width = vars + rows + 1;
    let mut t: Vec<Vec<Rational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, rhs))| {
            row.resize(vars + rows, Rational::zero());
            row[vars + i] = Rational::one();
            row.push(rhs);
            row
        })
        .collect();
    // objective row holds reduced costs -c
    let mut obj: Vec<Rational> = c.iter().map(|x| -x).collect();
    obj.resize(width, Rational::zero());
    let mut basis: Vec<usize> = (vars..vars + rows).collect();

    // Bland: lowest-index entering column with negative reduced cost
    while let Some(enter) = (0..vars + rows).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leave?;
        let p = t[pivot_row][enter].clone();
        for x in t[pivot_row].iter_mut() {
            *x /= &p;
        }
        let pivot = t[pivot_row].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pivot_row && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, q) in row.iter_mut().zip(&pivot) {
                    if !q.is_zero() {
                        *x -= &f * q;
                    }
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, q) in obj.iter_mut().zip(&pivot) {
                if !q.is_zero() {
                    *x -= &f * q;
                }
            }
        }
        basis[pivot_row] = enter;
    }

    let mut x = vec![Rational::zero(); vars];
    for (i, &v) in basis.iter().enumerate() {
        if v < vars {
            x[v] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// A point satisfying every strict and tight constraint, if one exists. The
/// returned point has been checked by substitution.
pub fn strict_witness(strict: &[Strict<'_>], tight: &[&[Rational]], dim: usize) -> Option<Vec<Rational>> {
    // variables: y⁺ (dim), y⁻ (dim), ε
    let vars = 2 * dim + 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let row_for = |normal: &[Rational], scale: &Rational| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); vars];
        for (j, v) in normal.iter().enumerate() {
            row[j] = v * scale;
            row[dim + j] = -(v * scale);
        }
        row
    };
    for s in strict {
        // -s (a · y) + ε <= 0
        let mut row = row_for(s.normal, &Rational::from_integer((-s.sign).into()));
        row[2 * dim] = Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    for c in tight {
        a.push(row_for(c, &Rational::one()));
        b.push(Rational::zero());
        a.push(row_for(c, &-Rational::one()));
        b.push(Rational::zero());
    }
    let mut cap = vec![Rational::zero(); vars];
    cap[2 * dim] = Rational::one();
    a.push(cap.clone());
    b.push(Rational::one());

    let x = simplex_max(a, b, cap).expect("ε is bounded by 1");
    if !x[2 * dim].is_positive() {
        return None;
    }
    let y: Vec<Rational> = (0..dim).map(|j| &x[j] - &x[dim + j]).collect();
    let ok = strict.iter().all(|s| {
        let v = dot(s.normal, &y);
        if s.sign > 0 {
            v.is_positive()
        } else {
            v.is_negative()
        }
    }) && tight.iter().all(|c| dot(c, &y).is_zero());
    assert!(ok, "simplex returned a point violating its own constraints");
    Some(y)
}

pub fn lp_strict_feasible(strict: &[Strict<'_>], tight: &[&[Rational]], dim: usize) -> bool {
    strict_witness(strict, tight, dim).is_some()
}
