//! The uniform matroid `U_{k,n}`, the Dilworth matroid `D(U_{k,n})` on its
//! circuits, systems of distinct representatives, and the very-genericity
//! decision for a coefficient matrix.
//!
//! A collection `{C_1..C_r}` of `(k+1)`-sets is Dilworth-independent iff
//! `|C_J| >= k + |J|` for every nonempty `J`, where `C_J` is the union of the
//! members indexed by `J`.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::arrangement::rows_generic;
use crate::discriminantal::{build_disc, DiscArrangement};
use crate::error::{Error, Result};
use crate::exactmath::RatMatrix;
use crate::subset::{k_subsets, SubsetFamily, SubsetIndex};

/// All circuits of `U_{k,n}`: the `(k+1)`-subsets of `{1..n}`.
pub fn uniform_circuits(n: usize, k: usize) -> Result<SubsetFamily> {
    if k == 0 || n <= k {
        return Err(Error::Argument(format!(
            "U_{{k,n}} circuits need n > k >= 1, got n = {n}, k = {k}"
        )));
    }
    SubsetFamily::new(n, k, k_subsets(n, k + 1))
}

fn check_circuits(f: &SubsetFamily) -> Result<()> {
    f.validate()?;
    match f.members.iter().find(|c| c.len() != f.k + 1) {
        Some(c) => Err(Error::Argument(format!(
            "{c} is not a circuit of U_{{{},{}}}",
            f.k, f.n
        ))),
        None => Ok(()),
    }
}

/// Dilworth independence on bitmasks, by enumeration of subcollections.
pub fn masks_independent(masks: &[u64], k: usize) -> bool {
    let r = masks.len();
    if r == 0 {
        return true;
    }
    if r >= 63 {
        return false;
    }
    let mut unions = vec![0u64; 1 << r];
    for j in 1usize..1 << r {
        let low = j.trailing_zeros() as usize;
        unions[j] = unions[j & (j - 1)] | masks[low];
        if (unions[j].count_ones() as usize) < k + j.count_ones() as usize {
            return false;
        }
    }
    true
}

/// Whether `independent + [candidate]` stays independent, given that
/// `independent` already is. Only subcollections containing the candidate
/// need checking.
pub fn extends_independent(independent: &[u64], candidate: u64, k: usize) -> bool {
    let r = independent.len();
    if r >= 63 {
        return false;
    }
    let mut unions = vec![0u64; 1 << r];
    for j in 0usize..1 << r {
        if j > 0 {
            let low = j.trailing_zeros() as usize;
            unions[j] = unions[j & (j - 1)] | independent[low];
        }
        let size = (unions[j] | candidate).count_ones() as usize;
        if size < k + j.count_ones() as usize + 1 {
            return false;
        }
    }
    true
}

pub fn dilworth_independent(f: &SubsetFamily) -> Result<bool> {
    check_circuits(f)?;
    Ok(masks_independent(&f.masks(), f.k))
}

/// Greedy basis of the members, in the order given.
pub fn greedy_basis(masks: &[u64], k: usize) -> Vec<u64> {
    let mut basis = Vec::new();
    for &c in masks {
        if !basis.contains(&c) && extends_independent(&basis, c, k) {
            basis.push(c);
        }
    }
    basis
}

/// Size of a largest Dilworth-independent subcollection.
pub fn dilworth_rank(f: &SubsetFamily) -> Result<usize> {
    check_circuits(f)?;
    Ok(greedy_basis(&f.masks(), f.k).len())
}

/// A system of distinct representatives `a_i in sets[i] ∩ ground`, by
/// augmenting paths, or `None` when Hall's condition fails.
pub fn find_sdr(sets: &[Vec<usize>], ground: &[usize]) -> Option<Vec<usize>> {
    let allowed: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| s.iter().copied().filter(|e| ground.contains(e)).collect())
        .collect();
    let mut owner: HashMap<usize, usize> = HashMap::new();

    fn augment(
        i: usize,
        allowed: &[Vec<usize>],
        owner: &mut HashMap<usize, usize>,
        visited: &mut Vec<usize>,
    ) -> bool {
        for &e in &allowed[i] {
            if visited.contains(&e) {
                continue;
            }
            visited.push(e);
            let free = match owner.get(&e) {
                None => true,
                Some(&j) => augment(j, allowed, owner, visited),
            };
            if free {
                owner.insert(e, i);
                return true;
            }
        }
        false
    }

    for i in 0..allowed.len() {
        if !augment(i, &allowed, &mut owner, &mut Vec::new()) {
            return None;
        }
    }
    let mut choice = vec![0; sets.len()];
    for (e, i) in owner {
        choice[i] = e;
    }
    Some(choice)
}

/// Rank of sets of `Disc(A)` rows, memoized on the sorted row-index list.
pub struct DiscRankOracle {
    disc: DiscArrangement,
    cache: Mutex<HashMap<Vec<usize>, usize>>,
}

impl DiscRankOracle {
    pub fn new(disc: DiscArrangement) -> Self {
        Self {
            disc,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn disc(&self) -> &DiscArrangement {
        &self.disc
    }

    /// `rows` are 0-based positions in dictionary order.
    pub fn rank(&self, rows: &[usize]) -> usize {
        let mut key = rows.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(&r) = self.cache.lock().expect("rank cache poisoned").get(&key) {
            return r;
        }
        let r = self
            .disc
            .normals()
            .select_rows(&key)
            .map(|m| m.rank())
            .unwrap_or(0);
        self.cache.lock().expect("rank cache poisoned").insert(key, r);
        r
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().expect("rank cache poisoned").len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeryGenericCertificate {
    pub verdict: bool,
    /// First (dictionary-least in depth-first order) Dilworth-independent
    /// collection whose rows are dependent.
    pub witness: Option<SubsetFamily>,
    /// Number of independent collections whose rank was checked.
    pub checked: usize,
}

/// Visits every Dilworth-independent collection of `(k+1)`-subsets of
/// `{1..n}` with at most `max_size` members, depth first in dictionary order.
/// Collections are passed as positions into `k_subsets(n, k+1)`. The visitor
/// returns `false` to stop the walk.
pub fn for_each_independent(n: usize, k: usize, max_size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let circuits: Vec<u64> = k_subsets(n, k + 1).iter().map(SubsetIndex::mask).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();

    fn rec(
        start: usize,
        circuits: &[u64],
        k: usize,
        max_size: usize,
        chosen: &mut Vec<usize>,
        masks: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == max_size {
            return true;
        }
        for i in start..circuits.len() {
            if !extends_independent(masks, circuits[i], k) {
                continue;
            }
            chosen.push(i);
            masks.push(circuits[i]);
            let go_on = visit(chosen) && rec(i + 1, circuits, k, max_size, chosen, masks, visit);
            chosen.pop();
            masks.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(0, &circuits, k, max_size, &mut chosen, &mut masks, &mut visit);
}

/// Decides whether the rows of `Disc(A)` represent `D(U_{m,n})`: every
/// Dilworth-independent collection of at most `n - m` subsets must index
/// linearly independent rows.
pub fn is_very_generic(a: &RatMatrix) -> Result<VeryGenericCertificate> {
    if !rows_generic(a) {
        return Err(Error::Precondition(
            "very-genericity is only defined for generic normals".into(),
        ));
    }
    let (n, m) = (a.rows(), a.cols());
    let oracle = DiscRankOracle::new(build_disc(a)?);
    let subsets = oracle.disc().subsets().to_vec();
    let mut witness = None;
    let mut checked = 0;
    for_each_independent(n, m, n - m, |rows| {
        checked += 1;
        if oracle.rank(rows) < rows.len() {
            witness = Some(rows.to_vec());
            return false;
        }
        true
    });
    let witness = witness
        .map(|rows| SubsetFamily::new(n, m, rows.iter().map(|&i| subsets[i].clone()).collect()))
        .transpose()?;
    Ok(VeryGenericCertificate {
        verdict: witness.is_none(),
        witness,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, k: usize, lists: &[&[usize]]) -> SubsetFamily {
        SubsetFamily::from_lists(n, k, lists).unwrap()
    }

    #[test]
    fn circuits() {
        assert_eq!(uniform_circuits(3, 2).unwrap().len(), 1);
        let c = uniform_circuits(4, 2).unwrap();
        assert_eq!(c.to_string(), "{{1,2,3}, {1,2,4}, {1,3,4}, {2,3,4}}");
        assert_eq!(uniform_circuits(6, 2).unwrap().len(), 20);
        assert!(uniform_circuits(2, 2).is_err());
    }

    #[test]
    fn independence_examples() {
        assert!(!dilworth_independent(&fam(6, 2, &[&[1, 2, 3], &[1, 2, 4], &[2, 3, 4]])).unwrap());
        assert!(dilworth_independent(&fam(9, 2, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])).unwrap());
        assert!(dilworth_independent(&fam(6, 2, &[&[2, 4, 6]])).unwrap());
        assert!(dilworth_independent(&fam(6, 2, &[&[1, 2]])).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(dilworth_rank(&uniform_circuits(4, 2).unwrap()).unwrap(), 2);
        assert_eq!(dilworth_rank(&fam(6, 2, &[])).unwrap(), 0);
        assert_eq!(dilworth_rank(&uniform_circuits(6, 2).unwrap()).unwrap(), 4);
    }

    // Enumeration oracle: rank = largest independent subcollection over all subsets.
    #[test]
    fn greedy_rank_matches_brute_force() {
        let circuits = uniform_circuits(5, 2).unwrap().masks();
        for pick in 0u32..1 << circuits.len() {
            if pick.count_ones() > 6 {
                continue;
            }
            let f: Vec<u64> = (0..circuits.len())
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| circuits[i])
                .collect();
            let brute = (0u32..1 << f.len())
                .filter(|s| {
                    let sub: Vec<u64> = (0..f.len()).filter(|i| s >> i & 1 == 1).map(|i| f[i]).collect();
                    masks_independent(&sub, 2)
                })
                .map(u32::count_ones)
                .max()
                .unwrap_or(0) as usize;
            assert_eq!(greedy_basis(&f, 2).len(), brute);
        }
    }

    #[test]
    fn sdr_examples() {
        let got = find_sdr(&[vec![1, 2], vec![2, 3]], &[1, 2, 3]).unwrap();
        assert!([1, 2].contains(&got[0]) && [2, 3].contains(&got[1]) && got[0] != got[1]);
        assert!(find_sdr(&[vec![1], vec![1]], &[1, 2]).is_none());
        assert!(find_sdr(&[vec![1, 2], vec![3]], &[1, 2]).is_none());
        assert_eq!(find_sdr(&[], &[1]), Some(vec![]));
    }

    #[test]
    fn matroid_axioms_on_small_ground_sets() {
        for n in 4..=6 {
            let circuits = uniform_circuits(n, 2).unwrap().masks();
            let mut independents: Vec<Vec<u64>> = Vec::new();
            for_each_independent(n, 2, n - 2, |rows| {
                independents.push(rows.iter().map(|&i| circuits[i]).collect());
                true
            });
            independents.push(Vec::new());
            let as_sets: std::collections::HashSet<Vec<u64>> = independents
                .iter()
                .map(|v| {
                    let mut v = v.clone();
                    v.sort_unstable();
                    v
                })
                .collect();
            for i in &independents {
                // downward closure: dropping any member keeps independence
                for drop in 0..i.len() {
                    let mut sub = i.clone();
                    sub.remove(drop);
                    sub.sort_unstable();
                    assert!(as_sets.contains(&sub));
                }
            }
            // exchange
            for a in &independents {
                for b in &independents {
                    if a.len() < b.len() {
                        assert!(b.iter().any(|e| !a.contains(e) && extends_independent(a, *e, 2)));
                    }
                }
            }
        }
    }

    #[test]
    fn very_generic_requires_generic_input() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[2, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(matches!(is_very_generic(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn perpendicular_pairs_are_not_very_generic() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[2, 3], &[3, 2], &[0, 1], &[3, -2], &[2, -3]]).unwrap();
        let cert = is_very_generic(&a).unwrap();
        assert!(!cert.verdict);
        let w = cert.witness.unwrap();
        assert!(dilworth_independent(&w).unwrap());
        let d = build_disc(&a).unwrap();
        let rows: Vec<usize> = w.members.iter().map(|s| d.position(s).unwrap()).collect();
        assert!(d.normals().select_rows(&rows).unwrap().rank() < w.len());
    }

    #[test]
    fn oracle_memoizes() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]).unwrap();
        let o = DiscRankOracle::new(build_disc(&a).unwrap());
        assert_eq!(o.rank(&[1, 0]), 2);
        assert_eq!(o.rank(&[0, 1]), 2);
        assert_eq!(o.cached(), 1);
    }
}
