//! The poset `P(n,k)` of concurrency patterns, concurrency-closed collections
//! of `(k+1)`-sets, the maps between them, and the lattice of flats of
//! `Disc(A)` that `P(n,k)` models.
//!
//! Notation: `ν(S) = max(0, |S| - k)`. A family `{S_i}` with every
//! `|S_i| >= k+1` is in `P(n,k)` iff `|∪_{i∈I} S_i| > k + Σ_{i∈I} ν(S_i)` for
//! every `I` with `|I| >= 2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::charpoly::CharPoly;
use crate::discriminantal::build_disc;
use crate::error::{Error, Result};
use crate::exactmath::{EchelonBasis, RatMatrix, Rational};
use crate::matroid::{extends_independent, greedy_basis, is_very_generic};
use crate::subset::{k_subsets, SubsetFamily, SubsetIndex};

/// Above this many elements only the Möbius row of the bottom is computed.
pub const FULL_MOBIUS_LIMIT: usize = 400;

pub fn nu(size: usize, k: usize) -> usize {
    size.saturating_sub(k)
}

/// Membership in `P(n,k)` on bitmasks.
pub fn masks_in_p(masks: &[u64], k: usize) -> bool {
    if masks.iter().any(|s| (s.count_ones() as usize) < k + 1) {
        return false;
    }
    let r = masks.len();
    if r >= 31 {
        return false;
    }
    let mut unions = vec![0u64; 1 << r];
    let mut nus = vec![0usize; 1 << r];
    for j in 1usize..1 << r {
        let low = j.trailing_zeros() as usize;
        let rest = j & (j - 1);
        unions[j] = unions[rest] | masks[low];
        nus[j] = nus[rest] + nu(masks[low].count_ones() as usize, k);
        if rest != 0 && unions[j].count_ones() as usize <= k + nus[j] {
            return false;
        }
    }
    true
}

pub fn in_p(f: &SubsetFamily, n: usize, k: usize) -> bool {
    f.members.iter().all(|s| s.max_element().is_some_and(|e| e <= n)) && masks_in_p(&f.masks(), k)
}

/// Every member of `f` lies inside some member of `g`.
pub fn p_order(f: &SubsetFamily, g: &SubsetFamily) -> bool {
    masks_leq(&f.masks(), &g.masks())
}

fn masks_leq(f: &[u64], g: &[u64]) -> bool {
    f.iter().all(|s| g.iter().any(|t| s & !t == 0))
}

/// `Δ(F) = ν(∪ S_i) - Σ ν(S_i)`.
pub fn delta(f: &SubsetFamily, k: usize) -> i64 {
    let union = f.masks().iter().fold(0u64, |u, s| u | s);
    let sum: usize = f.members.iter().map(|s| nu(s.len(), k)).sum();
    nu(union.count_ones() as usize, k) as i64 - sum as i64
}

/// A finite poset with elements listed bottom first and by nondecreasing rank.
#[derive(Clone, Debug)]
pub struct Poset<T> {
    pub elements: Vec<T>,
    pub ranks: Vec<usize>,
    /// `order[i][j]` iff `elements[i] <= elements[j]`.
    pub order: Vec<Vec<bool>>,
    pub mobius: Option<Vec<Vec<i64>>>,
    /// `μ(0̂, x)` for every element.
    pub bottom_mobius: Vec<i64>,
}

impl<T> Poset<T> {
    fn build(elements: Vec<T>, ranks: Vec<usize>, leq: impl Fn(&T, &T) -> bool) -> Self {
        let len = elements.len();
        let order: Vec<Vec<bool>> = elements
            .iter()
            .map(|x| elements.iter().map(|y| leq(x, y)).collect())
            .collect();
        let mobius_from = |x: usize| {
            let mut mu = vec![0i64; len];
            mu[x] = 1;
            for y in x + 1..len {
                if order[x][y] {
                    mu[y] = -(x..y).filter(|&z| order[z][y]).map(|z| mu[z]).sum::<i64>();
                }
            }
            mu
        };
        let bottom_mobius = if len == 0 { Vec::new() } else { mobius_from(0) };
        let mobius = (len <= FULL_MOBIUS_LIMIT).then(|| (0..len).map(mobius_from).collect());
        Self {
            elements,
            ranks,
            order,
            mobius,
            bottom_mobius,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Number of elements of each rank.
    pub fn rank_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_rank() + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }

    /// `Σ_x μ(0̂, x) t^{n - rank x}`.
    pub fn char_poly(&self, n: usize) -> CharPoly {
        let mut coeffs = vec![BigInt::from(0); n + 1];
        for (mu, &r) in self.bottom_mobius.iter().zip(&self.ranks) {
            coeffs[n - r] += *mu;
        }
        CharPoly { coeffs }
    }

    pub fn is_partial_order(&self) -> bool {
        let len = self.len();
        (0..len).all(|i| self.order[i][i])
            && (0..len).all(|i| (0..len).all(|j| i == j || !(self.order[i][j] && self.order[j][i])))
            && (0..len).all(|i| {
                (0..len).all(|j| !self.order[i][j] || (0..len).all(|l| !self.order[j][l] || self.order[i][l]))
            })
    }
}

/// Enumerates `P(n,k)` with the empty family as bottom element of rank 0;
/// element rank is `Σ ν(S_i)`.
pub fn enumerate_p(n: usize, k: usize) -> Result<Poset<SubsetFamily>> {
    if k == 0 || n <= k {
        return Err(Error::Argument(format!(
            "P(n,k) needs n > k >= 1, got n = {n}, k = {k}"
        )));
    }
    if !((n <= 7 && k == 2) || n - k <= 4) {
        return Err(Error::ScaleGuard(format!(
            "P({n},{k}) is beyond the supported range (n <= 7 with k = 2, or n - k <= 4)"
        )));
    }
    let candidates: Vec<u64> = (1u64..1 << n).filter(|s| s.count_ones() as usize > k).collect();
    let mut found: Vec<Vec<u64>> = vec![Vec::new()];
    // Aggregates (union, Σν) for every subcollection of the current family.
    let mut chosen: Vec<u64> = Vec::new();
    let mut aggregates: Vec<(u64, usize)> = vec![(0, 0)];

    fn extend(
        start: usize,
        candidates: &[u64],
        k: usize,
        chosen: &mut Vec<u64>,
        aggregates: &mut Vec<(u64, usize)>,
        found: &mut Vec<Vec<u64>>,
    ) {
        for (i, &s) in candidates.iter().enumerate().skip(start) {
            let nu_s = nu(s.count_ones() as usize, k);
            // every nonempty old subcollection together with s
            let ok = aggregates.iter().skip(1).all(|&(u, v)| {
                let union = u | s;
                union.count_ones() as usize > k + v + nu_s
            });
            if !ok {
                continue;
            }
            let grown: Vec<(u64, usize)> = aggregates.iter().map(|&(u, v)| (u | s, v + nu_s)).collect();
            let old = aggregates.len();
            aggregates.extend(grown);
            chosen.push(s);
            found.push(chosen.clone());
            extend(i + 1, candidates, k, chosen, aggregates, found);
            chosen.pop();
            aggregates.truncate(old);
        }
    }

    extend(0, &candidates, k, &mut chosen, &mut aggregates, &mut found);

    let mut keyed: Vec<(usize, SubsetFamily)> = found
        .into_iter()
        .map(|masks| {
            let rank = masks.iter().map(|s| nu(s.count_ones() as usize, k)).sum();
            (rank, SubsetFamily::from_masks(n, k, masks))
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.members.cmp(&b.1.members)));
    let (ranks, elements): (Vec<_>, Vec<_>) = keyed.into_iter().unzip();
    Ok(Poset::build(elements, ranks, p_order))
}

fn check_circuits(f: &SubsetFamily) -> Result<()> {
    f.validate()?;
    match f.members.iter().find(|c| c.len() != f.k + 1) {
        Some(c) => Err(Error::Argument(format!(
            "{c} does not have k+1 = {} elements",
            f.k + 1
        ))),
        None => Ok(()),
    }
}

fn closure_step(masks: &[u64], n: usize, k: usize) -> Vec<u64> {
    let basis = greedy_basis(masks, k);
    k_subsets(n, k + 1)
        .iter()
        .map(SubsetIndex::mask)
        .filter(|&e| basis.contains(&e) || !extends_independent(&basis, e, k))
        .collect()
}

/// Concurrency closure: every `(k+1)`-subset of `{1..n}` whose addition
/// leaves the Dilworth rank unchanged. Iterated to a fixed point, which is
/// reached after the first pass.
pub fn closure(f: &SubsetFamily) -> Result<SubsetFamily> {
    check_circuits(f)?;
    let (n, k) = (f.n, f.k);
    let mut current = closure_step(&f.masks(), n, k);
    let mut passes = 1;
    loop {
        let next = closure_step(&current, n, k);
        if next == current {
            break;
        }
        current = next;
        passes += 1;
    }
    debug_assert_eq!(passes, 1, "closure needed more than one pass");
    Ok(SubsetFamily::from_masks(n, k, current))
}

pub fn is_closed(d: &SubsetFamily) -> Result<bool> {
    Ok(closure(d)?.canonical() == d.canonical())
}

/// The sets of concurrencies `σ(D)`: maximal index sets all of whose
/// `(k+1)`-subsets belong to `D`.
pub fn concurrency_sets(d: &SubsetFamily) -> Result<SubsetFamily> {
    if !is_closed(d)? {
        return Err(Error::Argument("collection is not concurrency closed".into()));
    }
    let (n, k) = (d.n, d.k);
    let masks = d.masks();
    // union-find over members; link those sharing exactly k elements
    let mut parent: Vec<usize> = (0..masks.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if (masks[i] & masks[j]).count_ones() as usize == k {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, u64> = BTreeMap::new();
    for (i, &m) in masks.iter().enumerate() {
        let root = find(&mut parent, i);
        *groups.entry(root).or_default() |= m;
    }
    let present = |s: u64| masks.contains(&s);
    let all_inside = |u: u64| {
        k_subsets(n, k + 1)
            .iter()
            .map(SubsetIndex::mask)
            .filter(|e| e & !u == 0)
            .all(present)
    };
    let sets: Vec<u64> = groups.into_values().collect();
    for &u in &sets {
        let maximal = (0..n).all(|x| u >> x & 1 == 1 || !all_inside(u | 1 << x));
        if !all_inside(u) || !maximal {
            return Err(Error::Argument(format!(
                "merged set {} is not a concurrency set",
                SubsetIndex::from_mask(u)
            )));
        }
    }
    Ok(SubsetFamily::from_masks(n, k, sets))
}

/// Base collection built from the concurrency sets: for `D_i = {j_1 < ... < j_m}`
/// the sets `{j_1..j_k, j_l}` for `k < l <= m`.
pub fn base_collection(d: &SubsetFamily) -> Result<SubsetFamily> {
    let sigma = concurrency_sets(d)?;
    let k = d.k;
    let mut members = Vec::new();
    for s in &sigma.members {
        let e = s.elements();
        for &last in &e[k..] {
            let mut pick = e[..k].to_vec();
            pick.push(last);
            members.push(SubsetIndex::new(pick)?);
        }
    }
    members.sort();
    SubsetFamily::new(d.n, k, members)
}

/// `ψ(F)`: the `(k+1)`-subsets lying inside some member of `F`.
pub fn psi(f: &SubsetFamily) -> Result<SubsetFamily> {
    if !in_p(f, f.n, f.k) {
        return Err(Error::Argument(format!("{f} is not in P({},{})", f.n, f.k)));
    }
    let masks = f.masks();
    let inside: Vec<u64> = k_subsets(f.n, f.k + 1)
        .iter()
        .map(SubsetIndex::mask)
        .filter(|e| masks.iter().any(|s| e & !s == 0))
        .collect();
    Ok(SubsetFamily::from_masks(f.n, f.k, inside))
}

/// A flat of `Disc(A)`: a subspace spanned by rows, the rows it contains, and
/// its reduced row echelon key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanFlat {
    pub dim: usize,
    pub rows: SubsetFamily,
    #[serde(skip)]
    pub key: Vec<Vec<Rational>>,
}

fn span_key(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    RatMatrix::from_rows(rows.to_vec())
        .expect("rectangular")
        .row_space_key()
}

/// `L(n,m)`: subspaces spanned by subsets of `Disc(A)` rows, ordered by
/// inclusion, canonicalized by reduced row echelon form.
pub fn flats_lattice(a: &RatMatrix) -> Result<Poset<SpanFlat>> {
    let disc = build_disc(a)?;
    let (n, m) = (a.rows(), a.cols());
    let rows = disc.normals().row_vecs();
    let contained = |key: &[Vec<Rational>], span_rank: usize| -> u64 {
        let mut basis = EchelonBasis::new(n);
        for r in key {
            basis.insert(r);
        }
        debug_assert_eq!(basis.rank(), span_rank);
        rows.iter()
            .enumerate()
            .filter(|(_, r)| basis.contains(r))
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    };
    let mut by_key: BTreeMap<Vec<Vec<Rational>>, (usize, u64)> = BTreeMap::new();
    by_key.insert(Vec::new(), (0, 0));
    let mut frontier: Vec<(Vec<Vec<Rational>>, u64)> = vec![(Vec::new(), 0)];
    let mut dim = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (key, members) in &frontier {
            for (i, r) in rows.iter().enumerate() {
                if members >> i & 1 == 1 {
                    continue;
                }
                let mut gens = key.clone();
                gens.push(r.clone());
                let new_key = span_key(&gens);
                if by_key.contains_key(&new_key) {
                    continue;
                }
                let inside = contained(&new_key, dim + 1);
                by_key.insert(new_key.clone(), (dim + 1, inside));
                next.push((new_key, inside));
            }
        }
        frontier = next;
        dim += 1;
    }
    let subsets = disc.subsets();
    let mut flats: Vec<(usize, u64, SpanFlat)> = by_key
        .into_iter()
        .map(|(key, (dim, inside))| {
            let members = (0..rows.len())
                .filter(|i| inside >> i & 1 == 1)
                .map(|i| subsets[i].clone())
                .collect();
            let rows = SubsetFamily { n, k: m, members };
            (dim, inside, SpanFlat { dim, rows, key })
        })
        .collect();
    flats.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.2.rows.members.cmp(&b.2.rows.members))
    });
    let ranks = flats.iter().map(|f| f.0).collect();
    let masks: Vec<u64> = flats.iter().map(|f| f.1).collect();
    let elements: Vec<SpanFlat> = flats.into_iter().map(|f| f.2).collect();
    let poset = Poset::build((0..masks.len()).collect(), ranks, |&x: &usize, &y: &usize| {
        masks[x] & !masks[y] == 0
    });
    Ok(Poset {
        elements,
        ranks: poset.ranks,
        order: poset.order,
        mobius: poset.mobius,
        bottom_mobius: poset.bottom_mobius,
    })
}

/// `φ(F) = V_F`: the span of the `Disc(A)` rows of all `(k+1)`-sets inside
/// members of `F`, as a reduced row echelon key.
pub fn phi_key(a: &RatMatrix, f: &SubsetFamily) -> Result<Vec<Vec<Rational>>> {
    let disc = build_disc(a)?;
    let inside = if f.is_empty() {
        SubsetFamily {
            n: f.n,
            k: f.k,
            members: vec![],
        }
    } else {
        psi(f)?
    };
    let rows: Vec<Vec<Rational>> = inside
        .members
        .iter()
        .map(|s| disc.normal(disc.position(s).expect("row exists")).to_vec())
        .collect();
    Ok(span_key(&rows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub very_generic: bool,
    pub p_size: usize,
    pub l_size: usize,
    pub bijective: bool,
    pub order_preserving: bool,
    pub dims_match: bool,
}

impl IsoReport {
    pub fn isomorphic(&self) -> bool {
        self.bijective && self.order_preserving && self.dims_match
    }
}

/// Compares `P(n,m)` with the flats of `Disc(A)` through `φ`.
pub fn iso_check(a: &RatMatrix) -> Result<IsoReport> {
    let (n, m) = (a.rows(), a.cols());
    let very_generic = is_very_generic(a)?.verdict;
    let p = enumerate_p(n, m)?;
    let l = flats_lattice(a)?;
    let position: BTreeMap<&Vec<Vec<Rational>>, usize> =
        l.elements.iter().enumerate().map(|(i, f)| (&f.key, i)).collect();
    let mut image = Vec::with_capacity(p.len());
    let mut dims_match = true;
    for (f, &rank) in p.elements.iter().zip(&p.ranks) {
        let key = phi_key(a, f)?;
        dims_match &= key.len() == rank;
        image.push(position.get(&key).copied());
    }
    let mut hit: Vec<usize> = image.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    let bijective = image.iter().all(Option::is_some) && hit.len() == p.len() && p.len() == l.len();
    let order_preserving = bijective
        && (0..p.len()).all(|i| {
            (0..p.len()).all(|j| {
                let (x, y) = (image[i].expect("mapped"), image[j].expect("mapped"));
                p.leq(i, j) == l.leq(x, y)
            })
        });
    Ok(IsoReport {
        very_generic,
        p_size: p.len(),
        l_size: l.len(),
        bijective,
        order_preserving,
        dims_match,
    })
}
