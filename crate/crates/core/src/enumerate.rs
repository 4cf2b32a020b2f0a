//! Exhaustive generation of unlabeled lattices.
//!
//! Removing an atom from a lattice with at least three elements leaves a
//! lattice, so every lattice on `k` elements is some lattice on `k - 1`
//! elements with one atom added. A new atom `a` is described by the set `U`
//! of old elements lying above it; the result is a lattice exactly when `U`
//! is a nonempty up-set avoiding the bottom and, for `b, c ∈ U`, the meet
//! `b ∧ c` is in `U` or is the bottom. Each level is generated from the
//! previous one and isomorphic copies are merged by canonical form, so the
//! output is sorted by canonical code.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    frankl_brute_force, frankl_certify, has_left_modular_maximal_chain, has_sufficient_condition, is_comodernistic,
    is_dually_semimodular, CertificationPath,
};
use crate::error::{Error, Result};
use crate::lattice::{ElementId, FiniteLattice};

/// Largest lattice size the enumerator accepts.
pub const ENUMERATION_CAP: usize = 10;

/// Canonical code of a lattice: the order relation, read row by row above the
/// diagonal, under the lexicographically least labeling found by
/// individualization and refinement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: usize,
    bits: Vec<u64>,
}

fn initial_colors(lattice: &FiniteLattice) -> Vec<u32> {
    let n = lattice.len();
    let mut height = vec![0usize; n];
    for b in 0..n {
        height[b] = lattice.lower_covers(ElementId(b)).iter().map(|a| height[a.0] + 1).max().unwrap_or(0);
    }
    let mut depth = vec![0usize; n];
    for a in (0..n).rev() {
        depth[a] = lattice.upper_covers(ElementId(a)).iter().map(|b| depth[b.0] + 1).max().unwrap_or(0);
    }
    let keys: Vec<_> = (0..n)
        .map(|e| {
            let id = ElementId(e);
            (height[e], depth[e], lattice.down_set(id).count_ones(..), lattice.up_size(id))
        })
        .collect();
    rank(&keys)
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter().map(|k| distinct.binary_search(k).expect("present") as u32).collect()
}

fn cell_count(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Splits cells by the colors of upper and lower covers until stable.
fn refine(lattice: &FiniteLattice, mut colors: Vec<u32>) -> Vec<u32> {
    colors = rank(&colors);
    loop {
        let keys: Vec<_> = (0..lattice.len())
            .map(|e| {
                let id = ElementId(e);
                let mut ups: Vec<u32> = lattice.upper_covers(id).iter().map(|c| colors[c.0]).collect();
                let mut downs: Vec<u32> = lattice.lower_covers(id).iter().map(|c| colors[c.0]).collect();
                ups.sort_unstable();
                downs.sort_unstable();
                (colors[e], ups, downs)
            })
            .collect();
        let next = rank(&keys);
        if cell_count(&next) == cell_count(&colors) {
            return next;
        }
        colors = next;
    }
}

fn leaf_code(lattice: &FiniteLattice, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut bits = vec![0u64; (n * n).div_ceil(64)];
    let mut pos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if lattice.leq(ElementId(order[i]), ElementId(order[j])) {
                bits[pos / 64] |= 1 << (pos % 64);
            }
            pos += 1;
        }
    }
    bits
}

fn search(lattice: &FiniteLattice, colors: Vec<u32>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let n = lattice.len();
    if cell_count(&colors) == n {
        let mut order = vec![0usize; n];
        for (e, &c) in colors.iter().enumerate() {
            order[c as usize] = e;
        }
        let code = leaf_code(lattice, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    }
    let mut sizes = vec![0usize; cell_count(&colors)];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let target = sizes.iter().position(|&s| s > 1).expect("not discrete") as u32;
    for v in (0..n).filter(|&e| colors[e] == target) {
        let split: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(e, &c)| {
                if e == v {
                    2 * c
                } else if c == target {
                    2 * c + 1
                } else {
                    2 * c
                }
            })
            .collect();
        search(lattice, refine(lattice, split), best);
    }
}

/// Canonical labeling of `lattice` (a linear extension) and its code.
pub fn canonical_form(lattice: &FiniteLattice) -> (Vec<ElementId>, CanonicalCode) {
    let colors = refine(lattice, initial_colors(lattice));
    let mut best = None;
    search(lattice, colors, &mut best);
    let (bits, order) = best.expect("at least one leaf");
    (order.into_iter().map(ElementId).collect(), CanonicalCode { n: lattice.len(), bits })
}

pub fn canonical_code(lattice: &FiniteLattice) -> CanonicalCode {
    canonical_form(lattice).1
}

pub fn canonicalize(lattice: &FiniteLattice) -> FiniteLattice {
    let (order, _) = canonical_form(lattice);
    lattice.relabeled(&order).expect("canonical order is a linear extension")
}

pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.len() == b.len() && canonical_code(a) == canonical_code(b)
}

/// Up-sets `U` that describe a valid new atom of `parent`.
fn atom_extensions(parent: &FiniteLattice) -> Vec<FixedBitSet> {
    let n = parent.len();
    let mut out = Vec::new();
    let mut current = FixedBitSet::with_capacity(n);
    // Decide elements from the top down so each choice sees its upper covers.
    fn walk(parent: &FiniteLattice, e: usize, current: &mut FixedBitSet, out: &mut Vec<FixedBitSet>) {
        if e == 0 {
            if !current.is_clear() && meet_closed(parent, current) {
                out.push(current.clone());
            }
            return;
        }
        walk(parent, e - 1, current, out);
        if parent.upper_covers(ElementId(e)).iter().all(|c| current.contains(c.0)) {
            current.insert(e);
            walk(parent, e - 1, current, out);
            current.set(e, false);
        }
    }
    walk(parent, n - 1, &mut current, &mut out);
    out
}

fn meet_closed(parent: &FiniteLattice, set: &FixedBitSet) -> bool {
    let members: Vec<usize> = set.ones().collect();
    members.iter().enumerate().all(|(i, &b)| {
        members[i + 1..].iter().all(|&c| {
            let m = parent.meet(ElementId(b), ElementId(c));
            m == parent.bottom() || set.contains(m.0)
        })
    })
}

/// The parent with a new atom at index 1 sitting below exactly `above`.
fn add_atom(parent: &FiniteLattice, above: &FixedBitSet) -> Result<FiniteLattice> {
    let n = parent.len() + 1;
    let shift = |e: usize| if e == 0 { 0 } else { e + 1 };
    let mut down = Vec::with_capacity(n);
    let mut bottom_row = FixedBitSet::with_capacity(n);
    bottom_row.insert(0);
    down.push(bottom_row);
    let mut atom_row = FixedBitSet::with_capacity(n);
    atom_row.insert(0);
    atom_row.insert(1);
    down.push(atom_row);
    for e in 1..parent.len() {
        let mut row = FixedBitSet::with_capacity(n);
        for a in parent.down_set(ElementId(e)).ones() {
            row.insert(shift(a));
        }
        if above.contains(e) {
            row.insert(1);
        }
        down.push(row);
    }
    FiniteLattice::from_down_sets(down)
}

fn next_level(parents: &[FiniteLattice]) -> Result<Vec<FiniteLattice>> {
    let children: Vec<Result<Vec<(CanonicalCode, FiniteLattice)>>> = parents
        .par_iter()
        .map(|parent| {
            atom_extensions(parent)
                .iter()
                .map(|above| {
                    let child = add_atom(parent, above)
                        .map_err(|e| Error::InternalCheckFailed(format!("atom extension failed: {e}")))?;
                    let (order, code) = canonical_form(&child);
                    let canonical = child.relabeled(&order)?;
                    Ok((code, canonical))
                })
                .collect()
        })
        .collect();
    let mut level = BTreeMap::new();
    for batch in children {
        for (code, lattice) in batch? {
            level.entry(code).or_insert(lattice);
        }
    }
    Ok(level.into_values().collect())
}

/// Every lattice on `n` elements up to isomorphism, canonically labeled,
/// sorted by canonical code.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { n, cap: ENUMERATION_CAP });
    }
    if n == 0 {
        return Err(Error::EmptyLattice);
    }
    let chain = |k: usize| {
        let pairs: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        FiniteLattice::build_from_covers(k, &pairs)
    };
    if n <= 2 {
        return Ok(vec![chain(n)?]);
    }
    let mut level = vec![chain(2)?];
    for _ in 3..=n {
        level = next_level(&level)?;
    }
    Ok(level)
}

/// All lattices of sizes `1..=n_max`, smallest first.
pub fn enumerate_up_to(n_max: usize) -> Result<Vec<FiniteLattice>> {
    if n_max > ENUMERATION_CAP {
        return Err(Error::CapExceeded { n: n_max, cap: ENUMERATION_CAP });
    }
    let mut all = Vec::new();
    let mut level: Vec<FiniteLattice> = Vec::new();
    for k in 1..=n_max {
        level = if k <= 2 { enumerate_lattices(k)? } else { next_level(&level)? };
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

/// Iterator over the lattices of one size.
pub struct EnumerationCursor {
    target_size: usize,
    lattices: std::vec::IntoIter<FiniteLattice>,
    count_emitted: usize,
}

impl EnumerationCursor {
    pub fn new(target_size: usize) -> Result<Self> {
        let lattices = enumerate_lattices(target_size)?.into_iter();
        Ok(Self { target_size, lattices, count_emitted: 0 })
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn count_emitted(&self) -> usize {
        self.count_emitted
    }
}

impl Iterator for EnumerationCursor {
    type Item = FiniteLattice;

    fn next(&mut self) -> Option<FiniteLattice> {
        let next = self.lattices.next();
        if next.is_some() {
            self.count_emitted += 1;
        }
        next
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub lattices: usize,
    pub counterexamples: usize,
    /// Brute-force failures on lattices where a sufficient condition applies.
    pub critical: usize,
    pub by_path: BTreeMap<CertificationPath, usize>,
    pub comodernistic: usize,
    pub dually_semimodular: usize,
    pub left_modular_chain: usize,
}

impl SizeSummary {
    fn of(lattice: &FiniteLattice) -> Result<Self> {
        let brute = frankl_brute_force(lattice)?;
        let certified = frankl_certify(lattice)?;
        let mut by_path = BTreeMap::new();
        by_path.insert(certified.certification_path, 1);
        let counterexample = !brute.satisfied;
        Ok(SizeSummary {
            lattices: 1,
            counterexamples: counterexample as usize,
            critical: (counterexample && has_sufficient_condition(lattice)) as usize,
            by_path,
            comodernistic: is_comodernistic(lattice) as usize,
            dually_semimodular: is_dually_semimodular(lattice) as usize,
            left_modular_chain: has_left_modular_maximal_chain(lattice).is_some() as usize,
        })
    }

    pub fn merge(mut self, other: &SizeSummary) -> SizeSummary {
        self.lattices += other.lattices;
        self.counterexamples += other.counterexamples;
        self.critical += other.critical;
        for (path, count) in &other.by_path {
            *self.by_path.entry(*path).or_default() += count;
        }
        self.comodernistic += other.comodernistic;
        self.dually_semimodular += other.dually_semimodular;
        self.left_modular_chain += other.left_modular_chain;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub per_size: BTreeMap<usize, SizeSummary>,
}

impl ScanSummary {
    pub fn total(&self) -> SizeSummary {
        self.per_size.values().fold(SizeSummary::default(), |acc, s| acc.merge(s))
    }
}

/// Frankl verdicts and structural counts for every lattice of size
/// `2..=n_max` (the one-element lattice is out of scope).
pub fn scan_frankl(n_max: usize) -> Result<ScanSummary> {
    let lattices = enumerate_up_to(n_max)?;
    scan_lattices(&lattices)
}

pub fn scan_lattices(lattices: &[FiniteLattice]) -> Result<ScanSummary> {
    let rows: Vec<Result<(usize, SizeSummary)>> =
        lattices.par_iter().filter(|l| l.len() >= 2).map(|l| Ok((l.len(), SizeSummary::of(l)?))).collect();
    let mut summary = ScanSummary::default();
    for row in rows {
        let (size, s) = row?;
        let slot = summary.per_size.remove(&size).unwrap_or_default();
        summary.per_size.insert(size, slot.merge(&s));
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn five_element_lattices_include_diamond_and_pentagon() {
        let five = enumerate_lattices(5).unwrap();
        assert!(five.iter().any(|l| are_isomorphic(l, &m3())));
        assert!(five.iter().any(|l| are_isomorphic(l, &n5())));
        assert!(five.iter().any(|l| are_isomorphic(l, &chain(5))));
    }

    #[test]
    fn canonical_form_ignores_labeling() {
        // N5 with the incomparable element listed first
        let relabeled = FiniteLattice::build_from_covers(5, &[(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)]).unwrap();
        assert_eq!(canonical_code(&relabeled), canonical_code(&n5()));
        assert_ne!(canonical_code(&m3()), canonical_code(&n5()));
        assert_eq!(canonicalize(&relabeled), canonicalize(&n5()));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_lattices(ENUMERATION_CAP + 1).unwrap_err(),
            Error::CapExceeded { n: ENUMERATION_CAP + 1, cap: ENUMERATION_CAP }
        );
    }

    #[test]
    fn cursor_counts_emissions() {
        let mut cursor = EnumerationCursor::new(5).unwrap();
        assert_eq!(cursor.target_size(), 5);
        assert_eq!(cursor.by_ref().count(), 5);
        assert_eq!(cursor.count_emitted(), 5);
    }

    #[test]
    fn scan_small() {
        let s = scan_frankl(2).unwrap();
        assert_eq!(s.total().lattices, 1);
        assert_eq!(s.total().counterexamples, 0);
        let s = scan_frankl(5).unwrap();
        assert_eq!(s.per_size[&5].lattices, 5);
        assert_eq!(s.total().lattices, 1 + 1 + 2 + 5);
    }
}
