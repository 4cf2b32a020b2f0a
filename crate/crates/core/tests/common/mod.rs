//! Brute-force oracles that share no code with the library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use frankl_core::FiniteLattice;

/// Calls `f` on every permutation of `0..k` (Heap's algorithm).
pub fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0; k];
    f(&perm);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Strict order on `k` middle points as an adjacency matrix.
pub type Relation = Vec<Vec<bool>>;

/// Smallest bit-string of the strict relation over all relabelings.
pub fn relation_code(rel: &Relation) -> Vec<bool> {
    let k = rel.len();
    let mut best: Option<Vec<bool>> = None;
    for_each_permutation(k, |p| {
        let code: Vec<bool> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| rel[p[i]][p[j]]).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

/// Whether `rel` on middle points, with a new bottom and top, is a lattice:
/// every pair of middle points has a least common upper bound among the
/// middle points or else only the top above both.
fn bounded_is_lattice(rel: &Relation) -> bool {
    let k = rel.len();
    let le = |a: usize, b: usize| a == b || rel[a][b];
    for a in 0..k {
        for b in a + 1..k {
            let uppers: Vec<usize> = (0..k).filter(|&u| le(a, u) && le(b, u)).collect();
            if uppers.is_empty() {
                continue;
            }
            if !uppers.iter().any(|&u| uppers.iter().all(|&v| le(u, v))) {
                return false;
            }
        }
    }
    true
}

/// Unlabeled lattices with `n` elements, as canonical relation codes on the
/// `n - 2` middle points. Generated from every strict order whose pairs
/// respect the natural labeling `i < j`, keeping those that become lattices
/// once a bottom and top are added.
pub fn lattice_codes_by_posets(n: usize) -> BTreeSet<Vec<bool>> {
    let mut out = BTreeSet::new();
    if n <= 2 {
        out.insert(Vec::new());
        return out;
    }
    let k = n - 2;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![vec![false; k]; k];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel[i][j] = true;
            }
        }
        let transitive = (0..k).all(|a| (0..k).all(|b| !rel[a][b] || (0..k).all(|c| !rel[b][c] || rel[a][c])));
        if transitive && bounded_is_lattice(&rel) {
            out.insert(relation_code(&rel));
        }
    }
    out
}

pub fn lattice_count_by_posets(n: usize) -> usize {
    if n == 0 {
        0
    } else if n == 1 {
        1
    } else {
        lattice_codes_by_posets(n).len()
    }
}

/// Relation code of a library lattice with at least two elements.
pub fn code_of(lattice: &FiniteLattice) -> Vec<bool> {
    let ids: Vec<_> = lattice.elements().collect();
    let middle = &ids[1..ids.len() - 1];
    let rel: Relation = middle.iter().map(|&a| middle.iter().map(|&b| a != b && lattice.leq(a, b)).collect()).collect();
    relation_code(&rel)
}

/// Subgroups of a Cayley table as sorted element lists: every subset that
/// contains the identity and is closed under the product.
pub fn subgroups_by_subsets(table: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let n = table.len();
    let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g)).expect("identity");
    let others: Vec<usize> = (0..n).filter(|&g| g != identity).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut set: Vec<usize> = vec![identity];
        set.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &g)| g));
        let mut member = vec![false; n];
        for &g in &set {
            member[g] = true;
        }
        if set.iter().all(|&a| set.iter().all(|&b| member[table[a][b]])) {
            set.sort_unstable();
            out.insert(set);
        }
    }
    out
}
