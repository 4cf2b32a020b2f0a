//! Finite groups as full multiplication tables.
//!
//! Element 0 is always the identity. Subgroups are bitsets over element
//! indices.

mod catalogue;
mod perm;

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use catalogue::{catalogue_up_to, GroupSpec};
pub use perm::{closure as permutation_closure, Permutation};

/// Default cap on the order of a materialized group.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// Tables up to this order get a full associativity check; larger ones are
/// spot-checked on random triples.
const FULL_ASSOCIATIVITY_LIMIT: usize = 200;
const ASSOCIATIVITY_SAMPLES: usize = 100_000;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table: identity in row and column 0, every row and
    /// column a permutation, and associativity.
    pub fn from_table(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::NotAGroup(format!("entry {v} in row {i} is out of range")));
                }
                table.push(v as u32);
            }
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::NotAGroup("row and column 0 must be the identity".into()));
            }
        }
        for i in 0..n {
            let mut row_seen = FixedBitSet::with_capacity(n);
            let mut col_seen = FixedBitSet::with_capacity(n);
            for j in 0..n {
                row_seen.insert(table[i * n + j] as usize);
                col_seen.insert(table[j * n + i] as usize);
            }
            if row_seen.count_ones(..) != n || col_seen.count_ones(..) != n {
                return Err(Error::NotAGroup(format!("row or column {i} repeats an element")));
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(Error::NotAGroup("label count differs from order".into())),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let group = Self::from_trusted_table(n, table, labels);
        group.check_associative()?;
        Ok(group)
    }

    /// Builds from a table already known to be a group table with identity 0.
    pub(crate) fn from_trusted_table(n: usize, mul: Vec<u32>, labels: Vec<String>) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; n];
        for (a, slot) in orders.iter_mut().enumerate() {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        FiniteGroup { n, mul, inv, orders, labels }
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")))
            } else {
                Ok(())
            }
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Rows of the multiplication table.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn has_prime_power_order(&self, a: usize) -> bool {
        prime_power(self.element_order(a)).is_some()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.n);
        members.insert(0);
        Subgroup { members }
    }

    pub fn whole(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.n);
        members.insert_range(..);
        Subgroup { members }
    }

    /// Closure of `seed ∪ {identity}` under multiplication (inverses come for
    /// free in a finite group).
    pub fn generated_subgroup(&self, seed: &[usize]) -> Subgroup {
        self.extend_subgroup(&self.trivial_subgroup(), seed)
    }

    /// `⟨base, extra⟩` for a subgroup `base`.
    fn extend_subgroup(&self, base: &Subgroup, extra: &[usize]) -> Subgroup {
        self.extend_with_generators(base, &self.subgroup_generators(base), extra)
    }

    /// Like `extend_subgroup` with a known generating set of `base`.
    fn extend_with_generators(&self, base: &Subgroup, base_gens: &[usize], extra: &[usize]) -> Subgroup {
        let new: Vec<usize> = extra.iter().copied().filter(|&g| !base.contains(g)).collect();
        if new.is_empty() {
            return base.clone();
        }
        let mut gens = base_gens.to_vec();
        gens.extend(new);
        self.close_under(base, &gens)
    }

    /// A small generating set, chosen greedily by element index.
    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for g in h.members.ones() {
            if !current.contains(g) {
                gens.push(g);
                current = self.close_under(&current, &gens);
            }
        }
        gens
    }

    /// Closure of `current` under right multiplication by `gens`.
    fn close_under(&self, current: &Subgroup, gens: &[usize]) -> Subgroup {
        let mut members = current.members.clone();
        let mut queue: Vec<usize> = members.ones().collect();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    queue.push(y);
                }
            }
            i += 1;
        }
        Subgroup { members }
    }

    pub fn cyclic_subgroup(&self, g: usize) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.n);
        let mut x = 0;
        loop {
            members.insert(x);
            x = self.mul(x, g);
            if x == 0 {
                break;
            }
        }
        Subgroup { members }
    }

    /// The subgroup generated by `a ∪ b`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.order() < b.order() {
            return self.join(b, a);
        }
        self.extend_subgroup(a, &self.subgroup_generators(b))
    }

    /// Every subgroup once, sorted by order and then bitset value.
    ///
    /// Starts from the cyclic subgroups and closes under joining with a cyclic
    /// subgroup; every subgroup is a join of cyclic ones.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: Vec<(Subgroup, usize)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in self.elements() {
            let c = self.cyclic_subgroup(g);
            if seen.insert(c.clone()) {
                cyclic.push((c, g));
            }
        }
        let mut all: Vec<Subgroup> = cyclic.iter().map(|(c, _)| c.clone()).collect();
        let mut i = 0;
        while i < all.len() {
            let h = all[i].clone();
            let h_gens = self.subgroup_generators(&h);
            let joins: Vec<Subgroup> = cyclic
                .par_iter()
                .filter(|(c, _)| !c.is_subgroup_of(&h))
                .map(|&(_, g)| self.extend_with_generators(&h, &h_gens, &[g]))
                .collect();
            for j in joins {
                if seen.insert(j.clone()) {
                    all.push(j);
                }
            }
            i += 1;
        }
        all.sort();
        all
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|g| {
            let g_inv = self.inv(g);
            h.members.ones().all(|x| h.contains(self.mul(self.mul(g, x), g_inv)))
        })
    }

    pub fn normal_subgroups(&self, subgroups: &[Subgroup]) -> Vec<Subgroup> {
        subgroups.iter().filter(|h| self.is_normal(h)).cloned().collect()
    }

    /// `G/N` together with the projection onto cosets.
    pub fn quotient_map(&self, normal: &Subgroup) -> Result<Quotient> {
        if !normal.contains(0) || !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.n];
        let mut representatives = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let index = representatives.len();
            representatives.push(g);
            for x in normal.members.ones() {
                coset_of[self.mul(g, x)] = index;
            }
        }
        let rows: Vec<Vec<usize>> = representatives
            .iter()
            .map(|&a| representatives.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let labels = representatives.iter().map(|&r| format!("{}N", self.label(r))).collect();
        let group = FiniteGroup::from_table(&rows, Some(labels))?;
        Ok(Quotient { group, coset_of, representatives })
    }

    pub fn quotient(&self, normal: &Subgroup) -> Result<FiniteGroup> {
        Ok(self.quotient_map(normal)?.group)
    }

    fn prime_power_elements(&self) -> Vec<usize> {
        self.elements().filter(|&g| self.has_prime_power_order(g)).collect()
    }

    fn generates(&self, a: usize, b: usize) -> bool {
        self.generated_subgroup(&[a, b]).order() == self.n
    }

    /// Generators of prime-power order, at most two of them. A single
    /// generator `g` is reported as `(g, g)`, and the trivial group as
    /// `(identity, identity)`. Single generators are tried first, then pairs
    /// in index order.
    pub fn two_prime_power_generated(&self) -> Option<(usize, usize)> {
        if self.n == 1 {
            return Some((0, 0));
        }
        let candidates = self.prime_power_elements();
        if let Some(&g) = candidates.iter().find(|&&g| self.element_order(g) == self.n) {
            return Some((g, g));
        }
        first_generating_pair(self, &candidates, &candidates, true)
    }

    /// `(a, b)` with `a` of order `p`, `b` of order `q` and `⟨a, b⟩ = G`.
    pub fn pq_generated(&self, p: usize, q: usize) -> Option<(usize, usize)> {
        let of_order = |k: usize| -> Vec<usize> { self.elements().filter(|&g| self.element_order(g) == k).collect() };
        first_generating_pair(self, &of_order(p), &of_order(q), false)
    }

    /// Subgroup generated by commutators `[a, b] = a⁻¹b⁻¹ab` of elements of `h`.
    pub fn commutator_subgroup(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<usize> = h.members.ones().collect();
        let mut commutators = FixedBitSet::with_capacity(self.n);
        for &a in &members {
            for &b in &members {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                commutators.insert(c);
            }
        }
        let seed: Vec<usize> = commutators.ones().collect();
        self.generated_subgroup(&seed)
    }

    /// `G ⊵ G' ⊵ G'' ⊵ ...` until the series stabilizes.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(|h| h.order() == 1)
    }

    /// The element set `{ab : a ∈ A, b ∈ B}`.
    pub fn set_product(&self, a: &Subgroup, b: &Subgroup) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        let bs: Vec<usize> = b.members.ones().collect();
        for x in a.members.ones() {
            for &y in &bs {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// A subgroup `K` among `subgroups` with `H ∩ K = 1` and `HK = G`.
    pub fn complement_of<'a>(&self, h: &Subgroup, subgroups: &'a [Subgroup]) -> Option<&'a Subgroup> {
        subgroups.iter().find(|k| {
            h.order() * k.order() == self.n
                && h.intersection(k).order() == 1
                && self.set_product(h, k).count_ones(..) == self.n
        })
    }

    /// Every subgroup has a complement.
    pub fn is_complemented_group(&self) -> bool {
        let subgroups = self.all_subgroups();
        subgroups.iter().all(|h| self.complement_of(h, &subgroups).is_some())
    }

    /// Smallest-index preimage of `coset` having prime-power order.
    pub fn lift_prime_power(&self, quotient: &Quotient, coset: usize) -> Option<usize> {
        self.elements().find(|&g| quotient.coset_of[g] == coset && self.has_prime_power_order(g))
    }
}

/// Lowest `(i, j)` with `⟨left[i], right[j]⟩ = G`. With `ordered`, only
/// `j > i` positions are scanned (both lists are the same).
fn first_generating_pair(
    group: &FiniteGroup,
    left: &[usize],
    right: &[usize],
    ordered: bool,
) -> Option<(usize, usize)> {
    (0..left.len()).into_par_iter().find_map_first(|i| {
        let start = if ordered { i + 1 } else { 0 };
        right[start.min(right.len())..].iter().find(|&&b| group.generates(left[i], b)).map(|&b| (left[i], b))
    })
}

/// `Some((p, e))` when `k = p^e` with `e >= 1`.
pub fn prime_power(k: usize) -> Option<(usize, u32)> {
    if k < 2 {
        return None;
    }
    let p = (2..=k).find(|&d| k.is_multiple_of(d)).expect("k >= 2 has a divisor");
    let mut rest = k;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn is_prime(k: usize) -> bool {
    matches!(prime_power(k), Some((_, 1)))
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset index of each element of the ambient group.
    pub coset_of: Vec<usize>,
    /// Smallest element of each coset.
    pub representatives: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
}

impl Subgroup {
    /// Wraps an element set; the caller guarantees it is a subgroup.
    pub fn from_members(members: FixedBitSet) -> Self {
        Subgroup { members }
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn order(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Subgroup { members }
    }

    /// Whether the element set is closed under the group law and contains the identity.
    pub fn is_closed_in(&self, group: &FiniteGroup) -> bool {
        self.contains(0) && self.members.ones().all(|a| self.members.ones().all(|b| self.contains(group.mul(a, b))))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.ones())
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.members.ones().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Parses a group file in `cayley` or `perm` format. Orders above `cap` are
/// rejected.
pub fn parse_group_file(text: &str, cap: usize) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty group file".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header =
        || Error::Parse { line: header_line, message: "expected `group cayley <n>` or `group perm <degree>`".into() };
    if fields.len() != 3 || fields[0] != "group" {
        return Err(bad_header());
    }
    let size: usize = fields[2].parse().map_err(|_| bad_header())?;
    match fields[1] {
        "cayley" => {
            if size > cap {
                return Err(Error::OrderTooLarge { order: size, cap });
            }
            let mut rows = Vec::with_capacity(size);
            for (line, l) in lines {
                let row = l
                    .split_whitespace()
                    .map(|s| s.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse { line, message: "table entries must be integers".into() })?;
                if row.len() != size {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected {size} entries, found {}", row.len()),
                    });
                }
                if rows.len() == size {
                    return Err(Error::Parse { line, message: "more rows than the declared order".into() });
                }
                rows.push(row);
            }
            if rows.len() != size {
                return Err(Error::Parse {
                    line: header_line,
                    message: format!("expected {size} rows, found {}", rows.len()),
                });
            }
            FiniteGroup::from_table(&rows, None)
        }
        "perm" => {
            let mut gens = Vec::new();
            for (line, l) in lines {
                let p = Permutation::parse_cycles(l, size).map_err(|message| Error::Parse { line, message })?;
                gens.push(p);
            }
            permutation_closure(size, &gens, cap)
        }
        _ => Err(bad_header()),
    }
}

/// Serializes a group in `cayley` format.
pub fn to_cayley_text(group: &FiniteGroup) -> String {
    let mut out = format!("group cayley {}\n", group.order());
    for row in group.table_rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str) -> FiniteGroup {
        GroupSpec::parse(spec).unwrap().build(DEFAULT_ORDER_CAP).unwrap()
    }

    fn order_histogram(g: &FiniteGroup) -> std::collections::BTreeMap<usize, usize> {
        let mut h = std::collections::BTreeMap::new();
        for a in g.elements() {
            *h.entry(g.element_order(a)).or_default() += 1;
        }
        h
    }

    #[test]
    fn element_orders() {
        assert_eq!(group("cyclic:1").order(), 1);
        let s3 = group("sym:3");
        assert_eq!(order_histogram(&s3), [(1, 1), (2, 3), (3, 2)].into());
        let q8 = group("dicyclic:2");
        assert_eq!(order_histogram(&q8), [(1, 1), (2, 1), (4, 6)].into());
    }

    #[test]
    fn generated_subgroups() {
        let s3 = group("sym:3");
        assert_eq!(s3.generated_subgroup(&[]).order(), 1);
        let transpositions: Vec<usize> = s3.elements().filter(|&g| s3.element_order(g) == 2).collect();
        assert_eq!(s3.generated_subgroup(&transpositions[..1]).order(), 2);
        assert_eq!(s3.generated_subgroup(&transpositions[..2]).order(), 6);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(group("cyclic:7").all_subgroups().len(), 2);
        assert_eq!(group("sym:3").all_subgroups().len(), 6);
        assert_eq!(group("dicyclic:2").all_subgroups().len(), 6);
        assert_eq!(group("sym:4").all_subgroups().len(), 30);
    }

    #[test]
    fn subgroups_are_sorted_and_closed() {
        let g = group("alt:4");
        let subs = g.all_subgroups();
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        for h in &subs {
            assert!(h.is_closed_in(&g));
            assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn normality() {
        let s3 = group("sym:3");
        let subs = s3.all_subgroups();
        for h in &subs {
            let expected = h.order() != 2;
            assert_eq!(s3.is_normal(h), expected, "{h}");
        }
        let q8 = group("dicyclic:2");
        assert!(q8.all_subgroups().iter().all(|h| q8.is_normal(h)));
    }

    #[test]
    fn quotients() {
        let s3 = group("sym:3");
        assert_eq!(s3.quotient(&s3.whole()).unwrap().order(), 1);
        let a3 = s3.all_subgroups().into_iter().find(|h| h.order() == 3).unwrap();
        let c2 = s3.quotient(&a3).unwrap();
        assert_eq!(c2.order(), 2);
        let not_normal = s3.all_subgroups().into_iter().find(|h| h.order() == 2).unwrap();
        assert!(matches!(s3.quotient(&not_normal), Err(Error::NotNormal)));

        let q8 = group("dicyclic:2");
        let center = q8.all_subgroups().into_iter().find(|h| h.order() == 2).unwrap();
        let v4 = q8.quotient(&center).unwrap();
        assert_eq!(order_histogram(&v4), [(1, 1), (2, 3)].into());
    }

    #[test]
    fn prime_power_generation() {
        let c6 = group("cyclic:6");
        let (a, b) = c6.two_prime_power_generated().unwrap();
        assert_eq!((a, b), (2, 3));
        assert_eq!([c6.element_order(a), c6.element_order(b)], [3, 2]);
        let s3 = group("sym:3");
        let (a, b) = s3.two_prime_power_generated().unwrap();
        // two transpositions already generate S3
        assert_eq!([s3.element_order(a), s3.element_order(b)], [2, 2]);
        assert_eq!(s3.generated_subgroup(&[a, b]).order(), 6);
        assert_eq!(group("elem:2^3").two_prime_power_generated(), None);
        let c4 = group("cyclic:4");
        let (a, b) = c4.two_prime_power_generated().unwrap();
        assert_eq!(a, b);
        assert_eq!(group("cyclic:1").two_prime_power_generated(), Some((0, 0)));
    }

    #[test]
    fn pq_generation() {
        let a5 = group("alt:5");
        let (a, b) = a5.pq_generated(2, 5).unwrap();
        assert_eq!((a5.element_order(a), a5.element_order(b)), (2, 5));
        assert_eq!(a5.generated_subgroup(&[a, b]).order(), 60);
        assert!(group("alt:4").pq_generated(2, 3).is_some());
        assert_eq!(group("cyclic:4").pq_generated(2, 2), None);
    }

    #[test]
    fn solvability() {
        assert!(group("cyclic:12").is_solvable());
        assert!(group("elem:3^2").is_solvable());
        let s4 = group("sym:4");
        let orders: Vec<usize> = s4.derived_series().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(!group("alt:5").is_solvable());
    }

    #[test]
    fn complemented_groups() {
        assert!(group("sym:3").is_complemented_group());
        assert!(!group("cyclic:4").is_complemented_group());
        assert!(group("elem:2^3").is_complemented_group());
        assert!(group("elem:3^2").is_complemented_group());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(13));
        assert!(!is_prime(9));
    }

    #[test]
    fn cayley_file_round_trip() {
        let s3 = group("sym:3");
        let text = to_cayley_text(&s3);
        let back = parse_group_file(&text, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(back.table_rows(), s3.table_rows());
    }

    #[test]
    fn group_file_errors() {
        let err = parse_group_file("group cayley 2\n0 1\n1 x\n", 10).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_group_file("group cayley 2\n0 1\n1 1\n", 10).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
        let err = parse_group_file("group perm 3\n(1 2)\n(1 4)\n", 10).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(matches!(parse_group_file("group cayley 50\n", 10), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn perm_file() {
        let g = parse_group_file("# S4\ngroup perm 4\n(1 2)\n(1 2 3 4)\n", 100).unwrap();
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn non_associative_table_rejected() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&rows, None), Err(Error::NotAGroup(_))));
    }
}
