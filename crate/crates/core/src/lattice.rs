//! Explicit finite lattices.
//!
//! Elements are dense indices `0..n` stored in a linear extension of the
//! order, so `a <= b` implies `a.index() <= b.index()`. Up-sets and down-sets
//! are kept as bitset rows, and the meet and join tables are filled eagerly
//! when the lattice is built. A poset that is not a lattice is rejected at
//! construction.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a lattice element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    n: usize,
    /// `down[b]` holds every `a <= b`.
    down: Vec<FixedBitSet>,
    /// `up[a]` holds every `b >= a`.
    up: Vec<FixedBitSet>,
    lower_covers: Vec<Vec<ElementId>>,
    upper_covers: Vec<Vec<ElementId>>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: ElementId,
    top: ElementId,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.down == other.down
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds a lattice from its Hasse diagram.
    ///
    /// Pairs must go upward in index order. Redundant pairs (implied by
    /// transitivity) are accepted and dropped from the stored cover relation.
    pub fn build_from_covers(n: usize, cover_pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        for &(a, b) in cover_pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if a >= b {
                return Err(Error::NotLinearExtension { lower: a, upper: b });
            }
        }

        // Connectivity of the cover graph.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in cover_pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let root = find(&mut parent, 0);
        if (1..n).any(|e| find(&mut parent, e) != root) {
            return Err(Error::Disconnected);
        }

        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in cover_pairs {
            below[b].push(a);
        }
        let mut down = Vec::with_capacity(n);
        for (b, lower) in below.iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(b);
            for &a in lower {
                // a < b, so down[a] is already final
                let prev: &FixedBitSet = &down[a];
                row.union_with(prev);
            }
            down.push(row);
        }
        Self::from_down_sets(down)
    }

    /// Builds a lattice from an order predicate over indices `0..n`.
    ///
    /// The predicate must be a partial order for which the index order is a
    /// linear extension; both properties are checked.
    pub fn from_order<F>(n: usize, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let mut down = Vec::with_capacity(n);
        for b in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            for a in 0..n {
                if leq(a, b) {
                    if a > b {
                        return Err(Error::NotLinearExtension { lower: a, upper: b });
                    }
                    row.insert(a);
                }
            }
            if !row.contains(b) {
                return Err(Error::NotAPartialOrder(format!("{b} is not below itself")));
            }
            down.push(row);
        }
        for b in 0..n {
            for a in down[b].ones() {
                if !down[a].is_subset(&down[b]) {
                    return Err(Error::NotAPartialOrder(format!("relation is not transitive through {a} <= {b}")));
                }
            }
        }
        Self::from_down_sets(down)
    }

    /// Finishes construction from reflexive, transitive down-set rows that
    /// respect the index order.
    pub(crate) fn from_down_sets(down: Vec<FixedBitSet>) -> Result<Self> {
        let n = down.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (b, row) in down.iter().enumerate() {
            for a in row.ones() {
                up[a].insert(b);
            }
        }

        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for b in 0..n {
            for a in down[b].ones().filter(|&a| a != b) {
                // a is covered by b when nothing lies strictly between them
                if up[a].intersection_count(&down[b]) == 2 {
                    lower_covers[b].push(ElementId(a));
                    upper_covers[a].push(ElementId(b));
                }
            }
        }

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let mut common = down[a].clone();
                common.intersect_with(&down[b]);
                let glb = match common.maximum() {
                    Some(g) if down[g] == common => g,
                    _ => return Err(Error::NotALattice { a, b, bound: "greatest lower bound" }),
                };
                let mut common = up[a].clone();
                common.intersect_with(&up[b]);
                let lub = match common.minimum() {
                    Some(g) if up[g] == common => g,
                    _ => return Err(Error::NotALattice { a, b, bound: "least upper bound" }),
                };
                meet[a * n + b] = glb as u32;
                meet[b * n + a] = glb as u32;
                join[a * n + b] = lub as u32;
                join[b * n + a] = lub as u32;
            }
        }

        // In a lattice listed in a linear extension the bottom is first and
        // the top is last.
        let bottom = ElementId(0);
        let top = ElementId(n - 1);
        debug_assert_eq!(up[0].count_ones(..), n);
        debug_assert_eq!(down[n - 1].count_ones(..), n);

        Ok(Self { n, down, up, lower_covers, upper_covers, meet, join, bottom, top })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a lattice has at least one element.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n).map(ElementId)
    }

    pub fn contains(&self, e: ElementId) -> bool {
        e.0 < self.n
    }

    pub fn check_id(&self, e: ElementId) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: e.0, n: self.n })
        }
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.down[b.0].contains(a.0)
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.meet[a.0 * self.n + b.0] as usize)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.join[a.0 * self.n + b.0] as usize)
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = ElementId>) -> ElementId {
        items.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    /// Whether `b` covers `a`.
    pub fn covers(&self, a: ElementId, b: ElementId) -> bool {
        self.lower_covers[b.0].contains(&a)
    }

    pub fn lower_covers(&self, e: ElementId) -> &[ElementId] {
        &self.lower_covers[e.0]
    }

    pub fn upper_covers(&self, e: ElementId) -> &[ElementId] {
        &self.upper_covers[e.0]
    }

    /// All cover pairs `(a, b)` with `a` covered by `b`, sorted.
    pub fn cover_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let mut pairs: Vec<_> =
            (0..self.n).flat_map(|a| self.upper_covers[a].iter().map(move |&b| (ElementId(a), b))).collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn up_set(&self, a: ElementId) -> &FixedBitSet {
        &self.up[a.0]
    }

    pub fn down_set(&self, a: ElementId) -> &FixedBitSet {
        &self.down[a.0]
    }

    /// `|[a, top]|`.
    pub fn up_size(&self, a: ElementId) -> usize {
        self.up[a.0].count_ones(..)
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<ElementId> {
        self.elements().filter(|&e| self.lower_covers[e.0].len() == 1).collect()
    }

    pub fn is_join_irreducible(&self, e: ElementId) -> bool {
        self.lower_covers[e.0].len() == 1
    }

    pub fn coatoms(&self) -> Vec<ElementId> {
        self.lower_covers[self.top.0].clone()
    }

    pub fn atoms(&self) -> Vec<ElementId> {
        self.upper_covers[self.bottom.0].clone()
    }

    pub fn interval(&self, lo: ElementId, hi: ElementId) -> Result<Interval> {
        self.check_id(lo)?;
        self.check_id(hi)?;
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable { lo: lo.0, hi: hi.0 });
        }
        let mut members = self.up[lo.0].clone();
        members.intersect_with(&self.down[hi.0]);
        Ok(Interval { lo, hi, members: members.ones().map(ElementId).collect() })
    }

    /// The lattice relabeled so that `order[i]` becomes element `i`.
    ///
    /// `order` must list every element once, in a linear extension.
    pub fn relabeled(&self, order: &[ElementId]) -> Result<Self> {
        if order.len() != self.n {
            return Err(Error::PreconditionViolated("relabeling must list every element".into()));
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, e) in order.iter().enumerate() {
            self.check_id(*e)?;
            pos[e.0] = i;
        }
        if pos.contains(&usize::MAX) {
            return Err(Error::PreconditionViolated("relabeling repeats an element".into()));
        }
        Self::from_order(self.n, |a, b| self.leq(order[a], order[b]))
    }

    /// Lattice text format: `lattice <n>` followed by one cover pair per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("lattice {}\n", self.n);
        for (a, b) in self.cover_pairs() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut size = None;
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_index = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a non-negative integer, found {s:?}"),
                })
            };
            match size {
                None => {
                    if fields.len() != 2 || fields[0] != "lattice" {
                        return Err(Error::Parse { line: line_no, message: "expected header `lattice <n>`".into() });
                    }
                    size = Some(parse_index(fields[1])?);
                }
                Some(_) => {
                    if fields.len() != 2 {
                        return Err(Error::Parse { line: line_no, message: "expected a cover pair `<i> <j>`".into() });
                    }
                    pairs.push((parse_index(fields[0])?, parse_index(fields[1])?));
                }
            }
        }
        let n = size.ok_or(Error::Parse { line: 0, message: "missing `lattice <n>` header".into() })?;
        Self::build_from_covers(n, &pairs)
    }
}

/// The members of `[lo, hi]`, listed in ascending index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: ElementId,
    pub hi: ElementId,
    pub members: Vec<ElementId>,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    /// Position of an ambient element inside the re-indexed interval.
    pub fn local_index(&self, e: ElementId) -> Option<ElementId> {
        self.members.binary_search(&e).ok().map(ElementId)
    }

    pub fn ambient(&self, local: ElementId) -> ElementId {
        self.members[local.0]
    }

    /// The interval as a lattice in its own right; element `i` of the result
    /// is `members[i]`.
    pub fn sublattice(&self, lattice: &FiniteLattice) -> FiniteLattice {
        let k = self.members.len();
        let down = self
            .members
            .iter()
            .map(|&b| {
                let mut row = FixedBitSet::with_capacity(k);
                for (i, &a) in self.members.iter().enumerate() {
                    if lattice.leq(a, b) {
                        row.insert(i);
                    }
                }
                row
            })
            .collect();
        FiniteLattice::from_down_sets(down).expect("an interval of a lattice is a lattice")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::FiniteLattice;

    pub fn chain(n: usize) -> FiniteLattice {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteLattice::build_from_covers(n, &pairs).unwrap()
    }

    pub fn m3() -> FiniteLattice {
        FiniteLattice::build_from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    /// Chain 0 < 1 < 3 < 4 with 2 incomparable to 1 and 3.
    pub fn n5() -> FiniteLattice {
        FiniteLattice::build_from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    /// Boolean lattice on 4 elements: 0 < a=1, b=2 < 3.
    pub fn b2() -> FiniteLattice {
        FiniteLattice::build_from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn ids(v: &[usize]) -> Vec<ElementId> {
        v.iter().copied().map(ElementId).collect()
    }

    #[test]
    fn two_chain() {
        let l = chain(2);
        assert_eq!(l.bottom(), ElementId(0));
        assert_eq!(l.top(), ElementId(1));
        assert_eq!(l.join_irreducibles(), ids(&[1]));
        assert_eq!(l.coatoms(), ids(&[0]));
    }

    #[test]
    fn diamond_meets_and_joins() {
        let l = m3();
        for a in 1..4 {
            for b in 1..4 {
                if a != b {
                    assert_eq!(l.meet(ElementId(a), ElementId(b)), ElementId(0));
                    assert_eq!(l.join(ElementId(a), ElementId(b)), ElementId(4));
                }
            }
        }
        assert_eq!(l.join_irreducibles(), ids(&[1, 2, 3]));
        assert_eq!(l.coatoms(), ids(&[1, 2, 3]));
    }

    #[test]
    fn pentagon_tables() {
        let l = n5();
        assert_eq!(l.meet(ElementId(3), ElementId(2)), ElementId(0));
        assert_eq!(l.join(ElementId(1), ElementId(2)), ElementId(4));
        assert_eq!(l.join_irreducibles(), ids(&[1, 2, 3]));
        assert_eq!(l.coatoms(), ids(&[2, 3]));
        let iv = l.interval(ElementId(0), ElementId(3)).unwrap();
        assert_eq!(iv.members, ids(&[0, 1, 3]));
        let sub = iv.sublattice(&l);
        assert_eq!(sub.len(), 3);
        assert_eq!(sub.cover_pairs().len(), 2);
    }

    #[test]
    fn identity_laws() {
        let l = n5();
        for a in l.elements() {
            assert_eq!(l.meet(a, l.top()), a);
            assert_eq!(l.join(a, l.bottom()), a);
        }
    }

    #[test]
    fn missing_upper_bound_is_not_a_lattice() {
        let err = FiniteLattice::build_from_covers(4, &[(0, 1), (0, 2), (1, 3)]).unwrap_err();
        assert!(matches!(err, Error::NotALattice { .. }), "{err:?}");
    }

    #[test]
    fn downward_cover_rejected() {
        let err = FiniteLattice::build_from_covers(3, &[(0, 2), (2, 1)]).unwrap_err();
        assert_eq!(err, Error::NotLinearExtension { lower: 2, upper: 1 });
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(FiniteLattice::build_from_covers(2, &[]).unwrap_err(), Error::Disconnected);
        assert_eq!(FiniteLattice::build_from_covers(0, &[]).unwrap_err(), Error::EmptyLattice);
    }

    #[test]
    fn single_element_lattice() {
        let l = FiniteLattice::build_from_covers(1, &[]).unwrap();
        assert_eq!(l.bottom(), l.top());
        assert!(l.join_irreducibles().is_empty());
    }

    #[test]
    fn redundant_pairs_are_reduced() {
        let l = FiniteLattice::build_from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(l, chain(3));
        assert_eq!(l.cover_pairs().len(), 2);
    }

    #[test]
    fn interval_errors_and_trivial_cases() {
        let l = n5();
        assert!(matches!(l.interval(ElementId(2), ElementId(3)), Err(Error::NotComparable { .. })));
        assert_eq!(l.interval(l.bottom(), l.top()).unwrap().len(), 5);
        assert_eq!(l.interval(ElementId(2), ElementId(2)).unwrap().members, ids(&[2]));
    }

    #[test]
    fn text_format_round_trip() {
        let l = n5();
        let text = l.to_text();
        assert_eq!(text, "lattice 5\n0 1\n0 2\n1 3\n2 4\n3 4\n");
        let back = FiniteLattice::parse_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        let commented = "# pentagon\nlattice 5\n\n0 1 # left\n0 2\n1 3\n2 4\n3 4\n";
        assert_eq!(FiniteLattice::parse_text(commented).unwrap(), l);
    }

    #[test]
    fn text_format_errors_carry_line_numbers() {
        let err = FiniteLattice::parse_text("lattice 3\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = FiniteLattice::parse_text("poset 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn from_order_rejects_bad_relations() {
        assert!(matches!(FiniteLattice::from_order(2, |a, b| a >= b), Err(Error::NotLinearExtension { .. })));
        // 0<1, 1<2 but not 0<2
        let bad = |a: usize, b: usize| a == b || (a, b) == (0, 1) || (a, b) == (1, 2);
        assert!(matches!(FiniteLattice::from_order(3, bad), Err(Error::NotAPartialOrder(_))));
    }
}
