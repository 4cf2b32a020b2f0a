//! Subgroup lattices `L(G)`, upper intervals `[H, G]`, and the group-theoretic
//! routes to a Frankl witness.

use std::collections::HashMap;

use serde::Serialize;

use crate::analysis::{
    averaged_frankl, frankl_brute_force, frankl_via_left_modular_coatom, left_modular_coatoms_in, AveragedFrankl,
    CertificationPath, FranklReport,
};
use crate::certificate::{build_certificate, build_certificate_generalized, InjectionCertificate};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{ElementId, FiniteLattice, Interval};

/// `L(G)` with each element labeled by its subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    lattice: FiniteLattice,
    labels: Vec<Subgroup>,
    group: FiniteGroup,
    index: HashMap<Subgroup, ElementId>,
}

impl SubgroupLattice {
    /// Builds `L(G)` ordered by inclusion and re-validates that meets are
    /// intersections and joins are generated subgroups.
    pub fn build(group: FiniteGroup) -> Result<Self> {
        let labels = group.all_subgroups();
        let lattice = FiniteLattice::from_order(labels.len(), |a, b| labels[a].is_subgroup_of(&labels[b]))?;
        let index: HashMap<Subgroup, ElementId> =
            labels.iter().cloned().enumerate().map(|(i, h)| (h, ElementId(i))).collect();
        for a in lattice.elements() {
            for b in lattice.elements().filter(|&b| b > a) {
                let (ha, hb) = (&labels[a.0], &labels[b.0]);
                if labels[lattice.meet(a, b).0] != ha.intersection(hb) {
                    return Err(Error::CrossCheckFailed(format!("meet of {a} and {b} is not the intersection")));
                }
                if labels[lattice.join(a, b).0] != group.join(ha, hb) {
                    return Err(Error::CrossCheckFailed(format!("join of {a} and {b} is not the generated subgroup")));
                }
            }
        }
        if labels[lattice.bottom().0].order() != 1 || labels[lattice.top().0].order() != group.order() {
            return Err(Error::CrossCheckFailed("bottom and top are not 1 and G".into()));
        }
        Ok(SubgroupLattice { lattice, labels, group, index })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn labels(&self) -> &[Subgroup] {
        &self.labels
    }

    pub fn label(&self, e: ElementId) -> &Subgroup {
        &self.labels[e.0]
    }

    pub fn element_of(&self, h: &Subgroup) -> Option<ElementId> {
        self.index.get(h).copied()
    }

    pub fn normal_subgroups(&self) -> Vec<ElementId> {
        self.lattice.elements().filter(|&e| self.group.is_normal(self.label(e))).collect()
    }

    /// Join-irreducibles of `L(G)`, cross-checked against the cyclic subgroups
    /// of prime-power order.
    pub fn join_irreducible_subgroups(&self) -> Result<Vec<ElementId>> {
        let lattice_side = self.lattice.join_irreducibles();
        let mut group_side: Vec<ElementId> = self
            .group
            .elements()
            .filter(|&g| self.group.has_prime_power_order(g))
            .map(|g| self.element_of(&self.group.cyclic_subgroup(g)).expect("cyclic subgroups are listed"))
            .collect();
        group_side.sort_unstable();
        group_side.dedup();
        if lattice_side != group_side {
            return Err(Error::CrossCheckFailed(format!(
                "join-irreducibles {lattice_side:?} differ from cyclic prime-power subgroups {group_side:?}"
            )));
        }
        Ok(lattice_side)
    }

    /// `[H, G]` for a subgroup `H` of this lattice.
    pub fn upper_interval(&self, h: &Subgroup) -> Result<Interval> {
        let lo =
            self.element_of(h).ok_or_else(|| Error::PreconditionViolated("element set is not a subgroup".into()))?;
        self.lattice.interval(lo, self.lattice.top())
    }
}

/// Which group-theoretic argument produced the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupCertification {
    /// Normal `N` with `G/N` generated by at most two prime-power elements.
    NormalQuotientGeneration,
    /// Interval `[H, G]` with normal `N`, `HN < G` and `HN ∨ X ∨ Y = G`.
    IntervalNormalJoin,
    /// Interval `[H, G]` with `H < K < G` and `K(X ∨ Y) = G` as element sets.
    IntervalComplementProduct,
    /// Exhaustive interval sweep of a solvable group.
    SolvableIntervalBruteForce,
    /// Every join-irreducible of a complemented group is a witness.
    ComplementedGroup,
    LeftModularCoatom,
    BruteForce,
}

impl GroupCertification {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupCertification::NormalQuotientGeneration => "normal_quotient_generation",
            GroupCertification::IntervalNormalJoin => "interval_normal_join",
            GroupCertification::IntervalComplementProduct => "interval_complement_product",
            GroupCertification::SolvableIntervalBruteForce => "solvable_interval_brute_force",
            GroupCertification::ComplementedGroup => "complemented_group",
            GroupCertification::LeftModularCoatom => "left_modular_coatom",
            GroupCertification::BruteForce => "brute_force",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupFranklReport {
    pub report: FranklReport,
    pub certification: GroupCertification,
    pub normal_subgroup_used: Option<Subgroup>,
    /// Lifted generators in `G` (a single generator appears twice).
    pub generator_pair: Option<(usize, usize)>,
    pub witness_subgroup: Option<Subgroup>,
    /// A brute-force failure where a proved result says none can occur.
    pub critical: bool,
}

impl GroupFranklReport {
    fn new(labels: impl Fn(ElementId) -> Subgroup, report: FranklReport, certification: GroupCertification) -> Self {
        GroupFranklReport {
            witness_subgroup: report.witness.map(&labels),
            report,
            certification,
            normal_subgroup_used: None,
            generator_pair: None,
            critical: false,
        }
    }
}

fn report_from_certificate(
    lattice: &FiniteLattice,
    cert: InjectionCertificate,
    path: CertificationPath,
) -> FranklReport {
    let size = lattice.up_size(cert.witness);
    FranklReport {
        satisfied: 2 * size <= lattice.len(),
        witness: Some(cert.witness),
        upper_interval_size: size,
        lattice_size: lattice.len(),
        certification_path: path,
        certificate: Some(cert),
    }
}

/// Proper normal subgroups, maximal ones first, each block by decreasing order.
fn normal_search_order(sl: &SubgroupLattice) -> Vec<ElementId> {
    let top = sl.lattice.top();
    let proper: Vec<ElementId> = sl.normal_subgroups().into_iter().filter(|&e| e != top).collect();
    let is_maximal = |e: ElementId| !proper.iter().any(|&f| f != e && sl.lattice.leq(e, f));
    let mut order = proper.clone();
    order.sort_by_key(|&e| (!is_maximal(e), std::cmp::Reverse(sl.label(e).order()), e));
    order
}

/// Finds a normal `N < G` whose quotient is generated by at most two elements
/// of prime-power order, lifts them to prime-power elements `x, y` of `G`, and
/// builds the certificate for `(N, ⟨x⟩, ⟨y⟩)`.
pub fn certify_via_normal_quotient(sl: &SubgroupLattice) -> Result<Option<GroupFranklReport>> {
    let group = &sl.group;
    if group.order() < 2 {
        return Err(Error::TooSmall { n: group.order() });
    }
    for n_id in normal_search_order(sl) {
        let normal = sl.label(n_id);
        let quotient = group.quotient_map(normal)?;
        let Some((a, b)) = quotient.group.two_prime_power_generated() else {
            continue;
        };
        let (Some(x), Some(y)) = (group.lift_prime_power(&quotient, a), group.lift_prime_power(&quotient, b)) else {
            return Err(Error::InternalCheckFailed("no prime-power preimage of a prime-power coset".into()));
        };
        let mut seed = normal.elements();
        seed.extend([x, y]);
        if group.generated_subgroup(&seed).order() != group.order() {
            return Err(Error::InternalCheckFailed("lifted generators and N do not generate G".into()));
        }
        let x_id = sl.element_of(&group.cyclic_subgroup(x)).expect("listed");
        let y_id = sl.element_of(&group.cyclic_subgroup(y)).expect("listed");
        let cert = build_certificate(&sl.lattice, n_id, x_id, y_id)?;
        let report = report_from_certificate(&sl.lattice, cert, CertificationPath::LeftModularInjection);
        let mut out =
            GroupFranklReport::new(|e| sl.label(e).clone(), report, GroupCertification::NormalQuotientGeneration);
        out.normal_subgroup_used = Some(normal.clone());
        out.generator_pair = Some((x, y));
        return Ok(Some(out));
    }
    Ok(None)
}

/// Certifies `[H, G]`: first through a normal `N` with `HN < G`, then through
/// an intermediate `K` with `K(X ∨ Y) = G`, then by brute force. Witnesses are
/// reported as indices of the re-indexed interval lattice.
pub fn certify_interval(sl: &SubgroupLattice, h: &Subgroup) -> Result<GroupFranklReport> {
    let group = &sl.group;
    if h.order() == group.order() {
        return Err(Error::TrivialInterval);
    }
    let interval = sl.upper_interval(h)?;
    let sub = interval.sublattice(&sl.lattice);
    let label = |local: ElementId| sl.label(interval.ambient(local)).clone();
    let jis = sub.join_irreducibles();
    let top = sub.top();

    for n_id in sl.normal_subgroups() {
        let normal = sl.label(n_id);
        let hn = group.join(h, normal);
        if hn.order() == group.order() {
            continue;
        }
        let m = interval.local_index(sl.element_of(&hn).expect("HN is a subgroup")).expect("HN lies above H");
        for (i, &x) in jis.iter().enumerate() {
            for &y in &jis[i..] {
                if sub.join(m, sub.join(x, y)) != top {
                    continue;
                }
                let cert = build_certificate(&sub, m, x, y)?;
                let report = report_from_certificate(&sub, cert, CertificationPath::LeftModularInjection);
                let mut out = GroupFranklReport::new(label, report, GroupCertification::IntervalNormalJoin);
                out.normal_subgroup_used = Some(normal.clone());
                return Ok(out);
            }
        }
    }

    let whole = group.whole();
    for k in sub.elements().filter(|&k| k != sub.bottom() && k != top) {
        let k_label = label(k);
        for (i, &x) in jis.iter().enumerate() {
            for &y in &jis[i..] {
                if sub.leq(x, k) || sub.leq(y, k) {
                    continue;
                }
                let xy = label(sub.join(x, y));
                if group.set_product(&k_label, &xy) != *whole.members() {
                    continue;
                }
                let cert = build_certificate_generalized(&sub, k, x, y)?;
                let report = report_from_certificate(&sub, cert, CertificationPath::GeneralizedInjection);
                return Ok(GroupFranklReport::new(label, report, GroupCertification::IntervalComplementProduct));
            }
        }
    }

    let report = frankl_brute_force(&sub)?;
    let critical = !report.satisfied;
    let mut out = GroupFranklReport::new(label, report, GroupCertification::BruteForce);
    out.critical = critical;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementedReport {
    pub join_irreducibles: Vec<ElementId>,
    pub witnesses: Vec<ElementId>,
    pub failures: Vec<ElementId>,
    /// One certificate per join-irreducible other than `G`, built from a
    /// complement `K` of `X` with `K X = G`.
    pub certificates: Vec<InjectionCertificate>,
    pub average_up_set: (u64, u64),
    pub averaged_satisfied: bool,
}

impl ComplementedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.witnesses == self.join_irreducibles
    }
}

/// For a complemented group, checks that every join-irreducible `X` of `L(G)`
/// satisfies `2·|[X, G]| <= |L(G)|` and certifies each one through a complement.
pub fn verify_complemented_witnesses(sl: &SubgroupLattice) -> Result<ComplementedReport> {
    let group = &sl.group;
    let lattice = &sl.lattice;
    if !sl.labels.iter().all(|h| group.complement_of(h, &sl.labels).is_some()) {
        return Err(Error::HypothesisFailed("group is not complemented".into()));
    }
    let jis = sl.join_irreducible_subgroups()?;
    let mut certificates = Vec::new();
    for &x in &jis {
        if x == lattice.top() {
            continue;
        }
        let k = group.complement_of(sl.label(x), &sl.labels).expect("checked above");
        let k_id = sl.element_of(k).expect("listed");
        let cert = build_certificate_generalized(lattice, k_id, x, x)?;
        if cert.witness != x {
            return Err(Error::InternalCheckFailed("complement certificate changed its witness".into()));
        }
        certificates.push(cert);
    }
    let (witnesses, failures): (Vec<ElementId>, Vec<ElementId>) =
        jis.iter().partition(|&&x| 2 * lattice.up_size(x) <= lattice.len());
    let AveragedFrankl { average, satisfied } = averaged_frankl(lattice)?;
    Ok(ComplementedReport {
        join_irreducibles: jis,
        witnesses,
        failures,
        certificates,
        average_up_set: (*average.numer(), *average.denom()),
        averaged_satisfied: satisfied,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolvableIntervalSummary {
    pub intervals_checked: usize,
    pub frankl_failures: usize,
    pub with_left_modular_coatom: usize,
    pub without_left_modular_coatom: usize,
    pub failing_intervals: Vec<(ElementId, ElementId)>,
}

impl SolvableIntervalSummary {
    pub fn passed(&self) -> bool {
        self.frankl_failures == 0 && self.without_left_modular_coatom == 0
    }
}

/// Brute-force Frankl check and left-modular coatom search on every interval
/// `[H, K]` with `H < K` of a solvable group.
pub fn verify_solvable_intervals(sl: &SubgroupLattice) -> Result<SolvableIntervalSummary> {
    if !sl.group.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let lattice = &sl.lattice;
    let mut summary = SolvableIntervalSummary::default();
    for lo in lattice.elements() {
        for hi in lattice.up_set(lo).ones().map(ElementId).filter(|&hi| hi != lo) {
            let interval = lattice.interval(lo, hi)?;
            let sub = interval.sublattice(lattice);
            summary.intervals_checked += 1;
            let mut failed = false;
            if !frankl_brute_force(&sub)?.satisfied {
                summary.frankl_failures += 1;
                failed = true;
            }
            if left_modular_coatoms_in(lattice, &interval).is_empty() {
                summary.without_left_modular_coatom += 1;
                failed = true;
            } else {
                summary.with_left_modular_coatom += 1;
            }
            if failed {
                summary.failing_intervals.push((lo, hi));
            }
        }
    }
    Ok(summary)
}

/// Normal-quotient route, then a left-modular coatom of `L(G)`, then brute
/// force. A brute-force failure is flagged critical.
pub fn frankl_full(sl: &SubgroupLattice) -> Result<GroupFranklReport> {
    if let Some(report) = certify_via_normal_quotient(sl)? {
        return Ok(report);
    }
    let label = |e: ElementId| sl.label(e).clone();
    if let Some(report) = frankl_via_left_modular_coatom(&sl.lattice) {
        return Ok(GroupFranklReport::new(label, report, GroupCertification::LeftModularCoatom));
    }
    let report = frankl_brute_force(&sl.lattice)?;
    let critical = !report.satisfied;
    let mut out = GroupFranklReport::new(label, report, GroupCertification::BruteForce);
    out.critical = critical;
    Ok(out)
}

/// Exact averaged up-set size of `L(G)`; exploration output only.
pub fn averaged_subgroup_frankl(sl: &SubgroupLattice) -> Result<AveragedFrankl> {
    averaged_frankl(&sl.lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_left_modular;
    use crate::certificate::{normalize_triple, verify_certificate};
    use crate::group::{GroupSpec, DEFAULT_ORDER_CAP};

    fn lattice_of(spec: &str) -> SubgroupLattice {
        let g = GroupSpec::parse(spec).unwrap().build(DEFAULT_ORDER_CAP).unwrap();
        SubgroupLattice::build(g).unwrap()
    }

    fn find(sl: &SubgroupLattice, pred: impl Fn(&Subgroup) -> bool) -> ElementId {
        sl.lattice().elements().find(|&e| pred(sl.label(e))).unwrap()
    }

    fn transposition_subgroup(sl: &SubgroupLattice, label: &str) -> ElementId {
        let g = sl.group().elements().find(|&g| sl.group().label(g) == label).unwrap();
        sl.element_of(&sl.group().cyclic_subgroup(g)).unwrap()
    }

    #[test]
    fn small_subgroup_lattices() {
        let c5 = lattice_of("cyclic:5");
        assert_eq!(c5.lattice().len(), 2);

        let s3 = lattice_of("sym:3");
        assert_eq!(s3.lattice().len(), 6);
        assert_eq!(s3.lattice().atoms().len(), 4);
        assert_eq!(s3.lattice().coatoms().len(), 4);

        let q8 = lattice_of("dicyclic:2");
        let l = q8.lattice();
        assert_eq!(l.len(), 6);
        assert_eq!(l.atoms().len(), 1);
        assert_eq!(l.coatoms().len(), 3);
    }

    #[test]
    fn join_irreducible_characterization() {
        let s3 = lattice_of("sym:3");
        let jis = s3.join_irreducible_subgroups().unwrap();
        let orders: Vec<usize> = jis.iter().map(|&e| s3.label(e).order()).collect();
        assert_eq!(orders, vec![2, 2, 2, 3]);
        let q8 = lattice_of("dicyclic:2");
        let orders: Vec<usize> =
            q8.join_irreducible_subgroups().unwrap().iter().map(|&e| q8.label(e).order()).collect();
        assert_eq!(orders, vec![2, 4, 4, 4]);
        let c9 = lattice_of("cyclic:9");
        assert_eq!(c9.join_irreducible_subgroups().unwrap().len(), 2);
    }

    #[test]
    fn s3_normalization_and_certificate() {
        let sl = lattice_of("sym:3");
        let l = sl.lattice();
        let a3 = find(&sl, |h| h.order() == 3);
        let rot = transposition_subgroup(&sl, "(1 2 3)");
        let t12 = transposition_subgroup(&sl, "(1 2)");
        assert_eq!(rot, a3);
        assert_eq!(normalize_triple(l, a3, rot, t12).unwrap(), (a3, t12, t12));
        let cert = build_certificate(l, a3, rot, t12).unwrap();
        assert_eq!(cert.witness, t12);
        assert!(cert.phi1.is_empty());
        assert_eq!(cert.phi2, vec![(t12, l.bottom()), (l.top(), a3)]);
        assert_eq!(l.up_size(t12), 2);
    }

    #[test]
    fn s3_generalized_certificate() {
        let sl = lattice_of("sym:3");
        let l = sl.lattice();
        let m = transposition_subgroup(&sl, "(1 2)");
        let x = transposition_subgroup(&sl, "(1 3)");
        let y = transposition_subgroup(&sl, "(1 2 3)");
        assert!(is_left_modular(l, m));
        assert!(!s3_is_normal(&sl, m));
        let cert = build_certificate_generalized(l, m, x, y).unwrap();
        assert!([x, y].contains(&cert.witness));
        assert_eq!(verify_certificate(l, &cert), Ok(()));
    }

    fn s3_is_normal(sl: &SubgroupLattice, e: ElementId) -> bool {
        sl.group().is_normal(sl.label(e))
    }

    #[test]
    fn normal_quotient_route() {
        let s3 = lattice_of("sym:3");
        let r = certify_via_normal_quotient(&s3).unwrap().unwrap();
        assert_eq!(r.normal_subgroup_used.as_ref().unwrap().order(), 3);
        assert_eq!(r.witness_subgroup.as_ref().unwrap().order(), 2);
        assert_eq!(r.report.upper_interval_size, 2);
        let (x, y) = r.generator_pair.unwrap();
        assert_eq!(x, y);

        let c6 = lattice_of("cyclic:6");
        let r = certify_via_normal_quotient(&c6).unwrap().unwrap();
        assert_eq!(r.normal_subgroup_used.as_ref().unwrap().order(), 3);
        assert_eq!(r.witness_subgroup.as_ref().unwrap().order(), 2);
    }

    #[test]
    fn intervals() {
        let s3 = lattice_of("sym:3");
        let h = s3.label(find(&s3, |h| h.order() == 2)).clone();
        let r = certify_interval(&s3, &h).unwrap();
        assert_eq!(r.report.lattice_size, 2);
        assert_eq!(r.witness_subgroup.unwrap().order(), 6);
        assert!(matches!(certify_interval(&s3, &s3.group().whole()), Err(Error::TrivialInterval)));

        let q8 = lattice_of("dicyclic:2");
        let center = q8.label(find(&q8, |h| h.order() == 2)).clone();
        let r = certify_interval(&q8, &center).unwrap();
        assert_eq!(r.report.lattice_size, 5);
        assert_eq!(r.report.upper_interval_size, 2);
        assert_eq!(r.witness_subgroup.unwrap().order(), 4);
    }

    #[test]
    fn complemented_checks() {
        let s3 = lattice_of("sym:3");
        let r = verify_complemented_witnesses(&s3).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses.len(), 4);
        assert_eq!(r.certificates.len(), 4);
        let c4 = lattice_of("cyclic:4");
        assert!(matches!(verify_complemented_witnesses(&c4), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn solvable_sweep_s3() {
        let s3 = lattice_of("sym:3");
        let s = verify_solvable_intervals(&s3).unwrap();
        assert!(s.passed());
        assert_eq!(s.intervals_checked, 4 + 4 + 1);
        assert!(matches!(verify_solvable_intervals(&lattice_of("alt:5")), Err(Error::NotSolvable)));
    }

    #[test]
    fn full_route() {
        let c7 = lattice_of("cyclic:7");
        let r = frankl_full(&c7).unwrap();
        assert_eq!(r.report.witness, Some(c7.lattice().top()));
        assert!(!r.critical);
    }
}
