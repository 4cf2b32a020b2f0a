//! Structural predicates and direct Frankl checks on a single lattice.

use num_rational::Ratio;
use serde::Serialize;

use crate::certificate::{
    build_certificate, build_certificate_generalized, generalized_modularity_holds, InjectionCertificate,
};
use crate::error::{Error, Result};
use crate::lattice::{ElementId, FiniteLattice, Interval};

/// How a lattice was shown to have a small up-set above some join-irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificationPath {
    BruteForce,
    LeftModularInjection,
    GeneralizedInjection,
    LeftModularCoatom,
    Comodernistic,
    TopJoinIrreducible,
}

impl CertificationPath {
    pub const ALL: [CertificationPath; 6] = [
        CertificationPath::BruteForce,
        CertificationPath::LeftModularInjection,
        CertificationPath::GeneralizedInjection,
        CertificationPath::LeftModularCoatom,
        CertificationPath::Comodernistic,
        CertificationPath::TopJoinIrreducible,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CertificationPath::BruteForce => "brute_force",
            CertificationPath::LeftModularInjection => "left_modular_injection",
            CertificationPath::GeneralizedInjection => "generalized_injection",
            CertificationPath::LeftModularCoatom => "left_modular_coatom",
            CertificationPath::Comodernistic => "comodernistic",
            CertificationPath::TopJoinIrreducible => "top_join_irreducible",
        }
    }
}

/// Verdict for one lattice.
///
/// When `satisfied` is false there is no witness and `upper_interval_size` is
/// the smallest up-set size over all join-irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FranklReport {
    pub satisfied: bool,
    pub witness: Option<ElementId>,
    pub upper_interval_size: usize,
    pub lattice_size: usize,
    pub certification_path: CertificationPath,
    pub certificate: Option<InjectionCertificate>,
}

impl FranklReport {
    fn from_certificate(lattice: &FiniteLattice, cert: InjectionCertificate, path: CertificationPath) -> Self {
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

    fn top_join_irreducible(lattice: &FiniteLattice) -> Self {
        FranklReport {
            satisfied: true,
            witness: Some(lattice.top()),
            upper_interval_size: 1,
            lattice_size: lattice.len(),
            certification_path: CertificationPath::TopJoinIrreducible,
            certificate: None,
        }
    }
}

fn require_two(lattice: &FiniteLattice) -> Result<()> {
    if lattice.len() < 2 {
        Err(Error::TooSmall { n: lattice.len() })
    } else {
        Ok(())
    }
}

/// `a ∨ (m ∧ b) = (a ∨ m) ∧ b` for every `a < b`.
pub fn is_left_modular(lattice: &FiniteLattice, m: ElementId) -> bool {
    left_modularity_violation(lattice, m).is_none()
}

/// First pair `a < b` (by index) on which `m` fails the left-modular law.
pub fn left_modularity_violation(lattice: &FiniteLattice, m: ElementId) -> Option<(ElementId, ElementId)> {
    for b in lattice.elements() {
        let m_b = lattice.meet(m, b);
        for a in lattice.down_set(b).ones().map(ElementId) {
            if a == b {
                continue;
            }
            if lattice.join(a, m_b) != lattice.meet(lattice.join(a, m), b) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn left_modular_elements(lattice: &FiniteLattice) -> Vec<ElementId> {
    lattice.elements().filter(|&m| is_left_modular(lattice, m)).collect()
}

/// Left-modularity of `m` inside the interval, computed with the ambient
/// tables (an interval is a sublattice).
pub fn is_left_modular_in(lattice: &FiniteLattice, interval: &Interval, m: ElementId) -> bool {
    interval.members.iter().all(|&b| {
        let m_b = lattice.meet(m, b);
        interval
            .members
            .iter()
            .filter(|&&a| a != b && lattice.leq(a, b))
            .all(|&a| lattice.join(a, m_b) == lattice.meet(lattice.join(a, m), b))
    })
}

/// Coatoms of `[lo, hi]` that are left-modular within it, by ascending index.
pub fn left_modular_coatoms_in(lattice: &FiniteLattice, interval: &Interval) -> Vec<ElementId> {
    lattice
        .lower_covers(interval.hi)
        .iter()
        .copied()
        .filter(|&c| lattice.leq(interval.lo, c))
        .filter(|&c| is_left_modular_in(lattice, interval, c))
        .collect()
}

/// Scans join-irreducibles for the smallest index whose up-set holds at most
/// half the lattice.
pub fn frankl_brute_force(lattice: &FiniteLattice) -> Result<FranklReport> {
    require_two(lattice)?;
    let n = lattice.len();
    let mut smallest = usize::MAX;
    for a in lattice.join_irreducibles() {
        let size = lattice.up_size(a);
        if 2 * size <= n {
            return Ok(FranklReport {
                satisfied: true,
                witness: Some(a),
                upper_interval_size: size,
                lattice_size: n,
                certification_path: CertificationPath::BruteForce,
                certificate: None,
            });
        }
        smallest = smallest.min(size);
    }
    Ok(FranklReport {
        satisfied: false,
        witness: None,
        upper_interval_size: smallest,
        lattice_size: n,
        certification_path: CertificationPath::BruteForce,
        certificate: None,
    })
}

/// Every join-irreducible that satisfies the half-size bound.
pub fn frankl_witnesses(lattice: &FiniteLattice) -> Vec<ElementId> {
    lattice.join_irreducibles().into_iter().filter(|&a| 2 * lattice.up_size(a) <= lattice.len()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AveragedFrankl {
    pub average: Ratio<u64>,
    pub satisfied: bool,
}

/// Exact mean of `|[a, top]|` over join-irreducibles `a`, compared with `|L|/2`.
pub fn averaged_frankl(lattice: &FiniteLattice) -> Result<AveragedFrankl> {
    let jis = lattice.join_irreducibles();
    if jis.is_empty() {
        return Err(Error::NoJoinIrreducibles);
    }
    let total: u64 = jis.iter().map(|&a| lattice.up_size(a) as u64).sum();
    let average = Ratio::new(total, jis.len() as u64);
    let satisfied = average * 2 <= Ratio::from_integer(lattice.len() as u64);
    Ok(AveragedFrankl { average, satisfied })
}

/// A pair `(a, b)` with `a ⋖ a∨b` but `a∧b` not covered by `b`.
pub fn dual_semimodularity_violation(lattice: &FiniteLattice) -> Option<(ElementId, ElementId)> {
    for a in lattice.elements() {
        for b in lattice.elements() {
            if lattice.covers(a, lattice.join(a, b)) && !lattice.covers(lattice.meet(a, b), b) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_dually_semimodular(lattice: &FiniteLattice) -> bool {
    dual_semimodularity_violation(lattice).is_none()
}

/// A maximal chain `bottom ⋖ c1 ⋖ ... ⋖ top` of left-modular elements, found by
/// depth-first search over cover edges.
pub fn has_left_modular_maximal_chain(lattice: &FiniteLattice) -> Option<Vec<ElementId>> {
    let modular: Vec<bool> = lattice.elements().map(|e| is_left_modular(lattice, e)).collect();
    let mut dead = vec![false; lattice.len()];
    let mut chain = vec![lattice.bottom()];
    if chain_search(lattice, &modular, &mut dead, &mut chain) {
        Some(chain)
    } else {
        None
    }
}

fn chain_search(lattice: &FiniteLattice, modular: &[bool], dead: &mut [bool], chain: &mut Vec<ElementId>) -> bool {
    let current = *chain.last().expect("chain starts at bottom");
    if current == lattice.top() {
        return true;
    }
    for &next in lattice.upper_covers(current) {
        if !modular[next.0] || dead[next.0] {
            continue;
        }
        chain.push(next);
        if chain_search(lattice, modular, dead, chain) {
            return true;
        }
        chain.pop();
        dead[next.0] = true;
    }
    false
}

/// First interval `[lo, hi]` (with `lo < hi`) lacking a coatom that is
/// left-modular within the interval.
pub fn comodernistic_violation(lattice: &FiniteLattice) -> Option<(ElementId, ElementId)> {
    for lo in lattice.elements() {
        for hi in lattice.up_set(lo).ones().map(ElementId) {
            if hi == lo {
                continue;
            }
            let interval = lattice.interval(lo, hi).expect("lo <= hi");
            if left_modular_coatoms_in(lattice, &interval).is_empty() {
                return Some((lo, hi));
            }
        }
    }
    None
}

pub fn is_comodernistic(lattice: &FiniteLattice) -> bool {
    comodernistic_violation(lattice).is_none()
}

/// Certifies through a left-modular coatom `m` and a join-irreducible `x`
/// with `m ∨ x = top`, or through a join-irreducible top.
pub fn frankl_via_left_modular_coatom(lattice: &FiniteLattice) -> Option<FranklReport> {
    if lattice.len() < 2 {
        return None;
    }
    if lattice.is_join_irreducible(lattice.top()) {
        return Some(FranklReport::top_join_irreducible(lattice));
    }
    let jis = lattice.join_irreducibles();
    for m in lattice.coatoms() {
        if !is_left_modular(lattice, m) {
            continue;
        }
        let Some(&x) = jis.iter().find(|&&x| lattice.join(m, x) == lattice.top()) else {
            continue;
        };
        let cert = build_certificate(lattice, m, x, x).ok()?;
        return Some(FranklReport::from_certificate(lattice, cert, CertificationPath::LeftModularCoatom));
    }
    None
}

/// The left-modular coatom route, reported under the comodernistic path when
/// every interval has a left-modular coatom.
pub fn frankl_via_comodernistic(lattice: &FiniteLattice) -> Option<FranklReport> {
    if !is_comodernistic(lattice) {
        return None;
    }
    let mut report = frankl_via_left_modular_coatom(lattice)?;
    if report.certification_path == CertificationPath::LeftModularCoatom {
        report.certification_path = CertificationPath::Comodernistic;
    }
    Some(report)
}

/// Searches triples `(m, x, y)` with `m ≠ top` left-modular and `m ∨ x ∨ y = top`.
pub fn frankl_via_left_modular_triple(lattice: &FiniteLattice) -> Option<FranklReport> {
    let jis = lattice.join_irreducibles();
    for m in left_modular_elements(lattice) {
        if m == lattice.top() {
            continue;
        }
        for (i, &x) in jis.iter().enumerate() {
            for &y in &jis[i..] {
                if lattice.join(m, lattice.join(x, y)) != lattice.top() {
                    continue;
                }
                if let Ok(cert) = build_certificate(lattice, m, x, y) {
                    return Some(FranklReport::from_certificate(
                        lattice,
                        cert,
                        CertificationPath::LeftModularInjection,
                    ));
                }
            }
        }
    }
    None
}

/// Searches triples satisfying only the relaxed identity above `x ∨ y`.
pub fn frankl_via_generalized_triple(lattice: &FiniteLattice) -> Option<FranklReport> {
    let jis = lattice.join_irreducibles();
    for m in lattice.elements().filter(|&m| m != lattice.top()) {
        for (i, &x) in jis.iter().enumerate() {
            for &y in &jis[i..] {
                if lattice.leq(x, m) || lattice.leq(y, m) {
                    continue;
                }
                if lattice.join(m, lattice.join(x, y)) != lattice.top()
                    || !generalized_modularity_holds(lattice, m, x, y)
                {
                    continue;
                }
                if let Ok(cert) = build_certificate_generalized(lattice, m, x, y) {
                    return Some(FranklReport::from_certificate(
                        lattice,
                        cert,
                        CertificationPath::GeneralizedInjection,
                    ));
                }
            }
        }
    }
    None
}

/// Tries the constructive routes in order (join-irreducible top, left-modular
/// coatom, left-modular triple, relaxed triple) and falls back to brute force.
pub fn frankl_certify(lattice: &FiniteLattice) -> Result<FranklReport> {
    require_two(lattice)?;
    if let Some(report) = frankl_via_left_modular_coatom(lattice) {
        return Ok(report);
    }
    if let Some(report) = frankl_via_left_modular_triple(lattice) {
        return Ok(report);
    }
    if let Some(report) = frankl_via_generalized_triple(lattice) {
        return Ok(report);
    }
    frankl_brute_force(lattice)
}

/// Whether some sufficient condition implemented here applies, so that a
/// brute-force failure would contradict a proved result.
pub fn has_sufficient_condition(lattice: &FiniteLattice) -> bool {
    lattice.len() >= 2
        && (frankl_via_left_modular_coatom(lattice).is_some()
            || frankl_via_left_modular_triple(lattice).is_some()
            || frankl_via_generalized_triple(lattice).is_some())
}
