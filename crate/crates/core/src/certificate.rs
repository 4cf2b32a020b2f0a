//! Injection certificates.
//!
//! Given a modular element `m ≠ top` and join-irreducibles `x`, `y` with
//! `m ∨ x ∨ y = top`, the up-set `[x, top]` injects into its complement:
//!
//! * `phi1` sends `[x, top] \ [x∨y, top]` into `[y, top] \ [x∨y, top]`
//!   (possible once `|[x, top]| <= |[y, top]|`),
//! * `phi2` sends `α ∈ [x∨y, top]` to `m ∧ α`, which lands below `m` and is
//!   injective because `x ∨ y ∨ (m ∧ α) = α`.
//!
//! The combined map proves `2·|[x, top]| <= |L|`. Certificates keep the maps
//! explicitly so [`verify_certificate`] can re-check them from scratch.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::analysis::is_left_modular;
use crate::error::{Error, Result};
use crate::lattice::{ElementId, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectionCertificate {
    pub witness: ElementId,
    pub partner: ElementId,
    pub modular_element: ElementId,
    /// Sorted by domain element.
    pub phi1: Vec<(ElementId, ElementId)>,
    /// Sorted by domain element.
    pub phi2: Vec<(ElementId, ElementId)>,
}

impl InjectionCertificate {
    /// `phi1 ∪ phi2`, keyed by domain element. Later entries win on a repeated key.
    pub fn combined(&self) -> BTreeMap<ElementId, ElementId> {
        self.phi1.iter().chain(&self.phi2).copied().collect()
    }
}

fn fmt_map(f: &mut fmt::Formatter<'_>, map: &[(ElementId, ElementId)]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, (a, b)) in map.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}↦{b}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for InjectionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "witness {} (partner {}, modular element {})", self.witness, self.partner, self.modular_element)?;
        write!(f, "phi1 = ")?;
        fmt_map(f, &self.phi1)?;
        write!(f, "\nphi2 = ")?;
        fmt_map(f, &self.phi2)
    }
}

/// First obligation a certificate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateDefect {
    UnknownElement(ElementId),
    WitnessNotJoinIrreducible,
    DomainNotPartition,
    NotInjective,
    ImageIntersectsUpSet,
    InequalityFails,
    Phi1OutsideCodomain,
    Phi2NotMeet,
}

impl fmt::Display for CertificateDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateDefect::UnknownElement(e) => write!(f, "unknown element {e}"),
            CertificateDefect::WitnessNotJoinIrreducible => write!(f, "witness is not join-irreducible"),
            CertificateDefect::DomainNotPartition => write!(f, "domains do not partition the up-set"),
            CertificateDefect::NotInjective => write!(f, "not injective"),
            CertificateDefect::ImageIntersectsUpSet => write!(f, "image intersects up-set"),
            CertificateDefect::InequalityFails => write!(f, "up-set exceeds half the lattice"),
            CertificateDefect::Phi1OutsideCodomain => write!(f, "phi1 leaves [y, top] minus [x∨y, top]"),
            CertificateDefect::Phi2NotMeet => write!(f, "phi2 is not α ↦ m ∧ α"),
        }
    }
}

fn check_common(lattice: &FiniteLattice, m: ElementId, x: ElementId, y: ElementId) -> Result<()> {
    for e in [m, x, y] {
        lattice.check_id(e)?;
    }
    if m == lattice.top() {
        return Err(Error::PreconditionViolated("modular element is the top".into()));
    }
    for e in [x, y] {
        if !lattice.is_join_irreducible(e) {
            return Err(Error::PreconditionViolated(format!("{e} is not join-irreducible")));
        }
    }
    if lattice.join(m, lattice.join(x, y)) != lattice.top() {
        return Err(Error::PreconditionViolated("m ∨ x ∨ y is not the top".into()));
    }
    Ok(())
}

/// Orders the pair so that the smaller up-set comes first; ties keep the
/// smaller index first.
fn order_by_up_size(lattice: &FiniteLattice, x: ElementId, y: ElementId) -> (ElementId, ElementId) {
    let key = |e: ElementId| (lattice.up_size(e), e);
    if key(y) < key(x) {
        (y, x)
    } else {
        (x, y)
    }
}

/// Reduces a triple so that neither join-irreducible lies below `m` and the
/// first has the smaller up-set. `x <= m` becomes `(m, y, y)`, and
/// symmetrically `y <= m` becomes `(m, x, x)`.
pub fn normalize_triple(
    lattice: &FiniteLattice,
    m: ElementId,
    x: ElementId,
    y: ElementId,
) -> Result<(ElementId, ElementId, ElementId)> {
    check_common(lattice, m, x, y)?;
    let (x, y) = match (lattice.leq(x, m), lattice.leq(y, m)) {
        (true, true) => {
            return Err(Error::PreconditionViolated("both join-irreducibles lie below m".into()));
        }
        (true, false) => (y, y),
        (false, true) => (x, x),
        (false, false) => (x, y),
    };
    let (x, y) = order_by_up_size(lattice, x, y);
    Ok((m, x, y))
}

/// Builds the injection for a left-modular `m`.
pub fn build_certificate(
    lattice: &FiniteLattice,
    m: ElementId,
    x: ElementId,
    y: ElementId,
) -> Result<InjectionCertificate> {
    let (m, x, y) = normalize_triple(lattice, m, x, y)?;
    if !is_left_modular(lattice, m) {
        return Err(Error::PreconditionViolated(format!("{m} is not left-modular")));
    }
    assemble(lattice, m, x, y)
}

/// `(x ∨ y ∨ m) ∧ α = (x ∨ y) ∨ (m ∧ α)` for every `α > x ∨ y`.
pub fn generalized_modularity_holds(lattice: &FiniteLattice, m: ElementId, x: ElementId, y: ElementId) -> bool {
    let s = lattice.join(x, y);
    let s_m = lattice.join(s, m);
    lattice
        .up_set(s)
        .ones()
        .map(ElementId)
        .filter(|&alpha| alpha != s)
        .all(|alpha| lattice.meet(s_m, alpha) == lattice.join(s, lattice.meet(m, alpha)))
}

/// Builds the injection when `m` only satisfies the relaxed identity above
/// `x ∨ y`. Both join-irreducibles must already avoid `[bottom, m]`.
pub fn build_certificate_generalized(
    lattice: &FiniteLattice,
    m: ElementId,
    x: ElementId,
    y: ElementId,
) -> Result<InjectionCertificate> {
    check_common(lattice, m, x, y)?;
    if lattice.leq(x, m) || lattice.leq(y, m) {
        return Err(Error::PreconditionViolated("a join-irreducible lies below m".into()));
    }
    if !generalized_modularity_holds(lattice, m, x, y) {
        return Err(Error::PreconditionViolated("relaxed modular identity fails above x ∨ y".into()));
    }
    let (x, y) = order_by_up_size(lattice, x, y);
    assemble(lattice, m, x, y)
}

fn assemble(lattice: &FiniteLattice, m: ElementId, x: ElementId, y: ElementId) -> Result<InjectionCertificate> {
    let s = lattice.join(x, y);
    let shared = lattice.up_set(s);
    let minus_shared = |e: ElementId| {
        let mut set = lattice.up_set(e).clone();
        set.difference_with(shared);
        set.ones().map(ElementId).collect::<Vec<_>>()
    };
    let domain = minus_shared(x);
    let codomain = minus_shared(y);
    if domain.len() > codomain.len() {
        return Err(Error::InternalCheckFailed(format!(
            "phi1 domain has {} elements but codomain only {}",
            domain.len(),
            codomain.len()
        )));
    }
    let phi1 = domain.into_iter().zip(codomain).collect();
    let phi2 = shared.ones().map(ElementId).map(|alpha| (alpha, lattice.meet(m, alpha))).collect();
    let cert = InjectionCertificate { witness: x, partner: y, modular_element: m, phi1, phi2 };
    verify_certificate(lattice, &cert).map_err(|defect| Error::InternalCheckFailed(defect.to_string()))?;
    Ok(cert)
}

/// Re-checks every obligation of a certificate without trusting how it was
/// built: the domains partition `[witness, top]`, the combined map is
/// injective and avoids `[witness, top]`, the half-size bound holds, and both
/// maps have the prescribed shape.
pub fn verify_certificate(
    lattice: &FiniteLattice,
    cert: &InjectionCertificate,
) -> std::result::Result<(), CertificateDefect> {
    let n = lattice.len();
    let all_ids = [cert.witness, cert.partner, cert.modular_element]
        .into_iter()
        .chain(cert.phi1.iter().chain(&cert.phi2).flat_map(|&(a, b)| [a, b]));
    for e in all_ids {
        if !lattice.contains(e) {
            return Err(CertificateDefect::UnknownElement(e));
        }
    }
    let x = cert.witness;
    if !lattice.is_join_irreducible(x) {
        return Err(CertificateDefect::WitnessNotJoinIrreducible);
    }
    let up_x = lattice.up_set(x);

    let mut domain = FixedBitSet::with_capacity(n);
    for &(a, _) in cert.phi1.iter().chain(&cert.phi2) {
        if domain.contains(a.0) {
            return Err(CertificateDefect::DomainNotPartition);
        }
        domain.insert(a.0);
    }
    if &domain != up_x {
        return Err(CertificateDefect::DomainNotPartition);
    }

    let mut image = FixedBitSet::with_capacity(n);
    for &(_, b) in cert.phi1.iter().chain(&cert.phi2) {
        if image.contains(b.0) {
            return Err(CertificateDefect::NotInjective);
        }
        image.insert(b.0);
    }
    if !image.is_disjoint(up_x) {
        return Err(CertificateDefect::ImageIntersectsUpSet);
    }
    if 2 * up_x.count_ones(..) > n {
        return Err(CertificateDefect::InequalityFails);
    }

    let s = lattice.join(x, cert.partner);
    for &(a, b) in &cert.phi1 {
        if lattice.leq(s, a) || !lattice.leq(cert.partner, b) || lattice.leq(s, b) {
            return Err(CertificateDefect::Phi1OutsideCodomain);
        }
    }
    for &(a, b) in &cert.phi2 {
        if !lattice.leq(s, a) || lattice.meet(cert.modular_element, a) != b {
            return Err(CertificateDefect::Phi2NotMeet);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures::*;

    fn e(i: usize) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn boolean_square_follows_the_proof() {
        let l = b2();
        assert_eq!(normalize_triple(&l, e(0), e(1), e(2)).unwrap(), (e(0), e(1), e(2)));
        let c = build_certificate(&l, e(0), e(1), e(2)).unwrap();
        assert_eq!(c.witness, e(1));
        assert_eq!(c.phi1, vec![(e(1), e(2))]);
        assert_eq!(c.phi2, vec![(e(3), e(0))]);
        assert_eq!(verify_certificate(&l, &c), Ok(()));
        assert_eq!(c.combined().len(), 2);
    }

    #[test]
    fn pentagon_certificate() {
        let l = n5();
        let c = build_certificate(&l, e(3), e(2), e(2)).unwrap();
        assert_eq!(c.witness, e(2));
        assert!(c.phi1.is_empty());
        assert_eq!(c.phi2, vec![(e(2), e(0)), (e(4), e(3))]);
        assert_eq!(c.to_string().lines().last().unwrap(), "phi2 = {2↦0, 4↦3}");
    }

    #[test]
    fn tie_keeps_smaller_index_first() {
        let l = b2();
        assert_eq!(normalize_triple(&l, e(0), e(2), e(1)).unwrap(), (e(0), e(1), e(2)));
    }

    #[test]
    fn below_m_is_replaced() {
        let l = b2();
        assert_eq!(normalize_triple(&l, e(1), e(1), e(2)).unwrap(), (e(1), e(2), e(2)));
        assert_eq!(normalize_triple(&l, e(1), e(2), e(1)).unwrap(), (e(1), e(2), e(2)));
    }

    #[test]
    fn precondition_errors() {
        let l = n5();
        assert!(matches!(build_certificate(&l, e(4), e(2), e(2)), Err(Error::PreconditionViolated(_))));
        assert!(matches!(build_certificate(&l, e(0), e(1), e(1)), Err(Error::PreconditionViolated(_))));
        assert!(matches!(build_certificate(&l, e(0), e(4), e(4)), Err(Error::PreconditionViolated(_))));
        // 2 is not left-modular
        assert!(matches!(build_certificate(&l, e(2), e(1), e(1)), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn relaxed_identity_examples() {
        let l = n5();
        assert!(!generalized_modularity_holds(&l, e(2), e(1), e(1)));
        for x in l.elements() {
            for y in l.elements() {
                assert!(generalized_modularity_holds(&l, l.bottom(), x, y));
            }
        }
    }

    #[test]
    fn generalized_requires_avoiding_m() {
        let l = b2();
        assert!(matches!(build_certificate_generalized(&l, e(1), e(1), e(2)), Err(Error::PreconditionViolated(_))));
        let c = build_certificate_generalized(&l, e(0), e(2), e(1)).unwrap();
        assert_eq!(c, build_certificate(&l, e(0), e(1), e(2)).unwrap());
    }

    #[test]
    fn tampering_is_detected() {
        let l = b2();
        let good = build_certificate(&l, e(0), e(1), e(2)).unwrap();

        let mut bad = good.clone();
        bad.phi1[0].1 = e(3);
        let defect = verify_certificate(&l, &bad).unwrap_err();
        assert_eq!(defect.to_string(), "image intersects up-set");

        let mut bad = good.clone();
        bad.phi1[0].1 = e(0);
        assert_eq!(verify_certificate(&l, &bad).unwrap_err().to_string(), "not injective");

        let mut bad = good.clone();
        bad.phi2.clear();
        assert_eq!(verify_certificate(&l, &bad), Err(CertificateDefect::DomainNotPartition));

        let mut bad = good;
        bad.witness = e(3);
        assert_eq!(verify_certificate(&l, &bad), Err(CertificateDefect::WitnessNotJoinIrreducible));
    }
}
