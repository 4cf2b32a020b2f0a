//! Finite lattices, finite groups and their subgroup lattices, with
//! certificates for the union-closed sets condition: some join-irreducible
//! `a` of a lattice `L` has `2·|[a, 1]| <= |L|`.

pub mod analysis;
pub mod certificate;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod lattice;
pub mod subgroups;
pub mod suite;

pub use analysis::{CertificationPath, FranklReport};
pub use certificate::{verify_certificate, InjectionCertificate};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupSpec, Subgroup};
pub use lattice::{ElementId, FiniteLattice, Interval};
pub use subgroups::{GroupCertification, GroupFranklReport, SubgroupLattice};
