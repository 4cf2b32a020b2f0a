use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a lattice needs at least one element")]
    EmptyLattice,
    #[error("element index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cover pair ({lower}, {upper}) does not respect the index order")]
    NotLinearExtension { lower: usize, upper: usize },
    #[error("elements {a} and {b} have no {bound}")]
    NotALattice { a: usize, b: usize, bound: &'static str },
    #[error("cover graph is disconnected, so there is no global top or bottom")]
    Disconnected,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("{lo} is not below {hi}")]
    NotComparable { lo: usize, hi: usize },
    #[error("lattice has {n} element(s); at least 2 are required")]
    TooSmall { n: usize },
    #[error("lattice has no join-irreducible elements")]
    NoJoinIrreducibles,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),
    #[error("enumeration size {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad group spec: {0}")]
    BadSpec(String),
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error("interval [H, G] is trivial because H = G")]
    TrivialInterval,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("group is not solvable")]
    NotSolvable,
}
