use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({i},{j}) is out of range")]
    OutOfRange { i: usize, j: usize },
    #[error("associativity fails at ({i},{j},{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("semigroup must have at least one element")]
    Empty,
    #[error("labels: expected {expected} names, found {found}")]
    LabelCount { expected: usize, found: usize },

    #[error("semigroup is not inverse")]
    NotInverse,
    #[error("semigroup is not a group")]
    NotAGroup,
    #[error("semigroup is not a semilattice")]
    NotASemilattice,
    #[error("elements {a} and {b} have no greatest lower bound")]
    NotAMeetSemilattice { a: usize, b: usize },
    #[error("order is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("semilattice is not a chain")]
    NotAChain,
    #[error("bad morphism ({e},{f}): {reason}")]
    BadMorphism { e: usize, f: usize, reason: String },
    #[error("eta is not a partial homomorphism at ({x},{y})")]
    NotPartialHom { x: usize, y: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("image of atom {{{0}}} is not a singleton idempotent")]
    AtomImageNotSingletonIdempotent(usize),
    #[error("no base-bijection candidate for element {0}")]
    NoCandidate(usize),
    #[error("ambiguous base-bijection candidates for element {0}")]
    AmbiguousCandidate(usize),
    #[error("image of idempotent {0} is not an identity map")]
    IdempotentImageNotIdentityMap(usize),
    #[error("domain/range of image of element {0} disagree with the lattice map")]
    DomainRangeMismatch(usize),
    #[error("monogenic image of element {0} does not have a unique generator")]
    NonUniqueGenerator(usize),
    #[error("group of even order {0}; expected odd order")]
    EvenOrder(usize),
    #[error("restriction of element {0} is not a partial automorphism")]
    RestrictionNotPa(usize),
    #[error("map image of element {0} is not an element of the target monoid")]
    ImageNotInTarget(usize),
    #[error("map is not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("partial bijections over different carriers cannot be composed")]
    CarrierMismatch,
    #[error("carrier of order {order} exceeds the limit of {limit}")]
    CarrierTooLarge { order: usize, limit: usize },

    #[error("enumeration exceeded the size cap of {cap} elements")]
    SizeCapExceeded { cap: usize },
    #[error("order {0} is too large for the requested census")]
    OrderTooLarge(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
