use thiserror::Error;

use crate::lattice::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is not a partial order: {0}")]
    NotAPoset(String),

    #[error("elements {0} and {1} have no unique {2}")]
    NotALattice(Elem, Elem, &'static str),

    #[error("structure has no elements; a lattice needs a bottom and a top")]
    EmptyLattice,

    #[error("{what} has {size} elements, above the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("lattice is not distributive: x={0}, y={1}, z={2} violate x∧(y∨z) = (x∧y)∨(x∧z)")]
    NotAFrame(Elem, Elem, Elem),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("map is not monotone: {0} ≤ {1} but their images are not ordered")]
    NotMonotone(Elem, Elem),

    #[error("maps are not adjoint: lower({source_elem}) ≤ {target_elem} disagrees with {source_elem} ≤ upper({target_elem})")]
    AdjunctionFailure { source_elem: Elem, target_elem: Elem },

    #[error("map is not a locale morphism: {0}")]
    NotLocaleMorphism(String),

    #[error("point map is not continuous: preimage of open set {0:?} is not open")]
    NotContinuous(Vec<usize>),

    #[error("family of sets is not a T0 topology: {0}")]
    NotATopology(String),

    #[error("joins of restricted elements are not restricted (JR fails)")]
    JRViolated,

    #[error("meets of induced elements are not induced (MI fails); witness {witness:?}")]
    MIViolated { witness: Vec<Elem> },

    #[error("precondition {0} does not hold")]
    ConditionViolated(&'static str),

    #[error("J is not admissible: {0}")]
    JNotAdmissible(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
