use thiserror::Error;

use crate::poset::{Elem, QfType};

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation closes into a cycle through element {0}")]
    CycleDetected(Elem),
    #[error("unknown element {0}")]
    UnknownElement(Elem),
    #[error("element {0} listed more than once")]
    DuplicateElement(Elem),
    #[error("carrier of {requested} elements exceeds the cap of {cap}")]
    SizeCap { requested: usize, cap: usize },
    #[error("map is not an isomorphism on the type's base: {0}")]
    NotIsomorphism(String),
    #[error("map is not injective or not functional at {0}")]
    NotInjective(Elem),
    #[error("order violated between {0} and {1}")]
    OrderViolation(Elem, Elem),
    #[error("type mismatch: pushed-forward type {pushed:?} differs from target type {target:?}")]
    TypeMismatch { pushed: Box<QfType>, target: Box<QfType> },
    #[error("domain conflict: {0}")]
    DomainConflict(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("search bounds exhausted at stage {stage} (element {element})")]
    BoundExhausted { stage: usize, element: Elem },
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("search budget of {max_nodes} nodes exhausted")]
    ResourceLimit { max_nodes: u64 },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
