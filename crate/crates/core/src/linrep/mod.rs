//! Quivers with relations over exact fields and the linear categories they present.

mod category;
mod field;
mod functor;
mod linalg;
mod quiver;

pub use category::{build_category, HomSpace, Morphism, PresentedCategory};
pub use field::{format_scalar, parse_rational, FieldSpec, Scalar};
pub use functor::{build_functor, Functor};
pub use linalg::{Echelon, Matrix};
pub use quiver::{enumerate_paths, Arrow, LinComb, Path, Quiver};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinrepError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in the ground field: {0}")]
    DivisionByZero(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("not concatenable: {0}")]
    NotConcatenable(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("relation {relation} is not admissible: {detail}")]
    NonAdmissible { relation: usize, detail: String },
    #[error("the quiver has an oriented cycle, so a length bound is required")]
    BoundRequired,
    #[error("bound {bound} is invalid: path {path} is not in the ideal")]
    BadBound { bound: usize, path: String },
    #[error("cannot compose {second} after {first}")]
    NotComposable { first: String, second: String },
    #[error("not a functor: {0}")]
    NotFunctorial(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
