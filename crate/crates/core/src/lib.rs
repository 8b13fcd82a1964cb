//! Group gradings of linear categories presented by quivers with relations.
//!
//! Finitely generated abelian groups live in [`grpkit`], presented categories
//! and functors in [`linrep`], gradings and homogeneous walks in [`grading`],
//! Schurian-generated structure in [`schur`], smash products in [`smash`] and
//! morphisms of gradings in [`morph`].

pub mod grading;
pub mod grpkit;
pub mod linrep;
pub mod morph;
pub mod schur;
pub mod smash;

pub use grading::{validate_grading, BasisRef, Grading, GradingError, Walk};
pub use grpkit::{AbelianGroup, GroupElement, GroupError, GroupHom, GroupPresentation};
pub use linrep::{
    build_category, FieldSpec, Functor, LinComb, LinrepError, Morphism, Path, PresentedCategory, Quiver, Scalar,
};
pub use morph::{GradingFamily, GradingMorphism, MorphError};
pub use schur::{SchurError, UniversalGrading};
pub use smash::{SmashCategory, SmashError};
