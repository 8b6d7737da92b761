//! Evanescent polynomial identities in commutative nonassociative algebras.

pub mod baric;
pub mod cli;
pub mod homgen;
pub mod magma;
pub mod peirce;
pub mod poly;
pub mod syntax;
pub mod trainsgen;
