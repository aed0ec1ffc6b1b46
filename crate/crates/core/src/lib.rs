//! Exact identities, normal forms and polynomial images for the
//! null-filiform Leibniz algebras `L_n` and `L_inf`.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod images;
pub mod model;
pub mod oracle;
pub mod rewrite;
pub mod scalar;
pub mod term;
pub mod text;
pub mod verify;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use scalar::{Domain, Fp, Scalar};
pub use term::{x, FreePolynomial, LNPolynomial, LeftNormedWord, MultiDegree, Term, VarIndex};
