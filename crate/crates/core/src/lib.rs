//! Exact computations around the K-theory of crossed products by cyclic
//! `p`-groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: integer matrices, Smith normal form, finitely generated abelian groups;
//! - [`complexes`]: chain complexes of free modules, Koszul-signed tensor powers,
//!   coinvariants and induced actions on homology;
//! - [`repring`]: the representation ring `Z[x]/(xⁿ−1)`, the Euler class `ξ`,
//!   cyclotomic polynomials and `ξ`-characters of finite groups;
//! - [`localize`]: `ξ`-localization, the `S_ξ` splitting and `p`-completion at the level of `π₀`;
//! - [`kengine`]: the end-to-end K-theory pipelines and the prime table;
//! - [`selfcheck`]: the verification suite behind `crossedk selfcheck`.

pub mod cli;
pub mod complexes;
mod error;
pub mod exact;
pub mod int;
pub mod kengine;
pub mod localize;
pub mod repring;
pub mod selfcheck;

pub use error::Error;
pub use exact::{FgAbelianGroup, IntegerMatrix, PCompletedGroup};
pub use int::Integer;
