//! Completed Ext-functors and complete cohomology of finite groups.
//!
//! The crate computes Mislin completions of `Ext_{R[G]}(A, -)` for a finite
//! group `G` and `R = Z` or `F_p` through four independent constructions
//! (satellites, resolutions, stable homs, Vogel's almost chain maps) plus the
//! `T_a` family, together with induced maps, signed connecting maps and the
//! comparison isomorphisms between them.

pub mod abelian;
pub mod completion;
pub mod error;
pub mod ext;
pub mod group;
pub mod horseshoe;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod satellite;
pub mod scalar;
pub mod job;

pub use num_bigint::BigInt;

/// Integer scalar used throughout.
pub type Int = BigInt;
pub type IntegerMatrix = linalg::Matrix<Int>;
pub type FieldMatrix<const P: u64> = linalg::Matrix<scalar::Fp<P>>;
pub type F2Matrix = FieldMatrix<2>;

pub use abelian::{AbGroup, AbMap, Subquotient};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use module::{CoefficientRing, GModule, GModuleMap};
pub use resolution::Resolution;
