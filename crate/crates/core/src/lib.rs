//! Exact diagram chasing in homological categories.
//!
//! Constructions are written once against [`Category`] and run on two
//! backends: finitely generated abelian groups ([`fgab`]) and finite
//! pointed sets ([`pset`]). The abelian backend is generic over its integer
//! scalar; the aliases below fix it to arbitrary precision.

pub mod category;
pub mod error;
pub mod fgab;
pub mod homology;
pub mod lambek;
pub mod lattice;
pub mod matrix;
pub mod nomura;
pub mod pset;
pub mod scalar;
pub mod verdict;

pub use category::{Category, CategoryExt, Factorization, FiveColumnDiagram, Square, ThreeByThreeIsos, TwoSquareDiagram};
pub use error::{ChaseError, Hypothesis, Result};
pub use fgab::{FgabCategory, FgabMorphism, FgabObject, LambekSide};
pub use pset::{PSetCategory, PSetMorphism, PSetObject};
pub use scalar::IntScalar;
pub use verdict::{Clause, Verdict};

pub type Int = num_bigint::BigInt;
pub type Fgab = FgabCategory<Int>;
pub type Group = FgabObject<Int>;
pub type GroupMap = FgabMorphism<Int>;
pub type IntMatrix = matrix::Matrix<Int>;
pub type GroupInvariant = lattice::AbelianInvariant<Int>;
