//! Endomorphism calculus for `F_n × Z^m` and `π₁(Σ_g) × Z^m`.
//!
//! The crate is organised bottom-up:
//!
//! * [`intlin`]: exact integer linear algebra (Smith form, left kernels,
//!   quotient lattices), generic over the integer scalar.
//! * [`freegrp`]: reduced words, Stallings foldings, Schreier kernels.
//! * [`surfgrp`]: Dehn's algorithm and Reidemeister–Schreier for closed
//!   surface groups.
//! * [`prodgrp`]: elements, endomorphisms and fixed subgroups of the product.
//! * [`classify`]: classification tables, witness endomorphisms and the
//!   Hopfian / co-Hopfian demonstrations.
//! * [`text`]: the line-oriented file and literal syntax used by the CLI.

pub mod classify;
pub mod error;
pub mod freegrp;
pub mod intlin;
pub mod prodgrp;
pub mod surfgrp;
pub mod text;

pub use classify::{classify, enumerate_types, verify_witness, witness, Verdict, WitnessRecipe};
pub use error::{Error, Result};
pub use freegrp::{FreeHomo, FreeWord, StallingsGraph};
pub use prodgrp::{
    AmbientSpec, EndoType1, EndoType2, Endomorphism, FixPhi, FixReport, ProdElement, SubgroupType,
    Verdict3,
};
pub use surfgrp::SurfaceGroupSpec;

/// Arbitrary precision integer used by every group-level computation.
pub type Int = num_bigint::BigInt;

/// Integer matrix over [`Int`].
pub type IntMatrix = intlin::Matrix<Int>;

/// Integer row vector over [`Int`].
pub type IntVector = Vec<Int>;

/// Smith decomposition over [`Int`].
pub type IntSnf = intlin::SnfDecomposition<Int>;

/// Quotient lattice structure over [`Int`].
pub type IntQuotient = intlin::QuotientStructure<Int>;


