//! The product `G = base × Z^m` with `base = F_n` or `π₁(Σ_g)`.
//!
//! Every endomorphism of `G` has one of two canonical shapes:
//!
//! * first kind `(φ, Q, P)`: `u t^a ↦ φ(u) t^{aQ + ūP}`;
//! * second kind `(z, l, h, Q, P)`: `u t^a ↦ z^{a·l + ū·h} t^{aQ + ūP}`.
//!
//! Compositions of mixed kinds are kept as pointwise composites.

mod ambient;
mod endo;
mod fix;
mod oracle;
pub mod random;
mod types;

pub use ambient::{AmbientSpec, Base, ProdElement};
pub use endo::{compose, detect_inner, is_proper_power, EndoType1, EndoType2, Endomorphism, Verdict3};
pub use fix::{defect, fix, fix_type2, infer_fix_phi, verify_fix_phi, FixPhi, FixReport, PPart};
pub use oracle::{brute_force_fix, enumerate_elements, exclusion_violation, ORACLE_BUDGET};
pub use types::{IndexValue, SubgroupCore, SubgroupType};
