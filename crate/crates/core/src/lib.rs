//! Computational engine for spherical 5-space forms and related geometry.
//!
//! The crate has four largely independent pillars:
//!
//! * [`group`] — an exact finite-group engine for metacyclic presentations
//!   `<A, B | A^m = B^n = 1, BAB^-1 = A^r>` together with the structural
//!   predicates (cyclic 3p-subgroups, index-3 normal cyclic subgroups,
//!   semi-centers, ...) that classify spherical 5-space-form groups.
//! * [`rep`] — exact rational-angle 6x6 block-rotation representations of
//!   those groups on the unit 5-sphere, freeness decisions, and the metric
//!   geometry of the quotients (injectivity radius, volume, collapse ratio).
//! * [`torus`] — integer-lattice analysis of linear torus actions on the
//!   5-sphere: isotropy groups via Smith normal form, orbit strata,
//!   pseudo-freeness, and the fixed-sphere rank-sum identity.
//! * [`lens`] — the q-extent machinery on 3-dimensional lens spaces:
//!   quotient geodesic distance, stochastic extent maximization (lower
//!   bounds) and the closed-form analytic upper bound.
//!
//! Everything is deterministic: randomized optimizers take explicit seeds
//! and produce identical results for identical inputs.
//!
//! The crate is `no_std` (with `alloc`); the `std` feature only toggles
//! `std`-backed conveniences in downstream error handling.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod angle;
pub mod group;
pub mod harness;
pub mod lens;
pub mod rep;
pub mod snf;
pub mod torus;

pub use angle::RationalAngle;
pub use group::{GroupElement, MetacyclicPresentation, Subgroup};
pub use lens::{Configuration, ExtentEstimate, LensSpace};
pub use rep::{BlockRotationElement, LinearSpaceForm, SpherePoint};
pub use torus::{IsotropyDescriptor, OrbitStratum, WeightMatrix};
