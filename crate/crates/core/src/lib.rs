//! Exact and certified arithmetic for experiments with torus rotations,
//! skew-product towers, Bohr windows, return sets, and the combinatorics
//! of difference sets.
//!
//! Everything that claims to be certified is computed with arbitrary-precision
//! rationals; quantities that cannot be represented exactly (irrational
//! rotation numbers, trigonometric values) are carried as rational midpoints
//! with rational radius bounds, and every verdict built on top of them is
//! one-sided: `In`/`Out` certificates remain valid whatever the true value is
//! inside the enclosure.

pub mod cfrac;
pub mod combinatorics;
pub mod config;
pub mod counterexample;
pub mod dynsys;
pub mod error;
pub mod rational;
pub mod recurrence;
pub mod torus;

mod trig;

pub use cfrac::{AlphaSpec, ContinuedFraction, GrowthMode};
pub use error::{Error, Result};
pub use rational::{Bounds, Rational};
pub use torus::{BasePoint, ProductPoint, TorusPoint};

pub use dynsys::{BaseSystem, IteratedSkewState, SkewMap, SkewTower};
pub use recurrence::{BohrSpec, CertifiedMembership, WindowSet};
