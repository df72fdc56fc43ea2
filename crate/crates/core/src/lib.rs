//! Exact arithmetic for deciding when a stable bundle on a polarized surface
//! restricts to a stable bundle on a curve.
//!
//! The crate is organised bottom-up:
//!
//! - [`surface`]: Picard lattices, intersection form, ampleness and genus.
//! - [`chern`]: twisted Chern characters, slopes, discriminants, Riemann-Roch.
//! - [`walls`]: central charges, Bridgeland slopes and semicircular walls.
//! - [`criteria`]: the restriction criteria and their comparison tables.
//! - [`quadratic`] and [`p2x`]: exceptional bundles on the plane, the
//!   Drézet-Le Potier curve and the orthogonal invariants of a character.
//! - [`cohomology`]: Betti numbers of general sheaves, their restrictions to
//!   curves and Brill-Noether numbers.
//!
//! All verdicts are computed over `BigRational`; the only irrational numbers
//! that occur are square roots, handled by [`quadratic::QuadraticNumber`]
//! with exact sign determination.

pub mod chern;
pub mod cohomology;
pub mod criteria;
pub mod error;
pub mod p2x;
pub mod quadratic;
pub mod rational;
pub mod surface;
pub mod walls;

pub use chern::{ChernCharacter, TwistContext};
pub use error::{Error, Result};
pub use quadratic::QuadraticNumber;
pub use rational::Q;
pub use surface::{DivisorClass, SurfaceKind, SurfaceModel};
pub use walls::{StabilityPoint, Wall, WallKind};
