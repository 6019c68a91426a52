//! Exact-arithmetic certificates that tangent bundles of weak Del Pezzo
//! surfaces of degree 4 are almost nef.
//!
//! A surface is described by a [`configuration::SurfaceConfig`]: chains of
//! infinitely near points in the plane together with the collinear triples.
//! Everything downstream is integer or rational lattice arithmetic.

pub mod bundles;
pub mod certifier;
pub mod configuration;
pub mod curves;
pub mod lattice;
mod linalg;

pub type Rational = num_rational::Ratio<i64>;

pub use configuration::{validate, ConfigDraft, SurfaceConfig};
pub use lattice::{DivisorClass, Lattice, PointRef};
