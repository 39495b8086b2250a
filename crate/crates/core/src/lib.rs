//! Exact closure of the set of rational points on a sphere whose center has
//! algebraic coordinates.
//!
//! The closure of `S ∩ Q^n` is computed as the intersection of `S` with a
//! rational affine subspace through the base point `b`. That subspace comes
//! from the rational points of the hyperplane `⟨γ − b, x − b⟩ = 1` (taken
//! over every conjugate of the center `γ` at once) pushed through the
//! inversion centered at `b`.
//!
//! Module map:
//!
//! - [`numberfield`]: exact arithmetic in `Q(α)` and certified embeddings
//! - [`linalg`]: exact RREF, affine frames, defining pairs, projections
//! - [`geometry`]: quadratic forms, sphere specs, inversions, residuals
//! - [`closure`]: the defining system and the closure object
//! - [`sampler`]: rational points on the sphere and numeric verification
//! - [`schema`]: JSON problem files and output documents
//! - [`cli`]: command implementations behind the `sphere-closure` binary

pub mod ball;
pub mod cli;
pub mod closure;
pub mod error;
pub mod factor;
pub mod geometry;
pub mod linalg;
pub mod numberfield;
pub mod poly;
pub mod rational;
pub mod sampler;
pub mod schema;

pub use error::{Error, Result};
pub use numberfield::{embeddings, make_field, EmbeddingSet, FieldElement, NumberField, RootBox};
pub use poly::PolyQ;
pub use rational::Rational;
