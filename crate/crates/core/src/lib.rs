//! Orbit-closure relations and almost periodicity on finite and symbolic spaces.
//!
//! The finite layer ([`finspace`], [`relation`], [`checkers`], [`actions`])
//! decides every notion exactly on finite topological spaces. [`symspace`]
//! handles two countable non-Hausdorff compact systems by case analysis with
//! certificates, and [`flowdemo`] integrates an explicit planar flow on the
//! closed unit disk.

pub mod actions;
pub mod checkers;
pub mod error;
pub mod finspace;
pub mod flowdemo;
pub mod gallery;
pub mod instances;
pub mod io;
pub mod pointset;
pub mod relation;
pub mod symspace;

pub use error::{Error, Result};
pub use finspace::{all_topologies, FinSpace, SeparationProfile};
pub use pointset::PointSet;
pub use relation::Relation;
