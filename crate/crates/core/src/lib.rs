//! Deterministic diversification toolkit for metaheuristic search.
//!
//! Builds "opposite" solutions and diverse collections around a seed for
//! binary, bounded-integer, bounded-continuous and permutation spaces, and
//! projects generated points back onto structured feasible regions.
//!
//! - [`opposition`]: reflected, contracted-farthest and max-min opposites.
//! - [`genbin`]: binary diversification generators.
//! - [`genperm`]: interleaving permutation generator.
//! - [`lift`]: diverse bounded vectors from a binary collection.
//! - [`project`]: proximity objectives and closed-form projections.
//! - [`diversity`]: distances, collection reports and greedy max-min subsets.
//!
//! Every operation is a pure function; random choices take an explicit
//! [`RngSeed`] and are recorded in the collection [`Provenance`].

pub mod collection;
pub mod diversity;
pub mod error;
pub mod genbin;
pub mod genperm;
pub mod io;
pub mod lift;
pub mod opposition;
pub mod project;
pub mod rng;
pub mod types;
pub mod validate;

pub use collection::{DiverseCollection, Provenance, RngRecord};
pub use error::{Error, Result};
pub use rng::{RngSeed, RNG_ALGORITHM};
pub use types::{BinaryVector, BoundedInterval, BoundedVector, Permutation, Solution};
pub use validate::{ValidationReport, Violation, ViolationKind};
