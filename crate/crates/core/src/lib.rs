//! Cost allocation for cooperative games on restricted coalition
//! families.
//!
//! A game assigns an exact rational worth to each coalition in a family
//! `C` that need not contain every subset of the player set. This crate
//! classifies such families (semi-algebra, hierarchy, full span), builds
//! the unique minimal facility representation of a game, and computes
//! the equitable solution — the extension of the Shapley value obtained
//! by splitting each facility's cost equally over its users. Everything
//! runs in exact rational arithmetic so identities hold with equality,
//! not tolerance.
//!
//! The `coalition-forge` binary exposes each operation as a subcommand
//! over JSON documents; see the crate README for the formats.

pub mod cli;
pub mod error;
pub mod exactlin;
pub mod guard;
pub mod io;
pub mod model;
pub mod rational;
pub mod representation;
pub mod sample;
pub mod solution;
pub mod structure;

pub use error::{Error, Result};
pub use model::{
    Allocation, Assignment, Coalition, CoalitionFamily, Facility, Game, PlayerSet,
};
pub use rational::Rational;
