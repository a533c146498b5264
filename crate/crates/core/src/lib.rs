//! Finite anti-rectangular Abel-Grassmann bands.
//!
//! An AG-groupoid satisfies `(xy)z = (zy)x`; an anti-rectangular AG-band
//! (ARAGB) additionally satisfies `x = xx` and `(xy)x = y`. Finite ARAGBs
//! exist exactly at orders `4^n`, one per order up to isomorphism. This
//! crate builds them, checks laws on Cayley tables, finds (anti-)isomorphisms,
//! verifies band decompositions and enumerates finite models of small
//! varieties.
//!
//! - [`groupoid`]: Cayley tables and primitive queries.
//! - [`law`]: words, identities, presets and exhaustive law checking.
//! - [`constructions`]: `G`, the extension, the tower `G_n`, the countable
//!   band's products, the self-embedding sub-bands and the 16-element band
//!   of copies.
//! - [`morphisms`]: isomorphism search, bijection census and the inductive
//!   isomorphism onto `G_n`.
//! - [`decomposition`]: band-of-bands checks and partitions into copies of `G`.
//! - [`search`]: finite model enumeration up to isomorphism.
//! - [`cli`]: the `agband` command line.

pub mod cli;
pub mod constructions;
pub mod decomposition;
mod error;
pub mod groupoid;
pub mod law;
pub mod morphisms;
pub mod search;

pub use error::{Error, Result};
pub use groupoid::FiniteGroupoid;
