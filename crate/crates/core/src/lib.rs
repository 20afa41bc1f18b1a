//! Regular two-level fractional factorial designs built by doubling.
//!
//! The crate covers construction ([`design`], [`catalog`]), exact
//! wordlength patterns and moment identities ([`wlp`]), the
//! complementary-design relations between a projection and its deleted
//! columns ([`complementary`]), and minimum-aberration projection search
//! with its supporting bounds ([`search`]). [`suites`] bundles the checks
//! into named verification reports.

pub mod catalog;
pub mod complementary;
pub mod design;
pub mod error;
pub mod gf2core;
mod json;
pub mod search;
pub mod suites;
pub mod wlp;

pub use design::{
    design_from_defining_words, design_from_labels, ComplementSplit, Design, DesignFile, DoubledDesign,
    DoublingPedigree, FrequencyVector,
};
pub use error::{Error, Result};
pub use gf2core::{BitLabel, ExactRational};
pub use wlp::{Resolution, SeqKey, WordlengthPattern};
