//! Exact symbolic engine for the composition series of representations of
//! classical p-adic groups induced from a ladder representation on the
//! general-linear part and a cuspidal representation on the classical part.
//!
//! The engine works entirely in Grothendieck groups with exact half-integer
//! exponent arithmetic; there is no floating point and no tolerance anywhere.
//! The main entry points:
//!
//! - [`Instance::decompose`]: the full semisimplification of the induced
//!   representation, with its reducibility criterion, tempered constituent,
//!   and Langlands data for every non-tempered constituent.
//! - [`mstar_ladder`] / [`mu_star_induced`]: the closed-form Jacquet
//!   expansions on the general-linear and classical sides.
//! - [`ladder_to_standard`]: the signed determinantal expansion of a ladder
//!   label in the standard basis, kept independent of the cut enumeration so
//!   it can serve as an oracle.
//! - [`verify`]: exhaustive small-instance checks of the identities above.
//!
//! Labels serialize to canonical JSON (sorted terms, fixed field order), so
//! byte-for-byte golden files are stable across runs and platforms.

pub mod classical;
pub mod decompose;
pub mod error;
pub mod gl;
pub mod halfint;
pub mod render;
pub mod segment;
pub mod verify;

pub use classical::{
    mu_star_induced, ordered_cut_pairs, sp_normalize, ConstituentLabel, MuStarTerm, SPLabel,
    Support, TemperedPart,
};
pub use decompose::{CaseTag, Constituent, Decomposition, Instance, Role};
pub use error::{Error, Result};
pub use gl::{
    expand_ladder_label, ladder_to_standard, mstar_ladder, mstar_segment, mstar_standard,
    mstar_standard_linear, twisted_mstar, twisted_mstar_label, GLPairVirtual, GLVirtual,
    LadderData, MultiSegment,
};
pub use halfint::HalfInt;
pub use render::Style;
pub use segment::{ClassicalBase, CuspidalLine, Segment};

/// Serializes a value to the canonical pretty JSON used for golden files:
/// two-space indentation, struct fields in declaration order, collections in
/// canonical sorted order, no trailing newline.
pub fn canonical_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("engine types always serialize")
}
