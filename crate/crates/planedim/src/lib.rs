//! Realizers for posets whose cover graph comes with a planar embedding.
//!
//! The crate turns a poset together with a rotation system of its cover
//! graph into a verified realizer of size at most `64 s^6 (s+3)^2 + 12`,
//! where `s` is the standard-example number. Alongside the construction it
//! ships exact oracles for dimension and standard-example number on small
//! inputs, and generators for the usual benchmark families.
//!
//! Modules, bottom up:
//! - [`poset`]: posets, incomparable pairs, alternating cycles, reversal, oracles.
//! - [`embed`]: dart-based rotation systems, orderings of darts and paths, regions.
//! - [`instance`]: rooted instances, unfolding, contraction, leftmost paths, shadows.
//! - [`goodinst`]: risky and dangerous pairs, addresses, good sub-instances.
//! - [`auxgraph`]: exposed paths, extreme paths, the six auxiliary digraphs, colouring.
//! - [`pipeline`]: composition of coverings and the end-to-end realizer.
//! - [`gen`]: generators for standard examples, Kelly posets, wheels and random planar posets.
//! - [`io`]: JSON file formats and DOT export.

pub mod auxgraph;
pub mod error;
pub mod embed;
pub mod gen;
pub mod goodinst;
pub mod instance;
pub mod io;
pub mod pipeline;
pub mod poset;

pub use error::{Error, Result};
