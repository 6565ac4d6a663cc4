//! Decides intrinsic knottedness and linking of graphs by solving
//! linking-number equations over a fixed straight-line diagram.
//!
//! The chain is: [`graph`] (cycles, intersections) → [`diagram`] (a
//! canonical embedding and linking numbers) → [`quads`] (quads and their
//! equations) → [`search`] (lexicographic search over equation selections,
//! backed by [`linsys`]). [`il`] answers the linking question with one
//! system.

pub mod bits;
pub mod certificate;
pub mod diagram;
pub mod generators;
pub mod graph;
pub mod il;
pub mod linsys;
pub mod pipeline;
pub mod quads;
pub mod search;
