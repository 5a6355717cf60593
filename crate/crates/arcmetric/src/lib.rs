//! Lengths of arcs and curves on bordered hyperbolic surfaces, the arc
//! metric on Teichmüller space, and measured laminations with the data
//! needed to study its horofunction boundary.
//!
//! The numerical core is [`hyptrig`]. Surfaces and classes live in
//! [`topology`], points of Teichmüller space in [`geometry`], laminations in
//! [`lamination`]. [`metric`] evaluates distances and horofunctions over a
//! finite panel of classes, and [`asymptotics`] drives the scaling-path
//! experiments.
//!
//! Panel sweeps run on rayon by default; build without the `parallel`
//! feature, or pass [`Exec::Sequential`], for a single-threaded run.

// `!(x > 0.0)` is how input checks reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod hyptrig;
pub mod lamination;
pub mod metric;
pub mod topology;

pub use error::{Error, Result};
pub use exec::Exec;
