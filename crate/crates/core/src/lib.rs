//! Exact-arithmetic engine for deciding full faithfulness of Fourier-Mukai
//! functors from split cohomological data.
//!
//! The crate is organised bottom-up:
//!
//! - [`cohomology`]: line-bundle cohomology on products of projective spaces
//!   (Bott formula, Künneth convolution, Serre duality, Euler characteristics)
//!   together with an independent Čech-complex oracle.
//! - [`transform`]: split objects, pushforwards along projections, E₂
//!   contribution grids, a positional degeneration certificate and verdict
//!   assembly.
//! - [`criteria`]: executable generic-vanishing, weak-index, condition-(c)
//!   and strong-simplicity checkers.
//! - [`scenarios`]: generators for the standard flip, the Mukai flop and the
//!   Poincaré kernel on abelian varieties.
//!
//! All dimensions are unbounded exact integers; nothing here touches floating
//! point.

pub mod cohomology;
pub mod criteria;
pub mod decimal;
pub mod error;
pub mod scenarios;
pub mod transform;

pub use error::{Error, Result};
