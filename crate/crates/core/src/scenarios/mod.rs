//! Generators for the three worked examples: the standard flip, the Mukai
//! flop and the Poincaré kernel on an abelian variety.
//!
//! Each generator produces the finite data (contribution grids, cohomology
//! tables, support-locus tables) consumed by [`crate::transform`] and
//! [`crate::criteria`]. Every vanishing the generators rely on is re-checked
//! with [`crate::transform::pushforward_split`] rather than assumed.

mod abelian;
mod flip;
mod flop;

pub use abelian::{
    abelian_cohomology, isogeny_degree, poincare_ff_check, poincare_gv_scenario,
    poincare_support_loci, PoincareReport, PolarizationType,
};
pub use flip::{flip_grid, flip_tor_table, flip_verdict, FlipParams, Tor0Descriptor, TorTable};
pub use flop::{flop_grid, flop_higher_tors, flop_verdict, FlopParams};

/// Ground-field characteristic assumed by every scenario.
pub const CHAR_ASSUMPTION: &str = "zero";
