//! Split objects, pushforwards, E₂ contribution grids and verdicts.
//!
//! Differentials are never modelled as maps. A grid is only turned into a
//! verdict when a purely positional argument shows that no differential can
//! connect two of its entries; otherwise the verdict is `Indeterminate`.

mod grid;
mod split;
mod verdict;

pub use grid::{
    degeneration_certificate, Contribution, ContributionGrid, DegenerationCertificate, Position,
    Rank, SupportLabel, NORMALIZATION,
};
pub use split::{generic_fiber_pushforward, pushforward_split, SplitObject, Summand};
pub use verdict::{assemble_verdict, Verdict};
