use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::grid::{
    degeneration_certificate, Contribution, ContributionGrid, Position, Rank, SupportLabel,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    FullyFaithful,
    NotFullyFaithful {
        witness: Contribution,
        total_degree: i64,
    },
    /// Degeneration could not be certified; these positions may cancel.
    Indeterminate {
        surviving: Vec<Position>,
    },
}

impl Verdict {
    pub fn is_fully_faithful(&self) -> bool {
        matches!(self, Verdict::FullyFaithful)
    }

    pub fn witness(&self) -> Option<(&Contribution, i64)> {
        match self {
            Verdict::NotFullyFaithful {
                witness,
                total_degree,
            } => Some((witness, *total_degree)),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FullyFaithful => write!(f, "FullyFaithful"),
            Verdict::NotFullyFaithful {
                witness,
                total_degree,
            } => {
                write!(
                    f,
                    "NotFullyFaithful (witness degree {total_degree}: {witness})"
                )
            }
            Verdict::Indeterminate { surviving } => {
                write!(f, "Indeterminate (uncertified positions:")?;
                for p in surviving {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn is_target_shape(c: &Contribution) -> bool {
    c.support() == SupportLabel::DiagonalX
        && c.position() == (Position { p: 0, q: 0 })
        && *c.rank() == Rank::Exact(BigUint::one())
}

/// Compares a grid against the fully faithful target: a single rank-one
/// `DiagonalX` entry at `(0, 0)`.
///
/// When several extra entries exist, the witness is the one closest to the
/// target degree (smallest `|p + q|`, then smallest tor index).
pub fn assemble_verdict(grid: &ContributionGrid) -> Result<Verdict> {
    let origin = Position { p: 0, q: 0 };
    if !grid
        .entries()
        .iter()
        .any(|c| c.support() == SupportLabel::DiagonalX && c.position() == origin)
    {
        return Err(Error::InvalidGrid("no DiagonalX entry at (0, 0)".into()));
    }

    let cert = degeneration_certificate(grid);
    if !cert.certified {
        let mut surviving: Vec<Position> =
            cert.unblockable.iter().flat_map(|&(a, b)| [a, b]).collect();
        surviving.sort();
        surviving.dedup();
        return Ok(Verdict::Indeterminate { surviving });
    }

    let anchor = grid.entries().iter().position(is_target_shape);
    let witness = grid
        .entries()
        .iter()
        .enumerate()
        .filter(|&(idx, _)| Some(idx) != anchor)
        .map(|(_, c)| c)
        .min_by_key(|c| {
            (
                c.total_degree().abs(),
                c.tor_index(),
                c.push_degree(),
                c.support(),
            )
        });

    Ok(match witness {
        None => Verdict::FullyFaithful,
        Some(c) => Verdict::NotFullyFaithful {
            witness: c.clone(),
            total_degree: c.total_degree(),
        },
    })
}
