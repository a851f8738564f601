use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::MultiDegree;
use crate::decimal;
use crate::{Error, Result};

/// Where a contribution is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SupportLabel {
    /// The diagonal Δ_X, carrying the canonical bundle.
    DiagonalX,
    /// Product of the two exceptional centres (ℙ^l×ℙ^l, ℙ×ℙ, …).
    CenterProduct,
    Ambient,
    Zero,
}

impl fmt::Display for SupportLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SupportLabel::DiagonalX => "DiagonalX",
            SupportLabel::CenterProduct => "CenterProduct",
            SupportLabel::Ambient => "Ambient",
            SupportLabel::Zero => "Zero",
        };
        f.write_str(s)
    }
}

/// Rank of a contribution. `Generic` records only that the sheaf is nonzero
/// on a dense open subset of its support, with the stated rank on a general
/// fibre.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rank {
    Exact(#[serde(with = "decimal::biguint")] BigUint),
    Generic {
        #[serde(with = "decimal::biguint")]
        generic_fiber_rank: BigUint,
    },
}

impl Rank {
    pub fn exact(r: impl Into<BigUint>) -> Self {
        Rank::Exact(r.into())
    }

    pub fn generic(r: impl Into<BigUint>) -> Self {
        Rank::Generic {
            generic_fiber_rank: r.into(),
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Rank::Generic { .. })
    }

    fn value(&self) -> &BigUint {
        match self {
            Rank::Exact(r) => r,
            Rank::Generic { generic_fiber_rank } => generic_fiber_rank,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Exact(r) => write!(f, "{r}"),
            Rank::Generic { generic_fiber_rank } => write!(f, "generic {generic_fiber_rank}"),
        }
    }
}

/// E₂ position `(p, q)`; differentials go `(p, q) → (p + r, q - r + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub p: i64,
    pub q: i64,
}

impl Position {
    pub fn total_degree(self) -> i64 {
        self.p + self.q
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// One nonzero E₂ entry `R^p p_*(tor_i)`, sitting at `(p, -i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ContributionRepr", into = "ContributionRepr")]
pub struct Contribution {
    tor_index: u32,
    push_degree: u32,
    support: SupportLabel,
    rank: Rank,
    bundle: Option<MultiDegree>,
}

impl Contribution {
    pub fn new(
        tor_index: u32,
        push_degree: u32,
        support: SupportLabel,
        rank: Rank,
        bundle: Option<MultiDegree>,
    ) -> Result<Self> {
        if rank.value().is_zero() {
            return Err(Error::InvalidGrid(format!(
                "zero-rank contribution at tor {tor_index}, R^{push_degree}"
            )));
        }
        Ok(Contribution {
            tor_index,
            push_degree,
            support,
            rank,
            bundle,
        })
    }

    pub fn tor_index(&self) -> u32 {
        self.tor_index
    }

    pub fn push_degree(&self) -> u32 {
        self.push_degree
    }

    pub fn support(&self) -> SupportLabel {
        self.support
    }

    pub fn rank(&self) -> &Rank {
        &self.rank
    }

    pub fn bundle(&self) -> Option<&MultiDegree> {
        self.bundle.as_ref()
    }

    pub fn position(&self) -> Position {
        Position {
            p: i64::from(self.push_degree),
            q: -i64::from(self.tor_index),
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.position().total_degree()
    }

    fn key(&self) -> (Position, SupportLabel, Option<&MultiDegree>) {
        (self.position(), self.support, self.bundle.as_ref())
    }
}

impl fmt::Display for Contribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} rank {}", self.position(), self.support, self.rank)?;
        if let Some(b) = &self.bundle {
            write!(f, " bundle {b}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ContributionRepr {
    tor_index: u32,
    push_degree: u32,
    p: i64,
    q: i64,
    support: SupportLabel,
    rank: Rank,
    bundle: Option<MultiDegree>,
}

impl From<Contribution> for ContributionRepr {
    fn from(c: Contribution) -> Self {
        let pos = c.position();
        ContributionRepr {
            tor_index: c.tor_index,
            push_degree: c.push_degree,
            p: pos.p,
            q: pos.q,
            support: c.support,
            rank: c.rank,
            bundle: c.bundle,
        }
    }
}

impl TryFrom<ContributionRepr> for Contribution {
    type Error = Error;

    fn try_from(r: ContributionRepr) -> Result<Self> {
        let c = Contribution::new(r.tor_index, r.push_degree, r.support, r.rank, r.bundle)?;
        if c.position() != (Position { p: r.p, q: r.q }) {
            return Err(Error::InvalidGrid(format!(
                "position ({}, {}) disagrees with tor_index {} and push_degree {}",
                r.p, r.q, r.tor_index, r.push_degree
            )));
        }
        Ok(c)
    }
}

pub const NORMALIZATION: &str = "target-at-degree-0";

/// All nonzero E₂ entries of a transform computation.
///
/// Grading is normalised so that the fully faithful answer is exactly one
/// `DiagonalX` entry at `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct ContributionGrid {
    entries: Vec<Contribution>,
    dim_target: u32,
}

impl ContributionGrid {
    pub fn new(entries: Vec<Contribution>, dim_target: u32) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &entries {
            let (pos, support, bundle) = c.key();
            if !seen.insert((pos, support, bundle.cloned())) {
                return Err(Error::InvalidGrid(format!(
                    "duplicate entry at {pos} with support {support}"
                )));
            }
        }
        Ok(ContributionGrid {
            entries,
            dim_target,
        })
    }

    pub fn entries(&self) -> &[Contribution] {
        &self.entries
    }

    pub fn dim_target(&self) -> u32 {
        self.dim_target
    }

    /// Distinct occupied positions, sorted.
    pub fn positions(&self) -> BTreeSet<Position> {
        self.entries.iter().map(Contribution::position).collect()
    }

    pub fn without(&self, index: usize) -> ContributionGrid {
        let mut entries = self.entries.clone();
        entries.remove(index);
        ContributionGrid {
            entries,
            dim_target: self.dim_target,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridRepr {
    dim_target: u32,
    normalization: String,
    entries: Vec<Contribution>,
}

impl From<ContributionGrid> for GridRepr {
    fn from(g: ContributionGrid) -> Self {
        GridRepr {
            dim_target: g.dim_target,
            normalization: NORMALIZATION.to_string(),
            entries: g.entries,
        }
    }
}

impl TryFrom<GridRepr> for ContributionGrid {
    type Error = Error;

    fn try_from(r: GridRepr) -> Result<Self> {
        if r.normalization != NORMALIZATION {
            return Err(Error::InvalidGrid(format!(
                "unsupported normalization {:?}",
                r.normalization
            )));
        }
        ContributionGrid::new(r.entries, r.dim_target)
    }
}

/// Outcome of the positional degeneration test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationCertificate {
    pub certified: bool,
    /// Pairs `(source, target)` of occupied positions that some `d_r`,
    /// `r ≥ 2`, could connect.
    pub unblockable: Vec<(Position, Position)>,
}

/// Certifies `E₂ = E_∞` when no two occupied positions are related by
/// `(p, q) → (p + r, q - r + 1)` for any `r ≥ 2`.
pub fn degeneration_certificate(grid: &ContributionGrid) -> DegenerationCertificate {
    let positions = grid.positions();
    let mut unblockable = Vec::new();
    for &src in &positions {
        for &dst in &positions {
            let r = dst.p - src.p;
            if r >= 2 && dst.q == src.q - r + 1 {
                unblockable.push((src, dst));
            }
        }
    }
    DegenerationCertificate {
        certified: unblockable.is_empty(),
        unblockable,
    }
}
