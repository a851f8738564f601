use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cohomology::{binomial, MultiDegree, MultiProjSpace};
use crate::transform::{
    assemble_verdict, generic_fiber_pushforward, pushforward_split, Contribution, ContributionGrid,
    Rank, SplitObject, SupportLabel, Verdict,
};
use crate::{Error, Result};

/// Mukai flop of ℙ = ℙ^n inside a 2n-dimensional X.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlopParams {
    n: u32,
}

impl FlopParams {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("flop needs n >= 2, got n={n}")));
        }
        Ok(FlopParams { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> u32 {
        2 * self.n
    }

    /// Degree of ω_Z restricted to the exceptional divisor, on either factor
    /// of ℙ × ℙ^∨: ω_E(-E) = O(-n, -n) ⊗ O(1, 1).
    fn omega_degree(&self) -> i64 {
        -(i64::from(self.n) - 1)
    }

    /// Over a general point (x, x') of ℙ × ℙ the hyperplanes through both
    /// points form a ℙ^{n-2} ⊂ ℙ^∨.
    fn fiber_dim(&self) -> u32 {
        self.n - 2
    }
}

/// Higher tor sheaves restricted to a general fibre ℙ^{n-2} over ℙ × ℙ,
/// placed on the chart ℙ^n × ℙ^n × ℙ^{n-2}.
///
/// The excess bundle of the non-transversal component has rank n - 2 and
/// contributes one twist per exterior power, as for the flip:
/// tor_i = O(0, 0, -(n-1) + i)^{⊕ C(n-2, i)} for 1 ≤ i ≤ n - 2.
pub fn flop_higher_tors(p: FlopParams) -> BTreeMap<u32, SplitObject> {
    let chart = MultiProjSpace::new([p.n, p.n, p.fiber_dim()]);
    (1..=p.fiber_dim())
        .map(|i| {
            let obj = SplitObject::line_bundle(
                chart.clone(),
                MultiDegree::new([0, 0, p.omega_degree() + i64::from(i)]),
                binomial(u64::from(p.fiber_dim()), u64::from(i)),
            )
            .expect("three-factor degree on a three-factor space");
            (i, obj)
        })
        .collect()
}

/// E₂ grid of the composite kernel for the Mukai flop.
///
/// Verifies that the higher tors and the right-hand term of the
/// Mayer-Vietoris sequence push forward to zero, places ω on the diagonal at
/// `(0, 0)`, and records the pushforward of ω_Z along the general fibre
/// ℙ^{n-2} as a generic-rank `CenterProduct` entry.
pub fn flop_grid(p: FlopParams) -> Result<ContributionGrid> {
    for (i, obj) in flop_higher_tors(p) {
        let pushed = pushforward_split(&obj, &[2])?;
        if !pushed.is_zero() {
            return Err(Error::Inconsistency(format!(
                "flop tor_{i} does not push forward to zero: {pushed}"
            )));
        }
    }

    // (ω_Z)|_E restricted to the diagonal copy of E, fibred over ℙ with
    // fibre the ℙ^{n-1} of hyperplanes through a point.
    let restricted = SplitObject::line_bundle(
        MultiProjSpace::new([p.n, p.n - 1]),
        MultiDegree::new([p.omega_degree(), p.omega_degree()]),
        1u32,
    )?;
    let pushed = pushforward_split(&restricted, &[1])?;
    if !pushed.is_zero() {
        return Err(Error::Inconsistency(format!(
            "Mayer-Vietoris quotient term does not push forward to zero: {pushed}"
        )));
    }

    let mut entries = vec![Contribution::new(
        0,
        0,
        SupportLabel::DiagonalX,
        Rank::exact(1u32),
        None,
    )?];
    for (j, rank) in generic_fiber_pushforward(p.fiber_dim(), p.omega_degree()) {
        let j =
            u32::try_from(j).map_err(|_| Error::Inconsistency(format!("negative degree {j}")))?;
        entries.push(Contribution::new(
            0,
            j,
            SupportLabel::CenterProduct,
            Rank::generic(rank),
            None,
        )?);
    }
    ContributionGrid::new(entries, p.dim())
}

pub fn flop_verdict(p: FlopParams) -> Result<Verdict> {
    assemble_verdict(&flop_grid(p)?)
}
