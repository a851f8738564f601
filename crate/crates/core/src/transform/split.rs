use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::cohomology::{
    box_cohomology, line_bundle_cohomology, CohomologyTable, MultiDegree, MultiProjSpace,
};
use crate::{Error, Result};

/// One summand `O(deg)[-shift]^{⊕ mult}` of a split object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub degree: MultiDegree,
    /// Cohomology of the summand lands in degrees `i + shift`.
    pub shift: i64,
    pub mult: BigUint,
}

/// A formal direct sum of shifted line bundles on a product of projective
/// spaces. Summands with equal `(degree, shift)` are merged and zero
/// multiplicities are dropped, so two split objects are equal iff they have
/// the same summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitObject {
    space: MultiProjSpace,
    summands: BTreeMap<(MultiDegree, i64), BigUint>,
}

impl SplitObject {
    pub fn zero(space: MultiProjSpace) -> Self {
        SplitObject {
            space,
            summands: BTreeMap::new(),
        }
    }

    /// `O(degree)^{⊕ mult}` placed in shift 0.
    pub fn line_bundle(
        space: MultiProjSpace,
        degree: MultiDegree,
        mult: impl Into<BigUint>,
    ) -> Result<Self> {
        let mut obj = Self::zero(space);
        obj.add(degree, 0, mult.into())?;
        Ok(obj)
    }

    pub fn add(&mut self, degree: MultiDegree, shift: i64, mult: BigUint) -> Result<()> {
        self.space.check_degree(&degree)?;
        if !mult.is_zero() {
            *self.summands.entry((degree, shift)).or_default() += mult;
        }
        Ok(())
    }

    pub fn space(&self) -> &MultiProjSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> impl Iterator<Item = Summand> + '_ {
        self.summands.iter().map(|((degree, shift), mult)| Summand {
            degree: degree.clone(),
            shift: *shift,
            mult: mult.clone(),
        })
    }

    /// Hypercohomology: `Σ mult · H^*(O(deg))` with each summand moved by its shift.
    pub fn hypercohomology(&self) -> CohomologyTable {
        let mut total = CohomologyTable::new();
        for ((degree, shift), mult) in &self.summands {
            let table =
                box_cohomology(&self.space, degree).expect("degree length checked on insert");
            total.accumulate(&table.scaled(mult).shifted(*shift));
        }
        total
    }
}

impl fmt::Display for SplitObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((degree, shift), mult)) in self.summands.iter().enumerate() {
            if idx > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "{degree}")?;
            if *shift != 0 {
                write!(f, "[{}]", -shift)?;
            }
            if *mult != BigUint::from(1u32) {
                write!(f, "^{mult}")?;
            }
        }
        Ok(())
    }
}

/// Derived pushforward of a split object along the projection that forgets
/// the factors in `factor_set`.
///
/// Each summand `O(d)` in shift `s` contributes, for every `j` with
/// `H^j(pushed factors) ≠ 0`, the summand `O(d restricted to the kept
/// factors)` in shift `s + j` with multiplicity scaled by `h^j`.
pub fn pushforward_split(obj: &SplitObject, factor_set: &[usize]) -> Result<SplitObject> {
    let factors = obj.space.num_factors();
    if factor_set.is_empty() {
        return Err(Error::InvalidInput(
            "pushforward needs at least one factor".into(),
        ));
    }
    let pushed: BTreeSet<usize> = factor_set.iter().copied().collect();
    if let Some(&index) = pushed.iter().find(|&&i| i >= factors) {
        return Err(Error::IndexOutOfRange { index, factors });
    }

    let dims = obj.space.factors();
    let kept: Vec<usize> = (0..factors).filter(|i| !pushed.contains(i)).collect();
    let kept_space = MultiProjSpace::new(kept.iter().map(|&i| dims[i]).collect::<Vec<_>>());
    let pushed_space = MultiProjSpace::new(pushed.iter().map(|&i| dims[i]).collect::<Vec<_>>());

    let mut out = SplitObject::zero(kept_space);
    for ((degree, shift), mult) in &obj.summands {
        let d = degree.degrees();
        let kept_deg = MultiDegree::new(kept.iter().map(|&i| d[i]).collect::<Vec<_>>());
        let pushed_deg = MultiDegree::new(pushed.iter().map(|&i| d[i]).collect::<Vec<_>>());
        for (j, h) in box_cohomology(&pushed_space, &pushed_deg)?.iter() {
            out.add(kept_deg.clone(), shift + j, mult * h)?;
        }
    }
    Ok(out)
}

/// Nonzero `H^j(ℙ^m, O(e))` as `(j, rank)` pairs: the cohomology of a line
/// bundle along a general fibre ℙ^m of a projection.
pub fn generic_fiber_pushforward(fiber_dim: u32, fiber_degree: i64) -> Vec<(i64, BigUint)> {
    line_bundle_cohomology(fiber_dim, fiber_degree)
        .iter()
        .map(|(j, r)| (j, r.clone()))
        .collect()
}
