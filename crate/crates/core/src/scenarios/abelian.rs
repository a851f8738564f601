use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyTable;
use crate::criteria::{ConditionCInput, GvScenario, LocusDim, SupportLocusTable};
use crate::decimal;
use crate::transform::Verdict;
use crate::{Error, Result};

/// Elementary divisors `(d_1, …, d_g)` of an ample line bundle L on a
/// g-dimensional abelian variety. No divisibility chain is required.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolarizationType {
    divisors: Vec<u64>,
}

impl PolarizationType {
    pub fn new(g: u32, divisors: Vec<u64>) -> Result<Self> {
        if g < 1 {
            return Err(Error::InvalidInput("abelian variety needs g >= 1".into()));
        }
        if divisors.len() != g as usize {
            return Err(Error::InvalidInput(format!(
                "polarization type has {} entries, expected g = {g}",
                divisors.len()
            )));
        }
        if let Some(bad) = divisors.iter().find(|&&d| d < 1) {
            return Err(Error::InvalidInput(format!(
                "type entries must be positive, got {bad}"
            )));
        }
        Ok(PolarizationType { divisors })
    }

    pub fn g(&self) -> u32 {
        self.divisors.len() as u32
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// h⁰(L) = Π d_i.
    pub fn sections(&self) -> BigUint {
        self.divisors.iter().map(|&d| BigUint::from(d)).product()
    }
}

/// Cohomology of L^m: `{0 ↦ m^g·Π d_i}` for m > 0, `{g ↦ |m|^g·Π d_i}` for m < 0.
pub fn abelian_cohomology(t: &PolarizationType, m: i64) -> Result<CohomologyTable> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "L^0 is the trivial bundle, not ample or anti-ample".into(),
        ));
    }
    let g = t.g();
    let dim = BigUint::from(m.unsigned_abs()).pow(g) * t.sections();
    let degree = if m > 0 { 0 } else { i64::from(g) };
    Ok(CohomologyTable::single(degree, dim))
}

/// Degree of the isogeny X → X̂ attached to L: h⁰(L)².
pub fn isogeny_degree(t: &PolarizationType) -> BigUint {
    let h0 = t.sections();
    &h0 * &h0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareReport {
    pub g: u32,
    /// Cohomology of L² ⊠ L ⊠ L⁻¹ on X × X × X.
    pub kunneth: CohomologyTable,
    #[serde(with = "decimal::biguint")]
    pub isogeny_degree: BigUint,
    /// Kunneth table divided entrywise by the isogeny degree.
    pub downstream: CohomologyTable,
    #[serde(with = "decimal::biguint")]
    pub quotient: BigUint,
    #[serde(with = "decimal::biguint")]
    pub h0_l2: BigUint,
    pub passed: bool,
    /// `FullyFaithful` when the count passes. The count is a sufficient
    /// test, so a failure leaves the verdict open.
    pub verdict: Option<Verdict>,
}

/// Numerical test that the Poincaré kernel is fully faithful, via the ample
/// object L ⊠ L on X × X.
///
/// Pulled back along the isogeny φ_L, the cohomology of the transform becomes
/// that of L² ⊠ L ⊠ L⁻¹ on X³; dividing by deg φ_L must leave h⁰(L²) in
/// degree g and nothing elsewhere.
pub fn poincare_ff_check(t: &PolarizationType) -> Result<PoincareReport> {
    let g = i64::from(t.g());
    let kunneth = abelian_cohomology(t, 2)?
        .convolve(&abelian_cohomology(t, 1)?)
        .convolve(&abelian_cohomology(t, -1)?);
    let degree = isogeny_degree(t);

    let mut downstream = CohomologyTable::new();
    for (i, v) in kunneth.iter() {
        let (q, r) = v.div_rem(&degree);
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!(
                "h^{i} = {v} is not divisible by the isogeny degree {degree}"
            )));
        }
        downstream.add(i, q);
    }

    let h0_l2 = abelian_cohomology(t, 2)?.get(0);
    let quotient = downstream.get(g);
    let passed = kunneth.is_concentrated_in(g) && quotient == h0_l2;
    Ok(PoincareReport {
        g: t.g(),
        kunneth,
        isogeny_degree: degree,
        downstream,
        quotient,
        h0_l2,
        passed,
        verdict: passed.then_some(Verdict::FullyFaithful),
    })
}

/// Cohomological support loci V^i(O_X) over Pic⁰: every one is the single
/// point 0̂ for 0 ≤ i ≤ g.
pub fn poincare_support_loci(g: u32) -> Result<SupportLocusTable> {
    if g < 1 {
        return Err(Error::InvalidInput("abelian variety needs g >= 1".into()));
    }
    SupportLocusTable::new(g, (0..=i64::from(g)).map(|i| (i, LocusDim::Dim(0))))
}

/// Harness input for the Poincaré kernel: the support loci, the Künneth table
/// of the transform (for WIT), and the divided table against h⁰(L²) (for
/// condition (c)).
pub fn poincare_gv_scenario(t: &PolarizationType) -> Result<GvScenario> {
    let report = poincare_ff_check(t)?;
    let label = format!(
        "poincare g={} type=({})",
        t.g(),
        t.divisors()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(GvScenario {
        label: Some(label),
        dim_y: Some(i64::from(t.g())),
        support_loci: Some(poincare_support_loci(t.g())?),
        transform: Some(report.kunneth),
        condition_c: Some(ConditionCInput {
            h_table: report.downstream,
            expected_top: BigInt::from(report.h0_l2),
        }),
    })
}
