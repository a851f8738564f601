//! Executable forms of the generic-vanishing and strong-simplicity criteria.
//!
//! The checkers consume finite tables only: support loci are recorded by
//! dimension (or as empty), never as schemes, and transforms enter through
//! their cohomology tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyTable;
use crate::decimal;
use crate::{Error, Result};

/// Dimension of one support locus. `Empty` is not the same as `Dim(0)`: a
/// zero-dimensional locus is a nonempty finite set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocusDim {
    Empty,
    Dim(u32),
}

impl Serialize for LocusDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LocusDim::Empty => s.serialize_str("EMPTY"),
            LocusDim::Dim(d) => s.serialize_u32(*d),
        }
    }
}

impl<'de> Deserialize<'de> for LocusDim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Dim(u32),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Dim(v) => Ok(LocusDim::Dim(v)),
            Raw::Tag(t) if t == "EMPTY" => Ok(LocusDim::Empty),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!(
                "expected a dimension or \"EMPTY\", got {t:?}"
            ))),
        }
    }
}

impl fmt::Display for LocusDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusDim::Empty => write!(f, "EMPTY"),
            LocusDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Dimensions of the loci V^i (or W^i) inside a parameter space of
/// dimension `ambient_dim`. Unrecorded indices are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LocusTableRepr", into = "LocusTableRepr")]
pub struct SupportLocusTable {
    ambient_dim: u32,
    entries: BTreeMap<i64, LocusDim>,
}

impl SupportLocusTable {
    pub fn new(
        ambient_dim: u32,
        entries: impl IntoIterator<Item = (i64, LocusDim)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, dim) in entries {
            if let LocusDim::Dim(d) = dim {
                if d > ambient_dim {
                    return Err(Error::InvalidInput(format!(
                        "locus {i} has dimension {d} > ambient dimension {ambient_dim}"
                    )));
                }
            }
            if map.insert(i, dim).is_some() {
                return Err(Error::InvalidInput(format!("index {i} listed twice")));
            }
        }
        Ok(SupportLocusTable {
            ambient_dim,
            entries: map,
        })
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn get(&self, i: i64) -> LocusDim {
        self.entries.get(&i).copied().unwrap_or(LocusDim::Empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, LocusDim)> + '_ {
        self.entries.iter().map(|(&i, &d)| (i, d))
    }

    pub fn without(&self, i: i64) -> SupportLocusTable {
        let mut entries = self.entries.clone();
        entries.remove(&i);
        SupportLocusTable {
            ambient_dim: self.ambient_dim,
            entries,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocusEntry {
    i: i64,
    dim: LocusDim,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocusTableRepr {
    ambient_dim: u32,
    entries: Vec<LocusEntry>,
}

impl From<SupportLocusTable> for LocusTableRepr {
    fn from(t: SupportLocusTable) -> Self {
        LocusTableRepr {
            ambient_dim: t.ambient_dim,
            entries: t
                .entries
                .into_iter()
                .map(|(i, dim)| LocusEntry { i, dim })
                .collect(),
        }
    }
}

impl TryFrom<LocusTableRepr> for SupportLocusTable {
    type Error = Error;

    fn try_from(r: LocusTableRepr) -> Result<Self> {
        SupportLocusTable::new(r.ambient_dim, r.entries.into_iter().map(|e| (e.i, e.dim)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum GvViolation {
    /// V^i is nonempty for some i < 0.
    NegativeIndexNonempty { i: i64 },
    /// codim V^i < i.
    CodimensionTooSmall { i: i64, codim: u32 },
}

impl GvViolation {
    pub fn index(&self) -> i64 {
        match *self {
            GvViolation::NegativeIndexNonempty { i }
            | GvViolation::CodimensionTooSmall { i, .. } => i,
        }
    }
}

impl fmt::Display for GvViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GvViolation::NegativeIndexNonempty { i } => write!(f, "V^{i} is nonempty for i < 0"),
            GvViolation::CodimensionTooSmall { i, codim } => {
                write!(f, "codim V^{i} = {codim} < {i}")
            }
        }
    }
}

/// Geometric GV test: `V^i = ∅` for `i < 0` and `codim V^i ≥ i` for `i ≥ 0`.
/// Returns the violation at the smallest offending index, if any.
pub fn geometric_gv_check(table: &SupportLocusTable) -> Option<GvViolation> {
    table.entries().find_map(|(i, dim)| match dim {
        LocusDim::Empty => None,
        LocusDim::Dim(_) if i < 0 => Some(GvViolation::NegativeIndexNonempty { i }),
        LocusDim::Dim(d) => {
            let codim = table.ambient_dim - d;
            (i64::from(codim) < i).then_some(GvViolation::CodimensionTooSmall { i, codim })
        }
    })
}

/// WIT(`dim_y`): the transform is a single nonzero sheaf in degree `dim_y`.
/// The zero table fails.
pub fn wit_check(transform_table: &CohomologyTable, dim_y: i64) -> bool {
    transform_table.is_concentrated_in(dim_y)
}

/// Condition (c) in its numerical form: `h^i = 0` for `i ≠ dim_y` and
/// `h^{dim_y}` equals the expected top value.
pub fn condition_c_check(
    h_table: &CohomologyTable,
    dim_y: i64,
    expected_top: &BigInt,
) -> Result<bool> {
    if !expected_top.is_positive() {
        return Err(Error::InvalidInput(format!(
            "expected top dimension must be positive, got {expected_top}"
        )));
    }
    Ok(h_table.is_concentrated_in(dim_y) && BigInt::from(h_table.get(dim_y)) == *expected_top)
}

/// Hom data between the transforms of skyscraper sheaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HomRepr", into = "HomRepr")]
pub struct HomDiagonalCondition {
    diag_hom_dim: u32,
    offdiag_vanishes: bool,
}

impl HomDiagonalCondition {
    pub fn new(diag_hom_dim: u32, offdiag_vanishes: bool) -> Result<Self> {
        if diag_hom_dim == 0 {
            return Err(Error::InvalidInput(
                "Hom(Φ(k_x), Φ(k_x)) contains the identity, its dimension is at least 1".into(),
            ));
        }
        Ok(HomDiagonalCondition {
            diag_hom_dim,
            offdiag_vanishes,
        })
    }

    /// `Hom = k` on the diagonal and `0` off it.
    pub fn holds(&self) -> bool {
        self.diag_hom_dim == 1 && self.offdiag_vanishes
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomRepr {
    diag_hom_dim: u32,
    offdiag_vanishes: bool,
}

impl From<HomDiagonalCondition> for HomRepr {
    fn from(h: HomDiagonalCondition) -> Self {
        HomRepr {
            diag_hom_dim: h.diag_hom_dim,
            offdiag_vanishes: h.offdiag_vanishes,
        }
    }
}

impl TryFrom<HomRepr> for HomDiagonalCondition {
    type Error = Error;

    fn try_from(r: HomRepr) -> Result<Self> {
        HomDiagonalCondition::new(r.diag_hom_dim, r.offdiag_vanishes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum SimplicityViolation {
    /// (a) W^i is nonempty for some i < 0.
    A { i: i64 },
    /// (b) dim W^i > 2·dim X − i.
    B { i: i64, dim: u32, bound: i64 },
    /// (c) Hom between skyscraper transforms is not k on the diagonal and 0 off it.
    C,
}

impl fmt::Display for SimplicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicityViolation::A { i } => write!(f, "clause (a): W^{i} is nonempty for i < 0"),
            SimplicityViolation::B { i, dim, bound } => {
                write!(f, "clause (b): dim W^{i} = {dim} exceeds {bound}")
            }
            SimplicityViolation::C => write!(
                f,
                "clause (c): Hom condition on skyscraper transforms fails"
            ),
        }
    }
}

/// Strong-simplicity test on the W^i loci inside X × X. Returns the first
/// violated clause, checking (a), then (b), then (c).
pub fn strong_simplicity_check(
    w_tables: &SupportLocusTable,
    dim_x: u32,
    hom: &HomDiagonalCondition,
) -> Result<Option<SimplicityViolation>> {
    if w_tables.ambient_dim() != 2 * dim_x {
        return Err(Error::InvalidInput(format!(
            "W^i loci live in X × X of dimension {}, table says {}",
            2 * dim_x,
            w_tables.ambient_dim()
        )));
    }
    for (i, dim) in w_tables.entries() {
        if let LocusDim::Dim(d) = dim {
            if i < 0 {
                return Ok(Some(SimplicityViolation::A { i }));
            }
            let bound = 2 * i64::from(dim_x) - i;
            if i64::from(d) > bound {
                return Ok(Some(SimplicityViolation::B { i, dim: d, bound }));
            }
        }
    }
    if !hom.holds() {
        return Ok(Some(SimplicityViolation::C));
    }
    Ok(None)
}

/// Per-index hypothesis shape: W^i is empty, or contained in the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalClass {
    Empty,
    ContainedInDiagonal,
}

/// Rewrites "W^i ⊆ Δ_X for 0 ≤ i ≤ dim X, empty otherwise" as a locus table
/// with `dim W^i ≤ dim X`, ready for [`strong_simplicity_check`].
pub fn bondal_orlov_reduce(
    classes: &BTreeMap<i64, DiagonalClass>,
    dim_x: u32,
) -> Result<SupportLocusTable> {
    let mut entries = Vec::with_capacity(classes.len());
    for (&i, &class) in classes {
        match class {
            DiagonalClass::Empty => entries.push((i, LocusDim::Empty)),
            DiagonalClass::ContainedInDiagonal if (0..=i64::from(dim_x)).contains(&i) => {
                entries.push((i, LocusDim::Dim(dim_x)))
            }
            DiagonalClass::ContainedInDiagonal => {
                return Err(Error::InvalidInput(format!(
                    "index {i} marked as contained in the diagonal, outside [0, {dim_x}]"
                )))
            }
        }
    }
    SupportLocusTable::new(2 * dim_x, entries)
}

/// [`bondal_orlov_reduce`] followed by [`strong_simplicity_check`].
pub fn bondal_orlov_check(
    classes: &BTreeMap<i64, DiagonalClass>,
    dim_x: u32,
    hom: &HomDiagonalCondition,
) -> Result<(SupportLocusTable, Option<SimplicityViolation>)> {
    let table = bondal_orlov_reduce(classes, dim_x)?;
    let outcome = strong_simplicity_check(&table, dim_x, hom)?;
    Ok((table, outcome))
}

/// Condition-(c) data: the cohomology of the transform of a sufficiently
/// ample object, and the value expected in the top degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCInput {
    pub h_table: CohomologyTable,
    #[serde(with = "decimal::bigint")]
    pub expected_top: BigInt,
}

/// Everything needed to run the three equivalent GV formulations on one
/// scenario. Fields are optional so that partial files can be reported.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GvScenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub dim_y: Option<i64>,
    #[serde(default)]
    pub support_loci: Option<SupportLocusTable>,
    #[serde(default)]
    pub transform: Option<CohomologyTable>,
    #[serde(default)]
    pub condition_c: Option<ConditionCInput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub geometric_gv: bool,
    pub gv_violation: Option<GvViolation>,
    pub wit: bool,
    pub condition_c: bool,
    /// All three formulations gave the same answer. `false` means the
    /// scenario data is internally inconsistent.
    pub agree: bool,
}

/// Runs the geometric-GV, WIT and condition-(c) checks on one scenario and
/// records whether they agree, as they must for consistent data.
pub fn gv_equivalence_harness(scenario: &GvScenario) -> Result<HarnessReport> {
    let dim_y = scenario.dim_y.ok_or(Error::IncompleteScenario("dim_y"))?;
    let loci = scenario
        .support_loci
        .as_ref()
        .ok_or(Error::IncompleteScenario("support_loci"))?;
    let transform = scenario
        .transform
        .as_ref()
        .ok_or(Error::IncompleteScenario("transform"))?;
    let cond = scenario
        .condition_c
        .as_ref()
        .ok_or(Error::IncompleteScenario("condition_c"))?;

    let gv_violation = geometric_gv_check(loci);
    let geometric_gv = gv_violation.is_none();
    let wit = wit_check(transform, dim_y);
    let condition_c = condition_c_check(&cond.h_table, dim_y, &cond.expected_top)?;
    Ok(HarnessReport {
        geometric_gv,
        gv_violation,
        wit,
        condition_c,
        agree: geometric_gv == wit && wit == condition_c,
    })
}
