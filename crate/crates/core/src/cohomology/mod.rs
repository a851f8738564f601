//! Exact line-bundle cohomology on products of projective spaces.
//!
//! Every table is computed from the Bott formula on each factor and combined
//! by Künneth convolution. The [`cech`] submodule recomputes single-factor
//! tables from the Čech complex of the standard affine cover and serves as an
//! independent oracle.

pub mod cech;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::decimal;
use crate::{Error, Result};

pub use cech::cech_oracle;

/// A product ℙ^{n_1} × … × ℙ^{n_r}. The empty product is a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiProjSpace(Vec<u32>);

impl MultiProjSpace {
    pub fn new(factors: impl Into<Vec<u32>>) -> Self {
        MultiProjSpace(factors.into())
    }

    pub fn point() -> Self {
        MultiProjSpace(Vec::new())
    }

    pub fn factors(&self) -> &[u32] {
        &self.0
    }

    pub fn num_factors(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> u64 {
        self.0.iter().map(|&n| u64::from(n)).sum()
    }

    pub(crate) fn check_degree(&self, deg: &MultiDegree) -> Result<()> {
        if deg.len() != self.num_factors() {
            return Err(Error::LengthMismatch {
                expected: self.num_factors(),
                got: deg.len(),
            });
        }
        Ok(())
    }
}

/// Multidegree `(d_1, …, d_r)` of the line bundle O(d_1) ⊠ … ⊠ O(d_r).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(Vec<i64>);

impl MultiDegree {
    pub fn new(degrees: impl Into<Vec<i64>>) -> Self {
        MultiDegree(degrees.into())
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O(")?;
        for (idx, d) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Sparse map from cohomological degree to dimension.
///
/// Only strictly positive dimensions are stored; an absent degree means zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CohomologyTable {
    dims: BTreeMap<i64, BigUint>,
}

impl CohomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{degree ↦ dim}`, or the zero table when `dim` is zero.
    pub fn single(degree: i64, dim: impl Into<BigUint>) -> Self {
        let mut table = Self::new();
        table.add(degree, dim.into());
        table
    }

    /// Cohomology of a point: `{0 ↦ 1}`.
    pub fn unit() -> Self {
        Self::single(0, BigUint::one())
    }

    pub fn from_entries<I, V>(entries: I) -> Self
    where
        I: IntoIterator<Item = (i64, V)>,
        V: Into<BigUint>,
    {
        let mut table = Self::new();
        for (degree, dim) in entries {
            table.add(degree, dim.into());
        }
        table
    }

    /// Adds `dim` to the entry at `degree`.
    pub fn add(&mut self, degree: i64, dim: BigUint) {
        if dim.is_zero() {
            return;
        }
        *self.dims.entry(degree).or_default() += dim;
    }

    pub fn get(&self, degree: i64) -> BigUint {
        self.dims.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        self.dims.iter().map(|(&d, v)| (d, v))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Number of nonzero entries.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// True iff the only nonzero entry sits at `degree`.
    pub fn is_concentrated_in(&self, degree: i64) -> bool {
        self.dims.len() == 1 && self.dims.contains_key(&degree)
    }

    /// Graded tensor product: `(A ⊗ B)[k] = Σ_{i+j=k} A[i]·B[j]`.
    pub fn convolve(&self, other: &CohomologyTable) -> CohomologyTable {
        let mut out = CohomologyTable::new();
        for (&i, a) in &self.dims {
            for (&j, b) in &other.dims {
                out.add(i + j, a * b);
            }
        }
        out
    }

    /// Moves every entry from degree `i` to `i + shift`.
    pub fn shifted(&self, shift: i64) -> CohomologyTable {
        CohomologyTable {
            dims: self
                .dims
                .iter()
                .map(|(&d, v)| (d + shift, v.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: &BigUint) -> CohomologyTable {
        if factor.is_zero() {
            return CohomologyTable::new();
        }
        CohomologyTable {
            dims: self.dims.iter().map(|(&d, v)| (d, v * factor)).collect(),
        }
    }

    pub fn accumulate(&mut self, other: &CohomologyTable) {
        for (&d, v) in &other.dims {
            self.add(d, v.clone());
        }
    }

    /// `Σ (-1)^i · dim H^i`.
    pub fn alternating_sum(&self) -> BigInt {
        self.dims.iter().fold(BigInt::zero(), |acc, (&d, v)| {
            let v = BigInt::from(v.clone());
            if d.rem_euclid(2) == 0 {
                acc + v
            } else {
                acc - v
            }
        })
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "all zero");
        }
        for (idx, (d, v)) in self.dims.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "h^{d} = {v}")?;
        }
        Ok(())
    }
}

// JSON form: {"dims": {"<degree>": "<decimal>"}} with keys in numeric order.
impl Serialize for CohomologyTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Dims<'a>(&'a BTreeMap<i64, BigUint>);

        impl Serialize for Dims<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (d, v) in self.0 {
                    map.serialize_entry(&d.to_string(), &v.to_str_radix(10))?;
                }
                map.end()
            }
        }

        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CohomologyTable", 1)?;
        st.serialize_field("dims", &Dims(&self.dims))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRepr {
    dims: BTreeMap<String, String>,
}

impl<'de> Deserialize<'de> for CohomologyTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TableRepr::deserialize(d)?;
        let mut table = CohomologyTable::new();
        for (key, value) in repr.dims {
            let degree: i64 = decimal::parse_bigint(&key)
                .ok()
                .and_then(|k| i64::try_from(k).ok())
                .ok_or_else(|| D::Error::custom(format!("bad degree key {key:?}")))?;
            let dim = decimal::parse_biguint(&value).map_err(D::Error::custom)?;
            table.add(degree, dim);
        }
        Ok(table)
    }
}

/// Binomial coefficient C(n, k) as an exact unsigned integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) here, and C(n, i) * (n - i) is divisible by i + 1.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The binomial polynomial C(x, k) = x(x-1)…(x-k+1)/k! at any integer `x`.
pub fn binomial_polynomial(x: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Dimensions of H^i(ℙ^n, O(d)) by the Bott formula.
pub fn line_bundle_cohomology(n: u32, d: i64) -> CohomologyTable {
    if n == 0 {
        return CohomologyTable::unit();
    }
    let n64 = i64::from(n);
    if d >= 0 {
        CohomologyTable::single(0, binomial((n64 + d) as u64, n.into()))
    } else if d < -n64 {
        CohomologyTable::single(n64, binomial((-d - 1) as u64, n.into()))
    } else {
        CohomologyTable::new()
    }
}

/// Künneth: the cohomology of O(d_1) ⊠ … ⊠ O(d_r) on the product space.
pub fn box_cohomology(space: &MultiProjSpace, deg: &MultiDegree) -> Result<CohomologyTable> {
    space.check_degree(deg)?;
    Ok(space
        .factors()
        .iter()
        .zip(deg.degrees())
        .fold(CohomologyTable::unit(), |acc, (&n, &d)| {
            acc.convolve(&line_bundle_cohomology(n, d))
        }))
}

/// Degree of ω ⊗ L^{-1}: `-d_j - n_j - 1` on every factor.
pub fn serre_dual_degree(space: &MultiProjSpace, deg: &MultiDegree) -> Result<MultiDegree> {
    space.check_degree(deg)?;
    Ok(MultiDegree(
        space
            .factors()
            .iter()
            .zip(deg.degrees())
            .map(|(&n, &d)| -d - i64::from(n) - 1)
            .collect(),
    ))
}

/// χ(O(d)) on the product, as the alternating sum of [`box_cohomology`].
pub fn euler_characteristic(space: &MultiProjSpace, deg: &MultiDegree) -> Result<BigInt> {
    Ok(box_cohomology(space, deg)?.alternating_sum())
}

/// χ(O(d)) on the product, as `Π C(n_j + d_j, n_j)` evaluated as polynomials.
pub fn euler_characteristic_polynomial(
    space: &MultiProjSpace,
    deg: &MultiDegree,
) -> Result<BigInt> {
    space.check_degree(deg)?;
    Ok(space
        .factors()
        .iter()
        .zip(deg.degrees())
        .map(|(&n, &d)| binomial_polynomial(&BigInt::from(i64::from(n) + d), n))
        .product())
}
