use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cohomology::{binomial, MultiDegree, MultiProjSpace};
use crate::transform::{
    assemble_verdict, pushforward_split, Contribution, ContributionGrid, Rank, SplitObject,
    SupportLabel, Verdict,
};
use crate::{Error, Result};

/// Standard flip replacing ℙ^l ⊂ X by ℙ^k ⊂ Y; `dim X = k + l + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlipParams {
    k: u32,
    l: u32,
}

impl FlipParams {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k < 1 || l < 1 {
            return Err(Error::InvalidInput(format!(
                "flip needs k, l >= 1, got k={k}, l={l}"
            )));
        }
        Ok(FlipParams { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dim(&self) -> u32 {
        self.k + self.l + 1
    }

    /// ℙ^l × ℙ^l × ℙ^k, carrying the higher tor sheaves.
    pub fn center_space(&self) -> MultiProjSpace {
        MultiProjSpace::new([self.l, self.l, self.k])
    }
}

/// The two correction terms in the resolution of tor₀, besides the canonical
/// bundle of the diagonal copy of Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tor0Descriptor {
    /// O(0, -l, -k) on ℙ^l × ℙ^l × ℙ^k.
    pub middle: SplitObject,
    /// O(-l, -k) on the small diagonal ℙ^l × ℙ^k.
    pub quotient: SplitObject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorTable {
    pub params: FlipParams,
    /// tor_i for 1 ≤ i ≤ l - 1: O(0, -l, -k + i)^{⊕ C(l-1, i)}.
    pub higher: BTreeMap<u32, SplitObject>,
    pub tor0: Tor0Descriptor,
}

pub fn flip_tor_table(p: FlipParams) -> TorTable {
    let (k, l) = (i64::from(p.k), i64::from(p.l));
    let higher = (1..p.l)
        .map(|i| {
            let obj = SplitObject::line_bundle(
                p.center_space(),
                MultiDegree::new([0, -l, -k + i64::from(i)]),
                binomial(u64::from(p.l - 1), u64::from(i)),
            )
            .expect("three-factor degree on a three-factor space");
            (i, obj)
        })
        .collect();
    let middle = SplitObject::line_bundle(p.center_space(), MultiDegree::new([0, -l, -k]), 1u32)
        .expect("three-factor degree on a three-factor space");
    let quotient = SplitObject::line_bundle(
        MultiProjSpace::new([p.l, p.k]),
        MultiDegree::new([-l, -k]),
        1u32,
    )
    .expect("two-factor degree on a two-factor space");
    TorTable {
        params: p,
        higher,
        tor0: Tor0Descriptor { middle, quotient },
    }
}

/// E₂ grid of the composite kernel for the flip.
///
/// tor₀ pushes forward to ω on the diagonal in degree 0 (the diagonal copy
/// of Z maps birationally onto X); its two correction terms are checked to
/// push forward to zero. Each higher tor_i is pushed along the ℙ^k factor
/// and recorded at `(j, -i)` for every nonzero `R^j`.
pub fn flip_grid(p: FlipParams) -> Result<ContributionGrid> {
    let tors = flip_tor_table(p);

    let middle = pushforward_split(&tors.tor0.middle, &[2])?;
    let quotient = pushforward_split(&tors.tor0.quotient, &[1])?;
    if !middle.is_zero() || !quotient.is_zero() {
        return Err(Error::Inconsistency(format!(
            "tor0 correction terms do not push forward to zero: {middle} / {quotient}"
        )));
    }

    let mut entries = vec![Contribution::new(
        0,
        0,
        SupportLabel::DiagonalX,
        Rank::exact(1u32),
        None,
    )?];
    for (&i, obj) in &tors.higher {
        for s in pushforward_split(obj, &[2])?.summands() {
            let j = u32::try_from(s.shift).map_err(|_| {
                Error::Inconsistency(format!("negative pushforward degree {}", s.shift))
            })?;
            entries.push(Contribution::new(
                i,
                j,
                SupportLabel::CenterProduct,
                Rank::Exact(s.mult),
                Some(s.degree),
            )?);
        }
    }
    ContributionGrid::new(entries, p.dim())
}

pub fn flip_verdict(p: FlipParams) -> Result<Verdict> {
    assemble_verdict(&flip_grid(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{degeneration_certificate, Position};
    use num_bigint::BigUint;

    fn params(k: u32, l: u32) -> FlipParams {
        FlipParams::new(k, l).unwrap()
    }

    fn summary(obj: &SplitObject) -> Vec<(Vec<i64>, i64, BigUint)> {
        obj.summands()
            .map(|s| (s.degree.degrees().to_vec(), s.shift, s.mult))
            .collect()
    }

    #[test]
    fn rejects_zero_params() {
        assert!(FlipParams::new(0, 1).is_err());
        assert!(FlipParams::new(1, 0).is_err());
    }

    #[test]
    fn tor_table_examples() {
        let t = flip_tor_table(params(2, 3));
        assert_eq!(t.higher.len(), 2);
        assert_eq!(
            summary(&t.higher[&1]),
            vec![(vec![0, -3, -1], 0, 2u32.into())]
        );
        assert_eq!(
            summary(&t.higher[&2]),
            vec![(vec![0, -3, 0], 0, 1u32.into())]
        );

        assert!(flip_tor_table(params(5, 1)).higher.is_empty());

        let t = flip_tor_table(params(1, 2));
        assert_eq!(t.higher.len(), 1);
        assert_eq!(
            summary(&t.higher[&1]),
            vec![(vec![0, -2, 0], 0, 1u32.into())]
        );
        assert_eq!(
            summary(&t.tor0.middle),
            vec![(vec![0, -2, -1], 0, 1u32.into())]
        );
        assert_eq!(
            summary(&t.tor0.quotient),
            vec![(vec![-2, -1], 0, 1u32.into())]
        );
    }

    fn cells(g: &ContributionGrid) -> Vec<(i64, i64, SupportLabel, String)> {
        g.entries()
            .iter()
            .map(|c| {
                (
                    c.position().p,
                    c.position().q,
                    c.support(),
                    c.rank().to_string(),
                )
            })
            .collect()
    }

    #[test]
    fn grid_examples() {
        let g = flip_grid(params(2, 2)).unwrap();
        assert_eq!(
            cells(&g),
            vec![(0, 0, SupportLabel::DiagonalX, "1".to_string())]
        );

        let g = flip_grid(params(1, 2)).unwrap();
        assert_eq!(
            cells(&g),
            vec![
                (0, 0, SupportLabel::DiagonalX, "1".to_string()),
                (0, -1, SupportLabel::CenterProduct, "1".to_string()),
            ]
        );

        let g = flip_grid(params(1, 3)).unwrap();
        assert_eq!(
            cells(&g),
            vec![
                (0, 0, SupportLabel::DiagonalX, "1".to_string()),
                (0, -1, SupportLabel::CenterProduct, "2".to_string()),
                (0, -2, SupportLabel::CenterProduct, "2".to_string()),
            ]
        );
        assert!(degeneration_certificate(&g).certified);
        assert_eq!(g.dim_target(), 5);
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(flip_verdict(params(3, 2)).unwrap(), Verdict::FullyFaithful);
        assert_eq!(flip_verdict(params(4, 1)).unwrap(), Verdict::FullyFaithful);
        let v = flip_verdict(params(1, 2)).unwrap();
        let (w, deg) = v.witness().unwrap();
        assert_eq!(deg, -1);
        assert_eq!(w.position(), Position { p: 0, q: -1 });
        assert_eq!(w.bundle(), Some(&MultiDegree::new([0, -2])));
    }

    #[test]
    fn higher_tor_entries_live_in_column_zero() {
        for k in 1..=8 {
            for l in 1..=8 {
                let g = flip_grid(params(k, l)).unwrap();
                assert!(g.entries().iter().all(|c| c.push_degree() == 0));
                assert!(degeneration_certificate(&g).certified);
            }
        }
    }
}
