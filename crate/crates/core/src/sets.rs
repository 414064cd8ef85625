//! Finite sets of nonnegative integers stored as canonical unions of
//! disjoint closed intervals.
//!
//! Every exponent set in the crate (`G_M`, its n-fold sums, the slices of the
//! Macaulayfication) is an [`ExponentSet`]. Spans grow like `n * d` while the
//! number of intervals stays small, so all arithmetic works interval by
//! interval.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite subset of the nonnegative integers.
///
/// Intervals are inclusive, sorted, and separated by at least one missing
/// integer, so two sets are equal exactly when their interval lists are.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ExponentSet {
    intervals: Vec<(u64, u64)>,
}

impl ExponentSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(x: u64) -> Self {
        Self {
            intervals: vec![(x, x)],
        }
    }

    /// The interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        if lo > hi {
            Self::empty()
        } else {
            Self {
                intervals: vec![(lo, hi)],
            }
        }
    }

    /// Builds a set from arbitrary closed intervals. Pairs with `lo > hi`
    /// denote the empty interval and are dropped.
    pub fn from_intervals<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut raw: Vec<(u64, u64)> = iter.into_iter().filter(|&(lo, hi)| lo <= hi).collect();
        raw.sort_unstable();
        Self {
            intervals: merge_sorted(raw),
        }
    }

    pub fn from_members<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = u64>,
    {
        Self::from_intervals(iter.into_iter().map(|x| (x, x)))
    }

    /// Canonicalizes an unordered, possibly repeating list of integers.
    pub fn normalize(members: &[i64]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidInput("member list must be nonempty".into()));
        }
        if let Some(neg) = members.iter().find(|&&x| x < 0) {
            return Err(Error::InvalidInput(format!("negative member {neg}")));
        }
        Ok(Self::from_members(members.iter().map(|&x| x as u64)))
    }

    pub fn intervals(&self) -> &[(u64, u64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Number of members.
    pub fn len(&self) -> u64 {
        self.intervals.iter().map(|&(lo, hi)| hi - lo + 1).sum()
    }

    pub fn min(&self) -> Option<u64> {
        self.intervals.first().map(|&(lo, _)| lo)
    }

    pub fn max(&self) -> Option<u64> {
        self.intervals.last().map(|&(_, hi)| hi)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.intervals.iter().flat_map(|&(lo, hi)| lo..=hi)
    }

    pub fn contains(&self, x: u64) -> bool {
        self.contains_interval(x, x)
    }

    /// Whether `[lo, hi]` is contained in the set. An empty interval is
    /// always contained.
    pub fn contains_interval(&self, lo: u64, hi: u64) -> bool {
        if lo > hi {
            return true;
        }
        let idx = self.intervals.partition_point(|&(_, h)| h < lo);
        self.intervals
            .get(idx)
            .is_some_and(|&(l, h)| l <= lo && hi <= h)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intervals
            .iter()
            .all(|&(lo, hi)| other.contains_interval(lo, hi))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut raw = Vec::with_capacity(self.intervals.len() + other.intervals.len());
        raw.extend_from_slice(&self.intervals);
        raw.extend_from_slice(&other.intervals);
        raw.sort_unstable();
        Self {
            intervals: merge_sorted(raw),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].0.max(b[j].0);
            let hi = a[i].1.min(b[j].1);
            if lo <= hi {
                out.push((lo, hi));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { intervals: out }
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let b = &other.intervals;
        for &(lo, hi) in &self.intervals {
            let mut cur = lo;
            let mut k = b.partition_point(|&(_, bhi)| bhi < lo);
            while cur <= hi {
                match b.get(k) {
                    Some(&(blo, bhi)) if blo <= hi => {
                        if blo > cur {
                            out.push((cur, blo - 1));
                        }
                        cur = cur.max(bhi.saturating_add(1));
                        k += 1;
                    }
                    _ => {
                        out.push((cur, hi));
                        break;
                    }
                }
            }
        }
        Self { intervals: out }
    }

    /// Adds `k` to every member.
    pub fn shift_up(&self, k: u64) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .map(|&(lo, hi)| (lo + k, hi + k))
                .collect(),
        }
    }

    /// Subtracts `k` from every member, dropping results below zero.
    pub fn shift_down(&self, k: u64) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .filter(|&&(_, hi)| hi >= k)
                .map(|&(lo, hi)| (lo.saturating_sub(k), hi - k))
                .collect(),
        }
    }

    /// Restriction to `[lo, hi]`.
    pub fn clip(&self, lo: u64, hi: u64) -> Self {
        self.intersection(&Self::interval(lo, hi))
    }

    /// The mirror image `{span - x}`. Members above `span` are dropped.
    pub fn reflect(&self, span: u64) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .rev()
                .filter(|&&(lo, _)| lo <= span)
                .map(|&(lo, hi)| (span - hi.min(span), span - lo))
                .collect(),
        }
    }

    /// Minkowski sum `A + B`. Both operands must be nonempty.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::InvalidInput("sumset of an empty set".into()));
        }
        Ok(self.add(other))
    }

    /// n-fold Minkowski sum `nA` for `n >= 1`.
    pub fn nfold(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n-fold sum needs n >= 1".into()));
        }
        if self.is_empty() {
            return Err(Error::InvalidInput("n-fold sum of an empty set".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.add(self);
        }
        Ok(acc)
    }

    /// Unchecked Minkowski sum; the empty set is absorbing.
    pub(crate) fn add(&self, other: &Self) -> Self {
        let mut raw = Vec::with_capacity(self.intervals.len() * other.intervals.len());
        for &(a, b) in &self.intervals {
            for &(c, d) in &other.intervals {
                raw.push((a + c, b + d));
            }
        }
        raw.sort_unstable();
        Self {
            intervals: merge_sorted(raw),
        }
    }

    /// The maximal runs of missing integers between consecutive intervals.
    pub fn gaps(&self) -> GapProfile {
        let gaps: Vec<Gap> = self
            .intervals
            .windows(2)
            .map(|w| Gap {
                start: w[0].1 + 1,
                end: w[1].0 - 1,
                length: w[1].0 - w[0].1 - 1,
            })
            .collect();
        let mut lengths: Vec<u64> = gaps.iter().map(|g| g.length).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        GapProfile {
            ell_max: lengths.first().copied().unwrap_or(0),
            ell_second: lengths.get(1).copied().unwrap_or(0),
            gaps,
        }
    }
}

fn merge_sorted(raw: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::with_capacity(raw.len());
    for (lo, hi) in raw {
        match out.last_mut() {
            Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// One maximal run `[start, end]` of missing integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub start: u64,
    pub end: u64,
    pub length: u64,
}

/// Gaps of a set together with the largest and second largest gap length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapProfile {
    pub gaps: Vec<Gap>,
    pub ell_max: u64,
    pub ell_second: u64,
}

impl GapProfile {
    pub fn total(&self) -> u64 {
        self.gaps.iter().map(|g| g.length).sum()
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(lo, hi)) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if lo == hi {
                write!(f, "{lo}")?;
            } else {
                write!(f, "{lo}-{hi}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for ExponentSet {
    type Err = Error;

    /// Parses `0,3-5,9-10,12`. Whitespace is ignored anywhere.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(Self::empty());
        }
        let parse_num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad set atom `{t}` in `{s}`")))
        };
        let mut pieces = Vec::new();
        for atom in compact.split(',') {
            let (lo, hi) = match atom.split_once('-') {
                Some((a, b)) => (parse_num(a)?, parse_num(b)?),
                None => {
                    let x = parse_num(atom)?;
                    (x, x)
                }
            };
            if lo > hi {
                return Err(Error::InvalidInput(format!(
                    "descending range `{atom}` in `{s}`"
                )));
            }
            pieces.push((lo, hi));
        }
        Ok(Self::from_intervals(pieces))
    }
}

impl From<ExponentSet> for String {
    fn from(set: ExponentSet) -> String {
        set.to_string()
    }
}

impl TryFrom<String> for ExponentSet {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn set(s: &str) -> ExponentSet {
        s.parse().unwrap()
    }

    fn brute_sum(a: &BTreeSet<u64>, b: &BTreeSet<u64>) -> BTreeSet<u64> {
        a.iter()
            .flat_map(|x| b.iter().map(move |y| x + y))
            .collect()
    }

    #[test]
    fn normalize_groups_members() {
        assert_eq!(
            ExponentSet::normalize(&[0, 1, 3, 4]).unwrap(),
            set("0-1,3-4")
        );
        assert_eq!(
            ExponentSet::normalize(&[0, 3, 4, 5, 9, 10, 12])
                .unwrap()
                .intervals(),
            &[(0, 0), (3, 5), (9, 10), (12, 12)]
        );
        assert_eq!(ExponentSet::normalize(&[2, 2, 3]).unwrap(), set("2-3"));
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert!(matches!(
            ExponentSet::normalize(&[0, -1]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            ExponentSet::normalize(&[]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn sumset_examples() {
        let a = set("0-1,3-4");
        assert_eq!(a.sumset(&a).unwrap(), set("0-8"));
        assert_eq!(a.sumset(&ExponentSet::singleton(0)).unwrap(), a);

        let g = set("0,3-5,9-10,12");
        let two = g.sumset(&g).unwrap();
        assert_eq!(two, set("0,3-10,12-22,24"));
        assert!(!two.contains(11));
    }

    #[test]
    fn sumset_rejects_empty() {
        assert!(set("1").sumset(&ExponentSet::empty()).is_err());
        assert!(ExponentSet::empty().nfold(2).is_err());
        assert!(set("1").nfold(0).is_err());
    }

    #[test]
    fn nfold_examples() {
        assert_eq!(set("0,2-10").nfold(2).unwrap(), set("0,2-20"));
        assert_eq!(set("0-7").nfold(5).unwrap(), set("0-35"));
        assert_eq!(set("0,2-3").nfold(2).unwrap(), set("0,2-6"));
        assert_eq!(set("0,2-3").nfold(1).unwrap(), set("0,2-3"));
    }

    #[test]
    fn gap_profiles() {
        let p = set("0,2-3,5-6").gaps();
        assert_eq!(
            p.gaps.iter().map(|g| (g.start, g.end)).collect::<Vec<_>>(),
            vec![(1, 1), (4, 4)]
        );
        assert_eq!((p.ell_max, p.ell_second), (1, 1));

        let p = set("0-9").gaps();
        assert!(p.gaps.is_empty());
        assert_eq!((p.ell_max, p.ell_second), (0, 0));

        let p = set("0,2-3,9-10").gaps();
        assert_eq!(
            p.gaps.iter().map(|g| g.length).collect::<Vec<_>>(),
            vec![1, 5]
        );
        assert_eq!((p.ell_max, p.ell_second), (5, 1));
        assert_eq!(p.total(), 6);
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(set(" 0, 3 - 5 ,9-10,12 ").to_string(), "0,3-5,9-10,12");
        assert_eq!(set("3-4,0-1,2").to_string(), "0-4");
        assert!("4-2".parse::<ExponentSet>().is_err());
        assert!("1,x".parse::<ExponentSet>().is_err());
        assert!("-3".parse::<ExponentSet>().is_err());
        assert!(set("").is_empty());
    }

    #[test]
    fn difference_and_reflect() {
        assert_eq!(set("0-10").difference(&set("2-3,5,9-12")), set("0-1,4,6-8"));
        assert_eq!(set("0,3-5").difference(&set("0-5")), ExponentSet::empty());
        assert_eq!(set("0,2-3,7-10").reflect(10), set("0-3,7-8,10"));
    }

    fn arb_set(max: u64) -> impl Strategy<Value = BTreeSet<u64>> {
        proptest::collection::btree_set(0..=max, 1..12)
    }

    proptest! {
        #[test]
        fn sumset_matches_pairwise_enumeration(a in arb_set(40), b in arb_set(40)) {
            let sa = ExponentSet::from_members(a.iter().copied());
            let sb = ExponentSet::from_members(b.iter().copied());
            let want = ExponentSet::from_members(brute_sum(&a, &b));
            prop_assert_eq!(sa.sumset(&sb).unwrap(), want);
        }

        #[test]
        fn sumset_is_commutative_and_associative(a in arb_set(30), b in arb_set(30), c in arb_set(30)) {
            let (a, b, c) = (
                ExponentSet::from_members(a),
                ExponentSet::from_members(b),
                ExponentSet::from_members(c),
            );
            prop_assert_eq!(a.sumset(&b).unwrap(), b.sumset(&a).unwrap());
            prop_assert_eq!(
                a.sumset(&b).unwrap().sumset(&c).unwrap(),
                a.sumset(&b.sumset(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.sumset(&ExponentSet::singleton(0)).unwrap(), a);
        }

        #[test]
        fn nfold_cardinality_grows_with_zero(mut a in arb_set(20), n in 1usize..6) {
            a.insert(0);
            let s = ExponentSet::from_members(a);
            prop_assert!(s.nfold(n).unwrap().len() <= s.nfold(n + 1).unwrap().len());
            prop_assert!(s.nfold(n).unwrap().is_subset(&s.nfold(n + 1).unwrap()));
        }

        #[test]
        fn set_ops_match_bitset(a in arb_set(200), b in arb_set(200), x in 0u64..=200) {
            let sa = ExponentSet::from_members(a.iter().copied());
            let sb = ExponentSet::from_members(b.iter().copied());
            prop_assert_eq!(sa.contains(x), a.contains(&x));
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa == sb, a == b);
            prop_assert_eq!(sa.len() as usize, a.len());
            let inter: BTreeSet<u64> = a.intersection(&b).copied().collect();
            prop_assert_eq!(sa.intersection(&sb), ExponentSet::from_members(inter));
            let diff: BTreeSet<u64> = a.difference(&b).copied().collect();
            prop_assert_eq!(sa.difference(&sb), ExponentSet::from_members(diff));
        }

        #[test]
        fn literal_round_trips(a in arb_set(60)) {
            let s = ExponentSet::from_members(a);
            prop_assert_eq!(s.to_string().parse::<ExponentSet>().unwrap(), s);
        }
    }
}
