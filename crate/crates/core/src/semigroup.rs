//! Degree-graded model of the affine semigroup of a monomial curve and its
//! finite Macaulayfication.
//!
//! The semigroup `E` of `k[M]` is stored degree by degree: the degree-`n`
//! piece is `{(α, nd - α) : α ∈ nG_M}`, so only the first coordinates are
//! kept. Since `x^d` and `y^d` are the only pure powers among the
//! generators, `E₁ = ℕ(d,0)` and `E₂ = ℕ(0,d)`, and membership of
//! `(α, nd - α)` in `(E - E₁) ∩ (E - E₂)` reads
//!
//! ```text
//! ∃ m: α + m·d ∈ (n+m)G_M    and    ∃ m: α ∈ (n+m)G_M
//! ```
//!
//! Both witness sets only grow with `m` (because `0, d ∈ G_M`), so the
//! search over `m` is run to a bound and rejected if it was still growing
//! there.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sets::{ExponentSet, GapProfile};

/// A projective monomial curve: degree `d` and the exponent set `G_M ⊆ [0, d]`
/// with `0, d ∈ G_M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    d: u64,
    g_m: ExponentSet,
    a_seq: Vec<u64>,
}

impl CurveSpec {
    pub fn new(d: u64, g_m: ExponentSet) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("degree d must be positive".into()));
        }
        if !g_m.contains(0) {
            return Err(Error::InvalidInput(
                "0 must belong to the set (x^d ∈ M)".into(),
            ));
        }
        if !g_m.contains(d) {
            return Err(Error::InvalidInput(format!(
                "d = {d} must belong to the set (y^d ∈ M)"
            )));
        }
        if g_m.max() != Some(d) {
            return Err(Error::InvalidInput(format!("set {g_m} exceeds [0, {d}]")));
        }
        let a_seq = g_m
            .intervals()
            .iter()
            .flat_map(|&(lo, hi)| [lo, hi])
            .collect();
        Ok(Self { d, g_m, a_seq })
    }

    /// Builds a curve from its a-sequence `0 = a_0 ≤ a_1 ≤ … ≤ a_{2r+1} = d`.
    pub fn from_a_seq(a: &[u64]) -> Result<Self> {
        if a.len() < 2 || !a.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "a-sequence must have even length 2r+2, got {}",
                a.len()
            )));
        }
        if a[0] != 0 {
            return Err(Error::InvalidInput(
                "a-sequence must start with a_0 = 0".into(),
            ));
        }
        for i in 0..a.len() / 2 {
            if a[2 * i] > a[2 * i + 1] {
                return Err(Error::InvalidInput(format!(
                    "a_{} = {} exceeds a_{} = {}",
                    2 * i,
                    a[2 * i],
                    2 * i + 1,
                    a[2 * i + 1]
                )));
            }
        }
        for i in 1..a.len() / 2 {
            if a[2 * i - 1] + 1 >= a[2 * i] {
                return Err(Error::InvalidInput(format!(
                    "a_{} < a_{} - 1 violated ({} vs {})",
                    2 * i - 1,
                    2 * i,
                    a[2 * i - 1],
                    a[2 * i]
                )));
            }
        }
        let d = *a.last().unwrap();
        let set = ExponentSet::from_intervals(a.chunks(2).map(|p| (p[0], p[1])));
        Self::new(d, set)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn g_m(&self) -> &ExponentSet {
        &self.g_m
    }

    pub fn a_seq(&self) -> &[u64] {
        &self.a_seq
    }

    /// `a_i`, indexed as in the a-sequence.
    pub fn a(&self, i: usize) -> u64 {
        self.a_seq[i]
    }

    /// Number of gaps.
    pub fn r(&self) -> usize {
        self.a_seq.len() / 2 - 1
    }

    pub fn gaps(&self) -> GapProfile {
        self.g_m.gaps()
    }

    /// Total gap length `Σ ℓ_i`.
    pub fn gap_sum(&self) -> u64 {
        self.d + 1 - self.g_m.len()
    }

    /// The curve obtained by exchanging `x` and `y`: `α ↦ d - α`.
    pub fn reflect(&self) -> Self {
        Self::new(self.d, self.g_m.reflect(self.d)).expect("reflection keeps 0 and d")
    }

    /// Last degree in which the Macaulayfication slices are computed.
    pub fn n_stop(&self) -> usize {
        self.gap_sum() as usize + 2
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} set={}", self.d, self.g_m)
    }
}

impl fmt::Debug for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveSpec({self})")
    }
}

impl FromStr for CurveSpec {
    type Err = Error;

    /// Accepts `d=<int> set=<literal>` and the batch form `d=<int>;set=<literal>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s.strip_prefix("d=").ok_or_else(|| {
            Error::InvalidInput(format!("expected `d=<int> set=<literal>`, got `{s}`"))
        })?;
        let (d_part, set_part) = rest
            .split_once("set=")
            .ok_or_else(|| Error::InvalidInput(format!("missing `set=` in `{s}`")))?;
        let d_part = d_part.trim().trim_end_matches(';').trim();
        let d: u64 = d_part
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad degree `{d_part}`")))?;
        Self::new(d, set_part.parse()?)
    }
}

/// `kG` for `k = 0..=k_max`, with `0G = {0}`.
pub fn multiples(g: &ExponentSet, k_max: usize) -> Vec<ExponentSet> {
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(ExponentSet::singleton(0));
    for k in 1..=k_max {
        let next = out[k - 1].add(g);
        out.push(next);
    }
    out
}

/// `nG_M`, the first coordinates of the degree-`n` piece of `E`.
pub fn degree_slice(curve: &CurveSpec, n: usize) -> Result<ExponentSet> {
    curve.g_m.nfold(n)
}

/// One degree of `E*`, from precomputed multiples `kG_M`, `k ≤ n + m_max`.
fn star_slice_from(mult: &[ExponentSet], d: u64, n: usize, m_max: u64) -> Result<ExponentSet> {
    let window = |m: u64| {
        let level = &mult[n + m as usize];
        let first = level.shift_down(m * d).clip(0, n as u64 * d);
        let second = level.clip(0, n as u64 * d);
        (first, second)
    };
    let (w1, w2) = window(m_max);
    let (p1, p2) = window(m_max - 1);
    if w1 != p1 || w2 != p2 {
        return Err(Error::SaturationIncomplete { degree: n, m_max });
    }
    Ok(w1.intersection(&w2))
}

/// `G*_n`: the degree-`n` slice of `E* = (E - E₁) ∩ (E - E₂)`, searching
/// shifts `m ≤ m_max`.
pub fn star_slice(curve: &CurveSpec, n: usize, m_max: u64) -> Result<ExponentSet> {
    if n == 0 || m_max == 0 {
        return Err(Error::InvalidInput(
            "star_slice needs n >= 1 and m_max >= 1".into(),
        ));
    }
    let mult = multiples(&curve.g_m, n + m_max as usize);
    star_slice_from(&mult, curve.d, n, m_max)
}

/// Saturation search bounds for [`macaulayfication_with`].
#[derive(Debug, Clone, Copy)]
pub struct SaturationConfig {
    pub m_initial: u64,
    pub m_ceiling: u64,
}

impl SaturationConfig {
    pub fn for_degree(d: u64) -> Self {
        Self {
            m_initial: 2 * d,
            m_ceiling: 32 * d,
        }
    }
}

/// The slices of `E*` in degrees `0..=n_stop`, with the derived `H¹` data.
#[derive(Debug, Clone)]
pub struct StarData {
    d: u64,
    slices: Vec<ExponentSet>,
    multiples: Vec<ExponentSet>,
    m_max: u64,
    /// `G*_1`, when `nG*_1 = G*_n` in every computed degree.
    pub g_n: Option<ExponentSet>,
    pub equigenerated: bool,
    /// `|G*_n| - |nG_M|` for `n = 1..=n_stop` (index `n - 1`).
    pub h1_dims: Vec<u64>,
    /// `a(R*/R)`: the last degree where `G*_n ≠ nG_M`; `None` when `R* = R`.
    pub a_star: Option<usize>,
    pub length_h1: u64,
    pub n_stop: usize,
    /// First degree `n` with `G*_n = nG_M` and `G*_{n+1} = {0,d} + G*_n`.
    pub fixpoint_degree: usize,
}

impl StarData {
    pub fn d(&self) -> u64 {
        self.d
    }

    /// `G*_n` for `0 ≤ n ≤ n_stop`; beyond that the slices agree with `nG_M`.
    pub fn slice(&self, n: usize) -> &ExponentSet {
        if n <= self.n_stop {
            &self.slices[n]
        } else {
            &self.multiples[n]
        }
    }

    /// `nG_M` for `n ≤ n_stop + m_max`.
    pub fn multiple(&self, n: usize) -> &ExponentSet {
        &self.multiples[n]
    }

    /// Exponents of `E* \ E` in degree `n`.
    pub fn excess(&self, n: usize) -> ExponentSet {
        self.slice(n).difference(self.multiple(n))
    }

    pub fn h1_dim(&self, n: usize) -> u64 {
        if n == 0 || n > self.n_stop {
            0
        } else {
            self.h1_dims[n - 1]
        }
    }

    pub fn m_max(&self) -> u64 {
        self.m_max
    }

    /// Least `n ≥ 0` with `G*_{n+1} = {0,d} + G*_n`: the reduction number of
    /// `R*` computed from the slices.
    pub fn reduction_number(&self) -> Result<usize> {
        let q = ExponentSet::from_members([0, self.d]);
        (0..self.n_stop)
            .find(|&n| *self.slice(n + 1) == q.add(self.slice(n)))
            .ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "no reduction of the Macaulayfication up to degree {}",
                    self.n_stop
                ))
            })
    }

    /// Re-runs the saturation on the slices of `E*` itself and reports
    /// whether nothing new appears, i.e. `(E*)* = E*` within the search bound.
    pub fn is_saturated(&self) -> bool {
        let d = self.d;
        (1..=self.n_stop).all(|n| {
            let top = n as u64 * d;
            let mut w1 = ExponentSet::empty();
            let mut w2 = ExponentSet::empty();
            for m in 0..=self.m_max as usize {
                let level = self.slice(n + m);
                w1 = w1.union(&level.shift_down(m as u64 * d).clip(0, top));
                w2 = w2.union(&level.clip(0, top));
            }
            w1.intersection(&w2) == *self.slice(n)
        })
    }
}

/// Computes the Macaulayfication with the default saturation bounds.
pub fn macaulayfication(curve: &CurveSpec) -> Result<StarData> {
    macaulayfication_with(curve, SaturationConfig::for_degree(curve.d))
}

pub fn macaulayfication_with(curve: &CurveSpec, config: SaturationConfig) -> Result<StarData> {
    let d = curve.d;
    let n_stop = curve.n_stop();
    let mut m_max = config.m_initial.max(1);
    loop {
        let mult = multiples(&curve.g_m, n_stop + m_max as usize);
        let attempt: Result<Vec<ExponentSet>> = (1..=n_stop)
            .map(|n| star_slice_from(&mult, d, n, m_max))
            .collect();
        match attempt {
            Ok(upper) => {
                let mut slices = Vec::with_capacity(n_stop + 1);
                slices.push(ExponentSet::singleton(0));
                slices.extend(upper);
                return assemble(curve, slices, mult, m_max);
            }
            Err(Error::SaturationIncomplete { .. }) if m_max * 2 <= config.m_ceiling => m_max *= 2,
            Err(e) => return Err(e),
        }
    }
}

fn assemble(
    curve: &CurveSpec,
    slices: Vec<ExponentSet>,
    multiples: Vec<ExponentSet>,
    m_max: u64,
) -> Result<StarData> {
    let d = curve.d;
    let n_stop = slices.len() - 1;
    for n in 1..=n_stop {
        if !multiples[n].is_subset(&slices[n]) {
            return Err(Error::InternalInconsistency(format!(
                "degree {n}: nG_M = {} not inside G*_n = {}",
                multiples[n], slices[n]
            )));
        }
    }
    let h1_dims: Vec<u64> = (1..=n_stop)
        .map(|n| slices[n].len() - multiples[n].len())
        .collect();
    let a_star = (1..=n_stop).rev().find(|&n| slices[n] != multiples[n]);
    let q = ExponentSet::from_members([0, d]);
    let fixpoint_degree = (1..n_stop)
        .find(|&n| slices[n] == multiples[n] && slices[n + 1] == q.add(&slices[n]))
        .ok_or_else(|| {
            Error::InternalInconsistency(format!(
                "{curve}: Macaulayfication slices did not reach a fixpoint by degree {n_stop}"
            ))
        })?;
    let g1 = slices[1].clone();
    let mut power = g1.clone();
    let mut equigenerated = true;
    for slice in slices.iter().skip(2) {
        power = power.add(&g1);
        if power != *slice {
            equigenerated = false;
            break;
        }
    }
    Ok(StarData {
        d,
        length_h1: h1_dims.iter().sum(),
        g_n: equigenerated.then_some(g1),
        equigenerated,
        h1_dims,
        a_star,
        n_stop,
        fixpoint_degree,
        slices,
        multiples,
        m_max,
    })
}

/// Cohen-Macaulay test through the Macaulayfication: `E* = E`.
pub fn is_cohen_macaulay(curve: &CurveSpec) -> Result<bool> {
    Ok(macaulayfication(curve)?.a_star.is_none())
}

/// Cohen-Macaulay test with single shifts: `(E - e₁) ∩ (E - e₂) = E`,
/// checked in degrees `1..=n_stop`.
pub fn gsw_cm_test(curve: &CurveSpec) -> bool {
    let d = curve.d;
    let n_stop = curve.n_stop();
    let mult = multiples(&curve.g_m, n_stop + 1);
    (1..=n_stop).all(|n| {
        let next = &mult[n + 1];
        let top = n as u64 * d;
        let shifted = next.shift_down(d).clip(0, top);
        shifted.intersection(&next.clip(0, top)) == mult[n]
    })
}
