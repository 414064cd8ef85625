//! Symmetric poset ideals of the grid `I = [0,r]²` and the linear
//! inequalities they induce on an a-sequence.
//!
//! For a symmetric ideal `J` the induced inequality is
//!
//! ```text
//! max{a_{2i+1} + a_{2j+1} : (i,j) ∈ J_max} + 1 ≥ min{a_{2i} + a_{2j} : (i,j) ∈ (I \ J)_min}
//! ```
//!
//! and it fails exactly when some integer strictly between the two sides is
//! missing from `2G_M`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{classify, CurveKind};
use crate::semigroup::CurveSpec;
use crate::sets::ExponentSet;

pub type GridPoint = (usize, usize);

/// A downward-closed, transpose-invariant subset of `[0,r]²`.
///
/// Stored by row lengths: `(i, j) ∈ J` iff `j < rows[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "IdealRepr", try_from = "IdealRepr")]
pub struct PosetIdeal {
    r: usize,
    rows: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    r: usize,
    members: Vec<GridPoint>,
}

impl From<PosetIdeal> for IdealRepr {
    fn from(j: PosetIdeal) -> Self {
        IdealRepr {
            r: j.r,
            members: j.members(),
        }
    }
}

impl TryFrom<IdealRepr> for PosetIdeal {
    type Error = Error;

    fn try_from(repr: IdealRepr) -> Result<Self> {
        PosetIdeal::new(repr.r, &repr.members)
    }
}

impl PosetIdeal {
    /// Validates symmetry and downward closure of an explicit member list.
    pub fn new(r: usize, members: &[GridPoint]) -> Result<Self> {
        let side = r + 1;
        let mut grid = vec![false; side * side];
        for &(i, j) in members {
            if i > r || j > r {
                return Err(Error::InvalidInput(format!(
                    "({i},{j}) lies outside [0,{r}]²"
                )));
            }
            grid[i * side + j] = true;
        }
        let has = |i: usize, j: usize| grid[i * side + j];
        for i in 0..side {
            for j in 0..side {
                if !has(i, j) {
                    continue;
                }
                if !has(j, i) {
                    return Err(Error::InvalidInput(format!("not symmetric at ({i},{j})")));
                }
                if (i > 0 && !has(i - 1, j)) || (j > 0 && !has(i, j - 1)) {
                    return Err(Error::InvalidInput(format!(
                        "not downward closed at ({i},{j})"
                    )));
                }
            }
        }
        let rows = (0..side)
            .map(|i| (0..side).take_while(|&j| has(i, j)).count())
            .collect();
        Ok(Self { r, rows })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn contains(&self, (i, j): GridPoint) -> bool {
        i <= self.r && j < self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows[0] == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == (self.r + 1) * (self.r + 1)
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<GridPoint> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<GridPoint> {
        self.members()
            .into_iter()
            .filter(|&(i, j)| !self.contains((i + 1, j)) && !self.contains((i, j + 1)))
            .collect()
    }

    /// Minimal elements of the complement `I \ J`.
    pub fn complement_minimal(&self) -> Vec<GridPoint> {
        (0..=self.r)
            .filter(|&i| self.rows[i] <= self.r)
            .map(|i| (i, self.rows[i]))
            .filter(|&(i, j)| i == 0 || self.contains((i - 1, j)))
            .collect()
    }
}

impl fmt::Debug for PosetIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.members().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

/// All symmetric poset ideals of `[0,r]²` containing `must_contain` and
/// avoiding `must_exclude`, ordered by size and then by member list.
pub fn enumerate_symmetric_ideals(
    r: usize,
    must_contain: Option<GridPoint>,
    must_exclude: Option<GridPoint>,
) -> Result<Vec<PosetIdeal>> {
    for (i, j) in must_contain.into_iter().chain(must_exclude) {
        if i > r || j > r {
            return Err(Error::InvalidInput(format!(
                "constraint ({i},{j}) lies outside [0,{r}]²"
            )));
        }
    }
    let keep = |ideal: &&PosetIdeal| {
        must_contain.is_none_or(|p| ideal.contains(p))
            && must_exclude.is_none_or(|p| !ideal.contains(p))
    };
    let out = match cached_ideals(r) {
        Some(all) => all.iter().filter(keep).cloned().collect(),
        None => all_symmetric_ideals(r)
            .iter()
            .filter(keep)
            .cloned()
            .collect(),
    };
    Ok(out)
}

const CACHED_R: usize = 4;

fn cached_ideals(r: usize) -> Option<&'static [PosetIdeal]> {
    static CACHE: OnceLock<Vec<Vec<PosetIdeal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=CACHED_R).map(all_symmetric_ideals).collect());
    cache.get(r).map(Vec::as_slice)
}

fn all_symmetric_ideals(r: usize) -> Vec<PosetIdeal> {
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(r + 1);
    grow_rows(r, r + 1, &mut rows, &mut |rows| {
        let ideal = PosetIdeal {
            r,
            rows: rows.to_vec(),
        };
        if ideal.members().iter().all(|&(i, j)| ideal.contains((j, i))) {
            out.push(ideal);
        }
    });
    out.sort_by_cached_key(|j| (j.len(), j.members()));
    out
}

/// Every non-increasing row-length vector of length `r + 1` bounded by `cap`.
fn grow_rows(r: usize, cap: usize, rows: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if rows.len() == r + 1 {
        emit(rows);
        return;
    }
    for len in 0..=cap {
        rows.push(len);
        grow_rows(r, len, rows, emit);
        rows.pop();
    }
}

/// One instance of the ideal inequality, evaluated on an a-sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub ideal: PosetIdeal,
    /// Index pairs `(2i+1, 2j+1)` for `(i,j) ∈ J_max`, with `i ≤ j`.
    pub lhs_terms: Vec<(usize, usize)>,
    /// Index pairs `(2i, 2j)` for `(i,j) ∈ (I \ J)_min`, with `i ≤ j`.
    pub rhs_terms: Vec<(usize, usize)>,
    /// `max{…} + 1`.
    pub lhs_value: u64,
    pub rhs_value: u64,
    pub holds: bool,
}

impl Inequality {
    /// Renders the inequality with `a_k` written by `name(k)`.
    pub fn render_with(&self, name: &dyn Fn(usize) -> String) -> String {
        let side = |terms: &[(usize, usize)], op: &str| {
            let parts: Vec<String> = terms
                .iter()
                .map(|&(p, q)| format!("{}+{}", name(p), name(q)))
                .collect();
            if parts.len() == 1 {
                parts[0].clone()
            } else {
                format!("{op}{{{}}}", parts.join(", "))
            }
        };
        format!(
            "{} + 1 >= {}",
            side(&self.lhs_terms, "max"),
            side(&self.rhs_terms, "min")
        )
    }

    pub fn render(&self) -> String {
        self.render_with(&|k| format!("a{k}"))
    }
}

fn check_a_seq(r: usize, a_seq: &[u64]) -> Result<()> {
    if a_seq.len() != 2 * r + 2 {
        return Err(Error::InvalidInput(format!(
            "a-sequence of length {} does not match grid size r = {r}",
            a_seq.len()
        )));
    }
    Ok(())
}

/// Evaluates the inequality induced by `ideal`; the ideal must be neither
/// empty nor all of `I`.
pub fn evaluate_ideal(ideal: &PosetIdeal, a_seq: &[u64]) -> Result<Inequality> {
    check_a_seq(ideal.r, a_seq)?;
    if ideal.is_empty() || ideal.is_full() {
        return Err(Error::Inapplicable(
            "the inequality is undefined for the empty ideal and for I itself".into(),
        ));
    }
    let lhs_terms: Vec<(usize, usize)> = ideal
        .maximal()
        .into_iter()
        .filter(|&(i, j)| i <= j)
        .map(|(i, j)| (2 * i + 1, 2 * j + 1))
        .collect();
    let rhs_terms: Vec<(usize, usize)> = ideal
        .complement_minimal()
        .into_iter()
        .filter(|&(i, j)| i <= j)
        .map(|(i, j)| (2 * i, 2 * j))
        .collect();
    let pair_sum = |&(p, q): &(usize, usize)| a_seq[p] + a_seq[q];
    let lhs_value = lhs_terms.iter().map(pair_sum).max().unwrap() + 1;
    let rhs_value = rhs_terms.iter().map(pair_sum).min().unwrap();
    Ok(Inequality {
        ideal: ideal.clone(),
        lhs_terms,
        rhs_terms,
        lhs_value,
        rhs_value,
        holds: lhs_value >= rhs_value,
    })
}

pub fn ineq_21_holds(ideal: &PosetIdeal, a_seq: &[u64]) -> Result<bool> {
    Ok(evaluate_ideal(ideal, a_seq)?.holds)
}

/// Result of testing `[u, v] ⊆ 2G_M` through ideal inequalities and directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheck {
    pub u: u64,
    pub v: u64,
    /// `(m,n)` with the largest odd-index sum below `u` and `(m',n')` with the
    /// smallest even-index sum above `v`; `None` if either does not exist.
    pub boundary: Option<(GridPoint, GridPoint)>,
    /// Conjunction of the inequalities over the constrained ideals.
    pub by_inequalities: Option<bool>,
    pub direct: bool,
    pub violated: Vec<Inequality>,
}

impl CoverCheck {
    pub fn verdict(&self) -> bool {
        self.by_inequalities.unwrap_or(self.direct)
    }

    pub fn precondition_met(&self) -> bool {
        self.boundary.is_some()
    }

    pub fn agrees(&self) -> bool {
        self.by_inequalities.is_none_or(|b| b == self.direct)
    }
}

/// Lexicographically first grid point attaining the largest
/// `a_{2i+1} + a_{2j+1} < u`.
pub fn inner_boundary(a_seq: &[u64], u: u64) -> Option<GridPoint> {
    let r = a_seq.len() / 2 - 1;
    let odd = |(i, j): GridPoint| a_seq[2 * i + 1] + a_seq[2 * j + 1];
    (0..=r)
        .flat_map(|i| (0..=r).map(move |j| (i, j)))
        .filter(|&p| odd(p) < u)
        .max_by_key(|&p| (odd(p), std::cmp::Reverse(p)))
}

/// Lexicographically first grid point attaining the smallest
/// `a_{2i} + a_{2j} > v`.
pub fn outer_boundary(a_seq: &[u64], v: u64) -> Option<GridPoint> {
    let r = a_seq.len() / 2 - 1;
    let even = |(i, j): GridPoint| a_seq[2 * i] + a_seq[2 * j];
    (0..=r)
        .flat_map(|i| (0..=r).map(move |j| (i, j)))
        .filter(|&p| even(p) > v)
        .min_by_key(|&p| (even(p), p))
}

pub fn boundary_pairs(a_seq: &[u64], u: u64, v: u64) -> Option<(GridPoint, GridPoint)> {
    Some((inner_boundary(a_seq, u)?, outer_boundary(a_seq, v)?))
}

/// Decides `[u, v] ⊆ 2G_M` by the ideal inequalities, alongside the direct
/// containment check. Without boundary pairs only the direct check is made.
pub fn covers_interval(a_seq: &[u64], u: u64, v: u64) -> Result<CoverCheck> {
    let curve = CurveSpec::from_a_seq(a_seq)?;
    let r = curve.r();
    let two = curve.g_m().add(curve.g_m());
    let direct = two.contains_interval(u, v);
    if u > v {
        return Ok(CoverCheck {
            u,
            v,
            boundary: None,
            by_inequalities: Some(true),
            direct,
            violated: vec![],
        });
    }
    let Some((inner, outer)) = boundary_pairs(a_seq, u, v) else {
        return Ok(CoverCheck {
            u,
            v,
            boundary: None,
            by_inequalities: None,
            direct,
            violated: vec![],
        });
    };
    let mut violated = Vec::new();
    for ideal in enumerate_symmetric_ideals(r, Some(inner), Some(outer))? {
        let ineq = evaluate_ideal(&ideal, a_seq)?;
        if !ineq.holds {
            violated.push(ineq);
        }
    }
    Ok(CoverCheck {
        u,
        v,
        boundary: Some((inner, outer)),
        by_inequalities: Some(violated.is_empty()),
        direct,
        violated,
    })
}

/// Comparison of the inequality characterization with direct containment
/// over every `[u, v] ⊆ [0, 2d]` of one a-sequence that has boundary pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSweep {
    pub intervals: u64,
    pub agree: u64,
    /// Intervals whose ends sit right next to the boundary sums, i.e.
    /// `u - 1` is an odd-index sum and `v + 1` an even-index sum.
    pub tight_intervals: u64,
    pub tight_agree: u64,
    /// Cases where every inequality held but `[u, v] ⊄ 2G_M`.
    pub sufficiency_failures: u64,
    pub mismatches: Vec<CoverMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverMismatch {
    pub a_seq: Vec<u64>,
    pub u: u64,
    pub v: u64,
    pub by_inequalities: bool,
    pub direct: bool,
}

const MISMATCH_SAMPLES: usize = 4;

impl CoverSweep {
    pub fn merge(&mut self, other: &CoverSweep) {
        self.intervals += other.intervals;
        self.agree += other.agree;
        self.tight_intervals += other.tight_intervals;
        self.tight_agree += other.tight_agree;
        self.sufficiency_failures += other.sufficiency_failures;
        let room = MISMATCH_SAMPLES.saturating_sub(self.mismatches.len());
        self.mismatches
            .extend(other.mismatches.iter().take(room).cloned());
    }
}

/// Runs [`covers_interval`]'s logic over all `0 ≤ u ≤ v ≤ 2d`, evaluating the
/// ideal inequalities once per boundary pair.
pub fn cover_sweep(a_seq: &[u64]) -> Result<CoverSweep> {
    let curve = CurveSpec::from_a_seq(a_seq)?;
    let r = curve.r();
    let top = 2 * curve.d();
    let two = curve.g_m().add(curve.g_m());
    let inner: Vec<Option<GridPoint>> = (0..=top).map(|u| inner_boundary(a_seq, u)).collect();
    let outer: Vec<Option<GridPoint>> = (0..=top).map(|v| outer_boundary(a_seq, v)).collect();
    // run_end[u] = last member of the run of 2G_M containing u
    let mut run_end: Vec<Option<u64>> = vec![None; top as usize + 1];
    for &(lo, hi) in two.intervals() {
        for x in lo..=hi.min(top) {
            run_end[x as usize] = Some(hi);
        }
    }
    let mut memo: HashMap<(GridPoint, GridPoint), bool> = HashMap::new();
    let mut out = CoverSweep::default();
    for u in 0..=top {
        let Some(pi) = inner[u as usize] else {
            continue;
        };
        let s = a_seq[2 * pi.0 + 1] + a_seq[2 * pi.1 + 1];
        for v in u..=top {
            let Some(po) = outer[v as usize] else {
                continue;
            };
            let by_ineq = match memo.get(&(pi, po)) {
                Some(&b) => b,
                None => {
                    let mut ok = true;
                    for ideal in enumerate_symmetric_ideals(r, Some(pi), Some(po))? {
                        ok &= evaluate_ideal(&ideal, a_seq)?.holds;
                    }
                    memo.insert((pi, po), ok);
                    ok
                }
            };
            let direct = run_end[u as usize].is_some_and(|end| end >= v);
            let t = a_seq[2 * po.0] + a_seq[2 * po.1];
            out.intervals += 1;
            if by_ineq == direct {
                out.agree += 1;
            } else if out.mismatches.len() < MISMATCH_SAMPLES {
                out.mismatches.push(CoverMismatch {
                    a_seq: a_seq.to_vec(),
                    u,
                    v,
                    by_inequalities: by_ineq,
                    direct,
                });
            }
            if by_ineq && !direct {
                out.sufficiency_failures += 1;
            }
            if s + 1 == u && v + 1 == t {
                out.tight_intervals += 1;
                out.tight_agree += u64::from(by_ineq == direct);
            }
        }
    }
    Ok(out)
}

/// Buchsbaum verdict from the inequality system of the curve's class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub kind: CurveKind,
    pub buchsbaum: bool,
    pub checked: usize,
    pub violated: Vec<Inequality>,
}

/// Ideal constraints that characterize Buchsbaumness for the class, or
/// `None` when the class has no inequality criterion.
fn class_constraints(kind: CurveKind, r: usize) -> Option<(GridPoint, GridPoint)> {
    match kind {
        CurveKind::Smooth => Some(((0, 0), (r, r))),
        CurveKind::TypeA if r >= 2 => Some(((1, 1), (r, r))),
        CurveKind::TypeB if r >= 3 => Some(((1, 1), (r - 1, r - 1))),
        _ => None,
    }
}

pub fn buchsbaum_by_inequalities(curve: &CurveSpec) -> Result<InequalityVerdict> {
    let cls = classify(curve);
    let (inner, outer) = class_constraints(cls.kind, cls.r).ok_or_else(|| {
        Error::Inapplicable(format!(
            "no inequality criterion for {curve} ({:?}, r = {})",
            cls.kind, cls.r
        ))
    })?;
    let ideals = enumerate_symmetric_ideals(cls.r, Some(inner), Some(outer))?;
    let mut violated = Vec::new();
    for ideal in &ideals {
        let ineq = evaluate_ideal(ideal, &cls.a_seq)?;
        if !ineq.holds {
            violated.push(ineq);
        }
    }
    Ok(InequalityVerdict {
        kind: cls.kind,
        buchsbaum: violated.is_empty(),
        checked: ideals.len(),
        violated,
    })
}

/// An explicit inequality system with per-line verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IneqSystem {
    pub kind: CurveKind,
    /// Parameter names and values, e.g. `a = 2`.
    pub parameters: Vec<(String, u64)>,
    pub lines: Vec<SystemLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemLine {
    pub text: String,
    pub inequality: Inequality,
}

impl IneqSystem {
    pub fn holds(&self) -> bool {
        self.lines.iter().all(|l| l.inequality.holds)
    }

    /// One aligned line per inequality with its numeric sides and verdict.
    pub fn render(&self) -> String {
        let width = self
            .lines
            .iter()
            .map(|l| l.text.chars().count())
            .max()
            .unwrap_or(0);
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let mut out = format!("{:?} system ({})\n", self.kind, params.join(", "));
        for line in &self.lines {
            let pad = width - line.text.chars().count();
            out.push_str(&format!(
                "  {}{}   [{} >= {}]  {}\n",
                line.text,
                " ".repeat(pad),
                line.inequality.lhs_value,
                line.inequality.rhs_value,
                if line.inequality.holds {
                    "holds"
                } else {
                    "VIOLATED"
                }
            ));
        }
        out
    }
}

// Displayed forms of the explicit systems. Letters stand for a_2, a_3, a_4
// (and a_5) and d; the order matches the ideal enumeration order.
const TYPE_A_R2_LINES: [&str; 3] = ["2b + 1 >= c", "max{2b, d} + 1 >= a + c", "b + d + 1 >= 2c"];

const TYPE_B_R3_LINES: [&str; 6] = [
    "2b + 1 >= c",
    "max{2b, e} + 1 >= min{a + c, d}",
    "b + e + 1 >= min{2c, d}",
    "max{2b, d} + 1 >= a + c",
    "max{d, b + e} + 1 >= min{a + d, 2c}",
    "b + d + 1 >= 2c",
];

/// The explicit Buchsbaum system for Type A with `r = 2` (three lines) or
/// Type B with `r = 3` (six lines).
pub fn concrete_system(curve: &CurveSpec) -> Result<IneqSystem> {
    let cls = classify(curve);
    let a = &cls.a_seq;
    let (texts, parameters): (&[&str], Vec<(String, u64)>) = match (cls.kind, cls.r) {
        (CurveKind::TypeA, 2) => (
            &TYPE_A_R2_LINES,
            vec![
                ("a".into(), a[2]),
                ("b".into(), a[3]),
                ("c".into(), a[4]),
                ("d".into(), a[5]),
            ],
        ),
        (CurveKind::TypeB, 3) => (
            &TYPE_B_R3_LINES,
            vec![
                ("a".into(), a[2]),
                ("b".into(), a[3]),
                ("c".into(), a[4]),
                ("e".into(), a[5]),
                ("d".into(), a[6]),
            ],
        ),
        _ => {
            return Err(Error::Inapplicable(
                "concrete system defined only for Type A r=2 / Type B r=3".into(),
            ))
        }
    };
    let (inner, outer) = class_constraints(cls.kind, cls.r).expect("class has constraints");
    let ideals = enumerate_symmetric_ideals(cls.r, Some(inner), Some(outer))?;
    if ideals.len() != texts.len() {
        return Err(Error::InternalInconsistency(format!(
            "expected {} ideals, enumerated {}",
            texts.len(),
            ideals.len()
        )));
    }
    let lines = ideals
        .iter()
        .zip(texts)
        .map(|(ideal, text)| {
            Ok(SystemLine {
                text: text.to_string(),
                inequality: evaluate_ideal(ideal, a)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IneqSystem {
        kind: cls.kind,
        parameters,
        lines,
    })
}

/// `2G_M` for an a-sequence; convenience for callers comparing against
/// [`covers_interval`].
pub fn double_set(a_seq: &[u64]) -> Result<ExponentSet> {
    let c = CurveSpec::from_a_seq(a_seq)?;
    Ok(c.g_m().add(c.g_m()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(d: u64, s: &str) -> CurveSpec {
        CurveSpec::new(d, s.parse().unwrap()).unwrap()
    }

    fn brute_force_ideals(
        r: usize,
        contain: Option<GridPoint>,
        exclude: Option<GridPoint>,
    ) -> usize {
        let side = r + 1;
        let cells = side * side;
        (0u64..1 << cells)
            .filter(|mask| {
                let has = |i: usize, j: usize| mask >> (i * side + j) & 1 == 1;
                (0..side).all(|i| {
                    (0..side).all(|j| {
                        !has(i, j)
                            || (has(j, i) && (i == 0 || has(i - 1, j)) && (j == 0 || has(i, j - 1)))
                    })
                }) && contain.is_none_or(|(i, j)| has(i, j))
                    && exclude.is_none_or(|(i, j)| !has(i, j))
            })
            .count()
    }

    #[test]
    fn ideal_counts() {
        let r2 = enumerate_symmetric_ideals(2, Some((1, 1)), Some((2, 2))).unwrap();
        assert_eq!(r2.len(), 3);
        assert_eq!(r2[0].members(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let r3 = enumerate_symmetric_ideals(3, Some((1, 1)), Some((2, 2))).unwrap();
        assert_eq!(r3.len(), 6);
        assert_eq!(r3[3].len(), 8);

        let all = enumerate_symmetric_ideals(1, None, None).unwrap();
        assert_eq!(all.len(), brute_force_ideals(1, None, None));
        assert_eq!(
            all.iter().map(|j| j.len()).collect::<Vec<_>>(),
            vec![0, 1, 3, 4]
        );
    }

    #[test]
    fn ideal_counts_match_subset_filter() {
        for r in 1..=3 {
            let points: Vec<Option<GridPoint>> = std::iter::once(None)
                .chain((0..=r).flat_map(|i| (0..=r).map(move |j| Some((i, j)))))
                .collect();
            for &c in &points {
                for &e in &points {
                    let ours = enumerate_symmetric_ideals(r, c, e).unwrap();
                    assert_eq!(ours.len(), brute_force_ideals(r, c, e), "r={r} {c:?} {e:?}");
                }
            }
        }
    }

    #[test]
    fn contradictory_constraints_give_nothing() {
        assert!(enumerate_symmetric_ideals(2, Some((2, 2)), Some((1, 1)))
            .unwrap()
            .is_empty());
        assert!(enumerate_symmetric_ideals(2, Some((3, 0)), None).is_err());
    }

    #[test]
    fn ideal_validation() {
        assert!(PosetIdeal::new(2, &[(0, 0), (0, 1)]).is_err());
        assert!(PosetIdeal::new(2, &[(1, 1)]).is_err());
        let j = PosetIdeal::new(2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(j.maximal(), vec![(0, 1), (1, 0)]);
        assert_eq!(j.complement_minimal(), vec![(0, 2), (1, 1), (2, 0)]);
    }

    #[test]
    fn inequality_examples() {
        let j = PosetIdeal::new(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(ineq_21_holds(&j, &[0, 0, 2, 3, 5, 6]).unwrap());
        let j7 = PosetIdeal::new(
            2,
            &[
                (0, 0),
                (0, 1),
                (0, 2),
                (1, 0),
                (1, 1),
                (1, 2),
                (2, 0),
                (2, 1),
            ],
        )
        .unwrap();
        let ineq = evaluate_ideal(&j7, &[0, 0, 2, 3, 6, 7]).unwrap();
        assert!(!ineq.holds);
        assert_eq!((ineq.lhs_value, ineq.rhs_value), (11, 12));
        assert_eq!(ineq.render(), "a3+a5 + 1 >= a4+a4");

        let empty = PosetIdeal::new(2, &[]).unwrap();
        assert!(matches!(
            ineq_21_holds(&empty, &[0, 0, 2, 3, 5, 6]),
            Err(Error::Inapplicable(_))
        ));
        let full: Vec<GridPoint> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        let full = PosetIdeal::new(2, &full).unwrap();
        assert!(matches!(
            ineq_21_holds(&full, &[0, 0, 2, 3, 5, 6]),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn cover_examples() {
        let c = covers_interval(&[0, 0, 2, 3, 5, 6], 7, 9).unwrap();
        assert_eq!((c.by_inequalities, c.direct), (Some(true), true));
        let c = covers_interval(&[0, 0, 2, 3, 6, 7], 7, 11).unwrap();
        assert_eq!((c.by_inequalities, c.direct), (Some(false), false));
        let c = covers_interval(&[0, 0, 2, 3, 6, 7], 5, 4).unwrap();
        assert!(c.verdict());
        // no even-index sum exceeds 2d
        let c = covers_interval(&[0, 0, 2, 3, 6, 7], 3, 14).unwrap();
        assert!(!c.precondition_met());
        assert_eq!(c.verdict(), c.direct);
    }

    #[test]
    fn cover_sweep_finds_loose_boundary_mismatch() {
        // 1 ∉ 2G_M sits below u = 2 but above the boundary sum 0
        let c = covers_interval(&[0, 0, 2, 3, 5, 6], 2, 2).unwrap();
        assert_eq!((c.by_inequalities, c.direct), (Some(false), true));

        let sweep = cover_sweep(&[0, 0, 2, 3, 5, 6]).unwrap();
        assert!(sweep.agree < sweep.intervals);
        assert_eq!(sweep.tight_agree, sweep.tight_intervals);
        assert_eq!(sweep.sufficiency_failures, 0);
    }

    #[test]
    fn inequality_buchsbaum_examples() {
        assert!(
            buchsbaum_by_inequalities(&curve(6, "0,2-3,5-6"))
                .unwrap()
                .buchsbaum
        );
        assert!(
            buchsbaum_by_inequalities(&curve(8, "0,2-3,5-6,8"))
                .unwrap()
                .buchsbaum
        );
        let v = buchsbaum_by_inequalities(&curve(11, "0,2-3,8-9,11")).unwrap();
        assert!(!v.buchsbaum);
        assert_eq!(v.checked, 6);
        assert!(v
            .violated
            .iter()
            .any(|i| i.lhs_value == 15 && i.rhs_value == 16));
        assert!(matches!(
            buchsbaum_by_inequalities(&curve(10, "0,2-10")),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn concrete_systems() {
        let sys = concrete_system(&curve(6, "0,2-3,5-6")).unwrap();
        assert_eq!(sys.lines.len(), 3);
        assert!(sys.holds());
        assert_eq!(sys.lines[1].text, "max{2b, d} + 1 >= a + c");

        let sys = concrete_system(&curve(11, "0,2-3,8-9,11")).unwrap();
        let verdicts: Vec<bool> = sys.lines.iter().map(|l| l.inequality.holds).collect();
        assert_eq!(verdicts, vec![false, true, true, true, true, false]);

        assert!(concrete_system(&curve(6, "0-2,4-6")).is_err());
    }

    #[test]
    fn concrete_lines_match_letter_evaluation() {
        // Evaluate the displayed systems by hand and compare with the ideal-derived values.
        for d in 6..=20u64 {
            let (a, b, c) = (2u64, 3u64, d - 1);
            let sys = concrete_system(&curve(d, &format!("0,{a}-{b},{c}-{d}"))).unwrap();
            let want = [
                2 * b + 1 >= c,
                (2 * b).max(d) + 1 >= a + c,
                b + d + 1 >= 2 * c,
            ];
            let got: Vec<bool> = sys.lines.iter().map(|l| l.inequality.holds).collect();
            assert_eq!(got, want, "d={d}");
        }
        for d in 8..=20u64 {
            let (a, b, c, e) = (2u64, 3u64, d - 3, d - 2);
            let sys = concrete_system(&curve(d, &format!("0,{a}-{b},{c}-{e},{d}"))).unwrap();
            let want = [
                2 * b + 1 >= c,
                (2 * b).max(e) + 1 >= (a + c).min(d),
                b + e + 1 >= (2 * c).min(d),
                (2 * b).max(d) + 1 >= a + c,
                d.max(b + e) + 1 >= (a + d).min(2 * c),
                b + d + 1 >= 2 * c,
            ];
            let got: Vec<bool> = sys.lines.iter().map(|l| l.inequality.holds).collect();
            assert_eq!(got, want, "d={d}");
        }
    }
}
