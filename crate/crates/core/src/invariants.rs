//! Reduction numbers, Buchsbaum tests and Castelnuovo–Mumford regularity
//! from degree slices.
//!
//! Each invariant has at least two independent routes here; the routes that
//! must agree are compared in [`invariant_report`] and any mismatch is
//! surfaced as [`Verdict::Disagree`] rather than swallowed.
//!
//! The Buchsbaum condition `(E \ {0}) + E* ⊆ E` is tested on the degree-1
//! generators only. This is enough: every element of `E \ {0}` is a
//! generator plus an element of `E`, and `E + E ⊆ E`, so closure of
//! `E* \ E` under adding single generators gives the whole condition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{classify, CurveKind};
use crate::semigroup::{gsw_cm_test, multiples, CurveSpec, StarData};
use crate::sets::ExponentSet;

/// Outcome of comparing redundant criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    Disagree,
    Inapplicable,
}

impl Verdict {
    pub fn from_values<T: PartialEq>(values: &[Option<T>]) -> Self {
        let present: Vec<&T> = values.iter().flatten().collect();
        if present.len() < 2 {
            Verdict::Inapplicable
        } else if present.windows(2).all(|w| w[0] == w[1]) {
            Verdict::Agree
        } else {
            Verdict::Disagree
        }
    }

    pub fn from_check(applicable: bool, ok: bool) -> Self {
        match (applicable, ok) {
            (false, _) => Verdict::Inapplicable,
            (true, true) => Verdict::Agree,
            (true, false) => Verdict::Disagree,
        }
    }
}

/// Least `n ≥ 0` with `(n+1)G = {0,d} + nG`, reading `0G` as `{0}`.
///
/// Uses the convention in which the reduction number of the full Veronese
/// ring is 1; some references count one less.
pub fn reduction_number(g: &ExponentSet, d: u64) -> Result<usize> {
    if !g.contains(0) || !g.contains(d) {
        return Err(Error::InvalidInput(format!(
            "reduction number needs 0 and {d} in {g}"
        )));
    }
    let bound = g.clip(0, d).gaps().total() as usize + 1;
    let q = ExponentSet::from_members([0, d]);
    let mut current = ExponentSet::singleton(0);
    for n in 0..=bound {
        let next = current.add(g);
        if next == q.add(&current) {
            return Ok(n);
        }
        current = next;
    }
    Err(Error::InternalInconsistency(format!(
        "reduction number of {g} exceeds the gap bound {bound}"
    )))
}

/// Buchsbaum test `(E \ {0}) + E* ⊆ E` on the computed slices.
pub fn is_buchsbaum_semigroup(curve: &CurveSpec, star: &StarData) -> bool {
    (1..=star.n_stop).filter(|&n| star.h1_dim(n) > 0).all(|n| {
        curve
            .g_m()
            .add(&star.excess(n))
            .is_subset(star.multiple(n + 1))
    })
}

/// Buchsbaum test `G_M + G_N = 2G_M`; requires an equigenerated `R*`.
pub fn is_buchsbaum_degree_d(curve: &CurveSpec, star: &StarData) -> Result<bool> {
    let g_n = star
        .g_n
        .as_ref()
        .ok_or_else(|| Error::Inapplicable("R* is not generated in degree 1".into()))?;
    Ok(curve.g_m().add(g_n) == star.multiple(2).clone())
}

/// Buchsbaum test with `(E - 2e₁) ∩ (E - 2e₂)` in place of `E*`, checked in
/// degrees `1..=n_stop`.
pub fn weak_buchsbaum_test(curve: &CurveSpec) -> bool {
    let d = curve.d();
    let n_stop = curve.n_stop();
    let mult = multiples(curve.g_m(), n_stop + 2);
    (1..=n_stop).all(|n| {
        let top = n as u64 * d;
        let level = &mult[n + 2];
        let witnesses = level
            .shift_down(2 * d)
            .clip(0, top)
            .intersection(&level.clip(0, top));
        curve.g_m().add(&witnesses).is_subset(&mult[n + 1])
    })
}

/// `r_Q(R*)`: over `G_N` when `R*` is generated in degree 1, otherwise over
/// the slice family.
pub fn star_reduction_number(star: &StarData) -> Result<usize> {
    match &star.g_n {
        Some(g_n) => reduction_number(g_n, star.d()),
        None => star.reduction_number(),
    }
}

/// `max{a(R*/R) + 1, r_Q(R*)}`, where an absent `a(R*/R)` contributes nothing.
pub fn regularity_from_star(star: &StarData, r_q_star: usize) -> usize {
    match star.a_star {
        Some(a) => (a + 1).max(r_q_star),
        None => r_q_star,
    }
}

/// `min{n ≥ r_Q(R*) : nG_M = nG_N}`; `None` unless `R*` is generated in degree 1.
pub fn regularity_by_slices(star: &StarData, r_q_star: usize) -> Option<usize> {
    star.g_n.as_ref()?;
    (r_q_star..=star.n_stop).find(|&n| star.slice(n) == star.multiple(n))
}

/// Castelnuovo–Mumford regularity. When `R*` is generated in degree 1 the
/// slice-comparison formula is evaluated as well and must agree.
pub fn regularity(star: &StarData) -> Result<usize> {
    let r_q_star = star_reduction_number(star)?;
    let reg = regularity_from_star(star, r_q_star);
    if star.equigenerated {
        match regularity_by_slices(star, r_q_star) {
            Some(other) if other == reg => {}
            other => {
                return Err(Error::InternalInconsistency(format!(
                    "regularity routes disagree: {reg} vs {other:?}"
                )))
            }
        }
    }
    Ok(reg)
}

/// Regularity as the least `n` with `[n a_3, n a_{2r}] ⊆ nG_M` (Type A,
/// `r ≥ 2`) or the least `n ≥ 2` with `[n a_3, n a_{2r-2}] ⊆ nG_M` (Type B,
/// `r ≥ 3`). Dual instances are read through the reflection.
pub fn reg_via_coverage(curve: &CurveSpec) -> Result<usize> {
    let cls = classify(curve);
    let a = &cls.a_seq;
    let r = cls.r;
    let d = curve.d();
    let (hi_index, start) = match cls.kind {
        CurveKind::TypeA if r >= 2 => (2 * r, 1),
        CurveKind::TypeB if r >= 3 => (2 * r - 2, 2),
        CurveKind::TypeA | CurveKind::TypeB => {
            return Err(Error::Inapplicable(format!(
                "coverage formula needs r >= 2 (Type A) or r >= 3 (Type B), got r = {r}"
            )))
        }
        _ => {
            return Err(Error::Inapplicable(format!(
                "classification mismatch: {curve} is neither Type A nor Type B"
            )))
        }
    };
    let g = ExponentSet::from_intervals(a.chunks(2).map(|p| (p[0], p[1])));
    let bound = curve.gap_sum() as usize + 1;
    let mut power = g.nfold(start)?;
    for n in start..=bound.max(start) {
        if power.contains_interval(n as u64 * a[3], n as u64 * a[hi_index]) {
            return Ok(n);
        }
        power = power.add(&g);
    }
    Err(Error::InternalInconsistency(format!(
        "coverage regularity of {curve} exceeds the gap bound {bound} (d = {d})"
    )))
}

/// Cohen-Macaulay, Buchsbaum and regularity data of one curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub cm: bool,
    pub buchsbaum: bool,
    pub reg: usize,
    pub r_q_r: usize,
    pub r_q_star: usize,
    pub a1: Option<usize>,
    pub a2: i64,
    /// Individual verdicts of each Cohen-Macaulay / Buchsbaum criterion.
    pub criteria: BTreeMap<String, Option<bool>>,
    pub reg_by_slices: Option<usize>,
    pub criteria_agreement: BTreeMap<String, Verdict>,
}

pub fn invariant_report(curve: &CurveSpec, star: &StarData) -> Result<InvariantReport> {
    let cm_star = star.a_star.is_none();
    let cm_gsw = gsw_cm_test(curve);
    let bm_semigroup = is_buchsbaum_semigroup(curve, star);
    let bm_weak = weak_buchsbaum_test(curve);
    let bm_degree = is_buchsbaum_degree_d(curve, star).ok();

    let r_q_star = star_reduction_number(star)?;
    let r_q_r = reduction_number(curve.g_m(), curve.d())?;
    let reg = regularity_from_star(star, r_q_star);
    let reg_by_slices = regularity_by_slices(star, r_q_star);

    let mut criteria = BTreeMap::new();
    criteria.insert("cm_star_equals_e".to_string(), Some(cm_star));
    criteria.insert("cm_single_shift".to_string(), Some(cm_gsw));
    criteria.insert("buchsbaum_semigroup".to_string(), Some(bm_semigroup));
    criteria.insert("buchsbaum_double_shift".to_string(), Some(bm_weak));
    criteria.insert("buchsbaum_degree_d".to_string(), bm_degree);

    let mut agreement = BTreeMap::new();
    agreement.insert(
        "cm".to_string(),
        Verdict::from_values(&[Some(cm_star), Some(cm_gsw)]),
    );
    agreement.insert(
        "buchsbaum".to_string(),
        Verdict::from_values(&[Some(bm_semigroup), Some(bm_weak), bm_degree]),
    );
    agreement.insert(
        "reg_slices".to_string(),
        Verdict::from_check(star.equigenerated, reg_by_slices == Some(reg)),
    );
    agreement.insert(
        "reduction_chain".to_string(),
        Verdict::from_check(true, r_q_star <= r_q_r && r_q_r <= reg),
    );
    agreement.insert(
        "cm_reg_equals_reduction".to_string(),
        Verdict::from_check(cm_star, r_q_r == reg && r_q_star == reg),
    );
    agreement.insert(
        "buchsbaum_reg_equals_reduction".to_string(),
        Verdict::from_check(
            bm_semigroup,
            reg == r_q_r && (r_q_r == r_q_star || r_q_r == r_q_star + 1),
        ),
    );
    agreement.insert(
        "cm_implies_buchsbaum".to_string(),
        Verdict::from_check(cm_star, bm_semigroup),
    );

    Ok(InvariantReport {
        cm: cm_star,
        buchsbaum: bm_semigroup,
        reg,
        r_q_r,
        r_q_star,
        a1: star.a_star,
        a2: r_q_star as i64 - 2,
        criteria,
        reg_by_slices,
        criteria_agreement: agreement,
    })
}
