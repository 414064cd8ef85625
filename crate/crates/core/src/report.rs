//! Full analysis of one curve, bundling every verdict with the agreement
//! matrix of its redundant routes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{classify, reg_bounds, BoundsReport, Classification, CurveKind};
use crate::invariants::{invariant_report, reg_via_coverage, InvariantReport, Verdict};
use crate::poset::{buchsbaum_by_inequalities, concrete_system, IneqSystem, InequalityVerdict};
use crate::semigroup::{is_cohen_macaulay, macaulayfication, CurveSpec, StarData};
use crate::sets::{ExponentSet, GapProfile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub d: u64,
    pub set: ExponentSet,
    pub a_seq: Vec<u64>,
    pub gaps: GapProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSummary {
    pub g_n: Option<ExponentSet>,
    pub equigenerated: bool,
    pub h1_dims: Vec<u64>,
    pub length_h1: u64,
    pub a_star: Option<usize>,
    pub fixpoint_degree: usize,
    pub m_max: u64,
}

impl From<&StarData> for StarSummary {
    fn from(s: &StarData) -> Self {
        StarSummary {
            g_n: s.g_n.clone(),
            equigenerated: s.equigenerated,
            h1_dims: s.h1_dims.clone(),
            length_h1: s.length_h1,
            a_star: s.a_star,
            fixpoint_degree: s.fixpoint_degree,
            m_max: s.m_max(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub classification: Classification,
    pub star: StarSummary,
    pub invariants: InvariantReport,
    pub bounds: BoundsReport,
    pub reg_via_coverage: Option<usize>,
    pub inequalities: Option<InequalityVerdict>,
    pub concrete_system: Option<IneqSystem>,
    pub agreement: BTreeMap<String, Verdict>,
}

impl AnalysisReport {
    pub fn has_disagreement(&self) -> bool {
        self.agreement.values().any(|v| *v == Verdict::Disagree)
    }

    pub fn disagreements(&self) -> Vec<&str> {
        self.agreement
            .iter()
            .filter(|(_, v)| **v == Verdict::Disagree)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn curve(&self) -> Result<CurveSpec> {
        CurveSpec::new(self.input.d, self.input.set.clone())
    }
}

/// Classes where Buchsbaumness is equivalent to `reg = 2`.
fn buchsbaum_reg_two_applies(cls: &Classification) -> bool {
    match cls.kind {
        CurveKind::Smooth => cls.r >= 1,
        CurveKind::TypeA => cls.r >= 2,
        CurveKind::TypeB => cls.r >= 3,
        CurveKind::Other => false,
    }
}

fn inapplicable_to_none<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Inapplicable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The core verdicts, without the reflected re-run.
fn analyze_single(curve: &CurveSpec) -> Result<AnalysisReport> {
    let star = macaulayfication(curve)?;
    let cls = classify(curve);
    let inv = invariant_report(curve, &star)?;
    let bounds = reg_bounds(curve, &cls)?;
    let coverage = inapplicable_to_none(reg_via_coverage(curve))?;
    let inequalities = inapplicable_to_none(buchsbaum_by_inequalities(curve))?;
    let system = inapplicable_to_none(concrete_system(curve))?;

    let mut agreement = inv.criteria_agreement.clone();
    let reg = inv.reg as i64;
    agreement.insert(
        "reg_bounds".into(),
        Verdict::from_check(true, bounds.admits(reg)),
    );
    agreement.insert(
        "reg_coverage".into(),
        Verdict::from_values(&[Some(inv.reg), coverage]),
    );
    agreement.insert(
        "reg_closed_form".into(),
        Verdict::from_values(&[Some(reg), bounds.formula_exact]),
    );
    agreement.insert(
        "buchsbaum_inequalities".into(),
        Verdict::from_values(&[
            Some(inv.buchsbaum),
            inequalities.as_ref().map(|v| v.buchsbaum),
        ]),
    );
    agreement.insert(
        "concrete_system".into(),
        Verdict::from_values(&[Some(inv.buchsbaum), system.as_ref().map(|s| s.holds())]),
    );
    agreement.insert(
        "buchsbaum_iff_reg_two".into(),
        Verdict::from_check(
            buchsbaum_reg_two_applies(&cls),
            inv.buchsbaum == (inv.reg == 2),
        ),
    );
    let idempotent = match &star.g_n {
        Some(g_n) => {
            is_cohen_macaulay(&CurveSpec::new(curve.d(), g_n.clone())?)? && star.is_saturated()
        }
        None => star.is_saturated(),
    };
    agreement.insert(
        "macaulayfication_idempotent".into(),
        Verdict::from_check(true, idempotent),
    );

    Ok(AnalysisReport {
        input: InputEcho {
            d: curve.d(),
            set: curve.g_m().clone(),
            a_seq: curve.a_seq().to_vec(),
            gaps: curve.gaps(),
        },
        classification: cls,
        star: StarSummary::from(&star),
        invariants: inv,
        bounds,
        reg_via_coverage: coverage,
        inequalities,
        concrete_system: system,
        agreement,
    })
}

/// Runs every criterion on the curve and on its reflection `α ↦ d - α`,
/// recording whether the reflection preserves all verdicts.
pub fn analyze(curve: &CurveSpec) -> Result<AnalysisReport> {
    let mut report = analyze_single(curve)?;
    let dual = analyze_single(&curve.reflect())?;
    let (a, b) = (&report.invariants, &dual.invariants);
    let same = a.cm == b.cm
        && a.buchsbaum == b.buchsbaum
        && a.reg == b.reg
        && a.r_q_r == b.r_q_r
        && a.r_q_star == b.r_q_star
        && a.a1 == b.a1
        && report.classification.kind == dual.classification.kind;
    report
        .agreement
        .insert("duality".into(), Verdict::from_check(true, same));
    Ok(report)
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "none".to_string(), |x| x.to_string())
}

/// Human-readable rendering of a report.
pub fn render_text(rep: &AnalysisReport) -> String {
    let mut s = String::new();
    let inv = &rep.invariants;
    let cls = &rep.classification;
    let _ = writeln!(s, "curve        d={} set={}", rep.input.d, rep.input.set);
    let _ = writeln!(s, "a-sequence   {:?}", rep.input.a_seq);
    let gaps: Vec<u64> = rep.input.gaps.gaps.iter().map(|g| g.length).collect();
    let _ = writeln!(s, "gap lengths  {gaps:?}");
    let _ = writeln!(
        s,
        "class        {:?} (r={}{}, eps={}, l={})",
        cls.kind,
        cls.r,
        if cls.swapped { ", reflected" } else { "" },
        opt(&cls.epsilon),
        opt(&cls.ell)
    );
    let _ = writeln!(
        s,
        "G_N          {}",
        rep.star
            .g_n
            .as_ref()
            .map_or("not equigenerated".to_string(), |g| g.to_string())
    );
    let _ = writeln!(
        s,
        "H1 dims      {:?} (length {}, a* = {})",
        rep.star.h1_dims,
        rep.star.length_h1,
        opt(&rep.star.a_star)
    );
    let _ = writeln!(s, "cohen-mac.   {}", inv.cm);
    let _ = writeln!(s, "buchsbaum    {}", inv.buchsbaum);
    for (k, v) in &inv.criteria {
        let _ = writeln!(s, "  {k:<24} {}", opt(v));
    }
    let _ = writeln!(s, "reg          {}", inv.reg);
    let _ = writeln!(s, "r_Q(R)       {}", inv.r_q_r);
    let _ = writeln!(s, "r_Q(R*)      {}", inv.r_q_star);
    let _ = writeln!(s, "a1, a2       {}, {}", opt(&inv.a1), inv.a2);
    let _ = writeln!(
        s,
        "bounds       [{}, {}]",
        rep.bounds.lower, rep.bounds.upper
    );
    for e in &rep.bounds.entries {
        let _ = writeln!(
            s,
            "  {:<22} {:?} {:>3}  {}",
            e.name, e.kind, e.value, e.source
        );
    }
    if let Some((lo, hi)) = rep.bounds.formula_range {
        if lo != hi {
            let _ = writeln!(s, "  closed-form range [{lo}, {hi}], computed {}", inv.reg);
        }
    }
    if let Some(c) = rep.reg_via_coverage {
        let _ = writeln!(s, "reg by interval coverage {c}");
    }
    if let Some(iv) = &rep.inequalities {
        let _ = writeln!(
            s,
            "inequalities {} checked, {} violated",
            iv.checked,
            iv.violated.len()
        );
        for v in &iv.violated {
            let _ = writeln!(s, "  {}   [{} < {}]", v.render(), v.lhs_value, v.rhs_value);
        }
    }
    if let Some(sys) = &rep.concrete_system {
        s.push_str(&sys.render());
    }
    let _ = writeln!(s, "agreement");
    for (k, v) in &rep.agreement {
        let _ = writeln!(s, "  {k:<30} {v:?}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(d: u64, set: &str) -> AnalysisReport {
        analyze(&CurveSpec::new(d, set.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn macaulay_curve() {
        let r = rep(4, "0-1,3-4");
        assert_eq!(r.invariants.reg, 2);
        assert!(r.invariants.buchsbaum);
        assert!(!r.has_disagreement(), "{:?}", r.disagreements());
    }

    #[test]
    fn sharp_type_b_instance() {
        let r = rep(12, "0,3-5,9-10,12");
        assert_eq!(r.invariants.reg, 3);
        assert_eq!(r.bounds.formula_range, Some((2, 3)));
        assert_eq!(r.reg_via_coverage, Some(3));
        assert!(!r.has_disagreement(), "{:?}", r.disagreements());
        assert!(render_text(&r).contains("closed-form range [2, 3]"));
    }

    #[test]
    fn veronese_is_cm() {
        let r = rep(6, "0-6");
        assert!(r.invariants.cm);
        assert_eq!(r.invariants.reg, 1);
        assert_eq!(r.agreement["buchsbaum_iff_reg_two"], Verdict::Inapplicable);
    }

    #[test]
    fn json_round_trip_and_reanalysis() {
        for (d, s) in [(11, "0,2-3,8-9,11"), (9, "0-2,5,8-9"), (10, "0,4-5,8-10")] {
            let r = rep(d, s);
            let json = serde_json::to_string(&r).unwrap();
            let back: AnalysisReport = serde_json::from_str(&json).unwrap();
            assert_eq!(back, r);
            assert_eq!(analyze(&back.curve().unwrap()).unwrap(), r);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn curve_strategy() -> impl Strategy<Value = CurveSpec> {
            (2u64..=16).prop_flat_map(|d| {
                proptest::collection::vec(any::<bool>(), (d - 1) as usize).prop_map(move |mask| {
                    let members = std::iter::once(0)
                        .chain((1..d).filter(|&x| mask[(x - 1) as usize]))
                        .chain(std::iter::once(d));
                    CurveSpec::new(d, ExponentSet::from_members(members)).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(96))]

            #[test]
            fn routes_agree(c in curve_strategy()) {
                let r = analyze(&c).unwrap();
                prop_assert!(!r.has_disagreement(), "{}: {:?}", c, r.disagreements());
            }

            #[test]
            fn reflection_preserves_invariants(c in curve_strategy()) {
                let (a, b) = (analyze(&c).unwrap(), analyze(&c.reflect()).unwrap());
                prop_assert_eq!(a.invariants.cm, b.invariants.cm);
                prop_assert_eq!(a.invariants.buchsbaum, b.invariants.buchsbaum);
                prop_assert_eq!(a.invariants.reg, b.invariants.reg);
                prop_assert_eq!(a.star.length_h1, b.star.length_h1);
            }

            #[test]
            fn regularity_within_gap_bounds(c in curve_strategy()) {
                let r = analyze(&c).unwrap();
                let reg = r.invariants.reg as i64;
                prop_assert!(r.bounds.lower <= reg && reg <= r.bounds.eg_bound && reg <= r.bounds.lvovsky_bound);
                prop_assert_eq!(r.invariants.cm, r.star.length_h1 == 0);
            }
        }
    }
}
