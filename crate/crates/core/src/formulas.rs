//! Curve classification, closed-form regularity values and bounds, and the
//! sumset lemmas behind them as directly checkable predicates.
//!
//! Every formula refuses to produce a number outside its hypotheses and
//! returns [`Error::Inapplicable`] instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::CurveSpec;
use crate::sets::ExponentSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    /// `a_1 > 0` and `a_{2r} < d`.
    Smooth,
    /// `a_1 = 0`, `a_{2r} < d`, `2a_2 - 1 ≤ a_3`.
    TypeA,
    /// `a_1 = 0`, `a_{2r} = d`, `2a_2 - 1 ≤ a_3`, `a_{2r-2} + d - 1 ≤ 2a_{2r-1}`.
    TypeB,
    Other,
}

/// Side conditions of the regularity formulas, evaluated on the normalized
/// a-sequence. `None` means the indices involved do not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HypothesisFlags {
    /// `2a_2 - 1 ≤ a_3`.
    pub head_spread: Option<bool>,
    /// `a_{2r-2} + d - 1 ≤ 2a_{2r-1}`.
    pub tail_spread: Option<bool>,
    /// Type A: `a_3 - a_2 ≥ d - a_{2r}` (selects the sharper gap bound).
    pub type_a_wide_head: Option<bool>,
    /// Type B: `a_3 - a_2 ≥ d - a_{2r-2}`.
    pub type_b_wide_head: Option<bool>,
    /// Type B: `a_{2r-1} - a_{2r-2} ≥ a_3`.
    pub type_b_wide_tail: Option<bool>,
    /// Type B, `r = 3`: `a - 1 ≤ e - c` and `d - e - 1 ≤ b - a`.
    pub b3_balanced: Option<bool>,
    /// Type B, `r = 3`: `b - a ≥ d - c`.
    pub b3_wide_head: Option<bool>,
    /// Type B, `r = 3`: `e - c ≥ b`.
    pub b3_wide_tail: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: CurveKind,
    pub r: usize,
    pub d: u64,
    /// Whether the a-sequence was reflected `a_i ↦ d - a_{2r+1-i}` to reach
    /// Type A form.
    pub swapped: bool,
    /// The a-sequence the class conditions and formulas refer to.
    pub a_seq: Vec<u64>,
    pub epsilon: Option<u64>,
    /// The class's gap length: all gaps (Smooth), gaps `2..=r` (Type A) or
    /// gaps `2..=r-1` (Type B).
    pub ell: Option<u64>,
    pub flags: HypothesisFlags,
}

fn reflect_seq(a: &[u64], d: u64) -> Vec<u64> {
    a.iter().rev().map(|&x| d - x).collect()
}

fn kind_of(a: &[u64], d: u64) -> CurveKind {
    let r = a.len() / 2 - 1;
    let head_spread = r >= 1 && 2 * a[2] <= a[3] + 1;
    match (a[1] > 0, a[2 * r] < d) {
        (true, true) => CurveKind::Smooth,
        (false, true) if r >= 1 && head_spread => CurveKind::TypeA,
        (false, false) if r >= 2 && head_spread && a[2 * r - 2] + d <= 2 * a[2 * r - 1] + 1 => {
            CurveKind::TypeB
        }
        _ => CurveKind::Other,
    }
}

/// Largest gap length among gaps `lo..=hi` (1-based), if any.
fn max_gap(a: &[u64], lo: usize, hi: usize) -> Option<u64> {
    (lo..=hi).map(|i| a[2 * i] - a[2 * i - 1] - 1).max()
}

pub fn classify(curve: &CurveSpec) -> Classification {
    let d = curve.d();
    let r = curve.r();
    let raw = curve.a_seq();
    let mut kind = kind_of(raw, d);
    let mut swapped = false;
    let mut a = raw.to_vec();
    if kind == CurveKind::Other && raw[1] > 0 && raw[2 * r] == d {
        let reflected = reflect_seq(raw, d);
        if kind_of(&reflected, d) == CurveKind::TypeA {
            kind = CurveKind::TypeA;
            swapped = true;
            a = reflected;
        }
    }

    let mut flags = HypothesisFlags::default();
    if r >= 1 {
        flags.head_spread = Some(2 * a[2] <= a[3] + 1);
    }
    if r >= 2 {
        flags.tail_spread = Some(a[2 * r - 2] + d <= 2 * a[2 * r - 1] + 1);
    }

    let (epsilon, ell) = match kind {
        CurveKind::Smooth => (Some(a[1].min(d - a[2 * r])), max_gap(&a, 1, r)),
        CurveKind::TypeA => {
            if r >= 2 {
                flags.type_a_wide_head = Some(a[3] - a[2] >= d - a[2 * r]);
            }
            (Some(a[3].min(d - a[2 * r])), max_gap(&a, 2, r))
        }
        CurveKind::TypeB => {
            if r >= 3 {
                flags.type_b_wide_head = Some(a[3] - a[2] >= d - a[2 * r - 2]);
                flags.type_b_wide_tail = Some(a[2 * r - 1] - a[2 * r - 2] >= a[3]);
            }
            if r == 3 {
                let (pa, pb, pc, pe) = (a[2], a[3], a[4], a[5]);
                flags.b3_balanced = Some(pa <= pe - pc + 1 && d <= pe + pb - pa + 1);
                flags.b3_wide_head = Some(pb - pa >= d - pc);
                flags.b3_wide_tail = Some(pe - pc >= pb);
            }
            (
                Some(a[3].min(d - a[2 * r - 2])),
                max_gap(&a, 2, r.saturating_sub(1)),
            )
        }
        CurveKind::Other => (None, None),
    };

    Classification {
        kind,
        r,
        d,
        swapped,
        a_seq: a,
        epsilon,
        ell,
        flags,
    }
}

fn floor_div(num: i64, den: i64) -> Result<i64> {
    if den == 0 {
        return Err(Error::InternalInconsistency(
            "zero denominator in regularity formula".into(),
        ));
    }
    Ok(num.div_euclid(den))
}

/// `⌊(c - b - 2)/ε⌋ + 2` with `ε = min{b, d - c}` for `{0} ∪ [a,b] ∪ [c,d]`.
pub fn reg_formula_type_a_r2(a: u64, b: u64, c: u64, d: u64) -> Result<i64> {
    if !(1 < a && a < b && b + 1 < c && c < d && 2 * a <= b + 1) {
        return Err(Error::Inapplicable(format!(
            "({a},{b},{c},{d}) violates 1 < a < b < c-1 < c < d, 2a-1 <= b"
        )));
    }
    let eps = b.min(d - c) as i64;
    Ok(floor_div(c as i64 - b as i64 - 2, eps)? + 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegValue {
    Exact(i64),
    /// Inclusive range of possible values.
    Range(i64, i64),
}

impl RegValue {
    pub fn contains(&self, v: i64) -> bool {
        match *self {
            RegValue::Exact(x) => x == v,
            RegValue::Range(lo, hi) => lo <= v && v <= hi,
        }
    }
}

/// Regularity of `{0,d} ∪ [a,b] ∪ [c,e]`: exact when one of the balance or
/// width conditions holds, else a two-value range.
pub fn reg_formula_type_b_r3(a: u64, b: u64, c: u64, e: u64, d: u64) -> Result<RegValue> {
    if !(1 < a && a < b && b + 1 < c && c < e && e + 1 < d && 2 * a <= b + 1 && c + d <= 2 * e + 1)
    {
        return Err(Error::Inapplicable(format!(
            "({a},{b},{c},{e},{d}) violates 1 < a < b < c-1 < c < e < d-1, 2a-1 <= b, c+d-1 <= 2e"
        )));
    }
    let eps = b.min(d - c) as i64;
    let base = floor_div(c as i64 - b as i64 - 2, eps)? + 2;
    let balanced = a <= e - c + 1 && d <= e + b - a + 1;
    let wide_head = b - a >= d - c;
    let wide_tail = e - c >= b;
    Ok(if balanced || wide_head || wide_tail {
        RegValue::Exact(base)
    } else {
        RegValue::Range(base, base + 1)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    pub value: i64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub lower: i64,
    pub upper: i64,
    pub eg_bound: i64,
    pub lvovsky_bound: i64,
    pub hhs_bound: Option<i64>,
    pub formula_exact: Option<i64>,
    pub formula_range: Option<(i64, i64)>,
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    /// Whether `reg` respects every entry.
    pub fn admits(&self, reg: i64) -> bool {
        self.entries.iter().all(|e| match e.kind {
            BoundKind::Lower => e.value <= reg,
            BoundKind::Upper => reg <= e.value,
            BoundKind::Exact => reg == e.value,
        })
    }

    pub fn violations(&self, reg: i64) -> Vec<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| match e.kind {
                BoundKind::Lower => e.value > reg,
                BoundKind::Upper => reg > e.value,
                BoundKind::Exact => reg != e.value,
            })
            .collect()
    }
}

struct Entries(Vec<BoundEntry>);

impl Entries {
    fn push(&mut self, name: &str, kind: BoundKind, value: i64, source: &str) {
        self.0.push(BoundEntry {
            name: name.into(),
            kind,
            value,
            source: source.into(),
        });
    }
}

pub fn reg_bounds(curve: &CurveSpec, cls: &Classification) -> Result<BoundsReport> {
    let gaps = curve.gaps();
    let d = cls.d as i64;
    let r = cls.r;
    let a: Vec<i64> = cls.a_seq.iter().map(|&x| x as i64).collect();
    let mut out = Entries(Vec::new());

    let eg = gaps.total() as i64 + 1;
    let lvovsky = (gaps.ell_max + gaps.ell_second) as i64 + 1;
    out.push(
        "gap_sum",
        BoundKind::Upper,
        eg,
        "multiplicity minus codimension: sum of gap lengths + 1",
    );
    out.push(
        "top_two_gaps",
        BoundKind::Upper,
        lvovsky,
        "largest plus second largest gap + 1",
    );

    let mut hhs = None;
    let mut formula_exact = None;
    let mut formula_range = None;

    match cls.kind {
        CurveKind::Smooth if r >= 1 => {
            let eps = cls.epsilon.unwrap() as i64;
            let ell = cls.ell.unwrap() as i64;
            let v = floor_div(ell - 1, eps)? + 2;
            hhs = Some(v);
            out.push(
                "smooth_gap_fraction",
                BoundKind::Upper,
                v,
                "smooth: floor((l-1)/eps)+2, eps = min{a1, d-a2r}",
            );
        }
        CurveKind::TypeA if r >= 2 => {
            let eps = cls.epsilon.unwrap() as i64;
            let ell = cls.ell.unwrap() as i64;
            let v = if cls.flags.type_a_wide_head == Some(true) {
                floor_div(ell - 1, eps)? + 2
            } else {
                floor_div(ell - 1, eps)? + 3
            };
            out.push(
                "type_a_gap_fraction",
                BoundKind::Upper,
                v,
                "Type A: floor((l-1)/eps)+3, or +2 when a3-a2 >= d-a2r",
            );
            out.push(
                "type_a_refined",
                BoundKind::Upper,
                floor_div(ell + a[2] - 1, eps)? + 2,
                "Type A: floor((l+a2-1)/eps)+2",
            );
            let low =
                floor_div(a[4] - 2, a[3])?.max(floor_div(d - a[2 * r - 1] - 2, d - a[2 * r])?) + 1;
            out.push(
                "type_a_lower",
                BoundKind::Lower,
                low,
                "Type A: first/last gap exclusion",
            );
            if r == 2 {
                let v = reg_formula_type_a_r2(cls.a_seq[2], cls.a_seq[3], cls.a_seq[4], cls.d)?;
                formula_exact = Some(v);
                out.push(
                    "type_a_r2_exact",
                    BoundKind::Exact,
                    v,
                    "Type A, r = 2: floor((c-b-2)/eps)+2",
                );
            }
        }
        CurveKind::TypeB if r >= 3 => {
            let eps = cls.epsilon.unwrap() as i64;
            let ell = cls.ell.unwrap() as i64;
            let tail = d - a[2 * r - 1];
            out.push(
                "type_b_gap_fraction",
                BoundKind::Upper,
                floor_div(ell + a[2] + tail - 1, eps)? + 2,
                "Type B: floor((l+a2+d-a(2r-1)-1)/eps)+2",
            );
            if cls.flags.type_b_wide_head == Some(true) {
                out.push(
                    "type_b_wide_head",
                    BoundKind::Upper,
                    floor_div(ell + tail - 1, eps)? + 2,
                    "Type B, a3-a2 >= d-a(2r-2): floor((l+d-a(2r-1)-1)/eps)+2",
                );
            }
            if cls.flags.type_b_wide_tail == Some(true) {
                out.push(
                    "type_b_wide_tail",
                    BoundKind::Upper,
                    floor_div(ell + a[2] - 1, eps)? + 2,
                    "Type B, a(2r-1)-a(2r-2) >= a3: floor((l+a2-1)/eps)+2",
                );
            }
            let low = floor_div(a[4] - 2, a[3])?
                .max(floor_div(d - a[2 * r - 3] - 2, d - a[2 * r - 2])?)
                + 1;
            out.push(
                "type_b_lower",
                BoundKind::Lower,
                low,
                "Type B: first/last inner gap exclusion",
            );
            if r == 3 {
                let s = &cls.a_seq;
                match reg_formula_type_b_r3(s[2], s[3], s[4], s[5], cls.d)? {
                    RegValue::Exact(v) => {
                        formula_exact = Some(v);
                        out.push(
                            "type_b_r3_exact",
                            BoundKind::Exact,
                            v,
                            "Type B, r = 3, balanced or wide: floor((c-b-2)/eps)+2",
                        );
                        formula_range = Some((v, v));
                    }
                    RegValue::Range(lo, hi) => {
                        formula_range = Some((lo, hi));
                        out.push(
                            "type_b_r3_lower",
                            BoundKind::Lower,
                            lo,
                            "Type B, r = 3: floor((c-b-2)/eps)+2",
                        );
                        out.push(
                            "type_b_r3_upper",
                            BoundKind::Upper,
                            hi,
                            "Type B, r = 3: floor((c-b-2)/eps)+3",
                        );
                    }
                }
            }
        }
        _ => {}
    }

    let entries = out.0;
    let lower = entries
        .iter()
        .filter(|e| matches!(e.kind, BoundKind::Lower | BoundKind::Exact))
        .map(|e| e.value)
        .max()
        .unwrap_or(0);
    let upper = entries
        .iter()
        .filter(|e| matches!(e.kind, BoundKind::Upper | BoundKind::Exact))
        .map(|e| e.value)
        .min()
        .unwrap();
    Ok(BoundsReport {
        lower,
        upper,
        eg_bound: eg,
        lvovsky_bound: lvovsky,
        hhs_bound: hhs,
        formula_exact,
        formula_range,
        entries,
    })
}

/// One instance of a sumset lemma: the set `H`, the degree `n` and the
/// claimed containment or exclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "lemma", rename_all = "snake_case")]
pub enum LemmaInstance {
    /// `H = {0} ∪ [a,b]`, `0 ≤ a < b`, `2a-1 ≤ b`: `[a, nb] ⊆ nH`.
    HeadInterval { a: u64, b: u64, n: usize },
    /// Same `H`; for `c > α > b` and `n ≥ ⌊(a+c-α-1)/b⌋+1`: `α + nb ∈ nH + c`.
    HeadShift {
        a: u64,
        b: u64,
        c: u64,
        alpha: u64,
        n: usize,
    },
    /// `H = [c,e] ∪ {d}`, `0 < c < e ≤ d`, `d+c-1 ≤ 2e`: `[nc, e+(n-1)d] ⊆ nH`.
    TailInterval { c: u64, e: u64, d: u64, n: usize },
    /// Same `H`; for `b < α < c` and `n ≥ ⌊(d-e-b+α-1)/(d-c)⌋+1`: `α + nc ∈ nH + b`.
    TailShift {
        b: u64,
        c: u64,
        e: u64,
        d: u64,
        alpha: u64,
        n: usize,
    },
    /// `H = [0,b] ∪ [c,d]`, `0 < b < c < d`, `n ≤ ⌊(c-2)/b⌋`: `nb + 1 ∉ nH`.
    LowGap { b: u64, c: u64, d: u64, n: usize },
    /// Same `H`, `n ≤ ⌊(d-b-2)/(d-c)⌋`: `nc - 1 ∉ nH`.
    HighGap { b: u64, c: u64, d: u64, n: usize },
}

impl LemmaInstance {
    pub fn hypotheses_hold(&self) -> bool {
        match *self {
            LemmaInstance::HeadInterval { a, b, n } => n >= 1 && a < b && 2 * a <= b + 1,
            LemmaInstance::HeadShift { a, b, c, alpha, n } => {
                a < b
                    && 2 * a <= b + 1
                    && b < alpha
                    && alpha < c
                    && n as u64 > (a + c - alpha - 1) / b
            }
            LemmaInstance::TailInterval { c, e, d, n } => {
                n >= 1 && 0 < c && c < e && e <= d && d + c <= 2 * e + 1
            }
            LemmaInstance::TailShift {
                b,
                c,
                e,
                d,
                alpha,
                n,
            } => {
                0 < c
                    && c < e
                    && e <= d
                    && d + c <= 2 * e + 1
                    && b < alpha
                    && alpha < c
                    && n as u64 > (d - e + alpha - b - 1) / (d - c)
            }
            LemmaInstance::LowGap { b, c, d, n } => {
                n >= 1 && 0 < b && b < c && c < d && n as u64 <= (c - 2) / b
            }
            LemmaInstance::HighGap { b, c, d, n } => {
                n >= 1 && 0 < b && b < c && c < d && d >= b + 2 && n as u64 <= (d - b - 2) / (d - c)
            }
        }
    }

    fn family_multiple(&self) -> ExponentSet {
        let (h, n) = match *self {
            LemmaInstance::HeadInterval { a, b, n } | LemmaInstance::HeadShift { a, b, n, .. } => (
                ExponentSet::singleton(0).union(&ExponentSet::interval(a, b)),
                n,
            ),
            LemmaInstance::TailInterval { c, e, d, n }
            | LemmaInstance::TailShift { c, e, d, n, .. } => (
                ExponentSet::interval(c, e).union(&ExponentSet::singleton(d)),
                n,
            ),
            LemmaInstance::LowGap { b, c, d, n } | LemmaInstance::HighGap { b, c, d, n } => (
                ExponentSet::interval(0, b).union(&ExponentSet::interval(c, d)),
                n,
            ),
        };
        h.nfold(n).expect("lemma sets are nonempty and n >= 1")
    }

    /// Evaluates the lemma's claim by direct set computation.
    pub fn evaluate(&self) -> Result<bool> {
        if !self.hypotheses_hold() {
            return Err(Error::Inapplicable(format!(
                "{self:?} is outside the lemma's hypotheses"
            )));
        }
        let nh = self.family_multiple();
        Ok(match *self {
            LemmaInstance::HeadInterval { a, b, n } => nh.contains_interval(a, n as u64 * b),
            LemmaInstance::HeadShift { b, c, alpha, n, .. } => {
                nh.shift_up(c).contains(alpha + n as u64 * b)
            }
            LemmaInstance::TailInterval { c, e, d, n } => {
                nh.contains_interval(n as u64 * c, e + (n as u64 - 1) * d)
            }
            LemmaInstance::TailShift { b, c, alpha, n, .. } => {
                nh.shift_up(b).contains(alpha + n as u64 * c)
            }
            LemmaInstance::LowGap { b, n, .. } => !nh.contains(n as u64 * b + 1),
            LemmaInstance::HighGap { c, n, .. } => !nh.contains(n as u64 * c - 1),
        })
    }
}

pub fn lemma_predicate(instance: &LemmaInstance) -> Result<bool> {
    instance.evaluate()
}

/// Every lemma instance with all parameters `≤ d_max`; unbounded `n` ranges
/// are cut `extra_n` past their threshold (or at `extra_n` for `n ≥ 1`).
pub fn lemma_instances(d_max: u64, extra_n: usize) -> Vec<LemmaInstance> {
    let mut out = Vec::new();
    let cap = |threshold: u64| (threshold as usize + 1)..=(threshold as usize + extra_n);
    for b in 1..=d_max {
        for a in 0..b {
            if 2 * a > b + 1 {
                continue;
            }
            for n in 1..=extra_n {
                out.push(LemmaInstance::HeadInterval { a, b, n });
            }
            for c in b + 2..=d_max {
                for alpha in b + 1..c {
                    for n in cap((a + c - alpha - 1) / b) {
                        out.push(LemmaInstance::HeadShift { a, b, c, alpha, n });
                    }
                }
            }
        }
    }
    for d in 2..=d_max {
        for e in 2..=d {
            for c in 1..e {
                if d + c > 2 * e + 1 {
                    continue;
                }
                for n in 1..=extra_n {
                    out.push(LemmaInstance::TailInterval { c, e, d, n });
                }
                for b in 0..c {
                    for alpha in b + 1..c {
                        for n in cap((d - e + alpha - b - 1) / (d - c)) {
                            out.push(LemmaInstance::TailShift {
                                b,
                                c,
                                e,
                                d,
                                alpha,
                                n,
                            });
                        }
                    }
                }
            }
        }
        for c in 2..d {
            for b in 1..c {
                for n in 1..=((c - 2) / b) as usize {
                    out.push(LemmaInstance::LowGap { b, c, d, n });
                }
                if d >= b + 2 {
                    for n in 1..=((d - b - 2) / (d - c)) as usize {
                        out.push(LemmaInstance::HighGap { b, c, d, n });
                    }
                }
            }
        }
    }
    out
}
