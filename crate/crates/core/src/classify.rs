//! Lie nilpotency criteria, the almost-maximal classification and index cross-checks.

mod units;

pub use units::{unit_group_class, DEFAULT_MAX_UNITS};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraContext;
use crate::error::{Error, Result};
use crate::group::{is_power_of, Group, GroupSummary};
use crate::series::{default_bound, series_report, SeriesReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NilpotencyReason {
    Ok,
    GNotNilpotent,
    DerivedNotPGroup,
    CharZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyStatus {
    pub lie_nilpotent: bool,
    pub reason: NilpotencyReason,
}

impl NilpotencyStatus {
    fn from_reason(reason: NilpotencyReason) -> Self {
        NilpotencyStatus {
            lie_nilpotent: reason == NilpotencyReason::Ok,
            reason,
        }
    }
}

/// `KG` is Lie nilpotent iff `char K = p > 0`, `G` is nilpotent and `G'` is a
/// finite `p`-group. `p = 0` stands for characteristic zero.
pub fn lie_nilpotency_status(group: &Group, p: u64) -> NilpotencyStatus {
    lie_nilpotency_status_of(&group.summary(), p)
}

fn lie_nilpotency_status_of(summary: &GroupSummary, p: u64) -> NilpotencyStatus {
    let reason = if summary.class.is_none() {
        NilpotencyReason::GNotNilpotent
    } else if p == 0 {
        // KG is commutative, hence Lie nilpotent, when G is abelian.
        if summary.derived_order == 1 {
            NilpotencyReason::Ok
        } else {
            NilpotencyReason::CharZero
        }
    } else if !is_power_of(summary.derived_order as u64, p) {
        NilpotencyReason::DerivedNotPGroup
    } else {
        NilpotencyReason::Ok
    };
    NilpotencyStatus::from_reason(reason)
}

/// Which almost-maximal condition a group satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `p = 2`, class 2, `γ₂` noncyclic of order 4.
    I,
    /// `p = 2`, class 4, `γ₂ ≅ C4 × C2`, `γ₃ ≅ C2 × C2`.
    II,
    /// `p = 2`, class 4, `γ₂` elementary abelian of order 8.
    III,
    /// `p = 3`, class 3, `γ₂` elementary abelian of order 9.
    IV,
    None,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
            Condition::IV => "IV",
            Condition::None => "None",
        };
        f.write_str(s)
    }
}

/// Predicted value of the Lie nilpotency indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum Predicted {
    /// `|G'| + 1`.
    Maximal(i64),
    /// `|G'| - p + 2`.
    AlmostMaximal(i64),
    /// Strictly below almost maximal: at most `|G'| - p + 1`.
    Below(i64),
    /// `KG` commutative: both indices are 2.
    Commutative(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub condition: Condition,
    pub predicted: Predicted,
}

/// Matches `(p, cl(G), type(γ₂), type(γ₃))` against the almost-maximal
/// conditions, and predicts the index class independently.
pub fn classify_theorem1(group: &Group, p: u64) -> Result<Classification> {
    classify_summary(&group.summary(), p)
}

fn classify_summary(s: &GroupSummary, p: u64) -> Result<Classification> {
    let status = lie_nilpotency_status_of(s, p);
    if !status.lie_nilpotent {
        return Err(Error::NotLieNilpotent(format!("{:?}", status.reason)));
    }
    let derived = s.derived_order as i64;
    let p_i = p as i64;
    if derived == 1 {
        return Ok(Classification {
            condition: Condition::None,
            predicted: Predicted::Commutative(2),
        });
    }
    let class = s.class.expect("nilpotent");
    let g2 = s.derived_type.as_deref();
    let g3 = s.gamma3_type.as_deref();
    let condition = match (p, class, g2, g3) {
        (2, 2, Some([2, 2]), _) => Condition::I,
        (2, 4, Some([4, 2]), Some([2, 2])) => Condition::II,
        (2, 4, Some([2, 2, 2]), _) => Condition::III,
        (3, 3, Some([3, 3]), _) => Condition::IV,
        _ => Condition::None,
    };
    // Maximal iff G' cyclic, or p = 2 and G' noncyclic of order 4 with γ₃ ≠ 1.
    let cyclic = g2.is_some_and(|t| t.len() <= 1);
    let klein_not_central = p == 2 && g2 == Some(&[2, 2][..]) && class >= 3;
    let predicted = if cyclic || klein_not_central {
        Predicted::Maximal(derived + 1)
    } else if condition != Condition::None {
        Predicted::AlmostMaximal(derived - p_i + 2)
    } else {
        Predicted::Below(derived - p_i + 1)
    };
    Ok(Classification {
        condition,
        predicted,
    })
}

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

/// Everything known about one `(group, p)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub group_name: String,
    pub p: u64,
    pub summary: GroupSummary,
    pub status: NilpotencyStatus,
    pub classification: Option<Classification>,
    pub computed: Option<SeriesReport>,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Computes both indices and evaluates every applicable consistency check.
///
/// Failures are recorded in the report, never returned as errors.
pub fn cross_check(group: &Group, group_name: &str, p: u64) -> CheckReport {
    let summary = group.summary();
    let status = lie_nilpotency_status_of(&summary, p);
    let mut report = CheckReport {
        group_name: group_name.to_string(),
        p,
        summary,
        status,
        classification: None,
        computed: None,
        checks: Vec::new(),
    };
    if !status.lie_nilpotent {
        return report;
    }
    let classification = match classify_summary(&report.summary, p) {
        Ok(c) => c,
        Err(e) => {
            report.checks.push(Check::new("classify", false, e.to_string()));
            return report;
        }
    };
    report.classification = Some(classification);
    let series = AlgebraContext::new(group, p)
        .and_then(|ctx| series_report(&ctx, group_name, default_bound(&ctx)));
    match series {
        Ok(series) => {
            report.checks = index_checks(report.summary.derived_order, p, &classification, &series);
            report.computed = Some(series);
        }
        Err(e) => report.checks.push(Check::new("chains", false, e.to_string())),
    }
    report
}

/// The index relations that must hold for a Lie nilpotent `KG`.
pub fn index_checks(
    derived_order: usize,
    p: u64,
    classification: &Classification,
    series: &SeriesReport,
) -> Vec<Check> {
    let d = derived_order as i64;
    let p_i = p as i64;
    let tl = series.t_lower as i64;
    let tu = series.t_upper as i64;
    let maximal = d + 1;
    let almost = d - p_i + 2;
    let values = format!("t_L={tl} t^L={tu} |G'|={d}");
    let mut checks = Vec::new();

    checks.push(Check::new(
        "bound",
        tl <= tu && tu <= maximal,
        format!("{values}: t_L <= t^L <= {maximal}"),
    ));

    let predicts_maximal = matches!(
        classification.predicted,
        Predicted::Maximal(_) | Predicted::Commutative(_)
    );
    checks.push(Check::new(
        "prop1",
        (tu == maximal) == predicts_maximal && (tu != maximal || tl == tu),
        format!("{values}: predicted maximal={predicts_maximal}"),
    ));

    checks.push(Check::new(
        "prop2_gap",
        tu == maximal || tu <= almost,
        format!("{values}: t^L = {maximal} or t^L <= {almost}"),
    ));

    let has_condition = classification.condition != Condition::None;
    checks.push(Check::new(
        "thm1",
        has_condition == (tl == almost),
        format!("{values}: condition {} vs t_L = {almost}", classification.condition),
    ));

    checks.push(Check::new(
        "cor1",
        (tl == almost) == (tu == almost),
        format!("{values}: lower almost maximal iff upper almost maximal ({almost})"),
    ));

    if p == 3 {
        checks.push(Check::new(
            "cor3",
            tl != d,
            format!("{values}: t_L != 3^n = {d}"),
        ));
    }

    if p > 3 {
        checks.push(Check::new("bp", tl == tu, format!("{values}: t_L = t^L for p > 3")));
    }

    let (ok, want) = match classification.predicted {
        Predicted::Maximal(v) | Predicted::AlmostMaximal(v) | Predicted::Commutative(v) => {
            (tl == v && tu == v, format!("t_L = t^L = {v}"))
        }
        Predicted::Below(v) => (tl <= v && tu <= v, format!("t_L, t^L <= {v}")),
    };
    checks.push(Check::new("predicted", ok, format!("{values}: {want}")));
    checks
}
