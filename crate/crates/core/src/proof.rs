//! Explicit weight-7 commutators certifying `t_L(KG) >= 8` for the
//! almost-maximal conditions II, III (`p = 2`) and IV (`p = 3`).
//!
//! A witness pair `(g, h)` generates the commutator structure of `γ₂`; the
//! designated left-normed Lie commutator of words in `g, h` is then evaluated
//! in `KG` and compared with hand-derived closed forms of the shape
//! `monomial · polynomial(a, b)`, ending in `±monomial · â · b̂ ≠ 0`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::classify::{classify_theorem1, Check, Condition};
use crate::error::{Error, Result};
use crate::expr::{self, Bindings};
use crate::group::{Group, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `p = 2`, `f ∈ {b, a²b}`.
    P2Case1,
    /// `p = 2`, `f ∈ {1, a²}`.
    P2Case2,
    /// `p = 3`, `t = 1`.
    P3T1,
    /// `p = 3`, `t = b`.
    P3Tb,
    /// `p = 3`, `t = b²`.
    P3Tb2,
}

/// A pair `(g, h)` and the commutators derived from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessProfile {
    pub condition: Condition,
    pub g: usize,
    pub h: usize,
    /// `(g, h)`
    pub a: usize,
    /// `(g, h, h) = (a, h)`
    pub b: usize,
    /// `(g, h, h, h)` for `p = 2`.
    pub c: Option<usize>,
    /// `(a, g)` for `p = 2`.
    pub f: Option<usize>,
    /// `(b, g)` for `p = 2`, `(a, g)` for `p = 3`.
    pub t: usize,
    /// `(f, g)`
    pub z1: Option<usize>,
    /// `(f, h)`
    pub z2: Option<usize>,
    pub case_tag: CaseTag,
    /// Structural relations verified for this pair.
    pub relations: Vec<Check>,
}

impl WitnessProfile {
    /// Symbol bindings for closed-form expressions.
    pub fn bindings(&self) -> Bindings {
        let mut env = Bindings::new();
        for (k, v) in [
            ("g", Some(self.g)),
            ("h", Some(self.h)),
            ("a", Some(self.a)),
            ("b", Some(self.b)),
            ("c", self.c),
            ("f", self.f),
            ("t", Some(self.t)),
            ("z1", self.z1),
            ("z2", self.z2),
        ] {
            if let Some(v) = v {
                env.insert(k.to_string(), v);
            }
        }
        env
    }

    pub fn relations_hold(&self) -> bool {
        self.relations.iter().all(|c| c.pass)
    }
}

/// One evaluated commutator with its closed-form comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub label: String,
    pub value: AlgebraElement,
    /// The closed form(s) compared against; several mean "one of".
    pub expected: Vec<String>,
    /// `None` when no closed form is checked for this step.
    pub matched: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub case_tag: CaseTag,
    /// The designated weight-7 commutator.
    pub chain: String,
    pub steps: Vec<ChainStep>,
    pub final_value: AlgebraElement,
    pub final_nonzero: bool,
    /// `(sign, monomial, factor)` with `final = sign · monomial · factor`.
    pub final_form: Option<(i8, usize, String)>,
    pub implied_lower_bound: usize,
}

impl ChainReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &ChainStep> {
        self.steps.iter().filter(|s| s.matched == Some(false))
    }

    /// Number of weights in the designated chain.
    pub fn weight(&self) -> usize {
        self.chain.matches(',').count() + 1
    }
}

fn check(name: &str, pass: bool) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail: String::new(),
    }
}

/// First witness pair in element order for `condition`.
pub fn find_witness_pair(group: &Group, condition: Condition) -> Result<WitnessProfile> {
    witness_search(group, condition, true)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoWitness(condition.to_string()))
}

/// Every witness pair for `condition`, in element order.
pub fn all_witness_pairs(group: &Group, condition: Condition) -> Result<Vec<WitnessProfile>> {
    witness_search(group, condition, false)
}

fn witness_search(group: &Group, condition: Condition, first_only: bool) -> Result<Vec<WitnessProfile>> {
    let p = match condition {
        Condition::II | Condition::III => 2,
        Condition::IV => 3,
        Condition::I | Condition::None => return Err(Error::NoWitness(condition.to_string())),
    };
    match classify_theorem1(group, p) {
        Ok(c) if c.condition == condition => {}
        Ok(c) => {
            return Err(Error::NoWitness(format!(
                "group satisfies condition {}, not {condition}",
                c.condition
            )))
        }
        Err(e) => return Err(Error::NoWitness(format!("condition {condition}: {e}"))),
    }
    let series = group.lower_central_series();
    let term = |i: usize| series.get(i - 1).cloned().unwrap_or_else(|| group.trivial());
    let mut found = Vec::new();
    for g in 0..group.order() {
        for h in 0..group.order() {
            let w = match condition {
                Condition::II | Condition::III => p2_witness(group, condition, g, h, &term),
                Condition::IV => p3_witness(group, g, h, &term(2)),
                Condition::I | Condition::None => unreachable!(),
            };
            if let Some(w) = w {
                found.push(w);
                if first_only {
                    return Ok(found);
                }
            }
        }
    }
    Ok(found)
}

fn p2_witness(
    group: &Group,
    condition: Condition,
    g: usize,
    h: usize,
    term: &impl Fn(usize) -> Subgroup,
) -> Option<WitnessProfile> {
    let a = group.commutator(g, h);
    if a == group.identity() {
        return None;
    }
    let b = group.commutator(a, h);
    let c = group.commutator(b, h);
    let a2 = group.mul(a, a);
    if condition == Condition::II && c != a2 {
        return None;
    }
    let (g2, g3, g4) = (term(2), term(3), term(4));
    if group.subgroup_generated(&[a, b, c]) != g2
        || group.subgroup_generated(&[b, c]) != g3
        || group.subgroup_generated(&[c]) != g4
    {
        return None;
    }
    let f = group.commutator(a, g);
    let z1 = group.commutator(f, g);
    let z2 = group.commutator(f, h);
    let t = group.commutator(b, g);
    let a2b = group.mul(a2, b);
    // c = a² under condition II, so {b, cb} and {1, c} are the two cases of both.
    let case_tag = if f == b || f == group.mul(c, b) {
        CaseTag::P2Case1
    } else if f == group.identity() || f == c {
        CaseTag::P2Case2
    } else {
        return None;
    };
    let mut relations = vec![
        check("f in gamma3", g3.contains(f)),
        check("t in gamma3", g3.contains(t)),
        check("z1 in gamma4", g4.contains(z1)),
        check("z2 in gamma4", g4.contains(z2)),
    ];
    if condition == Condition::II {
        relations.push(check("t = z2", t == z2));
        relations.push(check("b^h = a^2 b", group.conjugate(b, h) == a2b));
    }
    Some(WitnessProfile {
        condition,
        g,
        h,
        a,
        b,
        c: Some(c),
        f: Some(f),
        t,
        z1: Some(z1),
        z2: Some(z2),
        case_tag,
        relations,
    })
}

fn p3_witness(group: &Group, g: usize, h: usize, g2: &Subgroup) -> Option<WitnessProfile> {
    let a = group.commutator(g, h);
    let b = group.commutator(a, h);
    if b == group.identity() || group.subgroup_generated(&[a, b]) != *g2 {
        return None;
    }
    let t = group.commutator(a, g);
    let b2 = group.mul(b, b);
    let case_tag = if t == group.identity() {
        CaseTag::P3T1
    } else if t == b {
        CaseTag::P3Tb
    } else if t == b2 {
        CaseTag::P3Tb2
    } else {
        return None;
    };
    let relations = vec![
        check("a^h = ab", group.conjugate(a, h) == group.mul(a, b)),
        check("a^g = at", group.conjugate(a, g) == group.mul(a, t)),
        check("b central", (0..group.order()).all(|x| group.mul(x, b) == group.mul(b, x))),
    ];
    Some(WitnessProfile {
        condition: Condition::IV,
        g,
        h,
        a,
        b,
        c: None,
        f: None,
        t,
        z1: None,
        z2: None,
        case_tag,
        relations,
    })
}

/// A displayed identity: a commutator label and its closed form(s).
struct Display {
    label: &'static str,
    forms: &'static [&'static str],
}

const fn d(label: &'static str, forms: &'static [&'static str]) -> Display {
    Display { label, forms }
}

struct CaseData {
    chain: &'static str,
    /// Group identities `lhs = rhs` used along the way.
    relations: &'static [(&'static str, &'static str)],
    steps: &'static [Display],
}

const P2_CASE1: CaseData = CaseData {
    chain: "[h, gh, g, h, g, h, h]",
    relations: &[
        ("g^-2 h^-1 g^2 h", "a^2 f"),
        ("(g^2h^2)^-1 gh^2g", "a^2 b"),
        ("(hg^2h^2)^-1 g^2h^3", "a^2 f"),
        ("(ghg^2h^2)^-1 hg^2h^2g", "a^3 b"),
        ("(hghg^2h^2)^-1 ghg^2h^3", "a b f z1"),
        ("(h^2ghg^2h^2)^-1 hghg^2h^3", "a b f z1"),
    ],
    steps: &[
        d("[h, gh, g]", &["g^2h^2 (1 + a^2)", "g^2h^2 (1 + (a + a^2 + a^3) b)"]),
        d("[h, gh, g, h]", &["hg^2h^2 (1 + a^2)", "hg^2h^2 (1 + a^2) b"]),
        d("[h, gh, g, h, g]", &["(hg^2h^2g + hghg^2h^2)(1 + a^2)"]),
        d("[h, gh, g, h, g]", &["ghg^2h^2 (1 + ab)(1 + a^2)"]),
        d(
            "[h, gh, g, h, g, h]",
            &["(ghg^2h^3 (1 + a^3) + hghg^2h^2 (1 + ab))(1 + a^2)"],
        ),
        d("[h, gh, g, h, g, h]", &["hghg^2h^2 a (1 + b)(1 + a^2)"]),
        d(
            "[h, gh, g, h, g, h, h]",
            &["(hghg^2h^3 + h^2ghg^2h^2) a (1 + a^2)(1 + b)"],
        ),
        d("[h, gh, g, h, g, h, h]", &["h^2ghg^2h^2 a (1 + a)(1 + a^2)(1 + b)"]),
        d("[h, gh, g, h, g, h, h]", &["h^2ghg^2h^2 hat(a) hat(b)"]),
    ],
};

const P2_CASE2: CaseData = CaseData {
    chain: "[gh, g, gh, gh, g, h, h]",
    relations: &[
        ("(ghg^2hgh)^-1 g^2hghgh", "a^3"),
        ("(g^2hg^2hgh)^-1 ghg^2hghg", "a^3 b"),
        ("(hg^2hg^2hgh)^-1 g^2hg^2hgh^2", "ab"),
        ("(h^2g^2hg^2hgh)^-1 hg^2hg^2hgh^2", "ab"),
    ],
    steps: &[
        d("[gh, g, gh]", &["g^2hgh (abf + a^3)"]),
        d("[gh, g, gh, gh]", &["ghg^2hgh (a^3 (a^3 + a^3bf) + abf + a^3)"]),
        d("[gh, g, gh, gh]", &["ghg^2hgh (a^2 + a^2bf + abf + a^3)"]),
        d(
            "[gh, g, gh, gh, g]",
            &["g^2hg^2hgh (a^3b (a^2 + a^2bf + ab + a^3f) + a^2 + a^2bf + abf + a^3)"],
        ),
        d(
            "[gh, g, gh, gh, g]",
            &["g^2hg^2hgh (1 + a + a^2 + a^3)", "g^2hg^2hgh (1 + a^2)(1 + ab)"],
        ),
        d(
            "[gh, g, gh, gh, g, h]",
            &["hg^2hg^2hgh (1 + a^2)(1 + b)", "hg^2hg^2hgh a (1 + a^2)(1 + b)"],
        ),
        d("[gh, g, gh, gh, g, h, h]", &["h^2g^2hg^2hgh (1 + a)(1 + a^2)(1 + b)"]),
        d("[gh, g, gh, gh, g, h, h]", &["h^2g^2hg^2hgh hat(a) hat(b)"]),
    ],
};

const P3_T1: CaseData = CaseData {
    chain: "[gh, g, g, h, gh, gh, h]",
    relations: &[],
    steps: &[
        d("[gh, g, g]", &["g^3h hat(a)"]),
        d("[gh, g, g, h]", &["hg^3h (a^2b^2 + ab - a^2 - a)"]),
        d("[gh, g, g, h, g]", &["gh^2g^3h (a + b + a^2b^2 - b^2 - a^2 - ab)"]),
        d("[gh, g, g, h, gh, h]", &["hgh^2g^3h (1 - a^2)(1 + b + b^2)"]),
        d("[gh, g, g, h, gh, gh, h]", &["h^2gh^2g^3h hat(a) hat(b)"]),
    ],
};

const P3_TB: CaseData = CaseData {
    chain: "[h, g, gh, g, gh, h, g]",
    relations: &[],
    steps: &[
        d("[h, g, gh]", &["ghgh a^2 (b - 1)"]),
        d("[h, g, gh, g]", &["g^2hgh (1 - a^2)(b - 1)"]),
        d("[h, g, gh, g, gh]", &["ghg^2hgh (a^2 + ab - 1 - b^2)(b - 1)"]),
        d("[h, g, gh, g, gh, h]", &["hghg^2hgh (a^2b + ab - ab^2 - a^2)(b - 1)"]),
        d("[h, g, gh, g, gh, h, g]", &["-ghghg^2hgh hat(a) hat(b)"]),
    ],
};

const P3_TB2: CaseData = CaseData {
    chain: "[g, gh, g, h, gh, h, h]",
    relations: &[],
    steps: &[
        d("[g, gh, g]", &["g^2hg (-1 - a - a^2b)"]),
        d("[g, gh, g, h]", &["hg^2hg (a^2b + 1 - b^2 - a^2b^2)"]),
        d("[g, gh, g, h, gh]", &["gh^2g^2hg (a + b + a^2b^2 - ab^2 - a^2b - 1)"]),
        d("[g, gh, g, h, gh, h]", &["hgh^2g^2hg (a - a^2)(1 + b + b^2)"]),
        d("[g, gh, g, h, gh, h, h]", &["-h^2gh^2g^2hg hat(a) hat(b)"]),
    ],
};

fn case_data(tag: CaseTag) -> &'static CaseData {
    match tag {
        CaseTag::P2Case1 => &P2_CASE1,
        CaseTag::P2Case2 => &P2_CASE2,
        CaseTag::P3T1 => &P3_T1,
        CaseTag::P3Tb => &P3_TB,
        CaseTag::P3Tb2 => &P3_TB2,
    }
}

fn eval(ctx: &AlgebraContext<'_>, text: &str, env: &Bindings) -> AlgebraElement {
    expr::eval_str(ctx, text, env).unwrap_or_else(|e| panic!("built-in closed form {text:?}: {e}"))
}

fn eval_label(ctx: &AlgebraContext<'_>, label: &str, env: &Bindings) -> AlgebraElement {
    expr::eval_commutator(ctx, label, env).unwrap_or_else(|e| panic!("built-in label {label:?}: {e}"))
}

fn fmt_element(ctx: &AlgebraContext<'_>, u: &AlgebraElement) -> String {
    let terms: Vec<_> = u
        .support()
        .map(|(g, c)| format!("{c}*[{}]", ctx.group().name(g)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Group identities of a case, as `(identity, holds)` checks.
pub fn case_relations(ctx: &AlgebraContext<'_>, w: &WitnessProfile) -> Vec<Check> {
    let env = w.bindings();
    case_data(w.case_tag)
        .relations
        .iter()
        .map(|(lhs, rhs)| Check {
            name: format!("{lhs} = {rhs}"),
            pass: eval(ctx, lhs, &env) == eval(ctx, rhs, &env),
            detail: String::new(),
        })
        .collect()
}

/// Looks for `final = ±m · factor` with `m` a group element.
fn monomial_factor(
    ctx: &AlgebraContext<'_>,
    value: &AlgebraElement,
    factor: &AlgebraElement,
) -> Option<(i8, usize)> {
    (0..ctx.dim()).find_map(|m| {
        let candidate = ctx.mul_left(m, factor);
        if candidate == *value {
            Some((1, m))
        } else if ctx.neg(&candidate) == *value {
            Some((-1, m))
        } else {
            None
        }
    })
}

fn run_case(
    ctx: &AlgebraContext<'_>,
    w: &WitnessProfile,
    check_steps: bool,
) -> Result<ChainReport> {
    let data = case_data(w.case_tag);
    let env = w.bindings();
    let mut steps = Vec::new();
    for display in data.steps {
        let value = eval_label(ctx, display.label, &env);
        let matched = check_steps.then(|| {
            display
                .forms
                .iter()
                .any(|form| eval(ctx, form, &env) == value)
        });
        steps.push(ChainStep {
            label: display.label.to_string(),
            value,
            expected: display.forms.iter().map(|s| s.to_string()).collect(),
            matched,
        });
    }
    let final_value = eval_label(ctx, data.chain, &env);
    if final_value.is_zero() {
        return Err(Error::ChainVanished {
            chain: data.chain.to_string(),
        });
    }
    let factor = if w.condition == Condition::III {
        "hat(a) hat(b) hat(c)"
    } else {
        "hat(a) hat(b)"
    };
    let final_form = monomial_factor(ctx, &final_value, &eval(ctx, factor, &env))
        .map(|(s, m)| (s, m, factor.to_string()));
    let report = ChainReport {
        case_tag: w.case_tag,
        chain: data.chain.to_string(),
        steps,
        final_nonzero: true,
        final_form,
        final_value,
        implied_lower_bound: 0,
    };
    let weight = report.weight();
    Ok(ChainReport {
        implied_lower_bound: weight + 1,
        ..report
    })
}

/// Evaluates the `p = 2` chain for a condition II or III witness.
///
/// Closed forms are compared only for condition II; for condition III the same
/// commutators are evaluated and only the final value is certified.
pub fn verify_chain_p2(ctx: &AlgebraContext<'_>, w: &WitnessProfile) -> Result<ChainReport> {
    if ctx.p() != 2 || !matches!(w.condition, Condition::II | Condition::III) {
        return Err(Error::CaseMismatch(format!(
            "p = 2 chain needs a condition II/III witness in characteristic 2, got {} in characteristic {}",
            w.condition,
            ctx.p()
        )));
    }
    run_case(ctx, w, w.condition == Condition::II)
}

/// Evaluates the `p = 3` chain for a condition IV witness, checking every
/// displayed intermediate form over `GF(3)`.
pub fn verify_chain_p3(ctx: &AlgebraContext<'_>, w: &WitnessProfile) -> Result<ChainReport> {
    if ctx.p() != 3 || w.condition != Condition::IV {
        return Err(Error::CaseMismatch(format!(
            "p = 3 chain needs a condition IV witness in characteristic 3, got {} in characteristic {}",
            w.condition,
            ctx.p()
        )));
    }
    let report = run_case(ctx, w, true)?;
    if let Some(step) = report.mismatches().next() {
        let env = w.bindings();
        return Err(Error::StepMismatch {
            step: step.label.clone(),
            computed: fmt_element(ctx, &step.value),
            expected: fmt_element(ctx, &eval(ctx, &step.expected[0], &env)),
        });
    }
    Ok(report)
}

/// Dispatches on the characteristic.
pub fn verify_chain(ctx: &AlgebraContext<'_>, w: &WitnessProfile) -> Result<ChainReport> {
    match ctx.p() {
        2 => verify_chain_p2(ctx, w),
        3 => verify_chain_p3(ctx, w),
        p => Err(Error::CaseMismatch(format!("no chain in characteristic {p}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::series::{default_bound, lower_chain};

    fn named(name: &str) -> Group {
        catalog::bundled()
            .into_iter()
            .find(|s| s.name == name)
            .unwrap()
            .build(512)
            .unwrap()
    }

    fn first_of(group: &Group, condition: Condition, tag: CaseTag) -> WitnessProfile {
        all_witness_pairs(group, condition)
            .unwrap()
            .into_iter()
            .find(|w| w.case_tag == tag)
            .unwrap()
    }

    #[test]
    fn no_witness_for_conditionless_groups() {
        let d4 = named("D4");
        assert!(matches!(
            find_witness_pair(&d4, Condition::II),
            Err(Error::NoWitness(_))
        ));
        let c4 = named("C4");
        assert!(matches!(
            find_witness_pair(&c4, Condition::IV),
            Err(Error::NoWitness(_))
        ));
        assert!(matches!(
            find_witness_pair(&d4, Condition::I),
            Err(Error::NoWitness(_))
        ));
    }

    #[test]
    fn c3wrc3_witness_profile() {
        let g = named("C3wrC3");
        assert_eq!(classify_theorem1(&g, 3).unwrap().condition, Condition::IV);
        let w = find_witness_pair(&g, Condition::IV).unwrap();
        assert_eq!(w.a, g.commutator(w.g, w.h));
        assert_eq!(w.b, g.commutator(w.a, w.h));
        assert_eq!(g.subgroup_generated(&[w.a, w.b]), g.derived_subgroup());
        assert!(g.subgroup_generated(&[w.b]).contains(w.t));
        assert!(w.relations_hold(), "{:?}", w.relations);
    }

    #[test]
    fn c2wrc4_witness_profile() {
        let g = named("C2wrC4");
        assert_eq!(classify_theorem1(&g, 2).unwrap().condition, Condition::III);
        let w = find_witness_pair(&g, Condition::III).unwrap();
        let c = w.c.unwrap();
        let series = g.lower_central_series();
        assert_eq!(g.subgroup_generated(&[w.a, w.b, c]), series[1]);
        assert_eq!(g.subgroup_generated(&[w.b, c]), series[2]);
        assert_eq!(g.subgroup_generated(&[c]), series[3]);
        assert!(w.relations_hold(), "{:?}", w.relations);
    }

    #[test]
    fn p2_chain_from_p3_context_is_rejected() {
        let g = named("C2wrC4");
        let w = find_witness_pair(&g, Condition::III).unwrap();
        let ctx = AlgebraContext::new(&g, 3).unwrap();
        assert!(matches!(verify_chain_p2(&ctx, &w), Err(Error::CaseMismatch(_))));
        let g3 = named("C3wrC3");
        let w3 = find_witness_pair(&g3, Condition::IV).unwrap();
        let ctx2 = AlgebraContext::new(&g3, 2).unwrap();
        assert!(matches!(verify_chain_p3(&ctx2, &w3), Err(Error::CaseMismatch(_))));
        assert!(matches!(verify_chain_p2(&ctx2, &w3), Err(Error::CaseMismatch(_))));
    }

    #[test]
    fn condition_two_chains() {
        let g = named("G64a");
        let ctx = AlgebraContext::new(&g, 2).unwrap();
        let l7 = lower_chain(&ctx, default_bound(&ctx)).unwrap();
        let l7 = l7.term(7).unwrap();
        for tag in [CaseTag::P2Case1, CaseTag::P2Case2] {
            let w = first_of(&g, Condition::II, tag);
            assert_eq!(w.t, w.z2.unwrap());
            let r = verify_chain_p2(&ctx, &w).unwrap();
            assert!(r.final_nonzero);
            assert_eq!(r.implied_lower_bound, 8);
            assert_eq!(r.final_form.as_ref().map(|f| (f.0, f.2.as_str())), Some((1, "hat(a) hat(b)")));
            assert_eq!(r.steps.last().unwrap().matched, Some(true));
            assert!(l7.contains(&r.final_value));
        }
    }

    #[test]
    fn condition_three_final_has_three_hats() {
        let g = named("C2wrC4");
        let ctx = AlgebraContext::new(&g, 2).unwrap();
        let w = find_witness_pair(&g, Condition::III).unwrap();
        let r = verify_chain_p2(&ctx, &w).unwrap();
        assert!(r.steps.iter().all(|s| s.matched.is_none()));
        let (sign, m, factor) = r.final_form.unwrap();
        assert_eq!((sign, factor.as_str()), (1, "hat(a) hat(b) hat(c)"));
        let expect = ctx.mul_left(m, &expr::eval_str(&ctx, &factor, &w.bindings()).unwrap());
        assert_eq!(r.final_value, expect);
    }

    #[test]
    fn p3_case_t_equals_b_matches_every_display() {
        let g = named("C3wrC3");
        let ctx = AlgebraContext::new(&g, 3).unwrap();
        let w = first_of(&g, Condition::IV, CaseTag::P3Tb);
        let r = verify_chain_p3(&ctx, &w).unwrap();
        assert!(r.steps.iter().all(|s| s.matched == Some(true)));
        // the monomial is only determined modulo <a, b>
        let (sign, m, _) = r.final_form.unwrap();
        let shown = expr::parse("ghghg^2hgh").unwrap().eval_group(&ctx, &w.bindings()).unwrap();
        assert_eq!(sign, -1);
        assert!(g.subgroup_generated(&[w.a, w.b]).contains(g.mul(g.inv(m), shown)));
    }

    #[test]
    fn p3_case_t_equals_one_printed_chain_vanishes() {
        let g = named("C3wrC3");
        let ctx = AlgebraContext::new(&g, 3).unwrap();
        let w = first_of(&g, Condition::IV, CaseTag::P3T1);
        let env = w.bindings();
        assert_eq!(
            expr::eval_commutator(&ctx, "[gh, g, g]", &env).unwrap(),
            expr::eval_str(&ctx, "g^3h hat(a)", &env).unwrap()
        );
        assert!(matches!(verify_chain_p3(&ctx, &w), Err(Error::ChainVanished { .. })));
        // a different weight-7 commutator does reach the displayed final value
        let other = expr::eval_commutator(&ctx, "[gh, g, g, h, g, h, h^2]", &env).unwrap();
        let shown = expr::eval_str(&ctx, "h^2gh^2g^3h hat(a) hat(b)", &env).unwrap();
        assert!(other == shown || other == ctx.neg(&shown));
    }

    #[test]
    fn p3_case_t_equals_b2_differs_at_sixth_step() {
        let g = named("C3wrC3");
        let ctx = AlgebraContext::new(&g, 3).unwrap();
        let w = first_of(&g, Condition::IV, CaseTag::P3Tb2);
        match verify_chain_p3(&ctx, &w) {
            Err(Error::StepMismatch { step, .. }) => assert_eq!(step, "[g, gh, g, h, gh, h]"),
            other => panic!("{other:?}"),
        }
        let env = w.bindings();
        assert_eq!(
            expr::eval_commutator(&ctx, "[g, gh, g, h, gh, h]", &env).unwrap(),
            expr::eval_str(&ctx, "hgh^2g^2hg (a^2 - 1)(1 + b + b^2)", &env).unwrap()
        );
        let r = run_case(&ctx, &w, true).unwrap();
        assert_eq!(r.steps.last().unwrap().matched, Some(true));
    }

    #[test]
    fn final_nonzero_agrees_across_witnesses() {
        let g = named("C2wrC4");
        let ctx = AlgebraContext::new(&g, 2).unwrap();
        let finals: Vec<bool> = all_witness_pairs(&g, Condition::III)
            .unwrap()
            .iter()
            .map(|w| verify_chain_p2(&ctx, w).map(|r| r.final_nonzero).unwrap_or(false))
            .collect();
        assert!(finals.iter().all(|&x| x));
    }
}
