//! Rensets: carriers with a renaming action, their laws, freshness and
//! swapping derived from renaming, and container liftings.

mod instances;
mod nominal;

pub use instances::{ListOf, NaiveTerms, OptionOf, PairOf, Terms, Vars};
pub use nominal::{
    check_ce_nominal_laws_terms, check_lemma9_terms, check_morphism_preservation, check_nominal_laws,
    check_pivot_independence, check_prop6_freshness, derive_nominal, swap_fresh, transpose, BinderBlindSwap,
    DerivedNominal, Nominal, TermFn,
};

use crate::laws::{no_premise, run_law, Carrier, LawReport, LawShape, Sampling, Verdict};
use crate::var::{fresh_var, Var, VarSet};

/// A carrier with a variable-for-variable renaming action.
/// `rename(a, new, old)` is `a[new/old]`.
pub trait Renset: Carrier {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem;
}

impl<R: Renset + ?Sized> Renset for &R {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem {
        (**self).rename(a, new, old)
    }
}

/// Freshness read off renaming: `a[y/x] = a` for the canonical `y ≠ x`
/// outside the support bound.
pub fn derived_fresh<R: Renset>(inst: &R, x: Var, a: &R::Elem) -> bool {
    let y = fresh_var(&inst.support_bound(a).with(x));
    inst.equal(&inst.rename(a, y, x), a)
}

/// `a[y/x1][x1/x2][x2/y]` for an explicit pivot `y`.
pub fn derived_swap_with_pivot<R: Renset>(inst: &R, a: &R::Elem, x1: Var, x2: Var, y: Var) -> R::Elem {
    let step = inst.rename(a, y, x1);
    let step = inst.rename(&step, x1, x2);
    inst.rename(&step, x2, y)
}

/// Swapping built from renaming through the canonical fresh pivot.
pub fn derived_swap<R: Renset>(inst: &R, a: &R::Elem, x1: Var, x2: Var) -> R::Elem {
    let y = fresh_var(&inst.support_bound(a).with(x1).with(x2));
    derived_swap_with_pivot(inst, a, x1, x2, y)
}

fn ne(a: Var, b: Var) -> bool {
    a != b
}

/// Identity, Idempotence, Chaining and Commutativity, one report each.
pub fn check_renset_laws<R: Renset>(inst: &R, sampling: &Sampling<R::Elem>) -> Vec<LawReport> {
    check_renset_laws_avoiding(inst, sampling, &VarSet::new())
}

/// Renset laws with every variable drawn outside `avoid`.
pub fn check_renset_laws_avoiding<R: Renset>(inst: &R, sampling: &Sampling<R::Elem>, avoid: &VarSet) -> Vec<LawReport> {
    let show = |a: &R::Elem| inst.render(a);
    let mut out = Vec::new();

    out.push(run_law(
        inst,
        &LawShape { name: "Identity", elem_names: &["a"], var_names: &["x"], premise: &no_premise },
        sampling,
        avoid,
        &mut |e, v| {
            let lhs = inst.rename(&e[0], v[0], v[0]);
            Verdict::eq_by(inst.equal(&lhs, &e[0]), || show(&lhs), || show(&e[0]))
        },
    ));

    out.push(run_law(
        inst,
        &LawShape {
            name: "Idempotence",
            elem_names: &["a"],
            var_names: &["x1", "x2", "y"],
            premise: &|v| ne(v[0], v[2]),
        },
        sampling,
        avoid,
        &mut |e, v| {
            let (x1, x2, y) = (v[0], v[1], v[2]);
            let once = inst.rename(&e[0], x1, y);
            let twice = inst.rename(&once, x2, y);
            Verdict::eq_by(inst.equal(&twice, &once), || show(&twice), || show(&once))
        },
    ));

    out.push(run_law(
        inst,
        &LawShape {
            name: "Chaining",
            elem_names: &["a"],
            var_names: &["y", "x1", "x2", "x3"],
            premise: &|v| ne(v[0], v[2]),
        },
        sampling,
        avoid,
        &mut |e, v| {
            let (y, x1, x2, x3) = (v[0], v[1], v[2], v[3]);
            let base = inst.rename(&e[0], y, x2);
            let lhs = inst.rename(&inst.rename(&base, x2, x1), x3, x2);
            let rhs = inst.rename(&base, x3, x1);
            Verdict::eq_by(inst.equal(&lhs, &rhs), || show(&lhs), || show(&rhs))
        },
    ));

    out.push(run_law(
        inst,
        &LawShape {
            name: "Commutativity",
            elem_names: &["a"],
            var_names: &["x1", "x2", "y1", "y2"],
            premise: &|v| ne(v[1], v[2]) && ne(v[2], v[0]) && ne(v[0], v[3]),
        },
        sampling,
        avoid,
        &mut |e, v| {
            let (x1, x2, y1, y2) = (v[0], v[1], v[2], v[3]);
            let lhs = inst.rename(&inst.rename(&e[0], x2, x1), y2, y1);
            let rhs = inst.rename(&inst.rename(&e[0], y2, y1), x2, x1);
            Verdict::eq_by(inst.equal(&lhs, &rhs), || show(&lhs), || show(&rhs))
        },
    ));

    out
}

/// The three formulations of freshness, evaluated with a support bound:
/// `(pivot, all_tested, cofinite)`.
///
/// * pivot: `a[y/x] = a` for the canonical `y ≠ x`;
/// * all_tested: `a[y/x] = a` for every `y` in the bound, `x`, and two
///   outside witnesses;
/// * cofinite: no failure among the outside witnesses.
pub fn freshness_formulations<R: Renset>(inst: &R, x: Var, a: &R::Elem) -> (bool, bool, bool) {
    let bound = inst.support_bound(a);
    let taken = bound.clone().with(x);
    let outside = [taken.nth_excluded(0), taken.nth_excluded(1)];
    let fixes = |y: Var| inst.equal(&inst.rename(a, y, x), a);
    let pivot = derived_fresh(inst, x, a);
    let cofinite = outside.iter().all(|&y| fixes(y));
    let all_tested = cofinite && bound.iter().chain([x]).all(fixes);
    (pivot, all_tested, cofinite)
}

/// The three freshness formulations agree on every sampled `(x, a)`.
pub fn check_prop3_equivalence<R: Renset>(inst: &R, sampling: &Sampling<R::Elem>) -> LawReport {
    run_law(
        inst,
        &LawShape { name: "freshness formulations agree", elem_names: &["a"], var_names: &["x"], premise: &no_premise },
        sampling,
        &VarSet::new(),
        &mut |e, v| {
            let (pivot, all, cofinite) = freshness_formulations(inst, v[0], &e[0]);
            Verdict::eq_by(
                pivot == all && all == cofinite,
                || format!("some y: {pivot}"),
                || format!("all y: {all}; cofinitely many y: {cofinite}"),
            )
        },
    )
}

/// Consequences of freshness: fresh renaming is the identity, chaining
/// through a fresh variable, and which variables stay fresh after a renaming.
/// Freshness comes from [`derived_fresh`].
pub fn check_prop4<R: Renset>(inst: &R, sampling: &Sampling<R::Elem>) -> Vec<LawReport> {
    let show = |a: &R::Elem| inst.render(a);
    let fresh = |x: Var, a: &R::Elem| derived_fresh(inst, x, a);
    let mut out = Vec::new();

    out.push(run_law(
        inst,
        &LawShape {
            name: "fresh renaming is identity",
            elem_names: &["a"],
            var_names: &["x", "y"],
            premise: &no_premise,
        },
        sampling,
        &VarSet::new(),
        &mut |e, v| {
            let (x, y) = (v[0], v[1]);
            if !fresh(x, &e[0]) {
                return Verdict::Skip;
            }
            let r = inst.rename(&e[0], y, x);
            Verdict::eq_by(inst.equal(&r, &e[0]), || show(&r), || show(&e[0]))
        },
    ));

    out.push(run_law(
        inst,
        &LawShape {
            name: "chaining through a fresh variable",
            elem_names: &["a"],
            var_names: &["x1", "x2", "x3"],
            premise: &no_premise,
        },
        sampling,
        &VarSet::new(),
        &mut |e, v| {
            let (x1, x2, x3) = (v[0], v[1], v[2]);
            if !fresh(x2, &e[0]) {
                return Verdict::Skip;
            }
            let lhs = inst.rename(&inst.rename(&e[0], x2, x1), x3, x2);
            let rhs = inst.rename(&e[0], x3, x1);
            Verdict::eq_by(inst.equal(&lhs, &rhs), || show(&lhs), || show(&rhs))
        },
    ));

    out.push(run_law(
        inst,
        &LawShape {
            name: "freshness after renaming",
            elem_names: &["a"],
            var_names: &["x", "y", "z"],
            premise: &no_premise,
        },
        sampling,
        &VarSet::new(),
        &mut |e, v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let a = &e[0];
            let premise = (fresh(z, a) || z == x) && (fresh(x, a) || z != y);
            if !premise {
                return Verdict::Skip;
            }
            let renamed = inst.rename(a, y, x);
            Verdict::implication(premise, fresh(z, &renamed), || format!("z not fresh for {}", show(&renamed)))
        },
    ));

    out
}

/// Lifting: `list`, `pair` and `option` of rensets are rensets.
pub fn lift_renset_list<R: Renset>(inst: R) -> ListOf<R> {
    ListOf::new(inst)
}

pub fn lift_renset_pair<A: Renset, B: Renset>(a: A, b: B) -> PairOf<A, B> {
    PairOf::new(a, b)
}

pub fn lift_renset_option<R: Renset>(inst: R) -> OptionOf<R> {
    OptionOf::new(inst)
}
