//! Recursion over terms into constructor-enriched rensets, with a
//! Barendregt avoid-set, plus the full primitive recursion and
//! substitution-based variants.

mod frce;
mod subst_set;

pub use frce::{
    check_frce_clauses, check_frce_laws, count_redexes, prim_recurse, prim_recurse_with, FrceRenset, IgnoreTerms,
    RedexCounter,
};
pub use subst_set::{
    check_subst_laws, check_subst_literal_readings, check_subst_recurse_commutes, subst_recurse, InducedRenset,
    SubstSet, TermSubst,
};

use std::collections::HashMap;

use crate::laws::{no_premise, run_law, Carrier, LawReport, LawRng, LawShape, Sampling, Verdict};
use crate::renset::{check_renset_laws_avoiding, Renset, Terms};
use crate::term::{to_debruijn, DbTerm, PreTerm, Term};
use crate::var::{Var, VarSet};

/// A renset with operators shaped like the term constructors.
pub trait CeRenset: Renset {
    fn vr(&self, x: Var) -> Self::Elem;
    fn ap(&self, a1: &Self::Elem, a2: &Self::Elem) -> Self::Elem;
    fn lm(&self, x: Var, a: &Self::Elem) -> Self::Elem;
}

impl<S: CeRenset + ?Sized> CeRenset for &S {
    fn vr(&self, x: Var) -> Self::Elem {
        (**self).vr(x)
    }
    fn ap(&self, a1: &Self::Elem, a2: &Self::Elem) -> Self::Elem {
        (**self).ap(a1, a2)
    }
    fn lm(&self, x: Var, a: &Self::Elem) -> Self::Elem {
        (**self).lm(x, a)
    }
}

impl CeRenset for Terms {
    fn vr(&self, x: Var) -> Term {
        Term::var(x)
    }
    fn ap(&self, a1: &Term, a2: &Term) -> Term {
        Term::app(a1.clone(), a2.clone())
    }
    fn lm(&self, x: Var, a: &Term) -> Term {
        Term::lam(x, a.clone())
    }
}

/// How a replacement binder is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FreshPolicy {
    /// The least variable outside the avoided set.
    #[default]
    MinExcluded,
    /// The `n`-th variable outside the avoided set, counting from 0.
    Shifted(usize),
}

impl FreshPolicy {
    pub fn pick(self, avoid: &VarSet) -> Var {
        match self {
            FreshPolicy::MinExcluded => avoid.min_excluded(),
            FreshPolicy::Shifted(n) => avoid.nth_excluded(n),
        }
    }
}

/// Order in which the two sides of an application are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Traversal {
    #[default]
    LeftFirst,
    RightFirst,
}

/// Knobs that must not change what `recurse` computes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Engine {
    pub fresh: FreshPolicy,
    /// Replace every binder, not only those inside the avoid-set.
    pub rename_all_binders: bool,
    pub traversal: Traversal,
    /// Share results between alpha-equivalent subterms within one call.
    pub memo: bool,
}

impl Engine {
    /// Configurations other than the default, used to test that the result
    /// does not depend on the engine's choices.
    pub fn alternatives() -> Vec<Engine> {
        vec![
            Engine { fresh: FreshPolicy::Shifted(3), ..Engine::default() },
            Engine { fresh: FreshPolicy::Shifted(1), rename_all_binders: true, ..Engine::default() },
            Engine { traversal: Traversal::RightFirst, memo: true, ..Engine::default() },
        ]
    }

    /// The unique map satisfying the recursion clauses for `spec` and the
    /// avoid-set, computed on the given representative.
    pub fn recurse<S: CeRenset>(&self, spec: &S, avoid: &VarSet, t: &Term) -> S::Elem {
        let mut memo = HashMap::new();
        self.go(spec, avoid, t.repr(), &mut memo)
    }

    fn go<S: CeRenset>(&self, spec: &S, avoid: &VarSet, p: &PreTerm, memo: &mut HashMap<DbTerm, S::Elem>) -> S::Elem {
        stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || {
            let key = self.memo.then(|| to_debruijn(&Term::from_pre(p.clone())));
            if let Some(hit) = key.as_ref().and_then(|k| memo.get(k)) {
                return hit.clone();
            }
            let out = match p {
                PreTerm::Var(x) => spec.vr(*x),
                PreTerm::App(f, a) => match self.traversal {
                    Traversal::LeftFirst => {
                        let l = self.go(spec, avoid, f, memo);
                        let r = self.go(spec, avoid, a, memo);
                        spec.ap(&l, &r)
                    }
                    Traversal::RightFirst => {
                        let r = self.go(spec, avoid, a, memo);
                        let l = self.go(spec, avoid, f, memo);
                        spec.ap(&l, &r)
                    }
                },
                PreTerm::Lam(x, body) => {
                    if avoid.contains(*x) || self.rename_all_binders {
                        let taken = avoid.union(&body.free_vars()).with(*x);
                        let z = self.fresh.pick(&taken);
                        let renamed = Term::from_pre((**body).clone()).rename(z, *x);
                        let inner = self.go(spec, avoid, renamed.repr(), memo);
                        spec.lm(z, &inner)
                    } else {
                        let inner = self.go(spec, avoid, body, memo);
                        spec.lm(*x, &inner)
                    }
                }
            };
            if let Some(k) = key {
                memo.insert(k, out.clone());
            }
            out
        })
    }
}

/// `recurse` with the default engine.
pub fn recurse<S: CeRenset>(spec: &S, avoid: &VarSet, t: &Term) -> S::Elem {
    Engine::default().recurse(spec, avoid, t)
}

/// The renset laws of the base (variables outside `avoid`) followed by the
/// five constructor laws.
pub fn check_ce_laws<S: CeRenset>(spec: &S, avoid: &VarSet, sampling: &Sampling<S::Elem>) -> Vec<LawReport> {
    let mut out = check_renset_laws_avoiding(spec, sampling, avoid);
    let show = |a: &S::Elem| spec.render(a);
    let eq = |l: S::Elem, r: S::Elem| Verdict::eq_by(spec.equal(&l, &r), || show(&l), || show(&r));

    out.push(run_law(
        spec,
        &LawShape {
            name: "Vr commutes with renaming",
            elem_names: &[],
            var_names: &["x", "y", "z"],
            premise: &no_premise,
        },
        sampling,
        avoid,
        &mut |_, v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            eq(spec.rename(&spec.vr(x), y, z), spec.vr(if x == z { y } else { x }))
        },
    ));

    out.push(run_law(
        spec,
        &LawShape {
            name: "Ap commutes with renaming",
            elem_names: &["a1", "a2"],
            var_names: &["y", "z"],
            premise: &no_premise,
        },
        sampling,
        avoid,
        &mut |e, v| {
            let (y, z) = (v[0], v[1]);
            eq(spec.rename(&spec.ap(&e[0], &e[1]), y, z), spec.ap(&spec.rename(&e[0], y, z), &spec.rename(&e[1], y, z)))
        },
    ));

    out.push(run_law(
        spec,
        &LawShape {
            name: "Lm commutes with renaming away from its binder",
            elem_names: &["a"],
            var_names: &["x", "y", "z"],
            premise: &|v| v[0] != v[1] && v[0] != v[2],
        },
        sampling,
        avoid,
        &mut |e, v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            eq(spec.rename(&spec.lm(x, &e[0]), y, z), spec.lm(x, &spec.rename(&e[0], y, z)))
        },
    ));

    out.push(run_law(
        spec,
        &LawShape {
            name: "renaming a binder is identity",
            elem_names: &["a"],
            var_names: &["x", "y"],
            premise: &no_premise,
        },
        sampling,
        avoid,
        &mut |e, v| {
            let (x, y) = (v[0], v[1]);
            let l = spec.lm(x, &e[0]);
            eq(spec.rename(&l, y, x), l)
        },
    ));

    out.push(run_law(
        spec,
        &LawShape {
            name: "Lm binder can be renamed through a fresh variable",
            elem_names: &["a"],
            var_names: &["x", "y", "z"],
            premise: &|v| v[2] != v[1],
        },
        sampling,
        avoid,
        &mut |e, v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let azy = spec.rename(&e[0], z, y);
            eq(spec.lm(x, &azy), spec.lm(y, &spec.rename(&azy, y, x)))
        },
    ));

    out
}

/// Renames every binder of `t` to a distinct variable outside
/// `all_vars(t) ∪ avoid`, starting `skip` places past the least one.
pub fn rename_binders_apart(t: &Term, avoid: &VarSet, skip: usize) -> Term {
    fn go(p: &PreTerm, scope: &mut Vec<(Var, Var)>, next: &mut dyn FnMut() -> Var) -> PreTerm {
        match p {
            PreTerm::Var(v) => PreTerm::Var(scope.iter().rev().find(|(old, _)| old == v).map_or(*v, |&(_, new)| new)),
            PreTerm::App(f, a) => PreTerm::App(Box::new(go(f, scope, next)), Box::new(go(a, scope, next))),
            PreTerm::Lam(x, b) => {
                let n = next();
                scope.push((*x, n));
                let body = go(b, scope, next);
                scope.pop();
                PreTerm::Lam(n, Box::new(body))
            }
        }
    }
    let taken = t.all_vars().union(avoid);
    let mut k = skip;
    let mut next = || {
        k += 1;
        taken.nth_excluded(k - 1)
    };
    Term::from_pre(go(t.repr(), &mut Vec::new(), &mut next))
}

/// Alpha-equivalent representatives of `t` that stress binder handling:
/// the canonical one (which reuses names), and ones with binders moved
/// into the avoid-set or far outside everything.
pub fn alpha_variants(t: &Term, avoid: &VarSet) -> Vec<Term> {
    let mut out = vec![crate::term::from_debruijn(&to_debruijn(t)), rename_binders_apart(t, &VarSet::new(), 5)];
    if let Some(x) = avoid.iter().find(|x| !t.free_vars().contains(*x)) {
        // every binder named x: legal when x is not free in t
        out.push(rebind_all(t, x));
    }
    out
}

fn rebind_all(t: &Term, x: Var) -> Term {
    match t.repr() {
        PreTerm::Var(_) => t.clone(),
        PreTerm::App(f, a) => {
            Term::app(rebind_all(&Term::from_pre((**f).clone()), x), rebind_all(&Term::from_pre((**a).clone()), x))
        }
        PreTerm::Lam(y, b) => {
            let body = Term::from_pre((**b).clone());
            if body.free_vars().without(*y).contains(x) {
                return t.clone();
            }
            Term::lam(x, rebind_all(&body.rename(x, *y), x))
        }
    }
}

/// Recursion clauses on sampled terms, alpha-invariance, and agreement of
/// all engine configurations.
pub fn check_recursor_clauses<S: CeRenset>(
    spec: &S,
    avoid: &VarSet,
    terms: &Terms,
    sampling: &Sampling<Term>,
) -> Vec<LawReport> {
    let f = |t: &Term| recurse(spec, avoid, t);
    let show = |a: &S::Elem| spec.render(a);
    let eq = |l: S::Elem, r: S::Elem| Verdict::eq_by(spec.equal(&l, &r), || show(&l), || show(&r));
    let none = VarSet::new();
    let mut out = Vec::new();

    out.push(run_law(
        terms,
        &LawShape { name: "clause (i): variables", elem_names: &[], var_names: &["x"], premise: &no_premise },
        sampling,
        &none,
        &mut |_, v| eq(f(&Term::var(v[0])), spec.vr(v[0])),
    ));
    out.push(run_law(
        terms,
        &LawShape {
            name: "clause (ii): applications",
            elem_names: &["t1", "t2"],
            var_names: &[],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, _| eq(f(&Term::app(e[0].clone(), e[1].clone())), spec.ap(&f(&e[0]), &f(&e[1]))),
    ));
    out.push(run_law(
        terms,
        &LawShape { name: "clause (iii): abstractions", elem_names: &["t"], var_names: &["x"], premise: &no_premise },
        sampling,
        avoid,
        &mut |e, v| eq(f(&Term::lam(v[0], e[0].clone())), spec.lm(v[0], &f(&e[0]))),
    ));
    out.push(run_law(
        terms,
        &LawShape { name: "clause (iv): renaming", elem_names: &["t"], var_names: &["y", "z"], premise: &no_premise },
        sampling,
        avoid,
        &mut |e, v| eq(f(&e[0].rename(v[0], v[1])), spec.rename(&f(&e[0]), v[0], v[1])),
    ));
    out.push(run_law(
        terms,
        &LawShape { name: "alpha-invariance", elem_names: &["t"], var_names: &[], premise: &no_premise },
        sampling,
        &none,
        &mut |e, _| {
            let base = f(&e[0]);
            for u in alpha_variants(&e[0], avoid) {
                let r = f(&u);
                if !spec.equal(&base, &r) {
                    return Verdict::Fails { lhs: show(&base), rhs: format!("{u}: {}", show(&r)) };
                }
            }
            Verdict::Holds
        },
    ));
    out.push(run_law(
        terms,
        &LawShape {
            name: "engine configuration independence",
            elem_names: &["t"],
            var_names: &[],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, _| {
            let base = f(&e[0]);
            for cfg in Engine::alternatives() {
                let r = cfg.recurse(spec, avoid, &e[0]);
                if !spec.equal(&base, &r) {
                    return Verdict::Fails { lhs: show(&base), rhs: format!("{cfg:?}: {}", show(&r)) };
                }
            }
            Verdict::Holds
        },
    ));
    out
}

/// Terms whose `lm` forgets the binder entirely. Not a CE renset.
#[derive(Clone, Debug, Default)]
pub struct LmDropsBinder(pub Terms);

impl Carrier for LmDropsBinder {
    type Elem = Term;
    fn equal(&self, a: &Term, b: &Term) -> bool {
        self.0.equal(a, b)
    }
    fn support_bound(&self, a: &Term) -> VarSet {
        self.0.support_bound(a)
    }
    fn sample(&self, rng: &mut LawRng) -> Term {
        self.0.sample(rng)
    }
    fn render(&self, a: &Term) -> String {
        self.0.render(a)
    }
    fn mentioned(&self, a: &Term) -> VarSet {
        self.0.mentioned(a)
    }
}

impl Renset for LmDropsBinder {
    fn rename(&self, a: &Term, new: Var, old: Var) -> Term {
        a.rename(new, old)
    }
}

impl CeRenset for LmDropsBinder {
    fn vr(&self, x: Var) -> Term {
        Term::var(x)
    }
    fn ap(&self, a1: &Term, a2: &Term) -> Term {
        Term::app(a1.clone(), a2.clone())
    }
    fn lm(&self, _x: Var, a: &Term) -> Term {
        a.clone()
    }
}
