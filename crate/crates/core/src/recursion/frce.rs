//! Full primitive recursion: the constructor operators also see the
//! subterms themselves.

use super::{CeRenset, FreshPolicy};
use crate::laws::{no_premise, run_law, Carrier, LawReport, LawRng, LawShape, Sampling, Verdict};
use crate::renset::{check_renset_laws_avoiding, PairOf, Renset, Terms};
use crate::term::{PreTerm, Term};
use crate::var::{Var, VarSet};

pub trait FrceRenset: Renset {
    fn vr(&self, x: Var) -> Self::Elem;
    fn ap(&self, t1: &Term, a1: &Self::Elem, t2: &Term, a2: &Self::Elem) -> Self::Elem;
    fn lm(&self, x: Var, t: &Term, a: &Self::Elem) -> Self::Elem;
}

pub fn prim_recurse<S: FrceRenset>(spec: &S, avoid: &VarSet, t: &Term) -> S::Elem {
    prim_recurse_with(spec, avoid, FreshPolicy::default(), t)
}

pub fn prim_recurse_with<S: FrceRenset>(spec: &S, avoid: &VarSet, fresh: FreshPolicy, t: &Term) -> S::Elem {
    stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || match t.repr() {
        PreTerm::Var(x) => spec.vr(*x),
        PreTerm::App(f, a) => {
            let (t1, t2) = (Term::from_pre((**f).clone()), Term::from_pre((**a).clone()));
            let a1 = prim_recurse_with(spec, avoid, fresh, &t1);
            let a2 = prim_recurse_with(spec, avoid, fresh, &t2);
            spec.ap(&t1, &a1, &t2, &a2)
        }
        PreTerm::Lam(x, b) => {
            let body = Term::from_pre((**b).clone());
            let (x, body) = if avoid.contains(*x) {
                let z = fresh.pick(&avoid.union(&body.free_vars()).with(*x));
                (z, body.rename(z, *x))
            } else {
                (*x, body)
            };
            let a = prim_recurse_with(spec, avoid, fresh, &body);
            spec.lm(x, &body, &a)
        }
    })
}

/// A CE renset used for full primitive recursion by ignoring the terms.
#[derive(Clone, Debug)]
pub struct IgnoreTerms<S>(pub S);

impl<S: Carrier> Carrier for IgnoreTerms<S> {
    type Elem = S::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.0.equal(a, b)
    }
    fn support_bound(&self, a: &Self::Elem) -> VarSet {
        self.0.support_bound(a)
    }
    fn sample(&self, rng: &mut LawRng) -> Self::Elem {
        self.0.sample(rng)
    }
    fn render(&self, a: &Self::Elem) -> String {
        self.0.render(a)
    }
    fn mentioned(&self, a: &Self::Elem) -> VarSet {
        self.0.mentioned(a)
    }
}

impl<S: Renset> Renset for IgnoreTerms<S> {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem {
        self.0.rename(a, new, old)
    }
}

impl<S: CeRenset> FrceRenset for IgnoreTerms<S> {
    fn vr(&self, x: Var) -> Self::Elem {
        self.0.vr(x)
    }
    fn ap(&self, _: &Term, a1: &Self::Elem, _: &Term, a2: &Self::Elem) -> Self::Elem {
        self.0.ap(a1, a2)
    }
    fn lm(&self, x: Var, _: &Term, a: &Self::Elem) -> Self::Elem {
        self.0.lm(x, a)
    }
}

/// Counts β-redexes: an application adds one when its function part is an
/// abstraction. Renaming is trivial on the counts.
#[derive(Clone, Debug, Default)]
pub struct RedexCounter;

impl Carrier for RedexCounter {
    type Elem = u64;
    fn equal(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
    fn support_bound(&self, _: &u64) -> VarSet {
        VarSet::new()
    }
    fn sample(&self, rng: &mut LawRng) -> u64 {
        use rand::Rng;
        rng.gen_range(0..6)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Renset for RedexCounter {
    fn rename(&self, a: &u64, _: Var, _: Var) -> u64 {
        *a
    }
}

impl FrceRenset for RedexCounter {
    fn vr(&self, _: Var) -> u64 {
        0
    }
    fn ap(&self, t1: &Term, a1: &u64, _: &Term, a2: &u64) -> u64 {
        a1 + a2 + u64::from(matches!(t1.repr(), PreTerm::Lam(..)))
    }
    fn lm(&self, _: Var, _: &Term, a: &u64) -> u64 {
        *a
    }
}

/// Number of β-redexes, read directly off the pre-term.
pub fn count_redexes(t: &Term) -> u64 {
    fn go(p: &PreTerm) -> u64 {
        match p {
            PreTerm::Var(_) => 0,
            PreTerm::App(f, a) => go(f) + go(a) + u64::from(matches!(**f, PreTerm::Lam(..))),
            PreTerm::Lam(_, b) => go(b),
        }
    }
    go(t.repr())
}

/// Renset laws of the base and the five constructor laws, where the
/// subterm arguments are renamed alongside the carrier values.
pub fn check_frce_laws<S: FrceRenset>(
    spec: &S,
    terms: &Terms,
    avoid: &VarSet,
    sampling: &Sampling<(Term, S::Elem)>,
) -> Vec<LawReport> {
    let mut out = check_renset_laws_avoiding(spec, &sampling.map(|(_, a)| a.clone()), avoid);
    let pair = PairOf::new(terms, spec);
    let show = |a: &S::Elem| spec.render(a);
    let eq = |l: S::Elem, r: S::Elem| Verdict::eq_by(spec.equal(&l, &r), || show(&l), || show(&r));
    let rn = |a: &S::Elem, y, z| spec.rename(a, y, z);

    out.push(run_law(
        &pair,
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
            eq(rn(&spec.vr(x), y, z), spec.vr(if x == z { y } else { x }))
        },
    ));
    out.push(run_law(
        &pair,
        &LawShape {
            name: "Ap commutes with renaming",
            elem_names: &["(t1,a1)", "(t2,a2)"],
            var_names: &["y", "z"],
            premise: &no_premise,
        },
        sampling,
        avoid,
        &mut |e, v| {
            let ((t1, a1), (t2, a2), y, z) = (&e[0], &e[1], v[0], v[1]);
            eq(
                rn(&spec.ap(t1, a1, t2, a2), y, z),
                spec.ap(&t1.rename(y, z), &rn(a1, y, z), &t2.rename(y, z), &rn(a2, y, z)),
            )
        },
    ));
    out.push(run_law(
        &pair,
        &LawShape {
            name: "Lm commutes with renaming away from its binder",
            elem_names: &["(t,a)"],
            var_names: &["x", "y", "z"],
            premise: &|v| v[0] != v[1] && v[0] != v[2],
        },
        sampling,
        avoid,
        &mut |e, v| {
            let ((t, a), x, y, z) = (&e[0], v[0], v[1], v[2]);
            eq(rn(&spec.lm(x, t, a), y, z), spec.lm(x, &t.rename(y, z), &rn(a, y, z)))
        },
    ));
    out.push(run_law(
        &pair,
        &LawShape {
            name: "renaming a binder is identity",
            elem_names: &["(t,a)"],
            var_names: &["x", "y"],
            premise: &no_premise,
        },
        sampling,
        avoid,
        &mut |e, v| {
            let ((t, a), x, y) = (&e[0], v[0], v[1]);
            let l = spec.lm(x, t, a);
            eq(rn(&l, y, x), l)
        },
    ));
    out.push(run_law(
        &pair,
        &LawShape {
            name: "Lm binder can be renamed through a fresh variable",
            elem_names: &["(t,a)"],
            var_names: &["x", "y", "z"],
            premise: &|v| v[2] != v[1],
        },
        sampling,
        avoid,
        &mut |e, v| {
            let ((t, a), x, y, z) = (&e[0], v[0], v[1], v[2]);
            let (tz, az) = (t.rename(z, y), rn(a, z, y));
            eq(spec.lm(x, &tz, &az), spec.lm(y, &tz.rename(y, x), &rn(&az, y, x)))
        },
    ));
    out
}

/// The four recursion clauses for `prim_recurse`, plus agreement of two
/// fresh-binder policies.
pub fn check_frce_clauses<S: FrceRenset>(
    spec: &S,
    avoid: &VarSet,
    terms: &Terms,
    sampling: &Sampling<Term>,
) -> Vec<LawReport> {
    let f = |t: &Term| prim_recurse(spec, avoid, t);
    let show = |a: &S::Elem| spec.render(a);
    let eq = |l: S::Elem, r: S::Elem| Verdict::eq_by(spec.equal(&l, &r), || show(&l), || show(&r));
    let none = VarSet::new();
    vec![
        run_law(
            terms,
            &LawShape { name: "clause (i): variables", elem_names: &[], var_names: &["x"], premise: &no_premise },
            sampling,
            &none,
            &mut |_, v| eq(f(&Term::var(v[0])), spec.vr(v[0])),
        ),
        run_law(
            terms,
            &LawShape {
                name: "clause (ii): applications",
                elem_names: &["t1", "t2"],
                var_names: &[],
                premise: &no_premise,
            },
            sampling,
            &none,
            &mut |e, _| eq(f(&Term::app(e[0].clone(), e[1].clone())), spec.ap(&e[0], &f(&e[0]), &e[1], &f(&e[1]))),
        ),
        run_law(
            terms,
            &LawShape {
                name: "clause (iii): abstractions",
                elem_names: &["t"],
                var_names: &["x"],
                premise: &no_premise,
            },
            sampling,
            avoid,
            &mut |e, v| eq(f(&Term::lam(v[0], e[0].clone())), spec.lm(v[0], &e[0], &f(&e[0]))),
        ),
        run_law(
            terms,
            &LawShape {
                name: "clause (iv): renaming",
                elem_names: &["t"],
                var_names: &["y", "z"],
                premise: &no_premise,
            },
            sampling,
            avoid,
            &mut |e, v| eq(f(&e[0].rename(v[0], v[1])), spec.rename(&f(&e[0]), v[0], v[1])),
        ),
        run_law(
            terms,
            &LawShape { name: "fresh policy independence", elem_names: &["t"], var_names: &[], premise: &no_premise },
            sampling,
            &none,
            &mut |e, _| eq(f(&e[0]), prim_recurse_with(spec, avoid, FreshPolicy::Shifted(2), &e[0])),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::all_pass;
    use crate::recursion::recurse;
    use crate::term::{enum_terms, parse_term};

    #[test]
    fn redex_examples() {
        let avoid = VarSet::new();
        assert_eq!(prim_recurse(&RedexCounter, &avoid, &parse_term("(\\x. x) y").unwrap()), 1);
        assert_eq!(prim_recurse(&RedexCounter, &avoid, &parse_term("\\x. \\y. x").unwrap()), 0);
    }

    #[test]
    fn redex_counter_laws_and_clauses() {
        let terms = Terms::default();
        let avoid: VarSet = [Var(0)].into_iter().collect();
        let s = Sampling::random(9, 300);
        assert!(all_pass(&check_frce_laws(&RedexCounter, &terms, &avoid, &s)));
        assert!(all_pass(&check_frce_clauses(&RedexCounter, &avoid, &terms, &Sampling::random(9, 300))));
    }

    #[test]
    fn ignoring_terms_reduces_to_plain_recursion() {
        let avoid: VarSet = [Var(1)].into_iter().collect();
        let spec = IgnoreTerms(Terms::default());
        for t in enum_terms(5, &[Var(0), Var(1), Var(2)]) {
            assert_eq!(prim_recurse(&spec, &avoid, &t), recurse(&Terms::default(), &avoid, &t));
        }
    }
}
