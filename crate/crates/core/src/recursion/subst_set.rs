//! Substitutive sets: term-for-variable substitution `a⟦b/x⟧` as the
//! primitive, with renaming recovered as `a⟦Vr y/x⟧`.

use super::{recurse, CeRenset};
use crate::laws::{no_premise, run_law, Carrier, LawReport, LawRng, LawShape, Sampling, Verdict};
use crate::renset::{derived_fresh, Renset, Terms};
use crate::term::Term;
use crate::var::{Var, VarSet};

/// `subst(a, b, x)` is `a⟦b/x⟧`.
pub trait SubstSet: Carrier {
    fn subst(&self, a: &Self::Elem, b: &Self::Elem, x: Var) -> Self::Elem;
    fn vr(&self, x: Var) -> Self::Elem;
    fn ap(&self, a1: &Self::Elem, a2: &Self::Elem) -> Self::Elem;
    fn lm(&self, x: Var, a: &Self::Elem) -> Self::Elem;
}

impl<S: SubstSet + ?Sized> SubstSet for &S {
    fn subst(&self, a: &Self::Elem, b: &Self::Elem, x: Var) -> Self::Elem {
        (**self).subst(a, b, x)
    }
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

/// Terms with capture-avoiding substitution.
#[derive(Clone, Debug, Default)]
pub struct TermSubst(pub Terms);

impl Carrier for TermSubst {
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

impl SubstSet for TermSubst {
    fn subst(&self, a: &Term, b: &Term, x: Var) -> Term {
        a.subst(b, x)
    }
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

/// The CE renset whose renaming is `a[y/x] = a⟦Vr y/x⟧`.
#[derive(Clone, Debug)]
pub struct InducedRenset<S>(pub S);

impl<S: SubstSet> Carrier for InducedRenset<S> {
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

impl<S: SubstSet> Renset for InducedRenset<S> {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem {
        self.0.subst(a, &self.0.vr(new), old)
    }
}

impl<S: SubstSet> CeRenset for InducedRenset<S> {
    fn vr(&self, x: Var) -> Self::Elem {
        self.0.vr(x)
    }
    fn ap(&self, a1: &Self::Elem, a2: &Self::Elem) -> Self::Elem {
        self.0.ap(a1, a2)
    }
    fn lm(&self, x: Var, a: &Self::Elem) -> Self::Elem {
        self.0.lm(x, a)
    }
}

/// The recursor into a CE substitutive set, through its induced renset.
pub fn subst_recurse<S: SubstSet>(spec: &S, t: &Term) -> S::Elem {
    recurse(&InducedRenset(spec), &VarSet::new(), t)
}

struct Ops<'a, S: SubstSet> {
    s: &'a S,
}

impl<S: SubstSet> Ops<'_, S> {
    fn sb(&self, a: &S::Elem, b: &S::Elem, x: Var) -> S::Elem {
        self.s.subst(a, b, x)
    }
    /// `a⟦y/x⟧`
    fn sv(&self, a: &S::Elem, y: Var, x: Var) -> S::Elem {
        self.s.subst(a, &self.s.vr(y), x)
    }
    fn fresh(&self, x: Var, a: &S::Elem) -> bool {
        derived_fresh(&InducedRenset(self.s), x, a)
    }
    fn eq(&self, l: S::Elem, r: S::Elem) -> Verdict {
        Verdict::eq_by(self.s.equal(&l, &r), || self.s.render(&l), || self.s.render(&r))
    }
}

/// The four substitutive-set axioms, the four constructor axioms and the
/// three freshness consequences. Freshness is the one derived from the
/// induced renaming.
///
/// The constructor axiom for abstractions is checked in the reading
/// `x ≠ z ⇒ (Lm x a)⟦b⟦z/x⟧/y⟧ = if x = y then Lm x a else Lm x (a⟦b⟦z/x⟧/y⟧)`;
/// the second consequence assumes `x2 # a` and the third assumes `x # c`
/// and `y # b`. The verbatim readings are in
/// [`check_subst_literal_readings`].
pub fn check_subst_laws<S: SubstSet>(spec: &S, sampling: &Sampling<S::Elem>) -> Vec<LawReport> {
    let o = Ops { s: spec };
    let none = VarSet::new();
    let mut out = Vec::new();
    let mut law = |name: &'static str,
                   elem_names: &'static [&'static str],
                   var_names: &'static [&'static str],
                   premise: &dyn Fn(&[Var]) -> bool,
                   check: &mut dyn FnMut(&[S::Elem], &[Var]) -> Verdict| {
        out.push(run_law(spec, &LawShape { name, elem_names, var_names, premise }, sampling, &none, check));
    };

    law("subst Identity", &["a"], &["x"], &no_premise, &mut |e, v| o.eq(o.sv(&e[0], v[0], v[0]), e[0].clone()));

    law("subst Idempotence", &["a", "b"], &["x", "y", "z"], &|v| v[0] != v[1] && v[1] != v[2], &mut |e, v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        let base = o.sb(&e[0], &o.sv(&e[1], z, y), y);
        o.eq(o.sv(&base, x, y), base)
    });

    law("subst Chaining", &["a", "b"], &["y", "x1", "x2"], &|v| v[0] != v[2], &mut |e, v| {
        let (y, x1, x2) = (v[0], v[1], v[2]);
        let pre = o.sv(&e[0], y, x2);
        o.eq(o.sb(&o.sv(&pre, x2, x1), &e[1], x2), o.sb(&pre, &e[1], x1))
    });

    law(
        "subst Commutativity",
        &["a", "b", "c"],
        &["x1", "x2", "y1", "y2"],
        &|v| v[3] != v[2] && v[2] != v[0] && v[0] != v[1],
        &mut |e, v| {
            let (x1, x2, y1, y2) = (v[0], v[1], v[2], v[3]);
            let b = o.sv(&e[1], y2, y1);
            let c = o.sv(&e[2], x2, x1);
            o.eq(o.sb(&o.sb(&e[0], &b, x1), &c, y1), o.sb(&o.sb(&e[0], &c, y1), &b, x1))
        },
    );

    law("Vr under substitution", &["b"], &["x", "y"], &no_premise, &mut |e, v| {
        let (x, y) = (v[0], v[1]);
        o.eq(o.sb(&spec.vr(x), &e[0], y), if x == y { e[0].clone() } else { spec.vr(x) })
    });

    law("Ap under substitution", &["a1", "a2", "b"], &["y"], &no_premise, &mut |e, v| {
        let y = v[0];
        o.eq(o.sb(&spec.ap(&e[0], &e[1]), &e[2], y), spec.ap(&o.sb(&e[0], &e[2], y), &o.sb(&e[1], &e[2], y)))
    });

    law(
        "Lm under substitution (binder renamed out of the substituted value)",
        &["a", "b"],
        &["x", "y", "z"],
        &|v| v[0] != v[2],
        &mut |e, v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let l = spec.lm(x, &e[0]);
            let b = o.sv(&e[1], z, x);
            let rhs = if x == y { l.clone() } else { spec.lm(x, &o.sb(&e[0], &b, y)) };
            o.eq(o.sb(&l, &b, y), rhs)
        },
    );

    law("Lm binder renaming under substitution", &["a"], &["x", "y", "z"], &|v| v[2] != v[1], &mut |e, v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        let azy = o.sv(&e[0], z, y);
        o.eq(spec.lm(x, &azy), spec.lm(y, &o.sv(&azy, y, x)))
    });

    law("substituting for a vanished variable", &["a", "b"], &["x", "y"], &|v| v[0] != v[1], &mut |e, v| {
        let (x, y) = (v[0], v[1]);
        if !o.fresh(y, &e[1]) {
            return Verdict::Skip;
        }
        let base = o.sb(&e[0], &e[1], y);
        o.eq(o.sv(&base, x, y), base)
    });

    law("substitution through a fresh variable", &["a", "b"], &["x1", "x2"], &no_premise, &mut |e, v| {
        let (x1, x2) = (v[0], v[1]);
        if !o.fresh(x2, &e[0]) {
            return Verdict::Skip;
        }
        o.eq(o.sb(&o.sv(&e[0], x2, x1), &e[1], x2), o.sb(&e[0], &e[1], x1))
    });

    law("independent substitutions commute", &["a", "b", "c"], &["x", "y"], &|v| v[0] != v[1], &mut |e, v| {
        let (x, y) = (v[0], v[1]);
        if !o.fresh(x, &e[2]) || !o.fresh(y, &e[1]) {
            return Verdict::Skip;
        }
        o.eq(o.sb(&o.sb(&e[0], &e[1], x), &e[2], y), o.sb(&o.sb(&e[0], &e[2], y), &e[1], x))
    });

    out
}

/// The verbatim side conditions of the abstraction axiom and of the second
/// and third freshness consequences. They do not hold for terms; these
/// reports exist to exhibit the counterexamples.
pub fn check_subst_literal_readings<S: SubstSet>(spec: &S, sampling: &Sampling<S::Elem>) -> Vec<LawReport> {
    let o = Ops { s: spec };
    let none = VarSet::new();
    let abs = run_law(
        spec,
        &LawShape {
            name: "Lm under substitution, verbatim",
            elem_names: &["a", "b"],
            var_names: &["x", "y", "z"],
            premise: &|v| v[0] != v[2],
        },
        sampling,
        &none,
        &mut |e, v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let l = spec.lm(x, &e[0]);
            let rhs = if x == y { l.clone() } else { spec.lm(x, &o.sb(&e[0], &o.sv(&e[1], z, y), y)) };
            o.eq(o.sb(&l, &o.sv(&e[1], z, x), y), rhs)
        },
    );
    let second = run_law(
        spec,
        &LawShape {
            name: "substitution through a fresh variable, verbatim",
            elem_names: &["a", "b"],
            var_names: &["x1", "x2"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let (x1, x2) = (v[0], v[1]);
            if !o.fresh(x2, &e[1]) {
                return Verdict::Skip;
            }
            o.eq(o.sb(&o.sv(&e[0], x2, x1), &e[1], x2), o.sb(&e[0], &e[1], x1))
        },
    );
    let third = run_law(
        spec,
        &LawShape {
            name: "independent substitutions commute, verbatim",
            elem_names: &["a", "b", "c"],
            var_names: &["x", "y"],
            premise: &|v| v[0] != v[1],
        },
        sampling,
        &none,
        &mut |e, v| {
            let (x, y) = (v[0], v[1]);
            if !o.fresh(x, &e[0]) || !o.fresh(y, &e[1]) {
                return Verdict::Skip;
            }
            o.eq(o.sb(&o.sb(&e[0], &e[1], x), &e[2], y), o.sb(&o.sb(&e[0], &e[2], y), &e[1], x))
        },
    );
    vec![abs, second, third]
}

/// `f(t⟦s/x⟧) = f(t)⟦f(s)/x⟧` for `f = subst_recurse(spec, ·)`.
pub fn check_subst_recurse_commutes<S: SubstSet>(spec: &S, terms: &Terms, sampling: &Sampling<Term>) -> LawReport {
    let f = |t: &Term| subst_recurse(spec, t);
    run_law(
        terms,
        &LawShape {
            name: "recursor commutes with substitution",
            elem_names: &["t", "s"],
            var_names: &["x"],
            premise: &no_premise,
        },
        sampling,
        &VarSet::new(),
        &mut |e, v| {
            let lhs = f(&e[0].subst(&e[1], v[0]));
            let rhs = spec.subst(&f(&e[0]), &f(&e[1]), v[0]);
            Verdict::eq_by(spec.equal(&lhs, &rhs), || spec.render(&lhs), || spec.render(&rhs))
        },
    )
}
