//! λ-terms modulo alpha-equivalence and the primitive syntactic operators.

mod debruijn;
mod enumerate;
mod syntax;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use debruijn::{from_debruijn, to_debruijn, DbTerm};
pub use enumerate::{enum_terms, random_term, random_term_of_size};
pub use syntax::{parse_term, parse_term_with, print_term, ParseError};

use crate::var::{fresh_var, Var, VarSet};

/// Raw syntax tree. No identification of alpha-equivalent trees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PreTerm {
    Var(Var),
    App(Box<PreTerm>, Box<PreTerm>),
    Lam(Var, Box<PreTerm>),
}

impl PreTerm {
    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            PreTerm::Var(_) => 1,
            PreTerm::App(f, a) => 1 + f.size() + a.size(),
            PreTerm::Lam(_, b) => 1 + b.size(),
        }
    }

    pub fn free_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut VarSet) {
        match self {
            PreTerm::Var(v) => {
                if !bound.contains(v) {
                    out.insert(*v);
                }
            }
            PreTerm::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            PreTerm::Lam(x, b) => {
                bound.push(*x);
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn has_free(&self, v: Var) -> bool {
        match self {
            PreTerm::Var(u) => *u == v,
            PreTerm::App(f, a) => f.has_free(v) || a.has_free(v),
            PreTerm::Lam(x, b) => *x != v && b.has_free(v),
        }
    }

    /// Every variable mentioned anywhere, binders included.
    pub fn all_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut VarSet) {
        match self {
            PreTerm::Var(v) => {
                out.insert(*v);
            }
            PreTerm::App(f, a) => {
                f.collect_all(out);
                a.collect_all(out);
            }
            PreTerm::Lam(x, b) => {
                out.insert(*x);
                b.collect_all(out);
            }
        }
    }

    fn rename(&self, new: Var, old: Var) -> PreTerm {
        if new == old {
            return self.clone();
        }
        match self {
            PreTerm::Var(v) => PreTerm::Var(if *v == old { new } else { *v }),
            PreTerm::App(f, a) => PreTerm::App(Box::new(f.rename(new, old)), Box::new(a.rename(new, old))),
            PreTerm::Lam(x, b) => {
                if *x == old || !b.has_free(old) {
                    self.clone()
                } else if *x == new {
                    let z = fresh_var(&b.free_vars().with(new).with(old));
                    PreTerm::Lam(z, Box::new(b.rename(z, *x).rename(new, old)))
                } else {
                    PreTerm::Lam(*x, Box::new(b.rename(new, old)))
                }
            }
        }
    }

    fn swap(&self, x1: Var, x2: Var) -> PreTerm {
        let sw = |v: Var| {
            if v == x1 {
                x2
            } else if v == x2 {
                x1
            } else {
                v
            }
        };
        match self {
            PreTerm::Var(v) => PreTerm::Var(sw(*v)),
            PreTerm::App(f, a) => PreTerm::App(Box::new(f.swap(x1, x2)), Box::new(a.swap(x1, x2))),
            PreTerm::Lam(x, b) => PreTerm::Lam(sw(*x), Box::new(b.swap(x1, x2))),
        }
    }

    fn subst(&self, s: &PreTerm, s_fv: &VarSet, x: Var) -> PreTerm {
        match self {
            PreTerm::Var(y) => {
                if *y == x {
                    s.clone()
                } else {
                    self.clone()
                }
            }
            PreTerm::App(f, a) => PreTerm::App(Box::new(f.subst(s, s_fv, x)), Box::new(a.subst(s, s_fv, x))),
            PreTerm::Lam(y, b) => {
                if *y == x || !b.has_free(x) {
                    self.clone()
                } else if s_fv.contains(*y) {
                    let z = fresh_var(&b.free_vars().union(s_fv).with(x));
                    PreTerm::Lam(z, Box::new(b.rename(z, *y).subst(s, s_fv, x)))
                } else {
                    PreTerm::Lam(*y, Box::new(b.subst(s, s_fv, x)))
                }
            }
        }
    }

    fn psubst(&self, rho: &FinTermEnv, avoid: &VarSet) -> PreTerm {
        match self {
            PreTerm::Var(y) => rho.get(*y).0,
            PreTerm::App(f, a) => PreTerm::App(Box::new(f.psubst(rho, avoid)), Box::new(a.psubst(rho, avoid))),
            PreTerm::Lam(y, b) => {
                if avoid.contains(*y) {
                    let z = fresh_var(&avoid.union(&b.free_vars()).with(*y));
                    PreTerm::Lam(z, Box::new(b.rename(z, *y).psubst(rho, avoid)))
                } else {
                    PreTerm::Lam(*y, Box::new(b.psubst(rho, avoid)))
                }
            }
        }
    }
}

/// A λ-term. Equality, hashing and every operation are alpha-invariant; only
/// raw printing exposes the stored binder names.
#[derive(Clone, Debug)]
pub struct Term(PreTerm);

impl Term {
    pub fn var(v: Var) -> Term {
        Term(PreTerm::Var(v))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term(PreTerm::App(Box::new(f.0), Box::new(a.0)))
    }

    pub fn lam(x: Var, body: Term) -> Term {
        Term(PreTerm::Lam(x, Box::new(body.0)))
    }

    /// Left-nested application `f a1 a2 ...`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn from_pre(p: PreTerm) -> Term {
        Term(p)
    }

    /// The stored representative.
    pub fn repr(&self) -> &PreTerm {
        &self.0
    }

    pub fn into_repr(self) -> PreTerm {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn free_vars(&self) -> VarSet {
        self.0.free_vars()
    }

    /// All variables of the representative, including binders.
    pub fn all_vars(&self) -> VarSet {
        self.0.all_vars()
    }

    pub fn is_fresh(&self, x: Var) -> bool {
        !self.0.has_free(x)
    }

    /// Capture-avoiding renaming `self[new/old]`.
    pub fn rename(&self, new: Var, old: Var) -> Term {
        Term(self.0.rename(new, old))
    }

    /// Swapping `self[x1 ∧ x2]`: transposes every occurrence, binders included.
    pub fn swap(&self, x1: Var, x2: Var) -> Term {
        if x1 == x2 {
            return self.clone();
        }
        Term(self.0.swap(x1, x2))
    }

    /// Capture-avoiding substitution of `s` for `x`.
    pub fn subst(&self, s: &Term, x: Var) -> Term {
        Term(self.0.subst(&s.0, &s.free_vars(), x))
    }

    /// Capture-avoiding parallel substitution.
    pub fn psubst(&self, rho: &FinTermEnv) -> Term {
        if rho.is_identity() {
            return self.clone();
        }
        Term(self.0.psubst(rho, &rho.avoid_set()))
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        to_debruijn(self) == to_debruijn(other)
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        to_debruijn(self).hash(state)
    }
}

impl From<PreTerm> for Term {
    fn from(p: PreTerm) -> Term {
        Term(p)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self, &crate::var::Names::new()))
    }
}

pub fn free_vars(t: &Term) -> VarSet {
    t.free_vars()
}

pub fn is_fresh(x: Var, t: &Term) -> bool {
    t.is_fresh(x)
}

pub fn rename(t: &Term, new: Var, old: Var) -> Term {
    t.rename(new, old)
}

pub fn swap(t: &Term, x1: Var, x2: Var) -> Term {
    t.swap(x1, x2)
}

pub fn subst(t: &Term, s: &Term, x: Var) -> Term {
    t.subst(s, x)
}

pub fn psubst(t: &Term, rho: &FinTermEnv) -> Term {
    t.psubst(rho)
}

pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    t.alpha_eq(u)
}

/// Finitely supported map from variables to terms; unmapped variables go to
/// themselves. Entries mapping `v` to (a term alpha-equal to) `Var(v)` are
/// never stored, so the stored keys are exactly the support.
#[derive(Clone, Default, Debug, PartialEq)]
pub struct FinTermEnv {
    map: BTreeMap<Var, Term>,
}

impl FinTermEnv {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Var, t: Term) {
        if matches!(t.repr(), PreTerm::Var(u) if *u == v) {
            self.map.remove(&v);
        } else {
            self.map.insert(v, t);
        }
    }

    pub fn with(mut self, v: Var, t: Term) -> Self {
        self.insert(v, t);
        self
    }

    pub fn get(&self, v: Var) -> Term {
        self.map.get(&v).cloned().unwrap_or_else(|| Term::var(v))
    }

    pub fn support(&self) -> VarSet {
        self.map.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> {
        self.map.iter().map(|(v, t)| (*v, t))
    }

    /// `supp ρ ∪ ⋃ { FV(ρ x) | x ∈ supp ρ }`.
    pub fn avoid_set(&self) -> VarSet {
        let mut out = self.support();
        for t in self.map.values() {
            out.extend(t.free_vars().iter());
        }
        out
    }
}

impl FromIterator<(Var, Term)> for FinTermEnv {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        let mut env = FinTermEnv::identity();
        for (v, t) in iter {
            env.insert(v, t);
        }
        env
    }
}
