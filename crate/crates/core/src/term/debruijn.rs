//! De Bruijn form: the canonical key for alpha-equivalence.

use super::{PreTerm, Term};
use crate::var::{fresh_var, Var, VarSet};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum DbTerm {
    Bound(usize),
    Free(Var),
    App(Box<DbTerm>, Box<DbTerm>),
    Lam(Box<DbTerm>),
}

impl DbTerm {
    pub fn free_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut VarSet) {
        match self {
            DbTerm::Bound(_) => {}
            DbTerm::Free(v) => {
                out.insert(*v);
            }
            DbTerm::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
            DbTerm::Lam(b) => b.collect_free(out),
        }
    }

    /// True when every `Bound(k)` sits under more than `k` binders.
    pub fn is_closed_wrt_indices(&self) -> bool {
        fn go(d: &DbTerm, depth: usize) -> bool {
            match d {
                DbTerm::Bound(k) => *k < depth,
                DbTerm::Free(_) => true,
                DbTerm::App(f, a) => go(f, depth) && go(a, depth),
                DbTerm::Lam(b) => go(b, depth + 1),
            }
        }
        go(self, 0)
    }
}

pub fn to_debruijn(t: &Term) -> DbTerm {
    fn go(p: &PreTerm, scope: &mut Vec<Var>) -> DbTerm {
        match p {
            PreTerm::Var(v) => match scope.iter().rev().position(|b| b == v) {
                Some(k) => DbTerm::Bound(k),
                None => DbTerm::Free(*v),
            },
            PreTerm::App(f, a) => DbTerm::App(Box::new(go(f, scope)), Box::new(go(a, scope))),
            PreTerm::Lam(x, b) => {
                scope.push(*x);
                let body = go(b, scope);
                scope.pop();
                DbTerm::Lam(Box::new(body))
            }
        }
    }
    go(t.repr(), &mut Vec::new())
}

/// Names each binder with the smallest variable distinct from the free
/// variables and the enclosing binder names.
///
/// Panics if `d` has a dangling index.
pub fn from_debruijn(d: &DbTerm) -> Term {
    fn go(d: &DbTerm, free: &VarSet, scope: &mut Vec<Var>) -> PreTerm {
        match d {
            DbTerm::Bound(k) => PreTerm::Var(scope[scope.len() - 1 - k]),
            DbTerm::Free(v) => PreTerm::Var(*v),
            DbTerm::App(f, a) => PreTerm::App(Box::new(go(f, free, scope)), Box::new(go(a, free, scope))),
            DbTerm::Lam(b) => {
                let mut avoid = free.clone();
                avoid.extend(scope.iter().copied());
                let x = fresh_var(&avoid);
                scope.push(x);
                let body = go(b, free, scope);
                scope.pop();
                PreTerm::Lam(x, Box::new(body))
            }
        }
    }
    assert!(d.is_closed_wrt_indices(), "dangling de Bruijn index");
    Term::from_pre(go(d, &d.free_vars(), &mut Vec::new()))
}
