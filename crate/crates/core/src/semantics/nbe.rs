//! β-normalisation by evaluation into a domain of neutral values and
//! closures, with a budget on closure applications.

use std::cell::Cell;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use super::{interp_ce_spec, Env, SemDomain};
use crate::term::{PreTerm, Term};
use crate::var::{fresh_var, Var, VarSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NbeError {
    #[error("fuel must be at least 1")]
    InvalidFuel,
    #[error("fuel exhausted after {0} beta steps; the term may have no normal form")]
    FuelExhausted(u64),
}

#[derive(Clone)]
pub enum SemVal {
    /// A variable applied to arguments.
    Neutral(Var, Vec<SemVal>),
    Closure(Rc<dyn Fn(&SemVal) -> SemVal>),
}

impl fmt::Debug for SemVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemVal::Neutral(h, sp) => f.debug_tuple("Neutral").field(h).field(sp).finish(),
            SemVal::Closure(_) => f.write_str("Closure(..)"),
        }
    }
}

/// Each closure application spends one unit of fuel; once the budget is
/// gone every application yields a placeholder and the run is void.
pub struct NbeDomain {
    fuel: Cell<u64>,
    exhausted: Cell<bool>,
}

impl NbeDomain {
    pub fn new(fuel: u64) -> Self {
        NbeDomain { fuel: Cell::new(fuel), exhausted: Cell::new(false) }
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.get()
    }

    fn placeholder() -> SemVal {
        SemVal::Neutral(Var(u32::MAX), Vec::new())
    }

    /// Reads a value back as a term; new binders avoid `scope`.
    pub fn reify(&self, v: &SemVal, scope: &VarSet) -> Term {
        stacker::maybe_grow(64 * 1024, 4 * 1024 * 1024, || match v {
            SemVal::Neutral(h, spine) => Term::apps(Term::var(*h), spine.iter().map(|a| self.reify(a, scope))),
            SemVal::Closure(f) => {
                let z = fresh_var(scope);
                let body = f(&SemVal::Neutral(z, Vec::new()));
                Term::lam(z, self.reify(&body, &scope.clone().with(z)))
            }
        })
    }
}

impl SemDomain for NbeDomain {
    type D = SemVal;

    fn ap(&self, d: &SemVal, e: &SemVal) -> SemVal {
        if self.exhausted.get() {
            return Self::placeholder();
        }
        match d {
            SemVal::Neutral(h, spine) => {
                let mut spine = spine.clone();
                spine.push(e.clone());
                SemVal::Neutral(*h, spine)
            }
            SemVal::Closure(f) => {
                let left = self.fuel.get();
                if left == 0 {
                    self.exhausted.set(true);
                    return Self::placeholder();
                }
                self.fuel.set(left - 1);
                stacker::maybe_grow(64 * 1024, 4 * 1024 * 1024, || f(e))
            }
        }
    }

    fn lm(&self, f: Rc<dyn Fn(&SemVal) -> SemVal>) -> SemVal {
        SemVal::Closure(f)
    }

    fn probes(&self) -> Vec<SemVal> {
        Vec::new()
    }

    fn probe_envs(&self) -> Vec<Env<SemVal>> {
        vec![Env::from_fn(|v| SemVal::Neutral(v, Vec::new()))]
    }

    fn equal(&self, a: &SemVal, b: &SemVal) -> bool {
        self.reify(a, &VarSet::new()) == self.reify(b, &VarSet::new())
    }

    fn render(&self, d: &SemVal) -> String {
        self.reify(d, &VarSet::new()).to_string()
    }
}

/// β-normal form of `t`, allowing at most `fuel` β-steps.
pub fn normalize(t: &Term, fuel: u64) -> Result<Term, NbeError> {
    if fuel == 0 {
        return Err(NbeError::InvalidFuel);
    }
    let spec = interp_ce_spec(NbeDomain::new(fuel));
    let env = Env::from_fn(|v| SemVal::Neutral(v, Vec::new()));
    let value = spec.interp(t).run(&env);
    if spec.dom.exhausted() {
        return Err(NbeError::FuelExhausted(fuel));
    }
    let out = spec.dom.reify(&value, &t.free_vars());
    if spec.dom.exhausted() {
        return Err(NbeError::FuelExhausted(fuel));
    }
    Ok(out)
}

/// Leftmost-outermost β-reduction with capture-avoiding substitution, for
/// at most `max_steps` steps. `None` if no normal form was reached.
pub fn beta_normalize_oracle(t: &Term, max_steps: usize) -> Option<Term> {
    fn step(p: &PreTerm) -> Option<PreTerm> {
        match p {
            PreTerm::App(f, a) => {
                if let PreTerm::Lam(x, body) = &**f {
                    let b = Term::from_pre((**body).clone());
                    return Some(b.subst(&Term::from_pre((**a).clone()), *x).into_repr());
                }
                if let Some(f2) = step(f) {
                    return Some(PreTerm::App(Box::new(f2), a.clone()));
                }
                step(a).map(|a2| PreTerm::App(f.clone(), Box::new(a2)))
            }
            PreTerm::Lam(x, b) => step(b).map(|b2| PreTerm::Lam(*x, Box::new(b2))),
            PreTerm::Var(_) => None,
        }
    }
    let mut cur = t.repr().clone();
    for _ in 0..=max_steps {
        match step(&cur) {
            None => return Some(Term::from_pre(cur)),
            Some(next) => cur = next,
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(normalize(&p("(\\x0. x0) x1"), 10).unwrap(), p("x1"));
        assert_eq!(normalize(&p("\\x. (\\y. y) x"), 10).unwrap(), p("\\x. x"));
        assert_eq!(normalize(&p("\\x. \\y. x y"), 10).unwrap(), p("\\a. \\b. a b"));
        assert_eq!(normalize(&p("x"), 0), Err(NbeError::InvalidFuel));
    }

    #[test]
    fn reify_avoids_free_variables() {
        // the inner binder must not capture the free x0
        let t = p("(\\f. \\x0. f x0) x0");
        let n = normalize(&t, 10).unwrap();
        assert_eq!(n, p("\\y. x0 y"));
        assert_eq!(beta_normalize_oracle(&t, 10).unwrap(), n);
    }

    #[test]
    fn omega_runs_out_of_fuel() {
        let omega = p("(\\x. x x) (\\x. x x)");
        for fuel in [1, 2, 10, 1000, 10_000] {
            assert_eq!(normalize(&omega, fuel), Err(NbeError::FuelExhausted(fuel)));
        }
        assert_eq!(beta_normalize_oracle(&omega, 50), None);
    }
}
