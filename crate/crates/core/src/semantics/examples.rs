//! Functions on terms defined through the recursor, each paired with a
//! direct structural oracle.

use std::collections::BTreeMap;
use std::rc::Rc;

use rand::Rng;
use thiserror::Error;

use super::{interp_ce_spec, Env, SemDomain};
use crate::laws::{rng_from_seed, Carrier, LawReport, LawRng, Violation};
use crate::recursion::{recurse, CeRenset};
use crate::renset::Renset;
use crate::term::{enum_terms, random_term, FinTermEnv, PreTerm, Term};
use crate::var::{Var, VarSet};

macro_rules! nat_carrier {
    ($name:ident) => {
        impl Carrier for $name {
            type Elem = u64;
            fn equal(&self, a: &u64, b: &u64) -> bool {
                a == b
            }
            fn support_bound(&self, _: &u64) -> VarSet {
                VarSet::new()
            }
            fn sample(&self, rng: &mut LawRng) -> u64 {
                rng.gen_range(0..8)
            }
            fn render(&self, a: &u64) -> String {
                a.to_string()
            }
        }

        impl Renset for $name {
            fn rename(&self, a: &u64, _: Var, _: Var) -> u64 {
                *a
            }
        }
    };
}

/// Height of the syntax tree; renaming does not change it.
#[derive(Clone, Copy, Debug, Default)]
pub struct LengthSpec;
nat_carrier!(LengthSpec);

impl CeRenset for LengthSpec {
    fn vr(&self, _: Var) -> u64 {
        1
    }
    fn ap(&self, a1: &u64, a2: &u64) -> u64 {
        a1.max(a2) + 1
    }
    fn lm(&self, _: Var, a: &u64) -> u64 {
        a + 1
    }
}

/// Number of abstractions.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClamSpec;
nat_carrier!(ClamSpec);

impl CeRenset for ClamSpec {
    fn vr(&self, _: Var) -> u64 {
        0
    }
    fn ap(&self, a1: &u64, a2: &u64) -> u64 {
        a1 + a2
    }
    fn lm(&self, _: Var, a: &u64) -> u64 {
        a + 1
    }
}

/// Free-occurrence counts of every variable; zero counts are not stored.
/// Renaming `y` to `z` moves the count of `y` onto `z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CfvSpec;

pub type Counts = BTreeMap<Var, u64>;

impl Carrier for CfvSpec {
    type Elem = Counts;
    fn equal(&self, a: &Counts, b: &Counts) -> bool {
        a == b
    }
    fn support_bound(&self, a: &Counts) -> VarSet {
        a.keys().copied().collect()
    }
    fn sample(&self, rng: &mut LawRng) -> Counts {
        (0..rng.gen_range(0..4)).map(|_| (Var(rng.gen_range(0..5)), rng.gen_range(1..4))).collect()
    }
    fn render(&self, a: &Counts) -> String {
        let parts: Vec<String> = a.iter().map(|(v, n)| format!("{v}:{n}")).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl Renset for CfvSpec {
    fn rename(&self, a: &Counts, new: Var, old: Var) -> Counts {
        let mut out = a.clone();
        if new != old {
            if let Some(n) = out.remove(&old) {
                *out.entry(new).or_insert(0) += n;
            }
        }
        out
    }
}

impl CeRenset for CfvSpec {
    fn vr(&self, x: Var) -> Counts {
        BTreeMap::from([(x, 1)])
    }
    fn ap(&self, a1: &Counts, a2: &Counts) -> Counts {
        let mut out = a1.clone();
        for (v, n) in a2 {
            *out.entry(*v).or_insert(0) += n;
        }
        out
    }
    fn lm(&self, x: Var, a: &Counts) -> Counts {
        let mut out = a.clone();
        out.remove(&x);
        out
    }
}

/// Terms, with `Vr x` sent to `s`. Its avoid-set is `{x} ∪ FV(s)`.
#[derive(Clone, Debug)]
pub struct SubstSpec {
    pub s: Term,
    pub x: Var,
}

/// Terms, with `Vr y` sent to `ρ y`. Its avoid-set is `supp ρ ∪ FV(ρ(supp ρ))`.
#[derive(Clone, Debug)]
pub struct PsubstSpec {
    pub rho: FinTermEnv,
}

macro_rules! term_carrier {
    ($name:ident) => {
        impl Carrier for $name {
            type Elem = Term;
            fn equal(&self, a: &Term, b: &Term) -> bool {
                a == b
            }
            fn support_bound(&self, a: &Term) -> VarSet {
                a.free_vars()
            }
            fn sample(&self, rng: &mut LawRng) -> Term {
                random_term(rng, 8, &[Var(0), Var(1), Var(2), Var(3)])
            }
            fn render(&self, a: &Term) -> String {
                a.to_string()
            }
            fn mentioned(&self, a: &Term) -> VarSet {
                a.all_vars()
            }
        }

        impl Renset for $name {
            fn rename(&self, a: &Term, new: Var, old: Var) -> Term {
                a.rename(new, old)
            }
        }
    };
}

term_carrier!(SubstSpec);
term_carrier!(PsubstSpec);

impl SubstSpec {
    pub fn avoid(&self) -> VarSet {
        self.s.free_vars().with(self.x)
    }
}

impl PsubstSpec {
    pub fn avoid(&self) -> VarSet {
        self.rho.avoid_set()
    }
}

impl CeRenset for SubstSpec {
    fn vr(&self, y: Var) -> Term {
        if y == self.x {
            self.s.clone()
        } else {
            Term::var(y)
        }
    }
    fn ap(&self, a1: &Term, a2: &Term) -> Term {
        Term::app(a1.clone(), a2.clone())
    }
    fn lm(&self, y: Var, a: &Term) -> Term {
        Term::lam(y, a.clone())
    }
}

impl CeRenset for PsubstSpec {
    fn vr(&self, y: Var) -> Term {
        self.rho.get(y)
    }
    fn ap(&self, a1: &Term, a2: &Term) -> Term {
        Term::app(a1.clone(), a2.clone())
    }
    fn lm(&self, y: Var, a: &Term) -> Term {
        Term::lam(y, a.clone())
    }
}

/// `ℕ` with `ap = +` and `lm f = f 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NatSum;

impl SemDomain for NatSum {
    type D = u64;
    fn ap(&self, d: &u64, e: &u64) -> u64 {
        d + e
    }
    fn lm(&self, f: Rc<dyn Fn(&u64) -> u64>) -> u64 {
        f(&1)
    }
    fn probes(&self) -> Vec<u64> {
        vec![0, 1, 2, 5]
    }
    fn equal(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
    fn render(&self, d: &u64) -> String {
        d.to_string()
    }
}

/// Booleans with `ap = &&` and `lm f = f true`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoolAnd;

impl SemDomain for BoolAnd {
    type D = bool;
    fn ap(&self, d: &bool, e: &bool) -> bool {
        *d && *e
    }
    fn lm(&self, f: Rc<dyn Fn(&bool) -> bool>) -> bool {
        f(&true)
    }
    fn probes(&self) -> Vec<bool> {
        vec![false, true]
    }
    fn equal(&self, a: &bool, b: &bool) -> bool {
        a == b
    }
    fn render(&self, d: &bool) -> String {
        d.to_string()
    }
}

pub fn length_of(t: &Term) -> u64 {
    recurse(&LengthSpec, &VarSet::new(), t)
}

pub fn clam(t: &Term) -> u64 {
    recurse(&ClamSpec, &VarSet::new(), t)
}

/// Free-occurrence counts of all variables of `t`.
pub fn cfv_profile(t: &Term) -> Counts {
    recurse(&CfvSpec, &VarSet::new(), t)
}

pub fn cfv(t: &Term, x: Var) -> u64 {
    cfv_profile(t).get(&x).copied().unwrap_or(0)
}

/// Bound-variable occurrences: `cbvs t (x ↦ 0)` in the `NatSum` domain.
pub fn cbv(t: &Term) -> u64 {
    interp_ce_spec(NatSum).interp(t).run(&Env::constant(0))
}

/// Whether `t` is an η-redex `λx. s x` with `x` not free in `s`.
pub fn can_eta(t: &Term) -> bool {
    match t.repr() {
        PreTerm::Lam(x, body) => match &**body {
            PreTerm::App(s, arg) if **arg == PreTerm::Var(*x) => {
                let s = Term::from_pre((**s).clone());
                interp_ce_spec(BoolAnd).interp(&s).run(&Env::constant(true).update(*x, false))
            }
            _ => false,
        },
        _ => false,
    }
}

pub fn subst_via_recursor(t: &Term, s: &Term, x: Var) -> Term {
    let spec = SubstSpec { s: s.clone(), x };
    recurse(&spec, &spec.avoid(), t)
}

pub fn psubst_via_recursor(t: &Term, rho: &FinTermEnv) -> Term {
    let spec = PsubstSpec { rho: rho.clone() };
    recurse(&spec, &spec.avoid(), t)
}

pub fn length_oracle(t: &Term) -> u64 {
    fn go(p: &PreTerm) -> u64 {
        match p {
            PreTerm::Var(_) => 1,
            PreTerm::App(f, a) => go(f).max(go(a)) + 1,
            PreTerm::Lam(_, b) => go(b) + 1,
        }
    }
    go(t.repr())
}

pub fn clam_oracle(t: &Term) -> u64 {
    fn go(p: &PreTerm) -> u64 {
        match p {
            PreTerm::Var(_) => 0,
            PreTerm::App(f, a) => go(f) + go(a),
            PreTerm::Lam(_, b) => go(b) + 1,
        }
    }
    go(t.repr())
}

/// Occurrences of `x` not under a binder for `x`.
pub fn cfv_oracle(t: &Term, x: Var) -> u64 {
    fn go(p: &PreTerm, x: Var) -> u64 {
        match p {
            PreTerm::Var(v) => u64::from(*v == x),
            PreTerm::App(f, a) => go(f, x) + go(a, x),
            PreTerm::Lam(y, _) if *y == x => 0,
            PreTerm::Lam(_, b) => go(b, x),
        }
    }
    go(t.repr(), x)
}

/// Variable occurrences that sit under a binder for them.
pub fn cbv_oracle(t: &Term) -> u64 {
    fn go(p: &PreTerm, bound: &mut Vec<Var>) -> u64 {
        match p {
            PreTerm::Var(v) => u64::from(bound.contains(v)),
            PreTerm::App(f, a) => go(f, bound) + go(a, bound),
            PreTerm::Lam(y, b) => {
                bound.push(*y);
                let n = go(b, bound);
                bound.pop();
                n
            }
        }
    }
    go(t.repr(), &mut Vec::new())
}

pub fn can_eta_oracle(t: &Term) -> bool {
    match t.repr() {
        PreTerm::Lam(x, body) => match &**body {
            PreTerm::App(s, arg) => **arg == PreTerm::Var(*x) && !s.free_vars().contains(*x),
            _ => false,
        },
        _ => false,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrossCheckError {
    #[error("unknown function {0:?}; expected one of: {}", CROSS_CHECK_FUNCTIONS.join(", "))]
    UnknownFunction(String),
    #[error("the variable alphabet must be nonempty")]
    EmptyAlphabet,
}

pub const CROSS_CHECK_FUNCTIONS: &[&str] = &["length", "clam", "cfv", "subst", "psubst", "cbv", "caneta"];

type Pair = Box<dyn Fn(&Term, &mut dyn FnMut() -> u64) -> Option<(String, String, String)>>;

fn compare<T: PartialEq + std::fmt::Display>(
    inputs: impl FnOnce() -> String,
    engine: T,
    oracle: T,
) -> Option<(String, String, String)> {
    (engine != oracle).then(|| (inputs(), engine.to_string(), oracle.to_string()))
}

/// The engine/oracle comparison for `name`. `pick` supplies deterministic
/// choices for auxiliary inputs (substituted terms, variables).
fn pair_for(name: &str, vars: &[Var], aux: Vec<Term>) -> Option<Pair> {
    let vars = vars.to_vec();
    let outside = vars.iter().copied().collect::<VarSet>().min_excluded();
    let pick_var = move |pick: &mut dyn FnMut() -> u64| {
        let k = pick() as usize % (vars.len() + 1);
        if k == vars.len() {
            outside
        } else {
            vars[k]
        }
    };
    Some(match name {
        "length" => Box::new(|t, _| compare(|| t.to_string(), length_of(t), length_oracle(t))),
        "clam" => Box::new(|t, _| compare(|| t.to_string(), clam(t), clam_oracle(t))),
        "cbv" => Box::new(|t, _| compare(|| t.to_string(), cbv(t), cbv_oracle(t))),
        "cfv" => Box::new(move |t, pick| {
            let profile = cfv_profile(t);
            let mut xs: VarSet = t.all_vars();
            xs.insert(pick_var(pick));
            let found = xs.iter().find_map(|x| {
                let got = profile.get(&x).copied().unwrap_or(0);
                compare(|| format!("t={t}, x={x}"), got, cfv_oracle(t, x))
            });
            found
        }),
        "caneta" => Box::new(move |t, pick| {
            let x = pick_var(pick);
            let eta = Term::lam(x, Term::app(t.clone(), Term::var(x)));
            compare(|| t.to_string(), can_eta(t), can_eta_oracle(t))
                .or_else(|| compare(|| eta.to_string(), can_eta(&eta), can_eta_oracle(&eta)))
        }),
        "subst" => Box::new(move |t, pick| {
            let s = &aux[pick() as usize % aux.len()];
            let x = pick_var(pick);
            compare(|| format!("t={t}, s={s}, x={x}"), subst_via_recursor(t, s, x), t.subst(s, x))
        }),
        "psubst" => Box::new(move |t, pick| {
            let mut rho = FinTermEnv::identity();
            for _ in 0..(1 + pick() % 3) {
                let x = pick_var(pick);
                rho.insert(x, aux[pick() as usize % aux.len()].clone());
            }
            let rendered: Vec<String> = rho.iter().map(|(v, s)| format!("{v}:={s}")).collect();
            compare(|| format!("t={t}, rho=[{}]", rendered.join(", ")), psubst_via_recursor(t, &rho), t.psubst(&rho))
        }),
        _ => return None,
    })
}

/// Compares the recursor-built function `name` with its oracle on every
/// term up to `max_size` over `vars`, then on `random_trials` seeded random
/// terms of size up to 25.
pub fn cross_check(
    name: &str,
    max_size: usize,
    vars: &[Var],
    seed: u64,
    random_trials: usize,
) -> Result<LawReport, CrossCheckError> {
    if vars.is_empty() {
        return Err(CrossCheckError::EmptyAlphabet);
    }
    let aux = enum_terms(3, vars);
    let pair = pair_for(name, vars, aux).ok_or_else(|| CrossCheckError::UnknownFunction(name.to_string()))?;
    let mut report = LawReport::new(format!("{name}: recursor agrees with oracle"), seed);
    let mut rng = rng_from_seed(seed ^ crate::laws::name_salt(name));
    let record = |found: Option<(String, String, String)>, report: &mut LawReport| {
        report.record(found.map(|(inputs, lhs, rhs)| Violation { inputs, lhs, rhs }));
    };
    let mut counter = 0u64;
    for t in enum_terms(max_size, vars) {
        let mut pick = || {
            counter = counter.wrapping_add(0x9E37_79B9);
            counter >> 3
        };
        let found = pair(&t, &mut pick);
        record(found, &mut report);
    }
    for _ in 0..random_trials {
        let t = random_term(&mut rng, 25, vars);
        let mut pick = || rng.gen::<u32>() as u64;
        let found = pair(&t, &mut pick);
        record(found, &mut report);
    }
    Ok(report)
}
