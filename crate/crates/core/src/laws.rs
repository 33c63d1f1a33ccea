//! Law reports, carriers, and the sampling driver every checker runs on.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::var::{Var, VarSet};

pub type LawRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> LawRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A concrete counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of checking one law. Failures are data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub trials: u64,
    pub seed: u64,
    pub pass: bool,
    pub violations: Vec<Violation>,
}

/// Violations kept per report.
pub const MAX_VIOLATIONS: usize = 8;

impl LawReport {
    pub fn new(law: impl Into<String>, seed: u64) -> Self {
        LawReport { law: law.into(), trials: 0, seed, pass: true, violations: Vec::new() }
    }

    pub fn record(&mut self, v: Option<Violation>) {
        self.trials += 1;
        if let Some(v) = v {
            self.pass = false;
            if self.violations.len() < MAX_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One line: `PASS law (N trials)` or `FAIL law (N trials): first witness`.
    pub fn summary(&self) -> String {
        if self.pass {
            format!("PASS {} ({} trials)", self.law, self.trials)
        } else {
            let w = &self.violations[0];
            format!(
                "FAIL {} ({} trials, {}+ violations): {} | lhs = {} | rhs = {}",
                self.law,
                self.trials,
                self.violations.len(),
                w.inputs,
                w.lhs,
                w.rhs
            )
        }
    }
}

pub fn all_pass(reports: &[LawReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// A set whose elements are "variable-bearing": the common part of every
/// algebraic instance (rensets, nominal sets, permutation actions,
/// substitutive sets).
pub trait Carrier {
    type Elem: Clone;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// A finite superset of the variables that are not fresh for `a`.
    /// Checkers validate it rather than trust it.
    fn support_bound(&self, a: &Self::Elem) -> VarSet;

    fn sample(&self, rng: &mut LawRng) -> Self::Elem;

    fn render(&self, a: &Self::Elem) -> String;

    /// Variables worth hitting when drawing law inputs. Defaults to the
    /// support bound; term-like carriers add binder names.
    fn mentioned(&self, a: &Self::Elem) -> VarSet {
        self.support_bound(a)
    }
}

impl<C: Carrier + ?Sized> Carrier for &C {
    type Elem = C::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).equal(a, b)
    }
    fn support_bound(&self, a: &Self::Elem) -> VarSet {
        (**self).support_bound(a)
    }
    fn sample(&self, rng: &mut LawRng) -> Self::Elem {
        (**self).sample(rng)
    }
    fn render(&self, a: &Self::Elem) -> String {
        (**self).render(a)
    }
    fn mentioned(&self, a: &Self::Elem) -> VarSet {
        (**self).mentioned(a)
    }
}

/// How law inputs are produced.
#[derive(Clone, Debug)]
pub enum Sampling<E> {
    /// `trials` seeded random cases; variables are drawn from the variables
    /// mentioned by the sampled elements plus two outside witnesses.
    Random { seed: u64, trials: usize },
    /// Every element of `elems` in first position, every tuple over `vars`.
    /// Further element positions are filled deterministically from `elems`.
    Exhaustive { elems: Vec<E>, vars: Vec<Var> },
}

impl<E> Sampling<E> {
    pub fn random(seed: u64, trials: usize) -> Self {
        Sampling::Random { seed, trials }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Sampling::Random { seed, .. } => *seed,
            Sampling::Exhaustive { .. } => 0,
        }
    }

    pub fn map<F, G>(&self, f: G) -> Sampling<F>
    where
        G: Fn(&E) -> F,
    {
        match self {
            Sampling::Random { seed, trials } => Sampling::Random { seed: *seed, trials: *trials },
            Sampling::Exhaustive { elems, vars } => {
                Sampling::Exhaustive { elems: elems.iter().map(f).collect(), vars: vars.clone() }
            }
        }
    }
}

/// Result of one law instance.
pub enum Verdict {
    Holds,
    Fails {
        lhs: String,
        rhs: String,
    },
    /// The case does not meet a side-condition the shape cannot express;
    /// not counted as a trial.
    Skip,
}

impl Verdict {
    pub fn eq_by(ok: bool, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails { lhs: lhs(), rhs: rhs() }
        }
    }

    pub fn implication(premise: bool, conclusion: bool, detail: impl FnOnce() -> String) -> Verdict {
        if !premise || conclusion {
            Verdict::Holds
        } else {
            Verdict::Fails { lhs: detail(), rhs: "conclusion false".into() }
        }
    }
}

/// Shape of a law: how many carrier elements and variables it quantifies
/// over, their display names, and the variable side-condition.
pub struct LawShape<'a> {
    pub name: &'a str,
    pub elem_names: &'a [&'a str],
    pub var_names: &'a [&'a str],
    pub premise: &'a dyn Fn(&[Var]) -> bool,
}

pub fn no_premise(_: &[Var]) -> bool {
    true
}

fn render_inputs<C: Carrier>(c: &C, shape: &LawShape<'_>, elems: &[C::Elem], vars: &[Var]) -> String {
    let mut parts: Vec<String> =
        shape.elem_names.iter().zip(elems).map(|(n, e)| format!("{n}={}", c.render(e))).collect();
    parts.extend(shape.var_names.iter().zip(vars).map(|(n, v)| format!("{n}={v}")));
    parts.join(", ")
}

const DRAW_ATTEMPTS: usize = 64;

/// Drives one law over `sampling`. Variables in `avoid` are never drawn.
pub fn run_law<C: Carrier>(
    c: &C,
    shape: &LawShape<'_>,
    sampling: &Sampling<C::Elem>,
    avoid: &VarSet,
    check: &mut dyn FnMut(&[C::Elem], &[Var]) -> Verdict,
) -> LawReport {
    let mut report = LawReport::new(shape.name, sampling.seed());
    let n_elems = shape.elem_names.len();
    let n_vars = shape.var_names.len();
    let mut one = |elems: &[C::Elem], vars: &[Var], report: &mut LawReport| {
        let v = match check(elems, vars) {
            Verdict::Skip => return,
            Verdict::Holds => None,
            Verdict::Fails { lhs, rhs } => Some(Violation { inputs: render_inputs(c, shape, elems, vars), lhs, rhs }),
        };
        report.record(v);
    };
    match sampling {
        Sampling::Random { seed, trials } => {
            let mut rng = rng_from_seed(*seed ^ name_salt(shape.name));
            for _ in 0..*trials {
                let elems: Vec<C::Elem> = (0..n_elems).map(|_| c.sample(&mut rng)).collect();
                let pool = variable_pool(c, &elems, avoid);
                let mut drawn = None;
                for _ in 0..DRAW_ATTEMPTS {
                    let vars: Vec<Var> = (0..n_vars).map(|_| *pool.choose(&mut rng).expect("nonempty pool")).collect();
                    if (shape.premise)(&vars) {
                        drawn = Some(vars);
                        break;
                    }
                }
                if drawn.is_none() {
                    // premise needs more distinct variables than the pool offers
                    let mut wide = pool.clone();
                    let mut taken: VarSet = wide.iter().copied().chain(avoid.iter()).collect();
                    while wide.len() < n_vars + 2 {
                        let v = taken.min_excluded();
                        taken.insert(v);
                        wide.push(v);
                    }
                    for _ in 0..DRAW_ATTEMPTS {
                        let vars: Vec<Var> = (0..n_vars).map(|_| *wide.choose(&mut rng).expect("nonempty")).collect();
                        if (shape.premise)(&vars) {
                            drawn = Some(vars);
                            break;
                        }
                    }
                }
                if let Some(vars) = drawn {
                    one(&elems, &vars, &mut report);
                }
            }
        }
        Sampling::Exhaustive { elems, vars } => {
            let vars: Vec<Var> = vars.iter().copied().filter(|v| !avoid.contains(*v)).collect();
            if elems.is_empty() || (vars.is_empty() && n_vars > 0) {
                return report;
            }
            let n = elems.len();
            let mut tuple = vec![0usize; n_vars];
            for i in 0..n {
                let chosen: Vec<C::Elem> = (0..n_elems).map(|k| elems[(i + k * (n / 3 + 7)) % n].clone()).collect();
                loop {
                    let vs: Vec<Var> = tuple.iter().map(|&j| vars[j]).collect();
                    if (shape.premise)(&vs) {
                        one(&chosen, &vs, &mut report);
                    }
                    if !advance(&mut tuple, vars.len()) {
                        break;
                    }
                }
            }
        }
    }
    report
}

fn advance(tuple: &mut [usize], base: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Mentioned variables of the elements plus two variables outside them,
/// minus `avoid`.
pub fn variable_pool<C: Carrier>(c: &C, elems: &[C::Elem], avoid: &VarSet) -> Vec<Var> {
    let mut seen = VarSet::new();
    for e in elems {
        seen.extend(c.mentioned(e).iter());
    }
    let mut taken = seen.union(avoid);
    for _ in 0..2 {
        let v = taken.min_excluded();
        taken.insert(v);
        seen.insert(v);
    }
    seen.iter().filter(|v| !avoid.contains(*v)).collect()
}

/// Per-law salt so that laws sharing a seed still see different streams.
pub fn name_salt(name: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Draws a variable among the first `n` indices.
pub fn small_var(rng: &mut LawRng, n: u32) -> Var {
    Var(rng.gen_range(0..n))
}

/// True when all given variables are pairwise distinct.
pub fn distinct(vs: &[Var]) -> bool {
    vs.iter().enumerate().all(|(i, a)| vs[i + 1..].iter().all(|b| a != b))
}
