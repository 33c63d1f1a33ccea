//! Interpretation of terms in semantic domains through environments, the
//! renaming action on interpretations, and the instances built on it.

mod examples;
mod fixture;
mod nbe;

pub use examples::{
    can_eta, can_eta_oracle, cbv, cbv_oracle, cfv, cfv_oracle, cfv_profile, clam, clam_oracle, cross_check, length_of,
    length_oracle, psubst_via_recursor, subst_via_recursor, BoolAnd, CfvSpec, ClamSpec, CrossCheckError, LengthSpec,
    NatSum, PsubstSpec, SubstSpec, CROSS_CHECK_FUNCTIONS,
};
pub use fixture::{FixtureDomain, FixtureError, DEFAULT_FIXTURES};
pub use nbe::{beta_normalize_oracle, normalize, NbeDomain, NbeError, SemVal};

use std::rc::Rc;

use crate::laws::{no_premise, run_law, Carrier, LawReport, LawRng, LawShape, Sampling, Verdict, Violation};
use crate::recursion::{recurse, CeRenset};
use crate::renset::{Renset, Terms};
use crate::term::Term;
use crate::var::{Var, VarSet};

/// Number of environments used to compare interpretations.
pub const PROBE_ENVS: usize = 64;

/// Probe values are tabulated for variables below this index.
const PRECOMPUTED_VARS: u32 = 32;

/// A semantic domain with application and abstraction.
pub trait SemDomain: 'static {
    type D: Clone + 'static;
    fn ap(&self, d: &Self::D, e: &Self::D) -> Self::D;
    fn lm(&self, f: Rc<dyn Fn(&Self::D) -> Self::D>) -> Self::D;
    /// Values used to build the probe environments.
    fn probes(&self) -> Vec<Self::D>;
    fn equal(&self, a: &Self::D, b: &Self::D) -> bool;
    fn render(&self, d: &Self::D) -> String;

    /// The environments on which interpretations are compared.
    fn probe_envs(&self) -> Vec<Env<Self::D>> {
        probe_envs_from(self.probes(), PROBE_ENVS)
    }
}

fn mix(k: u64, v: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = k.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(v.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `count` environments, each assigning a pseudo-random probe value to
/// every variable.
pub fn probe_envs_from<D: Clone + 'static>(probes: Vec<D>, count: usize) -> Vec<Env<D>> {
    assert!(!probes.is_empty(), "probe set must be nonempty");
    let probes = Rc::new(probes);
    (0..count as u64)
        .map(|k| {
            let p = probes.clone();
            let pick = move |v: u32| p[(mix(k, u64::from(v)) % p.len() as u64) as usize].clone();
            let table: Vec<D> = (0..PRECOMPUTED_VARS).map(&pick).collect();
            Env::from_fn(move |v: Var| match table.get(v.0 as usize) {
                Some(d) => d.clone(),
                None => pick(v.0),
            })
        })
        .collect()
}

/// `ξ : Var → D`, a total default function with finitely many overrides.
/// Overrides form a shared list; the most recent binding of a variable wins.
#[derive(Clone)]
pub struct Env<D> {
    default: Rc<dyn Fn(Var) -> D>,
    overrides: Option<Rc<Override<D>>>,
}

struct Override<D> {
    var: Var,
    value: D,
    rest: Option<Rc<Override<D>>>,
}

impl<D: Clone + 'static> Env<D> {
    pub fn from_fn(f: impl Fn(Var) -> D + 'static) -> Self {
        Env { default: Rc::new(f), overrides: None }
    }

    pub fn constant(d: D) -> Self {
        Env::from_fn(move |_| d.clone())
    }

    pub fn get(&self, x: Var) -> D {
        let mut node = &self.overrides;
        while let Some(o) = node {
            if o.var == x {
                return o.value.clone();
            }
            node = &o.rest;
        }
        (self.default)(x)
    }

    /// `ξ⟨x := d⟩`
    pub fn update(&self, x: Var, d: D) -> Self {
        let node = Override { var: x, value: d, rest: self.overrides.clone() };
        Env { default: self.default.clone(), overrides: Some(Rc::new(node)) }
    }
}

/// An interpretation `Env → D`, with a finite set of variables it may read.
#[derive(Clone)]
pub struct Interp<D> {
    run: Rc<dyn Fn(&Env<D>) -> D>,
    support: VarSet,
}

impl<D: Clone + 'static> Interp<D> {
    /// `support` must contain every variable whose value `f` can observe.
    pub fn from_fn(support: VarSet, f: impl Fn(&Env<D>) -> D + 'static) -> Self {
        Interp { run: Rc::new(f), support }
    }

    pub fn run(&self, env: &Env<D>) -> D {
        (self.run)(env)
    }

    pub fn support(&self) -> &VarSet {
        &self.support
    }
}

/// Interpretations as a CE renset:
/// `i[y/x] ξ = i(ξ⟨x := ξ y⟩)`, `Vr x ξ = ξ x`, `Ap i j ξ = ap (i ξ) (j ξ)`,
/// `Lm x i ξ = lm (d ↦ i(ξ⟨x := d⟩))`.
pub struct InterpSpec<Dom: SemDomain> {
    pub dom: Rc<Dom>,
    envs: Vec<Env<Dom::D>>,
    terms: Terms,
}

pub fn interp_ce_spec<Dom: SemDomain>(dom: Dom) -> InterpSpec<Dom> {
    InterpSpec::new(Rc::new(dom))
}

impl<Dom: SemDomain> InterpSpec<Dom> {
    pub fn new(dom: Rc<Dom>) -> Self {
        let envs = dom.probe_envs();
        InterpSpec { dom, envs, terms: Terms::new(8, 4) }
    }

    pub fn envs(&self) -> &[Env<Dom::D>] {
        &self.envs
    }

    /// The interpretation of `t`.
    pub fn interp(&self, t: &Term) -> Interp<Dom::D> {
        recurse(self, &VarSet::new(), t)
    }
}

impl<Dom: SemDomain> Carrier for InterpSpec<Dom> {
    type Elem = Interp<Dom::D>;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.envs.iter().all(|e| self.dom.equal(&a.run(e), &b.run(e)))
    }

    fn support_bound(&self, a: &Self::Elem) -> VarSet {
        a.support.clone()
    }

    fn sample(&self, rng: &mut LawRng) -> Self::Elem {
        self.interp(&self.terms.sample(rng))
    }

    fn render(&self, a: &Self::Elem) -> String {
        let vals: Vec<String> = self.envs.iter().take(4).map(|e| self.dom.render(&a.run(e))).collect();
        format!("<interp on {}: {} ...>", a.support, vals.join(", "))
    }
}

impl<Dom: SemDomain> Renset for InterpSpec<Dom> {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem {
        let support =
            if a.support.contains(old) { a.support.clone().without(old).with(new) } else { a.support.clone() };
        let i = a.clone();
        Interp::from_fn(support, move |xi| i.run(&xi.update(old, xi.get(new))))
    }
}

impl<Dom: SemDomain> CeRenset for InterpSpec<Dom> {
    fn vr(&self, x: Var) -> Self::Elem {
        Interp::from_fn(VarSet::singleton(x), move |xi| xi.get(x))
    }

    fn ap(&self, a1: &Self::Elem, a2: &Self::Elem) -> Self::Elem {
        let (i, j, dom) = (a1.clone(), a2.clone(), self.dom.clone());
        Interp::from_fn(a1.support.union(&a2.support), move |xi| dom.ap(&i.run(xi), &j.run(xi)))
    }

    fn lm(&self, x: Var, a: &Self::Elem) -> Self::Elem {
        let (i, dom) = (a.clone(), self.dom.clone());
        if !a.support.contains(x) {
            // the body cannot observe x: evaluate it once per environment
            return Interp::from_fn(a.support.clone(), move |xi| {
                let c = i.run(xi);
                dom.lm(Rc::new(move |_: &Dom::D| c.clone()))
            });
        }
        Interp::from_fn(a.support.clone().without(x), move |xi| {
            let (i, xi) = (i.clone(), xi.clone());
            dom.lm(Rc::new(move |d: &Dom::D| i.run(&xi.update(x, d.clone()))))
        })
    }
}

/// `sem t ξ`
pub fn sem<Dom: SemDomain>(spec: &InterpSpec<Dom>, t: &Term, xi: &Env<Dom::D>) -> Dom::D {
    spec.interp(t).run(xi)
}

/// The four defining clauses of `sem`, checked on every probe environment.
pub fn check_sem_clauses<Dom: SemDomain>(spec: &InterpSpec<Dom>, sampling: &Sampling<Term>) -> Vec<LawReport> {
    let dom = &spec.dom;
    let on_envs = |lhs: &dyn Fn(&Env<Dom::D>) -> Dom::D, rhs: &dyn Fn(&Env<Dom::D>) -> Dom::D| {
        for (k, e) in spec.envs.iter().enumerate() {
            let (l, r) = (lhs(e), rhs(e));
            if !dom.equal(&l, &r) {
                return Verdict::Fails { lhs: format!("env {k}: {}", dom.render(&l)), rhs: dom.render(&r) };
            }
        }
        Verdict::Holds
    };
    let terms = &spec.terms;
    let none = VarSet::new();
    vec![
        run_law(
            terms,
            &LawShape { name: "sem of a variable", elem_names: &[], var_names: &["x"], premise: &no_premise },
            sampling,
            &none,
            &mut |_, v| on_envs(&|e| sem(spec, &Term::var(v[0]), e), &|e| e.get(v[0])),
        ),
        run_law(
            terms,
            &LawShape {
                name: "sem of an application",
                elem_names: &["t1", "t2"],
                var_names: &[],
                premise: &no_premise,
            },
            sampling,
            &none,
            &mut |t, _| {
                let (i, j) = (spec.interp(&t[0]), spec.interp(&t[1]));
                let whole = spec.interp(&Term::app(t[0].clone(), t[1].clone()));
                on_envs(&|e| whole.run(e), &|e| dom.ap(&i.run(e), &j.run(e)))
            },
        ),
        run_law(
            terms,
            &LawShape { name: "sem of an abstraction", elem_names: &["t"], var_names: &["x"], premise: &no_premise },
            sampling,
            &none,
            &mut |t, v| {
                let x = v[0];
                let body = spec.interp(&t[0]);
                let whole = spec.interp(&Term::lam(x, t[0].clone()));
                on_envs(&|e| whole.run(e), &|e| {
                    let (body, e) = (body.clone(), e.clone());
                    dom.lm(Rc::new(move |d: &Dom::D| body.run(&e.update(x, d.clone()))))
                })
            },
        ),
        run_law(
            terms,
            &LawShape { name: "sem of a renaming", elem_names: &["t"], var_names: &["y", "x"], premise: &no_premise },
            sampling,
            &none,
            &mut |t, v| {
                let (y, x) = (v[0], v[1]);
                let i = spec.interp(&t[0]);
                let renamed = spec.interp(&t[0].rename(y, x));
                on_envs(&|e| renamed.run(e), &|e| i.run(&e.update(x, e.get(y))))
            },
        ),
    ]
}

/// Contrasts the two freshness notions for binders on interpretations.
///
/// The first report checks renaming-freshness of `x` for `Lm x i`: for every
/// sampled `i` and every `y` (including `y0` below) `(Lm x i)[y/x] = Lm x i`,
/// since `ξ⟨x := ξ y⟩⟨x := d⟩ = ξ⟨x := d⟩`.
///
/// The second checks the swapping analogue, which needs a finite set of
/// exceptional `y` that works for every `i`. For each sampled finite set
/// `B` it builds `i = (ξ ↦ ξ y0)` with `y0 ∉ B ∪ {x}` and tests
/// `(Lm x i)[x ∧ y0] = Lm x i`; a difference refutes `B`. On a domain with
/// more than one value every `B` is refuted, so the report fails.
pub fn fcb_contrast_report<Dom: SemDomain>(spec: &InterpSpec<Dom>, seed: u64, trials: usize) -> Vec<LawReport> {
    use rand::Rng;
    let mut rng = crate::laws::rng_from_seed(seed ^ crate::laws::name_salt("binder freshness contrast"));
    let mut renaming = LawReport::new("renaming-freshness of a binder", seed);
    let mut swapping = LawReport::new("swap-freshness of a binder with a uniform finite exception set", seed);
    let swap_i = |i: &Interp<Dom::D>, a: Var, b: Var| {
        let i = i.clone();
        let support = i.support.clone();
        let support = if support.contains(a) || support.contains(b) {
            let (ha, hb) = (support.contains(a), support.contains(b));
            let mut s = support.without(a).without(b);
            if ha {
                s.insert(b);
            }
            if hb {
                s.insert(a);
            }
            s
        } else {
            support
        };
        Interp::from_fn(support, move |xi: &Env<Dom::D>| i.run(&xi.update(a, xi.get(b)).update(b, xi.get(a))))
    };
    for _ in 0..trials {
        let x = Var(rng.gen_range(0..4));
        let b_set: VarSet = (0..rng.gen_range(0..6)).map(|_| Var(rng.gen_range(0..12))).collect();
        let y0 = b_set.clone().with(x).nth_excluded(rng.gen_range(0..3));
        let witness = Interp::from_fn(VarSet::singleton(y0), move |xi: &Env<Dom::D>| xi.get(y0));
        let sampled = spec.sample(&mut rng);

        for i in [&witness, &sampled] {
            let l = spec.lm(x, i);
            let outside = b_set.union(&l.support).with(x).with(y0).min_excluded();
            let ys = b_set.union(&l.support).with(y0).with(x).with(outside);
            let bad = ys.iter().find(|&y| !spec.equal(&spec.rename(&l, y, x), &l));
            renaming.record(bad.map(|y| Violation {
                inputs: format!("x={x}, y={y}, i={}", spec.render(i)),
                lhs: spec.render(&spec.rename(&l, y, x)),
                rhs: spec.render(&l),
            }));
        }

        let l = spec.lm(x, &witness);
        let swapped = swap_i(&l, x, y0);
        let holds = spec.equal(&swapped, &l);
        swapping.record((!holds).then(|| Violation {
            inputs: format!("x={x}, B={b_set}, i=(ξ ↦ ξ {y0})"),
            lhs: format!("(Lm {x} i)[{x} ∧ {y0}] = {}", spec.render(&swapped)),
            rhs: format!("Lm {x} i = {}", spec.render(&l)),
        }));
    }
    vec![renaming, swapping]
}
