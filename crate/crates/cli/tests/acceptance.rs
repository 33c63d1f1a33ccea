//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines are always printed; exits nonzero on any FAIL.

use std::process::Command;
use std::rc::Rc;
use std::time::{Duration, Instant};

use bindkit::dispatch;
use bindkit_core::laws::all_pass;
use bindkit_core::perm::{
    all_perms, check_action_laws, check_decomposition_independence, check_g_matches_term_swap, check_group_laws,
    check_roundtrips, PermSampling,
};
use bindkit_core::recursion::{
    check_ce_laws, check_frce_clauses, check_frce_laws, check_recursor_clauses, check_subst_laws,
    check_subst_literal_readings, check_subst_recurse_commutes, count_redexes, prim_recurse, recurse, subst_recurse,
    CeRenset, IgnoreTerms, InducedRenset, LmDropsBinder, RedexCounter, TermSubst,
};
use bindkit_core::renset::{
    check_ce_nominal_laws_terms, check_lemma9_terms, check_morphism_preservation, check_nominal_laws,
    check_pivot_independence, check_prop3_equivalence, check_prop4, check_prop6_freshness, check_renset_laws,
    derive_nominal, derived_fresh, derived_swap, BinderBlindSwap, ListOf, NaiveTerms, OptionOf, PairOf, Terms, Vars,
};
use bindkit_core::semantics::{
    beta_normalize_oracle, can_eta, cbv, cfv, cfv_profile, check_sem_clauses, clam, cross_check, fcb_contrast_report,
    interp_ce_spec, length_of, normalize, sem, BoolAnd, CfvSpec, ClamSpec, FixtureDomain, InterpSpec, LengthSpec,
    NatSum, NbeDomain, NbeError, PsubstSpec, SemDomain, SubstSpec, CROSS_CHECK_FUNCTIONS,
};
use bindkit_core::term::{enum_terms, parse_term_with};
use bindkit_core::{parse_term, print_term, FinTermEnv, LawReport, Names, Renset, Sampling, Term, Var, VarSet};

const SEED: u64 = 20_240_601;
/// Whole-suite wall-clock budget.
const TIME_BUDGET: Duration = Duration::from_secs(60);
/// Seeded random cases for the renaming and freshness laws.
const RANDOM_CASES: usize = 10_000;
/// Random cases for the heavier suites.
const MEDIUM_CASES: usize = 2_000;
const PIVOT_SAMPLES: usize = 1_000;
const PERM_SAMPLES: usize = 1_000;
const PERM_VARS: u32 = 4;
const MIN_PROBE_ENVS: usize = 50;
const INTERP_CASES: usize = 1_000;
/// Largest term size for the exhaustive recursor clauses, alpha-invariance
/// and engine independence.
const ALPHA_EXHAUSTIVE_SIZE: usize = 6;
const CROSS_CHECK_RANDOM: usize = 10_000;
const OMEGA_FUELS: [u64; 8] = [1, 2, 3, 10, 100, 1_000, 5_000, 10_000];
const CLI_JSON_TRIALS: &str = "10000";

fn alphabet(n: u32) -> Vec<Var> {
    (0..n).map(Var).collect()
}

/// Terms of size at most `max` over three variables.
fn small_terms(max: usize) -> Vec<Term> {
    enum_terms(max, &alphabet(3))
}

/// Three alphabet variables plus one outside them.
fn law_vars() -> Vec<Var> {
    alphabet(4)
}

fn exhaustive<E>(elems: Vec<E>) -> Sampling<E> {
    Sampling::Exhaustive { elems, vars: law_vars() }
}

fn random<E>(trials: usize) -> Sampling<E> {
    Sampling::random(SEED, trials)
}

fn p(text: &str) -> Term {
    parse_term(text).expect("literal term parses")
}

/// Facts gathered for one criterion; the first failure is kept for the
/// report line.
struct Gate {
    checks: usize,
    failure: Option<String>,
}

impl Gate {
    fn new() -> Gate {
        Gate { checks: 0, failure: None }
    }

    fn fact(&mut self, what: &str, ok: bool) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what.to_string());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        self.fact(&format!("{what}: got {got:?}, want {want:?}"), ok);
    }

    fn pass(&mut self, what: &str, reports: &[LawReport]) {
        for r in reports {
            self.checks += 1;
            if !r.pass && self.failure.is_none() {
                self.failure = Some(format!("{what}: {}", r.summary()));
            }
            if r.trials == 0 && self.failure.is_none() {
                self.failure = Some(format!("{what}: law {} ran no cases", r.law));
            }
        }
    }

    /// A deliberately broken instance must be caught with a witness.
    fn caught(&mut self, what: &str, reports: &[LawReport]) {
        let caught = reports.iter().any(|r| !r.pass && !r.violations.is_empty());
        self.fact(&format!("{what}: no violation found"), caught);
    }
}

fn pair_elems(terms: &[Term]) -> Vec<(Term, Var)> {
    terms.iter().enumerate().map(|(i, t)| (t.clone(), Var(i as u32 % 4))).collect()
}

fn list_elems(terms: &[Term]) -> Vec<Vec<Term>> {
    let n = terms.len();
    let mut out = vec![Vec::new()];
    out.extend(terms.iter().enumerate().map(|(i, t)| vec![t.clone(), terms[(i * 7 + 3) % n].clone()]));
    out
}

fn option_elems(terms: &[Term]) -> Vec<Option<Term>> {
    let mut out = vec![None];
    out.extend(terms.iter().cloned().map(Some));
    out
}

fn renset_laws(g: &mut Gate) {
    let terms = small_terms(5);
    let t = Terms::default();
    g.pass("terms, exhaustive", &check_renset_laws(&t, &exhaustive(terms.clone())));
    g.pass("terms, random", &check_renset_laws(&t, &random(RANDOM_CASES)));
    g.pass("variables, exhaustive", &check_renset_laws(&Vars::default(), &exhaustive(law_vars())));
    g.pass("variables, random", &check_renset_laws(&Vars::default(), &random(RANDOM_CASES)));
    let lists = ListOf::new(t.clone());
    g.pass("lists, exhaustive", &check_renset_laws(&lists, &exhaustive(list_elems(&terms))));
    g.pass("lists, random", &check_renset_laws(&lists, &random(RANDOM_CASES)));
    let pairs = PairOf::new(t.clone(), Vars::default());
    g.pass("pairs, exhaustive", &check_renset_laws(&pairs, &exhaustive(pair_elems(&terms))));
    g.pass("pairs, random", &check_renset_laws(&pairs, &random(RANDOM_CASES)));
    let options = OptionOf::new(t);
    g.pass("options, exhaustive", &check_renset_laws(&options, &exhaustive(option_elems(&terms))));
    g.pass("options, random", &check_renset_laws(&options, &random(RANDOM_CASES)));
    g.caught("capturing renaming", &check_renset_laws(&NaiveTerms::default(), &random(RANDOM_CASES)));
}

fn freshness(g: &mut Gate) {
    let terms = small_terms(5);
    let t = Terms::default();
    g.pass("terms, exhaustive", &[check_prop3_equivalence(&t, &exhaustive(terms.clone()))]);
    g.pass("terms, exhaustive", &check_prop4(&t, &exhaustive(terms.clone())));
    g.pass("terms, random", &[check_prop3_equivalence(&t, &random(RANDOM_CASES))]);
    g.pass("terms, random", &check_prop4(&t, &random(RANDOM_CASES)));
    let v = Vars::default();
    g.pass("variables", &[check_prop3_equivalence(&v, &exhaustive(law_vars()))]);
    g.pass("variables", &check_prop4(&v, &exhaustive(law_vars())));
    g.pass("variables, random", &[check_prop3_equivalence(&v, &random(RANDOM_CASES))]);
    g.pass("variables, random", &check_prop4(&v, &random(RANDOM_CASES)));
    let lists = ListOf::new(t.clone());
    g.pass("lists", &[check_prop3_equivalence(&lists, &exhaustive(list_elems(&terms)))]);
    g.pass("lists", &check_prop4(&lists, &exhaustive(list_elems(&terms))));
    g.pass("lists, random", &[check_prop3_equivalence(&lists, &random(RANDOM_CASES))]);
    g.pass("lists, random", &check_prop4(&lists, &random(RANDOM_CASES)));
    let pairs = PairOf::new(t.clone(), v);
    g.pass("pairs", &[check_prop3_equivalence(&pairs, &exhaustive(pair_elems(&terms)))]);
    g.pass("pairs", &check_prop4(&pairs, &exhaustive(pair_elems(&terms))));
    g.pass("pairs, random", &[check_prop3_equivalence(&pairs, &random(RANDOM_CASES))]);
    g.pass("pairs, random", &check_prop4(&pairs, &random(RANDOM_CASES)));
    let options = OptionOf::new(t.clone());
    g.pass("options", &[check_prop3_equivalence(&options, &exhaustive(option_elems(&terms)))]);
    g.pass("options", &check_prop4(&options, &exhaustive(option_elems(&terms))));
    g.pass("options, random", &[check_prop3_equivalence(&options, &random(RANDOM_CASES))]);
    g.pass("options, random", &check_prop4(&options, &random(RANDOM_CASES)));
    let mut mismatch = None;
    for term in small_terms(6) {
        for x in law_vars() {
            let fv_based = !term.free_vars().contains(x);
            if derived_fresh(&t, x, &term) != fv_based && mismatch.is_none() {
                mismatch = Some(format!("{term}, {x}"));
            }
        }
    }
    g.fact(&format!("derived freshness differs from free variables at {mismatch:?}"), mismatch.is_none());
}

fn swapping(g: &mut Gate) {
    let t = Terms::default();
    let mut mismatch = None;
    let mut cases = 0;
    for term in small_terms(6) {
        for x1 in law_vars() {
            for x2 in law_vars() {
                cases += 1;
                let derived = derived_swap(&t, &term, x1, x2);
                if !derived.alpha_eq(&term.swap(x1, x2)) && mismatch.is_none() {
                    mismatch = Some(format!("{term}, {x1}, {x2}: {derived}"));
                }
            }
        }
    }
    g.fact(&format!("derived swap differs from term swap at {mismatch:?}"), mismatch.is_none());
    g.fact("derived swap compared on too few cases", cases >= 4962 * 16);
    let pivot = check_pivot_independence(&t, &random(PIVOT_SAMPLES));
    g.eq("pivot samples", pivot.trials, PIVOT_SAMPLES as u64);
    g.pass("pivot independence", &[pivot]);
    let derived = derive_nominal(t.clone());
    g.pass("derived swap axioms, exhaustive", &check_nominal_laws(&derived, &exhaustive(small_terms(5))));
    g.pass("derived swap axioms, random", &check_nominal_laws(&derived, &random(MEDIUM_CASES)));
    g.pass("term swap axioms, random", &check_nominal_laws(&t, &random(MEDIUM_CASES)));
    g.pass("renaming and swapping freshness", &[check_prop6_freshness(&t, &exhaustive(small_terms(5)))]);
    g.pass("renaming and swapping freshness", &[check_prop6_freshness(&t, &random(RANDOM_CASES))]);
    g.pass(
        "renaming morphisms commute with swapping",
        &check_morphism_preservation(&t, &CfvSpec, &cfv_profile, &random(MEDIUM_CASES)),
    );
    g.caught("binder-blind swapping", &check_nominal_laws(&BinderBlindSwap::default(), &random(MEDIUM_CASES)));
}

fn ce_laws(g: &mut Gate) {
    let none = VarSet::new();
    let t = Terms::default();
    g.pass("terms, exhaustive", &check_ce_laws(&t, &none, &exhaustive(small_terms(5))));
    g.pass("terms, random", &check_ce_laws(&t, &none, &random(RANDOM_CASES)));
    let spec = interp_ce_spec(FixtureDomain::default());
    g.fact(&format!("only {} probe environments", spec.envs().len()), spec.envs().len() >= MIN_PROBE_ENVS);
    g.pass("interpretations", &check_ce_laws(&spec, &none, &random(INTERP_CASES)));
    g.caught("binder-dropping abstraction", &check_ce_laws(&LmDropsBinder::default(), &none, &random(MEDIUM_CASES)));
}

fn clauses_for<S: CeRenset>(g: &mut Gate, what: &str, spec: &S, avoid: &VarSet, trials: usize) {
    let terms = Terms::new(8, 3);
    g.pass(&format!("{what}, random"), &check_recursor_clauses(spec, avoid, &terms, &random(trials)));
    // binder and renaming variables must include some outside `avoid`
    let mut vars = law_vars();
    let mut taken: VarSet = avoid.union(&vars.iter().copied().collect());
    for _ in 0..2 {
        let v = taken.min_excluded();
        taken.insert(v);
        vars.push(v);
    }
    let sampling = Sampling::Exhaustive { elems: small_terms(ALPHA_EXHAUSTIVE_SIZE), vars };
    g.pass(&format!("{what}, exhaustive"), &check_recursor_clauses(spec, avoid, &terms, &sampling));
}

fn recursor(g: &mut Gate) {
    let none = VarSet::new();
    clauses_for(g, "terms", &Terms::default(), &none, MEDIUM_CASES);
    clauses_for(g, "length", &LengthSpec, &none, MEDIUM_CASES);
    clauses_for(g, "abstraction count", &ClamSpec, &none, MEDIUM_CASES);
    clauses_for(g, "free occurrences", &CfvSpec, &none, MEDIUM_CASES);
    let subst = SubstSpec { s: p("x1 (\\x0. x0 x2)"), x: Var(0) };
    clauses_for(g, "substitution", &subst, &subst.avoid(), MEDIUM_CASES);
    let rho = FinTermEnv::identity().with(Var(0), p("x1 x2")).with(Var(1), p("\\x0. x0 x3"));
    let psubst = PsubstSpec { rho };
    clauses_for(g, "parallel substitution", &psubst, &psubst.avoid(), MEDIUM_CASES);
    let fixture = interp_ce_spec(FixtureDomain::default());
    clauses_for(g, "fixture interpretation", &fixture, &none, INTERP_CASES);
    clauses_for(g, "sum interpretation", &interp_ce_spec(NatSum), &none, INTERP_CASES);
    clauses_for(g, "conjunction interpretation", &interp_ce_spec(BoolAnd), &none, INTERP_CASES);
    let nbe = interp_ce_spec(NbeDomain::new(1 << 40));
    clauses_for(g, "normalisation interpretation", &nbe, &none, INTERP_CASES);
    g.fact("normalisation interpretation ran out of fuel", !nbe.dom.exhausted());
}

fn cross_checks(g: &mut Gate) {
    for name in CROSS_CHECK_FUNCTIONS {
        match cross_check(name, 6, &alphabet(3), SEED, CROSS_CHECK_RANDOM) {
            Ok(r) => {
                g.fact(&format!("{name}: only {} cases", r.trials), r.trials as usize >= 4962 + CROSS_CHECK_RANDOM);
                g.pass(name, &[r]);
            }
            Err(e) => g.fact(&format!("{name}: {e}"), false),
        }
    }
    let (x, y) = (Var(0), Var(1));
    let s = p("x2 (\\x3. x3)");
    g.fact("(Vr x)[[s/x]] = s", Term::var(x).subst(&s, x).alpha_eq(&s));
    g.fact("(Vr y)[[s/x]] = Vr y", Term::var(y).subst(&s, x).alpha_eq(&Term::var(y)));
    g.eq("length (Vr x)", length_of(&Term::var(x)), 1);
    g.eq("length (Ap t1 t2)", length_of(&p("x0 (\\x1. x1)")), 3);
    g.eq("length (Lm x t)", length_of(&p("\\x0. x0 x1")), 3);
    g.eq("clam (Vr x)", clam(&Term::var(x)), 0);
    g.eq("clam (Ap t1 t2)", clam(&p("(\\x0. x0) (\\x1. \\x2. x1)")), 3);
    g.eq("cfv (Vr x) x", cfv(&Term::var(x), x), 1);
    g.eq("cfv (Vr y) x", cfv(&Term::var(y), x), 0);
    g.eq("cfv (Lm x t) x", cfv(&p("\\x0. x0 x0"), x), 0);
    g.eq("cfv (Ap t1 t2) x", cfv(&p("x0 (x0 x1) (\\x1. x0)"), x), 3);
    let t = p("x0 x1 (x1 x2)");
    let z = Var(2);
    g.eq("cfv (t[z/y]) x, x not in {y, z}", cfv(&t.rename(z, y), x), cfv(&t, x));
    g.eq("cfv (t[z/y]) z, z != y", cfv(&t.rename(z, y), z), cfv(&t, z) + cfv(&t, y));
    g.eq("cfv (t[z/y]) y, y != z", cfv(&t.rename(z, y), y), 0);
    g.eq("cfv (t[y/y]) y", cfv(&t.rename(y, y), y), cfv(&t, y));
    g.eq("cbv of \\x. \\y. x y x", cbv(&p("\\x0. \\x1. x0 x1 x0")), 3);
    g.eq("cbv ignores free occurrences", cbv(&p("x0 (\\x1. x1 x2)")), 1);
    g.eq("canEta (\\x. s x), x not free in s", can_eta(&p("\\x0. x1 x2 x0")), true);
    g.eq("canEta (\\x. s x), x free in s", can_eta(&p("\\x0. x0 x0")), false);
    g.eq("canEta of a non-abstraction", can_eta(&p("x0 x1")), false);
    let renamed = p("\\x0. x0 x1").rename(Var(0), Var(1));
    g.fact("(Lm x (Ap x y))[x/y] = Lm x' (Ap x' x)", renamed.alpha_eq(&p("\\x5. x5 x0")));
}

fn semantics(g: &mut Gate) {
    let spec: InterpSpec<FixtureDomain> = interp_ce_spec(FixtureDomain::default());
    let dom = spec.dom.clone();
    let (x, y) = (Var(0), Var(1));
    let self_app = Term::lam(x, Term::app(Term::var(x), Term::var(x)));
    let applies_y = Term::lam(x, Term::app(Term::var(x), Term::var(y)));
    for xi in spec.envs() {
        let d2 = dom.clone();
        let want = dom.lm(Rc::new(move |d: &u64| d2.ap(d, d)));
        g.eq("sem (\\x. x x)", sem(&spec, &self_app, xi), want);
        let (d2, at_y) = (dom.clone(), xi.get(y));
        let want = dom.lm(Rc::new(move |d: &u64| d2.ap(d, &at_y)));
        g.eq("sem (\\x. x y)", sem(&spec, &applies_y, xi), want);
    }
    g.fact("too few environments", spec.envs().len() >= MIN_PROBE_ENVS);
    g.pass("sem clauses, random", &check_sem_clauses(&spec, &random(INTERP_CASES)));
    g.pass("sem clauses, exhaustive", &check_sem_clauses(&spec, &exhaustive(small_terms(4))));
    let contrast = fcb_contrast_report(&spec, SEED, 200);
    g.eq("contrast report count", contrast.len(), 2);
    g.pass("renaming freshness of a binder", &contrast[..1]);
    g.caught("swapping freshness of a binder", &contrast[1..]);
}

fn church(n: usize) -> String {
    let mut body = "x".to_string();
    for _ in 0..n {
        body = format!("f ({body})");
    }
    format!("(\\f. \\x. {body})")
}

fn nbe(g: &mut Gate) {
    let check = |g: &mut Gate, what: &str, input: &str, want: &str| {
        let mut names = Names::new();
        let t = parse_term_with(input, &mut names).expect("parses");
        let w = parse_term_with(want, &mut names).expect("parses");
        match normalize(&t, 10_000) {
            Ok(n) => {
                g.fact(&format!("{what}: {n}"), n.alpha_eq(&w));
                let oracle = beta_normalize_oracle(&t, 10_000);
                g.fact(&format!("{what}: oracle gives {oracle:?}"), oracle.is_some_and(|o| o.alpha_eq(&n)));
            }
            Err(e) => g.fact(&format!("{what}: {e}"), false),
        }
    };
    check(g, "(\\x. x) y", "(\\x. x) y", "y");
    check(g, "\\x. (\\y. y) x", "\\x. (\\y. y) x", "\\x. x");
    let plus = "(\\m. \\n. \\f. \\x. m f (n f x))";
    let times = "(\\m. \\n. \\f. m (n f))";
    check(g, "2 + 2", &format!("{plus} {} {}", church(2), church(2)), &church(4));
    check(g, "2 * 3", &format!("{times} {} {}", church(2), church(3)), &church(6));
    check(g, "capture under reify", "(\\f. \\y. f y) y", "\\z. y z");
    let omega = p("(\\x. x x) (\\x. x x)");
    for fuel in OMEGA_FUELS {
        g.eq("omega", normalize(&omega, fuel), Err(NbeError::FuelExhausted(fuel)));
    }
    g.eq("zero fuel", normalize(&p("x0"), 0), Err(NbeError::InvalidFuel));
}

fn frce(g: &mut Gate) {
    let none = VarSet::new();
    let terms = Terms::new(8, 3);
    let avoid: VarSet = [Var(0)].into_iter().collect();
    g.pass("redex counter laws", &check_frce_laws(&RedexCounter, &terms, &avoid, &random(MEDIUM_CASES)));
    g.pass("redex counter clauses", &check_frce_clauses(&RedexCounter, &avoid, &terms, &random(MEDIUM_CASES)));
    g.pass("redex counter clauses", &check_frce_clauses(&RedexCounter, &none, &terms, &exhaustive(small_terms(5))));
    let ignore = IgnoreTerms(LengthSpec);
    g.pass("length ignoring terms", &check_frce_laws(&ignore, &terms, &none, &random(MEDIUM_CASES)));
    g.pass("length ignoring terms", &check_frce_clauses(&ignore, &none, &terms, &exhaustive(small_terms(5))));
    let ignore_cfv = IgnoreTerms(CfvSpec);
    let ignore_terms = IgnoreTerms(Terms::default());
    let mut mismatch = None;
    for t in small_terms(6) {
        let checks = [
            ("redexes", prim_recurse(&RedexCounter, &none, &t) == count_redexes(&t)),
            ("redexes avoiding x0", prim_recurse(&RedexCounter, &avoid, &t) == count_redexes(&t)),
            ("length", prim_recurse(&ignore, &avoid, &t) == recurse(&LengthSpec, &avoid, &t)),
            ("free occurrences", prim_recurse(&ignore_cfv, &avoid, &t) == recurse(&CfvSpec, &avoid, &t)),
            ("terms", prim_recurse(&ignore_terms, &avoid, &t).alpha_eq(&recurse(&Terms::default(), &avoid, &t))),
        ];
        for (what, ok) in checks {
            if !ok && mismatch.is_none() {
                mismatch = Some(format!("{what} at {t}"));
            }
        }
    }
    g.fact(&format!("primitive recursion disagrees: {mismatch:?}"), mismatch.is_none());
}

fn permutations(g: &mut Gate) {
    let t = Terms::default();
    let sampling = PermSampling::Random { seed: SEED, trials: PERM_SAMPLES, nvars: PERM_VARS };
    let group = check_group_laws(SEED, PERM_SAMPLES, PERM_VARS);
    g.fact("group laws ran too few cases", group.iter().all(|r| r.trials == PERM_SAMPLES as u64));
    g.pass("group laws", &group);
    g.pass("action laws", &check_action_laws(&t, &sampling));
    g.pass("decomposition independence", &[check_decomposition_independence(&t, &sampling)]);
    g.pass("round trips", &check_roundtrips(&t, &t, &sampling));
    let small = PermSampling::Exhaustive { elems: small_terms(3), perms: all_perms(3) };
    g.pass("action laws, all permutations of three", &check_action_laws(&t, &small));
    g.pass("round trips, all permutations of three", &check_roundtrips(&t, &t, &small));
    g.pass("swapping view matches term swap", &[check_g_matches_term_swap(&small_terms(5), &law_vars())]);
}

fn substitutive(g: &mut Gate) {
    let spec = TermSubst::default();
    g.pass("laws, random", &check_subst_laws(&spec, &random(MEDIUM_CASES)));
    g.pass("laws, exhaustive", &check_subst_laws(&spec, &exhaustive(small_terms(4))));
    g.pass("recursor commutes", &[check_subst_recurse_commutes(&spec, &Terms::new(6, 3), &random(MEDIUM_CASES))]);
    let literal = check_subst_literal_readings(&spec, &random(MEDIUM_CASES));
    g.eq("verbatim readings fail on terms", literal.iter().filter(|r| !r.pass).count(), literal.len());
    let induced = InducedRenset(spec.clone());
    let mut mismatch = None;
    for term in small_terms(5) {
        if !subst_recurse(&spec, &term).alpha_eq(&term) && mismatch.is_none() {
            mismatch = Some(format!("recursion is not the identity at {term}"));
        }
        for new in law_vars() {
            for old in law_vars() {
                if !induced.rename(&term, new, old).alpha_eq(&term.rename(new, old)) && mismatch.is_none() {
                    mismatch = Some(format!("induced renaming differs at {term}, {new}/{old}"));
                }
            }
        }
    }
    g.fact(&format!("{mismatch:?}"), mismatch.is_none());
}

fn nominal_terms(g: &mut Gate) {
    let t = Terms::default();
    g.pass("constructor swap laws, exhaustive", &check_ce_nominal_laws_terms(&t, &exhaustive(small_terms(5))));
    g.pass("constructor swap laws, random", &check_ce_nominal_laws_terms(&t, &random(RANDOM_CASES)));
    let support = check_lemma9_terms(&t, SEED, MEDIUM_CASES);
    g.eq("support check cases", support.trials, MEDIUM_CASES as u64);
    g.pass("support via equivariance", &[support]);
}

fn cli_run(args: &[&str]) -> bindkit::Outcome {
    dispatch(std::iter::once("bindkit").chain(args.iter().copied()))
}

fn spawn(args: &[&str], seed_env: Option<&str>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bindkit"));
    cmd.args(args).env_remove("BINDKIT_SEED");
    if let Some(s) = seed_env {
        cmd.env("BINDKIT_SEED", s);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli(g: &mut Gate) {
    // round trips, canonical spelling and user names
    let mut names = Names::new();
    for n in ["a", "b", "c"] {
        names.intern(n).expect("plain names intern");
    }
    let mut mismatch = None;
    for t in small_terms(5) {
        for text in [t.to_string(), print_term(&t, &names)] {
            let printed = cli_run(&["print", &text]);
            let parsed = cli_run(&["parse", printed.stdout.trim_end()]);
            let mut session = Names::new();
            let back = parse_term_with(printed.stdout.trim_end(), &mut session);
            let orig = parse_term_with(&text, &mut session);
            let ok = printed.code == 0
                && parsed.code == 0
                && matches!((&back, &orig), (Ok(b), Ok(o)) if b.alpha_eq(o))
                && cli_run(&["alphaeq", &text, printed.stdout.trim_end()]).stdout == "true\n";
            if !ok && mismatch.is_none() {
                mismatch = Some(text);
            }
        }
    }
    g.fact(&format!("round trip fails at {mismatch:?}"), mismatch.is_none());

    let (code, out) = spawn(&["alphaeq", "\\x. x", "\\y. y"], None);
    g.eq("alphaeq", (code, String::from_utf8_lossy(&out).into_owned()), (0, "true\n".to_string()));
    let (code, out) = spawn(&["rename", "\\x. x y", "--new", "x", "--old", "y"], None);
    let renamed = String::from_utf8_lossy(&out).trim_end().to_string();
    g.eq("rename exit", code, 0);
    g.eq("rename result", cli_run(&["alphaeq", &renamed, "\\z. z x"]).stdout, "true\n".to_string());

    let (code, help) = spawn(&["--help"], None);
    let help = String::from_utf8_lossy(&help).into_owned();
    g.eq("help exit", code, 0);
    for sub in [
        "parse",
        "print",
        "fv",
        "fresh",
        "rename",
        "swap",
        "subst",
        "psubst",
        "alphaeq",
        "debruijn",
        "normalize",
        "length",
        "clam",
        "cfv",
        "cbv",
        "caneta",
        "perm",
        "laws",
        "crosscheck",
    ] {
        g.fact(&format!("help lacks {sub}"), help.lines().any(|l| l.trim_start().starts_with(sub)));
    }
    let (code, help) = spawn(&["laws", "--help"], None);
    let help = String::from_utf8_lossy(&help).into_owned();
    g.eq("laws help exit", code, 0);
    for suite in ["renset", "nominal", "ce", "frce", "subst", "prop3", "prop4", "fcb", "roundtrip"] {
        g.fact(&format!("laws help lacks {suite}"), help.contains(suite));
    }

    let exits: [(&[&str], i32); 9] = [
        (&["parse", "\\x. x"], 0),
        (&["parse", "\\x. (x"], 1),
        (&["normalize", "(\\x. x x) (\\x. x x)", "--fuel", "100"], 1),
        (&["perm", "x0", "--perm", "{\"0\":1}"], 1),
        (&["frobnicate"], 2),
        (&["rename", "x"], 2),
        (&["laws", "renset", "--target", "nosuch"], 2),
        (&["laws", "renset", "--target", "naive", "--trials", "500"], 3),
        (&["laws", "nominal", "--target", "binderblind", "--trials", "500"], 3),
    ];
    for (args, want) in exits {
        let (code, _) = spawn(args, None);
        g.eq(&format!("exit code of {args:?}"), code, want);
    }

    let args = ["laws", "renset", "--target", "term", "--seed", "7", "--trials", CLI_JSON_TRIALS, "--json"];
    let (c1, first) = spawn(&args, None);
    let (c2, second) = spawn(&args, Some("99"));
    let (c3, from_env) =
        spawn(&["laws", "renset", "--target", "term", "--trials", CLI_JSON_TRIALS, "--json"], Some("7"));
    let (_, other) =
        spawn(&["laws", "renset", "--target", "term", "--seed", "8", "--trials", CLI_JSON_TRIALS, "--json"], None);
    g.eq("json suite exit codes", (c1, c2, c3), (0, 0, 0));
    g.fact("json output differs between identical runs", first == second);
    g.fact("BINDKIT_SEED is not the default seed", first == from_env);
    g.fact("seed does not reach the output", first != other);
    let parsed: Result<Vec<LawReport>, _> = serde_json::from_slice(&first);
    g.fact("json output is not a report list", parsed.is_ok_and(|r| r.len() == 4 && all_pass(&r)));
}

type Check = fn(&mut Gate);

fn main() {
    let criteria: [(&str, Check); 13] = [
        ("renaming laws for terms, variables and containers", renset_laws),
        ("freshness formulations agree", freshness),
        ("swapping derived from renaming", swapping),
        ("constructor-enriched laws", ce_laws),
        ("recursor clauses for every shipped spec", recursor),
        ("recursor-defined functions match direct definitions", cross_checks),
        ("semantic interpretation examples", semantics),
        ("normalisation by evaluation", nbe),
        ("recursion with subterm access", frce),
        ("permutation actions", permutations),
        ("substitutive sets", substitutive),
        ("swapping on terms and support", nominal_terms),
        ("command line", cli),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let mut g = Gate::new();
        check(&mut g);
        let secs = t0.elapsed().as_secs_f64();
        match &g.failure {
            None => println!("PASS {:>2} {title} ({} checks, {secs:.1}s)", i + 1, g.checks),
            Some(why) => {
                failed += 1;
                println!("FAIL {:>2} {title} ({} checks, {secs:.1}s): {why}", i + 1, g.checks);
            }
        }
    }
    let total = start.elapsed();
    let in_budget = total <= TIME_BUDGET;
    println!(
        "{} time budget: {:.1}s of {}s",
        if in_budget { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        TIME_BUDGET.as_secs()
    );
    if failed > 0 || !in_budget {
        std::process::exit(1);
    }
}
