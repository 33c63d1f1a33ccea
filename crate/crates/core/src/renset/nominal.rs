//! Swapping-based (nominal) structures, in particular the one derived from a
//! renset with finite support.

use rand::Rng;

use super::{derived_fresh, derived_swap, derived_swap_with_pivot, Renset, Terms, Vars};
use crate::laws::{no_premise, run_law, Carrier, LawReport, LawRng, LawShape, Sampling, Verdict};
use crate::term::{PreTerm, Term};
use crate::var::{Var, VarSet};

/// A carrier with a swapping action `a[x1 ∧ x2]`.
pub trait Nominal: Carrier {
    fn swap(&self, a: &Self::Elem, x1: Var, x2: Var) -> Self::Elem;
}

impl<N: Nominal + ?Sized> Nominal for &N {
    fn swap(&self, a: &Self::Elem, x1: Var, x2: Var) -> Self::Elem {
        (**self).swap(a, x1, x2)
    }
}

/// Transposition of two variables, applied to a variable.
pub fn transpose(v: Var, x1: Var, x2: Var) -> Var {
    if v == x1 {
        x2
    } else if v == x2 {
        x1
    } else {
        v
    }
}

/// The nominal structure whose swap is built from renaming.
#[derive(Clone, Debug)]
pub struct DerivedNominal<R>(pub R);

pub fn derive_nominal<R: Renset>(inst: R) -> DerivedNominal<R> {
    DerivedNominal(inst)
}

impl<R: Renset> Carrier for DerivedNominal<R> {
    type Elem = R::Elem;
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

impl<R: Renset> Nominal for DerivedNominal<R> {
    fn swap(&self, a: &Self::Elem, x1: Var, x2: Var) -> Self::Elem {
        derived_swap(&self.0, a, x1, x2)
    }
}

impl Nominal for Terms {
    fn swap(&self, a: &Term, x1: Var, x2: Var) -> Term {
        a.swap(x1, x2)
    }
}

impl Nominal for Vars {
    fn swap(&self, a: &Var, x1: Var, x2: Var) -> Var {
        transpose(*a, x1, x2)
    }
}

/// Swaps variable occurrences but leaves binder names alone, so it can
/// capture. Not a nominal set.
#[derive(Clone, Debug, Default)]
pub struct BinderBlindSwap {
    pub terms: Terms,
}

fn blind_swap(p: &PreTerm, x1: Var, x2: Var) -> PreTerm {
    match p {
        PreTerm::Var(v) => PreTerm::Var(transpose(*v, x1, x2)),
        PreTerm::App(f, a) => PreTerm::App(Box::new(blind_swap(f, x1, x2)), Box::new(blind_swap(a, x1, x2))),
        PreTerm::Lam(x, b) => PreTerm::Lam(*x, Box::new(blind_swap(b, x1, x2))),
    }
}

impl Carrier for BinderBlindSwap {
    type Elem = Term;
    fn equal(&self, a: &Term, b: &Term) -> bool {
        a.alpha_eq(b)
    }
    fn support_bound(&self, a: &Term) -> VarSet {
        a.free_vars()
    }
    fn sample(&self, rng: &mut LawRng) -> Term {
        self.terms.sample(rng)
    }
    fn render(&self, a: &Term) -> String {
        a.to_string()
    }
    fn mentioned(&self, a: &Term) -> VarSet {
        a.all_vars()
    }
}

impl Nominal for BinderBlindSwap {
    fn swap(&self, a: &Term, x1: Var, x2: Var) -> Term {
        Term::from_pre(blind_swap(a.repr(), x1, x2))
    }
}

/// Swap-based freshness, decided with the support bound: `x # a` iff
/// `a[y ∧ x] = a` for the two canonical `y` outside `bound ∪ {x}`. Outside a
/// valid bound the swap is constant, so those witnesses stand for the
/// cofinite set.
pub fn swap_fresh<N: Nominal>(n: &N, x: Var, a: &N::Elem) -> bool {
    let taken = n.support_bound(a).with(x);
    [taken.nth_excluded(0), taken.nth_excluded(1)].iter().all(|&y| n.equal(&n.swap(a, y, x), a))
}

/// Identity, Involution, Compositionality and finite-support consistency.
pub fn check_nominal_laws<N: Nominal>(n: &N, sampling: &Sampling<N::Elem>) -> Vec<LawReport> {
    let show = |a: &N::Elem| n.render(a);
    let none = VarSet::new();
    let mut out = Vec::new();

    out.push(run_law(
        n,
        &LawShape { name: "swap Identity", elem_names: &["a"], var_names: &["x"], premise: &no_premise },
        sampling,
        &none,
        &mut |e, v| {
            let r = n.swap(&e[0], v[0], v[0]);
            Verdict::eq_by(n.equal(&r, &e[0]), || show(&r), || show(&e[0]))
        },
    ));

    out.push(run_law(
        n,
        &LawShape { name: "swap Involution", elem_names: &["a"], var_names: &["x1", "x2"], premise: &no_premise },
        sampling,
        &none,
        &mut |e, v| {
            let r = n.swap(&n.swap(&e[0], v[0], v[1]), v[0], v[1]);
            Verdict::eq_by(n.equal(&r, &e[0]), || show(&r), || show(&e[0]))
        },
    ));

    out.push(run_law(
        n,
        &LawShape {
            name: "swap Compositionality",
            elem_names: &["a"],
            var_names: &["x1", "x2", "y1", "y2"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let (x1, x2, y1, y2) = (v[0], v[1], v[2], v[3]);
            let lhs = n.swap(&n.swap(&e[0], x1, x2), y1, y2);
            let rhs = n.swap(&n.swap(&e[0], y1, y2), transpose(x1, y1, y2), transpose(x2, y1, y2));
            Verdict::eq_by(n.equal(&lhs, &rhs), || show(&lhs), || show(&rhs))
        },
    ));

    out.push(run_law(
        n,
        &LawShape {
            name: "swap outside support is identity",
            elem_names: &["a"],
            var_names: &["x", "y"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let bound = n.support_bound(&e[0]);
            if bound.contains(v[0]) || bound.contains(v[1]) {
                return Verdict::Skip;
            }
            let r = n.swap(&e[0], v[0], v[1]);
            Verdict::eq_by(n.equal(&r, &e[0]), || show(&r), || show(&e[0]))
        },
    ));

    out
}

/// Renaming-based and swap-based freshness coincide on the derived
/// nominal structure.
pub fn check_prop6_freshness<R: Renset>(inst: &R, sampling: &Sampling<R::Elem>) -> LawReport {
    let n = DerivedNominal(inst);
    run_law(
        inst,
        &LawShape {
            name: "renaming freshness = swapping freshness",
            elem_names: &["a"],
            var_names: &["x"],
            premise: &no_premise,
        },
        sampling,
        &VarSet::new(),
        &mut |e, v| {
            let by_rename = derived_fresh(inst, v[0], &e[0]);
            let by_swap = swap_fresh(&n, v[0], &e[0]);
            Verdict::eq_by(by_rename == by_swap, || format!("renaming: {by_rename}"), || format!("swapping: {by_swap}"))
        },
    )
}

/// The derived swap does not depend on which fresh pivot is used.
pub fn check_pivot_independence<R: Renset>(inst: &R, sampling: &Sampling<R::Elem>) -> LawReport {
    run_law(
        inst,
        &LawShape {
            name: "derived swap pivot independence",
            elem_names: &["a"],
            var_names: &["x1", "x2"],
            premise: &no_premise,
        },
        sampling,
        &VarSet::new(),
        &mut |e, v| {
            let (x1, x2) = (v[0], v[1]);
            let taken = inst.support_bound(&e[0]).with(x1).with(x2);
            let y = taken.nth_excluded(0);
            let y2 = taken.nth_excluded(1 + (x1.0 as usize + 2 * x2.0 as usize) % 5);
            let a = derived_swap_with_pivot(inst, &e[0], x1, x2, y);
            let b = derived_swap_with_pivot(inst, &e[0], x1, x2, y2);
            Verdict::eq_by(
                inst.equal(&a, &b),
                || format!("pivot {y}: {}", inst.render(&a)),
                || format!("pivot {y2}: {}", inst.render(&b)),
            )
        },
    )
}

/// A map between rensets that commutes with renaming also commutes with the
/// derived swaps. Returns both commutation reports.
pub fn check_morphism_preservation<A: Renset, B: Renset>(
    src: &A,
    dst: &B,
    f: &dyn Fn(&A::Elem) -> B::Elem,
    sampling: &Sampling<A::Elem>,
) -> Vec<LawReport> {
    let none = VarSet::new();
    let rename = run_law(
        src,
        &LawShape {
            name: "map commutes with renaming",
            elem_names: &["a"],
            var_names: &["y", "x"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let lhs = f(&src.rename(&e[0], v[0], v[1]));
            let rhs = dst.rename(&f(&e[0]), v[0], v[1]);
            Verdict::eq_by(dst.equal(&lhs, &rhs), || dst.render(&lhs), || dst.render(&rhs))
        },
    );
    let swap = run_law(
        src,
        &LawShape {
            name: "map commutes with derived swap",
            elem_names: &["a"],
            var_names: &["x1", "x2"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let lhs = f(&derived_swap(src, &e[0], v[0], v[1]));
            let rhs = derived_swap(dst, &f(&e[0]), v[0], v[1]);
            Verdict::eq_by(dst.equal(&lhs, &rhs), || dst.render(&lhs), || dst.render(&rhs))
        },
    );
    vec![rename, swap]
}

/// Constructor laws of the term structure under swapping: Vr, Ap and Lm
/// commute with swapping, and a binder is swap-fresh for its abstraction.
pub fn check_ce_nominal_laws_terms(terms: &Terms, sampling: &Sampling<Term>) -> Vec<LawReport> {
    let none = VarSet::new();
    let show = |t: &Term| t.to_string();
    let mut out = Vec::new();

    out.push(run_law(
        terms,
        &LawShape {
            name: "Vr commutes with swapping",
            elem_names: &[],
            var_names: &["x", "y", "z"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |_, v| {
            let lhs = Term::var(v[0]).swap(v[1], v[2]);
            let rhs = Term::var(transpose(v[0], v[1], v[2]));
            Verdict::eq_by(lhs == rhs, || show(&lhs), || show(&rhs))
        },
    ));

    out.push(run_law(
        terms,
        &LawShape {
            name: "Ap commutes with swapping",
            elem_names: &["a1", "a2"],
            var_names: &["y", "z"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let lhs = Term::app(e[0].clone(), e[1].clone()).swap(v[0], v[1]);
            let rhs = Term::app(e[0].swap(v[0], v[1]), e[1].swap(v[0], v[1]));
            Verdict::eq_by(lhs == rhs, || show(&lhs), || show(&rhs))
        },
    ));

    out.push(run_law(
        terms,
        &LawShape {
            name: "Lm commutes with swapping",
            elem_names: &["a"],
            var_names: &["x", "y", "z"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let lhs = Term::lam(x, e[0].clone()).swap(y, z);
            let rhs = Term::lam(transpose(x, y, z), e[0].swap(y, z));
            Verdict::eq_by(lhs == rhs, || show(&lhs), || show(&rhs))
        },
    ));

    out.push(run_law(
        terms,
        &LawShape {
            name: "binder is swap-fresh for its abstraction",
            elem_names: &["a"],
            var_names: &["x"],
            premise: &no_premise,
        },
        sampling,
        &none,
        &mut |e, v| {
            let l = Term::lam(v[0], e[0].clone());
            Verdict::eq_by(swap_fresh(terms, v[0], &l), || format!("{} not fresh", v[0]), || show(&l))
        },
    ));

    out
}

/// Sample functions on terms whose support is known.
#[derive(Clone, Debug)]
pub enum TermFn {
    /// `t ↦ t c`
    ApplyTo(Var),
    /// `t ↦ λc. t`
    AbstractOver(Var),
    /// `t ↦ t[new/old]`
    RenameTo(Var, Var),
}

impl TermFn {
    pub fn apply(&self, t: &Term) -> Term {
        match *self {
            TermFn::ApplyTo(c) => Term::app(t.clone(), Term::var(c)),
            TermFn::AbstractOver(c) => Term::lam(c, t.clone()),
            TermFn::RenameTo(new, old) => t.rename(new, old),
        }
    }

    /// The smallest set supporting the function.
    pub fn support(&self) -> VarSet {
        match *self {
            TermFn::ApplyTo(c) | TermFn::AbstractOver(c) => VarSet::singleton(c),
            TermFn::RenameTo(new, old) if new == old => VarSet::new(),
            TermFn::RenameTo(new, old) => [new, old].into_iter().collect(),
        }
    }

    fn sample(rng: &mut LawRng) -> TermFn {
        let v = |rng: &mut LawRng| Var(rng.gen_range(0..5));
        match rng.gen_range(0..3) {
            0 => TermFn::ApplyTo(v(rng)),
            1 => TermFn::AbstractOver(v(rng)),
            _ => TermFn::RenameTo(v(rng), v(rng)),
        }
    }
}

/// For sampled functions `f` and finite sets `X`: "f is supported by X"
/// (the conjugated function `a ↦ f(a[x∧y])[x∧y]` equals `f` for all
/// `x, y ∉ X`) holds iff `f` commutes with every swap outside `X`, and both
/// agree with the known support of `f`.
pub fn check_lemma9_terms(terms: &Terms, seed: u64, trials: usize) -> LawReport {
    let mut report = LawReport::new("supported by X iff equivariant outside X", seed);
    let mut rng = crate::laws::rng_from_seed(seed);
    for _ in 0..trials {
        let f = TermFn::sample(&mut rng);
        let x_set: VarSet = (0..5).map(Var).filter(|_| rng.gen_bool(0.4)).collect();
        let mut probes: Vec<Term> = f.support().iter().map(Term::var).collect();
        probes.extend((0..3).map(|_| terms.sample(&mut rng)));
        let mut pool_src = f.support().union(&x_set);
        for t in &probes {
            pool_src.extend(t.all_vars().iter());
        }
        let outside = pool_src.nth_excluded(0);
        let pool: Vec<Var> = pool_src.with(outside).iter().filter(|v| !x_set.contains(*v)).collect();

        let mut supported = true;
        let mut equivariant = true;
        for (i, &x) in pool.iter().enumerate() {
            for &y in &pool[i..] {
                for a in &probes {
                    let fa = f.apply(a);
                    let conj = f.apply(&a.swap(x, y)).swap(x, y);
                    supported &= conj == fa;
                    equivariant &= f.apply(&a.swap(x, y)) == fa.swap(x, y);
                }
            }
        }
        let truth = f.support().is_subset(&x_set);
        let ok = supported == equivariant && supported == truth;
        report.record((!ok).then(|| crate::laws::Violation {
            inputs: format!("f={f:?}, X={x_set}"),
            lhs: format!("supported: {supported}"),
            rhs: format!("equivariant: {equivariant}; known support inside X: {truth}"),
        }));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::all_pass;
    use crate::renset::ListOf;

    #[test]
    fn derived_and_direct_term_swaps_are_nominal() {
        let s = Sampling::random(11, 300);
        assert!(all_pass(&check_nominal_laws(&derive_nominal(Terms::default()), &s)));
        assert!(all_pass(&check_nominal_laws(&Terms::default(), &s)));
    }

    #[test]
    fn binder_blind_swap_is_caught() {
        let reports = check_nominal_laws(&BinderBlindSwap::default(), &Sampling::random(11, 500));
        assert!(!all_pass(&reports));
    }

    #[test]
    fn derived_var_swap_is_transposition() {
        let n = derive_nominal(Vars::default());
        for a in 0..3 {
            for x in 0..3 {
                for y in 0..3 {
                    let (a, x, y) = (Var(a), Var(x), Var(y));
                    assert_eq!(n.swap(&a, x, y), transpose(a, x, y));
                }
            }
        }
    }

    #[test]
    fn freshness_agreement_and_pivots() {
        let s = Sampling::random(5, 300);
        assert!(check_prop6_freshness(&Terms::default(), &s).pass);
        assert!(check_pivot_independence(&Terms::default(), &s).pass);
    }

    #[test]
    fn singleton_list_map_preserves_both_actions() {
        let list = ListOf::new(Terms::default());
        let f = |t: &Term| vec![t.clone()];
        let r = check_morphism_preservation(&Terms::default(), &list, &f, &Sampling::random(5, 300));
        assert!(all_pass(&r));
    }

    #[test]
    fn term_constructor_swap_laws() {
        let s = Sampling::random(6, 300);
        assert!(all_pass(&check_ce_nominal_laws_terms(&Terms::default(), &s)));
        assert!(check_lemma9_terms(&Terms::default(), 6, 200).pass);
    }
}
