//! Finite permutations of variables, their action on terms, and the
//! translation between swapping-based and permutation-based structures.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::laws::{rng_from_seed, Carrier, LawReport, LawRng, Violation};
use crate::renset::{swap_fresh, Nominal, Terms};
use crate::term::{PreTerm, Term};
use crate::var::{Var, VarSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("invalid permutation JSON: {0}")]
    Json(String),
}

/// A bijection on variables that moves finitely many of them. Fixed points
/// are never stored, so structural equality is equality of permutations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinPerm {
    forward: BTreeMap<Var, Var>,
}

impl FinPerm {
    /// Builds a permutation from `(from, to)` pairs; unlisted variables are
    /// fixed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Var)>) -> Result<FinPerm, PermError> {
        let mut forward = BTreeMap::new();
        for (a, b) in pairs {
            if let Some(prev) = forward.insert(a, b) {
                if prev != b {
                    return Err(PermError::NotBijection(format!("{a} is mapped to both {prev} and {b}")));
                }
            }
        }
        let domain: VarSet = forward.keys().copied().collect();
        let image: VarSet = forward.values().copied().collect();
        if image.len() != forward.len() {
            return Err(PermError::NotBijection("two variables share an image".into()));
        }
        if image != domain {
            let stray = image.difference(&domain).iter().next().or_else(|| domain.difference(&image).iter().next());
            return Err(PermError::NotBijection(format!(
                "image and domain differ at {}",
                stray.map(|v| v.to_string()).unwrap_or_default()
            )));
        }
        forward.retain(|a, b| a != b);
        Ok(FinPerm { forward })
    }

    pub fn apply(&self, v: Var) -> Var {
        self.forward.get(&v).copied().unwrap_or(v)
    }

    /// `{ x | σ(x) ≠ x }`
    pub fn moved(&self) -> VarSet {
        self.forward.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, Var)> + '_ {
        self.forward.iter().map(|(&a, &b)| (a, b))
    }

    pub fn to_json(&self) -> String {
        let m: BTreeMap<u32, u32> = self.iter().map(|(a, b)| (a.0, b.0)).collect();
        serde_json::to_string(&m).expect("integer map serializes")
    }

    pub fn from_json(text: &str) -> Result<FinPerm, PermError> {
        let m: BTreeMap<u32, u32> = serde_json::from_str(text).map_err(|e| PermError::Json(e.to_string()))?;
        FinPerm::from_pairs(m.into_iter().map(|(a, b)| (Var(a), Var(b))))
    }
}

impl fmt::Display for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn perm_identity() -> FinPerm {
    FinPerm::default()
}

pub fn perm_transposition(x: Var, y: Var) -> FinPerm {
    FinPerm::from_pairs([(x, y), (y, x)]).expect("a transposition is a bijection")
}

/// `compose(σ, τ)(x) = σ(τ(x))`: τ is applied first.
pub fn perm_compose(sigma: &FinPerm, tau: &FinPerm) -> FinPerm {
    let dom = sigma.moved().union(&tau.moved());
    FinPerm::from_pairs(dom.iter().map(|x| (x, sigma.apply(tau.apply(x))))).expect("composition of bijections")
}

pub fn perm_invert(sigma: &FinPerm) -> FinPerm {
    FinPerm::from_pairs(sigma.iter().map(|(a, b)| (b, a))).expect("inverse of a bijection")
}

/// Cycles of `σ`, each starting at its smallest element, sorted by that
/// element. A cycle `[a1, …, ak]` has `σ(ai) = ai+1` and `σ(ak) = a1`.
pub fn cycles(sigma: &FinPerm) -> Vec<Vec<Var>> {
    let mut seen = VarSet::new();
    let mut out = Vec::new();
    for start in sigma.moved().iter() {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut next = sigma.apply(start);
        while next != start {
            seen.insert(next);
            cycle.push(next);
            next = sigma.apply(next);
        }
        out.push(cycle);
    }
    out
}

/// Composing the result right to left (last pair applied first) gives `σ`.
/// Each cycle `[a1, …, ak]` contributes `(a1,ak), (a1,ak-1), …, (a1,a2)`.
pub fn decompose_transpositions(sigma: &FinPerm) -> Vec<(Var, Var)> {
    let mut out = Vec::new();
    for c in cycles(sigma) {
        out.extend(c[1..].iter().rev().map(|&a| (c[0], a)));
    }
    out
}

/// A second decomposition of `σ`: each cycle contributes
/// `(a1,a2), (a2,a3), …, (ak-1,ak)`. Same right-to-left reading.
pub fn decompose_adjacent(sigma: &FinPerm) -> Vec<(Var, Var)> {
    let mut out = Vec::new();
    for c in cycles(sigma) {
        out.extend(c.windows(2).map(|w| (w[0], w[1])));
    }
    out
}

/// Composes transpositions right to left.
pub fn recompose(pairs: &[(Var, Var)]) -> FinPerm {
    pairs.iter().fold(perm_identity(), |acc, &(x, y)| perm_compose(&acc, &perm_transposition(x, y)))
}

/// `t[σ]` through successive swaps, last pair first.
pub fn perm_action_term(t: &Term, sigma: &FinPerm) -> Term {
    decompose_transpositions(sigma).iter().rev().fold(t.clone(), |acc, &(x, y)| acc.swap(x, y))
}

/// Renames every occurrence, bound or free, by `σ` at once.
pub fn perm_map_term(t: &Term, sigma: &FinPerm) -> Term {
    fn go(p: &PreTerm, s: &FinPerm) -> PreTerm {
        match p {
            PreTerm::Var(v) => PreTerm::Var(s.apply(*v)),
            PreTerm::App(f, a) => PreTerm::App(Box::new(go(f, s)), Box::new(go(a, s))),
            PreTerm::Lam(x, b) => PreTerm::Lam(s.apply(*x), Box::new(go(b, s))),
        }
    }
    Term::from_pre(go(t.repr(), sigma))
}

/// A carrier with a permutation action. The action is on the left:
/// `act(act(a, σ), τ) = act(a, compose(τ, σ))`.
pub trait PermNominal: Carrier {
    fn act(&self, a: &Self::Elem, sigma: &FinPerm) -> Self::Elem;
}

impl<P: PermNominal + ?Sized> PermNominal for &P {
    fn act(&self, a: &Self::Elem, sigma: &FinPerm) -> Self::Elem {
        (**self).act(a, sigma)
    }
}

impl PermNominal for Terms {
    fn act(&self, a: &Term, sigma: &FinPerm) -> Term {
        perm_action_term(a, sigma)
    }
}

macro_rules! delegate_carrier {
    ($view:ident, $bound:ident) => {
        impl<C: $bound> Carrier for $view<C> {
            type Elem = C::Elem;
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
    };
}

/// A permutation structure seen through transpositions only.
#[derive(Clone, Debug)]
pub struct SwapView<P>(pub P);

/// A swapping structure extended to all finite permutations.
#[derive(Clone, Debug)]
pub struct PermView<N>(pub N);

delegate_carrier!(SwapView, PermNominal);
delegate_carrier!(PermView, Nominal);

impl<P: PermNominal> Nominal for SwapView<P> {
    fn swap(&self, a: &Self::Elem, x1: Var, x2: Var) -> Self::Elem {
        self.0.act(a, &perm_transposition(x1, x2))
    }
}

impl<N: Nominal> PermNominal for PermView<N> {
    fn act(&self, a: &Self::Elem, sigma: &FinPerm) -> Self::Elem {
        act_via(&self.0, a, &decompose_transpositions(sigma))
    }
}

/// Restricts a permutation action to transpositions.
pub fn to_swap_action<P: PermNominal>(p: P) -> SwapView<P> {
    SwapView(p)
}

/// Extends a swapping action along the canonical decomposition.
pub fn to_perm_action<N: Nominal>(n: N) -> PermView<N> {
    PermView(n)
}

/// Applies a list of transpositions, last pair first.
pub fn act_via<N: Nominal>(n: &N, a: &N::Elem, pairs: &[(Var, Var)]) -> N::Elem {
    pairs.iter().rev().fold(a.clone(), |acc, &(x, y)| n.swap(&acc, x, y))
}

/// A uniformly random permutation of the first `nvars` variables.
pub fn random_perm(rng: &mut LawRng, nvars: u32) -> FinPerm {
    let mut image: Vec<u32> = (0..nvars).collect();
    image.shuffle(rng);
    FinPerm::from_pairs((0..nvars).map(|i| (Var(i), Var(image[i as usize])))).expect("shuffle is a bijection")
}

/// Every permutation of the first `nvars` variables.
pub fn all_perms(nvars: u32) -> Vec<FinPerm> {
    fn go(prefix: &mut Vec<u32>, rest: &mut Vec<u32>, out: &mut Vec<FinPerm>) {
        if rest.is_empty() {
            out.push(
                FinPerm::from_pairs(prefix.iter().enumerate().map(|(i, &j)| (Var(i as u32), Var(j))))
                    .expect("arrangement is a bijection"),
            );
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..nvars).collect(), &mut out);
    out
}

/// Where the (element, permutation, permutation) cases come from.
#[derive(Clone, Debug)]
pub enum PermSampling<E> {
    Random { seed: u64, trials: usize, nvars: u32 },
    Exhaustive { elems: Vec<E>, perms: Vec<FinPerm> },
}

impl<E: Clone> PermSampling<E> {
    fn seed(&self) -> u64 {
        match self {
            PermSampling::Random { seed, .. } => *seed,
            PermSampling::Exhaustive { .. } => 0,
        }
    }

    fn cases<C: Carrier<Elem = E>>(&self, c: &C, salt: &str) -> Vec<(E, FinPerm, FinPerm)> {
        match self {
            PermSampling::Random { seed, trials, nvars } => {
                let mut rng = rng_from_seed(seed ^ crate::laws::name_salt(salt));
                (0..*trials)
                    .map(|_| {
                        let a = c.sample(&mut rng);
                        let s = random_perm(&mut rng, *nvars);
                        let t = random_perm(&mut rng, *nvars);
                        (a, s, t)
                    })
                    .collect()
            }
            PermSampling::Exhaustive { elems, perms } => {
                let mut out = Vec::new();
                for a in elems {
                    for s in perms {
                        for t in perms {
                            out.push((a.clone(), s.clone(), t.clone()));
                        }
                    }
                }
                out
            }
        }
    }
}

fn run_cases<E: Clone>(
    name: &str,
    cases: &[(E, FinPerm, FinPerm)],
    seed: u64,
    render: &dyn Fn(&E) -> String,
    check: &mut dyn FnMut(&E, &FinPerm, &FinPerm) -> Option<(String, String)>,
) -> LawReport {
    let mut report = LawReport::new(name, seed);
    for (a, s, t) in cases {
        let v =
            check(a, s, t).map(|(lhs, rhs)| Violation { inputs: format!("a={}, σ={s}, τ={t}", render(a)), lhs, rhs });
        report.record(v);
    }
    report
}

/// Associativity, neutrality of the identity and two-sided inverses,
/// compared as maps on every variable moved by an operand.
pub fn check_group_laws(seed: u64, trials: usize, nvars: u32) -> Vec<LawReport> {
    let mut rng = rng_from_seed(seed ^ crate::laws::name_salt("group laws"));
    let triples: Vec<[FinPerm; 3]> = (0..trials)
        .map(|_| [random_perm(&mut rng, nvars), random_perm(&mut rng, nvars), random_perm(&mut rng, nvars)])
        .collect();
    let agree = |p: &FinPerm, q: &FinPerm, on: &VarSet| on.iter().all(|x| p.apply(x) == q.apply(x));
    let on = |ps: &[&FinPerm]| ps.iter().fold(VarSet::new(), |acc, p| acc.union(&p.moved()));
    let mut reports = Vec::new();

    let mut r = LawReport::new("compose is associative", seed);
    for [a, b, c] in &triples {
        let lhs = perm_compose(&perm_compose(a, b), c);
        let rhs = perm_compose(a, &perm_compose(b, c));
        let ok = agree(&lhs, &rhs, &on(&[a, b, c]));
        r.record((!ok).then(|| Violation {
            inputs: format!("{a}, {b}, {c}"),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }));
    }
    reports.push(r);

    let mut r = LawReport::new("identity is neutral", seed);
    let id = perm_identity();
    for [a, _, _] in &triples {
        let left = perm_compose(&id, a);
        let right = perm_compose(a, &id);
        let ok = agree(&left, a, &on(&[a])) && agree(&right, a, &on(&[a]));
        r.record((!ok).then(|| Violation { inputs: a.to_string(), lhs: left.to_string(), rhs: right.to_string() }));
    }
    reports.push(r);

    let mut r = LawReport::new("invert is a two-sided inverse", seed);
    for [a, _, _] in &triples {
        let inv = perm_invert(a);
        let left = perm_compose(&inv, a);
        let right = perm_compose(a, &inv);
        let ok = agree(&left, &id, &on(&[a])) && agree(&right, &id, &on(&[a]));
        r.record((!ok).then(|| Violation { inputs: a.to_string(), lhs: left.to_string(), rhs: right.to_string() }));
    }
    reports.push(r);

    let mut r = LawReport::new("decomposition recomposes", seed);
    for [a, _, _] in &triples {
        let back = recompose(&decompose_transpositions(a));
        let alt = recompose(&decompose_adjacent(a));
        let ok = back == *a && alt == *a;
        r.record((!ok).then(|| Violation { inputs: a.to_string(), lhs: back.to_string(), rhs: alt.to_string() }));
    }
    reports.push(r);

    reports
}

/// `a[id] = a` and `act(act(a, σ), τ) = act(a, compose(τ, σ))`.
pub fn check_action_laws<P: PermNominal>(p: &P, sampling: &PermSampling<P::Elem>) -> Vec<LawReport> {
    let render = |a: &P::Elem| p.render(a);
    let id = perm_identity();
    let ident = run_cases(
        "perm action Identity",
        &sampling.cases(p, "perm action Identity"),
        sampling.seed(),
        &render,
        &mut |a, _, _| {
            let r = p.act(a, &id);
            (!p.equal(&r, a)).then(|| (p.render(&r), p.render(a)))
        },
    );
    let comp = run_cases(
        "perm action Compositionality",
        &sampling.cases(p, "perm action Compositionality"),
        sampling.seed(),
        &render,
        &mut |a, s, t| {
            let lhs = p.act(&p.act(a, s), t);
            let rhs = p.act(a, &perm_compose(t, s));
            (!p.equal(&lhs, &rhs)).then(|| (p.render(&lhs), p.render(&rhs)))
        },
    );
    vec![ident, comp]
}

/// The extension of a swapping action does not depend on which
/// transposition decomposition is used.
pub fn check_decomposition_independence<N: Nominal>(n: &N, sampling: &PermSampling<N::Elem>) -> LawReport {
    let name = "action independent of decomposition";
    run_cases(name, &sampling.cases(n, name), sampling.seed(), &|a| n.render(a), &mut |a, s, t| {
        let canonical = act_via(n, a, &decompose_transpositions(s));
        let adjacent = act_via(n, a, &decompose_adjacent(s));
        // a redundant representative: σ = σ ∘ τ ∘ τ⁻¹
        let mut padded = decompose_transpositions(s);
        padded.extend(decompose_transpositions(t));
        padded.extend(decompose_transpositions(&perm_invert(t)));
        let padded = act_via(n, a, &padded);
        let ok = n.equal(&canonical, &adjacent) && n.equal(&canonical, &padded);
        (!ok).then(|| (n.render(&canonical), format!("{} / {}", n.render(&adjacent), n.render(&padded))))
    })
}

/// Both roundtrips between the two kinds of structure agree with the
/// originals, and swap-freshness survives the roundtrip.
pub fn check_roundtrips<P, N>(p: &P, n: &N, sampling: &PermSampling<P::Elem>) -> Vec<LawReport>
where
    P: PermNominal,
    N: Nominal<Elem = P::Elem>,
{
    let hg = to_perm_action(to_swap_action(p));
    let gh = to_swap_action(to_perm_action(n));
    let render = |a: &P::Elem| p.render(a);
    let name = "H(G(p)) acts like p";
    let first = run_cases(name, &sampling.cases(p, name), sampling.seed(), &render, &mut |a, s, _| {
        let lhs = hg.act(a, s);
        let rhs = p.act(a, s);
        (!p.equal(&lhs, &rhs)).then(|| (p.render(&lhs), p.render(&rhs)))
    });
    let name = "G(H(n)) swaps like n";
    let second = run_cases(name, &sampling.cases(p, name), sampling.seed(), &render, &mut |a, s, t| {
        let mut bad = None;
        for (x, y) in s.iter().chain(t.iter()) {
            let lhs = gh.swap(a, x, y);
            let rhs = n.swap(a, x, y);
            if !n.equal(&lhs, &rhs) {
                bad = Some((format!("swap {x} {y}: {}", n.render(&lhs)), n.render(&rhs)));
                break;
            }
            if swap_fresh(&gh, x, a) != swap_fresh(n, x, a) {
                bad =
                    Some((format!("{x} fresh after roundtrip: {}", swap_fresh(&gh, x, a)), "freshness differs".into()));
                break;
            }
        }
        bad
    });
    vec![first, second]
}

/// `G` applied to the term permutation action swaps exactly like term swap,
/// on every given term and every pair of the given variables.
pub fn check_g_matches_term_swap(terms: &[Term], vars: &[Var]) -> LawReport {
    let g = to_swap_action(Terms::default());
    let mut report = LawReport::new("G(term action) = term swap", 0);
    for t in terms {
        for &x in vars {
            for &y in vars {
                let lhs = g.swap(t, x, y);
                let rhs = t.swap(x, y);
                report.record((lhs != rhs).then(|| Violation {
                    inputs: format!("t={t}, x={x}, y={y}"),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                }));
            }
        }
    }
    report
}
