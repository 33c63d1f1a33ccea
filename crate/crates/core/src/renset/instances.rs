use rand::Rng;

use super::Renset;
use crate::laws::{Carrier, LawRng};
use crate::term::{random_term, PreTerm, Term};
use crate::var::{Var, VarSet};

/// Variables with `x[y/z] = if x = z then y else x`.
#[derive(Clone, Debug)]
pub struct Vars {
    /// Samples are drawn from the first `pool` indices.
    pub pool: u32,
}

impl Default for Vars {
    fn default() -> Self {
        Vars { pool: 6 }
    }
}

impl Carrier for Vars {
    type Elem = Var;

    fn equal(&self, a: &Var, b: &Var) -> bool {
        a == b
    }

    fn support_bound(&self, a: &Var) -> VarSet {
        VarSet::singleton(*a)
    }

    fn sample(&self, rng: &mut LawRng) -> Var {
        Var(rng.gen_range(0..self.pool))
    }

    fn render(&self, a: &Var) -> String {
        a.to_string()
    }
}

impl Renset for Vars {
    fn rename(&self, a: &Var, new: Var, old: Var) -> Var {
        if *a == old {
            new
        } else {
            *a
        }
    }
}

/// Terms with capture-avoiding renaming and alpha-equivalence.
#[derive(Clone, Debug)]
pub struct Terms {
    pub max_size: usize,
    pub alphabet: Vec<Var>,
}

impl Default for Terms {
    fn default() -> Self {
        Terms { max_size: 10, alphabet: (0..4).map(Var).collect() }
    }
}

impl Terms {
    pub fn new(max_size: usize, alphabet_size: u32) -> Self {
        Terms { max_size, alphabet: (0..alphabet_size).map(Var).collect() }
    }
}

impl Carrier for Terms {
    type Elem = Term;

    fn equal(&self, a: &Term, b: &Term) -> bool {
        a.alpha_eq(b)
    }

    fn support_bound(&self, a: &Term) -> VarSet {
        a.free_vars()
    }

    fn sample(&self, rng: &mut LawRng) -> Term {
        random_term(rng, self.max_size, &self.alphabet)
    }

    fn render(&self, a: &Term) -> String {
        a.to_string()
    }

    fn mentioned(&self, a: &Term) -> VarSet {
        a.all_vars()
    }
}

impl Renset for Terms {
    fn rename(&self, a: &Term, new: Var, old: Var) -> Term {
        a.rename(new, old)
    }
}

/// Pre-terms with textual renaming that stops at rebinding but ignores
/// capture. Not a renset; the checkers are expected to say so.
#[derive(Clone, Debug, Default)]
pub struct NaiveTerms {
    pub terms: Terms,
}

fn naive_rename(p: &PreTerm, new: Var, old: Var) -> PreTerm {
    match p {
        PreTerm::Var(v) => PreTerm::Var(if *v == old { new } else { *v }),
        PreTerm::App(f, a) => PreTerm::App(Box::new(naive_rename(f, new, old)), Box::new(naive_rename(a, new, old))),
        PreTerm::Lam(x, _) if *x == old => p.clone(),
        PreTerm::Lam(x, b) => PreTerm::Lam(*x, Box::new(naive_rename(b, new, old))),
    }
}

impl Carrier for NaiveTerms {
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

impl Renset for NaiveTerms {
    fn rename(&self, a: &Term, new: Var, old: Var) -> Term {
        Term::from_pre(naive_rename(a.repr(), new, old))
    }
}

/// Lists, renamed pointwise.
#[derive(Clone, Debug)]
pub struct ListOf<R> {
    pub inner: R,
    pub max_len: usize,
}

impl<R> ListOf<R> {
    pub fn new(inner: R) -> Self {
        ListOf { inner, max_len: 3 }
    }
}

impl<R: Carrier> Carrier for ListOf<R> {
    type Elem = Vec<R::Elem>;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.inner.equal(x, y))
    }

    fn support_bound(&self, a: &Self::Elem) -> VarSet {
        a.iter().fold(VarSet::new(), |acc, e| acc.union(&self.inner.support_bound(e)))
    }

    fn sample(&self, rng: &mut LawRng) -> Self::Elem {
        let n = rng.gen_range(0..=self.max_len);
        (0..n).map(|_| self.inner.sample(rng)).collect()
    }

    fn render(&self, a: &Self::Elem) -> String {
        let items: Vec<String> = a.iter().map(|e| self.inner.render(e)).collect();
        format!("[{}]", items.join(", "))
    }

    fn mentioned(&self, a: &Self::Elem) -> VarSet {
        a.iter().fold(VarSet::new(), |acc, e| acc.union(&self.inner.mentioned(e)))
    }
}

impl<R: Renset> Renset for ListOf<R> {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem {
        a.iter().map(|e| self.inner.rename(e, new, old)).collect()
    }
}

/// Pairs, renamed componentwise.
#[derive(Clone, Debug)]
pub struct PairOf<A, B> {
    pub left: A,
    pub right: B,
}

impl<A, B> PairOf<A, B> {
    pub fn new(left: A, right: B) -> Self {
        PairOf { left, right }
    }
}

impl<A: Carrier, B: Carrier> Carrier for PairOf<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.equal(&a.0, &b.0) && self.right.equal(&a.1, &b.1)
    }

    fn support_bound(&self, a: &Self::Elem) -> VarSet {
        self.left.support_bound(&a.0).union(&self.right.support_bound(&a.1))
    }

    fn sample(&self, rng: &mut LawRng) -> Self::Elem {
        (self.left.sample(rng), self.right.sample(rng))
    }

    fn render(&self, a: &Self::Elem) -> String {
        format!("({}, {})", self.left.render(&a.0), self.right.render(&a.1))
    }

    fn mentioned(&self, a: &Self::Elem) -> VarSet {
        self.left.mentioned(&a.0).union(&self.right.mentioned(&a.1))
    }
}

impl<A: Renset, B: Renset> Renset for PairOf<A, B> {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem {
        (self.left.rename(&a.0, new, old), self.right.rename(&a.1, new, old))
    }
}

/// Optional values; `None` has every variable fresh.
#[derive(Clone, Debug)]
pub struct OptionOf<R> {
    pub inner: R,
}

impl<R> OptionOf<R> {
    pub fn new(inner: R) -> Self {
        OptionOf { inner }
    }
}

impl<R: Carrier> Carrier for OptionOf<R> {
    type Elem = Option<R::Elem>;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match (a, b) {
            (None, None) => true,
            (Some(x), Some(y)) => self.inner.equal(x, y),
            _ => false,
        }
    }

    fn support_bound(&self, a: &Self::Elem) -> VarSet {
        a.as_ref().map(|e| self.inner.support_bound(e)).unwrap_or_default()
    }

    fn sample(&self, rng: &mut LawRng) -> Self::Elem {
        if rng.gen_bool(0.25) {
            None
        } else {
            Some(self.inner.sample(rng))
        }
    }

    fn render(&self, a: &Self::Elem) -> String {
        match a {
            None => "None".into(),
            Some(e) => format!("Some({})", self.inner.render(e)),
        }
    }

    fn mentioned(&self, a: &Self::Elem) -> VarSet {
        a.as_ref().map(|e| self.inner.mentioned(e)).unwrap_or_default()
    }
}

impl<R: Renset> Renset for OptionOf<R> {
    fn rename(&self, a: &Self::Elem, new: Var, old: Var) -> Self::Elem {
        a.as_ref().map(|e| self.inner.rename(e, new, old))
    }
}
