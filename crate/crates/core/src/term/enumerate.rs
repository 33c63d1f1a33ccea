//! Exhaustive and random term generation for the law suites.

use rand::Rng;

use super::{PreTerm, Term};
use crate::var::Var;

/// Every pre-term with at most `max_size` nodes over `vars` (binders
/// included), ordered by size, then constructor (`Var < App < Lam`), then
/// children left to right.
pub fn enum_terms(max_size: usize, vars: &[Var]) -> Vec<Term> {
    assert!(!vars.is_empty(), "enum_terms needs a nonempty alphabet");
    let mut by_size: Vec<Vec<PreTerm>> = vec![Vec::new()];
    for n in 1..=max_size {
        let mut level = Vec::new();
        if n == 1 {
            level.extend(vars.iter().map(|&v| PreTerm::Var(v)));
        }
        if n >= 3 {
            for left in 1..=n - 2 {
                let right = n - 1 - left;
                for f in &by_size[left] {
                    for a in &by_size[right] {
                        level.push(PreTerm::App(Box::new(f.clone()), Box::new(a.clone())));
                    }
                }
            }
        }
        if n >= 2 {
            for &x in vars {
                for b in &by_size[n - 1] {
                    level.push(PreTerm::Lam(x, Box::new(b.clone())));
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().map(Term::from_pre).collect()
}

/// A random term with exactly `size` nodes.
pub fn random_term_of_size<R: Rng + ?Sized>(rng: &mut R, size: usize, vars: &[Var]) -> Term {
    fn go<R: Rng + ?Sized>(rng: &mut R, size: usize, vars: &[Var]) -> PreTerm {
        let pick = |rng: &mut R| vars[rng.gen_range(0..vars.len())];
        match size {
            0 | 1 => PreTerm::Var(pick(rng)),
            2 => PreTerm::Lam(pick(rng), Box::new(go(rng, 1, vars))),
            n => {
                if rng.gen_bool(0.5) {
                    let left = rng.gen_range(1..=n - 2);
                    let f = go(rng, left, vars);
                    let a = go(rng, n - 1 - left, vars);
                    PreTerm::App(Box::new(f), Box::new(a))
                } else {
                    PreTerm::Lam(pick(rng), Box::new(go(rng, n - 1, vars)))
                }
            }
        }
    }
    assert!(!vars.is_empty(), "random_term needs a nonempty alphabet");
    Term::from_pre(go(rng, size, vars))
}

/// A random term with between 1 and `max_size` nodes.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, max_size: usize, vars: &[Var]) -> Term {
    let size = rng.gen_range(1..=max_size.max(1));
    random_term_of_size(rng, size, vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::print_term;
    use crate::var::Names;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn count_oracle(n: usize, v: usize) -> usize {
        // T(1) = v, T(n) = v*T(n-1) + sum_{i+j=n-1} T(i)T(j)
        let mut t = vec![0usize; n + 1];
        for k in 1..=n {
            t[k] = if k == 1 { v } else { v * t[k - 1] };
            if k >= 3 {
                for i in 1..=k - 2 {
                    t[k] += t[i] * t[k - 1 - i];
                }
            }
        }
        t[1..].iter().sum()
    }

    #[test]
    fn small_enumerations() {
        let x = [Var(0)];
        let names = Names::new();
        let show = |ts: Vec<Term>| ts.iter().map(|t| print_term(t, &names)).collect::<Vec<_>>();
        assert_eq!(show(enum_terms(1, &x)), ["x0"]);
        assert_eq!(show(enum_terms(2, &x)), ["x0", "\\x0. x0"]);
        let three = show(enum_terms(3, &x));
        assert!(three.contains(&"x0 x0".to_string()));
        assert!(three.contains(&"\\x0. \\x0. x0".to_string()));
    }

    #[test]
    fn counts_match_grammar_oracle() {
        for v in 1..=4 {
            let vars: Vec<Var> = (0..v as u32).map(Var).collect();
            for n in 1..=6 {
                assert_eq!(enum_terms(n, &vars).len(), count_oracle(n, v), "n={n} v={v}");
            }
        }
    }

    #[test]
    fn random_terms_respect_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vars = [Var(0), Var(1)];
        for _ in 0..200 {
            let t = random_term(&mut rng, 25, &vars);
            assert!(t.size() <= 25);
            assert!(t.all_vars().is_subset(&vars.iter().copied().collect()));
        }
        assert_eq!(random_term_of_size(&mut rng, 7, &vars).size(), 7);
    }
}
