//! The `bindkit` command line, as a function from arguments to an outcome.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 law violation.

use std::path::PathBuf;

use bindkit_core::laws::all_pass;
use bindkit_core::perm::{
    check_action_laws, check_group_laws, check_roundtrips, perm_action_term, FinPerm, PermSampling,
};
use bindkit_core::recursion::{
    check_ce_laws, check_frce_clauses, check_frce_laws, check_recursor_clauses, check_subst_laws,
    check_subst_literal_readings, check_subst_recurse_commutes, CeRenset, FrceRenset, IgnoreTerms, LmDropsBinder,
    RedexCounter, TermSubst,
};
use bindkit_core::renset::{
    check_ce_nominal_laws_terms, check_lemma9_terms, check_nominal_laws, check_pivot_independence,
    check_prop3_equivalence, check_prop4, check_prop6_freshness, check_renset_laws, derive_nominal, BinderBlindSwap,
    ListOf, NaiveTerms, OptionOf, PairOf, Terms, Vars,
};
use bindkit_core::semantics::{
    can_eta, cbv, cfv, check_sem_clauses, clam, cross_check, fcb_contrast_report, interp_ce_spec, length_of, normalize,
    CfvSpec, ClamSpec, FixtureDomain, LengthSpec, NbeError, CROSS_CHECK_FUNCTIONS,
};
use bindkit_core::term::{parse_term_with, to_debruijn, DbTerm};
use bindkit_core::{fresh_var, print_term, FinTermEnv, LawReport, Names, Sampling, Term, Var, VarSet};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Outcome {
        let mut stdout = text.into();
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl Into<String>) -> Outcome {
        let line = message.into().replace('\n', " ");
        Outcome { code, stdout: String::new(), stderr: format!("bindkit: {line}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bindkit", version, about = "Nameful lambda-terms modulo alpha, built on renaming")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term and print it with canonical `xN` variable names.
    Parse { term: String },
    /// Parse a term and print it back with its own names.
    Print { term: String },
    /// Free variables, in index order.
    Fv { term: String },
    /// The least variable not free in the term.
    Fresh { term: String },
    /// Capture-avoiding renaming t[new/old].
    Rename {
        term: String,
        #[arg(long)]
        new: String,
        #[arg(long)]
        old: String,
    },
    /// Swap two variable names everywhere, binders included.
    Swap {
        term: String,
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
    },
    /// Capture-avoiding substitution t[s/x].
    Subst {
        term: String,
        #[arg(long = "with")]
        with: String,
        #[arg(long)]
        var: String,
    },
    /// Simultaneous substitution; each `--map` is `x=s`.
    Psubst {
        term: String,
        #[arg(long = "map")]
        map: Vec<String>,
    },
    /// Alpha-equivalence of two terms.
    Alphaeq { left: String, right: String },
    /// Nameless form; bound variables become indices.
    Debruijn { term: String },
    /// Beta-normal form by evaluation, with a step budget.
    Normalize {
        term: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Height of the syntax tree.
    Length { term: String },
    /// Number of abstractions.
    Clam { term: String },
    /// Free occurrences of a variable.
    Cfv {
        term: String,
        #[arg(long)]
        var: String,
    },
    /// Number of bound-variable occurrences.
    Cbv { term: String },
    /// Whether the term is an eta-redex.
    Caneta { term: String },
    /// Apply a finite permutation given as JSON, e.g. `{"0":1,"1":0}`.
    Perm {
        term: String,
        #[arg(long)]
        perm: String,
    },
    /// Run a law suite and report every law.
    Laws {
        suite: Suite,
        /// Instance to check; the suite's first target by default.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, env = "BINDKIT_SEED", default_value_t = 0)]
        seed: u64,
        /// Random cases per law.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// One line of JSON: an array of law reports.
        #[arg(long)]
        json: bool,
        /// Semantic fixture domain parameters (`key = value` lines).
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Compare a recursor-defined function with its direct definition.
    Crosscheck {
        /// One of length, clam, cfv, subst, psubst, cbv, caneta.
        #[arg(value_name = "FN")]
        function: String,
        /// Terms up to this size are checked exhaustively.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Size of the variable alphabet for the exhaustive pass.
        #[arg(long, default_value_t = 3)]
        vars: u32,
        #[arg(long, env = "BINDKIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// renaming laws; targets: term var list pair option naive
    Renset,
    /// swapping laws; targets: term derived binderblind
    Nominal,
    /// constructor-enriched laws and recursor clauses; targets: term interp length clam cfv broken
    Ce,
    /// laws and clauses with subterm access; targets: redex ignore
    Frce,
    /// substitutive-set laws; targets: term literal
    Subst,
    /// three freshness formulations agree; targets: term var list
    Prop3,
    /// freshness consequences; targets: term var list
    Prop4,
    /// binder freshness by renaming and by swapping; targets: fixture onepoint
    Fcb,
    /// permutation actions and swapping views; targets: term
    Roundtrip,
}

impl Suite {
    fn targets(self) -> &'static [&'static str] {
        match self {
            Suite::Renset => &["term", "var", "list", "pair", "option", "naive"],
            Suite::Nominal => &["term", "derived", "binderblind"],
            Suite::Ce => &["term", "interp", "length", "clam", "cfv", "broken"],
            Suite::Frce => &["redex", "ignore"],
            Suite::Subst => &["term", "literal"],
            Suite::Prop3 | Suite::Prop4 => &["term", "var", "list"],
            Suite::Fcb => &["fixture", "onepoint"],
            Suite::Roundtrip => &["term"],
        }
    }
}

/// Reads terms and variable names against one interning session.
struct Session {
    names: Names,
}

impl Session {
    /// Every `xN` spelling in `texts` is reserved before anything is
    /// interned, so interned names never take those indices.
    fn new(texts: &[&str]) -> Session {
        let mut names = Names::new();
        for t in texts {
            names.reserve_from(t);
        }
        Session { names }
    }

    fn term(&mut self, text: &str) -> Result<Term, Outcome> {
        parse_term_with(text, &mut self.names).map_err(|e| Outcome::fail(EXIT_DOMAIN, format!("parse error: {e}")))
    }

    fn var(&mut self, text: &str) -> Result<Var, Outcome> {
        let t = self.term(text)?;
        match t.repr() {
            bindkit_core::term::PreTerm::Var(v) => Ok(*v),
            _ => Err(Outcome::fail(EXIT_DOMAIN, format!("expected a variable, got {text:?}"))),
        }
    }

    fn show(&self, t: &Term) -> String {
        print_term(t, &self.names)
    }
}

fn show_debruijn(d: &DbTerm, names: &Names) -> String {
    match d {
        DbTerm::Bound(k) => k.to_string(),
        DbTerm::Free(v) => names.name(*v),
        DbTerm::Lam(b) => format!("\\ {}", show_debruijn(b, names)),
        DbTerm::App(f, a) => {
            let f_text = match **f {
                DbTerm::Lam(_) => format!("({})", show_debruijn(f, names)),
                _ => show_debruijn(f, names),
            };
            let a_text = match **a {
                DbTerm::Bound(_) | DbTerm::Free(_) => show_debruijn(a, names),
                _ => format!("({})", show_debruijn(a, names)),
            };
            format!("{f_text} {a_text}")
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    Outcome::ok(text)
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match run(cli.command) {
        Ok(o) | Err(o) => o,
    }
}

fn run(cmd: Command) -> Result<Outcome, Outcome> {
    let single = |text: &str, f: &dyn Fn(&Session, &Term) -> String| -> Result<Outcome, Outcome> {
        let mut s = Session::new(&[text]);
        let t = s.term(text)?;
        Ok(Outcome::ok(f(&s, &t)))
    };
    match cmd {
        Command::Parse { term } => single(&term, &|_, t| t.to_string()),
        Command::Print { term } => single(&term, &|s, t| s.show(t)),
        Command::Fv { term } => {
            single(&term, &|s, t| t.free_vars().iter().map(|v| s.names.name(v)).collect::<Vec<_>>().join(" "))
        }
        Command::Fresh { term } => single(&term, &|s, t| s.names.name(fresh_var(&t.free_vars()))),
        Command::Rename { term, new, old } => {
            let mut s = Session::new(&[&term, &new, &old]);
            let (t, n, o) = (s.term(&term)?, s.var(&new)?, s.var(&old)?);
            Ok(Outcome::ok(s.show(&t.rename(n, o))))
        }
        Command::Swap { term, x1, x2 } => {
            let mut s = Session::new(&[&term, &x1, &x2]);
            let (t, a, b) = (s.term(&term)?, s.var(&x1)?, s.var(&x2)?);
            Ok(Outcome::ok(s.show(&t.swap(a, b))))
        }
        Command::Subst { term, with, var } => {
            let mut s = Session::new(&[&term, &with, &var]);
            let (t, u, x) = (s.term(&term)?, s.term(&with)?, s.var(&var)?);
            Ok(Outcome::ok(s.show(&t.subst(&u, x))))
        }
        Command::Psubst { term, map } => {
            let mut texts: Vec<&str> = vec![&term];
            texts.extend(map.iter().map(String::as_str));
            let mut s = Session::new(&texts);
            let t = s.term(&term)?;
            let mut rho = FinTermEnv::identity();
            for entry in &map {
                let (x, u) = entry
                    .split_once('=')
                    .ok_or_else(|| Outcome::fail(EXIT_USAGE, format!("--map expects x=term, got {entry:?}")))?;
                let x = s.var(x.trim())?;
                if rho.support().contains(x) {
                    return Err(Outcome::fail(EXIT_DOMAIN, format!("variable mapped twice in {entry:?}")));
                }
                let u = s.term(u)?;
                rho.insert(x, u);
            }
            Ok(Outcome::ok(s.show(&t.psubst(&rho))))
        }
        Command::Alphaeq { left, right } => {
            let mut s = Session::new(&[&left, &right]);
            let (l, r) = (s.term(&left)?, s.term(&right)?);
            Ok(Outcome::ok(l.alpha_eq(&r).to_string()))
        }
        Command::Debruijn { term } => single(&term, &|s, t| show_debruijn(&to_debruijn(t), &s.names)),
        Command::Normalize { term, fuel } => {
            let mut s = Session::new(&[&term]);
            let t = s.term(&term)?;
            match normalize(&t, fuel) {
                Ok(n) => Ok(Outcome::ok(s.show(&n))),
                Err(e @ (NbeError::InvalidFuel | NbeError::FuelExhausted(_))) => {
                    Err(Outcome::fail(EXIT_DOMAIN, e.to_string()))
                }
            }
        }
        Command::Length { term } => single(&term, &|_, t| length_of(t).to_string()),
        Command::Clam { term } => single(&term, &|_, t| clam(t).to_string()),
        Command::Cbv { term } => single(&term, &|_, t| cbv(t).to_string()),
        Command::Caneta { term } => single(&term, &|_, t| can_eta(t).to_string()),
        Command::Cfv { term, var } => {
            let mut s = Session::new(&[&term, &var]);
            let (t, x) = (s.term(&term)?, s.var(&var)?);
            Ok(Outcome::ok(cfv(&t, x).to_string()))
        }
        Command::Perm { term, perm } => {
            let mut s = Session::new(&[&term]);
            let t = s.term(&term)?;
            let p = FinPerm::from_json(&perm).map_err(|e| Outcome::fail(EXIT_DOMAIN, e.to_string()))?;
            Ok(Outcome::ok(s.show(&perm_action_term(&t, &p))))
        }
        Command::Laws { suite, target, seed, trials, json, fixtures } => {
            let target = target.unwrap_or_else(|| suite.targets()[0].to_string());
            if !suite.targets().contains(&target.as_str()) {
                return Err(Outcome::fail(
                    EXIT_USAGE,
                    format!("unknown target {target:?}; expected one of {}", suite.targets().join(", ")),
                ));
            }
            let domain = match fixtures {
                None => FixtureDomain::default(),
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Outcome::fail(EXIT_DOMAIN, format!("cannot read {}: {e}", path.display())))?;
                    FixtureDomain::parse(&text).map_err(|e| Outcome::fail(EXIT_DOMAIN, e.to_string()))?
                }
            };
            let reports = run_suite(suite, &target, seed, trials, domain);
            Ok(report_outcome(&reports, json))
        }
        Command::Crosscheck { function, max_size, vars, seed, trials, json } => {
            if !CROSS_CHECK_FUNCTIONS.contains(&function.as_str()) {
                return Err(Outcome::fail(
                    EXIT_USAGE,
                    format!("unknown function {function:?}; expected one of {}", CROSS_CHECK_FUNCTIONS.join(", ")),
                ));
            }
            let alphabet: Vec<Var> = (0..vars).map(Var).collect();
            let report = cross_check(&function, max_size, &alphabet, seed, trials)
                .map_err(|e| Outcome::fail(EXIT_DOMAIN, e.to_string()))?;
            Ok(report_outcome(&[report], json))
        }
    }
}

/// JSON mode prints one array of reports on one line.
fn report_outcome(reports: &[LawReport], json: bool) -> Outcome {
    let stdout = if json {
        let mut s = serde_json::to_string(reports).expect("reports serialize");
        s.push('\n');
        s
    } else {
        reports.iter().map(|r| r.summary() + "\n").collect()
    };
    let code = if all_pass(reports) { EXIT_OK } else { EXIT_VIOLATION };
    Outcome { code, stdout, stderr: String::new() }
}

fn ce_suite<S: CeRenset>(spec: &S, seed: u64, trials: usize) -> Vec<LawReport> {
    let none = VarSet::new();
    let mut out = check_ce_laws(spec, &none, &Sampling::random(seed, trials));
    out.extend(check_recursor_clauses(spec, &none, &Terms::new(8, 3), &Sampling::random(seed, trials)));
    out
}

fn frce_suite<S: FrceRenset>(spec: &S, seed: u64, trials: usize) -> Vec<LawReport> {
    let none = VarSet::new();
    let terms = Terms::new(8, 3);
    let mut out = check_frce_laws(spec, &terms, &none, &Sampling::random(seed, trials));
    out.extend(check_frce_clauses(spec, &none, &terms, &Sampling::random(seed, trials)));
    out
}

fn run_suite(suite: Suite, target: &str, seed: u64, trials: usize, domain: FixtureDomain) -> Vec<LawReport> {
    fn random<E>(seed: u64, trials: usize) -> Sampling<E> {
        Sampling::random(seed, trials)
    }
    let terms = Terms::default();
    match (suite, target) {
        (Suite::Renset, "term") => check_renset_laws(&terms, &random(seed, trials)),
        (Suite::Renset, "var") => check_renset_laws(&Vars::default(), &random(seed, trials)),
        (Suite::Renset, "list") => check_renset_laws(&ListOf::new(terms), &random(seed, trials)),
        (Suite::Renset, "pair") => check_renset_laws(&PairOf::new(terms, Vars::default()), &random(seed, trials)),
        (Suite::Renset, "option") => check_renset_laws(&OptionOf::new(terms), &random(seed, trials)),
        (Suite::Renset, "naive") => check_renset_laws(&NaiveTerms::default(), &random(seed, trials)),
        (Suite::Nominal, "term") => {
            let mut out = check_nominal_laws(&terms, &random(seed, trials));
            out.push(check_prop6_freshness(&terms, &random(seed, trials)));
            out.push(check_pivot_independence(&terms, &random(seed, trials)));
            out.extend(check_ce_nominal_laws_terms(&terms, &random(seed, trials)));
            out.push(check_lemma9_terms(&terms, seed, trials));
            out
        }
        (Suite::Nominal, "derived") => check_nominal_laws(&derive_nominal(terms), &random(seed, trials)),
        (Suite::Nominal, "binderblind") => check_nominal_laws(&BinderBlindSwap::default(), &random(seed, trials)),
        (Suite::Ce, "term") => ce_suite(&terms, seed, trials),
        (Suite::Ce, "interp") => {
            let spec = interp_ce_spec(domain);
            let mut out = ce_suite(&spec, seed, trials);
            out.extend(check_sem_clauses(&spec, &random(seed, trials)));
            out
        }
        (Suite::Ce, "length") => ce_suite(&LengthSpec, seed, trials),
        (Suite::Ce, "clam") => ce_suite(&ClamSpec, seed, trials),
        (Suite::Ce, "cfv") => ce_suite(&CfvSpec, seed, trials),
        (Suite::Ce, "broken") => check_ce_laws(&LmDropsBinder::default(), &VarSet::new(), &random(seed, trials)),
        (Suite::Frce, "redex") => frce_suite(&RedexCounter, seed, trials),
        (Suite::Frce, "ignore") => frce_suite(&IgnoreTerms(LengthSpec), seed, trials),
        (Suite::Subst, "term") => {
            let spec = TermSubst::default();
            let mut out = check_subst_laws(&spec, &random(seed, trials));
            out.push(check_subst_recurse_commutes(&spec, &Terms::new(6, 3), &random(seed, trials)));
            out
        }
        (Suite::Subst, "literal") => check_subst_literal_readings(&TermSubst::default(), &random(seed, trials)),
        (Suite::Prop3, "term") => vec![check_prop3_equivalence(&terms, &random(seed, trials))],
        (Suite::Prop3, "var") => vec![check_prop3_equivalence(&Vars::default(), &random(seed, trials))],
        (Suite::Prop3, "list") => vec![check_prop3_equivalence(&ListOf::new(terms), &random(seed, trials))],
        (Suite::Prop4, "term") => check_prop4(&terms, &random(seed, trials)),
        (Suite::Prop4, "var") => check_prop4(&Vars::default(), &random(seed, trials)),
        (Suite::Prop4, "list") => check_prop4(&ListOf::new(terms), &random(seed, trials)),
        (Suite::Fcb, "fixture") => fcb_contrast_report(&interp_ce_spec(domain), seed, trials),
        (Suite::Fcb, "onepoint") => fcb_contrast_report(&interp_ce_spec(FixtureDomain::one_point()), seed, trials),
        (Suite::Roundtrip, "term") => {
            let ps = PermSampling::Random { seed, trials, nvars: 4 };
            let mut out = check_group_laws(seed, trials, 4);
            out.extend(check_action_laws(&terms, &ps));
            out.extend(check_roundtrips(&terms, &terms, &ps));
            out
        }
        _ => unreachable!("targets are validated against Suite::targets"),
    }
}
