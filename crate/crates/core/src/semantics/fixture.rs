//! An arithmetic test domain: integers modulo `m` with polynomial
//! application and a weighted-sampling abstraction. The numbers are test
//! scaffolding only.

use std::rc::Rc;

use thiserror::Error;

use super::SemDomain;

/// Shipped fixture parameters, `config/fixtures.conf` in this crate.
pub const DEFAULT_FIXTURES: &str = include_str!("../../config/fixtures.conf");

#[derive(Debug, Error, PartialEq, Eq)]
#[error("fixture line {line}: {message}")]
pub struct FixtureError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureDomain {
    pub modulus: u64,
    pub ap: [u64; 4],
    pub lm_points: Vec<u64>,
    pub lm_weights: Vec<u64>,
}

impl Default for FixtureDomain {
    fn default() -> Self {
        FixtureDomain::parse(DEFAULT_FIXTURES).expect("shipped fixtures parse")
    }
}

fn numbers(line: usize, value: &str) -> Result<Vec<u64>, FixtureError> {
    value
        .split_whitespace()
        .map(|w| w.parse::<u64>().map_err(|e| FixtureError { line, message: format!("bad number {w:?}: {e}") }))
        .collect()
}

impl FixtureDomain {
    /// Parses `key = value` lines; `#` starts a comment. Keys missing from
    /// the text keep their shipped defaults.
    pub fn parse(text: &str) -> Result<FixtureDomain, FixtureError> {
        let mut d =
            FixtureDomain { modulus: 101, ap: [3, 5, 7, 11], lm_points: vec![0, 2, 17], lm_weights: vec![1, 10, 33] };
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| FixtureError { line, message: format!("expected key = value, got {content:?}") })?;
            let nums = numbers(line, value)?;
            match key.trim() {
                "modulus" => match nums.as_slice() {
                    [m] if *m >= 1 => d.modulus = *m,
                    _ => return Err(FixtureError { line, message: "modulus must be one integer >= 1".into() }),
                },
                "ap" => {
                    d.ap = nums
                        .try_into()
                        .map_err(|_| FixtureError { line, message: "ap needs exactly four coefficients".into() })?
                }
                "lm_points" => d.lm_points = nums,
                "lm_weights" => d.lm_weights = nums,
                other => return Err(FixtureError { line, message: format!("unknown key {other:?}") }),
            }
        }
        if d.lm_points.is_empty() || d.lm_points.len() != d.lm_weights.len() {
            return Err(FixtureError {
                line: last,
                message: "lm_points and lm_weights must be nonempty and of equal length".into(),
            });
        }
        Ok(d)
    }

    /// The domain with a single value.
    pub fn one_point() -> FixtureDomain {
        FixtureDomain { modulus: 1, ..FixtureDomain::default() }
    }

    fn m(&self, x: u128) -> u64 {
        (x % u128::from(self.modulus)) as u64
    }

    /// Products of two residues fit in a `u64`.
    fn small(&self) -> bool {
        self.modulus <= u64::from(u32::MAX)
    }
}

impl SemDomain for FixtureDomain {
    type D = u64;

    fn ap(&self, d: &u64, e: &u64) -> u64 {
        if self.small() {
            let m = self.modulus;
            let [c0, c1, c2, c3] = self.ap.map(|c| c % m);
            let (d, e) = (d % m, e % m);
            let terms = [c0, c1 * d % m, c2 * e % m, c3 * d % m * e % m];
            return terms.iter().fold(0, |acc, t| (acc + t) % m);
        }
        let [c0, c1, c2, c3] = self.ap.map(u128::from);
        let (d, e) = (u128::from(*d), u128::from(*e));
        self.m(c0 + c1 * d + c2 * e + self.m(c3 * d) as u128 * e)
    }

    fn lm(&self, f: Rc<dyn Fn(&u64) -> u64>) -> u64 {
        if self.small() {
            let m = self.modulus;
            return self
                .lm_points
                .iter()
                .zip(&self.lm_weights)
                .fold(0, |acc, (p, w)| (acc + w % m * (f(&(p % m)) % m)) % m);
        }
        let total: u128 = self
            .lm_points
            .iter()
            .zip(&self.lm_weights)
            .map(|(p, w)| u128::from(*w) * u128::from(f(&self.m(u128::from(*p)))))
            .sum();
        self.m(total)
    }

    fn probes(&self) -> Vec<u64> {
        let mut out: Vec<u64> = (0..16u64).map(|k| (k * 37 + 1) % self.modulus).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn equal(&self, a: &u64, b: &u64) -> bool {
        a == b
    }

    fn render(&self, d: &u64) -> String {
        d.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let d = FixtureDomain::default();
        assert_eq!(d.modulus, 101);
        let e = FixtureDomain::parse("modulus = 7\n# comment\nap = 1 1 1 0\n").unwrap();
        assert_eq!((e.modulus, e.ap), (7, [1, 1, 1, 0]));
        assert_eq!(e.ap(&3, &4), 1);
    }

    #[test]
    fn arithmetic() {
        let d = FixtureDomain::default();
        // 3 + 5*2 + 7*4 + 11*8 = 129 = 28 mod 101
        assert_eq!(d.ap(&2, &4), 28);
        // lm(id) = 0 + 20 + 561 = 581 = 76 mod 101
        assert_eq!(d.lm(Rc::new(|x: &u64| *x)), 76);
        assert!(d.probes().len() >= 8);
        assert_eq!(FixtureDomain::one_point().probes(), vec![0]);
    }

    #[test]
    fn wide_modulus_uses_exact_arithmetic() {
        let big = u64::MAX - 58; // prime
        let d = FixtureDomain { modulus: big, ..FixtureDomain::default() };
        let x = big - 1;
        // 3 + 5(-1) + 7(-1) + 11(-1)(-1) = 2
        assert_eq!(d.ap(&x, &x), 2);
        let small = FixtureDomain::default();
        for (a, b) in [(0, 0), (100, 100), (37, 64)] {
            let want = (3 + 5 * a + 7 * b + 11 * a * b) % 101;
            assert_eq!(small.ap(&a, &b), want);
        }
    }

    #[test]
    fn errors_name_the_line() {
        let e = FixtureDomain::parse("modulus = 5\nbogus = 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(FixtureDomain::parse("ap = 1 2").is_err());
        assert!(FixtureDomain::parse("modulus = 0").is_err());
        assert!(FixtureDomain::parse("lm_points = 1 2").is_err());
        assert!(FixtureDomain::parse("modulus x").is_err());
    }
}
