//! Variables, finite variable sets and the name-interning session.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A variable. Identity is the index; display names live in a [`Names`] session.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Finite set of variables.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct VarSet(BTreeSet<Var>);

impl VarSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Var) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    pub fn insert(&mut self, v: Var) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Var) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        VarSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        VarSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn with(mut self, v: Var) -> VarSet {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: Var) -> VarSet {
        self.remove(v);
        self
    }

    /// Smallest index not in the set.
    pub fn min_excluded(&self) -> Var {
        self.nth_excluded(0)
    }

    /// The `n`-th (0-based) smallest index not in the set.
    pub fn nth_excluded(&self, n: usize) -> Var {
        let mut skipped = 0;
        let mut candidate = 0u32;
        let mut members = self.0.iter().peekable();
        loop {
            while let Some(&&m) = members.peek() {
                if m.0 < candidate {
                    members.next();
                } else {
                    break;
                }
            }
            if members.peek().map(|m| m.0) != Some(candidate) {
                if skipped == n {
                    return Var(candidate);
                }
                skipped += 1;
            }
            candidate += 1;
        }
    }
}

impl FromIterator<Var> for VarSet {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        VarSet(iter.into_iter().collect())
    }
}

impl Extend<Var> for VarSet {
    fn extend<I: IntoIterator<Item = Var>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a VarSet {
    type Item = Var;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Var>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// The smallest variable not in `avoid`.
pub fn fresh_var(avoid: &VarSet) -> Var {
    avoid.min_excluded()
}

/// Interning session mapping identifiers to variables and back.
///
/// Identifiers of the form `xN` always denote `Var(N)`. Other identifiers get
/// the smallest index that is neither reserved by an `xN` spelling nor
/// already interned.
#[derive(Clone, Default, Debug)]
pub struct Names {
    by_name: BTreeMap<String, Var>,
    by_var: BTreeMap<Var, String>,
    reserved: BTreeSet<u32>,
}

/// Parses the canonical `xN` spelling.
pub fn indexed_name(ident: &str) -> Option<u32> {
    let digits = ident.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

impl Names {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reserves every `xN` identifier occurring in `text`, so that later
    /// interning of other names never takes those indices.
    pub fn reserve_from(&mut self, text: &str) {
        let mut ident = String::new();
        let flush = |ident: &mut String, reserved: &mut BTreeSet<u32>| {
            if let Some(n) = indexed_name(ident) {
                reserved.insert(n);
            }
            ident.clear();
        };
        for c in text.chars() {
            let continues = if ident.is_empty() {
                c.is_ascii_alphabetic()
            } else {
                c.is_ascii_alphanumeric() || c == '_' || c == '\''
            };
            if continues {
                ident.push(c);
            } else {
                flush(&mut ident, &mut self.reserved);
            }
        }
        flush(&mut ident, &mut self.reserved);
    }

    /// Returns the variable for `ident`, interning it if needed. Fails when
    /// an `xN` spelling collides with an index already given to another name.
    pub fn intern(&mut self, ident: &str) -> Result<Var, String> {
        if let Some(n) = indexed_name(ident) {
            let v = Var(n);
            if let Some(other) = self.by_var.get(&v) {
                if other != ident {
                    return Err(format!("identifier `{ident}` collides with interned name `{other}`"));
                }
            }
            self.reserved.insert(n);
            return Ok(v);
        }
        if let Some(&v) = self.by_name.get(ident) {
            return Ok(v);
        }
        let mut idx = 0u32;
        while self.reserved.contains(&idx) || self.by_var.contains_key(&Var(idx)) {
            idx += 1;
        }
        let v = Var(idx);
        self.by_name.insert(ident.to_string(), v);
        self.by_var.insert(v, ident.to_string());
        Ok(v)
    }

    pub fn lookup(&self, ident: &str) -> Option<Var> {
        indexed_name(ident).map(Var).or_else(|| self.by_name.get(ident).copied())
    }

    pub fn name(&self, v: Var) -> String {
        match self.by_var.get(&v) {
            Some(n) => n.clone(),
            None => v.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[u32]) -> VarSet {
        ix.iter().map(|&i| Var(i)).collect()
    }

    #[test]
    fn fresh_var_examples() {
        assert_eq!(fresh_var(&set(&[])), Var(0));
        assert_eq!(fresh_var(&set(&[0, 1])), Var(2));
        assert_eq!(fresh_var(&set(&[0, 2])), Var(1));
    }

    #[test]
    fn fresh_var_matches_linear_scan() {
        let sets: [&[u32]; 5] = [&[], &[1], &[0, 1, 2, 5], &[3, 0, 4], &[7]];
        for ix in sets {
            let s = set(ix);
            let scan = (0u32..).find(|i| !ix.contains(i)).unwrap();
            assert_eq!(fresh_var(&s), Var(scan));
            let second = (0u32..).filter(|i| !ix.contains(i)).nth(2).unwrap();
            assert_eq!(s.nth_excluded(2), Var(second));
        }
    }

    #[test]
    fn interning_respects_indexed_names() {
        let mut names = Names::new();
        names.reserve_from("\\y. x0 x1 y");
        let y = names.intern("y").unwrap();
        assert_eq!(y, Var(2));
        assert_eq!(names.intern("x1").unwrap(), Var(1));
        assert_eq!(names.intern("y").unwrap(), y);
        assert_eq!(names.name(y), "y");
        assert_eq!(names.name(Var(7)), "x7");
        assert!(names.intern("x2").is_err());
    }

    #[test]
    fn indexed_name_forms() {
        assert_eq!(indexed_name("x12"), Some(12));
        assert_eq!(indexed_name("x"), None);
        assert_eq!(indexed_name("x01"), None);
        assert_eq!(indexed_name("y1"), None);
    }
}
