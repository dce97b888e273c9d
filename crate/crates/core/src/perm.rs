//! Permutations in one-line notation, classical pattern occurrence counting,
//! the symmetry actions, and enumeration of avoidance classes.
//!
//! Values are stored 0-based; everything that crosses the public boundary
//! (constructors, [`Permutation::one_line`], text form) is 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A permutation of `{1, …, n}` in one-line notation. The empty permutation is valid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from 1-based one-line notation.
    pub fn new(one_line: Vec<u32>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        let mut values = Vec::with_capacity(n);
        for &v in &one_line {
            if v == 0 || v as usize > n {
                return invalid(format!("value {v} out of range 1..={n}"));
            }
            let z = (v - 1) as usize;
            if seen[z] {
                return invalid(format!("value {v} repeated"));
            }
            seen[z] = true;
            values.push(v - 1);
        }
        Ok(Self { values })
    }

    pub(crate) fn from_zero_based(values: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = values.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Self { values }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        Self::from_zero_based((0..n as u32).collect())
    }

    /// `n (n-1) … 1`
    pub fn decreasing(n: usize) -> Self {
        Self::from_zero_based((0..n as u32).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based value at 1-based position `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.values[i - 1] + 1
    }

    /// The 1-based one-line notation.
    pub fn one_line(&self) -> Vec<u32> {
        self.values.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i)
    }

    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self { values }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u32;
        Self {
            values: self.values.iter().map(|&v| n - 1 - v).collect(),
        }
    }

    /// Complement of the reverse.
    pub fn reverse_complement(&self) -> Self {
        self.reverse().complement()
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize] = i as u32;
        }
        Self { values }
    }

    pub fn apply(&self, action: Symmetry) -> Self {
        match action {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::ReverseComplement => self.reverse_complement(),
            Symmetry::Inverse => self.inverse(),
        }
    }

    /// `self ⊕ other`: `other` is placed after `self`, shifted above it.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let m = self.len() as u32;
        let values = self
            .values
            .iter()
            .copied()
            .chain(other.values.iter().map(|v| v + m))
            .collect();
        Self { values }
    }

    /// `self ⊖ other`: `other` is placed after `self`, with `self` shifted above it.
    pub fn skew_sum(&self, other: &Permutation) -> Self {
        let n = other.len() as u32;
        let values = self
            .values
            .iter()
            .map(|v| v + n)
            .chain(other.values.iter().copied())
            .collect();
        Self { values }
    }

    /// Every way to write `self = π ⊖ τ` with both parts nonempty, ordered by `|π|`.
    pub fn skew_decompositions(&self) -> Vec<(Permutation, Permutation)> {
        let n = self.len();
        let mut out = Vec::new();
        let mut prefix_min = u32::MAX;
        for split in 1..n {
            prefix_min = prefix_min.min(self.values[split - 1]);
            // The prefix must hold exactly the top `split` values.
            if prefix_min as usize == n - split {
                let pi = reduce_u32(&self.values[..split]);
                let tau = reduce_u32(&self.values[split..]);
                out.push((pi, tau));
            }
        }
        out
    }

    /// Number of occurrences of `tau` as a classical pattern.
    pub fn occurrences(&self, tau: &Permutation) -> Result<u64> {
        if tau.is_empty() {
            return invalid("pattern must be nonempty");
        }
        Ok(self.count_nonempty(tau))
    }

    pub(crate) fn count_nonempty(&self, tau: &Permutation) -> u64 {
        let (n, m) = (self.len(), tau.len());
        if m > n {
            return 0;
        }
        if m == 1 {
            return n as u64;
        }
        if tau.is_identity() {
            return count_increasing(&self.values, m);
        }
        let mut chosen = Vec::with_capacity(m);
        count_matches(&self.values, &tau.values, 0, &mut chosen)
    }

    /// `true` when `tau` occurs at least once.
    pub fn contains(&self, tau: &Permutation) -> bool {
        if tau.is_empty() {
            return true;
        }
        if tau.len() > self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(tau.len());
        contains_match(&self.values, &tau.values, 0, &mut chosen)
    }

    pub fn avoids(&self, patterns: &PatternSet) -> bool {
        patterns.iter().all(|p| !self.contains(p))
    }

    pub fn stats(&self) -> PermStats {
        let n = self.len();
        let mut inv = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i] > self.values[j] {
                    inv += 1;
                }
            }
        }
        let total = (n as u64) * (n as u64).saturating_sub(1) / 2;
        let mask = self.lrmin_mask();
        let lrmin = mask.iter().filter(|&&b| b).count() as u64;
        let mut linv = 0u64;
        for (i, &a) in self.values.iter().enumerate() {
            if !mask[i] {
                continue;
            }
            linv += self
                .values
                .iter()
                .zip(&mask)
                .filter(|&(&b, &is_min)| !is_min && b < a)
                .count() as u64;
        }
        PermStats {
            inv,
            coinv: total - inv,
            lrmin,
            linv,
        }
    }

    /// Marks the left-to-right minima by position.
    pub fn lrmin_mask(&self) -> Vec<bool> {
        let mut current = u32::MAX;
        self.values
            .iter()
            .map(|&v| {
                if v < current {
                    current = v;
                    true
                } else {
                    false
                }
            })
            .collect()
    }

    /// Splits a nonempty 132-avoider around its maximum: `σ = A (n) B` with every value of
    /// `A` above every value of `B`.
    pub fn max_split(&self) -> Result<MaxSplit> {
        if self.is_empty() {
            return invalid("max_split of the empty permutation");
        }
        if self.contains(&p132()) {
            return invalid(format!("{self} contains 132"));
        }
        let n = self.len() as u32;
        let k = self.values.iter().position(|&v| v == n - 1).unwrap();
        Ok(MaxSplit {
            a: reduce_u32(&self.values[..k]),
            k: k + 1,
            b: reduce_u32(&self.values[k + 1..]),
        })
    }
}

fn p132() -> Permutation {
    Permutation::from_zero_based(vec![0, 2, 1])
}

/// Counts increasing subsequences of length `m` in O(m·n²).
fn count_increasing(values: &[u32], m: usize) -> u64 {
    let n = values.len();
    // ends[i] = number of increasing subsequences of the current length ending at i
    let mut ends = vec![1u64; n];
    for _ in 1..m {
        let mut next = vec![0u64; n];
        for j in 0..n {
            for i in 0..j {
                if values[i] < values[j] {
                    next[j] += ends[i];
                }
            }
        }
        ends = next;
    }
    ends.iter().sum()
}

fn consistent(values: &[u32], tau: &[u32], chosen: &[usize], idx: usize) -> bool {
    let t = chosen.len();
    chosen
        .iter()
        .enumerate()
        .all(|(s, &c)| (values[c] < values[idx]) == (tau[s] < tau[t]))
}

fn count_matches(values: &[u32], tau: &[u32], from: usize, chosen: &mut Vec<usize>) -> u64 {
    let t = chosen.len();
    if t == tau.len() {
        return 1;
    }
    let remaining = tau.len() - t;
    let mut total = 0;
    for idx in from..=values.len() - remaining {
        if consistent(values, tau, chosen, idx) {
            chosen.push(idx);
            total += count_matches(values, tau, idx + 1, chosen);
            chosen.pop();
        }
    }
    total
}

fn contains_match(values: &[u32], tau: &[u32], from: usize, chosen: &mut Vec<usize>) -> bool {
    let t = chosen.len();
    if t == tau.len() {
        return true;
    }
    let remaining = tau.len() - t;
    for idx in from..=values.len() - remaining {
        if consistent(values, tau, chosen, idx) {
            chosen.push(idx);
            let found = contains_match(values, tau, idx + 1, chosen);
            chosen.pop();
            if found {
                return true;
            }
        }
    }
    false
}

fn reduce_u32(word: &[u32]) -> Permutation {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_unstable_by_key(|&i| word[i]);
    let mut values = vec![0; word.len()];
    for (rank, i) in order.into_iter().enumerate() {
        values[i] = rank as u32;
    }
    Permutation::from_zero_based(values)
}

/// Replaces the i-th smallest entry of a word of distinct integers by `i`.
pub fn reduce(word: &[i64]) -> Result<Permutation> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return invalid(format!("entry {} repeated", w[0]));
    }
    let values = word
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32)
        .collect();
    Ok(Permutation::from_zero_based(values))
}

/// The four symmetry actions on permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Reverse,
    Complement,
    ReverseComplement,
    Inverse,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::ReverseComplement,
        Symmetry::Inverse,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermStats {
    /// Occurrences of 21.
    pub inv: u64,
    /// Occurrences of 12.
    pub coinv: u64,
    /// Number of left-to-right minima.
    pub lrmin: u64,
    /// Pairs (a, b) with `a` a left-to-right minimum, `b` not one, and `a > b`.
    /// On 123-avoiders every such `a` precedes `b`, so this agrees with the
    /// position-ordered count there.
    pub linv: u64,
}

/// Result of [`Permutation::max_split`]. `k` is the 1-based position of the maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSplit {
    pub a: Permutation,
    pub k: usize,
    pub b: Permutation,
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() <= 9 { "" } else { "," };
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(sep)?;
            }
            first = false;
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit string (`867943251`) or comma-separated (`8,6,7,9,4,3,2,5,1`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut values = Vec::new();
        if s.contains(',') {
            for tok in s.split(',') {
                let tok = tok.trim();
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad permutation entry `{tok}` in `{s}`")))?;
                values.push(v);
            }
        } else {
            for ch in s.chars() {
                let v = ch.to_digit(10).ok_or_else(|| {
                    Error::Parse(format!("bad permutation entry `{ch}` in `{s}`"))
                })?;
                values.push(v);
            }
        }
        Permutation::new(values).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::Parse(format!("`{s}`: {msg}")),
            other => other,
        })
    }
}

/// An ordered list of distinct nonempty patterns. The order fixes variable order
/// in generating functions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(patterns: Vec<Permutation>) -> Result<Self> {
        for (i, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                return invalid("patterns must be nonempty");
            }
            if patterns[..i].contains(p) {
                return invalid(format!("pattern {p} listed twice"));
            }
        }
        Ok(Self { patterns })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses each string as a pattern.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let patterns = items
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<Permutation>>>()?;
        Self::new(patterns)
    }

    pub fn single(p: Permutation) -> Self {
        assert!(!p.is_empty(), "patterns must be nonempty");
        Self { patterns: vec![p] }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.patterns.iter()
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.patterns
    }

    /// Applies a symmetry action to every pattern.
    pub fn apply(&self, action: Symmetry) -> Self {
        Self {
            patterns: self.patterns.iter().map(|p| p.apply(action)).collect(),
        }
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}

/// Lexicographic stream of `S_n(Λ)` built by backtracking; a prefix that already
/// contains a pattern of `Λ` is abandoned.
pub struct Avoiders {
    n: usize,
    patterns: PatternSet,
    prefix: Vec<u32>,
    used: Vec<bool>,
    cursor: Vec<u32>,
    first_range: (u32, u32),
    done: bool,
}

impl Avoiders {
    pub fn new(n: usize, patterns: &PatternSet) -> Self {
        Self::restricted(n, patterns, 0, n as u32)
    }

    /// Only the avoiders whose first entry is `first` (1-based).
    pub fn with_first(n: usize, patterns: &PatternSet, first: u32) -> Self {
        assert!(
            first >= 1 && first as usize <= n,
            "first entry out of range"
        );
        Self::restricted(n, patterns, first - 1, first)
    }

    fn restricted(n: usize, patterns: &PatternSet, lo: u32, hi: u32) -> Self {
        let mut cursor = vec![0; n + 1];
        cursor[0] = lo;
        Self {
            n,
            patterns: patterns.clone(),
            prefix: Vec::with_capacity(n),
            used: vec![false; n],
            cursor,
            first_range: (lo, hi),
            done: false,
        }
    }

    /// Whether appending made an occurrence that uses the last entry.
    fn last_creates_occurrence(&self) -> bool {
        let last = self.prefix.len() - 1;
        self.patterns.iter().any(|p| {
            let m = p.len();
            if m > self.prefix.len() {
                return false;
            }
            if m == 1 {
                return true;
            }
            // the last entry of the prefix must play the role of the last letter of p
            let mut chosen = Vec::with_capacity(m);
            ends_with_match(&self.prefix, &p.values, 0, last, &mut chosen)
        })
    }
}

fn ends_with_match(
    values: &[u32],
    tau: &[u32],
    from: usize,
    last: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let t = chosen.len();
    if t + 1 == tau.len() {
        return consistent(values, tau, chosen, last);
    }
    let remaining = tau.len() - 1 - t;
    if last < remaining {
        return false;
    }
    for idx in from..=last - remaining {
        if consistent(values, tau, chosen, idx) {
            chosen.push(idx);
            let found = ends_with_match(values, tau, idx + 1, last, chosen);
            chosen.pop();
            if found {
                return true;
            }
        }
    }
    false
}

impl Iterator for Avoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Permutation::empty());
        }
        loop {
            let depth = self.prefix.len();
            let hi = if depth == 0 {
                self.first_range.1
            } else {
                self.n as u32
            };
            let mut placed = false;
            let mut v = self.cursor[depth];
            while v < hi {
                if !self.used[v as usize] {
                    self.prefix.push(v);
                    if self.last_creates_occurrence() {
                        self.prefix.pop();
                    } else {
                        self.used[v as usize] = true;
                        self.cursor[depth] = v + 1;
                        placed = true;
                        break;
                    }
                }
                v += 1;
            }
            if placed {
                if self.prefix.len() == self.n {
                    let out = Permutation::from_zero_based(self.prefix.clone());
                    let last = self.prefix.pop().unwrap();
                    self.used[last as usize] = false;
                    return Some(out);
                }
                self.cursor[depth + 1] = 0;
            } else {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                let last = self.prefix.pop().unwrap();
                self.used[last as usize] = false;
            }
        }
    }
}

/// Streams `S_n(Λ)` in lexicographic order.
pub fn enumerate_avoiders(n: usize, patterns: &PatternSet) -> Avoiders {
    Avoiders::new(n, patterns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[4, 6, 8, 5]).unwrap(), p("1342"));
        assert_eq!(reduce(&[1, 3, 2]).unwrap(), p("132"));
        assert_eq!(reduce(&[]).unwrap(), Permutation::empty());
        assert!(matches!(reduce(&[3, 1, 3]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn construction_validates() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
        assert!(Permutation::new(vec![]).unwrap().is_empty());
    }

    #[test]
    fn occurrence_examples() {
        let sigma = p("867943251");
        assert_eq!(sigma.occurrences(&p("123")).unwrap(), 1);
        assert_eq!(sigma.occurrences(&p("132")).unwrap(), 0);
        assert_eq!(sigma.occurrences(&p("1")).unwrap(), 9);
        assert_eq!(p("1234").occurrences(&p("12")).unwrap(), 6);
        assert!(sigma.occurrences(&Permutation::empty()).is_err());
        assert_eq!(p("12").occurrences(&p("123")).unwrap(), 0);
    }

    #[test]
    fn avoids_examples() {
        assert!(p("867943251").avoids(&PatternSet::parse(&["132"]).unwrap()));
        assert!(!p("123").avoids(&PatternSet::parse(&["123"]).unwrap()));
        assert!(Permutation::empty().avoids(&PatternSet::parse(&["1", "21"]).unwrap()));
    }

    #[test]
    fn symmetry_examples() {
        let s = p("15324");
        assert_eq!(s.apply(Symmetry::Reverse), p("42351"));
        assert_eq!(s.apply(Symmetry::Complement), p("51342"));
        assert_eq!(s.apply(Symmetry::Inverse), p("14352"));
        assert_eq!(s.apply(Symmetry::ReverseComplement), p("24315"));
    }

    #[test]
    fn sums() {
        assert_eq!(p("1").skew_sum(&p("12")), p("312"));
        assert_eq!(p("21").direct_sum(&p("1")), p("213"));
        assert_eq!(Permutation::empty().direct_sum(&p("231")), p("231"));
    }

    #[test]
    fn skew_decomposition_examples() {
        assert_eq!(p("312").skew_decompositions(), vec![(p("1"), p("12"))]);
        assert_eq!(p("231").skew_decompositions(), vec![(p("12"), p("1"))]);
        assert!(p("213").skew_decompositions().is_empty());
        assert_eq!(
            p("321").skew_decompositions(),
            vec![(p("1"), p("21")), (p("21"), p("1"))]
        );
    }

    #[test]
    fn stats_examples() {
        let s = p("867943251").stats();
        assert_eq!(s.lrmin, 6);
        assert_eq!(s.inv + s.coinv, 36);
        assert_eq!(Permutation::identity(6).stats().inv, 0);
        // minima 8,6,4,3,2,1 against non-minima 9,7,5: (8,7) (8,5) (6,5)
        assert_eq!(p("869743251").stats().linv, 3);
    }

    #[test]
    fn max_split_examples() {
        let split = p("867943251").max_split().unwrap();
        assert_eq!(
            split,
            MaxSplit {
                a: p("312"),
                k: 4,
                b: p("43251")
            }
        );
        let one = p("1").max_split().unwrap();
        assert_eq!(
            (one.a, one.k, one.b),
            (Permutation::empty(), 1, Permutation::empty())
        );
        let two = p("12").max_split().unwrap();
        assert_eq!((two.a, two.k, two.b), (p("1"), 2, Permutation::empty()));
        assert!(p("132").max_split().is_err());
    }

    #[test]
    fn avoider_examples() {
        let set = PatternSet::parse(&["132"]).unwrap();
        let got: Vec<String> = enumerate_avoiders(3, &set).map(|p| p.to_string()).collect();
        assert_eq!(got, ["123", "213", "231", "312", "321"]);
        let empty: Vec<Permutation> = enumerate_avoiders(0, &set).collect();
        assert_eq!(empty, vec![Permutation::empty()]);
        assert_eq!(enumerate_avoiders(4, &PatternSet::empty()).count(), 24);
    }

    #[test]
    fn avoiders_with_first_partition_the_class() {
        let set = PatternSet::parse(&["123"]).unwrap();
        let all: Vec<Permutation> = enumerate_avoiders(6, &set).collect();
        let sharded: Vec<Permutation> = (1..=6)
            .flat_map(|f| Avoiders::with_first(6, &set, f))
            .collect();
        assert_eq!(all, sharded);
    }

    #[test]
    fn text_form() {
        let long = p("8,6,7,9,4,3,2,5,1,10");
        assert_eq!(long.to_string(), "8,6,7,9,4,3,2,5,1,10");
        assert_eq!(p("867943251").to_string(), "867943251");
        let err = "86x".parse::<Permutation>().unwrap_err();
        assert!(err.to_string().contains("`x`"));
    }
}
