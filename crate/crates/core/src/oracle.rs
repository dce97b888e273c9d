//! Brute-force generating polynomials by direct enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::family::FamilyId;
use crate::par::{map_collect, Parallelism};
use crate::perm::{enumerate_avoiders, Avoiders, PatternSet, Permutation};
use crate::poly::{Exponent, MultiPoly};

/// Default longest tracked pattern.
pub const MAX_TRACK_LEN: usize = 4;

/// Statistics that can be appended after the tracked patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extra {
    LrMin,
    Linv,
    Coinv,
}

/// What to enumerate and what to record for each permutation.
#[derive(Debug, Clone)]
pub struct GfSpec {
    pub n: usize,
    pub avoid: PatternSet,
    pub track: PatternSet,
    pub extras: Vec<Extra>,
}

impl GfSpec {
    pub fn new(n: usize, avoid: PatternSet, track: PatternSet) -> Self {
        Self {
            n,
            avoid,
            track,
            extras: Vec::new(),
        }
    }

    pub fn with_extras(mut self, extras: &[Extra]) -> Self {
        self.extras = extras.to_vec();
        self
    }

    pub fn arity(&self) -> usize {
        self.track.len() + self.extras.len()
    }

    fn exponents(&self, sigma: &Permutation) -> Vec<Exponent> {
        let mut e: Vec<Exponent> = self
            .track
            .iter()
            .map(|t| sigma.count_nonempty(t) as Exponent)
            .collect();
        if !self.extras.is_empty() {
            let stats = sigma.stats();
            e.extend(self.extras.iter().map(|x| match x {
                Extra::LrMin => stats.lrmin as Exponent,
                Extra::Linv => stats.linv as Exponent,
                Extra::Coinv => stats.coinv as Exponent,
            }));
        }
        e
    }
}

/// `Σ_{σ ∈ S_n(avoid)} Π x_i^{stat_i(σ)}`, sharded by first entry.
pub fn brute_gf(spec: &GfSpec, mode: Parallelism) -> Result<MultiPoly> {
    if let Some(t) = spec.track.iter().find(|t| t.len() > MAX_TRACK_LEN) {
        return invalid(format!(
            "tracked pattern {t} is longer than {MAX_TRACK_LEN}"
        ));
    }
    let arity = spec.arity();
    if spec.n == 0 {
        // the empty permutation avoids every nonempty pattern
        return Ok(MultiPoly::one(arity));
    }
    let firsts: Vec<u32> = (1..=spec.n as u32).collect();
    let shards = map_collect(mode, &firsts, |&first| {
        let mut counts: BTreeMap<Vec<Exponent>, u64> = BTreeMap::new();
        for sigma in Avoiders::with_first(spec.n, &spec.avoid, first) {
            *counts.entry(spec.exponents(&sigma)).or_insert(0) += 1;
        }
        counts
    });
    let mut merged: BTreeMap<Vec<Exponent>, u64> = BTreeMap::new();
    for shard in shards {
        for (e, c) in shard {
            *merged.entry(e).or_insert(0) += c;
        }
    }
    MultiPoly::from_terms(arity, merged.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

/// Number of permutations in `S_n(avoid)`.
pub fn class_size(n: usize, avoid: &PatternSet) -> u64 {
    enumerate_avoiders(n, avoid).count() as u64
}

/// How to reproduce a family entry from enumeration.
fn family_spec(family: FamilyId, n: usize) -> (GfSpec, Vec<usize>) {
    let set = |v: &[&str]| PatternSet::parse(v).expect("static patterns");
    let av132 = set(&["132"]);
    let av123 = set(&["123"]);
    let gamma2_3 = ["12", "21", "123", "213", "231", "312", "321"];
    let identity = |k: usize| (0..k).collect::<Vec<_>>();
    match family {
        FamilyId::Fh => (GfSpec::new(n, av132, set(&["12", "21"])), identity(2)),
        FamilyId::S3 => (GfSpec::new(n, av132, set(&gamma2_3)), identity(7)),
        FamilyId::P(g) => (GfSpec::new(n, av132, set(&["12", g.as_str()])), identity(2)),
        FamilyId::IncrTower(m) => {
            let track: Vec<Permutation> = (2..=m).map(Permutation::identity).collect();
            let track = PatternSet::new(track).expect("distinct lengths");
            (GfSpec::new(n, av132, track), identity(m - 1))
        }
        FamilyId::S4 => {
            let mut v: Vec<&str> = gamma2_3.to_vec();
            v.extend([
                "1234", "2134", "2314", "2341", "3124", "3214", "3241", "3412", "3421", "4123",
                "4213", "4231", "4312", "4321",
            ]);
            (GfSpec::new(n, av132, set(&v)), identity(21))
        }
        FamilyId::DescTower(m) => {
            // 1 i (i-1) ⋯ 2 for i = 2..m, then the minima count first.
            let track: Vec<Permutation> = (2..=m)
                .map(|i| {
                    let mut v = vec![1u32];
                    v.extend((2..=i as u32).rev());
                    Permutation::new(v).expect("valid pattern")
                })
                .collect();
            let track = PatternSet::new(track).expect("distinct lengths");
            let spec = GfSpec::new(n, av123, track).with_extras(&[Extra::LrMin]);
            let mut order = vec![m - 1];
            order.extend(0..m - 1);
            (spec, order)
        }
        FamilyId::D => {
            let spec = GfSpec::new(n, av123, set(&["12", "231"]))
                .with_extras(&[Extra::LrMin, Extra::Linv]);
            // brute order (q, y, s, x) → family order (s, q, x, y)
            (spec, vec![2, 0, 3, 1])
        }
    }
}

/// The enumerated polynomial for entry `n` of `family`, in the family's variable order.
pub fn family_oracle(family: FamilyId, n: usize, mode: Parallelism) -> Result<MultiPoly> {
    let (spec, order) = family_spec(family, n);
    brute_gf(&spec, mode)?.restrict(&order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub expected: String,
    pub computed: String,
}

/// Outcome of comparing a recursion table against enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub n: usize,
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl FamilyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(f, "{} n<={}: all entries equal", self.family, self.n),
            Some(m) => write!(
                f,
                "{} n<={}: mismatch at n={}\n  oracle:    {}\n  recursion: {}",
                self.family, self.n, m.n, m.expected, m.computed
            ),
        }
    }
}

/// Compares every entry `0..=n_max` of `family` against enumeration.
pub fn check_family(family: FamilyId, n_max: usize, mode: Parallelism) -> Result<FamilyReport> {
    let table = family.build(n_max, mode)?;
    let names = table.var_refs();
    let mut first_mismatch = None;
    for n in 0..=n_max {
        let expected = family_oracle(family, n, mode)?;
        if &expected != table.entry(n) {
            first_mismatch = Some(Mismatch {
                n,
                expected: expected.to_text(&names),
                computed: table.entry(n).to_text(&names),
            });
            break;
        }
    }
    Ok(FamilyReport {
        family: family.to_string(),
        n: n_max,
        equal: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// `Fib(1) = Fib(2) = 1`.
pub fn fibonacci(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObservationRow {
    pub n: usize,
    /// `#{σ ∈ S_n(123) : one 231}`
    pub one_231_in_123: u64,
    /// `#{σ ∈ S_n(231) : one 123}`
    pub one_123_in_231: u64,
    pub linear: u64,
    /// `#{σ ∈ S_n(132) : one 3412}`
    pub one_3412_in_132: u64,
    /// `#{σ ∈ S_n(132) : one 2341}`
    pub one_2341_in_132: u64,
    pub fib_minus_one: u64,
}

impl ObservationRow {
    pub fn linear_holds(&self) -> bool {
        self.one_231_in_123 == self.linear && self.one_123_in_231 == self.linear
    }

    pub fn fib_holds(&self) -> bool {
        self.one_3412_in_132 == self.fib_minus_one && self.one_2341_in_132 == self.fib_minus_one
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObservationReport {
    pub rows: Vec<ObservationRow>,
}

impl ObservationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.linear_holds() && r.fib_holds())
    }
}

fn count_with_exactly_one(n: usize, avoid: &str, pattern: &str, mode: Parallelism) -> u64 {
    let avoid = PatternSet::parse(&[avoid]).expect("static pattern");
    let pattern: Permutation = pattern.parse().expect("static pattern");
    let firsts: Vec<u32> = (1..=n as u32).collect();
    map_collect(mode, &firsts, |&first| {
        Avoiders::with_first(n, &avoid, first)
            .filter(|s| s.count_nonempty(&pattern) == 1)
            .count() as u64
    })
    .into_iter()
    .sum()
}

/// Counts of avoiders with exactly one occurrence of a second pattern, for
/// `4 ≤ n ≤ n_max`, next to the closed forms `2n - 5` and `Fib(2n - 5) - 1`.
pub fn observation_suite(n_max: usize, mode: Parallelism) -> Result<ObservationReport> {
    if n_max < 4 {
        return invalid(format!("observations start at n = 4, got n_max = {n_max}"));
    }
    let rows = (4..=n_max)
        .map(|n| ObservationRow {
            n,
            one_231_in_123: count_with_exactly_one(n, "123", "231", mode),
            one_123_in_231: count_with_exactly_one(n, "231", "123", mode),
            linear: 2 * n as u64 - 5,
            one_3412_in_132: count_with_exactly_one(n, "132", "3412", mode),
            one_2341_in_132: count_with_exactly_one(n, "132", "2341", mode),
            fib_minus_one: fibonacci(2 * n - 5) - 1,
        })
        .collect();
    Ok(ObservationReport { rows })
}
