//! Family identifiers and the memoized tables every recursion produces.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::par::Parallelism;
use crate::poly::{Exponent, MultiPoly};
use crate::{rec123, rec132};

/// The length-three patterns tracked by the `(q, x)` families over `S_n(132)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gamma3 {
    P123,
    P213,
    P231,
    P312,
    P321,
}

impl Gamma3 {
    pub const ALL: [Gamma3; 5] = [
        Gamma3::P123,
        Gamma3::P213,
        Gamma3::P231,
        Gamma3::P312,
        Gamma3::P321,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Gamma3::P123 => "123",
            Gamma3::P213 => "213",
            Gamma3::P231 => "231",
            Gamma3::P312 => "312",
            Gamma3::P321 => "321",
        }
    }
}

/// Every recursion family the library can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `(x1, x2)` tracking 12 and 21 over `S_n(132)`.
    Fh,
    /// `(x1..x7)` tracking 12, 21, 123, 213, 231, 312, 321 over `S_n(132)`.
    S3,
    /// `(q, x)` tracking coinversions and one length-three pattern over `S_n(132)`.
    P(Gamma3),
    /// `(x2..xm)` tracking 12, 123, …, 12⋯m over `S_n(132)`.
    IncrTower(usize),
    /// All patterns of length 2, 3 and 4 over `S_n(132)` (`x1..x7, y1..y14`).
    S4,
    /// `(s, x2..xm)` tracking left-to-right minima, 12, 132, …, 1m⋯2 over `S_n(123)`.
    DescTower(usize),
    /// `(s, q, x, y)` tracking left-to-right minima, 12, linv and 231 over `S_n(123)`.
    D,
}

impl FamilyId {
    /// Default size cap for routine computation.
    pub fn default_cap(self) -> usize {
        match self {
            FamilyId::Fh => 14,
            FamilyId::S3 => 9,
            FamilyId::S4 => 7,
            FamilyId::P(_) => 12,
            FamilyId::IncrTower(_) | FamilyId::DescTower(_) => 10,
            FamilyId::D => 10,
        }
    }

    pub fn var_names(self) -> Vec<String> {
        let xs =
            |r: std::ops::RangeInclusive<usize>| r.map(|i| format!("x{i}")).collect::<Vec<_>>();
        match self {
            FamilyId::Fh => xs(1..=2),
            FamilyId::S3 => xs(1..=7),
            FamilyId::P(_) => vec!["q".into(), "x".into()],
            FamilyId::IncrTower(m) => xs(2..=m),
            FamilyId::S4 => {
                let mut v = xs(1..=7);
                v.extend((1..=14).map(|i| format!("y{i}")));
                v
            }
            FamilyId::DescTower(m) => {
                let mut v = vec!["s".to_string()];
                v.extend(xs(2..=m));
                v
            }
            FamilyId::D => ["s", "q", "x", "y"].iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Builds the table through `n_max`.
    pub fn build(self, n_max: usize, mode: Parallelism) -> Result<FamilyTable> {
        match self {
            FamilyId::Fh => rec132::fh_table(n_max, mode),
            FamilyId::S3 => rec132::s3_table(n_max, mode),
            FamilyId::P(g) => rec132::p_table(n_max, g, mode),
            FamilyId::IncrTower(m) => rec132::incr_tower_table(n_max, m, mode),
            FamilyId::S4 => Ok(rec132::s4_table(n_max, mode)?.assemble()),
            FamilyId::DescTower(m) => rec123::desc_tower_table(n_max, m, mode),
            FamilyId::D => Ok(rec123::d_table(n_max, mode)?.assemble()),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Fh => f.write_str("fh"),
            FamilyId::S3 => f.write_str("s3"),
            FamilyId::P(g) => write!(f, "p{}", g.as_str()),
            FamilyId::IncrTower(m) => write!(f, "incr{m}"),
            FamilyId::S4 => f.write_str("s4"),
            FamilyId::DescTower(m) => write!(f, "desc{m}"),
            FamilyId::D => f.write_str("d"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// `fh`, `s3`, `s4`, `d`, `p123`…`p321`, `incrM`, `descM` (M ≥ 2).
    fn from_str(s: &str) -> Result<Self> {
        let tower = |rest: &str| -> Result<usize> {
            let m: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("unknown family `{s}`")))?;
            if m < 2 {
                return invalid(format!("family `{s}` needs m >= 2"));
            }
            Ok(m)
        };
        match s {
            "fh" => Ok(FamilyId::Fh),
            "s3" => Ok(FamilyId::S3),
            "s4" => Ok(FamilyId::S4),
            "d" => Ok(FamilyId::D),
            _ => {
                if let Some(rest) = s.strip_prefix('p') {
                    Gamma3::ALL
                        .into_iter()
                        .find(|g| g.as_str() == rest)
                        .map(FamilyId::P)
                        .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
                } else if let Some(rest) = s.strip_prefix("incr") {
                    tower(rest).map(FamilyId::IncrTower)
                } else if let Some(rest) = s.strip_prefix("desc") {
                    tower(rest).map(FamilyId::DescTower)
                } else {
                    Err(Error::Parse(format!("unknown family `{s}`")))
                }
            }
        }
    }
}

/// Memoized generating polynomials of one family, indexed by `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTable {
    family: FamilyId,
    vars: Vec<String>,
    entries: Vec<MultiPoly>,
}

impl FamilyTable {
    pub(crate) fn new(family: FamilyId, entries: Vec<MultiPoly>) -> Self {
        let vars = family.var_names();
        debug_assert!(entries.iter().all(|e| e.arity() == vars.len()));
        debug_assert!(entries.iter().all(MultiPoly::is_polynomial));
        Self {
            family,
            vars,
            entries,
        }
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| {
            Error::InvalidInput(format!("family {} has no variable `{name}`", self.family))
        })
    }

    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, n: usize) -> &MultiPoly {
        &self.entries[n]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn to_text(&self, n: usize) -> String {
        self.entries[n].to_text(&self.var_refs())
    }
}

/// Converts a computed exponent to the storage width, failing loudly on overflow.
pub(crate) fn exp<T: TryInto<Exponent>>(v: T) -> Result<Exponent> {
    v.try_into()
        .map_err(|_| Error::Overflow("recursion exponent"))
}

pub(crate) fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
