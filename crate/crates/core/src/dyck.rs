//! Down-right Dyck paths and the two shading bijections from avoidance classes.
//!
//! Coordinates: the path runs from `(0,0)` to `(n,n)` with `x` counting columns
//! left to right and `y` counting rows top to bottom, so `D` is `y += 1` and `R`
//! is `x += 1`; staying weakly below the diagonal means `y >= x` throughout.
//!
//! The path is fully described by its column depths: `depth[c-1]` is the `y`
//! at which the `R` step of column `c` (1-based) is taken. Then
//! * the path touches `(c,c)` exactly when `depth[c-1] == c`,
//! * column `c` holds `depth[c-1] - c` area cells and `n - depth[c-1]` coarea cells,
//! * a peak (`DR` factor) sits in column `c` when the depth grows there; its `D`
//!   step starts at `(c-1, depth-1)` and its `R` step ends at `(c, depth)`, both on
//!   the line `y - x = depth - c`, which is the peak's diagonal (the main
//!   diagonal is 0).
//!
//! For the permutation graph (value `σ_c` in column `c`, row `σ_c` counted from
//! the bottom), shading everything north-east of each point leaves column `c`
//! shaded from the top down to depth `n + 1 - min(σ_1..σ_c)`, which is where the
//! boundary path takes its `R` step.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::perm::{PatternSet, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    D,
    R,
}

/// A down-right Dyck path stored as a packed bit sequence (`1` = `D`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    bits: Vec<u64>,
    len: usize,
}

impl DyckPath {
    pub fn empty() -> Self {
        Self {
            bits: Vec::new(),
            len: 0,
        }
    }

    pub fn new(steps: &[Step]) -> Result<Self> {
        let mut balance: i64 = 0;
        for (i, s) in steps.iter().enumerate() {
            balance += if *s == Step::D { 1 } else { -1 };
            if balance < 0 {
                return invalid(format!("step {} crosses above the diagonal", i + 1));
            }
        }
        if balance != 0 {
            return invalid("path does not end on the diagonal");
        }
        Ok(Self::from_steps_unchecked(steps))
    }

    fn from_steps_unchecked(steps: &[Step]) -> Self {
        let mut bits = vec![0u64; steps.len().div_ceil(64)];
        for (i, s) in steps.iter().enumerate() {
            if *s == Step::D {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        Self {
            bits,
            len: steps.len(),
        }
    }

    /// Builds the path whose column `c` takes its `R` step at depth `depths[c-1]`.
    pub fn from_depths(depths: &[usize]) -> Result<Self> {
        let n = depths.len();
        let mut steps = Vec::with_capacity(2 * n);
        let mut y = 0;
        for (c, &d) in depths.iter().enumerate() {
            if d < y || d > n || d < c + 1 {
                return invalid(format!("invalid depth {d} for column {}", c + 1));
            }
            steps.extend(std::iter::repeat_n(Step::D, d - y));
            steps.push(Step::R);
            y = d;
        }
        if y != n {
            return invalid("path does not end at (n,n)");
        }
        Ok(Self::from_steps_unchecked(&steps))
    }

    pub fn step(&self, i: usize) -> Step {
        if self.bits[i / 64] >> (i % 64) & 1 == 1 {
            Step::D
        } else {
            Step::R
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        (0..self.len).map(|i| self.step(i))
    }

    /// Semilength `n`.
    pub fn size(&self) -> usize {
        self.len / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Depth of the `R` step of each column.
    pub fn depths(&self) -> Vec<usize> {
        let mut y = 0;
        let mut out = Vec::with_capacity(self.size());
        for s in self.steps() {
            match s {
                Step::D => y += 1,
                Step::R => out.push(y),
            }
        }
        out
    }

    /// Peaks as `(column, diagonal)`, columns 1-based, left to right.
    pub fn peaks(&self) -> Vec<(usize, usize)> {
        let mut prev = 0;
        let mut out = Vec::new();
        for (i, d) in self.depths().into_iter().enumerate() {
            if d > prev {
                out.push((i + 1, d - (i + 1)));
            }
            prev = d;
        }
        out
    }

    pub fn stats(&self) -> PathStats {
        let n = self.size();
        let depths = self.depths();
        let ret = depths
            .iter()
            .enumerate()
            .find(|&(i, &d)| d == i + 1)
            .map_or(0, |(i, _)| i + 1);
        let area = depths.iter().enumerate().map(|(i, &d)| d - (i + 1)).sum();
        let coarea = depths.iter().map(|&d| n - d).sum();
        let mut diag_peaks = BTreeMap::new();
        for (_, diag) in self.peaks() {
            *diag_peaks.entry(diag).or_insert(0) += 1;
        }
        PathStats {
            ret,
            area,
            coarea,
            diag_peaks,
        }
    }

    /// Writes a nonempty path as `D · P1 · R · P2` where the `R` is the step that
    /// first returns to the diagonal.
    pub fn first_return_split(&self) -> Result<(DyckPath, DyckPath)> {
        if self.is_empty() {
            return invalid("first return of the empty path");
        }
        let mut balance = 0i64;
        let mut ret_step = 0;
        for (i, s) in self.steps().enumerate() {
            balance += if s == Step::D { 1 } else { -1 };
            if balance == 0 {
                ret_step = i;
                break;
            }
        }
        let steps: Vec<Step> = self.steps().collect();
        let p1 = Self::from_steps_unchecked(&steps[1..ret_step]);
        let p2 = Self::from_steps_unchecked(&steps[ret_step + 1..]);
        Ok((p1, p2))
    }

    /// `D · inner · R · rest`
    pub fn compose(inner: &DyckPath, rest: &DyckPath) -> DyckPath {
        let steps: Vec<Step> = std::iter::once(Step::D)
            .chain(inner.steps())
            .chain(std::iter::once(Step::R))
            .chain(rest.steps())
            .collect();
        Self::from_steps_unchecked(&steps)
    }

    /// Every Dyck path of semilength `n`, built by first-return composition.
    pub fn all(n: usize) -> Vec<DyckPath> {
        let mut by_size: Vec<Vec<DyckPath>> = vec![vec![DyckPath::empty()]];
        for m in 1..=n {
            let mut level = Vec::new();
            for k in 1..=m {
                for inner in &by_size[k - 1] {
                    for rest in &by_size[m - k] {
                        level.push(Self::compose(inner, rest));
                    }
                }
            }
            by_size.push(level);
        }
        by_size.swap_remove(n)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.steps() {
            f.write_str(if s == Step::D { "D" } else { "R" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath({self})")
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'D' => Ok(Step::D),
                'R' => Ok(Step::R),
                other => Err(Error::Parse(format!("bad path step `{other}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(&steps).map_err(|e| match e {
            Error::InvalidInput(m) => Error::Parse(format!("`{s}`: {m}")),
            other => other,
        })
    }
}

/// First return, area, coarea, and the number of peaks on each diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStats {
    /// Smallest `i > 0` with the path through `(i,i)`; 0 for the empty path.
    pub ret: usize,
    pub area: usize,
    pub coarea: usize,
    pub diag_peaks: BTreeMap<usize, usize>,
}

impl PathStats {
    pub fn peak_count(&self) -> usize {
        self.diag_peaks.values().sum()
    }
}

fn shading_path(sigma: &Permutation) -> DyckPath {
    let n = sigma.len();
    let mut min = u32::MAX;
    let depths: Vec<usize> = sigma
        .one_line()
        .into_iter()
        .map(|v| {
            min = min.min(v);
            n + 1 - min as usize
        })
        .collect();
    DyckPath::from_depths(&depths).expect("prefix minima always give a Dyck path")
}

fn require_avoids(sigma: &Permutation, pattern: &str) -> Result<()> {
    let set = PatternSet::parse(&[pattern]).expect("static pattern");
    if !sigma.avoids(&set) {
        return invalid(format!("{sigma} contains {pattern}"));
    }
    Ok(())
}

/// The bijection `S_n(132) → D_n`: boundary of the north-east shading.
pub fn phi(sigma: &Permutation) -> Result<DyckPath> {
    require_avoids(sigma, "132")?;
    Ok(shading_path(sigma))
}

/// The bijection `S_n(123) → D_n`, built by the same shading.
pub fn psi(sigma: &Permutation) -> Result<DyckPath> {
    require_avoids(sigma, "123")?;
    Ok(shading_path(sigma))
}

/// Peaks fix the left-to-right minima; `pick` chooses the value for each other
/// position given the current minimum and the unused values (ascending).
fn invert_shading(path: &DyckPath, pick: impl Fn(u32, &[u32]) -> usize) -> Permutation {
    let n = path.size();
    let depths = path.depths();
    let minima: Vec<u32> = depths.iter().map(|&d| (n + 1 - d) as u32).collect();
    let mut is_peak = vec![false; n];
    let mut prev = 0;
    for (c, &d) in depths.iter().enumerate() {
        is_peak[c] = d > prev;
        prev = d;
    }
    let mut unused: Vec<u32> = (1..=n as u32)
        .filter(|v| !is_peak.iter().zip(&minima).any(|(&p, m)| p && m == v))
        .collect();
    let mut out = Vec::with_capacity(n);
    for c in 0..n {
        if is_peak[c] {
            out.push(minima[c]);
        } else {
            let i = pick(minima[c], &unused);
            out.push(unused.remove(i));
        }
    }
    Permutation::new(out).expect("shading inverse yields a permutation")
}

/// Inverse of [`phi`]: each non-minimum takes the smallest unused value above the
/// current minimum, so each horizontal segment reads as a consecutive increasing run.
pub fn phi_inv(path: &DyckPath) -> Permutation {
    invert_shading(path, |min, unused| {
        unused
            .iter()
            .position(|&v| v > min)
            .expect("a Dyck path leaves a larger value available")
    })
}

/// Inverse of [`psi`]: each non-minimum takes the largest unused value.
pub fn psi_inv(path: &DyckPath) -> Permutation {
    invert_shading(path, |_, unused| unused.len() - 1)
}
