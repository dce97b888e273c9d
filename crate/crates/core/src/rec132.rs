//! Recursion families over `S_n(132)`.
//!
//! Every nonempty 132-avoider splits around its maximum as `A n B` with every
//! entry of `A` above every entry of `B`. The tables below sum over the position
//! `k` of the maximum; substitutions account for occurrences that straddle the
//! split.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::family::{binom2, exp, FamilyId, FamilyTable, Gamma3};
use crate::par::{map_collect, Parallelism};
use crate::perm::{PatternSet, Permutation};
use crate::poly::{Exponent, MultiPoly, Substitution};

/// Sums the per-`k` terms in order. Each term is computed independently.
fn sum_terms<F>(arity: usize, ks: &[usize], mode: Parallelism, term: F) -> Result<MultiPoly>
where
    F: Fn(usize) -> Result<MultiPoly> + Sync + Send,
{
    let mut total = MultiPoly::zero(arity);
    for t in map_collect(mode, ks, |&k| term(k)) {
        total.add_assign(&t?)?;
    }
    Ok(total)
}

fn ks(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// Distribution of (12, 21) over `S_n(132)`.
pub fn fh_table(n_max: usize, mode: Parallelism) -> Result<FamilyTable> {
    let mut q = vec![MultiPoly::one(2)];
    for n in 1..=n_max {
        let entry = sum_terms(2, &ks(n), mode, |k| {
            let pre = [exp(k - 1)?, exp(k * (n - k))?];
            q[k - 1].mul(&q[n - k])?.scale_monomial(&pre, 1)
        })?;
        q.push(entry);
    }
    Ok(FamilyTable::new(FamilyId::Fh, q))
}

/// Distribution of (12, 21, 123, 213, 231, 312, 321) over `S_n(132)`.
pub fn s3_table(n_max: usize, mode: Parallelism) -> Result<FamilyTable> {
    let mut q = vec![MultiPoly::one(7)];
    for n in 1..=n_max {
        let entry = sum_terms(7, &ks(n), mode, |k| {
            let r = exp(n - k)?;
            let l = exp(k)?;
            let left = Substitution::identity(7)
                .with(0, vec![1, 0, 1, 0, r, 0, 0])
                .with(1, vec![0, 1, 0, 1, 0, 0, r]);
            let right = Substitution::identity(7)
                .with(0, vec![1, 0, 0, 0, 0, l, 0])
                .with(1, vec![0, 1, 0, 0, 0, 0, l]);
            let pre = [
                exp(k - 1)?,
                exp(k * (n - k))?,
                0,
                0,
                exp((k - 1) * (n - k))?,
                0,
                0,
            ];
            q[k - 1]
                .substitute(&left)?
                .mul(&q[n - k].substitute(&right)?)?
                .scale_monomial(&pre, 1)
        })?;
        q.push(entry);
    }
    Ok(FamilyTable::new(FamilyId::S3, q))
}

/// `q` marks coinversions, `x` marks occurrences of `gamma`.
pub fn p_table(n_max: usize, gamma: Gamma3, mode: Parallelism) -> Result<FamilyTable> {
    let mut p = vec![MultiPoly::one(2)];
    for n in 1..=n_max {
        let entry = sum_terms(2, &ks(n), mode, |k| {
            let nk = (n - k) as i64;
            let k1 = (k - 1) as i64;
            let ki = k as i64;
            let q_times_x = |pow: i64| -> Result<Substitution> {
                Ok(Substitution::identity(2).with(0, vec![1, exp(pow)?]))
            };
            let id = Substitution::identity(2);
            let (x_pow, left, right) = match gamma {
                Gamma3::P123 => (0, q_times_x(1)?, id),
                Gamma3::P213 => (k1 * (k1 - 1) / 2, q_times_x(-1)?, id),
                Gamma3::P231 => (k1 * nk, q_times_x(nk)?, id),
                Gamma3::P312 => (0, id.clone(), q_times_x(ki)?),
                Gamma3::P321 => {
                    let twice = nk * (ki * n as i64 - 4 * ki + 2);
                    assert!(twice % 2 == 0, "odd 321 prefactor exponent");
                    (twice / 2, q_times_x(-nk)?, q_times_x(-ki)?)
                }
            };
            let term = p[k - 1]
                .substitute(&left)?
                .mul(&p[n - k].substitute(&right)?)?
                .scale_monomial(&[exp(k1)?, exp(x_pow)?], 1)?;
            assert!(
                term.is_polynomial(),
                "summand k={k} of n={n} for {} has a negative exponent",
                gamma.as_str()
            );
            Ok(term)
        })?;
        p.push(entry);
    }
    Ok(FamilyTable::new(FamilyId::P(gamma), p))
}

/// `x_i ↦ x_i x_{i+1}` for every variable but the last, which is fixed.
pub(crate) fn shift_up(arity: usize, first: usize) -> Substitution {
    let mut s = Substitution::identity(arity);
    for v in first..arity.saturating_sub(1) {
        s = s.times(v, v + 1, 1);
    }
    s
}

/// Distribution of (12, 123, …, 12⋯m) over `S_n(132)`, variables `x2..xm`.
pub fn incr_tower_table(n_max: usize, m: usize, mode: Parallelism) -> Result<FamilyTable> {
    if m < 2 {
        return invalid(format!("tower needs m >= 2, got {m}"));
    }
    let arity = m - 1;
    let shift = shift_up(arity, 0);
    let mut q = vec![MultiPoly::one(arity)];
    let mut shifted = vec![MultiPoly::one(arity)];
    for n in 1..=n_max {
        let entry = sum_terms(arity, &ks(n), mode, |k| {
            let mut pre = vec![0; arity];
            pre[0] = exp(k - 1)?;
            shifted[k - 1].mul(&q[n - k])?.scale_monomial(&pre, 1)
        })?;
        shifted.push(entry.substitute(&shift)?);
        q.push(entry);
    }
    Ok(FamilyTable::new(FamilyId::IncrTower(m), q))
}

/// Number of plain variables of the indexed length-four table.
pub const S4_ARITY: usize = 19;

/// `Q_{n,i}` over `S_n(132)` restricted to permutations with `i` coinversions;
/// variables `x1..x5` mark 123, 213, 231, 312, 321 and `y1..y14` mark the
/// length-four patterns 1234, 2134, 2314, 2341, 3124, 3214, 3241, 3412, 3421,
/// 4123, 4213, 4231, 4312, 4321.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S4Table {
    rows: Vec<Vec<MultiPoly>>,
}

impl S4Table {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(n, i)`; zero outside `0 ≤ i ≤ C(n,2)`.
    pub fn entry(&self, n: usize, i: i64) -> MultiPoly {
        self.get(n, i)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(S4_ARITY))
    }

    fn get(&self, n: usize, i: i64) -> Option<&MultiPoly> {
        if i < 0 {
            return None;
        }
        self.rows.get(n)?.get(i as usize)
    }

    pub fn var_names() -> Vec<String> {
        (1..=5)
            .map(|i| format!("x{i}"))
            .chain((1..=14).map(|i| format!("y{i}")))
            .collect()
    }

    /// `Σ_i x1^i x2^{C(n,2)-i} Q_{n,i}` with the inner variables moved up by two.
    pub fn assemble(&self) -> FamilyTable {
        let arity = S4_ARITY + 2;
        let embed = Substitution::new(
            arity,
            (0..S4_ARITY)
                .map(|v| {
                    let mut e = vec![0; arity];
                    e[v + 2] = 1;
                    e
                })
                .collect(),
        )
        .expect("embedding images have the target arity");
        let entries = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                let mut total = MultiPoly::zero(arity);
                for (i, e) in row.iter().enumerate() {
                    let mut pre = vec![0; arity];
                    pre[0] = i as Exponent;
                    pre[1] = (binom2(n) - i) as Exponent;
                    let term = e
                        .substitute(&embed)
                        .and_then(|p| p.scale_monomial(&pre, 1))
                        .expect("assembly exponents fit");
                    total.add_assign(&term).expect("same arity");
                }
                total
            })
            .collect();
        FamilyTable::new(FamilyId::S4, entries)
    }
}

pub fn s4_table(n_max: usize, mode: Parallelism) -> Result<S4Table> {
    const X: usize = 0;
    const Y: usize = 5;
    let mut table = S4Table {
        rows: vec![vec![MultiPoly::one(S4_ARITY)]],
    };
    for n in 1..=n_max {
        let cells: Vec<usize> = (0..=binom2(n)).collect();
        let row = map_collect(mode, &cells, |&i| -> Result<MultiPoly> {
            let mut total = MultiPoly::zero(S4_ARITY);
            for k in 1..=n {
                if i + 1 < k {
                    break;
                }
                let nk = exp(n - k)?;
                let kk = exp(k)?;
                let ck = binom2(k - 1) as i64;
                let cnk = binom2(n - k) as i64;
                let left_sub = Substitution::identity(S4_ARITY)
                    .times(X, Y, 1)
                    .times(X, Y + 3, nk)
                    .times(X + 1, Y + 1, 1)
                    .times(X + 1, Y + 6, nk)
                    .times(X + 2, Y + 2, 1)
                    .times(X + 2, Y + 8, nk)
                    .times(X + 3, Y + 4, 1)
                    .times(X + 3, Y + 11, nk)
                    .times(X + 4, Y + 5, 1)
                    .times(X + 4, Y + 13, nk);
                let right_sub = Substitution::identity(S4_ARITY)
                    .times(X, Y + 9, kk)
                    .times(X + 1, Y + 10, kk)
                    .times(X + 2, Y + 11, kk)
                    .times(X + 3, Y + 12, kk)
                    .times(X + 4, Y + 13, kk);
                for j in 0..=(i + 1 - k) {
                    let (j, rest) = (j as i64, (i + 1 - k - j) as i64);
                    let (Some(left), Some(right)) = (table.get(k - 1, j), table.get(n - k, rest))
                    else {
                        continue;
                    };
                    let (n_, k_) = ((n - k) as i64, k as i64);
                    let b = ck - j;
                    let c = cnk - rest;
                    let mut pre = vec![0i64; S4_ARITY];
                    pre[X] = j;
                    pre[X + 1] = b;
                    pre[X + 2] = n_ * (k_ + j - 1);
                    pre[X + 3] = k_ * rest;
                    pre[X + 4] = n_ * b + k_ * c;
                    pre[Y + 3] = j * n_;
                    pre[Y + 6] = b * n_;
                    pre[Y + 7] = (j + k_ - 1) * rest;
                    pre[Y + 8] = (j + k_ - 1) * c;
                    pre[Y + 12] = b * rest;
                    pre[Y + 13] = b * c;
                    let pre = pre.into_iter().map(exp).collect::<Result<Vec<_>>>()?;
                    let term = left
                        .substitute(&left_sub)?
                        .mul(&right.substitute(&right_sub)?)?
                        .scale_monomial(&pre, 1)?;
                    total.add_assign(&term)?;
                }
            }
            Ok(total)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        table.rows.push(row);
    }
    Ok(table)
}

/// Lower bound sequence for patterns with a product-form recursion, together
/// with the constructed pattern sets of each size.
#[derive(Debug, Clone)]
pub struct Census {
    pub counts: Vec<u64>,
    pub members: Vec<BTreeSet<Permutation>>,
}

impl Census {
    /// `|Γ ∩ S_n| = a_n` and every member avoids 132.
    pub fn verify(&self) -> bool {
        let p132 = PatternSet::parse(&["132"]).expect("static pattern");
        self.counts
            .iter()
            .zip(&self.members)
            .all(|(&a, set)| set.len() as u64 == a && set.iter().all(|g| g.avoids(&p132)))
    }
}

pub fn census_sequence(n_max: usize) -> Vec<u64> {
    let mut a: Vec<u64> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        a.push(match n {
            0 | 1 => 1,
            2 => 2,
            _ => a[n - 1] + 2 * a[n - 2] + a[n - 3],
        });
    }
    a
}

fn grow(sigma: &Permutation) -> [Permutation; 4] {
    let n = sigma.len() as u32;
    let base = sigma.one_line();
    let up: Vec<u32> = base.iter().map(|v| v + 1).collect();
    let build = |parts: &[&[u32]]| {
        Permutation::new(parts.concat()).expect("constructor yields a permutation")
    };
    [
        build(&[&base, &[n + 1]]),
        build(&[&[n + 2], &base, &[n + 1]]),
        build(&[&up, &[n + 2, 1]]),
        build(&[&[n + 3], &up, &[n + 2, 1]]),
    ]
}

pub fn good_recursion_census(n_max: usize) -> Census {
    let mut members = vec![BTreeSet::new(); n_max + 1];
    members[0].insert(Permutation::empty());
    for n in 0..=n_max {
        let current: Vec<Permutation> = members[n].iter().cloned().collect();
        for sigma in &current {
            for (g, add) in grow(sigma).into_iter().zip([1, 2, 2, 3]) {
                if n + add <= n_max {
                    members[n + add].insert(g);
                }
            }
        }
    }
    Census {
        counts: census_sequence(n_max),
        members,
    }
}

/// Occurrences of a 132-avoiding `gamma` in a 132-avoiding `sigma` computed
/// through the split `sigma = A n B` alone.
pub fn recursive_occurrences(sigma: &Permutation, gamma: &Permutation) -> Result<u64> {
    let p132 = PatternSet::parse(&["132"]).expect("static pattern");
    if !sigma.avoids(&p132) || !gamma.avoids(&p132) {
        return invalid("both permutations must avoid 132");
    }
    Ok(split_count(sigma, gamma))
}

fn split_count(sigma: &Permutation, gamma: &Permutation) -> u64 {
    if gamma.is_empty() {
        return 1;
    }
    if sigma.is_empty() {
        return 0;
    }
    if gamma.len() == 1 {
        return sigma.len() as u64;
    }
    let split = sigma.max_split().expect("132-avoider is nonempty");
    let g = gamma.max_split().expect("132-avoider is nonempty");
    let (a, b) = (&split.a, &split.b);
    // Inside one side, through the maximum, or straddling the split without it.
    let mut total = split_count(a, gamma) + split_count(b, gamma);
    total += split_count(a, &g.a) * split_count(b, &g.b);
    for (left, right) in gamma.skew_decompositions() {
        total += split_count(a, &left) * split_count(b, &right);
    }
    total
}
