//! Sparse multivariate Laurent polynomials with big-integer coefficients.
//!
//! Terms live in a sorted map keyed by exponent vector under graded
//! lexicographic order; canonical iteration (and every serialized form) is
//! descending in that order. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::par::{self, Parallelism};

pub type Exponent = i32;

/// An exponent vector, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: i64,
    exps: Box<[Exponent]>,
}

impl Monomial {
    pub fn new(exps: Vec<Exponent>) -> Self {
        let degree = exps.iter().map(|&e| e as i64).sum();
        Self {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::new(vec![0; arity])
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    fn checked_add(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("monomial product")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::new(exps))
    }
}

/// A sparse Laurent polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigInt::one())
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(arity, vec![0; arity], c).expect("constant has matching arity")
    }

    /// `c · Π vᵢ^{eᵢ}`
    pub fn monomial(arity: usize, exps: Vec<Exponent>, c: impl Into<BigInt>) -> Result<Self> {
        if exps.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: exps.len(),
            });
        }
        let mut p = Self::zero(arity);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial::new(exps), c);
        }
        Ok(p)
    }

    /// The single variable `v_index`.
    pub fn var(arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return invalid(format!(
                "variable index {index} out of range for arity {arity}"
            ));
        }
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Self::monomial(arity, exps, 1)
    }

    /// Builds a polynomial from raw terms, summing repeats and dropping zeros.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Exponent>, BigInt)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: e.len(),
                });
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded-lex descending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter().rev()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &MultiPoly) -> Result<()> {
        self.check_arity(other)?;
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.mul_with(other, Parallelism::Sequential)
    }

    /// Product; in parallel mode the left operand is split into blocks whose partial
    /// products are merged in block order.
    pub fn mul_with(&self, other: &MultiPoly, mode: Parallelism) -> Result<MultiPoly> {
        self.check_arity(other)?;
        const BLOCK: usize = 64;
        let lhs: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        if !mode.is_parallel() || lhs.len() * other.terms.len() < 4 * BLOCK * BLOCK {
            return self.mul_block(&lhs, other);
        }
        let blocks: Vec<&[(&Monomial, &BigInt)]> = lhs.chunks(BLOCK).collect();
        let partials = par::map_collect(mode, &blocks, |b| self.mul_block(b, other));
        let mut out = MultiPoly::zero(self.arity);
        for p in partials {
            out.add_assign(&p?)?;
        }
        Ok(out)
    }

    fn mul_block(&self, lhs: &[(&Monomial, &BigInt)], other: &MultiPoly) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.arity);
        for (ma, ca) in lhs {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_add(mb)?, *ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by `coeff · Π vᵢ^{monoᵢ}`.
    pub fn scale_monomial(&self, mono: &[Exponent], coeff: impl Into<BigInt>) -> Result<MultiPoly> {
        if mono.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: mono.len(),
            });
        }
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Ok(MultiPoly::zero(self.arity));
        }
        let shift = Monomial::new(mono.to_vec());
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            // a monomial shift is injective, so no merging is needed
            out.terms.insert(m.checked_add(&shift)?, c * &coeff);
        }
        Ok(out)
    }

    /// Replaces every variable by its image monomial.
    pub fn substitute(&self, s: &Substitution) -> Result<MultiPoly> {
        if s.images.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: s.images.len(),
                found: self.arity,
            });
        }
        let target = s.target_arity;
        let mut out = MultiPoly::zero(target);
        let mut exps = vec![0 as Exponent; target];
        for (m, c) in &self.terms {
            exps.iter_mut().for_each(|e| *e = 0);
            for (&e, image) in m.exps.iter().zip(&s.images) {
                if e == 0 {
                    continue;
                }
                for (acc, &x) in exps.iter_mut().zip(image) {
                    let term = x.checked_mul(e).ok_or(Error::Overflow("substitution"))?;
                    *acc = acc
                        .checked_add(term)
                        .ok_or(Error::Overflow("substitution"))?;
                }
            }
            out.add_term(Monomial::new(exps.clone()), c.clone());
        }
        Ok(out)
    }

    /// Value at the all-ones point (sum of coefficients).
    pub fn eval_all_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn coefficient(&self, exps: &[Exponent]) -> BigInt {
        if exps.len() != self.arity {
            return BigInt::zero();
        }
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Sets the listed variables to 1 and drops them; the remaining variables keep
    /// their relative order.
    pub fn specialize(&self, to_one: &[usize]) -> Result<MultiPoly> {
        if let Some(&bad) = to_one.iter().find(|&&v| v >= self.arity) {
            return invalid(format!(
                "variable index {bad} out of range for arity {}",
                self.arity
            ));
        }
        let keep: Vec<usize> = (0..self.arity).filter(|v| !to_one.contains(v)).collect();
        self.restrict(&keep)
    }

    /// Keeps only the listed variables, in the listed order; all others are set to 1.
    pub fn restrict(&self, keep: &[usize]) -> Result<MultiPoly> {
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.arity) {
            return invalid(format!(
                "variable index {bad} out of range for arity {}",
                self.arity
            ));
        }
        let mut out = MultiPoly::zero(keep.len());
        for (m, c) in &self.terms {
            let exps = keep.iter().map(|&v| m.exps[v]).collect();
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Formal partial derivative in `var` evaluated at the all-ones point.
    pub fn derivative_at_ones(&self, var: usize) -> Result<BigInt> {
        if var >= self.arity {
            return invalid(format!(
                "variable index {var} out of range for arity {}",
                self.arity
            ));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| c * BigInt::from(m.exps[var]))
            .sum())
    }

    /// `true` when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.exps.iter().all(|&e| e >= 0))
    }

    /// Largest exponent of `var` over all terms (`None` for the zero polynomial).
    pub fn max_exponent(&self, var: usize) -> Option<Exponent> {
        self.terms.keys().map(|m| m.exps[var]).max()
    }

    /// Canonical text with the given variable names, e.g. `x1^3*x3 + 2*x2`.
    pub fn to_text(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.arity, "one name per variable");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in names.iter().zip(m.exps.iter()) {
                match e {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(out, "{abs}").unwrap();
            } else {
                if !abs.is_one() {
                    write!(out, "{abs}*").unwrap();
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses the canonical text form (any term order is accepted).
    pub fn parse_text(names: &[&str], text: &str) -> Result<MultiPoly> {
        let arity = names.len();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = MultiPoly::zero(arity);
        for (sign, body) in split_signed_terms(&compact)? {
            let mut coeff = BigInt::one();
            let mut exps = vec![0 as Exponent; arity];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{body}`")));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().unwrap();
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<Exponent>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let v = names
                    .iter()
                    .position(|&n| n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                exps[v] = exps[v].checked_add(e).ok_or(Error::Overflow("parsing"))?;
            }
            if sign < 0 {
                coeff = -coeff;
            }
            out.add_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            arity: self.arity,
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    e: m.exps.to_vec(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<MultiPoly> {
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let c =
                    t.c.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.c)))?;
                Ok((t.e.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(json.arity, terms)
    }
}

fn split_signed_terms(s: &str) -> Result<Vec<(i32, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut sign = 1;
    if let Some(&b) = bytes.first() {
        if b == b'-' || b == b'+' {
            sign = if b == b'-' { -1 } else { 1 };
            start = 1;
        }
    }
    let mut i = start;
    while i < bytes.len() {
        let b = bytes[i];
        // a sign right after `^` belongs to the exponent
        if (b == b'+' || b == b'-') && i > start && bytes[i - 1] != b'^' {
            out.push((sign, &s[start..i]));
            sign = if b == b'-' { -1 } else { 1 };
            start = i + 1;
        }
        i += 1;
    }
    out.push((sign, &s[start..]));
    if out.iter().any(|(_, t)| t.is_empty()) {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    Ok(out)
}

/// JSON form: `{"arity":k,"terms":[{"e":[…],"c":"decimal"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<Exponent>,
    pub c: String,
}

/// A monomial substitution: variable `i` of the source maps to the monomial with
/// exponent row `images[i]` over the target variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    target_arity: usize,
    images: Vec<Vec<Exponent>>,
}

impl Substitution {
    pub fn identity(arity: usize) -> Self {
        let images = (0..arity)
            .map(|i| {
                let mut row = vec![0; arity];
                row[i] = 1;
                row
            })
            .collect();
        Self {
            target_arity: arity,
            images,
        }
    }

    pub fn new(target_arity: usize, images: Vec<Vec<Exponent>>) -> Result<Self> {
        if let Some(row) = images.iter().find(|r| r.len() != target_arity) {
            return Err(Error::ArityMismatch {
                expected: target_arity,
                found: row.len(),
            });
        }
        Ok(Self {
            target_arity,
            images,
        })
    }

    /// Replaces the image of `var`.
    pub fn with(mut self, var: usize, image: Vec<Exponent>) -> Self {
        assert_eq!(image.len(), self.target_arity, "image has the target arity");
        self.images[var] = image;
        self
    }

    /// Multiplies the image of `var` by `target_var^power`.
    pub fn times(mut self, var: usize, target_var: usize, power: Exponent) -> Self {
        self.images[var][target_var] += power;
        self
    }

    pub fn images(&self) -> &[Vec<Exponent>] {
        &self.images
    }
}

/// A power series in `t` truncated after `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesZ {
    coeffs: Vec<BigInt>,
}

impl SeriesZ {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 1)
    }

    /// `c · t^k` (zero when `k > order`).
    pub fn monomial(order: usize, k: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c.into();
        }
        s
    }

    /// Pads or truncates to `order`.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigInt) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Catalan numbers through `t^order` by the convolution recurrence.
    pub fn catalan(order: usize) -> Self {
        let mut c: Vec<BigInt> = Vec::with_capacity(order + 1);
        c.push(BigInt::one());
        for n in 1..=order {
            let v = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
            c.push(v);
        }
        Self { coeffs: c }
    }

    fn common_order(&self, other: &SeriesZ) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &SeriesZ) -> SeriesZ {
        let order = self.common_order(other);
        Self::from_fn(order, |n| &self.coeffs[n] + &other.coeffs[n])
    }

    pub fn sub(&self, other: &SeriesZ) -> SeriesZ {
        let order = self.common_order(other);
        Self::from_fn(order, |n| &self.coeffs[n] - &other.coeffs[n])
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> SeriesZ {
        let c = c.into();
        Self::from_fn(self.order(), |n| &self.coeffs[n] * &c)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> SeriesZ {
        Self::from_fn(self.order(), |n| {
            if n >= k {
                self.coeffs[n - k].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn mul(&self, other: &SeriesZ) -> SeriesZ {
        let order = self.common_order(other);
        Self::from_fn(order, |n| {
            (0..=n)
                .map(|i| &self.coeffs[i] * &other.coeffs[n - i])
                .sum()
        })
    }

    /// `self / divisor`; the divisor must have constant term ±1.
    pub fn div(&self, divisor: &SeriesZ) -> Result<SeriesZ> {
        let b0 = &divisor.coeffs[0];
        if !(b0.is_one() || (-b0).is_one()) {
            return invalid(format!("series divisor has non-unit constant term {b0}"));
        }
        let order = self.common_order(divisor);
        let mut q: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut r = self.coeffs[n].clone();
            for i in 1..=n {
                r -= &divisor.coeffs[i] * &q[n - i];
            }
            // exact since b0 = ±1
            q.push(r * b0);
        }
        Ok(Self { coeffs: q })
    }

    pub fn pow(&self, k: u32) -> SeriesZ {
        (0..k).fold(SeriesZ::one(self.order()), |acc, _| acc.mul(self))
    }
}
