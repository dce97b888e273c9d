//! Total occurrence counts of a pattern summed over an avoidance class.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{invalid, Result};
use crate::family::FamilyTable;
use crate::oracle::{brute_gf, GfSpec};
use crate::par::Parallelism;
use crate::perm::{PatternSet, Permutation};
use crate::poly::SeriesZ;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AvoidClass {
    Av132,
    Av123,
}

impl AvoidClass {
    pub fn pattern(self) -> &'static str {
        match self {
            AvoidClass::Av132 => "132",
            AvoidClass::Av123 => "123",
        }
    }
}

impl fmt::Display for AvoidClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Av({})", self.pattern())
    }
}

/// Coefficient `n` is the number of occurrences of `pattern` summed over the
/// class at size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopularitySeries {
    pub pattern: Permutation,
    pub class: AvoidClass,
    pub series: SeriesZ,
    /// Set for closed forms that disagree with enumeration.
    pub disputed: bool,
}

impl PopularitySeries {
    fn new(pattern: Permutation, class: AvoidClass, series: SeriesZ) -> Self {
        Self {
            pattern,
            class,
            series,
            disputed: false,
        }
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.series.coeff(n)
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }
}

fn catalan_pieces(order: usize) -> (SeriesZ, SeriesZ, SeriesZ) {
    let c = SeriesZ::catalan(order);
    let tc = c.shift(1);
    let one_minus = SeriesZ::one(order).sub(&tc.scale(2));
    (c, tc, one_minus)
}

/// Occurrences of 12 over `S_n(132)`: `t²C³ / (1 − 2tC)²`.
pub fn f12(order: usize) -> PopularitySeries {
    let (c, _, one_minus) = catalan_pieces(order);
    let series = c
        .pow(3)
        .shift(2)
        .div(&one_minus.pow(2))
        .expect("unit constant term");
    PopularitySeries::new(Permutation::identity(2), AvoidClass::Av132, series)
}

/// Occurrences of `12⋯m` over `S_n(132)`, stepping up from `f12`.
pub fn f_incr(order: usize, m: usize) -> Result<PopularitySeries> {
    if m < 2 {
        return invalid(format!("pattern length must be at least 2, got {m}"));
    }
    let (_, tc, one_minus) = catalan_pieces(order);
    let mut series = f12(order).series;
    for _ in 3..=m {
        series = tc.mul(&series).div(&one_minus)?;
    }
    Ok(PopularitySeries::new(
        Permutation::identity(m),
        AvoidClass::Av132,
        series,
    ))
}

/// `1 m (m-1) ⋯ 2`
pub fn descending_tail(m: usize) -> Permutation {
    let mut v = vec![1u32];
    v.extend((2..=m as u32).rev());
    Permutation::new(v).expect("valid pattern")
}

/// Occurrences of `1m⋯2` over `S_n(123)`, one step up from the series for
/// `1(m-1)⋯2`.
pub fn g_desc(order: usize, m: usize, seed: &PopularitySeries) -> Result<PopularitySeries> {
    if m < 3 {
        return invalid(format!("pattern length must be at least 3, got {m}"));
    }
    if seed.class != AvoidClass::Av123 || seed.pattern != descending_tail(m - 1) {
        return invalid(format!(
            "seed must count {} over Av(123), got {} over {}",
            descending_tail(m - 1),
            seed.pattern,
            seed.class
        ));
    }
    let order = order.min(seed.order());
    let (_, tc, one_minus) = catalan_pieces(order);
    let series = tc.mul(&seed.series).div(&one_minus)?;
    Ok(PopularitySeries::new(
        descending_tail(m),
        AvoidClass::Av123,
        series,
    ))
}

/// Occurrences of 12 over `S_n(123)` by enumeration.
pub fn g12_oracle(order: usize, mode: Parallelism) -> Result<PopularitySeries> {
    oracle_popularity(order, &Permutation::identity(2), AvoidClass::Av123, mode)
}

/// The closed form `tC² / (1 − 2tC)`, kept for comparison with
/// [`g12_oracle`]; it does not match enumeration.
pub fn g12_printed(order: usize) -> PopularitySeries {
    let (c, _, one_minus) = catalan_pieces(order);
    let series = c
        .pow(2)
        .shift(1)
        .div(&one_minus)
        .expect("unit constant term");
    PopularitySeries {
        disputed: true,
        ..PopularitySeries::new(Permutation::identity(2), AvoidClass::Av123, series)
    }
}

/// Occurrence totals for any pattern by enumerating the class.
pub fn oracle_popularity(
    order: usize,
    pattern: &Permutation,
    class: AvoidClass,
    mode: Parallelism,
) -> Result<PopularitySeries> {
    let avoid = PatternSet::parse(&[class.pattern()])?;
    let track = PatternSet::single(pattern.clone());
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let gf = brute_gf(&GfSpec::new(n, avoid.clone(), track.clone()), mode)?;
        coeffs.push(gf.derivative_at_ones(0)?);
    }
    Ok(PopularitySeries::new(
        pattern.clone(),
        class,
        SeriesZ::from_coeffs(order, coeffs),
    ))
}

/// Derivative in `var` at the all-ones point of every table entry.
pub fn popularity_from_table(table: &FamilyTable, var: &str) -> Result<SeriesZ> {
    let v = table.var_index(var)?;
    let coeffs = table
        .entries()
        .iter()
        .map(|e| e.derivative_at_ones(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesZ::from_coeffs(table.n_max(), coeffs))
}

/// `pattern,class,n,count` rows, one per coefficient.
pub fn to_csv(series: &[PopularitySeries]) -> String {
    let mut out = String::from("pattern,class,n,count\n");
    for s in series {
        for (n, c) in s.series.coeffs().iter().enumerate() {
            out.push_str(&format!("{},{},{n},{c}\n", s.pattern, s.class.pattern()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &SeriesZ) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn f12_values() {
        assert_eq!(ints(&f12(4).series), [0, 0, 1, 7, 37]);
    }

    #[test]
    fn f_incr_values() {
        let f3 = f_incr(4, 3).unwrap();
        assert_eq!(f3.coeff(3), 1.into());
        assert_eq!(f3.coeff(4), 10.into());
        assert_eq!(f_incr(4, 4).unwrap().coeff(4), 1.into());
        assert_eq!(f_incr(6, 2).unwrap(), f12(6));
    }

    #[test]
    fn g_desc_from_oracle_seed() {
        let seed = g12_oracle(6, Parallelism::Sequential).unwrap();
        assert_eq!(ints(&seed.series), [0, 0, 1, 6, 29, 130, 562]);
        let g3 = g_desc(6, 3, &seed).unwrap();
        assert_eq!(g3.coeff(2), 0.into());
        assert_eq!(g3.coeff(3), 1.into());
        assert_eq!(g3.coeff(4), 9.into());
        assert!(g_desc(6, 4, &seed).is_err());
    }

    #[test]
    fn printed_g12_differs() {
        let printed = g12_printed(4);
        assert!(printed.disputed);
        assert_eq!(printed.coeff(1), 1.into());
        assert_eq!(printed.coeff(2), 4.into());
        assert_eq!(printed.coeff(3), 15.into());
    }

    #[test]
    fn csv_rows() {
        let csv = to_csv(&[f12(3)]);
        assert_eq!(
            csv,
            "pattern,class,n,count\n12,132,0,0\n12,132,1,0\n12,132,2,1\n12,132,3,7\n"
        );
    }
}
