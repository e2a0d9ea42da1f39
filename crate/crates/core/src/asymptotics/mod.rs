//! Growth of `a_n = 2^n ‖ν^(n)‖` for even `m`.
//!
//! Three views of one sequence: the linear recurrence, the Taylor
//! coefficients of a rational generating function, and the dominant root `λ`
//! of the characteristic polynomial together with a bracket for
//! `C = lim a_n λ^{-n}`.

mod real;
mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use real::{
    characteristic_polynomial, rational_string, solve_real_root, truncated_decimal, RealEnclosure,
    MAX_DIGITS,
};
pub use roots::{
    aberth, gcd_with_derivative_degree, solve_all_roots, solve_all_roots_with, RootEntry,
    RootReport, DEFAULT_ROOT_CAP,
};

use crate::error::{Error, Result};

fn check_even(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::DegreeTooSmall(m));
    }
    if m % 2 == 1 {
        return Err(Error::OddDegree(m));
    }
    Ok(())
}

/// `a_0, …, a_N` for a fixed even `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceTable {
    m: usize,
    values: Vec<BigInt>,
}

impl RecurrenceTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Largest index `N`.
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    /// `a_n / 2^n`, the total variation of `ν^(n)`.
    pub fn normalized(&self, n: usize) -> BigRational {
        BigRational::new(self.values[n].clone(), BigInt::one() << n)
    }

    /// `Σ_k c_k a_{n+k}` for the characteristic coefficients `c`; zero for
    /// every `n ≥ 1` with `n + m + 1 ≤ N`.
    pub fn characteristic_residual(&self, n: usize) -> BigInt {
        let c = characteristic_polynomial(self.m);
        c.iter()
            .enumerate()
            .map(|(k, &ck)| &self.values[n + k] * ck)
            .sum()
    }
}

/// The exact table `a_0..=a_N`.
pub fn recurrence(m: usize, n_max: usize) -> Result<RecurrenceTable> {
    check_even(m)?;
    let mut values: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let a = if n <= m {
            BigInt::one() << n
        } else {
            (&values[n - 1] - &values[n - m] + &values[n - m - 1]) * 2
        };
        values.push(a);
    }
    Ok(RecurrenceTable { m, values })
}

/// First `n + 1` coefficients of `num / den` as power series. `den[0]` must
/// be `±1` so that the division stays in the integers.
pub fn series_divide(num: &[BigInt], den: &[BigInt], n: usize) -> Result<Vec<BigInt>> {
    let d0 = den
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty denominator".into()))?;
    if d0.abs() != BigInt::one() {
        return Err(Error::InvalidParameter(format!(
            "denominator constant term {d0} is not a unit"
        )));
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.get(k).cloned().unwrap_or_default();
        for j in 1..den.len().min(k + 1) {
            if !den[j].is_zero() {
                acc -= &den[j] * &out[k - j];
            }
        }
        out.push(acc * d0);
    }
    Ok(out)
}

/// Taylor coefficients of `(1 + 2z^m) / (1 − 2z + 2z^m − 2z^{m+1})` up to
/// `z^N`.
pub fn generating_function_coeffs(m: usize, n_max: usize) -> Result<Vec<BigInt>> {
    check_even(m)?;
    let mut num = vec![BigInt::zero(); m + 1];
    num[0] = BigInt::one();
    num[m] = BigInt::from(2);
    let mut den = vec![BigInt::zero(); m + 2];
    den[0] = BigInt::one();
    den[1] = BigInt::from(-2);
    den[m] += 2;
    den[m + 1] = BigInt::from(-2);
    series_divide(&num, &den, n_max)
}

/// Exact bracket for `C` from `a_t λ^{-t}`, `t ∈ [n − m, n]`, over every
/// `λ` in the enclosure.
pub fn ratio_bracket(table: &RecurrenceTable, lambda: &RealEnclosure, n: usize) -> RealEnclosure {
    let m = table.m;
    let start = n.saturating_sub(m);
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    let mut lo_pow = lambda.lo.pow(start as i32);
    let mut hi_pow = lambda.hi.pow(start as i32);
    for t in start..=n {
        let a = BigRational::from_integer(table.values[t].clone());
        let small = &a / &hi_pow;
        let large = &a / &lo_pow;
        if lo.as_ref().is_none_or(|l| &small < l) {
            lo = Some(small);
        }
        if hi.as_ref().is_none_or(|h| &large > h) {
            hi = Some(large);
        }
        lo_pow *= &lambda.lo;
        hi_pow *= &lambda.hi;
    }
    RealEnclosure {
        lo: lo.expect("non-empty window"),
        hi: hi.expect("non-empty window"),
    }
}

/// Numerical bracket for the constant `C` in `a_n ~ C λ^n`.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticsReport {
    pub m: usize,
    pub n_used: usize,
    pub c_estimate: f64,
    /// Outward-rounded float bracket.
    pub bracket: [f64; 2],
    pub bracket_width: f64,
    /// Bracket width at `n_used / 2`.
    pub half_width: f64,
    #[serde(skip)]
    exact: RealEnclosure,
}

impl AsymptoticsReport {
    pub fn exact_bracket(&self) -> &RealEnclosure {
        &self.exact
    }

    /// Whether the exact bracket contains `x`.
    pub fn contains(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|q| self.exact.contains(&q))
    }
}

fn outward(e: &RealEnclosure) -> [f64; 2] {
    let lo = e.lo.to_f64().unwrap_or(f64::NEG_INFINITY).next_down();
    let hi = e.hi.to_f64().unwrap_or(f64::INFINITY).next_up();
    [lo, hi]
}

/// `C_estimate = a_N λ^{-N}` at the enclosure midpoint, bracketed by the last
/// `m + 1` ratios. Fails if the bracket at `N` is wider than at `N / 2` by more
/// than the spread `a_N (lo^{-N} − hi^{-N})` due to the width of `λ`.
pub fn estimate_constant(
    table: &RecurrenceTable,
    lambda: &RealEnclosure,
) -> Result<AsymptoticsReport> {
    let m = table.m;
    if table.values.len() < 2 * m + 2 {
        return Err(Error::InvalidParameter(format!(
            "table of length {} is shorter than {}",
            table.values.len(),
            2 * m + 2
        )));
    }
    let n = table.n_max();
    let exact = ratio_bracket(table, lambda, n);
    let half = ratio_bracket(table, lambda, (n / 2).max(m));
    let width = exact.width();
    let half_width = half.width();
    let a_n = BigRational::from_integer(table.values[n].clone());
    let floor = &a_n / lambda.lo.pow(n as i32) - &a_n / lambda.hi.pow(n as i32);
    if width > &half_width + &floor {
        return Err(Error::BracketNotShrinking {
            n_early: (n / 2).max(m),
            early: half_width.to_f64().unwrap_or(f64::NAN),
            n_late: n,
            late: width.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mid = lambda.midpoint();
    let estimate = a_n / mid.pow(n as i32);
    debug_assert!(exact.contains(&estimate));
    Ok(AsymptoticsReport {
        m,
        n_used: n,
        c_estimate: estimate.to_f64().unwrap_or(f64::NAN),
        bracket: outward(&exact),
        bracket_width: width.to_f64().unwrap_or(f64::NAN).next_up(),
        half_width: half_width.to_f64().unwrap_or(f64::NAN),
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_table() {
        let t = recurrence(2, 14).unwrap();
        assert_eq!(
            t.values(),
            ints(&[1, 2, 4, 6, 8, 12, 20, 32, 48, 72, 112, 176, 272, 416, 640]).as_slice()
        );
        assert_eq!(t.normalized(10), BigRational::new(112.into(), 1024.into()));
    }

    #[test]
    fn quartic_table() {
        let t = recurrence(4, 5).unwrap();
        assert_eq!(t.values(), ints(&[1, 2, 4, 8, 16, 30]).as_slice());
    }

    #[test]
    fn initial_segment_is_powers_of_two() {
        for m in [2, 4, 6, 8, 10] {
            let t = recurrence(m, m).unwrap();
            for n in 0..=m {
                assert_eq!(t.values()[n], BigInt::one() << n);
            }
        }
    }

    #[test]
    fn odd_m_rejected() {
        assert_eq!(recurrence(3, 10).unwrap_err(), Error::OddDegree(3));
        assert_eq!(
            generating_function_coeffs(5, 10).unwrap_err(),
            Error::OddDegree(5)
        );
    }

    #[test]
    fn generating_function_matches() {
        assert_eq!(
            generating_function_coeffs(2, 5).unwrap(),
            ints(&[1, 2, 4, 6, 8, 12])
        );
        for m in [2, 4, 6] {
            let gf = generating_function_coeffs(m, 120).unwrap();
            assert_eq!(gf, recurrence(m, 120).unwrap().values());
        }
    }

    #[test]
    fn series_divide_rejects_non_unit() {
        assert!(series_divide(&ints(&[1]), &ints(&[2, 1]), 3).is_err());
        // 1 / (1 - z) = 1 + z + z^2 + ...
        assert_eq!(
            series_divide(&ints(&[1]), &ints(&[1, -1]), 3).unwrap(),
            ints(&[1, 1, 1, 1])
        );
        // 1 / (-1 + z) = -1 - z - ...
        assert_eq!(
            series_divide(&ints(&[1]), &ints(&[-1, 1]), 2).unwrap(),
            ints(&[-1, -1, -1])
        );
    }

    #[test]
    fn golden_constant_bracket() {
        let lam = solve_real_root(2, 30).unwrap();
        let r40 = estimate_constant(&recurrence(2, 40).unwrap(), &lam).unwrap();
        let r80 = estimate_constant(&recurrence(2, 80).unwrap(), &lam).unwrap();
        assert!(r80.bracket_width < 1e-6);
        assert!(r40.contains(r80.c_estimate));
        assert!(r40.bracket[0] <= r40.c_estimate && r40.c_estimate <= r40.bracket[1]);
        assert!((r80.c_estimate - 1.47367968929).abs() < 1e-9);
        assert!((r40.bracket[0] - 1.4736791).abs() < 1e-6);
        assert!((r40.bracket[1] - 1.4736829).abs() < 1e-6);
    }

    #[test]
    fn constant_stable_across_precisions() {
        let t = recurrence(2, 60).unwrap();
        let coarse = estimate_constant(&t, &solve_real_root(2, 30).unwrap()).unwrap();
        let fine = estimate_constant(&t, &solve_real_root(2, 60).unwrap()).unwrap();
        assert!((coarse.c_estimate - fine.c_estimate).abs() <= coarse.bracket_width + 1e-25);
        assert!(coarse
            .exact_bracket()
            .contains_enclosure(fine.exact_bracket()));
    }

    #[test]
    fn short_table_rejected() {
        let lam = solve_real_root(4, 20).unwrap();
        assert!(estimate_constant(&recurrence(4, 8).unwrap(), &lam).is_err());
    }

    #[test]
    fn bracket_shrinks_for_even_m() {
        for m in [2, 4, 6, 8] {
            let lam = solve_real_root(m, 40).unwrap();
            let r = estimate_constant(&recurrence(m, 20 * m).unwrap(), &lam).unwrap();
            assert!(r.c_estimate > 0.0);
            assert!(r.bracket_width < r.half_width, "m = {m}");
            // far past the precision of λ the check still passes
            let r = estimate_constant(
                &recurrence(m, 400).unwrap(),
                &solve_real_root(m, 20).unwrap(),
            );
            assert!(r.is_ok(), "m = {m}: {r:?}");
        }
    }

    proptest! {
        #[test]
        fn characteristic_polynomial_annihilates_tail(m in (1usize..=5).prop_map(|k| 2 * k), n in 1usize..60) {
            let t = recurrence(m, n + m + 1).unwrap();
            prop_assert!(t.characteristic_residual(n).is_zero());
        }

        #[test]
        fn sequence_positive_and_at_most_doubling(m in (1usize..=4).prop_map(|k| 2 * k), n in 0usize..150) {
            let t = recurrence(m, n + 1).unwrap();
            let v = t.values();
            prop_assert!(v[n].is_positive());
            prop_assert!(v[n + 1] <= &v[n] * 2);
        }
    }
}
