use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::real::{characteristic_polynomial, solve_real_root, RealEnclosure};
use crate::error::{Error, Result};

/// Largest `m` [`solve_all_roots`] accepts by default.
pub const DEFAULT_ROOT_CAP: usize = 12;

const MAX_ITERATIONS: usize = 500;
const DOMINANCE_MARGIN: f64 = 1e-6;

/// Horner evaluation of `p` and `p'` at `z` (ascending coefficients).
fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `coeffs` (ascending, non-zero leading coefficient) by
/// Aberth–Ehrlich simultaneous iteration, each then polished by a few Newton
/// steps.
pub fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    if degree == 0 || coeffs[degree] == 0.0 {
        return Err(Error::InvalidParameter(
            "polynomial must have positive degree".into(),
        ));
    }
    // Cauchy bound on the root moduli
    let bound = 1.0
        + coeffs[..degree]
            .iter()
            .map(|c| (c / coeffs[degree]).abs())
            .fold(0.0, f64::max);
    let radius = 0.5 * bound;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for k in 0..degree {
            let (p, dp) = eval_with_derivative(coeffs, z[k]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "Aberth iteration exceeded {MAX_ITERATIONS} sweeps"
        )));
    }
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(coeffs, *root);
            if dp.norm() > 0.0 {
                *root -= p / dp;
            }
        }
    }
    Ok(z)
}

/// Degree of `gcd(p, p')` over `Q`, computed exactly. Zero means square-free.
pub fn gcd_with_derivative_degree(coeffs: &[i64]) -> usize {
    let to_q = |v: &[i64]| -> Vec<BigRational> {
        v.iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect()
    };
    let p = to_q(coeffs);
    let dp: Vec<BigRational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    let g = poly_gcd_q(trim_q(p), trim_q(dp));
    g.len().saturating_sub(1)
}

fn trim_q(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lead * c;
        }
        r.pop();
        r = trim_q(r);
    }
    r
}

fn poly_gcd_q(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    while !b.is_empty() {
        let r = poly_rem_q(&a, &b);
        a = b;
        b = r;
    }
    a
}

#[derive(Clone, Debug, Serialize)]
pub struct RootEntry {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub residual: f64,
}

impl RootEntry {
    fn new(z: Complex64, coeffs: &[f64]) -> Self {
        RootEntry {
            re: z.re,
            im: z.im,
            modulus: z.norm(),
            residual: eval_with_derivative(coeffs, z).0.norm(),
        }
    }
}

/// Root structure of `f(z) = z^{m+1} − 2z^m + 2z − 2`.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub m: usize,
    /// Certified enclosure of the real root.
    pub lambda: RealEnclosure,
    pub lambda_decimal: String,
    pub lambda_half_decimal: String,
    /// The numerically found real root.
    pub real_root: RootEntry,
    /// The remaining `m` roots.
    pub complex_roots: Vec<RootEntry>,
    pub roots_counted: usize,
    pub real_root_count: usize,
    pub max_complex_modulus: f64,
    pub max_residual: f64,
    pub square_free: bool,
    /// Every complex root is below `λ` by at least a small margin.
    pub dominant: bool,
    /// Every complex root has modulus below `3/2`.
    pub below_three_halves: bool,
    /// `2(m−1)/(m+1) < λ < 2`.
    pub interval_check: bool,
}

impl RootReport {
    pub fn passed(&self, residual_tol: f64) -> bool {
        self.square_free
            && self.dominant
            && self.below_three_halves
            && self.interval_check
            && self.real_root_count == 1
            && self.roots_counted == self.m + 1
            && self.max_residual < residual_tol
    }
}

/// [`solve_all_roots_with`] using the default cap and 30 digits for `λ`.
pub fn solve_all_roots(m: usize) -> Result<RootReport> {
    solve_all_roots_with(m, DEFAULT_ROOT_CAP, 30)
}

pub fn solve_all_roots_with(m: usize, cap: usize, digits: u32) -> Result<RootReport> {
    if m > cap {
        return Err(Error::InvalidParameter(format!(
            "m = {m} exceeds the root-finder cap {cap}"
        )));
    }
    let lambda = solve_real_root(m, digits)?;
    let exact = characteristic_polynomial(m);
    let square_free = gcd_with_derivative_degree(&exact) == 0;
    let coeffs: Vec<f64> = exact.iter().map(|&c| c as f64).collect();
    let roots = aberth(&coeffs)?;

    let lam = lambda.to_f64();
    let real_tol = 1e-8;
    let real_root_count = roots.iter().filter(|z| z.im.abs() < real_tol).count();
    let (real_idx, _) = roots
        .iter()
        .enumerate()
        .min_by(|a, b| {
            let da = (a.1 - Complex64::new(lam, 0.0)).norm();
            let db = (b.1 - Complex64::new(lam, 0.0)).norm();
            da.total_cmp(&db)
        })
        .expect("at least one root");
    let real_root = RootEntry::new(roots[real_idx], &coeffs);
    let mut complex_roots: Vec<RootEntry> = roots
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != real_idx)
        .map(|(_, &z)| RootEntry::new(z, &coeffs))
        .collect();
    // deterministic order: by modulus, then argument
    complex_roots.sort_by(|a, b| {
        a.modulus
            .total_cmp(&b.modulus)
            .then(a.im.atan2(a.re).total_cmp(&b.im.atan2(b.re)))
    });
    let max_complex_modulus = complex_roots.iter().map(|r| r.modulus).fold(0.0, f64::max);
    let max_residual = complex_roots
        .iter()
        .map(|r| r.residual)
        .fold(real_root.residual, f64::max);
    let inflection = BigRational::new(BigInt::from(2 * (m - 1)), BigInt::from(m + 1));
    let interval_check = lambda.lo > inflection && lambda.hi < BigRational::from_integer(2.into());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(RootReport {
        m,
        lambda_decimal: lambda.decimal(digits),
        lambda_half_decimal: lambda.scale(&half).decimal(digits),
        lambda,
        real_root_count,
        roots_counted: roots.len(),
        dominant: max_complex_modulus < lam - DOMINANCE_MARGIN && (real_root.re - lam).abs() < 1e-9,
        below_three_halves: max_complex_modulus < 1.5,
        real_root,
        complex_roots,
        max_complex_modulus,
        max_residual,
        square_free,
        interval_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_finds_known_roots() {
        // (z - 1)(z - 2)(z + 3) = z^3 - 7z + 6
        let mut roots = aberth(&[6.0, -7.0, 0.0, 1.0]).unwrap();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (z, want) in roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((z - Complex64::new(want, 0.0)).norm() < 1e-12);
        }
        // z^2 + 1
        let roots = aberth(&[1.0, 0.0, 1.0]).unwrap();
        assert!(roots
            .iter()
            .all(|z| (z.norm() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12));
    }

    #[test]
    fn golden_roots() {
        let r = solve_all_roots(2).unwrap();
        assert_eq!(r.complex_roots.len(), 2);
        // product of the roots is 2, so |z|^2 = 2 / λ
        let expected = (2.0 / r.lambda.to_f64()).sqrt();
        for z in &r.complex_roots {
            assert!((z.modulus - expected).abs() < 1e-12);
            assert!(z.modulus < 1.5);
        }
        assert!((r.real_root.re - 1.5436890126920764).abs() < 1e-12);
        assert!(r.passed(1e-10), "{r:?}");
    }

    #[test]
    fn dominance_for_even_m() {
        for m in [2, 4, 6, 8, 10, 12] {
            let r = solve_all_roots(m).unwrap();
            assert_eq!(r.roots_counted, m + 1);
            assert!(r.passed(1e-10), "m = {m}: {r:?}");
        }
    }

    #[test]
    fn square_free_detection() {
        assert_eq!(gcd_with_derivative_degree(&[1, -2, 1]), 1); // (x-1)^2
        assert_eq!(gcd_with_derivative_degree(&[-2, 2, -2, 1]), 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(solve_all_roots_with(14, 12, 20).is_err());
        assert!(solve_all_roots(3).is_err());
    }
}
