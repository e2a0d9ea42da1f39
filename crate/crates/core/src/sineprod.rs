//! Sine products `F_n(β; ξ) = Π_{j=1}^n sin(2π β^{-j} ξ)`.
//!
//! Up to a unimodular factor `F_n` is the Fourier transform of `ν^(n)`, so
//! `sup |F_n| ≤ ‖ν^(n)‖`. [`scan`] samples `|F_n|` on a grid, refines around
//! the best sample and compares the result with the exact total variation.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic::FieldSpec;
use crate::asymptotics::rational_string;
use crate::error::{Error, Result};
use crate::measure::SignedMeasure;

/// Upper end of the default scan window.
pub const XI_CAP: f64 = 1e4;

const GOLDEN_TOLERANCE: f64 = 1e-13;

/// `min(10 β^n, 10^4)`.
pub fn default_xi_max(spec: &FieldSpec, n: usize) -> f64 {
    (10.0 * spec.beta_f64().powi(n as i32)).min(XI_CAP)
}

/// `F_n(β; ξ)` with `β` taken from the centre of the enclosure in `spec`.
pub fn eval_sine_product(spec: &FieldSpec, n: usize, xi: f64) -> f64 {
    eval_with_beta(spec.beta_f64(), n, xi)
}

fn eval_with_beta(beta: f64, n: usize, xi: f64) -> f64 {
    let inv = beta.recip();
    let mut scale = 1.0;
    let mut product = 1.0;
    for _ in 0..n {
        scale *= inv;
        product *= (TAU * scale * xi).sin();
    }
    product
}

/// `|ν̂(ξ)| = |Σ w e^{-2πi x ξ}|`, summed directly over the atoms of `ν`.
pub fn fourier_modulus(measure: &SignedMeasure, beta: f64, xi: f64) -> f64 {
    let level = measure.level();
    let unit = 0.5f64.powi(level as i32);
    let shrink = beta.powi(-(level as i32));
    let sum: Complex64 = measure
        .atoms()
        .iter()
        .map(|atom| {
            let x = atom.position.eval_f64(beta) * shrink;
            let w = atom.numerator.to_f64().unwrap_or(f64::NAN) * unit;
            Complex64::from_polar(w, -TAU * x * xi)
        })
        .sum();
    sum.norm()
}

/// Result of a grid scan of `|F_n|` over `[0, Ξ]`.
#[derive(Clone, Debug, Serialize)]
pub struct SineProductScan {
    pub m: usize,
    pub n: usize,
    pub xi_range: [f64; 2],
    pub samples: usize,
    pub max_abs: f64,
    pub argmax_xi: f64,
    /// Best value on the grid itself, before refinement.
    pub grid_max_abs: f64,
    /// `‖ν^(n)‖` as `"p/q"`.
    pub bound: String,
    pub bound_f64: f64,
    pub refined: bool,
}

fn grid_point(xi_max: f64, samples: usize, k: usize) -> f64 {
    xi_max * k as f64 / (samples - 1) as f64
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > GOLDEN_TOLERANCE * (1.0 + a.abs()) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn validate(xi_max: f64, samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    if !(xi_max.is_finite() && xi_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "xi_max must be positive, got {xi_max}"
        )));
    }
    Ok(())
}

/// Samples `|F_n|` at `samples` equally spaced points of `[0, xi_max]`,
/// refines around the best one and checks the result against `‖ν^(n)‖`.
///
/// The comparison is exact: the float maximum is converted to a rational
/// before it is compared with the bound, and any excess is an error.
pub fn scan(spec: &FieldSpec, n: usize, xi_max: f64, samples: usize) -> Result<SineProductScan> {
    validate(xi_max, samples)?;
    let bound = SignedMeasure::signed(spec, n)?.total_variation();
    scan_with_bound(spec, n, xi_max, samples, &bound)
}

/// [`scan`] against a precomputed bound.
pub fn scan_with_bound(
    spec: &FieldSpec,
    n: usize,
    xi_max: f64,
    samples: usize,
    bound: &BigRational,
) -> Result<SineProductScan> {
    validate(xi_max, samples)?;
    let beta = spec.beta_f64();
    let abs_at = |xi: f64| eval_with_beta(beta, n, xi).abs();

    // ties go to the smallest index, so the result is independent of scheduling
    let (grid_max_abs, best) = (0..samples)
        .into_par_iter()
        .map(|k| (abs_at(grid_point(xi_max, samples, k)), k))
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| {
                if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                    a
                } else {
                    b
                }
            },
        );
    let left = grid_point(xi_max, samples, best.saturating_sub(1));
    let right = grid_point(xi_max, samples, (best + 1).min(samples - 1));
    let (xi_star, refined_abs) = golden_max(abs_at, left, right);
    let refined = refined_abs > grid_max_abs;
    let (max_abs, argmax_xi) = if refined {
        (refined_abs, xi_star)
    } else {
        (grid_max_abs, grid_point(xi_max, samples, best))
    };

    let exact_max = BigRational::from_float(max_abs).expect("finite maximum");
    if &exact_max > bound || max_abs > 1.0 {
        return Err(Error::BoundViolated {
            n,
            max_abs,
            bound: rational_string(bound),
        });
    }
    Ok(SineProductScan {
        m: spec.m(),
        n,
        xi_range: [0.0, xi_max],
        samples,
        max_abs,
        argmax_xi,
        grid_max_abs,
        bound: rational_string(bound),
        bound_f64: bound.to_f64().unwrap_or(f64::NAN),
        refined,
    })
}

/// Every `stride`-th grid point with its value `F_n(ξ)`.
pub fn sample_grid(
    spec: &FieldSpec,
    n: usize,
    xi_max: f64,
    samples: usize,
    stride: usize,
) -> Result<Vec<(f64, f64)>> {
    validate(xi_max, samples)?;
    let beta = spec.beta_f64();
    let stride = stride.max(1);
    Ok((0..samples)
        .into_par_iter()
        .step_by(stride)
        .map(|k| {
            let xi = grid_point(xi_max, samples, k);
            (xi, eval_with_beta(beta, n, xi))
        })
        .collect())
}

/// Least-squares slope of `ln max|F_n|` against `n`.
#[derive(Clone, Debug, Serialize)]
pub struct DecayDiagnostic {
    pub levels: Vec<usize>,
    pub max_abs: Vec<f64>,
    pub slope: f64,
    /// `ln(λ/2)` for comparison, when supplied.
    pub reference: Option<f64>,
}

pub fn decay_slope(scans: &[SineProductScan], reference: Option<f64>) -> DecayDiagnostic {
    let xs: Vec<f64> = scans.iter().map(|s| s.n as f64).collect();
    let ys: Vec<f64> = scans.iter().map(|s| s.max_abs.ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    DecayDiagnostic {
        levels: scans.iter().map(|s| s.n).collect(),
        max_abs: scans.iter().map(|s| s.max_abs).collect(),
        slope: if sxx > 0.0 { sxy / sxx } else { f64::NAN },
        reference,
    }
}

/// Quarter period of the first factor: `F_1(β; β/4) = sin(π/2) = 1`.
pub fn first_factor_peak(spec: &FieldSpec) -> f64 {
    spec.beta_f64() / 4.0
}
