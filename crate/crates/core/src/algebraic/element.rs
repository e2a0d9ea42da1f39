use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// An element of `Z[β]`, stored as `c_0 + c_1 β + ⋯ + c_{m-1} β^{m-1}`.
///
/// The representation is canonical: every value is kept reduced modulo the
/// multinacci polynomial `x^m - x^{m-1} - ⋯ - x - 1`, so two elements are
/// equal as real numbers iff their coefficient vectors are equal. That makes
/// `Eq` and `Hash` exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<BigInt>,
}

impl FieldElement {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1, "degree must be positive");
        FieldElement {
            coeffs: vec![BigInt::zero(); m],
        }
    }

    pub fn from_int(m: usize, value: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(m);
        e.coeffs[0] = value.into();
        e
    }

    /// The generator `β` itself.
    pub fn beta(m: usize) -> Self {
        Self::beta_pow(m, 1)
    }

    /// `β^k`, reduced.
    pub fn beta_pow(m: usize, k: usize) -> Self {
        let mut e = Self::from_int(m, 1);
        for _ in 0..k {
            e = e.mul_by_beta();
        }
        e
    }

    /// Wraps an already-reduced coefficient vector of length `m`.
    ///
    /// Panics if the vector is empty. Use [`reduce`] for inputs of arbitrary
    /// degree.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "coefficient vector must be non-empty");
        FieldElement { coeffs }
    }

    /// Degree of the ambient field (the length of the coefficient vector).
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Multiplies by `β`, using `β^m = β^{m-1} + ⋯ + 1` for the carry.
    pub fn mul_by_beta(&self) -> Self {
        let m = self.coeffs.len();
        let top = &self.coeffs[m - 1];
        let mut out = Vec::with_capacity(m);
        out.push(top.clone());
        for c in &self.coeffs[..m - 1] {
            out.push(c + top);
        }
        FieldElement { coeffs: out }
    }

    /// `β·self + c`, the position update of one convolution step.
    pub fn shift_add(&self, c: i64) -> Self {
        let mut e = self.mul_by_beta();
        e.coeffs[0] += c;
        e
    }

    /// Evaluates at a floating-point approximation of `β`. Only used for
    /// reporting and plotting, never for comparisons.
    pub fn eval_f64(&self, beta: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * beta + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Largest coefficient bit length; a rough size measure.
    pub fn bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "field elements from different degrees"
        );
    }
}

/// Reduces an integer polynomial (ascending coefficients, any degree) modulo
/// the degree-`m` multinacci polynomial.
pub fn reduce(raw: &[BigInt], m: usize) -> FieldElement {
    assert!(m >= 1, "degree must be positive");
    let mut work: Vec<BigInt> = raw.to_vec();
    if work.len() < m {
        work.resize(m, BigInt::zero());
    }
    // x^d = x^{d-m} (x^{m-1} + ⋯ + 1), from the top down.
    for d in (m..work.len()).rev() {
        let c = std::mem::take(&mut work[d]);
        if c.is_zero() {
            continue;
        }
        for slot in &mut work[d - m..d] {
            *slot += &c;
        }
    }
    work.truncate(m);
    FieldElement { coeffs: work }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let one = mag == BigInt::from(1);
            match i {
                0 => write!(f, "{mag}")?,
                _ if one => write!(f, "β")?,
                _ => write!(f, "{mag}β")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        let m = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        reduce(&prod, m)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
