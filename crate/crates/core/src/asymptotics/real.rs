use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest decimal precision [`solve_real_root`] accepts.
pub const MAX_DIGITS: u32 = 4000;

/// A real number known to lie in `[lo, hi]`, both exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealEnclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `other ⊆ self`.
    pub fn contains_enclosure(&self, other: &RealEnclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn scale(&self, factor: &BigRational) -> RealEnclosure {
        assert!(factor.is_positive());
        RealEnclosure {
            lo: &self.lo * factor,
            hi: &self.hi * factor,
        }
    }

    /// The lower endpoint truncated to `digits` decimals.
    pub fn decimal(&self, digits: u32) -> String {
        truncated_decimal(&self.lo, digits)
    }
}

impl Serialize for RealEnclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RealEnclosure", 2)?;
        st.serialize_field("lo", &rational_string(&self.lo))?;
        st.serialize_field("hi", &rational_string(&self.hi))?;
        st.end()
    }
}

/// `"p/q"`, always with an explicit denominator.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Decimal expansion of `x` truncated (towards −∞) to `digits` places.
pub fn truncated_decimal(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (x * BigRational::from_integer(scale.clone()))
        .floor()
        .to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let (int, frac) = scaled.abs().div_mod_floor(&scale);
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!(
        "{sign}{int}.{:0>width$}",
        frac.to_string(),
        width = digits as usize
    )
}

/// `f(x) = x^{m+1} − 2x^m + 2x − 2`, the characteristic polynomial of the
/// total-variation recurrence, ascending coefficients.
pub fn characteristic_polynomial(m: usize) -> Vec<i64> {
    let mut c = vec![0i64; m + 2];
    c[0] = -2;
    c[1] += 2;
    c[m] += -2;
    c[m + 1] += 1;
    c
}

/// Sign of `Σ c_i x^i` at `x = num / 2^bits`, computed exactly.
fn sign_at_dyadic(coeffs: &[i64], num: &BigInt, bits: u32) -> i32 {
    let d = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            acc += (&pow * c) << (bits as usize * (d - i));
        }
        pow *= num;
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

/// Certified enclosure, of width below `10^-digits`, of the real root `λ` in
/// `(1, 2)` of `x^{m+1} = 2x^m − 2x + 2`, found by bisection.
///
/// `f(1) = −1 < 0` and `f(2) = 2 > 0`. The root must also exceed
/// `2(m−1)/(m+1)`, the inflection point of `f`; a root found below it is
/// reported as an error.
pub fn solve_real_root(m: usize, digits: u32) -> Result<RealEnclosure> {
    if m < 2 {
        return Err(Error::DegreeTooSmall(m));
    }
    if m % 2 == 1 {
        return Err(Error::OddDegree(m));
    }
    if digits > MAX_DIGITS {
        return Err(Error::PrecisionUnachievable(digits));
    }
    let f = characteristic_polynomial(m);
    let target = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
    // [num / 2^bits, (num + 1) / 2^bits]
    let mut num = BigInt::one();
    let mut bits = 0u32;
    let budget = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 4;
    while BigRational::new(BigInt::one(), BigInt::one() << bits) >= target {
        if bits > budget {
            return Err(Error::PrecisionUnachievable(digits));
        }
        let mid = (&num << 1) + 1;
        bits += 1;
        match sign_at_dyadic(&f, &mid, bits) {
            s if s < 0 => num = mid,
            s if s > 0 => num = mid - 1,
            _ => {
                // exact dyadic root; never happens for these polynomials
                return Ok(RealEnclosure {
                    lo: BigRational::new(mid.clone(), BigInt::one() << bits),
                    hi: BigRational::new(mid, BigInt::one() << bits),
                });
            }
        }
    }
    let enc = RealEnclosure {
        lo: BigRational::new(num.clone(), BigInt::one() << bits),
        hi: BigRational::new(num + 1, BigInt::one() << bits),
    };
    let inflection = BigRational::new(BigInt::from(2 * (m - 1)), BigInt::from(m + 1));
    if enc.hi <= inflection {
        return Err(Error::NoConvergence(format!(
            "root enclosure {} lies below the inflection point {}",
            enc.decimal(12),
            rational_string(&inflection)
        )));
    }
    Ok(enc)
}
