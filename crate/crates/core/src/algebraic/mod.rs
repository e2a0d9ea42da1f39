//! Exact arithmetic in `Z[β]` for the multinacci number `β` of degree `m`.
//!
//! `β` is the unique root in `(1, 2)` of `x^m - x^{m-1} - ⋯ - x - 1`. Elements
//! of `Z[β]` are integer coefficient vectors reduced modulo that polynomial
//! ([`FieldElement`]), and their sign is decided by evaluating them over a
//! dyadic rational enclosure of `β` ([`FieldSpec::sign`]). No floating point
//! is involved in any comparison.

mod element;
mod irreducible;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use element::{reduce, FieldElement};
pub use irreducible::certify_multinacci;

use crate::error::{Error, Result};

/// Working precision of a fresh [`FieldSpec`], in bits of `β`.
pub const DEFAULT_ENCLOSURE_BITS: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Dyadic enclosure `[num / 2^bits, (num + 1) / 2^bits]` of `β`.
///
/// The width is always exactly `2^-bits`, so bisection just appends one bit.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Enclosure {
    num: BigInt,
    bits: u32,
}

impl Enclosure {
    fn unit() -> Self {
        Enclosure {
            num: BigInt::one(),
            bits: 0,
        }
    }

    fn lo(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.bits)
    }

    fn hi(&self) -> BigRational {
        BigRational::new(&self.num + 1, BigInt::one() << self.bits)
    }

    /// Halves the enclosure, keeping the half on which the minimal polynomial
    /// changes sign.
    fn bisect(&mut self, m: usize) {
        let mid = (&self.num << 1) + 1;
        let bits = self.bits + 1;
        self.bits = bits;
        match min_poly_sign_at(m, &mid, bits) {
            Sign::Negative => self.num = mid,
            Sign::Positive => self.num = mid - 1,
            // β is irrational for m ≥ 2.
            Sign::Zero => unreachable!("multinacci polynomial vanished at a dyadic point"),
        }
    }
}

/// Sign of `x^m - x^{m-1} - ⋯ - 1` at `x = num / 2^bits`.
fn min_poly_sign_at(m: usize, num: &BigInt, bits: u32) -> Sign {
    // Scale by 2^{bits·m}: num^m - Σ_{i<m} num^i 2^{bits(m-i)}.
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for i in 0..m {
        acc -= &pow << (bits as usize * (m - i));
        pow *= num;
    }
    acc += pow;
    sign_of(&acc)
}

fn sign_of(x: &BigInt) -> Sign {
    if x.is_positive() {
        Sign::Positive
    } else if x.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// Scaled powers of both enclosure endpoints used by interval evaluation:
/// `lo_pows[i] = L^i · 2^{bits(m-1-i)}`, likewise for `H = L + 1`.
#[derive(Clone, Debug)]
struct EndpointPowers {
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

impl EndpointPowers {
    fn new(enc: &Enclosure, m: usize) -> Self {
        let scaled = |base: &BigInt| {
            let mut out = Vec::with_capacity(m);
            let mut pow = BigInt::one();
            for i in 0..m {
                out.push(&pow << (enc.bits as usize * (m - 1 - i)));
                pow *= base;
            }
            out
        };
        EndpointPowers {
            lo: scaled(&enc.num),
            hi: scaled(&(&enc.num + 1)),
        }
    }

    /// Sign of `a(β)` if the interval image over the enclosure excludes zero.
    ///
    /// All powers of `x` are increasing on `x ≥ 1`, so the lower bound takes
    /// positive coefficients at `lo` and negative ones at `hi`.
    fn try_sign(&self, a: &FieldElement) -> Option<Sign> {
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for ((c, lo), hi) in a.coeffs().iter().zip(&self.lo).zip(&self.hi) {
            if c.is_positive() {
                lower += c * lo;
                upper += c * hi;
            } else if c.is_negative() {
                lower += c * hi;
                upper += c * lo;
            }
        }
        if lower.is_positive() {
            Some(Sign::Positive)
        } else if upper.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// The multinacci field data: degree, minimal polynomial and a rigorous
/// enclosure of `β`.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    m: usize,
    min_poly: Vec<BigInt>,
    enclosure: Enclosure,
    powers: EndpointPowers,
}

impl FieldSpec {
    /// Builds the degree-`m` multinacci field with an enclosure of width
    /// `2^-128`, after certifying irreducibility of the minimal polynomial.
    pub fn new(m: usize) -> Result<Self> {
        let spec = Self::coarse(m)?;
        Ok(spec.refined_to_bits(DEFAULT_ENCLOSURE_BITS))
    }

    /// Same as [`FieldSpec::new`] but with the initial enclosure `[1, 2]`.
    pub fn coarse(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::DegreeTooSmall(m));
        }
        if certify_multinacci(m).is_none() {
            return Err(Error::NotCertifiedIrreducible(m));
        }
        let mut min_poly = vec![BigInt::from(-1); m];
        min_poly.push(BigInt::one());
        let enclosure = Enclosure::unit();
        let powers = EndpointPowers::new(&enclosure, m);
        Ok(FieldSpec {
            m,
            min_poly,
            enclosure,
            powers,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parity(&self) -> Parity {
        if self.m.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Ascending coefficients of `x^m - x^{m-1} - ⋯ - 1`.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    /// The current enclosure `[lo, hi]` of `β`.
    pub fn beta_enclosure(&self) -> (BigRational, BigRational) {
        (self.enclosure.lo(), self.enclosure.hi())
    }

    pub fn enclosure_width(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.enclosure.bits)
    }

    /// Midpoint of the enclosure as a float. For plotting and sine products.
    pub fn beta_f64(&self) -> f64 {
        let (lo, hi) = self.beta_enclosure();
        ((lo + hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .expect("enclosure midpoint is finite")
    }

    fn refined_to_bits(&self, bits: u32) -> Self {
        let mut enclosure = self.enclosure.clone();
        while enclosure.bits < bits {
            enclosure.bisect(self.m);
        }
        if enclosure == self.enclosure {
            return self.clone();
        }
        let powers = EndpointPowers::new(&enclosure, self.m);
        FieldSpec {
            m: self.m,
            min_poly: self.min_poly.clone(),
            enclosure,
            powers,
        }
    }

    /// Returns a spec whose enclosure is at most `width` wide.
    pub fn refine_enclosure(&self, width: &BigRational) -> Result<Self> {
        if !width.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "enclosure width must be positive, got {width}"
            )));
        }
        let mut bits = self.enclosure.bits;
        while BigRational::new(BigInt::one(), BigInt::one() << bits) > *width {
            bits += 1;
        }
        Ok(self.refined_to_bits(bits))
    }

    /// Element with the given ascending coefficients, reduced into this field.
    pub fn element(&self, coeffs: &[i64]) -> FieldElement {
        let raw: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        reduce(&raw, self.m)
    }

    /// Exact sign of `a(β)`.
    ///
    /// Zero exactly when every coefficient vanishes. Otherwise the element is
    /// evaluated over the enclosure; an inconclusive interval triggers
    /// bisection of a local copy of the enclosure until the sign separates.
    /// This terminates for non-zero elements because `β` has degree `m`.
    pub fn sign(&self, a: &FieldElement) -> Sign {
        assert_eq!(a.degree(), self.m, "element from a different field");
        if a.is_zero() {
            return Sign::Zero;
        }
        if let Some(s) = self.powers.try_sign(a) {
            return s;
        }
        let mut enclosure = self.enclosure.clone();
        loop {
            for _ in 0..32 {
                enclosure.bisect(self.m);
            }
            if let Some(s) = EndpointPowers::new(&enclosure, self.m).try_sign(a) {
                return s;
            }
        }
    }

    /// Exact comparison of `a(β)` and `b(β)`.
    pub fn cmp(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        self.sign(&(a - b)).to_ordering()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sign_examples_golden() {
        let spec = FieldSpec::new(2).unwrap();
        assert_eq!(spec.sign(&spec.element(&[0, 0])), Sign::Zero);
        assert_eq!(spec.sign(&spec.element(&[-1, 1])), Sign::Positive);
        assert_eq!(spec.sign(&spec.element(&[-2, 1])), Sign::Negative);
    }

    #[test]
    fn sign_works_from_coarse_enclosure() {
        let spec = FieldSpec::coarse(2).unwrap();
        // β - 1.618 > 0 and β - 1.6181 < 0 need ~14 bits.
        assert_eq!(spec.sign(&spec.element(&[-1618, 1000])), Sign::Positive);
        assert_eq!(spec.sign(&spec.element(&[-16181, 10000])), Sign::Negative);
    }

    #[test]
    fn sign_of_tiny_gap_forces_refinement() {
        // F_122 - F_121 β = ψ^121 with ψ = -1/β: negative and about 2^-84,
        // far below what the default enclosure resolves for 84-bit
        // coefficients, so the local bisection path runs.
        let spec = FieldSpec::new(2).unwrap();
        let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
        for _ in 0..120 {
            let c = &a + &b;
            a = b;
            b = c;
        }
        let e = FieldElement::from_coeffs(vec![b, -a]);
        assert!(spec.powers.try_sign(&e).is_none());
        assert_eq!(spec.sign(&e), Sign::Negative);
        assert_eq!(spec.sign(&-&e), Sign::Positive);
    }

    #[test]
    fn refine_golden_ratio() {
        let spec = FieldSpec::coarse(2).unwrap();
        let r = spec.refine_enclosure(&rat(1, 1_000_000)).unwrap();
        let (lo, hi) = r.beta_enclosure();
        assert!(&hi - &lo <= rat(1, 1_000_000));
        assert!(lo < rat(1_618_034, 1_000_000) && hi > rat(1_618_033, 1_000_000));
    }

    #[test]
    fn refine_tribonacci() {
        // bisection oracle on x^3 - x^2 - x - 1 in plain f64
        let f = |x: f64| x * x * x - x * x - x - 1.0;
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        let spec = FieldSpec::coarse(3).unwrap();
        let r = spec.refine_enclosure(&rat(1, 1_000_000)).unwrap();
        let (elo, ehi) = r.beta_enclosure();
        assert!(elo.to_f64().unwrap() <= lo && ehi.to_f64().unwrap() >= hi);
        assert!((lo - 1.839287).abs() < 1e-6);
    }

    #[test]
    fn refine_with_wide_width_is_identity() {
        let spec = FieldSpec::coarse(5).unwrap();
        let r = spec.refine_enclosure(&rat(1, 1)).unwrap();
        assert_eq!(r.beta_enclosure(), (rat(1, 1), rat(2, 1)));
        assert!(spec.refine_enclosure(&rat(0, 1)).is_err());
    }

    #[test]
    fn enclosure_brackets_root() {
        for m in 2..=8 {
            let spec = FieldSpec::new(m).unwrap();
            let (lo, hi) = spec.beta_enclosure();
            let eval = |x: &BigRational| {
                let mut acc = BigRational::zero();
                for c in spec.min_poly().iter().rev() {
                    acc = acc * x + BigRational::from_integer(c.clone());
                }
                acc
            };
            assert!(eval(&lo).is_negative() && eval(&hi).is_positive());
            assert!(lo > rat(1, 1) && hi < rat(2, 1));
        }
    }

    #[test]
    fn degree_one_rejected() {
        assert_eq!(FieldSpec::new(1).unwrap_err(), Error::DegreeTooSmall(1));
    }

    fn element_strategy(m: usize) -> impl Strategy<Value = FieldElement> {
        proptest::collection::vec(-50i64..50, m)
            .prop_map(move |v| FieldElement::from_coeffs(v.into_iter().map(BigInt::from).collect()))
    }

    fn raw_strategy() -> impl Strategy<Value = Vec<BigInt>> {
        proptest::collection::vec((-20i64..20).prop_map(BigInt::from), 0..12)
    }

    proptest! {
        #[test]
        fn ring_axioms(
            (a, b, c) in (2usize..6).prop_flat_map(|m| {
                (element_strategy(m), element_strategy(m), element_strategy(m))
            })
        ) {
            let m = a.degree();
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(a.mul_by_beta(), &a * &FieldElement::beta(m));
        }

        #[test]
        fn sign_symmetries(a in element_strategy(3)) {
            let spec = FieldSpec::new(3).unwrap();
            let s = spec.sign(&a);
            prop_assert_eq!(spec.sign(&-&a), s.flip());
            prop_assert_eq!(spec.sign(&a.mul_by_beta()), s);
        }

        #[test]
        fn sign_agrees_with_float_when_clear(a in element_strategy(4)) {
            let spec = FieldSpec::new(4).unwrap();
            let v = a.eval_f64(spec.beta_f64());
            if v.abs() > 1e-6 {
                let expect = if v > 0.0 { Sign::Positive } else { Sign::Negative };
                prop_assert_eq!(spec.sign(&a), expect);
            }
        }

        #[test]
        fn reduce_is_homomorphism(x in raw_strategy(), y in raw_strategy(), m in 2usize..6) {
            let n = x.len().max(y.len());
            let sum: Vec<BigInt> = (0..n)
                .map(|i| x.get(i).cloned().unwrap_or_default() + y.get(i).cloned().unwrap_or_default())
                .collect();
            prop_assert_eq!(reduce(&sum, m), &reduce(&x, m) + &reduce(&y, m));
            let once = reduce(&x, m);
            prop_assert_eq!(reduce(once.coeffs(), m), once.clone());
            let prod = {
                let mut p = vec![BigInt::zero(); x.len() + y.len() + 1];
                for (i, a) in x.iter().enumerate() {
                    for (j, b) in y.iter().enumerate() {
                        p[i + j] += a * b;
                    }
                }
                p
            };
            prop_assert_eq!(reduce(&prod, m), &reduce(&x, m) * &reduce(&y, m));
        }
    }
}
