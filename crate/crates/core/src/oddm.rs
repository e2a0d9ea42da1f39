//! Odd `m`: no decay, and the cancellation-witness criterion.
//!
//! `‖ν^(n)‖ < 1` for some `n` iff there is a polynomial `p` with
//! coefficients in `{0, ±1}`, `p(β) = 0` and `p(1)` odd. For odd `m` every
//! multiple of the minimal polynomial has `p(1)` even, so coinciding atoms
//! always reinforce and `|ν^(n)| = μ^(n)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebraic::{FieldElement, FieldSpec, Parity};
use crate::asymptotics::rational_string;
use crate::error::{Error, Result};
use crate::measure::{big_to_number, word_from_index, word_position, SignedMeasure};

/// Default depth for the odd-`m` checks.
pub const DEFAULT_VERIFY_DEPTH: usize = 12;
/// Default length bound for [`search_witness`].
pub const DEFAULT_SEARCH_DEPTH: usize = 14;
/// Largest length [`search_witness`] accepts.
pub const MAX_SEARCH_DEPTH: usize = 24;

fn serialize_element<S: Serializer>(
    e: &FieldElement,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<serde_json::Number> = e.coeffs().iter().map(big_to_number).collect();
    v.serialize(s)
}

/// `p(x) = Σ_j η_j x^{n-j}` with `p(β) = 0` and `p(1)` odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationWitness {
    pub n: usize,
    /// `η_1, …, η_n`; `η_j` is the coefficient of `x^{n-j}`.
    pub eta: Vec<i8>,
    /// Parity of `p(1) = Σ η_j`.
    pub parity: Parity,
    /// `p(β)`, zero for a genuine witness.
    #[serde(serialize_with = "serialize_element")]
    pub residual: FieldElement,
}

impl CancellationWitness {
    pub fn is_valid(&self) -> bool {
        self.residual.is_zero() && self.parity == Parity::Odd
    }
}

/// `Σ_j v_j β^{len-1-j}` by Horner's rule.
pub fn eta_value(m: usize, eta: &[i8]) -> FieldElement {
    eta.iter()
        .fold(FieldElement::zero(m), |acc, &c| acc.shift_add(c as i64))
}

fn parity_of(eta: &[i8]) -> Parity {
    if eta.iter().filter(|&&c| c != 0).count() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// The `index`-th vector of `{-1, 0, 1}^len` in lexicographic order.
fn ternary(index: u64, len: usize) -> Vec<i8> {
    let mut out = vec![0i8; len];
    let mut k = index;
    for slot in out.iter_mut().rev() {
        *slot = (k % 3) as i8 - 1;
        k /= 3;
    }
    out
}

fn support(eta: &[i8]) -> usize {
    eta.iter().filter(|&&c| c != 0).count()
}

/// First witness of length exactly `n` with `η_1 = 1`, lexicographically
/// smallest under `-1 < 0 < 1`.
fn witness_of_length(m: usize, n: usize) -> Option<Vec<i8>> {
    // p(β) = β^low · H + L, split as high part η_1..η_h and low part
    let low = n / 2;
    let high = n - low;
    let mut table: HashMap<FieldElement, Vec<Vec<i8>>> = HashMap::new();
    for k in 0..3u64.pow(low as u32) {
        let v = ternary(k, low);
        table.entry(eta_value(m, &v)).or_default().push(v);
    }
    let shift = FieldElement::beta_pow(m, low);
    // high parts with leading +1 occupy the top third of the lexicographic range
    let start = 2 * 3u64.pow(high as u32 - 1);
    (start..3u64.pow(high as u32))
        .into_par_iter()
        .find_map_first(|k| {
            let h = ternary(k, high);
            let target = -(&shift * &eta_value(m, &h));
            let lows = table.get(&target)?;
            let hs = support(&h);
            lows.iter()
                .find(|l| (hs + support(l)) % 2 == 1)
                .map(|l| h.iter().chain(l.iter()).copied().collect())
        })
}

/// Shortest cancellation witness of length at most `n_max`, normalized so
/// that its first entry is `+1` and lexicographically first among those.
///
/// A witness with `η_1 = 0` shortens to a witness of smaller length, so
/// searching lengths in increasing order with `η_1 = 1` is exhaustive; `None`
/// means no `{0, ±1}` polynomial of degree below `n_max` cancels.
pub fn search_witness(spec: &FieldSpec, n_max: usize) -> Result<Option<CancellationWitness>> {
    if n_max > MAX_SEARCH_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "witness search depth {n_max} exceeds {MAX_SEARCH_DEPTH}"
        )));
    }
    let m = spec.m();
    for n in 1..=n_max {
        if let Some(eta) = witness_of_length(m, n) {
            let residual = eta_value(m, &eta);
            return Ok(Some(CancellationWitness {
                n,
                parity: parity_of(&eta),
                eta,
                residual,
            }));
        }
    }
    Ok(None)
}

/// Plain `3^n` enumeration, kept as an oracle for the split search.
pub fn search_witness_exhaustive(spec: &FieldSpec, n_max: usize) -> Option<CancellationWitness> {
    let m = spec.m();
    (1..=n_max).find_map(|n| {
        (0..3u64.pow(n as u32)).find_map(|k| {
            let eta = ternary(k, n);
            if eta[0] != 1 || parity_of(&eta) != Parity::Odd {
                return None;
            }
            let residual = eta_value(m, &eta);
            residual.is_zero().then_some(CancellationWitness {
                n,
                parity: Parity::Odd,
                eta,
                residual,
            })
        })
    })
}

fn require_odd(spec: &FieldSpec) -> Result<()> {
    if spec.m().is_multiple_of(2) {
        return Err(Error::EvenDegree(spec.m()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct NoDecayLevel {
    pub n: usize,
    pub atoms: usize,
    pub total_variation: String,
    pub variation_matches_unsigned: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NoDecayReport {
    pub m: usize,
    pub n_max: usize,
    pub levels: Vec<NoDecayLevel>,
    pub passed: bool,
    pub first_failure: Option<usize>,
}

/// Checks `‖ν^(n)‖ = 1` and `|ν^(n)| = μ^(n)` exactly for `1 ≤ n ≤ n_max`.
pub fn verify_no_decay(spec: &FieldSpec, n_max: usize) -> Result<NoDecayReport> {
    require_odd(spec)?;
    let mut nu = SignedMeasure::dirac(spec.m());
    let mut mu = SignedMeasure::dirac(spec.m());
    let mut levels = Vec::with_capacity(n_max);
    let mut first_failure = None;
    for n in 1..=n_max {
        nu = nu.signed_step(spec)?;
        mu = mu.unsigned_step(spec)?;
        let tv = nu.total_variation();
        let matches = nu.variation_measure() == mu;
        let ok =
            tv == BigRational::one() && nu.abs_numerator_sum() == (BigInt::one() << n) && matches;
        if !ok && first_failure.is_none() {
            first_failure = Some(n);
        }
        levels.push(NoDecayLevel {
            n,
            atoms: nu.len(),
            total_variation: rational_string(&tv),
            variation_matches_unsigned: matches,
        });
    }
    Ok(NoDecayReport {
        m: spec.m(),
        n_max,
        passed: first_failure.is_none(),
        first_failure,
        levels,
    })
}

/// A pair of distinct sign sequences landing on the same point.
#[derive(Clone, Debug, Serialize)]
pub struct Coincidence {
    pub n: usize,
    pub first: String,
    pub second: String,
    pub eta_support: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityReport {
    pub m: usize,
    pub n_max: usize,
    pub pairs_checked: usize,
    /// Smallest level at which two sequences coincide.
    pub first_coincidence: Option<Coincidence>,
    pub first_violation: Option<Coincidence>,
    pub passed: bool,
}

fn word_string(w: &[i8]) -> String {
    w.iter().map(|&c| if c > 0 { '+' } else { '-' }).collect()
}

/// For every pair of coinciding sign sequences up to `n_max`, checks that
/// `η = (ε − ε')/2` has even support, so the two atoms carry the same sign.
pub fn verify_parity_argument(spec: &FieldSpec, n_max: usize) -> Result<ParityReport> {
    require_odd(spec)?;
    let m = spec.m();
    let mut pairs_checked = 0;
    let mut first_coincidence = None;
    let mut first_violation = None;
    for n in 1..=n_max {
        let mut groups: HashMap<FieldElement, Vec<u64>> = HashMap::new();
        for k in 0..1u64 << n {
            groups
                .entry(word_position(m, &word_from_index(k, n)))
                .or_default()
                .push(k);
        }
        let mut classes: Vec<Vec<u64>> = groups.into_values().filter(|g| g.len() > 1).collect();
        classes.sort();
        for class in classes {
            for (i, &a) in class.iter().enumerate() {
                for &b in &class[i + 1..] {
                    let (wa, wb) = (word_from_index(a, n), word_from_index(b, n));
                    let eta: Vec<i8> = wa.iter().zip(&wb).map(|(x, y)| (x - y) / 2).collect();
                    let sign_a: i8 = wa.iter().product();
                    let sign_b: i8 = wb.iter().product();
                    let c = Coincidence {
                        n,
                        first: word_string(&wa),
                        second: word_string(&wb),
                        eta_support: support(&eta),
                    };
                    pairs_checked += 1;
                    if (!c.eta_support.is_multiple_of(2) || sign_a != sign_b)
                        && first_violation.is_none()
                    {
                        first_violation = Some(c.clone());
                    }
                    if first_coincidence.is_none() {
                        first_coincidence = Some(c);
                    }
                }
            }
        }
    }
    Ok(ParityReport {
        m,
        n_max,
        pairs_checked,
        passed: first_violation.is_none(),
        first_coincidence,
        first_violation,
    })
}

/// Summary emitted by the `oddm` command.
#[derive(Clone, Debug, Serialize)]
pub struct OddmReport {
    pub m: usize,
    pub n_max: usize,
    pub witness: Option<CancellationWitness>,
    pub witness_n_max: usize,
    pub no_decay_verified: bool,
    pub parity_verified: bool,
    pub max_n_checked: usize,
}

/// Witness search for any `m`, to length at least [`DEFAULT_SEARCH_DEPTH`];
/// for odd `m` also the no-decay and parity checks up to `n_max`.
pub fn report(spec: &FieldSpec, n_max: usize) -> Result<OddmReport> {
    let witness_n_max = n_max.max(DEFAULT_SEARCH_DEPTH);
    let witness = search_witness(spec, witness_n_max)?;
    let (no_decay_verified, parity_verified) = match spec.parity() {
        Parity::Odd => (
            verify_no_decay(spec, n_max)?.passed,
            verify_parity_argument(spec, n_max)?.passed,
        ),
        Parity::Even => (false, false),
    };
    Ok(OddmReport {
        m: spec.m(),
        n_max,
        witness,
        witness_n_max,
        no_decay_verified,
        parity_verified,
        max_n_checked: n_max,
    })
}

impl OddmReport {
    /// For odd `m`: no witness and both checks pass. For even `m`: a witness
    /// exists.
    pub fn passed(&self) -> bool {
        if self.m % 2 == 1 {
            self.witness.is_none() && self.no_decay_verified && self.parity_verified
        } else {
            self.witness
                .as_ref()
                .is_some_and(CancellationWitness::is_valid)
        }
    }
}
