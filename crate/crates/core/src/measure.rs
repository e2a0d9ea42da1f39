//! Finite signed atomic measures with exact positions in `β^{-n} Z[β]`.
//!
//! A level-`n` measure stores each atom position `x` as the field element
//! `x·β^n` and each weight as an integer numerator over the common unit
//! `2^{-n}`. One convolution step sends an atom at `x` to `x ± β^{-(n+1)}`,
//! i.e. the scaled position `p` to `β p ± 1`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebraic::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::SCHEMA_VERSION;

/// Largest level the brute-force expansion accepts (it walks `2^n` words).
pub const MAX_EXPANSION_LEVEL: usize = 26;

/// The real number `elem · β^{-level}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledPoint {
    pub elem: FieldElement,
    pub level: usize,
}

impl ScaledPoint {
    pub fn new(elem: FieldElement, level: usize) -> Self {
        ScaledPoint { elem, level }
    }

    /// The same real number expressed at a deeper level.
    pub fn rescale(&self, level: usize) -> ScaledPoint {
        assert!(level >= self.level, "can only rescale to a deeper level");
        let mut elem = self.elem.clone();
        for _ in self.level..level {
            elem = elem.mul_by_beta();
        }
        ScaledPoint { elem, level }
    }

    /// Exact comparison, rescaling to a common level first.
    pub fn cmp_exact(&self, other: &ScaledPoint, spec: &FieldSpec) -> Ordering {
        let level = self.level.max(other.level);
        spec.cmp(&self.rescale(level).elem, &other.rescale(level).elem)
    }

    pub fn to_f64(&self, beta: f64) -> f64 {
        self.elem.eval_f64(beta) * beta.powi(-(self.level as i32))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    /// Position scaled by `β^level`.
    pub position: FieldElement,
    /// Weight in units of `2^{-level}`; never zero.
    pub numerator: BigInt,
}

/// A finite signed atomic measure at a fixed level `n`.
///
/// Atoms are sorted strictly by position and carry non-zero numerators; the
/// measure of the atom is `numerator / 2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMeasure {
    m: usize,
    level: usize,
    atoms: Vec<Atom>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StepKind {
    Signed,
    Unsigned,
}

impl SignedMeasure {
    /// `δ_0` at level 0.
    pub fn dirac(m: usize) -> Self {
        SignedMeasure {
            m,
            level: 0,
            atoms: vec![Atom {
                position: FieldElement::zero(m),
                numerator: BigInt::one(),
            }],
        }
    }

    /// The zero measure at `level`.
    pub fn empty(m: usize, level: usize) -> Self {
        SignedMeasure {
            m,
            level,
            atoms: Vec::new(),
        }
    }

    /// Builds a measure from arbitrary atoms: merges equal positions, drops
    /// zero weights and sorts exactly.
    pub fn from_atoms(spec: &FieldSpec, level: usize, atoms: Vec<Atom>) -> Result<Self> {
        let m = spec.m();
        let mut merged: HashMap<FieldElement, BigInt> = HashMap::new();
        for atom in atoms {
            if atom.position.degree() != m {
                return Err(Error::FieldMismatch {
                    expected: m,
                    found: atom.position.degree(),
                });
            }
            *merged.entry(atom.position).or_default() += atom.numerator;
        }
        Ok(SignedMeasure {
            m,
            level,
            atoms: sorted_atoms(spec, merged),
        })
    }

    /// `ν^(n)` by `n` inductive steps from `δ_0`.
    pub fn signed(spec: &FieldSpec, n: usize) -> Result<Self> {
        let mut mu = Self::dirac(spec.m());
        for _ in 0..n {
            mu = mu.signed_step(spec)?;
        }
        Ok(mu)
    }

    /// `μ^(n)`, the unsigned convolution.
    pub fn unsigned(spec: &FieldSpec, n: usize) -> Result<Self> {
        let mut mu = Self::dirac(spec.m());
        for _ in 0..n {
            mu = mu.unsigned_step(spec)?;
        }
        Ok(mu)
    }

    /// All levels `ν^(0), …, ν^(n)`.
    pub fn signed_levels(spec: &FieldSpec, n: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Self::dirac(spec.m()));
        for k in 0..n {
            let next = out[k].signed_step(spec)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Convolution with `½δ_{β^{-(n+1)}} − ½δ_{−β^{-(n+1)}}`.
    pub fn signed_step(&self, spec: &FieldSpec) -> Result<Self> {
        self.step(spec, StepKind::Signed)
    }

    /// Convolution with `½δ_{β^{-(n+1)}} + ½δ_{−β^{-(n+1)}}`.
    pub fn unsigned_step(&self, spec: &FieldSpec) -> Result<Self> {
        self.step(spec, StepKind::Unsigned)
    }

    fn step(&self, spec: &FieldSpec, kind: StepKind) -> Result<Self> {
        if spec.m() != self.m {
            return Err(Error::FieldMismatch {
                expected: self.m,
                found: spec.m(),
            });
        }
        // p ↦ βp ± 1 is strictly increasing, so both child lists inherit the
        // parent order and a single merge pass combines them.
        let left = self.atoms.iter().map(|a| Atom {
            position: a.position.shift_add(-1),
            numerator: match kind {
                StepKind::Signed => -&a.numerator,
                StepKind::Unsigned => a.numerator.clone(),
            },
        });
        let right = self.atoms.iter().map(|a| Atom {
            position: a.position.shift_add(1),
            numerator: a.numerator.clone(),
        });
        Ok(SignedMeasure {
            m: self.m,
            level: self.level + 1,
            atoms: merge_sorted(spec, left, right),
        })
    }

    /// Sum of `|numerator|`; equals `a_n = 2^n ‖ν^(n)‖`.
    pub fn abs_numerator_sum(&self) -> BigInt {
        self.atoms.iter().map(|a| a.numerator.abs()).sum()
    }

    /// `Σ |numerator| · 2^{-n}`, exact.
    pub fn total_variation(&self) -> BigRational {
        BigRational::new(self.abs_numerator_sum(), BigInt::one() << self.level)
    }

    /// Signed total mass `Σ numerator · 2^{-n}`.
    pub fn total_mass(&self) -> BigRational {
        let sum: BigInt = self.atoms.iter().map(|a| &a.numerator).sum();
        BigRational::new(sum, BigInt::one() << self.level)
    }

    /// The support `A_n`, in increasing order.
    pub fn support_positions(&self) -> Vec<ScaledPoint> {
        self.atoms
            .iter()
            .map(|a| ScaledPoint::new(a.position.clone(), self.level))
            .collect()
    }

    /// The variation `|ν|`: same atoms, absolute weights.
    pub fn variation_measure(&self) -> Self {
        SignedMeasure {
            m: self.m,
            level: self.level,
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    position: a.position.clone(),
                    numerator: a.numerator.abs(),
                })
                .collect(),
        }
    }

    /// Image under `x ↦ −x`, with every weight multiplied by `weight_sign`.
    pub fn reflect(&self, weight_sign: i32) -> Self {
        SignedMeasure {
            m: self.m,
            level: self.level,
            atoms: self
                .atoms
                .iter()
                .rev()
                .map(|a| Atom {
                    position: -&a.position,
                    numerator: &a.numerator * weight_sign,
                })
                .collect(),
        }
    }

    /// Index of the atom at `position`, if any.
    pub fn find(&self, spec: &FieldSpec, position: &FieldElement) -> Option<usize> {
        self.atoms
            .binary_search_by(|a| spec.cmp(&a.position, position))
            .ok()
    }

    pub fn to_json(&self) -> String {
        let doc = MeasureDoc {
            schema_version: SCHEMA_VERSION,
            m: self.m,
            level: self.level,
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomDoc {
                    coeffs: a.position.coeffs().iter().map(big_to_number).collect(),
                    numerator: big_to_number(&a.numerator),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("measure serializes")
    }

    /// Parses the JSON written by [`SignedMeasure::to_json`]. Atoms are
    /// re-merged and re-sorted, so hand-written input need not be canonical.
    pub fn from_json(spec: &FieldSpec, text: &str) -> Result<Self> {
        let doc: MeasureDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        if doc.m != spec.m() {
            return Err(Error::FieldMismatch {
                expected: spec.m(),
                found: doc.m,
            });
        }
        let mut atoms = Vec::with_capacity(doc.atoms.len());
        for a in doc.atoms {
            if a.coeffs.len() != doc.m {
                return Err(Error::Malformed(format!(
                    "atom has {} coefficients, expected {}",
                    a.coeffs.len(),
                    doc.m
                )));
            }
            let coeffs = a
                .coeffs
                .iter()
                .map(number_to_big)
                .collect::<Result<Vec<_>>>()?;
            atoms.push(Atom {
                position: FieldElement::from_coeffs(coeffs),
                numerator: number_to_big(&a.numerator)?,
            });
        }
        Self::from_atoms(spec, doc.level, atoms)
    }
}

#[derive(Serialize, Deserialize)]
struct MeasureDoc {
    schema_version: u32,
    m: usize,
    level: usize,
    atoms: Vec<AtomDoc>,
}

#[derive(Serialize, Deserialize)]
struct AtomDoc {
    coeffs: Vec<serde_json::Number>,
    numerator: serde_json::Number,
}

pub(crate) fn big_to_number(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integer literal is a JSON number")
}

fn number_to_big(n: &serde_json::Number) -> Result<BigInt> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| Error::Malformed(format!("expected an integer, got {n}")))
}

fn merge_sorted(
    spec: &FieldSpec,
    left: impl Iterator<Item = Atom>,
    right: impl Iterator<Item = Atom>,
) -> Vec<Atom> {
    let mut out = Vec::new();
    let mut left = left.peekable();
    let mut right = right.peekable();
    loop {
        let next = match (left.peek(), right.peek()) {
            (None, None) => break,
            (Some(_), None) => left.next().unwrap(),
            (None, Some(_)) => right.next().unwrap(),
            (Some(l), Some(r)) => match spec.cmp(&l.position, &r.position) {
                Ordering::Less => left.next().unwrap(),
                Ordering::Greater => right.next().unwrap(),
                Ordering::Equal => {
                    let mut a = left.next().unwrap();
                    a.numerator += right.next().unwrap().numerator;
                    a
                }
            },
        };
        if !next.numerator.is_zero() {
            out.push(next);
        }
    }
    out
}

fn sorted_atoms(spec: &FieldSpec, merged: HashMap<FieldElement, BigInt>) -> Vec<Atom> {
    let mut atoms: Vec<Atom> = merged
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(position, numerator)| Atom {
            position,
            numerator,
        })
        .collect();
    atoms.par_sort_by(|a, b| spec.cmp(&a.position, &b.position));
    atoms
}

/// `x_ε · β^n = Σ_j ε_j β^{n-j}` for a `±1` word of length `n`.
pub fn word_position(m: usize, word: &[i8]) -> FieldElement {
    word.iter()
        .fold(FieldElement::zero(m), |acc, &e| acc.shift_add(e as i64))
}

/// Decodes the `index`-th word of `{±1}^n` in lexicographic order
/// (`-1 < +1`, most significant letter first).
pub fn word_from_index(index: u64, n: usize) -> Vec<i8> {
    (0..n)
        .map(|j| {
            if (index >> (n - 1 - j)) & 1 == 1 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Expands `ν^(n)` (or `μ^(n)` when `signed` is false) directly from the sum
/// over all `2^n` sign sequences, merging coinciding positions exactly.
///
/// This is the independent oracle for the inductive steps. It shares no code
/// with [`SignedMeasure::signed_step`] beyond field arithmetic.
pub fn expand(spec: &FieldSpec, n: usize, signed: bool) -> Result<SignedMeasure> {
    if n > MAX_EXPANSION_LEVEL {
        return Err(Error::InvalidParameter(format!(
            "brute-force expansion is capped at level {MAX_EXPANSION_LEVEL}, got {n}"
        )));
    }
    let m = spec.m();
    // powers[k] = β^k
    let powers: Vec<FieldElement> = (0..n.max(1))
        .map(|k| FieldElement::beta_pow(m, k))
        .collect();
    let merged = (0..1u64 << n)
        .into_par_iter()
        .fold(
            HashMap::new,
            |mut acc: HashMap<FieldElement, BigInt>, index| {
                let mut position = FieldElement::zero(m);
                let mut minus = 0usize;
                for j in 0..n {
                    let term = &powers[n - 1 - j];
                    if (index >> (n - 1 - j)) & 1 == 1 {
                        position = &position + term;
                    } else {
                        position = &position - term;
                        minus += 1;
                    }
                }
                let w = if signed && minus % 2 == 1 { -1 } else { 1 };
                *acc.entry(position).or_default() += w;
                acc
            },
        )
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(SignedMeasure {
        m,
        level: n,
        atoms: sorted_atoms(spec, merged),
    })
}
