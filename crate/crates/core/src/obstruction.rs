//! Top-obstruction bookkeeping for almost complex structures.
//!
//! Every obstruction is recorded as an integer multiple `k · o[S²ⁿ]` of the
//! sphere obstruction. The three rules are:
//!
//! * an honest almost complex structure has `k = 0`;
//! * a stable structure `J̃` gives `k = (χ(M) − c_n[J̃]) / 2`;
//! * for a connected sum of α pieces, `k = Σ k_i − (α − 1)`.
//!
//! The order of `o[S²ⁿ]` is not computed. It may be supplied per half
//! dimension through a [`ModulusTable`]; without one only `k = 0` counts as
//! vanishing.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::manifold::ManifoldDescriptor;
use crate::stable::{parity_consistent, top_chern_number, StableStructure};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObstructionCoefficient {
    k: BigInt,
    half_dimension: u32,
    modulus: Option<BigInt>,
}

impl ObstructionCoefficient {
    pub fn new(k: impl Into<BigInt>, half_dimension: u32) -> Self {
        Self {
            k: k.into(),
            half_dimension,
            modulus: None,
        }
    }

    /// Reduces `k` into `[0, d)`. A modulus of zero is treated as absent.
    pub fn with_modulus(mut self, modulus: Option<BigInt>) -> Self {
        let modulus = modulus.filter(|d| d > &BigInt::zero());
        if let Some(d) = &modulus {
            self.k = self.k.mod_floor(d);
        }
        self.modulus = modulus;
        self
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn half_dimension(&self) -> u32 {
        self.half_dimension
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn vanishes(&self) -> bool {
        vanishes(self)
    }
}

impl fmt::Display for ObstructionCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            Some(d) => write!(f, "{} mod {d}", self.k),
            None => write!(f, "{}", self.k),
        }
    }
}

/// Configured orders of `o[S²ⁿ]`, keyed by `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModulusTable(BTreeMap<u32, BigInt>);

impl ModulusTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, half_dimension: u32, modulus: impl Into<BigInt>) {
        self.0.insert(half_dimension, modulus.into());
    }

    pub fn get(&self, half_dimension: u32) -> Option<&BigInt> {
        self.0.get(&half_dimension)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &BigInt)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One chosen stable structure per summand of a connected sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAssignment {
    pub choices: Vec<StableStructure>,
}

impl StructureAssignment {
    pub fn labels(&self) -> Vec<String> {
        self.choices.iter().map(StableStructure::label).collect()
    }
}

/// `o[M, J]` for the structure `J` on `M − D` induced by `s`.
pub fn obstruction_from_stable(
    m: &ManifoldDescriptor,
    s: &StableStructure,
) -> Result<ObstructionCoefficient> {
    let n = m.half_dimension();
    if matches!(s, StableStructure::HonestAcs) {
        return Ok(ObstructionCoefficient::new(0, n));
    }
    if !m.is_atomic() {
        return Err(Error::MissingCohomology(m.label().to_string()));
    }
    let chern = top_chern_number(s, m)?;
    if !parity_consistent(m, &chern) {
        return Err(Error::ParityViolation {
            label: m.label().to_string(),
            chi: m.euler_characteristic(),
            chern,
        });
    }
    let k = (BigInt::from(m.euler_characteristic()) - chern) / 2;
    Ok(ObstructionCoefficient::new(k, n))
}

/// Obstruction of the connected sum: `Σ k_i − (α − 1)`.
pub fn sum_obstruction(parts: &[ObstructionCoefficient]) -> Result<ObstructionCoefficient> {
    let first = parts.first().ok_or(Error::EmptySum)?;
    let mut modulus: Option<&BigInt> = None;
    for p in parts {
        if p.half_dimension != first.half_dimension {
            return Err(Error::DimensionMismatch {
                expected: 2 * first.half_dimension,
                found: 2 * p.half_dimension,
            });
        }
        match (modulus, &p.modulus) {
            (Some(a), Some(b)) if a != b => return Err(Error::ModulusMismatch),
            (None, Some(b)) => modulus = Some(b),
            _ => {}
        }
    }
    let total: BigInt = parts.iter().map(|p| &p.k).sum();
    let alpha = BigInt::from(parts.len());
    Ok(
        ObstructionCoefficient::new(total - (alpha - BigInt::one()), first.half_dimension)
            .with_modulus(modulus.cloned()),
    )
}

pub fn vanishes(c: &ObstructionCoefficient) -> bool {
    match &c.modulus {
        Some(d) => c.k.mod_floor(d).is_zero(),
        None => c.k.is_zero(),
    }
}
