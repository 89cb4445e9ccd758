//! Manifold descriptors, orientation reversal, Kronecker pairing and formal
//! connected sums.
//!
//! Connected sums are formal: only the numeric invariants every check needs
//! (χ, τ, Pontrjagin numbers, connectivity) are aggregated. Pontrjagin
//! numbers and τ add under `#`, while
//! `χ(M₁ # … # M_α) = Σ χ(M_i) − 2(α − 1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Positive),
            -1 => Some(Orientation::Negative),
            _ => None,
        }
    }
}

/// A partition `i₁ ≤ … ≤ i_r` naming the Pontrjagin number
/// `⟨p_{i₁}⋯p_{i_r}, [M]⟩`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Parts are sorted; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return None;
        }
        parts.sort_unstable();
        Some(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All partitions of `n` in lexicographic order of their sorted parts.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(remaining: u32, min_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for part in min_part..=remaining {
                if remaining - part != 0 && remaining - part < part {
                    continue;
                }
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, 1, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    /// `p1^2*p2` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let run = self.0[i..].iter().take_while(|&&p| p == part).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "p{part}")?;
            } else {
                write!(f, "p{part}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicData {
    pub cohomology: Arc<RingPresentation>,
    /// `p₁, p₂, …`; missing trailing classes vanish.
    pub pontrjagin_classes: Vec<RingElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    Atomic(AtomicData),
    FormalSum(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldDescriptor {
    label: String,
    dimension: u32,
    euler_characteristic: i64,
    signature: i64,
    orientation: Orientation,
    pontrjagin_numbers: BTreeMap<Partition, BigInt>,
    connectivity: Option<u32>,
    flavor: Flavor,
}

/// Builder input for an atomic descriptor.
#[derive(Debug, Clone)]
pub struct AtomicSpec {
    pub label: String,
    pub dimension: u32,
    pub euler_characteristic: i64,
    pub signature: i64,
    pub cohomology: Arc<RingPresentation>,
    pub orientation: Orientation,
    pub pontrjagin_classes: Vec<RingElement>,
    pub connectivity: Option<u32>,
}

fn check_dimension(label: &str, dimension: u32, signature: i64) -> Result<()> {
    let invalid = |reason: String| {
        Err(Error::InvalidDescriptor {
            label: label.to_string(),
            reason,
        })
    };
    if dimension < 2 || !dimension.is_multiple_of(2) {
        return invalid(format!("dimension {dimension} must be even and at least 2"));
    }
    if dimension % 4 == 2 && signature != 0 {
        return invalid(format!(
            "signature {signature} in dimension {dimension}; must be 0 unless the dimension is divisible by 4"
        ));
    }
    Ok(())
}

impl ManifoldDescriptor {
    pub fn atomic(spec: AtomicSpec) -> Result<Self> {
        let AtomicSpec {
            label,
            dimension,
            euler_characteristic,
            signature,
            cohomology,
            orientation,
            pontrjagin_classes,
            connectivity,
        } = spec;
        check_dimension(&label, dimension, signature)?;
        if cohomology.total_dimension() != dimension {
            return Err(Error::InvalidDescriptor {
                label,
                reason: format!(
                    "cohomology top degree {} differs from dimension {dimension}",
                    cohomology.total_dimension()
                ),
            });
        }
        for (i, p) in pontrjagin_classes.iter().enumerate() {
            let degree = 4 * (i as u32 + 1);
            if p.presentation().as_ref() != cohomology.as_ref() {
                return Err(Error::PresentationMismatch);
            }
            if !p.is_homogeneous_of(degree) {
                return Err(Error::NotHomogeneous {
                    class: format!("p{} of {label}", i + 1),
                    expected: degree,
                });
            }
        }
        let mut desc = ManifoldDescriptor {
            label,
            dimension,
            euler_characteristic,
            signature,
            orientation,
            pontrjagin_numbers: BTreeMap::new(),
            connectivity,
            flavor: Flavor::Atomic(AtomicData {
                cohomology,
                pontrjagin_classes,
            }),
        };
        desc.pontrjagin_numbers = desc.compute_pontrjagin_numbers()?;
        Ok(desc)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// `n` with `dim = 2n`.
    pub fn half_dimension(&self) -> u32 {
        self.dimension / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_characteristic
    }

    pub fn signature(&self) -> i64 {
        self.signature
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn connectivity(&self) -> Option<u32> {
        self.connectivity
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self.flavor, Flavor::Atomic(_))
    }

    pub fn atomic_data(&self) -> Option<&AtomicData> {
        match &self.flavor {
            Flavor::Atomic(data) => Some(data),
            Flavor::FormalSum(_) => None,
        }
    }

    pub fn cohomology(&self) -> Option<&Arc<RingPresentation>> {
        self.atomic_data().map(|d| &d.cohomology)
    }

    pub fn pontrjagin_numbers(&self) -> &BTreeMap<Partition, BigInt> {
        &self.pontrjagin_numbers
    }

    pub fn pontrjagin_number(&self, partition: &Partition) -> Option<&BigInt> {
        self.pontrjagin_numbers.get(partition)
    }

    /// `⟨a, [M]⟩`: the coefficient of the top monomial times the orientation sign.
    pub fn kronecker_pair(&self, a: &RingElement) -> Result<BigInt> {
        let data = self
            .atomic_data()
            .ok_or_else(|| Error::MissingCohomology(self.label.clone()))?;
        if a.presentation().as_ref() != data.cohomology.as_ref() {
            return Err(Error::PresentationMismatch);
        }
        if !a.is_homogeneous_of(self.dimension) {
            return Err(Error::NotHomogeneous {
                class: a.to_string(),
                expected: self.dimension,
            });
        }
        let top = data.cohomology.top_monomial();
        if a.terms().any(|(m, _)| m != top) {
            return Err(Error::AmbiguousTopDegree {
                class: a.to_string(),
            });
        }
        Ok(a.coefficient(top) * self.orientation.sign())
    }

    /// `1 + p₁ + p₂ + …` as a ring element.
    pub fn total_pontrjagin_class(&self) -> Result<RingElement> {
        let data = self
            .atomic_data()
            .ok_or_else(|| Error::MissingCohomology(self.label.clone()))?;
        data.pontrjagin_classes
            .iter()
            .try_fold(RingElement::one(&data.cohomology), |acc, p| acc.add(p))
    }

    /// `p_i`, zero when not recorded.
    pub fn pontrjagin_class(&self, i: u32) -> Result<RingElement> {
        let data = self
            .atomic_data()
            .ok_or_else(|| Error::MissingCohomology(self.label.clone()))?;
        if i == 0 {
            return Ok(RingElement::one(&data.cohomology));
        }
        Ok(data
            .pontrjagin_classes
            .get(i as usize - 1)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(&data.cohomology)))
    }

    fn compute_pontrjagin_numbers(&self) -> Result<BTreeMap<Partition, BigInt>> {
        let mut numbers = BTreeMap::new();
        if !self.dimension.is_multiple_of(4) {
            return Ok(numbers);
        }
        let data = self
            .atomic_data()
            .ok_or_else(|| Error::MissingCohomology(self.label.clone()))?;
        for partition in Partition::all_of(self.dimension / 4) {
            let product = partition
                .parts()
                .iter()
                .try_fold(RingElement::one(&data.cohomology), |acc, &i| {
                    acc.mul(&self.pontrjagin_class(i)?)
                })?;
            numbers.insert(partition, self.kronecker_pair(&product)?);
        }
        Ok(numbers)
    }

    /// The same manifold with the opposite orientation. Pontrjagin classes
    /// are unchanged; every pairing against `[M]`, hence τ and the
    /// Pontrjagin numbers, changes sign.
    pub fn reverse_orientation(&self) -> Self {
        let flavor = match &self.flavor {
            Flavor::Atomic(data) => Flavor::Atomic(data.clone()),
            Flavor::FormalSum(labels) => {
                Flavor::FormalSum(labels.iter().map(|l| conj_label(l)).collect())
            }
        };
        ManifoldDescriptor {
            label: conj_label(&self.label),
            dimension: self.dimension,
            euler_characteristic: self.euler_characteristic,
            signature: -self.signature,
            orientation: self.orientation.reversed(),
            pontrjagin_numbers: self
                .pontrjagin_numbers
                .iter()
                .map(|(k, v)| (k.clone(), -v))
                .collect(),
            connectivity: self.connectivity,
            flavor,
        }
    }

    /// Returns a copy with a different label.
    pub fn relabeled(&self, label: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.label = label.into();
        out
    }
}

/// `X ↦ conj(X)`, and `conj(X) ↦ X`.
pub fn conj_label(label: &str) -> String {
    if let Some(inner) = label
        .strip_prefix("conj(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        // the opening paren must close at the very end
        let mut depth = 0i32;
        let balanced = inner.chars().all(|c| {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            depth >= 0
        }) && depth == 0;
        if balanced {
            return inner.to_string();
        }
    }
    format!("conj({label})")
}

/// Formal connected sum. A single summand is returned unchanged.
pub fn connected_sum(summands: &[ManifoldDescriptor]) -> Result<ManifoldDescriptor> {
    let first = summands.first().ok_or(Error::EmptySum)?;
    if let Some(bad) = summands.iter().find(|m| m.dimension != first.dimension) {
        return Err(Error::DimensionMismatch {
            expected: first.dimension,
            found: bad.dimension,
        });
    }
    if summands.len() == 1 {
        return Ok(first.clone());
    }
    let alpha = summands.len() as i64;
    let euler_characteristic =
        summands.iter().map(|m| m.euler_characteristic).sum::<i64>() - 2 * (alpha - 1);
    let signature = summands.iter().map(|m| m.signature).sum();
    let mut pontrjagin_numbers: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for m in summands {
        for (k, v) in &m.pontrjagin_numbers {
            *pontrjagin_numbers
                .entry(k.clone())
                .or_insert_with(BigInt::zero) += v;
        }
    }
    let connectivity = summands
        .iter()
        .map(|m| m.connectivity)
        .collect::<Option<Vec<_>>>()
        .and_then(|c| c.into_iter().min());
    let labels: Vec<String> = summands.iter().map(|m| m.label.clone()).collect();
    Ok(ManifoldDescriptor {
        label: labels.join(" # "),
        dimension: first.dimension,
        euler_characteristic,
        signature,
        orientation: Orientation::Positive,
        pontrjagin_numbers,
        connectivity,
        flavor: Flavor::FormalSum(labels),
    })
}
