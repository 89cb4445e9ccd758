//! Stable almost complex structure candidates.
//!
//! A candidate is either a formal Whitney sum of line bundles and their
//! conjugates over an atomic base, a bare top Chern number for stably
//! parallelizable bases, or a marker for an honest almost complex structure.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::manifold::{conj_label, ManifoldDescriptor};
use crate::ring::{RingElement, RingPresentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSummand {
    pub first_chern: RingElement,
    pub multiplicity: u32,
    pub conjugated: bool,
}

impl LineSummand {
    /// First Chern class with conjugation applied: `c₁(γ̄) = −c₁(γ)`.
    pub fn effective_chern(&self) -> RingElement {
        if self.conjugated {
            self.first_chern.neg()
        } else {
            self.first_chern.clone()
        }
    }
}

/// `η = Σ m_i γ_i (+ conjugates)` over a fixed cohomology ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineBundleAggregate {
    base: Arc<RingPresentation>,
    summands: Vec<LineSummand>,
    label: String,
}

impl LineBundleAggregate {
    pub fn new(base: &Arc<RingPresentation>, label: impl Into<String>) -> Self {
        Self {
            base: Arc::clone(base),
            summands: Vec::new(),
            label: label.into(),
        }
    }

    /// Adds `multiplicity` copies of the line bundle with first Chern class
    /// `first_chern` (or its conjugate).
    pub fn push(
        &mut self,
        first_chern: RingElement,
        multiplicity: u32,
        conjugated: bool,
    ) -> Result<()> {
        let invalid = |reason: String| {
            Err(Error::InvalidBundle {
                label: self.label.clone(),
                reason,
            })
        };
        if multiplicity == 0 {
            return invalid("multiplicity must be positive".into());
        }
        if first_chern.presentation().as_ref() != self.base.as_ref() {
            return invalid("first Chern class lives in a different ring".into());
        }
        if !first_chern.is_homogeneous_of(2) {
            return invalid(format!(
                "first Chern class {first_chern} is not of degree 2"
            ));
        }
        self.summands.push(LineSummand {
            first_chern,
            multiplicity,
            conjugated,
        });
        Ok(())
    }

    pub fn with(
        mut self,
        first_chern: RingElement,
        multiplicity: u32,
        conjugated: bool,
    ) -> Result<Self> {
        self.push(first_chern, multiplicity, conjugated)?;
        Ok(self)
    }

    pub fn base(&self) -> &Arc<RingPresentation> {
        &self.base
    }

    pub fn summands(&self) -> &[LineSummand] {
        &self.summands
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Complex rank, `Σ m_i`.
    pub fn rank(&self) -> u64 {
        self.summands
            .iter()
            .map(|s| u64::from(s.multiplicity))
            .sum()
    }

    /// `η̄`: every summand conjugated.
    pub fn conjugate(&self) -> Self {
        Self {
            base: Arc::clone(&self.base),
            summands: self
                .summands
                .iter()
                .map(|s| LineSummand {
                    conjugated: !s.conjugated,
                    ..s.clone()
                })
                .collect(),
            label: conj_label(&self.label),
        }
    }

    /// `c(η) = Π (1 + c₁(γ_i))^{m_i}`.
    pub fn total_chern(&self) -> RingElement {
        let one = RingElement::one(&self.base);
        self.summands.iter().fold(one.clone(), |acc, s| {
            let factor = one.add(&s.effective_chern()).expect("same ring");
            acc.mul(&factor.power(s.multiplicity)).expect("same ring")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StableStructure {
    Aggregate(LineBundleAggregate),
    /// A stable structure known only through its top Chern number. When
    /// `external` is set the value is taken on outside authority and is not
    /// offered to the default search.
    TrivialWithChern {
        top_chern: BigInt,
        external: bool,
    },
    /// A genuine almost complex structure; its obstruction is zero.
    HonestAcs,
}

impl StableStructure {
    pub fn trivial(top_chern: impl Into<BigInt>) -> Self {
        StableStructure::TrivialWithChern {
            top_chern: top_chern.into(),
            external: false,
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn is_external(&self) -> bool {
        matches!(
            self,
            StableStructure::TrivialWithChern { external: true, .. }
        )
    }

    /// The structure as seen from the same manifold with reversed
    /// orientation. Honest structures do not transfer.
    pub fn for_reversed_orientation(&self) -> Option<Self> {
        match self {
            StableStructure::Aggregate(a) => Some(StableStructure::Aggregate(a.clone())),
            StableStructure::TrivialWithChern {
                top_chern,
                external,
            } => Some(StableStructure::TrivialWithChern {
                top_chern: -top_chern,
                external: *external,
            }),
            StableStructure::HonestAcs => None,
        }
    }
}

impl fmt::Display for StableStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StableStructure::Aggregate(a) => f.write_str(&a.label),
            StableStructure::TrivialWithChern { top_chern, .. } => {
                write!(f, "trivial(c_n={top_chern})")
            }
            StableStructure::HonestAcs => f.write_str("std"),
        }
    }
}

/// `c_n[J̃] = ⟨c_n(η), [M]⟩` with `dim M = 2n`.
pub fn top_chern_number(s: &StableStructure, m: &ManifoldDescriptor) -> Result<BigInt> {
    match s {
        StableStructure::Aggregate(agg) => {
            let top = agg.total_chern().component(m.dimension())?;
            m.kronecker_pair(&top)
        }
        StableStructure::TrivialWithChern { top_chern, .. } => Ok(top_chern.clone()),
        StableStructure::HonestAcs => Err(Error::HonestStructure),
    }
}

/// Pontrjagin-level consistency check: `c(η)·c(η̄) = Σ (−1)^i p_i(M)`.
///
/// This is necessary for `η_R` to be stably isomorphic to `TM`, not sufficient.
pub fn realification_check(agg: &LineBundleAggregate, m: &ManifoldDescriptor) -> Result<bool> {
    let data = m
        .atomic_data()
        .ok_or_else(|| Error::MissingCohomology(m.label().to_string()))?;
    if agg.base().as_ref() != data.cohomology.as_ref() {
        return Err(Error::PresentationMismatch);
    }
    let lhs = agg.total_chern().mul(&agg.conjugate().total_chern())?;
    let mut rhs = RingElement::one(&data.cohomology);
    for (i, p) in data.pontrjagin_classes.iter().enumerate() {
        rhs = if i % 2 == 0 { rhs.sub(p)? } else { rhs.add(p)? };
    }
    Ok(lhs == rhs)
}

/// `true` when `χ(M) − c_n` is even, as it must be for a genuine structure.
pub fn parity_consistent(m: &ManifoldDescriptor, top_chern: &BigInt) -> bool {
    (BigInt::from(m.euler_characteristic()) - top_chern) % 2 == BigInt::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{AtomicSpec, Orientation};

    fn cp(n: u32) -> ManifoldDescriptor {
        let ring = RingPresentation::monogenic("x", 2, n).unwrap();
        let x = RingElement::generator(&ring, 0).unwrap();
        let total = RingElement::one(&ring)
            .add(&x.mul(&x).unwrap())
            .unwrap()
            .power(n + 1);
        ManifoldDescriptor::atomic(AtomicSpec {
            label: format!("CP({n})"),
            dimension: 2 * n,
            euler_characteristic: i64::from(n) + 1,
            signature: if n.is_multiple_of(2) { 1 } else { 0 },
            pontrjagin_classes: (1..=n / 2)
                .map(|i| total.component(4 * i).unwrap())
                .collect(),
            cohomology: ring,
            orientation: Orientation::Positive,
            connectivity: Some(1),
        })
        .unwrap()
    }

    fn eta(m: &ManifoldDescriptor, plain: u32, conj: u32) -> LineBundleAggregate {
        let ring = m.cohomology().unwrap();
        let x = RingElement::generator(ring, 0).unwrap();
        let mut agg = LineBundleAggregate::new(ring, format!("{plain}*gamma + {conj}*conj(gamma)"));
        if plain > 0 {
            agg.push(x.clone(), plain, false).unwrap();
        }
        if conj > 0 {
            agg.push(x, conj, true).unwrap();
        }
        agg
    }

    fn dense(m: &ManifoldDescriptor, coeffs: &[i64]) -> RingElement {
        RingElement::from_terms(
            m.cohomology().unwrap(),
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (vec![i as u32], BigInt::from(c))),
        )
        .unwrap()
    }

    #[test]
    fn total_chern_matches_binomial_products() {
        let m = cp(4);
        // (1+x)^3 (1-x)^2 = 1 + x - 2x^2 - 2x^3 + x^4
        assert_eq!(eta(&m, 3, 2).total_chern(), dense(&m, &[1, 1, -2, -2, 1]));
        let bar = cp(5).reverse_orientation();
        // (1+x)^5 (1-x) = 1 + 4x + 5x^2 + 0x^3 - 5x^4 - 4x^5
        assert_eq!(
            eta(&bar, 5, 1).total_chern(),
            dense(&bar, &[1, 4, 5, 0, -5, -4])
        );
        let empty = LineBundleAggregate::new(m.cohomology().unwrap(), "trivial");
        assert_eq!(
            empty.total_chern(),
            RingElement::one(m.cohomology().unwrap())
        );
    }

    #[test]
    fn chern_number_families() {
        for n in 1..=10u32 {
            let m = cp(2 * n);
            let s = StableStructure::Aggregate(eta(&m, 2 * n - 1, 2));
            assert_eq!(
                top_chern_number(&s, &m).unwrap(),
                BigInt::from(2 * i64::from(n) - 3)
            );
        }
        for n in 2..=10u32 {
            let bar = cp(n).reverse_orientation();
            let s = StableStructure::Aggregate(eta(&bar, n, 1));
            assert_eq!(top_chern_number(&s, &bar).unwrap(), BigInt::from(n - 1));
        }
    }

    #[test]
    fn top_chern_flips_under_orientation_reversal() {
        for n in 1..=8u32 {
            let m = cp(n);
            for (a, b) in [(n, 1), (n + 1, 0), (1, n)] {
                let s = StableStructure::Aggregate(eta(&m, a, b));
                let up = top_chern_number(&s, &m).unwrap();
                let down = top_chern_number(&s, &m.reverse_orientation()).unwrap();
                assert_eq!(up, -down);
            }
        }
    }

    #[test]
    fn honest_and_trivial_structures() {
        let m = cp(4);
        assert_eq!(
            top_chern_number(&StableStructure::HonestAcs, &m),
            Err(Error::HonestStructure)
        );
        assert_eq!(
            top_chern_number(&StableStructure::trivial(4), &m).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(StableStructure::trivial(-3).label(), "trivial(c_n=-3)");
        assert_eq!(StableStructure::HonestAcs.label(), "std");
    }

    #[test]
    fn realification_examples() {
        let m = cp(4);
        assert!(realification_check(&eta(&m, 3, 2), &m).unwrap());
        // conjugating the aggregate changes nothing
        assert!(realification_check(&eta(&m, 3, 2).conjugate(), &m).unwrap());
        // wrong multiplicity: a single gamma on CP^2
        let cp2 = cp(2);
        assert!(!realification_check(&eta(&cp2, 1, 0), &cp2).unwrap());
        let bar = cp(6).reverse_orientation();
        assert!(realification_check(&eta(&bar, 6, 1), &bar).unwrap());
    }

    #[test]
    fn conjugation_negates_generators() {
        for n in 1..=6u32 {
            let m = cp(n);
            let agg = eta(&m, n, 2);
            assert_eq!(
                agg.conjugate().total_chern(),
                agg.total_chern().negate_generators()
            );
        }
    }

    #[test]
    fn bundle_validation() {
        let m = cp(4);
        let ring = m.cohomology().unwrap();
        let x = RingElement::generator(ring, 0).unwrap();
        let mut agg = LineBundleAggregate::new(ring, "bad");
        assert!(agg.push(x.mul(&x).unwrap(), 1, false).is_err());
        assert!(agg.push(x.clone(), 0, false).is_err());
        let other = cp(3);
        let y = RingElement::generator(other.cohomology().unwrap(), 0).unwrap();
        assert!(agg.push(y, 1, false).is_err());
        assert!(realification_check(&agg, &other).is_err());
    }
}
