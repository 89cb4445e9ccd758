//! Truncated graded-commutative polynomial rings over ℤ.
//!
//! A [`RingPresentation`] describes `ℤ[x₁,…,x_k]/(x₁^{e₁+1},…,x_k^{e_k+1})` with
//! even-degree generators. [`RingElement`]s hold exact integer coefficients
//! keyed by exponent vectors; any monomial that exceeds a truncation exponent
//! is dropped as soon as it appears, so two equal elements are always
//! structurally equal.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial generator `x` with `deg x = degree` and `x^{truncation+1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub truncation: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32, truncation: u32) -> Self {
        Self {
            name: name.into(),
            degree,
            truncation,
        }
    }
}

/// Exponent vector, one entry per generator of the owning presentation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingPresentation {
    generators: Vec<Generator>,
    total_dimension: u32,
    top_monomial: Monomial,
}

impl RingPresentation {
    pub fn new(
        generators: Vec<Generator>,
        total_dimension: u32,
        top_monomial: Vec<u32>,
    ) -> Result<Arc<Self>> {
        let invalid = |msg: String| Err(Error::InvalidPresentation(msg));
        if total_dimension == 0 || !total_dimension.is_multiple_of(2) {
            return invalid(format!(
                "total dimension {total_dimension} must be positive and even"
            ));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.degree < 2 || g.degree % 2 != 0 {
                return invalid(format!(
                    "generator {} has degree {}; degrees must be even and at least 2",
                    g.name, g.degree
                ));
            }
            if g.truncation == 0 {
                return invalid(format!("generator {} has truncation exponent 0", g.name));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return invalid(format!("generator {} declared twice", g.name));
            }
        }
        if top_monomial.len() != generators.len() {
            return invalid(format!(
                "top monomial has {} exponents for {} generators",
                top_monomial.len(),
                generators.len()
            ));
        }
        for (g, &e) in generators.iter().zip(&top_monomial) {
            if e > g.truncation {
                return invalid(format!(
                    "top monomial uses {}^{e} beyond truncation {}",
                    g.name, g.truncation
                ));
            }
        }
        let max_degree: u64 = generators
            .iter()
            .map(|g| u64::from(g.degree) * u64::from(g.truncation))
            .sum();
        if max_degree > u64::from(total_dimension) {
            return invalid(format!(
                "monomials up to degree {max_degree} survive truncation, above total dimension {total_dimension}"
            ));
        }
        let pres = RingPresentation {
            generators,
            total_dimension,
            top_monomial: Monomial(top_monomial),
        };
        if pres.degree_of(&pres.top_monomial) != total_dimension {
            return invalid(format!(
                "top monomial has degree {}, expected {}",
                pres.degree_of(&pres.top_monomial),
                total_dimension
            ));
        }
        Ok(Arc::new(pres))
    }

    /// `ℤ[x]/(x^{truncation+1})` with a single generator of the given degree,
    /// whose top class is `x^truncation`.
    pub fn monogenic(name: &str, degree: u32, truncation: u32) -> Result<Arc<Self>> {
        Self::new(
            vec![Generator::new(name, degree, truncation)],
            degree * truncation,
            vec![truncation],
        )
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn total_dimension(&self) -> u32 {
        self.total_dimension
    }

    pub fn top_monomial(&self) -> &Monomial {
        &self.top_monomial
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        self.generators
            .iter()
            .zip(m.exponents())
            .map(|(g, &e)| g.degree * e)
            .sum()
    }

    fn survives(&self, m: &Monomial) -> bool {
        self.generators
            .iter()
            .zip(m.exponents())
            .all(|(g, &e)| e <= g.truncation)
    }
}

fn same_ring(a: &Arc<RingPresentation>, b: &Arc<RingPresentation>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An element of a truncated graded ring with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    presentation: Arc<RingPresentation>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElement {
    pub fn zero(presentation: &Arc<RingPresentation>) -> Self {
        Self {
            presentation: Arc::clone(presentation),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(presentation: &Arc<RingPresentation>) -> Self {
        Self::constant(presentation, BigInt::one())
    }

    pub fn constant(presentation: &Arc<RingPresentation>, c: impl Into<BigInt>) -> Self {
        let n = presentation.generators.len();
        Self::monomial(presentation, Monomial::unit(n), c)
    }

    /// The `index`-th generator as a ring element.
    pub fn generator(presentation: &Arc<RingPresentation>, index: usize) -> Result<Self> {
        let n = presentation.generators.len();
        if index >= n {
            return Err(Error::InvalidPresentation(format!(
                "no generator with index {index}"
            )));
        }
        let mut exps = vec![0; n];
        exps[index] = 1;
        Ok(Self::monomial(presentation, Monomial(exps), 1))
    }

    /// `c · m`, or zero if `m` is killed by truncation.
    ///
    /// Panics if `m` has the wrong length for the presentation.
    pub fn monomial(
        presentation: &Arc<RingPresentation>,
        m: Monomial,
        c: impl Into<BigInt>,
    ) -> Self {
        assert_eq!(
            m.0.len(),
            presentation.generators.len(),
            "exponent vector length mismatch"
        );
        let mut out = Self::zero(presentation);
        let c = c.into();
        if !c.is_zero() && presentation.survives(&m) {
            out.terms.insert(m, c);
        }
        out
    }

    /// Builds an element from arbitrary terms, summing duplicates and
    /// dropping truncated monomials and zero coefficients.
    pub fn from_terms<I>(presentation: &Arc<RingPresentation>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let n = presentation.generators.len();
        let mut out = Self::zero(presentation);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::InvalidPresentation(format!(
                    "exponent vector of length {} in a ring with {n} generators",
                    exps.len()
                )));
            }
            let m = Monomial(exps);
            if presentation.survives(&m) {
                out.accumulate(m, c);
            }
        }
        Ok(out)
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.presentation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` when every term has degree `d`; the zero element is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| self.presentation.degree_of(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(degree)
    }

    fn accumulate(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_ring(&self.presentation, &other.presentation) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(&self.presentation);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let pres = &self.presentation;
        let mut out = Self::zero(pres);
        for (ma, ca) in &self.terms {
            'pairs: for (mb, cb) in &other.terms {
                let mut exps = Vec::with_capacity(ma.0.len());
                for ((g, &ea), &eb) in pres.generators.iter().zip(&ma.0).zip(&mb.0) {
                    let e = ea + eb;
                    if e > g.truncation {
                        continue 'pairs;
                    }
                    exps.push(e);
                }
                out.accumulate(Monomial(exps), ca * cb);
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated squaring; `self^0 = 1`.
    pub fn power(&self, k: u32) -> Self {
        let mut result = Self::one(&self.presentation);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same presentation");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same presentation");
            }
        }
        result
    }

    /// The homogeneous part of degree `degree`.
    pub fn component(&self, degree: u32) -> Result<Self> {
        let max = self.presentation.total_dimension;
        if !degree.is_multiple_of(2) || degree > max {
            return Err(Error::InvalidDegree { degree, max });
        }
        let mut out = Self::zero(&self.presentation);
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.presentation.degree_of(m) == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(out)
    }

    /// Substitutes `x_i ↦ -x_i` for every generator. Since generators have
    /// even degree this is `Σ (-1)^{|m|} c_m m` with `|m|` the total exponent.
    pub fn negate_generators(&self) -> Self {
        let mut out = Self::zero(&self.presentation);
        out.terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let total: u32 = m.0.iter().sum();
                let c = if total % 2 == 1 { -c } else { c.clone() };
                (m.clone(), c)
            })
            .collect();
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let pres = &self.presentation;
        let mut ordered: Vec<_> = self.terms.iter().collect();
        // ascending degree, then x before y
        ordered.sort_by(|(a, _), (b, _)| {
            pres.degree_of(a)
                .cmp(&pres.degree_of(b))
                .then_with(|| b.cmp(a))
        });
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = pres
                .generators
                .iter()
                .zip(&m.0)
                .filter(|(_, &e)| e > 0)
                .map(|(g, &e)| {
                    if e == 1 {
                        g.name.clone()
                    } else {
                        format!("{}^{e}", g.name)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(trunc: u32) -> Arc<RingPresentation> {
        RingPresentation::monogenic("x", 2, trunc).unwrap()
    }

    fn poly(pres: &Arc<RingPresentation>, coeffs: &[i64]) -> RingElement {
        RingElement::from_terms(
            pres,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (vec![i as u32], BigInt::from(c))),
        )
        .unwrap()
    }

    /// Dense full-polynomial product, truncated afterwards. Independent of
    /// the sparse `mul` path.
    fn convolve_then_truncate(a: &[i64], b: &[i64], keep: usize) -> Vec<i64> {
        let mut full = vec![0i64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                full[i + j] += x * y;
            }
        }
        full.truncate(keep);
        full
    }

    fn pascal(n: usize) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![1i64]];
        for r in 1..=n {
            let prev = &rows[r - 1];
            let mut row = vec![1i64; r + 1];
            for k in 1..r {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn add_cancels_and_identity() {
        let r = line(4);
        let a = poly(&r, &[1, 1]);
        let b = poly(&r, &[1, -1]);
        assert_eq!(a.add(&b).unwrap(), RingElement::constant(&r, 2));
        assert_eq!(a.add(&RingElement::zero(&r)).unwrap(), a);
        let x4 = poly(&r, &[0, 0, 0, 0, 1]);
        assert_eq!(x4.add(&x4).unwrap(), poly(&r, &[0, 0, 0, 0, 2]));
    }

    #[test]
    fn mul_matches_frozen_expansion() {
        // (1+x)^3 (1-x)^2 in Z[x]/(x^5); oracle: dense convolution
        let r = line(4);
        let cube =
            convolve_then_truncate(&convolve_then_truncate(&[1, 1], &[1, 1], 10), &[1, 1], 10);
        let sq = convolve_then_truncate(&[1, -1], &[1, -1], 10);
        let expected = convolve_then_truncate(&cube, &sq, 5);
        assert_eq!(expected, vec![1, 1, -2, -2, 1]);

        let a = poly(&r, &[1, 1]).power(3);
        let b = poly(&r, &[1, -1]).power(2);
        assert_eq!(a.mul(&b).unwrap(), poly(&r, &[1, 1, -2, -2, 1]));
    }

    #[test]
    fn mul_truncates_and_unit() {
        let r = line(2);
        let x = RingElement::generator(&r, 0).unwrap();
        let x2 = x.mul(&x).unwrap();
        assert!(x2.mul(&x).unwrap().is_zero());
        let a = poly(&r, &[3, -1, 7]);
        assert_eq!(a.mul(&RingElement::one(&r)).unwrap(), a);
    }

    #[test]
    fn power_examples() {
        let r = line(4);
        assert_eq!(poly(&r, &[1, 1]).power(5), poly(&r, &[1, 5, 10, 10, 5]));
        assert_eq!(poly(&r, &[1, -1]).power(0), RingElement::one(&r));
        assert_eq!(poly(&r, &[1, 0, -1]).power(5), poly(&r, &[1, 0, -5, 0, 10]));
    }

    #[test]
    fn component_examples() {
        let r = line(4);
        let a = poly(&r, &[1, 1, -2]);
        assert_eq!(a.component(4).unwrap(), poly(&r, &[0, 0, -2]));
        assert_eq!(a.component(0).unwrap(), RingElement::one(&r));
        let e = poly(&r, &[1, 1])
            .power(3)
            .mul(&poly(&r, &[1, -1]).power(2))
            .unwrap();
        assert_eq!(e.component(8).unwrap(), poly(&r, &[0, 0, 0, 0, 1]));
    }

    #[test]
    fn component_rejects_bad_degrees() {
        let r = line(4);
        let a = poly(&r, &[1, 1]);
        assert!(matches!(a.component(3), Err(Error::InvalidDegree { .. })));
        assert!(matches!(a.component(10), Err(Error::InvalidDegree { .. })));
    }

    #[test]
    fn mismatched_presentations_are_rejected() {
        let a = RingElement::one(&line(4));
        let b = RingElement::one(&line(3));
        assert_eq!(a.add(&b), Err(Error::PresentationMismatch));
        assert_eq!(a.mul(&b), Err(Error::PresentationMismatch));
        // structurally equal presentations built separately are compatible
        let c = RingElement::one(&line(4));
        assert!(a.mul(&c).is_ok());
    }

    #[test]
    fn invalid_presentations() {
        assert!(RingPresentation::monogenic("x", 3, 2).is_err());
        assert!(RingPresentation::monogenic("x", 2, 0).is_err());
        // x^3 survives but total dimension is only 4
        assert!(RingPresentation::new(vec![Generator::new("x", 2, 3)], 4, vec![2]).is_err());
        // duplicate name
        assert!(RingPresentation::new(
            vec![Generator::new("x", 2, 1), Generator::new("x", 2, 1)],
            4,
            vec![1, 1]
        )
        .is_err());
        // product of spheres
        assert!(RingPresentation::new(
            vec![Generator::new("a", 4, 1), Generator::new("b", 4, 1)],
            8,
            vec![1, 1]
        )
        .is_ok());
    }

    #[test]
    fn display_is_ascending_degree() {
        let r = line(4);
        assert_eq!(
            poly(&r, &[1, 1, -2, -2, 1]).to_string(),
            "1 + x - 2*x^2 - 2*x^3 + x^4"
        );
        assert_eq!(poly(&r, &[0, -1]).to_string(), "-x");
        assert_eq!(RingElement::zero(&r).to_string(), "0");
    }

    #[test]
    fn odd_plus_two_conjugates_chern_coefficient_two_ways() {
        let rows = pascal(30);
        for n in 1..=12u32 {
            let r = line(2 * n);
            let e = poly(&r, &[1, 1])
                .power(2 * n - 1)
                .mul(&poly(&r, &[1, -1]).power(2))
                .unwrap();
            let mut top = vec![0u32];
            top[0] = 2 * n;
            let direct = e.coefficient(&Monomial(top));
            let m = (2 * n - 1) as usize;
            // C(2n-1, 2n-2) - 2 C(2n-1, 2n-1), the C(2n-1, 2n) term is zero
            let identity = rows[m][m - 1] - 2 * rows[m][m];
            assert_eq!(direct, BigInt::from(identity));
            assert_eq!(direct, BigInt::from(2 * i64::from(n) - 3));
        }
    }

    fn arb_element(trunc: u32) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..20, 0..=(trunc as usize + 1))
    }

    proptest! {
        #[test]
        fn mul_equals_truncated_full_product(a in arb_element(5), b in arb_element(5)) {
            let r = line(5);
            let got = poly(&r, &a).mul(&poly(&r, &b)).unwrap();
            let expected = convolve_then_truncate(&a, &b, 6);
            prop_assert_eq!(got, poly(&r, &expected));
        }

        #[test]
        fn power_is_iterated_mul(a in arb_element(4), k in 0u32..=8) {
            let r = line(4);
            let a = poly(&r, &a);
            let mut acc = RingElement::one(&r);
            for _ in 0..k {
                acc = acc.mul(&a).unwrap();
            }
            prop_assert_eq!(a.power(k), acc);
        }

        #[test]
        fn negating_generators_is_an_involution(a in arb_element(4)) {
            let r = line(4);
            let a = poly(&r, &a);
            prop_assert_eq!(a.negate_generators().negate_generators(), a);
        }
    }
}
