//! Built-in manifolds with their characteristic data and canonical stable
//! structures.
//!
//! | name                  | manifold        | canonical structures                          |
//! |-----------------------|-----------------|-----------------------------------------------|
//! | `CP(n)`               | CPⁿ             | `std`; for even n = 2m also `(2m−1)γ + 2γ̄`    |
//! | `conjCP(n)`           | CPⁿ, reversed   | `nγ + γ̄`                                      |
//! | `Sphere(a)`           | S²ᵃ             | `std` for a ∈ {1, 3}, else `trivial(c_n=0)`   |
//! | `SphereProduct(a, b)` | S²ᵃ × S²ᵇ       | `std` for a, b ∈ {1, 3}, else `trivial(c_n=0)`|
//! | `HP2`                 | HP²             | none                                          |
//!
//! `SphereProduct(2,2)` additionally carries `trivial(c_n=4)`, flagged
//! external and therefore left out of default searches.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::manifold::{AtomicSpec, ManifoldDescriptor, Orientation};
use crate::ring::{Generator, Monomial, RingElement, RingPresentation};
use crate::stable::{LineBundleAggregate, StableStructure};

/// Largest complex dimension accepted for `CP(n)`.
pub const MAX_CP_DIMENSION: u32 = 64;
/// Largest half dimension accepted for sphere factors.
pub const MAX_SPHERE_HALF_DIMENSION: u32 = 1024;

pub const BUILTIN_NAMES: [&str; 5] = ["CP", "conjCP", "Sphere", "SphereProduct", "HP2"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub descriptor: ManifoldDescriptor,
    pub canonical_structures: Vec<StableStructure>,
    pub notes: Vec<String>,
}

impl RegistryEntry {
    pub fn new(descriptor: ManifoldDescriptor) -> Self {
        Self {
            descriptor,
            canonical_structures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn admits_honest_acs(&self) -> bool {
        self.canonical_structures
            .iter()
            .any(|s| matches!(s, StableStructure::HonestAcs))
    }

    /// Canonical structures minus the ones flagged external.
    pub fn default_candidates(&self) -> Vec<StableStructure> {
        self.canonical_structures
            .iter()
            .filter(|s| !s.is_external())
            .cloned()
            .collect()
    }

    pub fn conjugate(&self) -> Self {
        let mut notes = self.notes.clone();
        notes.push("orientation reversed; honest structures dropped".into());
        Self {
            descriptor: self.descriptor.reverse_orientation(),
            canonical_structures: self
                .canonical_structures
                .iter()
                .filter_map(StableStructure::for_reversed_orientation)
                .collect(),
            notes,
        }
    }
}

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameters {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn expect_params<const N: usize>(name: &str, params: &[u32]) -> Result<[u32; N]> {
    <[u32; N]>::try_from(params).map_err(|_| {
        invalid(
            name,
            format!("expected {N} parameter(s), got {}", params.len()),
        )
    })
}

/// `a·γ + b·γ̄` written the way the structure syntax spells it.
fn bundle_label(plain: u32, conj: u32) -> String {
    let term = |m: u32, body: &str| {
        if m == 1 {
            body.to_string()
        } else {
            format!("{m}*{body}")
        }
    };
    match (plain, conj) {
        (0, 0) => "trivial".into(),
        (a, 0) => term(a, "gamma"),
        (0, b) => term(b, "conj(gamma)"),
        (a, b) => format!("{} + {}", term(a, "gamma"), term(b, "conj(gamma)")),
    }
}

fn line_aggregate(ring: &Arc<RingPresentation>, plain: u32, conj: u32) -> Result<StableStructure> {
    let x = RingElement::generator(ring, 0)?;
    let mut agg = LineBundleAggregate::new(ring, bundle_label(plain, conj));
    if plain > 0 {
        agg.push(x.clone(), plain, false)?;
    }
    if conj > 0 {
        agg.push(x, conj, true)?;
    }
    Ok(StableStructure::Aggregate(agg))
}

fn projective_space(n: u32) -> Result<ManifoldDescriptor> {
    let ring = RingPresentation::monogenic("x", 2, n)?;
    let x = RingElement::generator(&ring, 0)?;
    let total = RingElement::one(&ring).add(&x.mul(&x)?)?.power(n + 1);
    let pontrjagin_classes = (1..=n / 2)
        .map(|i| total.component(4 * i))
        .collect::<Result<Vec<_>>>()?;
    ManifoldDescriptor::atomic(AtomicSpec {
        label: format!("CP({n})"),
        dimension: 2 * n,
        euler_characteristic: i64::from(n) + 1,
        signature: if n.is_multiple_of(2) { 1 } else { 0 },
        cohomology: ring,
        orientation: Orientation::Positive,
        pontrjagin_classes,
        connectivity: Some(1),
    })
}

fn cp_entry(n: u32) -> Result<RegistryEntry> {
    let descriptor = projective_space(n)?;
    let ring = descriptor.cohomology().expect("atomic").clone();
    let mut entry = RegistryEntry::new(descriptor);
    entry.canonical_structures.push(StableStructure::HonestAcs);
    if n.is_multiple_of(2) {
        entry
            .canonical_structures
            .push(line_aggregate(&ring, n - 1, 2)?);
    }
    entry
        .notes
        .push("complex manifold; carries its standard structure".into());
    entry
        .notes
        .push("tangent Pontrjagin class (1 + x^2)^(n+1) from standard references".into());
    Ok(entry)
}

fn conj_cp_entry(n: u32) -> Result<RegistryEntry> {
    let descriptor = projective_space(n)?.reverse_orientation();
    let ring = descriptor.cohomology().expect("atomic").clone();
    let mut entry = RegistryEntry::new(descriptor);
    entry
        .canonical_structures
        .push(line_aggregate(&ring, n, 1)?);
    entry
        .notes
        .push("tangent Pontrjagin class (1 + x^2)^(n+1) from standard references".into());
    Ok(entry)
}

fn honest_sphere(a: u32) -> bool {
    a == 1 || a == 3
}

fn sphere_entry(a: u32) -> Result<RegistryEntry> {
    let dim = 2 * a;
    let ring = RingPresentation::monogenic("s", dim, 1)?;
    let descriptor = ManifoldDescriptor::atomic(AtomicSpec {
        label: format!("Sphere({a})"),
        dimension: dim,
        euler_characteristic: 2,
        signature: 0,
        cohomology: ring,
        orientation: Orientation::Positive,
        pontrjagin_classes: Vec::new(),
        connectivity: Some(dim - 1),
    })?;
    let mut entry = RegistryEntry::new(descriptor);
    if honest_sphere(a) {
        entry.canonical_structures.push(StableStructure::HonestAcs);
        entry.notes.push(format!(
            "S^{dim} admits an almost complex structure (external authority)"
        ));
    } else {
        entry.canonical_structures.push(StableStructure::trivial(0));
        entry
            .notes
            .push(format!("S^{dim} is stably parallelizable"));
    }
    Ok(entry)
}

fn sphere_product_entry(a: u32, b: u32) -> Result<RegistryEntry> {
    let dim = 2 * (a + b);
    let ring = RingPresentation::new(
        vec![Generator::new("x", 2 * a, 1), Generator::new("y", 2 * b, 1)],
        dim,
        vec![1, 1],
    )?;
    let descriptor = ManifoldDescriptor::atomic(AtomicSpec {
        label: format!("SphereProduct({a},{b})"),
        dimension: dim,
        euler_characteristic: 4,
        signature: 0,
        cohomology: ring,
        orientation: Orientation::Positive,
        pontrjagin_classes: Vec::new(),
        connectivity: Some(2 * a.min(b) - 1),
    })?;
    let mut entry = RegistryEntry::new(descriptor);
    entry
        .notes
        .push(format!("S^{}xS^{} is stably parallelizable", 2 * a, 2 * b));
    if honest_sphere(a) && honest_sphere(b) {
        entry.canonical_structures.push(StableStructure::HonestAcs);
        entry
            .notes
            .push("product of almost complex spheres (external authority)".into());
    } else {
        entry.canonical_structures.push(StableStructure::trivial(0));
    }
    if (a, b) == (2, 2) {
        entry
            .canonical_structures
            .push(StableStructure::TrivialWithChern {
                top_chern: BigInt::from(4),
                external: true,
            });
        entry.notes.push(
            "trivial(c_n=4) replays an externally asserted structure on S^4xS^4 # conj(CP(4)); \
             its attainability is not derived and it is excluded from default searches"
                .into(),
        );
    }
    if (a, b) == (5, 5) {
        entry.notes.push(
            "external classification: k*S^10xS^10 admits an almost complex structure iff \
             k = -1 mod 1152; recorded only, not derived"
                .into(),
        );
    }
    Ok(entry)
}

fn quaternionic_plane() -> Result<RegistryEntry> {
    let ring = RingPresentation::monogenic("u", 4, 2)?;
    let u = RingElement::generator(&ring, 0)?;
    let p1 = u.scale(&BigInt::from(2));
    let p2 = RingElement::monomial(&ring, Monomial(vec![2]), 7);
    let descriptor = ManifoldDescriptor::atomic(AtomicSpec {
        label: "HP2".into(),
        dimension: 8,
        euler_characteristic: 3,
        signature: 1,
        cohomology: ring,
        orientation: Orientation::Positive,
        pontrjagin_classes: vec![p1, p2],
        connectivity: Some(3),
    })?;
    let mut entry = RegistryEntry::new(descriptor);
    entry
        .notes
        .push("characteristic data p1 = 2u, p2 = 7u^2 from standard references".into());
    Ok(entry)
}

/// Looks up a built-in manifold by name and integer parameters.
pub fn builtin(name: &str, params: &[u32]) -> Result<RegistryEntry> {
    match name {
        "CP" | "conjCP" => {
            let [n] = expect_params::<1>(name, params)?;
            if n == 0 || n > MAX_CP_DIMENSION {
                return Err(invalid(
                    name,
                    format!("complex dimension must lie in 1..={MAX_CP_DIMENSION}"),
                ));
            }
            if name == "CP" {
                cp_entry(n)
            } else {
                conj_cp_entry(n)
            }
        }
        "Sphere" => {
            let [a] = expect_params::<1>(name, params)?;
            if a == 0 || a > MAX_SPHERE_HALF_DIMENSION {
                return Err(invalid(name, "half dimension out of range"));
            }
            sphere_entry(a)
        }
        "SphereProduct" => {
            let [a, b] = expect_params::<2>(name, params)?;
            let range = 1..=MAX_SPHERE_HALF_DIMENSION;
            if !range.contains(&a) || !range.contains(&b) {
                return Err(invalid(name, "half dimensions out of range"));
            }
            sphere_product_entry(a, b)
        }
        "HP2" => {
            expect_params::<0>(name, params)?;
            quaternionic_plane()
        }
        _ => Err(Error::UnknownManifold(name.to_string())),
    }
}

/// `[A-Za-z_][A-Za-z0-9_]*`, excluding the keyword `conj`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "conj"
}

pub fn is_builtin_name(name: &str) -> bool {
    BUILTIN_NAMES.contains(&name)
}

/// Every built-in manifold of the given dimension carrying an honest almost
/// complex structure.
pub fn builtin_almost_complex(dimension: u32) -> Vec<RegistryEntry> {
    let mut out = Vec::new();
    if dimension < 2 || !dimension.is_multiple_of(2) {
        return out;
    }
    let half = dimension / 2;
    if half <= MAX_CP_DIMENSION {
        out.extend(cp_entry(half));
    }
    if half == 1 || half == 3 {
        out.extend(sphere_entry(half));
    }
    for (a, b) in [(1, 1), (1, 3), (3, 3)] {
        if a + b == half {
            out.extend(sphere_product_entry(a, b));
        }
    }
    out
}

/// Built-ins plus user-supplied atomic manifolds.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    user: BTreeMap<String, RegistryEntry>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, entry: RegistryEntry) -> Result<()> {
        let label = entry.descriptor.label().to_string();
        if !is_identifier(&label) {
            return Err(invalid(&label, "user manifold names must be identifiers"));
        }
        if is_builtin_name(&label) {
            return Err(invalid(&label, "name is reserved for a built-in manifold"));
        }
        if self.user.contains_key(&label) {
            return Err(invalid(&label, "manifold defined twice"));
        }
        self.user.insert(label, entry);
        Ok(())
    }

    pub fn user_entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.user.values()
    }

    /// Resolves `name(params)`, optionally with reversed orientation.
    pub fn resolve(&self, name: &str, params: &[u32], conjugated: bool) -> Result<RegistryEntry> {
        if let Some(entry) = self.user.get(name) {
            if !params.is_empty() {
                return Err(invalid(name, "user-defined manifolds take no parameters"));
            }
            return Ok(if conjugated {
                entry.conjugate()
            } else {
                entry.clone()
            });
        }
        match (name, conjugated) {
            (_, false) => builtin(name, params),
            ("CP", true) => builtin("conjCP", params),
            ("conjCP", true) => builtin("CP", params),
            (_, true) => Ok(builtin(name, params)?.conjugate()),
        }
    }
}
