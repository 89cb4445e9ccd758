//! Line-oriented input files.
//!
//! ```text
//! # comment
//! obstruction_modulus[10] = 1152
//!
//! [manifold M]
//! dimension = 8
//! chi = 3
//! tau = 1
//! generators = u:4:2
//! top_monomial = u^2
//! p1 = 2*u
//! p2 = 7*u^2
//! connectivity = 3
//!
//! [structures CP(4)]
//! bundle gamma = x
//! candidate = std
//! candidate = 3*gamma + 2*conj(gamma)
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Any file may hold
//! any kind of section; the CLI flags only say where to look. Keys are case-sensitive and each may appear once per section,
//! except `bundle` and `candidate`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use acsum_core::{
    AtomicSpec, BigInt, Generator, ManifoldDescriptor, Orientation, RegistryEntry, RingElement,
    RingPresentation,
};
use num_traits::Signed;
use thiserror::Error;

use crate::expr::{self, ManifoldExpr};
use crate::poly::{self, CandidateSyntax};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source_name}:{line}: {message}")]
pub struct InputError {
    pub source_name: String,
    pub line: usize,
    pub message: String,
}

/// A value together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located<T> {
    pub value: T,
    pub source_name: String,
    pub line: usize,
}

impl<T> Located<T> {
    pub fn error(&self, message: impl fmt::Display) -> InputError {
        InputError {
            source_name: self.source_name.clone(),
            line: self.line,
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StructureSection {
    pub manifold: Located<ManifoldExpr>,
    /// Bundle name and its first Chern class, still as text.
    pub bundles: Vec<Located<(String, String)>>,
    pub candidates: Vec<Located<CandidateSyntax>>,
}

/// Everything read from one or more input files.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub manifolds: Vec<Located<RegistryEntry>>,
    pub structures: Vec<StructureSection>,
    pub moduli: BTreeMap<u32, Located<BigInt>>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `text` and appends its sections.
    pub fn load(&mut self, source_name: &str, text: &str) -> Result<(), InputError> {
        let normalized = text.replace("\r\n", "\n").replace('\r', "\n");
        let mut section = Section::Global;
        for (i, raw) in normalized.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| InputError {
                source_name: source_name.to_string(),
                line,
                message,
            };
            let uncommented = raw.split_once('#').map_or(raw, |(before, _)| before);
            let trimmed = uncommented.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(header) = trimmed.strip_prefix('[') {
                let header = header
                    .strip_suffix(']')
                    .ok_or_else(|| err("section header must end with ']'".into()))?;
                self.close(
                    std::mem::replace(&mut section, Section::Global),
                    source_name,
                )?;
                section = open_section(header.trim(), source_name, line).map_err(err)?;
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', found {trimmed:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match &mut section {
                Section::Global => self
                    .global_key(key, value, source_name, line)
                    .map_err(err)?,
                Section::Manifold { fields, .. } => {
                    if fields
                        .insert(
                            key.to_string(),
                            located(value.to_string(), source_name, line),
                        )
                        .is_some()
                    {
                        return Err(err(format!("key {key} given twice")));
                    }
                }
                Section::Structures(s) => {
                    if let Some(name) = key.strip_prefix("bundle ") {
                        let name = name.trim();
                        if !crate::is_identifier(name) || name == "conj" || poly::is_reserved(name)
                        {
                            return Err(err(format!("{name:?} cannot name a bundle")));
                        }
                        if s.bundles.iter().any(|b| b.value.0 == name) {
                            return Err(err(format!("bundle {name} bound twice")));
                        }
                        s.bundles.push(located(
                            (name.to_string(), value.to_string()),
                            source_name,
                            line,
                        ));
                    } else if key == "candidate" {
                        let c = poly::parse_candidate(value).map_err(|e| err(e.to_string()))?;
                        s.candidates.push(located(c, source_name, line));
                    } else {
                        return Err(err(format!("unknown key {key} in a structures section")));
                    }
                }
            }
        }
        self.close(section, source_name)
    }

    fn global_key(
        &mut self,
        key: &str,
        value: &str,
        source_name: &str,
        line: usize,
    ) -> Result<(), String> {
        let Some(index) = key
            .strip_prefix("obstruction_modulus[")
            .and_then(|k| k.strip_suffix(']'))
        else {
            return Err(format!("unknown key {key} outside a section"));
        };
        let n: u32 = index
            .trim()
            .parse()
            .map_err(|_| format!("modulus index {index:?} is not a non-negative integer"))?;
        let d = poly::parse_signed(value)
            .filter(|d| d.is_positive())
            .ok_or_else(|| format!("modulus {value:?} must be a positive integer"))?;
        if let Some(prev) = self.moduli.get(&n) {
            if prev.value != d {
                return Err(format!(
                    "obstruction_modulus[{n}] already set to {} at {}:{}",
                    prev.value, prev.source_name, prev.line
                ));
            }
        }
        self.moduli.entry(n).or_insert(Located {
            value: d,
            source_name: source_name.to_string(),
            line,
        });
        Ok(())
    }

    fn close(&mut self, section: Section, source_name: &str) -> Result<(), InputError> {
        match section {
            Section::Global => {}
            Section::Manifold { name, line, fields } => {
                let entry =
                    build_manifold(&name, line, &fields).map_err(|(line, message)| InputError {
                        source_name: source_name.to_string(),
                        line,
                        message,
                    })?;
                self.manifolds.push(Located {
                    value: entry,
                    source_name: source_name.to_string(),
                    line,
                });
            }
            Section::Structures(s) => self.structures.push(s),
        }
        Ok(())
    }
}

fn located<T>(value: T, source_name: &str, line: usize) -> Located<T> {
    Located {
        value,
        source_name: source_name.to_string(),
        line,
    }
}

enum Section {
    Global,
    Manifold {
        name: String,
        line: usize,
        fields: BTreeMap<String, Located<String>>,
    },
    Structures(StructureSection),
}

fn open_section(header: &str, source_name: &str, line: usize) -> Result<Section, String> {
    if let Some(name) = header.strip_prefix("manifold ") {
        let name = name.trim();
        if !crate::is_identifier(name) {
            return Err(format!("manifold name {name:?} is not an identifier"));
        }
        return Ok(Section::Manifold {
            name: name.to_string(),
            line,
            fields: BTreeMap::new(),
        });
    }
    if let Some(target) = header.strip_prefix("structures ") {
        let m = expr::parse_manifold(target).map_err(|e| e.to_string())?;
        return Ok(Section::Structures(StructureSection {
            manifold: Located {
                value: m.normalized(),
                source_name: source_name.to_string(),
                line,
            },
            bundles: Vec::new(),
            candidates: Vec::new(),
        }));
    }
    Err(format!("unknown section [{header}]"))
}

type FieldResult<T> = Result<T, (usize, String)>;

fn build_manifold(
    name: &str,
    header_line: usize,
    fields: &BTreeMap<String, Located<String>>,
) -> FieldResult<RegistryEntry> {
    for (key, f) in fields {
        let known = matches!(
            key.as_str(),
            "dimension"
                | "chi"
                | "tau"
                | "generators"
                | "top_monomial"
                | "orientation_sign"
                | "connectivity"
        ) || pontrjagin_index(key).is_some();
        if !known {
            return Err((f.line, format!("unknown key {key} in manifold {name}")));
        }
    }
    let required = |key: &str| {
        fields
            .get(key)
            .ok_or_else(|| (header_line, format!("manifold {name} is missing {key}")))
    };
    let integer = |f: &Located<String>| -> FieldResult<i64> {
        poly::parse_signed(&f.value)
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| (f.line, format!("{:?} is not an integer", f.value)))
    };
    let unsigned = |f: &Located<String>| -> FieldResult<u32> {
        f.value.parse::<u32>().map_err(|_| {
            (
                f.line,
                format!("{:?} is not a non-negative integer", f.value),
            )
        })
    };

    let dim_field = required("dimension")?;
    let dimension = unsigned(dim_field)?;
    let chi = integer(required("chi")?)?;
    let tau = integer(required("tau")?)?;
    let gens_field = required("generators")?;
    let generators = parse_generators(&gens_field.value).map_err(|m| (gens_field.line, m))?;
    let top_field = required("top_monomial")?;
    let orientation = match fields.get("orientation_sign") {
        None => Orientation::Positive,
        Some(f) => Orientation::from_sign(integer(f)?)
            .ok_or_else(|| (f.line, "orientation_sign must be 1 or -1".to_string()))?,
    };
    let connectivity = fields.get("connectivity").map(unsigned).transpose()?;

    // The presentation needs the top monomial, which is written in terms of
    // the generators, so parse it against a provisional ring first.
    let provisional = provisional_ring(&generators).map_err(|e| (gens_field.line, e))?;
    let top = poly::parse_monomial(&top_field.value, &provisional)
        .map_err(|e| (top_field.line, format!("top_monomial: {}", e.message)))?;
    let ring = RingPresentation::new(generators, dimension, top)
        .map_err(|e| (gens_field.line, e.to_string()))?;

    let mut classes = Vec::new();
    for i in 1..=dimension / 4 {
        let key = format!("p{i}");
        classes.push(match fields.get(&key) {
            Some(f) => poly::parse_polynomial(&f.value, &ring)
                .map_err(|e| (f.line, format!("{key}: {}", e.message)))?,
            None => RingElement::zero(&ring),
        });
    }
    for (key, f) in fields {
        if pontrjagin_index(key).is_some_and(|i| i > dimension / 4) {
            return Err((f.line, format!("{key} exceeds the dimension {dimension}")));
        }
    }

    let descriptor = ManifoldDescriptor::atomic(AtomicSpec {
        label: name.to_string(),
        dimension,
        euler_characteristic: chi,
        signature: tau,
        cohomology: ring,
        orientation,
        pontrjagin_classes: classes,
        connectivity,
    })
    .map_err(|e| (dim_field.line, e.to_string()))?;
    Ok(RegistryEntry::new(descriptor))
}

/// A ring with the given generators only used for name lookup.
fn provisional_ring(generators: &[Generator]) -> Result<Arc<RingPresentation>, String> {
    let total: u32 = generators.iter().map(|g| g.degree * g.truncation).sum();
    let top: Vec<u32> = generators.iter().map(|g| g.truncation).collect();
    RingPresentation::new(generators.to_vec(), total, top).map_err(|e| e.to_string())
}

fn pontrjagin_index(key: &str) -> Option<u32> {
    let digits = key.strip_prefix('p')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&i| i >= 1)
}

/// `x:2:4, y:2:1` as name, degree, truncation exponent.
pub fn parse_generators(text: &str) -> Result<Vec<Generator>, String> {
    text.split(',')
        .map(|part| {
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            let [name, degree, truncation] = fields[..] else {
                return Err(format!(
                    "generator {:?} must be name:degree:truncation",
                    part.trim()
                ));
            };
            if !crate::is_identifier(name) {
                return Err(format!("generator name {name:?} is not an identifier"));
            }
            let num = |s: &str| {
                s.parse::<u32>()
                    .map_err(|_| format!("{s:?} in generator {name} is not a non-negative integer"))
            };
            Ok(Generator::new(name, num(degree)?, num(truncation)?))
        })
        .collect()
}
