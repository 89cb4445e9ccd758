//! Command-line front end: expression parsing, input files and reports.

pub mod expr;
pub mod input;
mod lexer;
pub mod poly;
pub mod report;

use std::collections::BTreeMap;
use std::path::Path;

use acsum_core::{
    connected_sum, decide, ManifoldDescriptor, ModulusTable, Registry, SearchSpace,
    StableStructure, Verdict, DEFAULT_SEARCH_BOUND,
};
use thiserror::Error;

pub(crate) use acsum_core::registry::is_identifier;
pub use expr::{parse, Expression, ManifoldExpr, Term};
pub use input::{Document, InputError};
pub use lexer::ParseError;
pub use report::{exit_code, Report, EXIT_ERROR};

/// Upper limit on the number of summands after expanding multiplicities.
pub const MAX_SUMMANDS: u64 = 100_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("{0}")]
    Engine(#[from] acsum_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{manifold}: {source}")]
    Resolve {
        manifold: String,
        source: acsum_core::Error,
    },
    #[error("query has {0} summands, more than the limit of {MAX_SUMMANDS}")]
    TooManySummands(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub search_bound: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            search_bound: DEFAULT_SEARCH_BOUND,
        }
    }
}

/// Registry, structure overrides and moduli assembled from input files.
#[derive(Debug, Clone, Default)]
pub struct Session {
    registry: Registry,
    overrides: BTreeMap<ManifoldExpr, Vec<StableStructure>>,
    moduli: ModulusTable,
}

impl Session {
    /// Built-in manifolds only.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_document(doc: &Document) -> Result<Self, CliError> {
        let mut session = Session::new();
        for m in &doc.manifolds {
            session
                .registry
                .insert(m.value.clone())
                .map_err(|e| m.error(e))?;
        }
        for (n, d) in &doc.moduli {
            session.moduli.insert(*n, d.value.clone());
        }
        for s in &doc.structures {
            let target = &s.manifold;
            if session.overrides.contains_key(&target.value) {
                return Err(target
                    .error(format!("structures for {} given twice", target.value))
                    .into());
            }
            let (name, params, conj) = target.value.base();
            let entry = session
                .registry
                .resolve(name, params, conj)
                .map_err(|e| target.error(e))?;
            let ring = entry
                .descriptor
                .cohomology()
                .ok_or_else(|| target.error("manifold has no cohomology ring"))?;
            let mut bundles = BTreeMap::new();
            for b in &s.bundles {
                let (bname, text) = &b.value;
                let c1 = poly::parse_polynomial(text, ring).map_err(|e| b.error(e))?;
                bundles.insert(bname.clone(), c1);
            }
            if s.candidates.is_empty() {
                return Err(target.error("structures section lists no candidate").into());
            }
            let mut candidates = Vec::new();
            for c in &s.candidates {
                candidates
                    .push(poly::build_candidate(&c.value, ring, &bundles).map_err(|e| c.error(e))?);
            }
            session.overrides.insert(target.value.clone(), candidates);
        }
        Ok(session)
    }

    /// Reads and merges the given files.
    pub fn from_files<P: AsRef<Path>>(paths: &[P]) -> Result<Self, CliError> {
        let mut doc = Document::new();
        for p in paths {
            let p = p.as_ref();
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            doc.load(&p.display().to_string(), &text)?;
        }
        Self::from_document(&doc)
    }

    pub fn moduli(&self) -> &ModulusTable {
        &self.moduli
    }

    /// Summand descriptors and their candidate lists, multiplicities expanded.
    pub fn resolve(
        &self,
        e: &Expression,
    ) -> Result<(Vec<ManifoldDescriptor>, Vec<Vec<StableStructure>>), CliError> {
        let count = e.summand_count();
        if count > MAX_SUMMANDS {
            return Err(CliError::TooManySummands(count));
        }
        let mut cache: BTreeMap<ManifoldExpr, (ManifoldDescriptor, Vec<StableStructure>)> =
            BTreeMap::new();
        let mut summands = Vec::new();
        let mut candidates = Vec::new();
        for t in &e.terms {
            let key = t.manifold.normalized();
            if !cache.contains_key(&key) {
                let (name, params, conj) = key.base();
                let entry = self
                    .registry
                    .resolve(name, params, conj)
                    .map_err(|source| CliError::Resolve {
                        manifold: key.to_string(),
                        source,
                    })?;
                let cands = match self.overrides.get(&key) {
                    Some(c) => c.clone(),
                    None => entry.default_candidates(),
                };
                cache.insert(key.clone(), (entry.descriptor, cands));
            }
            let (d, c) = &cache[&key];
            for _ in 0..t.multiplicity {
                summands.push(d.clone());
                candidates.push(c.clone());
            }
        }
        Ok((summands, candidates))
    }

    pub fn decide(
        &self,
        e: &Expression,
        options: &Options,
    ) -> Result<(Vec<ManifoldDescriptor>, Verdict), CliError> {
        let (summands, candidates) = self.resolve(e)?;
        let space = SearchSpace::new(candidates, options.search_bound)?;
        let verdict = decide(&summands, &space, &self.moduli)?;
        Ok((summands, verdict))
    }

    /// Parses, resolves and decides `query`.
    pub fn run(&self, query: &str, options: &Options) -> Result<Report, CliError> {
        let e = parse(query)?;
        let (summands, verdict) = self.decide(&e, options)?;
        let formal = connected_sum(&summands)?;
        Ok(Report::new(
            e.to_string(),
            e.summand_count(),
            &formal,
            &verdict,
        ))
    }
}

/// One-shot helper: load `files`, then run `query`.
pub fn run<P: AsRef<Path>>(
    files: &[P],
    query: &str,
    options: &Options,
) -> Result<Report, CliError> {
    Session::from_files(files)?.run(query, options)
}
