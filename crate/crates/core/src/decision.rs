//! Verdicts for connected sums.
//!
//! The pipeline runs the structure-independent necessary conditions on the
//! formal sum first, then searches per-summand candidate structures in
//! lexicographic order for an assignment whose total obstruction vanishes.
//! A failed necessary condition proves nonexistence; a vanishing obstruction
//! proves existence; anything else is reported as unknown.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::manifold::{connected_sum, ManifoldDescriptor, Partition};
use crate::obstruction::{
    obstruction_from_stable, sum_obstruction, vanishes, ModulusTable, ObstructionCoefficient,
    StructureAssignment,
};
use crate::stable::StableStructure;

pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

/// At most this many distinct totals are kept in an unknown certificate.
const MAX_RECORDED_COEFFICIENTS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass { lhs: BigInt, rhs: BigInt },
    Fail { lhs: BigInt, rhs: BigInt },
    NotApplicable { reason: String },
}

impl CheckOutcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, CheckOutcome::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass { .. })
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            CheckOutcome::Pass { .. } => "pass",
            CheckOutcome::Fail { .. } => "fail",
            CheckOutcome::NotApplicable { .. } => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `χ ≡ (−1)ⁿ τ (mod 4)` in dimension 4n.
    Hirzebruch,
    /// `4 p_{2m} − p_m² = 8χ` for (4m−1)-connected 8m-manifolds.
    Yang8m,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Hirzebruch => "hirzebruch",
            CheckKind::Yang8m => "yang_8m",
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            CheckKind::Hirzebruch => "chi = (-1)^n tau mod 4",
            CheckKind::Yang8m => "4 p_2m - p_m^2 = 8 chi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub kind: CheckKind,
    pub outcome: CheckOutcome,
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}): {}",
            self.kind.name(),
            self.kind.relation(),
            self.outcome.keyword()
        )?;
        match &self.outcome {
            CheckOutcome::Pass { lhs, rhs } | CheckOutcome::Fail { lhs, rhs } => {
                write!(f, " lhs={lhs} rhs={rhs}")
            }
            CheckOutcome::NotApplicable { reason } => write!(f, " ({reason})"),
        }
    }
}

/// Compares `χ` with `(−1)ⁿτ` modulo 4 on a 4n-manifold.
pub fn hirzebruch_check(m: &ManifoldDescriptor) -> CheckOutcome {
    let dim = m.dimension();
    if !dim.is_multiple_of(4) {
        return CheckOutcome::NotApplicable {
            reason: format!("dimension {dim} is not divisible by 4"),
        };
    }
    let n = dim / 4;
    let lhs = m.euler_characteristic();
    let rhs = if n.is_multiple_of(2) {
        m.signature()
    } else {
        -m.signature()
    };
    let (lhs, rhs) = (BigInt::from(lhs), BigInt::from(rhs));
    if (&lhs - &rhs) % 4 == BigInt::zero() {
        CheckOutcome::Pass { lhs, rhs }
    } else {
        CheckOutcome::Fail { lhs, rhs }
    }
}

/// `4·p_{2m}[M] − p_m²[M] = 8χ(M)` on an 8m-manifold asserted
/// (4m−1)-connected.
pub fn yang_8m_check(m: &ManifoldDescriptor, half_index: u32) -> CheckOutcome {
    let dim = m.dimension();
    if half_index == 0 || u64::from(dim) != 8 * u64::from(half_index) {
        return CheckOutcome::NotApplicable {
            reason: format!("dimension {dim} is not 8m for m = {half_index}"),
        };
    }
    let needed = 4 * half_index - 1;
    match m.connectivity() {
        Some(c) if c >= needed => {}
        Some(c) => {
            return CheckOutcome::NotApplicable {
                reason: format!("connectivity {c} is below {needed}"),
            }
        }
        None => {
            return CheckOutcome::NotApplicable {
                reason: "connectivity not asserted".into(),
            }
        }
    }
    let top = Partition::new(vec![2 * half_index]).expect("nonzero part");
    let square = Partition::new(vec![half_index, half_index]).expect("nonzero parts");
    let (Some(p_top), Some(p_sq)) = (m.pontrjagin_number(&top), m.pontrjagin_number(&square))
    else {
        return CheckOutcome::NotApplicable {
            reason: "Pontrjagin numbers unavailable".into(),
        };
    };
    let lhs = BigInt::from(4) * p_top - p_sq;
    let rhs = BigInt::from(8) * m.euler_characteristic();
    if lhs == rhs {
        CheckOutcome::Pass { lhs, rhs }
    } else {
        CheckOutcome::Fail { lhs, rhs }
    }
}

/// Necessary conditions on an (atomic or formal) manifold.
pub fn necessary_checks(m: &ManifoldDescriptor) -> Vec<CheckRecord> {
    let dim = m.dimension();
    let yang = if dim.is_multiple_of(8) {
        yang_8m_check(m, dim / 8)
    } else {
        CheckOutcome::NotApplicable {
            reason: format!("dimension {dim} is not divisible by 8"),
        }
    };
    vec![
        CheckRecord {
            kind: CheckKind::Hirzebruch,
            outcome: hirzebruch_check(m),
        },
        CheckRecord {
            kind: CheckKind::Yang8m,
            outcome: yang,
        },
    ]
}

/// Candidate structures per summand, in search order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    candidates: Vec<Vec<StableStructure>>,
    bound: u64,
}

impl SearchSpace {
    pub fn new(candidates: Vec<Vec<StableStructure>>, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidBound);
        }
        Ok(Self { candidates, bound })
    }

    pub fn with_default_bound(candidates: Vec<Vec<StableStructure>>) -> Self {
        Self {
            candidates,
            bound: DEFAULT_SEARCH_BOUND,
        }
    }

    pub fn candidates(&self) -> &[Vec<StableStructure>] {
        &self.candidates
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Admits,
    NotAdmits,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Admits => "ADMITS",
            Status::NotAdmits => "NOT_ADMITS",
            Status::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Admits {
        assignment: StructureAssignment,
        /// Position of each choice in its summand's candidate list.
        indices: Vec<usize>,
        coefficients: Vec<ObstructionCoefficient>,
        total: ObstructionCoefficient,
    },
    NotAdmits {
        failed: CheckRecord,
    },
    Unknown {
        /// Distinct total coefficients met during the search, ascending. A
        /// subtree skipped because no completion can vanish contributes its
        /// completion closest to zero.
        examined: Vec<ObstructionCoefficient>,
        explored: u64,
        /// `false` when the search bound cut the enumeration short.
        exhausted: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn assignment_labels(&self) -> Option<Vec<String>> {
        match &self.certificate {
            Certificate::Admits { assignment, .. } => Some(assignment.labels()),
            _ => None,
        }
    }
}

/// Decides whether the connected sum of `summands` admits an almost complex
/// structure, within the candidates offered by `space`.
pub fn decide(
    summands: &[ManifoldDescriptor],
    space: &SearchSpace,
    moduli: &ModulusTable,
) -> Result<Verdict> {
    if space.candidates.len() != summands.len() {
        return Err(Error::ArityMismatch {
            expected: summands.len(),
            found: space.candidates.len(),
        });
    }
    let formal = connected_sum(summands)?;
    let checks = necessary_checks(&formal);
    if let Some(failed) = checks.iter().find(|c| c.outcome.is_fail()).cloned() {
        return Ok(Verdict {
            status: Status::NotAdmits,
            checks,
            certificate: Certificate::NotAdmits { failed },
        });
    }

    let modulus = moduli.get(formal.half_dimension()).cloned();
    let table = coefficient_table(summands, space, modulus.as_ref())?;
    let certificate = search(
        &table,
        space.bound,
        formal.half_dimension(),
        modulus.as_ref(),
    )?;
    let certificate = match certificate {
        Found(indices) => {
            let choices: Vec<StableStructure> = indices
                .iter()
                .enumerate()
                .map(|(i, &j)| space.candidates[i][j].clone())
                .collect();
            let coefficients: Vec<ObstructionCoefficient> = indices
                .iter()
                .enumerate()
                .map(|(i, &j)| table[i][j].clone())
                .collect();
            let total = sum_obstruction(&coefficients)?;
            Certificate::Admits {
                assignment: StructureAssignment { choices },
                indices,
                coefficients,
                total,
            }
        }
        NotFound {
            examined,
            explored,
            exhausted,
        } => Certificate::Unknown {
            examined: examined
                .into_iter()
                .map(|k| {
                    ObstructionCoefficient::new(k, formal.half_dimension())
                        .with_modulus(modulus.clone())
                })
                .collect(),
            explored,
            exhausted,
        },
    };
    let status = match certificate {
        Certificate::Admits { .. } => Status::Admits,
        _ => Status::Unknown,
    };
    Ok(Verdict {
        status,
        checks,
        certificate,
    })
}

fn coefficient_table(
    summands: &[ManifoldDescriptor],
    space: &SearchSpace,
    modulus: Option<&BigInt>,
) -> Result<Vec<Vec<ObstructionCoefficient>>> {
    summands
        .iter()
        .zip(&space.candidates)
        .map(|(m, cands)| {
            cands
                .iter()
                .map(|s| Ok(obstruction_from_stable(m, s)?.with_modulus(modulus.cloned())))
                .collect()
        })
        .collect()
}

enum SearchResult {
    Found(Vec<usize>),
    NotFound {
        examined: BTreeSet<BigInt>,
        explored: u64,
        exhausted: bool,
    },
}
use SearchResult::{Found, NotFound};

struct Search<'a> {
    table: &'a [Vec<ObstructionCoefficient>],
    target: BigInt,
    modulus: Option<&'a BigInt>,
    half_dimension: u32,
    /// Range of `Σ_{j ≥ i} k_j` over all choices; only used without a modulus.
    suffix_range: Vec<(BigInt, BigInt)>,
    bound: u64,
    node_budget: u64,
    explored: u64,
    nodes: u64,
    examined: BTreeSet<BigInt>,
    path: Vec<usize>,
}

fn search(
    table: &[Vec<ObstructionCoefficient>],
    bound: u64,
    half_dimension: u32,
    modulus: Option<&BigInt>,
) -> Result<SearchResult> {
    let alpha = table.len();
    let mut suffix_range = vec![(BigInt::zero(), BigInt::zero()); alpha + 1];
    for i in (0..alpha).rev() {
        let ks = table[i].iter().map(|c| c.k());
        let lo = ks.clone().min().cloned().unwrap_or_default();
        let hi = ks.max().cloned().unwrap_or_default();
        suffix_range[i] = (&suffix_range[i + 1].0 + lo, &suffix_range[i + 1].1 + hi);
    }
    let mut s = Search {
        table,
        target: BigInt::from(alpha) - 1,
        modulus,
        half_dimension,
        suffix_range,
        bound,
        node_budget: bound.saturating_mul(alpha as u64 + 1),
        explored: 0,
        nodes: 0,
        examined: BTreeSet::new(),
        path: Vec::with_capacity(alpha),
    };
    let complete = s.descend(0, &BigInt::zero())?;
    if let Some(found) = complete {
        return Ok(Found(found));
    }
    let exhausted = s.explored < s.bound && s.nodes < s.node_budget;
    Ok(NotFound {
        examined: s.examined,
        explored: s.explored,
        exhausted,
    })
}

impl Search<'_> {
    /// Depth-first in lexicographic order. `Ok(Some)` on the first vanishing
    /// assignment, `Ok(None)` when the subtree (or the budget) is exhausted.
    fn descend(&mut self, depth: usize, partial: &BigInt) -> Result<Option<Vec<usize>>> {
        if self.explored >= self.bound || self.nodes >= self.node_budget {
            return Ok(None);
        }
        self.nodes += 1;
        if depth == self.table.len() {
            self.explored += 1;
            let total = ObstructionCoefficient::new(partial - &self.target, self.half_dimension)
                .with_modulus(self.modulus.cloned());
            if vanishes(&total) {
                return Ok(Some(self.path.clone()));
            }
            if self.examined.len() < MAX_RECORDED_COEFFICIENTS {
                self.examined.insert(total.k().clone());
            }
            return Ok(None);
        }
        for j in 0..self.table[depth].len() {
            let next = partial + self.table[depth][j].k();
            if self.modulus.is_none() {
                let (lo, hi) = &self.suffix_range[depth + 1];
                if &next + lo > self.target || &next + hi < self.target {
                    // every completion misses zero; record what it would give
                    if self.examined.len() < MAX_RECORDED_COEFFICIENTS {
                        let nearest = if &next + lo > self.target {
                            &next + lo
                        } else {
                            &next + hi
                        };
                        self.examined.insert(nearest - &self.target);
                    }
                    continue;
                }
            }
            self.path.push(j);
            let found = self.descend(depth + 1, &next)?;
            self.path.pop();
            if found.is_some() {
                return Ok(found);
            }
            if self.explored >= self.bound || self.nodes >= self.node_budget {
                break;
            }
        }
        Ok(None)
    }
}

/// Re-derives a verdict's certificate from scratch. Returns `Ok(true)` when
/// the certificate holds up; unknown verdicts certify nothing and pass.
pub fn replay_certificate(
    verdict: &Verdict,
    summands: &[ManifoldDescriptor],
    moduli: &ModulusTable,
) -> Result<bool> {
    match &verdict.certificate {
        Certificate::Admits {
            assignment, total, ..
        } => {
            if assignment.choices.len() != summands.len() {
                return Ok(false);
            }
            let formal = connected_sum(summands)?;
            let modulus = moduli.get(formal.half_dimension()).cloned();
            let parts = summands
                .iter()
                .zip(&assignment.choices)
                .map(|(m, s)| Ok(obstruction_from_stable(m, s)?.with_modulus(modulus.clone())))
                .collect::<Result<Vec<_>>>()?;
            let replayed = sum_obstruction(&parts)?;
            Ok(vanishes(&replayed) && &replayed == total)
        }
        Certificate::NotAdmits { failed } => {
            let formal = connected_sum(summands)?;
            Ok(necessary_checks(&formal)
                .iter()
                .any(|c| c == failed && c.outcome.is_fail()))
        }
        Certificate::Unknown { .. } => Ok(true),
    }
}
