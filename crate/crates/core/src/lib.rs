//! Exact engine for deciding when connected sums of even-dimensional
//! manifolds admit almost complex structures.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: truncated graded polynomial rings over ℤ (cohomology rings);
//! * [`manifold`]: descriptors, Kronecker pairing, formal connected sums;
//! * [`stable`]: line-bundle aggregates, Chern classes and numbers;
//! * [`obstruction`]: the top obstruction as a multiple of `o[S²ⁿ]`;
//! * [`decision`]: necessary conditions plus certificate search;
//! * [`registry`]: built-in manifolds (CPⁿ, spheres, products, HP²).

pub mod decision;
pub mod error;
pub mod manifold;
pub mod obstruction;
pub mod registry;
pub mod ring;
pub mod stable;

pub use decision::{
    decide, hirzebruch_check, necessary_checks, replay_certificate, yang_8m_check, Certificate,
    CheckKind, CheckOutcome, CheckRecord, SearchSpace, Status, Verdict, DEFAULT_SEARCH_BOUND,
};
pub use error::{Error, Result};
pub use manifold::{
    connected_sum, AtomicData, AtomicSpec, Flavor, ManifoldDescriptor, Orientation, Partition,
};
pub use obstruction::{
    obstruction_from_stable, sum_obstruction, vanishes, ModulusTable, ObstructionCoefficient,
    StructureAssignment,
};
pub use registry::{builtin, builtin_almost_complex, Registry, RegistryEntry};
pub use ring::{Generator, Monomial, RingElement, RingPresentation};
pub use stable::{realification_check, top_chern_number, LineBundleAggregate, StableStructure};

pub use num_bigint::BigInt;
