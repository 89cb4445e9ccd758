//! Shared fixtures for the benchmarks.

use acsum_cli::{parse, Expression, Options, Session};
use acsum_core::{builtin, ManifoldDescriptor, RingElement};

/// The total Pontrjagin class of CP(n), computed from scratch.
pub fn projective_pontrjagin(n: u32) -> RingElement {
    let m = builtin("CP", &[n]).expect("built-in");
    let ring = m.descriptor.cohomology().expect("atomic");
    let x = RingElement::generator(ring, 0).expect("generator");
    RingElement::one(ring)
        .add(&x.mul(&x).expect("same ring"))
        .expect("same ring")
        .power(n + 1)
}

pub fn cp(n: u32) -> ManifoldDescriptor {
    builtin("CP", &[n]).expect("built-in").descriptor
}

/// A long mixed query used by the parser benchmark.
pub fn long_query(terms: usize) -> String {
    (0..terms)
        .map(|i| match i % 3 {
            0 => format!("{}*CP({})", i + 1, 2 * (i % 5) + 2),
            1 => "conj(conj(SphereProduct(2,2)))".to_string(),
            _ => "HP2".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" # ")
}

pub fn decide_query(query: &str) -> String {
    let e: Expression = parse(query).expect("query parses");
    let (_, v) = Session::new()
        .decide(&e, &Options::default())
        .expect("query resolves");
    v.status.as_str().to_string()
}
