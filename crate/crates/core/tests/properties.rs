use std::sync::Arc;

use acsum_core::manifold::conj_label;
use acsum_core::stable::parity_consistent;
use acsum_core::{
    builtin, builtin_almost_complex, connected_sum, obstruction_from_stable, BigInt, Error,
    Generator, ManifoldDescriptor, Monomial, RingElement, RingPresentation, StableStructure,
};
use proptest::prelude::*;

/// x in degree 2 with x^3 = 0, y in degree 4 with y^2 = 0; top class x^2*y.
fn two_generator_ring() -> Arc<RingPresentation> {
    RingPresentation::new(
        vec![Generator::new("x", 2, 2), Generator::new("y", 4, 1)],
        8,
        vec![2, 1],
    )
    .unwrap()
}

/// Dense coefficient grid indexed by `[x exponent][y exponent]`.
type Dense = [[i64; 2]; 3];

fn to_element(ring: &Arc<RingPresentation>, d: &Dense) -> RingElement {
    let terms =
        (0..3).flat_map(|i| (0..2).map(move |j| (vec![i as u32, j as u32], BigInt::from(d[i][j]))));
    RingElement::from_terms(ring, terms).unwrap()
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = [[0i64; 2]; 3];
    for i in 0..3 {
        for j in 0..2 {
            for k in 0..3 {
                for l in 0..2 {
                    if i + k <= 2 && j + l <= 1 {
                        out[i + k][j + l] += a[i][j] * b[k][l];
                    }
                }
            }
        }
    }
    out
}

fn dense() -> impl Strategy<Value = Dense> {
    prop::array::uniform3(prop::array::uniform2(-20i64..=20))
}

fn same_invariants(a: &ManifoldDescriptor, b: &ManifoldDescriptor) -> bool {
    a.dimension() == b.dimension()
        && a.euler_characteristic() == b.euler_characteristic()
        && a.signature() == b.signature()
        && a.connectivity() == b.connectivity()
        && a.pontrjagin_numbers() == b.pontrjagin_numbers()
}

fn eight_manifold() -> impl Strategy<Value = ManifoldDescriptor> {
    prop_oneof![
        Just(("CP", vec![4u32], false)),
        Just(("CP", vec![4], true)),
        Just(("HP2", vec![], false)),
        Just(("HP2", vec![], true)),
        Just(("SphereProduct", vec![2, 2], false)),
        Just(("SphereProduct", vec![1, 3], false)),
        Just(("Sphere", vec![4], false)),
    ]
    .prop_map(|(name, params, conj)| {
        let e = builtin(name, &params).unwrap();
        if conj {
            e.conjugate().descriptor
        } else {
            e.descriptor
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn multiplication_matches_dense_convolution(a in dense(), b in dense()) {
        let ring = two_generator_ring();
        let product = to_element(&ring, &a).mul(&to_element(&ring, &b)).unwrap();
        prop_assert_eq!(product, to_element(&ring, &dense_mul(&a, &b)));
    }

    #[test]
    fn ring_axioms_with_two_generators(a in dense(), b in dense(), c in dense()) {
        let ring = two_generator_ring();
        let (a, b, c) = (to_element(&ring, &a), to_element(&ring, &b), to_element(&ring, &c));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&a.neg()).unwrap(), RingElement::zero(&ring));
        prop_assert_eq!(a.mul(&RingElement::one(&ring)).unwrap(), a.clone());
        let graded: RingElement = [0, 2, 4, 6, 8]
            .iter()
            .map(|&d| a.component(d).unwrap())
            .fold(RingElement::zero(&ring), |acc, x| acc.add(&x).unwrap());
        prop_assert_eq!(graded, a);
    }

    #[test]
    fn connected_sum_is_associative(a in eight_manifold(), b in eight_manifold(), c in eight_manifold()) {
        let left = connected_sum(&[connected_sum(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
        let right = connected_sum(&[a.clone(), connected_sum(&[b.clone(), c.clone()]).unwrap()]).unwrap();
        let flat = connected_sum(&[a, b, c]).unwrap();
        prop_assert!(same_invariants(&left, &right));
        prop_assert!(same_invariants(&left, &flat));
        prop_assert_eq!(left.label(), flat.label());
    }

    #[test]
    fn orientation_reversal_is_an_involution(m in eight_manifold()) {
        let back = m.reverse_orientation().reverse_orientation();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(m.reverse_orientation().signature(), -m.signature());
        prop_assert_eq!(conj_label(&conj_label(m.label())), m.label());
    }
}

#[test]
fn registry_sweep_of_projective_spaces() {
    for n in 1..=10u32 {
        let e = builtin("CP", &[n]).unwrap();
        let d = &e.descriptor;
        assert_eq!(d.dimension(), 2 * n);
        assert_eq!(d.euler_characteristic(), i64::from(n) + 1);
        assert_eq!(d.signature(), i64::from(n % 2 == 0));
        assert!(e.admits_honest_acs());
        let ring = d.cohomology().unwrap();
        let x = RingElement::generator(ring, 0).unwrap();
        assert_eq!(d.kronecker_pair(&x.power(n)).unwrap(), BigInt::from(1));
        for s in &e.canonical_structures {
            if !matches!(s, StableStructure::HonestAcs) {
                let k = obstruction_from_stable(d, s).unwrap();
                assert_eq!(k.k(), &BigInt::from(2), "CP({n})");
            }
        }
        let c = builtin("conjCP", &[n]).unwrap();
        assert_eq!(c.descriptor.signature(), -d.signature());
        let k = obstruction_from_stable(&c.descriptor, &c.canonical_structures[0]).unwrap();
        assert_eq!(k.k(), &BigInt::from(1), "conj(CP({n}))");
    }
    assert!(builtin("CP", &[0]).is_err());
    assert!(builtin("CP", &[]).is_err());
}

#[test]
fn almost_complex_builtins_all_carry_std() {
    for dim in (2..=16).step_by(2) {
        for e in builtin_almost_complex(dim) {
            assert!(e.admits_honest_acs(), "{}", e.descriptor.label());
            assert_eq!(e.descriptor.dimension(), dim);
        }
    }
}

#[test]
fn parity_guard_rejects_odd_differences() {
    let cp4 = builtin("CP", &[4]).unwrap().descriptor;
    assert!(!parity_consistent(&cp4, &BigInt::from(4)));
    assert!(parity_consistent(&cp4, &BigInt::from(1)));
    let err = obstruction_from_stable(&cp4, &StableStructure::trivial(4)).unwrap_err();
    assert!(matches!(err, Error::ParityViolation { .. }));
    assert!(matches!(
        obstruction_from_stable(&cp4, &StableStructure::HonestAcs),
        Ok(k) if k.k() == &BigInt::from(0)
    ));
}

#[test]
fn monomials_outside_the_truncation_vanish() {
    let ring = two_generator_ring();
    let y = RingElement::generator(&ring, 1).unwrap();
    assert!(y.mul(&y).unwrap().is_zero());
    let top = RingElement::monomial(&ring, Monomial(vec![2, 1]), 3);
    assert_eq!(top.homogeneous_degree(), Some(8));
}
