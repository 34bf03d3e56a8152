//! Property tests for the algebra layer: the axioms hold on random
//! elements of random models, not just on the basis where construction
//! checks them.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use strata::algebra::{tensor, Element, GradedAlgebra, LinearMap};
use strata::sample::{random_algebra, random_element, random_total, RandomScalar, Rng};
use strata::scalar::{Mod2, Rat};

fn random_mixed_element<K: RandomScalar>(
    rng: &mut Rng,
    algebra: &strata::AlgebraRef<K>,
) -> Element<K> {
    let mut acc = Element::zero(algebra);
    for d in 0..=algebra.top_degree() {
        acc = acc.add(&random_element(rng, algebra, d));
    }
    acc
}

fn algebra_axioms<K: RandomScalar>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = Rng::new(seed);
    let a = random_algebra::<K>(&mut rng, 10);
    let x = random_mixed_element(&mut rng, &a);
    let y = random_mixed_element(&mut rng, &a);
    let z = random_mixed_element(&mut rng, &a);
    let one = Element::one(&a);

    prop_assert_eq!(x.mul(&y), y.mul(&x));
    prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    prop_assert_eq!(one.mul(&x), x.clone());
    // Distributivity and pairing linearity.
    prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
    prop_assert_eq!(x.add(&y).pair(), x.pair().add(&y.pair()));
    // The pairing only sees the top-degree component.
    prop_assert_eq!(x.pair(), x.component(a.top_degree()).pair());
    Ok(())
}

fn tensor_pairing<K: RandomScalar>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = Rng::new(seed);
    let a = random_algebra::<K>(&mut rng, 8);
    let b = random_algebra::<K>(&mut rng, 8);
    let t = tensor(&a, &b);
    let x = random_mixed_element(&mut rng, &a);
    let y = random_mixed_element(&mut rng, &b);
    prop_assert_eq!(t.pure(&x, &y).pair(), x.pair().mul(&y.pair()));
    // Degrees add across the embedding.
    let d = rng.below(a.top_degree() as u64 + 1) as usize;
    let xe = random_element(&mut rng, &a, d);
    prop_assert!(t.embed_left(&xe).is_homogeneous_of(d));
    Ok(())
}

fn ring_map_multiplicative<K: RandomScalar>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = Rng::new(seed);
    let a = random_algebra::<K>(&mut rng, 8);
    let b = random_algebra::<K>(&mut rng, 8);
    let t = tensor(&a, &b);
    let phi = t.project_left();
    let x = random_mixed_element(&mut rng, t.algebra());
    let y = random_mixed_element(&mut rng, t.algebra());
    prop_assert_eq!(phi.apply(&x.mul(&y)), phi.apply(&x).mul(&phi.apply(&y)));
    prop_assert_eq!(phi.apply(&Element::one(t.algebra())), Element::one(&a));
    Ok(())
}

fn stable_inverse_cancels<K: RandomScalar>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = Rng::new(seed);
    let a = random_algebra::<K>(&mut rng, 12);
    let u = random_total::<K>(&mut rng, &a, None);
    prop_assert!(u.whitney_sum(&u.stable_inverse()).is_trivial());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_algebra_axioms(seed in any::<u64>()) {
        algebra_axioms::<Rat>(seed)?;
    }

    #[test]
    fn mod2_algebra_axioms(seed in any::<u64>()) {
        algebra_axioms::<Mod2>(seed)?;
    }

    #[test]
    fn tensor_pairing_is_multiplicative(seed in any::<u64>()) {
        tensor_pairing::<Rat>(seed)?;
        tensor_pairing::<Mod2>(seed)?;
    }

    #[test]
    fn slice_restriction_is_a_ring_map(seed in any::<u64>()) {
        ring_map_multiplicative::<Rat>(seed)?;
        ring_map_multiplicative::<Mod2>(seed)?;
    }

    #[test]
    fn whitney_inverse_cancels(seed in any::<u64>()) {
        stable_inverse_cancels::<Rat>(seed)?;
        stable_inverse_cancels::<Mod2>(seed)?;
    }

    #[test]
    fn rendered_elements_reparse(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let a = random_algebra::<Rat>(&mut rng, 12);
        let x = random_mixed_element(&mut rng, &a);
        let text = x.render();
        let back = strata::cli::poly::parse_element(&text, &a).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn deterministic_recomputation() {
    // Re-running the same computation reproduces bit-identical results.
    let run = || {
        let mut rng = Rng::new(99);
        let a = random_algebra::<Rat>(&mut rng, 12);
        let u = random_total::<Rat>(&mut rng, &a, None);
        let series = u.beta().mul_convolution(&u.stable_inverse().beta());
        let mut out = String::new();
        for (p, c) in series.coeffs() {
            out.push_str(&format!("{p}:{};", c.render()));
        }
        for d in 0..=a.top_degree() {
            for &i in a.basis_of_degree(d) {
                out.push_str(&format!("{}/{};", a.monomial(i), d));
            }
        }
        out
    };
    assert_eq!(run(), run());
}

#[test]
fn structure_constants_accept_kunneth_tables() {
    // A hand-entered table for the S^2 x S^2 model passes the eager checks
    // and reproduces the Kunneth pairing.
    use strata::algebra::Monomial;
    use strata::scalar::rat;

    let su = || Monomial { factors: vec![("s".into(), 1), ("u".into(), 1)] };
    let basis = vec![
        (Monomial::unit(), 0),
        (Monomial::single("s"), 2),
        (Monomial::single("u"), 2),
        (su(), 4),
    ];
    let e = |i: usize| vec![(i, rat(1, 1))];
    let zero = Vec::new;
    let products = vec![
        vec![e(0), e(1), e(2), e(3)],
        vec![e(1), zero(), e(3), zero()],
        vec![e(2), e(3), zero(), zero()],
        vec![e(3), zero(), zero(), zero()],
    ];
    let alg = GradedAlgebra::from_structure(
        basis,
        products,
        3,
        vec![("s".to_string(), 1), ("u".to_string(), 2)],
    )
    .unwrap();
    let s = alg.generator("s").unwrap();
    let u = alg.generator("u").unwrap();
    assert_eq!(s.mul(&u).pair(), rat(1, 1));
    assert!(s.mul(&s).is_zero());

    // The same table with s*u and u*s disagreeing is rejected.
    let basis2 = vec![
        (Monomial::unit(), 0),
        (Monomial::single("s"), 2),
        (Monomial::single("u"), 2),
        (su(), 4),
    ];
    let bad_products = vec![
        vec![e(0), e(1), e(2), e(3)],
        vec![e(1), zero(), e(3), zero()],
        vec![e(2), vec![(3, rat(-1, 1))], zero(), zero()],
        vec![e(3), zero(), zero(), zero()],
    ];
    let err = GradedAlgebra::<Rat>::from_structure(basis2, bad_products, 3, vec![]).unwrap_err();
    assert!(err.to_string().contains("not commutative"));
}

#[test]
fn linear_map_grading_is_enforced() {
    let a = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 4).unwrap();
    let b = GradedAlgebra::<Rat>::truncated_polynomial(&[("y", 2, 4)], 6).unwrap();
    let y = b.generator("y").unwrap();
    // A pushforward with shift 2 sends degree-d columns to degree d+2.
    let cols = vec![y.clone(), y.pow(2), y.pow(3)];
    let push = LinearMap::new(&a, &b, 2, cols, false).unwrap();
    let x = a.generator("x").unwrap();
    assert_eq!(push.apply(&x), y.pow(2));

    // Mixing degrees in a column is rejected.
    let bad_cols = vec![y.clone(), y.pow(2).add(&y), y.pow(3)];
    assert!(LinearMap::new(&a, &b, 2, bad_cols, false).is_err());
}
