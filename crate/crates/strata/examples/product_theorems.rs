//! Multiple points of product immersions.
//!
//! For immersions into Euclidean space the r-fold point manifold of a
//! product is `(-1)^{r-1}` times the product of the r-fold point manifolds.
//! For double points of maps to general targets a three-term correction
//! involving the Euler loci of the normal bundles appears. Both operations
//! verify their identity on the tensor model before returning.
//!
//! ```bash
//! cargo run --example product_theorems
//! ```

use strata::sample::{random_general_map, Rng};
use strata::{
    product_double_points, product_immersion_multipoint, rat, BundleData, GradedAlgebra,
    ImmersionData, Partition, Rat, SpaceModel, TotalClass,
};

fn sphere(gen: &str, euler: i64) -> ImmersionData<Rat> {
    let alg = GradedAlgebra::<Rat>::truncated_polynomial(&[(gen, 2, 2)], 2).unwrap();
    let e = alg.generator(gen).unwrap().scale(&rat(euler, 1));
    let bundle = BundleData::new(TotalClass::one(&alg), 2, Some(e)).unwrap();
    ImmersionData::new(SpaceModel::parallelizable(alg), 2, bundle).unwrap()
}

fn main() {
    // Two immersed spheres in R^4 with normal Euler number 2.
    let g1 = sphere("s", 2);
    let g2 = sphere("u", 2);

    let double = product_immersion_multipoint(&g1, &g2, 2, true).unwrap();
    println!("double points of g1 x g2: {double:?}");
    assert_eq!(double.get(&Partition::empty()), rat(-4, 1));

    // The double-point theorem over Euclidean targets: the three-term sum
    // (-2)(-2) + (-2)(2) + (2)(-2) = -4 reproduces the same count.
    let dd = product_double_points(&g1.to_general(), &g2.to_general(), true).unwrap();
    assert_eq!(dd, double);
    println!("three-term double-point formula agrees: {dd:?}");

    // An embedding factor kills every higher multiplicity.
    let flat = sphere("v", 0);
    let none = product_immersion_multipoint(&g1, &flat, 2, true).unwrap();
    assert!(none.is_zero());
    println!("embedding factor: double points vanish");

    // Synthetic general-target data: the identity is checked internally on
    // every call; a failure would return an identity-check error.
    let mut rng = Rng::new(7);
    for case in 0..5 {
        let a = random_general_map::<Rat>(&mut rng, 12);
        let b = random_general_map::<Rat>(&mut rng, 12);
        let class = product_double_points(&a, &b, true).unwrap();
        println!("random general-target case {case}: verified, {class:?}");
    }
}
