//! Characteristic numbers of zero loci of generic sections.
//!
//! The zero set of a generic section of a bundle xi over B has
//! beta-pushforward `beta(B) e(xi) / beta(xi)`, so its characteristic
//! numbers come from one series evaluation. Applied to the realified
//! O(4) over CP^3 this produces the quartic K3 surface with p_1 = -48;
//! applied to TS^2 it counts the Euler characteristic of the sphere.
//!
//! ```bash
//! cargo run --example k3_euler_locus
//! ```

use std::collections::BTreeMap;

use strata::{euler_locus, rat, BundleData, GradedAlgebra, Partition, Rat, SpaceModel, TotalClass};

fn main() {
    // chi(S^2) = 2: the zero locus of a generic section of TS^2.
    let s2 = GradedAlgebra::<Rat>::truncated_polynomial(&[("s", 2, 2)], 2).unwrap();
    let e = s2.generator("s").unwrap().scale(&rat(2, 1));
    let ts2 = BundleData::new(TotalClass::one(&s2), 2, Some(e)).unwrap();
    let chi = euler_locus(&SpaceModel::parallelizable(s2), &ts2).unwrap();
    println!("zero locus of a section of TS^2: {chi:?}");
    assert_eq!(chi.get(&Partition::empty()), rat(2, 1));

    // Hypersurfaces V_d in CP^3: p_1[V_d] = d(4 - d^2) by adjunction.
    for d in 1i64..=5 {
        let cp3 = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 4)], 6).unwrap();
        let x = cp3.generator("x").unwrap();
        let x2 = x.pow(2);
        let tangent =
            TotalClass::new(&cp3, BTreeMap::from([(1, x2.scale(&rat(4, 1)))])).unwrap();
        let od_real = BundleData::new(
            TotalClass::new(&cp3, BTreeMap::from([(1, x2.scale(&rat(d * d, 1)))])).unwrap(),
            2,
            Some(x.scale(&rat(d, 1))),
        )
        .unwrap();
        let locus = euler_locus(&SpaceModel::new(cp3, tangent), &od_real).unwrap();
        let p1 = locus.get(&Partition::new(vec![1]));
        println!("V_{d} in CP^3: p_1 = {p1}");
        assert_eq!(p1, rat(d * (4 - d * d), 1));
    }
    println!("d = 4 is the K3 surface: p_1 = -48, signature -16");
}
