//! Multiple points of Boy's surface.
//!
//! Boy's surface is an immersion of RP^2 in R^3. Its double-point set is a
//! closed curve and its triple-point count is odd; the engine reproduces
//! both facts from the closed form
//! `m_r = (w_1 nu)^{r-1} * beta'(RP^2)^r` over F2.
//!
//! ```bash
//! cargo run --example boys_surface
//! ```

use std::collections::BTreeMap;

use strata::{
    multipoint_numbers, BundleData, GradedAlgebra, ImmersionData, Mod2, SpaceModel, TotalClass,
};

fn main() {
    // H*(RP^2; F2) = F2[a]/(a^3), w(T RP^2) = (1+a)^3 = 1 + a + a^2.
    let rp2 = GradedAlgebra::<Mod2>::truncated_polynomial(&[("a", 1, 3)], 2).unwrap();
    let a = rp2.generator("a").unwrap();
    let tangent =
        TotalClass::new(&rp2, BTreeMap::from([(1, a.clone()), (2, a.pow(2))])).unwrap();

    // The normal class of an immersion in R^3 is the stable inverse
    // (1 + a), and w_1(nu) = a is the mod-2 Euler class.
    let normal = tangent.stable_inverse();
    println!("w(nu) component 1: {}", normal.component(1).render());
    let bundle = BundleData::new(normal, 1, None).unwrap();
    let boy = ImmersionData::new(SpaceModel::new(rp2, tangent), 1, bundle).unwrap();

    for r in 1..=4 {
        let class = multipoint_numbers(&boy, r);
        println!("r = {r}: {class:?}");
    }

    let triple = multipoint_numbers(&boy, 3);
    assert_eq!(triple.get(&strata::Partition::empty()), Mod2(true));
    println!("triple points: odd, exactly as Boy's surface demands");

    let double = multipoint_numbers(&boy, 2);
    assert!(double.is_zero());
    println!("double curve: a closed 1-manifold, all Stiefel-Whitney numbers zero");
}
