//! Thom polynomials of the first two singularity strata.
//!
//! The class dual to the singular locus of a codimension-k map is
//! `w_{k+1}` of the virtual normal bundle; for the corank-2 locus of an
//! oriented map of codimension `2t-2` it is `p_t`, rationally. Suspension
//! shifts the codimension without moving the stable classes.
//!
//! ```bash
//! cargo run --example sigma_counts
//! ```

use std::collections::BTreeMap;

use strata::{
    rat, suspend, thom_sigma1, thom_sigma2, GradedAlgebra, MapData, Mod2, Rat, SpaceModel,
    TotalClass,
};

fn main() {
    // A generic map RP^2 -> R^2 (codimension 0): the singular curve is dual
    // to w_1(nu) = a.
    let rp2 = GradedAlgebra::<Mod2>::truncated_polynomial(&[("a", 1, 3)], 2).unwrap();
    let a = rp2.generator("a").unwrap();
    let w_tangent =
        TotalClass::new(&rp2, BTreeMap::from([(1, a.clone()), (2, a.pow(2))])).unwrap();
    let f = MapData::new(
        SpaceModel::new(rp2, w_tangent.clone()),
        0,
        w_tangent.stable_inverse(),
    );
    let sigma1 = thom_sigma1(&f);
    println!("[S1] of RP^2 -> R^2: {}", sigma1.render());

    // Suspending into R^5 makes the class w_4(nu) = 0: the projection is
    // generically an immersion there.
    let suspended = suspend(&f, 3).unwrap();
    assert!(thom_sigma1(&suspended).is_zero());
    println!("[S1] of RP^2 -> R^5: 0 (immersible)");

    // A generic map CP^2 -> R^4 (codimension 0, t = 1): the corank-2 points
    // are dual to p_1(nu) = -3x^2, a count of -3.
    let cp2 = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 4).unwrap();
    let x = cp2.generator("x").unwrap();
    let p_tangent =
        TotalClass::new(&cp2, BTreeMap::from([(1, x.pow(2).scale(&rat(3, 1)))])).unwrap();
    let g = MapData::new(
        SpaceModel::new(cp2, p_tangent.clone()),
        0,
        p_tangent.stable_inverse(),
    );
    let sigma2 = thom_sigma2(&g).unwrap();
    println!(
        "[S2] of CP^2 -> R^4: {} paired to {}",
        sigma2.render(),
        sigma2.pair()
    );
    assert_eq!(sigma2.pair(), rat(-3, 1));

    // Negative suspension multiplies the source by a sphere; stable
    // invariance keeps the class components unchanged.
    let fattened = suspend(&g, -2).unwrap();
    println!(
        "after multiplying the source by S^2: dim {}, codim {}, p_1(nu) = {}",
        fattened.source().dim(),
        fattened.codim(),
        fattened.normal().component(1).render()
    );
}
