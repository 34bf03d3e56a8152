//! The rational cobordism ring of Morin maps.
//!
//! Elements are vectors of even-index stratum classes; multiplication is
//! strata-wise with bigrading `(n, k+1)` additive, and even-codimension
//! factors annihilate all higher strata. Projecting an immersion to a
//! hyperplane gives a class whose r-th stratum is the (r+1)-fold point
//! class of the immersion.
//!
//! ```bash
//! cargo run --example morin_ring
//! ```

use std::collections::BTreeMap;

use strata::{
    class_product, morin_mul, morin_rank, prim_strata, rat, BundleData, CobordismClass,
    GradedAlgebra, ImmersionData, MorinClass, Partition, Rat, SpaceModel, TotalClass,
};

fn main() {
    // Rank table of the rational Morin cobordism groups.
    println!("rank(n, k) for n <= 12:");
    print!("       ");
    for k in 1..=4 {
        print!("k={k}  ");
    }
    println!();
    for n in 0..=12 {
        print!("n={n:2}   ");
        for k in 1..=4 {
            print!("{:3}  ", morin_rank(n, k));
        }
        println!();
    }

    // Kunneth product of cobordism classes: [CP^2]^2.
    let cp2 = CobordismClass::new(
        4,
        BTreeMap::from([(Partition::new(vec![1]), rat(3, 1))]),
    )
    .unwrap();
    let square = class_product(&cp2, &cp2);
    println!("[CP^2]^2 = {square:?}");

    // A Morin class with strata {0: [CP^2], 2: point} in bidegree (4, 2),
    // squared: gradings add to (8, 4), strata multiply componentwise.
    let point = CobordismClass::new(0, BTreeMap::from([(Partition::empty(), rat(1, 1))])).unwrap();
    let m = MorinClass::new(4, 1, BTreeMap::from([(0, cp2), (2, point)])).unwrap();
    let msq = morin_mul(&m, &m);
    println!("bidegree of m^2: {:?}", msq.bidegree());
    for (r, class) in msq.strata() {
        println!("stratum {r}: {class:?}");
    }

    // Multiplying by an even-codimension class annihilates singularities.
    let even = MorinClass::new(
        4,
        2,
        BTreeMap::from([(0, CobordismClass::new(4, BTreeMap::from([(Partition::new(vec![1]), rat(1, 1))])).unwrap())]),
    )
    .unwrap();
    let killed = morin_mul(&m, &even);
    assert!(killed.strata().iter().all(|(r, c)| *r == 0 || c.is_zero()));
    println!("even-codimension factor: higher strata all vanish");

    // From an immersion to its hyperplane projection: the r-th stratum of
    // the projection is the (r+1)-fold point class of the immersion.
    let s2 = GradedAlgebra::<Rat>::truncated_polynomial(&[("s", 2, 2)], 2).unwrap();
    let e = s2.generator("s").unwrap().scale(&rat(2, 1));
    let bundle = BundleData::new(TotalClass::one(&s2), 2, Some(e)).unwrap();
    let imm = ImmersionData::new(SpaceModel::parallelizable(s2), 2, bundle).unwrap();
    let projected = prim_strata(&imm);
    println!(
        "projection of S^2 -> R^4: Morin class at (n, k) = ({}, {})",
        projected.n(),
        projected.k()
    );
    for (r, class) in projected.strata() {
        println!("stratum {r}: {class:?}");
    }
}
