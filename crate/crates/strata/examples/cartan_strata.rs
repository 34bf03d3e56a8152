//! Cartan-type product expansions for singular strata.
//!
//! The singular locus of a generic perturbation of a product map expands
//! over suspensions of the factors: each term suspends one factor up and
//! the other down (multiplying its source by a sphere), evaluates the Thom
//! polynomial there, and restricts back. The sum reproduces the direct
//! Whitney expansion of the product's normal class; the engine executes the
//! bookkeeping literally and asserts the equality.
//!
//! ```bash
//! cargo run --example cartan_strata
//! ```

use std::collections::BTreeMap;

use strata::sample::{random_map_data, Rng};
use strata::{
    rat, sigma1_product, sigma2_product, GradedAlgebra, MapData, Mod2, Rat, SpaceModel, TotalClass,
};

fn projected_plane(gen: &str) -> MapData<Mod2> {
    let alg = GradedAlgebra::<Mod2>::truncated_polynomial(&[(gen, 1, 3)], 2).unwrap();
    let a = alg.generator(gen).unwrap();
    let tangent = TotalClass::new(&alg, BTreeMap::from([(1, a.clone()), (2, a.pow(2))])).unwrap();
    let normal = tangent.stable_inverse();
    MapData::new(SpaceModel::new(alg, tangent), 0, normal)
}

fn cp2_map(gen: &str, codim: i64) -> MapData<Rat> {
    let alg = GradedAlgebra::<Rat>::truncated_polynomial(&[(gen, 2, 3)], 4).unwrap();
    let x2 = alg.generator(gen).unwrap().pow(2);
    let tangent = TotalClass::new(&alg, BTreeMap::from([(1, x2.scale(&rat(3, 1)))])).unwrap();
    let normal = tangent.stable_inverse();
    MapData::new(SpaceModel::new(alg, tangent), codim, normal)
}

fn main() {
    // Corank-1 strata of a product of two RP^2 -> R^2 maps: the singular
    // locus of the product is a (x) 1 + 1 (x) a', assembled from the j = 1
    // suspension terms.
    let f = projected_plane("a");
    let g = projected_plane("b");
    let expansion = sigma1_product(&f, &g, true).unwrap();
    println!("S1 of (RP^2 -> R^2) x (RP^2 -> R^2):");
    println!("  total    = {}", expansion.total.render());
    for (j, term) in &expansion.terms {
        println!("  j = {j}: {}", term.render());
    }

    // Corank-2 strata of a product of two CP^2 -> R^4 maps: p_1 of the
    // product normal class, again from the j = 1 terms.
    let p = cp2_map("x", 0);
    let q = cp2_map("y", 0);
    let expansion = sigma2_product(&p, &q, true).unwrap();
    println!("S2 of (CP^2 -> R^4) x (CP^2 -> R^4):");
    println!("  total    = {}", expansion.total.render());
    for (j, term) in &expansion.terms {
        println!("  j = {j}: {}", term.render());
    }

    // Mixed codimensions spread the expansion over several suspensions.
    let p2 = cp2_map("x", 2);
    let q2 = cp2_map("y", -2);
    let expansion = sigma2_product(&p2, &q2, true).unwrap();
    println!("S2 with codimensions (2, -2):");
    println!("  total    = {}", expansion.total.render());
    for (j, term) in &expansion.terms {
        println!("  j = {j}: {}", term.render());
    }

    // Randomized data: every call checks the term sum against the direct
    // expansion and fails loudly on any mismatch.
    let mut rng = Rng::new(5);
    let mut checked = 0;
    while checked < 25 {
        let f = random_map_data::<Mod2>(&mut rng, 6);
        let g = random_map_data::<Mod2>(&mut rng, 6);
        sigma1_product(&f, &g, true).unwrap();
        let p = random_map_data::<Rat>(&mut rng, 12);
        let q = random_map_data::<Rat>(&mut rng, 12);
        sigma2_product(&p, &q, true).unwrap();
        checked += 1;
    }
    println!("verified {checked} random corank-1 and corank-2 product expansions");
}
