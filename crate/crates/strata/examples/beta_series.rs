//! Graded-ring models, total classes, and the beta series.
//!
//! Builds the cohomology of CP^2, forms the total Pontrjagin class of its
//! tangent bundle, inverts it, and shows the beta series multiplying under
//! Whitney sum with exact rational coefficients.
//!
//! ```bash
//! cargo run --example beta_series
//! ```

use std::collections::BTreeMap;

use strata::{rat, Element, GradedAlgebra, Partition, Rat, TotalClass};

fn main() {
    // H*(CP^2; Q) = Q[x]/(x^3) with |x| = 2, fundamental class x^2.
    let cp2 = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 4).unwrap();
    let x = cp2.generator("x").unwrap();

    // p(T CP^2) = (1 + x^2)^3 = 1 + 3x^2 after truncation.
    let p = TotalClass::new(&cp2, BTreeMap::from([(1, x.pow(2).scale(&rat(3, 1)))])).unwrap();
    println!("p(T CP^2) component 1: {}", p.component(1).render());

    let p_inv = p.stable_inverse();
    println!("p(nu) = p(T)^(-1) component 1: {}", p_inv.component(1).render());
    assert!(p.whitney_sum(&p_inv).is_trivial());

    // The beta series: coefficients indexed by partitions.
    let beta = p.beta();
    for (partition, coeff) in beta.coeffs() {
        println!("beta(T CP^2) at {partition}: {}", coeff.render());
    }

    // Multiplicativity: beta(u + v) = beta(u) beta(v), on the general
    // convolution path as well as the Whitney shortcut.
    let product = beta.mul_convolution(&p_inv.beta());
    assert_eq!(product, strata::BetaSeries::unit(&cp2));
    println!("beta(p) * beta(p^-1) = beta(trivial)");

    // Pairing against the fundamental class reads off Pontrjagin numbers.
    let p1_number = beta.coeff(&Partition::new(vec![1])).pair();
    println!("<p_1(T CP^2), [CP^2]> = {p1_number}");
    assert_eq!(p1_number, rat(3, 1));

    // Everything is exact: a third of the class stays a third.
    let third = Element::one(&cp2).scale(&rat(1, 3));
    assert_eq!(third.scale(&rat(3, 1)), Element::one(&cp2));
    println!("exact rational arithmetic: 3 * (1/3) = 1");
}
