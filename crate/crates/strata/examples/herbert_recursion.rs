//! The one-step multiple-point recursion against its Euclidean closed form.
//!
//! Over a general target the classes m_r of the r-fold point manifolds obey
//! `m_r beta(nu) = f^* n_{r-1} - e(nu) m_{r-1}`. Over a Euclidean target
//! the pulled series vanishes and iterating the step from `m_1 = beta(M)`
//! collapses to the closed form `m_r = (-e)^{r-1} beta(M)^r`. This example
//! runs both routes on a CP^2 immersion and on seeded random data.
//!
//! ```bash
//! cargo run --example herbert_recursion
//! ```

use std::collections::BTreeMap;

use strata::sample::{random_immersion, Rng};
use strata::{
    herbert_step, multipoint_numbers, rat, BetaSeries, BundleData, CobordismClass, GradedAlgebra,
    ImmersionData, Rat, SpaceModel, TotalClass,
};

fn main() {
    // CP^2 immersed with codimension 2, Euler class x.
    let cp2 = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 4).unwrap();
    let x = cp2.generator("x").unwrap();
    let tangent =
        TotalClass::new(&cp2, BTreeMap::from([(1, x.pow(2).scale(&rat(3, 1)))])).unwrap();
    let bundle = BundleData::new(tangent.stable_inverse(), 2, Some(x.clone())).unwrap();
    let imm = ImmersionData::new(SpaceModel::new(cp2.clone(), tangent), 2, bundle).unwrap();

    let data = imm.to_general();
    let zero = BetaSeries::zero(&cp2);
    let mut m = imm.source().tangent().beta();
    for r in 2..=4u32 {
        m = herbert_step(&data, &m, &zero);
        let closed = imm
            .source()
            .tangent()
            .whitney_pow(r)
            .beta()
            .scale(&imm.euler().neg().pow(r - 1));
        assert_eq!(m, closed);
        let dim = imm.source().dim() as i64 - (r as i64 - 1) * imm.codim() as i64;
        let class = CobordismClass::from_series(dim, &m);
        assert_eq!(class, multipoint_numbers(&imm, r));
        println!("r = {r}: recursion = closed form, class {class:?}");
    }

    // The same equality on seeded random immersion data.
    let mut rng = Rng::new(42);
    for case in 0..5 {
        let imm = random_immersion::<Rat>(&mut rng, 16);
        let data = imm.to_general();
        let zero = BetaSeries::zero(imm.source().algebra());
        let mut m = imm.source().tangent().beta();
        for r in 2..=4u32 {
            m = herbert_step(&data, &m, &zero);
            let closed = imm
                .source()
                .tangent()
                .whitney_pow(r)
                .beta()
                .scale(&imm.euler().neg().pow(r - 1));
            assert_eq!(m, closed);
        }
        println!(
            "random case {case}: dim {} codim {}, recursion = closed form for r = 2..4",
            imm.source().dim(),
            imm.codim()
        );
    }
}
