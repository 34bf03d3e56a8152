//! Thom polynomials of the first two singularity strata and their behavior
//! under products.
//!
//! The class dual to the closure of the singular set of a generic map of
//! codimension `k` is `w_{k+1}` of the virtual normal bundle; for the
//! corank-2 locus of an oriented map of even codimension `k = 2t-2` it is
//! the Pontrjagin class `p_t` of the virtual normal bundle, rationally.
//!
//! The product theorems below are executed literally: each term suspends a
//! factor (adding trivial summands or multiplying the source by a sphere),
//! evaluates the Thom polynomial of the suspended map, restricts along the
//! slice inclusion, and multiplies into the Kunneth model. The term sum is
//! then checked against the direct Cartan expansion of the product's normal
//! class, so the bookkeeping identity is exercised rather than restated.
//!
//! Out-of-range class indices vanish and index 0 gives 1, which truncates
//! the suspension sums.

use crate::algebra::{tensor, Element, GradedAlgebra, LinearMap};
use crate::charclass::{SpaceModel, TotalClass};
use crate::error::{Error, Result};
use crate::scalar::{Mod2, Rat, Scalar};

/// A generic map out of a model space: virtual normal class and codimension
/// of either sign. Stiefel-Whitney data drives the corank-1 operations,
/// Pontrjagin data the corank-2 ones.
#[derive(Clone)]
pub struct MapData<K: Scalar> {
    source: SpaceModel<K>,
    codim: i64,
    normal: TotalClass<K>,
}

impl<K: Scalar> MapData<K> {
    pub fn new(source: SpaceModel<K>, codim: i64, normal: TotalClass<K>) -> Self {
        crate::algebra::same_algebra(normal.owner(), source.algebra());
        MapData { source, codim, normal }
    }

    pub fn source(&self) -> &SpaceModel<K> {
        &self.source
    }

    pub fn codim(&self) -> i64 {
        self.codim
    }

    pub fn normal(&self) -> &TotalClass<K> {
        &self.normal
    }
}

/// The class dual to the singular locus: `w_{k+1}` of the virtual normal
/// bundle. Zero for `k+1 < 0`, the unit for `k+1 = 0`.
pub fn thom_sigma1(f: &MapData<Mod2>) -> Element<Mod2> {
    f.normal.component_signed(f.codim + 1)
}

/// The rational class dual to the corank-2 locus of a map of even
/// codimension `k = 2t-2`: the Pontrjagin class `p_t` of the virtual normal
/// bundle. Zero for `t < 0`, the unit for `t = 0`; odd codimension is
/// rejected.
pub fn thom_sigma2(f: &MapData<Rat>) -> Result<Element<Rat>> {
    if f.codim.rem_euclid(2) != 0 {
        return Err(Error::Invariant(
            "the corank-2 class requires even codimension".into(),
        ));
    }
    Ok(f.normal.component_signed((f.codim + 2) / 2))
}

/// Suspension of a map by `j`.
///
/// For `j >= 0` the target gains `j` trivial directions: the codimension
/// grows and the stable normal class is unchanged. For `j < 0` the source
/// is multiplied by a sphere of dimension `|j|` (stably parallelizable, so
/// the tangent and normal classes just embed) and the codimension drops.
pub fn suspend<K: Scalar>(f: &MapData<K>, j: i64) -> Result<MapData<K>> {
    Ok(suspend_with_restriction(f, j)?.0)
}

/// Suspension together with, for `j < 0`, the restriction along the slice
/// inclusion of the original source into the sphere-fattened one.
fn suspend_with_restriction<K: Scalar>(
    f: &MapData<K>,
    j: i64,
) -> Result<(MapData<K>, Option<LinearMap<K>>)> {
    if j >= 0 {
        return Ok((
            MapData {
                source: f.source.clone(),
                codim: f.codim + j,
                normal: f.normal.clone(),
            },
            None,
        ));
    }
    let sphere_dim = (-j) as usize;
    if K::FIELD == crate::scalar::FieldTag::Rat && sphere_dim % 2 != 0 {
        return Err(Error::Invariant(
            "rational sphere models must be even-dimensional".into(),
        ));
    }
    let sphere = GradedAlgebra::<K>::truncated_polynomial(&[("s", sphere_dim, 2)], sphere_dim)?;
    let t = tensor(f.source.algebra(), &sphere);
    let source = SpaceModel::new(t.algebra().clone(), f.source.tangent().embed_left(&t));
    let normal = f.normal.embed_left(&t);
    let restriction = t.project_left();
    Ok((
        MapData { source, codim: f.codim + j, normal },
        Some(restriction),
    ))
}

/// One side of a Cartan-type product identity: the Kunneth model of the
/// product source, the direct expansion of the product's Thom polynomial in
/// it, and the per-suspension terms whose sum must reproduce it.
pub struct CartanExpansion<K: Scalar> {
    pub tensor: crate::algebra::TensorAlgebra<K>,
    pub total: Element<K>,
    pub terms: Vec<(i64, Element<K>)>,
}

impl<K: Scalar> CartanExpansion<K> {
    pub fn term_sum(&self) -> Element<K> {
        let mut sum = Element::zero(self.total.owner());
        for (_, t) in &self.terms {
            sum = sum.add(t);
        }
        sum
    }
}

/// The singular locus of a product of generic maps, expanded over
/// suspensions: for each `j >= 1` the terms
/// `[S1 f_{j-1}] x id_j^*[S1 g_{(-j)}] + id_j^*[S1 f_{(-j)}] x [S1 g_{j-1}]`
/// are computed literally through `suspend` and `thom_sigma1`, and their
/// sum is checked against `w_{k1+k2+1}` of the product's normal class.
pub fn sigma1_product(
    f: &MapData<Mod2>,
    g: &MapData<Mod2>,
    verify: bool,
) -> Result<CartanExpansion<Mod2>> {
    let t = tensor(f.source.algebra(), g.source.algebra());
    let nu_product = f
        .normal
        .embed_left(&t)
        .whitney_sum(&g.normal.embed_right(&t));
    let total = nu_product.component_signed(f.codim + g.codim + 1);

    let mut terms = Vec::new();
    let j_max = f.codim.max(g.codim) + 1;
    for j in 1..=j_max {
        let (f_up, _) = suspend_with_restriction(f, j - 1)?;
        let (g_down, g_restrict) = suspend_with_restriction(g, -j)?;
        let left = t.pure(
            &thom_sigma1(&f_up),
            &g_restrict.expect("negative suspension").apply(&thom_sigma1(&g_down)),
        );
        let (f_down, f_restrict) = suspend_with_restriction(f, -j)?;
        let (g_up, _) = suspend_with_restriction(g, j - 1)?;
        let right = t.pure(
            &f_restrict.expect("negative suspension").apply(&thom_sigma1(&f_down)),
            &thom_sigma1(&g_up),
        );
        terms.push((j, left.add(&right)));
    }
    let expansion = CartanExpansion { tensor: t, total, terms };
    if verify && expansion.term_sum() != expansion.total {
        return Err(Error::IdentityCheck(
            "corank-1 product expansion does not match the direct Cartan expansion".into(),
        ));
    }
    Ok(expansion)
}

/// The corank-2 analogue for oriented maps of even codimension: suspensions
/// move in steps of two, the terms are
/// `[S2 f_{2j-2}] x id_{2j}^*[S2 g_{(-2j)}] + id_{2j}^*[S2 f_{(-2j)}] x [S2 g_{2j-2}]`,
/// and the sum is checked against `p_t` of the product's normal class where
/// `2t - 2 = k1 + k2`.
pub fn sigma2_product(
    f: &MapData<Rat>,
    g: &MapData<Rat>,
    verify: bool,
) -> Result<CartanExpansion<Rat>> {
    if f.codim.rem_euclid(2) != 0 || g.codim.rem_euclid(2) != 0 {
        return Err(Error::Invariant(
            "the corank-2 product theorem requires even codimensions".into(),
        ));
    }
    let t = tensor(f.source.algebra(), g.source.algebra());
    let nu_product = f
        .normal
        .embed_left(&t)
        .whitney_sum(&g.normal.embed_right(&t));
    let total = nu_product.component_signed((f.codim + g.codim + 2) / 2);

    let mut terms = Vec::new();
    let j_max = (f.codim / 2).max(g.codim / 2) + 1;
    for j in 1..=j_max {
        let (f_up, _) = suspend_with_restriction(f, 2 * j - 2)?;
        let (g_down, g_restrict) = suspend_with_restriction(g, -2 * j)?;
        let left = t.pure(
            &thom_sigma2(&f_up)?,
            &g_restrict.expect("negative suspension").apply(&thom_sigma2(&g_down)?),
        );
        let (f_down, f_restrict) = suspend_with_restriction(f, -2 * j)?;
        let (g_up, _) = suspend_with_restriction(g, 2 * j - 2)?;
        let right = t.pure(
            &f_restrict.expect("negative suspension").apply(&thom_sigma2(&f_down)?),
            &thom_sigma2(&g_up)?,
        );
        terms.push((j, left.add(&right)));
    }
    let expansion = CartanExpansion { tensor: t, total, terms };
    if verify && expansion.term_sum() != expansion.total {
        return Err(Error::IdentityCheck(
            "corank-2 product expansion does not match the direct Cartan expansion".into(),
        ));
    }
    Ok(expansion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::scalar::rat;
    use std::collections::BTreeMap;

    /// RP^2 -> R^2: codimension 0, w(nu) = (1+a+a^2)^{-1} = 1+a.
    fn rp2_to_plane() -> MapData<Mod2> {
        let a = GradedAlgebra::<Mod2>::truncated_polynomial(&[("a", 1, 3)], 2).unwrap();
        let g = a.generator("a").unwrap();
        let tangent = TotalClass::new(
            &a,
            BTreeMap::from([(1, g.clone()), (2, g.pow(2))]),
        )
        .unwrap();
        let source = SpaceModel::new(a, tangent.clone());
        let normal = tangent.stable_inverse();
        MapData::new(source, 0, normal)
    }

    /// CP^2 -> R^4: codimension 0, p(nu) = (1+3x^2)^{-1} = 1-3x^2.
    fn cp2_to_r4() -> MapData<Rat> {
        let a = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 4).unwrap();
        let x2 = a.generator("x").unwrap().pow(2);
        let tangent =
            TotalClass::new(&a, BTreeMap::from([(1, x2.scale(&rat(3, 1)))])).unwrap();
        let source = SpaceModel::new(a, tangent.clone());
        let normal = tangent.stable_inverse();
        MapData::new(source, 0, normal)
    }

    #[test]
    fn sigma1_of_projected_plane() {
        let f = rp2_to_plane();
        let a = f.source().algebra().generator("a").unwrap();
        assert_eq!(thom_sigma1(&f), a);
    }

    #[test]
    fn sigma1_conventions() {
        let f = rp2_to_plane();
        // Parallelizable source over a Euclidean target: trivial normal class.
        let trivial = MapData::new(f.source().clone(), 0, TotalClass::one(f.source().algebra()));
        assert!(thom_sigma1(&trivial).is_zero());
        let negative = MapData::new(f.source().clone(), -3, f.normal().clone());
        assert!(thom_sigma1(&negative).is_zero());
        let boundary = MapData::new(f.source().clone(), -1, f.normal().clone());
        assert_eq!(thom_sigma1(&boundary), Element::one(f.source().algebra()));
    }

    #[test]
    fn sigma2_count_of_cp2() {
        let f = cp2_to_r4();
        let tp = thom_sigma2(&f).unwrap();
        let x2 = f.source().algebra().generator("x").unwrap().pow(2);
        assert_eq!(tp, x2.scale(&rat(-3, 1)));
        assert_eq!(tp.pair(), rat(-3, 1));
    }

    #[test]
    fn sigma2_conventions() {
        let f = cp2_to_r4();
        assert!(thom_sigma2(&MapData::new(f.source().clone(), 1, f.normal().clone())).is_err());
        let k2 = MapData::new(f.source().clone(), 2, f.normal().clone());
        // t = 2: p_2(nu) = 0 in this model.
        assert!(thom_sigma2(&k2).unwrap().is_zero());
        let low = MapData::new(f.source().clone(), -4, f.normal().clone());
        assert!(thom_sigma2(&low).unwrap().is_zero());
        let unit = MapData::new(f.source().clone(), -2, f.normal().clone());
        assert_eq!(thom_sigma2(&unit).unwrap(), Element::one(f.source().algebra()));
    }

    #[test]
    fn suspension_bookkeeping() {
        let f = rp2_to_plane();
        let same = suspend(&f, 0).unwrap();
        assert_eq!(same.codim(), 0);
        assert_eq!(same.normal(), f.normal());

        // Three trivial target directions: w_4 of a class concentrated in
        // degrees <= 2 vanishes.
        let up = suspend(&f, 3).unwrap();
        assert_eq!(up.codim(), 3);
        assert!(thom_sigma1(&up).is_zero());

        // Sphere-fattened source gains a nilpotent top generator.
        let g = cp2_to_r4();
        let down = suspend(&g, -2).unwrap();
        assert_eq!(down.codim(), -2);
        assert_eq!(down.source().dim(), 6);
        let s = down.source().algebra().generator("s").unwrap();
        assert!(s.pow(2).is_zero());
    }

    #[test]
    fn stable_invariance_under_suspension() {
        let f = rp2_to_plane();
        for j in 0..4 {
            let up = suspend(&f, j).unwrap();
            for i in 0..4 {
                assert_eq!(up.normal().component(i), f.normal().component(i));
            }
        }
    }

    #[test]
    fn sigma1_product_of_projected_planes() {
        let f = rp2_to_plane();
        let g = rp2_to_plane();
        let expansion = sigma1_product(&f, &g, true).unwrap();
        // Total is w_1(nu_f x nu_g) = a (x) 1 + 1 (x) a'.
        let t = &expansion.tensor;
        let af = f.source().algebra().generator("a").unwrap();
        let ag = g.source().algebra().generator("a").unwrap();
        let expected = t
            .pure(&af, &Element::one(g.source().algebra()))
            .add(&t.pure(&Element::one(f.source().algebra()), &ag));
        assert_eq!(expansion.total, expected);
        assert_eq!(expansion.term_sum(), expected);
    }

    #[test]
    fn sigma1_product_trivial_factor() {
        let f = rp2_to_plane();
        let trivial = MapData::new(f.source().clone(), 0, TotalClass::one(f.source().algebra()));
        let expansion = sigma1_product(&f, &trivial, true).unwrap();
        let a = f.source().algebra().generator("a").unwrap();
        assert_eq!(
            expansion.total,
            expansion
                .tensor
                .pure(&a, &Element::one(trivial.source().algebra()))
        );
        let both = sigma1_product(&trivial, &trivial, true).unwrap();
        assert!(both.total.is_zero());
        assert!(both.term_sum().is_zero());
    }

    #[test]
    fn sigma2_product_of_cp2s() {
        let f = cp2_to_r4();
        let g = cp2_to_r4();
        let expansion = sigma2_product(&f, &g, true).unwrap();
        let t = &expansion.tensor;
        let xf = f.source().algebra().generator("x").unwrap().pow(2);
        let xg = g.source().algebra().generator("x").unwrap().pow(2);
        let expected = t
            .pure(&xf.scale(&rat(-3, 1)), &Element::one(g.source().algebra()))
            .add(&t.pure(&Element::one(f.source().algebra()), &xg.scale(&rat(-3, 1))));
        assert_eq!(expansion.total, expected);
        assert_eq!(expansion.term_sum(), expected);
    }

    #[test]
    fn sigma2_product_parity_check() {
        let f = cp2_to_r4();
        let odd = MapData::new(f.source().clone(), 1, f.normal().clone());
        assert!(sigma2_product(&f, &odd, true).is_err());
    }

    #[test]
    fn sigma2_honest_bundle_square() {
        // nu = L_1 + L_2 over CP^2 x CP^2 with e_i of degree 2:
        // p_2(nu) = e_1^2 e_2^2 = (e_1 e_2)^2, the square of the Euler class.
        let a = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 4).unwrap();
        let t = tensor(&a, &a);
        let alg = t.algebra().clone();
        let x = a.generator("x").unwrap();
        let e1 = t.embed_left(&x.scale(&rat(2, 1)));
        let e2 = t.embed_right(&x.scale(&rat(3, 1)));
        let p1 = e1.mul(&e1).add(&e2.mul(&e2));
        let p2 = e1.mul(&e1).mul(&e2.mul(&e2));
        let nu = TotalClass::new(&alg, BTreeMap::from([(1, p1), (2, p2.clone())])).unwrap();
        let source = SpaceModel::parallelizable(alg);
        let f = MapData::new(source, 2, nu);
        let tp = thom_sigma2(&f).unwrap();
        let euler = e1.mul(&e2);
        assert_eq!(tp, p2);
        assert_eq!(tp.pair(), euler.mul(&euler).pair());
        assert_eq!(tp.pair(), rat(36, 1));
    }
}
