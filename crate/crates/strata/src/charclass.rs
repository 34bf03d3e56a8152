//! Total characteristic classes and the beta series.
//!
//! The beta series of a bundle is the formal symmetric power series
//! `prod_i (1 + c_1 t_i + c_2 t_i^2 + ...)` where `c_j` are the Pontrjagin
//! classes over the rationals or the Stiefel-Whitney classes over F2. Its
//! monomial coefficients, indexed by partitions, evaluate to exactly the
//! characteristic numbers of the space, which is why multiple-point and
//! singularity computations all run through it.
//!
//! A series is stored in the monomial-symmetric basis (partition to
//! coefficient), truncated by the carrier's top degree; this loses nothing
//! for characteristic numbers. Series that arise as the beta series of a
//! known total class carry that class as a tag, so products of tagged
//! series reduce to Whitney sums; the general convolution path is kept and
//! cross-tested against the shortcut.

use std::collections::BTreeMap;

use crate::algebra::{same_algebra, AlgebraRef, Element, LinearMap, TensorAlgebra};
use crate::error::{Error, Result};
use crate::partition::{partitions_from_parts, partitions_up_to, Partition};
use crate::scalar::{FieldTag, Scalar};

/// A total characteristic class `1 + c_1 + c_2 + ...` with `c_i` homogeneous
/// of degree `4i` (Pontrjagin, over Q) or `i` (Stiefel-Whitney, over F2).
/// Component 0 is implicitly 1; zero components are not stored.
#[derive(Clone)]
pub struct TotalClass<K: Scalar> {
    owner: AlgebraRef<K>,
    comps: BTreeMap<u32, Element<K>>,
}

impl<K: Scalar> TotalClass<K> {
    /// The trivial class.
    pub fn one(owner: &AlgebraRef<K>) -> Self {
        TotalClass { owner: owner.clone(), comps: BTreeMap::new() }
    }

    pub fn new(owner: &AlgebraRef<K>, comps: BTreeMap<u32, Element<K>>) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (i, c) in comps {
            if i == 0 {
                return Err(Error::Invariant(
                    "component 0 of a total class is implicitly 1".into(),
                ));
            }
            same_algebra(c.owner(), owner);
            if c.is_zero() {
                continue;
            }
            let degree = i as usize * K::DEGREE_STEP;
            if degree > owner.top_degree() {
                return Err(Error::Invariant(format!(
                    "component {i} has degree {degree} above the top degree"
                )));
            }
            if !c.is_homogeneous_of(degree) {
                return Err(Error::Invariant(format!(
                    "component {i} must be homogeneous of degree {degree}"
                )));
            }
            kept.insert(i, c);
        }
        Ok(TotalClass { owner: owner.clone(), comps: kept })
    }

    pub fn owner(&self) -> &AlgebraRef<K> {
        &self.owner
    }

    /// Largest representable component index for the owner.
    pub fn max_index(&self) -> u32 {
        (self.owner.top_degree() / K::DEGREE_STEP) as u32
    }

    /// The i-th component; index 0 is 1, negative and out-of-range indices
    /// give 0 (callers pass i64 indices from suspension bookkeeping).
    pub fn component_signed(&self, i: i64) -> Element<K> {
        if i < 0 {
            Element::zero(&self.owner)
        } else {
            self.component(i as u32)
        }
    }

    pub fn component(&self, i: u32) -> Element<K> {
        if i == 0 {
            Element::one(&self.owner)
        } else {
            self.comps
                .get(&i)
                .cloned()
                .unwrap_or_else(|| Element::zero(&self.owner))
        }
    }

    pub fn components(&self) -> &BTreeMap<u32, Element<K>> {
        &self.comps
    }

    pub fn is_trivial(&self) -> bool {
        self.comps.is_empty()
    }

    /// Componentwise convolution: total classes multiply under Whitney sum.
    pub fn whitney_sum(&self, rhs: &Self) -> Self {
        same_algebra(&self.owner, &rhs.owner);
        let mut comps = BTreeMap::new();
        for i in 1..=self.max_index() {
            let mut acc = Element::zero(&self.owner);
            for a in 0..=i {
                let u = self.component(a);
                let v = rhs.component(i - a);
                if !u.is_zero() && !v.is_zero() {
                    acc = acc.add(&u.mul(&v));
                }
            }
            if !acc.is_zero() {
                comps.insert(i, acc);
            }
        }
        TotalClass { owner: self.owner.clone(), comps }
    }

    /// `r`-fold Whitney power.
    pub fn whitney_pow(&self, r: u32) -> Self {
        let mut out = TotalClass::one(&self.owner);
        for _ in 0..r {
            out = out.whitney_sum(self);
        }
        out
    }

    /// The total class of the stable inverse bundle, by truncated formal
    /// inversion; the leading term is always 1 so this never fails.
    pub fn stable_inverse(&self) -> Self {
        let mut inv: BTreeMap<u32, Element<K>> = BTreeMap::new();
        for i in 1..=self.max_index() {
            let mut acc = Element::zero(&self.owner);
            for a in 1..=i {
                let u = self.component(a);
                if u.is_zero() {
                    continue;
                }
                let v = if i == a {
                    Element::one(&self.owner)
                } else {
                    match inv.get(&(i - a)) {
                        Some(e) => e.clone(),
                        None => continue,
                    }
                };
                acc = acc.add(&u.mul(&v));
            }
            let c = acc.neg();
            if !c.is_zero() {
                inv.insert(i, c);
            }
        }
        TotalClass { owner: self.owner.clone(), comps: inv }
    }

    /// The beta series of this total class: the coefficient at a partition
    /// `(l_1, ..., l_r)` is the product of the components `c_{l_1} ... c_{l_r}`.
    pub fn beta(&self) -> BetaSeries<K> {
        let cap = (self.owner.top_degree() / K::DEGREE_STEP) as u32;
        let parts: Vec<u32> = self.comps.keys().copied().collect();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Partition::empty(), Element::one(&self.owner));
        for w in 1..=cap {
            for p in partitions_from_parts(w, &parts) {
                let mut c = Element::one(&self.owner);
                for &part in p.parts() {
                    c = c.mul(&self.component(part));
                    if c.is_zero() {
                        break;
                    }
                }
                if !c.is_zero() {
                    coeffs.insert(p, c);
                }
            }
        }
        BetaSeries { owner: self.owner.clone(), coeffs, tag: Some(self.clone()) }
    }

    /// Kunneth image of this class under the left embedding of a tensor
    /// model (`xi x 1`).
    pub fn embed_left(&self, t: &TensorAlgebra<K>) -> TotalClass<K> {
        let comps = self
            .comps
            .iter()
            .map(|(i, c)| (*i, t.embed_left(c)))
            .collect();
        TotalClass { owner: t.algebra().clone(), comps }
    }

    pub fn embed_right(&self, t: &TensorAlgebra<K>) -> TotalClass<K> {
        let comps = self
            .comps
            .iter()
            .map(|(i, c)| (*i, t.embed_right(c)))
            .collect();
        TotalClass { owner: t.algebra().clone(), comps }
    }

    /// Image under a ring map.
    pub fn map_via(&self, phi: &LinearMap<K>) -> TotalClass<K> {
        assert!(phi.is_ring_map(), "total classes only push through ring maps");
        let comps = self
            .comps
            .iter()
            .map(|(i, c)| (*i, phi.apply(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        TotalClass { owner: phi.target().clone(), comps }
    }
}

impl<K: Scalar> PartialEq for TotalClass<K> {
    fn eq(&self, other: &Self) -> bool {
        std::sync::Arc::ptr_eq(&self.owner, &other.owner) && self.comps == other.comps
    }
}

impl<K: Scalar> Eq for TotalClass<K> {}

impl<K: Scalar> std::fmt::Debug for TotalClass<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1")?;
        for (i, c) in &self.comps {
            write!(f, " + [{}]({})", i, c.render())?;
        }
        Ok(())
    }
}

/// A bundle over a model space: its total characteristic class, rank, and
/// (when rank is non-negative and the operations need it) an Euler class of
/// degree equal to the rank. Over F2 the top Stiefel-Whitney class `w_rank`
/// serves as the Euler class and is derived from the total class.
#[derive(Clone, Debug)]
pub struct BundleData<K: Scalar> {
    total: TotalClass<K>,
    rank: i64,
    euler: Option<Element<K>>,
}

impl<K: Scalar> BundleData<K> {
    pub fn new(total: TotalClass<K>, rank: i64, euler: Option<Element<K>>) -> Result<Self> {
        if let Some(e) = &euler {
            same_algebra(e.owner(), total.owner());
            if rank < 0 {
                return Err(Error::Invariant(
                    "a virtual bundle of negative rank has no Euler class".into(),
                ));
            }
            if !e.is_homogeneous_of(rank as usize) {
                return Err(Error::Invariant(format!(
                    "Euler class must be homogeneous of degree {rank}"
                )));
            }
            if K::FIELD == FieldTag::F2 {
                let w_top = top_sw_class(&total, rank as u32);
                if *e != w_top {
                    return Err(Error::Invariant(
                        "over F2 the Euler class is the top Stiefel-Whitney class w_rank".into(),
                    ));
                }
            }
        }
        let euler = match euler {
            Some(e) => Some(e),
            None if K::FIELD == FieldTag::F2 && rank >= 0 => {
                Some(top_sw_class(&total, rank as u32))
            }
            None => None,
        };
        Ok(BundleData { total, rank, euler })
    }

    pub fn total(&self) -> &TotalClass<K> {
        &self.total
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn euler(&self) -> Option<&Element<K>> {
        self.euler.as_ref()
    }

    pub fn owner(&self) -> &AlgebraRef<K> {
        self.total.owner()
    }
}

fn top_sw_class<K: Scalar>(total: &TotalClass<K>, rank: u32) -> Element<K> {
    // Degree `rank` may exceed the carrier's top degree, in which case the
    // class is simply zero.
    if rank as usize > total.owner().top_degree() {
        Element::zero(total.owner())
    } else {
        total.component(rank)
    }
}

/// A manifold model: a finite cohomology algebra with fundamental class,
/// together with the total class of its tangent bundle.
#[derive(Clone, Debug)]
pub struct SpaceModel<K: Scalar> {
    algebra: AlgebraRef<K>,
    tangent: TotalClass<K>,
}

impl<K: Scalar> SpaceModel<K> {
    pub fn new(algebra: AlgebraRef<K>, tangent: TotalClass<K>) -> Self {
        same_algebra(tangent.owner(), &algebra);
        SpaceModel { algebra, tangent }
    }

    /// A model with stably trivial tangent bundle.
    pub fn parallelizable(algebra: AlgebraRef<K>) -> Self {
        let tangent = TotalClass::one(&algebra);
        SpaceModel { algebra, tangent }
    }

    pub fn algebra(&self) -> &AlgebraRef<K> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.top_degree()
    }

    pub fn tangent(&self) -> &TotalClass<K> {
        &self.tangent
    }

    /// Kunneth model of a product of spaces: tensor algebra, tangent
    /// classes multiply.
    pub fn product(&self, other: &SpaceModel<K>) -> (SpaceModel<K>, TensorAlgebra<K>) {
        let t = crate::algebra::tensor(&self.algebra, &other.algebra);
        let tangent = self
            .tangent
            .embed_left(&t)
            .whitney_sum(&other.tangent.embed_right(&t));
        (SpaceModel { algebra: t.algebra().clone(), tangent }, t)
    }
}

/// A truncated partition-indexed symmetric series with algebra-element
/// coefficients. Houses the beta series of bundles and the multiple-point
/// classes derived from them.
#[derive(Clone)]
pub struct BetaSeries<K: Scalar> {
    owner: AlgebraRef<K>,
    coeffs: BTreeMap<Partition, Element<K>>,
    tag: Option<TotalClass<K>>,
}

impl<K: Scalar> BetaSeries<K> {
    pub fn zero(owner: &AlgebraRef<K>) -> Self {
        BetaSeries { owner: owner.clone(), coeffs: BTreeMap::new(), tag: None }
    }

    /// The beta series of the trivial bundle: `1` at the empty partition.
    pub fn unit(owner: &AlgebraRef<K>) -> Self {
        TotalClass::one(owner).beta()
    }

    pub fn from_coeffs(owner: &AlgebraRef<K>, coeffs: BTreeMap<Partition, Element<K>>) -> Self {
        let cap = (owner.top_degree() / K::DEGREE_STEP) as u32;
        let coeffs = coeffs
            .into_iter()
            .filter(|(p, c)| {
                same_algebra(c.owner(), owner);
                p.weight() <= cap && !c.is_zero()
            })
            .collect();
        BetaSeries { owner: owner.clone(), coeffs, tag: None }
    }

    pub fn owner(&self) -> &AlgebraRef<K> {
        &self.owner
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Element<K>> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &Partition) -> Element<K> {
        self.coeffs
            .get(p)
            .cloned()
            .unwrap_or_else(|| Element::zero(&self.owner))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The total class this series is the beta series of, when known.
    pub fn product_tag(&self) -> Option<&TotalClass<K>> {
        self.tag.as_ref()
    }

    fn cap(&self) -> u32 {
        (self.owner.top_degree() / K::DEGREE_STEP) as u32
    }

    pub fn add(&self, rhs: &Self) -> Self {
        same_algebra(&self.owner, &rhs.owner);
        let mut coeffs = self.coeffs.clone();
        for (p, c) in &rhs.coeffs {
            let entry = coeffs
                .entry(p.clone())
                .or_insert_with(|| Element::zero(&self.owner));
            *entry = entry.add(c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        BetaSeries { owner: self.owner.clone(), coeffs, tag: None }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(p, c)| (p.clone(), c.neg())).collect();
        BetaSeries { owner: self.owner.clone(), coeffs, tag: None }
    }

    /// Coefficientwise multiplication by a class of the carrier.
    pub fn scale(&self, k: &Element<K>) -> Self {
        same_algebra(&self.owner, k.owner());
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, c)| (p.clone(), c.mul(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        BetaSeries { owner: self.owner.clone(), coeffs, tag: None }
    }

    /// Product of symmetric series. When both factors are beta series of
    /// known total classes this reduces to a Whitney sum; otherwise the
    /// general per-monomial convolution runs.
    pub fn mul(&self, rhs: &Self) -> Self {
        same_algebra(&self.owner, &rhs.owner);
        if let (Some(u), Some(v)) = (&self.tag, &rhs.tag) {
            return u.whitney_sum(v).beta();
        }
        self.mul_convolution(rhs)
    }

    /// The general product path: the coefficient of an exponent vector `a`
    /// is the sum over componentwise splittings `a = b + c` of
    /// `S_{part(b)} * T_{part(c)}`.
    pub fn mul_convolution(&self, rhs: &Self) -> Self {
        same_algebra(&self.owner, &rhs.owner);
        let cap = self.cap();
        let mut coeffs = BTreeMap::new();
        for p in partitions_up_to(cap) {
            let mut acc = Element::zero(&self.owner);
            let vector: Vec<u32> = p.parts().to_vec();
            let mut split = vec![0u32; vector.len()];
            loop {
                let left = Partition::of_vector(&split);
                if let Some(s) = self.coeffs.get(&left) {
                    let complement: Vec<u32> =
                        vector.iter().zip(&split).map(|(a, b)| a - b).collect();
                    let right = Partition::of_vector(&complement);
                    if let Some(t) = rhs.coeffs.get(&right) {
                        acc = acc.add(&s.mul(t));
                    }
                }
                // next componentwise splitting
                let mut k = 0;
                loop {
                    if k == vector.len() {
                        break;
                    }
                    if split[k] < vector[k] {
                        split[k] += 1;
                        break;
                    }
                    split[k] = 0;
                    k += 1;
                }
                if k == vector.len() {
                    break;
                }
            }
            if !acc.is_zero() {
                coeffs.insert(p, acc);
            }
        }
        BetaSeries { owner: self.owner.clone(), coeffs, tag: None }
    }

    /// Coefficientwise application of a linear map; the result lives over
    /// the map's target. Ring maps preserve the beta-series tag.
    pub fn pushpull(&self, phi: &LinearMap<K>) -> BetaSeries<K> {
        same_algebra(&self.owner, phi.source());
        let target_cap = (phi.target().top_degree() / K::DEGREE_STEP) as u32;
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(p, _)| p.weight() <= target_cap)
            .map(|(p, c)| (p.clone(), phi.apply(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let tag = match &self.tag {
            Some(u) if phi.is_ring_map() => Some(u.map_via(phi)),
            _ => None,
        };
        BetaSeries { owner: phi.target().clone(), coeffs, tag }
    }

    /// Kunneth image under the left embedding of a tensor model.
    pub fn embed_left(&self, t: &TensorAlgebra<K>) -> BetaSeries<K> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, c)| (p.clone(), t.embed_left(c)))
            .collect();
        let tag = self.tag.as_ref().map(|u| u.embed_left(t));
        BetaSeries { owner: t.algebra().clone(), coeffs, tag }
    }

    pub fn embed_right(&self, t: &TensorAlgebra<K>) -> BetaSeries<K> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, c)| (p.clone(), t.embed_right(c)))
            .collect();
        let tag = self.tag.as_ref().map(|u| u.embed_right(t));
        BetaSeries { owner: t.algebra().clone(), coeffs, tag }
    }
}

impl<K: Scalar> PartialEq for BetaSeries<K> {
    fn eq(&self, other: &Self) -> bool {
        std::sync::Arc::ptr_eq(&self.owner, &other.owner) && self.coeffs == other.coeffs
    }
}

impl<K: Scalar> Eq for BetaSeries<K> {}

impl<K: Scalar> std::fmt::Debug for BetaSeries<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut map = f.debug_map();
        for (p, c) in &self.coeffs {
            map.entry(&p.to_string(), &c.render());
        }
        map.finish()
    }
}
