//! Characteristic numbers of multiple-point manifolds of immersions.
//!
//! For a self-transverse immersion `f: M^n -> R^{n+k}` the r-fold point
//! manifold in the source has dimension `n - (r-1)k`, and its characteristic
//! numbers are the coefficients of the series
//! `m_r = (-e(nu_f))^{r-1} * beta(M)^r` evaluated against the fundamental
//! class of `M`. For a general target the one-step recursion
//! `m_r * beta(nu_f) = f^* n_{r-1} - e(nu_f) m_{r-1}` replaces the closed
//! form; the pulled series `f^* n_{r-1}` is supplied as data and never
//! derived, since no closed relation produces it.
//!
//! The product operations compute both sides of the corresponding product
//! identities and assert exact agreement before returning.

use std::collections::BTreeMap;

use crate::algebra::{Element, LinearMap};
use crate::charclass::{BetaSeries, BundleData, SpaceModel};
use crate::error::{Error, Result};
use crate::morin::class_product;
use crate::partition::{partitions_of, Partition};
use crate::scalar::{FieldTag, Scalar};

/// Formal dimension of a cobordism class. A negative formal dimension is
/// collapsed to `Void`, the canonical zero class, which keeps sweeps over
/// the multiplicity `r` total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassDim {
    Void,
    Of(usize),
}

/// A partition-indexed vector of characteristic numbers: the Pontrjagin
/// numbers (over Q) or Stiefel-Whitney numbers (over F2) of a cobordism
/// class of the given dimension. Entries are stored only for partitions
/// whose class degree equals the dimension; zero entries are dropped.
#[derive(Clone)]
pub struct CobordismClass<K: Scalar> {
    dim: ClassDim,
    numbers: BTreeMap<Partition, K>,
}

impl<K: Scalar> CobordismClass<K> {
    pub fn void() -> Self {
        CobordismClass { dim: ClassDim::Void, numbers: BTreeMap::new() }
    }

    pub fn zero(dim: usize) -> Self {
        CobordismClass { dim: ClassDim::Of(dim), numbers: BTreeMap::new() }
    }

    pub fn new(dim: usize, numbers: BTreeMap<Partition, K>) -> Result<Self> {
        for p in numbers.keys() {
            if p.weight() as usize * K::DEGREE_STEP != dim {
                return Err(Error::Invariant(format!(
                    "partition {p} has class degree {} in a class of dimension {dim}",
                    p.weight() as usize * K::DEGREE_STEP
                )));
            }
        }
        let numbers = numbers.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(CobordismClass { dim: ClassDim::Of(dim), numbers })
    }

    /// Reads the numbers of a class of formal dimension `dim` off a series
    /// over the carrier: the entry at a partition is the pairing of its
    /// coefficient with the fundamental class.
    pub fn from_series(dim: i64, series: &BetaSeries<K>) -> Self {
        if dim < 0 {
            return CobordismClass::void();
        }
        let dim = dim as usize;
        let mut numbers = BTreeMap::new();
        if dim % K::DEGREE_STEP == 0 {
            for p in partitions_of((dim / K::DEGREE_STEP) as u32) {
                let v = series.coeff(&p).pair();
                if !v.is_zero() {
                    numbers.insert(p, v);
                }
            }
        }
        CobordismClass { dim: ClassDim::Of(dim), numbers }
    }

    pub fn dim(&self) -> ClassDim {
        self.dim
    }

    pub fn numbers(&self) -> &BTreeMap<Partition, K> {
        &self.numbers
    }

    pub fn get(&self, p: &Partition) -> K {
        self.numbers.get(p).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.numbers.is_empty()
    }

    pub fn neg(&self) -> Self {
        let numbers = self.numbers.iter().map(|(p, c)| (p.clone(), c.neg())).collect();
        CobordismClass { dim: self.dim, numbers }
    }

    /// Strata-wise addition. The void class is absorbing zero.
    ///
    /// # Panics
    ///
    /// Panics when adding classes of distinct non-void dimensions.
    pub fn add(&self, rhs: &Self) -> Self {
        match (self.dim, rhs.dim) {
            (ClassDim::Void, _) => rhs.clone(),
            (_, ClassDim::Void) => self.clone(),
            (ClassDim::Of(a), ClassDim::Of(b)) => {
                assert_eq!(a, b, "cannot add cobordism classes of different dimensions");
                let mut numbers = self.numbers.clone();
                for (p, c) in &rhs.numbers {
                    let entry = numbers.entry(p.clone()).or_insert_with(K::zero);
                    *entry = entry.add(c);
                }
                numbers.retain(|_, c| !c.is_zero());
                CobordismClass { dim: self.dim, numbers }
            }
        }
    }
}

/// Two classes are equal when both are zero, or when they share a dimension
/// and all numbers agree.
impl<K: Scalar> PartialEq for CobordismClass<K> {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.dim == other.dim && self.numbers == other.numbers
    }
}

impl<K: Scalar> Eq for CobordismClass<K> {}

impl<K: Scalar> std::fmt::Debug for CobordismClass<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.dim {
            ClassDim::Void => write!(f, "void")?,
            ClassDim::Of(d) => write!(f, "dim {d}")?,
        }
        write!(f, " {{")?;
        for (i, (p, c)) in self.numbers.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// A self-transverse immersion into Euclidean space: a source model, a
/// positive codimension, and normal-bundle data whose total class is the
/// stable inverse of the tangent class. Over Q the codimension must be even
/// (that is when the multiple-point manifolds carry natural orientations)
/// and an Euler class is required; over F2 the top Stiefel-Whitney class of
/// the normal bundle plays that role.
#[derive(Clone, Debug)]
pub struct ImmersionData<K: Scalar> {
    source: SpaceModel<K>,
    codim: u32,
    normal: BundleData<K>,
}

impl<K: Scalar> ImmersionData<K> {
    pub fn new(source: SpaceModel<K>, codim: u32, normal: BundleData<K>) -> Result<Self> {
        if codim == 0 {
            return Err(Error::Invariant("immersion codimension must be positive".into()));
        }
        if K::FIELD == FieldTag::Rat && codim % 2 != 0 {
            return Err(Error::Invariant(
                "oriented multiple-point data requires even codimension".into(),
            ));
        }
        if normal.rank() != codim as i64 {
            return Err(Error::Invariant(format!(
                "normal bundle rank {} does not match codimension {codim}",
                normal.rank()
            )));
        }
        if normal.euler().is_none() {
            return Err(Error::Invariant("immersion data requires an Euler class".into()));
        }
        if !source.tangent().whitney_sum(normal.total()).is_trivial() {
            return Err(Error::Invariant(
                "tangent and normal classes are not stably inverse".into(),
            ));
        }
        Ok(ImmersionData { source, codim, normal })
    }

    pub fn source(&self) -> &SpaceModel<K> {
        &self.source
    }

    pub fn codim(&self) -> u32 {
        self.codim
    }

    pub fn normal(&self) -> &BundleData<K> {
        &self.normal
    }

    pub fn euler(&self) -> &Element<K> {
        self.normal.euler().expect("validated at construction")
    }

    /// Views this immersion as general-target data with zero pulled Gysin
    /// series (over a Euclidean target the pullback vanishes in positive
    /// degrees).
    pub fn to_general(&self) -> GeneralMapData<K> {
        GeneralMapData {
            source: self.source.clone(),
            codim: self.codim,
            normal: self.normal.clone(),
            gysin_pull: BetaSeries::zero(self.source.algebra()),
            pullback: None,
        }
    }
}

/// Immersion-style data for a general target: the Whitney constraint is
/// dropped and the pulled Gysin series `f^* f_! beta(M)` is carried as data,
/// together with an optional pullback ring map for series transport.
#[derive(Clone)]
pub struct GeneralMapData<K: Scalar> {
    source: SpaceModel<K>,
    codim: u32,
    normal: BundleData<K>,
    gysin_pull: BetaSeries<K>,
    pullback: Option<LinearMap<K>>,
}

impl<K: Scalar> GeneralMapData<K> {
    pub fn new(
        source: SpaceModel<K>,
        codim: u32,
        normal: BundleData<K>,
        gysin_pull: BetaSeries<K>,
        pullback: Option<LinearMap<K>>,
    ) -> Result<Self> {
        if codim == 0 {
            return Err(Error::Invariant("map codimension must be positive".into()));
        }
        if K::FIELD == FieldTag::Rat && codim % 2 != 0 {
            return Err(Error::Invariant(
                "oriented multiple-point data requires even codimension".into(),
            ));
        }
        if normal.rank() != codim as i64 {
            return Err(Error::Invariant(format!(
                "normal bundle rank {} does not match codimension {codim}",
                normal.rank()
            )));
        }
        if normal.euler().is_none() {
            return Err(Error::Invariant("double-point data requires an Euler class".into()));
        }
        crate::algebra::same_algebra(gysin_pull.owner(), source.algebra());
        if let Some(phi) = &pullback {
            if !phi.is_ring_map() {
                return Err(Error::Invariant("a pullback must be a ring map".into()));
            }
            crate::algebra::same_algebra(phi.target(), source.algebra());
        }
        Ok(GeneralMapData { source, codim, normal, gysin_pull, pullback })
    }

    pub fn source(&self) -> &SpaceModel<K> {
        &self.source
    }

    pub fn codim(&self) -> u32 {
        self.codim
    }

    pub fn normal(&self) -> &BundleData<K> {
        &self.normal
    }

    pub fn euler(&self) -> &Element<K> {
        self.normal.euler().expect("validated at construction")
    }

    pub fn gysin_pull(&self) -> &BetaSeries<K> {
        &self.gysin_pull
    }

    pub fn pullback(&self) -> Option<&LinearMap<K>> {
        self.pullback.as_ref()
    }
}

/// Characteristic numbers of the r-fold point manifold of an immersion into
/// Euclidean space, from the closed form `m_r = (-e)^{r-1} beta(M)^r`.
/// Returns the void zero class when `n - (r-1)k` is negative.
pub fn multipoint_numbers<K: Scalar>(imm: &ImmersionData<K>, r: u32) -> CobordismClass<K> {
    assert!(r >= 1, "multiplicity must be at least 1");
    let n = imm.source.dim() as i64;
    let k = imm.codim as i64;
    let dim = n - (r as i64 - 1) * k;
    if dim < 0 {
        return CobordismClass::void();
    }
    let beta_r = imm.source.tangent().whitney_pow(r).beta();
    let factor = imm.euler().neg().pow(r - 1);
    CobordismClass::from_series(dim, &beta_r.scale(&factor))
}

/// One step of the general-target recursion: given `m_{r-1}` and the pulled
/// series `f^* n_{r-1}`, produces
/// `m_r = beta(nu)^{-1} * (f^* n_{r-1} - e(nu) m_{r-1})`.
pub fn herbert_step<K: Scalar>(
    data: &GeneralMapData<K>,
    m_prev: &BetaSeries<K>,
    n_prev_pulled: &BetaSeries<K>,
) -> BetaSeries<K> {
    let inv_beta = data.normal.total().stable_inverse().beta();
    inv_beta.mul(&n_prev_pulled.sub(&m_prev.scale(data.euler())))
}

/// The class of the double-point manifold of general-target data, from one
/// recursion step started at `m_1 = beta(M)`.
pub fn double_point_class<K: Scalar>(data: &GeneralMapData<K>) -> CobordismClass<K> {
    let m1 = data.source.tangent().beta();
    let m2 = herbert_step(data, &m1, &data.gysin_pull);
    let dim = data.source.dim() as i64 - data.codim as i64;
    CobordismClass::from_series(dim, &m2)
}

/// Characteristic numbers of the zero locus of a generic section of a
/// bundle: the class of dimension `dim B - rank` whose numbers pair
/// `beta(TB) / beta(xi) * e(xi)` against the fundamental class.
pub fn euler_locus<K: Scalar>(
    space: &SpaceModel<K>,
    bundle: &BundleData<K>,
) -> Result<CobordismClass<K>> {
    let e = bundle
        .euler()
        .ok_or_else(|| Error::Invariant("Euler class required for a zero locus".into()))?;
    crate::algebra::same_algebra(bundle.owner(), space.algebra());
    let dim = space.dim() as i64 - bundle.rank();
    if dim < 0 {
        return Ok(CobordismClass::void());
    }
    let series = space
        .tangent()
        .whitney_sum(&bundle.total().stable_inverse())
        .beta()
        .scale(e);
    Ok(CobordismClass::from_series(dim, &series))
}

/// Builds the tensor-model immersion data of a product of two immersions:
/// the Kunneth space, normal class `nu_1 x nu_2`, Euler class `e_1 (x) e_2`.
fn product_immersion_data<K: Scalar>(
    g1: &ImmersionData<K>,
    g2: &ImmersionData<K>,
) -> Result<ImmersionData<K>> {
    let (space, t) = g1.source.product(&g2.source);
    let total = g1
        .normal
        .total()
        .embed_left(&t)
        .whitney_sum(&g2.normal.total().embed_right(&t));
    let e = t.pure(g1.euler(), g2.euler());
    let codim = g1.codim + g2.codim;
    let bundle = BundleData::new(total, codim as i64, Some(e))?;
    ImmersionData::new(space, codim, bundle)
}

/// The r-fold point class of a product immersion: `(-1)^{r-1}` times the
/// Kunneth product of the factors' r-fold classes. With `verify` on, the
/// closed form is also evaluated on the tensor-model product data and exact
/// agreement is asserted.
pub fn product_immersion_multipoint<K: Scalar>(
    g1: &ImmersionData<K>,
    g2: &ImmersionData<K>,
    r: u32,
    verify: bool,
) -> Result<CobordismClass<K>> {
    let a = multipoint_numbers(g1, r);
    let b = multipoint_numbers(g2, r);
    let mut result = class_product(&a, &b);
    if r % 2 == 0 {
        // (-1)^{r-1}; over F2 negation is the identity.
        result = result.neg();
    }
    if verify {
        let prod = product_immersion_data(g1, g2)?;
        let direct = multipoint_numbers(&prod, r);
        if direct != result {
            return Err(Error::IdentityCheck(format!(
                "r-fold product theorem failed at r={r}: direct {direct:?} vs product {result:?}"
            )));
        }
    }
    Ok(result)
}

/// The double-point class of a product of general-target maps as the
/// three-term sum
/// `M_2(g1) x M_2(g2) + M_2(g1) x Delta_{nu_2} + Delta_{nu_1} x M_2(g2)`.
/// With `verify` on, the left side is independently computed through the
/// recursion on the tensor model, using
/// `f^* n_1(f) = gysin_pull_1 (x) gysin_pull_2`, and compared exactly.
pub fn product_double_points<K: Scalar>(
    g1: &GeneralMapData<K>,
    g2: &GeneralMapData<K>,
    verify: bool,
) -> Result<CobordismClass<K>> {
    let m2_1 = double_point_class(g1);
    let m2_2 = double_point_class(g2);
    let delta_1 = euler_locus(&g1.source, &g1.normal)?;
    let delta_2 = euler_locus(&g2.source, &g2.normal)?;
    let result = class_product(&m2_1, &m2_2)
        .add(&class_product(&m2_1, &delta_2))
        .add(&class_product(&delta_1, &m2_2));
    if verify {
        let (space, t) = g1.source.product(&g2.source);
        let total = g1
            .normal
            .total()
            .embed_left(&t)
            .whitney_sum(&g2.normal.total().embed_right(&t));
        let e = t.pure(g1.euler(), g2.euler());
        let codim = g1.codim + g2.codim;
        let bundle = BundleData::new(total, codim as i64, Some(e))?;
        let pulled = g1
            .gysin_pull
            .embed_left(&t)
            .mul_convolution(&g2.gysin_pull.embed_right(&t));
        let data = GeneralMapData::new(space, codim, bundle, pulled, None)?;
        let lhs = double_point_class(&data);
        if lhs != result {
            return Err(Error::IdentityCheck(format!(
                "double-point product theorem failed: recursion {lhs:?} vs three-term sum {result:?}"
            )));
        }
    }
    Ok(result)
}
