//! Seeded random model generators for the verification suites.
//!
//! The generator is a hand-rolled SplitMix64 so that a (seed, case count)
//! pair reproduces the same models forever, independent of any external
//! RNG crate's stream changes. Generated immersion data is always
//! "honest-shaped": the normal total class is built first, concentrated in
//! degrees a rank-k bundle can carry, and the tangent class is its stable
//! inverse, so the Whitney constraint holds exactly.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraRef, Element, GradedAlgebra};
use crate::charclass::{BetaSeries, BundleData, SpaceModel, TotalClass};
use crate::morin::MorinClass;
use crate::multipoint::{CobordismClass, GeneralMapData, ImmersionData};
use crate::partition::{partitions_of, partitions_up_to};
use crate::scalar::{rat, Mod2, Rat, Scalar};
use crate::singularity::MapData;

/// SplitMix64. Deterministic, stable across platforms and releases.
#[derive(Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// True with probability `num/den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// Scalars that the generators can draw.
pub trait RandomScalar: Scalar {
    fn random(rng: &mut Rng) -> Self;
}

impl RandomScalar for Rat {
    fn random(rng: &mut Rng) -> Self {
        rat(rng.int_in(-6, 6), rng.int_in(1, 3))
    }
}

impl RandomScalar for Mod2 {
    fn random(rng: &mut Rng) -> Self {
        Mod2(rng.chance(1, 2))
    }
}

/// A random truncated-polynomial algebra with top degree at most `max_dim`
/// (and at least one positive degree). Rational algebras draw generators of
/// degree 2 or 4, mod-2 algebras of degree 1..=3.
pub fn random_algebra<K: RandomScalar>(rng: &mut Rng, max_dim: usize) -> AlgebraRef<K> {
    let degree_choices: &[usize] = if K::DEGREE_STEP == 4 { &[2, 2, 4] } else { &[1, 2, 3] };
    let names = ["x", "y", "z"];
    loop {
        let count = rng.int_in(1, 2) as usize;
        let mut gens = Vec::new();
        for (i, name) in names.iter().take(count).enumerate() {
            let degree = degree_choices[rng.below(degree_choices.len() as u64) as usize];
            let nilp = rng.int_in(2, if i == 0 { 4 } else { 3 }) as u32;
            gens.push((*name, degree, nilp));
        }
        let dim: usize = gens.iter().map(|(_, d, n)| d * (*n as usize - 1)).sum();
        if dim == 0 || dim > max_dim {
            continue;
        }
        if let Ok(a) = GradedAlgebra::truncated_polynomial(&gens, dim) {
            return a;
        }
    }
}

/// A sparse random homogeneous element of the given degree.
pub fn random_element<K: RandomScalar>(
    rng: &mut Rng,
    algebra: &AlgebraRef<K>,
    degree: usize,
) -> Element<K> {
    let mut coeffs = BTreeMap::new();
    for &idx in algebra.basis_of_degree(degree) {
        if rng.chance(2, 3) {
            let c = K::random(rng);
            if !c.is_zero() {
                coeffs.insert(idx, c);
            }
        }
    }
    Element::from_coeffs(algebra, coeffs)
}

/// A random total class, optionally concentrated in class indices at most
/// `max_index`.
pub fn random_total<K: RandomScalar>(
    rng: &mut Rng,
    algebra: &AlgebraRef<K>,
    max_index: Option<u32>,
) -> TotalClass<K> {
    let cap = (algebra.top_degree() / K::DEGREE_STEP) as u32;
    let cap = max_index.map_or(cap, |m| m.min(cap));
    let mut comps = BTreeMap::new();
    for i in 1..=cap {
        if rng.chance(3, 4) {
            let c = random_element(rng, algebra, i as usize * K::DEGREE_STEP);
            if !c.is_zero() {
                comps.insert(i, c);
            }
        }
    }
    TotalClass::new(algebra, comps).expect("degrees are consistent by construction")
}

/// A random space with random tangent class.
pub fn random_space<K: RandomScalar>(rng: &mut Rng, max_dim: usize) -> SpaceModel<K> {
    let algebra = random_algebra(rng, max_dim);
    let tangent = random_total(rng, &algebra, None);
    SpaceModel::new(algebra, tangent)
}

fn random_codim<K: Scalar>(rng: &mut Rng) -> u32 {
    if K::DEGREE_STEP == 4 {
        2 * rng.int_in(1, 2) as u32
    } else {
        rng.int_in(1, 3) as u32
    }
}

/// Random Euclidean-target immersion data: normal class first (honest for a
/// rank-k bundle over F2: no components above index k), tangent as its
/// stable inverse, random Euler class over the rationals and the derived
/// top Stiefel-Whitney class over F2.
pub fn random_immersion<K: RandomScalar>(rng: &mut Rng, max_dim: usize) -> ImmersionData<K> {
    let algebra = random_algebra::<K>(rng, max_dim);
    let codim = random_codim::<K>(rng);
    let max_index = if K::DEGREE_STEP == 1 { Some(codim) } else { None };
    let normal_total = random_total(rng, &algebra, max_index);
    let tangent = normal_total.stable_inverse();
    let euler = if K::DEGREE_STEP == 4 {
        Some(random_element(rng, &algebra, codim as usize))
    } else {
        None
    };
    let bundle = BundleData::new(normal_total, codim as i64, euler).expect("consistent data");
    ImmersionData::new(SpaceModel::new(algebra, tangent), codim, bundle)
        .expect("whitney holds by construction")
}

/// A random series whose coefficient at a partition of weight `w` is
/// homogeneous of degree `w * step + offset`, the shape of a pushed-forward
/// class of codimension `offset`.
pub fn random_series<K: RandomScalar>(
    rng: &mut Rng,
    algebra: &AlgebraRef<K>,
    offset: usize,
) -> BetaSeries<K> {
    let cap = (algebra.top_degree() / K::DEGREE_STEP) as u32;
    let mut coeffs = BTreeMap::new();
    for p in partitions_up_to(cap) {
        let degree = p.weight() as usize * K::DEGREE_STEP + offset;
        if degree > algebra.top_degree() {
            continue;
        }
        if rng.chance(1, 2) {
            let c = random_element(rng, algebra, degree);
            if !c.is_zero() {
                coeffs.insert(p, c);
            }
        }
    }
    BetaSeries::from_coeffs(algebra, coeffs)
}

/// Random general-target double-point data: free tangent and normal classes
/// (honest-shaped over F2), plus a synthetic pulled Gysin series with the
/// degree offset of `f^* f_! beta(M)`.
pub fn random_general_map<K: RandomScalar>(rng: &mut Rng, max_dim: usize) -> GeneralMapData<K> {
    let algebra = random_algebra::<K>(rng, max_dim);
    let codim = random_codim::<K>(rng);
    let max_index = if K::DEGREE_STEP == 1 { Some(codim) } else { None };
    let normal_total = random_total(rng, &algebra, max_index);
    let tangent = random_total(rng, &algebra, None);
    let euler = if K::DEGREE_STEP == 4 {
        Some(random_element(rng, &algebra, codim as usize))
    } else {
        None
    };
    let bundle = BundleData::new(normal_total, codim as i64, euler).expect("consistent data");
    let gysin = random_series(rng, &algebra, codim as usize);
    GeneralMapData::new(SpaceModel::new(algebra, tangent), codim, bundle, gysin, None)
        .expect("consistent data")
}

/// Random singularity map data: any-sign codimension and a free virtual
/// normal class. Rational codimensions are even.
pub fn random_map_data<K: RandomScalar>(rng: &mut Rng, max_dim: usize) -> MapData<K> {
    let algebra = random_algebra::<K>(rng, max_dim);
    let codim = if K::DEGREE_STEP == 4 {
        2 * rng.int_in(-2, 2)
    } else {
        rng.int_in(-2, 3)
    };
    let normal = random_total(rng, &algebra, None);
    let tangent = random_total(rng, &algebra, None);
    MapData::new(SpaceModel::new(algebra, tangent), codim, normal)
}

/// A random rational cobordism class of the given dimension.
pub fn random_cobordism_class(rng: &mut Rng, dim: usize) -> CobordismClass<Rat> {
    let mut numbers = BTreeMap::new();
    if dim % 4 == 0 {
        for p in partitions_of((dim / 4) as u32) {
            if rng.chance(2, 3) {
                let c = Rat::random(rng);
                if !c.is_zero() {
                    numbers.insert(p, c);
                }
            }
        }
    }
    CobordismClass::new(dim, numbers).expect("partition degrees match")
}

/// A random Morin class. With `bounded` set, every stratum satisfies the
/// odd-codimension part bound `parts <= (k-1)/2`.
pub fn random_morin(rng: &mut Rng, bounded: bool) -> MorinClass {
    let k = rng.int_in(1, 4) as u32;
    let n = rng.int_in(0, 12) as u32;
    let mut strata = BTreeMap::new();
    let mut r = 0u32;
    while r * (k + 1) <= n {
        let dim = (n - r * (k + 1)) as usize;
        if k % 2 == 1 && (r == 0 || rng.chance(2, 3)) {
            let mut class = random_cobordism_class(rng, dim);
            if bounded {
                let bound = (k - 1) / 2;
                let numbers = class
                    .numbers()
                    .iter()
                    .filter(|(p, _)| p.max_part() <= bound)
                    .map(|(p, c)| (p.clone(), c.clone()))
                    .collect();
                class = CobordismClass::new(dim, numbers).unwrap();
            }
            strata.insert(r, class);
        } else if k % 2 == 0 && r == 0 {
            strata.insert(r, random_cobordism_class(rng, dim));
        }
        r += 2;
    }
    MorinClass::new(n, k, strata).expect("strata dimensions are consistent")
}

/// A random Morin class with the same bidegree as `like`, for addition laws.
pub fn random_morin_like(rng: &mut Rng, like: &MorinClass) -> MorinClass {
    let (n, k) = (like.n(), like.k());
    let mut strata = BTreeMap::new();
    let mut r = 0u32;
    while r * (k + 1) <= n {
        let dim = (n - r * (k + 1)) as usize;
        if k % 2 == 1 || r == 0 {
            strata.insert(r, random_cobordism_class(rng, dim));
        }
        r += 2;
    }
    MorinClass::new(n, k, strata).expect("strata dimensions are consistent")
}
