//! The rational cobordism ring of Morin maps.
//!
//! A Morin map of source dimension `n` and codimension `k` is represented
//! rationally by the collection of oriented cobordism classes of its
//! even-index fold strata: the stratum of index `r` lives in dimension
//! `n - r(k+1)`. Multiplication is strata-wise, with grading `(n, k+1)`
//! additive; a factor of even codimension kills every positive stratum of
//! the product, because such a map is Morin-cobordant to an immersion.
//!
//! Projecting an immersion `M^n -> R^{n+k+1}` to a hyperplane gives a
//! projected-immersion representative whose r-th stratum class is the
//! (r+1)-fold point class of the immersion; `prim_strata` packages that
//! bridge.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::multipoint::{multipoint_numbers, ClassDim, CobordismClass, ImmersionData};
use crate::partition::{partitions_bounded, partitions_of, Partition};
use crate::scalar::{Rat, Scalar};

/// Kunneth product of cobordism classes: each part of a result partition
/// splits between the factors, so the entry at a partition is the splitting
/// convolution of the factor numbers. Dimensions add; the void class is
/// absorbing.
pub fn class_product<K: Scalar>(
    a: &CobordismClass<K>,
    b: &CobordismClass<K>,
) -> CobordismClass<K> {
    let (da, db) = match (a.dim(), b.dim()) {
        (ClassDim::Of(da), ClassDim::Of(db)) => (da, db),
        _ => return CobordismClass::void(),
    };
    let dim = da + db;
    let mut numbers = BTreeMap::new();
    if dim % K::DEGREE_STEP == 0 {
        for p in partitions_of((dim / K::DEGREE_STEP) as u32) {
            let vector: Vec<u32> = p.parts().to_vec();
            let mut split = vec![0u32; vector.len()];
            let mut acc = K::zero();
            loop {
                let left = Partition::of_vector(&split);
                let va = a.get(&left);
                if !va.is_zero() {
                    let complement: Vec<u32> =
                        vector.iter().zip(&split).map(|(x, y)| x - y).collect();
                    let vb = b.get(&Partition::of_vector(&complement));
                    acc = acc.add(&va.mul(&vb));
                }
                let mut i = 0;
                loop {
                    if i == vector.len() {
                        break;
                    }
                    if split[i] < vector[i] {
                        split[i] += 1;
                        break;
                    }
                    split[i] = 0;
                    i += 1;
                }
                if i == vector.len() {
                    break;
                }
            }
            if !acc.is_zero() {
                numbers.insert(p, acc);
            }
        }
    }
    CobordismClass::new(dim, numbers).expect("partition degrees match by construction")
}

/// Rank of the rational cobordism group of Morin maps in bidegree `(n, k)`.
///
/// For odd `k` the group splits along even strata indices `2i` into
/// immersion cobordism groups whose rational rank counts partitions of
/// `(n - 2i(k+1))/4` with parts at most `(k-1)/2`. For even `k` every Morin
/// map is cobordant to an immersion and the rank counts degree-`n`
/// monomials in the Pontrjagin generators below the middle dimension and
/// the Euler class generator.
pub fn morin_rank(n: u32, k: u32) -> u64 {
    assert!(k >= 1, "codimension must be positive");
    if k % 2 == 1 {
        let bound = (k - 1) / 2;
        let mut total = 0u64;
        let mut i = 0u32;
        loop {
            let used = 2 * i * (k + 1);
            if used > n {
                break;
            }
            let m = n - used;
            if m % 4 == 0 {
                total += partitions_bounded(m / 4, bound).len() as u64;
            }
            i += 1;
        }
        total
    } else {
        // Generator degrees: 4, 8, ..., 4(k/2 - 1) and k itself.
        let mut degrees: Vec<u32> = (1..k / 2).map(|j| 4 * j).collect();
        degrees.push(k);
        let mut table = vec![0u64; n as usize + 1];
        table[0] = 1;
        for d in degrees {
            for v in d as usize..=n as usize {
                table[v] += table[v - d as usize];
            }
        }
        table[n as usize]
    }
}

/// An element of the rational Morin cobordism ring in bidegree `(n, k+1)`:
/// the vector of even-index stratum classes. Strata are stored for every
/// even `r` with `n - r(k+1) >= 0`; the class of a missing input stratum is
/// zero.
#[derive(Clone, Debug, PartialEq)]
pub struct MorinClass {
    n: u32,
    k: u32,
    strata: BTreeMap<u32, CobordismClass<Rat>>,
}

impl MorinClass {
    pub fn new(n: u32, k: u32, strata: BTreeMap<u32, CobordismClass<Rat>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invariant("Morin codimension must be positive".into()));
        }
        let mut normalized = BTreeMap::new();
        for r in valid_strata(n, k) {
            let expected = (n - r * (k + 1)) as usize;
            let class = match strata.get(&r) {
                Some(c) => {
                    match c.dim() {
                        ClassDim::Of(d) if d == expected => c.clone(),
                        _ if c.is_zero() => CobordismClass::zero(expected),
                        ClassDim::Of(d) => {
                            return Err(Error::Invariant(format!(
                                "stratum {r} has dimension {d}, expected {expected}"
                            )))
                        }
                        ClassDim::Void => CobordismClass::zero(expected),
                    }
                }
                None => CobordismClass::zero(expected),
            };
            if k % 2 == 0 && r >= 1 && !class.is_zero() {
                return Err(Error::Invariant(
                    "even-codimension Morin classes have no higher strata".into(),
                ));
            }
            normalized.insert(r, class);
        }
        for (r, c) in &strata {
            if *r % 2 != 0 {
                return Err(Error::Invariant(format!(
                    "stratum index {r} is odd; only even strata are rational data"
                )));
            }
            if !normalized.contains_key(r) && !c.is_zero() {
                return Err(Error::Invariant(format!(
                    "stratum {r} has negative dimension and must be absent"
                )));
            }
        }
        Ok(MorinClass { n, k, strata: normalized })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The bigrading `(n, k+1)`.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.n, self.k + 1)
    }

    pub fn strata(&self) -> &BTreeMap<u32, CobordismClass<Rat>> {
        &self.strata
    }

    pub fn stratum(&self, r: u32) -> CobordismClass<Rat> {
        self.strata
            .get(&r)
            .cloned()
            .unwrap_or_else(CobordismClass::void)
    }

    pub fn is_zero(&self) -> bool {
        self.strata.values().all(|c| c.is_zero())
    }

    /// Addition induced by disjoint union; gradings must agree.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if (self.n, self.k) != (rhs.n, rhs.k) {
            return Err(Error::Invariant(format!(
                "cannot add Morin classes of bidegrees ({}, {}) and ({}, {})",
                self.n,
                self.k + 1,
                rhs.n,
                rhs.k + 1
            )));
        }
        let strata = self
            .strata
            .iter()
            .map(|(r, c)| (*r, c.add(&rhs.stratum(*r))))
            .collect();
        Ok(MorinClass { n: self.n, k: self.k, strata })
    }

    /// Whether every stratum only carries numbers with parts at most
    /// `(k-1)/2`, the image constraint of the odd-codimension strata maps.
    pub fn satisfies_part_bound(&self) -> bool {
        if self.k % 2 == 0 {
            return true;
        }
        let bound = (self.k - 1) / 2;
        self.strata.values().all(|c| {
            c.numbers().keys().all(|p| p.max_part() <= bound)
        })
    }
}

fn valid_strata(n: u32, k: u32) -> Vec<u32> {
    (0..)
        .step_by(2)
        .take_while(|r| r * (k + 1) <= n)
        .collect()
}

/// The product in the Morin cobordism ring: gradings `(n, k+1)` add and
/// strata multiply componentwise. A factor of even codimension annihilates
/// every positive stratum.
pub fn morin_mul(a: &MorinClass, b: &MorinClass) -> MorinClass {
    let n = a.n + b.n;
    let k = a.k + b.k + 1;
    let annihilate = a.k % 2 == 0 || b.k % 2 == 0;
    let mut strata = BTreeMap::new();
    for r in valid_strata(n, k) {
        let expected = (n - r * (k + 1)) as usize;
        let class = if r >= 1 && annihilate {
            CobordismClass::zero(expected)
        } else {
            match class_product(&a.stratum(r), &b.stratum(r)) {
                c if c.dim() == ClassDim::Void => CobordismClass::zero(expected),
                c => c,
            }
        };
        strata.insert(r, class);
    }
    MorinClass { n, k, strata }
}

/// The Morin class represented by the hyperplane projection of an immersion
/// `M^n -> R^{n+k+1}`: the r-th stratum is the (r+1)-fold point class of the
/// immersion. The immersion's codimension is `k+1`, even over the
/// rationals, so the Morin codimension `k` is odd.
pub fn prim_strata(imm: &ImmersionData<Rat>) -> MorinClass {
    let codim = imm.codim();
    debug_assert!(codim % 2 == 0, "rational immersion data has even codimension");
    let n = imm.source().dim() as u32;
    let k = codim - 1;
    let mut strata = BTreeMap::new();
    for r in valid_strata(n, k) {
        strata.insert(r, multipoint_numbers(imm, r + 1));
    }
    MorinClass { n, k, strata }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn cp2_class() -> CobordismClass<Rat> {
        CobordismClass::new(4, BTreeMap::from([(Partition::new(vec![1]), rat(3, 1))])).unwrap()
    }

    fn point_class() -> CobordismClass<Rat> {
        CobordismClass::new(0, BTreeMap::from([(Partition::empty(), rat(1, 1))])).unwrap()
    }

    #[test]
    fn kunneth_square_of_cp2() {
        let sq = class_product(&cp2_class(), &cp2_class());
        assert_eq!(sq.dim(), ClassDim::Of(8));
        assert_eq!(sq.get(&Partition::new(vec![1, 1])), rat(18, 1));
        assert_eq!(sq.get(&Partition::new(vec![2])), rat(9, 1));
    }

    #[test]
    fn unit_and_zero() {
        let a = cp2_class();
        assert_eq!(class_product(&a, &point_class()), a);
        assert_eq!(class_product(&a, &CobordismClass::zero(0)), CobordismClass::zero(4));
        assert!(class_product(&a, &CobordismClass::void()).is_zero());
    }

    #[test]
    fn rank_values() {
        assert_eq!(morin_rank(4, 1), 1);
        assert_eq!(morin_rank(6, 1), 0);
        assert_eq!(morin_rank(8, 3), 2);
        for k in 1..=6 {
            assert_eq!(morin_rank(0, k), 1);
        }
        for n in 0..=40 {
            let expected = if n % 4 == 0 { 1 } else { 0 };
            assert_eq!(morin_rank(n, 1), expected, "rank at (n={n}, k=1)");
        }
        // Even codimension: monomials in the Euler-class generator alone.
        assert_eq!(morin_rank(8, 2), 1);
        assert_eq!(morin_rank(7, 2), 0);
        // k = 4: generators p_1 (degree 4) and chi_4 (degree 4).
        assert_eq!(morin_rank(8, 4), 3);
    }

    #[test]
    fn morin_product_example() {
        let strata = BTreeMap::from([(0, cp2_class()), (2, point_class())]);
        let a = MorinClass::new(4, 1, strata).unwrap();
        let sq = morin_mul(&a, &a);
        assert_eq!(sq.bidegree(), (8, 4));
        assert_eq!(sq.k(), 3);
        assert_eq!(sq.stratum(0), class_product(&cp2_class(), &cp2_class()));
        assert_eq!(sq.stratum(2), point_class());
        // dim 8 - 4*4 < 0: no stratum 4
        assert!(!sq.strata().contains_key(&4));
    }

    #[test]
    fn annihilation_by_even_codimension() {
        let strata = BTreeMap::from([(0, cp2_class()), (2, point_class())]);
        let a = MorinClass::new(4, 1, strata).unwrap();
        let b = MorinClass::new(4, 2, BTreeMap::from([(0, cp2_class())])).unwrap();
        let ab = morin_mul(&a, &b);
        assert_eq!(ab.k(), 4);
        for (r, c) in ab.strata() {
            if *r >= 1 {
                assert!(c.is_zero(), "stratum {r} must vanish");
            }
        }
        assert!(!ab.stratum(0).is_zero());
    }

    #[test]
    fn even_codimension_rejects_higher_strata() {
        // (n, k) = (10, 2): stratum 2 lives in dimension 10 - 2*3 = 4.
        let strata = BTreeMap::from([(2, cp2_class())]);
        let err = MorinClass::new(10, 2, strata).unwrap_err();
        assert!(err.to_string().contains("no higher strata"));
        // A stratum beyond the dimension range is rejected outright.
        let err = MorinClass::new(4, 2, BTreeMap::from([(2, point_class())])).unwrap_err();
        assert!(err.to_string().contains("negative dimension"));
    }

    #[test]
    fn prim_strata_is_additive_under_disjoint_union() {
        // Disjoint unions add class by class; the projected-immersion
        // bridge respects that stratum-wise.
        use crate::algebra::GradedAlgebra;
        use crate::charclass::{BundleData, SpaceModel, TotalClass};

        let sphere = |gen: &str, euler: i64| {
            let alg = GradedAlgebra::<Rat>::truncated_polynomial(&[(gen, 2, 2)], 2).unwrap();
            let e = alg.generator(gen).unwrap().scale(&rat(euler, 1));
            let bundle = BundleData::new(TotalClass::one(&alg), 2, Some(e)).unwrap();
            ImmersionData::new(SpaceModel::parallelizable(alg), 2, bundle).unwrap()
        };
        let f = sphere("s", 2);
        let g = sphere("u", 4);
        let sum = prim_strata(&f).add(&prim_strata(&g)).unwrap();
        for (r, class) in sum.strata() {
            let expected =
                multipoint_numbers(&f, r + 1).add(&multipoint_numbers(&g, r + 1));
            assert_eq!(*class, expected, "stratum {r}");
        }
    }

    #[test]
    fn part_bound_checks() {
        let ok = MorinClass::new(4, 3, BTreeMap::from([(0, cp2_class())])).unwrap();
        assert!(ok.satisfies_part_bound());
        let bad = MorinClass::new(
            8,
            3,
            BTreeMap::from([(
                0,
                CobordismClass::new(8, BTreeMap::from([(Partition::new(vec![2]), rat(1, 1))]))
                    .unwrap(),
            )]),
        )
        .unwrap();
        assert!(!bad.satisfies_part_bound());
    }
}
